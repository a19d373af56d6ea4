//! Giraud round-ups and the cohomology dimensions of `-K` and `-(K+E)` on
//! rational graphs, together with the smoothing formulas for `mu`, `tau`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{
    canonical_class, chi_t, classify, dot, dot_canonical, intersection_form, iteration_cap,
    require_negative_definite, Cycle, GraphClassification, QCycle, ResolutionGraph,
};
use crate::linalg;

/// Numerical class of a line bundle: its degrees `L.E_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineBundleClass {
    pub degrees: Vec<BigInt>,
}

impl LineBundleClass {
    pub fn new(degrees: Vec<BigInt>) -> Self {
        LineBundleClass { degrees }
    }

    pub fn from_i64(degrees: &[i64]) -> Self {
        LineBundleClass::new(degrees.iter().map(|&d| BigInt::from(d)).collect())
    }

    pub fn zero(n: usize) -> Self {
        LineBundleClass::new(vec![BigInt::zero(); n])
    }

    /// `-K`: degrees `-(2 g_i - 2 + d_i)`.
    pub fn minus_canonical(g: &ResolutionGraph) -> Self {
        LineBundleClass::new(
            (0..g.len())
                .map(|i| BigInt::from(-g.canonical_degree(i)))
                .collect(),
        )
    }

    /// `-(K + E)`.
    pub fn minus_canonical_minus_e(g: &ResolutionGraph) -> Self {
        Self::minus_canonical(g).minus_cycle(g, &Cycle::ones(g.len()))
    }

    /// `L - D` for an integral cycle `D`.
    pub fn minus_cycle(&self, g: &ResolutionGraph, d: &Cycle) -> Self {
        LineBundleClass::new(
            self.degrees
                .iter()
                .zip(g.degrees_of(d))
                .map(|(l, de)| l - de)
                .collect(),
        )
    }

    /// `Z.L`.
    pub fn dot(&self, z: &Cycle) -> BigInt {
        self.degrees.iter().zip(&z.0).map(|(l, m)| l * m).sum()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        LineBundleClass::new(perm.iter().map(|&old| self.degrees[old].clone()).collect())
    }
}

/// Outcome of the Giraud round-up `[L]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundingResult {
    /// The rational `a` with `L = sum a_i E_i` numerically.
    pub coefficients: QCycle,
    /// `D_1 = ceil(a)`.
    pub initial: Cycle,
    /// Curves added after `D_1`, in order.
    pub added: Vec<usize>,
    /// `[L]`.
    pub round: Cycle,
}

/// `[L]`: the least integral `D` with `D.E_i <= L.E_i` for every `i`.
///
/// Rounds the rational coefficients of `L` up, then adds `E_j` (lowest index
/// first) while `D.E_j > L.E_j`.
pub fn giraud_round(g: &ResolutionGraph, l: &LineBundleClass) -> Result<RoundingResult> {
    giraud_round_with(g, l, |violating| violating[0])
}

/// [`giraud_round`] with a caller-chosen curve among those violating
/// `D.E_j <= L.E_j` at each step. The result does not depend on the choice.
pub fn giraud_round_with(
    g: &ResolutionGraph,
    l: &LineBundleClass,
    choose: impl FnMut(&[usize]) -> usize,
) -> Result<RoundingResult> {
    require_negative_definite(g)?;
    let r = round_unchecked(g, l, choose)?;
    let coefficients = QCycle(
        r.scaled
            .into_iter()
            .map(|v| BigRational::new(v, r.denominator.clone()))
            .collect(),
    );
    Ok(RoundingResult {
        coefficients,
        initial: r.initial,
        added: r.added,
        round: r.round,
    })
}

/// [`RoundingResult`] with the coefficients kept as `scaled / denominator`.
struct ScaledRounding {
    scaled: Vec<BigInt>,
    denominator: BigInt,
    initial: Cycle,
    added: Vec<usize>,
    round: Cycle,
}

/// The round-up without re-testing definiteness; callers have classified `g`.
fn round_unchecked(
    g: &ResolutionGraph,
    l: &LineBundleClass,
    choose: impl FnMut(&[usize]) -> usize,
) -> Result<ScaledRounding> {
    assert_eq!(l.degrees.len(), g.len(), "degree vector length");
    let (scaled, d) = linalg::solve_scaled(intersection_form(g).matrix(), &l.degrees)
        .ok_or(Error::NotNegativeDefinite)?;
    finish_round(g, l, scaled, d, choose)
}

/// `[L_1]` and `[L_2]` with one elimination, lowest index first.
fn round_pair_unchecked(
    g: &ResolutionGraph,
    l1: &LineBundleClass,
    l2: &LineBundleClass,
) -> Result<(ScaledRounding, ScaledRounding)> {
    let (mut ys, d) =
        linalg::solve_scaled_many(intersection_form(g).matrix(), &[&l1.degrees, &l2.degrees])
            .ok_or(Error::NotNegativeDefinite)?;
    let y2 = ys.pop().expect("two solutions");
    let y1 = ys.pop().expect("two solutions");
    let first = |v: &[usize]| v[0];
    Ok((
        finish_round(g, l1, y1, d.clone(), first)?,
        finish_round(g, l2, y2, d, first)?,
    ))
}

/// Rounds `scaled / d` up and adds curves until `D.E_j <= L.E_j` everywhere.
fn finish_round(
    g: &ResolutionGraph,
    l: &LineBundleClass,
    mut scaled: Vec<BigInt>,
    mut d: BigInt,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<ScaledRounding> {
    if d.is_negative() {
        d = -d;
        scaled.iter_mut().for_each(|v| *v = -&*v);
    }
    let initial = Cycle(scaled.iter().map(|v| -((-v).div_floor(&d))).collect());
    let cap = iteration_cap(g);
    let mut round = initial.clone();
    let mut degrees = g.degrees_of(&round);
    let mut added = Vec::new();
    loop {
        let violating: Vec<usize> = (0..g.len())
            .filter(|&j| degrees[j] > l.degrees[j])
            .collect();
        if violating.is_empty() {
            break;
        }
        let j = choose(&violating);
        assert!(
            violating.contains(&j),
            "chooser must pick a violating curve"
        );
        round[j] += 1;
        g.add_curve_to_degrees(&mut degrees, j);
        added.push(j);
        if added.len() as u64 > cap {
            return Err(Error::IterationCap {
                what: "Giraud round-up",
                cap,
            });
        }
    }
    Ok(ScaledRounding {
        scaled,
        denominator: d,
        initial,
        added,
        round,
    })
}

/// `E.(E+3K)/2`, always an integer.
pub fn e_dot_e_plus_3k_half(g: &ResolutionGraph) -> BigInt {
    // E.E = sum of weights + 2 #edges
    let ee: i64 = g.vertices().iter().map(|v| v.weight).sum::<i64>() + 2 * g.edges().len() as i64;
    let ek: i64 = (0..g.len()).map(|i| g.canonical_degree(i)).sum();
    let twice = BigInt::from(ee + 3 * ek);
    debug_assert!(twice.is_even());
    twice / 2
}

/// `sum (g_i + d_i - 1)`, i.e. `h^1` of the normal bundles of the curves.
pub fn normal_bundle_h1(g: &ResolutionGraph) -> BigInt {
    (0..g.len())
        .map(|i| BigInt::from(g.vertex(i).genus as i64 + g.degree(i) - 1))
        .sum()
}

fn require_rational_minimal(g: &ResolutionGraph) -> Result<GraphClassification> {
    let class = classify(g)?;
    if !class.negative_definite {
        return Err(Error::NotNegativeDefinite);
    }
    if !class.rational {
        return Err(Error::NotRational);
    }
    if !class.minimal_resolution {
        return Err(Error::NotMinimal);
    }
    Ok(class)
}

/// `Z.(Z+K)/2 - Z.L` for `Z = [L]`, the `h^1` formula on a rational minimal
/// resolution.
fn h1_from_roundup(g: &ResolutionGraph, z: &Cycle, l: &LineBundleClass) -> Result<BigInt> {
    if !z.is_effective() {
        return Err(Error::NotEffective);
    }
    if z.is_zero() {
        return Ok(BigInt::zero());
    }
    let twice: BigInt = dot(g, z, z) + dot_canonical(g, z);
    let value: BigInt = twice / 2 - l.dot(z);
    if value.is_negative() {
        return Err(Error::Identity(format!("negative h1 value {value}")));
    }
    Ok(value)
}

/// `dim H^1(X, L)` on the minimal resolution of a rational singularity,
/// provided `[L]` is effective.
pub fn h1_rational_bundle(g: &ResolutionGraph, l: &LineBundleClass) -> Result<BigInt> {
    require_rational_minimal(g)?;
    let z = giraud_round(g, l)?.round;
    h1_from_roundup(g, &z, l)
}

/// All rational-graph quantities computed in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInvariants {
    pub classification: GraphClassification,
    /// `Y = [-K]`.
    pub y: Cycle,
    /// `Z = [-(K+E)] = Y - E`; `None` for a rational double point.
    pub z: Option<Cycle>,
    pub h1_minus_k: BigInt,
    pub h1_minus_k_minus_e: Option<BigInt>,
    pub e_e3k_half: BigInt,
}

/// Computes `[-K]`, `[-(K+E)]` and both `h^1` values on a rational minimal
/// graph, cross-checking the two ways of obtaining `[-(K+E)]`.
pub fn rational_invariants(g: &ResolutionGraph) -> Result<RationalInvariants> {
    rational_invariants_classified(g, classify(g)?)
}

/// [`rational_invariants`] reusing an existing classification of `g`.
pub fn rational_invariants_classified(
    g: &ResolutionGraph,
    classification: GraphClassification,
) -> Result<RationalInvariants> {
    if !classification.negative_definite {
        return Err(Error::NotNegativeDefinite);
    }
    if !classification.rational {
        return Err(Error::NotRational);
    }
    if !classification.minimal_resolution {
        return Err(Error::NotMinimal);
    }
    let minus_k = LineBundleClass::minus_canonical(g);
    let (y, direct) = if classification.rdp {
        (round_unchecked(g, &minus_k, |v| v[0])?.round, None)
    } else {
        let minus_k_e = LineBundleClass::minus_canonical_minus_e(g);
        let (y, direct) = round_pair_unchecked(g, &minus_k, &minus_k_e)?;
        (y.round, Some(direct.round))
    };
    if !y.is_effective() {
        return Err(Error::NotEffective);
    }
    // Y.(Y+3K)/2
    let twice: BigInt = dot(g, &y, &y) + 3 * dot_canonical(g, &y);
    let h1_minus_k = twice / 2;
    let alt = h1_from_roundup(g, &y, &minus_k)?;
    if alt != h1_minus_k {
        return Err(Error::Identity(format!(
            "h1(-K): Y.(Y+3K)/2 = {h1_minus_k} but Z.(Z+K)/2 - Z.L = {alt}"
        )));
    }
    let e = Cycle::ones(g.len());
    let (z, h1_minus_k_minus_e) = if let Some(direct) = direct {
        let z = &y - &e;
        if direct != z {
            return Err(Error::Identity(format!(
                "[-(K+E)] = {direct} differs from [-K] - E = {z}"
            )));
        }
        if !z.is_effective() {
            return Err(Error::NotEffective);
        }
        let twice: BigInt = dot(g, &z, &z) + 3 * dot_canonical(g, &z);
        let value: BigInt = twice / 2 + dot(g, &z, &e);
        if value.is_negative() {
            return Err(Error::Identity(format!("negative h1(-(K+E)) = {value}")));
        }
        (Some(z), Some(value))
    } else {
        (None, None)
    };
    Ok(RationalInvariants {
        classification,
        y,
        z,
        h1_minus_k,
        h1_minus_k_minus_e,
        e_e3k_half: e_dot_e_plus_3k_half(g),
    })
}

/// `h^1(X, -K) = Y.(Y+3K)/2` with `Y = [-K]`.
pub fn h1_minus_k(g: &ResolutionGraph) -> Result<BigInt> {
    Ok(rational_invariants(g)?.h1_minus_k)
}

/// `h^1(X, -(K+E)) = Z.(Z+3K)/2 + Z.E` with `Z = [-K] - E`.
pub fn h1_minus_k_minus_e(g: &ResolutionGraph) -> Result<BigInt> {
    rational_invariants(g)?
        .h1_minus_k_minus_e
        .ok_or(Error::RationalDoublePoint)
}

/// `h^1(-K) - h^1(-(K+E)) - E.(E+3K)/2`; zero on every rational minimal
/// non-RDP graph.
pub fn minus_k_residual(g: &ResolutionGraph) -> Result<BigInt> {
    let inv = rational_invariants(g)?;
    let h1_mke = inv.h1_minus_k_minus_e.ok_or(Error::RationalDoublePoint)?;
    Ok(inv.h1_minus_k - h1_mke - inv.e_e3k_half)
}

/// Upper bound for `alpha`: `h^1(-K)`, the length of `Ext^1(omega, R)`.
pub fn alpha_upper_bound(g: &ResolutionGraph) -> Result<BigInt> {
    h1_minus_k(g)
}

/// `h^1(-K) >= mult - 3` with `mult = -Z_0.Z_0`.
pub fn mult_bound_check(g: &ResolutionGraph) -> Result<bool> {
    let inv = rational_invariants(g)?;
    let z0 = inv
        .classification
        .fundamental_cycle
        .as_ref()
        .expect("negative definite graph has Z_0");
    let mult = -dot(g, z0, z0);
    Ok(inv.h1_minus_k >= mult - 3)
}

/// Externally supplied scalars for the smoothing formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SmoothingInputs {
    pub alpha: u64,
    pub h1_o: u64,
    pub h1_s: u64,
    /// Required for non-rational graphs, where `h^1(-(K+E))` is not
    /// computable from the graph.
    pub h1_mke: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothingReport {
    pub mu: BigInt,
    pub tau: BigInt,
    /// `h^1(O) - h^1(S) + h^1(-(K+E))`, equal to `1 + (mu - tau) + alpha`.
    pub combined: BigInt,
    pub h1_mk: BigInt,
    pub h1_mke: BigInt,
    pub h1_theta: BigInt,
}

/// Milnor and Tjurina numbers of a smoothing from graph data and the
/// supplied `alpha`, `h^1(O)`, `h^1(S)`.
pub fn smoothing_report(g: &ResolutionGraph, s: &SmoothingInputs) -> Result<SmoothingReport> {
    let class = classify(g)?;
    if !class.negative_definite {
        return Err(Error::NotNegativeDefinite);
    }
    if class.rdp {
        return Err(Error::RationalDoublePoint);
    }
    if !class.minimal_good {
        return Err(Error::NotMinimalGood);
    }
    let e3k = e_dot_e_plus_3k_half(g);
    let h1_mke = if class.rational {
        let computed = h1_minus_k_minus_e(g)?;
        if let Some(supplied) = s.h1_mke {
            if BigInt::from(supplied) != computed {
                return Err(Error::OverrideMismatch {
                    supplied,
                    computed: u64::try_from(&computed).unwrap_or(u64::MAX),
                });
            }
        }
        computed
    } else {
        BigInt::from(s.h1_mke.ok_or(Error::MissingOverride)?)
    };
    let h1_mk = &h1_mke + &e3k;
    let alpha = BigInt::from(s.alpha);
    let h1_o = BigInt::from(s.h1_o);
    let h1_s = BigInt::from(s.h1_s);
    let chi = chi_t(g);
    let mu = &alpha + 13 * &h1_o + &chi - &e3k - &h1_mke - 1;
    let tau = 2 * &alpha + 12 * &h1_o + &chi - &e3k + &h1_s - 2 * &h1_mke;
    let combined = &h1_o - &h1_s + &h1_mke;
    if BigInt::from(1) + &mu - &tau + &alpha != combined {
        return Err(Error::Identity(
            "1 + (mu - tau) + alpha != h1(O) - h1(S) + h1(-(K+E))".into(),
        ));
    }
    Ok(SmoothingReport {
        mu,
        tau,
        combined,
        h1_mk,
        h1_mke,
        h1_theta: h1_s + normal_bundle_h1(g),
    })
}

/// Orders the curves so that every partial sum `F` of the sequence keeps
/// `H^0(-K (x) O_F) = 0`: the first curve has `2g-2+d > 0`, each later curve
/// `E_j` satisfies `2g_j - 2 + d_j + F.E_j > 0`. Lowest index first.
pub fn anticanonical_sequence(g: &ResolutionGraph) -> Result<Vec<usize>> {
    require_negative_definite(g)?;
    let class = classify(g)?;
    if !class.minimal_good {
        return Err(Error::NotMinimalGood);
    }
    let n = g.len();
    let start = (0..n)
        .find(|&i| g.canonical_degree(i) > 0)
        .ok_or(Error::NoStartingVertex)?;
    let mut in_support = vec![false; n];
    in_support[start] = true;
    let mut order = vec![start];
    // contact[j] = F.E_j for j outside F (F reduced)
    let mut contact = vec![0i64; n];
    for &k in g.neighbors(start) {
        contact[k] += 1;
    }
    while order.len() < n {
        let next = (0..n)
            .find(|&j| !in_support[j] && g.canonical_degree(j) + contact[j] > 0)
            .ok_or(Error::SequenceStuck(order.len()))?;
        in_support[next] = true;
        order.push(next);
        for &k in g.neighbors(next) {
            contact[k] += 1;
        }
    }
    Ok(order)
}

/// Re-checks the sequence criterion step by step.
pub fn verify_anticanonical_sequence(g: &ResolutionGraph, order: &[usize]) -> bool {
    let n = g.len();
    if order.len() != n {
        return false;
    }
    let mut support = vec![false; n];
    for (step, &j) in order.iter().enumerate() {
        if j >= n || support[j] {
            return false;
        }
        let contact = g.neighbors(j).iter().filter(|&&k| support[k]).count() as i64;
        let ok = if step == 0 {
            g.canonical_degree(j) > 0
        } else {
            g.canonical_degree(j) + contact > 0
        };
        if !ok {
            return false;
        }
        support[j] = true;
    }
    true
}

/// Rational coefficients of `K` as a helper for reports.
pub fn canonical_rational(g: &ResolutionGraph) -> Result<Vec<BigRational>> {
    Ok(canonical_class(g)?.0)
}
