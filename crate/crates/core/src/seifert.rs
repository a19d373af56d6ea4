//! Star-shaped graphs as Seifert data: the graded pieces of a
//! quasihomogeneous singularity, `p_g`, the Gorenstein test and `h^1(S)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::cohomology::rational_invariants;
use crate::error::{Error, Result};
use crate::graph::{classify, ResolutionGraph, Vertex};

/// Central curve of genus `genus` and self-intersection `-b`, with one arm
/// per pair `(n, q)`, `0 < q < n`, `gcd(n, q) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub genus: u32,
    pub b: i64,
    pub arms: Vec<(i64, i64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeifert {
    genus: u32,
    b: i64,
    arms: Vec<[i64; 2]>,
}

impl SeifertData {
    pub fn new(genus: u32, b: i64, arms: Vec<(i64, i64)>) -> Result<Self> {
        for &(n, q) in &arms {
            if !(0 < q && q < n) || n.gcd(&q) != 1 {
                return Err(Error::InvalidArm { n, q });
            }
        }
        let s = SeifertData { genus, b, arms };
        if !s.e().is_positive() {
            return Err(Error::InvalidSeifert(format!(
                "e = b - sum q/n = {} must be positive",
                s.e()
            )));
        }
        Ok(s)
    }

    /// `{"genus": g, "b": b, "arms": [[n, q], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSeifert = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        SeifertData::new(
            raw.genus,
            raw.b,
            raw.arms.iter().map(|a| (a[0], a[1])).collect(),
        )
    }

    /// Orbifold Euler number `e = b - sum q_i/n_i`.
    pub fn e(&self) -> BigRational {
        self.arms
            .iter()
            .fold(BigRational::from_integer(self.b.into()), |acc, &(n, q)| {
                acc - BigRational::new(q.into(), n.into())
            })
    }

    fn lcm_n(&self) -> BigInt {
        self.arms
            .iter()
            .fold(BigInt::one(), |acc, &(n, _)| acc.lcm(&BigInt::from(n)))
    }
}

/// Hirzebruch-Jung expansion `n/q = b_1 - 1/(b_2 - ...)`, all `b_i >= 2`.
pub fn hj_expand(n: i64, q: i64) -> Result<Vec<i64>> {
    if !(0 < q && q < n) || n.gcd(&q) != 1 {
        return Err(Error::InvalidArm { n, q });
    }
    let (mut n, mut q) = (n, q);
    let mut out = Vec::new();
    while q != 0 {
        let b = Integer::div_ceil(&n, &q);
        out.push(b);
        (n, q) = (q, b * q - n);
    }
    Ok(out)
}

/// Inverse of [`hj_expand`]: the pair `(n, q)` of a chain `b_1, ..., b_s`.
pub fn hj_value(bs: &[i64]) -> Result<(i64, i64)> {
    let (&last, rest) = bs
        .split_last()
        .ok_or_else(|| Error::InvalidArgument("empty continued fraction".into()))?;
    if bs.iter().any(|&b| b < 2) {
        return Err(Error::InvalidArgument(
            "continued fraction entries must be >= 2".into(),
        ));
    }
    let (mut n, mut q) = (last, 1i64);
    for &b in rest.iter().rev() {
        let next = b
            .checked_mul(n)
            .and_then(|bn| bn.checked_sub(q))
            .ok_or_else(|| Error::InvalidArgument("continued fraction overflows".into()))?;
        (n, q) = (next, n);
    }
    Ok((n, q))
}

/// Star-shaped graph: centre `c` (index 0), arm `i` is the chain
/// `a{i}_1 - a{i}_2 - ...` with `a{i}_1` meeting the centre.
pub fn seifert_to_graph(s: &SeifertData) -> Result<ResolutionGraph> {
    let mut vertices = vec![Vertex::new("c", -s.b, s.genus)];
    let mut edges = Vec::new();
    for (i, &(n, q)) in s.arms.iter().enumerate() {
        let mut prev = 0;
        for (j, b) in hj_expand(n, q)?.into_iter().enumerate() {
            vertices.push(Vertex::new(format!("a{}_{}", i + 1, j + 1), -b, 0));
            let idx = vertices.len() - 1;
            edges.push((prev, idx));
            prev = idx;
        }
    }
    ResolutionGraph::from_indices(vertices, &edges)
}

/// Reads Seifert data off a star-shaped graph. The centre is the unique curve
/// of valency `>= 3`, or vertex 0 if there is none; arms are ordered by the
/// index of the curve meeting the centre.
pub fn graph_to_seifert(g: &ResolutionGraph) -> Result<SeifertData> {
    if !g.is_tree() {
        return Err(Error::NotStarShaped("graph has a cycle".into()));
    }
    let branches: Vec<usize> = (0..g.len()).filter(|&i| g.valency(i) >= 3).collect();
    let centre = match branches.as_slice() {
        [] => 0,
        [c] => *c,
        _ => {
            return Err(Error::NotStarShaped(format!(
                "{} curves of valency >= 3",
                branches.len()
            )))
        }
    };
    let mut starts: Vec<usize> = g.neighbors(centre).to_vec();
    starts.sort_unstable();
    let mut arms = Vec::with_capacity(starts.len());
    for start in starts {
        let (mut prev, mut cur) = (centre, start);
        let mut chain = Vec::new();
        loop {
            let v = g.vertex(cur);
            if v.genus != 0 || v.weight > -2 {
                return Err(Error::NotStarShaped(format!(
                    "arm curve `{}` must have genus 0 and weight <= -2",
                    v.id
                )));
            }
            chain.push(-v.weight);
            match g.neighbors(cur).iter().find(|&&k| k != prev) {
                Some(&next) => (prev, cur) = (cur, next),
                None => break,
            }
        }
        arms.push(hj_value(&chain)?);
    }
    let c = g.vertex(centre);
    SeifertData::new(c.genus, -c.weight, arms)
}

fn ceil_div(a: &BigInt, n: &BigInt) -> BigInt {
    -((-a).div_floor(n))
}

/// `deg floor(kF) = k b - sum ceil(k q_i / n_i)`, the degree of the divisor
/// whose sections give the degree-`k` piece of the graded ring.
pub fn deg_floor_kf(s: &SeifertData, k: &BigInt) -> BigInt {
    s.arms.iter().fold(k * s.b, |acc, &(n, q)| {
        acc - ceil_div(&(k * q), &BigInt::from(n))
    })
}

/// `dim A_k` for `k >= 0`. Genus 0 is Riemann-Roch on `P^1`; positive genus
/// is only determined outside `0 <= deg <= 2g - 2`.
pub fn dim_a_k(s: &SeifertData, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Ok(BigInt::one());
    }
    let deg = deg_floor_kf(s, &BigInt::from(k));
    let g = BigInt::from(s.genus);
    if s.genus == 0 {
        return Ok((deg + 1i32).max(BigInt::zero()));
    }
    if deg.is_negative() {
        Ok(BigInt::zero())
    } else if deg > 2 * &g - 2 {
        Ok(deg - g + 1)
    } else {
        Err(Error::NotDetermined(s.genus))
    }
}

/// `h^1` of the degree-`k` divisor, or `NotDetermined`.
fn h1_piece(s: &SeifertData, k: u64) -> Result<BigInt> {
    let g = BigInt::from(s.genus);
    if k == 0 {
        return Ok(g);
    }
    let deg = deg_floor_kf(s, &BigInt::from(k));
    if s.genus == 0 {
        return Ok((-deg - 1i32).max(BigInt::zero()));
    }
    if deg.is_negative() {
        Ok(g - 1 - deg)
    } else if deg > 2 * &g - 2 {
        Ok(BigInt::zero())
    } else {
        Err(Error::NotDetermined(s.genus))
    }
}

/// Past this `k` every degree exceeds `2g - 2`, so `h^1` of the piece
/// vanishes.
pub fn h1_cutoff(s: &SeifertData) -> u64 {
    let bound =
        BigRational::from_integer(BigInt::from(s.arms.len() as u64 + 2 * s.genus as u64 + 1))
            / s.e();
    bound.ceil().to_integer().to_u64().unwrap_or(u64::MAX) + 1
}

/// Geometric genus `p_g = sum_{k >= 0} h^1(D^(k))`.
pub fn p_g(s: &SeifertData) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for k in 0..=h1_cutoff(s) {
        total += h1_piece(s, k)?;
    }
    Ok(total)
}

/// Solves `k q_i = 1 mod n_i` for all arms; returns `(k0, L)` with the
/// solutions being `k0 + L Z`, or `None` when the congruences are
/// incompatible.
fn solve_congruences(s: &SeifertData) -> Option<(BigInt, BigInt)> {
    let mut k = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(n, q) in &s.arms {
        let n = BigInt::from(n);
        let inv = BigInt::from(q).extended_gcd(&n).x.mod_floor(&n);
        // k + modulus * t = inv (mod n)
        let g = modulus.gcd(&n);
        let diff = (&inv - &k).mod_floor(&n);
        if !(&diff % &g).is_zero() {
            return None;
        }
        let n_g = &n / &g;
        let m_g = (&modulus / &g).mod_floor(&n_g);
        let t = if n_g.is_one() {
            BigInt::zero()
        } else {
            let m_inv = m_g.extended_gcd(&n_g).x.mod_floor(&n_g);
            ((&diff / &g) * m_inv).mod_floor(&n_g)
        };
        k += &modulus * t;
        modulus = modulus.lcm(&n);
        k = k.mod_floor(&modulus);
    }
    Some((k, modulus))
}

/// The integer `k` with `K ~ k F` numerically: `k q_i = 1 mod n_i` for every
/// arm and `deg floor(kF) = 2g - 2`. `None` when no such `k` exists, i.e. the
/// singularity is not Gorenstein (for genus 0; for higher genus only the
/// degree condition is tested).
pub fn gorenstein_exponent(s: &SeifertData) -> Option<BigInt> {
    let (k0, l) = solve_congruences(s)?;
    debug_assert_eq!(l, s.lcm_n());
    let le = s.e() * BigRational::from_integer(l.clone());
    debug_assert!(le.is_integer());
    let step = le.to_integer();
    let target = BigInt::from(2 * s.genus as i64 - 2) - deg_floor_kf(s, &k0);
    if !(&target % &step).is_zero() {
        return None;
    }
    Some(k0 + (target / step) * l)
}

/// `floor(-((kq - 1)/n + 1)) - floor(-kq/n)`: `0` exactly when `kq = 1 mod n`,
/// otherwise `-1`.
pub fn coboundary_coefficient(k: &BigInt, n: i64, q: i64) -> BigInt {
    let n = BigInt::from(n);
    let kq = k * q;
    let first = (-(&kq - 1i32) - &n).div_floor(&n);
    let second = (-&kq).div_floor(&n);
    first - second
}

/// `h^1(S)` for the quasihomogeneous singularity with these Seifert data:
/// `p_g + h^1(-(K+E)) - [Gorenstein]`. On rational graphs `h^1(-(K+E))` is
/// computed (and a supplied value must agree); otherwise it must be supplied.
pub fn h1_s_quasihomogeneous(s: &SeifertData, h1_mke: Option<u64>) -> Result<BigInt> {
    let g = seifert_to_graph(s)?;
    let class = classify(&g)?;
    if class.rdp {
        return Err(Error::RationalDoublePoint);
    }
    let mke = if class.rational && class.minimal_resolution {
        let computed = rational_invariants(&g)?
            .h1_minus_k_minus_e
            .ok_or(Error::RationalDoublePoint)?;
        if let Some(supplied) = h1_mke {
            if BigInt::from(supplied) != computed {
                return Err(Error::OverrideMismatch {
                    supplied,
                    computed: computed.to_u64().unwrap_or(u64::MAX),
                });
            }
        }
        computed
    } else {
        BigInt::from(h1_mke.ok_or(Error::MissingOverride)?)
    };
    let gorenstein = if gorenstein_exponent(s).is_some() {
        1
    } else {
        0
    };
    Ok(p_g(s)? + mke - gorenstein)
}

/// `p_g = 0` agrees with Artin's criterion on the associated graph.
pub fn rationality_cross_check(s: &SeifertData) -> Result<bool> {
    let rational = classify(&seifert_to_graph(s)?)?.rational;
    Ok(p_g(s)?.is_zero() == rational)
}

/// One graded piece `A_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub k: u64,
    pub degree: BigInt,
    /// `None` where positive genus leaves it undetermined.
    pub dim: Option<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedReport {
    pub e: BigRational,
    pub pieces: Vec<GradedPiece>,
    pub p_g: Option<BigInt>,
    pub gorenstein_exponent: Option<BigInt>,
    pub rational: bool,
}

pub fn graded_report(s: &SeifertData, kmax: u64) -> Result<GradedReport> {
    let pieces = (0..=kmax)
        .map(|k| GradedPiece {
            k,
            degree: deg_floor_kf(s, &BigInt::from(k)),
            dim: dim_a_k(s, k).ok(),
        })
        .collect();
    let p_g = match p_g(s) {
        Ok(v) => Some(v),
        Err(Error::NotDetermined(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GradedReport {
        e: s.e(),
        pieces,
        p_g,
        gorenstein_exponent: gorenstein_exponent(s),
        rational: classify(&seifert_to_graph(s)?)?.rational,
    })
}
