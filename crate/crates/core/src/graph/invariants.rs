use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use num_traits::{Signed, Zero};

use super::{Cycle, QCycle, ResolutionGraph};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

/// The intersection matrix `M_ij = E_i.E_j` of a resolution graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    matrix: IntMatrix,
}

impl IntersectionForm {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.matrix)
    }

    pub fn from_matrix(matrix: IntMatrix) -> Self {
        IntersectionForm { matrix }
    }
}

/// Flags and basic cycles describing a resolution graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClassification {
    pub connected: bool,
    pub negative_definite: bool,
    pub rational: bool,
    pub rdp: bool,
    pub minimal_resolution: bool,
    pub minimal_good: bool,
    pub star_shaped: bool,
    pub chain: bool,
    /// `None` when the form is not negative definite.
    pub fundamental_cycle: Option<Cycle>,
    pub p_a_z0: Option<BigInt>,
}

pub fn intersection_form(g: &ResolutionGraph) -> IntersectionForm {
    let n = g.len();
    let mut matrix = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = BigInt::from(g.vertex(i).weight);
    }
    for &(a, b) in g.edges() {
        matrix[a][b] = BigInt::from(1);
        matrix[b][a] = BigInt::from(1);
    }
    IntersectionForm { matrix }
}

/// Sylvester's criterion on `-M`, with exact leading principal minors.
pub fn is_negative_definite(f: &IntersectionForm) -> bool {
    let negated: IntMatrix = f
        .matrix
        .iter()
        .map(|row| row.iter().map(|v| -v).collect())
        .collect();
    linalg::is_positive_definite(&negated)
}

/// Loop bound shared by the Laufer and Giraud iterations.
pub(crate) fn iteration_cap(g: &ResolutionGraph) -> u64 {
    let total_degree: i64 = (0..g.len()).map(|i| g.degree(i)).sum();
    10 * total_degree.max(1) as u64 * g.len() as u64
}

pub(crate) fn require_negative_definite(g: &ResolutionGraph) -> Result<()> {
    if is_negative_definite(&intersection_form(g)) {
        Ok(())
    } else {
        Err(Error::NotNegativeDefinite)
    }
}

/// Laufer's computation sequence for the fundamental cycle `Z_0`: start at
/// `E` and add `E_j` (lowest index first) while `Z.E_j > 0`.
pub fn fundamental_cycle(g: &ResolutionGraph) -> Result<Cycle> {
    require_negative_definite(g)?;
    laufer(g)
}

fn laufer(g: &ResolutionGraph) -> Result<Cycle> {
    let cap = iteration_cap(g);
    let mut z = Cycle::ones(g.len());
    let mut degrees = g.degrees_of(&z);
    let mut steps = 0u64;
    while let Some(j) = (0..g.len()).find(|&j| degrees[j].is_positive()) {
        z[j] += 1;
        g.add_curve_to_degrees(&mut degrees, j);
        steps += 1;
        if steps > cap {
            return Err(Error::IterationCap {
                what: "fundamental cycle",
                cap,
            });
        }
    }
    Ok(z)
}

/// The numerical canonical class: the rational `K` with
/// `K.E_i = d_i + 2 g_i - 2` for every vertex.
pub fn canonical_class(g: &ResolutionGraph) -> Result<QCycle> {
    require_negative_definite(g)?;
    let rhs: Vec<BigInt> = (0..g.len())
        .map(|i| BigInt::from(g.canonical_degree(i)))
        .collect();
    linalg::solve(intersection_form(g).matrix(), &rhs)
        .map(QCycle)
        .ok_or(Error::NotNegativeDefinite)
}

/// `Z.K`, computed from the adjunction degrees without solving for `K`.
pub(crate) fn dot_canonical(g: &ResolutionGraph, z: &Cycle) -> BigInt {
    let small = (0..g.len()).try_fold(0i64, |acc, i| {
        z[i].to_i64()?
            .checked_mul(g.canonical_degree(i))?
            .checked_add(acc)
    });
    match small {
        Some(v) => BigInt::from(v),
        None => (0..g.len()).map(|i| &z[i] * g.canonical_degree(i)).sum(),
    }
}

/// `Z.W` for integral cycles.
pub(crate) fn dot(g: &ResolutionGraph, z: &Cycle, w: &Cycle) -> BigInt {
    match small_dot(g, z, w) {
        Some(v) => BigInt::from(v),
        None => (0..g.len()).map(|j| &z[j] * g.dot_vertex(w, j)).sum(),
    }
}

/// `Z.W = sum w_i z_i w_i + sum over edges (z_a w_b + z_b w_a)` in `i64`,
/// `None` on overflow.
fn small_dot(g: &ResolutionGraph, z: &Cycle, w: &Cycle) -> Option<i64> {
    let mut acc = 0i64;
    for (i, v) in g.vertices().iter().enumerate() {
        let t = z[i]
            .to_i64()?
            .checked_mul(w[i].to_i64()?)?
            .checked_mul(v.weight)?;
        acc = acc.checked_add(t)?;
    }
    for &(a, b) in g.edges() {
        let t = z[a].to_i64()?.checked_mul(w[b].to_i64()?)?;
        let u = z[b].to_i64()?.checked_mul(w[a].to_i64()?)?;
        acc = acc.checked_add(t)?.checked_add(u)?;
    }
    Some(acc)
}

/// `p_a(Z) = 1 + (Z.Z + Z.K)/2`.
pub fn arithmetic_genus(z: &Cycle, g: &ResolutionGraph) -> BigInt {
    let twice = dot(g, z, z) + dot_canonical(g, z);
    debug_assert!(twice.is_even());
    BigInt::from(1) + twice / 2
}

/// Artin's criterion: `p_a(Z_0) = 0`.
pub fn is_rational(g: &ResolutionGraph) -> Result<bool> {
    let z0 = fundamental_cycle(g)?;
    Ok(arithmetic_genus(&z0, g).is_zero())
}

/// Topological Euler characteristic of the exceptional set:
/// `sum (2 - 2 g_i) - #edges`.
pub fn chi_t(g: &ResolutionGraph) -> BigInt {
    let curves: i64 = g.vertices().iter().map(|v| 2 - 2 * v.genus as i64).sum();
    BigInt::from(curves - g.edges().len() as i64)
}

/// `a^T M b`.
pub fn pairing(a: &QCycle, b: &QCycle, g: &ResolutionGraph) -> BigRational {
    assert_eq!(a.len(), g.len());
    assert_eq!(b.len(), g.len());
    let mut acc = BigRational::zero();
    for j in 0..g.len() {
        let mut row = &b[j] * BigRational::from_integer(g.vertex(j).weight.into());
        for &k in g.neighbors(j) {
            row += &b[k];
        }
        acc += &a[j] * row;
    }
    acc
}

pub fn classify(g: &ResolutionGraph) -> Result<GraphClassification> {
    let negative_definite = is_negative_definite(&intersection_form(g));
    let (fundamental_cycle, p_a_z0) = if negative_definite {
        let z0 = laufer(g)?;
        let pa = arithmetic_genus(&z0, g);
        (Some(z0), Some(pa))
    } else {
        (None, None)
    };
    let rational = p_a_z0.as_ref().is_some_and(Zero::is_zero);
    let all_minus_two = g.vertices().iter().all(|v| v.genus == 0 && v.weight == -2);
    let exceptional_one = |i: usize| g.vertex(i).genus == 0 && g.vertex(i).weight == -1;
    let minimal_resolution = !(0..g.len()).any(exceptional_one);
    let minimal_good = (0..g.len())
        .filter(|&i| exceptional_one(i))
        .all(|i| g.valency(i) >= 3);
    let tree = g.is_tree();
    let branch_points = (0..g.len()).filter(|&i| g.valency(i) >= 3).count();
    Ok(GraphClassification {
        connected: true,
        negative_definite,
        rational,
        rdp: rational && all_minus_two,
        minimal_resolution,
        minimal_good,
        star_shaped: tree && branch_points <= 1,
        chain: tree && branch_points == 0,
        fundamental_cycle,
        p_a_z0,
    })
}
