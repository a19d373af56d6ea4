//! Fraction-free integer linear algebra.
//!
//! Inputs and outputs are `BigInt`. Elimination runs on checked `i64` first
//! and redoes the work on `BigInt` if anything overflows; the only division
//! is Bareiss's exact division by the previous pivot.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Raised by the machine-integer path when an intermediate value overflows.
struct Overflow;

/// Exact ring operations for elimination. `i64` reports overflow;
/// `BigInt` never does.
trait Ring: Clone + Sized {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn mul(&self, o: &Self) -> Result<Self, Overflow>;
    fn sub(&self, o: &Self) -> Result<Self, Overflow>;
    /// Exact division.
    fn div(&self, o: &Self) -> Self;
}

impl Ring for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Ring for BigInt {
    fn nil() -> Self {
        BigInt::zero()
    }
    fn unit() -> Self {
        BigInt::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self * o)
    }
    fn sub(&self, o: &Self) -> Result<Self, Overflow> {
        Ok(self - o)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

fn to_small(m: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    let mut out = Vec::with_capacity(m.len());
    for row in m {
        let mut r = Vec::with_capacity(row.len());
        for v in row {
            r.push(v.to_i64()?);
        }
        out.push(r);
    }
    Some(out)
}

/// Runs `f` on machine integers when the entries fit, falling back to
/// `BigInt` on overflow.
fn with_ring<T>(
    m: &[Vec<BigInt>],
    small: impl FnOnce(Vec<Vec<i64>>) -> Result<T, Overflow>,
    big: impl FnOnce(IntMatrix) -> Result<T, Overflow>,
) -> T {
    if let Some(a) = to_small(m) {
        if let Ok(v) = small(a) {
            return v;
        }
    }
    big(m.to_vec()).unwrap_or_else(|_| unreachable!("BigInt arithmetic does not overflow"))
}

/// One Bareiss elimination step on rows below `k`, using `a[k][k]` as pivot
/// and `prev` as the previous pivot.
fn bareiss_step<R: Ring>(a: &mut [Vec<R>], k: usize, prev: &R) -> Result<(), Overflow> {
    let cols = a[k].len();
    let (top, bottom) = a.split_at_mut(k + 1);
    let pivot_row = &top[k];
    for row in bottom.iter_mut() {
        let lead = row[k].clone();
        for j in k + 1..cols {
            let v = pivot_row[k].mul(&row[j])?.sub(&lead.mul(&pivot_row[j])?)?;
            row[j] = v.div(prev);
        }
        row[k] = R::nil();
    }
    Ok(())
}

fn minors_in<R: Ring>(mut a: Vec<Vec<R>>) -> Result<Vec<R>, Overflow> {
    let n = a.len();
    let mut prev = R::unit();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        minors.push(pivot.clone());
        if pivot.is_nil() {
            break;
        }
        bareiss_step(&mut a, k, &prev)?;
        prev = pivot;
    }
    Ok(minors)
}

/// Leading principal minors `det(a[..k][..k])` for `k = 1..=n`, computed by
/// Bareiss elimination without pivoting. Stops at the first zero minor, so
/// the result may be shorter than `n`; its last entry is then zero.
pub fn leading_principal_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    with_ring(
        m,
        |a| Ok(minors_in(a)?.into_iter().map(BigInt::from).collect()),
        minors_in,
    )
}

/// Row-pivoted Bareiss elimination in place. Returns `None` when singular,
/// otherwise whether an odd number of row swaps happened.
fn eliminate<R: Ring>(a: &mut [Vec<R>]) -> Result<Option<bool>, Overflow> {
    let n = a.len();
    let mut prev = R::unit();
    let mut odd = false;
    for k in 0..n {
        if a[k][k].is_nil() {
            match (k + 1..n).find(|&i| !a[i][k].is_nil()) {
                Some(i) => {
                    a.swap(k, i);
                    odd = !odd;
                }
                None => return Ok(None),
            }
        }
        let pivot = a[k][k].clone();
        bareiss_step(a, k, &prev)?;
        prev = pivot;
    }
    Ok(Some(odd))
}

fn determinant_in<R: Ring>(mut a: Vec<Vec<R>>) -> Result<(R, bool), Overflow> {
    let n = a.len();
    Ok(match eliminate(&mut a)? {
        None => (R::nil(), false),
        Some(odd) => (a[n - 1][n - 1].clone(), odd),
    })
}

/// Exact determinant via Bareiss elimination with row pivoting.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::one();
    }
    let (det, odd) = with_ring(
        m,
        |a| determinant_in(a).map(|(d, odd)| (BigInt::from(d), odd)),
        determinant_in,
    );
    if odd {
        -det
    } else {
        det
    }
}

/// Scaled solutions `y` (one per right-hand side) and the common `d`.
type Scaled<R> = Option<(Vec<Vec<R>>, R)>;

/// Eliminates `[m | b_1 ... b_k]` once and back-substitutes each column.
fn solve_in<R: Ring>(mut a: Vec<Vec<R>>) -> Result<Scaled<R>, Overflow> {
    let n = a.len();
    if eliminate(&mut a)?.is_none() {
        return Ok(None);
    }
    let d = a[n - 1][n - 1].clone();
    let mut solutions = Vec::with_capacity(a[0].len() - n);
    for c in n..a[0].len() {
        let mut y: Vec<R> = vec![R::nil(); n];
        for i in (0..n).rev() {
            let mut acc = d.mul(&a[i][c])?;
            for j in i + 1..n {
                if !a[i][j].is_nil() {
                    acc = acc.sub(&a[i][j].mul(&y[j])?)?;
                }
            }
            y[i] = acc.div(&a[i][i]);
        }
        solutions.push(y);
    }
    Ok(Some((solutions, d)))
}

/// Solves `m x = b` as `x = y / d` with integral `y` and `d = +-det(m) != 0`.
/// Returns `None` when `m` is singular.
///
/// Back-substitution stays fraction-free: `u_ii y_i = d c_i - sum u_ij y_j`
/// and the division is exact because `d x` is integral (Cramer).
pub fn solve_scaled(m: &[Vec<BigInt>], b: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let (mut ys, d) = solve_scaled_many(m, &[b])?;
    Some((ys.pop().expect("one right-hand side"), d))
}

/// [`solve_scaled`] for several right-hand sides sharing one elimination.
pub fn solve_scaled_many(
    m: &[Vec<BigInt>],
    bs: &[&[BigInt]],
) -> Option<(Vec<Vec<BigInt>>, BigInt)> {
    let n = m.len();
    for b in bs {
        assert_eq!(b.len(), n, "right-hand side length mismatch");
    }
    if n == 0 {
        return Some((vec![Vec::new(); bs.len()], BigInt::one()));
    }
    let augmented: IntMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = Vec::with_capacity(n + bs.len());
            r.extend_from_slice(row);
            r.extend(bs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    with_ring(
        &augmented,
        |a| {
            Ok(solve_in(a)?.map(|(ys, d)| {
                let ys = ys
                    .into_iter()
                    .map(|y| y.into_iter().map(BigInt::from).collect())
                    .collect();
                (ys, BigInt::from(d))
            }))
        },
        solve_in,
    )
}

/// Solves `m x = b` exactly. Returns `None` when `m` is singular.
pub fn solve(m: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<BigRational>> {
    let (y, d) = solve_scaled(m, b)?;
    Some(
        y.into_iter()
            .map(|v| BigRational::new(v, d.clone()))
            .collect(),
    )
}

/// `true` iff every leading principal minor of `m` is strictly positive.
pub fn is_positive_definite(m: &[Vec<BigInt>]) -> bool {
    let minors = leading_principal_minors(m);
    minors.len() == m.len() && minors.iter().all(|d| d.is_positive())
}

pub fn from_i64(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}
