use std::fmt;
use std::ops::{Add, Index, IndexMut, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Integral cycle `sum m_i E_i`, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle(pub Vec<BigInt>);

/// Rational cycle `sum a_i E_i`, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QCycle(pub Vec<BigRational>);

impl Cycle {
    pub fn zero(n: usize) -> Self {
        Cycle(vec![BigInt::zero(); n])
    }

    /// The reduced exceptional cycle `E = sum E_i`.
    pub fn ones(n: usize) -> Self {
        Cycle(vec![BigInt::from(1); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = Self::zero(n);
        c.0[i] = BigInt::from(1);
        c
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Cycle(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|m| !m.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.is_effective() && self.0.iter().any(|m| !m.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &Cycle) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub fn to_q(&self) -> QCycle {
        QCycle(
            self.0
                .iter()
                .map(|m| BigRational::from_integer(m.clone()))
                .collect(),
        )
    }

    /// Permutes entries: entry `perm[i]` moves to position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Cycle {
        Cycle(perm.iter().map(|&old| self.0[old].clone()).collect())
    }
}

impl QCycle {
    pub fn zero(n: usize) -> Self {
        QCycle(vec![BigRational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Componentwise ceiling.
    pub fn ceil(&self) -> Cycle {
        Cycle(self.0.iter().map(|a| a.ceil().to_integer()).collect())
    }

    pub fn scale(&self, factor: &BigRational) -> QCycle {
        QCycle(self.0.iter().map(|a| a * factor).collect())
    }
}

impl Index<usize> for Cycle {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl IndexMut<usize> for Cycle {
    fn index_mut(&mut self, i: usize) -> &mut BigInt {
        &mut self.0[i]
    }
}

impl Index<usize> for QCycle {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for &QCycle {
    type Output = QCycle;
    fn add(self, rhs: &QCycle) -> QCycle {
        QCycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for QCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}
