//! Cyclic quotients of Brieskorn-Pham singularities `sum x_i^{a_i} = 0`
//! under `x_i -> zeta^{w_i} x_i`, `zeta` a primitive `r`-th root of unity:
//! character decompositions of the Jacobian algebra and of the vanishing
//! cohomology, and the invariant Milnor and Tjurina numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// How the group acts on functions. Covariant: `x^m` has character
/// `sum m_i w_i`; dual: `-sum m_i w_i`. Invariant dimensions agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionConvention {
    Covariant,
    Dual,
}

pub const CONVENTION: ActionConvention = ActionConvention::Covariant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrieskornQuotient {
    pub exponents: Vec<u32>,
    pub order: u32,
    pub weights: Vec<u32>,
    /// Optional monomial basis of the Jacobian algebra, checked against the
    /// standard one and used for the counts.
    pub explicit_basis: Option<Vec<Vec<u32>>>,
}

impl fmt::Display for BrieskornQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(
            f,
            "a=({}) r={} w=({})",
            join(&self.exponents),
            self.order,
            join(&self.weights)
        )
    }
}

impl BrieskornQuotient {
    pub fn new(exponents: Vec<u32>, order: u32, weights: Vec<u32>) -> Result<Self> {
        let q = BrieskornQuotient {
            exponents,
            order,
            weights,
            explicit_basis: None,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn with_basis(mut self, basis: Vec<Vec<u32>>) -> Result<Self> {
        self.explicit_basis = Some(basis);
        self.validate()?;
        Ok(self)
    }

    /// Number of variables.
    pub fn variables(&self) -> usize {
        self.exponents.len()
    }

    /// Complex dimension of the hypersurface, `variables - 1`.
    pub fn dimension(&self) -> usize {
        self.variables() - 1
    }

    /// Every failed hypothesis, one message each; empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.variables() < 2 {
            out.push("need at least two variables".to_string());
        }
        if self.weights.len() != self.variables() {
            out.push(format!(
                "{} exponents but {} weights",
                self.variables(),
                self.weights.len()
            ));
        }
        if self.order == 0 {
            out.push("group order must be positive".to_string());
            return out;
        }
        for &a in self.exponents.iter().filter(|&&a| a < 2) {
            out.push(format!("exponent {a} < 2"));
        }
        let r = u64::from(self.order);
        for (i, (&a, &w)) in self.exponents.iter().zip(&self.weights).enumerate() {
            if (u64::from(a) * u64::from(w)) % r != 0 {
                out.push(format!(
                    "invariance fails at i={}: {r} does not divide {a}*{w}",
                    i + 1
                ));
            }
            if u64::from(w).gcd(&r) != 1 {
                out.push(format!("freeness fails at i={}: gcd({w}, {r}) != 1", i + 1));
            }
        }
        if out.is_empty() {
            if let Some(basis) = &self.explicit_basis {
                if let Err(Error::InvalidQuotient(m)) = self.check_basis(basis) {
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidQuotient(v.join("; ")))
        }
    }

    /// Curves (`n = 1`) are arithmetically fine but not surface singularities.
    pub fn outside_surface_scope(&self) -> bool {
        self.dimension() == 1
    }

    fn check_basis(&self, basis: &[Vec<u32>]) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidQuotient(m));
        let mut seen = std::collections::HashSet::new();
        for m in basis {
            if m.len() != self.variables() {
                return bad(format!("basis monomial {m:?} has wrong length"));
            }
            if m.iter().zip(&self.exponents).any(|(&e, &a)| e + 2 > a) {
                return bad(format!(
                    "basis monomial {m:?} vanishes in the Jacobian algebra"
                ));
            }
            if !seen.insert(m.clone()) {
                return bad(format!("basis monomial {m:?} repeated"));
            }
        }
        if BigInt::from(basis.len()) != milnor_number(self) {
            return bad(format!(
                "basis has {} monomials, Milnor number is {}",
                basis.len(),
                milnor_number(self)
            ));
        }
        Ok(())
    }

    /// Character of `dx_1 ^ ... ^ dx_n`.
    pub fn volume_character(&self) -> u32 {
        let d: u64 = self.weights.iter().map(|&w| u64::from(w)).sum();
        (d % u64::from(self.order)) as u32
    }

    pub fn in_sl(&self) -> bool {
        self.volume_character() == 0
    }
}

/// `mu = prod (a_i - 1)`.
pub fn milnor_number(q: &BrieskornQuotient) -> BigInt {
    q.exponents.iter().map(|&a| BigInt::from(a - 1)).product()
}

/// Dimensions of the isotypic pieces, indexed by character `0..r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterCounts(pub Vec<BigInt>);

impl CharacterCounts {
    pub fn get(&self, c: i64) -> &BigInt {
        &self.0[c.rem_euclid(self.0.len() as i64) as usize]
    }

    pub fn total(&self) -> BigInt {
        self.0.iter().sum()
    }
}

fn signed_char(conv: ActionConvention, c: u64, r: u64) -> usize {
    match conv {
        ActionConvention::Covariant => (c % r) as usize,
        ActionConvention::Dual => ((r - c % r) % r) as usize,
    }
}

/// `counts_J[c] = #{m : 0 <= m_i <= a_i - 2, sum m_i w_i = c mod r}`.
pub fn jacobian_counts_with(q: &BrieskornQuotient, conv: ActionConvention) -> CharacterCounts {
    let r = q.order as usize;
    let ru = u64::from(q.order);
    if let Some(basis) = &q.explicit_basis {
        let mut counts = vec![BigInt::zero(); r];
        for m in basis {
            let c: u64 = m
                .iter()
                .zip(&q.weights)
                .map(|(&e, &w)| u64::from(e) * u64::from(w) % ru)
                .sum();
            counts[signed_char(conv, c, ru)] += 1;
        }
        return CharacterCounts(counts);
    }
    // convolve one variable at a time
    let mut counts = vec![BigInt::zero(); r];
    counts[0] = BigInt::one();
    for (&a, &w) in q.exponents.iter().zip(&q.weights) {
        let mut step = vec![0u64; r];
        for m in 0..u64::from(a - 1) {
            step[signed_char(conv, m * u64::from(w), ru)] += 1;
        }
        let mut next = vec![BigInt::zero(); r];
        for (c, cnt) in counts.iter().enumerate() {
            if cnt.is_zero() {
                continue;
            }
            for (s, &k) in step.iter().enumerate() {
                if k > 0 {
                    next[(c + s) % r] += cnt * k;
                }
            }
        }
        counts = next;
    }
    CharacterCounts(counts)
}

pub fn jacobian_counts(q: &BrieskornQuotient) -> CharacterCounts {
    jacobian_counts_with(q, CONVENTION)
}

/// Vanishing cohomology as `J (x) dx`: `counts_H[c] = counts_J[c - d]`.
pub fn h_counts_with(q: &BrieskornQuotient, conv: ActionConvention) -> CharacterCounts {
    let j = jacobian_counts_with(q, conv);
    let r = q.order as i64;
    let d = signed_char(conv, u64::from(q.volume_character()), u64::from(q.order)) as i64;
    CharacterCounts((0..r).map(|c| j.get(c - d).clone()).collect())
}

pub fn h_counts(q: &BrieskornQuotient) -> CharacterCounts {
    h_counts_with(q, CONVENTION)
}

fn sign(q: &BrieskornQuotient) -> i64 {
    if q.dimension().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `1 + (-1)^n mu = r (1 + (-1)^n bar_mu)`: Euler characteristics of the
/// Milnor fibre and its free quotient.
pub fn euler_relation_holds(q: &BrieskornQuotient, bar_mu: &BigInt) -> bool {
    let s = sign(q);
    let lhs = 1 + s * milnor_number(q);
    let rhs = BigInt::from(q.order) * (1 + s * bar_mu);
    lhs == rhs
}

/// Milnor number of the quotient: the invariant part of the vanishing
/// cohomology.
pub fn bar_mu(q: &BrieskornQuotient) -> Result<BigInt> {
    let value = h_counts(q).get(0).clone();
    if !euler_relation_holds(q, &value) {
        return Err(Error::Identity(format!(
            "Euler relation fails for {q}: mu = {}, bar_mu = {value}",
            milnor_number(q)
        )));
    }
    Ok(value)
}

/// Tjurina number of the quotient: the invariant part of the Tjurina
/// algebra, which equals the Jacobian algebra here.
pub fn bar_tau(q: &BrieskornQuotient) -> BigInt {
    jacobian_counts(q).get(0).clone()
}

/// `(dim J, dim T)`: `f = sum (x_i / a_i) df/dx_i` lies in the Jacobian
/// ideal, so the two agree.
pub fn dim_j_vs_t(q: &BrieskornQuotient) -> (BigInt, BigInt) {
    let mu = milnor_number(q);
    (mu.clone(), mu)
}

/// For a free action, `H` is `chi/r` copies of the regular representation
/// minus the trivial one (up to sign), `chi = 1 + (-1)^n mu`.
pub fn lefschetz_check(q: &BrieskornQuotient) -> bool {
    let h = h_counts(q);
    let r = BigInt::from(q.order);
    let mu = milnor_number(q);
    let (numer, trivial_shift): (BigInt, i64) = if sign(q) == 1 {
        (&mu + 1, -1)
    } else {
        (&mu - 1, 1)
    };
    if !(&numer % &r).is_zero() {
        return false;
    }
    let share = numer / &r;
    (0..i64::from(q.order)).all(|c| {
        let expected = if c == 0 {
            &share + trivial_shift
        } else {
            share.clone()
        };
        *h.get(c) == expected
    })
}

/// `J^G = H^{chi_d}`: the invariant Jacobian piece is the `-d` isotypic
/// piece of the vanishing cohomology.
pub fn isotypic_check(q: &BrieskornQuotient) -> bool {
    let d = i64::from(q.volume_character());
    jacobian_counts(q).get(0) == h_counts(q).get(-d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `bar_mu = bar_tau`.
    EqualitySl,
    /// `bar_mu = bar_tau - 1`.
    EqualityNonSl,
    Violation {
        bar_mu: BigInt,
        bar_tau: BigInt,
    },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::EqualitySl => "equality_SL",
            Verdict::EqualityNonSl => "equality_nonSL",
            Verdict::Violation { .. } => "violation",
        }
    }
}

/// Compares `bar_mu` with `bar_tau`; `holds` is whether the outcome matches
/// the group type (equality in `SL`, `bar_mu = bar_tau - 1` outside).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictReport {
    pub in_sl: bool,
    pub verdict: Verdict,
    pub holds: bool,
}

pub fn smoothing_verdict(q: &BrieskornQuotient) -> Result<VerdictReport> {
    let bar_mu = bar_mu(q)?;
    let bar_tau = bar_tau(q);
    let verdict = if bar_mu == bar_tau {
        Verdict::EqualitySl
    } else if &bar_mu + 1 == bar_tau {
        Verdict::EqualityNonSl
    } else {
        Verdict::Violation { bar_mu, bar_tau }
    };
    let in_sl = q.in_sl();
    let holds = matches!(
        (in_sl, &verdict),
        (true, Verdict::EqualitySl) | (false, Verdict::EqualityNonSl)
    );
    Ok(VerdictReport {
        in_sl,
        verdict,
        holds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientReport {
    pub quotient: BrieskornQuotient,
    /// Quotient of a Gorenstein singularity by a subgroup of `SL`.
    pub gorenstein_quotient: bool,
    pub mu: BigInt,
    pub bar_mu: BigInt,
    pub bar_tau: BigInt,
    pub counts_j: CharacterCounts,
    pub counts_h: CharacterCounts,
    pub euler_ok: bool,
    pub lefschetz_ok: bool,
    pub isotypic_ok: bool,
    pub verdict: VerdictReport,
}

pub fn quotient_report(q: &BrieskornQuotient) -> Result<QuotientReport> {
    q.validate()?;
    let counts_h = h_counts(q);
    let bar_mu = counts_h.get(0).clone();
    let euler_ok = euler_relation_holds(q, &bar_mu);
    Ok(QuotientReport {
        quotient: q.clone(),
        gorenstein_quotient: q.in_sl(),
        mu: milnor_number(q),
        bar_tau: bar_tau(q),
        counts_j: jacobian_counts(q),
        counts_h,
        euler_ok,
        lefschetz_ok: lefschetz_check(q),
        isotypic_ok: isotypic_check(q),
        verdict: smoothing_verdict(q)?,
        bar_mu,
    })
}

/// Every valid quotient with `1 <= r <= max_order`, nondecreasing exponents
/// in `2..=max_exponent` and the given range of variable counts.
pub fn sweep_domain(
    max_order: u32,
    max_exponent: u32,
    min_variables: usize,
    max_variables: usize,
) -> Vec<BrieskornQuotient> {
    let mut out = Vec::new();
    for vars in min_variables.max(2)..=max_variables {
        for exps in nondecreasing(vars, 2, max_exponent) {
            for r in 1..=max_order {
                let choices: Vec<Vec<u32>> = exps
                    .iter()
                    .map(|&a| {
                        (0..r)
                            .filter(|&w| (a * w) % r == 0 && w.gcd(&r) == 1)
                            .collect()
                    })
                    .collect();
                for weights in product(&choices) {
                    out.push(BrieskornQuotient {
                        exponents: exps.clone(),
                        order: r,
                        weights,
                        explicit_basis: None,
                    });
                }
            }
        }
    }
    out
}

fn nondecreasing(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in lo..=hi {
        for mut rest in nondecreasing(len - 1, first, hi) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product(choices: &[Vec<u32>]) -> Vec<Vec<u32>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.iter()
            .flat_map(|prefix| {
                options.iter().map(move |&w| {
                    let mut v = prefix.clone();
                    v.push(w);
                    v
                })
            })
            .collect()
    })
}

/// Tallies over a sweep.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub cases: usize,
    pub sl_cases: usize,
    pub euler_failures: usize,
    pub lefschetz_failures: usize,
    pub isotypic_failures: usize,
    /// Verdict mismatches in even dimension.
    pub verdict_failures_even: usize,
    /// Verdict mismatches in odd dimension.
    pub verdict_failures_odd: usize,
    pub examples: Vec<String>,
}

impl SweepSummary {
    pub fn verdict_failures(&self) -> usize {
        self.verdict_failures_even + self.verdict_failures_odd
    }
}

pub fn sweep(quotients: &[BrieskornQuotient], keep_examples: usize) -> Result<SweepSummary> {
    let mut s = SweepSummary::default();
    for q in quotients {
        let rep = quotient_report(q)?;
        s.cases += 1;
        s.sl_cases += usize::from(rep.verdict.in_sl);
        s.euler_failures += usize::from(!rep.euler_ok);
        s.lefschetz_failures += usize::from(!rep.lefschetz_ok);
        s.isotypic_failures += usize::from(!rep.isotypic_ok);
        if !rep.verdict.holds {
            if q.dimension() % 2 == 0 {
                s.verdict_failures_even += 1;
            } else {
                s.verdict_failures_odd += 1;
            }
            if s.examples.len() < keep_examples {
                s.examples.push(format!(
                    "{q}: mu={} bar_mu={} bar_tau={} ({})",
                    rep.mu,
                    rep.bar_mu,
                    rep.bar_tau,
                    rep.verdict.verdict.name()
                ));
            }
        }
    }
    Ok(s)
}
