//! Built-in consistency suites run by `singinv selftest`.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cohomology::{giraud_round_with, rational_invariants, LineBundleClass};
use crate::enumerate::{run_enumeration, tree_shapes};
use crate::error::{Error, Result};
use crate::fixtures::{self, QuotientSweepManifest, TwoNodeExpected};
use crate::graph::{
    fundamental_cycle, intersection_form, is_negative_definite, parse_graph, Cycle, ResolutionGraph,
};
use crate::quotient::{self, BrieskornQuotient};
use crate::seifert::{
    self, coboundary_coefficient, gorenstein_exponent, graph_to_seifert, hj_expand, hj_value,
    seifert_to_graph, SeifertData,
};

pub const SUITES: &[&str] = &[
    "fixtures",
    "graph-oracles",
    "rounding",
    "coboundary",
    "seifert",
    "quotient",
    "enumeration",
];

/// The reference inputs, embedded or read from a directory.
#[derive(Debug, Clone)]
pub struct FixtureSet {
    pub two_node: String,
    pub two_node_expected: String,
    pub sphere_m1: String,
    pub sphere_m2: String,
    pub d4: String,
    pub e8: String,
    pub quotient_sweep: String,
}

const FILES: [&str; 7] = [
    "two_node.graph",
    "two_node.expected.json",
    "homology_sphere_m1.graph",
    "homology_sphere_m2.graph",
    "d4.seifert.json",
    "e8.seifert.json",
    "quotient_sweep.json",
];

impl FixtureSet {
    pub fn embedded() -> Self {
        FixtureSet {
            two_node: fixtures::TWO_NODE.into(),
            two_node_expected: fixtures::TWO_NODE_EXPECTED.into(),
            sphere_m1: fixtures::HOMOLOGY_SPHERE_M1.into(),
            sphere_m2: fixtures::HOMOLOGY_SPHERE_M2.into(),
            d4: fixtures::D4_SEIFERT.into(),
            e8: fixtures::E8_SEIFERT.into(),
            quotient_sweep: fixtures::QUOTIENT_SWEEP.into(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let entries = fs::read_dir(dir)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
        if entries.count() == 0 {
            return Err(Error::InvalidArgument(format!(
                "fixture directory {} is empty",
                dir.display()
            )));
        }
        let read = |name: &str| {
            fs::read_to_string(dir.join(name))
                .map_err(|e| Error::InvalidArgument(format!("{name}: {e}")))
        };
        let mut texts = Vec::with_capacity(FILES.len());
        for name in FILES {
            texts.push(read(name)?);
        }
        let mut it = texts.into_iter();
        let mut next = || it.next().expect("one text per file");
        Ok(FixtureSet {
            two_node: next(),
            two_node_expected: next(),
            sphere_m1: next(),
            sphere_m2: next(),
            d4: next(),
            e8: next(),
            quotient_sweep: next(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, failures: Vec<String>, ok_detail: String) -> SuiteResult {
    SuiteResult {
        name: name.to_string(),
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            ok_detail
        } else {
            failures.join("; ")
        },
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok {
        failures.push(what());
    }
}

fn fixtures_suite(f: &FixtureSet) -> SuiteResult {
    let mut fails = Vec::new();
    let run = |fails: &mut Vec<String>| -> Result<()> {
        let g = parse_graph(&f.two_node)?;
        let expected: TwoNodeExpected =
            serde_json::from_str(&f.two_node_expected).map_err(|e| Error::Json(e.to_string()))?;
        let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();
        check(fails, ids == expected.vertex_order, || {
            "two-node vertex order differs from expected file".into()
        });
        let inv = rational_invariants(&g)?;
        check(
            fails,
            inv.y == Cycle::from_i64(&expected.minus_k_roundup),
            || format!("[-K] = {}", inv.y),
        );
        check(
            fails,
            inv.h1_minus_k_minus_e == Some(BigInt::from(expected.h1_minus_k_minus_e)),
            || format!("h1(-(K+E)) = {:?}", inv.h1_minus_k_minus_e),
        );
        for (m, text) in [(1, &f.sphere_m1), (2, &f.sphere_m2)] {
            let s = parse_graph(text)?;
            check(fails, s == fixtures::homology_sphere(m), || {
                format!("homology sphere m={m} differs from generator")
            });
            let det = intersection_form(&s).determinant();
            check(fails, det.magnitude().to_u64() == Some(1), || {
                format!("homology sphere m={m}: |det| = {det}")
            });
            check(
                fails,
                rational_invariants(&s) == Err(Error::NotRational),
                || format!("homology sphere m={m} not refused as non-rational"),
            );
            let meta = fixtures::graph_metadata(text);
            let mu = meta.get("mu").and_then(|v| v.split_whitespace().next());
            check(
                fails,
                mu == Some(format!("{}", 12 * m + 1).as_str()),
                || format!("homology sphere m={m}: metadata mu missing or wrong"),
            );
        }
        let d4 = SeifertData::from_json(&f.d4)?;
        let e8 = SeifertData::from_json(&f.e8)?;
        check(
            fails,
            gorenstein_exponent(&e8) == Some(BigInt::from(-1)),
            || "E8 Gorenstein exponent".into(),
        );
        check(
            fails,
            gorenstein_exponent(&d4) == Some(BigInt::from(-1)),
            || "D4 Gorenstein exponent".into(),
        );
        check(fails, seifert::p_g(&d4)?.is_zero(), || "D4 p_g".into());
        let manifest: QuotientSweepManifest =
            serde_json::from_str(&f.quotient_sweep).map_err(|e| Error::Json(e.to_string()))?;
        for spot in &manifest.spot_checks {
            let q =
                BrieskornQuotient::new(spot.exponents.clone(), spot.order, spot.weights.clone())?;
            let rep = quotient::quotient_report(&q)?;
            let got = (rep.mu.to_u64(), rep.bar_mu.to_u64(), rep.bar_tau.to_u64());
            check(
                fails,
                got == (Some(spot.mu), Some(spot.bar_mu), Some(spot.bar_tau)),
                || format!("{q}: got {got:?}"),
            );
        }
        Ok(())
    };
    if let Err(e) = run(&mut fails) {
        fails.push(e.to_string());
    }
    outcome("fixtures", fails, "reference values reproduced".into())
}

/// Negative definite trees with `<= max_n` vertices and weights in
/// `[min_weight, -1]`, every labelling.
fn small_graphs(max_n: usize, min_weight: i64) -> Vec<ResolutionGraph> {
    let base = (-min_weight) as u64;
    let mut out = Vec::new();
    for n in 1..=max_n {
        for shape in tree_shapes(n) {
            for idx in 0..base.pow(n as u32) {
                let mut i = idx;
                let weights: Vec<i64> = (0..n)
                    .map(|_| {
                        let w = -1 - (i % base) as i64;
                        i /= base;
                        w
                    })
                    .collect();
                let g = shape.with_weights(&weights);
                if is_negative_definite(&intersection_form(&g)) {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn for_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let n = lo.len();
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = 0;
        while i < n {
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
        if i == n {
            return;
        }
    }
}

fn graph_oracle_suite() -> SuiteResult {
    const BOX: i64 = 6;
    let mut fails = Vec::new();
    let graphs = small_graphs(4, -4);
    for g in &graphs {
        let n = g.len();
        let mut best: Option<Vec<i64>> = None;
        for_box(&vec![0; n], &vec![BOX; n], |z| {
            if z.iter().all(|&m| m == 0) {
                return;
            }
            let c = Cycle::from_i64(z);
            if (0..n).all(|j| g.dot_vertex(&c, j) <= BigInt::zero()) {
                best = Some(match best.take() {
                    None => z.to_vec(),
                    Some(b) => b.iter().zip(z).map(|(a, b)| *a.min(b)).collect(),
                });
            }
        });
        let laufer = fundamental_cycle(g);
        let agree = match (&best, &laufer) {
            (Some(b), Ok(z)) => Cycle::from_i64(b) == *z,
            (None, Ok(z)) => z.0.iter().any(|m| *m > BigInt::from(BOX)),
            _ => false,
        };
        check(&mut fails, agree, || {
            format!("Z_0 mismatch on {}", g.to_text().replace('\n', "; "))
        });
    }
    outcome(
        "graph-oracles",
        fails,
        format!(
            "Laufer Z_0 = brute-force minimum on {} graphs",
            graphs.len()
        ),
    )
}

fn rounding_suite() -> SuiteResult {
    let mut fails = Vec::new();
    let mut instances = 0usize;
    for g in small_graphs(3, -4) {
        let n = g.len();
        let ones = Cycle::ones(n);
        for_box(&vec![-2; n], &vec![2; n], |deg| {
            let l = LineBundleClass::from_i64(deg);
            let first = giraud_round_with(&g, &l, |v| v[0]);
            let last = giraud_round_with(&g, &l, |v| *v.last().expect("nonempty"));
            let shifted = giraud_round_with(&g, &l.minus_cycle(&g, &ones), |v| v[0]);
            instances += 1;
            match (first, last, shifted) {
                (Ok(a), Ok(b), Ok(c)) => {
                    check(&mut fails, a.round == b.round, || {
                        format!("order dependence at L = {deg:?}")
                    });
                    check(&mut fails, c.round == &a.round - &ones, || {
                        format!("[L - E] != [L] - E at L = {deg:?}")
                    });
                }
                _ => fails.push(format!("rounding failed at L = {deg:?}")),
            }
        });
    }
    outcome(
        "rounding",
        fails,
        format!("order independence and translation on {instances} instances"),
    )
}

fn coboundary_suite() -> SuiteResult {
    let mut fails = Vec::new();
    let mut cases = 0;
    for n in 2..=12i64 {
        for q in 1..n {
            if num_integer::gcd(n, q) != 1 {
                continue;
            }
            for k in -40..=40i64 {
                cases += 1;
                let c = coboundary_coefficient(&BigInt::from(k), n, q);
                let expected = if (k * q - 1).rem_euclid(n) == 0 {
                    0
                } else {
                    -1
                };
                check(&mut fails, c == BigInt::from(expected), || {
                    format!("k={k} n={n} q={q}: {c}")
                });
            }
        }
    }
    outcome(
        "coboundary",
        fails,
        format!("{cases} cases match the congruence rule"),
    )
}

fn seifert_suite() -> SuiteResult {
    let mut fails = Vec::new();
    for n in 2..=30i64 {
        for q in 1..n {
            if num_integer::gcd(n, q) != 1 {
                continue;
            }
            let ok = hj_expand(n, q).and_then(|bs| hj_value(&bs)) == Ok((n, q));
            check(&mut fails, ok, || {
                format!("continued fraction round trip {n}/{q}")
            });
        }
    }
    let arm_types: Vec<(i64, i64)> = (2..=5i64)
        .flat_map(|n| {
            (1..n)
                .filter(move |&q| num_integer::gcd(n, q) == 1)
                .map(move |q| (n, q))
        })
        .collect();
    let mut count = 0;
    for b in 1..=3 {
        for a in 0..arm_types.len() {
            for c in a..arm_types.len() {
                for d in c..arm_types.len() {
                    let arms = vec![arm_types[a], arm_types[c], arm_types[d]];
                    let Ok(s) = SeifertData::new(0, b, arms) else {
                        continue;
                    };
                    count += 1;
                    let round = seifert_to_graph(&s).and_then(|g| graph_to_seifert(&g));
                    check(&mut fails, round.as_ref() == Ok(&s), || {
                        format!("graph round trip b={b} arms={:?}", s.arms)
                    });
                    check(
                        &mut fails,
                        seifert::rationality_cross_check(&s) == Ok(true),
                        || format!("p_g = 0 vs rationality b={b} arms={:?}", s.arms),
                    );
                }
            }
        }
    }
    outcome(
        "seifert",
        fails,
        format!("continued fractions n <= 30; {count} three-arm data round-trip and agree with rationality"),
    )
}

fn quotient_suite(manifest: &QuotientSweepManifest) -> SuiteResult {
    let domain = quotient::sweep_domain(
        manifest.max_order,
        manifest.max_exponent,
        manifest.min_variables,
        manifest.max_variables,
    );
    let summary = match quotient::sweep(&domain, 3) {
        Ok(s) => s,
        Err(e) => return outcome("quotient", vec![e.to_string()], String::new()),
    };
    let mut fails = Vec::new();
    check(&mut fails, summary.euler_failures == 0, || {
        format!("{} Euler relation failures", summary.euler_failures)
    });
    check(&mut fails, summary.lefschetz_failures == 0, || {
        format!("{} Lefschetz failures", summary.lefschetz_failures)
    });
    check(&mut fails, summary.isotypic_failures == 0, || {
        format!("{} isotypic failures", summary.isotypic_failures)
    });
    check(&mut fails, summary.verdict_failures() == 0, || {
        format!(
            "verdict mismatches: {} in even dimension, {} in odd dimension (e.g. {})",
            summary.verdict_failures_even,
            summary.verdict_failures_odd,
            summary.examples.first().map_or("-", String::as_str)
        )
    });
    outcome(
        "quotient",
        fails,
        format!("{} quotients ({} in SL)", summary.cases, summary.sl_cases),
    )
}

fn enumeration_suite() -> SuiteResult {
    match run_enumeration(5, -4) {
        Ok(s) => outcome(
            "enumeration",
            s.failures.clone(),
            format!("{} trees, {} checked, no failures", s.scanned, s.checked),
        ),
        Err(e) => outcome("enumeration", vec![e.to_string()], String::new()),
    }
}

/// Runs the named suites (all when `only` is empty).
pub fn run(fixtures: &FixtureSet, only: &[String]) -> Result<Vec<SuiteResult>> {
    for name in only {
        if !SUITES.contains(&name.as_str()) {
            return Err(Error::InvalidArgument(format!("unknown suite `{name}`")));
        }
    }
    let wanted = |name: &str| only.is_empty() || only.iter().any(|o| o == name);
    let mut out = Vec::new();
    if wanted("fixtures") {
        out.push(fixtures_suite(fixtures));
    }
    if wanted("graph-oracles") {
        out.push(graph_oracle_suite());
    }
    if wanted("rounding") {
        out.push(rounding_suite());
    }
    if wanted("coboundary") {
        out.push(coboundary_suite());
    }
    if wanted("seifert") {
        out.push(seifert_suite());
    }
    if wanted("quotient") {
        let manifest: QuotientSweepManifest = serde_json::from_str(&fixtures.quotient_sweep)
            .map_err(|e| Error::Json(e.to_string()))?;
        out.push(quotient_suite(&manifest));
    }
    if wanted("enumeration") {
        out.push(enumeration_suite());
    }
    Ok(out)
}
