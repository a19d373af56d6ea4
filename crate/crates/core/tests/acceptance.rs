//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact
//! integer equalities; each criterion also carries a wall-clock budget.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singinv::cohomology::{
    e_dot_e_plus_3k_half, giraud_round, giraud_round_with, normal_bundle_h1, rational_invariants,
    rational_invariants_classified, LineBundleClass,
};
use singinv::enumerate::{enumerate_trees, tree_shapes};
use singinv::fixtures;
use singinv::graph::{chi_t, classify, fundamental_cycle, intersection_form};
use singinv::quotient::{bar_mu, bar_tau, milnor_number, sweep, sweep_domain, BrieskornQuotient};
use singinv::report::invariant_report;
use singinv::seifert::{
    coboundary_coefficient, gorenstein_exponent, p_g, seifert_to_graph, SeifertData,
};
use singinv::{Cycle, ResolutionGraph};

use common::*;

/// Criteria that fail for a documented reason: the stated equality is false
/// for odd-dimensional non-SL quotients, where `bar_mu = bar_tau + 1`.
const KNOWN_FAILING: &[u32] = &[9];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn to_i64(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small")).collect()
}

fn cycle_i64(c: &Cycle) -> Vec<i64> {
    to_i64(&c.0)
}

fn two_node() -> Outcome {
    let g = fixtures::two_node_graph();
    let expected = fixtures::two_node_expected();
    let r = match invariant_report(&g, Default::default()) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let (Some(y), Some(h1)) = (&r.minus_k_roundup, &r.h1_minus_k_minus_e) else {
        return outcome(false, "missing [-K] or h1(-(K+E))");
    };
    let y = cycle_i64(y);
    let order: Vec<usize> = expected
        .vertex_order
        .iter()
        .map(|id| g.index_of(id).expect("fixture id"))
        .collect();
    let y_ordered: Vec<i64> = order.iter().map(|&i| y[i]).collect();
    let node = (0..g.len())
        .find(|&i| g.valency(i) == 3)
        .expect("trivalent node");
    let m = matrix(&g);
    let minus_k: Vec<i64> = canonical_degrees(&g).iter().map(|d| -d).collect();
    let ok = *h1 == BigInt::from(expected.h1_minus_k_minus_e)
        && expected.h1_minus_k_minus_e == 2
        && y_ordered == expected.minus_k_roundup
        && y[node] == 3
        && is_round_up(&m, &minus_k, &y);
    outcome(ok, format!("h1(-(K+E))={h1}, [-K]={y_ordered:?}"))
}

/// Chains up to reversal with weights in `[-6, -2]`, some weight `<= -3`.
fn chain_weights() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for len in 1..=8 {
        for w in weight_vectors(len, -6, -2) {
            let rev: Vec<i64> = w.iter().rev().copied().collect();
            if w <= rev && w.iter().any(|&x| x <= -3) {
                out.push(w);
            }
        }
    }
    out
}

fn chains() -> Outcome {
    let all = chain_weights();
    let mut bad = Vec::new();
    for w in &all {
        let g = ResolutionGraph::chain(w).expect("chain");
        match rational_invariants(&g).map(|inv| inv.h1_minus_k_minus_e) {
            Ok(Some(v)) if v.is_zero() => {}
            other => bad.push(format!("{w:?}: {other:?}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} chains (up to reversal), {} nonzero; first {:?}",
            all.len(),
            bad.len(),
            bad.first()
        ),
    )
}

/// Criteria 3, 4 and the containment half of 6 share one pass over the
/// enumeration.
struct EnumerationPass {
    graphs: usize,
    checked: usize,
    rational: usize,
    residual_failures: Vec<String>,
    chi_failures: Vec<String>,
    containment_failures: Vec<String>,
    elapsed: Duration,
}

fn enumeration_pass() -> EnumerationPass {
    let start = Instant::now();
    let graphs = enumerate_trees(7, -5).expect("valid domain");
    let mut p = EnumerationPass {
        graphs: graphs.len(),
        checked: 0,
        rational: 0,
        residual_failures: Vec::new(),
        chi_failures: Vec::new(),
        containment_failures: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for g in &graphs {
        let label = || g.to_text().replace('\n', "; ");
        let e3k = e_e3k_half(g);
        let lib_ok = chi_t(g) == BigInt::from(chi_t_oracle(g))
            && normal_bundle_h1(g) == BigInt::from(normal_h1(g))
            && e_dot_e_plus_3k_half(g) == BigInt::from(e3k);
        if !lib_ok || chi_t_oracle(g) != normal_h1(g) - e3k {
            p.chi_failures.push(label());
        }
        let class = classify(g).expect("tree");
        if !class.rational {
            continue;
        }
        p.rational += 1;
        let z0 = class.fundamental_cycle.clone().expect("negative definite");
        let inv = match rational_invariants_classified(g, class) {
            Ok(inv) => inv,
            Err(e) => {
                p.residual_failures.push(format!("{}: {e}", label()));
                continue;
            }
        };
        if let Some(h1_mke) = &inv.h1_minus_k_minus_e {
            p.checked += 1;
            if &inv.h1_minus_k - h1_mke != BigInt::from(e3k) {
                p.residual_failures.push(label());
            }
            if !inv.y.dominates(&z0) {
                p.containment_failures.push(label());
            }
        }
    }
    p.elapsed = start.elapsed();
    p
}

fn chi_t_oracle(g: &ResolutionGraph) -> i64 {
    common::chi_t(g)
}

/// Every tree shape on up to five vertices with every weight vector in
/// `[-5, -1]`, plus cycles of length 3 to 5 with weights in `[-5, -2]`.
fn small_graphs() -> Vec<ResolutionGraph> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for shape in tree_shapes(n) {
            for w in weight_vectors(n, -5, -1) {
                out.push(shape.with_weights(&w));
            }
        }
    }
    for n in 3..=5 {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        for w in weight_vectors(n, -5, -2) {
            out.push(ResolutionGraph::genus_zero(&w, &edges).expect("cycle graph"));
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs = small_graphs();
    let (mut definite, mut rounds) = (0usize, 0usize);
    let mut bad = Vec::new();
    for g in &graphs {
        let m = matrix(g);
        let lib_definite = classify(g).expect("graph").negative_definite;
        if lib_definite != negative_definite(&m) {
            bad.push(format!("definiteness of {}", g.to_text()));
            continue;
        }
        if !lib_definite {
            continue;
        }
        definite += 1;
        let n = g.len();
        let z0 = cycle_i64(&fundamental_cycle(g).expect("definite"));
        let mut ok = is_fundamental_cycle(&m, &z0);
        if n <= 4 {
            let bound = 4;
            let brute = brute_fundamental_cycle(&m, bound);
            let want = z0.iter().all(|&v| v <= bound).then(|| z0.clone());
            ok &= brute == want;
        }
        let kdeg = canonical_degrees(g);
        let mut targets = vec![
            kdeg.iter().map(|d| -d).collect::<Vec<i64>>(),
            kdeg.iter()
                .zip(apply(&m, &vec![1; n]))
                .map(|(d, e)| -d - e)
                .collect(),
            vec![0; n],
        ];
        for _ in 0..3 {
            targets.push((0..n).map(|_| rng.gen_range(-3..=3)).collect());
        }
        for l in &targets {
            rounds += 1;
            let d = cycle_i64(
                &giraud_round(g, &LineBundleClass::from_i64(l))
                    .expect("definite")
                    .round,
            );
            ok &= is_round_up(&m, l, &d);
            if n <= 4 {
                let extra = 3;
                let lo = ceil_solution(&m, l);
                let brute = brute_round_up(&m, l, extra);
                let want = d
                    .iter()
                    .zip(&lo)
                    .all(|(a, b)| a - b <= extra)
                    .then(|| d.clone());
                ok &= brute == want;
            }
        }
        if !ok {
            bad.push(g.to_text().replace('\n', "; "));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} graphs, {definite} definite, {rounds} round-ups; {} mismatches",
            graphs.len(),
            bad.len()
        ),
    )
}

fn random_tree(rng: &mut ChaCha8Rng) -> ResolutionGraph {
    let n = rng.gen_range(1..=6);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=-1)).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    ResolutionGraph::genus_zero(&weights, &edges).expect("tree")
}

fn giraud_properties(pass: &EnumerationPass) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut instances = 0;
    let mut bad = 0;
    while instances < 1000 {
        let g = random_tree(&mut rng);
        if !classify(&g).expect("tree").negative_definite {
            continue;
        }
        instances += 1;
        let n = g.len();
        let l =
            LineBundleClass::from_i64(&(0..n).map(|_| rng.gen_range(-4..=4)).collect::<Vec<_>>());
        let d = Cycle::from_i64(&(0..n).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
        let base = giraud_round(&g, &l).expect("definite").round;
        let shifted = giraud_round(&g, &l.minus_cycle(&g, &d))
            .expect("definite")
            .round;
        let translated = shifted == &base - &d;
        let mut pick = ChaCha8Rng::seed_from_u64(instances as u64);
        let random_order = giraud_round_with(&g, &l, |v| v[pick.gen_range(0..v.len())])
            .expect("definite")
            .round;
        let last_order = giraud_round_with(&g, &l, |v| v[v.len() - 1])
            .expect("definite")
            .round;
        if !(translated && random_order == base && last_order == base) {
            bad += 1;
        }
    }
    let ok = bad == 0 && pass.containment_failures.is_empty();
    outcome(
        ok,
        format!(
            "{instances} random instances, {bad} failures; containment on {} rational non-RDP graphs, {} failures",
            pass.checked,
            pass.containment_failures.len()
        ),
    )
}

/// `deg floor(kF) = k b - sum ceil(k q / n)` in machine integers.
fn deg_oracle(s: &SeifertData, k: i64) -> i64 {
    k * s.b
        - s.arms
            .iter()
            .map(|&(n, q)| Integer::div_ceil(&(k * q), &n))
            .sum::<i64>()
}

/// Gorenstein exponent by scanning `|k| <= 2000`.
fn gorenstein_oracle(s: &SeifertData) -> Option<i64> {
    (-2000..=2000).find(|&k| {
        s.arms.iter().all(|&(n, q)| (k * q - 1).rem_euclid(n) == 0)
            && deg_oracle(s, k) == 2 * s.genus as i64 - 2
    })
}

/// `p_g` of a genus-0 Seifert datum: `sum_k max(0, -deg - 1)`.
fn p_g_oracle(s: &SeifertData) -> i64 {
    let lcm = s.arms.iter().fold(1i64, |acc, &(n, _)| acc.lcm(&n));
    let limit = (s.arms.len() as i64 + 2) * lcm + 1;
    (0..=limit).map(|k| (-deg_oracle(s, k) - 1).max(0)).sum()
}

fn seifert_arithmetic() -> Outcome {
    let e8 = fixtures::e8_seifert();
    let d4 = fixtures::d4_seifert();
    let none = SeifertData::new(0, 3, vec![(3, 1); 3]).expect("valid");
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, s, want) in [
        ("E8", &e8, Some(-1)),
        ("D4", &d4, Some(-1)),
        ("b=3,(3,1)^3", &none, None),
    ] {
        let lib = gorenstein_exponent(s).map(|k| k.to_i64().expect("small"));
        ok &= lib == want && gorenstein_oracle(s) == want;
        detail.push(format!("{name}: {lib:?}"));
    }
    let d4_pg = p_g(&d4).expect("genus 0");
    ok &= d4_pg.is_zero() && p_g_oracle(&d4) == 0;
    detail.push(format!("D4 p_g={d4_pg}"));
    let mut cases = 0;
    let mut mismatches = 0;
    for n in 2..=12i64 {
        for q in (1..n).filter(|q| q.gcd(&n) == 1) {
            for k in -40..=40i64 {
                cases += 1;
                let rule = if (k * q - 1).rem_euclid(n) == 0 {
                    0
                } else {
                    -1
                };
                let floors =
                    Integer::div_floor(&(-(k * q - 1) - n), &n) - Integer::div_floor(&(-k * q), &n);
                let lib = coboundary_coefficient(&BigInt::from(k), n, q);
                if lib != BigInt::from(rule) || floors != rule {
                    mismatches += 1;
                }
            }
        }
    }
    ok &= mismatches == 0;
    detail.push(format!("coboundary {cases} cases, {mismatches} mismatches"));
    outcome(ok, detail.join("; "))
}

fn random_seifert(rng: &mut ChaCha8Rng) -> SeifertData {
    let arms: Vec<(i64, i64)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let n = rng.gen_range(2..=7i64);
            loop {
                let q = rng.gen_range(1..n);
                if q.gcd(&n) == 1 {
                    return (n, q);
                }
            }
        })
        .collect();
    // e > 0 exactly when b > sum q/n.
    let lcm = arms.iter().fold(1i64, |acc, &(n, _)| acc.lcm(&n));
    let sum_scaled: i64 = arms.iter().map(|&(n, q)| q * (lcm / n)).sum();
    let b = Integer::div_floor(&sum_scaled, &lcm) + 1 + rng.gen_range(0..=2);
    SeifertData::new(0, b, arms).expect("e > 0")
}

fn pinkham_artin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut rational, mut bad) = (0, Vec::new());
    for _ in 0..200 {
        let s = random_seifert(&mut rng);
        let lib_pg = p_g(&s).expect("genus 0");
        let artin = classify(&seifert_to_graph(&s).expect("valid"))
            .expect("graph")
            .rational;
        rational += usize::from(artin);
        if lib_pg != BigInt::from(p_g_oracle(&s)) || lib_pg.is_zero() != artin {
            bad.push(format!(
                "b={} arms={:?}: p_g={lib_pg}, rational={artin}",
                s.b, s.arms
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "200 data, {rational} rational, {} disagreements; first {:?}",
            bad.len(),
            bad.first()
        ),
    )
}

fn quotient_sweep() -> Outcome {
    let manifest = fixtures::quotient_sweep();
    let domain = sweep_domain(
        manifest.max_order,
        manifest.max_exponent,
        manifest.min_variables,
        manifest.max_variables,
    );
    let s = sweep(&domain, 2).expect("valid domain");
    let mut spots_ok = true;
    for spot in &manifest.spot_checks {
        let q = BrieskornQuotient::new(spot.exponents.clone(), spot.order, spot.weights.clone())
            .expect("valid spot");
        let counts = monomial_counts(&spot.exponents, spot.order, &spot.weights);
        spots_ok &= milnor_number(&q) == BigInt::from(spot.mu)
            && counts.iter().sum::<u64>() == spot.mu
            && bar_mu(&q).ok() == Some(BigInt::from(spot.bar_mu))
            && bar_tau(&q) == BigInt::from(spot.bar_tau);
    }
    let ok = spots_ok
        && s.euler_failures == 0
        && s.lefschetz_failures == 0
        && s.isotypic_failures == 0
        && s.verdict_failures() == 0;
    outcome(
        ok,
        format!(
            "{} cases ({} SL); euler {} lefschetz {} isotypic {} failures; verdict mismatches: even dim {}, odd dim {}; spots {}; e.g. {:?}",
            s.cases,
            s.sl_cases,
            s.euler_failures,
            s.lefschetz_failures,
            s.isotypic_failures,
            s.verdict_failures_even,
            s.verdict_failures_odd,
            if spots_ok { "ok" } else { "wrong" },
            s.examples
        ),
    )
}

fn homology_sphere() -> Outcome {
    let text = fixtures::HOMOLOGY_SPHERE_M1;
    let g = singinv::graph::parse_graph(text).expect("fixture parses");
    let meta = fixtures::graph_metadata(text);
    let d = det(&matrix(&g));
    let class = classify(&g).expect("graph");
    let meta_mu = meta
        .get("mu")
        .and_then(|v| v.split_whitespace().next()?.parse::<u64>().ok());
    let meta_pg = meta
        .get("p_g")
        .and_then(|v| v.split_whitespace().next()?.parse::<u64>().ok());
    let report = invariant_report(&g, meta.clone()).expect("report");
    let ok = d.abs() == 1
        && intersection_form(&g).determinant() == BigInt::from(d)
        && g == fixtures::homology_sphere(1)
        && meta_mu == Some(13)
        && meta_pg.is_some_and(|p| p > 0)
        && !class.rational
        && report.refused.is_some()
        && report.metadata.get("mu") == meta.get("mu");
    outcome(
        ok,
        format!(
            "det={d}, rational={}, metadata mu={meta_mu:?} p_g={meta_pg:?}",
            class.rational
        ),
    )
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    // `shared` is precomputed work the criterion depends on, charged to its time.
    let mut line =
        |id: u32, name: &str, budget: u64, shared: f64, run: &mut dyn FnMut() -> Outcome| {
            let start = Instant::now();
            let o = run();
            let secs = shared + start.elapsed().as_secs_f64();
            let in_time = secs <= budget as f64;
            let passed = o.passed && in_time;
            let status = if passed { "PASS" } else { "FAIL" };
            let known = if !passed && KNOWN_FAILING.contains(&id) {
                " [known]"
            } else {
                ""
            };
            println!(
                "{status} {id:>2} {name:<26} tol=exact time={secs:.2}s/{budget}s{known}  {}",
                o.detail
            );
            if !passed && known.is_empty() {
                unexpected += 1;
            }
        };
    line(1, "two-node graph", 1, 0.0, &mut two_node);
    line(2, "chain vanishing", 5, 0.0, &mut chains);
    let pass = enumeration_pass();
    let pass_secs = pass.elapsed.as_secs_f64();
    line(3, "minus-K relation", 60, pass_secs, &mut || {
        outcome(
            pass.residual_failures.is_empty() && pass.checked >= 1000,
            format!(
                "{} trees, {} rational, {} rational non-RDP checked, {} nonzero",
                pass.graphs,
                pass.rational,
                pass.checked,
                pass.residual_failures.len()
            ),
        )
    });
    line(4, "chi_T identity", 60, pass_secs, &mut || {
        outcome(
            pass.chi_failures.is_empty(),
            format!(
                "{} trees, {} failures",
                pass.graphs,
                pass.chi_failures.len()
            ),
        )
    });
    line(5, "brute-force oracles", 60, 0.0, &mut oracle_equivalence);
    line(6, "round-up properties", 30, 0.0, &mut || {
        giraud_properties(&pass)
    });
    line(7, "Seifert arithmetic", 5, 0.0, &mut seifert_arithmetic);
    line(8, "p_g versus rationality", 30, 0.0, &mut pinkham_artin);
    line(9, "quotient sweep", 30, 0.0, &mut quotient_sweep);
    line(10, "homology sphere fixture", 5, 0.0, &mut homology_sphere);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
