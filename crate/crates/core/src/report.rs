//! Text and JSON renderings of results. JSON objects have sorted keys and a
//! top-level `"schema": 1`; rationals render as `"p/q"` in lowest terms,
//! integers as numbers when they fit in `i64` and as strings otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::cohomology::{
    e_dot_e_plus_3k_half, normal_bundle_h1, rational_invariants, RoundingResult, SmoothingReport,
};
use crate::enumerate::EnumerationSummary;
use crate::error::Error;
use crate::graph::{
    canonical_class, chi_t, classify, intersection_form, Cycle, GraphClassification, QCycle,
    ResolutionGraph,
};
use crate::quotient::QuotientReport;
use crate::seifert::{GradedReport, SeifertData};

pub const SCHEMA: u64 = 1;

pub fn int_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::from(v.to_string()),
    }
}

pub fn rat_json(v: &BigRational) -> Value {
    Value::from(v.to_string())
}

pub fn cycle_json(c: &Cycle) -> Value {
    Value::Array(c.0.iter().map(int_json).collect())
}

pub fn qcycle_json(c: &QCycle) -> Value {
    Value::Array(c.0.iter().map(rat_json).collect())
}

fn opt<T>(v: &Option<T>, f: impl Fn(&T) -> Value) -> Value {
    v.as_ref().map_or(Value::Null, f)
}

/// Wraps a body object with the schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("schema".into(), Value::from(SCHEMA));
    map.insert("command".into(), Value::from(command));
    Value::Object(map)
}

pub fn error_json(command: &str, e: &Error) -> Value {
    envelope(
        command,
        json!({ "error": e.to_string(), "exit_code": e.exit_code() }),
    )
}

fn classification_json(c: &GraphClassification) -> Value {
    json!({
        "connected": c.connected,
        "negative_definite": c.negative_definite,
        "rational": c.rational,
        "rdp": c.rdp,
        "minimal_resolution": c.minimal_resolution,
        "minimal_good": c.minimal_good,
        "star_shaped": c.star_shaped,
        "chain": c.chain,
    })
}

/// Everything `invariants` reports for one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub vertices: Vec<String>,
    pub classification: GraphClassification,
    pub determinant: BigInt,
    pub canonical: Option<QCycle>,
    pub chi_t: BigInt,
    /// `Y = [-K]`.
    pub minus_k_roundup: Option<Cycle>,
    /// `Z = [-(K+E)]`.
    pub minus_k_minus_e_roundup: Option<Cycle>,
    pub h1_minus_k: Option<BigInt>,
    pub h1_minus_k_minus_e: Option<BigInt>,
    pub alpha_bound: Option<BigInt>,
    /// Must all be zero.
    pub residuals: BTreeMap<String, BigInt>,
    pub warnings: Vec<String>,
    /// Why the cohomology formulas were not applied.
    pub refused: Option<Error>,
    pub metadata: BTreeMap<String, String>,
}

impl InvariantReport {
    pub fn exit_code(&self) -> i32 {
        if self.residuals.values().any(|r| !r.is_zero()) {
            4
        } else if let Some(e) = &self.refused {
            e.exit_code()
        } else {
            0
        }
    }
}

pub fn invariant_report(
    g: &ResolutionGraph,
    metadata: BTreeMap<String, String>,
) -> Result<InvariantReport, Error> {
    let classification = classify(g)?;
    let mut residuals = BTreeMap::new();
    let chi = chi_t(g);
    residuals.insert(
        "chi_t".to_string(),
        &chi - (normal_bundle_h1(g) - e_dot_e_plus_3k_half(g)),
    );
    let mut warnings = Vec::new();
    if !metadata.is_empty() {
        warnings.push("metadata values are carried from the input file, not computed".into());
    }
    let mut report = InvariantReport {
        vertices: g.vertices().iter().map(|v| v.id.clone()).collect(),
        determinant: intersection_form(g).determinant(),
        canonical: None,
        chi_t: chi,
        minus_k_roundup: None,
        minus_k_minus_e_roundup: None,
        h1_minus_k: None,
        h1_minus_k_minus_e: None,
        alpha_bound: None,
        residuals,
        warnings,
        refused: None,
        metadata,
        classification,
    };
    if !report.classification.negative_definite {
        report.refused = Some(Error::NotNegativeDefinite);
        return Ok(report);
    }
    report.canonical = Some(canonical_class(g)?);
    match rational_invariants(g) {
        Ok(inv) => {
            report.minus_k_roundup = Some(inv.y.clone());
            report.h1_minus_k = Some(inv.h1_minus_k.clone());
            report.alpha_bound = Some(inv.h1_minus_k.clone());
            report.minus_k_minus_e_roundup = inv.z.clone();
            match &inv.h1_minus_k_minus_e {
                Some(mke) => {
                    report.h1_minus_k_minus_e = Some(mke.clone());
                    report.residuals.insert(
                        "minus_k_relation".to_string(),
                        &inv.h1_minus_k - mke - &inv.e_e3k_half,
                    );
                }
                None => report.refused = Some(Error::RationalDoublePoint),
            }
        }
        Err(e @ Error::IterationCap { .. }) | Err(e @ Error::Identity(_)) => return Err(e),
        Err(e) => report.refused = Some(e),
    }
    Ok(report)
}

pub fn invariant_json(r: &InvariantReport) -> Value {
    let c = &r.classification;
    envelope(
        "invariants",
        json!({
            "vertices": r.vertices,
            "classification": classification_json(c),
            "determinant": int_json(&r.determinant),
            "fundamental_cycle": opt(&c.fundamental_cycle, cycle_json),
            "p_a_z0": opt(&c.p_a_z0, int_json),
            "canonical_class": opt(&r.canonical, qcycle_json),
            "chi_t": int_json(&r.chi_t),
            "minus_k_roundup": opt(&r.minus_k_roundup, cycle_json),
            "minus_k_minus_e_roundup": opt(&r.minus_k_minus_e_roundup, cycle_json),
            "h1_minus_k": opt(&r.h1_minus_k, int_json),
            "h1_minus_k_minus_e": opt(&r.h1_minus_k_minus_e, int_json),
            "alpha_bound": opt(&r.alpha_bound, int_json),
            "residuals": r.residuals.iter().map(|(k, v)| (k.clone(), int_json(v))).collect::<Map<_, _>>(),
            "warnings": r.warnings,
            "refused": r.refused.as_ref().map(|e| e.to_string()),
            "metadata": r.metadata,
            "exit_code": r.exit_code(),
        }),
    )
}

fn line(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<30}{value}");
}

fn show<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("-".to_string(), ToString::to_string)
}

pub fn invariant_text(r: &InvariantReport) -> String {
    let c = &r.classification;
    let mut out = String::new();
    line(&mut out, "vertices", r.vertices.join(" "));
    let flags = [
        ("negative_definite", c.negative_definite),
        ("rational", c.rational),
        ("rdp", c.rdp),
        ("minimal_resolution", c.minimal_resolution),
        ("minimal_good", c.minimal_good),
        ("star_shaped", c.star_shaped),
        ("chain", c.chain),
    ];
    let set: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
    line(&mut out, "classification", set.join(", "));
    line(&mut out, "determinant", &r.determinant);
    line(
        &mut out,
        "fundamental cycle Z_0",
        show(&c.fundamental_cycle),
    );
    line(&mut out, "p_a(Z_0)", show(&c.p_a_z0));
    line(&mut out, "canonical class K", show(&r.canonical));
    line(&mut out, "chi_T", &r.chi_t);
    line(&mut out, "Y = [-K]", show(&r.minus_k_roundup));
    line(&mut out, "Z = [-(K+E)]", show(&r.minus_k_minus_e_roundup));
    line(&mut out, "h1(-K)", show(&r.h1_minus_k));
    line(&mut out, "h1(-(K+E))", show(&r.h1_minus_k_minus_e));
    line(&mut out, "alpha bound", show(&r.alpha_bound));
    for (k, v) in &r.residuals {
        line(&mut out, &format!("residual {k}"), v);
    }
    for (k, v) in &r.metadata {
        line(&mut out, &format!("meta {k}"), v);
    }
    for w in &r.warnings {
        line(&mut out, "warning", w);
    }
    if let Some(e) = &r.refused {
        line(&mut out, "refused", e);
    }
    out
}

pub fn rounding_json(g: &ResolutionGraph, degrees: &[BigInt], r: &RoundingResult) -> Value {
    envelope(
        "round",
        json!({
            "vertices": g.vertices().iter().map(|v| v.id.clone()).collect::<Vec<_>>(),
            "degrees": degrees.iter().map(int_json).collect::<Vec<_>>(),
            "coefficients": qcycle_json(&r.coefficients),
            "initial": cycle_json(&r.initial),
            "added": r.added.iter().map(|&i| g.vertex(i).id.clone()).collect::<Vec<_>>(),
            "round": cycle_json(&r.round),
        }),
    )
}

pub fn rounding_text(g: &ResolutionGraph, r: &RoundingResult) -> String {
    let mut out = String::new();
    line(&mut out, "coefficients", &r.coefficients);
    line(&mut out, "initial ceil(a)", &r.initial);
    let added: Vec<&str> = r.added.iter().map(|&i| g.vertex(i).id.as_str()).collect();
    line(&mut out, "added curves", added.join(" "));
    line(&mut out, "round-up [L]", &r.round);
    out
}

pub fn smoothing_json(r: &SmoothingReport) -> Value {
    envelope(
        "smoothing",
        json!({
            "mu": int_json(&r.mu),
            "tau": int_json(&r.tau),
            "combined": int_json(&r.combined),
            "h1_minus_k": int_json(&r.h1_mk),
            "h1_minus_k_minus_e": int_json(&r.h1_mke),
            "h1_theta": int_json(&r.h1_theta),
        }),
    )
}

pub fn smoothing_text(r: &SmoothingReport) -> String {
    let mut out = String::new();
    line(&mut out, "mu", &r.mu);
    line(&mut out, "tau", &r.tau);
    line(&mut out, "1 + (mu - tau) + alpha", &r.combined);
    line(&mut out, "h1(-K)", &r.h1_mk);
    line(&mut out, "h1(-(K+E))", &r.h1_mke);
    line(&mut out, "h1(Theta)", &r.h1_theta);
    out
}

pub fn seifert_json(s: &SeifertData, g: &GradedReport, h1_s: &Result<BigInt, Error>) -> Value {
    let pieces: Vec<Value> = g
        .pieces
        .iter()
        .map(|p| {
            json!({
                "k": p.k,
                "degree": int_json(&p.degree),
                "dim": opt(&p.dim, int_json),
            })
        })
        .collect();
    envelope(
        "seifert",
        json!({
            "genus": s.genus,
            "b": s.b,
            "arms": s.arms.iter().map(|&(n, q)| vec![n, q]).collect::<Vec<_>>(),
            "e": rat_json(&g.e),
            "pieces": pieces,
            "p_g": opt(&g.p_g, int_json),
            "gorenstein": g.gorenstein_exponent.is_some(),
            "gorenstein_k": opt(&g.gorenstein_exponent, int_json),
            "rational": g.rational,
            "h1_s": h1_s.as_ref().map_or(Value::Null, int_json),
            "h1_s_error": h1_s.as_ref().err().map(|e| e.to_string()),
        }),
    )
}

pub fn seifert_text(s: &SeifertData, g: &GradedReport, h1_s: &Result<BigInt, Error>) -> String {
    let mut out = String::new();
    let arms: Vec<String> = s.arms.iter().map(|(n, q)| format!("{n}/{q}")).collect();
    line(
        &mut out,
        "seifert data",
        format!("genus {} b {} arms {}", s.genus, s.b, arms.join(" ")),
    );
    line(&mut out, "e", &g.e);
    for p in &g.pieces {
        line(
            &mut out,
            &format!("k = {}", p.k),
            format!("deg {} dim {}", p.degree, show(&p.dim)),
        );
    }
    line(&mut out, "p_g", show(&g.p_g));
    line(&mut out, "gorenstein k", show(&g.gorenstein_exponent));
    line(&mut out, "rational", g.rational);
    match h1_s {
        Ok(v) => line(&mut out, "h1(S)", v),
        Err(e) => line(&mut out, "h1(S)", format!("- ({e})")),
    }
    out
}

fn counts_json(c: &crate::quotient::CharacterCounts) -> Value {
    Value::Array(c.0.iter().map(int_json).collect())
}

pub fn quotient_json(r: &QuotientReport) -> Value {
    let q = &r.quotient;
    envelope(
        "quotient",
        json!({
            "exponents": q.exponents,
            "order": q.order,
            "weights": q.weights,
            "dimension": q.dimension(),
            "outside_surface_scope": q.outside_surface_scope(),
            "mu": int_json(&r.mu),
            "bar_mu": int_json(&r.bar_mu),
            "bar_tau": int_json(&r.bar_tau),
            "counts_j": counts_json(&r.counts_j),
            "counts_h": counts_json(&r.counts_h),
            "in_sl": r.verdict.in_sl,
            "gorenstein_quotient": r.gorenstein_quotient,
            "verdict": r.verdict.verdict.name(),
            "verdict_holds": r.verdict.holds,
            "euler_ok": r.euler_ok,
            "lefschetz_ok": r.lefschetz_ok,
            "isotypic_ok": r.isotypic_ok,
        }),
    )
}

pub fn quotient_text(r: &QuotientReport) -> String {
    let mut out = String::new();
    let fmt_counts = |c: &crate::quotient::CharacterCounts| {
        c.0.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    line(&mut out, "quotient", &r.quotient);
    if r.quotient.outside_surface_scope() {
        line(
            &mut out,
            "warning",
            "n = 1: curve singularity, outside the surface scope",
        );
    }
    line(&mut out, "mu", &r.mu);
    line(&mut out, "bar_mu", &r.bar_mu);
    line(&mut out, "bar_tau", &r.bar_tau);
    line(
        &mut out,
        "counts J",
        format!("[{}]", fmt_counts(&r.counts_j)),
    );
    line(
        &mut out,
        "counts H",
        format!("[{}]", fmt_counts(&r.counts_h)),
    );
    line(&mut out, "in SL", r.verdict.in_sl);
    line(
        &mut out,
        "verdict",
        format!(
            "{} ({})",
            r.verdict.verdict.name(),
            if r.verdict.holds {
                "as expected"
            } else {
                "MISMATCH"
            }
        ),
    );
    line(
        &mut out,
        "euler / lefschetz / iso",
        format!("{} / {} / {}", r.euler_ok, r.lefschetz_ok, r.isotypic_ok),
    );
    out
}

pub fn enumeration_json(s: &EnumerationSummary) -> Value {
    envelope(
        "enumerate",
        json!({
            "max_vertices": s.max_vertices,
            "min_weight": s.min_weight,
            "scanned": s.scanned,
            "negative_definite": s.negative_definite,
            "rational": s.rational,
            "rdp": s.rdp,
            "checked": s.checked,
            "histogram_h1_minus_k_minus_e": s.histogram.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect::<Map<_, _>>(),
            "failures": s.failures,
        }),
    )
}

pub fn enumeration_text(s: &EnumerationSummary) -> String {
    let mut out = String::new();
    line(
        &mut out,
        "domain",
        format!(
            "trees with <= {} vertices, weights in [{}, -2]",
            s.max_vertices, s.min_weight
        ),
    );
    line(&mut out, "scanned", s.scanned);
    line(&mut out, "negative definite", s.negative_definite);
    line(&mut out, "rational", s.rational);
    line(&mut out, "rdp", s.rdp);
    line(&mut out, "checked (rational, non-RDP)", s.checked);
    for (k, v) in &s.histogram {
        line(&mut out, &format!("h1(-(K+E)) = {k}"), v);
    }
    line(&mut out, "failures", s.failures.len());
    for f in &s.failures {
        line(&mut out, "  failure", f);
    }
    out
}

pub fn sequence_json(g: &ResolutionGraph, order: &[usize]) -> Value {
    envelope(
        "sequence",
        json!({
            "order": order.iter().map(|&i| g.vertex(i).id.clone()).collect::<Vec<_>>(),
        }),
    )
}

pub fn sequence_text(g: &ResolutionGraph, order: &[usize]) -> String {
    let ids: Vec<&str> = order.iter().map(|&i| g.vertex(i).id.as_str()).collect();
    let mut out = String::new();
    line(&mut out, "order", ids.join(" "));
    out
}
