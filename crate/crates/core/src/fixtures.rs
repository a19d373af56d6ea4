//! Reference inputs shipped with the crate and embedded in the binary.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::graph::{parse_graph, ResolutionGraph, Vertex};
use crate::seifert::SeifertData;

pub const TWO_NODE: &str = include_str!("../fixtures/two_node.graph");
pub const TWO_NODE_EXPECTED: &str = include_str!("../fixtures/two_node.expected.json");
pub const HOMOLOGY_SPHERE_M1: &str = include_str!("../fixtures/homology_sphere_m1.graph");
pub const HOMOLOGY_SPHERE_M2: &str = include_str!("../fixtures/homology_sphere_m2.graph");
pub const D4_SEIFERT: &str = include_str!("../fixtures/d4.seifert.json");
pub const E8_SEIFERT: &str = include_str!("../fixtures/e8.seifert.json");
pub const QUOTIENT_SWEEP: &str = include_str!("../fixtures/quotient_sweep.json");

/// Expected values pinned next to the two-node rational graph.
#[derive(Debug, Clone, Deserialize)]
pub struct TwoNodeExpected {
    pub vertex_order: Vec<String>,
    pub minus_k_roundup: Vec<i64>,
    pub h1_minus_k_minus_e: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct QuotientSpot {
    pub exponents: Vec<u32>,
    pub order: u32,
    pub weights: Vec<u32>,
    pub mu: u64,
    pub bar_mu: u64,
    pub bar_tau: u64,
}

/// Domain of the exhaustive quotient sweep plus pinned spot values.
#[derive(Debug, Clone, Deserialize)]
pub struct QuotientSweepManifest {
    pub max_order: u32,
    pub max_exponent: u32,
    pub min_variables: usize,
    pub max_variables: usize,
    pub spot_checks: Vec<QuotientSpot>,
}

pub fn two_node_graph() -> ResolutionGraph {
    parse_graph(TWO_NODE).expect("embedded fixture parses")
}

pub fn two_node_expected() -> TwoNodeExpected {
    serde_json::from_str(TWO_NODE_EXPECTED).expect("embedded fixture parses")
}

pub fn quotient_sweep() -> QuotientSweepManifest {
    serde_json::from_str(QUOTIENT_SWEEP).expect("embedded fixture parses")
}

/// The star-shaped homology-sphere graph: central -1 curve with arms
/// `-2`, `-3` and `-7, -2 (m times)`.
pub fn homology_sphere(m: usize) -> ResolutionGraph {
    let mut vertices = vec![
        Vertex::new("c", -1, 0),
        Vertex::new("a", -2, 0),
        Vertex::new("b", -3, 0),
        Vertex::new("s0", -7, 0),
    ];
    let mut edges = vec![(0, 1), (0, 2), (0, 3)];
    for i in 1..=m {
        vertices.push(Vertex::new(format!("s{i}"), -2, 0));
        edges.push((vertices.len() - 2, vertices.len() - 1));
    }
    ResolutionGraph::from_indices(vertices, &edges).expect("valid graph")
}

pub fn d4_seifert() -> SeifertData {
    SeifertData::from_json(D4_SEIFERT).expect("embedded fixture parses")
}

pub fn e8_seifert() -> SeifertData {
    SeifertData::from_json(E8_SEIFERT).expect("embedded fixture parses")
}

/// E_8: central -2 curve with -2 arms of lengths 1, 2 and 4.
pub fn e8_graph() -> ResolutionGraph {
    ResolutionGraph::genus_zero(
        &[-2; 8],
        &[(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 7)],
    )
    .expect("valid graph")
}

pub fn d4_graph() -> ResolutionGraph {
    ResolutionGraph::genus_zero(&[-2; 4], &[(0, 1), (0, 2), (0, 3)]).expect("valid graph")
}

/// `# meta: key = value` comment lines of a graph file.
pub fn graph_metadata(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|line| line.trim().strip_prefix('#'))
        .filter_map(|c| c.trim().strip_prefix("meta:"))
        .filter_map(|kv| kv.split_once('='))
        .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
        .collect()
}
