//! Exhaustive scan over weighted genus-0 trees: canonical forms, isomorphism
//! classes and the per-graph identity checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cohomology::{e_dot_e_plus_3k_half, normal_bundle_h1, rational_invariants_classified};
use crate::error::{Error, Result};
use crate::graph::{chi_t, classify, dot, ResolutionGraph};

pub const MAX_VERTICES: usize = 8;
pub const MIN_WEIGHT: i64 = -6;

/// An unlabeled tree on `0..n`, with edges `(parent, child)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeShape {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TreeShape {
    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn with_weights(&self, weights: &[i64]) -> ResolutionGraph {
        ResolutionGraph::genus_zero(weights, &self.edges).expect("tree shapes are valid graphs")
    }

    /// Vertex permutations preserving the edge set.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut edge = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.edges {
            edge[a][b] = true;
            edge[b][a] = true;
        }
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        extend_automorphism(0, &adj, &edge, &mut image, &mut used, &mut out);
        out
    }
}

fn extend_automorphism(
    v: usize,
    adj: &[Vec<usize>],
    edge: &[Vec<bool>],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    let n = adj.len();
    if v == n {
        out.push(image.clone());
        return;
    }
    for t in 0..n {
        if used[t] || adj[t].len() != adj[v].len() {
            continue;
        }
        // adjacency with already placed vertices must match
        if (0..v).any(|u| edge[u][v] != edge[image[u]][t]) {
            continue;
        }
        image[v] = t;
        used[t] = true;
        extend_automorphism(v + 1, adj, edge, image, used, out);
        used[t] = false;
    }
    image[v] = usize::MAX;
}

fn centroids(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; n];
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &w in &adj[v] {
            if w != parent[v] {
                parent[w] = v;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev().take(n - 1) {
        size[parent[v]] += size[v];
    }
    (0..n)
        .filter(|&v| {
            let largest_child = adj[v]
                .iter()
                .filter(|&&w| parent[w] == v)
                .map(|&w| size[w])
                .max()
                .unwrap_or(0);
            largest_child.max(n - size[v]) * 2 <= n
        })
        .collect()
}

fn rooted_code(v: usize, parent: usize, adj: &[Vec<usize>], labels: &[String]) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(w, v, adj, labels))
        .collect();
    children.sort_unstable();
    format!("({}{})", labels[v], children.concat())
}

fn tree_code(adj: &[Vec<usize>], labels: &[String]) -> String {
    centroids(adj)
        .into_iter()
        .map(|c| rooted_code(c, usize::MAX, adj, labels))
        .min()
        .expect("a tree has a centroid")
}

/// Canonical string of a tree: rooted encoding with `weight/genus` labels,
/// minimised over the centroids. Equal exactly for isomorphic trees.
pub fn canonical_form(g: &ResolutionGraph) -> Result<String> {
    if !g.is_tree() {
        return Err(Error::InvalidArgument("canonical form needs a tree".into()));
    }
    let adj: Vec<Vec<usize>> = (0..g.len()).map(|i| g.neighbors(i).to_vec()).collect();
    let labels: Vec<String> = g
        .vertices()
        .iter()
        .map(|v| format!("{}/{}", v.weight, v.genus))
        .collect();
    Ok(tree_code(&adj, &labels))
}

/// All unlabeled trees on exactly `n` vertices.
pub fn tree_shapes(n: usize) -> Vec<TreeShape> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![TreeShape {
        n: 1,
        edges: Vec::new(),
    }];
    for size in 2..=n {
        let mut seen = BTreeMap::new();
        for shape in &level {
            for v in 0..shape.n {
                let mut edges = shape.edges.clone();
                edges.push((v, size - 1));
                let grown = TreeShape { n: size, edges };
                let labels = vec![String::new(); size];
                seen.entry(tree_code(&grown.adjacency(), &labels))
                    .or_insert(grown);
            }
        }
        level = seen.into_values().collect();
    }
    level
}

fn weights_from_index(mut idx: u64, n: usize, min_weight: i64) -> Vec<i64> {
    let base = (-1 - min_weight) as u64;
    (0..n)
        .map(|_| {
            let w = -2 - (idx % base) as i64;
            idx /= base;
            w
        })
        .collect()
}

/// Keeps one weighting per automorphism orbit: the lexicographically least.
fn is_orbit_minimum(weights: &[i64], autos: &[Vec<usize>]) -> bool {
    autos.iter().all(|p| {
        let permuted = p.iter().map(|&i| weights[i]);
        permuted.cmp(weights.iter().copied()) != std::cmp::Ordering::Less
    })
}

fn weight_count(n: usize, min_weight: i64) -> u64 {
    ((-1 - min_weight) as u64).pow(n as u32)
}

/// Pairwise non-isomorphic weightings of a shape, weights in
/// `[min_weight, -2]`.
pub fn weightings(shape: &TreeShape, min_weight: i64) -> Vec<Vec<i64>> {
    let autos = shape.automorphisms();
    (0..weight_count(shape.n, min_weight))
        .map(|i| weights_from_index(i, shape.n, min_weight))
        .filter(|w| is_orbit_minimum(w, &autos))
        .collect()
}

/// Every weighted tree with `1..=max_vertices` vertices, sorted by
/// canonical form.
pub fn enumerate_trees(max_vertices: usize, min_weight: i64) -> Result<Vec<ResolutionGraph>> {
    guard(max_vertices, min_weight)?;
    let mut keyed: Vec<(String, ResolutionGraph)> = (1..=max_vertices)
        .flat_map(tree_shapes)
        .flat_map(|shape| {
            weightings(&shape, min_weight)
                .into_iter()
                .map(move |w| shape.with_weights(&w))
                .collect::<Vec<_>>()
        })
        .map(|g| (canonical_form(&g).expect("tree"), g))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, g)| g).collect())
}

fn guard(max_vertices: usize, min_weight: i64) -> Result<()> {
    if max_vertices == 0 || max_vertices > MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "max vertices must be in 1..={MAX_VERTICES}"
        )));
    }
    if !(MIN_WEIGHT..=-2).contains(&min_weight) {
        return Err(Error::InvalidArgument(format!(
            "min weight must be in {MIN_WEIGHT}..=-2"
        )));
    }
    Ok(())
}

/// Outcome of the identity checks on one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCheck {
    pub negative_definite: bool,
    pub rational: bool,
    pub rdp: bool,
    pub h1_mke: Option<BigInt>,
    pub failures: Vec<String>,
}

/// `chi_T` identity everywhere; on rational non-RDP graphs also the
/// `h^1(-K)` / `h^1(-(K+E))` relation, the multiplicity bound, `[-K] >= Z_0`
/// and vanishing on chains.
pub fn check_graph(g: &ResolutionGraph) -> GraphCheck {
    let mut failures = Vec::new();
    let chi = chi_t(g);
    let rhs = normal_bundle_h1(g) - e_dot_e_plus_3k_half(g);
    if chi != rhs {
        failures.push(format!("chi_T identity: {chi} != {rhs}"));
    }
    let class = match classify(g) {
        Ok(c) => c,
        Err(e) => {
            failures.push(format!("classify: {e}"));
            return GraphCheck {
                negative_definite: false,
                rational: false,
                rdp: false,
                h1_mke: None,
                failures,
            };
        }
    };
    let mut h1_mke = None;
    if class.rational && !class.rdp && class.minimal_resolution {
        match rational_invariants_classified(g, class.clone()) {
            Ok(inv) => {
                let mke = inv.h1_minus_k_minus_e.clone().expect("non-RDP");
                let residual = &inv.h1_minus_k - &mke - &inv.e_e3k_half;
                if residual != BigInt::from(0) {
                    failures.push(format!("h1(-K) relation residual {residual}"));
                }
                let z0 = class.fundamental_cycle.as_ref().expect("negative definite");
                let mult = -dot(g, z0, z0);
                if inv.h1_minus_k < mult - 3 {
                    failures.push("h1(-K) < mult - 3".into());
                }
                if !inv.y.dominates(z0) {
                    failures.push(format!("[-K] = {} does not contain Z_0 = {z0}", inv.y));
                }
                if class.chain && mke != BigInt::from(0) {
                    failures.push(format!("chain with h1(-(K+E)) = {mke}"));
                }
                h1_mke = Some(mke);
            }
            Err(e) => failures.push(format!("rational invariants: {e}")),
        }
    }
    GraphCheck {
        negative_definite: class.negative_definite,
        rational: class.rational,
        rdp: class.rdp,
        h1_mke,
        failures,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub max_vertices: usize,
    pub min_weight: i64,
    pub scanned: usize,
    pub negative_definite: usize,
    pub rational: usize,
    pub rdp: usize,
    /// Rational non-RDP graphs on which the cohomology checks ran.
    pub checked: usize,
    pub histogram: BTreeMap<BigInt, usize>,
    /// `canonical form: message`, sorted.
    pub failures: Vec<String>,
}

impl EnumerationSummary {
    fn add(&mut self, g: &ResolutionGraph, c: GraphCheck) {
        self.scanned += 1;
        self.negative_definite += usize::from(c.negative_definite);
        self.rational += usize::from(c.rational);
        self.rdp += usize::from(c.rdp);
        if let Some(v) = c.h1_mke {
            self.checked += 1;
            *self.histogram.entry(v).or_insert(0) += 1;
        }
        if !c.failures.is_empty() {
            let key = canonical_form(g).unwrap_or_default();
            for f in c.failures {
                self.failures.push(format!("{key}: {f}"));
            }
        }
    }

    fn merge(mut self, other: EnumerationSummary) -> Self {
        self.scanned += other.scanned;
        self.negative_definite += other.negative_definite;
        self.rational += other.rational;
        self.rdp += other.rdp;
        self.checked += other.checked;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_insert(0) += v;
        }
        self.failures.extend(other.failures);
        self
    }
}

/// Checks every weighting of one shape.
pub fn scan_shape(shape: &TreeShape, min_weight: i64) -> EnumerationSummary {
    let autos = shape.automorphisms();
    let mut summary = (0..weight_count(shape.n, min_weight))
        .into_par_iter()
        .filter_map(|i| {
            let w = weights_from_index(i, shape.n, min_weight);
            is_orbit_minimum(&w, &autos).then_some(w)
        })
        .fold(EnumerationSummary::default, |mut acc, w| {
            let g = shape.with_weights(&w);
            let check = check_graph(&g);
            acc.add(&g, check);
            acc
        })
        .reduce(EnumerationSummary::default, EnumerationSummary::merge);
    summary.min_weight = min_weight;
    summary.max_vertices = shape.n;
    summary.failures.sort();
    summary
}

/// The full scan over `1..=max_vertices` vertices and weights in
/// `[min_weight, -2]`.
pub fn run_enumeration(max_vertices: usize, min_weight: i64) -> Result<EnumerationSummary> {
    guard(max_vertices, min_weight)?;
    let mut total = (1..=max_vertices)
        .flat_map(tree_shapes)
        .map(|s| scan_shape(&s, min_weight))
        .fold(EnumerationSummary::default(), EnumerationSummary::merge);
    total.max_vertices = max_vertices;
    total.min_weight = min_weight;
    total.failures.sort();
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| tree_shapes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn automorphism_groups() {
        let star = TreeShape {
            n: 4,
            edges: vec![(0, 1), (0, 2), (0, 3)],
        };
        assert_eq!(star.automorphisms().len(), 6);
        let path = TreeShape {
            n: 4,
            edges: vec![(0, 1), (1, 2), (2, 3)],
        };
        assert_eq!(path.automorphisms().len(), 2);
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        let a = ResolutionGraph::genus_zero(&[-2, -3, -4], &[(0, 1), (1, 2)]).unwrap();
        let b = ResolutionGraph::genus_zero(&[-4, -3, -2], &[(0, 1), (1, 2)]).unwrap();
        let c = ResolutionGraph::genus_zero(&[-3, -2, -4], &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&c).unwrap());
    }

    #[test]
    fn weighted_counts_small() {
        // chains of length 2 with weights in {-2,-3}: {22, 23, 33}
        let shapes = tree_shapes(2);
        assert_eq!(weightings(&shapes[0], -3).len(), 3);
        let graphs = enumerate_trees(3, -3).unwrap();
        // 2 + 3 + (chains of 3: 6) = 11
        assert_eq!(graphs.len(), 11);
    }

    #[test]
    fn small_scan_is_clean() {
        let s = run_enumeration(3, -3).unwrap();
        assert!(s.failures.is_empty(), "{:?}", s.failures);
        assert_eq!(s.scanned, 11);
        assert_eq!(s.negative_definite, 11);
        assert_eq!(s.rdp, 3);
        assert_eq!(s.checked, 8);
        assert_eq!(
            s.histogram.keys().cloned().collect::<Vec<_>>(),
            vec![BigInt::from(0)]
        );
    }

    #[test]
    fn guard_rejects_large_runs() {
        assert!(run_enumeration(9, -3).is_err());
        assert!(run_enumeration(4, -7).is_err());
        assert!(run_enumeration(4, -1).is_err());
    }
}
