//! Resolution graphs: weighted dual graphs of the exceptional set.

mod cycle;
mod invariants;
mod parse;

pub use cycle::{Cycle, QCycle};
pub use invariants::{
    arithmetic_genus, canonical_class, chi_t, classify, fundamental_cycle, intersection_form,
    is_negative_definite, is_rational, pairing, GraphClassification, IntersectionForm,
};
pub(crate) use invariants::{dot, dot_canonical, iteration_cap, require_negative_definite};
pub use parse::parse_graph;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exceptional curve `E_i`: self-intersection `weight = -d_i` and genus `g_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub weight: i64,
    pub genus: u32,
}

impl Vertex {
    pub fn new(id: impl Into<String>, weight: i64, genus: u32) -> Self {
        Vertex {
            id: id.into(),
            weight,
            genus,
        }
    }
}

/// A validated, connected, simple resolution graph.
///
/// Vertex order is the declaration order; every vertex-indexed vector in the
/// crate ([`Cycle`], [`QCycle`], degree vectors) uses it, and all
/// "lowest id first" tie-breaks mean lowest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl ResolutionGraph {
    /// Builds a graph from vertices and id-pairs, enforcing every structural
    /// invariant (unique ids, weights <= -1, simple edges, connectivity).
    pub fn new(vertices: Vec<Vertex>, edges: &[(String, String)]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        let lookup = |id: &String| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(id.clone()))
        };
        let pairs = edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(vertices, &pairs)
    }

    /// Same as [`ResolutionGraph::new`] with edges given by vertex index.
    pub fn from_indices(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut seen_ids = BTreeSet::new();
        for v in &vertices {
            if !seen_ids.insert(v.id.as_str()) {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
            if v.weight >= 0 {
                return Err(Error::NonNegativeWeight {
                    id: v.id.clone(),
                    weight: v.weight,
                });
            }
        }
        let n = vertices.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::UnknownVertex(format!("#{x}")));
                }
            }
            if a == b {
                return Err(Error::SelfLoop(vertices[a].id.clone()));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(
                    vertices[a].id.clone(),
                    vertices[b].id.clone(),
                ));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            normalized.push(key);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let graph = ResolutionGraph {
            vertices,
            edges: normalized,
            adjacency,
        };
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(graph)
    }

    /// Genus-0 chain with vertex ids `v0, v1, ...`.
    pub fn chain(weights: &[i64]) -> Result<Self> {
        let vertices = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Vertex::new(format!("v{i}"), w, 0))
            .collect();
        let edges: Vec<_> = (1..weights.len()).map(|i| (i - 1, i)).collect();
        Self::from_indices(vertices, &edges)
    }

    /// Genus-0 graph with ids `v0, v1, ...` and index edges.
    pub fn genus_zero(weights: &[i64], edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Vertex::new(format!("v{i}"), w, 0))
            .collect();
        Self::from_indices(vertices, edges)
    }

    fn is_connected(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    /// Edges as sorted index pairs, in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn valency(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// `d_i = -E_i.E_i`.
    pub fn degree(&self, i: usize) -> i64 {
        -self.vertices[i].weight
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.len()
    }

    /// `Z.E_j` for an integral cycle.
    pub fn dot_vertex(&self, z: &Cycle, j: usize) -> BigInt {
        let mut acc = &z[j] * self.vertices[j].weight;
        for &k in &self.adjacency[j] {
            acc += &z[k];
        }
        acc
    }

    /// Updates `degrees = (Z.E_i)_i` in place for `Z -> Z + E_j`.
    pub(crate) fn add_curve_to_degrees(&self, degrees: &mut [BigInt], j: usize) {
        degrees[j] += self.vertices[j].weight;
        for &k in &self.adjacency[j] {
            degrees[k] += 1;
        }
    }

    /// The vector `(Z.E_i)_i`.
    pub fn degrees_of(&self, z: &Cycle) -> Vec<BigInt> {
        (0..self.len()).map(|j| self.dot_vertex(z, j)).collect()
    }

    /// `K.E_i = d_i + 2 g_i - 2` (adjunction).
    pub fn canonical_degree(&self, i: usize) -> i64 {
        self.degree(i) + 2 * self.vertices[i].genus as i64 - 2
    }

    /// Renumbers the vertices: vertex `perm[i]` of `self` becomes vertex `i`.
    pub fn permuted(&self, perm: &[usize]) -> ResolutionGraph {
        assert_eq!(perm.len(), self.len());
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let vertices = perm.iter().map(|&old| self.vertices[old].clone()).collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| (inverse[a], inverse[b]))
            .collect();
        ResolutionGraph::from_indices(vertices, &edges).expect("permutation preserves validity")
    }

    /// Line-based text form accepted by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {} {} {}\n", v.id, v.weight, v.genus));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "edge {} {}\n",
                self.vertices[a].id, self.vertices[b].id
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self
                .edges
                .iter()
                .map(|&(a, b)| [self.vertices[a].id.clone(), self.vertices[b].id.clone()])
                .collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_structural_errors() {
        let v = |id: &str, w| Vertex::new(id, w, 0);
        let e = |a: &str, b: &str| (a.to_string(), b.to_string());
        assert_eq!(
            ResolutionGraph::new(vec![v("a", -2), v("a", -2)], &[]),
            Err(Error::DuplicateVertex("a".into()))
        );
        assert_eq!(
            ResolutionGraph::new(vec![v("a", -2)], &[e("a", "a")]),
            Err(Error::SelfLoop("a".into()))
        );
        assert_eq!(
            ResolutionGraph::new(vec![v("a", -2), v("b", -2)], &[e("a", "b"), e("b", "a")]),
            Err(Error::DuplicateEdge("b".into(), "a".into()))
        );
        assert!(matches!(
            ResolutionGraph::new(vec![v("a", 0)], &[]),
            Err(Error::NonNegativeWeight { .. })
        ));
        assert_eq!(
            ResolutionGraph::new(vec![v("a", -2)], &[e("a", "z")]),
            Err(Error::UnknownVertex("z".into()))
        );
        assert_eq!(
            ResolutionGraph::new(vec![v("a", -2), v("b", -2)], &[]),
            Err(Error::Disconnected)
        );
        assert_eq!(ResolutionGraph::new(vec![], &[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn permutation_relabels_consistently() {
        let g = ResolutionGraph::genus_zero(&[-2, -3, -4], &[(0, 1), (1, 2)]).unwrap();
        let p = g.permuted(&[2, 0, 1]);
        assert_eq!(p.vertex(0).weight, -4);
        assert_eq!(p.neighbors(0), &[2]);
        assert_eq!(p.valency(2), 2);
    }
}
