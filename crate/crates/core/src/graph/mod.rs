//! Finite directed multigraphs and their vertex matrices.
//!
//! Vertices and edges are 1-indexed throughout, including in the file formats.

mod format;

pub use format::{parse_adjacency_document, parse_edge_list, parse_graph};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub id: usize,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMultigraph {
    num_vertices: usize,
    edges: Vec<Edge>,
}

impl DirectedMultigraph {
    /// Build a graph from `(source, target)` pairs; edges are numbered in input order from 1.
    pub fn new(num_vertices: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        if num_vertices == 0 {
            return Err(Error::NoVertices);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (k, &(source, target)) in edge_list.iter().enumerate() {
            for index in [source, target] {
                if index == 0 || index > num_vertices {
                    return Err(Error::VertexOutOfRange {
                        index,
                        num_vertices,
                    });
                }
            }
            edges.push(Edge {
                id: k + 1,
                source,
                target,
            });
        }
        Ok(DirectedMultigraph {
            num_vertices,
            edges,
        })
    }

    /// `n` disjoint loops: edge `i` is a loop at vertex `i`.
    pub fn loops(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).map(|i| (i, i)).collect();
        Self::new(n, &edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        id.checked_sub(1)
            .and_then(|k| self.edges.get(k))
            .ok_or(Error::UnknownEdge(id))
    }

    pub fn vertex_matrix(&self) -> VertexMatrix {
        let n = self.num_vertices;
        let mut entries = vec![vec![0u64; n]; n];
        for e in &self.edges {
            entries[e.source - 1][e.target - 1] += 1;
        }
        VertexMatrix { entries }
    }

    /// Some vertex emits no edge.
    pub fn has_sink(&self) -> bool {
        let mut emits = vec![false; self.num_vertices];
        for e in &self.edges {
            emits[e.source - 1] = true;
        }
        emits.iter().any(|&x| !x)
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices;
        let mut adjacency = vec![Vec::new(); n];
        for e in &self.edges {
            adjacency[e.source - 1].push(e.target - 1);
            adjacency[e.target - 1].push(e.source - 1);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_disjoint_loops(&self) -> bool {
        self.vertex_matrix().is_identity()
    }

    /// Relabel vertices: vertex `v` becomes `perm[v - 1]`. Edge numbering is kept.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.num_vertices {
            return Err(Error::DimensionMismatch {
                expected: self.num_vertices,
                found: perm.len(),
            });
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| (perm[e.source - 1], perm[e.target - 1]))
            .collect();
        Self::new(self.num_vertices, &edges)
    }
}

/// Square matrix whose `(i, j)` entry counts edges from vertex `i` to vertex `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct VertexMatrix {
    entries: Vec<Vec<u64>>,
}

impl VertexMatrix {
    pub fn from_rows(entries: Vec<Vec<u64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NoVertices);
        }
        for row in &entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        Ok(VertexMatrix { entries })
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect();
        VertexMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == u64::from(i == j)))
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().flatten().sum()
    }

    /// Expand into a graph with one edge per unit of multiplicity, numbered row-major.
    pub fn to_graph(&self) -> DirectedMultigraph {
        let mut edges = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                for _ in 0..count {
                    edges.push((i + 1, j + 1));
                }
            }
        }
        DirectedMultigraph::new(self.dim(), &edges).expect("indices are in range by construction")
    }
}
