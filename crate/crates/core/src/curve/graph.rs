//! The metric graph `Γ`: every weight-`w` piece of `Γ⁰` becomes `w` copies.

use super::locus::{CornerLocus, Point};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub length: Rat,
    /// Index of the edge of `Γ⁰` this copy lies over.
    pub parent: usize,
    pub copy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stub {
    pub origin: usize,
    pub direction: (i64, i64),
    pub parent: usize,
    pub copy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    pub nodes: Vec<Point>,
    pub edges: Vec<GraphEdge>,
    pub stubs: Vec<Stub>,
}

pub fn split_multiplicity(g0: &CornerLocus) -> MetricGraph {
    let mut edges = Vec::new();
    for (parent, e) in g0.edges.iter().enumerate() {
        for copy in 0..e.weight as usize {
            edges.push(GraphEdge { a: e.a, b: e.b, length: e.length, parent, copy });
        }
    }
    let mut stubs = Vec::new();
    for (parent, r) in g0.rays.iter().enumerate() {
        for copy in 0..r.weight as usize {
            stubs.push(Stub { origin: r.origin, direction: r.direction, parent, copy });
        }
    }
    MetricGraph { nodes: g0.vertices.clone(), edges, stubs }
}

/// Union-find with path halving.
pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

impl MetricGraph {
    pub fn components(&self) -> usize {
        let mut dsu = Dsu::new(self.nodes.len());
        let merged = self.edges.iter().filter(|e| dsu.union(e.a, e.b)).count();
        self.nodes.len() - merged
    }

    /// First Betti number `E - V + components`.
    pub fn genus(&self) -> usize {
        self.edges.len() + self.components() - self.nodes.len()
    }
}
