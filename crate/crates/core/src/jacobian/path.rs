//! Oriented paths on the metric graph and the tropical bilinear form.

use num_traits::{Signed, Zero};

use crate::curve::{Dsu, GraphPoint, MetricGraph};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Traversal of edge `edge` from position `from` to position `to`, positions
/// measured from the edge's `a` end in lattice length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub edge: usize,
    pub from: Rat,
    pub to: Rat,
}

pub type Path = Vec<Segment>;

/// Full traversals: `(edge, true)` runs `a → b`, `(edge, false)` runs `b → a`.
pub fn edge_path(g: &MetricGraph, steps: &[(usize, bool)]) -> Path {
    steps
        .iter()
        .map(|&(edge, forward)| {
            let len = g.edges[edge].length;
            if forward {
                Segment { edge, from: Rat::zero(), to: len }
            } else {
                Segment { edge, from: len, to: Rat::zero() }
            }
        })
        .collect()
}

/// Signed lattice length of the common support: each pair of segments on the
/// same edge contributes its overlap, positive when the orientations agree.
pub fn pairing(p: &[Segment], q: &[Segment]) -> Rat {
    let mut total = Rat::zero();
    for s in p {
        for t in q.iter().filter(|t| t.edge == s.edge) {
            let lo = s.from.min(s.to).max(t.from.min(t.to));
            let hi = s.from.max(s.to).min(t.from.max(t.to));
            if hi > lo {
                let same = (s.to - s.from).is_positive() == (t.to - t.from).is_positive();
                total += if same { hi - lo } else { lo - hi };
            }
        }
    }
    total
}

/// Coefficient of each edge in the 1-chain of `p` (full traversal = ±1).
pub fn chain(g: &MetricGraph, p: &[Segment]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); g.edges.len()];
    for s in p {
        out[s.edge] += (s.to - s.from) / g.edges[s.edge].length;
    }
    out
}

/// Spanning forest grown by Kruskal's rule over a fixed edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    pub in_tree: Vec<bool>,
    /// `(parent node, edge)` toward the root of each component.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    root: Vec<usize>,
}

impl SpanningTree {
    pub fn new(g: &MetricGraph, order: &[usize]) -> Self {
        let n = g.nodes.len();
        let mut dsu = Dsu::new(n);
        let mut in_tree = vec![false; g.edges.len()];
        for &e in order {
            if dsu.union(g.edges[e].a, g.edges[e].b) {
                in_tree[e] = true;
            }
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut root = vec![usize::MAX; n];
        for r in 0..n {
            if root[r] != usize::MAX {
                continue;
            }
            root[r] = r;
            let mut queue = std::collections::VecDeque::from([r]);
            while let Some(u) = queue.pop_front() {
                for (e, ge) in g.edges.iter().enumerate() {
                    if !in_tree[e] || (ge.a != u && ge.b != u) {
                        continue;
                    }
                    let v = if ge.a == u { ge.b } else { ge.a };
                    if root[v] == usize::MAX {
                        root[v] = r;
                        parent[v] = Some((u, e));
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        Self { in_tree, parent, depth, root }
    }

    pub fn lexicographic(g: &MetricGraph) -> Self {
        Self::new(g, &(0..g.edges.len()).collect::<Vec<_>>())
    }

    /// Tree path from `u` to `v`.
    pub fn route(&self, g: &MetricGraph, u: usize, v: usize) -> Result<Path> {
        if self.root[u] != self.root[v] {
            return Err(Error::DisconnectedPoints);
        }
        let step = |node: usize| {
            let (up, e) = self.parent[node].unwrap();
            let ge = &g.edges[e];
            let forward = ge.a == node;
            (up, (e, forward))
        };
        let (mut x, mut y) = (u, v);
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while self.depth[x] > self.depth[y] {
            let (up, s) = step(x);
            head.push(s);
            x = up;
        }
        while self.depth[y] > self.depth[x] {
            let (up, s) = step(y);
            tail.push(s);
            y = up;
        }
        while x != y {
            let (ux, sx) = step(x);
            let (uy, sy) = step(y);
            head.push(sx);
            tail.push(sy);
            x = ux;
            y = uy;
        }
        // `tail` was walked toward the meeting point; reverse it back out
        head.extend(tail.into_iter().rev().map(|(e, f)| (e, !f)));
        Ok(edge_path(g, &head))
    }

    /// Fundamental cycles: chord `a → b` closed by the tree path `b → a`.
    pub fn fundamental_cycles(&self, g: &MetricGraph) -> Vec<Path> {
        (0..g.edges.len())
            .filter(|&e| !self.in_tree[e])
            .map(|e| {
                let mut cycle = edge_path(g, &[(e, true)]);
                cycle.extend(self.route(g, g.edges[e].b, g.edges[e].a).unwrap());
                cycle
            })
            .collect()
    }

    /// Path between two located points through the tree.
    pub fn path_between(&self, g: &MetricGraph, from: &GraphPoint, to: &GraphPoint) -> Result<Path> {
        let mut path = Vec::new();
        if let GraphPoint::OnEdge { edge, pos } = from {
            path.push(Segment { edge: *edge, from: *pos, to: Rat::zero() });
        }
        path.extend(self.route(g, g.anchor(from), g.anchor(to))?);
        if let GraphPoint::OnEdge { edge, pos } = to {
            path.push(Segment { edge: *edge, from: Rat::zero(), to: *pos });
        }
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn seg(edge: usize, from: i64, to: i64) -> Segment {
        Segment { edge, from: rat(from), to: rat(to) }
    }

    #[test]
    fn overlap_signs() {
        let p = vec![seg(0, 0, 4)];
        assert_eq!(pairing(&p, &p), rat(4));
        assert_eq!(pairing(&p, &[seg(0, 3, 1)]), rat(-2));
        assert_eq!(pairing(&p, &[seg(1, 0, 4)]), rat(0));
        let half = Segment { edge: 0, from: ratio(1, 2), to: rat(1) };
        assert_eq!(pairing(&[half], &p), ratio(1, 2));
    }
}
