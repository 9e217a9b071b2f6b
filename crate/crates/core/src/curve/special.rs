//! Points of `Γ` singled out by the conserved quantities of a state.

use num_traits::Signed;

use super::graph::MetricGraph;
use super::locus::{CornerLocus, Point};
use crate::bbs::{conserved, BbsState};
use crate::error::{Error, Result};
use crate::rational::{fmt_rat, rat, Rat};
use crate::spectral::SpectralData;

/// A point of `Γ`. `pos` on an edge is the lattice distance from its `a` end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphPoint {
    Node(usize),
    OnEdge { edge: usize, pos: Rat },
    Stub(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPoints {
    /// Largest `X` with `(X, A)` on the curve.
    pub g: Rat,
    pub p0: GraphPoint,
    pub p1: GraphPoint,
    pub p2: GraphPoint,
    pub p3: Vec<GraphPoint>,
    /// Choices that were not forced; harmless modulo the period lattice.
    pub ambiguous: Vec<String>,
}

/// `t > 0` with `p - origin = t·dir`, if any.
fn along(origin: Point, dir: (i64, i64), p: Point) -> Option<Rat> {
    let (dx, dy) = (p.0 - origin.0, p.1 - origin.1);
    if dx * rat(dir.1) != dy * rat(dir.0) {
        return None;
    }
    let t = if dir.0 != 0 { dx / rat(dir.0) } else { dy / rat(dir.1) };
    t.is_positive().then_some(t)
}

/// Finds `p` on `Γ`, using copy 0 of a multiple edge or ray.
pub fn locate(g0: &CornerLocus, g: &MetricGraph, p: Point) -> Option<GraphPoint> {
    if let Some(v) = g0.vertex_index(p) {
        return Some(GraphPoint::Node(v));
    }
    for (k, e) in g0.edges.iter().enumerate() {
        if let Some(t) = along(g0.vertices[e.a], e.direction, p) {
            if t < e.length {
                let edge = g.edges.iter().position(|ge| ge.parent == k).unwrap();
                return Some(GraphPoint::OnEdge { edge, pos: t });
            }
        }
    }
    for (k, r) in g0.rays.iter().enumerate() {
        if along(g0.vertices[r.origin], r.direction, p).is_some() {
            return Some(GraphPoint::Stub(g.stubs.iter().position(|s| s.parent == k).unwrap()));
        }
    }
    None
}

fn fmt_point(p: Point) -> String {
    format!("({}, {})", fmt_rat(&p.0), fmt_rat(&p.1))
}

pub fn locate_special_points(
    s: &BbsState,
    sd: &SpectralData,
    g0: &CornerLocus,
    g: &MetricGraph,
) -> Result<SpecialPoints> {
    let c = conserved(s);
    let mut ambiguous = Vec::new();

    let big_g =
        sd.charpoly_trop.restrict_y(c.a).max_root().ok_or_else(|| {
            Error::PointNotOnCurve(format!("P1: no root of the restriction to Y = {}", fmt_rat(&c.a)))
        })?;
    let p1 =
        locate(g0, g, (big_g, c.a)).ok_or_else(|| Error::PointNotOnCurve(format!("P1 {}", fmt_point((big_g, c.a)))))?;

    let n1 = (sd.n / sd.d) as i64;
    let m1 = (sd.m / sd.d) as i64;
    let downward: Vec<usize> =
        (0..g0.rays.len()).filter(|&k| g0.rays[k].direction.0 < 0 && g0.rays[k].direction.1 < 0).collect();
    let preferred: Vec<usize> = downward.iter().copied().filter(|&k| g0.rays[k].direction == (-n1, -m1)).collect();
    let pool = if preferred.is_empty() { &downward } else { &preferred };
    let &p0_ray = pool.first().ok_or_else(|| Error::PointNotOnCurve("P0: no ray toward (-inf, -inf)".into()))?;
    if pool.len() > 1 {
        ambiguous.push(format!("P0: {} rays toward (-inf, -inf)", pool.len()));
    }

    let stub_of = |ray: usize, copy: usize| g.stubs.iter().position(|st| st.parent == ray && st.copy == copy).unwrap();

    let horizontal: Vec<usize> = (0..g0.rays.len())
        .filter(|&k| g0.rays[k].direction == (1, 0) && g0.vertices[g0.rays[k].origin].1 == c.b)
        .collect();
    let &p2_ray = horizontal
        .first()
        .ok_or_else(|| Error::PointNotOnCurve(format!("P2: no horizontal ray at Y = {}", fmt_rat(&c.b))))?;

    let mut used = vec![0usize; g0.rays.len()];
    let mut p3 = Vec::with_capacity(c.h.len());
    for (mi, h) in c.h.iter().enumerate() {
        let k = (0..g0.rays.len())
            .find(|&k| g0.rays[k].direction == (0, 1) && g0.vertices[g0.rays[k].origin].0 == *h)
            .ok_or_else(|| Error::PointNotOnCurve(format!("P3({}): no vertical ray at X = {}", mi + 1, fmt_rat(h))))?;
        let copy = used[k].min(g0.rays[k].weight as usize - 1);
        if used[k] >= g0.rays[k].weight as usize {
            ambiguous.push(format!("P3({}): ray at X = {} already used by every copy", mi + 1, fmt_rat(h)));
        }
        used[k] += 1;
        p3.push(GraphPoint::Stub(stub_of(k, copy)));
    }

    Ok(SpecialPoints {
        g: big_g,
        p0: GraphPoint::Stub(stub_of(p0_ray, 0)),
        p1,
        p2: GraphPoint::Stub(stub_of(p2_ray, 0)),
        p3,
        ambiguous,
    })
}

impl MetricGraph {
    /// Node where paths to `p` start or end; stubs contribute no length.
    pub fn anchor(&self, p: &GraphPoint) -> usize {
        match p {
            GraphPoint::Node(v) => *v,
            GraphPoint::OnEdge { edge, .. } => self.edges[*edge].a,
            GraphPoint::Stub(k) => self.stubs[*k].origin,
        }
    }

    /// Coordinates of a located point (a stub reports its origin).
    pub fn coords(&self, p: &GraphPoint, g0: &CornerLocus) -> Point {
        match p {
            GraphPoint::Node(v) => self.nodes[*v],
            GraphPoint::Stub(k) => self.nodes[self.stubs[*k].origin],
            GraphPoint::OnEdge { edge, pos } => {
                let e = &self.edges[*edge];
                let dir = g0.edges[e.parent].direction;
                let o = self.nodes[e.a];
                (o.0 + pos * rat(dir.0), o.1 + pos * rat(dir.1))
            }
        }
    }
}
