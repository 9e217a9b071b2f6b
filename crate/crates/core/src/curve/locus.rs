//! Corner locus of a tropical polynomial via the regular subdivision of its
//! Newton polygon.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::trop::TropPoly2;

pub type Point = (Rat, Rat);

/// Bounded edge of the corner locus, stored with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveEdge {
    pub a: usize,
    pub b: usize,
    pub weight: u64,
    /// Lattice length.
    pub length: Rat,
    /// Primitive direction from `a` to `b`.
    pub direction: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRay {
    pub origin: usize,
    pub direction: (i64, i64),
    pub weight: u64,
}

/// The tropical curve `Γ⁰`: vertices sorted lexicographically, edges sorted by
/// endpoints, rays sorted by origin then direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerLocus {
    pub vertices: Vec<Point>,
    pub edges: Vec<CurveEdge>,
    pub rays: Vec<CurveRay>,
}

type Lattice = (i64, i64);

/// `c = a·i + b·j + h` through three lifted points, if they are not collinear.
fn plane(p: [(Lattice, Rat); 3]) -> Option<(Rat, Rat, Rat)> {
    let [((i0, j0), c0), ((i1, j1), c1), ((i2, j2), c2)] = p;
    let (di1, dj1, dc1) = (rat(i1 - i0), rat(j1 - j0), c1 - c0);
    let (di2, dj2, dc2) = (rat(i2 - i0), rat(j2 - j0), c2 - c0);
    let det = di1 * dj2 - di2 * dj1;
    if det.is_zero() {
        return None;
    }
    let a = (dc1 * dj2 - dc2 * dj1) / det;
    let b = (di1 * dc2 - di2 * dc1) / det;
    Some((a, b, c0 - a * rat(i0) - b * rat(j0)))
}

fn cross(o: Lattice, a: Lattice, b: Lattice) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise hull without collinear boundary points.
fn hull(points: &[Lattice]) -> Vec<Lattice> {
    let mut pts: Vec<Lattice> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Lattice> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Lattice> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn primitive(v: Lattice) -> (Lattice, i64) {
    let g = v.0.gcd(&v.1);
    ((v.0 / g, v.1 / g), g)
}

/// Builds `Γ⁰` from the lower hull of the lifted support `(i, j, c(i, j))`.
/// A 2-cell lying on the plane `c = a·i + b·j + h` is dual to the vertex
/// `(-a, -b)`.
pub fn corner_locus(p: &TropPoly2) -> Result<CornerLocus> {
    let pts: Vec<(Lattice, Rat)> = p.terms().collect();
    if pts.len() < 2 {
        return Err(Error::InvalidArgument("corner locus needs at least two support points".into()));
    }
    let mut planes = BTreeSet::new();
    for x in 0..pts.len() {
        for y in x + 1..pts.len() {
            for z in y + 1..pts.len() {
                let Some((a, b, h)) = plane([pts[x], pts[y], pts[z]]) else { continue };
                let below = pts.iter().any(|&((i, j), c)| c < a * rat(i) + b * rat(j) + h);
                if !below {
                    planes.insert((a, b, h));
                }
            }
        }
    }
    if planes.is_empty() {
        return Err(Error::DegenerateSupport);
    }

    struct Cell {
        vertex: Point,
        polygon: Vec<Lattice>,
    }
    let mut cells: Vec<Cell> = planes
        .iter()
        .map(|&(a, b, h)| {
            let on: Vec<Lattice> =
                pts.iter().filter(|&&((i, j), c)| c == a * rat(i) + b * rat(j) + h).map(|&(ij, _)| ij).collect();
            Cell { vertex: (-a, -b), polygon: hull(&on) }
        })
        .collect();
    cells.sort_by_key(|c| c.vertex);
    let vertices: Vec<Point> = cells.iter().map(|c| c.vertex).collect();

    let mut sides: BTreeMap<(Lattice, Lattice), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let k = cell.polygon.len();
        for t in 0..k {
            let (u, v) = (cell.polygon[t], cell.polygon[(t + 1) % k]);
            sides.entry((u.min(v), u.max(v))).or_default().push(ci);
        }
    }

    let mut edges = Vec::new();
    let mut rays = Vec::new();
    for ((u, v), owners) in sides {
        let ((du, dv), weight) = primitive((v.0 - u.0, v.1 - u.1));
        let normal = (-dv, du);
        match owners.as_slice() {
            [c1, c2] => {
                let (a, b) = ((*c1).min(*c2), (*c1).max(*c2));
                let (pa, pb) = (vertices[a], vertices[b]);
                let (dx, dy) = (pb.0 - pa.0, pb.1 - pa.1);
                let along = dx * rat(normal.0) + dy * rat(normal.1);
                let dir = if along.is_positive() { normal } else { (-normal.0, -normal.1) };
                let length = if dir.0 != 0 { dx / rat(dir.0) } else { dy / rat(dir.1) };
                edges.push(CurveEdge { a, b, weight: weight as u64, length, direction: dir });
            }
            [c] => {
                let inside = cells[*c].polygon.iter().find(|&&w| cross(u, v, w) != 0).copied().unwrap();
                let side = (inside.0 - u.0) * normal.0 + (inside.1 - u.1) * normal.1;
                let dir = if side > 0 { normal } else { (-normal.0, -normal.1) };
                rays.push(CurveRay { origin: *c, direction: dir, weight: weight as u64 });
            }
            _ => unreachable!("a subdivision edge bounds at most two cells"),
        }
    }
    edges.sort_by_key(|e| (e.a, e.b, e.direction));
    rays.sort_by_key(|r| (r.origin, r.direction));
    Ok(CornerLocus { vertices, edges, rays })
}

impl CornerLocus {
    /// Weighted sum of outgoing primitive directions at each vertex.
    pub fn balance(&self) -> Vec<(i64, i64)> {
        let mut out = vec![(0i64, 0i64); self.vertices.len()];
        for e in &self.edges {
            let w = e.weight as i64;
            out[e.a].0 += w * e.direction.0;
            out[e.a].1 += w * e.direction.1;
            out[e.b].0 -= w * e.direction.0;
            out[e.b].1 -= w * e.direction.1;
        }
        for r in &self.rays {
            let w = r.weight as i64;
            out[r.origin].0 += w * r.direction.0;
            out[r.origin].1 += w * r.direction.1;
        }
        out
    }

    pub fn is_balanced(&self) -> bool {
        self.balance().iter().all(|&b| b == (0, 0))
    }

    pub fn vertex_index(&self, p: Point) -> Option<usize> {
        self.vertices.binary_search(&p).ok()
    }
}
