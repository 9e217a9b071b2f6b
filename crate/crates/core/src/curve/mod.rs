//! The tropical spectral curve, its metric graph and the special points.

mod graph;
mod locus;
mod special;

pub(crate) use graph::Dsu;
pub use graph::{split_multiplicity, GraphEdge, MetricGraph, Stub};
pub use locus::{corner_locus, CornerLocus, CurveEdge, CurveRay, Point};
pub use special::{locate, locate_special_points, GraphPoint, SpecialPoints};

use crate::bbs::BbsState;
use crate::error::Result;
use crate::spectral::SpectralData;

/// Everything the curve side derives from one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveData {
    pub spectral: SpectralData,
    pub locus: CornerLocus,
    pub graph: MetricGraph,
    pub special: SpecialPoints,
}

impl CurveData {
    pub fn new(s: &BbsState) -> Result<Self> {
        let spectral = SpectralData::new(s)?;
        let locus = corner_locus(&spectral.charpoly_trop)?;
        let graph = split_multiplicity(&locus);
        let special = locate_special_points(s, &spectral, &locus, &graph)?;
        Ok(Self { spectral, locus, graph, special })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(x: i64, y: i64) -> Point {
        (rat(x), rat(y))
    }

    #[test]
    fn example_ii_curve() {
        let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1).unwrap();
        let c = CurveData::new(&s).unwrap();
        assert_eq!(c.locus.vertices, vec![pt(0, 0), pt(2, 2), pt(4, 2)]);
        let edges: Vec<_> = c.locus.edges.iter().map(|e| (e.a, e.b, e.weight, e.length)).collect();
        assert_eq!(edges, vec![(0, 1, 2, rat(2)), (0, 2, 1, rat(2)), (1, 2, 2, rat(2))]);
        let rays: Vec<_> = c.locus.rays.iter().map(|r| (r.origin, r.direction, r.weight)).collect();
        assert_eq!(rays, vec![(0, (-4, -3), 1), (1, (0, 1), 2), (2, (0, 1), 1), (2, (1, 0), 4)]);
        assert!(c.locus.is_balanced());
        assert_eq!(c.graph.genus(), 3);
        assert_eq!(c.special.g, rat(2));
        assert_eq!(c.graph.coords(&c.special.p1, &c.locus), pt(2, 1));
        assert!(matches!(c.special.p1, GraphPoint::OnEdge { edge: 2, .. }));
        let xs: Vec<_> = c.special.p3.iter().map(|p| c.graph.coords(p, &c.locus).0).collect();
        assert_eq!(xs, vec![rat(4), rat(2), rat(2)]);
        assert_eq!(c.graph.coords(&c.special.p2, &c.locus), pt(4, 2));
        assert_eq!(c.graph.coords(&c.special.p0, &c.locus), pt(0, 0));
        assert!(c.special.ambiguous.is_empty());
    }

    #[test]
    fn example_i_curve() {
        let s = BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1).unwrap();
        let c = CurveData::new(&s).unwrap();
        assert_eq!(c.graph.genus(), 0);
        assert_eq!(c.special.g, rat(1));
        assert_eq!(c.special.p1, GraphPoint::Node(0));
    }
}
