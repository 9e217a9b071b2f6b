//! Cycle basis, period matrix, Abel–Jacobi map and the fundamental cycle
//! `F′ = lcm(F″, d)`.

mod path;
mod period;

pub use path::{chain, edge_path, pairing, Path, Segment, SpanningTree};
pub use period::{
    change_of_basis, fundamental_cycle, reduced_translation, translation_vectors, PeriodData, TranslationVectors,
};

use crate::bbs::BbsState;
use crate::curve::{CurveData, MetricGraph};
use crate::error::Result;
use crate::rational::Rat;

/// The full analysis of one state, from spectral curve to `F′`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianData {
    pub curve: CurveData,
    pub period: PeriodData,
    pub vectors: TranslationVectors,
    /// `B⁻¹ T`.
    pub reduced_t: Vec<Rat>,
    pub fpp: u64,
    pub fp: u64,
}

impl JacobianData {
    pub fn new(s: &BbsState) -> Result<Self> {
        let curve = CurveData::new(s)?;
        let period = PeriodData::new(&curve.graph);
        Self::with_period(curve, period, s.d() as u64)
    }

    pub fn with_period(curve: CurveData, period: PeriodData, d: u64) -> Result<Self> {
        let vectors = translation_vectors(&period, &curve.graph, &curve.special)?;
        let reduced_t = reduced_translation(&period, &vectors.t)?;
        let (fpp, fp) = fundamental_cycle(&period, &vectors.t, d)?;
        Ok(Self { curve, period, vectors, reduced_t, fpp, fp })
    }
}

/// The basis drawn for the `N = 4, M = 3` example with `A = 1, B = 2`: two
/// loops around the doubled edges and the outer triangle, plus the routes it
/// uses for `T, N, M^(m)`. Edges of its metric graph, in index order, are the
/// two copies of `(0,0)–(2,2)`, the edge `(0,0)–(4,2)`, and the two copies of
/// `(2,2)–(4,2)`.
pub mod fixture {
    use super::*;
    use crate::error::Error;

    pub fn example_ii_basis(g: &MetricGraph) -> Result<PeriodData> {
        check_shape(g)?;
        let cycles = vec![
            edge_path(g, &[(0, false), (1, true)]),
            edge_path(g, &[(3, false), (4, true)]),
            edge_path(g, &[(2, true), (4, false), (1, false)]),
        ];
        PeriodData::from_cycles(g, cycles)
    }

    /// Routes from `P₁`, `P₂`, `P₃^(1..3)` to `P₀ = (0,0)`.
    pub fn example_ii_routes(g: &MetricGraph) -> Result<(Path, Path, Vec<Path>)> {
        check_shape(g)?;
        let p1 = vec![Segment { edge: 2, from: Rat::from_integer(1), to: Rat::from_integer(0) }];
        let from_v2 = edge_path(g, &[(2, false)]);
        let m1 = edge_path(g, &[(3, false), (0, false)]);
        let from_v1 = edge_path(g, &[(0, false)]);
        Ok((p1, from_v2, vec![m1, from_v1.clone(), from_v1]))
    }

    fn check_shape(g: &MetricGraph) -> Result<()> {
        let ends: Vec<(usize, usize)> = g.edges.iter().map(|e| (e.a, e.b)).collect();
        if g.nodes.len() == 3 && ends == [(0, 1), (0, 1), (0, 2), (1, 2), (1, 2)] {
            Ok(())
        } else {
            Err(Error::InvalidArgument("graph does not have the expected three-vertex shape".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn example_ii() -> BbsState {
        BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn example_ii_fixture_matrix() {
        let c = CurveData::new(&example_ii()).unwrap();
        let pd = fixture::example_ii_basis(&c.graph).unwrap();
        assert_eq!(pd.b, vec![ints(&[4, 0, -2]), ints(&[0, 4, -2]), ints(&[-2, -2, 6])]);
        assert_eq!(pd.det(), rat(64));
        assert_eq!(pairing(&pd.basis[0], &pd.basis[2]), rat(-2));

        let (t, n, m) = fixture::example_ii_routes(&c.graph).unwrap();
        assert_eq!(pd.periods(&t), ints(&[0, 0, -1]));
        assert_eq!(pd.periods(&n), ints(&[0, 0, -2]));
        let m: Vec<_> = m.iter().map(|p| pd.periods(p)).collect();
        assert_eq!(m, vec![ints(&[2, 2, 0]), ints(&[2, 0, 0]), ints(&[2, 0, 0])]);
        assert_eq!(reduced_translation(&pd, &pd.periods(&t)).unwrap(), vec![ratio(-1, 8), ratio(-1, 8), ratio(-1, 4)]);
    }

    #[test]
    fn example_ii_default_basis() {
        let j = JacobianData::new(&example_ii()).unwrap();
        assert_eq!((j.fpp, j.fp), (8, 8));
        assert!(j.period.is_symmetric() && j.period.is_positive_definite());
        assert_eq!(j.period.det(), rat(64));
        let fixture = fixture::example_ii_basis(&j.curve.graph).unwrap();
        let u = change_of_basis(&j.curve.graph, &j.period, &fixture).unwrap();
        let b = &j.period.b;
        let congruent: Vec<Vec<Rat>> = (0..3)
            .map(|r| {
                (0..3)
                    .map(|c| {
                        (0..3)
                            .flat_map(|i| (0..3).map(move |k| (i, k)))
                            .map(|(i, k)| rat(u[i][r]) * b[i][k] * rat(u[k][c]))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        assert_eq!(congruent, fixture.b);
        let four_n: Vec<Rat> = j.vectors.n.iter().map(|x| x * rat(4)).collect();
        assert!(j.period.in_lattice(&four_n).unwrap());
    }

    #[test]
    fn example_i_is_trivial() {
        let s = BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1).unwrap();
        let j = JacobianData::new(&s).unwrap();
        assert_eq!(j.period.genus(), 0);
        assert!(j.vectors.t.is_empty());
        assert_eq!((j.fpp, j.fp), (1, 3));
    }

    #[test]
    fn zero_translation() {
        let c = CurveData::new(&example_ii()).unwrap();
        let pd = PeriodData::new(&c.graph);
        assert_eq!(fundamental_cycle(&pd, &ints(&[0, 0, 0]), 1).unwrap(), (1, 1));
        assert_eq!(pd.abel_jacobi(&c.graph, &c.special.p0, &c.special.p0).unwrap(), ints(&[0, 0, 0]));
    }
}
