//! Period matrix, Abel–Jacobi images and the fundamental cycle.

use num_traits::{One, Signed};

use super::path::{chain, pairing, Path, SpanningTree};
use crate::curve::{GraphPoint, MetricGraph, SpecialPoints};
use crate::error::{Error, Result};
use crate::rational::{det_exact, lcm, solve_exact, Rat};

/// Cycle basis with its Gram matrix under the bilinear form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub basis: Vec<Path>,
    pub b: Vec<Vec<Rat>>,
    /// Tree used to route Abel–Jacobi paths.
    pub tree: SpanningTree,
}

fn gram(basis: &[Path]) -> Vec<Vec<Rat>> {
    basis.iter().map(|x| basis.iter().map(|y| pairing(x, y)).collect()).collect()
}

impl PeriodData {
    /// Fundamental cycles of the lexicographic spanning tree.
    pub fn new(g: &MetricGraph) -> Self {
        Self::with_tree(g, SpanningTree::lexicographic(g))
    }

    /// Fundamental cycles of the Kruskal tree for the given edge order.
    pub fn with_order(g: &MetricGraph, order: &[usize]) -> Self {
        Self::with_tree(g, SpanningTree::new(g, order))
    }

    fn with_tree(g: &MetricGraph, tree: SpanningTree) -> Self {
        let basis = tree.fundamental_cycles(g);
        Self { b: gram(&basis), basis, tree }
    }

    /// An explicit basis; `Err` unless its chains are independent and span the
    /// cycle space.
    pub fn from_cycles(g: &MetricGraph, basis: Vec<Path>) -> Result<Self> {
        let reference = Self::new(g);
        let fixture = Self { b: gram(&basis), basis, tree: reference.tree.clone() };
        match change_of_basis(g, &reference, &fixture) {
            Some(u) if u.len() == reference.genus() => Ok(fixture),
            _ => Err(Error::InvalidArgument("cycles do not form a basis of the cycle space".into())),
        }
    }

    pub fn genus(&self) -> usize {
        self.basis.len()
    }

    /// Pairing vector `((γ, β_i))_i` of a path.
    pub fn periods(&self, path: &Path) -> Vec<Rat> {
        self.basis.iter().map(|beta| pairing(path, beta)).collect()
    }

    /// Leading principal minors all positive.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.genus()).all(|k| {
            let minor: Vec<Vec<Rat>> = self.b[..k].iter().map(|r| r[..k].to_vec()).collect();
            det_exact(&minor).is_positive()
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let g = self.genus();
        (0..g).all(|i| (0..g).all(|j| self.b[i][j] == self.b[j][i]))
    }

    pub fn det(&self) -> Rat {
        if self.genus() == 0 {
            Rat::one()
        } else {
            det_exact(&self.b)
        }
    }

    /// `k` with `B·k = v`, or `None` when `v` is not in `B·Z^g`.
    pub fn lattice_coords(&self, v: &[Rat]) -> Result<Option<Vec<i64>>> {
        if self.genus() == 0 {
            return Ok(Some(Vec::new()));
        }
        let k = solve_exact(&self.b, v).ok_or(Error::SingularPeriodMatrix)?;
        Ok(k.iter().all(|x| x.is_integer()).then(|| k.iter().map(|x| *x.numer()).collect()))
    }

    pub fn in_lattice(&self, v: &[Rat]) -> Result<bool> {
        Ok(self.lattice_coords(v)?.is_some())
    }

    /// `F_{from}(to)`: pairing vector of the tree route from `from` to `to`.
    pub fn abel_jacobi(&self, g: &MetricGraph, from: &GraphPoint, to: &GraphPoint) -> Result<Vec<Rat>> {
        Ok(self.periods(&self.tree.path_between(g, from, to)?))
    }
}

/// Integer `U` with `chain(new_j) = Σ_i U[i][j] chain(old_i)`, if one exists.
/// When both are bases it is unimodular and `B_new = Uᵀ B_old U`.
pub fn change_of_basis(g: &MetricGraph, old: &PeriodData, new: &PeriodData) -> Option<Vec<Vec<i64>>> {
    let cols: Vec<Vec<Rat>> = old.basis.iter().map(|p| chain(g, p)).collect();
    let k = cols.len();
    if k == 0 {
        return new.basis.is_empty().then(Vec::new);
    }
    let normal: Vec<Vec<Rat>> = (0..k).map(|i| (0..k).map(|j| dot(&cols[i], &cols[j])).collect()).collect();
    let mut u = vec![vec![0i64; new.basis.len()]; k];
    for (j, p) in new.basis.iter().enumerate() {
        let target = chain(g, p);
        let rhs: Vec<Rat> = cols.iter().map(|c| dot(c, &target)).collect();
        let x = solve_exact(&normal, &rhs)?;
        let rebuilt: Vec<Rat> = (0..target.len()).map(|e| (0..k).map(|i| x[i] * cols[i][e]).sum()).collect();
        if rebuilt != target || !x.iter().all(|v| v.is_integer()) {
            return None;
        }
        for i in 0..k {
            u[i][j] = *x[i].numer();
        }
    }
    if new.basis.len() == k {
        let as_rat: Vec<Vec<Rat>> = u.iter().map(|r| r.iter().map(|&v| Rat::from_integer(v)).collect()).collect();
        if det_exact(&as_rat).abs() != Rat::one() {
            return None;
        }
    }
    Some(u)
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `T = F_{P₁}(P₀)`, `N = F_{P₂}(P₀)`, `M^(m) = F_{P₃^(m)}(P₀)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationVectors {
    pub t: Vec<Rat>,
    pub n: Vec<Rat>,
    pub m: Vec<Vec<Rat>>,
}

pub fn translation_vectors(pd: &PeriodData, g: &MetricGraph, sp: &SpecialPoints) -> Result<TranslationVectors> {
    Ok(TranslationVectors {
        t: pd.abel_jacobi(g, &sp.p1, &sp.p0)?,
        n: pd.abel_jacobi(g, &sp.p2, &sp.p0)?,
        m: sp.p3.iter().map(|p| pd.abel_jacobi(g, p, &sp.p0)).collect::<Result<_>>()?,
    })
}

/// `(F″, F′)`: the order of `T` in `R^g / B·Z^g` and `lcm(F″, d)`.
pub fn fundamental_cycle(pd: &PeriodData, t: &[Rat], d: u64) -> Result<(u64, u64)> {
    let fpp = if pd.genus() == 0 {
        1
    } else {
        let k = solve_exact(&pd.b, t).ok_or(Error::SingularPeriodMatrix)?;
        k.iter().fold(1u64, |acc, x| lcm(acc, x.denom().unsigned_abs()))
    };
    Ok((fpp, lcm(fpp, d)))
}

/// `B⁻¹ T`.
pub fn reduced_translation(pd: &PeriodData, t: &[Rat]) -> Result<Vec<Rat>> {
    if pd.genus() == 0 {
        return Ok(Vec::new());
    }
    solve_exact(&pd.b, t).ok_or(Error::SingularPeriodMatrix)
}
