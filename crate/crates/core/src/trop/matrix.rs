use std::fmt;

use num_traits::Zero;

use super::Trop;
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Square matrix over the min-plus semiring, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropMatrix {
    n: usize,
    data: Vec<Trop>,
}

/// Output of [`TropMatrix::eigenvector`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenResult {
    /// Normalized so the first entry is zero.
    pub vector: Vec<Rat>,
    /// Number of strongly connected classes of the critical graph. Values above
    /// one mean the eigenspace is not a single ray and the returned vector is
    /// one particular choice.
    pub critical_classes: usize,
}

impl EigenResult {
    pub fn multiple_critical_classes(&self) -> bool {
        self.critical_classes > 1
    }
}

impl TropMatrix {
    pub fn filled(n: usize, value: Trop) -> Self {
        assert!(n > 0, "tropical matrix must be non-empty");
        TropMatrix { n, data: vec![value; n * n] }
    }

    pub fn zeros(n: usize) -> Self {
        Self::filled(n, Trop::Infinity)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Trop::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = Trop::Finite(e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Trop>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch(n, row.len()));
            }
            data.extend(row);
        }
        Ok(TropMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Trop]> {
        self.data.chunks(self.n)
    }

    /// Min-plus product: `(a ⊗ b)(i,k) = min_j a(i,j) + b(j,k)`.
    pub fn mul(&self, other: &TropMatrix) -> Result<TropMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                if !a.is_finite() {
                    continue;
                }
                for k in 0..n {
                    let cand = a * other[(j, k)];
                    if cand < out[(i, k)] {
                        out[(i, k)] = cand;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Trop]) -> Vec<Trop> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).fold(Trop::Infinity, |a, b| a + b)).collect()
    }

    /// Adds the same finite constant to every finite entry.
    pub fn shifted(&self, c: Rat) -> TropMatrix {
        let data = self
            .data
            .iter()
            .map(|&e| match e {
                Trop::Finite(v) => Trop::Finite(v + c),
                Trop::Infinity => Trop::Infinity,
            })
            .collect();
        TropMatrix { n: self.n, data }
    }

    /// Kleene star `E ⊕ A ⊕ A² ⊕ …`: least-weight walks, via Floyd–Warshall.
    pub fn kleene_star(&self) -> Result<TropMatrix> {
        let n = self.n;
        let mut d = self.clone();
        for i in 0..n {
            d[(i, i)] = d[(i, i)] + Trop::one();
        }
        for k in 0..n {
            for i in 0..n {
                let dik = d[(i, k)];
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let cand = dik * d[(k, j)];
                    if cand < d[(i, j)] {
                        d[(i, j)] = cand;
                    }
                }
            }
            if (0..n).any(|i| d[(i, i)] < Trop::one()) {
                return Err(Error::NegativeCycle);
            }
        }
        Ok(d)
    }

    /// Minimum cycle mean by Karp's recurrence over walks of exact length `k`,
    /// started simultaneously from every node.
    pub fn min_cycle_mean(&self) -> Result<Rat> {
        let n = self.n;
        let mut walks = vec![vec![Trop::one(); n]];
        for k in 1..=n {
            let prev = &walks[k - 1];
            let next: Vec<Trop> =
                (0..n).map(|v| (0..n).map(|u| prev[u] * self[(u, v)]).fold(Trop::Infinity, |a, b| a + b)).collect();
            walks.push(next);
        }
        let mut best: Option<Rat> = None;
        for v in 0..n {
            let Trop::Finite(dn) = walks[n][v] else { continue };
            let worst = (0..n)
                .filter_map(|k| walks[k][v].finite().map(|dk| (dn - dk) / Rat::from_integer((n - k) as i64)))
                .max();
            if let Some(w) = worst {
                best = Some(best.map_or(w, |b| b.min(w)));
            }
        }
        best.ok_or(Error::Acyclic)
    }

    /// Tropical eigenvector for eigenvalue `lambda`: `min_j a(i,j) + m_j = lambda + m_i`.
    ///
    /// Built from the critical columns of `(a - lambda)*`. One column per
    /// critical class is normalized to a zero first entry and the columns are
    /// combined by entrywise minimum.
    pub fn eigenvector(&self, lambda: Rat) -> Result<EigenResult> {
        let n = self.n;
        let reduced = self.shifted(-lambda);
        let star = reduced.kleene_star()?;
        let critical: Vec<usize> = (0..n)
            .filter(|&i| {
                let through = (0..n).map(|j| reduced[(i, j)] * star[(j, i)]).fold(Trop::Infinity, |a, b| a + b);
                through == Trop::one()
            })
            .collect();
        if critical.is_empty() {
            return Err(Error::InvalidArgument("lambda is not the minimum cycle mean".into()));
        }
        let mut representatives: Vec<usize> = Vec::new();
        for &j in &critical {
            let same_class = representatives.iter().any(|&r| star[(r, j)] * star[(j, r)] == Trop::one());
            if !same_class {
                representatives.push(j);
            }
        }
        let mut combined = vec![Trop::Infinity; n];
        for &j in &representatives {
            let col: Vec<Trop> = (0..n).map(|i| star[(i, j)]).collect();
            let Some(pivot) = col.iter().find_map(|c| c.finite()) else { continue };
            for (acc, c) in combined.iter_mut().zip(&col) {
                if let Trop::Finite(v) = c {
                    *acc = *acc + Trop::Finite(*v - pivot);
                }
            }
        }
        let vector: Option<Vec<Rat>> = combined.iter().map(|c| c.finite()).collect();
        let Some(mut vector) = vector else {
            return Err(Error::InvalidArgument("eigenvector has infinite entries (reducible matrix)".into()));
        };
        let base = vector[0];
        for v in vector.iter_mut() {
            *v -= base;
        }
        debug_assert!(vector[0].is_zero());
        Ok(EigenResult { vector, critical_classes: representatives.len() })
    }
}

impl TropMatrix {
    /// Critical nodes of `reduced = a - λ`, one representative per class of
    /// the critical graph.
    fn critical_representatives(reduced: &TropMatrix, star: &TropMatrix) -> Vec<usize> {
        let n = reduced.n;
        let mut representatives: Vec<usize> = Vec::new();
        for i in 0..n {
            let through = (0..n).map(|j| reduced[(i, j)] * star[(j, i)]).fold(Trop::Infinity, |a, b| a + b);
            if through != Trop::one() {
                continue;
            }
            if !representatives.iter().any(|&r| star[(r, i)] * star[(i, r)] == Trop::one()) {
                representatives.push(i);
            }
        }
        representatives
    }

    /// The eigenvector that Perron vectors of matrices with leading terms
    /// `coef[i][j]·q^{a(i,j)}` converge to in valuation as `q → 0`.
    ///
    /// Critical classes compete first through the Perron roots of their
    /// leading coefficients on critical edges; only the maximal ones survive.
    /// Survivors are then weakly coupled: their columns of `(a - λ)*` are
    /// offset by the eigenvector of the class-to-class distance matrix,
    /// recursively, since that matrix may again have several critical classes.
    /// Pass `None` for unit coefficients.
    pub fn limit_eigenvector(&self, lambda: Rat, coef: Option<&[Vec<f64>]>) -> Result<EigenResult> {
        let n = self.n;
        let reduced = self.shifted(-lambda);
        let star = reduced.kleene_star()?;
        let reps = Self::critical_representatives(&reduced, &star);
        if reps.is_empty() {
            return Err(Error::InvalidArgument("lambda is not the minimum cycle mean".into()));
        }
        let classes = reps.len();
        let roots: Vec<f64> = reps
            .iter()
            .map(|&r| {
                let members: Vec<usize> = (0..n).filter(|&i| star[(r, i)] * star[(i, r)] == Trop::one()).collect();
                let mut c = vec![vec![0.0; members.len()]; members.len()];
                for (a, &i) in members.iter().enumerate() {
                    for (b, &j) in members.iter().enumerate() {
                        if reduced[(i, j)] * star[(j, i)] == Trop::one() {
                            c[a][b] = coef.map_or(1.0, |k| k[i][j]);
                        }
                    }
                }
                perron_root(&c)
            })
            .collect();
        let best = roots.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let reps: Vec<usize> =
            reps.iter().zip(&roots).filter(|(_, &r)| r >= best * (1.0 - 1e-9)).map(|(&i, _)| i).collect();

        let weights = if reps.len() == 1 {
            vec![Rat::zero()]
        } else {
            let mut gamma = TropMatrix::zeros(reps.len());
            for (c, &ic) in reps.iter().enumerate() {
                for (d, &id) in reps.iter().enumerate() {
                    if c != d {
                        gamma[(c, d)] = star[(ic, id)];
                    }
                }
            }
            let mu = gamma.min_cycle_mean()?;
            gamma.limit_eigenvector(mu, None)?.vector
        };
        let mut combined = vec![Trop::Infinity; n];
        for (&j, w) in reps.iter().zip(&weights) {
            for (i, acc) in combined.iter_mut().enumerate() {
                *acc = *acc + star[(i, j)] * Trop::Finite(*w);
            }
        }
        let Some(mut vector) = combined.iter().map(|c| c.finite()).collect::<Option<Vec<Rat>>>() else {
            return Err(Error::InvalidArgument("eigenvector has infinite entries (reducible matrix)".into()));
        };
        let base = vector[0];
        for v in vector.iter_mut() {
            *v -= base;
        }
        Ok(EigenResult { vector, critical_classes: classes })
    }
}

/// Spectral radius of a small non-negative irreducible matrix. Iterates with
/// `c + E`, which is primitive, so periodic classes converge too.
fn perron_root(c: &[Vec<f64>]) -> f64 {
    let n = c.len();
    let mut v = vec![1.0; n];
    let mut root = 0.0;
    for _ in 0..10_000 {
        let next: Vec<f64> = (0..n).map(|i| v[i] + (0..n).map(|j| c[i][j] * v[j]).sum::<f64>()).collect();
        let scale = next.iter().copied().fold(0.0, f64::max);
        let estimate = scale / v.iter().copied().fold(0.0, f64::max) - 1.0;
        v = next.iter().map(|x| x / scale).collect();
        if (estimate - root).abs() <= 1e-15 * estimate.abs().max(1.0) {
            return estimate;
        }
        root = estimate;
    }
    root
}

impl std::ops::Index<(usize, usize)> for TropMatrix {
    type Output = Trop;
    fn index(&self, (i, j): (usize, usize)) -> &Trop {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for TropMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Trop {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for TropMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
