use num_traits::Zero;

use super::BbsState;
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::trop::{Trop, TropMatrix};

/// Carrier values `Q[n][m]`, zero-based like [`BbsState`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QGrid {
    pub q: Vec<Vec<Rat>>,
}

impl QGrid {
    pub fn first_row(&self) -> &[Rat] {
        &self.q[0]
    }
}

/// [`QGrid`] plus the by-products of the eigenproblem for row 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSolution {
    pub grid: QGrid,
    /// Minimum cycle mean of the inverse transfer matrix; equals `-G`.
    pub lambda: Rat,
    pub eigenvector: Vec<Rat>,
    pub critical_classes: usize,
}

/// `Q_{n,m} = W_{n,m} + min(0, X_{n,m})` where
/// `X_{n,m} = max_k Σ_{l=0}^{k} (Q_{n+1,m-l-1} - W_{n,m-l})`, all indices cyclic.
pub fn sweep_row(w_row: &[Rat], q_next: &[Rat]) -> Vec<Rat> {
    let m = w_row.len();
    let at = |i: isize| ((i % m as isize) + m as isize) as usize % m;
    (0..m)
        .map(|mi| {
            let mut acc = Rat::zero();
            let mut best: Option<Rat> = None;
            for l in 0..m as isize {
                acc += q_next[at(mi as isize - l - 1)] - w_row[at(mi as isize - l)];
                best = Some(best.map_or(acc, |b: Rat| b.max(acc)));
            }
            w_row[mi] + best.unwrap().min(Rat::zero())
        })
        .collect()
}

/// Min-plus image of `L_n^{-1} = (E + S⁻¹V_n)⁻¹ S⁻¹` evaluated at `y = (-1)^M α`,
/// after the alternating-sign conjugation that makes it entrywise positive.
pub fn inverse_lax_min_plus(w_row: &[Rat], a: Rat) -> Result<TropMatrix> {
    let m = w_row.len();
    let mut s_inv = TropMatrix::zeros(m);
    for i in 0..m - 1 {
        s_inv[(i + 1, i)] = Trop::one();
    }
    s_inv[(0, m - 1)] = s_inv[(0, m - 1)] + Trop::Finite(-a);
    let v = TropMatrix::diagonal(w_row);
    s_inv.mul(&v)?.kleene_star()?.mul(&s_inv)
}

/// Prefactor `k₁` in `α = k₁e^{-A/ε}` assumed when `A = B`, where some
/// `k₁ > 1` is needed for `α > β`. It only matters for breaking ties
/// between critical classes.
pub const EQUAL_LEVEL_PREFACTOR: f64 = 2.0;

/// Leading coefficients of the entries of the positive transfer matrix
/// `Π_n [Σ_k (ŜV_n)^k] Ŝ`, where `Ŝ` carries `1/α` on its wrap-around entry.
/// Each factor entry is a single monomial with coefficient `k₁^{-wraps}`;
/// products add the coefficients of the tied minimal terms.
pub fn transfer_leading_terms(s: &BbsState, k1: f64) -> (Vec<Vec<Rat>>, Vec<Vec<f64>>) {
    let m = s.m();
    let a = s.level();
    let mut val: Option<Vec<Vec<Rat>>> = None;
    let mut coef: Vec<Vec<f64>> = Vec::new();
    for row in s.grid() {
        let mut fv = vec![vec![Rat::zero(); m]; m];
        let mut fc = vec![vec![0.0; m]; m];
        for i in 0..m {
            for c in 0..m {
                let j = (c + 1) % m;
                let k = (i + m - j) % m;
                let mut v: Rat = (0..k).map(|l| row[(j + l) % m]).sum();
                let mut wraps = 0;
                if j + k >= m {
                    wraps += 1;
                }
                if c == m - 1 {
                    wraps += 1;
                }
                v -= a * Rat::from_integer(wraps);
                fv[i][c] = v;
                fc[i][c] = k1.powi(-(wraps as i32));
            }
        }
        match val.take() {
            None => {
                val = Some(fv);
                coef = fc;
            }
            Some(pv) => {
                let mut nv = vec![vec![Rat::zero(); m]; m];
                let mut nc = vec![vec![0.0; m]; m];
                for i in 0..m {
                    for c in 0..m {
                        let best = (0..m).map(|j| pv[i][j] + fv[j][c]).min().unwrap();
                        nv[i][c] = best;
                        nc[i][c] = (0..m).filter(|&j| pv[i][j] + fv[j][c] == best).map(|j| coef[i][j] * fc[j][c]).sum();
                    }
                }
                val = Some(nv);
                coef = nc;
            }
        }
    }
    (val.unwrap(), coef)
}

/// Computes the unique carrier grid with `Σ_m Q[n][m] = A` for every `n`.
///
/// Row 1 comes from the tropical eigenvector of the inverse transfer matrix,
/// rows `N, N-1, …, 2` from the explicit sweep, and row 1 is then re-derived
/// from row 2 as a consistency check.
pub fn solve_q(s: &BbsState) -> Result<QSolution> {
    let (n, m) = (s.n(), s.m());
    let a = s.level();
    let b = s.b();
    if a > b {
        return Err(Error::LevelTooHigh { a, b });
    }
    let mut transfer = TropMatrix::identity(m);
    for row in s.grid() {
        transfer = transfer.mul(&inverse_lax_min_plus(row, a)?)?;
    }
    let lambda = transfer.min_cycle_mean()?;
    let k1 = if a == b { EQUAL_LEVEL_PREFACTOR } else { 1.0 };
    let (_, coef) = transfer_leading_terms(s, k1);
    let eig = transfer.limit_eigenvector(lambda, Some(&coef))?;
    let mu = &eig.vector;

    let mut first = Vec::with_capacity(m);
    for i in 0..m - 1 {
        first.push(mu[i + 1] - mu[i]);
    }
    first.push(mu[0] + a - mu[m - 1]);

    let mut q = vec![Vec::new(); n];
    q[0] = first.clone();
    for ni in (1..n).rev() {
        let next = if ni + 1 == n { &q[0] } else { &q[ni + 1] };
        q[ni] = sweep_row(&s.grid()[ni], next);
    }
    let next = if n == 1 { &q[0] } else { &q[1] };
    let again = sweep_row(&s.grid()[0], next);
    if let Some(mi) = (0..m).find(|&mi| again[mi] != first[mi]) {
        return Err(Error::InconsistentFixedPoint { m: mi + 1, expected: first[mi], got: again[mi] });
    }
    Ok(QSolution { grid: QGrid { q }, lambda, eigenvector: eig.vector, critical_classes: eig.critical_classes })
}
