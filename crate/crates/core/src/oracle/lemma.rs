//! Determinant identities of the periodic reduction, checked numerically.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::discrete::{discrete_solve, lift_state, DiscreteState};
use crate::bbs::BbsState;
use crate::error::Result;

pub type Mat = Vec<Vec<f64>>;

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

/// `diag(e^{ln_diag}) + S` where `S` has ones above the diagonal and `y` at `(M, 1)`.
pub fn bidiagonal(ln_diag: &[f64], y: f64) -> Mat {
    let m = ln_diag.len();
    let mut a = vec![vec![0.0; m]; m];
    for i in 0..m {
        a[i][i] = ln_diag[i].exp();
        if i + 1 < m {
            a[i][i + 1] = 1.0;
        }
    }
    a[m - 1][0] += y;
    a
}

/// `X_n = L_{n+N-1} ⋯ L_{n+1} L_n`, row indices cyclic.
pub fn monodromy_numeric(ln_v: &[Vec<f64>], n: usize, y: f64) -> Mat {
    let rows = ln_v.len();
    let mut x = bidiagonal(&ln_v[n], y);
    for k in 1..rows {
        x = mat_mul(&bidiagonal(&ln_v[(n + k) % rows], y), &x);
    }
    x
}

/// Determinant by cofactor expansion, together with the permanent of `bound`,
/// an entrywise upper bound on the magnitudes of the terms that make up `a`.
/// The permanent then bounds every term of the expansion, so
/// `|det - expected| / perm` stays meaningful under cancellation.
pub fn det_with_bound(a: &Mat, bound: &Mat) -> (f64, f64) {
    fn rec(
        a: &Mat,
        bound: &Mat,
        row: usize,
        used: u32,
        memo: &mut std::collections::HashMap<u32, (f64, f64)>,
    ) -> (f64, f64) {
        let n = a.len();
        if row == n {
            return (1.0, 1.0);
        }
        if let Some(&v) = memo.get(&used) {
            return v;
        }
        let (mut det, mut perm) = (0.0, 0.0);
        let mut sign = 1.0;
        for c in 0..n {
            if used & (1 << c) != 0 {
                continue;
            }
            if a[row][c] != 0.0 || bound[row][c] != 0.0 {
                let (d, p) = rec(a, bound, row + 1, used | (1 << c), memo);
                det += sign * a[row][c] * d;
                perm += bound[row][c].abs() * p;
            }
            sign = -sign;
        }
        memo.insert(used, (det, perm));
        (det, perm)
    }
    rec(a, bound, 0, 0, &mut Default::default())
}

pub fn det_with_scale(a: &Mat) -> (f64, f64) {
    det_with_bound(a, a)
}

/// The `N`-banded part of the periodic monodromy: `z[i][k] = z̃_{i,i+k}`,
/// `0 ≤ k < N`, so that `X̃ = S̃^N + Z̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicReduction {
    pub n: usize,
    pub m: usize,
    pub z: Vec<Vec<f64>>,
}

/// Row `i` of `X̃_n` is `e_i L̃_{n+N-1} ⋯ L̃_n`, with `(rL̃)_k = r_k V_{i+k} + r_{k-1}`.
pub fn periodic_reduction(ln_v: &[Vec<f64>], n: usize) -> PeriodicReduction {
    let (rows, m) = (ln_v.len(), ln_v[0].len());
    let z = (0..m)
        .map(|i| {
            let mut r = vec![0.0; rows + 1];
            r[0] = 1.0;
            for step in (0..rows).rev() {
                let v = &ln_v[(n + step) % rows];
                for k in (0..=rows).rev() {
                    let shifted = if k > 0 { r[k - 1] } else { 0.0 };
                    r[k] = r[k] * v[(i + k) % m].exp() + shifted;
                }
            }
            debug_assert!((r[rows] - 1.0).abs() < 1e-12);
            r.truncate(rows);
            r
        })
        .collect();
    PeriodicReduction { n: rows, m, z }
}

impl PeriodicReduction {
    /// `X(y)` rebuilt as `z_{i,j} + y z_{i,j+M} + …` including the `S^N` band.
    pub fn rebuild(&self, y: f64) -> Mat {
        let mut x = vec![vec![0.0; self.m]; self.m];
        for i in 0..self.m {
            for k in 0..=self.n {
                let coef = if k == self.n { 1.0 } else { self.z[i][k] };
                let col = i + k;
                x[i][col % self.m] += coef * y.powi((col / self.m) as i32);
            }
        }
        x
    }

    /// `U_m`: ones above the diagonal, last row `(x - z̃_{m,m}, -z̃_{m,m+1}, …)`.
    pub fn u_matrix(&self, m: usize, x: f64) -> Mat {
        self.u_impl(m, x, false)
    }

    /// `diag(e^{ln_row[k mod M]})_{k<N} + U_1`; gives `H_n` for `V` and `M_n` for `I`.
    pub fn with_diagonal(&self, ln_row: &[f64], x: f64) -> Mat {
        self.diag_impl(ln_row, x, false)
    }

    /// Entrywise sums of term magnitudes for `u_matrix`.
    pub fn u_bound(&self, m: usize, x: f64) -> Mat {
        self.u_impl(m, x, true)
    }

    pub fn with_diagonal_bound(&self, ln_row: &[f64], x: f64) -> Mat {
        self.diag_impl(ln_row, x, true)
    }

    fn u_impl(&self, m: usize, x: f64, mag: bool) -> Mat {
        let n = self.n;
        let sign = if mag { 1.0 } else { -1.0 };
        let mut u = vec![vec![0.0; n]; n];
        for i in 0..n - 1 {
            u[i][i + 1] = 1.0;
        }
        for k in 0..n {
            u[n - 1][k] += sign * self.z[m][k];
        }
        u[n - 1][0] += if mag { x.abs() } else { x };
        u
    }

    fn diag_impl(&self, ln_row: &[f64], x: f64, mag: bool) -> Mat {
        let mut a = self.u_impl(0, x, mag);
        for k in 0..self.n {
            a[k][k] += ln_row[k % self.m].exp();
        }
        a
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetCheck {
    pub name: String,
    pub x: f64,
    pub y: f64,
    pub det: f64,
    pub expected: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub eps: f64,
    pub kappa: f64,
    pub checks: Vec<DetCheck>,
    /// `|det M_n(κ)| / perm` for every row.
    pub kappa_root_err: f64,
    /// Entrywise rebuild of `X_n` from its `z`-table.
    pub reconstruction_err: f64,
    /// `X'R - RX` relative to the size of its terms.
    pub refactor_err: f64,
    /// `|ln Π_m V'_{n,m} - ln β|` and `|ln Π_m I_{n,m} - ln α|`.
    pub beta_err: f64,
    pub alpha_err: f64,
    /// Characteristic polynomials of `X` and `X'` at sampled `(x, y)`.
    pub invariance_err: f64,
    pub ring_residual: f64,
}

impl LemmaReport {
    pub fn max_det_err(&self) -> f64 {
        self.checks.iter().map(|c| c.rel_err).fold(self.kappa_root_err, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        [
            self.max_det_err(),
            self.reconstruction_err,
            self.refactor_err,
            self.beta_err,
            self.alpha_err,
            self.invariance_err,
            self.ring_residual,
        ]
        .iter()
        .all(|e| *e <= tol)
    }
}

fn sign_pow(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn push(checks: &mut Vec<DetCheck>, name: &str, (x, y): (f64, f64), (a, bound): (&Mat, &Mat), expected: f64) {
    let (det, perm) = det_with_bound(a, bound);
    let scale = perm.max(expected.abs()).max(f64::MIN_POSITIVE);
    checks.push(DetCheck { name: name.to_string(), x, y, det, expected, rel_err: (det - expected).abs() / scale });
}

/// Samples on a logarithmic scale from `e^{lo}` to `e`, with random sign, so
/// that both the tiny and the order-one regimes of the lifted state are hit.
fn sample(rng: &mut ChaCha8Rng, lo: f64) -> f64 {
    let mag = rng.gen_range(lo.min(-1.0)..1.0).exp();
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// `det(X - xE)`, bounded by the permanent of `|X|(|y|) + |x|E`.
fn char_poly_at(x_mat: &Mat, x_bound: &Mat, x: f64) -> (f64, f64) {
    let mut a = x_mat.clone();
    let mut b = x_bound.clone();
    for i in 0..a.len() {
        a[i][i] -= x;
        b[i][i] += x.abs();
    }
    det_with_bound(&a, &b)
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    (a - b).abs() / scale.max(f64::MIN_POSITIVE)
}

pub fn check_solution(d: &DiscreteState, samples: usize, seed: u64) -> LemmaReport {
    let lift = &d.lift;
    let (n, m) = (lift.n(), lift.m());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kappa = d.kappa_sign * d.ln_kappa.exp();
    let (alpha, beta) = (lift.ln_alpha.exp(), lift.ln_beta.exp());
    let small = lift.ln_beta.min(d.ln_kappa) - 1.0;
    let reductions: Vec<PeriodicReduction> = (0..n).map(|r| periodic_reduction(&lift.ln_v, r)).collect();
    let evolved = d.evolved_v();

    let mut checks = Vec::new();
    let mut reconstruction_err: f64 = 0.0;
    let mut refactor_err: f64 = 0.0;
    let mut invariance_err: f64 = 0.0;
    for _ in 0..samples {
        let (x, y) = (sample(&mut rng, small), sample(&mut rng, small));
        let sm = sign_pow(m);
        for row in 0..n {
            let (lv, li) = (&lift.ln_v[row], &d.ln_i[row]);
            let l = (&bidiagonal(lv, y), &bidiagonal(lv, y.abs()));
            push(&mut checks, &format!("L_{}", row + 1), (x, y), l, beta - sm * y);
            let r = (&bidiagonal(li, y), &bidiagonal(li, y.abs()));
            push(&mut checks, &format!("R_{}", row + 1), (x, y), r, alpha - sm * y);
            let red = &reductions[row];
            let h = (&red.with_diagonal(lv, x), &red.with_diagonal_bound(lv, x));
            push(&mut checks, &format!("H_{}", row + 1), (x, y), h, sign_pow(n + 1) * x);
            let mm = (&red.with_diagonal(li, x), &red.with_diagonal_bound(li, x));
            push(&mut checks, &format!("M_{}", row + 1), (x, y), mm, sign_pow(n + 1) * (x - kappa));

            let direct = monodromy_numeric(&lift.ln_v, row, y);
            let rebuilt = red.rebuild(y);
            let bound = monodromy_numeric(&lift.ln_v, row, y.abs());
            for ((a, b), c) in direct.iter().flatten().zip(rebuilt.iter().flatten()).zip(bound.iter().flatten()) {
                reconstruction_err = reconstruction_err.max(rel(*a, *b, *c));
            }
        }
        let zero = vec![f64::NEG_INFINITY; m];
        push(&mut checks, "S", (x, y), (&bidiagonal(&zero, y), &bidiagonal(&zero, y.abs())), sign_pow(m + 1) * y);
        for col in 0..m {
            let prod: f64 = (0..n).map(|r| lift.ln_v[r][col]).sum::<f64>().exp();
            let u = (&reductions[0].u_matrix(col, x), &reductions[0].u_bound(col, x));
            push(&mut checks, &format!("U_{}", col + 1), (x, y), u, sign_pow(n + 1) * (x - prod));
        }

        let before = monodromy_numeric(&lift.ln_v, 0, y);
        let after = monodromy_numeric(&evolved, 0, y);
        let (before_b, after_b) = (monodromy_numeric(&lift.ln_v, 0, y.abs()), monodromy_numeric(&evolved, 0, y.abs()));
        let (r, r_b) = (bidiagonal(&d.ln_i[0], y), bidiagonal(&d.ln_i[0], y.abs()));
        let (xr, rx) = (mat_mul(&after, &r), mat_mul(&r, &before));
        let (xr_s, rx_s) = (mat_mul(&after_b, &r_b), mat_mul(&r_b, &before_b));
        for i in 0..m {
            for j in 0..m {
                refactor_err = refactor_err.max(rel(xr[i][j], rx[i][j], xr_s[i][j] + rx_s[i][j]));
            }
        }
        let (p0, s0) = char_poly_at(&before, &before_b, x);
        let (p1, s1) = char_poly_at(&after, &after_b, x);
        invariance_err = invariance_err.max(rel(p0, p1, s0.max(s1)));
    }

    let mut kappa_root_err: f64 = 0.0;
    for row in 0..n {
        let red = &reductions[row];
        let (det, perm) =
            det_with_bound(&red.with_diagonal(&d.ln_i[row], kappa), &red.with_diagonal_bound(&d.ln_i[row], kappa));
        kappa_root_err = kappa_root_err.max(rel(det, 0.0, perm));
    }
    let beta_err = evolved.iter().map(|r| (r.iter().sum::<f64>() - lift.ln_beta).abs()).fold(0.0, f64::max);
    let alpha_err = d.ln_i.iter().map(|r| (r.iter().sum::<f64>() - lift.ln_alpha).abs()).fold(0.0, f64::max);

    LemmaReport {
        eps: lift.eps,
        kappa,
        checks,
        kappa_root_err,
        reconstruction_err,
        refactor_err,
        beta_err,
        alpha_err,
        invariance_err,
        ring_residual: d.ring_residual,
    }
}

/// Lifts `s` at `eps`, solves, and evaluates every identity at `samples` random points.
pub fn det_identities_check(s: &BbsState, eps: f64, k1: f64, samples: usize, seed: u64) -> Result<LemmaReport> {
    let d = discrete_solve(&lift_state(s, eps, k1)?)?;
    Ok(check_solution(&d, samples, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn det_s_at_two() {
        let s = bidiagonal(&[f64::NEG_INFINITY; 3], 2.0);
        assert_eq!(det_with_scale(&s).0, 2.0);
    }

    #[test]
    fn det_l_example_i() {
        let s = BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1).unwrap();
        let lift = lift_state(&s, 0.5, 2.0).unwrap();
        let (det, _) = det_with_scale(&bidiagonal(&lift.ln_v[0], 1.0));
        assert!((det - (lift.ln_beta.exp() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn z_table_for_short_rings_is_banded() {
        let s = BbsState::uniform(2, 3, rat(1), rat(1)).unwrap();
        let lift = lift_state(&s, 1.0, 1.0).unwrap();
        let red = periodic_reduction(&lift.ln_v, 0);
        let v = (-1.0f64).exp();
        for row in &red.z {
            assert!((row[0] - v * v).abs() < 1e-15 && (row[1] - 2.0 * v).abs() < 1e-15);
        }
    }

    #[test]
    fn example_ii_identities() {
        let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1).unwrap();
        let report = det_identities_check(&s, 0.05, 1.0, 20, 11).unwrap();
        assert!(report.passed(1e-9), "{report:#?}");
    }

    #[test]
    fn example_i_identities() {
        let s = BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1).unwrap();
        let report = det_identities_check(&s, 0.05, 2.0, 20, 3).unwrap();
        assert!(report.passed(1e-9), "{report:#?}");
    }
}
