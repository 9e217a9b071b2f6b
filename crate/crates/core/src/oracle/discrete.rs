//! The discrete periodic system behind the box-ball dynamics, in log space.

use super::logspace::{ln_one_minus_exp, ln_one_plus_exp, log_mul, log_normalize, lse, lse2, LogMatrix};
use crate::bbs::BbsState;
use crate::error::{Error, Result};
use crate::rational::Rat;

fn to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `V = e^{-W/ε}`, `α = k₁e^{-A/ε}`, `β = e^{-B/ε}`, all as logarithms.
#[derive(Debug, Clone, PartialEq)]
pub struct Lift {
    pub eps: f64,
    pub ln_v: Vec<Vec<f64>>,
    pub ln_alpha: f64,
    pub ln_beta: f64,
}

impl Lift {
    pub fn n(&self) -> usize {
        self.ln_v.len()
    }

    pub fn m(&self) -> usize {
        self.ln_v[0].len()
    }
}

/// `k1` is the prefactor of `α`; it must exceed 1 when `A = B` so that `α > β`.
pub fn lift_state(s: &BbsState, eps: f64, k1: f64) -> Result<Lift> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidArgument(format!("eps must lie in (0, 1], got {eps}")));
    }
    if k1.is_nan() || k1 <= 0.0 {
        return Err(Error::InvalidArgument(format!("prefactor must be positive, got {k1}")));
    }
    let ln_alpha = k1.ln() - to_f64(&s.level()) / eps;
    let ln_beta = -to_f64(&s.b()) / eps;
    if s.level() == s.b() && k1 <= 1.0 {
        return Err(Error::AequalsB);
    }
    if ln_alpha <= ln_beta {
        return Err(Error::LevelTooHigh { a: s.level(), b: s.b() });
    }
    let ln_v = s.grid().iter().map(|row| row.iter().map(|w| -to_f64(w) / eps).collect()).collect();
    Ok(Lift { eps, ln_v, ln_alpha, ln_beta })
}

/// The positive solution `I` of the time-evolution factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteState {
    pub lift: Lift,
    pub ln_i: Vec<Vec<f64>>,
    /// `κ = sign · e^{ln_kappa}`, the eigenvalue of `X_1` at `y = (-1)^M α`
    /// selected by the Perron vector.
    pub ln_kappa: f64,
    pub kappa_sign: f64,
    pub squarings: usize,
    /// Largest `|Δ ln I|` when row 1 is recomputed around the ring.
    pub ring_residual: f64,
}

/// `-P L_n⁻¹ P` at `y = (-1)^M α`: `[Σ_k (ŜV)^k] Ŝ / (1 - β/α)` with `Ŝ` the
/// cyclic down-shift carrying `1/α` on its wrap-around entry. Every entry is a
/// single monomial.
pub fn inverse_lax_positive(ln_v: &[f64], ln_alpha: f64, ln_beta: f64) -> LogMatrix {
    let m = ln_v.len();
    let ln_gap = ln_one_minus_exp(ln_beta - ln_alpha);
    let geometric = |i: usize, j: usize| {
        let k = (i + m - j) % m;
        let mut acc = 0.0;
        for l in 0..k {
            acc += ln_v[(j + l) % m];
        }
        if j + k >= m {
            acc -= ln_alpha;
        }
        acc
    };
    (0..m)
        .map(|i| {
            (0..m)
                .map(|c| {
                    let wrap = if c == m - 1 { -ln_alpha } else { 0.0 };
                    geometric(i, (c + 1) % m) + wrap - ln_gap
                })
                .collect()
        })
        .collect()
}

/// `I_{n,m} = V_{n,m}(1 + (1 - β/α)/D_m)` with
/// `D_m = Σ_{k=1}^{M} Π_{l<k} V_{n,m-l}/I_{n+1,m-l-1}`.
pub fn discrete_row_sweep(ln_i_next: &[f64], ln_v: &[f64], ln_alpha: f64, ln_beta: f64) -> Vec<f64> {
    let m = ln_v.len();
    let at = |i: isize| (((i % m as isize) + m as isize) % m as isize) as usize;
    let ln_gap = ln_one_minus_exp(ln_beta - ln_alpha);
    (0..m)
        .map(|mi| {
            let mut acc = 0.0;
            let mut terms = Vec::with_capacity(m);
            for l in 0..m as isize {
                acc += ln_v[at(mi as isize - l)] - ln_i_next[at(mi as isize - l - 1)];
                terms.push(acc);
            }
            ln_v[mi] + ln_one_plus_exp(ln_gap - lse(terms))
        })
        .collect()
}

/// Nearly degenerate Perron pairs need about `-ln(gap)/ln 2` squarings; the
/// log domain keeps gaps far below machine precision resolvable.
const MAX_SQUARINGS: usize = 4096;
const ROUGH_SQUARINGS: usize = 12;

/// `ln (tr K^{2^s})^{2^{-s}}`, which tends to `ln ρ` for a positive matrix
/// whatever the other eigenvalues do.
fn trace_root_estimate(k: &LogMatrix, squarings: usize) -> f64 {
    let mut power = k.clone();
    let mut ln_scale = log_normalize(&mut power);
    for _ in 0..squarings {
        power = log_mul(&power, &power);
        ln_scale = 2.0 * ln_scale + log_normalize(&mut power);
    }
    let trace = lse((0..power.len()).map(|i| power[i][i]));
    (ln_scale + trace) / (1u64 << squarings) as f64
}

/// Log of a dominant column of `a^(2^k)`, normalized, and the number of
/// squarings used. With `strict`, running out of squarings is an error.
fn dominant_column(a: &LogMatrix, limit: usize, strict: bool) -> Result<(Vec<f64>, usize)> {
    let m = a.len();
    let mut power = a.clone();
    log_normalize(&mut power);
    let mut squarings = 0;
    loop {
        if squarings == limit {
            if strict {
                return Err(Error::NonConvergence(limit));
            }
            break;
        }
        let mut next = log_mul(&power, &power);
        log_normalize(&mut next);
        squarings += 1;
        let settled =
            power.iter().flatten().zip(next.iter().flatten()).all(|(x, y)| (x - y).abs() <= 1e-13 * x.abs().max(1.0));
        power = next;
        if settled {
            break;
        }
    }
    let col =
        (0..m).max_by(|&x, &y| lse(power.iter().map(|r| r[x])).total_cmp(&lse(power.iter().map(|r| r[y])))).unwrap();
    Ok((power.iter().map(|r| r[col]).collect(), squarings))
}

/// Perron vector of the positive matrix `(-1)^N P X_α⁻¹ P` by repeated squaring,
/// then the remaining rows by the explicit sweep.
pub fn discrete_solve(lift: &Lift) -> Result<DiscreteState> {
    let (n, m) = (lift.n(), lift.m());
    let mut k = inverse_lax_positive(&lift.ln_v[0], lift.ln_alpha, lift.ln_beta);
    for row in &lift.ln_v[1..] {
        k = log_mul(&k, &inverse_lax_positive(row, lift.ln_alpha, lift.ln_beta));
    }
    if k.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::NonPositiveMatrix);
    }

    // Squaring alone separates eigenvalues only by modulus, so a pair near
    // ±ρ would barely converge. The shifted matrix K + ρ̂E has the same Perron
    // vector and pushes every other eigenvalue away from it.
    let ln_rho_rough = trace_root_estimate(&k, ROUGH_SQUARINGS);
    let mut shifted = k.clone();
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] = lse2(row[i], ln_rho_rough);
    }
    let (p, squarings) = dominant_column(&shifted, MAX_SQUARINGS, true)?;
    let kp: Vec<f64> = (0..m).map(|i| lse((0..m).map(|j| k[i][j] + p[j]))).collect();
    let ln_rho = kp[0] - p[0];

    let mut first = Vec::with_capacity(m);
    for i in 0..m - 1 {
        first.push(p[i + 1] - p[i]);
    }
    first.push(lift.ln_alpha + p[0] - p[m - 1]);

    let mut ln_i = vec![Vec::new(); n];
    ln_i[0] = first.clone();
    for ni in (1..n).rev() {
        let next = if ni + 1 == n { ln_i[0].clone() } else { ln_i[ni + 1].clone() };
        ln_i[ni] = discrete_row_sweep(&next, &lift.ln_v[ni], lift.ln_alpha, lift.ln_beta);
    }
    let next = if n == 1 { &ln_i[0] } else { &ln_i[1] };
    let again = discrete_row_sweep(next, &lift.ln_v[0], lift.ln_alpha, lift.ln_beta);
    let ring_residual = again.iter().zip(&first).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);

    Ok(DiscreteState {
        lift: lift.clone(),
        ln_i,
        ln_kappa: -ln_rho,
        kappa_sign: if n % 2 == 0 { 1.0 } else { -1.0 },
        squarings,
        ring_residual,
    })
}

impl DiscreteState {
    /// `V'_{n,m} = I_{n+1,m} V_{n,m} / I_{n,m}`.
    pub fn evolved_v(&self) -> Vec<Vec<f64>> {
        let n = self.ln_i.len();
        (0..n)
            .map(|ni| {
                (0..self.lift.m())
                    .map(|mi| self.ln_i[(ni + 1) % n][mi] + self.lift.ln_v[ni][mi] - self.ln_i[ni][mi])
                    .collect()
            })
            .collect()
    }

    /// `-ε ln I`.
    pub fn valuations(&self) -> Vec<Vec<f64>> {
        self.ln_i.iter().map(|r| r.iter().map(|x| -self.lift.eps * x).collect()).collect()
    }
}
