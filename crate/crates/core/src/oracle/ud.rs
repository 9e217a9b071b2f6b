//! Ultradiscrete limits `-lim ε log f(ε)` estimated from finitely many `ε`.

use super::discrete::{discrete_solve, lift_state};
use crate::bbs::{solve_q, BbsState};
use crate::error::{Error, Result};
use crate::rational::Rat;

/// Least-squares line through `(ε, -ε ln f)`, read off at `ε = 0`.
pub fn ud_estimate_log(samples: &[(f64, f64)]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("at least two eps values are needed".into()));
    }
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(e, l)| (e, -e * l)).collect();
    let k = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / k, pts.iter().map(|p| p.1).sum::<f64>() / k);
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("eps values must be distinct".into()));
    }
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    Ok(my - slope * mx)
}

pub fn ud_estimate(f: impl Fn(f64) -> f64, eps: &[f64]) -> Result<f64> {
    let mut logs = Vec::with_capacity(eps.len());
    for &e in eps {
        let v = f(e);
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveSample(e));
        }
        logs.push((e, v.ln()));
    }
    ud_estimate_log(&logs)
}

/// Extrapolated valuations of the discrete solution next to the exact `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuationReport {
    pub eps: Vec<f64>,
    pub q_exact: Vec<Vec<Rat>>,
    pub q_estimate: Vec<Vec<f64>>,
    pub max_deviation: f64,
    /// Extrapolated `-ε log |κ|`; its limit is the coordinate `G`.
    pub kappa_valuation: f64,
}

/// `k1` is only used when `A = B`, where a prefactor above 1 is required.
pub fn valuation_check(s: &BbsState, eps: &[f64], k1: f64) -> Result<ValuationReport> {
    let k1 = if s.level() == s.b() { k1 } else { 1.0 };
    let q = solve_q(s)?.grid.q;
    let solved = eps.iter().map(|&e| discrete_solve(&lift_state(s, e, k1)?)).collect::<Result<Vec<_>>>()?;
    let (n, m) = (s.n(), s.m());
    let mut q_estimate = vec![vec![0.0; m]; n];
    let mut max_deviation: f64 = 0.0;
    for i in 0..n {
        for j in 0..m {
            let logs: Vec<(f64, f64)> = solved.iter().map(|d| (d.lift.eps, d.ln_i[i][j])).collect();
            let est = ud_estimate_log(&logs)?;
            let exact = *q[i][j].numer() as f64 / *q[i][j].denom() as f64;
            max_deviation = max_deviation.max((est - exact).abs());
            q_estimate[i][j] = est;
        }
    }
    let kappa_valuation = ud_estimate_log(&solved.iter().map(|d| (d.lift.eps, d.ln_kappa)).collect::<Vec<_>>())?;
    Ok(ValuationReport { eps: eps.to_vec(), q_exact: q, q_estimate, max_deviation, kappa_valuation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_exponential() {
        let g = ud_estimate(|e| (-3.0 / e).exp(), &[0.05, 0.02]).unwrap();
        assert!((g - 3.0).abs() < 1e-9);
    }

    #[test]
    fn prefactor_vanishes() {
        let g = ud_estimate(|e| 5.0 * (-2.0 / e).exp(), &[0.1, 0.05]).unwrap();
        assert!((g - 2.0).abs() < 1e-9);
        let single = -0.05 * (5.0f64 * (-2.0f64 / 0.05).exp()).ln();
        assert!((single - 2.0).abs() <= 0.05 * 5.0f64.ln() + 1e-12);
    }

    #[test]
    fn rejects_bad_samples() {
        assert_eq!(ud_estimate(|_| 0.0, &[0.1, 0.2]), Err(Error::NonPositiveSample(0.1)));
        assert!(ud_estimate(|e| e, &[0.1]).is_err());
    }

    #[test]
    fn example_ii_kappa_gives_g() {
        let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1).unwrap();
        let r = valuation_check(&s, &[0.05, 0.02], 1.0).unwrap();
        assert!((r.kappa_valuation - 2.0).abs() < 0.1, "{r:?}");
        assert!(r.max_deviation < 0.05, "{r:?}");
    }

    #[test]
    fn example_i_with_prefactor() {
        let s = BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1).unwrap();
        let r = valuation_check(&s, &[0.05, 0.02], 2.0).unwrap();
        assert!(r.max_deviation < 0.05, "{r:?}");
        assert!((r.kappa_valuation - 1.0).abs() < 0.1, "{r:?}");
    }
}
