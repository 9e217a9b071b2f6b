//! Positive reals stored as natural logarithms.

/// `ln(e^a + e^b)`.
pub fn lse2(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln Σ e^{x_i}`; `-∞` for an empty slice.
pub fn lse(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `ln(1 - e^a)` for `a < 0`.
pub fn ln_one_minus_exp(a: f64) -> f64 {
    if a > -std::f64::consts::LN_2 {
        (-a.exp_m1()).ln()
    } else {
        (-a.exp()).ln_1p()
    }
}

/// `ln(1 + e^a)`.
pub fn ln_one_plus_exp(a: f64) -> f64 {
    if a > 0.0 {
        a + (-a).exp().ln_1p()
    } else {
        a.exp().ln_1p()
    }
}

pub type LogMatrix = Vec<Vec<f64>>;

pub fn log_mul(a: &LogMatrix, b: &LogMatrix) -> LogMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|k| lse((0..n).map(|j| a[i][j] + b[j][k]))).collect()).collect()
}

/// Subtracts the largest entry; returns the amount removed.
pub fn log_normalize(a: &mut LogMatrix) -> f64 {
    let m = a.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    for x in a.iter_mut().flatten() {
        *x -= m;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums() {
        assert!((lse2(0.0, 0.0) - 2f64.ln()).abs() < 1e-15);
        assert!((lse([-1000.0, -1000.0]) - (-1000.0 + 2f64.ln())).abs() < 1e-12);
        assert!((ln_one_minus_exp(-1e-10) - (1e-10f64).ln()).abs() < 1e-6);
        assert!((ln_one_minus_exp(-50.0)).abs() < 1e-20);
        assert!((ln_one_plus_exp(800.0) - 800.0).abs() < 1e-12);
    }
}
