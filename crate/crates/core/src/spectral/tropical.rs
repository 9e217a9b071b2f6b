//! Valuations of the characteristic polynomial and the Newton-polygon check.

use num_integer::Integer;

use super::lax::{char_poly_of, scaled_exponents, Bidegree};
use super::FormalPoly;
use crate::bbs::BbsState;
use crate::error::{Error, Result};
use crate::rational::{ratio, Rat};
use crate::trop::TropPoly2;

/// Exact and tropical characteristic polynomial of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    /// `Φ` with `q`-exponents multiplied by `scale`.
    pub charpoly_exact: FormalPoly,
    pub charpoly_trop: TropPoly2,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub scale: i64,
}

impl SpectralData {
    pub fn new(s: &BbsState) -> Result<Self> {
        let (exps, scale) = scaled_exponents(s)?;
        let exact: FormalPoly = char_poly_of(&exps);
        let trop = tropicalize_scaled(&exact, scale)?;
        Ok(Self { charpoly_exact: exact, charpoly_trop: trop, n: s.n(), m: s.m(), d: s.d(), scale })
    }
}

pub fn tropicalize(p: &FormalPoly) -> Result<TropPoly2> {
    tropicalize_scaled(p, 1)
}

/// `c(i, j)` is the least `q`-degree in the coefficient of `x^i y^j`, divided by
/// `scale`. Each coefficient is required to be sign-definite, which rules out
/// any cancellation of its leading term.
pub fn tropicalize_scaled(p: &FormalPoly, scale: i64) -> Result<TropPoly2> {
    let mut out = TropPoly2::new();
    let mut sign: Option<((u32, u32), bool)> = None;
    for ((i, j, k), c) in p.terms() {
        match sign {
            Some((key, pos)) if key == (i, j) => {
                if pos != (c > 0) {
                    return Err(Error::CancellationDetected { i, j });
                }
            }
            _ => sign = Some(((i, j), c > 0)),
        }
        out.insert_min(i as i64, j as i64, ratio(k, scale));
    }
    Ok(out)
}

/// Sign-blind min-plus expansion of the same determinant. Never exceeds the
/// exact valuation; equality everywhere means no leading term cancelled.
pub fn minplus_estimate(s: &BbsState) -> Result<TropPoly2> {
    let (exps, scale) = scaled_exponents(s)?;
    let shadow: Bidegree = char_poly_of(&exps);
    Ok(TropPoly2::from_terms(shadow.0.into_iter().map(|((i, j), k)| ((i as i64, j as i64), ratio(k, scale)))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonReport {
    pub ok: bool,
    /// Support points on the segment `N·a + M·b = N·M`.
    pub boundary: Vec<(i64, i64)>,
    pub violations: Vec<String>,
}

fn binomial(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// The support must sit in the triangle `a, b ≥ 0`, `N·a + M·b ≤ N·M`, and the
/// hypotenuse must carry exactly `(η^{M₁} - ζ^{N₁})^d`: the points
/// `(M - k·M₁, k·N₁)` for `k = 0..d`, each of valuation 0 with leading
/// coefficient `±C(d, k)`.
pub fn newton_check(sd: &SpectralData) -> NewtonReport {
    let (n, m, d) = (sd.n as i64, sd.m as i64, sd.d as i64);
    let (m1, n1) = (m / d, n / d);
    let mut violations = Vec::new();
    let mut boundary = Vec::new();
    for ((a, b), _) in sd.charpoly_trop.terms() {
        let level = n * a + m * b;
        if a < 0 || b < 0 || level > n * m {
            violations.push(format!("({a}, {b}) lies outside the Newton triangle"));
        } else if level == n * m {
            boundary.push((a, b));
        }
    }
    let expected: Vec<(i64, i64)> = (0..=d).rev().map(|k| (m - k * m1, k * n1)).collect();
    if boundary != expected {
        violations.push(format!("boundary support {boundary:?}, expected {expected:?}"));
    }
    for k in 0..=d {
        let (a, b) = (m - k * m1, k * n1);
        let c = sd.charpoly_trop.coeff(a, b);
        if c != crate::trop::Trop::Finite(Rat::from_integer(0)) {
            violations.push(format!("boundary point ({a}, {b}) has valuation {c}"));
            continue;
        }
        let lead = sd.charpoly_exact.coeff(a as u32, b as u32, 0);
        let want = binomial(d as u64, k as u64);
        if lead.abs() != want {
            violations.push(format!("boundary point ({a}, {b}) has coefficient {lead}, expected ±{want}"));
        }
    }
    if sd.charpoly_exact.degree_x() != Some(sd.m as u32) {
        violations.push(format!("x-degree is {:?}, expected {}", sd.charpoly_exact.degree_x(), sd.m));
    }
    if sd.charpoly_exact.degree_y() != Some(sd.n as u32) {
        violations.push(format!("y-degree is {:?}, expected {}", sd.charpoly_exact.degree_y(), sd.n));
    }
    debug_assert!(n.gcd(&m) == d);
    NewtonReport { ok: violations.is_empty(), boundary, violations }
}
