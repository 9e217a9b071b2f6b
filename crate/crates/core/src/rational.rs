//! Exact rationals used throughout the ultradiscrete side of the crate.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Rat = Ratio<i64>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n)
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Parses `p`, `-p`, `p/q` or a finite decimal such as `1.25`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().ok()?;
        let q: i64 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 15 {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: i64 = if int.is_empty() || int == "-" { 0 } else { int.parse().ok()? };
        let den = 10i64.checked_pow(frac.len() as u32)?;
        let f: i64 = frac.parse().ok()?;
        let mag = int_part.abs().checked_mul(den)?.checked_add(f)?;
        return Some(Rat::new(if neg { -mag } else { mag }, den));
    }
    s.parse::<i64>().ok().map(Rat::from_integer)
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> i64 {
    values.into_iter().fold(1i64, |acc, r| acc.lcm(r.denom()))
}

/// Solves `a x = b` exactly by Gauss-Jordan elimination. Returns `None` when `a`
/// is singular.
pub fn solve_exact(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col];
        for v in m[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in col..=n {
                    let sub = f * m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n]).collect())
}

/// Exact determinant by fraction-based elimination.
pub fn det_exact(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for r in col + 1..n {
            let f = m[r][col] / p;
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = f * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

pub fn is_integral(v: &[Rat]) -> bool {
    v.iter().all(|r| r.is_integer())
}

pub fn abs(r: Rat) -> Rat {
    r.abs()
}
