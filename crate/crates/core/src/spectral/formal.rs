//! Integer polynomials in `x`, `y` and the formal parameter `q`.

use std::collections::BTreeMap;
use std::fmt;

/// Exponent triple `(deg_x, deg_y, deg_q)`.
pub type Monomial = (u32, u32, i64);

/// Canonical sparse polynomial: zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalPoly {
    terms: BTreeMap<Monomial, i128>,
}

impl FormalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(1, 0, 0, 0)
    }

    pub fn term(c: i128, dx: u32, dy: u32, dq: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((dx, dy, dq), c);
        p
    }

    pub fn x() -> Self {
        Self::term(1, 1, 0, 0)
    }

    pub fn y() -> Self {
        Self::term(1, 0, 1, 0)
    }

    pub fn q_pow(k: i64) -> Self {
        Self::term(1, 0, 0, k)
    }

    pub fn add_term(&mut self, mono: Monomial, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(mono).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32, dq: i64) -> i128 {
        self.terms.get(&(dx, dy, dq)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i128)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&k, &v)| (k, -v)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), ca * cb);
            }
        }
        out
    }

    /// All terms with the given `(deg_x, deg_y)`, as `(deg_q, coefficient)`.
    pub fn q_series(&self, dx: u32, dy: u32) -> Vec<(i64, i128)> {
        self.terms().filter(|(k, _)| k.0 == dx && k.1 == dy).map(|(k, c)| (k.2, c)).collect()
    }

    /// Evaluates at numeric `x`, `y`, `q`.
    pub fn eval(&self, x: f64, y: f64, q: f64) -> f64 {
        self.terms().map(|((i, j, k), c)| c as f64 * x.powi(i as i32) * y.powi(j as i32) * q.powi(k as i32)).sum()
    }

    /// One `c i j k` line per term, sorted by `(i, j, k)`.
    pub fn to_text(&self) -> String {
        self.terms().map(|((i, j, k), c)| format!("{c} {i} {j} {k}\n")).collect()
    }
}

impl fmt::Display for FormalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j, k), c) in self.terms.iter().rev().map(|(k, c)| (*k, *c)) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.unsigned_abs();
            let mut factors = Vec::new();
            for (name, e) in [("x", i as i64), ("y", j as i64), ("q", k)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_keeps_canonical_form() {
        let p = FormalPoly::x().add(&FormalPoly::y());
        let d = p.sub(&FormalPoly::x());
        assert_eq!(d, FormalPoly::y());
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn binomial_square() {
        let p = FormalPoly::y().add(&FormalPoly::q_pow(1));
        let sq = p.mul(&p);
        assert_eq!(sq.coeff(0, 1, 1), 2);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_string(), "y^2 + 2*y*q + q^2");
    }
}
