use std::collections::BTreeMap;

use super::Trop;
use crate::error::{Error, Result};
use crate::rational::{fmt_rat, parse_rat, Rat};

/// Bivariate tropical polynomial `min_{(i,j)} c(i,j) + iX + jY`.
///
/// Exponents absent from the support carry coefficient `+∞`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TropPoly2 {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl TropPoly2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i64, i64), Rat)>) -> Self {
        let mut p = Self::new();
        for (k, c) in terms {
            p.insert_min(k.0, k.1, c);
        }
        p
    }

    /// Keeps the smaller coefficient if the exponent is already present.
    pub fn insert_min(&mut self, i: i64, j: i64, c: Rat) {
        self.terms
            .entry((i, j))
            .and_modify(|e| {
                if c < *e {
                    *e = c
                }
            })
            .or_insert(c);
    }

    pub fn coeff(&self, i: i64, j: i64) -> Trop {
        self.terms.get(&(i, j)).map_or(Trop::Infinity, |&c| Trop::Finite(c))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), Rat)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: Rat, y: Rat) -> Trop {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| Trop::Finite(c + x * Rat::from_integer(i) + y * Rat::from_integer(j)))
            .fold(Trop::Infinity, |a, b| a + b)
    }

    /// Exponents attaining the minimum at `(x, y)`.
    pub fn active_terms(&self, x: Rat, y: Rat) -> Vec<(i64, i64)> {
        let Trop::Finite(v) = self.eval(x, y) else { return Vec::new() };
        self.terms
            .iter()
            .filter(|(&(i, j), &c)| c + x * Rat::from_integer(i) + y * Rat::from_integer(j) == v)
            .map(|(&k, _)| k)
            .collect()
    }

    /// Substitutes `Y = a`: the coefficient of `X^i` becomes `min_j c(i,j) + j·a`.
    pub fn restrict_y(&self, a: Rat) -> TropPoly1 {
        let mut out = TropPoly1::default();
        for (&(i, j), &c) in &self.terms {
            out.insert_min(i, c + Rat::from_integer(j) * a);
        }
        out
    }

    /// Canonical text form: one `i j c` line per term, sorted by `(i, j)`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (&(i, j), c) in &self.terms {
            s.push_str(&format!("{i} {j} {}\n", fmt_rat(c)));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut p = Self::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse { line: idx + 1, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(parse_err("expected `i j c`"));
            }
            let i = fields[0].parse().map_err(|_| parse_err("bad exponent i"))?;
            let j = fields[1].parse().map_err(|_| parse_err("bad exponent j"))?;
            let c = parse_rat(fields[2]).ok_or_else(|| parse_err("bad coefficient"))?;
            p.insert_min(i, j, c);
        }
        Ok(p)
    }
}

/// Univariate tropical polynomial `min_i c_i + iX`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TropPoly1 {
    terms: BTreeMap<i64, Rat>,
}

impl TropPoly1 {
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = Self::default();
        for (i, c) in terms {
            p.insert_min(i, c);
        }
        p
    }

    pub fn insert_min(&mut self, i: i64, c: Rat) {
        self.terms
            .entry(i)
            .and_modify(|e| {
                if c < *e {
                    *e = c
                }
            })
            .or_insert(c);
    }

    pub fn coeff(&self, i: i64) -> Trop {
        self.terms.get(&i).map_or(Trop::Infinity, |&c| Trop::Finite(c))
    }

    pub fn eval(&self, x: Rat) -> Trop {
        self.terms.iter().map(|(&i, &c)| Trop::Finite(c + Rat::from_integer(i) * x)).fold(Trop::Infinity, |a, b| a + b)
    }

    /// Breakpoints of `X ↦ min_i c_i + iX` with their multiplicities (slope
    /// drops), in increasing order. A single term has no roots.
    pub fn roots(&self) -> Vec<(Rat, u64)> {
        // lower convex hull of (i, c_i)
        let mut hull: Vec<(i64, Rat)> = Vec::new();
        for (&i, &c) in &self.terms {
            while hull.len() >= 2 {
                let (i1, c1) = hull[hull.len() - 2];
                let (i2, c2) = hull[hull.len() - 1];
                // drop (i2,c2) unless it lies strictly below the chord from (i1,c1) to (i,c)
                let cross = (c2 - c1) * Rat::from_integer(i - i1) - (c - c1) * Rat::from_integer(i2 - i1);
                if cross >= Rat::from_integer(0) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((i, c));
        }
        let mut roots: Vec<(Rat, u64)> = hull
            .windows(2)
            .map(|w| {
                let (i1, c1) = w[0];
                let (i2, c2) = w[1];
                (-(c2 - c1) / Rat::from_integer(i2 - i1), (i2 - i1) as u64)
            })
            .collect();
        roots.sort();
        roots
    }

    pub fn max_root(&self) -> Option<Rat> {
        self.roots().last().map(|r| r.0)
    }
}
