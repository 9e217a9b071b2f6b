use std::fmt;
use std::ops::{Add, Mul};

use crate::rational::{fmt_rat, parse_rat, Rat};

/// A min-plus scalar. Derived ordering puts every finite value below `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trop {
    Finite(Rat),
    Infinity,
}

impl Trop {
    pub const ZERO: Trop = Trop::Infinity;

    pub fn one() -> Trop {
        Trop::Finite(Rat::from_integer(0))
    }

    pub fn int(v: i64) -> Trop {
        Trop::Finite(Rat::from_integer(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Trop::Finite(_))
    }

    pub fn finite(&self) -> Option<Rat> {
        match self {
            Trop::Finite(r) => Some(*r),
            Trop::Infinity => None,
        }
    }

    pub fn parse(s: &str) -> Option<Trop> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Some(Trop::Infinity),
            t => parse_rat(t).map(Trop::Finite),
        }
    }
}

impl From<Rat> for Trop {
    fn from(r: Rat) -> Self {
        Trop::Finite(r)
    }
}

/// Tropical sum.
impl Add for Trop {
    type Output = Trop;
    fn add(self, rhs: Trop) -> Trop {
        self.min(rhs)
    }
}

/// Tropical product.
impl Mul for Trop {
    type Output = Trop;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Trop) -> Trop {
        match (self, rhs) {
            (Trop::Finite(a), Trop::Finite(b)) => Trop::Finite(a + b),
            _ => Trop::Infinity,
        }
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trop::Finite(r) => f.write_str(&fmt_rat(r)),
            Trop::Infinity => f.write_str("inf"),
        }
    }
}
