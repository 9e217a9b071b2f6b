use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rat, parse_rat, Rat};

/// `W[n][m]` with `n ∈ 0..N`, `m ∈ 0..M` (zero-based internally, one-based in
/// text and rendering) plus the level `A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BbsState {
    w: Vec<Vec<Rat>>,
    a: Rat,
}

/// Quantities preserved by the time evolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conserved {
    pub a: Rat,
    pub b: Rat,
    /// Column sums `H_m = Σ_n W[n][m]`.
    pub h: Vec<Rat>,
}

impl BbsState {
    /// Builds a state from rows `w[n] = (W[n][1], …, W[n][M])`. Every row must
    /// have the same sum `B`.
    pub fn new(w: Vec<Vec<Rat>>, a: Rat) -> Result<Self> {
        if w.is_empty() || w[0].is_empty() {
            return Err(Error::InvalidArgument("state must have N, M ≥ 1".into()));
        }
        let m = w[0].len();
        if let Some(bad) = w.iter().position(|row| row.len() != m) {
            return Err(Error::InvalidArgument(format!("row n = {} has wrong length", bad + 1)));
        }
        let b: Rat = w[0].iter().sum();
        for (n, row) in w.iter().enumerate() {
            let s: Rat = row.iter().sum();
            if s != b {
                return Err(Error::InvariantViolation {
                    line: 0,
                    msg: format!("row sum at n = {} is {} but n = 1 has {}", n + 1, fmt_rat(&s), fmt_rat(&b)),
                });
            }
        }
        Ok(BbsState { w, a })
    }

    pub fn from_ints(w: &[&[i64]], a: i64) -> Result<Self> {
        let rows = w.iter().map(|r| r.iter().map(|&v| Rat::from_integer(v)).collect()).collect();
        Self::new(rows, Rat::from_integer(a))
    }

    /// All-equal grid.
    pub fn uniform(n: usize, m: usize, value: Rat, a: Rat) -> Result<Self> {
        Self::new(vec![vec![value; m]; n], a)
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn m(&self) -> usize {
        self.w[0].len()
    }

    pub fn level(&self) -> Rat {
        self.a
    }

    pub fn b(&self) -> Rat {
        self.w[0].iter().sum()
    }

    pub fn grid(&self) -> &[Vec<Rat>] {
        &self.w
    }

    /// Zero-based, cyclic access.
    pub fn w(&self, n: usize, m: usize) -> Rat {
        self.w[n % self.n()][m % self.m()]
    }

    pub fn d(&self) -> usize {
        num_integer::gcd(self.n(), self.m())
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.w.iter().flatten().all(|v| v.is_integer())
    }

    pub(crate) fn with_grid(&self, w: Vec<Vec<Rat>>) -> BbsState {
        BbsState { w, a: self.a }
    }

    /// Parses the text format:
    ///
    /// ```text
    /// N M
    /// A <rational>
    /// W[1][1] … W[N][1]
    /// …
    /// W[1][M] … W[N][M]
    /// ```
    ///
    /// Blank lines and `#` comments are skipped. Rows with unequal sums and
    /// `A > B` are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let perr = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };

        let (ln, header) = lines.next().ok_or_else(|| perr(1, "missing `N M` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| perr(ln, "N and M must be positive integers")))
            .collect::<Result<_>>()?;
        let [n, m] = dims[..] else { return Err(perr(ln, "expected `N M`")) };
        if n == 0 || m == 0 {
            return Err(perr(ln, "N and M must be positive"));
        }

        let (ln, level) = lines.next().ok_or_else(|| perr(ln + 1, "missing `A <rational>` line"))?;
        let a = match level.split_whitespace().collect::<Vec<_>>()[..] {
            ["A", v] => parse_rat(v).ok_or_else(|| perr(ln, "bad rational for A"))?,
            _ => return Err(perr(ln, "expected `A <rational>`")),
        };

        let mut w = vec![vec![Rat::zero(); m]; n];
        let mut row_lines = Vec::with_capacity(m);
        for mi in 0..m {
            let (ln, row) = lines.next().ok_or_else(|| perr(ln + 1 + mi, "missing grid row"))?;
            let vals: Vec<Rat> = row
                .split_whitespace()
                .map(|t| parse_rat(t).ok_or_else(|| perr(ln, &format!("bad rational `{t}`"))))
                .collect::<Result<_>>()?;
            if vals.len() != n {
                return Err(perr(ln, &format!("expected {n} entries, found {}", vals.len())));
            }
            for (ni, v) in vals.into_iter().enumerate() {
                w[ni][mi] = v;
            }
            row_lines.push(ln);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "trailing content after grid"));
        }

        let b: Rat = w[0].iter().sum();
        for (ni, row) in w.iter().enumerate() {
            let s: Rat = row.iter().sum();
            if s != b {
                return Err(Error::InvariantViolation {
                    line: row_lines[0],
                    msg: format!("column n = {} sums to {} but n = 1 sums to {}", ni + 1, fmt_rat(&s), fmt_rat(&b)),
                });
            }
        }
        if a > b {
            return Err(Error::InvariantViolation {
                line: 2,
                msg: format!("A = {} exceeds B = {}", fmt_rat(&a), fmt_rat(&b)),
            });
        }
        Ok(BbsState { w, a })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\nA {}\n", self.n(), self.m(), fmt_rat(&self.a));
        for mi in 0..self.m() {
            let row: Vec<String> = (0..self.n()).map(|ni| fmt_rat(&self.w[ni][mi])).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Renders rows `m = M … 1` as `<Q_{1,m}>|<W_{N,m} … W_{1,m}>`, with `.`
    /// for zero and `[p/q]` for anything that is not a digit.
    pub fn render(&self, q_first_row: &[Rat]) -> String {
        let lines: Vec<String> = (0..self.m())
            .rev()
            .map(|mi| {
                let mut line = render_cell(&q_first_row[mi]);
                line.push('|');
                for ni in (0..self.n()).rev() {
                    line.push_str(&render_cell(&self.w[ni][mi]));
                }
                line
            })
            .collect();
        lines.join("\n")
    }
}

fn render_cell(v: &Rat) -> String {
    if v.is_zero() {
        return ".".into();
    }
    match v.to_integer().to_u8() {
        Some(d) if v.is_integer() && d <= 9 => d.to_string(),
        _ => format!("[{}]", fmt_rat(v)),
    }
}

impl fmt::Display for BbsState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `(A, B, H)` of a state.
pub fn conserved(s: &BbsState) -> Conserved {
    let h = (0..s.m()).map(|mi| (0..s.n()).map(|ni| s.w[ni][mi]).sum()).collect();
    Conserved { a: s.a, b: s.b(), h }
}
