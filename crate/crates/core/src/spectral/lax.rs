//! Lax matrices and the characteristic polynomial `det(L_N ⋯ L_1 - xE)`.

use std::collections::{BTreeMap, HashMap};

use super::FormalPoly;
use crate::bbs::BbsState;
use crate::error::{Error, Result};
use crate::rational::common_denominator;

/// The operations the Lax product and the determinant need.
pub trait LaxEntry: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn x() -> Self;
    fn y() -> Self;
    fn q_pow(k: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl LaxEntry for FormalPoly {
    fn zero() -> Self {
        FormalPoly::zero()
    }
    fn one() -> Self {
        FormalPoly::one()
    }
    fn x() -> Self {
        FormalPoly::x()
    }
    fn y() -> Self {
        FormalPoly::y()
    }
    fn q_pow(k: i64) -> Self {
        FormalPoly::q_pow(k)
    }
    fn add(&self, other: &Self) -> Self {
        FormalPoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FormalPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        FormalPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        FormalPoly::is_zero(self)
    }
}

/// Sign-blind shadow of [`FormalPoly`]: for each `(deg_x, deg_y)` the least
/// `q`-degree any expansion term reaches. Sums take minima, so cancellations
/// are invisible and the result bounds the true valuation from below.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bidegree(pub BTreeMap<(u32, u32), i64>);

impl Bidegree {
    fn single(dx: u32, dy: u32, dq: i64) -> Self {
        Self(BTreeMap::from([((dx, dy), dq)]))
    }
}

impl LaxEntry for Bidegree {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::single(0, 0, 0)
    }
    fn x() -> Self {
        Self::single(1, 0, 0)
    }
    fn y() -> Self {
        Self::single(0, 1, 0)
    }
    fn q_pow(k: i64) -> Self {
        Self::single(0, 0, k)
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (&k, &v) in &other.0 {
            out.entry(k).and_modify(|e| *e = (*e).min(v)).or_insert(v);
        }
        Self(out)
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<(u32, u32), i64> = BTreeMap::new();
        for (&(a, b), &u) in &self.0 {
            for (&(c, d), &v) in &other.0 {
                let e = out.entry((a + c, b + d)).or_insert(u + v);
                *e = (*e).min(u + v);
            }
        }
        Self(out)
    }
    fn neg(&self) -> Self {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

/// Integer exponents `W·scale` together with the scale, the least common
/// denominator of all entries.
pub fn scaled_exponents(s: &BbsState) -> Result<(Vec<Vec<i64>>, i64)> {
    let scale = common_denominator(s.grid().iter().flatten());
    let exps = s
        .grid()
        .iter()
        .map(|row| {
            row.iter()
                .map(|w| {
                    let v = w * scale;
                    if v.is_integer() {
                        Ok(*v.numer())
                    } else {
                        Err(Error::NonIntegerState)
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((exps, scale))
}

/// `L_n = diag(q^{W[n][1]}, …, q^{W[n][M]}) + S`, with `S` the superdiagonal of
/// ones plus `y` in the bottom-left corner. `exps` are already scaled.
pub fn lax_matrix<T: LaxEntry>(exps: &[i64]) -> Matrix<T> {
    let m = exps.len();
    let mut l = vec![vec![T::zero(); m]; m];
    for (i, &e) in exps.iter().enumerate() {
        l[i][i] = T::q_pow(e);
    }
    for i in 0..m - 1 {
        l[i][i + 1] = T::one();
    }
    l[m - 1][0] = l[m - 1][0].add(&T::y());
    l
}

/// The Lax matrices `L_1, …, L_N` over the formal parameter.
pub fn build_lax(s: &BbsState) -> Result<Vec<Matrix<FormalPoly>>> {
    let (exps, _) = scaled_exponents(s)?;
    Ok(exps.iter().map(|row| lax_matrix(row)).collect())
}

pub fn mat_mul<T: LaxEntry>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let m = a.len();
    let mut out = vec![vec![T::zero(); m]; m];
    for (i, row) in out.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            for j in 0..m {
                if a[i][j].is_zero() || b[j][k].is_zero() {
                    continue;
                }
                *cell = cell.add(&a[i][j].mul(&b[j][k]));
            }
        }
    }
    out
}

/// `X_1 = L_N ⋯ L_2 L_1`.
pub fn monodromy<T: LaxEntry>(exps: &[Vec<i64>]) -> Matrix<T> {
    let mut x = lax_matrix::<T>(&exps[0]);
    for row in &exps[1..] {
        x = mat_mul(&lax_matrix(row), &x);
    }
    x
}

/// Laplace expansion along rows, memoized on the set of used columns.
pub fn determinant<T: LaxEntry>(a: &Matrix<T>) -> T {
    fn go<T: LaxEntry>(a: &Matrix<T>, used: usize, memo: &mut HashMap<usize, T>) -> T {
        let m = a.len();
        let row = used.count_ones() as usize;
        if row == m {
            return T::one();
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = T::zero();
        let mut free_before = 0;
        for c in 0..m {
            if used & (1 << c) != 0 {
                continue;
            }
            if !a[row][c].is_zero() {
                let minor = go(a, used | (1 << c), memo);
                let term = a[row][c].mul(&minor);
                acc = acc.add(&if free_before % 2 == 0 { term } else { term.neg() });
            }
            free_before += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(a, 0, &mut HashMap::new())
}

/// `det(X - xE)` in the given entry type, from scaled exponents.
pub fn char_poly_of<T: LaxEntry>(exps: &[Vec<i64>]) -> T {
    let mut x = monodromy::<T>(exps);
    for (i, row) in x.iter_mut().enumerate() {
        row[i] = row[i].add(&T::x().neg());
    }
    determinant(&x)
}

/// `Φ(x, y) = det(L_N ⋯ L_1 - xE)` with `q`-exponents `W·scale`.
pub fn char_poly_exact(s: &BbsState) -> Result<FormalPoly> {
    let (exps, _) = scaled_exponents(s)?;
    Ok(char_poly_of(&exps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn example_i() -> BbsState {
        BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1).unwrap()
    }

    #[test]
    fn lax_shapes() {
        let l = build_lax(&example_i()).unwrap();
        assert_eq!(l[0][2][2], FormalPoly::q_pow(1));
        assert_eq!(l[0][0][0], FormalPoly::one());
        assert_eq!(l[0][0][1], FormalPoly::one());
        assert_eq!(l[0][2][0], FormalPoly::y());
        assert!(l[0][1][0].is_zero());
        let ii = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1).unwrap();
        let l4 = &build_lax(&ii).unwrap()[3];
        assert_eq!(l4[0][0], FormalPoly::q_pow(2));
        assert_eq!(l4[1][1], FormalPoly::one());
    }

    #[test]
    fn one_by_one() {
        let s = BbsState::new(vec![vec![rat(4)]], rat(1)).unwrap();
        let phi = char_poly_exact(&s).unwrap();
        let want = FormalPoly::q_pow(4).add(&FormalPoly::y()).sub(&FormalPoly::x());
        assert_eq!(phi, want);
    }

    #[test]
    fn example_i_char_poly() {
        let phi = char_poly_exact(&example_i()).unwrap();
        let (x, y, q) = (FormalPoly::x(), FormalPoly::y(), FormalPoly::q_pow(1));
        let yq = y.add(&q);
        let mut want = x.mul(&x).mul(&x).neg();
        want = want.add(&x.mul(&x).mul(&FormalPoly::term(3, 0, 0, 0)).mul(&yq));
        want = want.add(&yq.mul(&yq).mul(&yq));
        let linear =
            FormalPoly::term(3, 0, 2, 0).add(&FormalPoly::term(-21, 0, 1, 1)).add(&FormalPoly::term(3, 0, 0, 2));
        want = want.sub(&x.mul(&linear));
        assert_eq!(phi, want, "got {phi}");
    }

    #[test]
    fn rational_entries_scale() {
        let s = BbsState::new(vec![vec![ratio(1, 2), ratio(3, 2)]], rat(1)).unwrap();
        let (exps, scale) = scaled_exponents(&s).unwrap();
        assert_eq!(scale, 2);
        assert_eq!(exps, vec![vec![1, 3]]);
    }

    #[test]
    fn bidegree_bounds_exact() {
        let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1).unwrap();
        let (exps, _) = scaled_exponents(&s).unwrap();
        let exact: FormalPoly = char_poly_of(&exps);
        let shadow: Bidegree = char_poly_of(&exps);
        for ((i, j, k), _) in exact.terms() {
            assert!(shadow.0[&(i, j)] <= k);
        }
    }
}
