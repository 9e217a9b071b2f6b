//! Period matrix, translation vectors and the order of `T` in the Jacobian.

use tropbbs::bbs::BbsState;
use tropbbs::jacobian::{fixture, JacobianData};
use tropbbs::rational::{fmt_rat, Rat};

fn show(v: &[Rat]) -> String {
    v.iter().map(fmt_rat).collect::<Vec<_>>().join(" ")
}

fn main() -> tropbbs::Result<()> {
    let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1)?;
    let j = JacobianData::new(&s)?;
    let fixed = fixture::example_ii_basis(&j.curve.graph)?;
    let j = JacobianData::with_period(j.curve, fixed, s.d() as u64)?;
    for row in &j.period.b {
        println!("B  | {}", show(row));
    }
    println!("T  = {}\nN  = {}", show(&j.vectors.t), show(&j.vectors.n));
    for (m, v) in j.vectors.m.iter().enumerate() {
        println!("M{} = {}", m + 1, show(v));
    }
    println!("B^-1 T = {}\nF'' = {}, F' = {}", show(&j.reduced_t), j.fpp, j.fp);
    Ok(())
}
