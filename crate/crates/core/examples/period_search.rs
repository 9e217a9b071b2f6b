//! Simulated fundamental cycle against the prediction from the curve.

use tropbbs::bbs::{find_period, BbsState};
use tropbbs::jacobian::JacobianData;

fn main() -> tropbbs::Result<()> {
    let states = [
        ("example I", BbsState::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]], 1)?),
        ("example II", BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1)?),
        ("4 x 2", BbsState::from_ints(&[&[2, 0], &[0, 2], &[1, 1], &[2, 0]], 1)?),
    ];
    for (name, s) in &states {
        let j = JacobianData::new(s)?;
        let f = find_period(s, 1000)?;
        println!("{name}: F = {f}, F'' = {}, d = {}, F' = {}", j.fpp, s.d(), j.fp);
    }
    Ok(())
}
