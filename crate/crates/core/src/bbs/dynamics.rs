use super::{solve_q, BbsState};
use crate::error::{Error, Result};

/// One time step: `W'[n][m] = Q[n+1][m] + W[n][m] - Q[n][m]`.
pub fn evolve(s: &BbsState) -> Result<BbsState> {
    let q = solve_q(s)?.grid.q;
    let n = s.n();
    let w = (0..n).map(|ni| (0..s.m()).map(|mi| q[(ni + 1) % n][mi] + s.w(ni, mi) - q[ni][mi]).collect()).collect();
    Ok(s.with_grid(w))
}

/// Relabels `n ↦ n + 1`.
pub fn shift_n(s: &BbsState) -> BbsState {
    let n = s.n();
    s.with_grid((0..n).map(|ni| s.grid()[(ni + 1) % n].clone()).collect())
}

/// Relabels `m ↦ m + 1`.
pub fn shift_m(s: &BbsState) -> BbsState {
    let w = s.grid().iter().map(|row| (0..row.len()).map(|mi| row[(mi + 1) % row.len()]).collect()).collect();
    s.with_grid(w)
}

/// States at `t = 0, 1, …, steps`.
pub fn trajectory(s: &BbsState, steps: usize) -> Result<Vec<BbsState>> {
    let mut out = Vec::with_capacity(steps + 1);
    out.push(s.clone());
    for _ in 0..steps {
        let next = evolve(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// Least `F ≤ t_max` with `evolve^F(s) = s`, comparing grids exactly.
pub fn find_period(s: &BbsState, t_max: u64) -> Result<u64> {
    if t_max == 0 {
        return Err(Error::InvalidArgument("t_max must be at least 1".into()));
    }
    let mut cur = s.clone();
    for t in 1..=t_max {
        cur = evolve(&cur)?;
        if cur.grid() == s.grid() {
            return Ok(t);
        }
    }
    Err(Error::NotFound(t_max))
}
