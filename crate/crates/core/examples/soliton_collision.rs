//! Two solitons passing through each other, printed step by step.

use tropbbs::bbs::{solve_q, trajectory, BbsState};

const STATE: &str = "9 4\nA 1\n3 3 3 1 1 0 2 2 3\n0 0 0 0 0 2 0 1 0\n0 0 0 0 2 0 1 0 0\n0 0 0 2 0 1 0 0 0\n";

fn main() -> tropbbs::Result<()> {
    let s = BbsState::parse(STATE)?;
    for (t, st) in trajectory(&s, 5)?.iter().enumerate() {
        let q = solve_q(st)?;
        println!("t={t}\n{}\n", st.render(q.grid.first_row()));
    }
    Ok(())
}
