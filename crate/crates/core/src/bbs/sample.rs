use rand::Rng;

use super::BbsState;
use crate::rational::rat;

/// A random integer state with `1 ≤ N ≤ max_n`, `1 ≤ M ≤ max_m`, entries in
/// `0..=max_entry`, equal row sums `B` and a level `A` uniform in `0..=B`.
///
/// The first row is uniform; later rows are rejection-sampled onto its sum.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_m: usize, max_entry: i64) -> BbsState {
    let n = rng.gen_range(1..=max_n.max(1));
    let m = rng.gen_range(1..=max_m.max(1));
    let mut row = || (0..m).map(|_| rng.gen_range(0..=max_entry)).collect::<Vec<i64>>();
    let first = row();
    let b: i64 = first.iter().sum();
    let mut rows = vec![first];
    while rows.len() < n {
        let r = row();
        if r.iter().sum::<i64>() == b {
            rows.push(r);
        }
    }
    let a = rng.gen_range(0..=b);
    let w = rows.into_iter().map(|r| r.into_iter().map(rat).collect()).collect();
    BbsState::new(w, rat(a)).expect("rows share their sum by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let s = random_state(&mut rng, 4, 3, 4);
            assert!(s.n() <= 4 && s.m() <= 3);
            assert!(s.grid().iter().flatten().all(|v| *v >= rat(0) && *v <= rat(4)));
            assert!(s.level() <= s.b());
        }
    }
}
