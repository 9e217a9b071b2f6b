//! The positive discrete system behind a state, and its limit as eps -> 0.

use tropbbs::bbs::BbsState;
use tropbbs::oracle::{default_prefactor, det_identities_check, valuation_check};

fn main() -> tropbbs::Result<()> {
    let s = BbsState::from_ints(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 0], &[2, 0, 0]], 1)?;
    let k1 = default_prefactor(&s);
    let v = valuation_check(&s, &[0.1, 0.05, 0.02], k1)?;
    for (exact, est) in v.q_exact.iter().zip(&v.q_estimate) {
        let exact: Vec<String> = exact.iter().map(|r| r.to_string()).collect();
        let est: Vec<String> = est.iter().map(|x| format!("{x:.4}")).collect();
        println!("Q {:<12} extrapolated {}", exact.join(" "), est.join(" "));
    }
    println!("max deviation {:.2e}, valuation of kappa {:.4}", v.max_deviation, v.kappa_valuation);
    for eps in [0.05, 0.02] {
        let rep = det_identities_check(&s, eps, k1, 10, 0)?;
        println!("eps {eps}: kappa {:.4e}, worst determinant error {:.2e}", rep.kappa, rep.max_det_err());
    }
    Ok(())
}
