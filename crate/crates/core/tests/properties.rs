use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropbbs::bbs::{conserved, evolve, random_state, shift_n, solve_q, sweep_row, BbsState};
use tropbbs::rational::{fmt_rat, parse_rat, ratio, Rat};
use tropbbs::spectral::SpectralData;
use tropbbs::trop::{Trop, TropMatrix};

fn state(seed: u64) -> BbsState {
    random_state(&mut ChaCha8Rng::seed_from_u64(seed), 4, 4, 4)
}

fn trop() -> impl Strategy<Value = Trop> {
    prop_oneof![1 => Just(Trop::Infinity), 4 => (-5i64..10).prop_map(Trop::int)]
}

fn matrix(n: usize) -> impl Strategy<Value = TropMatrix> {
    prop::collection::vec(prop::collection::vec(trop(), n), n).prop_map(|rows| TropMatrix::from_rows(rows).unwrap())
}

fn triple() -> impl Strategy<Value = (TropMatrix, TropMatrix, TropMatrix)> {
    (1usize..=4).prop_flat_map(|n| (matrix(n), matrix(n), matrix(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative((a, b, c) in triple()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.mul(&TropMatrix::identity(a.size())).unwrap(), a);
    }

    #[test]
    fn star_is_idempotent((a, _, _) in triple()) {
        if let Ok(s) = a.kleene_star() {
            prop_assert_eq!(s.mul(&s).unwrap(), s.clone());
            for i in 0..s.size() {
                prop_assert!(s[(i, i)] <= Trop::one());
            }
        }
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..100) {
        let r: Rat = ratio(p, q);
        prop_assert_eq!(parse_rat(&fmt_rat(&r)), Some(r));
    }

    #[test]
    fn carrier_is_a_fixed_point(seed in any::<u64>()) {
        let s = state(seed);
        let q = solve_q(&s).unwrap().grid.q;
        for n in 0..s.n() {
            prop_assert_eq!(q[n].iter().sum::<Rat>(), s.level());
            prop_assert_eq!(&sweep_row(&s.grid()[n], &q[(n + 1) % s.n()]), &q[n]);
        }
    }

    #[test]
    fn evolution_conserves(seed in any::<u64>()) {
        let s = state(seed);
        let next = evolve(&s).unwrap();
        prop_assert_eq!(conserved(&s), conserved(&next));
        prop_assert_eq!(SpectralData::new(&s).unwrap().charpoly_trop, SpectralData::new(&next).unwrap().charpoly_trop);
    }

    #[test]
    fn evolution_commutes_with_shift_n(seed in any::<u64>()) {
        let s = state(seed);
        prop_assert_eq!(evolve(&shift_n(&s)).unwrap(), shift_n(&evolve(&s).unwrap()));
    }

    #[test]
    fn state_text_round_trips(seed in any::<u64>()) {
        let s = state(seed);
        prop_assert_eq!(BbsState::parse(&s.to_text()).unwrap(), s);
    }
}
