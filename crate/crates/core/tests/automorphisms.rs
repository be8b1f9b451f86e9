mod common;

use common::{aut, back, fwd, id, random_phi, rng, w};
use fbc::automorphisms::{extend_with_z, inner, twisted_power};
use fbc::random;
use fbc::words::{Alphabet, Word};
use fbc::{Error, FreeAutomorphism};
use proptest::prelude::*;

fn phi_strategy(rank: u32) -> impl Strategy<Value = FreeAutomorphism> {
    any::<u64>().prop_map(move |s| random_phi(&mut rng(s), rank))
}

fn nielsen_strategy(rank: u32) -> impl Strategy<Value = FreeAutomorphism> {
    (any::<u64>(), 1usize..=12).prop_map(move |(s, k)| random::automorphism(&mut rng(s), rank, k))
}

fn word_strategy(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    any::<u64>().prop_map(move |s| random::word(&mut rng(s), &Alphabet::new(rank), max_len))
}

#[test]
fn compose_fib_fib_by_substitution() {
    let fib = aut(&["ab", "a"]);
    let f2 = fib.compose(&fib).unwrap();
    for g in ["a", "b"] {
        assert_eq!(f2.apply(&w(g)).unwrap(), fwd(&fib, &fwd(&fib, &w(g))));
    }
    assert_eq!(f2.images(), &[w("aba"), w("ab")]);
}

#[test]
fn fib_inverse_checked_both_ways() {
    let fib = aut(&["ab", "a"]);
    assert_eq!(fib.inverse_images(), &[w("b"), w("Ba")]);
    for g in ["a", "b"] {
        assert_eq!(back(&fib, &fwd(&fib, &w(g))), w(g));
        assert_eq!(fwd(&fib, &back(&fib, &w(g))), w(g));
    }
}

#[test]
fn nielsen_inversion_recovers_known_inverses() {
    // random compositions carry their inverse by undoing the moves; the
    // inversion from images alone must agree
    let mut r = rng(11);
    for _ in 0..300 {
        let rank = 2 + (rand::Rng::random_range(&mut r, 0..3));
        let moves = rand::Rng::random_range(&mut r, 1..=12);
        let phi = random::automorphism(&mut r, rank, moves);
        let again = FreeAutomorphism::from_images(phi.alphabet(), phi.images().to_vec()).unwrap();
        assert_eq!(again.inverse_images(), phi.inverse_images());
    }
}

#[test]
fn non_surjective_images_rejected() {
    let a = Alphabet::new(3);
    for bad in [["ab", "b", "cc"], ["ab", "ba", "c"], ["abAB", "b", "c"], ["a", "b", "1"]] {
        let images = bad.iter().map(|s| w(s)).collect();
        assert!(matches!(FreeAutomorphism::from_images(a, images), Err(Error::NotAnAutomorphism(_))));
    }
}

#[test]
fn word_cap_is_reported() {
    let fib = aut(&["ab", "a"]);
    assert!(matches!(fib.power_capped(30, 10_000), Err(Error::BudgetExceeded { .. })));
    assert!(matches!(fib.apply_capped(&w("abab"), 5), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn extend_with_z_power_law() {
    let mut r = rng(5);
    for _ in 0..100 {
        let phi = random_phi(&mut r, 2);
        let u = random::word(&mut r, &phi.alphabet(), 4);
        let ext = extend_with_z(&phi, &u).unwrap();
        let mut cur = ext.clone();
        for p in 1..=4u64 {
            let up = twisted_power(&u, &phi, p).unwrap();
            assert_eq!(cur.apply(&Word::z()).unwrap(), Word::product([&up, &Word::z(), &up.inverse()]));
            cur = cur.compose(&ext).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn functoriality(phi in phi_strategy(3), psi in nielsen_strategy(3), u in word_strategy(3, 8)) {
        let both = phi.compose(&psi).unwrap();
        prop_assert_eq!(both.apply(&u).unwrap(), fwd(&psi, &fwd(&phi, &u)));
    }

    #[test]
    fn inverse_law(phi in nielsen_strategy(3), u in word_strategy(3, 8)) {
        prop_assert_eq!(phi.apply_inverse(&phi.apply(&u).unwrap()).unwrap(), u.clone());
        prop_assert_eq!(phi.inverse().apply(&phi.apply(&u).unwrap()).unwrap(), u.clone());
        prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
    }

    #[test]
    fn powers_add(phi in nielsen_strategy(2), j in -2i64..=2, k in -2i64..=2) {
        let lhs = phi.power(j).unwrap().compose(&phi.power(k).unwrap()).unwrap();
        prop_assert_eq!(lhs, phi.power(j + k).unwrap());
    }

    #[test]
    fn cocycle_recursion(phi in phi_strategy(2), u in word_strategy(2, 5), p in 1u64..=4, q in 1u64..=4) {
        let lhs = twisted_power(&u, &phi, p + q).unwrap();
        let head = phi.power(q as i64).unwrap().apply(&twisted_power(&u, &phi, p).unwrap()).unwrap();
        prop_assert_eq!(lhs, head.mul(&twisted_power(&u, &phi, q).unwrap()));
        let next = twisted_power(&u, &phi, p + 1).unwrap();
        let step = phi.power(p as i64).unwrap().apply(&u).unwrap().mul(&twisted_power(&u, &phi, p).unwrap());
        prop_assert_eq!(next, step);
    }

    #[test]
    fn commuting_automorphisms_pass_through(phi in phi_strategy(2), u in word_strategy(2, 5), j in -2i64..=2, p in 1u64..=4) {
        for psi in [phi.power(j).unwrap(), id(2)] {
            prop_assert_eq!(phi.compose(&psi).unwrap(), psi.compose(&phi).unwrap());
            let lhs = psi.apply(&twisted_power(&u, &phi, p).unwrap()).unwrap();
            prop_assert_eq!(lhs, twisted_power(&psi.apply(&u).unwrap(), &phi, p).unwrap());
        }
    }

    #[test]
    fn inner_composition(u in word_strategy(3, 4), v in word_strategy(3, 4), x in word_strategy(3, 6)) {
        let a = Alphabet::new(3);
        let lhs = inner(&u, a).unwrap().compose(&inner(&v, a).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &inner(&u.mul(&v), a).unwrap());
        prop_assert_eq!(lhs.apply(&x).unwrap(), u.mul(&v).conjugate(&x));
    }

    #[test]
    fn spec_json_round_trip(phi in nielsen_strategy(3)) {
        let text = serde_json::to_string(&phi.to_spec()).unwrap();
        let spec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(FreeAutomorphism::from_spec(&spec).unwrap(), phi);
    }
}
