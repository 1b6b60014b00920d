use permrel_core::fractions::{phi, psi_on_generators, GroupElement};
use permrel_core::rewrite::{is_admissible_tail, CyclicMonoid};
use permrel_core::series::FactorAutomaton;
use permrel_core::{ElementBig, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(n: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..=max_len).prop_map(Word::from)
}

fn rank_and_words() -> impl Strategy<Value = (usize, Word, Word)> {
    (3u8..=5).prop_flat_map(|n| (Just(n as usize), word(n, 10), word(n, 10)))
}

proptest! {
    #[test]
    fn normal_form_is_idempotent_and_minimal((n, u, _v) in rank_and_words()) {
        let m = CyclicMonoid::new(n).unwrap();
        let nf = m.normal_form(&u);
        prop_assert_eq!(m.normal_form(&nf), nf.clone());
        prop_assert!(nf.cmp_length_lex(&u).is_le());
        prop_assert_eq!(nf.multidegree(n).iter().sum::<usize>(), u.len());
    }

    #[test]
    fn normal_form_ignores_rewrite_order((n, u, _v) in rank_and_words(), seed in any::<u64>()) {
        let m = CyclicMonoid::new(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(m.rules().reduce_randomly(&u, &mut rng).0, m.normal_form(&u));
    }

    #[test]
    fn decomposition_reassembles((n, u, _v) in rank_and_words()) {
        let m = CyclicMonoid::new(n).unwrap();
        let nf = m.normal_form(&u);
        let d = m.decompose(&nf).unwrap();
        prop_assert!(d.satisfies_side_constraint());
        prop_assert!(is_admissible_tail(n, &d.tail));
        prop_assert_eq!(d.to_word(n), nf);
    }

    #[test]
    fn multiplication_is_associative((n, u, v) in rank_and_words(), w in word(3, 6)) {
        let m = CyclicMonoid::new(n).unwrap();
        let left = m.multiply(&m.multiply(&u, &v), &w);
        let right = m.multiply(&u, &m.multiply(&v, &w));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn phi_is_a_homomorphism((n, u, v) in rank_and_words()) {
        let lhs: GroupElement = phi(n, &u.concat(&v));
        let rhs = phi::<i64>(n, &u).mul(&phi(n, &v));
        prop_assert_eq!(lhs, rhs);
        let big: ElementBig = phi(n, &u.concat(&v));
        prop_assert_eq!(big.to_string(), phi::<i64>(n, &u.concat(&v)).to_string());
    }

    #[test]
    fn equality_matches_group_image((n, u, v) in rank_and_words()) {
        let m = CyclicMonoid::new(n).unwrap();
        prop_assert_eq!(m.equal(&u, &v), u.len() == v.len() && phi::<i64>(n, &u) == phi(n, &v));
    }

    #[test]
    fn z_is_central((n, u, _v) in rank_and_words()) {
        let m = CyclicMonoid::new(n).unwrap();
        let z = m.z();
        prop_assert!(m.equal(&z.concat(&u), &u.concat(&z)));
    }

    #[test]
    fn psi_inverts_phi((n, u, _v) in rank_and_words()) {
        let m = CyclicMonoid::new(n).unwrap();
        prop_assert!(psi_on_generators(n).unwrap().round_trips(&m, &u));
    }

    #[test]
    fn automaton_matches_direct_scan((n, u, _v) in rank_and_words()) {
        let fa = FactorAutomaton::rotations(n).unwrap();
        let direct = !permrel_core::rewrite::contains_rotation(n, u.letters());
        prop_assert_eq!(fa.avoids(&u), direct);
    }
}
