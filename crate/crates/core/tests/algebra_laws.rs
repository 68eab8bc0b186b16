//! Property suites: algebra laws for permutations and their point actions,
//! and conjugation closure of the connection set.

use altgraph_core::group::PointPerm;
use altgraph_core::perm::{
    enumerate_even_derangements, enumerate_full_symmetric, Permutation,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_permutation(n: usize, seed: u64) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Permutation::from_images(&images).expect("shuffled identity is a bijection")
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    any::<u64>().prop_map(move |seed| random_permutation(n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_associative(
        p in arb_perm(7), q in arb_perm(7), r in arb_perm(7)
    ) {
        let left = p.compose(&q).unwrap().compose(&r).unwrap();
        let right = p.compose(&q.compose(&r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_cancels(p in arb_perm(8)) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn inverse_of_product_reverses(p in arb_perm(6), q in arb_perm(6)) {
        let lhs = p.compose(&q).unwrap().inverse();
        let rhs = q.inverse().compose(&p.inverse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sign_is_a_homomorphism(p in arb_perm(7), q in arb_perm(7)) {
        prop_assert_eq!(p.compose(&q).unwrap().sign(), p.sign() * q.sign());
    }

    #[test]
    fn conjugation_preserves_cycle_type(p in arb_perm(7), t in arb_perm(7)) {
        let conj = p.conjugate(&t).unwrap();
        prop_assert_eq!(conj.cycle_type(), p.cycle_type());
        prop_assert_eq!(conj.sign(), p.sign());
    }

    #[test]
    fn right_action_composes(p in arb_perm(7), q in arb_perm(7)) {
        let pq = p.compose(&q).unwrap();
        for point in 1..=7 {
            prop_assert_eq!(pq.image(point), q.image(p.image(point)));
        }
    }

    #[test]
    fn cycle_notation_round_trips(p in arb_perm(8)) {
        let cycles = p.cycles();
        let back = Permutation::from_cycles(8, &cycles).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn point_action_mirrors_the_permutation(p in arb_perm(7), q in arb_perm(7)) {
        let pp = PointPerm::from_permutation(&p);
        let qq = PointPerm::from_permutation(&q);
        let product = PointPerm::from_permutation(&p.compose(&q).unwrap());
        prop_assert_eq!(pp.compose(&qq).unwrap(), product);
        prop_assert_eq!(
            PointPerm::from_permutation(&p.inverse()),
            pp.inverse()
        );
    }

    #[test]
    fn connection_set_is_closed_under_conjugation(seed in any::<u64>()) {
        // Conjugating by an arbitrary element of the full symmetric group
        // permutes the even derangements among themselves.
        for n in [4usize, 5, 6] {
            let tau = random_permutation(n, seed);
            let set = enumerate_even_derangements(n).unwrap();
            let mut conjugated: Vec<Permutation> = set
                .iter()
                .map(|s| s.conjugate(&tau).unwrap())
                .collect();
            conjugated.sort_by_key(|p| p.one_based_images());
            let mut original = set.clone();
            original.sort_by_key(|p| p.one_based_images());
            prop_assert_eq!(conjugated, original);
        }
    }

    #[test]
    fn connection_set_is_closed_under_inversion(seed in any::<u64>()) {
        for n in [4usize, 5, 6] {
            let set = enumerate_even_derangements(n).unwrap();
            let tau = random_permutation(n, seed);
            // Spot-check a random member: its inverse is again a member.
            let pick = &set[(seed as usize) % set.len()];
            prop_assert!(pick.inverse().is_derangement());
            prop_assert!(pick.inverse().is_even());
            // And τ-conjugation of the inverse matches inverse of conjugate.
            prop_assert_eq!(
                pick.inverse().conjugate(&tau).unwrap(),
                pick.conjugate(&tau).unwrap().inverse()
            );
        }
    }
}

#[test]
fn full_symmetric_enumeration_is_complete_and_distinct() {
    for n in 1..=6usize {
        let all = enumerate_full_symmetric(n).unwrap();
        let expected: usize = (1..=n).product();
        assert_eq!(all.len(), expected);
        let mut images: Vec<Vec<usize>> =
            all.iter().map(|p| p.one_based_images()).collect();
        images.sort();
        images.dedup();
        assert_eq!(images.len(), expected);
    }
}
