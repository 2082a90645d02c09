use descent_core::descent::{
    decompose_double, decompose_single, is_invariant, proj_p, proj_q, DescentPair,
};
use descent_core::exterior::{exterior_derivative, lie_derivative, FrameVector};
use descent_core::random;
use proptest::prelude::*;

proptest! {
    #[test]
    fn single_split_recomposes(seed in any::<u64>(), m in 2usize..6, axis in 0usize..6) {
        let pair = DescentPair::coordinate(m, axis % m);
        let mut rng = random::rng(seed);
        let w = random::mixed_form(&mut rng, m, 2);
        let d = decompose_single(&pair, &w).unwrap();
        prop_assert_eq!(d.recompose(), w.clone());
        // neither part carries the descent direction
        prop_assert!(!d.scalar_part.has_factor(axis % m));
        prop_assert!(!d.vector_part.has_factor(axis % m));
        prop_assert_eq!(&proj_p(&pair, &w).unwrap() + &proj_q(&pair, &w).unwrap(), w);
    }

    #[test]
    fn double_split_recomposes(seed in any::<u64>(), m in 2usize..6, i in 0usize..6, j in 1usize..6) {
        let a = i % m;
        let b = (a + 1 + j % (m - 1)) % m;
        let mut rng = random::rng(seed);
        let w = random::mixed_form(&mut rng, m, 2);
        let d = decompose_double(&DescentPair::coordinate(m, a), &DescentPair::coordinate(m, b), &w).unwrap();
        prop_assert_eq!(d.recompose(), w);
    }

    #[test]
    fn projectors_commute_with_lie_and_d(seed in any::<u64>(), m in 2usize..6, axis in 0usize..6) {
        let pair = DescentPair::coordinate(m, axis % m);
        let mut rng = random::rng(seed);
        let w = random::mixed_form(&mut rng, m, 2);
        let z = random::constant_vector(&mut rng, m);
        prop_assert_eq!(
            proj_p(&pair, &lie_derivative(&z, &w)).unwrap(),
            lie_derivative(&z, &proj_p(&pair, &w).unwrap())
        );
        // d commutes with Q for invariant forms
        let invariant = random::homogeneous_form_in(&mut rng, m, 1, &[(axis + 1) % m], 2);
        prop_assert!(is_invariant(&FrameVector::axis(m, axis % m), &invariant));
        prop_assert_eq!(
            proj_q(&pair, &exterior_derivative(&invariant)).unwrap(),
            exterior_derivative(&proj_q(&pair, &invariant).unwrap())
        );
    }
}
