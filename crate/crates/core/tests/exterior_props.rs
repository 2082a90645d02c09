use descent_core::exterior::{
    exterior_derivative, hodge, interior, lie_derivative, wedge, Form, Metric,
};
use descent_core::random;
use proptest::prelude::*;

fn sign(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(w: &Form, s: i8) -> Form {
    if s > 0 {
        w.clone()
    } else {
        -w
    }
}

proptest! {
    #[test]
    fn wedge_is_graded_commutative(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = random::rng(seed);
        let (p, a) = random::any_homogeneous(&mut rng, m, 2);
        let (q, b) = random::any_homogeneous(&mut rng, m, 2);
        prop_assert_eq!(wedge(&a, &b).unwrap(), signed(&wedge(&b, &a).unwrap(), sign(p * q)));
    }

    #[test]
    fn wedge_is_associative(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = random::rng(seed);
        let a = random::mixed_form(&mut rng, m, 1);
        let b = random::mixed_form(&mut rng, m, 1);
        let c = random::mixed_form(&mut rng, m, 1);
        let left = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
        let right = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn d_is_a_graded_derivation(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = random::rng(seed);
        let (p, a) = random::any_homogeneous(&mut rng, m, 2);
        let b = random::mixed_form(&mut rng, m, 2);
        let lhs = exterior_derivative(&wedge(&a, &b).unwrap());
        let rhs = &wedge(&exterior_derivative(&a), &b).unwrap()
            + &signed(&wedge(&a, &exterior_derivative(&b)).unwrap(), sign(p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_is_a_graded_antiderivation(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = random::rng(seed);
        let x = random::constant_vector(&mut rng, m);
        let (p, a) = random::any_homogeneous(&mut rng, m, 1);
        let b = random::mixed_form(&mut rng, m, 1);
        let lhs = interior(&x, &wedge(&a, &b).unwrap()).unwrap();
        let rhs = &wedge(&interior(&x, &a).unwrap(), &b).unwrap()
            + &signed(&wedge(&a, &interior(&x, &b).unwrap()).unwrap(), sign(p));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(interior(&x, &interior(&x, &a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn cartan_formula_for_constant_fields(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = random::rng(seed);
        let x = random::constant_vector(&mut rng, m);
        let w = random::mixed_form(&mut rng, m, 2);
        let cartan = &exterior_derivative(&interior(&x, &w).unwrap())
            + &interior(&x, &exterior_derivative(&w)).unwrap();
        prop_assert_eq!(lie_derivative(&x, &w), cartan);
    }

    #[test]
    fn hodge_squares_to_a_sign(seed in any::<u64>(), m in 2usize..6, mask in any::<u32>()) {
        let g = Metric::from_negative_mask(m, mask % (1 << m)).unwrap();
        let mut rng = random::rng(seed);
        let (p, w) = random::any_homogeneous(&mut rng, m, 2);
        let twice = hodge(&hodge(&w, &g), &g);
        prop_assert_eq!(twice, signed(&w, sign(p * (m - p) + g.negative_index())));
    }

    #[test]
    fn render_parse_round_trip(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = random::rng(seed);
        let w = random::mixed_form(&mut rng, m, 2);
        let names = descent_core::coeff::coordinate_names(m);
        prop_assert_eq!(Form::parse(&w.render(&names), m).unwrap(), w);
    }
}
