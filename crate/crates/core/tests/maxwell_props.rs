use descent_core::exterior::exterior_derivative;
use descent_core::maxwell::{
    self, assemble_f, assemble_g_vacuum, assemble_j, excitations, fields, EMConfig, Mode,
};
use descent_core::{random, MaxwellError, Metric};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vacuum_excitations_match_fields(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = maxwell::random_config(&mut rng, &[0, 1, 2, 3], 2);
        let g = Metric::lorentzian();
        let (e, b) = fields(&assemble_f(&c));
        let (h, d) = excitations(&assemble_g_vacuum(&c, &g).unwrap());
        // H = B and D = E once 1-forms and 2-forms are matched by the spatial star
        prop_assert_eq!(e.coefficient(descent_core::BasisIndex::single(1)), c.ex.clone());
        prop_assert_eq!(h.coefficient(descent_core::BasisIndex::single(1)), c.bx.clone());
        prop_assert_eq!(d.coefficient(descent_core::BasisIndex::from_axes(&[2, 3]).unwrap()), c.ex.clone());
        prop_assert_eq!(b.coefficient(descent_core::BasisIndex::from_axes(&[2, 3]).unwrap()), c.bx.clone());
    }

    #[test]
    fn current_continuity_is_dj(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let c = maxwell::random_config(&mut rng, &[0, 1, 2, 3], 2);
        let dj = exterior_derivative(&assemble_j(&c));
        let top = descent_core::BasisIndex::from_axes(&[0, 1, 2, 3]).unwrap();
        prop_assert_eq!(dj.coefficient(top), -c.continuity());
    }

    #[test]
    fn splits_agree_with_componentwise_equations(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let g = Metric::lorentzian();
        let single = maxwell::random_config(&mut rng, &[0, 1, 2], 3);
        prop_assert!(maxwell::equivalence(&single, &g, Mode::Single).unwrap().holds());
        prop_assert!(maxwell::crosscheck_rows(&single, &g, Mode::Single).unwrap().iter().all(|r| r.agrees()));
        let double = maxwell::random_config(&mut rng, &[0, 1], 3);
        prop_assert!(maxwell::equivalence(&double, &g, Mode::Double).unwrap().holds());
        prop_assert!(maxwell::crosscheck_rows(&double, &g, Mode::Double).unwrap().iter().all(|r| r.agrees()));
    }

    #[test]
    fn z_dependence_is_reported(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let mut c = EMConfig::zero();
        c.jz = random::poly_in(&mut rng, 4, &[3], 2, 2);
        prop_assume!(c.jz.depends_on(3));
        let err = maxwell::standard_split(&c, &Metric::lorentzian(), Mode::Single).unwrap_err();
        prop_assert_eq!(err, MaxwellError::DescentViolated { component: "jz".into(), axis: "z".into() });
    }
}

#[test]
fn text_round_trip() {
    let c = EMConfig::from_pairs(&[("Ex", "t x"), ("rho", "-1/2")]).unwrap();
    assert_eq!(EMConfig::from_text(&c.to_text()).unwrap(), c);
}
