use kazlab_core::localfield::{ClosePair, Field, FieldElement, ResidueElement, Valuation};
use kazlab_core::matgrp::{Family, GroupSpec};
use kazlab_core::random::{random_integral, random_k, random_windowed};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<Field> {
    vec![
        Field::mixed(2, 1).unwrap(),
        Field::mixed(3, 2).unwrap(),
        Field::mixed(2, 5).unwrap(),
        Field::equal(2, 1).unwrap(),
        Field::equal(3, 1).unwrap(),
        Field::equal(2, 2).unwrap(),
    ]
}

fn scaled<R: rand::Rng>(field: &Field, rng: &mut R) -> FieldElement {
    let k = rng.gen_range(-3..=3);
    random_integral(field, rng).mul(&field.uniformizer_pow(k))
}

fn v(x: &FieldElement) -> Option<i64> {
    x.valuation().finite()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn valuation_laws(seed in any::<u64>(), which in 0usize..6) {
        let field = &fields()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = scaled(field, &mut rng);
        let y = scaled(field, &mut rng);
        match (v(&x), v(&y)) {
            (Some(a), Some(b)) => {
                prop_assert_eq!(v(&x.mul(&y)), Some(a + b));
                let s = x.add(&y);
                match v(&s) {
                    Some(c) => {
                        prop_assert!(c >= a.min(b));
                        if a != b {
                            prop_assert_eq!(c, a.min(b));
                        }
                    }
                    None => prop_assert_eq!(a, b),
                }
                prop_assert_eq!(x.div(&y).unwrap().mul(&y), x.clone());
            }
            _ => prop_assert!(x.is_zero() || y.is_zero()),
        }
        prop_assert_eq!(field.zero().valuation(), Valuation::Infinity);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduce_lift_round_trip(seed in any::<u64>(), which in 0usize..6, n in 0u32..6) {
        let field = &fields()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_integral(field, &mut rng);
        let r = x.reduce(n).unwrap();
        prop_assert_eq!(r.lift().reduce(n).unwrap(), r.clone());
        let y = random_integral(field, &mut rng);
        let s = y.reduce(n).unwrap();
        prop_assert_eq!(x.mul(&y).reduce(n).unwrap(), r.mul(&s));
        prop_assert_eq!(x.add(&y).reduce(n).unwrap(), r.add(&s));
    }

    #[test]
    fn close_pair_is_a_ring_map(seed in any::<u64>(), n in 1u32..=5) {
        let pair = ClosePair::new(Field::mixed(2, 5).unwrap(), Field::equal(2, 1).unwrap(), n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_integral(pair.source(), &mut rng).reduce(n).unwrap();
        let b = random_integral(pair.source(), &mut rng).reduce(n).unwrap();
        let lam = |r: &ResidueElement| pair.apply(r).unwrap();
        prop_assert_eq!(lam(&a.add(&b)), lam(&a).add(&lam(&b)));
        prop_assert_eq!(lam(&a.mul(&b)), lam(&a).mul(&lam(&b)));
        prop_assert_eq!(pair.inverse().apply(&lam(&a)).unwrap(), a);
    }

    #[test]
    fn group_reduction_is_multiplicative(seed in any::<u64>(), which in 0usize..6, sl in any::<bool>(), n in 1u32..4) {
        let family = if sl { Family::SL } else { Family::GL };
        let spec = GroupSpec::new(family, 2, fields()[which].clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_k(&spec, &mut rng);
        let h = random_k(&spec, &mut rng);
        let rg = spec.reduce(&g, n).unwrap();
        let rh = spec.reduce(&h, n).unwrap();
        prop_assert_eq!(spec.reduce(&g.mul(&h), n).unwrap(), rg.mul(&rh));
        prop_assert!(spec.residue_in_group(&rg));
        prop_assert_eq!(spec.reduce(&spec.lift(&rg).unwrap(), n).unwrap(), rg);
    }

    #[test]
    fn cartan_reconstructs(seed in any::<u64>(), which in 0usize..6, sl in any::<bool>()) {
        let family = if sl { Family::SL } else { Family::GL };
        let spec = GroupSpec::new(family, 3, fields()[which].clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, tau) = random_windowed(&spec, 2, &mut rng);
        let c = spec.cartan(&g).unwrap();
        prop_assert_eq!(&c.tau, &tau);
        prop_assert!(spec.in_k(&c.a) && spec.in_k(&c.b));
        prop_assert_eq!(c.product(&spec), g);
    }
}
