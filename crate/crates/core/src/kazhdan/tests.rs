use super::*;
use crate::hecke::{CoeffRing, ProductCache};
use crate::localfield::Field;
use crate::matgrp::{Level, DEFAULT_BUDGET};
use crate::matrix::Matrix;
use crate::random::{random_k, random_km};
use alloc::vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(source: Field, target: Field, closeness: u32, family: Family, m: u32, n_work: u32, window: u32) -> TransportContext {
    let pair = ClosePair::new(source, target, closeness).unwrap();
    TransportContext::new(pair, family, 2, m, n_work, window, DEFAULT_BUDGET).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn safety_bound_examples_and_spot_checks() {
    let spec = GroupSpec::new(Family::GL, 2, Field::mixed(2, 1).unwrap()).unwrap();
    let sl = GroupSpec::new(Family::SL, 2, Field::mixed(2, 1).unwrap()).unwrap();
    assert_eq!(safety_bound(&[CartanDatum::zero(2)], 1), 1);
    let t10 = spec.tau(vec![1, 0]).unwrap();
    let t22 = sl.tau(vec![2, -2]).unwrap();
    assert_eq!(safety_bound(core::slice::from_ref(&t10), 1), 3);
    assert_eq!(safety_bound(core::slice::from_ref(&t22), 1), 5);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (s, t) in [(&spec, &t10), (&sl, &t22)] {
        let bound = safety_bound(core::slice::from_ref(t), 1);
        for _ in 0..50 {
            let g = random_k(s, &mut rng).mul(&s.n_of_tau(t)).mul(&random_k(s, &mut rng));
            let k = random_km(s, bound, &mut rng);
            let conj = g.mul(&k).mul(&g.inverse());
            assert!(s.membership(&conj, Level::Congruence(1)));
        }
    }
}

#[test]
fn identity_pair_transport_is_identity() {
    let e = Field::equal(3, 1).unwrap();
    let c = ctx(e.clone(), e, 4, Family::GL, 1, 4, 1);
    for l in c.source().window_labels(1).unwrap() {
        assert_eq!(c.transport_label(&l).unwrap(), l);
    }
}

#[test]
fn cocharacter_maps_to_cocharacter() {
    let c = ctx(Field::mixed(2, 4).unwrap(), Field::equal(2, 1).unwrap(), 4, Family::GL, 1, 4, 1);
    let (src, dst) = (c.source().spec().clone(), c.target().spec().clone());
    let tau = src.tau(vec![1, 0]).unwrap();
    let image = c.transport_element(&src.n_of_tau(&tau)).unwrap();
    assert_eq!(image, dst.n_of_tau(&tau));
    let t = dst.field().uniformizer();
    assert_eq!(image.matrix(), &Matrix::diagonal(vec![t.clone(), dst.field().one()]));

    // k·n_τ with k = 1 + π·E_12 goes to the class of k'·n'_τ, k' = 1 + t·E_12.
    let f = src.field();
    let k = src.element(Matrix::from_rows(vec![vec![f.one(), f.uniformizer()], vec![f.zero(), f.one()]])).unwrap();
    let g = dst.field();
    let k2 = dst.element(Matrix::from_rows(vec![vec![g.one(), t], vec![g.zero(), g.one()]])).unwrap();
    let lhs = c.transport_element(&k.mul(&src.n_of_tau(&tau))).unwrap();
    let rhs = k2.mul(&dst.n_of_tau(&tau));
    assert_eq!(c.target().classify(&lhs).unwrap(), c.target().classify(&rhs).unwrap());
    assert!(c.target().dc_equal(&lhs, &rhs).unwrap());
}

#[test]
fn transport_guards() {
    let pair = ClosePair::new(Field::mixed(2, 5).unwrap(), Field::equal(2, 1).unwrap(), 5).unwrap();
    assert!(matches!(
        TransportContext::new(pair.clone(), Family::SL, 2, 1, 6, 1, DEFAULT_BUDGET),
        Err(Error::PrecisionExceeded { .. })
    ));
    let c = TransportContext::new(pair, Family::SL, 2, 1, 3, 1, DEFAULT_BUDGET).unwrap();
    let tau = c.source().spec().tau(vec![2, -2]).unwrap();
    let l = c.source().tau_label(&tau);
    assert_eq!(c.transport_label(&l), Err(Error::InsufficientCloseness { needed: 5, available: 3 }));
    let r = verify_algebra_map(&c, &mut ProductCache::new(), &mut ProductCache::new());
    assert_eq!(r.unwrap_err(), Error::InsufficientCloseness { needed: 5, available: 3 });
}

#[test]
fn transport_hecke_carries_coefficients_and_inverts() {
    let c = ctx(Field::mixed(2, 5).unwrap(), Field::equal(2, 1).unwrap(), 5, Family::GL, 1, 5, 1);
    let src = c.source();
    let tau = src.spec().tau(vec![1, 0]).unwrap();
    let k = src.residue_classes()[3].clone();
    let f = HeckeElement::from_terms(
        CoeffRing::Integers,
        [(src.tau_label(&tau), q(2)), (src.residue_label(&k), q(5))],
    )
    .unwrap();
    let img = c.transport_hecke(&f).unwrap();
    let k2 = c.lambda_matrix(&k).unwrap();
    let expected = HeckeElement::from_terms(
        CoeffRing::Integers,
        [(c.target().tau_label(&tau), q(2)), (c.target().residue_label(&k2), q(5))],
    )
    .unwrap();
    assert_eq!(img, expected);
    assert_eq!(c.inverse().transport_hecke(&img).unwrap(), f);
}

#[test]
fn flagship_small_checks() {
    let c = ctx(Field::mixed(2, 5).unwrap(), Field::equal(2, 1).unwrap(), 5, Family::SL, 1, 5, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for tau in c.source().spec().dominant_taus(2) {
        assert!(c.gamma_compatible(&tau).unwrap());
    }
    for l in c.source().window_labels(1).unwrap().iter().step_by(4) {
        let labels = c.witness_labels(l, 5, &mut rng).unwrap();
        assert_eq!(labels, vec![c.transport_label(l).unwrap()]);
    }
}

#[test]
fn mixed_mixed_pair_verifies() {
    let c = ctx(Field::mixed(3, 3).unwrap(), Field::mixed(3, 2).unwrap(), 2, Family::GL, 1, 2, 0);
    let r = verify_algebra_map(&c, &mut ProductCache::new(), &mut ProductCache::new()).unwrap();
    assert!(r.passed());
    assert_eq!(r.min_sufficient_n_observed, None);
    assert_eq!(r.labels, 48);
}

#[test]
fn modules_and_lattices() {
    let c = ctx(Field::mixed(2, 5).unwrap(), Field::equal(2, 1).unwrap(), 5, Family::SL, 1, 5, 1);
    let labels = c.source().window_labels(1).unwrap();
    let triv = WindowedModule::trivial(c.source(), CoeffRing::Rationals, &labels).unwrap();
    let moved = transport_module(&triv, &c).unwrap();
    let expected = WindowedModule::trivial(
        c.target(),
        CoeffRing::Rationals,
        &labels.iter().map(|l| c.transport_label(l).unwrap()).collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(moved, expected);

    let mut cache = ProductCache::new();
    for g in &labels {
        for h in &labels {
            cache.get(c.source(), g, h).unwrap();
        }
    }
    let checked = triv.satisfies_relations(cache.products()).unwrap();
    assert!(checked > 0);

    let id = Matrix::identity_like(2, &q(1));
    let two = WindowedModule::new(CoeffRing::Rationals, 2, [(labels[0].clone(), Matrix::from_rows(vec![vec![q(1), q(2)], vec![q(0), q(3)]]))]).unwrap();
    assert!(check_lattice_stability(&two, &id, IntegralSubring::Integers).unwrap());
    let half = BigRational::new(BigInt::from(1), BigInt::from(3));
    let bad = WindowedModule::new(CoeffRing::Rationals, 2, [(labels[0].clone(), Matrix::from_rows(vec![vec![half, q(0)], vec![q(0), q(1)]]))]).unwrap();
    assert!(!check_lattice_stability(&bad, &id, IntegralSubring::LocalizedAt(3)).unwrap());
    assert!(check_lattice_stability(&bad, &id, IntegralSubring::LocalizedAt(5)).unwrap());
    let singular = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]);
    assert_eq!(check_lattice_stability(&two, &singular, IntegralSubring::Integers), Err(Error::SingularBasis));
}
