use super::*;
use crate::localfield::Field;
use crate::matgrp::DEFAULT_BUDGET;
use crate::random::{random_k, random_km, random_windowed};
use rand::Rng;
use alloc::collections::BTreeSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn alg(family: Family, n: usize, field: Field, m: u32) -> HeckeAlgebra {
    HeckeAlgebra::new(GroupSpec::new(family, n, field).unwrap(), m, DEFAULT_BUDGET).unwrap()
}

fn int_matrix(spec: &GroupSpec, rows: &[&[i64]]) -> GroupElement {
    let f = spec.field();
    spec.element(Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect()))
        .unwrap()
}

fn tau(spec: &GroupSpec, a: &[i64]) -> CartanDatum {
    spec.tau(a.to_vec()).unwrap()
}

/// Subgroups of `(Z/4)^2`, as bitmasks over its 16 elements.
fn subgroups_z4_squared() -> BTreeSet<u16> {
    let elem = |a: u8, b: u8| (a % 4) * 4 + (b % 4);
    let mut out = BTreeSet::new();
    for g1 in 0..16u8 {
        for g2 in 0..16u8 {
            let mut mask = 0u16;
            for i in 0..4u8 {
                for j in 0..4u8 {
                    let (a, b) = ((i * (g1 / 4) + j * (g2 / 4)) % 4, (i * (g1 % 4) + j * (g2 % 4)) % 4);
                    mask |= 1 << elem(a, b);
                }
            }
            out.insert(mask);
        }
    }
    out
}

/// Spherical oracle by lattice chains: the coefficient of `t_x` in
/// `t_(1,0) * t_(1,0)` counts lattices `Z_2^2 ⊃ L ⊃ x Z_2^2` with both steps of
/// index 2.
#[test]
fn spherical_gl2_square_of_hecke_operator() {
    let subgroups = subgroups_z4_squared();
    let size = |m: u16| m.count_ones();
    let chains = |m: u16| subgroups.iter().filter(|&&l| size(l) == 8 && l & m == m).count();
    // x = diag(4, 1): image {(0, b)}; x = diag(2, 2): image 2·(Z/4)^2.
    let diag41: u16 = (0..4).map(|b| 1u16 << b).sum();
    let diag22: u16 = [0u8, 2, 8, 10].iter().map(|&e| 1u16 << e).sum();
    assert_eq!((chains(diag41), chains(diag22)), (1, 3));

    let h = alg(Family::GL, 2, Field::mixed(2, 1).unwrap(), 0);
    let spec = h.spec().clone();
    let t10 = h.tau_label(&tau(&spec, &[1, 0]));
    let conv = h.structure_constants(&t10, &t10).unwrap();
    let expected: BTreeMap<DoubleCosetLabel, u64> =
        [(h.tau_label(&tau(&spec, &[2, 0])), 1), (h.tau_label(&tau(&spec, &[1, 1])), 3)].into_iter().collect();
    assert_eq!(conv.terms, expected);
    assert_eq!(conv.deg_g, 3);
    assert_eq!(h.degree(&h.tau_label(&tau(&spec, &[2, 0]))).unwrap(), 6);
    assert_eq!(h.degree(&h.tau_label(&tau(&spec, &[1, 1]))).unwrap(), 1);
    assert!(conv.conserves_degree());
    assert!(conv.counts_consistent());
    let g = int_matrix(&spec, &[&[2, 0], &[0, 1]]);
    assert_eq!(h.left_cosets(&g).unwrap().len(), 3);
}

#[test]
fn lemma_product_of_cocharacters_gl2() {
    for field in [Field::mixed(2, 1).unwrap(), Field::equal(3, 1).unwrap()] {
        let h = alg(Family::GL, 2, field, 1);
        let spec = h.spec().clone();
        let a = h.tau_label(&tau(&spec, &[1, 0]));
        let b = h.tau_label(&tau(&spec, &[1, 1]));
        let conv = h.structure_constants(&a, &b).unwrap();
        let expected: BTreeMap<_, _> = [(h.tau_label(&tau(&spec, &[2, 1])), 1)].into_iter().collect();
        assert_eq!(conv.terms, expected);
        assert!(conv.conserves_degree());
    }
}

#[test]
fn sl2_orbit_table_flagship_level() {
    let h = alg(Family::SL, 2, Field::mixed(2, 1).unwrap(), 1);
    let spec = h.spec().clone();
    assert_eq!(h.residue_classes().len(), 6);
    for (t, gamma, orbits) in [(&[1, -1][..], 4, 9), (&[2, -2][..], 4, 9), (&[0, 0][..], 6, 6)] {
        let table = h.orbit_table(&tau(&spec, t)).unwrap();
        assert_eq!(table.gamma.len(), gamma);
        assert_eq!(table.reps.len(), orbits);
        assert_eq!(table.gamma.len() * table.reps.len(), 36);
    }
    // Γ_τ matches its definition through dc_equal.
    let t = tau(&spec, &[1, -1]);
    let n = spec.n_of_tau(&t);
    let classes = h.residue_classes().to_vec();
    let mut brute = Vec::new();
    for x in &classes {
        for y in &classes {
            let g = spec.lift(x).unwrap().mul(&n).mul(&spec.lift(y).unwrap().inverse());
            if h.dc_equal(&g, &n).unwrap() {
                brute.push((x.clone(), y.clone()));
            }
        }
    }
    brute.sort();
    assert_eq!(brute, h.stabilizer(&t).pairs().to_vec());
}

#[test]
fn gamma_is_a_subgroup_and_contains_diagonal_units() {
    let h = alg(Family::GL, 2, Field::mixed(3, 1).unwrap(), 1);
    let spec = h.spec().clone();
    let t = tau(&spec, &[1, 0]);
    let table = h.orbit_table(&t).unwrap();
    assert_eq!(table.gamma.len(), 36);
    assert_eq!(table.reps.len(), 64);
    assert_eq!(table.gamma.len() * table.reps.len(), 48 * 48);
    let set: BTreeSet<_> = table.gamma.iter().cloned().collect();
    for (x1, y1) in &table.gamma {
        for (x2, y2) in &table.gamma {
            assert!(set.contains(&(x1.mul(x2), y1.mul(y2))));
        }
    }
    let f = spec.field();
    for d1 in [1, 2] {
        for d2 in [1, 2] {
            let d = Matrix::diagonal(alloc::vec![f.from_int(d1), f.from_int(d2)]).try_map(|x| x.reduce(1)).unwrap();
            assert!(set.contains(&(d.clone(), d)));
        }
    }
}

/// `K_1 h K_1 = K_1 g K_1` decided by integer arithmetic: search
/// `k = 1 + 2X`, `X mod 4`, for `h^{-1} k g ≡ 1 mod 2` with integral entries.
#[test]
fn dc_equal_gl2_example() {
    let g = [[2i64, 0], [0, 1]];
    let h = [[2i64, 1], [0, 1]];
    // h^{-1} = 1/2 · [[1, -1], [0, 2]]
    let mut oracle = false;
    for x in 0..256 {
        let xs = [x & 3, (x >> 2) & 3, (x >> 4) & 3, (x >> 6) & 3];
        let k = [[1 + 2 * xs[0], 2 * xs[1]], [2 * xs[2], 1 + 2 * xs[3]]];
        let kg = [
            [k[0][0] * g[0][0] + k[0][1] * g[1][0], k[0][0] * g[0][1] + k[0][1] * g[1][1]],
            [k[1][0] * g[0][0] + k[1][1] * g[1][0], k[1][0] * g[0][1] + k[1][1] * g[1][1]],
        ];
        let twice = [
            [kg[0][0] - kg[1][0], kg[0][1] - kg[1][1]],
            [2 * kg[1][0], 2 * kg[1][1]],
        ];
        let integral = twice.iter().flatten().all(|v| v % 2 == 0);
        if integral {
            let p = [[twice[0][0] / 2, twice[0][1] / 2], [twice[1][0] / 2, twice[1][1] / 2]];
            if p[0][0] % 2 != 0 && p[1][1] % 2 != 0 && p[0][1] % 2 == 0 && p[1][0] % 2 == 0 {
                oracle = true;
            }
        }
    }
    let _ = h;
    let alg = alg(Family::GL, 2, Field::mixed(2, 1).unwrap(), 1);
    let spec = alg.spec().clone();
    let ge = int_matrix(&spec, &[&[2, 0], &[0, 1]]);
    let he = int_matrix(&spec, &[&[2, 1], &[0, 1]]);
    assert!(!oracle);
    assert_eq!(alg.dc_equal(&ge, &he).unwrap(), oracle);
    assert_ne!(alg.classify(&ge).unwrap(), alg.classify(&he).unwrap());
    assert!(alg.dc_equal(&ge, &ge).unwrap());
}

#[test]
fn classify_examples() {
    let h = alg(Family::SL, 2, Field::equal(2, 1).unwrap(), 1);
    let spec = h.spec().clone();
    let id = h.classify(&spec.identity()).unwrap();
    assert!(id.tau.is_zero());
    assert!(id.a.is_identity() && id.b.is_identity());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let k = random_k(&spec, &mut rng);
        let l = h.classify(&k).unwrap();
        assert!(l.tau.is_zero());
        assert_eq!(l, h.residue_label(&spec.reduce(&k, 1).unwrap()));
        assert!(l.a.is_identity());
    }
    let t = tau(&spec, &[1, -1]);
    let n = spec.n_of_tau(&t);
    for _ in 0..10 {
        let g = random_km(&spec, 1, &mut rng).mul(&n).mul(&random_km(&spec, 1, &mut rng));
        assert_eq!(h.classify(&g).unwrap(), h.tau_label(&t));
        assert!(h.dc_equal(&g, &n).unwrap());
    }
}

#[test]
fn classify_agrees_with_dc_equal() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for field in [Field::mixed(2, 1).unwrap(), Field::mixed(3, 2).unwrap()] {
        let h = alg(Family::SL, 2, field, 1);
        let spec = h.spec().clone();
        let labels = h.window_labels(1).unwrap();
        for _ in 0..30 {
            let g = {
                let (g, _) = random_windowed(&spec, 1, &mut rng);
                g
            };
            // Half the time a second representative of the same coset.
            let other = if rng.gen_bool(0.5) {
                random_km(&spec, 1, &mut rng).mul(&g).mul(&random_km(&spec, 1, &mut rng))
            } else {
                h.label_rep(&labels[rng.gen_range(0..labels.len())])
            };
            let same = h.classify(&g).unwrap() == h.classify(&other).unwrap();
            assert_eq!(same, h.dc_equal(&g, &other).unwrap());
        }
    }
}

#[test]
fn structured_cosets_match_sweep() {
    let h = alg(Family::SL, 2, Field::mixed(2, 1).unwrap(), 1);
    let spec = h.spec().clone();
    let q = BigRational::from_integer(BigInt::from(0));
    let _ = q;
    for t in [&[1, -1][..], &[2, -2][..]] {
        let label = h.tau_label(&tau(&spec, t));
        let g = h.label_rep(&label);
        let fast = h.left_cosets(&g).unwrap();
        let slow = h.left_cosets_by_sweep(&g).unwrap();
        assert_eq!(fast.len(), slow.len());
        assert_eq!(fast.len() as u64, h.degree(&label).unwrap());
        let kernel_size = spec.enumerate_kernel_classes(1, 2 * label.tau.norm(), DEFAULT_BUDGET).unwrap().len();
        assert_eq!(kernel_size % fast.len(), 0);
        for a in &fast {
            let matches = slow
                .iter()
                .filter(|b| spec.membership(&a.inverse().mul(b), Level::Congruence(1)))
                .count();
            assert_eq!(matches, 1);
        }
    }
    assert_eq!(h.degree(&h.tau_label(&tau(&spec, &[1, -1]))).unwrap(), 4);
}

#[test]
fn residue_products_and_unit() {
    let h = alg(Family::SL, 2, Field::mixed(2, 1).unwrap(), 1);
    let mut cache = ProductCache::new();
    let classes = h.residue_classes().to_vec();
    let one = h.residue_label(&classes.iter().find(|c| c.is_identity()).unwrap().clone());
    for k1 in &classes {
        for k2 in &classes {
            let conv = cache.get(&h, &h.residue_label(k1), &h.residue_label(k2)).unwrap();
            let expected: BTreeMap<_, _> = [(h.residue_label(&k1.mul(k2)), 1)].into_iter().collect();
            assert_eq!(conv.terms, expected);
        }
    }
    let labels = h.window_labels(1).unwrap();
    let f = HeckeElement::from_terms(
        CoeffRing::Integers,
        labels.iter().enumerate().map(|(i, l)| (l.clone(), BigRational::from_integer(BigInt::from(i as i64 - 3)))),
    )
    .unwrap();
    let unit = HeckeElement::basis(CoeffRing::Integers, one);
    assert_eq!(h.convolve(&unit, &f, &mut cache).unwrap(), f);
    assert_eq!(h.convolve(&f, &unit, &mut cache).unwrap(), f);
}

#[test]
fn generator_sets() {
    let h = alg(Family::SL, 2, Field::mixed(2, 1).unwrap(), 1);
    assert_eq!(h.generators().len(), 7);
    let taus: Vec<Vec<i64>> = h.generator_taus().iter().map(|t| t.entries().to_vec()).collect();
    assert_eq!(taus, alloc::vec![alloc::vec![0, 0], alloc::vec![1, -1]]);
    let g = alg(Family::GL, 2, Field::mixed(3, 1).unwrap(), 1);
    let taus: Vec<Vec<i64>> = g.generator_taus().iter().map(|t| t.entries().to_vec()).collect();
    assert_eq!(taus, alloc::vec![alloc::vec![0, 0], alloc::vec![1, 0], alloc::vec![1, 1], alloc::vec![-1, -1]]);
    let basis: Vec<Vec<i64>> = sl_hilbert_basis(3).iter().map(|t| t.entries().to_vec()).collect();
    assert_eq!(basis, alloc::vec![alloc::vec![1, 0, -1], alloc::vec![1, 1, -2], alloc::vec![2, -1, -1]]);
}

#[test]
fn coefficient_rings() {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(CoeffRing::PrimeField(5).normalize(&q(-1, 1)).unwrap(), q(4, 1));
    assert_eq!(CoeffRing::PrimeField(5).normalize(&q(1, 2)).unwrap(), q(3, 1));
    assert!(CoeffRing::PrimeField(5).normalize(&q(1, 5)).is_err());
    assert!(CoeffRing::Integers.normalize(&q(1, 2)).is_err());
    assert_eq!(CoeffRing::integers_mod(3, 2).unwrap().normalize(&q(10, 1)).unwrap(), q(1, 1));
    assert!(CoeffRing::prime_field(4).is_err());
    let h = alg(Family::SL, 2, Field::mixed(2, 1).unwrap(), 1);
    let l = h.window_labels(0).unwrap();
    let a = HeckeElement::basis(CoeffRing::Integers, l[0].clone());
    let b = HeckeElement::basis(CoeffRing::Rationals, l[0].clone());
    assert!(matches!(h.convolve(&a, &b, &mut ProductCache::new()), Err(Error::MixedRings(_, _))));
}
