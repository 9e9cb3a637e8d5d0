//! Random integral field elements and group elements for property checks.
//!
//! All generators take any [`Rng`]; callers choose a seeded one for
//! reproducibility.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::localfield::{Field, FieldElement, FieldKind};
use crate::matgrp::{CartanDatum, Family, GroupElement, GroupSpec};
use crate::matrix::Matrix;

/// A random element of `o`. Mixed characteristic elements get small
/// rational coefficients with denominators prime to `p`; equal
/// characteristic elements are short polynomials, sometimes divided by a
/// unit.
pub fn random_integral<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> FieldElement {
    match field.kind() {
        FieldKind::MixedChar => {
            let p = field.p() as i64;
            let coeffs = (0..field.e())
                .map(|_| {
                    let num = rng.gen_range(-(p * p)..=p * p);
                    let den = loop {
                        let d: i64 = if rng.gen_bool(0.8) { 1 } else { rng.gen_range(1..=7) };
                        if d % p != 0 {
                            break d;
                        }
                    };
                    num_rational::BigRational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            field.from_pi_coefficients(coeffs).expect("coefficient count matches e")
        }
        FieldKind::EqualChar => {
            let q = field.q();
            let deg = rng.gen_range(0..=3);
            let num: Vec<u32> = (0..=deg).map(|_| rng.gen_range(0..q)).collect();
            let den: Vec<u32> = if rng.gen_bool(0.3) {
                let mut d = alloc::vec![1, rng.gen_range(0..q)];
                if rng.gen_bool(0.5) {
                    d.push(rng.gen_range(0..q));
                }
                d
            } else {
                alloc::vec![1]
            };
            field.from_polynomials(num, den).expect("denominator is a unit")
        }
    }
}

fn random_integral_matrix<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> Matrix<FieldElement> {
    let n = spec.n();
    Matrix::from_fn(n, n, |_, _| random_integral(spec.field(), rng))
}

/// A random element of `K = G(o)`.
pub fn random_k<R: Rng + ?Sized>(spec: &GroupSpec, rng: &mut R) -> GroupElement {
    loop {
        let m = random_integral_matrix(spec, rng);
        let Ok(g) = GroupElement::new(m) else { continue };
        if !g.det().is_unit() {
            continue;
        }
        return match spec.family() {
            Family::GL => g,
            Family::SL => spec.det_correct(g),
        };
    }
}

/// A random element of `K_m`.
pub fn random_km<R: Rng + ?Sized>(spec: &GroupSpec, m: u32, rng: &mut R) -> GroupElement {
    if m == 0 {
        return random_k(spec, rng);
    }
    let field = spec.field();
    let pi_m = field.uniformizer_pow(m as i64);
    let n = spec.n();
    let x = random_integral_matrix(spec, rng);
    let one = field.one();
    let mat = Matrix::from_fn(n, n, |i, j| {
        let t = x.get(i, j).mul(&pi_m);
        if i == j {
            t.add(&one)
        } else {
            t
        }
    });
    let g = GroupElement::new(mat).expect("congruent to the identity");
    match spec.family() {
        Family::GL => g,
        Family::SL => spec.det_correct(g),
    }
}

/// A random dominant `τ` with `‖τ‖ ≤ bound`.
pub fn random_tau<R: Rng + ?Sized>(spec: &GroupSpec, bound: u32, rng: &mut R) -> CartanDatum {
    spec.dominant_taus(bound).choose(rng).expect("τ = 0 is always dominant").clone()
}

/// `k_1·n_τ·k_2` with random `k_i ∈ K` and random `τ`, `‖τ‖ ≤ bound`.
pub fn random_windowed<R: Rng + ?Sized>(spec: &GroupSpec, bound: u32, rng: &mut R) -> (GroupElement, CartanDatum) {
    let tau = random_tau(spec, bound, rng);
    let g = random_k(spec, rng).mul(&spec.n_of_tau(&tau)).mul(&random_k(spec, rng));
    (g, tau)
}
