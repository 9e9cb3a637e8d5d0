//! The truncated valuation rings `o/π^N`.
//!
//! Mixed characteristic: coordinates `a_i ∈ Z/p^{⌈(N-i)/e⌉}` of `π^i`,
//! `0 ≤ i < e`. Equal characteristic: the `N` coefficients of a polynomial in
//! `t` over `F_q`. Both have a canonical `π`-adic digit expansion
//! `Σ_{j<N} d_j π^j` with digits in `[0, q)`, which is what enumeration and the
//! close-pair isomorphism work on.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{mixed, Field, FieldElement, FieldKind};
use crate::error::{Error, Result};
use crate::ring::RingElement;

#[derive(Clone, Debug)]
pub struct ResidueElement {
    field: Field,
    precision: u32,
    coords: Vec<u64>,
}

const MAX_MODULUS: u64 = 1 << 62;

fn mixed_modulus(p: u32, e: u32, n: u32, i: u32) -> u64 {
    if n <= i {
        return 1;
    }
    let k = (n - i).div_ceil(e);
    (p as u64).pow(k)
}

/// Rejects precisions whose coordinates would not fit in machine words.
pub(crate) fn check_precision(field: &Field, n: u32) -> Result<()> {
    let fits = match field.kind() {
        FieldKind::MixedChar => (field.p() as u64)
            .checked_pow(n.div_ceil(field.e()))
            .is_some_and(|m| m <= MAX_MODULUS),
        FieldKind::EqualChar => n <= 4096,
    };
    if fits {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("precision {n} is too large for {field}")))
    }
}

impl ResidueElement {
    pub fn zero(field: &Field, precision: u32) -> Self {
        let len = match field.kind() {
            FieldKind::MixedChar => field.e() as usize,
            FieldKind::EqualChar => precision as usize,
        };
        ResidueElement { field: field.clone(), precision, coords: vec![0; len] }
    }

    pub fn one(field: &Field, precision: u32) -> Self {
        let mut r = Self::zero(field, precision);
        if precision > 0 {
            r.coords[0] = 1;
        }
        r
    }

    /// Element `Σ d_j π^j` from its `π`-adic digits, `d_j ∈ [0, q)`.
    pub fn from_digits(field: &Field, precision: u32, digits: &[u32]) -> Self {
        let mut r = Self::zero(field, precision);
        match field.kind() {
            FieldKind::MixedChar => {
                let (p, e) = (field.p() as u64, field.e() as usize);
                let mut place = vec![1u64; e];
                for (j, &d) in digits.iter().enumerate().take(precision as usize) {
                    let i = j % e;
                    r.coords[i] += d as u64 * place[i];
                    place[i] = place[i].saturating_mul(p);
                }
            }
            FieldKind::EqualChar => {
                for (j, &d) in digits.iter().enumerate().take(precision as usize) {
                    r.coords[j] = d as u64;
                }
            }
        }
        r
    }

    pub fn to_digits(&self) -> Vec<u32> {
        let n = self.precision as usize;
        match self.field.kind() {
            FieldKind::MixedChar => {
                let (p, e) = (self.field.p() as u64, self.field.e() as usize);
                let mut rest = self.coords.clone();
                (0..n)
                    .map(|j| {
                        let i = j % e;
                        let d = rest[i] % p;
                        rest[i] /= p;
                        d as u32
                    })
                    .collect()
            }
            FieldKind::EqualChar => self.coords.iter().map(|&c| c as u32).collect(),
        }
    }

    pub(crate) fn from_integral(x: &FieldElement, precision: u32) -> Result<Self> {
        let field = x.field();
        check_precision(field, precision)?;
        let mut r = Self::zero(field, precision);
        match field.kind() {
            FieldKind::MixedChar => {
                let coeffs = x.mixed_coords().unwrap();
                for i in 0..coeffs.len() {
                    let m = mixed_modulus(field.p(), field.e(), precision, i as u32);
                    r.coords[i] = mixed::reduce_coordinate(coeffs, i, m);
                }
            }
            FieldKind::EqualChar => {
                if !x.is_zero() {
                    r.coords = x.series(precision as usize).into_iter().map(u64::from).collect();
                }
            }
        }
        Ok(r)
    }

    /// Canonical representative: least non-negative coordinates.
    pub fn lift(&self) -> FieldElement {
        match self.field.kind() {
            FieldKind::MixedChar => {
                let coeffs = self.coords.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
                self.field.from_pi_coefficients(coeffs).unwrap()
            }
            FieldKind::EqualChar => {
                let num = self.coords.iter().map(|&c| c as u32).collect();
                self.field.from_polynomials(num, vec![1]).unwrap()
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    fn modulus(&self, i: usize) -> u64 {
        mixed_modulus(self.field.p(), self.field.e(), self.precision, i as u32)
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            self.precision == other.precision && self.field == other.field,
            "residue operands live in different rings"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Reduction to a smaller precision.
    pub fn truncate(&self, precision: u32) -> Self {
        assert!(precision <= self.precision);
        let digits = self.to_digits();
        Self::from_digits(&self.field, precision, &digits[..precision as usize])
    }

    /// Multiplication by `π^d`, a shift of the digit expansion.
    pub fn shift(&self, d: u32) -> Self {
        let n = self.precision as usize;
        let d = d as usize;
        let digits = self.to_digits();
        let mut shifted = vec![0u32; n];
        let keep = n.saturating_sub(d);
        shifted[n - keep..].copy_from_slice(&digits[..keep]);
        Self::from_digits(&self.field, self.precision, &shifted)
    }

    /// Index of the first nonzero digit; `None` for zero.
    pub fn valuation(&self) -> Option<u32> {
        self.to_digits().iter().position(|&d| d != 0).map(|j| j as u32)
    }

    /// Units are the elements with nonzero image in the residue field. In the
    /// zero ring `o/π^0` every element is a unit.
    pub fn is_unit(&self) -> bool {
        self.precision == 0
            || match self.field.kind() {
                FieldKind::MixedChar => self.coords[0] % self.field.p() as u64 != 0,
                FieldKind::EqualChar => self.coords[0] != 0,
            }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_ring(other);
        let coords = match self.field.kind() {
            FieldKind::MixedChar => (0..self.coords.len())
                .map(|i| {
                    let m = self.modulus(i);
                    ((self.coords[i] as u128 + other.coords[i] as u128) % m as u128) as u64
                })
                .collect(),
            FieldKind::EqualChar => {
                let k = self.field.residue_field();
                self.coords.iter().zip(&other.coords).map(|(&a, &b)| k.add(a as u32, b as u32) as u64).collect()
            }
        };
        ResidueElement { field: self.field.clone(), precision: self.precision, coords }
    }

    pub fn neg(&self) -> Self {
        let coords = match self.field.kind() {
            FieldKind::MixedChar => (0..self.coords.len())
                .map(|i| {
                    let m = self.modulus(i);
                    (m - self.coords[i] % m) % m
                })
                .collect(),
            FieldKind::EqualChar => {
                let k = self.field.residue_field();
                self.coords.iter().map(|&a| k.neg(a as u32) as u64).collect()
            }
        };
        ResidueElement { field: self.field.clone(), precision: self.precision, coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_ring(other);
        let mut out = Self::zero(&self.field, self.precision);
        match self.field.kind() {
            FieldKind::MixedChar => {
                let e = self.coords.len();
                let p = self.field.p() as u128;
                let moduli: Vec<u128> = (0..e).map(|i| self.modulus(i) as u128).collect();
                let mut acc = vec![0u128; e];
                for (i, &a) in self.coords.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for (j, &b) in other.coords.iter().enumerate() {
                        if b == 0 {
                            continue;
                        }
                        let k = i + j;
                        let (slot, factor) = if k < e { (k, 1) } else { (k - e, p) };
                        let m = moduli[slot];
                        let term = (a as u128 * b as u128) % m * factor % m;
                        acc[slot] = (acc[slot] + term) % m;
                    }
                }
                out.coords = acc.into_iter().map(|c| c as u64).collect();
            }
            FieldKind::EqualChar => {
                let k = self.field.residue_field();
                let n = self.precision as usize;
                for (i, &a) in self.coords.iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        let b = other.coords[j];
                        if b != 0 {
                            let t = k.mul(a as u32, b as u32);
                            out.coords[i + j] = k.add(out.coords[i + j] as u32, t) as u64;
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse of a unit, `u^{|(o/π^N)^×| - 1}`.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        if self.precision == 0 {
            return Some(self.clone());
        }
        let q = self.field.q() as u128;
        let order = (q - 1) * q.pow(self.precision - 1);
        let mut exp = order - 1;
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.precision);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        Some(acc)
    }
}

impl PartialEq for ResidueElement {
    fn eq(&self, other: &Self) -> bool {
        self.precision == other.precision && self.coords == other.coords && self.field == other.field
    }
}

impl Eq for ResidueElement {}

impl PartialOrd for ResidueElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ResidueElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.precision.cmp(&other.precision).then_with(|| self.coords.cmp(&other.coords))
    }
}

impl core::hash::Hash for ResidueElement {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.precision.hash(state);
        self.coords.hash(state);
    }
}

impl RingElement for ResidueElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field, self.precision)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field, self.precision)
    }
    fn is_zero(&self) -> bool {
        ResidueElement::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lift = format!("{}", self.lift());
        if lift.contains(' ') {
            write!(f, "({lift})@{}", self.precision)
        } else {
            write!(f, "{lift}@{}", self.precision)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn all(field: &Field, n: u32) -> Vec<ResidueElement> {
        let q = field.q();
        let total = (q as usize).pow(n);
        (0..total)
            .map(|mut idx| {
                let digits: Vec<u32> = (0..n)
                    .map(|_| {
                        let d = (idx % q as usize) as u32;
                        idx /= q as usize;
                        d
                    })
                    .collect();
                ResidueElement::from_digits(field, n, &digits)
            })
            .collect()
    }

    #[test]
    fn reduce_examples() {
        let f = Field::mixed(2, 2).unwrap();
        assert_eq!(f.one().reduce(3).unwrap(), ResidueElement::one(&f, 3));
        assert!(f.from_int(2).reduce(2).unwrap().is_zero());
        assert_eq!(f.uniformizer_pow(-1).reduce(2), Err(Error::NegativeValuation(-1)));

        // 1/(1+t) = 1 - t + t^2 - ... = 1 + t mod t^2 over F_2
        let g = Field::equal(2, 1).unwrap();
        let x = g.one().div(&g.one().add(&g.uniformizer())).unwrap();
        let r = x.reduce(2).unwrap();
        assert_eq!(r.to_digits(), vec![1, 1]);
    }

    #[test]
    fn lift_examples() {
        let f = Field::mixed(2, 2).unwrap();
        assert!(ResidueElement::zero(&f, 4).lift().is_zero());
        let r = ResidueElement::from_digits(&f, 2, &[1, 1]);
        assert_eq!(r.lift(), f.one().add(&f.uniformizer()));
        let g = Field::equal(3, 1).unwrap();
        let r = ResidueElement::from_digits(&g, 3, &[0, 2, 0]);
        assert_eq!(r.lift(), g.from_int(2).mul(&g.uniformizer()));
        assert_eq!(r.to_string(), "2*t@3");
    }

    #[test]
    fn reduce_lift_identity_exhaustive() {
        for field in [Field::mixed(2, 1).unwrap(), Field::mixed(3, 2).unwrap(), Field::equal(2, 2).unwrap()] {
            for n in 0..=2 {
                for r in all(&field, n) {
                    assert_eq!(r.lift().reduce(n).unwrap(), r);
                    assert_eq!(ResidueElement::from_digits(&field, n, &r.to_digits()), r);
                }
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let f = Field::mixed(2, 3).unwrap();
        let elems = all(&f, 4);
        for a in elems.iter().step_by(3) {
            for b in elems.iter().step_by(5) {
                let (x, y) = (a.lift(), b.lift());
                assert_eq!(x.add(&y).reduce(4).unwrap(), a.add(b));
                assert_eq!(x.mul(&y).reduce(4).unwrap(), a.mul(b));
            }
        }
    }

    #[test]
    fn inverse_and_units() {
        let f = Field::mixed(3, 1).unwrap();
        for r in all(&f, 3) {
            match r.inverse() {
                Some(inv) => assert!(r.mul(&inv) == ResidueElement::one(&f, 3)),
                None => assert!(!r.is_unit()),
            }
        }
        let z = ResidueElement::zero(&f, 0);
        assert!(z.is_unit());
    }

    #[test]
    fn shift_multiplies_by_uniformizer() {
        let f = Field::mixed(2, 2).unwrap();
        let pi = ResidueElement::from_digits(&f, 5, &[0, 1]);
        for r in all(&f, 5).into_iter().step_by(7) {
            assert_eq!(r.shift(1), r.mul(&pi));
            assert_eq!(r.shift(2), r.mul(&pi).mul(&pi));
        }
    }
}
