//! Exact arithmetic in two dense models of non-Archimedean local fields.
//!
//! A [`Field`] is either `Q_p(π)` with `π^e = p` (mixed characteristic, the
//! algebraic model `Q(π)` of the totally ramified extension) or the rational
//! function field `F_q(t)` (equal characteristic, the dense model of
//! `F_q((t))`). Elements are exact, so valuations are computed, never
//! estimated.

mod close;
mod equal;
pub mod gf;
mod mixed;
mod residue;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::RingElement;
use equal::RatFunc;
use gf::GaloisField;

pub use close::ClosePair;
pub use residue::ResidueElement;
pub(crate) use residue::check_precision;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldKind {
    MixedChar,
    EqualChar,
}

/// `v(x) ∈ Z ∪ {+∞}`. The derived order puts `Infinity` above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl core::ops::Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

#[derive(Debug)]
pub struct FieldModel {
    kind: FieldKind,
    p: u32,
    e: u32,
    f: u32,
    residue_field: GaloisField,
}

/// Shared handle on a field model. Equality compares the defining parameters.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldModel>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.params() == other.params()
    }
}

impl Eq for Field {}

impl Field {
    /// `Q_p(π)` with `π^e = p`.
    pub fn mixed(p: u32, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidModel("ramification index must be at least 1".into()));
        }
        let residue_field = GaloisField::new(p, 1)?;
        Ok(Field(Arc::new(FieldModel { kind: FieldKind::MixedChar, p, e, f: 1, residue_field })))
    }

    /// `F_{p^f}(t)` with uniformizer `t`.
    pub fn equal(p: u32, f: u32) -> Result<Self> {
        let residue_field = GaloisField::new(p, f)?;
        Ok(Field(Arc::new(FieldModel { kind: FieldKind::EqualChar, p, e: 1, f, residue_field })))
    }

    pub fn new(kind: FieldKind, p: u32, e: u32, f: u32) -> Result<Self> {
        match kind {
            FieldKind::MixedChar if f != 1 => Err(Error::InvalidModel(
                "mixed characteristic models are totally ramified (f = 1)".into(),
            )),
            FieldKind::MixedChar => Field::mixed(p, e),
            FieldKind::EqualChar => Field::equal(p, f),
        }
    }

    fn params(&self) -> (FieldKind, u32, u32, u32) {
        (self.0.kind, self.0.p, self.0.e, self.0.f)
    }

    pub fn kind(&self) -> FieldKind {
        self.0.kind
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Ramification index; `1` for equal characteristic models.
    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn f(&self) -> u32 {
        self.0.f
    }

    /// Cardinality of the residue field.
    pub fn q(&self) -> u32 {
        self.0.residue_field.order()
    }

    pub fn residue_field(&self) -> &GaloisField {
        &self.0.residue_field
    }

    /// Whether `o/π^n` has characteristic `p`, i.e. is `F_q[x]/x^n`.
    pub fn residue_ring_is_char_p(&self, n: u32) -> bool {
        match self.kind() {
            FieldKind::EqualChar => true,
            FieldKind::MixedChar => n <= self.e(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let repr = match self.kind() {
            FieldKind::MixedChar => {
                Repr::Mixed(mixed::constant(self.e(), BigRational::from_integer(BigInt::from(n))))
            }
            FieldKind::EqualChar => {
                Repr::Equal(RatFunc::from_poly(vec![self.residue_field().from_int(n)]))
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    /// The rational `num/den`. In equal characteristic the denominator must be
    /// prime to `p`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement> {
        if den.is_zero() {
            return Err(Error::Singular);
        }
        match self.kind() {
            FieldKind::MixedChar => {
                let c = BigRational::new(num.clone(), den.clone());
                Ok(FieldElement { field: self.clone(), repr: Repr::Mixed(mixed::constant(self.e(), c)) })
            }
            FieldKind::EqualChar => {
                let p = BigInt::from(self.p());
                let k = self.residue_field();
                let n = k.from_int(mod_small(num, &p));
                let d = k.from_int(mod_small(den, &p));
                let dinv = k.inv(d).ok_or_else(|| {
                    Error::InvalidModel(format!("{den} is not invertible in characteristic {}", self.p()))
                })?;
                Ok(self.residue_constant(k.mul(n, dinv)))
            }
        }
    }

    /// Constant field element given by an encoded residue-field element.
    /// Only meaningful in equal characteristic or for `F_p` digits.
    pub fn residue_constant(&self, c: u32) -> FieldElement {
        match self.kind() {
            FieldKind::MixedChar => self.from_int(c as i64),
            FieldKind::EqualChar => {
                FieldElement { field: self.clone(), repr: Repr::Equal(RatFunc::from_poly(vec![c])) }
            }
        }
    }

    pub fn uniformizer(&self) -> FieldElement {
        self.uniformizer_pow(1)
    }

    /// `π^k` (or `t^k`) for any integer `k`.
    pub fn uniformizer_pow(&self, k: i64) -> FieldElement {
        let repr = match self.kind() {
            FieldKind::MixedChar => Repr::Mixed(mixed::pi_pow(self.p(), self.e(), k)),
            FieldKind::EqualChar => {
                let mut mono = vec![0u32; k.unsigned_abs() as usize + 1];
                mono[k.unsigned_abs() as usize] = 1;
                if k >= 0 {
                    Repr::Equal(RatFunc::from_poly(mono))
                } else {
                    Repr::Equal(RatFunc { num: vec![1], den: mono })
                }
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    /// Exact element `Σ a_i π^i` from its coordinates (mixed characteristic).
    pub fn from_pi_coefficients(&self, coeffs: Vec<BigRational>) -> Result<FieldElement> {
        if self.kind() != FieldKind::MixedChar || coeffs.len() != self.e() as usize {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficients of a mixed characteristic model",
                self.e()
            )));
        }
        Ok(FieldElement { field: self.clone(), repr: Repr::Mixed(mixed::Coeffs::from_rationals(coeffs)) })
    }

    /// Exact element `num(t)/den(t)` from encoded `F_q` coefficients (equal characteristic).
    pub fn from_polynomials(&self, num: Vec<u32>, den: Vec<u32>) -> Result<FieldElement> {
        if self.kind() != FieldKind::EqualChar {
            return Err(Error::FieldMismatch);
        }
        let q = self.q();
        if num.iter().chain(&den).any(|&c| c >= q) {
            return Err(Error::InvalidModel(format!("coefficient outside F_{q}")));
        }
        if equal::trim(den.clone()).is_empty() {
            return Err(Error::Singular);
        }
        let rf = RatFunc::new(self.residue_field(), num, den);
        Ok(FieldElement { field: self.clone(), repr: Repr::Equal(rf) })
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::MixedChar if self.e() == 1 => write!(f, "Q_{}", self.p()),
            FieldKind::MixedChar => write!(f, "Q_{}({}^(1/{}))", self.p(), self.p(), self.e()),
            FieldKind::EqualChar if self.f() == 1 => write!(f, "F_{}((t))", self.p()),
            FieldKind::EqualChar => write!(f, "F_{}^{}((t))", self.p(), self.f()),
        }
    }
}

fn mod_small(n: &BigInt, p: &BigInt) -> i64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    n.mod_floor(p).to_i64().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Mixed(mixed::Coeffs),
    Equal(RatFunc),
}

#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, other: &Self) {
        assert!(self.field == other.field, "operands belong to different field models");
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Mixed(c) => mixed::is_zero(c),
            Repr::Equal(r) => r.is_zero(),
        }
    }

    pub fn valuation(&self) -> Valuation {
        let v = match &self.repr {
            Repr::Mixed(c) => mixed::valuation(self.field.p(), c),
            Repr::Equal(r) => r.valuation(),
        };
        v.map_or(Valuation::Infinity, Valuation::Finite)
    }

    /// `v(x) ≥ 0`.
    pub fn is_integral(&self) -> bool {
        self.valuation() >= Valuation::Finite(0)
    }

    /// `v(x) = 0`.
    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mixed(a), Repr::Mixed(b)) => Repr::Mixed(mixed::add(a, b)),
            (Repr::Equal(a), Repr::Equal(b)) => Repr::Equal(a.add(self.field.residue_field(), b)),
            _ => unreachable!(),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    pub fn neg(&self) -> Self {
        let repr = match &self.repr {
            Repr::Mixed(a) => Repr::Mixed(mixed::neg(a)),
            Repr::Equal(a) => Repr::Equal(a.neg(self.field.residue_field())),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Mixed(a), Repr::Mixed(b)) => {
                self.same_field(other);
                FieldElement { field: self.field.clone(), repr: Repr::Mixed(mixed::sub(a, b)) }
            }
            _ => self.add(&other.neg()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_field(other);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Mixed(a), Repr::Mixed(b)) => Repr::Mixed(mixed::mul(self.field.p(), a, b)),
            (Repr::Equal(a), Repr::Equal(b)) => Repr::Equal(a.mul(self.field.residue_field(), b)),
            _ => unreachable!(),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    pub fn inv(&self) -> Option<Self> {
        let repr = match &self.repr {
            Repr::Mixed(a) => Repr::Mixed(mixed::inverse(self.field.p(), a)?),
            Repr::Equal(a) => Repr::Equal(a.inv(self.field.residue_field())?),
        };
        Some(FieldElement { field: self.field.clone(), repr })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv().ok_or(Error::Singular)?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.field.one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Image in `o/π^n`.
    pub fn reduce(&self, n: u32) -> Result<ResidueElement> {
        if let Valuation::Finite(v) = self.valuation() {
            if v < 0 {
                return Err(Error::NegativeValuation(v));
            }
        }
        ResidueElement::from_integral(self, n)
    }

    /// Coordinates of a mixed characteristic element.
    pub fn pi_coefficients(&self) -> Option<Vec<BigRational>> {
        match &self.repr {
            Repr::Mixed(c) => Some(c.to_rationals()),
            Repr::Equal(_) => None,
        }
    }

    /// Numerator and denominator of an equal characteristic element.
    pub fn polynomials(&self) -> Option<(&[u32], &[u32])> {
        match &self.repr {
            Repr::Equal(r) => Some((&r.num, &r.den)),
            Repr::Mixed(_) => None,
        }
    }

    pub(crate) fn mixed_coords(&self) -> Option<&mixed::Coeffs> {
        match &self.repr {
            Repr::Mixed(c) => Some(c),
            Repr::Equal(_) => None,
        }
    }

    pub(crate) fn series(&self, n: usize) -> Vec<u32> {
        match &self.repr {
            Repr::Equal(r) => r.series(self.field.residue_field(), n),
            Repr::Mixed(_) => unreachable!("series of a mixed characteristic element"),
        }
    }
}

impl core::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl core::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl core::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl core::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

impl RingElement for FieldElement {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
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
        self.inv()
    }
}

/// Residue field element written as a polynomial in the generator `a`.
pub(crate) fn format_residue_constant(k: &GaloisField, c: u32) -> String {
    if k.degree() == 1 {
        return format!("{c}");
    }
    let coeffs = k.coefficients(c);
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| monomial(&format!("{x}"), "a", i))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn monomial(coeff: &str, var: &str, i: usize) -> String {
    match (i, coeff) {
        (0, c) => c.into(),
        (1, "1") => var.into(),
        (1, c) => format!("{c}*{var}"),
        (i, "1") => format!("{var}^{i}"),
        (i, c) => format!("{c}*{var}^{i}"),
    }
}

fn format_poly(k: &GaloisField, poly: &[u32]) -> String {
    let mut out = String::new();
    for (i, &c) in poly.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let coeff = format_residue_constant(k, c);
        let coeff = if coeff.contains('+') { format!("({coeff})") } else { coeff };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&monomial(&coeff, "t", i));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Mixed(coeffs) => {
                let mut out = String::new();
                for (i, c) in coeffs.to_rationals().iter().enumerate() {
                    if Zero::is_zero(c) {
                        continue;
                    }
                    let mag = format!("{}", c.abs());
                    let term = monomial(&mag, "pi", i);
                    if out.is_empty() {
                        if c.is_negative() {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if c.is_negative() { " - " } else { " + " });
                    }
                    out.push_str(&term);
                }
                if out.is_empty() {
                    out.push('0');
                }
                f.write_str(&out)
            }
            Repr::Equal(r) => {
                let k = self.field.residue_field();
                let num = format_poly(k, &r.num);
                if r.den == [1] {
                    f.write_str(&num)
                } else {
                    write!(f, "({num})/({})", format_poly(k, &r.den))
                }
            }
        }
    }
}
