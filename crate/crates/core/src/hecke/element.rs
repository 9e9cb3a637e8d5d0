//! Coefficient rings and finitely supported elements of `H_R(G, K_m)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{DoubleCosetLabel, HeckeAlgebra, ProductCache};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Integers,
    Rationals,
    /// `F_l`.
    PrimeField(u64),
    /// `Z/l^k`.
    IntegersMod { l: u64, k: u32 },
}

impl CoeffRing {
    pub fn prime_field(l: u64) -> Result<Self> {
        if !crate::localfield::gf::is_prime(l) {
            return Err(Error::Unsupported(format!("F_{l}: {l} is not prime")));
        }
        Ok(CoeffRing::PrimeField(l))
    }

    pub fn integers_mod(l: u64, k: u32) -> Result<Self> {
        if !crate::localfield::gf::is_prime(l) || k == 0 || (l as u128).checked_pow(k).is_none_or(|m| m > u64::MAX as u128) {
            return Err(Error::Unsupported(format!("Z/{l}^{k} is not supported")));
        }
        Ok(CoeffRing::IntegersMod { l, k })
    }

    /// The prime `l` of `F_l` or `Z/l^k`.
    pub fn residue_prime(&self) -> Option<u64> {
        match self {
            CoeffRing::PrimeField(l) | CoeffRing::IntegersMod { l, .. } => Some(*l),
            _ => None,
        }
    }

    fn modulus(&self) -> Option<BigInt> {
        match self {
            CoeffRing::PrimeField(l) => Some(BigInt::from(*l)),
            CoeffRing::IntegersMod { l, k } => Some(BigInt::from(*l).pow(*k)),
            _ => None,
        }
    }

    /// Canonical form of `c` in this ring: integers for `Z`, residues in
    /// `[0, l^k)` for the finite rings.
    pub fn normalize(&self, c: &BigRational) -> Result<BigRational> {
        match self {
            CoeffRing::Rationals => Ok(c.clone()),
            CoeffRing::Integers => {
                if c.is_integer() {
                    Ok(c.clone())
                } else {
                    Err(Error::NotInRing(c.to_string(), self.to_string()))
                }
            }
            _ => {
                let m = self.modulus().unwrap();
                let den = c.denom();
                let num = c.numer();
                let inv = mod_inverse(&den.mod_floor(&m), &m)
                    .ok_or_else(|| Error::NotInRing(c.to_string(), self.to_string()))?;
                Ok(BigRational::from_integer((num * inv).mod_floor(&m)))
            }
        }
    }

    /// Image of an integer structure constant.
    pub fn from_integer(&self, n: u64) -> BigRational {
        self.normalize(&BigRational::from_integer(BigInt::from(n))).expect("integers map into every ring")
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if g.gcd.is_one() {
        Some(g.x.mod_floor(m))
    } else {
        None
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Integers => write!(f, "Z"),
            CoeffRing::Rationals => write!(f, "Q"),
            CoeffRing::PrimeField(l) => write!(f, "F_{l}"),
            CoeffRing::IntegersMod { l, k } => write!(f, "Z/{l}^{k}"),
        }
    }
}

/// A finitely supported function on double cosets, `Σ c_x t_x`. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    ring: CoeffRing,
    terms: BTreeMap<DoubleCosetLabel, BigRational>,
}

impl HeckeElement {
    pub fn zero(ring: CoeffRing) -> Self {
        HeckeElement { ring, terms: BTreeMap::new() }
    }

    pub fn basis(ring: CoeffRing, label: DoubleCosetLabel) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(label, BigRational::one());
        HeckeElement { ring, terms }
    }

    pub fn from_terms(ring: CoeffRing, terms: impl IntoIterator<Item = (DoubleCosetLabel, BigRational)>) -> Result<Self> {
        let mut out = HeckeElement::zero(ring);
        for (label, c) in terms {
            out.add_term(label, &c)?;
        }
        Ok(out)
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<DoubleCosetLabel, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, label: &DoubleCosetLabel) -> BigRational {
        self.terms.get(label).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, label: DoubleCosetLabel, c: &BigRational) -> Result<()> {
        let current = self.coefficient(&label);
        let value = self.ring.normalize(&(current + c))?;
        if value.is_zero() {
            self.terms.remove(&label);
        } else {
            self.terms.insert(label, value);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (label, c) in &other.terms {
            out.add_term(label.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        let c = self.ring.normalize(c)?;
        HeckeElement::from_terms(self.ring.clone(), self.terms.iter().map(|(l, x)| (l.clone(), x * &c)))
    }

    /// Coefficient-preserving relabeling.
    pub fn relabel(&self, mut f: impl FnMut(&DoubleCosetLabel) -> Result<DoubleCosetLabel>) -> Result<Self> {
        let mut out = HeckeElement::zero(self.ring.clone());
        for (label, c) in &self.terms {
            out.add_term(f(label)?, c)?;
        }
        Ok(out)
    }

    /// Reduction of an integral element into another ring.
    pub fn base_change(&self, ring: CoeffRing) -> Result<Self> {
        HeckeElement::from_terms(ring, self.terms.iter().map(|(l, c)| (l.clone(), c.clone())))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: alloc::vec::Vec<String> = self.terms.iter().map(|(l, c)| format!("{l}:{c}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl HeckeAlgebra {
    /// Logs a warning when `p` is not invertible in the coefficient ring.
    pub fn check_ring(&self, ring: &CoeffRing) {
        if ring.residue_prime() == Some(self.spec().field().p() as u64) {
            log::warn!("coefficient ring {ring} has characteristic dividing p = {}", self.spec().field().p());
        }
    }

    pub fn basis(&self, ring: CoeffRing, label: DoubleCosetLabel) -> HeckeElement {
        self.check_ring(&ring);
        HeckeElement::basis(ring, label)
    }

    /// `f_1 * f_2`, bilinear extension of the integer structure constants.
    pub fn convolve(&self, f1: &HeckeElement, f2: &HeckeElement, cache: &mut ProductCache) -> Result<HeckeElement> {
        f1.same_ring(f2)?;
        self.check_ring(&f1.ring);
        let mut out = HeckeElement::zero(f1.ring.clone());
        for (g, c1) in &f1.terms {
            for (h, c2) in &f2.terms {
                let conv = cache.get(self, g, h)?;
                let c12 = c1 * c2;
                for (x, c) in &conv.terms {
                    out.add_term(x.clone(), &(&c12 * f1.ring.from_integer(*c)))?;
                }
            }
        }
        Ok(out)
    }
}

