//! Rational functions over `F_q`, kept as reduced fractions with monic
//! denominator.

use alloc::vec;
use alloc::vec::Vec;

use super::gf::GaloisField;

/// Polynomial over `F_q`, low degree first, no trailing zeros.
pub(crate) type Poly = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

pub(crate) fn trim(mut v: Poly) -> Poly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn add(k: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| k.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

pub(crate) fn neg(k: &GaloisField, a: &[u32]) -> Poly {
    a.iter().map(|&x| k.neg(x)).collect()
}

pub(crate) fn mul(k: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(out)
}

pub(crate) fn scale(k: &GaloisField, a: &[u32], c: u32) -> Poly {
    trim(a.iter().map(|&x| k.mul(x, c)).collect())
}

pub(crate) fn divrem(k: &GaloisField, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = k.inv(b[db]).expect("division by zero polynomial");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0; rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = k.mul(*rem.last().unwrap(), lead_inv);
        for (i, &y) in b.iter().enumerate() {
            rem[shift + i] = k.sub(rem[shift + i], k.mul(c, y));
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub(crate) fn monic_gcd(k: &GaloisField, a: &[u32], b: &[u32]) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(k, &x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        return x;
    }
    let inv = k.inv(*x.last().unwrap()).unwrap();
    scale(k, &x, inv)
}

/// Order of vanishing at `t = 0`; `None` for the zero polynomial.
pub(crate) fn order_at_zero(a: &[u32]) -> Option<usize> {
    a.iter().position(|&c| c != 0)
}

impl RatFunc {
    pub fn from_poly(num: Poly) -> Self {
        RatFunc { num: trim(num), den: vec![1] }
    }

    pub fn new(k: &GaloisField, num: Poly, den: Poly) -> Self {
        let num = trim(num);
        let den = trim(den);
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return RatFunc { num, den: vec![1] };
        }
        let g = monic_gcd(k, &num, &den);
        let (num, _) = divrem(k, &num, &g);
        let (den, _) = divrem(k, &den, &g);
        let lead = k.inv(*den.last().unwrap()).unwrap();
        RatFunc { num: scale(k, &num, lead), den: scale(k, &den, lead) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn add(&self, k: &GaloisField, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(k, add(k, &self.num, &other.num), self.den.clone());
        }
        let num = add(k, &mul(k, &self.num, &other.den), &mul(k, &other.num, &self.den));
        RatFunc::new(k, num, mul(k, &self.den, &other.den))
    }

    pub fn neg(&self, k: &GaloisField) -> Self {
        RatFunc { num: neg(k, &self.num), den: self.den.clone() }
    }

    pub fn mul(&self, k: &GaloisField, other: &Self) -> Self {
        RatFunc::new(k, mul(k, &self.num, &other.num), mul(k, &self.den, &other.den))
    }

    pub fn inv(&self, k: &GaloisField) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::new(k, self.den.clone(), self.num.clone()))
    }

    pub fn valuation(&self) -> Option<i64> {
        let vn = order_at_zero(&self.num)? as i64;
        let vd = order_at_zero(&self.den).unwrap() as i64;
        Some(vn - vd)
    }

    /// Power-series coefficients of `t^0 .. t^{n-1}`; requires valuation ≥ 0.
    pub fn series(&self, k: &GaloisField, n: usize) -> Vec<u32> {
        let s = order_at_zero(&self.den).unwrap();
        let num: Vec<u32> = self.num.iter().skip(s).copied().collect();
        let den: Vec<u32> = self.den.iter().skip(s).copied().collect();
        let d0_inv = k.inv(den[0]).unwrap();
        let mut inv = vec![0u32; n];
        for i in 0..n {
            let mut acc = if i == 0 { 1 } else { 0 };
            for j in 1..=i {
                if let Some(&dj) = den.get(j) {
                    acc = k.sub(acc, k.mul(dj, inv[i - j]));
                }
            }
            inv[i] = k.mul(acc, d0_inv);
        }
        let mut out = vec![0u32; n];
        for (i, &a) in num.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for j in 0..n - i {
                out[i + j] = k.add(out[i + j], k.mul(a, inv[j]));
            }
        }
        out
    }
}
