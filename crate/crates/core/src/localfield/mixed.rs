//! Elements of `Q(π)` with `π^e = p`, stored as integer coordinates of
//! `1, π, …, π^{e-1}` over one common positive denominator.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Invariant: `den > 0` and `gcd(den, num_0, …, num_{e-1}) = 1`; zero is
/// stored with `den = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Coeffs {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Coeffs {
    fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        let mut c = Coeffs { num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -core::mem::take(&mut self.den);
            for x in &mut self.num {
                *x = -core::mem::take(x);
            }
        }
        if self.den.is_one() {
            return;
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for x in &self.num {
            if g.is_one() {
                return;
            }
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for x in &mut self.num {
                *x /= &g;
            }
        }
    }

    pub(crate) fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Coeffs::new(num, den)
    }

    pub(crate) fn to_rationals(&self) -> Vec<BigRational> {
        self.num.iter().map(|x| BigRational::new(x.clone(), self.den.clone())).collect()
    }

    pub(crate) fn len(&self) -> usize {
        self.num.len()
    }
}

#[cfg(test)]
fn zero(e: u32) -> Coeffs {
    Coeffs { num: vec![BigInt::zero(); e as usize], den: BigInt::one() }
}

pub(crate) fn constant(e: u32, c: BigRational) -> Coeffs {
    let mut num = vec![BigInt::zero(); e as usize];
    num[0] = c.numer().clone();
    Coeffs::new(num, c.denom().clone())
}

/// `π^k` for any integer `k`: with `k = e·s + r`, this is `p^s π^r`.
pub(crate) fn pi_pow(p: u32, e: u32, k: i64) -> Coeffs {
    let s = k.div_euclid(e as i64);
    let r = k.rem_euclid(e as i64) as usize;
    let base = BigInt::from(p);
    let mut num = vec![BigInt::zero(); e as usize];
    if s >= 0 {
        num[r] = base.pow(s as u32);
        Coeffs { num, den: BigInt::one() }
    } else {
        num[r] = BigInt::one();
        Coeffs { num, den: base.pow((-s) as u32) }
    }
}

fn combine(a: &Coeffs, b: &Coeffs, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Coeffs {
    if a.den == b.den {
        let num = a.num.iter().zip(&b.num).map(|(x, y)| f(x, y)).collect();
        return Coeffs::new(num, a.den.clone());
    }
    let num = a.num.iter().zip(&b.num).map(|(x, y)| f(&(x * &b.den), &(y * &a.den))).collect();
    Coeffs::new(num, &a.den * &b.den)
}

pub(crate) fn add(a: &Coeffs, b: &Coeffs) -> Coeffs {
    combine(a, b, |x, y| x + y)
}

pub(crate) fn sub(a: &Coeffs, b: &Coeffs) -> Coeffs {
    combine(a, b, |x, y| x - y)
}

pub(crate) fn neg(a: &Coeffs) -> Coeffs {
    Coeffs { num: a.num.iter().map(|x| -x).collect(), den: a.den.clone() }
}

/// Product of integer polynomials reduced with `π^e = p`.
fn mul_num(p: u32, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let e = a.len();
    let mut low = vec![BigInt::zero(); e];
    let mut high = vec![BigInt::zero(); e];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let k = i + j;
            if k < e {
                low[k] += x * y;
            } else {
                high[k - e] += x * y;
            }
        }
    }
    if high.iter().any(|h| !h.is_zero()) {
        let pb = BigInt::from(p);
        for (l, h) in low.iter_mut().zip(high) {
            if !h.is_zero() {
                *l += h * &pb;
            }
        }
    }
    low
}

pub(crate) fn mul(p: u32, a: &Coeffs, b: &Coeffs) -> Coeffs {
    Coeffs::new(mul_num(p, &a.num, &b.num), &a.den * &b.den)
}

pub(crate) fn is_zero(a: &Coeffs) -> bool {
    a.num.iter().all(Zero::is_zero)
}

pub(crate) fn vp_int(n: &BigInt, p: u32) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `min_i (e·v_p(a_i) + i)`; `None` for zero.
pub(crate) fn valuation(p: u32, a: &Coeffs) -> Option<i64> {
    let e = a.len() as i64;
    let vd = if a.den.is_one() { 0 } else { vp_int(&a.den, p) };
    a.num
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| e * (vp_int(x, p) - vd) + i as i64)
        .min()
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Multiplicative inverse of a nonzero element. With `M` the matrix of
/// multiplication by the numerator, the inverse numerator solves `M y = 1`,
/// computed by Cramer's rule.
pub(crate) fn inverse(p: u32, a: &Coeffs) -> Option<Coeffs> {
    if is_zero(a) {
        return None;
    }
    let e = a.len();
    // Column j holds the coordinates of num·π^j.
    let mut cols = Vec::with_capacity(e);
    for j in 0..e {
        let mut pij = vec![BigInt::zero(); e];
        pij[j] = BigInt::one();
        cols.push(mul_num(p, &a.num, &pij));
    }
    let m: Vec<Vec<BigInt>> = (0..e).map(|i| (0..e).map(|j| cols[j][i].clone()).collect()).collect();
    let det = bareiss_det(m.clone());
    let num = (0..e)
        .map(|i| {
            let mut mi = m.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = if r == 0 { BigInt::one() } else { BigInt::zero() };
            }
            bareiss_det(mi) * &a.den
        })
        .collect();
    Some(Coeffs::new(num, det))
}

/// Residue of `num_i/den ∈ Z_(p)` modulo `modulus` (a power of `p`).
pub(crate) fn reduce_coordinate(a: &Coeffs, i: usize, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = BigInt::from(modulus);
    let n = a.num[i].mod_floor(&m).to_u64().unwrap();
    if a.den.is_one() {
        return n;
    }
    let d = a.den.mod_floor(&m).to_u64().unwrap();
    let dinv = inverse_mod(d, modulus).expect("denominator must be prime to p");
    ((n as u128 * dinv as u128) % modulus as u128) as u64
}

pub(crate) fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from(v: &[(i64, i64)]) -> Coeffs {
        Coeffs::from_rationals(v.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    #[test]
    fn inverse_of_one_plus_pi() {
        for e in 1..=5u32 {
            let mut v = vec![(1, 1); 1];
            v.resize(e as usize, (0, 1));
            if e > 1 {
                v[1] = (1, 1);
            } else {
                v[0] = (3, 1);
            }
            let a = from(&v);
            let inv = inverse(2, &a).unwrap();
            assert_eq!(mul(2, &a, &inv), constant(e, q(1)));
        }
    }

    #[test]
    fn inverse_with_denominators() {
        let a = from(&[(1, 3), (-2, 5), (0, 1), (7, 2)]);
        let inv = inverse(3, &a).unwrap();
        assert_eq!(mul(3, &inv, &a), constant(4, q(1)));
    }

    #[test]
    fn normal_form_is_canonical() {
        let a = from(&[(1, 2), (1, 2)]);
        let b = add(&from(&[(1, 4), (1, 6)]), &from(&[(1, 4), (1, 3)]));
        assert_eq!(a, b);
        assert_eq!(sub(&a, &a), zero(2));
        assert_eq!(a.to_rationals()[1], BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn pi_power_relation() {
        let e = 3;
        let pi = pi_pow(5, e, 1);
        let cube = mul(5, &mul(5, &pi, &pi), &pi);
        assert_eq!(cube, constant(e, q(5)));
        let inv = pi_pow(5, e, -1);
        assert_eq!(mul(5, &pi, &inv), constant(e, q(1)));
        assert_eq!(valuation(5, &inv), Some(-1));
    }

    #[test]
    fn coordinate_reduction() {
        // 1/3 mod 8 = 3
        assert_eq!(reduce_coordinate(&from(&[(1, 3)]), 0, 8), 3);
        assert_eq!(reduce_coordinate(&from(&[(-1, 1)]), 0, 9), 8);
    }
}
