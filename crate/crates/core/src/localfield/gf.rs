//! Arithmetic in the residue field `F_{p^f}`.
//!
//! Elements are encoded as integers `Σ c_i p^i` in `[0, q)`, where `c_i` is the
//! coefficient of `x^i` in the polynomial representative. The modulus is the
//! first primitive monic polynomial of degree `f` in lexicographic order, so
//! multiplication goes through exp/log tables of the generator `x`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    f: u32,
    q: u32,
    /// Low coefficients `c_0..c_{f-1}` of the modulus `x^f + Σ c_i x^i`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GaloisField {
    pub fn new(p: u32, f: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidModel(format!("{p} is not prime")));
        }
        if f == 0 {
            return Err(Error::InvalidModel("residue degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(f).filter(|&q| q <= MAX_ORDER).ok_or_else(|| {
            Error::Unsupported(format!("residue field of order {p}^{f} is too large"))
        })? as u32;
        let mut field = GaloisField { p, f, q, modulus: vec![0; f as usize], exp: Vec::new(), log: Vec::new() };
        if f == 1 {
            let g = (1..p.max(2)).find(|&g| multiplicative_order(g as u64, p as u64) == (p - 1) as u64);
            let g = g.unwrap_or(1);
            field.modulus[0] = (p - g) % p;
            field.build_tables_from(|a| ((a as u64 * g as u64) % p as u64) as u32);
            return Ok(field);
        }
        for tail in 0..q {
            if tail % p == 0 {
                continue;
            }
            field.modulus = digits_of(tail, p, f);
            if field.try_build_tables() {
                return Ok(field);
            }
        }
        Err(Error::InvalidModel(format!("no primitive polynomial of degree {f} over F_{p}")))
    }

    fn build_tables_from(&mut self, times_generator: impl Fn(u32) -> u32) {
        let order = (self.q - 1) as usize;
        self.exp = Vec::with_capacity(order);
        self.log = vec![0; self.q as usize];
        let mut cur = 1u32;
        for k in 0..order {
            self.exp.push(cur);
            self.log[cur as usize] = k as u32;
            cur = times_generator(cur);
        }
    }

    fn try_build_tables(&mut self) -> bool {
        let order = (self.q - 1) as usize;
        let mut seen = vec![false; self.q as usize];
        let mut cur = 1u32;
        for _ in 0..order {
            if seen[cur as usize] || cur == 0 {
                return false;
            }
            seen[cur as usize] = true;
            cur = self.times_x(cur);
        }
        if cur != 1 {
            return false;
        }
        let this = self.clone();
        self.build_tables_from(|a| this.times_x(a));
        true
    }

    fn times_x(&self, a: u32) -> u32 {
        let p = self.p;
        let d = digits_of(a, p, self.f);
        let top = d[self.f as usize - 1];
        let mut out = vec![0u32; self.f as usize];
        for i in (1..self.f as usize).rev() {
            out[i] = d[i - 1];
        }
        for (i, c) in self.modulus.iter().enumerate() {
            out[i] = (out[i] + p - (top * c) % p) % p;
        }
        from_digits(&out, p)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// The class of `x`, a multiplicative generator when `f > 1`.
    pub fn generator(&self) -> u32 {
        if self.f == 1 {
            self.exp.get(1).copied().unwrap_or(1)
        } else {
            self.p
        }
    }

    pub fn coefficients(&self, a: u32) -> Vec<u32> {
        digits_of(a, self.p, self.f)
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.f == 1 {
            return (self.p - a) % self.p;
        }
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let k = (self.log[a as usize] + self.log[b as usize]) % order;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        let k = (order - self.log[a as usize]) % order;
        Some(self.exp[k as usize])
    }
}

fn digits_of(mut a: u32, p: u32, f: u32) -> Vec<u32> {
    let mut out = vec![0; f as usize];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn multiplicative_order(g: u64, p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut cur = g % p;
    let mut k = 1;
    while cur != 1 {
        if cur == 0 || k > p {
            return 0;
        }
        cur = cur * g % p;
        k += 1;
    }
    k
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, f) in [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2)] {
            let k = GaloisField::new(p, f).unwrap();
            let q = k.order();
            for a in 0..q {
                assert_eq!(k.add(a, k.neg(a)), 0);
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in 0..q {
                        let lhs = k.mul(a, k.add(b, c));
                        let rhs = k.add(k.mul(a, b), k.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn f4_generator_satisfies_modulus() {
        let k = GaloisField::new(2, 2).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        let x = k.generator();
        let x2 = k.mul(x, x);
        assert_eq!(k.add(k.add(x2, x), 1), 0);
    }

    #[test]
    fn rejects_composite() {
        assert!(GaloisField::new(4, 1).is_err());
    }
}
