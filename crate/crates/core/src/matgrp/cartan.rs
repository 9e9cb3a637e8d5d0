//! Cartan decomposition `g = a·n_τ·b` by Smith normal form over `o`.

use alloc::vec::Vec;

use rand::Rng;

use super::{CartanDatum, Family, GroupElement, GroupSpec};
use crate::error::{Error, Result};
use crate::localfield::{FieldElement, Valuation};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanFactorization {
    pub a: GroupElement,
    pub tau: CartanDatum,
    pub b: GroupElement,
}

impl CartanFactorization {
    /// `a·n_τ·b`.
    pub fn product(&self, spec: &GroupSpec) -> GroupElement {
        self.a.mul(&spec.n_of_tau(&self.tau)).mul(&self.b)
    }
}

impl GroupSpec {
    /// Deterministic Cartan decomposition. Elements of `K` factor as `g·1·1`.
    pub fn cartan(&self, g: &GroupElement) -> Result<CartanFactorization> {
        self.check(g)?;
        if self.in_k(g) {
            let tau = CartanDatum::zero(self.n);
            return Ok(CartanFactorization { a: g.clone(), tau, b: self.identity() });
        }
        self.factor(g, &mut |_| 0)
    }

    /// Cartan decomposition with pivots drawn from `rng`. Different draws give
    /// different witnesses `a, b` for the same `τ`.
    pub fn cartan_randomized<R: Rng + ?Sized>(&self, g: &GroupElement, rng: &mut R) -> Result<CartanFactorization> {
        self.factor(g, &mut |len| rng.gen_range(0..len))
    }

    fn factor(&self, g: &GroupElement, choose: &mut dyn FnMut(usize) -> usize) -> Result<CartanFactorization> {
        self.check(g)?;
        let n = self.n;
        let field = &self.field;
        let mut cur = g.matrix().clone();
        let mut left = Matrix::identity_like(n, &field.one());
        let mut right = left.clone();
        let mut vals = Vec::with_capacity(n);
        let mut units = Vec::with_capacity(n);

        for k in 0..n {
            let mut best = Valuation::Infinity;
            let mut positions = Vec::new();
            for i in k..n {
                for j in k..n {
                    let v = cur.get(i, j).valuation();
                    if v < best {
                        best = v;
                        positions.clear();
                    }
                    if v == best {
                        positions.push((i, j));
                    }
                }
            }
            let Valuation::Finite(v) = best else {
                return Err(Error::Singular);
            };
            let (pi, pj) = positions[choose(positions.len())];
            // g = left·cur·right throughout.
            if pi != k {
                cur.swap_rows(k, pi);
                left.swap_cols(k, pi);
            }
            if pj != k {
                cur.swap_cols(k, pj);
                right.swap_rows(k, pj);
            }
            let pivot_inv = cur.get(k, k).inv().ok_or(Error::Singular)?;
            for r in k + 1..n {
                if cur.get(r, k).is_zero() {
                    continue;
                }
                let c = cur.get(r, k).mul(&pivot_inv);
                for s in k..n {
                    let x = cur.get(r, s).sub(&c.mul(cur.get(k, s)));
                    cur.set(r, s, x);
                }
                for i in 0..n {
                    let x = left.get(i, k).add(&c.mul(left.get(i, r)));
                    left.set(i, k, x);
                }
            }
            for s in k + 1..n {
                if cur.get(k, s).is_zero() {
                    continue;
                }
                let c = cur.get(k, s).mul(&pivot_inv);
                cur.set(k, s, field.zero());
                for j in 0..n {
                    let x = right.get(k, j).add(&c.mul(right.get(s, j)));
                    right.set(k, j, x);
                }
            }
            vals.push(v);
            units.push(cur.get(k, k).mul(&field.uniformizer_pow(-v)));
        }

        // Valuations come out non-decreasing; reverse them to get a dominant τ.
        let tau = CartanDatum(vals.iter().rev().copied().collect());
        let a_mat = Matrix::from_fn(n, n, |i, j| left.get(i, n - 1 - j).mul(&units[n - 1 - j]));
        let b_mat = Matrix::from_fn(n, n, |i, j| right.get(n - 1 - i, j).clone());
        let mut a = GroupElement::new(a_mat)?;
        let mut b = GroupElement::new(b_mat)?;
        if self.family == Family::SL {
            let d = a.det().clone();
            let d_inv = d.inv().ok_or(Error::Singular)?;
            a = scale_col0(&a, &d_inv);
            b = scale_row0(&b, &d);
        }
        Ok(CartanFactorization { a, tau, b })
    }
}

fn scale_col0(g: &GroupElement, c: &FieldElement) -> GroupElement {
    let mut m = g.matrix().clone();
    for i in 0..m.rows() {
        let x = m.get(i, 0).mul(c);
        m.set(i, 0, x);
    }
    GroupElement::from_parts(m, g.det().mul(c))
}

fn scale_row0(g: &GroupElement, c: &FieldElement) -> GroupElement {
    let mut m = g.matrix().clone();
    for j in 0..m.cols() {
        let x = m.get(0, j).mul(c);
        m.set(0, j, x);
    }
    GroupElement::from_parts(m, g.det().mul(c))
}
