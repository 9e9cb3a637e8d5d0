//! Enumeration of the finite groups `K/K_m = G(o/π^m)` and `K_m/K_{m+c}`.

use alloc::vec;
use alloc::vec::Vec;

use super::{GroupElement, GroupSpec, ResidueMatrix};
use crate::error::{Error, Result};
use crate::localfield::ResidueElement;
use crate::matrix::Matrix;

/// Default number of candidate residue matrices an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

fn check_budget(q: u32, exponent: u32, budget: u64) -> Result<()> {
    let needed = (q as u128).checked_pow(exponent).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// All elements of `o/π^N` in digit order.
pub(crate) fn residue_ring_elements(spec: &GroupSpec, precision: u32) -> Vec<ResidueElement> {
    let q = spec.field.q();
    let count = (q as usize).pow(precision);
    let mut digits = vec![0u32; precision as usize];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(ResidueElement::from_digits(&spec.field, precision, &digits));
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Calls `visit` on every `n×n` matrix with entries from `elems`.
fn for_each_matrix(n: usize, elems: &[ResidueElement], mut visit: impl FnMut(ResidueMatrix)) {
    let mut idx = vec![0usize; n * n];
    loop {
        visit(Matrix::from_vec(n, n, idx.iter().map(|&i| elems[i].clone()).collect()));
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

impl GroupSpec {
    /// `G(o/π^m)` as residue matrices at precision `m`.
    pub fn enumerate_residue_classes(&self, m: u32, budget: u64) -> Result<Vec<ResidueMatrix>> {
        if m == 0 {
            return Ok(vec![self.residue_identity(0)]);
        }
        crate::localfield::check_precision(&self.field, m)?;
        check_budget(self.field.q(), m * (self.n * self.n) as u32, budget)?;
        let elems = residue_ring_elements(self, m);
        let mut out = Vec::new();
        for_each_matrix(self.n, &elems, |r| {
            if self.residue_in_group(&r) {
                out.push(r);
            }
        });
        Ok(out)
    }

    /// Canonical lifts of the classes of `K/K_m`.
    pub fn enumerate_residue(&self, m: u32, budget: u64) -> Result<Vec<GroupElement>> {
        self.enumerate_residue_classes(m, budget)?.iter().map(|r| self.lift(r)).collect()
    }

    /// `K_m/K_{m+c}` as residue matrices at precision `m + c`. For `m = 0`
    /// this is `K/K_c`.
    pub fn enumerate_kernel_classes(&self, m: u32, c: u32, budget: u64) -> Result<Vec<ResidueMatrix>> {
        if m == 0 {
            return self.enumerate_residue_classes(c, budget);
        }
        let precision = m + c;
        if c == 0 {
            return Ok(vec![self.residue_identity(precision)]);
        }
        crate::localfield::check_precision(&self.field, precision)?;
        check_budget(self.field.q(), c * (self.n * self.n) as u32, budget)?;
        let shifted: Vec<ResidueElement> = residue_ring_elements(self, c)
            .iter()
            .map(|x| {
                let mut digits = vec![0u32; m as usize];
                digits.extend(x.to_digits());
                ResidueElement::from_digits(&self.field, precision, &digits)
            })
            .collect();
        let one = ResidueElement::one(&self.field, precision);
        let n = self.n;
        let mut out = Vec::new();
        for_each_matrix(n, &shifted, |mut r| {
            for i in 0..n {
                let x = r.get(i, i).add(&one);
                r.set(i, i, x);
            }
            if self.residue_in_group(&r) {
                out.push(r);
            }
        });
        Ok(out)
    }

    /// Lifts of `K_m/K_{m+c}` into `K_m`.
    pub fn enumerate_kernel(&self, m: u32, c: u32, budget: u64) -> Result<Vec<GroupElement>> {
        self.enumerate_kernel_classes(m, c, budget)?.iter().map(|r| self.lift(r)).collect()
    }
}
