//! The level-`m` Hecke algebra `H(G, K_m)` with `μ(K_m) = 1`.
//!
//! A double coset `K_m g K_m` with `g = a·n_τ·b` is labelled by `τ` and the
//! residue pair `([a], [b]) ∈ (K/K_m)²`, normalized to the minimum of its
//! orbit under the stabilizer
//!
//! `Γ_τ = {([x], [n_τ^{-1} x n_τ]) : x ∈ K ∩ n_τ K n_τ^{-1}}`,
//!
//! which acts by `([a], [b]) ↦ ([a x], [y^{-1} b])`.

mod algebra;
mod element;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::localfield::ResidueElement;
use crate::matgrp::enumerate_residue_ring;
use crate::matgrp::{format_residue_matrix, CartanDatum, Family, GroupElement, GroupSpec, Level, ResidueMatrix};
use crate::matrix::Matrix;

pub use algebra::{Convolution, ProductCache};
pub use element::{CoeffRing, HeckeElement};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubleCosetLabel {
    pub tau: CartanDatum,
    pub a: ResidueMatrix,
    pub b: ResidueMatrix,
}

impl fmt::Display for DoubleCosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.tau)?;
        if self.a.get(0, 0).precision() > 0 {
            write!(f, "[{};{}]", format_residue_matrix(&self.a), format_residue_matrix(&self.b))?;
        }
        Ok(())
    }
}

/// `Γ_τ` as pairs `([x], [y])`, together with `[y]^{-1}` for the action.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    pairs: Vec<(ResidueMatrix, ResidueMatrix)>,
    acting: Vec<(ResidueMatrix, ResidueMatrix)>,
}

impl Stabilizer {
    pub fn pairs(&self) -> &[(ResidueMatrix, ResidueMatrix)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub tau: CartanDatum,
    /// One label per `K_m`-double coset inside `K n_τ K`, sorted.
    pub reps: Vec<DoubleCosetLabel>,
    pub gamma: Vec<(ResidueMatrix, ResidueMatrix)>,
}

/// `H(G, K_m)` over one field model, with the finite data it needs
/// precomputed: `K/K_m` and the stabilizers `Γ_τ`, which only depend on
/// the differences `a_i - a_j` capped at `m`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    spec: GroupSpec,
    level: u32,
    budget: u64,
    residue_classes: Vec<ResidueMatrix>,
    stabilizers: BTreeMap<Vec<u32>, Stabilizer>,
}

impl HeckeAlgebra {
    pub fn new(spec: GroupSpec, level: u32, budget: u64) -> Result<Self> {
        let residue_classes = spec.enumerate_residue_classes(level, budget)?;
        let mut alg = HeckeAlgebra { spec, level, budget, residue_classes, stabilizers: BTreeMap::new() };
        for pattern in alg.patterns() {
            let stab = alg.compute_stabilizer(&pattern)?;
            alg.stabilizers.insert(pattern, stab);
        }
        Ok(alg)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// `K/K_m` as residue matrices at precision `m`.
    pub fn residue_classes(&self) -> &[ResidueMatrix] {
        &self.residue_classes
    }

    fn pattern_of(&self, tau: &CartanDatum) -> Vec<u32> {
        tau.upper_differences().iter().map(|&d| d.min(self.level)).collect()
    }

    /// Every capped difference pattern, from capped adjacent differences.
    fn patterns(&self) -> Vec<Vec<u32>> {
        let n = self.spec.n();
        let m = self.level;
        let steps = n - 1;
        let mut out = Vec::new();
        let count = (m as usize + 1).pow(steps as u32);
        for mut idx in 0..count {
            let adj: Vec<u32> = (0..steps)
                .map(|_| {
                    let d = (idx % (m as usize + 1)) as u32;
                    idx /= m as usize + 1;
                    d
                })
                .collect();
            let mut pattern = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    pattern.push(adj[i..j].iter().sum::<u32>().min(m));
                }
            }
            out.push(pattern);
        }
        out.sort();
        out.dedup();
        out
    }

    fn compute_stabilizer(&self, pattern: &[u32]) -> Result<Stabilizer> {
        let n = self.spec.n();
        let m = self.level;
        let elems = enumerate_residue_ring(&self.spec, m);
        let total = (elems.len() as u128).pow((n * n) as u32);
        if total > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed: total, budget: self.budget });
        }
        let mut diff = vec![vec![0u32; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                diff[i][j] = pattern[k];
                diff[j][i] = pattern[k];
                k += 1;
            }
        }
        let mut pairs = Vec::new();
        let mut idx = vec![0usize; n * n];
        loop {
            let x = Matrix::from_fn(n, n, |i, j| {
                let p = &elems[idx[i * n + j]];
                if i < j {
                    p.shift(diff[i][j])
                } else {
                    p.clone()
                }
            });
            if self.spec.residue_in_group(&x) {
                let y = Matrix::from_fn(n, n, |i, j| {
                    let p = &elems[idx[i * n + j]];
                    if i > j {
                        p.shift(diff[i][j])
                    } else {
                        p.clone()
                    }
                });
                pairs.push((x, y));
            }
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
        pairs.sort();
        let acting = pairs.iter().map(|(x, y)| (x.clone(), residue_inverse(y))).collect();
        Ok(Stabilizer { pairs, acting })
    }

    pub fn stabilizer(&self, tau: &CartanDatum) -> &Stabilizer {
        &self.stabilizers[&self.pattern_of(tau)]
    }

    /// Canonical label of `K_m·a n_τ b·K_m` from `[a], [b]` mod `π^m`.
    pub fn label_from_pair(&self, tau: &CartanDatum, a: &ResidueMatrix, b: &ResidueMatrix) -> DoubleCosetLabel {
        let stab = self.stabilizer(tau);
        let id = self.spec.residue_identity(self.level);
        let mut best: Option<((ResidueMatrix, ResidueMatrix), (ResidueMatrix, ResidueMatrix))> = None;
        for (x, y_inv) in &stab.acting {
            let cand = (a.mul(x), y_inv.mul(b));
            let key = (cand.0.sub(&id), cand.1.sub(&id));
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, cand));
            }
        }
        let (_, (a, b)) = best.expect("Γ_τ contains the identity");
        DoubleCosetLabel { tau: tau.clone(), a, b }
    }

    pub fn classify(&self, g: &GroupElement) -> Result<DoubleCosetLabel> {
        let c = self.spec.cartan(g)?;
        let a = self.spec.reduce(&c.a, self.level)?;
        let b = self.spec.reduce(&c.b, self.level)?;
        Ok(self.label_from_pair(&c.tau, &a, &b))
    }

    /// `lift(a)·n_τ·lift(b)`.
    pub fn label_rep(&self, label: &DoubleCosetLabel) -> GroupElement {
        let a = self.spec.lift(&label.a).expect("labels hold group residues");
        let b = self.spec.lift(&label.b).expect("labels hold group residues");
        a.mul(&self.spec.n_of_tau(&label.tau)).mul(&b)
    }

    /// Label of `t_k` for a residue class `k ∈ K/K_m`.
    pub fn residue_label(&self, k: &ResidueMatrix) -> DoubleCosetLabel {
        let tau = CartanDatum::zero(self.spec.n());
        self.label_from_pair(&tau, k, &self.spec.residue_identity(self.level))
    }

    pub fn tau_label(&self, tau: &CartanDatum) -> DoubleCosetLabel {
        let id = self.spec.residue_identity(self.level);
        self.label_from_pair(tau, &id, &id)
    }

    /// `deg t_g = [K_m : K_m ∩ g K_m g^{-1}]`, the number of left `K_m`-cosets
    /// in `K_m g K_m`.
    pub fn degree(&self, label: &DoubleCosetLabel) -> Result<u64> {
        if self.level == 0 {
            return Ok(self.left_cosets_by_sweep(&self.spec.n_of_tau(&label.tau))?.len() as u64);
        }
        let exp: u32 = label.tau.upper_differences().iter().sum();
        Ok((self.spec.field().q() as u64).pow(exp))
    }

    /// Representatives `α_i` with `K_m g K_m = ⊔ α_i K_m`.
    ///
    /// For `m ≥ 1` these are `a·u·n_τ·b` with `u = 1 + π^m Σ_{i<j} u_ij E_ij`,
    /// `u_ij ∈ o/π^{a_i - a_j}`. At `m = 0`, or if that family is not a
    /// transversal, the sweep over `K_m/K_{m+2‖τ‖}` is used instead.
    pub fn left_cosets(&self, g: &GroupElement) -> Result<Vec<GroupElement>> {
        if self.level == 0 {
            return self.left_cosets_by_sweep(g);
        }
        let c = self.spec.cartan(g)?;
        let out = self.structured_cosets(&c.a, &c.tau, &c.b)?;
        if self.spec.n() > 2 && !self.pairwise_inequivalent(&out) {
            return self.left_cosets_by_sweep(g);
        }
        Ok(out)
    }

    fn structured_cosets(&self, a: &GroupElement, tau: &CartanDatum, b: &GroupElement) -> Result<Vec<GroupElement>> {
        let n = self.spec.n();
        let field = self.spec.field();
        let diffs = tau.upper_differences();
        let exp: u32 = diffs.iter().sum();
        let count = (field.q() as u128).checked_pow(exp).unwrap_or(u128::MAX);
        if count > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed: count, budget: self.budget });
        }
        let choices: Vec<Vec<crate::localfield::FieldElement>> = diffs
            .iter()
            .map(|&d| {
                let pim = field.uniformizer_pow(self.level as i64);
                enumerate_residue_ring(&self.spec, d).iter().map(|r| r.lift().mul(&pim)).collect()
            })
            .collect();
        let nt = self.spec.n_of_tau(tau);
        let tail = nt.mul(b);
        let mut out = Vec::with_capacity(count as usize);
        let mut idx = vec![0usize; diffs.len()];
        loop {
            let mut mat = Matrix::identity_like(n, &field.one());
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    mat.set(i, j, choices[k][idx[k]].clone());
                    k += 1;
                }
            }
            let u = GroupElement::new(mat).expect("unipotent");
            out.push(a.mul(&u).mul(&tail));
            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
        Ok(out)
    }

    fn pairwise_inequivalent(&self, reps: &[GroupElement]) -> bool {
        let inverses: Vec<GroupElement> = reps.iter().map(GroupElement::inverse).collect();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if self.spec.membership(&inverses[i].mul(&reps[j]), Level::Congruence(self.level)) {
                    return false;
                }
            }
        }
        true
    }

    /// Left cosets by sweeping `a·k·n_τ·b` over `k ∈ K_m/K_{m+c}`, `c = 2‖τ‖`,
    /// keeping one `k` per class of `K_m/(K_m ∩ n_τ K_m n_τ^{-1})`.
    pub fn left_cosets_by_sweep(&self, g: &GroupElement) -> Result<Vec<GroupElement>> {
        let c = self.spec.cartan(g)?;
        let m = self.level;
        let width = 2 * c.tau.norm();
        let precision = m + width;
        let kernel = self.spec.enumerate_kernel_classes(m, width, self.budget)?;
        let a_tau = c.tau.entries();
        let n = self.spec.n();
        let mut kept: Vec<(ResidueMatrix, ResidueMatrix)> = Vec::new();
        for k in kernel {
            let fresh = kept.iter().all(|(_, k_inv)| {
                let kappa = k_inv.mul(&k);
                !(0..n).all(|r| {
                    (0..n).all(|s| {
                        let mut x = kappa.get(r, s).clone();
                        if r == s {
                            x = x.sub(&ResidueElement::one(self.spec.field(), precision));
                        }
                        let need = m as i64 + a_tau[r] - a_tau[s];
                        x.valuation().is_none_or(|v| v as i64 >= need)
                    })
                })
            });
            if fresh {
                let inv = residue_inverse(&k);
                kept.push((k, inv));
            }
        }
        let tail = self.spec.n_of_tau(&c.tau).mul(&c.b);
        kept.iter()
            .map(|(k, _)| Ok(c.a.mul(&self.spec.lift(k)?).mul(&tail)))
            .collect()
    }

    /// `K_m g K_m = K_m h K_m`, decided by searching `k ∈ K_m/K_{m+2‖τ‖}`
    /// with `h^{-1} k g ∈ K_m`.
    pub fn dc_equal(&self, g: &GroupElement, h: &GroupElement) -> Result<bool> {
        let cg = self.spec.cartan(g)?;
        let ch = self.spec.cartan(h)?;
        if cg.tau != ch.tau {
            return Ok(false);
        }
        let width = 2 * cg.tau.norm();
        let h_inv = h.inverse();
        for k in self.spec.enumerate_kernel(self.level, width, self.budget)? {
            if self.spec.membership(&h_inv.mul(&k).mul(g), Level::Congruence(self.level)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `X_τ` and `Γ_τ`.
    pub fn orbit_table(&self, tau: &CartanDatum) -> Result<OrbitTable> {
        let classes = &self.residue_classes;
        let needed = (classes.len() as u128).pow(2);
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        let mut reps = alloc::collections::BTreeSet::new();
        for a in classes {
            for b in classes {
                reps.insert(self.label_from_pair(tau, a, b));
            }
        }
        Ok(OrbitTable {
            tau: tau.clone(),
            reps: reps.into_iter().collect(),
            gamma: self.stabilizer(tau).pairs.clone(),
        })
    }

    /// All labels with `‖τ‖ ≤ bound`, sorted.
    pub fn window_labels(&self, bound: u32) -> Result<Vec<DoubleCosetLabel>> {
        let mut out = Vec::new();
        for tau in self.spec.dominant_taus(bound) {
            out.extend(self.orbit_table(&tau)?.reps);
        }
        out.sort();
        Ok(out)
    }

    /// The cocharacters `Σ` of the generating set: `0`, the fundamental
    /// coweights (for `GL_n` also `-ω_n`), or for `SL_n` the indecomposable
    /// dominant trace-zero cocharacters.
    pub fn generator_taus(&self) -> Vec<CartanDatum> {
        let n = self.spec.n();
        let mut out = vec![CartanDatum::zero(n)];
        match self.spec.family() {
            Family::GL => {
                for k in 1..=n {
                    out.push(CartanDatum((0..n).map(|i| i64::from(i < k)).collect()));
                }
                out.push(CartanDatum(vec![-1; n]));
            }
            Family::SL => out.extend(sl_hilbert_basis(n)),
        }
        out
    }

    /// The generating set `{t_{n_τ} : τ ∈ Σ} ∪ {t_k : k ∈ K/K_m}`, with
    /// `t_{n_0} = t_1` listed once.
    pub fn generators(&self) -> Vec<DoubleCosetLabel> {
        let mut out: Vec<DoubleCosetLabel> = self.residue_classes.iter().map(|k| self.residue_label(k)).collect();
        for tau in self.generator_taus() {
            if !tau.is_zero() {
                out.push(self.tau_label(&tau));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub(crate) fn describe(&self) -> String {
        format!("H({}, K_{})", self.spec, self.level)
    }
}

/// Inverse of a residue matrix with unit determinant.
pub(crate) fn residue_inverse(r: &ResidueMatrix) -> ResidueMatrix {
    let d = r.det();
    if d.precision() == 0 {
        return r.clone();
    }
    let d_inv = d.inverse().expect("residue group element");
    r.inverse_with_det_inverse(&d_inv)
}

/// Indecomposable elements of the monoid of dominant `τ` with `Σ a_i = 0`,
/// found among those with adjacent differences at most `n`.
fn sl_hilbert_basis(n: usize) -> Vec<CartanDatum> {
    let steps = n - 1;
    let bound = n as i64;
    let mut cone: Vec<Vec<i64>> = Vec::new();
    let count = (bound as usize + 1).pow(steps as u32);
    for mut idx in 0..count {
        let c: Vec<i64> = (0..steps)
            .map(|_| {
                let d = (idx % (bound as usize + 1)) as i64;
                idx /= bound as usize + 1;
                d
            })
            .collect();
        // a_i = a_n + Σ_{k ≥ i} c_k with Σ a_i = 0 requires n | Σ k·c_k.
        let weighted: i64 = c.iter().enumerate().map(|(k, &ck)| (k as i64 + 1) * ck).sum();
        if weighted % n as i64 != 0 || c.iter().all(|&x| x == 0) {
            continue;
        }
        let mut a = vec![0i64; n];
        for i in (0..steps).rev() {
            a[i] = a[i + 1] + c[i];
        }
        let shift = a.iter().sum::<i64>() / n as i64;
        cone.push(a.iter().map(|x| x - shift).collect());
    }
    let in_cone = |v: &[i64]| v.windows(2).all(|w| w[0] >= w[1]) && v.iter().any(|&x| x != 0);
    let decomposable = |v: &Vec<i64>| {
        cone.iter().any(|u| {
            let rest: Vec<i64> = v.iter().zip(u).map(|(a, b)| a - b).collect();
            u != v && in_cone(&rest)
        })
    };
    let mut out: Vec<CartanDatum> = cone.iter().filter(|v| !decomposable(v)).map(|v| CartanDatum(v.clone())).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests;
