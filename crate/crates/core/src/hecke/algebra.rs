//! Structure constants `t_g * t_h = Σ_x c_x t_x`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{DoubleCosetLabel, HeckeAlgebra};
use crate::error::Result;
use crate::matgrp::GroupElement;

/// One product of basis elements, with enough data to audit it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convolution {
    pub g: DoubleCosetLabel,
    pub h: DoubleCosetLabel,
    pub deg_g: u64,
    pub deg_h: u64,
    /// `c_x = #{i : α_i^{-1} x ∈ K_m h K_m}`.
    pub terms: BTreeMap<DoubleCosetLabel, u64>,
    /// `#{(i, j) : α_i β_j ∈ K_m x K_m}`, which must equal `c_x · deg t_x`.
    pub pair_counts: BTreeMap<DoubleCosetLabel, u64>,
    pub degrees: BTreeMap<DoubleCosetLabel, u64>,
}

impl Convolution {
    pub fn coefficient(&self, x: &DoubleCosetLabel) -> u64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    /// `Σ_x c_x · deg t_x = deg t_g · deg t_h`.
    pub fn conserves_degree(&self) -> bool {
        let lhs: u128 = self.terms.iter().map(|(x, c)| *c as u128 * self.degrees[x] as u128).sum();
        lhs == self.deg_g as u128 * self.deg_h as u128
    }

    pub fn counts_consistent(&self) -> bool {
        self.terms.len() == self.pair_counts.len()
            && self.terms.iter().all(|(x, c)| self.pair_counts.get(x) == Some(&(c * self.degrees[x])))
    }

    /// Support labels with `‖τ‖ > bound`.
    pub fn outside_window(&self, bound: u32) -> Vec<&DoubleCosetLabel> {
        self.terms.keys().filter(|x| x.tau.norm() > bound).collect()
    }
}

impl HeckeAlgebra {
    pub fn structure_constants(&self, g: &DoubleCosetLabel, h: &DoubleCosetLabel) -> Result<Convolution> {
        let alphas = self.left_cosets(&self.label_rep(g))?;
        let betas = self.left_cosets(&self.label_rep(h))?;
        let mut pair_counts: BTreeMap<DoubleCosetLabel, u64> = BTreeMap::new();
        let mut witnesses: BTreeMap<DoubleCosetLabel, GroupElement> = BTreeMap::new();
        for alpha in &alphas {
            for beta in &betas {
                let x = alpha.mul(beta);
                let label = self.classify(&x)?;
                *pair_counts.entry(label.clone()).or_default() += 1;
                witnesses.entry(label).or_insert(x);
            }
        }
        let alpha_invs: Vec<GroupElement> = alphas.iter().map(GroupElement::inverse).collect();
        let mut terms = BTreeMap::new();
        let mut degrees = BTreeMap::new();
        for (label, x) in &witnesses {
            let mut c = 0u64;
            for inv in &alpha_invs {
                if &self.classify(&inv.mul(x))? == h {
                    c += 1;
                }
            }
            terms.insert(label.clone(), c);
            degrees.insert(label.clone(), self.degree(label)?);
        }
        Ok(Convolution {
            g: g.clone(),
            h: h.clone(),
            deg_g: alphas.len() as u64,
            deg_h: betas.len() as u64,
            terms,
            pair_counts,
            degrees,
        })
    }
}

/// Memoized structure constants for one algebra.
#[derive(Clone, Debug, Default)]
pub struct ProductCache {
    algebra: Option<String>,
    map: BTreeMap<(DoubleCosetLabel, DoubleCosetLabel), Convolution>,
}

impl ProductCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&mut self, alg: &HeckeAlgebra, g: &DoubleCosetLabel, h: &DoubleCosetLabel) -> Result<&Convolution> {
        let id = alg.describe();
        match &self.algebra {
            Some(existing) => assert_eq!(existing, &id, "product cache reused across algebras"),
            None => self.algebra = Some(id),
        }
        let key = (g.clone(), h.clone());
        if !self.map.contains_key(&key) {
            let conv = alg.structure_constants(g, h)?;
            self.map.insert(key.clone(), conv);
        }
        Ok(&self.map[&key])
    }

    pub fn products(&self) -> impl Iterator<Item = &Convolution> {
        self.map.values()
    }
}
