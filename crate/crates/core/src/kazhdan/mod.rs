//! Transport of elements, Hecke basis labels and windowed modules between
//! the two sides of a [`ClosePair`], and the checks that the transport
//! preserves structure constants.

mod module;
mod verify;

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hecke::{DoubleCosetLabel, HeckeAlgebra, HeckeElement};
use crate::localfield::ClosePair;
use crate::matgrp::{CartanDatum, CartanFactorization, Family, GroupElement, GroupSpec, ResidueMatrix};
use crate::random::random_km;

pub use module::{check_lattice_stability, transport_module, IntegralSubring, WindowedModule};
pub use verify::{verify_algebra_map, Counterexample, MatchedConstant, Report, SweepPoint, TauSummary};

/// `n_C = m + 2·max_{τ ∈ C} ‖τ‖`: conjugation by any `g ∈ K n_τ K`, `τ ∈ C`,
/// maps `K_{n_C}` into `K_m`.
pub fn safety_bound(taus: &[CartanDatum], m: u32) -> u32 {
    m + 2 * taus.iter().map(CartanDatum::norm).max().unwrap_or(0)
}

/// Both Hecke algebras of a close pair, the working precision `N` and the
/// window `B`.
#[derive(Clone, Debug)]
pub struct TransportContext {
    pair: ClosePair,
    source: HeckeAlgebra,
    target: HeckeAlgebra,
    precision: u32,
    window: u32,
    certified: bool,
}

impl TransportContext {
    pub fn new(
        pair: ClosePair,
        family: Family,
        n: usize,
        level: u32,
        precision: u32,
        window: u32,
        budget: u64,
    ) -> Result<Self> {
        Self::check_precision(&pair, level, precision)?;
        let source = HeckeAlgebra::new(GroupSpec::new(family, n, pair.source().clone())?, level, budget)?;
        let target = HeckeAlgebra::new(GroupSpec::new(family, n, pair.target().clone())?, level, budget)?;
        Ok(TransportContext { pair, source, target, precision, window, certified: true })
    }

    pub fn from_algebras(
        pair: ClosePair,
        source: HeckeAlgebra,
        target: HeckeAlgebra,
        precision: u32,
        window: u32,
    ) -> Result<Self> {
        if source.spec().field() != pair.source() || target.spec().field() != pair.target() {
            return Err(Error::FieldMismatch);
        }
        if source.spec().family() != target.spec().family()
            || source.spec().n() != target.spec().n()
            || source.level() != target.level()
        {
            return Err(Error::InvalidGroup("both sides need the same family, rank and level".into()));
        }
        Self::check_precision(&pair, source.level(), precision)?;
        Ok(TransportContext { pair, source, target, precision, window, certified: true })
    }

    fn check_precision(pair: &ClosePair, level: u32, precision: u32) -> Result<()> {
        if precision > pair.closeness() {
            return Err(Error::PrecisionExceeded { requested: precision, available: pair.closeness() });
        }
        if precision < level.max(1) {
            return Err(Error::InsufficientCloseness { needed: level.max(1), available: precision });
        }
        Ok(())
    }

    /// Drops the `N ≥ m + 2‖τ‖` guard, for measuring how far below the
    /// certified bound the transport still behaves.
    pub fn uncertified(mut self) -> Self {
        self.certified = false;
        self
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn pair(&self) -> &ClosePair {
        &self.pair
    }

    pub fn source(&self) -> &HeckeAlgebra {
        &self.source
    }

    pub fn target(&self) -> &HeckeAlgebra {
        &self.target
    }

    pub fn level(&self) -> u32 {
        self.source.level()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    /// The transport in the opposite direction.
    pub fn inverse(&self) -> TransportContext {
        TransportContext {
            pair: self.pair.inverse(),
            source: self.target.clone(),
            target: self.source.clone(),
            precision: self.precision,
            window: self.window,
            certified: self.certified,
        }
    }

    fn check_tau(&self, tau: &CartanDatum) -> Result<()> {
        let needed = safety_bound(core::slice::from_ref(tau), self.level());
        if self.certified && needed > self.precision {
            return Err(Error::InsufficientCloseness { needed, available: self.precision });
        }
        Ok(())
    }

    /// `λ_N` entrywise.
    pub fn lambda_matrix(&self, r: &ResidueMatrix) -> Result<ResidueMatrix> {
        r.try_map(|x| self.pair.apply(x))
    }

    /// `lift'(λ_N(a mod π^N))·n'_τ·lift'(λ_N(b mod π^N))` for a given
    /// factorization `g = a·n_τ·b`.
    pub fn transport_factorization(&self, c: &CartanFactorization) -> Result<GroupElement> {
        self.check_tau(&c.tau)?;
        let src = self.source.spec();
        let dst = self.target.spec();
        let a = dst.lift(&self.lambda_matrix(&src.reduce(&c.a, self.precision)?)?)?;
        let b = dst.lift(&self.lambda_matrix(&src.reduce(&c.b, self.precision)?)?)?;
        Ok(a.mul(&dst.n_of_tau(&c.tau)).mul(&b))
    }

    pub fn transport_element(&self, g: &GroupElement) -> Result<GroupElement> {
        self.transport_factorization(&self.source.spec().cartan(g)?)
    }

    pub fn transport_label(&self, label: &DoubleCosetLabel) -> Result<DoubleCosetLabel> {
        self.check_tau(&label.tau)?;
        let g = self.transport_element(&self.source.label_rep(label))?;
        self.target.classify(&g)
    }

    pub fn transport_hecke(&self, f: &HeckeElement) -> Result<HeckeElement> {
        f.relabel(|l| self.transport_label(l))
    }

    /// Transported labels of `trials` random refactorizations
    /// `k_1·g·k_2 = a·n_τ·b` (`k_i ∈ K_m`, random pivots), deduplicated.
    pub fn witness_labels<R: Rng + ?Sized>(
        &self,
        label: &DoubleCosetLabel,
        trials: usize,
        rng: &mut R,
    ) -> Result<Vec<DoubleCosetLabel>> {
        let spec = self.source.spec();
        let rep = self.source.label_rep(label);
        let mut out = Vec::new();
        for _ in 0..trials {
            let m = self.level();
            let g = random_km(spec, m, rng).mul(&rep).mul(&random_km(spec, m, rng));
            let c = spec.cartan_randomized(&g, rng)?;
            let l = self.target.classify(&self.transport_factorization(&c)?)?;
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether `λ_m(Γ_τ) = Γ_{τ'}` as sets of residue pairs.
    pub fn gamma_compatible(&self, tau: &CartanDatum) -> Result<bool> {
        let m = self.level();
        let mut image = Vec::new();
        for (x, y) in self.source.stabilizer(tau).pairs() {
            let lx = self.lambda_matrix(&truncate(x, m))?;
            let ly = self.lambda_matrix(&truncate(y, m))?;
            image.push((lx, ly));
        }
        image.sort();
        Ok(image.as_slice() == self.target.stabilizer(tau).pairs())
    }
}

fn truncate(r: &ResidueMatrix, precision: u32) -> ResidueMatrix {
    r.map(|x| x.truncate(precision))
}

#[cfg(test)]
mod tests;
