//! Finite-rank modules over the windowed generators, and lattices in them.

use alloc::collections::BTreeMap;
use alloc::format;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::TransportContext;
use crate::error::{Error, Result};
use crate::hecke::{CoeffRing, Convolution, DoubleCosetLabel, HeckeAlgebra};
use crate::matrix::Matrix;

/// A module of rank `d` given by one `d×d` matrix per generator label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowedModule {
    ring: CoeffRing,
    rank: usize,
    action: BTreeMap<DoubleCosetLabel, Matrix<BigRational>>,
}

impl WindowedModule {
    pub fn new(
        ring: CoeffRing,
        rank: usize,
        action: impl IntoIterator<Item = (DoubleCosetLabel, Matrix<BigRational>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, m) in action {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "generator {label} acts by a {}x{} matrix on a module of rank {rank}",
                    m.rows(),
                    m.cols()
                )));
            }
            map.insert(label, m.try_map(|c| ring.normalize(c))?);
        }
        Ok(WindowedModule { ring, rank, action: map })
    }

    /// The rank-one module on which `t_g` acts by `deg t_g`.
    pub fn trivial(alg: &HeckeAlgebra, ring: CoeffRing, labels: &[DoubleCosetLabel]) -> Result<Self> {
        let mut action = alloc::vec::Vec::new();
        for l in labels {
            let d = BigRational::from_integer(BigInt::from(alg.degree(l)?));
            action.push((l.clone(), Matrix::from_vec(1, 1, alloc::vec![d])));
        }
        Self::new(ring, 1, action)
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self) -> &BTreeMap<DoubleCosetLabel, Matrix<BigRational>> {
        &self.action
    }

    /// Whether `A_g A_h = Σ_x c_x A_x` for every product whose labels all
    /// act on the module. Returns the number of relations checked, or `None`
    /// if one fails.
    pub fn satisfies_relations<'a>(&self, products: impl IntoIterator<Item = &'a Convolution>) -> Option<usize> {
        let mut checked = 0;
        for conv in products {
            let (Some(a), Some(b)) = (self.action.get(&conv.g), self.action.get(&conv.h)) else { continue };
            if !conv.terms.keys().all(|x| self.action.contains_key(x)) {
                continue;
            }
            let zero = BigRational::from_integer(BigInt::from(0));
            let mut rhs = Matrix::from_fn(self.rank, self.rank, |_, _| zero.clone());
            for (x, c) in &conv.terms {
                let c = BigRational::from_integer(BigInt::from(*c));
                rhs = rhs.add(&self.action[x].scale(&c));
            }
            let lhs = a.mul(b).map(|e| self.ring.normalize(e).expect("ring element"));
            let rhs = rhs.map(|e| self.ring.normalize(e).expect("ring element"));
            if lhs != rhs {
                return None;
            }
            checked += 1;
        }
        Some(checked)
    }
}

/// Relabels the generators along the transport; the matrices are unchanged.
pub fn transport_module(module: &WindowedModule, ctx: &TransportContext) -> Result<WindowedModule> {
    let mut action = BTreeMap::new();
    for (label, m) in &module.action {
        action.insert(ctx.transport_label(label)?, m.clone());
    }
    Ok(WindowedModule { ring: module.ring.clone(), rank: module.rank, action })
}

/// The integral subring `R_0` of `Q` against which lattices are tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntegralSubring {
    Integers,
    /// `Z_(l)`, rationals with denominator prime to `l`.
    LocalizedAt(u64),
}

impl IntegralSubring {
    pub fn contains(&self, x: &BigRational) -> bool {
        match self {
            IntegralSubring::Integers => x.is_integer(),
            IntegralSubring::LocalizedAt(l) => x.denom().gcd(&BigInt::from(*l)).is_one(),
        }
    }
}

/// Whether the `R_0`-span of the columns of `basis` is stable under every
/// generator, i.e. every `B^{-1} A B` has entries in `R_0`.
pub fn check_lattice_stability(module: &WindowedModule, basis: &Matrix<BigRational>, subring: IntegralSubring) -> Result<bool> {
    if module.ring != CoeffRing::Rationals {
        return Err(Error::Unsupported(format!("lattices need coefficients in Q, not {}", module.ring)));
    }
    if basis.rows() != module.rank || basis.cols() != module.rank {
        return Err(Error::DimensionMismatch(format!("lattice basis must be {0}x{0}", module.rank)));
    }
    let inv = basis.inverse().ok_or(Error::SingularBasis)?;
    for a in module.action.values() {
        let conj = inv.mul(a).mul(basis);
        if !conj.entries().iter().all(|x| subring.contains(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}
