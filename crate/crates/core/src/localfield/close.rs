use alloc::format;

use super::{Field, FieldKind, ResidueElement};
use crate::error::{Error, Result};

/// Two field models whose truncated valuation rings `o/π^N` and `o'/π'^N` are
/// identified by a fixed ring isomorphism `λ_N` with `λ_N(π) = π'`.
///
/// `λ_N` acts on the canonical `π`-adic digit expansion. It exists when the
/// models coincide, or when both residue rings have characteristic `p`
/// (`F_q[x]/x^N` on both sides), which for a mixed characteristic model means
/// `N ≤ e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosePair {
    source: Field,
    target: Field,
    closeness: u32,
}

impl ClosePair {
    pub fn new(source: Field, target: Field, closeness: u32) -> Result<Self> {
        if closeness == 0 {
            return Err(Error::IncompatiblePair("closeness level must be at least 1".into()));
        }
        if source.p() != target.p() {
            return Err(Error::IncompatiblePair(format!(
                "residue characteristics differ ({} vs {})",
                source.p(),
                target.p()
            )));
        }
        if source.q() != target.q() {
            return Err(Error::IncompatiblePair(format!(
                "residue fields differ (F_{} vs F_{})",
                source.q(),
                target.q()
            )));
        }
        if source != target {
            for side in [&source, &target] {
                if !side.residue_ring_is_char_p(closeness) {
                    return Err(Error::IncompatiblePair(format!(
                        "o/pi^{closeness} of {side} does not have characteristic {} (needs e >= {closeness})",
                        side.p()
                    )));
                }
            }
        }
        Ok(ClosePair { source, target, closeness })
    }

    pub fn identity(field: Field, closeness: u32) -> Result<Self> {
        Self::new(field.clone(), field, closeness)
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn closeness(&self) -> u32 {
        self.closeness
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
    }

    pub fn is_cross_characteristic(&self) -> bool {
        self.source.kind() != self.target.kind()
    }

    pub fn inverse(&self) -> ClosePair {
        ClosePair { source: self.target.clone(), target: self.source.clone(), closeness: self.closeness }
    }

    /// `λ_{N'}` for the precision `N' ≤ N` of `r`.
    pub fn apply(&self, r: &ResidueElement) -> Result<ResidueElement> {
        if r.field() != &self.source {
            return Err(Error::FieldMismatch);
        }
        if r.precision() > self.closeness {
            return Err(Error::PrecisionExceeded { requested: r.precision(), available: self.closeness });
        }
        if self.source.kind() == FieldKind::MixedChar
            && self.target != self.source
            && r.precision() > self.source.e()
        {
            return Err(Error::IncompatiblePair(format!("precision {} exceeds e", r.precision())));
        }
        Ok(ResidueElement::from_digits(&self.target, r.precision(), &r.to_digits()))
    }
}
