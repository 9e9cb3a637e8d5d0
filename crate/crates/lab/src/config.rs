//! Run configuration: a JSON file plus command-line overrides, validated
//! before any enumeration starts.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use kazlab_core::hecke::CoeffRing;
use kazlab_core::localfield::{ClosePair, Field, FieldKind};
use kazlab_core::matgrp::{Family, GroupSpec, DEFAULT_BUDGET};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Mixed,
    Equal,
}

impl std::str::FromStr for Kind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mixed" | "mixedchar" => Ok(Kind::Mixed),
            "equal" | "equalchar" => Ok(Kind::Equal),
            _ => bail!("unknown field kind '{s}' (expected mixed or equal)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub kind: Kind,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default = "one")]
    pub f: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub p: u32,
    pub source: FieldConfig,
    pub target: FieldConfig,
    /// Closeness `N` of the pair; defaults to `m + 4B`.
    #[serde(default)]
    pub closeness: Option<u32>,
    /// Group such as `GL2` or `SL3`.
    pub group: String,
    pub level: u32,
    pub window: u32,
    pub coefficients: String,
    pub budget: u64,
    pub seed: u64,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            p: 2,
            source: FieldConfig { kind: Kind::Mixed, e: 1, f: 1 },
            target: FieldConfig { kind: Kind::Equal, e: 1, f: 1 },
            closeness: None,
            group: "GL2".into(),
            level: 1,
            window: 1,
            coefficients: "Z".into(),
            budget: DEFAULT_BUDGET,
            seed: 0,
            out: None,
            csv: None,
        }
    }
}

/// Everything derived from a validated [`RunConfig`].
#[derive(Clone, Debug)]
pub struct Validated {
    pub source: Field,
    pub target: Field,
    pub family: Family,
    pub n: usize,
    pub ring: CoeffRing,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn closeness(&self) -> u32 {
        self.closeness.unwrap_or(self.level + 4 * self.window)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// Cheap checks of the field models, the group, the coefficient ring and
    /// the enumeration size. Nothing here enumerates residue groups.
    pub fn validate(&self) -> Result<Validated> {
        let source = build_field(self.p, &self.source).context("source field")?;
        let target = build_field(self.p, &self.target).context("target field")?;
        let (family, n) = parse_group(&self.group)?;
        GroupSpec::new(family, n, source.clone())?;
        let ring = parse_ring(&self.coefficients)?;
        if self.budget == 0 {
            bail!("budget must be positive");
        }
        let q = source.q() as f64;
        let classes = q.powi((self.level as usize * n * n) as i32);
        if classes > self.budget as f64 {
            bail!(
                "enumerating K/K_{} needs about {:.0} residue matrices, over the budget {}",
                self.level,
                classes,
                self.budget
            );
        }
        Ok(Validated { source, target, family, n, ring })
    }

    /// Additionally checks that the two fields form a close pair and that the
    /// closeness covers the window.
    pub fn validate_pair(&self, need_products: bool) -> Result<(Validated, ClosePair)> {
        let v = self.validate()?;
        let closeness = self.closeness();
        let pair = ClosePair::new(v.source.clone(), v.target.clone(), closeness)?;
        let per_label = self.level + 2 * self.window;
        let needed = if need_products { self.level + 4 * self.window } else { per_label };
        if closeness < needed.max(self.level.max(1)) {
            bail!(kazlab_core::Error::InsufficientCloseness { needed, available: closeness });
        }
        Ok((v, pair))
    }
}

pub fn build_field(p: u32, c: &FieldConfig) -> Result<Field> {
    let kind = match c.kind {
        Kind::Mixed => FieldKind::MixedChar,
        Kind::Equal => FieldKind::EqualChar,
    };
    if kind == FieldKind::EqualChar && c.e != 1 {
        bail!("an equal characteristic field has e = 1");
    }
    Ok(Field::new(kind, p, c.e, c.f)?)
}

/// `GL2`, `SL3`, `gl_2`, ...
pub fn parse_group(s: &str) -> Result<(Family, usize)> {
    let t: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_uppercase();
    let (family, rest) = if let Some(r) = t.strip_prefix("GL") {
        (Family::GL, r)
    } else if let Some(r) = t.strip_prefix("SL") {
        (Family::SL, r)
    } else {
        bail!("unknown group '{s}' (expected GLn or SLn)");
    };
    let n: usize = rest.parse().with_context(|| format!("bad rank in group '{s}'"))?;
    Ok((family, n))
}

/// `Z`, `Q`, `F_l` or `Z/l^k`.
pub fn parse_ring(s: &str) -> Result<CoeffRing> {
    let t = s.trim();
    match t {
        "Z" => return Ok(CoeffRing::Integers),
        "Q" => return Ok(CoeffRing::Rationals),
        _ => {}
    }
    if let Some(l) = t.strip_prefix("F_") {
        return Ok(CoeffRing::prime_field(l.parse().with_context(|| format!("bad prime in '{s}'"))?)?);
    }
    if let Some(rest) = t.strip_prefix("Z/") {
        let (l, k) = rest.split_once('^').unwrap_or((rest, "1"));
        let l = l.parse().with_context(|| format!("bad prime in '{s}'"))?;
        let k = k.parse().with_context(|| format!("bad exponent in '{s}'"))?;
        return Ok(CoeffRing::integers_mod(l, k)?);
    }
    bail!("unknown coefficient ring '{s}' (expected Z, Q, F_l or Z/l^k)")
}
