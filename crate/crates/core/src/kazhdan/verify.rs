//! Comparison of the structure constants on both sides of a transport.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::TransportContext;
use crate::error::{Error, Result};
use crate::hecke::{DoubleCosetLabel, HeckeAlgebra, ProductCache};
use crate::localfield::{ClosePair, Field, FieldKind};
use crate::matgrp::CartanDatum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauSummary {
    pub tau: CartanDatum,
    pub source_orbits: usize,
    pub target_orbits: usize,
    pub source_gamma: usize,
    pub target_gamma: usize,
    /// `λ_m(Γ_τ) = Γ_{τ'}`.
    pub gamma_maps_onto: bool,
}

/// One structure constant and its counterpart on the target side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedConstant {
    pub g: DoubleCosetLabel,
    pub h: DoubleCosetLabel,
    pub x: DoubleCosetLabel,
    pub source: u64,
    pub target: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub g: DoubleCosetLabel,
    pub h: DoubleCosetLabel,
    pub g_image: DoubleCosetLabel,
    pub h_image: DoubleCosetLabel,
    /// Source product, relabeled into the target.
    pub transported: Vec<(DoubleCosetLabel, u64)>,
    /// Product computed on the target side.
    pub target: Vec<(DoubleCosetLabel, u64)>,
    pub g_witness: String,
    pub h_witness: String,
}

/// Outcome of the comparison at one closeness level of the sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPoint {
    pub closeness: u32,
    pub pairs_checked: usize,
    pub pairs_equal: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub source: String,
    pub target: String,
    pub level: u32,
    pub precision: u32,
    pub window: u32,
    pub labels: usize,
    pub labels_bijective: bool,
    pub taus_preserved: bool,
    pub degrees_preserved: bool,
    pub degree_conservation: bool,
    pub tau_summaries: Vec<TauSummary>,
    pub pairs_checked: usize,
    pub pairs_equal: usize,
    pub counterexamples: Vec<Counterexample>,
    pub constants: Vec<MatchedConstant>,
    /// Smallest closeness `e_0` such that the uncertified comparison passes
    /// for every mixed characteristic side `Q_p(p^{1/e})`, `e_0 ≤ e ≤ N`.
    /// Only measured for cross-characteristic pairs.
    pub min_sufficient_n_observed: Option<u32>,
    pub sweep: Vec<SweepPoint>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.labels_bijective
            && self.taus_preserved
            && self.degrees_preserved
            && self.degree_conservation
            && self.pairs_equal == self.pairs_checked
            && self.counterexamples.is_empty()
            && self.tau_summaries.iter().all(|t| t.gamma_maps_onto && t.source_orbits == t.target_orbits)
    }
}

struct Comparison {
    pairs_checked: usize,
    pairs_equal: usize,
    conservation: bool,
    counterexamples: Vec<Counterexample>,
    constants: Vec<MatchedConstant>,
}

fn compare_constants(
    ctx: &TransportContext,
    labels: &[DoubleCosetLabel],
    images: &BTreeMap<DoubleCosetLabel, DoubleCosetLabel>,
    source_cache: &mut ProductCache,
    target_cache: &mut ProductCache,
    record: bool,
) -> Result<Comparison> {
    let mut out = Comparison {
        pairs_checked: 0,
        pairs_equal: 0,
        conservation: true,
        counterexamples: Vec::new(),
        constants: Vec::new(),
    };
    let mut image_cache: BTreeMap<DoubleCosetLabel, DoubleCosetLabel> = images.clone();
    for g in labels {
        for h in labels {
            let src = source_cache.get(ctx.source(), g, h)?.clone();
            let (g2, h2) = (images[g].clone(), images[h].clone());
            let dst = target_cache.get(ctx.target(), &g2, &h2)?.clone();
            out.conservation &= src.conserves_degree() && dst.conserves_degree();
            let mut transported = BTreeMap::new();
            for (x, c) in &src.terms {
                let x2 = match image_cache.get(x) {
                    Some(l) => l.clone(),
                    None => {
                        let l = ctx.transport_label(x)?;
                        image_cache.insert(x.clone(), l.clone());
                        l
                    }
                };
                *transported.entry(x2.clone()).or_insert(0) += c;
                if record {
                    out.constants.push(MatchedConstant {
                        g: g.clone(),
                        h: h.clone(),
                        x: x.clone(),
                        source: *c,
                        target: dst.coefficient(&x2),
                    });
                }
            }
            out.pairs_checked += 1;
            if transported == dst.terms {
                out.pairs_equal += 1;
            } else if record {
                out.counterexamples.push(Counterexample {
                    g: g.clone(),
                    h: h.clone(),
                    g_image: g2.clone(),
                    h_image: h2.clone(),
                    transported: transported.into_iter().collect(),
                    target: dst.terms.into_iter().collect(),
                    g_witness: ctx.source().label_rep(g).to_string(),
                    h_witness: ctx.source().label_rep(h).to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// Transports the full window, compares labels, stabilizers, degrees and all
/// structure constants `c^x_{g,h}` with `g, h` in the window. Requires
/// `N ≥ m + 4B`, so that every product of two windowed labels is
/// transportable.
pub fn verify_algebra_map(
    ctx: &TransportContext,
    source_cache: &mut ProductCache,
    target_cache: &mut ProductCache,
) -> Result<Report> {
    let m = ctx.level();
    let bound = ctx.window();
    let needed = m + 4 * bound;
    if ctx.is_certified() && ctx.precision() < needed {
        return Err(Error::InsufficientCloseness { needed, available: ctx.precision() });
    }
    let labels = ctx.source().window_labels(bound)?;
    let target_labels: BTreeSet<DoubleCosetLabel> = ctx.target().window_labels(bound)?.into_iter().collect();
    let mut images = BTreeMap::new();
    let mut taus_preserved = true;
    let mut degrees_preserved = true;
    for l in &labels {
        let img = ctx.transport_label(l)?;
        taus_preserved &= img.tau == l.tau;
        degrees_preserved &= ctx.source().degree(l)? == ctx.target().degree(&img)?;
        images.insert(l.clone(), img);
    }
    let image_set: BTreeSet<DoubleCosetLabel> = images.values().cloned().collect();
    let labels_bijective = image_set.len() == labels.len() && image_set == target_labels;

    let mut tau_summaries = Vec::new();
    for tau in ctx.source().spec().dominant_taus(bound) {
        let s = ctx.source().orbit_table(&tau)?;
        let t = ctx.target().orbit_table(&tau)?;
        tau_summaries.push(TauSummary {
            source_orbits: s.reps.len(),
            target_orbits: t.reps.len(),
            source_gamma: s.gamma.len(),
            target_gamma: t.gamma.len(),
            gamma_maps_onto: ctx.gamma_compatible(&tau)?,
            tau,
        });
    }

    let main = compare_constants(ctx, &labels, &images, source_cache, target_cache, true)?;
    let (min_sufficient_n_observed, sweep) = closeness_sweep(ctx, &main, source_cache, target_cache)?;

    Ok(Report {
        source: ctx.source().spec().to_string(),
        target: ctx.target().spec().to_string(),
        level: m,
        precision: ctx.precision(),
        window: bound,
        labels: labels.len(),
        labels_bijective,
        taus_preserved,
        degrees_preserved,
        degree_conservation: main.conservation,
        tau_summaries,
        pairs_checked: main.pairs_checked,
        pairs_equal: main.pairs_equal,
        counterexamples: main.counterexamples,
        constants: main.constants,
        min_sufficient_n_observed,
        sweep,
    })
}

/// For a pair `(Q_p(p^{1/e}), F_p((t)))` the fields are exactly `e`-close.
/// Replaces the mixed side by `Q_p(p^{1/e''})` for `m ≤ e'' ≤ N` and reruns
/// the comparison without the certification guard.
fn closeness_sweep(
    ctx: &TransportContext,
    main: &Comparison,
    source_cache: &mut ProductCache,
    target_cache: &mut ProductCache,
) -> Result<(Option<u32>, Vec<SweepPoint>)> {
    let pair = ctx.pair();
    if !pair.is_cross_characteristic() {
        return Ok((None, Vec::new()));
    }
    let mixed_is_source = pair.source().kind() == FieldKind::MixedChar;
    let mixed = if mixed_is_source { pair.source() } else { pair.target() };
    let top = ctx.precision();
    let bottom = ctx.level().max(1);
    let mut points = Vec::new();
    for e in bottom..=top {
        if e == mixed.e() && e == top {
            points.push(SweepPoint { closeness: e, pairs_checked: main.pairs_checked, pairs_equal: main.pairs_equal });
            continue;
        }
        let field = Field::mixed(mixed.p(), e)?;
        let spec = ctx.source().spec().with_field(field.clone());
        let alg = HeckeAlgebra::new(spec, ctx.level(), ctx.source().budget())?;
        let (sub, images, labels) = if mixed_is_source {
            let pair = ClosePair::new(field, pair.target().clone(), e)?;
            let sub = TransportContext::from_algebras(pair, alg, ctx.target().clone(), e, ctx.window())?.uncertified();
            let labels = sub.source().window_labels(ctx.window())?;
            let images = labels.iter().map(|l| Ok((l.clone(), sub.transport_label(l)?))).collect::<Result<_>>()?;
            (sub, images, labels)
        } else {
            let pair = ClosePair::new(pair.source().clone(), field, e)?;
            let sub = TransportContext::from_algebras(pair, ctx.source().clone(), alg, e, ctx.window())?.uncertified();
            let labels = sub.source().window_labels(ctx.window())?;
            let images = labels.iter().map(|l| Ok((l.clone(), sub.transport_label(l)?))).collect::<Result<_>>()?;
            (sub, images, labels)
        };
        let mut fresh = ProductCache::new();
        let cmp = if mixed_is_source {
            compare_constants(&sub, &labels, &images, &mut fresh, target_cache, false)?
        } else {
            compare_constants(&sub, &labels, &images, source_cache, &mut fresh, false)?
        };
        points.push(SweepPoint { closeness: e, pairs_checked: cmp.pairs_checked, pairs_equal: cmp.pairs_equal });
    }
    let mut min = None;
    for p in points.iter().rev() {
        if p.pairs_equal == p.pairs_checked {
            min = Some(p.closeness);
        } else {
            break;
        }
    }
    Ok((min, points))
}
