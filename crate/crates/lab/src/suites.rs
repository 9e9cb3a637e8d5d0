//! Invariant suites run by `kazlab verify`.

use anyhow::Result;
use kazlab_core::hecke::{HeckeAlgebra, ProductCache};
use kazlab_core::kazhdan::{verify_algebra_map, Report, TransportContext};
use kazlab_core::localfield::Field;
use kazlab_core::random::random_integral;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Field,
    Hecke,
    Kazhdan,
    All,
}

impl Suite {
    fn includes(self, s: Suite) -> bool {
        self == Suite::All || self == s
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn to_json(&self) -> Value {
        json!({ "suite": self.suite, "name": self.name, "passed": self.passed, "detail": self.detail })
    }
}

pub struct Outcome {
    pub checks: Vec<Check>,
    pub kazhdan: Option<Report>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

const FIELD_SAMPLES: usize = 200;

fn field_checks(ctx: &TransportContext, rng: &mut ChaCha8Rng, out: &mut Vec<Check>) -> Result<()> {
    let pair = ctx.pair();
    let fields = if pair.is_identity() { vec![pair.source()] } else { vec![pair.source(), pair.target()] };
    for field in fields {
        let mut bad = 0;
        for _ in 0..FIELD_SAMPLES {
            let x = random_integral(field, rng);
            let y = random_integral(field, rng);
            let n = ctx.precision();
            let (rx, ry) = (x.reduce(n)?, y.reduce(n)?);
            let ok = rx.lift().reduce(n)? == rx
                && x.mul(&y).reduce(n)? == rx.mul(&ry)
                && x.add(&y).reduce(n)? == rx.add(&ry)
                && valuation_ok(field, &x, &y);
            bad += usize::from(!ok);
        }
        out.push(Check {
            suite: "field",
            name: format!("reduction and valuation on {field}"),
            passed: bad == 0,
            detail: format!("{} of {FIELD_SAMPLES} samples failed", bad),
        });
    }
    let mut bad = 0;
    for _ in 0..FIELD_SAMPLES {
        let n = ctx.precision();
        let a = random_integral(pair.source(), rng).reduce(n)?;
        let b = random_integral(pair.source(), rng).reduce(n)?;
        let (la, lb) = (pair.apply(&a)?, pair.apply(&b)?);
        let ok = pair.apply(&a.add(&b))? == la.add(&lb)
            && pair.apply(&a.mul(&b))? == la.mul(&lb)
            && pair.inverse().apply(&la)? == a;
        bad += usize::from(!ok);
    }
    out.push(Check {
        suite: "field",
        name: format!("lambda_{} is a ring isomorphism", ctx.precision()),
        passed: bad == 0,
        detail: format!("{bad} of {FIELD_SAMPLES} samples failed"),
    });
    Ok(())
}

fn valuation_ok(field: &Field, x: &kazlab_core::localfield::FieldElement, y: &kazlab_core::localfield::FieldElement) -> bool {
    let (Some(a), Some(b)) = (x.valuation().finite(), y.valuation().finite()) else {
        return true;
    };
    let prod = x.mul(y).valuation().finite() == Some(a + b);
    let sum = match x.add(y).valuation().finite() {
        Some(c) => c >= a.min(b) && (a == b || c == a.min(b)),
        None => a == b,
    };
    prod && sum && field.zero().valuation().finite().is_none()
}

fn hecke_checks(alg: &HeckeAlgebra, window: u32, cache: &mut ProductCache, out: &mut Vec<Check>) -> Result<()> {
    let labels = alg.window_labels(window)?;
    let unit = alg.residue_label(&alg.spec().residue_identity(alg.level()));
    let (mut conserved, mut consistent, mut unit_ok) = (0, 0, 0);
    let total = labels.len() * labels.len();
    for g in &labels {
        for h in &labels {
            let c = cache.get(alg, g, h)?;
            conserved += usize::from(c.conserves_degree());
            consistent += usize::from(c.counts_consistent());
        }
        let left = cache.get(alg, &unit, g)?.terms.clone();
        let right = cache.get(alg, g, &unit)?.terms.clone();
        let single = |t: &std::collections::BTreeMap<_, u64>| t.len() == 1 && t.get(g) == Some(&1);
        unit_ok += usize::from(single(&left) && single(&right));
    }
    let side = alg.spec().to_string();
    out.push(Check {
        suite: "hecke",
        name: format!("degree conservation on {side}"),
        passed: conserved == total,
        detail: format!("{conserved}/{total} products"),
    });
    out.push(Check {
        suite: "hecke",
        name: format!("structure constants times degrees match pair counts on {side}"),
        passed: consistent == total,
        detail: format!("{consistent}/{total} products"),
    });
    out.push(Check {
        suite: "hecke",
        name: format!("unit element on {side}"),
        passed: unit_ok == labels.len(),
        detail: format!("{unit_ok}/{} labels", labels.len()),
    });
    Ok(())
}

fn witness_check(ctx: &TransportContext, rng: &mut ChaCha8Rng, trials: usize, out: &mut Vec<Check>) -> Result<()> {
    let labels = ctx.source().window_labels(ctx.window())?;
    let mut split = 0;
    for l in &labels {
        split += usize::from(ctx.witness_labels(l, trials, rng)?.len() != 1);
    }
    out.push(Check {
        suite: "kazhdan",
        name: "transported label independent of witnesses".into(),
        passed: split == 0,
        detail: format!("{split} of {} labels gave several images over {trials} refactorizations", labels.len()),
    });
    Ok(())
}

pub fn run(ctx: &TransportContext, suite: Suite, seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut source_cache = ProductCache::new();
    let mut target_cache = ProductCache::new();
    if suite.includes(Suite::Field) {
        field_checks(ctx, &mut rng, &mut checks)?;
    }
    if suite.includes(Suite::Hecke) {
        hecke_checks(ctx.source(), ctx.window(), &mut source_cache, &mut checks)?;
        if !ctx.pair().is_identity() {
            hecke_checks(ctx.target(), ctx.window(), &mut target_cache, &mut checks)?;
        }
    }
    let mut kazhdan = None;
    if suite.includes(Suite::Kazhdan) {
        let r = verify_algebra_map(ctx, &mut source_cache, &mut target_cache)?;
        checks.push(Check {
            suite: "kazhdan",
            name: "windowed structure constants agree".into(),
            passed: r.pairs_equal == r.pairs_checked,
            detail: format!("{}/{} pairs", r.pairs_equal, r.pairs_checked),
        });
        checks.push(Check {
            suite: "kazhdan",
            name: "labels, degrees and stabilizers correspond".into(),
            passed: r.passed(),
            detail: format!(
                "bijective {} degrees {} stabilizers {}",
                r.labels_bijective,
                r.degrees_preserved,
                r.tau_summaries.iter().all(|t| t.gamma_maps_onto)
            ),
        });
        witness_check(ctx, &mut rng, 10, &mut checks)?;
        kazhdan = Some(r);
    }
    Ok(Outcome { checks, kazhdan })
}
