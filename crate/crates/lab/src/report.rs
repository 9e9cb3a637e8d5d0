//! JSON and CSV renderings of verification reports, and plain-text tables.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use kazlab_core::kazhdan::Report;
use serde_json::{json, Value};

fn terms(ts: &[(kazlab_core::hecke::DoubleCosetLabel, u64)]) -> Value {
    ts.iter().map(|(l, c)| json!({ "label": l.to_string(), "coefficient": c })).collect()
}

pub fn kazhdan_json(r: &Report) -> Value {
    json!({
        "source": r.source,
        "target": r.target,
        "level": r.level,
        "precision": r.precision,
        "window": r.window,
        "labels": r.labels,
        "labels_bijective": r.labels_bijective,
        "taus_preserved": r.taus_preserved,
        "degrees_preserved": r.degrees_preserved,
        "degree_conservation": r.degree_conservation,
        "pairs_checked": r.pairs_checked,
        "pairs_equal": r.pairs_equal,
        "min_sufficient_N_observed": r.min_sufficient_n_observed,
        "sweep": r.sweep.iter().map(|s| json!({
            "closeness": s.closeness,
            "pairs_checked": s.pairs_checked,
            "pairs_equal": s.pairs_equal,
        })).collect::<Vec<_>>(),
        "tau_summaries": r.tau_summaries.iter().map(|t| json!({
            "tau": t.tau.to_string(),
            "source_orbits": t.source_orbits,
            "target_orbits": t.target_orbits,
            "source_gamma": t.source_gamma,
            "target_gamma": t.target_gamma,
            "gamma_maps_onto": t.gamma_maps_onto,
        })).collect::<Vec<_>>(),
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "g": c.g.to_string(),
            "h": c.h.to_string(),
            "g_image": c.g_image.to_string(),
            "h_image": c.h_image.to_string(),
            "g_witness": c.g_witness,
            "h_witness": c.h_witness,
            "transported": terms(&c.transported),
            "target": terms(&c.target),
        })).collect::<Vec<_>>(),
        "passed": r.passed(),
    })
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// One row per matched structure constant `c^x_{g,h}`.
pub fn write_constants_csv<W: Write>(r: &Report, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["g", "h", "x", "source", "target"])?;
    for c in &r.constants {
        w.write_record([c.g.to_string(), c.h.to_string(), c.x.to_string(), c.source.to_string(), c.target.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Left-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(headers.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aligned_table() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()], vec!["q".into(), "22".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\nq    22\n");
    }
}
