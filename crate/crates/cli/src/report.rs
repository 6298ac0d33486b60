//! Deterministic JSON reports. Objects serialize with sorted keys, so a
//! fixed (manifest, seed, version) triple yields byte-identical output.

use serde_json::{json, Map, Value};

use eala_core::eala::EalaStructure;
use eala_core::glie::GradedLieAlgebra;
use eala_core::multiloop::Verdict;
use eala_core::{GradedElement, Scalar};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn digest_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    out.iter().map(|b| format!("{:02x}", b)).collect()
}

/// Report skeleton shared by all commands.
pub fn base_report(command: &str, manifest_digest: &str, window: i64, seed: u64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("manifest_sha256".into(), json!(manifest_digest));
    m.insert("version".into(), json!(TOOL_VERSION));
    m.insert("window".into(), json!(window));
    m.insert("seed".into(), json!(seed));
    m
}

pub fn verdict_value(v: &Verdict) -> Value {
    json!({ "pass": v.pass, "detail": v.detail })
}

pub fn scalar_string(s: &Scalar) -> String {
    format!("{}", s)
}

/// Terms of an element in the report form
/// `{"slot": ..., "degree": [...], "coeff": ...}`.
pub fn element_value(e: &EalaStructure, x: &GradedElement) -> Value {
    let mut terms = Vec::new();
    for ((d, s), c) in &x.terms {
        let label = match e.part_of(d, *s) {
            eala_core::eala::Part::L(k) => format!("L{}", k),
            eala_core::eala::Part::C(k) => format!("C{}", k),
            eala_core::eala::Part::D(k) => format!("D{}", k),
        };
        terms.push(json!({
            "slot": label,
            "degree": d.0,
            "coeff": scalar_string(c),
        }));
    }
    Value::Array(terms)
}

pub fn element_value_l(ml: &eala_core::multiloop::MultiloopAlgebra, x: &GradedElement) -> Value {
    let mut terms = Vec::new();
    for ((d, s), c) in &x.terms {
        terms.push(json!({
            "slot": format!("L{}", s),
            "label": ml.slot_label(d, *s),
            "degree": d.0,
            "coeff": scalar_string(c),
        }));
    }
    Value::Array(terms)
}

/// Serialize a derivation-to-centre map as a table.
pub fn psi_value(psi: &eala_core::autmorph::DerMap) -> Value {
    let mut rows = Vec::new();
    for (d, c) in psi.values.iter().enumerate() {
        if c.is_empty() {
            continue;
        }
        let mut value = Map::new();
        for (k, s) in c {
            value.insert(format!("{}", k), json!(scalar_string(s)));
        }
        rows.push(json!({ "d": d, "value": Value::Object(value) }));
    }
    Value::Array(rows)
}

pub fn write_report(report: &Value, out: Option<&std::path::Path>) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    match out {
        Some(path) => {
            std::fs::write(path, format!("{}\n", text))?;
        }
        None => println!("{}", text),
    }
    Ok(())
}
