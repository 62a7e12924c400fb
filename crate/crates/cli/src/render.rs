//! Plain-text rendering of JSON reports.

use std::fmt::Write;

use anyhow::{anyhow, Result};
use serde_json::Value;

pub fn render(report: &Value) -> Result<String> {
    let command = report["command"]
        .as_str()
        .ok_or_else(|| anyhow!("not a report: missing \"command\""))?;
    let result = report
        .get("result")
        .ok_or_else(|| anyhow!("not a report: missing \"result\""))?;
    let mut out = String::new();
    writeln!(out, "{command}  {}", config_line(&report["config"]))?;
    match command {
        "gram" => gram(&mut out, result)?,
        "certify" => certificate(&mut out, result)?,
        _ => fields(&mut out, "", result)?,
    }
    if let Some(note) = report["lattice"].as_str() {
        writeln!(out, "lattice: {note}")?;
    }
    writeln!(out, "catalog {}", report["catalog_hash"].as_str().unwrap_or("?"))?;
    writeln!(out, "verdict: {}", if report["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" })?;
    Ok(out)
}

fn config_line(config: &Value) -> String {
    let Some(map) = config.as_object() else { return String::new() };
    map.iter()
        .filter(|(k, _)| k.as_str() != "probes")
        .map(|(k, v)| format!("{k}={}", scalar(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn yes_no(v: &Value) -> &'static str {
    if v.as_bool() == Some(true) {
        "yes"
    } else {
        "no"
    }
}

fn matrix(out: &mut String, m: &Value) -> Result<()> {
    let rows: Vec<Vec<String>> = m
        .as_array()
        .ok_or_else(|| anyhow!("matrix is not an array"))?
        .iter()
        .map(|r| r.as_array().map(|r| r.iter().map(scalar).collect()).unwrap_or_default())
        .collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        writeln!(out, "  [{}]", cells.join(" "))?;
    }
    Ok(())
}

fn gram(out: &mut String, r: &Value) -> Result<()> {
    writeln!(out, "dimension {}", r["dim"])?;
    matrix(out, &r["matrix"])?;
    writeln!(out, "symmetric: {}", yes_no(&r["symmetric"]))?;
    writeln!(out, "positive definite: {}", yes_no(&r["pd"]))?;
    let minors: Vec<String> = r["minors"].as_array().into_iter().flatten().map(scalar).collect();
    writeln!(out, "leading minors: {}", minors.join(", "))?;
    Ok(())
}

fn certificate(out: &mut String, r: &Value) -> Result<()> {
    let probes = r["probes"].as_array().cloned().unwrap_or_default();
    if probes.is_empty() {
        writeln!(out, "no probes: only the endomorphism algebra was checked")?;
    } else {
        writeln!(out, "{:<10} {:>5} {:>10} {:>5} {:>6} {:>14}", "probe", "dim", "symmetric", "pd", "rank", "nondegenerate")?;
        for p in &probes {
            writeln!(
                out,
                "{:<10} {:>5} {:>10} {:>5} {:>6} {:>14}",
                scalar(&p["probe"]),
                scalar(&p["gram"]["dim"]),
                yes_no(&p["gram"]["symmetric"]),
                yes_no(&p["gram"]["pd"]),
                scalar(&p["nondegeneracy"]["rank"]),
                yes_no(&p["nondegeneracy"]["pass"]),
            )?;
        }
    }
    writeln!(out, "algebra dimension {}, radical dimension {}", r["algebra_dim"], r["radical_dim"])?;
    Ok(())
}

/// Scalar fields as `key: value` lines, nested objects with dotted keys;
/// arrays are summarized by length.
fn fields(out: &mut String, prefix: &str, v: &Value) -> Result<()> {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                fields(out, &key, x)?;
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) && items.len() <= 16 => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            writeln!(out, "{prefix}: [{}]", parts.join(", "))?;
        }
        Value::Array(items) => writeln!(out, "{prefix}: {} entries", items.len())?,
        other => writeln!(out, "{prefix}: {}", scalar(other))?,
    }
    Ok(())
}
