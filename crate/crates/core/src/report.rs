//! JSON and CSV renderings of analysis results.
//!
//! Every JSON document carries `"schema": "genwait/1"`. Rationals are written
//! as `{"num": "...", "den": "..."}` and never as floats.

use serde_json::{json, Map, Value};

use crate::crowns::{Classification, SolubleReport};
use crate::genstats::{GenerationReport, ScanRow};
use crate::lattice::SubgroupLattice;
use crate::montecarlo::McEstimate;
use crate::rational::ExactRational;

pub const SCHEMA: &str = "genwait/1";

/// Adds the schema tag to a JSON object.
pub fn with_schema(mut value: Value) -> Value {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), Value::String(SCHEMA.into()));
    }
    value
}

fn rational(r: &ExactRational) -> Value {
    serde_json::to_value(r).expect("rational serializes")
}

pub fn generation_json(report: &GenerationReport) -> Value {
    let m_table: Map<String, Value> = report
        .m_table
        .iter()
        .map(|(n, m)| (n.to_string(), json!(m)))
        .collect();
    let mut out = json!({
        "group": report.group,
        "y": report.y,
        "e": rational(&report.e),
        "e_decimal": report.e.to_f64(),
        "p_table": report.p_table.iter().map(rational).collect::<Vec<_>>(),
        "m_table": m_table,
        "M": report.growth.to_decimal_string(),
        "M_digits": crate::genstats::GROWTH_DIGITS,
        "ceil_M": report.growth.ceil,
        "bounds_ok": report.bounds_ok(),
        "bounds": report.bounds,
    });
    let obj = out.as_object_mut().expect("object");
    if let Some((n, m)) = report.growth.witness {
        obj.insert("witness".into(), json!({ "n": n, "m": m }));
    } else {
        obj.insert("note".into(), json!("Y generates G"));
    }
    if let Some(gap) = &report.gap {
        obj.insert("gap_check".into(), json!(gap));
    }
    with_schema(out)
}

pub const GENERATION_CSV_HEADER: &str = "group,y,e,M,ceil_M,bounds_ok";

/// One row per `(group, Y)`.
pub fn generation_csv(reports: &[GenerationReport]) -> String {
    let mut out = String::from(GENERATION_CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&r.group),
            csv_field(&r.y.join(" ")),
            r.e,
            r.growth.to_decimal_string(),
            r.growth.ceil,
            r.bounds_ok()
        ));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn scan_json(group: &str, e: &ExactRational, rows: &[ScanRow]) -> Value {
    with_schema(json!({
        "group": group,
        "e": rational(e),
        "classes": rows,
    }))
}

pub const SCAN_CSV_HEADER: &str = "representative,class_size,e,gap,in_frattini,equals_e";

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_field(&r.cycle),
            r.class_size,
            r.e,
            r.gap,
            r.in_frattini,
            r.equals_e
        ));
    }
    out
}

pub fn mc_json(group: &str, estimate: &McEstimate, exact: Option<&ExactRational>) -> Value {
    let mut out = json!({ "group": group, "estimate": estimate });
    if let Some(e) = exact {
        let obj = out.as_object_mut().expect("object");
        obj.insert("exact".into(), rational(e));
        obj.insert("z_score".into(), json!(estimate.z_score(e.to_f64())));
    }
    with_schema(out)
}

pub fn lattice_json(lattice: &SubgroupLattice) -> Value {
    let mut mobius_values: std::collections::BTreeMap<i64, usize> = Default::default();
    for &m in lattice.mobius() {
        *mobius_values.entry(m).or_default() += 1;
    }
    let histogram: Map<String, Value> = mobius_values
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    with_schema(json!({
        "group": lattice.group().label(),
        "order": lattice.group().order(),
        "subgroups": lattice.len(),
        "maximal": lattice.maximal_subgroups().len(),
        "normal": lattice.normal_subgroups().len(),
        "mobius_trivial": lattice.mu(lattice.bottom()),
        "mobius_histogram": histogram,
    }))
}

pub fn crowns_json(group: &str, classification: &Classification, checks: &[SolubleReport]) -> Value {
    let classes: Vec<Value> = classification
        .classes
        .iter()
        .map(|c| json!(c.summary()))
        .collect();
    with_schema(json!({
        "group": group,
        "classes": classes,
        "residue": classification.residue.len(),
        "soluble_checks": checks,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_is_tagged() {
        let v = with_schema(json!({"a": 1}));
        assert_eq!(v["schema"], "genwait/1");
        assert_eq!(v["a"], 1);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("(1,2)"), "\"(1,2)\"");
        assert_eq!(csv_field("()"), "()");
    }
}
