//! Conformance of emitted report documents against the shipped schema.
//!
//! The checker below implements the subset of JSON Schema the shipped
//! file uses (type, required, properties, items, enum, oneOf, $ref into
//! definitions, additionalProperties-as-schema, and the decimal-string
//! pattern), so reports are validated without an external dependency.

use serde_json::Value;

use ricci::curvature::kappa_lly;
use ricci::graph::hypercube;
use ricci::io::report::{
    C5PowerEntry, CurvatureEntry, ReportDocument, ScanRecordEntry, ScanSummaryEntry, VerdictEntry,
};
use ricci::scan::{c5_power_experiment, scan_conjecture1, ScanOptions, ScanSource};
use ricci::verify::check_main_bound;

fn schema() -> Value {
    let text = include_str!("../../../schemas/report.schema.json");
    serde_json::from_str(text).expect("schema parses")
}

fn resolve<'a>(root: &'a Value, node: &'a Value) -> &'a Value {
    match node.get("$ref").and_then(Value::as_str) {
        Some(reference) => {
            let name = reference
                .strip_prefix("#/definitions/")
                .expect("only local definition refs are used");
            resolve(root, &root["definitions"][name])
        }
        None => node,
    }
}

fn validate(root: &Value, schema_node: &Value, value: &Value, path: &str) -> Result<(), String> {
    let node = resolve(root, schema_node);

    if let Some(options) = node.get("oneOf").and_then(Value::as_array) {
        let matches = options
            .iter()
            .filter(|option| validate(root, option, value, path).is_ok())
            .count();
        if matches != 1 {
            return Err(format!("{path}: {matches} of oneOf matched"));
        }
        return Ok(());
    }

    if let Some(kind) = node.get("type").and_then(Value::as_str) {
        let ok = match kind {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "integer" => value.as_i64().is_some() || value.as_u64().is_some(),
            "boolean" => value.is_boolean(),
            other => return Err(format!("{path}: unhandled schema type {other}")),
        };
        if !ok {
            return Err(format!("{path}: expected {kind}, got {value}"));
        }
    }

    if let Some(pattern) = node.get("pattern").and_then(Value::as_str) {
        assert_eq!(pattern, "^-?[0-9]+$", "only the decimal pattern is used");
        let text = value.as_str().unwrap_or_default();
        let body = text.strip_prefix('-').unwrap_or(text);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("{path}: {text:?} is not a decimal string"));
        }
    }

    if let Some(allowed) = node.get("enum").and_then(Value::as_array) {
        if !allowed.contains(value) {
            return Err(format!("{path}: {value} not in enum"));
        }
    }

    if let Some(required) = node.get("required").and_then(Value::as_array) {
        for key in required {
            let key = key.as_str().unwrap();
            if value.get(key).is_none() {
                return Err(format!("{path}: missing required field {key}"));
            }
        }
    }

    if let (Some(properties), Some(object)) =
        (node.get("properties").and_then(Value::as_object), value.as_object())
    {
        for (key, child) in object {
            if let Some(subschema) = properties.get(key) {
                validate(root, subschema, child, &format!("{path}.{key}"))?;
            }
        }
    }

    if let Some(additional) = node.get("additionalProperties") {
        if additional.is_object() {
            if let Some(object) = value.as_object() {
                for (key, child) in object {
                    validate(root, additional, child, &format!("{path}.{key}"))?;
                }
            }
        }
    }

    if let (Some(items), Some(array)) = (node.get("items"), value.as_array()) {
        if let Some(min) = node.get("minItems").and_then(Value::as_u64) {
            if (array.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = node.get("maxItems").and_then(Value::as_u64) {
            if (array.len() as u64) > max {
                return Err(format!("{path}: more than {max} items"));
            }
        }
        for (i, child) in array.iter().enumerate() {
            validate(root, items, child, &format!("{path}[{i}]"))?;
        }
    }

    Ok(())
}

fn assert_valid(doc: &ReportDocument) {
    let schema = schema();
    let value: Value = serde_json::from_str(&doc.to_json()).unwrap();
    if let Err(message) = validate(&schema, &schema, &value, "$") {
        panic!("schema violation: {message}\n{}", doc.to_json());
    }
    // and the document survives a round trip
    let back: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
    assert_eq!(&back, doc);
}

#[test]
fn curvature_report_validates() {
    let q3 = hypercube(3).unwrap();
    let mut doc = ReportDocument::new("hypercube-3");
    for (u, v) in q3.edges() {
        let report = kappa_lly(&q3, u, v).unwrap();
        doc.curvature.push(CurvatureEntry::from_report(&report, true));
    }
    assert_valid(&doc);
}

#[test]
fn verdict_report_validates() {
    let q2 = hypercube(2).unwrap();
    let report = check_main_bound(&q2).unwrap();
    let mut doc = ReportDocument::new("hypercube-2");
    doc.verdicts.push(VerdictEntry::from_verdict(&report.verdict, true));
    assert_valid(&doc);
}

#[test]
fn scan_report_validates() {
    let source = ScanSource::Enumeration { max_n: 4 };
    let mut doc = ReportDocument::new("enum:4");
    let mut records = Vec::new();
    let summary = scan_conjecture1(&source, &ScanOptions::default(), |r| {
        records.push(ScanRecordEntry::from_record(r));
    })
    .unwrap();
    doc.scan_summary = Some(ScanSummaryEntry::from_summary(&summary));
    doc.scan_records = records;
    doc.c5_powers
        .push(C5PowerEntry::from_report(&c5_power_experiment(1).unwrap()));
    assert_valid(&doc);
}
