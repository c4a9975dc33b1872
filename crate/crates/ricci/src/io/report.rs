//! Machine-readable report document.
//!
//! All rationals serialize as `{num, den}` integer pairs, kept as JSON
//! numbers while they fit 53-bit safety and carried as decimal strings
//! beyond that — no curvature value is ever a float. Documents round-trip
//! losslessly through serde, and the shape is described by
//! `schemas/report.schema.json` at the repository root.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::curvature::CurvatureReport;
use crate::numerics::Rational;
use crate::scan::{C5PowerReport, Extremal, ScanRecord, ScanSummary};
use crate::verify::{CounterWitness, VerifierVerdict};

/// Largest magnitude serialized as a JSON number.
const SAFE_INT: i64 = (1 << 53) - 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn of(value: &BigInt) -> Self {
        match i64::try_from(value.clone()) {
            Ok(small) if small.abs() <= SAFE_INT => IntRepr::Small(small),
            _ => IntRepr::Big(value.to_string()),
        }
    }

    fn to_bigint(&self) -> Option<BigInt> {
        match self {
            IntRepr::Small(v) => Some(BigInt::from(*v)),
            IntRepr::Big(text) => BigInt::from_str(text).ok(),
        }
    }
}

/// Exact rational as an integer pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalRepr {
    num: IntRepr,
    den: IntRepr,
}

impl RationalRepr {
    pub fn of(value: &Rational) -> Self {
        RationalRepr {
            num: IntRepr::of(value.numer()),
            den: IntRepr::of(value.denom()),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        let num = self.num.to_bigint()?;
        let den = self.den.to_bigint()?;
        (den != BigInt::from(0)).then(|| Rational::new(num, den))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureEntry {
    pub u: usize,
    pub v: usize,
    pub distance: u32,
    pub kappa: RationalRepr,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa_alpha: Option<RationalRepr>,
    /// Dual witness values keyed by vertex, present under `--witness`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<BTreeMap<String, RationalRepr>>,
}

impl CurvatureEntry {
    pub fn from_report(report: &CurvatureReport, include_witness: bool) -> Self {
        CurvatureEntry {
            u: report.x,
            v: report.y,
            distance: report.distance,
            kappa: RationalRepr::of(&report.kappa_lly),
            alpha: report
                .kappa_alpha
                .as_ref()
                .map(|(a, _)| RationalRepr::of(a)),
            kappa_alpha: report
                .kappa_alpha
                .as_ref()
                .map(|(_, k)| RationalRepr::of(k)),
            witness: include_witness.then(|| {
                report
                    .dual_witness
                    .values()
                    .map(|(v, r)| (v.to_string(), RationalRepr::of(r)))
                    .collect()
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictEntry {
    pub statement: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kappa: Option<RationalRepr>,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<serde_json::Value>,
}

impl VerdictEntry {
    pub fn from_verdict(verdict: &VerifierVerdict, include_witness: bool) -> Self {
        VerdictEntry {
            statement: verdict.statement.id().to_string(),
            holds: verdict.holds,
            kappa: verdict.kappa.as_ref().map(RationalRepr::of),
            checked: verdict.checked,
            witness: match (&verdict.witness, include_witness || !verdict.holds) {
                (Some(w), true) => Some(witness_json(w)),
                _ => None,
            },
        }
    }
}

fn rational_json(value: &Rational) -> serde_json::Value {
    serde_json::to_value(RationalRepr::of(value)).expect("rational serializes")
}

/// Structured JSON rendering of a counter-witness, tagged by kind.
pub fn witness_json(witness: &CounterWitness) -> serde_json::Value {
    use serde_json::json;
    match witness {
        CounterWitness::DiameterExceeded { u, v, distance, bound } => json!({
            "kind": "diameter-exceeded",
            "u": u, "v": v, "distance": distance,
            "bound": rational_json(bound),
        }),
        CounterWitness::GammaBound {
            root, target, layer, gamma_plus, gamma_zero, degree, lhs, rhs, weak,
        } => json!({
            "kind": "gamma-bound",
            "root": root, "target": target, "layer": layer,
            "gamma_plus": gamma_plus, "gamma_zero": gamma_zero,
            "degree": degree,
            "lhs": rational_json(lhs), "rhs": rational_json(rhs),
            "weak": weak,
        }),
        CounterWitness::EdgeDegreeBound { x, y, kappa, degree } => json!({
            "kind": "edge-degree-bound",
            "x": x, "y": y, "degree": degree,
            "kappa": rational_json(kappa),
        }),
        CounterWitness::MatchingMissing { u, v, kappa, side, violator, neighborhood } => json!({
            "kind": "matching-missing",
            "u": u, "v": v,
            "kappa": rational_json(kappa),
            "side": format!("{side:?}"),
            "violator": violator,
            "neighborhood": neighborhood,
        }),
        CounterWitness::RegularValue { x, y, kappa, expected } => json!({
            "kind": "regular-value",
            "x": x, "y": y,
            "kappa": rational_json(kappa),
            "expected": rational_json(expected),
        }),
        CounterWitness::OrderExceeded { order, exponent } => json!({
            "kind": "order-exceeded",
            "order": order,
            "exponent": rational_json(exponent),
        }),
        CounterWitness::EqualityNotHypercube { reason } => json!({
            "kind": "equality-not-hypercube",
            "reason": reason,
        }),
        CounterWitness::CountingChain { root, layer, lhs, rhs } => json!({
            "kind": "counting-chain",
            "root": root, "layer": layer,
            "lhs": rational_json(lhs), "rhs": rational_json(rhs),
        }),
        CounterWitness::EdgeTotal { edges, bound } => json!({
            "kind": "edge-total",
            "edges": edges,
            "bound": rational_json(bound),
        }),
        CounterWitness::LayerSize { root, layer, expected, actual } => json!({
            "kind": "layer-size",
            "root": root, "layer": layer,
            "expected": expected, "actual": actual,
        }),
        CounterWitness::GammaSize { root, target, layer, plus, minus, zero } => json!({
            "kind": "gamma-size",
            "root": root, "target": target, "layer": layer,
            "plus": plus, "minus": minus, "zero": zero,
        }),
        CounterWitness::FlatEdges { root, layer, count } => json!({
            "kind": "flat-edges",
            "root": root, "layer": layer, "count": count,
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecordEntry {
    pub index: usize,
    pub id: String,
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_kappa: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_edge: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_exponent: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_lo: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound_hi: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub margin: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub satisfies: Option<bool>,
    pub candidate_counterexample: bool,
    pub reverified: bool,
}

impl ScanRecordEntry {
    pub fn from_record(record: &ScanRecord) -> Self {
        ScanRecordEntry {
            index: record.index,
            id: record.id.clone(),
            n: record.n,
            m: record.m,
            max_degree: record.max_degree,
            status: record.status.id().to_string(),
            note: record.note.clone(),
            min_kappa: record.min_kappa.as_ref().map(RationalRepr::of),
            min_edge: record.min_edge,
            bound_exponent: record.bound_exponent.as_ref().map(RationalRepr::of),
            bound_lo: record.bound_lo.as_ref().map(RationalRepr::of),
            bound_hi: record.bound_hi.as_ref().map(RationalRepr::of),
            margin: record.margin.as_ref().map(RationalRepr::of),
            satisfies: record.satisfies,
            candidate_counterexample: record.candidate_counterexample,
            reverified: record.reverified,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalEntry {
    pub id: String,
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exponent: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummaryEntry {
    pub conjecture: String,
    pub source: String,
    pub scanned: usize,
    pub skipped_disconnected: usize,
    pub filtered_out: usize,
    pub parse_errors: usize,
    pub out_of_hypothesis: usize,
    pub satisfied: usize,
    pub candidates: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extremal: Option<ExtremalEntry>,
    pub elapsed_ms: u64,
}

impl ScanSummaryEntry {
    pub fn from_summary(summary: &ScanSummary) -> Self {
        ScanSummaryEntry {
            conjecture: summary.conjecture.id().to_string(),
            source: summary.source.clone(),
            scanned: summary.scanned,
            skipped_disconnected: summary.skipped_disconnected,
            filtered_out: summary.filtered_out,
            parse_errors: summary.parse_errors,
            out_of_hypothesis: summary.out_of_hypothesis,
            satisfied: summary.satisfied,
            candidates: summary.candidates,
            extremal: summary.extremal.as_ref().map(|e: &Extremal| ExtremalEntry {
                id: e.id.clone(),
                order: e.order,
                exponent: e.exponent.as_ref().map(RationalRepr::of),
                max_degree: e.max_degree,
            }),
            elapsed_ms: summary.elapsed_ms as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct C5PowerEntry {
    pub k: u32,
    pub order: usize,
    pub edges: usize,
    pub degree: usize,
    pub min_kappa: RationalRepr,
    pub min_edge: (usize, usize),
    pub tight: bool,
}

impl C5PowerEntry {
    pub fn from_report(report: &C5PowerReport) -> Self {
        C5PowerEntry {
            k: report.k,
            order: report.order,
            edges: report.edges,
            degree: report.degree,
            min_kappa: RationalRepr::of(&report.min_kappa),
            min_edge: report.min_edge,
            tight: report.tight,
        }
    }
}

/// Top-level report emitted by the command-line tool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub curvature: Vec<CurvatureEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub verdicts: Vec<VerdictEntry>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scan_summary: Option<ScanSummaryEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub scan_records: Vec<ScanRecordEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub c5_powers: Vec<C5PowerEntry>,
}

impl ReportDocument {
    pub fn new(input: impl Into<String>) -> Self {
        ReportDocument {
            tool: "ricci".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            input: input.into(),
            curvature: Vec::new(),
            verdicts: Vec::new(),
            scan_summary: None,
            scan_records: Vec::new(),
            c5_powers: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::kappa_lly;
    use crate::graph::hypercube;
    use crate::numerics::rat;

    #[test]
    fn rational_repr_round_trip() {
        for value in [rat(2, 3), rat(-7, 2), rat(0, 1)] {
            let repr = RationalRepr::of(&value);
            assert_eq!(repr.to_rational(), Some(value));
        }
        // beyond 53 bits the numerator becomes a decimal string
        let huge = Rational::new(BigInt::from(1u64 << 60), BigInt::from(1));
        let repr = RationalRepr::of(&huge);
        let json = serde_json::to_string(&repr).unwrap();
        assert!(json.contains("\"1152921504606846976\""));
        let back: RationalRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_rational(), Some(huge));
    }

    #[test]
    fn document_round_trips() {
        let q2 = hypercube(2).unwrap();
        let mut doc = ReportDocument::new("hypercube-2");
        for (u, v) in q2.edges() {
            let report = kappa_lly(&q2, u, v).unwrap();
            doc.curvature.push(CurvatureEntry::from_report(&report, true));
        }
        let json = doc.to_json();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        // every edge of Q2 has kappa = 1/1
        assert_eq!(doc.curvature.len(), 4);
        for entry in &doc.curvature {
            assert_eq!(entry.kappa, RationalRepr::of(&rat(1, 1)));
        }
        // no floating-point number anywhere in the document
        fn all_integers(value: &serde_json::Value) -> bool {
            match value {
                serde_json::Value::Number(n) => n.is_i64() || n.is_u64(),
                serde_json::Value::Array(items) => items.iter().all(all_integers),
                serde_json::Value::Object(map) => map.values().all(all_integers),
                _ => true,
            }
        }
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(all_integers(&parsed));
    }
}
