//! The machine-readable output record and its JSON/CSV renderings.
//!
//! Every data command emits one record with the same top-level shape:
//! `command`, `n`, `weight`, `method`, `payload`, `meta{seed, samples,
//! runtime_ms}`. Exact rationals are rendered as `a/b` strings in lowest
//! terms, reals as decimals with 12 significant digits. Apart from
//! `meta.runtime_ms`, identical invocations produce byte-identical output.

use serde::Serialize;
use serde_json::{json, Value};

use trigon::exact::Rat;
use trigon::gf::MomentReport;
use trigon::weights::WeightValue;

#[derive(Serialize)]
pub struct Meta {
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub runtime_ms: u64,
}

#[derive(Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub n: Option<u64>,
    pub weight: Option<String>,
    pub method: Option<String>,
    pub payload: Value,
    pub meta: Meta,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }
}

/// A real number with 12 significant digits, in plain decimal notation.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// An exact rational as `a/b` (or plain integer) string.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn format_weight_value(v: &WeightValue) -> String {
    match v {
        WeightValue::Exact(r) => format_rat(r),
        WeightValue::Real(x) => format_real(*x),
    }
}

pub fn moments_payload(m: &MomentReport) -> Value {
    match m {
        MomentReport::Exact { mean, variance } => json!({
            "mean": format_rat(mean),
            "variance": format_rat(variance),
            "exact": true,
        }),
        MomentReport::Numeric { mean, variance } => json!({
            "mean": format_real(*mean),
            "variance": format_real(*variance),
            "exact": false,
        }),
    }
}

/// Flatten a payload into CSV with a header row. Values are identical to
/// the JSON rendering.
pub fn payload_to_csv(command: &str, payload: &Value) -> String {
    let field = |v: &Value| -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        }
    };
    let mut out = String::new();
    match command {
        "moments" => {
            let keys: Vec<&str> = ["mean", "variance", "stderr", "samples", "exact"]
                .into_iter()
                .filter(|k| payload.get(k).is_some())
                .collect();
            out.push_str(&keys.join(","));
            out.push('\n');
            let row: Vec<String> = keys.iter().map(|k| field(&payload[*k])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        "dist" => {
            out.push_str("value,probability\n");
            for e in payload["entries"].as_array().into_iter().flatten() {
                out.push_str(&format!("{},{}\n", field(&e["value"]), field(&e["prob"])));
            }
        }
        "sample" => {
            out.push_str("mean,stderr,samples\n");
            out.push_str(&format!(
                "{},{},{}\n",
                field(&payload["mean"]),
                field(&payload["stderr"]),
                field(&payload["samples"]),
            ));
            if let Some(ts) = payload.get("triangulations").and_then(Value::as_array) {
                out.push_str("triangulation\n");
                for t in ts {
                    out.push_str(&format!("{}\n", field(t)));
                }
            }
        }
        "portfolio" => {
            out.push_str("probability\n");
            out.push_str(&format!("{}\n", field(&payload["probability"])));
        }
        "verify" => {
            out.push_str("n,weight,check,verdict,detail\n");
            for r in payload["reports"].as_array().into_iter().flatten() {
                for c in r["checks"].as_array().into_iter().flatten() {
                    out.push_str(&format!(
                        "{},{},{},{},\"{}\"\n",
                        field(&r["n"]),
                        field(&r["weight"]),
                        field(&c["name"]),
                        field(&c["verdict"]),
                        field(&c["detail"]).replace('"', "'"),
                    ));
                }
            }
        }
        "enumerate" => {
            out.push_str("triangulation\n");
            for t in payload["triangulations"].as_array().into_iter().flatten() {
                out.push_str(&format!("{}\n", field(t)));
            }
        }
        _ => out.push_str(&payload.to_string()),
    }
    out
}

/// Clustered-real probability as its exact rational string alongside the
/// clustered value.
pub fn real_entry(value: f64, prob: &Rat) -> Value {
    json!({ "value": format_real(value), "prob": format_rat(prob) })
}
