//! Report envelopes: every command answers with one JSON document whose
//! `payload` depends only on the inputs and the seed.  The envelope adds
//! identifying metadata (tool version, scheme digest, wall-clock timestamp)
//! around that reproducible core.

use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Value};

use modelset::exactnum::{ExactValue, Rational};

/// Render an exact value as a `{exact, decimal}` pair.
pub fn dual(v: &ExactValue, precision: usize) -> Value {
    json!({
        "exact": v.to_string(),
        "decimal": v.to_decimal(precision),
    })
}

/// Render a rational as a `{exact, decimal}` pair.
pub fn dual_rational(r: &Rational, precision: usize) -> Value {
    dual(&ExactValue::Rational(r.clone()), precision)
}

/// Print the envelope for one command run.  The payload is serialised as
/// given; identical payloads serialise to identical bytes because JSON maps
/// here are ordered deterministically.
pub fn emit(command: &str, digest: &str, parameters: Value, payload: Value) {
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let doc = json!({
        "tool": "modelset",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "scheme_digest": digest,
        "parameters": parameters,
        "timestamp": timestamp,
        "payload": payload,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("report serialisation"));
}
