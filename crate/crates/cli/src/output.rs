use lpgst_core::BigInt;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "1";

/// Rounds to 12 significant digits so output is stable across platforms.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub fn fmt_float(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// Integers that fit in `i64` become JSON numbers, larger ones strings.
pub fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

pub fn to_json_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("records serialize")
}

/// Single-line JSON, for records that carry long traces.
pub fn to_json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}
