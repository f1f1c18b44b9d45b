//! Report serialization: JSON certificates and CSV tables with every float
//! written to 17 significant digits.

use serde::Serialize;
use serde_json::value::RawValue;

/// `x` with 17 significant digits (`d.dddddddddddddddde±x`); non-finite
/// values become `NaN`, `inf`, `-inf`.
pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn raw(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() {
        fmt17(x)
    } else {
        "null".to_owned()
    };
    RawValue::from_string(s).expect("formatted float is valid JSON")
}

/// `serialize_with` helper for a single float.
pub fn ser_f64<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    raw(*x).serialize(s)
}

/// `serialize_with` helper for a float array.
pub fn ser_f64_slice<S: serde::Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    xs.iter().map(|&x| raw(x)).collect::<Vec<_>>().serialize(s)
}

/// Compact JSON followed by a newline.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

/// CSV with the given header; every row is already formatted.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
