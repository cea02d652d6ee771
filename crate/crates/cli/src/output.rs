use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use monodyn::dynamics::Trajectory;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::CliError;

fn round6(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.5e}").parse().unwrap_or(v)
}

fn rounded(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round6(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), rounded(v))).collect()),
        other => other.clone(),
    }
}

/// Display copy with floats at 6 significant digits, plus the full-precision
/// original under `raw`.
pub fn report_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let raw = serde_json::to_value(value).map_err(|e| CliError::Io(format!("serialize: {e}")))?;
    let mut doc = match rounded(&raw) {
        Value::Object(o) => o,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    doc.insert("raw".into(), raw);
    serde_json::to_string_pretty(&Value::Object(doc)).map_err(|e| CliError::Io(format!("serialize: {e}")))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}").and_then(|_| out.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

pub fn write_traj(traj: &Trajectory, path: &Path, extra: &[(&str, &[f64])]) -> Result<(), CliError> {
    let f = File::create(path).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    let mut w = BufWriter::new(f);
    traj.write_csv(&mut w, extra).map_err(CliError::Lib)?;
    w.flush().map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
