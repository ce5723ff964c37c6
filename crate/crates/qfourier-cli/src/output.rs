use std::io::Write;
use std::path::Path;

use crate::config::OutputFormat;
use crate::{CliError, CliResult};

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        num(x)
    } else {
        "null".into()
    }
}

/// Numeric rows under a header, as CSV or as a JSON array of objects whose
/// keys follow the header order.
pub fn table(header: &[&str], rows: &[Vec<f64>], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(&header.join(","));
            out.push('\n');
            for r in rows {
                out.push_str(&r.iter().map(|v| num(*v)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            out.push('[');
            for (i, r) in rows.iter().enumerate() {
                out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
                let fields: Vec<String> = header.iter().zip(r).map(|(h, v)| format!("\"{h}\": {}", json_num(*v))).collect();
                out.push_str(&fields.join(", "));
                out.push('}');
            }
            out.push_str(if rows.is_empty() { "]\n" } else { "\n]\n" });
        }
    }
    out
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::structural(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::structural(format!("stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_layout() {
        let rows = vec![vec![0.0, 1.0 / 3.0]];
        let csv = table(&["a", "b"], &rows, OutputFormat::Csv);
        assert_eq!(csv, "a,b\n0.0000000000000000e0,3.3333333333333331e-1\n");
        let json = table(&["a", "b"], &rows, OutputFormat::Json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v[0]["b"].as_f64().unwrap(), 1.0 / 3.0);
        assert_eq!(table(&["a"], &[], OutputFormat::Json), "[]\n");
    }
}
