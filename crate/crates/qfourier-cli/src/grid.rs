use std::f64::consts::PI;

use crate::{CliError, CliResult};

/// A number with optional π: `1.5`, `pi`, `π`, `pi/2`, `3pi/4`, `-pi`.
pub fn parse_number(s: &str) -> CliResult<f64> {
    let bad = || CliError::domain(format!("bad number {s:?}"));
    let t = s.trim().replace('π', "pi");
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t.as_str(), 1.0),
    };
    let Some(coef) = num.strip_suffix("pi") else {
        return num.parse::<f64>().map(|v| v / den).map_err(|_| bad());
    };
    let coef = match coef.trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * PI / den)
}

/// `grid:start:end:count` (inclusive ends), or a comma list of numbers.
pub fn parse_values(spec: &str) -> CliResult<Vec<f64>> {
    if let Some(rest) = spec.strip_prefix("grid:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [a, b, n] = parts.as_slice() else {
            return Err(CliError::domain(format!("grid needs start:end:count, got {spec:?}")));
        };
        let (a, b) = (parse_number(a)?, parse_number(b)?);
        let n: usize = n.trim().parse().map_err(|_| CliError::domain(format!("bad grid count in {spec:?}")))?;
        return Ok(match n {
            0 => vec![],
            1 => vec![a],
            _ => (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect(),
        });
    }
    spec.split(',').map(parse_number).collect()
}
