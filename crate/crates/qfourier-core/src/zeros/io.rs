use serde::{Deserialize, Serialize};

use super::{ZeroKind, ZeroTable};
use crate::error::{QError, QResult};
use crate::qtrig::TrigRepresentation;

/// JSON companion of the CSV table; enough to decide whether a cached
/// table is still valid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSidecar {
    pub kind: ZeroKind,
    pub q: f64,
    pub tol: f64,
    pub representation: TrigRepresentation,
    pub version: String,
}

const HEADER: &str = "index,omega,residual,bracket_lo,bracket_hi";

fn bad(msg: impl Into<String>) -> QError {
    QError::Structural(msg.into())
}

impl ZeroTable {
    /// One row per zero, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (i, z) in self.zeros.iter().enumerate() {
            let (lo, hi) = self.brackets[i];
            out.push_str(&format!("{},{:.16e},{:.16e},{:.16e},{:.16e}\n", i + 1, z, self.residuals[i], lo, hi));
        }
        out
    }

    pub fn sidecar(&self) -> ZeroSidecar {
        ZeroSidecar {
            kind: self.kind,
            q: self.q,
            tol: self.tol_used,
            representation: TrigRepresentation::HermiteSeries,
            version: crate::VERSION.to_string(),
        }
    }

    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(&self.sidecar()).expect("sidecar serializes")
    }

    pub fn from_csv(csv: &str, sidecar: &ZeroSidecar) -> QResult<ZeroTable> {
        let mut lines = csv.lines();
        if lines.next().map(str::trim) != Some(HEADER) {
            return Err(bad("zero table CSV: missing or wrong header"));
        }
        let mut table = ZeroTable {
            kind: sidecar.kind,
            q: sidecar.q,
            zeros: vec![],
            residuals: vec![],
            brackets: vec![],
            tol_used: sidecar.tol,
        };
        for (row, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(bad(format!("zero table CSV row {}: expected 5 fields", row + 1)));
            }
            let num = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(format!("row {}: {e}", row + 1)));
            if f[0].trim().parse::<usize>().ok() != Some(row + 1) {
                return Err(bad(format!("zero table CSV row {}: index out of order", row + 1)));
            }
            table.zeros.push(num(f[1])?);
            table.residuals.push(num(f[2])?);
            table.brackets.push((num(f[3])?, num(f[4])?));
        }
        Ok(table)
    }

    pub fn parse_sidecar(json: &str) -> QResult<ZeroSidecar> {
        serde_json::from_str(json).map_err(|e| bad(format!("zero table sidecar: {e}")))
    }
}

impl ZeroTable {
    /// SHA-256 over kind, q and the CSV rows; names a table in coefficient files.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(format!("{:?}\n{:.16e}\n", self.kind, self.q));
        h.update(self.to_csv());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}
