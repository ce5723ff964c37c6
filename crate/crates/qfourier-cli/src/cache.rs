use std::fs;
use std::path::{Path, PathBuf};

use qfourier_core::zeros::{find_cosine_zeros, find_sine_zeros, ZeroKind, ZeroTable};
use qfourier_core::{QContext, VERSION};
use sha2::{Digest, Sha256};

use crate::{CliError, CliResult};

/// SHA-256 over (q, tol, kind, version), hex encoded.
pub fn key(q: f64, tol: f64, kind: ZeroKind, version: &str) -> String {
    let mut h = Sha256::new();
    h.update(format!("q={q:.16e}\ntol={tol:.16e}\nkind={kind:?}\nversion={version}\n"));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

pub struct ZeroCache {
    dir: PathBuf,
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::structural(format!("{}: {e}", path.display()))
}

/// First `n` rows of a table; zeros are found in order, so this equals a
/// fresh search for `n` zeros.
fn truncate(t: &ZeroTable, n: usize) -> ZeroTable {
    ZeroTable {
        zeros: t.zeros[..n].to_vec(),
        residuals: t.residuals[..n].to_vec(),
        brackets: t.brackets[..n].to_vec(),
        ..t.clone()
    }
}

impl ZeroCache {
    pub fn new(dir: &Path) -> Self {
        ZeroCache { dir: dir.to_path_buf() }
    }

    fn paths(&self, kind: ZeroKind, ctx: &QContext) -> (PathBuf, PathBuf) {
        let k = key(ctx.q, ctx.tol, kind, VERSION);
        (self.dir.join(format!("{k}.csv")), self.dir.join(format!("{k}.json")))
    }

    /// Whatever table is cached for `kind` under this context.
    pub fn load_full(&self, kind: ZeroKind, ctx: &QContext) -> Option<ZeroTable> {
        let (csv, side) = self.paths(kind, ctx);
        let sidecar = ZeroTable::parse_sidecar(&fs::read_to_string(side).ok()?).ok()?;
        if sidecar.kind != kind || sidecar.q != ctx.q || sidecar.version != VERSION {
            return None;
        }
        ZeroTable::from_csv(&fs::read_to_string(csv).ok()?, &sidecar).ok()
    }

    /// Cached table with at least `count` zeros, cut to `count`.
    pub fn load(&self, kind: ZeroKind, count: usize, ctx: &QContext) -> Option<ZeroTable> {
        let table = self.load_full(kind, ctx)?;
        (table.len() >= count).then(|| truncate(&table, count))
    }

    pub fn truncated(&self, t: &ZeroTable, n: usize) -> ZeroTable {
        truncate(t, n)
    }

    fn store(&self, table: &ZeroTable, ctx: &QContext) -> CliResult<()> {
        fs::create_dir_all(&self.dir).map_err(|e| io_err(&self.dir, e))?;
        let (csv, side) = self.paths(table.kind, ctx);
        fs::write(&csv, table.to_csv()).map_err(|e| io_err(&csv, e))?;
        fs::write(&side, table.sidecar_json()).map_err(|e| io_err(&side, e))
    }

    /// The table and whether it came from the cache. Without `auto` a miss
    /// is a structural error.
    pub fn get(&self, kind: ZeroKind, count: usize, ctx: &QContext, auto: bool) -> CliResult<(ZeroTable, bool)> {
        if let Some(t) = self.load(kind, count, ctx) {
            return Ok((t, true));
        }
        if !auto {
            return Err(CliError::structural(format!(
                "no cached {kind:?} table with {count} zeros at q = {} in {} (--no-auto)",
                ctx.q,
                self.dir.display()
            )));
        }
        let t = match kind {
            ZeroKind::SineZeros => find_sine_zeros(count, ctx)?,
            ZeroKind::CosineZeros => find_cosine_zeros(count, ctx)?,
        };
        self.store(&t, ctx)?;
        Ok((t, false))
    }
}
