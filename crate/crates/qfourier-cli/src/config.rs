use std::path::PathBuf;

use clap::ValueEnum;
use qfourier_core::QContext;

use crate::{CliError, CliResult, Common};

pub const CACHE_ENV: &str = "QFOURIER_CACHE_DIR";
const DEFAULT_CACHE: &str = ".qfourier-cache";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Settings after merging flags over the config file over defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q: Option<f64>,
    pub tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub quad_order: Option<usize>,
    pub cache_dir: PathBuf,
    pub output_format: OutputFormat,
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| CliError::domain(format!("config: bad value {v:?} for {key}")))
}

impl RunConfig {
    pub fn resolve(flags: &Common) -> CliResult<Self> {
        let mut file = Common::default();
        let mut file_cache = None;
        if let Some(path) = &flags.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::domain(format!("config {}: {e}", path.display())))?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| CliError::domain(format!("config line {}: expected key=value", i + 1)))?;
                let (k, v) = (k.trim(), v.trim());
                match k {
                    "q" => file.q = Some(parse(k, v)?),
                    "tol" => file.tol = Some(parse(k, v)?),
                    "max_terms" => file.max_terms = Some(parse(k, v)?),
                    "quad_order" => file.quad_order = Some(parse(k, v)?),
                    "cache_dir" => file_cache = Some(PathBuf::from(v)),
                    "output_format" => {
                        file.format = Some(
                            OutputFormat::from_str(v, true)
                                .map_err(|_| CliError::domain(format!("config: bad output_format {v:?}")))?,
                        )
                    }
                    _ => return Err(CliError::domain(format!("config line {}: unknown key {k:?}", i + 1))),
                }
            }
        }
        let cache_dir = flags
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .or(file_cache)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE));
        Ok(RunConfig {
            q: flags.q.or(file.q),
            tol: flags.tol.or(file.tol),
            max_terms: flags.max_terms.or(file.max_terms),
            quad_order: flags.quad_order.or(file.quad_order),
            cache_dir,
            output_format: flags.format.or(file.format).unwrap_or_default(),
        })
    }

    pub fn ctx(&self) -> CliResult<QContext> {
        match self.q {
            Some(q) => self.ctx_for(q),
            None => Err(CliError::domain("q is required (--q or q= in the config file)")),
        }
    }

    pub fn ctx_for(&self, q: f64) -> CliResult<QContext> {
        let mut k = QContext::new(q)?;
        if let Some(t) = self.tol {
            k = k.with_tol(t)?;
        }
        if let Some(m) = self.max_terms {
            k = k.with_max_terms(m)?;
        }
        if let Some(o) = self.quad_order {
            k = k.with_quad_order(o)?;
        }
        Ok(k)
    }
}
