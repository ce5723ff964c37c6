use std::path::{Path, PathBuf};

use num_complex::Complex64;
use qfourier_core::qfourier::{coefficients, partial_sum_theta, CoefficientForm, FourierCoefficients, Function};
use qfourier_core::qtrig::{eval_c, eval_e, eval_s, LatticePoint, TrigRepresentation};
use qfourier_core::zeros::{check_interlacing, ZeroKind, ZeroTable};

use crate::cache::ZeroCache;
use crate::config::{OutputFormat, RunConfig};
use crate::grid::{parse_number, parse_values};
use crate::output::{emit, table};
use crate::{CliError, CliResult, CoeffsArgs, EvalArgs, FnKind, FormArg, KindArg, Rep, SynthArgs, ZerosArgs};

const POINT_HEADER: [&str; 3] = ["theta", "value", "imag_residue"];

fn representation(r: Rep) -> TrigRepresentation {
    match r {
        Rep::Auto => TrigRepresentation::Auto,
        Rep::Phi21 => TrigRepresentation::SeriesPhi21,
        Rep::Phi22 => TrigRepresentation::ContinuedPhi22,
        Rep::Hermite => TrigRepresentation::HermiteSeries,
    }
}

/// Rows of `(θ, Re, Im)`. For E the imaginary column is Im 𝓔(x; iω).
pub fn eval(a: &EvalArgs, cfg: &RunConfig) -> CliResult<bool> {
    let ctx = cfg.ctx()?;
    let omega = match (a.omega, a.omega_classical) {
        (Some(w), _) => w,
        (None, Some(f)) => f * (1.0 - ctx.q) / 2.0,
        (None, None) => return Err(CliError::domain("one of --omega or --omega-classical is required")),
    };
    let thetas = match (&a.theta, &a.x) {
        (Some(t), _) => parse_values(t)?,
        (None, Some(x)) => parse_values(x)?
            .into_iter()
            .map(|x| {
                if (-1.0..=1.0).contains(&x) {
                    Ok(x.acos())
                } else {
                    Err(CliError::domain(format!("x = {x} lies outside [-1, 1]")))
                }
            })
            .collect::<CliResult<_>>()?,
        (None, None) => return Err(CliError::domain("one of --theta or --x is required")),
    };
    let rep = representation(a.rep);
    let mut rows = Vec::with_capacity(thetas.len());
    for t in thetas {
        let p = LatticePoint::real_point(t);
        let v = match a.func {
            FnKind::C => eval_c(&p, Complex64::new(omega, 0.0), rep, &ctx)?,
            FnKind::S => eval_s(&p, Complex64::new(omega, 0.0), rep, &ctx)?,
            FnKind::E => eval_e(&p, Complex64::new(0.0, omega), rep, &ctx)?,
        };
        rows.push(vec![t, v.re, v.im]);
    }
    emit(None, &table(&POINT_HEADER, &rows, cfg.output_format))?;
    Ok(true)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let p = out.with_extension("json");
    if p == out {
        out.with_extension("sidecar.json")
    } else {
        p
    }
}

fn zeros_json(t: &ZeroTable) -> String {
    let rows: Vec<Vec<f64>> = t
        .zeros
        .iter()
        .enumerate()
        .map(|(i, z)| vec![(i + 1) as f64, *z, t.residuals[i], t.brackets[i].0, t.brackets[i].1])
        .collect();
    let body = table(&["index", "omega", "residual", "bracket_lo", "bracket_hi"], &rows, OutputFormat::Json);
    format!("{{\n\"sidecar\": {},\n\"zeros\": {}}}\n", t.sidecar_json(), body.trim_end())
}

pub fn zeros(a: &ZerosArgs, cfg: &RunConfig) -> CliResult<bool> {
    let ctx = cfg.ctx()?;
    let cache = ZeroCache::new(&cfg.cache_dir);
    let (kind, other) = match a.kind {
        KindArg::Sine => (ZeroKind::SineZeros, ZeroKind::CosineZeros),
        KindArg::Cosine => (ZeroKind::CosineZeros, ZeroKind::SineZeros),
    };
    let (t, hit) = cache.get(kind, a.count, &ctx, true)?;
    eprintln!("{} {} {kind:?} zeros at q = {}", if hit { "cache hit:" } else { "computed" }, t.len(), ctx.q);
    if let Some(o) = cache.load_full(other, &ctx) {
        let m = o.len().min(t.len());
        let (s, c) = match kind {
            ZeroKind::SineZeros => (cache.truncated(&t, m), cache.truncated(&o, m)),
            ZeroKind::CosineZeros => (cache.truncated(&o, m), cache.truncated(&t, m)),
        };
        let r = check_interlacing(&s, &c)?;
        if !r.holds {
            return Err(CliError::structural(format!("interlacing fails at index {:?}", r.first_violation)));
        }
        eprintln!("interlacing verified on {m} sine/cosine pairs");
    }
    let text = match cfg.output_format {
        OutputFormat::Csv => t.to_csv(),
        OutputFormat::Json => zeros_json(&t),
    };
    emit(a.out.as_deref(), &text)?;
    if let (Some(out), OutputFormat::Csv) = (&a.out, cfg.output_format) {
        emit(Some(&sidecar_path(out)), &t.sidecar_json())?;
    }
    Ok(true)
}

/// Largest |n| in a `mode:K:n` name, so the table is long enough to build it.
fn mode_index(name: &str) -> usize {
    match name.split(':').collect::<Vec<_>>().as_slice() {
        ["mode", _, n] => n.parse::<i64>().map(|n| n.unsigned_abs() as usize).unwrap_or(0),
        _ => 0,
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::domain(format!("{}: {e}", path.display())))
}

/// `theta,f` rows; blank lines, `#` comments and a leading header are skipped.
fn read_points(path: &Path) -> CliResult<Vec<(f64, f64)>> {
    let mut pts = Vec::new();
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parsed = line.split_once(',').and_then(|(a, b)| Some((parse_number(a).ok()?, b.trim().parse::<f64>().ok()?)));
        match parsed {
            Some(p) => pts.push(p),
            None if pts.is_empty() && i == 0 => continue,
            None => return Err(CliError::domain(format!("{} line {}: expected theta,f", path.display(), i + 1))),
        }
    }
    Ok(pts)
}

pub fn coeffs(a: &CoeffsArgs, cfg: &RunConfig) -> CliResult<bool> {
    let ctx = cfg.ctx()?;
    let cache = ZeroCache::new(&cfg.cache_dir);
    let auto = !a.no_auto;
    let f = match (&a.func, &a.points) {
        (Some(name), _) => {
            let (t, _) = cache.get(ZeroKind::SineZeros, a.n_max.max(mode_index(name)), &ctx, auto)?;
            Function::parse(name, &t, &ctx)?
        }
        (None, Some(p)) => {
            let name = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Function::from_points(format!("points:{name}"), read_points(p)?)?
        }
        (None, None) => return Err(CliError::domain("one of --fn or --points is required")),
    };
    let (t, _) = cache.get(ZeroKind::SineZeros, a.n_max, &ctx, auto)?;
    let form = match a.form {
        FormArg::Real => CoefficientForm::Real,
        FormArg::Complex => CoefficientForm::Complex,
    };
    let c = coefficients(&f, form, a.n_max, &t, &ctx)?;
    emit(a.out.as_deref(), &(c.to_json() + "\n"))?;
    Ok(true)
}

pub fn synth(a: &SynthArgs, cfg: &RunConfig) -> CliResult<bool> {
    let json = read(&a.coeffs)?;
    let head: serde_json::Value =
        serde_json::from_str(&json).map_err(|e| CliError::structural(format!("coefficient file: {e}")))?;
    let q = head["q"]
        .as_str()
        .and_then(|s| s.parse::<f64>().ok())
        .ok_or_else(|| CliError::structural("coefficient file: missing q"))?;
    let n_file = head["N"].as_u64().ok_or_else(|| CliError::structural("coefficient file: missing N"))? as usize;
    if cfg.q.is_some_and(|cq| cq != q) {
        return Err(CliError::domain(format!("--q {} disagrees with q = {q} in the coefficient file", cfg.q.unwrap())));
    }
    let ctx = cfg.ctx_for(q)?;
    let (t, _) = ZeroCache::new(&cfg.cache_dir).get(ZeroKind::SineZeros, n_file, &ctx, !a.no_auto)?;
    let c = FourierCoefficients::from_json(&json, &t)?;
    let n = a.n.unwrap_or(n_file);
    let mut rows = Vec::new();
    for th in parse_values(&a.theta)? {
        let v = partial_sum_theta(&c, th, n, &ctx)?;
        rows.push(vec![th, v.re, v.im]);
    }
    emit(a.out.as_deref(), &table(&POINT_HEADER, &rows, cfg.output_format))?;
    Ok(true)
}
