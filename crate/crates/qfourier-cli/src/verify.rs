use std::f64::consts::PI;

use num_complex::Complex64;
use qfourier_core::qcore::{poch_inf_real, q_hermite_real};
use qfourier_core::qfourier::*;
use qfourier_core::qtrig::*;
use qfourier_core::quadrature::*;
use qfourier_core::zeros::*;
use qfourier_core::{QContext, QResult};

use crate::config::{OutputFormat, RunConfig};
use crate::output::{emit, num};
use crate::{CliResult, Suite};

use TrigRepresentation::Auto;

/// One measured residual against its tolerance. Yes/no checks use
/// residual 0 or 1 against tolerance 0.
struct Check {
    name: String,
    residual: f64,
    tol: f64,
    error: Option<String>,
}

impl Check {
    fn pass(&self) -> bool {
        self.error.is_none() && self.residual <= self.tol
    }
}

type Measure<'a> = Box<dyn Fn() -> QResult<f64> + 'a>;

struct Runner<'a> {
    specs: Vec<(String, f64, Measure<'a>)>,
}

impl<'a> Runner<'a> {
    fn add(&mut self, name: impl Into<String>, tol: f64, f: impl Fn() -> QResult<f64> + 'a) {
        self.specs.push((name.into(), tol, Box::new(f)));
    }

    fn flag(&mut self, name: impl Into<String>, f: impl Fn() -> QResult<bool> + 'a) {
        self.add(name, 0.0, move || Ok(if f()? { 0.0 } else { 1.0 }));
    }

    fn run(self) -> Vec<Check> {
        self.specs
            .into_iter()
            .map(|(name, tol, f)| match f() {
                Ok(r) if r.is_nan() => Check { name, residual: r, tol, error: Some("NaN residual".into()) },
                Ok(residual) => Check { name, residual, tol, error: None },
                Err(e) => Check { name, residual: f64::NAN, tol, error: Some(e.to_string()) },
            })
            .collect()
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn envelope_ratio(w: f64, k: &QContext) -> QResult<f64> {
    Ok(poch_inf_real(-w * w, k.q * k.q, k)? / poch_inf_real(-k.q * w * w, k.q * k.q, k)?)
}

fn max_of(it: impl IntoIterator<Item = QResult<f64>>) -> QResult<f64> {
    it.into_iter().try_fold(0.0f64, |m, v| Ok(m.max(v?)))
}

fn orthogonality<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    let gram = move |fam| -> QResult<GramMatrix> { gram_matrix(fam, &find_sine_zeros(6, k)?, 6, k) };
    let scale = move || -> QResult<f64> {
        let (cm, sm) = (gram(GramFamily::Cosine)?, gram(GramFamily::Sine)?);
        Ok((0..6).map(|i| cm.get(i, i).norm().max(sm.get(i, i).norm())).fold(0.0, f64::max))
    };
    r.add("cosine Gram off-diagonal / diagonal scale", 1e-8, move || Ok(gram(GramFamily::Cosine)?.max_off_diagonal() / scale()?));
    r.add("sine Gram off-diagonal / diagonal scale", 1e-8, move || Ok(gram(GramFamily::Sine)?.max_off_diagonal() / scale()?));
    r.add("mixed Gram entries / diagonal scale", 1e-8, move || {
        Ok(gram(GramFamily::Mixed)?.entries.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale()?)
    });
    r.add("exponential Gram |G - I|", 1e-8, move || Ok(gram(GramFamily::Exponential)?.identity_defect()));
    r.add("Gram diagonal vs k(omega_n)", 1e-8, move || {
        let t = find_sine_zeros(6, k)?;
        let (cm, sm) = (gram(GramFamily::Cosine)?, gram(GramFamily::Sine)?);
        max_of((0..6).map(|i| {
            let kv = k_norm(t.zeros[i], KMethod::ClosedForm, k)?.value;
            Ok(rel(cm.get(i, i).re, kv).max(rel(sm.get(i, i).re, kv)))
        }))
    });
    for n in [0, 1, 3] {
        r.add(format!("Askey-Wilson moment n={n} closed vs quadrature"), 1e-10, move || {
            Ok(rel(askey_wilson_moment_numeric(n, k)?, askey_wilson_moment(n, k)?))
        });
    }
}

fn identities<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    r.add("C(x)C(x') + S(x)S(x') on complex lattice pairs", 1e-10, move || {
        max_of((0..6).map(|i| {
            let (theta, y, w) = (0.3 + 0.5 * i as f64, -0.3 + 0.12 * i as f64, 0.2 + 0.45 * i as f64);
            let p = LatticePoint::new(Complex64::from_polar(y.exp(), theta))?;
            let p2 = p.shift(-0.5, k);
            let lhs = eval_c(&p, c(w), Auto, k)? * eval_c(&p2, c(w), Auto, k)?
                + eval_s(&p, c(w), Auto, k)? * eval_s(&p2, c(w), Auto, k)?;
            let e = envelope_ratio(w, k)?;
            Ok((lhs - c(e)).norm() / e)
        }))
    });
    r.add("C^2 + S^2 at eta", 1e-10, move || {
        let eta = LatticePoint::eta(k);
        max_of([0.1, 0.4, 0.8, 1.3, 2.5, 5.0, 12.0, 40.0].map(|w| {
            let (cc, ss) = (eval_c(&eta, c(w), Auto, k)?.re, eval_s(&eta, c(w), Auto, k)?.re);
            let e = envelope_ratio(w, k)?;
            Ok(((cc * cc + ss * ss) - e).abs() / e)
        }))
    });
    r.add("C(eta; omega_n) closed form, n <= 5", 1e-9, move || {
        let (eta, t) = (LatticePoint::eta(k), find_sine_zeros(5, k)?);
        max_of((1..=5).map(|n| Ok(rel(value_at_sine_zero(n, &t, k)?, eval_c(&eta, c(t.zeros[n - 1]), Auto, k)?.re))))
    });
    r.add("S(eta; cosine zero) closed form, n <= 5", 1e-9, move || {
        let (eta, t) = (LatticePoint::eta(k), find_cosine_zeros(5, k)?);
        max_of((1..=5).map(|n| Ok(rel(value_at_cosine_zero(n, &t, k)?, eval_s(&eta, c(t.zeros[n - 1]), Auto, k)?.re))))
    });
    r.add("delta relations for C and S", 1e-8, move || {
        let mut worst = 0.0f64;
        for w in [0.3, 1.1, 4.0] {
            let g = delta_coefficient(k) * w;
            for theta in [0.4, 1.3, 2.6] {
                let p = LatticePoint::real_point(theta);
                let (cv, sv) = (eval_c(&p, c(w), Auto, k)?, eval_s(&p, c(w), Auto, k)?);
                let dc = delta_derivative(|x: &LatticePoint| eval_c(x, c(w), Auto, k), &p, k)?;
                let ds = delta_derivative(|x: &LatticePoint| eval_s(x, c(w), Auto, k), &p, k)?;
                let scale = (g * cv.norm().max(sv.norm())).max(1.0);
                worst = worst.max((dc + g * sv).norm() / scale).max((ds - g * cv).norm() / scale);
            }
        }
        Ok(worst)
    });
    r.add("difference equation residual", 1e-8, move || {
        let mut worst = 0.0f64;
        for w in [0.3, 1.1, 4.0] {
            for theta in [0.4, 1.3, 2.6] {
                worst = worst.max(difference_equation_residual(&LatticePoint::real_point(theta), w, Auto, k)?);
            }
        }
        Ok(worst)
    });
}

fn limits<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    r.add("C_q, S_q vs cos, sin at classical frequencies 1, 2", 2e-3, move || {
        let mut worst = 0.0f64;
        for f in [1.0f64, 2.0] {
            let w = f * (1.0 - k.q) / 2.0;
            for j in 0..9 {
                let x = -0.8 + 0.2 * j as f64;
                let (cc, ss) = cs_real(x.acos(), w, k)?;
                worst = worst.max((cc - (f * x).cos()).abs()).max((ss - (f * x).sin()).abs());
            }
        }
        Ok(worst)
    });
    r.add("weight vs 2 sin(theta)", 1e-2, move || {
        max_of((1..10).map(|j| {
            let t = PI * j as f64 / 10.0;
            Ok((weight(t, k)? - 2.0 * t.sin()).abs())
        }))
    });
}

fn asymptotics<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    r.flag("|omega_n - q^(1/4-n)| nonincreasing for n >= 4", move || {
        let t = find_sine_zeros(14, k)?;
        let off = asymptotic_offsets(&t);
        Ok((4..off.len()).all(|n| off[n].abs() <= off[n - 1].abs() + 4.0 * f64::EPSILON * t.zeros[n]))
    });
    r.add("amplitude A(theta)^-2 vs weight", 1e-12, move || {
        max_of([0.6, 1.2, 2.5].map(|t| Ok(rel(amplitude_a(t, k)?.amplitude.powi(-2), weight(t, k)?))))
    });
    r.add("leading asymptotics at omega = q^(1/4-12), relative to amplitude", 0.05, move || {
        let w = k.q.powf(0.25 - 12.0);
        max_of([0.7, 1.0, 2.2].map(|t| {
            let (pc, ps) = asymptotic_cs(t, 12, k)?;
            let (cv, sv) = cs_real(t, w, k)?;
            Ok((pc - cv).abs().max((ps - sv).abs()) / cv.hypot(sv))
        }))
    });
    r.add("complete expansions, depth 8, omega = 40", 1e-10, move || {
        max_of([0.7, 1.3].map(|t| {
            let (cv, sv) = cs_real(t, 40.0, k)?;
            let ec = (full_expansion_c(t, 40.0, 8, k)? - cv).abs();
            let es = (full_expansion_s(t, 40.0, 8, SecondSumVariant::Symmetric, k)? - sv).abs();
            Ok(ec.max(es))
        }))
    });
}

fn zeros<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    r.flag("interlacing of 10 sine and 10 cosine zeros", move || {
        let rep = check_interlacing(&find_sine_zeros(10, k)?, &find_cosine_zeros(10, k)?)?;
        Ok(rep.holds && rep.checked == 10)
    });
    r.flag("annulus counts for n = 6..12", move || {
        let a = zero_count_annuli(&find_sine_zeros(14, k)?, 6, 12);
        Ok(a.covered && a.increments_below_four() && a.one_positive_zero_per_annulus())
    });
    r.add("N = 12 products vs direct, relative to 2.5 x tail estimate", 1.0, move || {
        let eta = LatticePoint::eta(k);
        let (s, cz) = (find_sine_zeros(12, k)?, find_cosine_zeros(12, k)?);
        max_of([0.1, 0.3, 0.7].map(|w| {
            let ps = product_form_s(w, &s, 12, k)?;
            let pc = product_form_c(w, &cz, 12, k)?;
            let es = (ps.value - eval_s(&eta, c(w), Auto, k)?.re).abs() / (2.5 * ps.tail_estimate + 1e-14);
            let ec = (pc.value - eval_c(&eta, c(w), Auto, k)?.re).abs() / (2.5 * pc.tail_estimate + 1e-14);
            Ok(es.max(ec))
        }))
    });
}

fn generating<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    r.add("bilinear relation, N = 12, (1.0, 1.4, 0.5)", 1e-6, move || {
        Ok(bilinear_check(1.0, 1.4, 0.5, 12, &find_sine_zeros(12, k)?, k)?.rel_gap())
    });
    r.add("bilinear relation at r = 0 (rhs carries 1/pi)", 1e-6, move || {
        Ok(bilinear_check(1.0, 1.4, 0.0, 12, &find_sine_zeros(12, k)?, k)?.rel_gap())
    });
    r.add("r = 0 rhs vs printed generating function / pi", 1e-14, move || {
        let z = bilinear_check(1.0, 1.4, 0.0, 12, &find_sine_zeros(12, k)?, k)?;
        Ok(rel(z.rhs, generating_r0_printed(1.0, k)? / PI))
    });
    r.add("Poisson kernel reproduces H_2", 1e-9, move || {
        let want = 0.25 * q_hermite_real(2, 1.0f64.cos(), k);
        Ok((poisson_reproducing_integral(2, 1.0, 0.5, k)? - want).abs())
    });
    r.add("Abel mean of x: corrected kernel vs coefficient route", 1e-5, move || {
        let f = Function::x();
        let route = abel_coefficient_route(&f, 0.8, 1.0, 12, &find_sine_zeros(12, k)?, k)?;
        Ok((route - abel_sum_corrected(&f, 0.8, 1.0, k)?).norm())
    });
}

fn legendre<'a>(r: &mut Runner<'a>, k: &'a QContext) {
    r.add("q-Bessel bridge for S and C", 1e-10, move || {
        max_of([0.3, 0.8].map(|w| {
            let b = qbessel_bridge(w, k)?;
            Ok(rel(b.s_bessel, b.s_direct).max(rel(b.c_bessel, b.c_direct)))
        }))
    });
    r.add("q-Bessel sums over order, m <= 40", 1e-6, move || {
        let t = find_sine_zeros(3, k)?;
        max_of([1, 2].map(|l| Ok(qbessel_orthogonality_sum(BesselSumKind::SumOverM { n: 1, l, m_max: 40 }, &t, k)?.gap())))
    });
    r.add("q-Bessel sums over zeros, |n| <= 16", 1e-5, move || {
        let t = find_sine_zeros(16, k)?;
        max_of([(1, 1), (0, 2)].map(|(m, p)| {
            Ok(qbessel_orthogonality_sum(BesselSumKind::SumOverN { m, p, n_max: 16 }, &t, k)?.gap())
        }))
    });
    r.add("Legendre coefficient closed form vs quadrature (m=2, n=3)", 1e-8, move || {
        let t = find_sine_zeros(6, k)?;
        let closed = legendre_coefficient(2, 3, &t, k)?;
        let quad = coefficients(&Function::legendre(2, k), CoefficientForm::Complex, 6, &t, k)?;
        Ok((closed - quad.c(3).unwrap_or_default()).norm() / closed.norm())
    });
    r.add("decay exponent of the x expansion vs 1/2, relative", 0.1, move || {
        let fit = decay_fit(&legendre_expansion(1, 12, &find_sine_zeros(12, k)?, k)?, 3, k)?;
        Ok((fit.exponent - 0.5).abs() / 0.5)
    });
    r.add("E(x; i omega_1) in ultraspherical polynomials", 1e-10, move || {
        let w = find_sine_zeros(1, k)?.zeros[0];
        let e = eval_e(&LatticePoint::real_point(0.3f64.acos()), Complex64::new(0.0, w), Auto, k)?;
        Ok((eq_in_ultraspherical(w, 40, 0.3, k)? - e).norm())
    });
}

pub fn run(suite: Suite, cfg: &RunConfig) -> CliResult<bool> {
    let k = cfg.ctx()?;
    let mut r = Runner { specs: Vec::new() };
    let all = suite == Suite::All;
    type AddFn = for<'a> fn(&mut Runner<'a>, &'a QContext);
    let table: [(Suite, AddFn); 7] = [
        (Suite::Orthogonality, orthogonality),
        (Suite::Identities, identities),
        (Suite::Limits, limits),
        (Suite::Asymptotics, asymptotics),
        (Suite::Zeros, zeros),
        (Suite::Generating, generating),
        (Suite::Legendre, legendre),
    ];
    for (s, add) in table {
        if all || s == suite {
            add(&mut r, &k);
        }
    }
    let checks = r.run();
    let ok = checks.iter().all(Check::pass);
    let text = match cfg.output_format {
        OutputFormat::Csv => checks
            .iter()
            .map(|c| {
                let tag = if c.pass() { "PASS" } else { "FAIL" };
                match &c.error {
                    Some(e) => format!("{tag} {}: {e}\n", c.name),
                    None => format!("{tag} {}: residual {} tol {}\n", c.name, num(c.residual), num(c.tol)),
                }
            })
            .collect::<String>(),
        OutputFormat::Json => {
            let v: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "check": c.name,
                        "status": if c.pass() { "PASS" } else { "FAIL" },
                        "residual": num(c.residual),
                        "tol": num(c.tol),
                        "error": c.error,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
        }
    };
    emit(None, &text)?;
    Ok(ok)
}
