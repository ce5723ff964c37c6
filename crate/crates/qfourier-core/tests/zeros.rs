use num_complex::Complex64;
use proptest::prelude::*;
use qfourier_core::qcore::poch_inf_real;
use qfourier_core::qtrig::{eval_c, eval_s, LatticePoint, TrigRepresentation};
use qfourier_core::zeros::*;
use qfourier_core::{QContext, QError};

fn ctx(q: f64) -> QContext {
    QContext::new(q).unwrap()
}

fn s_eta(w: f64, k: &QContext) -> f64 {
    eval_s(&LatticePoint::eta(k), Complex64::new(w, 0.0), TrigRepresentation::Auto, k).unwrap().re
}

fn c_eta(w: f64, k: &QContext) -> f64 {
    eval_c(&LatticePoint::eta(k), Complex64::new(w, 0.0), TrigRepresentation::Auto, k).unwrap().re
}

// sqrt((−ω²;q²)_∞/(−qω²;q²)_∞), the size of (C, S) at η
fn envelope(w: f64, k: &QContext) -> f64 {
    let q = k.q;
    (poch_inf_real(-w * w, q * q, k).unwrap() / poch_inf_real(-q * w * w, q * q, k).unwrap()).sqrt()
}

#[test]
fn scaled_functions_at_zero() {
    let k = ctx(0.5);
    assert_eq!(eval_s_scaled(0.0, &k).unwrap(), 0.0);
    assert_eq!(eval_c_scaled(0.0, &k).unwrap(), 1.0);
}

#[test]
fn scaled_functions_match_direct_values() {
    let k = ctx(0.5);
    for w in [0.3, 2.0, 9.0] {
        let den = poch_inf_real(-0.5 * w * w, 0.25, &k).unwrap();
        let s = eval_s_scaled(w, &k).unwrap() / den;
        let c = eval_c_scaled(w, &k).unwrap() / den;
        assert!((s - s_eta(w, &k)).abs() < 1e-13 * envelope(w, &k));
        assert!((c - c_eta(w, &k)).abs() < 1e-13 * envelope(w, &k));
    }
}

#[test]
fn sine_changes_sign_at_test_points() {
    let q = 0.5;
    let k = ctx(q);
    let signs: Vec<f64> = (8..=12).map(|n| eval_s_scaled(q.powi(-n), &k).unwrap().signum()).collect();
    for pair in signs.windows(2) {
        assert_eq!(pair[0], -pair[1]);
    }
}

#[test]
fn sine_is_small_at_shifted_test_point() {
    let q = 0.5;
    let k = ctx(q);
    let w = q.powf(0.25 - 10.0);
    assert!(s_eta(w, &k).abs() <= 0.05 * envelope(w, &k));
}

#[test]
fn test_point_closed_form() {
    for q in [0.25, 0.5, 0.8] {
        let k = ctx(q);
        for n in [2, 5, 8, 10] {
            let w = q.powf(0.25 - n as f64);
            let direct = s_eta(w, &k);
            let closed = sine_at_test_point(n, &k).unwrap();
            assert!((closed - direct).abs() <= 1e-12 * envelope(w, &k), "q={q} n={n}: {closed} {direct}");
        }
    }
    // the first-written prefactor is off by q^{−1/2}(−q^{3/2};q²)_∞/(−q^{5/2};q²)_∞
    let q: f64 = 0.5;
    let k = ctx(q);
    let factor = q.powf(-0.5) * poch_inf_real(-q.powf(1.5), q * q, &k).unwrap() / poch_inf_real(-q.powf(2.5), q * q, &k).unwrap();
    let ratio = sine_at_test_point_as_printed(10, &k).unwrap() / sine_at_test_point(10, &k).unwrap();
    assert!((ratio - factor).abs() < 1e-13 * factor);
    assert!((ratio - 1.0).abs() > 0.5);
}

// independent oracle: 1e−6 grid scan of S(η;·) from 0.5 upward, then bisection
fn first_zero_by_scan(k: &QContext) -> f64 {
    let h = 1e-6;
    let mut a = 0.5;
    let mut fa = s_eta(a, k);
    while a < 4.0 {
        let b = a + h;
        let fb = s_eta(b, k);
        if fa * fb <= 0.0 {
            let (mut lo, mut hi) = (a, b);
            for _ in 0..60 {
                let m = 0.5 * (lo + hi);
                if (s_eta(m, k) > 0.0) == (fa > 0.0) {
                    lo = m;
                } else {
                    hi = m;
                }
            }
            return 0.5 * (lo + hi);
        }
        a = b;
        fa = fb;
    }
    panic!("no sign change on [0.5, 4]");
}

#[test]
fn first_sine_zero_against_grid_scan() {
    let k = ctx(0.5);
    let table = find_sine_zeros(3, &k).unwrap();
    let oracle = first_zero_by_scan(&k);
    assert!((table.zeros[0] - oracle).abs() < 1e-10 * oracle, "{} {}", table.zeros[0], oracle);
    assert!((table.zeros[0] - 1.0366557543172569).abs() < 1e-14);
}

#[test]
fn reference_zeros() {
    let s = find_sine_zeros(12, &ctx(0.5)).unwrap();
    let want = [1.0366557543172569, 2.7826286658054116, 6.1719929069311241];
    for (z, w) in s.zeros.iter().zip(want) {
        assert!((z - w).abs() < 1e-14 * w);
    }
    assert!((s.zeros[11] - 3443.779014227937).abs() < 1e-12 * 3443.78);
    let c = find_cosine_zeros(1, &ctx(0.25)).unwrap();
    assert!((c.zeros[0] - 0.87903921114983043).abs() < 1e-14);
    let s = find_sine_zeros(1, &ctx(0.8)).unwrap();
    assert!((s.zeros[0] - 0.33616709747232644).abs() < 1e-14);
}

#[test]
fn implicit_zero_and_table_shape() {
    let k = ctx(0.5);
    let s = find_sine_zeros(6, &k).unwrap();
    assert_eq!(s.zero(0), Some(0.0));
    assert!(s.zeros.iter().all(|&z| z > 0.0));
    assert_eq!(s.zero(7), None);
    let c = find_cosine_zeros(6, &k).unwrap();
    assert_eq!(c.zero(0), None);
    for t in [&s, &c] {
        assert_eq!(t.residuals.len(), t.len());
        for (i, &(lo, hi)) in t.brackets.iter().enumerate() {
            assert!(lo <= t.zeros[i] && t.zeros[i] <= hi);
        }
    }
}

#[test]
fn table_invariants() {
    for q in [0.25, 0.5, 0.8] {
        let k = ctx(q);
        for t in [find_sine_zeros(14, &k).unwrap(), find_cosine_zeros(14, &k).unwrap()] {
            assert!(t.zeros.windows(2).all(|w| w[0] < w[1]));
            assert!(t.residuals.iter().all(|&r| r <= t.tol_used));
            // residual against an independent evaluation of the unscaled functions
            for &z in &t.zeros {
                let v = match t.kind {
                    ZeroKind::SineZeros => s_eta(z, &k),
                    ZeroKind::CosineZeros => c_eta(z, &k),
                };
                assert!(v.abs() <= 1e-10 * envelope(z, &k), "q={q} z={z} v={v}");
            }
        }
    }
}

#[test]
fn offsets_shrink() {
    for q in [0.25, 0.5, 0.8] {
        let k = ctx(q);
        for t in [find_sine_zeros(14, &k).unwrap(), find_cosine_zeros(14, &k).unwrap()] {
            let off = asymptotic_offsets(&t);
            for n in 4..off.len() {
                // the offset is a difference of numbers near q^{−n}; allow its rounding
                let slack = 4.0 * f64::EPSILON * t.zeros[n];
                assert!(off[n].abs() <= off[n - 1].abs() + slack, "q={q} {:?} n={n}", t.kind);
            }
        }
    }
    // q = 0.5: ω_n − q^{1/4−n} strictly decreasing in magnitude for n = 6…12
    let off = asymptotic_offsets(&find_sine_zeros(12, &ctx(0.5)).unwrap());
    for n in 6..12 {
        assert!(off[n].abs() < off[n - 1].abs());
    }
}

#[test]
fn interlacing_holds() {
    for q in [0.25, 0.5, 0.8] {
        let k = ctx(q);
        let s = find_sine_zeros(10, &k).unwrap();
        let c = find_cosine_zeros(10, &k).unwrap();
        let r = check_interlacing(&s, &c).unwrap();
        assert!(r.holds && r.checked == 10 && r.first_violation.is_none());
    }
}

#[test]
fn interlacing_edge_cases() {
    let k = ctx(0.5);
    let s = find_sine_zeros(6, &k).unwrap();
    let c = find_cosine_zeros(6, &k).unwrap();

    let mut es = s.clone();
    es.zeros.clear();
    let mut ec = c.clone();
    ec.zeros.clear();
    assert!(check_interlacing(&es, &ec).unwrap().holds);

    let mut bad = s.clone();
    bad.zeros.swap(2, 3);
    assert_eq!(check_interlacing(&bad, &c).unwrap().first_violation, Some(4));
    let mut bad = c.clone();
    bad.zeros.swap(2, 3);
    assert_eq!(check_interlacing(&s, &bad).unwrap().first_violation, Some(3));

    let other = find_cosine_zeros(6, &ctx(0.25)).unwrap();
    assert!(matches!(check_interlacing(&s, &other), Err(QError::Domain(_))));
    assert!(matches!(check_interlacing(&c, &s), Err(QError::Domain(_))));
}

#[test]
fn values_at_zeros() {
    let k = ctx(0.5);
    let s = find_sine_zeros(5, &k).unwrap();
    let c = find_cosine_zeros(5, &k).unwrap();
    for n in 1..=5 {
        let closed = value_at_sine_zero(n, &s, &k).unwrap();
        let direct = c_eta(s.zeros[n - 1], &k);
        assert!((closed - direct).abs() <= 1e-9 * direct.abs(), "n={n}");
        assert_eq!(closed.signum(), if n % 2 == 0 { 1.0 } else { -1.0 });

        let closed = value_at_cosine_zero(n, &c, &k).unwrap();
        let direct = s_eta(c.zeros[n - 1], &k);
        assert!((closed - direct).abs() <= 1e-9 * direct.abs(), "n={n}");
        assert_eq!(closed.signum(), if n % 2 == 1 { 1.0 } else { -1.0 });
    }
    assert!(value_at_sine_zero(6, &s, &k).is_err());
    assert!(value_at_sine_zero(0, &s, &k).is_err());
    assert!(value_at_sine_zero(1, &c, &k).is_err());
}

#[test]
fn truncated_products() {
    for q in [0.25, 0.5] {
        let k = ctx(q);
        let s = find_sine_zeros(12, &k).unwrap();
        let c = find_cosine_zeros(12, &k).unwrap();
        assert_eq!(product_form_s(0.0, &s, 12, &k).unwrap().value, 0.0);
        for w in [0.1, 0.3, 0.7] {
            let ps = product_form_s(w, &s, 12, &k).unwrap();
            let pc = product_form_c(w, &c, 12, &k).unwrap();
            let (ds, dc) = (s_eta(w, &k), c_eta(w, &k));
            let (es, ec) = ((ps.value - ds).abs(), (pc.value - dc).abs());
            // the gap is the dropped tail: within a factor 2.5 of the estimate plus rounding
            assert!(es <= 2.5 * ps.tail_estimate + 1e-14, "q={q} w={w} {es:e} {:e}", ps.tail_estimate);
            assert!(ec <= 2.5 * pc.tail_estimate + 1e-14, "q={q} w={w} {ec:e} {:e}", pc.tail_estimate);
            if q == 0.25 || w < 0.5 {
                assert!(es <= 1e-8 * ds.abs() && ec <= 1e-8 * dc.abs(), "q={q} w={w}");
            }
        }
        assert!(product_form_s(0.3, &s, 13, &k).is_err());
        assert!(product_form_c(0.3, &s, 5, &k).is_err());
    }
}

#[test]
fn products_over_the_other_spectrum() {
    let k = ctx(0.5);
    let s = find_sine_zeros(40, &k).unwrap();
    let c = find_cosine_zeros(40, &k).unwrap();
    for m in 1..=3 {
        let r = zero_product_relation(m, &s, &c, &k).unwrap();
        assert!(r.rel_gap <= 1e-6, "{r:?}");
        assert_eq!(r.sign, if m % 2 == 0 { 1 } else { -1 });
        assert_eq!(r.magnitude, r.printed_magnitude);
        let r = zero_product_relation(m, &c, &s, &k).unwrap();
        assert!(r.rel_gap <= 1e-6, "{r:?}");
        assert_eq!(r.sign, if m % 2 == 0 { -1 } else { 1 });
        // the bare sqrt((−ϖ_m²;q)_∞) misses the factor (1 − q^{1/2})/ϖ_m
        let ratio = r.product.abs() / r.printed_magnitude;
        assert!((ratio - (1.0 - 0.5f64.sqrt()) / c.zeros[m - 1]).abs() < 1e-6 * ratio);
    }
    assert!(zero_product_relation(1, &s, &s, &k).is_err());
}

#[test]
fn derivative_signs_alternate() {
    let k = ctx(0.5);
    let s = find_sine_zeros(12, &k).unwrap();
    let d = derivative_signs(&s, &k).unwrap();
    assert_eq!(d[0], -1);
    assert!(d.windows(2).all(|w| w[0] == -w[1]));
}

#[test]
fn annulus_counts() {
    let k = ctx(0.5);
    let s = find_sine_zeros(14, &k).unwrap();
    let r = zero_count_annuli(&s, 6, 12);
    assert!(r.covered);
    assert!(r.increments_below_four());
    assert!(r.one_positive_zero_per_annulus());
    let d12 = *r.density.last().unwrap();
    assert!((0.9..=1.1).contains(&d12));

    let early = zero_count_annuli(&s, 1, 5);
    assert!(early.increments_below_four());
    let small = zero_count_annuli(&s, 0, 0);
    assert!(small.counts.is_empty());
}

#[test]
fn csv_round_trip_is_exact() {
    let k = ctx(0.5);
    let s = find_sine_zeros(8, &k).unwrap();
    let csv = s.to_csv();
    assert!(csv.starts_with("index,omega,residual,bracket_lo,bracket_hi\n"));
    let side = ZeroTable::parse_sidecar(&s.sidecar_json()).unwrap();
    assert_eq!(side.q, 0.5);
    assert_eq!(side.version, qfourier_core::VERSION);
    let back = ZeroTable::from_csv(&csv, &side).unwrap();
    assert_eq!(back, s);
    assert!(ZeroTable::from_csv("omega\n1.0\n", &side).is_err());
    assert!(ZeroTable::from_csv("index,omega,residual,bracket_lo,bracket_hi\n2,1,0,0,2\n", &side).is_err());
}

#[test]
fn argument_checks() {
    assert!(matches!(find_sine_zeros(0, &ctx(0.5)), Err(QError::Domain(_))));
    assert!(matches!(find_sine_zeros(5000, &ctx(0.5)), Err(QError::Domain(_))));
    let e = Eta::new(&ctx(0.5));
    assert!(e.value >= 1.0);
    assert!((e.value - (0.5f64.powf(0.25) + 0.5f64.powf(-0.25)) / 2.0).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn interlacing_and_residuals_for_random_q(q in 0.15f64..0.85) {
        let k = ctx(q);
        let s = find_sine_zeros(8, &k).unwrap();
        let c = find_cosine_zeros(8, &k).unwrap();
        prop_assert!(check_interlacing(&s, &c).unwrap().holds);
        prop_assert!(s.residuals.iter().chain(&c.residuals).all(|&r| r <= ZERO_RESIDUAL_TOL));
        let d = derivative_signs(&s, &k).unwrap();
        prop_assert!(d.windows(2).all(|w| w[0] == -w[1]));
    }
}
