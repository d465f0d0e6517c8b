//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use laplace_core::coeffs::{coeffs_direct, coeffs_g1, coeffs_comtet, coeffs_wojdylo, reversion_oracle, G1Route};
use laplace_core::numeric::{
    gamma_numeric, log_grid, verify_igamma_diagonal, verify_laplace_order, verify_stirling_series,
    BuiltinIntegrand,
};
use laplace_core::special::{
    diagonal_coefficients, q_polynomial, stirling_closed_forms, stirling_via_pipeline, StirlingCoefficients,
    StirlingForm,
};
use laplace_core::{LaplaceProblem, Rational, Route};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_s), format!("took {elapsed:?}, limit {limit_s} s"))
}

/// Pipeline through every coefficient route plus the four closed forms.
fn five_way(n_max: usize) -> Result<Vec<Rational>, String> {
    let mut sets: Vec<(String, StirlingCoefficients)> = Vec::new();
    for route in Route::ALL {
        let s = stirling_via_pipeline(n_max, route).map_err(|e| e.to_string())?;
        sets.push((format!("pipeline/{}", route.name()), s));
    }
    for form in StirlingForm::ALL {
        sets.push((form.name().to_string(), stirling_closed_forms(n_max, form)));
    }
    for (name, s) in &sets[1..] {
        ensure(s.gamma == sets[0].1.gamma, format!("{name} differs from {}", sets[0].0))?;
    }
    Ok(sets.swap_remove(0).1.gamma)
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let gamma = five_way(4)?;
    let expected = [r(1, 1), r(-1, 12), r(1, 288), r(139, 51840), r(-571, 2488320)];
    ensure(gamma == expected, format!("got {gamma:?}"))?;
    within(t.elapsed(), 1)?;
    Ok(format!("gamma_0..4 exact by 5 routes in {:?}", t.elapsed()))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let gamma = five_way(12)?;
    within(t.elapsed(), 30)?;
    Ok(format!("five-way agreement to n = 12 (gamma_12 = {}) in {:?}", gamma[12], t.elapsed()))
}

fn criterion_3() -> Outcome {
    let q = |n| q_polynomial(n).map(|p| p.q).map_err(|e| e.to_string());
    ensure(q(0)? == [r(1, 1)], "Q_0")?;
    ensure(q(1)? == [r(1, 1), r(1, 1), r(1, 12)], "Q_1")?;
    ensure(q(2)? == [r(3, 1), r(5, 1), r(25, 12), r(1, 12), r(1, 288)], "Q_2")?;
    let gamma = stirling_closed_forms(8, StirlingForm::FirstKindPotential).gamma;
    for n in 0..=8usize {
        let qn = q(n)?;
        ensure(qn.len() == 2 * n + 1, format!("deg Q_{n}"))?;
        let sign = if n % 2 == 0 { r(1, 1) } else { r(-1, 1) };
        ensure(qn[2 * n] == sign * &gamma[n], format!("leading coefficient of Q_{n}"))?;
    }
    Ok("Q_0, Q_1, Q_2 exact; q_2n = (-1)^n gamma_n for n <= 8".into())
}

fn criterion_4() -> Outcome {
    let c0 = diagonal_coefficients(3).map_err(|e| e.to_string())?.c0;
    let expected = [r(-1, 3), r(-1, 540), r(25, 6048), r(101, 155520)];
    ensure(c0 == expected, format!("got {c0:?}"))?;
    Ok("C_0(0)..C_3(0) exact".into())
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        if !nonzero || num != 0 {
            return r(num, rng.gen_range(1..=9));
        }
    }
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let exps = [r(1, 2), r(1, 1), r(3, 2), r(2, 1), r(3, 1)];
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a91ace);
    let mut unit_checked = 0;
    for i in 0..240usize {
        let n_max = rng.gen_range(0..=8);
        let alpha = exps[rng.gen_range(0..5)].clone();
        let unit = i % 3 == 0;
        let beta = if unit { r(1, 1) } else { exps[rng.gen_range(0..5)].clone() };
        let a: Vec<Rational> = (0..=n_max).map(|k| random_rational(&mut rng, k == 0)).collect();
        let b: Vec<Rational> = if unit {
            (0..=n_max).map(|k| if k == 0 { r(1, 1) } else { Rational::zero() }).collect()
        } else {
            (0..=n_max).map(|k| random_rational(&mut rng, k == 0)).collect()
        };
        let p = LaplaceProblem::new(alpha, beta, a, b, n_max);
        let d = coeffs_direct(&p).map_err(|e| e.to_string())?.c_sc;
        let w = coeffs_wojdylo(&p).map_err(|e| e.to_string())?.c_sc;
        let c = coeffs_comtet(&p).map_err(|e| e.to_string())?.c_sc;
        ensure(d == w && w == c, format!("problem {i}: routes differ"))?;
        if unit {
            for route in [G1Route::Comtet, G1Route::Wojdylo] {
                ensure(coeffs_g1(&p, route).map_err(|e| e.to_string())?.c_sc == d, format!("problem {i}: g = 1 route"))?;
            }
            ensure(reversion_oracle(&p).map_err(|e| e.to_string())?.c_sc == d, format!("problem {i}: reversion"))?;
            unit_checked += 1;
        }
    }
    within(t.elapsed(), 60)?;
    Ok(format!("240 random problems, {unit_checked} with g = 1, all routes exact in {:?}", t.elapsed()))
}

fn criterion_6() -> Outcome {
    let s = stirling_closed_forms(12, StirlingForm::SecondKindBell);
    for n in 1..=12 {
        ensure(s.convolution(n).is_zero(), format!("n = {n}"))?;
    }
    Ok("sum (-1)^(n-k) gamma_k gamma_(n-k) = 0 for 1 <= n <= 12".into())
}

fn criterion_7() -> Outcome {
    let gamma = stirling_closed_forms(5, StirlingForm::FirstKindPotential).gamma;
    let g: Vec<f64> = gamma.iter().map(|x| x.to_f64().unwrap()).collect();
    let lambda: f64 = 10.0;
    let scale = (2.0 * std::f64::consts::PI).sqrt() * lambda.powf(lambda - 0.5) * (-lambda).exp();
    let series: f64 = (0..5).map(|n| if n % 2 == 0 { g[n] } else { -g[n] } / lambda.powi(n as i32)).sum();
    let exact = 362880.0;
    ensure((gamma_numeric(lambda).map_err(|e| e.to_string())? - exact).abs() < 1e-9, "Gamma(10)")?;
    let rel = (exact - scale * series).abs() / exact;
    let omitted = scale * g[5].abs() / lambda.powi(5) / exact;
    ensure(rel <= 1e-6, format!("relative error {rel:e}"))?;
    ensure(rel <= 2.0 * omitted, format!("relative error {rel:e} above 2 x omitted {omitted:e}"))?;

    let report = verify_stirling_series(&log_grid(10.0, 1000.0, 9), &[1, 2, 3, 4]).map_err(|e| e.to_string())?;
    ensure(report.all_within_bounds(), "remainder bound on the grid")?;
    ensure(report.orders_within(0.15), format!("orders {:?}", report.fitted_order))?;
    Ok(format!("lambda = 10, N = 5: rel err {rel:.2e}; orders {}", orders(&report.fitted_order)))
}

fn orders(v: &[Option<f64>]) -> String {
    v.iter().map(|o| o.map_or("?".into(), |x| format!("{x:.3}"))).collect::<Vec<_>>().join(", ")
}

fn criterion_8() -> Outcome {
    let grid = log_grid(10.0, 1000.0, 9);
    let report = verify_laplace_order(BuiltinIntegrand::LogFirst, &grid, &[1, 2, 3, 4]).map_err(|e| e.to_string())?;
    ensure(report.orders_within(0.15), format!("orders {:?}", report.fitted_order))?;
    let far = verify_laplace_order(BuiltinIntegrand::LogFirst, &[1000.0], &[8]).map_err(|e| e.to_string())?;
    let rel = far.rel_errors[0][0];
    ensure(rel <= 1e-8, format!("lambda = 1000, N = 8: rel err {rel:e}"))?;
    Ok(format!("orders {}; lambda = 1000, N = 8 rel err {rel:.2e}", orders(&report.fitted_order)))
}

fn criterion_9() -> Outcome {
    let grid = [10, 20, 40, 80];
    let bound = verify_igamma_diagonal(&grid, &[4]).map_err(|e| e.to_string())?;
    ensure(bound.all_within_bounds(), format!("N = 4 errors {:?} omitted {:?}", bound.abs_errors, bound.omitted))?;
    let report = verify_igamma_diagonal(&grid, &[1, 2, 3]).map_err(|e| e.to_string())?;
    ensure(report.orders_within(0.15), format!("orders {:?}", report.fitted_order))?;
    Ok(format!("N = 4 within 2 x omitted; orders {}", orders(&report.fitted_order)))
}

fn criterion_10() -> Outcome {
    let t = Instant::now();
    let s = stirling_closed_forms(50, StirlingForm::FirstKindPotential);
    let elapsed = t.elapsed();
    within(elapsed, 60)?;
    ensure(s.gamma.len() == 51, "length")?;
    for n in 1..=50 {
        ensure(s.convolution(n).is_zero(), format!("convolution check at n = {n}"))?;
    }
    let digits = s.gamma[50].denom().to_string().len();
    Ok(format!("gamma_0..50 in {elapsed:?}; gamma_50 denominator has {digits} digits"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Stirling coefficients gamma_0..4, five routes", criterion_1),
        ("five-way agreement to n = 12", criterion_2),
        ("Q polynomials", criterion_3),
        ("diagonal coefficients C_n(0)", criterion_4),
        ("route equivalence on random problems", criterion_5),
        ("Stirling convolution identity", criterion_6),
        ("numeric Stirling series", criterion_7),
        ("gamma example integral orders", criterion_8),
        ("incomplete gamma diagonal", criterion_9),
        ("gamma_n for n <= 50 performance", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
