use std::fs;

use laplace_core::bell::{bell_table, potential_row};
use laplace_core::coeffs::{coeffs_g1, coefficients, reversion_oracle, G1Route};
use laplace_core::exact::{triangle, StirlingKind};
use laplace_core::io::{coefficients_json, parse_problem, rationals_json};
use laplace_core::numeric::{
    log_grid, verify_igamma_diagonal, verify_laplace_order, verify_stirling_series, BuiltinIntegrand,
    VerificationReport,
};
use laplace_core::special::{
    diagonal_coefficients, gamma_problem, q_polynomial, stirling_closed_forms, stirling_via_pipeline, ExampleError,
    StirlingForm,
};
use laplace_core::{LaplaceProblem, Rational, Route, ScaledCoefficients};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::args::{CoeffsArgs, ExampleArgs, Format, RouteArg, TablesArgs, VerifyArgs};
use crate::render::{csv, json, polynomial, rat, rats, table};
use crate::CliError;

fn routes(arg: RouteArg) -> Vec<Route> {
    match arg {
        RouteArg::Direct => vec![Route::Direct],
        RouteArg::Wojdylo => vec![Route::Wojdylo],
        RouteArg::Comtet => vec![Route::Comtet],
        RouteArg::All => Route::ALL.to_vec(),
    }
}

fn route_label(arg: RouteArg) -> &'static str {
    match arg {
        RouteArg::All => "all",
        other => routes(other)[0].name(),
    }
}

fn load_problem(path: &std::path::Path, n_max: Option<usize>, pad: bool) -> Result<LaplaceProblem, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut p = parse_problem(&text).map_err(|e| CliError::Input(e.to_string()))?;
    if let Some(n) = n_max {
        p = p.with_n_max(n);
    }
    if pad {
        p = p.with_pad(true);
    }
    for w in p.validate().map_err(|e| CliError::Input(e.to_string()))? {
        eprintln!("warning: {w}");
    }
    Ok(p)
}

fn verdict(agree: bool) -> &'static str {
    if agree {
        "AGREE"
    } else {
        "DISAGREE"
    }
}

pub fn coeffs(args: &CoeffsArgs) -> Result<String, CliError> {
    let Some(path) = &args.input else {
        return sweep(args);
    };
    let p = load_problem(path, args.n_max, args.pad)?;
    let selected = routes(args.route);
    let results: Vec<ScaledCoefficients> = selected
        .iter()
        .map(|&r| coefficients(&p, r).map_err(|e| CliError::Input(e.to_string())))
        .collect::<Result<_, _>>()?;
    let agree = results.windows(2).all(|w| w[0].c_sc == w[1].c_sc);
    let first = &results[0];
    let out = match args.output.format {
        Format::Json => {
            let mut v = coefficients_json(first, route_label(args.route));
            if selected.len() > 1 {
                let per_route: Map<String, Value> = selected
                    .iter()
                    .zip(&results)
                    .map(|(r, c)| (r.name().to_string(), rationals_json(&c.c_sc)))
                    .collect();
                v["routes"] = Value::Object(per_route);
                v["verdict"] = json!(verdict(agree));
            }
            json(&v)
        }
        format => {
            let mut headers = vec!["n", "exponent"];
            headers.extend(selected.iter().map(|r| r.name()));
            let exps = first.exponents();
            let rows: Vec<Vec<String>> = (0..first.c_sc.len())
                .map(|n| {
                    let mut row = vec![n.to_string(), rat(&exps[n])];
                    row.extend(results.iter().map(|c| rat(&c.c_sc[n])));
                    row
                })
                .collect();
            if format == Format::Csv {
                csv(&headers, &rows)
            } else {
                let mut s = format!(
                    "alpha = {}, beta = {}, n_max = {}\n",
                    rat(&p.alpha),
                    rat(&p.beta),
                    p.n_max
                );
                s += &table(&headers, &rows);
                if selected.len() > 1 {
                    s += &format!("verdict: {}\n", verdict(agree));
                }
                s
            }
        }
    };
    if !agree {
        return Err(CliError::Disagreement { report: out, what: "coefficient routes".into() });
    }
    Ok(out)
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=9);
        if !nonzero || num != 0 {
            return Rational::new(num.into(), den.into());
        }
    }
}

/// Random problem with `alpha, beta` in `{1/2, 1, 3/2, 2, 3}` and `|num|, den <= 9`;
/// every fourth one has `g = 1` so the specialised routes are exercised too.
fn random_problem(rng: &mut ChaCha8Rng, index: usize, n_cap: usize) -> LaplaceProblem {
    let choices = [(1, 2), (1, 1), (3, 2), (2, 1), (3, 1)];
    let pick = |rng: &mut ChaCha8Rng| {
        let (p, q) = choices[rng.gen_range(0..choices.len())];
        Rational::new(p.into(), q.into())
    };
    let n_max = rng.gen_range(0..=n_cap);
    let alpha = pick(rng);
    let unit = index % 4 == 0;
    let beta = if unit { Rational::from_integer(1.into()) } else { pick(rng) };
    let a = (0..=n_max).map(|k| random_rational(rng, k == 0)).collect();
    let b = (0..=n_max)
        .map(|k| match (unit, k) {
            (true, 0) => Rational::from_integer(1.into()),
            (true, _) => Rational::from_integer(0.into()),
            (false, _) => random_rational(rng, k == 0),
        })
        .collect();
    LaplaceProblem::new(alpha, beta, a, b, n_max)
}

const SWEEP_SIZE: usize = 200;

fn sweep(args: &CoeffsArgs) -> Result<String, CliError> {
    let n_cap = args.n_max.unwrap_or(8);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for i in 0..SWEEP_SIZE {
        let p = random_problem(&mut rng, i, n_cap);
        let mut sets = Vec::new();
        for r in routes(args.route) {
            sets.push(coefficients(&p, r).map_err(|e| CliError::Input(e.to_string()))?.c_sc);
        }
        if p.is_unit_amplitude() {
            for r in [G1Route::Comtet, G1Route::Wojdylo] {
                sets.push(coeffs_g1(&p, r).map_err(|e| CliError::Input(e.to_string()))?.c_sc);
            }
            sets.push(reversion_oracle(&p).map_err(|e| CliError::Input(e.to_string()))?.c_sc);
        }
        let agree = sets.windows(2).all(|w| w[0] == w[1]);
        if !agree {
            failures.push(i);
        }
        rows.push(vec![
            i.to_string(),
            rat(&p.alpha),
            rat(&p.beta),
            p.n_max.to_string(),
            sets.len().to_string(),
            verdict(agree).to_string(),
        ]);
    }
    let all = failures.is_empty();
    let headers = ["problem", "alpha", "beta", "n_max", "routes", "verdict"];
    let out = match args.output.format {
        Format::Json => json(&json!({
            "problems": SWEEP_SIZE,
            "seed": args.seed,
            "n_max": n_cap,
            "route": route_label(args.route),
            "disagreements": failures,
            "verdict": verdict(all),
        })),
        Format::Csv => csv(&headers, &rows),
        Format::Table => format!(
            "random sweep: {SWEEP_SIZE} problems, seed {}, n_max <= {n_cap}, route {}\nverdict: {}\n",
            args.seed,
            route_label(args.route),
            verdict(all)
        ),
    };
    if !all {
        return Err(CliError::Disagreement { report: out, what: format!("sweep problems {failures:?}") });
    }
    Ok(out)
}

fn example_error(e: ExampleError) -> CliError {
    match e {
        ExampleError::Problem(p) => CliError::Input(p.to_string()),
        other => CliError::Disagreement { report: String::new(), what: other.to_string() },
    }
}

pub fn gamma(args: &ExampleArgs) -> Result<String, CliError> {
    let n = args.n_max;
    let mut pipelines = Vec::new();
    for r in routes(args.route) {
        pipelines.push(stirling_via_pipeline(n, r).map_err(example_error)?.gamma);
    }
    let pipelines_agree = pipelines.windows(2).all(|w| w[0] == w[1]);
    let mut columns = vec![("pipeline", pipelines[0].clone())];
    for form in StirlingForm::ALL {
        columns.push((form.name(), stirling_closed_forms(n, form).gamma));
    }
    let agree = pipelines_agree && columns.windows(2).all(|w| w[0].1 == w[1].1);
    let rows: Vec<Vec<String>> = (0..=n)
        .map(|k| {
            let mut row = vec![k.to_string()];
            row.extend(columns.iter().map(|(_, c)| rat(&c[k])));
            row
        })
        .collect();
    let mut headers = vec!["n"];
    headers.extend(columns.iter().map(|(name, _)| *name));
    let out = match args.output.format {
        Format::Json => {
            let cols: Map<String, Value> =
                columns.iter().map(|(name, c)| (name.to_string(), rationals_json(c))).collect();
            json(&json!({ "gamma": cols, "route": route_label(args.route), "verdict": verdict(agree) }))
        }
        Format::Csv => csv(&headers, &rows),
        Format::Table => table(&headers, &rows) + &format!("verdict: {}\n", verdict(agree)),
    };
    if !agree {
        return Err(CliError::Disagreement { report: out, what: "Stirling coefficient routes".into() });
    }
    Ok(out)
}

pub fn igamma(args: &ExampleArgs) -> Result<String, CliError> {
    let n = args.n_max;
    let qs = (0..=n).map(q_polynomial).collect::<Result<Vec<_>, _>>().map_err(example_error)?;
    let c0 = diagonal_coefficients(n).map_err(example_error)?.c0;
    let out = match args.output.format {
        Format::Json => json(&json!({
            "Q": qs.iter().map(|q| rationals_json(&q.q)).collect::<Vec<_>>(),
            "C0": rationals_json(&c0),
        })),
        Format::Csv => {
            let mut rows = Vec::new();
            for q in &qs {
                for (k, c) in q.q.iter().enumerate() {
                    rows.push(vec!["Q".into(), q.n.to_string(), k.to_string(), rat(c)]);
                }
            }
            for (k, c) in c0.iter().enumerate() {
                rows.push(vec!["C0".into(), k.to_string(), String::new(), rat(c)]);
            }
            csv(&["series", "n", "k", "value"], &rows)
        }
        Format::Table => {
            let mut s = String::new();
            for q in &qs {
                s += &format!("Q_{}(mu) = {}\n", q.n, polynomial(&q.q, "mu"));
            }
            let rows: Vec<Vec<String>> = c0.iter().enumerate().map(|(k, c)| vec![k.to_string(), rat(c)]).collect();
            s += "\n";
            s += &table(&["n", "C_n(0)"], &rows);
            s
        }
    };
    Ok(out)
}

pub fn tables(args: &TablesArgs) -> Result<String, CliError> {
    let p = match &args.input {
        Some(path) => load_problem(path, args.n_max, args.pad)?,
        None => gamma_problem(args.n_max.unwrap_or(6)),
    };
    let n = p.n_max;
    let f = p.normalized_a();
    let bell = bell_table(&f, n);
    let rho = -p.exponent(n);
    let pot = potential_row(&rho, &f, n);
    let first = triangle(StirlingKind::FirstUnsigned, n);
    let second = triangle(StirlingKind::Second, n);
    let int_rows = |t: &laplace_core::exact::StirlingTriangle| -> Vec<Vec<String>> {
        t.rows()[..=n].iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect()
    };
    let f_list: Vec<Rational> = (1..=n).map(|k| f.f(k)).collect();
    let out = match args.output.format {
        Format::Json => json(&json!({
            "f": rationals_json(&f_list),
            "bell": bell.to_json(),
            "potential": pot.to_json(),
            "stirling_first": int_rows(&first),
            "stirling_second": int_rows(&second),
        })),
        Format::Csv => {
            let mut rows = Vec::new();
            for (i, row) in bell.rows().iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    rows.push(vec!["bell".into(), i.to_string(), k.to_string(), rat(v)]);
                }
            }
            for (i, v) in pot.a.iter().enumerate() {
                rows.push(vec!["potential".into(), i.to_string(), String::new(), rat(v)]);
            }
            for (name, t) in [("stirling_first", &first), ("stirling_second", &second)] {
                for (i, row) in int_rows(t).into_iter().enumerate() {
                    for (k, v) in row.into_iter().enumerate() {
                        rows.push(vec![name.into(), i.to_string(), k.to_string(), v]);
                    }
                }
            }
            csv(&["table", "n", "k", "value"], &rows)
        }
        Format::Table => {
            let mut s = format!("f_n = a_n/a_0: {}\n\n", rats(&f_list).join(", "));
            let tri = |title: &str, rows: Vec<Vec<String>>| -> String {
                let width = rows.iter().map(Vec::len).max().unwrap_or(0);
                let mut headers = vec!["n".to_string()];
                headers.extend((0..width).map(|k| format!("k={k}")));
                let hdr: Vec<&str> = headers.iter().map(String::as_str).collect();
                let body: Vec<Vec<String>> = rows
                    .into_iter()
                    .enumerate()
                    .map(|(i, mut r)| {
                        r.insert(0, i.to_string());
                        r
                    })
                    .collect();
                format!("{title}\n{}\n", table(&hdr, &body))
            };
            s += &tri("Bell B_{n,k}", bell.rows().iter().map(|r| rats(r)).collect());
            s += &format!("potential A_{{rho,n}}, rho = {}\n{}\n\n", rat(&rho), rats(&pot.a).join(", "));
            s += &tri("Stirling s(n,k), unsigned first kind", int_rows(&first));
            s += &tri("Stirling S(n,k), second kind", int_rows(&second));
            s
        }
    };
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> Result<String, CliError> {
    if !(args.lambda_min > 0.0 && args.lambda_min < args.lambda_max) {
        return Err(CliError::Input("need 0 < --lambda-min < --lambda-max".into()));
    }
    if args.lambda_min < 5.0 {
        return Err(CliError::Input("the Stirling and diagonal checks need --lambda-min >= 5".into()));
    }
    if args.points < 4 {
        return Err(CliError::Input("order fitting needs --points >= 4".into()));
    }
    if args.n_max == 0 {
        return Err(CliError::Input("--n-max must be at least 1".into()));
    }
    let grid = log_grid(args.lambda_min, args.lambda_max, args.points);
    let counts: Vec<usize> = (1..=args.n_max).collect();
    let mut m_grid: Vec<u64> = grid.iter().map(|x| x.round() as u64).collect();
    m_grid.dedup();
    let numeric = |e: laplace_core::numeric::NumericError| CliError::Verification { report: String::new(), what: e.to_string() };
    let reports: Vec<VerificationReport> = vec![
        verify_stirling_series(&grid, &counts).map_err(numeric)?,
        verify_laplace_order(BuiltinIntegrand::LogFirst, &grid, &counts).map_err(numeric)?,
        verify_laplace_order(BuiltinIntegrand::LogSecond, &grid, &counts).map_err(numeric)?,
        verify_igamma_diagonal(&m_grid, &counts).map_err(numeric)?,
    ];
    let passed = reports.iter().all(VerificationReport::all_within_bounds);
    let out = match args.format {
        Format::Csv => {
            let mut s = String::new();
            for (i, r) in reports.iter().enumerate() {
                s += &r.to_csv(i == 0);
            }
            s
        }
        Format::Json => json(&json!({
            "reports": reports.iter().map(VerificationReport::summary_json).collect::<Vec<_>>(),
            "passed": passed,
        })),
        Format::Table => {
            let mut rows = Vec::new();
            for r in &reports {
                for (j, n) in r.term_counts.iter().enumerate() {
                    let bound_ok = (0..r.lambda_grid.len()).all(|i| r.within_bound(i, j));
                    rows.push(vec![
                        r.check.clone(),
                        n.to_string(),
                        r.fitted_order[j].map_or("unresolved".into(), |v| format!("{v:.3}")),
                        format!("{}", r.expected_order[j]),
                        if bound_ok { "ok" } else { "FAIL" }.into(),
                    ]);
                }
            }
            table(&["check", "N", "fitted_order", "expected_order", "error_bound"], &rows)
                + &format!("verdict: {}\n", if passed { "PASS" } else { "FAIL" })
        }
    };
    if !passed {
        return Err(CliError::Verification { report: out, what: "error exceeds twice the first omitted term".into() });
    }
    Ok(out)
}
