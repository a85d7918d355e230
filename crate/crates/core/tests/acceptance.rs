//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Every `|γ₃|` evaluated here is pooled and checked against the family
//! bound in criterion 6, so that check runs last.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gamma3lab::cli::run_args;
use gamma3lab::family::{gamma3_closed_form, gamma3_via_series, member_series, milin_functional};
use gamma3lab::objective::ObjectiveForm;
use gamma3lab::optimize::global_bound;
use gamma3lab::schwarz::{carlson_check, sample_with};
use gamma3lab::search::search_lower_bound;
use gamma3lab::{BlaschkeProduct, Complex64, Family, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const ORACLE_SAMPLES: usize = 10_000;
const CARLSON_SAMPLES: usize = 100_000;
const GRADIENT_POINTS: usize = 1_000;
const MILIN_MEMBERS: usize = 1_000;

/// `|γ₃|` values seen during the run, per family.
#[derive(Default)]
struct Pool {
    values: [Vec<f64>; 3],
}

impl Pool {
    fn record(&mut self, family: Family, w: &BlaschkeProduct) {
        self.values[index(family)].push(gamma3_closed_form(family, &w.triple()).norm());
    }
}

fn index(family: Family) -> usize {
    Family::ALL.iter().position(|f| *f == family).unwrap()
}

struct Check {
    failures: Vec<String>,
    details: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            details: Vec::new(),
        }
    }

    fn close(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        let err = (got - want).abs();
        if err <= tol {
            self.details.push(format!("{what} = {got:.12} (|err| {err:.1e})"));
        } else {
            self.failures
                .push(format!("{what} = {got:.15} expected {want:.15} within {tol:e}"));
        }
    }

    fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn note(&mut self, detail: String) {
        self.details.push(detail);
    }

    fn report(self, id: usize, title: &str) -> bool {
        let ok = self.failures.is_empty();
        let status = if ok { "PASS" } else { "FAIL" };
        let info = if ok {
            self.details.join("; ")
        } else {
            self.failures.join("; ")
        };
        println!("criterion {id} [{status}] {title}: {info}");
        ok
    }
}

fn bound_json(family: &str) -> (Value, Duration, i32) {
    let start = Instant::now();
    let out = run_args(["gamma3lab", "--format", "json", "bound", family]);
    let elapsed = start.elapsed();
    let value = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (value, elapsed, out.status)
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn edge_value(report: &Value, edge: &str) -> f64 {
    report["edge_maxima"]
        .as_array()
        .and_then(|edges| edges.iter().find(|e| e["edge"] == edge))
        .map_or(f64::NAN, |e| num(&e["value"]))
}

fn single_interior(check: &mut Check, report: &Value) -> Option<(f64, f64, f64)> {
    let points = report["interior_points"].as_array().cloned().unwrap_or_default();
    check.holds(
        &format!("expected one interior critical point, found {}", points.len()),
        points.len() == 1,
    );
    points.first().map(|p| (num(&p["x"]), num(&p["y"]), num(&p["value"])))
}

fn criterion_1() -> bool {
    let mut c = Check::new();
    let (r, elapsed, status) = bound_json("f1");
    c.holds(&format!("exit status {status}"), status == 0);
    if let Some((x, y, v)) = single_interior(&mut c, &r) {
        c.close("x", x, 0.25, 1e-9);
        c.close("y", y, 0.3125, 1e-9);
        c.close("interior value", v, 15.75, 1e-9);
    }
    c.close("bottom", edge_value(&r, "bottom"), 15.08580, 1e-4);
    c.close("left", edge_value(&r, "left"), 46.0 / 3.0, 1e-4);
    c.close("top", edge_value(&r, "top"), 15.304035, 1e-4);
    let bound = num(&r["gamma3_bound"]);
    let shown = format!("{:.12}", bound);
    c.holds(&format!("bound prints as {shown}"), shown == "0.328125000000");
    c.note(format!("bound {shown}"));
    c.holds(&format!("runtime {elapsed:?} >= 5s"), elapsed < Duration::from_secs(5));
    c.note(format!("runtime {:.3}s", elapsed.as_secs_f64()));
    c.report(1, "bound f1")
}

fn criterion_2() -> bool {
    let mut c = Check::new();
    let (r, _, status) = bound_json("f2");
    c.holds(&format!("exit status {status}"), status == 0);
    let s7 = 7f64.sqrt();
    if let Some((x, y, v)) = single_interior(&mut c, &r) {
        c.close("x", x, (4.0 - s7) / 6.0, 1e-9);
        c.close("y", y, (47.0 - 14.0 * s7) / 108.0, 1e-9);
        c.close("interior value", v, 3.10518, 1e-5);
    }
    c.close("bottom", edge_value(&r, "bottom"), 2.0 + 4.0 / 9.0 * 6f64.sqrt(), 1e-9);
    c.close("left", edge_value(&r, "left"), 3.0, 1e-9);
    c.close("top", edge_value(&r, "top"), 2.0 * 2f64.sqrt(), 1e-9);
    c.close("bound", num(&r["gamma3_bound"]), 0.258765, 1e-6);
    c.report(2, "bound f2")
}

fn criterion_3() -> bool {
    let mut c = Check::new();
    let (r, _, status) = bound_json("f3");
    c.holds(&format!("exit status {status}"), status == 0);
    if let Some((_, _, v)) = single_interior(&mut c, &r) {
        c.close("interior value", v, 17.75, 1e-9);
    }
    c.close("bound", num(&r["gamma3_bound"]), 17.75 / 48.0, 1e-9);
    let notes: Vec<String> = r["notes"]
        .as_array()
        .map(|n| n.iter().filter_map(|s| s.as_str().map(str::to_owned)).collect())
        .unwrap_or_default();
    let documented = notes
        .iter()
        .any(|n| n.contains("top edge") && n.contains("16x^3") && n.contains("20x^3"));
    c.holds("no note on the top-edge cubic", documented);
    let top = edge_value(&r, "top");
    c.holds("top edge above interior value", top < 17.75);
    c.note(format!("top edge by substitution {top:.9}, note present"));
    c.report(3, "bound f3")
}

fn criterion_4(pool: &mut Pool) -> bool {
    let mut c = Check::new();
    let mut worst = 0f64;
    for family in Family::ALL {
        let mut rng = ChaCha8Rng::seed_from_u64(4_000 + index(family) as u64);
        let mut failures = 0;
        for i in 0..ORACLE_SAMPLES {
            let w = sample_with(&mut rng, 1 + i % 6, false);
            pool.record(family, &w);
            let closed = gamma3_closed_form(family, &w.triple());
            let diff = match gamma3_via_series(family, &w) {
                Ok(series) => (closed - series).norm(),
                Err(_) => f64::INFINITY,
            };
            worst = worst.max(diff);
            if diff > 1e-9 {
                failures += 1;
            }
        }
        c.holds(&format!("{family}: {failures} disagreements"), failures == 0);
    }
    c.note(format!("{} samples per family, max |diff| {worst:.1e}", ORACLE_SAMPLES));
    c.report(4, "closed form vs series logarithm")
}

fn criterion_5(pool: &mut Pool) -> bool {
    let mut c = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(5_000);
    let mut min_slack = f64::INFINITY;
    for i in 0..CARLSON_SAMPLES {
        let w = sample_with(&mut rng, 1 + i % 6, i % 2 == 1);
        min_slack = min_slack.min(carlson_check(&w.triple()).min());
        if i % 10 == 0 {
            for family in Family::ALL {
                pool.record(family, &w);
            }
        }
    }
    c.holds(&format!("min slack {min_slack:e} < -1e-9"), min_slack >= -1e-9);
    c.note(format!("{CARLSON_SAMPLES} samples, min slack {min_slack:.3e}"));

    let w = BlaschkeProduct::new(vec![Complex64::new(0.5, 0.0)], Complex64::new(1.0, 0.0)).unwrap();
    let s = carlson_check(&w.triple());
    c.close("equality slack 1", s.first, 0.5, 1e-12);
    c.close("equality slack 2", s.second, 0.0, 1e-12);
    c.close("equality slack 3", s.third, 0.0, 1e-12);
    c.report(5, "Carlson fuzz")
}

fn criterion_6(pool: &Pool) -> bool {
    let mut c = Check::new();
    for family in Family::ALL {
        let bound = global_bound(family, 0.05, 1e-12)
            .map(|r| r.gamma3_bound)
            .unwrap_or(f64::NAN);
        let values = &pool.values[index(family)];
        let max = values.iter().copied().fold(0.0, f64::max);
        let over = values.iter().filter(|v| **v > bound + 1e-9).count();
        c.holds(
            &format!("{family}: {over} values above {bound}"),
            over == 0 && !values.is_empty(),
        );
        c.note(format!("{family} {} values, max {max:.9} <= {bound:.9}", values.len()));
    }
    c.report(6, "bound compliance")
}

fn criterion_7(pool: &mut Pool) -> bool {
    let mut c = Check::new();
    for family in Family::ALL {
        let target = family.real_a2_sharp_bound();
        let start = Instant::now();
        match search_lower_bound(family, 100_000, 1, true, 4) {
            Ok(r) => {
                let elapsed = start.elapsed();
                pool.record(family, &r.witness);
                let floor = if family == Family::F1 { 0.31 } else { target - 0.015 };
                let ok = r.best_value >= floor && r.best_value <= target + 1e-6;
                c.holds(
                    &format!(
                        "{family}: best {:.9} outside [{floor:.6}, {:.6}]",
                        r.best_value,
                        target + 1e-6
                    ),
                    ok,
                );
                c.holds(
                    &format!("{family}: runtime {elapsed:?}"),
                    elapsed < Duration::from_secs(60),
                );
                c.note(format!(
                    "{family} best {:.9} target {target:.9} in {:.2}s",
                    r.best_value,
                    elapsed.as_secs_f64()
                ));
            }
            Err(e) => c.holds(&format!("{family}: {e}"), false),
        }
    }
    c.report(7, "real-only sharpness probe")
}

fn criterion_8() -> bool {
    let mut c = Check::new();
    let h = 1e-6;
    let mut worst = 0f64;
    for family in Family::ALL {
        let form = ObjectiveForm::of(family);
        let mut rng = ChaCha8Rng::seed_from_u64(8_000 + index(family) as u64);
        for _ in 0..GRADIENT_POINTS {
            let x = rng.gen_range(0.01..0.99);
            let y = rng.gen_range(0.01..0.99) * (1.0 - x * x);
            let (gx, gy) = form.gradient(x, y);
            let fx = (form.value(x + h, y) - form.value(x - h, y)) / (2.0 * h);
            let fy = (form.value(x, y + h) - form.value(x, y - h)) / (2.0 * h);
            let err = ((gx - fx).hypot(gy - fy)) / gx.hypot(gy).max(1.0);
            worst = worst.max(err);
        }
        match global_bound(family, 0.05, 1e-12) {
            Ok(r) => {
                let all = !r.interior_points.is_empty() && r.interior_points.iter().all(|p| p.negative_definite);
                c.holds(&format!("{family}: interior Hessian not negative definite"), all);
            }
            Err(e) => c.holds(&format!("{family}: {e}"), false),
        }
    }
    c.holds(&format!("gradient relative error {worst:e}"), worst <= 1e-6);
    c.note(format!(
        "{GRADIENT_POINTS} points per family, max relative error {worst:.1e}, Hessians negative definite"
    ));
    c.report(8, "gradient and Hessian")
}

fn criterion_9(pool: &mut Pool) -> bool {
    let mut c = Check::new();
    for n in 1..=5 {
        let koebe = TruncatedSeries::from_real(&(0..=n + 1).map(|k| k as f64).collect::<Vec<_>>(), n + 1);
        let v = milin_functional(&koebe, n).unwrap_or(f64::NAN);
        c.holds(&format!("Koebe n={n}: {v:e}"), v.abs() <= 1e-12);
    }
    let v = milin_functional(&TruncatedSeries::identity(4), 3).unwrap_or(f64::NAN);
    c.close("identity n=3", v, -13.0 / 3.0, 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(9_000);
    let mut largest = f64::NEG_INFINITY;
    for i in 0..MILIN_MEMBERS {
        let family = Family::ALL[i % 3];
        let w = sample_with(&mut rng, 1 + i % 6, false);
        pool.record(family, &w);
        let value = w.taylor(7).and_then(|ws| member_series(family, &ws, 8)).and_then(|f| {
            (1..=5)
                .map(|n| milin_functional(&f, n))
                .try_fold(f64::NEG_INFINITY, |m, v| v.map(|v| m.max(v)))
        });
        largest = largest.max(value.unwrap_or(f64::INFINITY));
    }
    c.holds(&format!("largest member functional {largest:e}"), largest <= 1e-9);
    c.note(format!(
        "Koebe n<=5 zero, {MILIN_MEMBERS} members n<=5 max {largest:.3e}"
    ));
    c.report(9, "Milin functional")
}

fn main() -> ExitCode {
    let mut pool = Pool::default();
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(&mut pool),
        criterion_5(&mut pool),
        criterion_7(&mut pool),
        criterion_8(),
        criterion_9(&mut pool),
        criterion_6(&pool),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
