//! Acceptance suite. Runs without the libtest harness so every line is printed:
//! one `PASS` or `FAIL` line per criterion (sub-criteria get their own lines), then a
//! summary. Exits non-zero if anything failed.

#![allow(clippy::approx_constant)]

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperwalk::parallel::Runner;
use hyperwalk_core::criterion::closed_form::{
    even_left, even_right, inradius_cosh, odd_half_length_cosh, odd_half_length_cosh_expanded, odd_left,
    odd_right,
};
use hyperwalk_core::criterion::{sweep, Parity, SweepRequest};
use hyperwalk_core::hypgeom::{is_hyperbolic, translation_length};
use hyperwalk_core::walksim::{divergence_probe, rotation_check};
use hyperwalk_core::{Family, GroupModel, StepMeasure, WalkConfig, Word};

type Outcome = Result<String, String>;

struct Suite {
    failed: usize,
    total: usize,
}

impl Suite {
    fn record(&mut self, id: &str, started: Instant, outcome: Outcome) {
        self.total += 1;
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {detail} [{secs:.2}s]"),
            Err(detail) => {
                self.failed += 1;
                println!("FAIL criterion {id}: {detail} [{secs:.2}s]");
            }
        }
    }

    fn run(&mut self, id: &str, body: impl FnOnce() -> Outcome) {
        let started = Instant::now();
        let outcome = body();
        self.record(id, started, outcome);
    }

    /// Like `run`, but also fails if the body takes longer than `budget`.
    fn run_within(&mut self, id: &str, budget: Duration, body: impl FnOnce() -> Outcome) {
        let started = Instant::now();
        let outcome = body().and_then(|d| {
            if started.elapsed() <= budget {
                Ok(d)
            } else {
                Err(format!("{d}; over the {:.0}s budget", budget.as_secs_f64()))
            }
        });
        self.record(id, started, outcome);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fmt_pairs(pairs: &[(u32, u32)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(n, m)| format!("({n},{m})")).collect();
    format!("{{{}}}", inner.join(","))
}

fn exceptional_set(req: SweepRequest, expected: &[(u32, u32)], expected_rejected: Option<&[(u32, u32)]>) -> Outcome {
    let table = sweep(&req).map_err(|e| e.to_string())?;
    ensure(table.exceptional == expected, || {
        let margins: Vec<String> = table
            .pairs
            .iter()
            .filter(|r| expected.contains(&(r.n, r.m)) != table.exceptional.contains(&(r.n, r.m)))
            .map(|r| format!("({},{}) margin {:+.4}", r.n, r.m, r.margin))
            .collect();
        format!(
            "exceptional {} expected {}; differing pairs: {}",
            fmt_pairs(&table.exceptional),
            fmt_pairs(expected),
            margins.join(", ")
        )
    })?;
    if let Some(rejected) = expected_rejected {
        ensure(table.rejected == rejected, || {
            format!("rejected {} expected {}", fmt_pairs(&table.rejected), fmt_pairs(rejected))
        })?;
    }
    Ok(format!("exceptional {} over {} pairs", fmt_pairs(&table.exceptional), table.pairs.len()))
}

fn within(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || format!("{name} = {got} expected {want} ± {tol}"))
}

fn tabulated_constants() -> Outcome {
    const TOL: f64 = 1e-3;
    let mut count = 0;
    for ((n, m), v) in [((4, 7), 1.27416), ((6, 4), 1.41421), ((8, 3), 1.30656)] {
        within(&format!("f({n},{m})"), inradius_cosh(n, m), v, TOL)?;
        count += 1;
    }
    for (m, v) in [(8, 0.923879), (6, 0.866025), (4, 0.707107), (3, 0.5)] {
        within(&format!("f_l({m})"), even_left(m), v, TOL)?;
        count += 1;
    }
    for (n, v) in [(4, 0.883883), (6, 0.737372), (8, 0.636872), (14, 0.4719)] {
        within(&format!("f_r({n})"), even_right(n), v, TOL)?;
        count += 1;
    }
    for ((n, m), v) in [((5, 10), 1.3016), ((7, 5), 0.863068), ((9, 4), 0.647002)] {
        within(&format!("g_L({n},{m})"), odd_left(n, m), v, TOL)?;
        count += 1;
    }
    for (n, v) in [(5, 1.28115), (7, 0.835789), (9, 0.622426)] {
        within(&format!("g_R({n})"), odd_right(n), v, TOL)?;
        count += 1;
    }
    Ok(format!("{count} printed constants within {TOL:e}"))
}

fn reflection(n: u32, m: u32) -> Result<GroupModel, String> {
    GroupModel::build(Family::Reflection, n, m).map_err(|e| format!("({n},{m}): {e}"))
}

fn word_length(g: &GroupModel, word: &Word) -> Result<f64, String> {
    let iso = g.evaluate(word).map_err(|e| e.to_string())?;
    translation_length(&iso).map_err(|e| e.to_string())
}

fn closed_form_vs_trace() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in (4..=20u32).step_by(2) {
        for m in (4..=20u32).step_by(2) {
            if !is_hyperbolic(n, m) {
                continue;
            }
            let g = reflection(n, m)?;
            let trace = word_length(&g, &Word::new(vec![0, n as usize / 2]))?;
            let pi = PI;
            let closed = 4.0 * ((pi / f64::from(m)).cos() / (pi / f64::from(n)).sin()).acosh();
            within(&format!("even ({n},{m})"), trace, closed, TOL)?;
            worst = worst.max((trace - closed).abs());
            count += 1;
        }
    }
    for n in (5..=19u32).step_by(2) {
        for m in (4..=20u32).step_by(2) {
            let g = reflection(n, m)?;
            let trace = word_length(&g, &Word::new(vec![0, (n as usize - 1) / 2]))?;
            for (form, half) in [
                ("odd", odd_half_length_cosh(n, m)),
                ("odd expanded", odd_half_length_cosh_expanded(n, m)),
            ] {
                let half = half.ok_or_else(|| format!("{form} ({n},{m}) undefined"))?;
                let closed = 2.0 * half.acosh();
                within(&format!("{form} ({n},{m})"), trace, closed, TOL)?;
                worst = worst.max((trace - closed).abs());
            }
            count += 1;
        }
    }
    Ok(format!("{count} pairs, worst difference {worst:.2e} (tolerance {TOL:e})"))
}

fn relators() -> Outcome {
    const TOL: f64 = 1e-9;
    let mut count = 0;
    for n in 4..=20u32 {
        for m in (4..=20u32).step_by(2) {
            if !is_hyperbolic(n, m) {
                continue;
            }
            let g = reflection(n, m)?;
            let k = n as usize;
            for i in 0..k {
                let square = Word::new(vec![i, i]);
                let braid = Word::new(vec![i, (i + 1) % k]).power(m as usize / 2);
                for w in [square, braid] {
                    let iso = g.evaluate(&w).map_err(|e| e.to_string())?;
                    ensure(iso.is_identity(TOL), || format!("({n},{m}) {} is not the identity", g.format_word(&w)))?;
                    count += 1;
                }
            }
        }
    }
    for n in (4..=20u32).step_by(2) {
        for m in 3..=20u32 {
            if !is_hyperbolic(n, m) {
                continue;
            }
            let g = GroupModel::build(Family::Fuchsian, n, m).map_err(|e| e.to_string())?;
            let k = n as usize;
            for i in 0..k {
                let w = Word::new(vec![i, (i + k / 2) % k]);
                let iso = g.evaluate(&w).map_err(|e| e.to_string())?;
                ensure(iso.is_identity(TOL), || format!("F({n},{m}) {} is not the identity", g.format_word(&w)))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} relators are the identity within {TOL:e}"))
}

fn volume_growth() -> Outcome {
    let g = reflection(4, 8)?;
    let census = g.ball_census(10.0, 0.5).map_err(|e| e.to_string())?;
    let slope = census.slope_estimate;
    ensure((0.8..=1.2).contains(&slope), || format!("slope {slope} outside [0.8, 1.2]"))?;
    let a = 2.0 * g.spec.circumradius;
    let mut checked = 0;
    for (&r, &k) in census.radius_grid.iter().zip(&census.counts) {
        if r < 2.0 * a {
            continue;
        }
        let lo = 4.0 * PI * ((r - a) / 2.0).sinh().powi(2) / g.spec.area;
        let hi = 4.0 * PI * ((r + a) / 2.0).sinh().powi(2) / g.spec.area;
        ensure(lo <= k as f64 && k as f64 <= hi, || format!("R = {r}: {k} outside [{lo:.1}, {hi:.1}]"))?;
        checked += 1;
    }
    ensure(checked > 0, || "no radius beyond 2A to check".into())?;
    Ok(format!(
        "slope {slope:.4} in [0.8, 1.2], {} elements at R = 10, sandwich holds at {checked} radii",
        census.counts.last().unwrap()
    ))
}

fn monte_carlo(family: Family, passage_word: &str, runner: &Runner) -> Outcome {
    let model = GroupModel::build(family, 4, 8).map_err(|e| e.to_string())?;
    let cfg = WalkConfig::simple(model).steps(50).trials(10_000).seed(2024);
    let stats = runner.stats(&cfg).map_err(|e| e.to_string())?;
    let slack = stats.drift_hat + 3.0 * stats.entropy_stderr.hypot(stats.drift_stderr);
    ensure(stats.entropy_hat <= slack, || {
        format!("entropy {} > drift {} + 3σ", stats.entropy_hat, stats.drift_hat)
    })?;

    let word = cfg.model.parse_word(passage_word).map_err(|e| e.to_string())?;
    let product: f64 = word.letters.iter().map(|&i| cfg.mu.weight(i)).product();
    let fp = runner.first_passage(&cfg, &word, 200).map_err(|e| e.to_string())?;
    ensure(fp.f_hat >= product - 3.0 * fp.stderr, || {
        format!("first passage {} < {product} - 3·{}", fp.f_hat, fp.stderr)
    })?;

    let boundary_cfg = cfg.clone().trials(100_000);
    let sample = runner.boundary(&boundary_cfg).map_err(|e| e.to_string())?;
    let rotation = rotation_check(&sample, cfg.model.n());
    ensure(rotation.passes, || format!("rotation check failed: {rotation:?}"))?;

    Ok(format!(
        "entropy {:.4} ≤ drift {:.4} + 3σ; F({passage_word}) = {:.4} ≥ {product} - 3·{:.4}; \
         boundary {} of {} exits, max |z| {:.2}, chi2/bin {:.2}",
        stats.entropy_hat,
        stats.drift_hat,
        fp.f_hat,
        fp.stderr,
        sample.converged,
        sample.trials,
        rotation.max_abs_z,
        rotation.chi2_per_bin
    ))
}

fn probe_gap() -> Outcome {
    const TOL: f64 = 1e-9;
    let model = reflection(4, 8)?;
    let h = model.spec.inradius;
    let cfg = WalkConfig::new(model, StepMeasure::uniform(4)).steps(100).trials(2000).seed(7);
    let g = cfg.model.parse_word("r1,r3").map_err(|e| e.to_string())?;
    let rows = divergence_probe(&cfg, &g, 3).map_err(|e| e.to_string())?;
    let step = 4.0 * h - 2.0 * 4f64.ln();
    ensure(step > 0.0, || format!("per-power gap {step} is not positive"))?;
    let mut gaps = Vec::new();
    for k in 1..=3usize {
        let row = rows.iter().find(|r| r.k == k).ok_or_else(|| format!("no row for k = {k}"))?;
        within(&format!("gap at k = {k}"), row.lower_gap, k as f64 * step, TOL)?;
        gaps.push(row.lower_gap);
    }
    ensure(gaps.windows(2).all(|w| w[1] > w[0]), || "gap is not growing".into())?;
    Ok(format!(
        "gaps {:.6}, {:.6}, {:.6} = k·{step:.6} within {TOL:e}",
        gaps[0], gaps[1], gaps[2]
    ))
}

fn main() -> ExitCode {
    let mut suite = Suite { failed: 0, total: 0 };
    let one_second = Duration::from_secs(1);

    suite.run_within("1 (even reflection)", one_second, || {
        exceptional_set(
            SweepRequest::new(Family::Reflection, (4, 50), (4, 50)).parity(Parity::Even),
            &[(4, 6), (6, 4)],
            Some(&[(4, 4)]),
        )
    });
    suite.run_within("1 (odd reflection)", one_second, || {
        exceptional_set(
            SweepRequest::new(Family::Reflection, (5, 49), (4, 50)).parity(Parity::Odd),
            &[(5, 4)],
            None,
        )
    });
    suite.run_within("1 (fuchsian)", one_second, || {
        exceptional_set(
            SweepRequest::new(Family::Fuchsian, (4, 50), (3, 50)),
            &[(4, 5), (4, 6), (4, 7), (6, 4), (8, 3), (10, 3)],
            None,
        )
    });
    suite.run("2", tabulated_constants);
    suite.run("3", closed_form_vs_trace);
    suite.run("4", relators);
    suite.run_within("5", Duration::from_secs(60), volume_growth);

    let runner = Runner::new(None).expect("thread pool");
    let five_minutes = Duration::from_secs(300);
    suite.run_within("6 (reflection 4,8)", five_minutes, || monte_carlo(Family::Reflection, "r1,r3", &runner));
    suite.run_within("6 (fuchsian 4,8)", five_minutes, || monte_carlo(Family::Fuchsian, "t1,t2", &runner));
    suite.run("7", probe_gap);

    println!("acceptance: {} of {} passed", suite.total - suite.failed, suite.total);
    if suite.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
