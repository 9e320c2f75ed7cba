//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails. Pass criterion numbers as arguments to run a
//! subset, e.g. `cargo test --test acceptance -- 3 5`.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use common::{marcum_q1_quadrature, table2};
use pinchant::core::{
    avg_snr, ccdf_inst_snr, f_scalar, feasibility_avg, feasibility_outage,
    fixed_antenna_baseline, fixed_antenna_outage_baseline, invert_ccdf, marcum_q1,
    solve_maxmin, solve_outage, squared_distance_range, two_user_closed_form, DistanceBound,
    MarcumArgs, OutageSpec, Scenario, SolverTolerances, UserPosition,
};
use pinchant::oracle::{
    estimate_avg_snr, estimate_ccdf, estimate_ccdf_many, grid_search_maxmin, grid_search_outage,
    log_grid, outage_grid_slack, outage_threshold_bracket, McConfig,
};
use pinchant::scenario_file::{OutageEntry, ScenarioFile, ToleranceEntry, UserEntry};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_917;

// 1 and 2: formulas against Monte-Carlo
const FORMULA_POINTS: usize = 50;
const FORMULA_SAMPLES: u64 = 1_000_000;
const FORMULA_SIGMAS: f64 = 3.0;
const PLATEAU_SIGMAS: f64 = 2.0;
const FORMULA_SECONDS: f64 = 60.0;
// 3: Marcum Q
const MARCUM_GRID: usize = 21;
const MARCUM_TOL: f64 = 1e-9;
const MARCUM_IDENTITY_TOL: f64 = 1e-12;
// 4: max-min against grid search
const MAXMIN_SCENARIOS: usize = 200;
const MAXMIN_GRID: usize = 100_000;
const MAXMIN_REL_TOL: f64 = 1e-3;
const MAXMIN_SECONDS: f64 = 30.0;
// 5: two-user closed form
const CLOSED_FORM_SCENARIOS: usize = 1000;
const CLOSED_FORM_EPS_T_MULTIPLE: f64 = 10.0;
// 6: outage solver
const OUTAGE_SCENARIOS: usize = 100;
const OUTAGE_X_GRID: usize = 10_000;
const OUTAGE_T_GRID: usize = 1_000;
const OUTAGE_SAMPLES: u64 = 1_000_000;
const OUTAGE_SIGMAS: f64 = 3.0;
// 7: monotonicity
const MONOTONE_TRIALS: usize = 500;
const CCDF_SLACK: f64 = 1e-12;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn random_scenario(r: &mut ChaCha8Rng, dx: f64, users: usize, beta: Option<f64>) -> Scenario {
    let beta = beta.unwrap_or_else(|| r.random_range(1e-3..1e-2));
    let users = (0..users)
        .map(|_| UserPosition::new(r.random::<f64>() * dx, (r.random::<f64>() - 0.5) * 10.0))
        .collect();
    Scenario::with_shared_channel(dx, 10.0, 10.0, users, table2(beta)).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut worst = 0.0f64;
    let mut fails = 0;
    for i in 0..FORMULA_POINTS {
        let beta = r.random_range(1e-3..1e-2);
        let r_sq = r.random_range(100.0..1000.0);
        let x = r.random_range(0.0..30.0);
        let p = table2(beta);
        let est = estimate_avg_snr(&p, r_sq, x, &McConfig::new(FORMULA_SAMPLES, SEED + i as u64));
        let z = est.z_score(avg_snr(&p, r_sq));
        worst = worst.max(z);
        fails += usize::from(z > FORMULA_SIGMAS);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        fails == 0 && secs < FORMULA_SECONDS,
        format!(
            "{FORMULA_POINTS} points, {fails} beyond {FORMULA_SIGMAS} SE, max z {worst:.2}, {secs:.1} s (limit {FORMULA_SECONDS} s)"
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let (mut worst, mut fails, mut rows) = (0.0f64, 0, 0);
    let (mut plateau_worst, mut plateau_fails) = (0.0f64, 0);
    for i in 0..FORMULA_POINTS {
        let beta = r.random_range(1e-3..1e-2);
        let r_sq = r.random_range(100.0..1000.0);
        let x = r.random_range(0.0..30.0);
        let p = table2(beta);
        let nlos = p.rho * p.mu_sq / r_sq;
        let los = p.rho * p.eta / r_sq;
        // NLoS tail, plateau, middle of the LoS-limited drop
        let ts = [2.0 * nlos, (nlos * los).sqrt(), los];
        let cfg = McConfig::new(FORMULA_SAMPLES, SEED + 1000 + i as u64);
        let ests = estimate_ccdf_many(&p, r_sq, x, &ts, &cfg);
        for (k, (&t, est)) in ts.iter().zip(&ests).enumerate() {
            let analytic = ccdf_inst_snr(&p, r_sq, t).unwrap();
            let z = est.z_score(analytic);
            worst = worst.max(z);
            fails += usize::from(z > FORMULA_SIGMAS);
            rows += 1;
            if k == 1 {
                let p_los = (-beta * r_sq).exp();
                let zp = (analytic - p_los).abs() / est.std_error;
                plateau_worst = plateau_worst.max(zp);
                plateau_fails += usize::from(zp > PLATEAU_SIGMAS);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        fails == 0 && plateau_fails == 0 && secs < FORMULA_SECONDS,
        format!(
            "{rows} rows, {fails} beyond {FORMULA_SIGMAS} SE (max z {worst:.2}); plateau vs LoS probability: {plateau_fails} beyond {PLATEAU_SIGMAS} SE (max {plateau_worst:.1e}); {secs:.1} s"
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    let mut at = (0.0, 0.0);
    for i in 0..MARCUM_GRID {
        for j in 0..MARCUM_GRID {
            let (a, b) = (i as f64, j as f64);
            let d = (marcum_q1(MarcumArgs::new(a, b).unwrap()) - marcum_q1_quadrature(a, b)).abs();
            if d > worst {
                worst = d;
                at = (a, b);
            }
        }
    }
    let mut identity = 0.0f64;
    for k in 0..=200 {
        let v = 0.1 * k as f64;
        identity = identity.max((marcum_q1(MarcumArgs::new(v, 0.0).unwrap()) - 1.0).abs());
        let want = (-0.5 * v * v).exp();
        identity = identity.max((marcum_q1(MarcumArgs::new(0.0, v).unwrap()) - want).abs());
    }
    outcome(
        worst <= MARCUM_TOL && identity <= MARCUM_IDENTITY_TOL,
        format!(
            "{} grid points, max |series - quadrature| {worst:.1e} at (a, b) = {at:?} (limit {MARCUM_TOL:.0e}); identities {identity:.1e} (limit {MARCUM_IDENTITY_TOL:.0e})",
            MARCUM_GRID * MARCUM_GRID
        ),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let tol = SolverTolerances::default();
    let mut worst = 0.0f64;
    let mut fails = 0;
    for i in 0..MAXMIN_SCENARIOS {
        let dx = [10.0, 30.0, 50.0][i % 3];
        let beta = r.random_range(1e-3..1e-2);
        let s = random_scenario(&mut r, dx, 4, Some(beta));
        let bis = solve_maxmin(&s, &tol).unwrap();
        let grid = grid_search_maxmin(&s, MAXMIN_GRID);
        let rel = (bis.t_star - grid.t_star).abs() / grid.t_star;
        worst = worst.max(rel);
        fails += usize::from(rel > MAXMIN_REL_TOL);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        fails == 0 && secs < MAXMIN_SECONDS,
        format!(
            "{MAXMIN_SCENARIOS} scenarios, {fails} above {MAXMIN_REL_TOL:.0e}, max rel {worst:.2e}, {secs:.1} s (limit {MAXMIN_SECONDS} s)"
        ),
    )
}

fn closed_form_agrees(s: &Scenario, tol: &SolverTolerances) -> Result<(f64, f64), String> {
    let cf = two_user_closed_form(s).map_err(|e| e.to_string())?;
    let bis = solve_maxmin(s, tol).map_err(|e| e.to_string())?;
    let rel = (cf.t_star - bis.t_star).abs() / cf.t_star;
    let dx = (cf.x_star - bis.x_star).abs();
    let width = bis.feasible.width();
    if rel <= CLOSED_FORM_EPS_T_MULTIPLE * tol.eps_t && dx <= width {
        Ok((rel, dx))
    } else {
        Err(format!("rel {rel:.2e}, |dx| {dx:.2e}, width {width:.2e}"))
    }
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let tol = SolverTolerances::default();
    let (mut worst_rel, mut worst_dx) = (0.0f64, 0.0f64);
    let mut failures = Vec::new();
    let (mut interior, mut regimes) = (0, [0usize; 2]);
    while interior < CLOSED_FORM_SCENARIOS {
        let dx = r.random_range(5.0..60.0);
        let s = random_scenario(&mut r, dx, 2, None);
        let cf = two_user_closed_form(&s).unwrap();
        if !(cf.x_star > 0.0 && cf.x_star < dx) {
            continue;
        }
        interior += 1;
        let (u1, u2) = (s.users()[0], s.users()[1]);
        let gap = (s.offset_sq(0) - s.offset_sq(1)).abs().sqrt();
        regimes[usize::from((u1.x - u2.x).abs() > gap)] += 1;
        match closed_form_agrees(&s, &tol) {
            Ok((rel, d)) => {
                worst_rel = worst_rel.max(rel);
                worst_dx = worst_dx.max(d);
            }
            Err(e) => failures.push(e),
        }
    }
    // explicit cases: Δ = 0, Δ on the regime boundary, users on the edges
    let p = table2(0.004);
    let gap = (25f64 - 1.0).sqrt();
    let explicit: [(f64, [(f64, f64); 2]); 5] = [
        (20.0, [(7.0, 1.0), (7.0, -5.0)]),
        (20.0, [(7.0, 3.0), (7.0, 3.0)]),
        (20.0, [(5.0, 1.0), (5.0 + gap, 5.0)]),
        (20.0, [(0.0, 0.0), (20.0, 0.0)]),
        (20.0, [(0.0, 5.0), (0.0 + 0.5 * gap, -1.0)]),
    ];
    for (dx, pts) in explicit {
        let users = pts.iter().map(|&(x, y)| UserPosition::new(x, y)).collect();
        let s = Scenario::with_shared_channel(dx, 10.0, 10.0, users, p).unwrap();
        if let Err(e) = closed_form_agrees(&s, &tol) {
            failures.push(format!("explicit {pts:?}: {e}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{interior} random scenarios ({} at a user, {} biased midpoint) + 5 explicit; max rel {worst_rel:.2e} (limit {:.0e}), max |dx| {worst_dx:.2e}; {} failures{}",
            regimes[0],
            regimes[1],
            CLOSED_FORM_EPS_T_MULTIPLE * tol.eps_t,
            failures.len(),
            failures.first().map(|f| format!(", first: {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let tol = SolverTolerances::default();
    let (mut grid_fails, mut mc_fails) = (0, 0);
    let (mut worst_ratio, mut worst_z) = (0.0f64, f64::NEG_INFINITY);
    for i in 0..OUTAGE_SCENARIOS {
        let dx = [10.0, 30.0, 50.0][i % 3];
        let users = r.random_range(2..=4);
        let s = random_scenario(&mut r, dx, users, None);
        let eps = if i % 2 == 0 { 0.02 } else { 0.1 };
        let spec = OutageSpec::uniform(eps, users).unwrap();
        let sol = solve_outage(&s, &spec, &tol).unwrap();
        let (lo, hi) = outage_threshold_bracket(&s, &spec);
        let ts = log_grid(lo, hi, OUTAGE_T_GRID);
        let grid = grid_search_outage(&s, &spec, OUTAGE_X_GRID, &ts);
        let step = dx / (OUTAGE_X_GRID - 1) as f64;
        let slack = outage_grid_slack(&s, &spec, sol.x_star, step, ts[1] / ts[0], tol.eps_t);
        let rel = (sol.t_star - grid.t_star).abs() / grid.t_star;
        worst_ratio = worst_ratio.max(rel / slack);
        grid_fails += usize::from(rel > slack);
        for m in 0..users {
            let cfg = McConfig::new(OUTAGE_SAMPLES, SEED + 10_000 * i as u64 + m as u64);
            let r_sq = s.distance_sq(m, sol.x_star);
            let est = estimate_ccdf(&s.channels()[m], r_sq, sol.x_star, sol.t_star, &cfg);
            let z = ((1.0 - est.mean) - eps) / est.std_error;
            worst_z = worst_z.max(z);
            mc_fails += usize::from(z > OUTAGE_SIGMAS);
        }
    }
    outcome(
        grid_fails == 0 && mc_fails == 0,
        format!(
            "{OUTAGE_SCENARIOS} scenarios; grid {OUTAGE_X_GRID}x{OUTAGE_T_GRID}: {grid_fails} outside slack (max rel/slack {worst_ratio:.2}); MC outage: {mc_fails} above epsilon + {OUTAGE_SIGMAS} SE (max excess {worst_z:.2} SE)"
        ),
    )
}

fn bound_value(b: DistanceBound) -> f64 {
    match b {
        DistanceBound::Infeasible => f64::NEG_INFINITY,
        DistanceBound::Vacuous(v) | DistanceBound::Root(v) => v,
    }
}

fn criterion_7() -> Outcome {
    let tol = SolverTolerances::default();
    let mut r = rng(7);
    let mut violations = [0usize; 6];
    let top_level = |s: &Scenario| {
        (0..s.len())
            .map(|m| avg_snr(&s.channels()[m], squared_distance_range(s, m).unwrap().y_min))
            .fold(0.0, f64::max)
    };
    for _ in 0..MONOTONE_TRIALS {
        // (a)
        let p = table2(r.random_range(1e-3..1e-2));
        let y1 = r.random_range(100.0..1000.0);
        let y2 = r.random_range(y1..1000.0 + 1e-9);
        if y2 > y1 && f_scalar(&p, y2).unwrap() >= f_scalar(&p, y1).unwrap() {
            violations[0] += 1;
        }
        // (b)
        let t = 10f64.powf(r.random_range(0.0..5.5));
        let t2 = t * r.random_range(1.0..3.0);
        let c = ccdf_inst_snr(&p, y1, t).unwrap();
        if ccdf_inst_snr(&p, y2, t).unwrap() > c + CCDF_SLACK
            || ccdf_inst_snr(&p, y1, t2).unwrap() > c + CCDF_SLACK
        {
            violations[1] += 1;
        }
        // (c)
        let dx = r.random_range(5.0..60.0);
        let users = r.random_range(1..=5);
        let s = random_scenario(&mut r, dx, users, None);
        let spec = OutageSpec::uniform(r.random_range(0.01..0.5), users).unwrap();
        let top = top_level(&s);
        let (ta, tb) = {
            let u = r.random_range(0.05..1.0);
            (u * top * r.random_range(0.1..1.0), u * top)
        };
        let nested_f = feasibility_avg(&s, tb, &tol).is_subset_of(&feasibility_avg(&s, ta, &tol));
        let (oa, ob) = (ta * 1e-3 * r.random_range(0.1..10.0), tb * 1e-3 * r.random_range(0.1..10.0));
        let (oa, ob) = (oa.min(ob), oa.max(ob));
        let nested_t = feasibility_outage(&s, &spec, ob, &tol)
            .unwrap()
            .is_subset_of(&feasibility_outage(&s, &spec, oa, &tol).unwrap());
        if !(nested_f && nested_t) {
            violations[2] += 1;
        }
        // (d)
        let m = r.random_range(0..users);
        let range = squared_distance_range(&s, m).unwrap();
        let eps = spec.epsilons()[m];
        let ua = invert_ccdf(&s.channels()[m], oa, eps, range, tol.eps_u * range.y_max).unwrap();
        let ub = invert_ccdf(&s.channels()[m], ob, eps, range, tol.eps_u * range.y_max).unwrap();
        if bound_value(ub) > bound_value(ua) {
            violations[3] += 1;
        }
        // (e)
        let e1 = r.random_range(0.01..0.5);
        let e2 = r.random_range(e1..0.5);
        let t1 = solve_outage(&s, &OutageSpec::uniform(e1, users).unwrap(), &tol).unwrap();
        let t2 = solve_outage(&s, &OutageSpec::uniform(e2, users).unwrap(), &tol).unwrap();
        if t2.t_star < t1.t_star * (1.0 - tol.eps_t) {
            violations[4] += 1;
        }
        // (f)
        let pin = solve_maxmin(&s, &tol).unwrap();
        let fix = fixed_antenna_baseline(&s);
        let opin = solve_outage(&s, &spec, &tol).unwrap();
        let ofix = fixed_antenna_outage_baseline(&s, &spec, &tol).unwrap();
        if pin.t_star < fix.t_star * (1.0 - tol.eps_t) || opin.t_star < ofix.t_star * (1.0 - tol.eps_t) {
            violations[5] += 1;
        }
    }
    let total: usize = violations.iter().sum();
    outcome(
        total == 0,
        format!(
            "{MONOTONE_TRIALS} trials each; violations (a) {} (b) {} (c) {} (d) {} (e) {} (f) {}",
            violations[0], violations[1], violations[2], violations[3], violations[4], violations[5]
        ),
    )
}

fn criterion_8() -> Outcome {
    let tol = SolverTolerances::default();
    // user 1 far from the waveguide, user 2 close to it
    let (far, near) = (UserPosition::new(5.0, 5.0), UserPosition::new(25.0, 0.0));
    let s = Scenario::with_shared_channel(30.0, 10.0, 10.0, vec![far, near], table2(0.001)).unwrap();
    let xs: Vec<f64> = [0.02, 0.06, 0.10, 0.50]
        .iter()
        .map(|&e1| {
            let spec = OutageSpec::new(vec![e1, 0.1]).unwrap();
            solve_outage(&s, &spec, &tol).unwrap().x_star
        })
        .collect();
    let strictly_up = xs.windows(2).all(|w| w[1] > w[0]);
    let first_near_far = (xs[0] - far.x).abs() < (xs[0] - near.x).abs();
    let last_near_near = (xs[3] - near.x).abs() < (xs[3] - far.x).abs();
    let avg = solve_maxmin(&s, &tol).unwrap().x_star;
    outcome(
        strictly_up && first_near_far && last_near_near,
        format!(
            "x* for epsilon_1 = 0.02, 0.06, 0.10, 0.50: {:.3}, {:.3}, {:.3}, {:.3} (users at x = {}, {}; average-SNR design {avg:.3})",
            xs[0], xs[1], xs[2], xs[3], far.x, near.x
        ),
    )
}

fn pinchant(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_pinchant"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Outcome {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut problems = Vec::new();

    // round trip over random documents
    let mut r = rng(9);
    let mut trips = 0;
    for i in 0..200 {
        let dx = r.random_range(5.0..60.0);
        let mut f = ScenarioFile::template(dx).with_random_users(r.random_range(1..6), SEED, i);
        f.name = Some(format!("trip-{i}"));
        f.defaults.beta = r.random_range(1e-3..1e-2);
        if i % 2 == 0 {
            f.defaults.mu_sq_db = Some(r.random_range(-100.0..-40.0));
        }
        if i % 3 == 0 {
            f.outage = Some(OutageEntry {
                epsilon: None,
                epsilons: Some((0..f.users.len()).map(|_| r.random_range(0.01..0.5)).collect()),
            });
            f.tolerances = Some(ToleranceEntry {
                eps_t: Some(1e-4),
                ..ToleranceEntry::default()
            });
        }
        if i % 5 == 0 {
            f.users.push(UserEntry {
                noise_dbm: Some(-80.0),
                mu_sq_dbm: Some(-55.0),
                ..UserEntry::at(0.5 * dx, 0.0)
            });
            if let Some(o) = &mut f.outage {
                o.epsilons.as_mut().unwrap().push(0.1);
            }
        }
        let back = ScenarioFile::from_json(&f.to_json()).unwrap();
        if back != f || back.load().unwrap() != f.load().unwrap() {
            problems.push(format!("round trip {i}"));
        }
        trips += 1;
    }

    // golden files
    let scenario = data.join("table2_four_users.json");
    let scenario = scenario.to_str().unwrap();
    for (metric, golden) in [
        ("avg-snr", "table2_four_users.avg-snr.golden.json"),
        ("outage", "table2_four_users.outage.golden.json"),
    ] {
        let (code, out) = pinchant(&["solve", "--metric", metric, scenario]);
        let want = std::fs::read(data.join(golden)).unwrap();
        if code != 0 || out != want {
            problems.push(format!("golden {metric}"));
        }
    }

    // exit codes
    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"schema\": 1, \"region\": ").unwrap();
    let broken = broken.to_str().unwrap();
    let cases: [(&[&str], i32); 7] = [
        (&["solve", scenario], 0),
        (&["solve", broken], 2),
        (&["sweep", scenario, "--axis", "dx=1", "--axis", "beta=1", "--axis", "m=1"], 2),
        (&["ccdf", scenario, "--x-pin", "99", "--t-grid", "1"], 2),
        (&["solve", scenario, "--tolerance", "max_iter=2"], 3),
        (&["verify", scenario, "--samples", "20000"], 0),
        (&["verify", scenario, "--samples", "20000", "--corrupt-eta", "10"], 1),
    ];
    for (args, want) in cases {
        let (code, _) = pinchant(args);
        if code != want {
            problems.push(format!("exit {code} != {want} for {args:?}"));
        }
    }

    // verify determinism
    let run = || pinchant(&["verify", scenario, "--samples", "100000", "--seed", "3"]);
    let (a, b) = (run(), run());
    if a != b || a.0 != 0 {
        problems.push("verify output differs between runs".into());
    }

    outcome(
        problems.is_empty(),
        format!(
            "{trips} round trips, 2 golden files, {} exit-code cases, verify determinism; problems: {}",
            cases.len(),
            if problems.is_empty() { "none".to_string() } else { problems.join("; ") }
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "average-SNR formula vs Monte-Carlo", criterion_1),
        (2, "SNR CCDF formula vs Monte-Carlo", criterion_2),
        (3, "Marcum Q series vs quadrature", criterion_3),
        (4, "max-min solver vs grid search", criterion_4),
        (5, "two-user closed form vs bisection", criterion_5),
        (6, "outage solver vs grid search and Monte-Carlo", criterion_6),
        (7, "monotonicity and nestedness", criterion_7),
        (8, "optimal position vs reliability target", criterion_8),
        (9, "command-line contract", criterion_9),
    ];
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (n, name, run) in criteria {
        if !wanted.is_empty() && !wanted.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        println!(
            "criterion {n} {}: {name}: {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
