//! Acceptance suite. Prints one `PASS`/`FAIL` line per criterion.
//!
//! Set `REEFOPT_ACCEPTANCE=AC2,AC5` to run a subset. The process exits
//! non-zero when a criterion outside `KNOWN_UNATTAINABLE` fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::{json, Value};

use reefopt_cli::commands::{cmd_run, parse_comparison_csv, Summary};
use reefopt_core::antenna::{antenna_fitness, S11Trace, Window};
use reefopt_core::bsop::{billing, invoiced_power, Tariff, HORIZON};
use reefopt_core::encoding::{EncodingSpec, GeneSpec};
use reefopt_core::engine::{CroSl, FnProblem, InitParams, RunParams};
use reefopt_core::substrates::de::de_combine;
use reefopt_core::substrates::{
    crossover_2p, crossover_2p_at, crossover_mp, crossover_mp_at, de_mutate, gaussian_mutate, hs_mutate,
    quadratic_map_iterate, schedule_value, AttractorSpec, Schedule, StepScale, SubstrateConfig,
};
use reefopt_core::tmd::{assemble_matrices, fitness_g, natural_frequencies, BuildingSpec, FrfGrid, TmdDesign};
use reefopt_core::{run, Coral, Reef};

/// Criteria that cannot be met with the published model data; see the README.
const KNOWN_UNATTAINABLE: &[&str] = &["AC1"];

type Check = Result<String, String>;

/// `(scenario, seed, CRO-SL cost, deterministic cost, no-battery cost)`.
type BsopRow = (u64, u64, f64, f64, f64);

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn reefopt(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_reefopt")).args(args).output().map_err(|e| e.to_string())?;
    if o.status.success() {
        Ok(String::from_utf8_lossy(&o.stdout).into_owned())
    } else {
        Err(format!("reefopt {}: {}", args.join(" "), String::from_utf8_lossy(&o.stderr).trim()))
    }
}

fn cfg(name: &str) -> String {
    configs().join(name).display().to_string()
}

fn solution(name: &str) -> String {
    configs().join("solutions").join(name).display().to_string()
}

fn within_rel(value: f64, target: f64, tol: f64) -> bool {
    ((value - target) / target).abs() <= tol
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac1_modal_frequencies() -> Check {
    let cases = [
        ("N=2", BuildingSpec::two_storey(), vec![15.811, 31.623]),
        ("N=4", BuildingSpec::four_storey(), vec![10.608, 24.380, 34.538, 48.479]),
        ("rig", BuildingSpec::laboratory_rig(), vec![11.842, 27.733]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, spec, expected) in cases {
        let omega = natural_frequencies(&spec.mass, &assemble_matrices(&spec).k).omega;
        let worst = omega.iter().zip(&expected).map(|(w, e)| ((w - e) / e).abs()).fold(0.0, f64::max);
        ok &= omega.len() == expected.len() && worst <= 5e-4;
        let shown: Vec<String> = omega.iter().map(|w| format!("{w:.4}")).collect();
        parts.push(format!("{name} [{}] worst {:.3}%", shown.join(", "), 100.0 * worst));
    }
    ensure(ok, format!("{} (tolerance 0.05%)", parts.join("; ")))
}

fn frf_column_max(config: &str, floor: usize) -> Result<f64, String> {
    let text = reefopt(&["frf", "--config", config])?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty frf output")?.split(',').collect();
    let col = header.iter().position(|h| *h == format!("floor_{floor}_db")).ok_or("missing floor column")?;
    lines
        .map(|l| l.split(',').nth(col).and_then(|v| v.parse::<f64>().ok()).ok_or_else(|| format!("bad row {l}")))
        .try_fold(f64::NEG_INFINITY, |m, v| v.map(|v| m.max(v)))
}

fn ac2_open_loop_peaks() -> Check {
    let two = frf_column_max(&cfg("tmd_two_storey.json"), 2)?;
    let four = frf_column_max(&cfg("tmd_four_storey.json"), 4)?;
    ensure(
        (two - 36.5).abs() <= 0.3 && (four - 30.9).abs() <= 0.3,
        format!("N=2 floor 2 {two:.3} dB (36.5 ± 0.3), N=4 floor 4 {four:.3} dB (30.9 ± 0.3)"),
    )
}

fn eval(config: &str, sol: &str) -> Result<f64, String> {
    reefopt(&["eval", "--config", &cfg(config), "--solution", &solution(sol)])?
        .trim()
        .parse()
        .map_err(|e| format!("{e}"))
}

fn ac3_published_optima() -> Check {
    let cases = [
        ("Res2F", "tmd_two_storey.json", "res2f.json", 8.4348, 0.03),
        ("Res4F", "tmd_four_storey.json", "res4f.json", 7.7746, 0.06),
        ("Res2FExp1", "tmd_rig.json", "res2f_rig.json", 7.5033, 0.05),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, config, sol, target, tol) in cases {
        let g = eval(config, sol)?;
        ok &= within_rel(g, target, tol);
        parts.push(format!("{name} {g} vs {target} ({:+.2}%, tol {}%)", 100.0 * (g / target - 1.0), 100.0 * tol));
    }
    ensure(ok, parts.join("; "))
}

fn ac4_billing() -> Check {
    const ALPHA: [f64; 3] = [59.1735, 36.4907, 8.3677];
    const HP: [f64; 3] = [72.0, 66.0, 58.0];
    let mut ok = true;
    for hp in HP {
        ok &= invoiced_power(0.5 * hp, hp) == 0.85 * hp;
        ok &= invoiced_power(0.85 * hp, hp) == hp;
        ok &= invoiced_power(hp, hp) == hp;
        ok &= invoiced_power(1.05 * hp, hp) == hp;
        let m = 1.2 * hp;
        ok &= (invoiced_power(m, hp) - (m + 2.0 * (m - hp))).abs() <= 1e-12 * hp;
    }
    let tariff = Tariff::default();
    let flat: Vec<f64> = (0..HORIZON).map(|t| HP[tariff.period(t)]).collect();
    let pt = billing(&flat, &tariff).pt;
    let expected: f64 = ALPHA.iter().zip(HP).map(|(a, h)| a * h).sum::<f64>() / 52.0;
    ok &= (pt - expected).abs() <= 1e-9;
    ok &= within_rel(pt, 137.20, 0.01);
    ensure(
        ok,
        format!(
            "invoiced_power branches exact; flat PT {pt:.4} = Σα·HP/52 {expected:.4}, vs 137.20 {:+.2}%",
            100.0 * (pt / 137.20 - 1.0)
        ),
    )
}

fn ac5_antenna_fixtures() -> Check {
    let at = |db: f64| antenna_fitness(&S11Trace::sample(2400.0, 2500.0, 2.0, |_| db), Window::default());
    let deep = at(-15.0).map_err(|e| e.to_string())?;
    let shallow = at(-5.0).map_err(|e| e.to_string())?;
    ensure(
        (deep - 43.8).abs() <= 1e-12 && (shallow - 1.0).abs() <= 1e-12,
        format!("flat -15 dB -> {deep}, flat -5 dB -> {shallow}"),
    )
}

fn read_summary(path: &Path) -> Result<Summary, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn ac6_tmd_comparison() -> Check {
    const SEEDS: u64 = 5;
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("compare");
    let text = reefopt(&[
        "compare",
        "--config",
        &cfg("tmd_two_storey.json"),
        "--seed",
        "1",
        "--seeds",
        &SEEDS.to_string(),
        "--out",
        out.to_str().unwrap(),
    ])?;
    let rows = parse_comparison_csv(&text).map_err(|e| e.to_string())?;
    let full = rows.iter().find(|r| r.variant == "CRO-SL").ok_or("no CRO-SL row")?;
    let single_min = rows.iter().filter(|r| r.variant != "CRO-SL").map(|r| r.min).fold(f64::INFINITY, f64::min);
    let bests: Vec<f64> = (1..=SEEDS)
        .map(|s| read_summary(&out.join(format!("cro-sl/seed-{s}/summary.json"))).map(|x| x.report_fitness))
        .collect::<Result<_, _>>()?;
    let worst = bests.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let table: Vec<String> = rows.iter().map(|r| format!("{} {:.4}/{:.4}", r.variant, r.min, r.mean)).collect();
    ensure(
        worst <= 8.8 && full.min <= 1.05 * single_min,
        format!(
            "CRO-SL bests [{}] (each <= 8.8); CRO-SL min {:.4} <= 1.05 x {:.4}; min/mean {}",
            bests.iter().map(|b| format!("{b:.4}")).collect::<Vec<_>>().join(", "),
            full.min,
            single_min,
            table.join(", ")
        ),
    )
}

fn ac7_bsop_ordering() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let base: Value = serde_json::from_str(&std::fs::read_to_string(configs().join("bsop_synthetic.json")).unwrap())
        .map_err(|e| e.to_string())?;
    let jobs: Vec<(u64, u64)> = (1..=3).flat_map(|sc| (1..=3).map(move |s| (sc, s))).collect();
    let results: Vec<Result<BsopRow, String>> = jobs
        .par_iter()
        .map(|&(scenario, seed)| {
            let mut c = base.clone();
            c["problem"]["synthetic_seed"] = json!(scenario);
            c["engine"]["iterations"] = json!(5000);
            let path = dir.path().join(format!("scenario-{scenario}-seed-{seed}.json"));
            std::fs::write(&path, c.to_string()).map_err(|e| e.to_string())?;
            let out = dir.path().join(format!("out-{scenario}-{seed}"));
            let s = cmd_run(&path, Some(seed), Some(&out)).map_err(|e| e.to_string())?;
            let det = s.details["deterministic_total"].as_f64().ok_or("missing deterministic_total")?;
            let none = s.details["no_battery_total"].as_f64().ok_or("missing no_battery_total")?;
            Ok((scenario, seed, s.best_fitness, det, none))
        })
        .collect();
    let mut ok = true;
    let mut parts = Vec::new();
    for r in results {
        let (scenario, seed, cro, det, none) = r?;
        ok &= cro <= det && det <= none;
        parts.push(format!("s{scenario}/seed{seed} {cro:.2} <= {det:.2} <= {none:.2}"));
    }
    ensure(ok, parts.join("; "))
}

fn ac8_engine_invariants() -> Check {
    let enc = EncodingSpec::new(vec![
        GeneSpec::real(-5.0, 5.0).with_group(0),
        GeneSpec::integer(1, 4).with_group(1),
        GeneSpec::real(0.0, 1.0).with_group(0),
        GeneSpec::integer(-3, 3).with_group(1),
    ])
    .map_err(|e| e.to_string())?;
    let calls = AtomicU64::new(0);
    let problem = FnProblem::new(enc.clone(), |x: &[f64]| {
        calls.fetch_add(1, Ordering::SeqCst);
        x.iter().map(|v| v * v - 10.0 * (std::f64::consts::TAU * v).cos() + 10.0).sum()
    });
    let subs = vec![
        SubstrateConfig::harmony(0.9, 0.2, vec![Schedule::constant(0.2)]),
        SubstrateConfig::differential(Schedule::linear(0.6, 0.2)),
        SubstrateConfig::two_point(),
        SubstrateConfig::gaussian(Schedule::linear(0.1, 0.001), StepScale::RangeFraction),
        SubstrateConfig::multi_point(2),
    ];
    let mut checked = 0;
    for seed in 0..8u64 {
        let params = RunParams {
            reef_size: 40,
            substrates: subs.clone(),
            rho0: 0.6 + 0.05 * seed as f64,
            pb: 0.9,
            kappa: 3,
            fa: 0.0,
            budding_enabled: false,
            fd: 0.15,
            pd: 0.3,
            iterations: 40,
            stagnation_window: None,
            seed,
            init: InitParams::default(),
        };
        calls.store(0, Ordering::SeqCst);
        let mut cro = CroSl::new(params.clone(), &problem).map_err(|e| e.to_string())?;
        if cro.reef().occupied_count() != params.initial_occupied() {
            return Err(format!("seed {seed}: initial occupancy {}", cro.reef().occupied_count()));
        }
        let mut last = f64::INFINITY;
        for it in 0..params.iterations {
            cro.step();
            let corals: Vec<&Coral> = cro.reef().occupied().map(|(_, c)| c).collect();
            for (i, a) in corals.iter().enumerate() {
                if !enc.contains(&a.genome) {
                    return Err(format!("seed {seed} iteration {it}: out-of-bounds coral"));
                }
                if corals[i + 1..].iter().any(|b| enc.same_genome(&a.genome, &b.genome)) {
                    return Err(format!("seed {seed} iteration {it}: duplicate coral"));
                }
            }
            let best = cro.reef().best_ever().unwrap().fitness;
            let rec = cro.telemetry().records.last().unwrap();
            if best > last || rec.best_fitness != best {
                return Err(format!("seed {seed} iteration {it}: best_ever not monotone"));
            }
            if rec.counts.iter().any(|c| c.produced != c.settled + c.rejected()) {
                return Err(format!("seed {seed} iteration {it}: produced != settled + rejected"));
            }
            last = best;
            checked += 1;
        }
        if cro.telemetry().meta.evaluations != calls.load(Ordering::SeqCst) {
            return Err(format!("seed {seed}: evaluation count mismatch"));
        }
        let a = run(&params, &problem).map_err(|e| e.to_string())?;
        let b = run(&params, &problem).map_err(|e| e.to_string())?;
        if a.telemetry.to_csv_string() != b.telemetry.to_csv_string() || a.best != b.best {
            return Err(format!("seed {seed}: replay differs"));
        }
    }

    let plane = EncodingSpec::uniform_real(2, -10.0, 10.0).unwrap();
    let mut reef = Reef::new(6, 2);
    for (slot, f) in [(0usize, 1.0), (2, 2.0), (4, 3.0)] {
        reef.place(slot, Coral::new(vec![slot as f64, 0.0], f));
    }
    let mut draws = [0usize, 2, 4].into_iter();
    let third_try = reef.settle_with(Coral::new(vec![9.0, 9.0], 2.5), 3, &plane, || draws.next().unwrap());
    let mut calls_made = 0;
    let script = [0usize, 2, 0, 1];
    let exhausted = reef.settle_with(Coral::new(vec![8.0, 8.0], 100.0), 3, &plane, || {
        calls_made += 1;
        script[calls_made - 1]
    });
    let twin = reef.settle_with(Coral::new(vec![9.0 + 5e-13, 9.0], -1.0), 6, &plane, || 0);
    ensure(
        third_try == Some(4) && exhausted.is_none() && calls_made == 3 && twin.is_none(),
        format!(
            "{checked} iterations over 8 seeds: bounds, no duplicates, monotone best, conservation, evaluation count, replay; scripted κ settlement"
        ),
    )
}

fn oracle_orbit(a: &[f64; 12], steps: usize) -> Option<Vec<(f64, f64)>> {
    let (mut x, mut y) = (0.05f64, 0.05f64);
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let nx = a[0] + a[1] * x + a[2] * x * x + a[3] * x * y + a[4] * y + a[5] * y * y;
        let ny = a[6] + a[7] * x + a[8] * x * x + a[9] * x * y + a[10] * y + a[11] * y * y;
        x = nx;
        y = ny;
        if !(x.abs() <= 1e6 && y.abs() <= 1e6) {
            return None;
        }
        out.push((x, y));
    }
    Some(out)
}

fn ac9_substrate_oracles() -> Check {
    let fail = |what: &str| Err(format!("{what} example failed"));
    if schedule_value(20.0, 5.0, 0, 1000) != 20.0
        || schedule_value(20.0, 5.0, 999, 1000) != 5.0
        || (schedule_value(0.4, 0.1, 333, 1000) - 0.3).abs() > 1e-12
    {
        return fail("schedule");
    }

    let mixed = EncodingSpec::new(vec![
        GeneSpec::real(-5.0, 5.0),
        GeneSpec::integer(1, 4),
        GeneSpec::real(0.0, 50.0),
        GeneSpec::integer(-2, 2),
        GeneSpec::real(0.0, 0.3),
    ])
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let x = [1.25, 3.0, 17.0, -1.0, 0.2];
    if hs_mutate(&[0.0, 1.0, 0.0, 0.0, 0.0], &[&x], 1.0, 0.0, &[1.0], &mixed, &mut rng) != x {
        return fail("HS");
    }

    let plane = EncodingSpec::uniform_real(2, -10.0, 10.0).unwrap();
    if de_combine(&[1.0, 2.0], &[3.0, 4.0], &[1.0, 1.0], 0.5, &plane) != [2.0, 3.5]
        || de_mutate(&[&[0.0, 0.0], &[1.0, 1.0]], 0, 0.5, &plane, &mut rng).is_some()
    {
        return fail("DE");
    }

    if crossover_2p_at(&[1.0; 4], &[2.0; 4], 1, 3) != (vec![1.0, 2.0, 2.0, 1.0], vec![2.0, 1.0, 1.0, 2.0])
        || crossover_mp_at(&[1.0; 5], &[2.0; 5], &[1, 2, 3]).0 != [1.0, 2.0, 1.0, 2.0, 2.0]
    {
        return fail("crossover");
    }

    let mut pairs_rng = ChaCha8Rng::seed_from_u64(10_000);
    for k in 0..10_000 {
        let n = pairs_rng.random_range(2..40);
        let a: Vec<f64> = (0..n).map(|_| pairs_rng.random_range(-1e3..1e3)).collect();
        let b: Vec<f64> = (0..n).map(|_| pairs_rng.random_range(-1e3..1e3)).collect();
        let (c1, c2) = if k % 2 == 0 {
            crossover_2p(&a, &b, &mut pairs_rng)
        } else {
            let m = pairs_rng.random_range(1..n);
            crossover_mp(&a, &b, m, &mut pairs_rng)
        };
        for i in 0..n {
            let mut p = [a[i], b[i]];
            let mut c = [c1[i], c2[i]];
            p.sort_by(f64::total_cmp);
            c.sort_by(f64::total_cmp);
            if p != c {
                return Err(format!("crossover multiset broken at pair {k}, gene {i}"));
            }
        }
    }

    let wide = EncodingSpec::uniform_real(3, -1e6, 1e6).unwrap();
    let sigma = [0.1, 1.0, 2.0];
    let larva = gaussian_mutate(&[0.5, -3.0, 7.0], &sigma, &wide, &mut ChaCha8Rng::seed_from_u64(77));
    let mut replay = ChaCha8Rng::seed_from_u64(77);
    for (i, base) in [0.5, -3.0, 7.0].iter().enumerate() {
        let z: f64 = replay.sample(StandardNormal);
        if (larva[i] - base - sigma[i] * z).abs() > 1e-12 {
            return fail("GM");
        }
    }

    let zero = AttractorSpec { a: [0.0; 12], s_iterations: 20 };
    if quadratic_map_iterate(&zero, 20).map(|o| o.iter().all(|&p| p == (0.0, 0.0))) != Ok(true) {
        return fail("quadratic map");
    }
    let mut map_rng = ChaCha8Rng::seed_from_u64(8);
    let (mut bounded, mut unbounded) = (0, 0);
    for _ in 0..500 {
        let spec = AttractorSpec::random(2, &mut map_rng);
        let ours = quadratic_map_iterate(&spec, 400);
        if ours != quadratic_map_iterate(&spec, 400) {
            return Err("quadratic map is not deterministic".into());
        }
        match (ours, oracle_orbit(&spec.a, 400)) {
            (Ok(z), Some(o)) if z == o => bounded += 1,
            (Err(_), None) => unbounded += 1,
            _ => return Err("quadratic map disagrees with oracle".into()),
        }
    }

    let mut op_rng = ChaCha8Rng::seed_from_u64(3);
    let pop: Vec<Vec<f64>> = (0..8).map(|_| mixed.sample(&mut op_rng)).collect();
    let refs: Vec<&[f64]> = pop.iter().map(|v| v.as_slice()).collect();
    let kinds = [
        SubstrateConfig::harmony(0.7, 0.5, vec![Schedule::constant(0.7)]),
        SubstrateConfig::differential(Schedule::constant(1.7)),
        SubstrateConfig::two_point(),
        SubstrateConfig::multi_point(3),
        SubstrateConfig::gaussian(Schedule::constant(0.5), StepScale::RangeFraction),
        SubstrateConfig::strange_attractor(),
    ];
    for config in &kinds {
        for who in 0..pop.len() {
            let op = config.resolve(3, 10, &mixed);
            for larva in op.spawn(&refs, who, &mixed, &mut op_rng).unwrap_or_default() {
                if !mixed.contains(&larva) || mixed.clamped(&larva) != larva {
                    return Err(format!("{} produced an unrepaired larva", config.label()));
                }
            }
        }
    }

    Ok(format!(
        "schedule, HS, DE, 2Px, MPx, GM examples; multiset over 10^4 pairs; quadratic map {bounded} bounded / {unbounded} divergent agree with oracle; 6 operators stay in bounds"
    ))
}

fn ac10_grid_stability() -> Check {
    let building = BuildingSpec::two_storey();
    let design = TmdDesign::two_storey_optimum();
    let grid = FrfGrid::default();
    let g = fitness_g(&building, &design, &grid);
    let half = fitness_g(&building, &design, &grid.halved());
    let change = ((half - g) / g).abs();
    ensure(
        change < 0.005,
        format!("g {g:.6} at step {}, {half:.6} at step {}: {:.4}%", grid.step, grid.halved().step, 100.0 * change),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "modal frequencies", ac1_modal_frequencies),
        ("AC2", "open-loop FRF peaks", ac2_open_loop_peaks),
        ("AC3", "published optima via eval", ac3_published_optima),
        ("AC4", "billing", ac4_billing),
        ("AC5", "antenna fitness fixtures", ac5_antenna_fixtures),
        ("AC8", "engine invariants", ac8_engine_invariants),
        ("AC9", "substrate oracles", ac9_substrate_oracles),
        ("AC10", "FRF grid stability", ac10_grid_stability),
        ("AC7", "BSOP cost ordering", ac7_bsop_ordering),
        ("AC6", "TMD N=2 comparison", ac6_tmd_comparison),
    ];
    let only: Option<Vec<String>> =
        std::env::var("REEFOPT_ACCEPTANCE").ok().map(|v| v.split(',').map(|s| s.trim().to_uppercase()).collect());

    let mut unexpected = Vec::new();
    let mut known = Vec::new();
    let mut ran = 0;
    for (id, title, check) in criteria {
        if only.as_ref().is_some_and(|o| !o.iter().any(|x| x == id)) {
            continue;
        }
        ran += 1;
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {title} ({secs:.1} s): {detail}"),
            Err(detail) => {
                let note = if KNOWN_UNATTAINABLE.contains(&id) { " [known unattainable]" } else { "" };
                println!("{id} FAIL{note} {title} ({secs:.1} s): {detail}");
                if note.is_empty() {
                    unexpected.push(id);
                } else {
                    known.push(id);
                }
            }
        }
    }
    println!(
        "acceptance: {} of {ran} passed; known unattainable failing: [{}]; unexpected failures: [{}]",
        ran - known.len() - unexpected.len(),
        known.join(", "),
        unexpected.join(", ")
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
