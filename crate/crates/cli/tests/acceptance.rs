//! Acceptance gate: every deliverable-level requirement checked at its
//! stated tolerance, one test per requirement, each printing a single
//! `criterion N: PASS/FAIL` line (visible with `--nocapture`, and dumped
//! automatically for failing tests).
//!
//! Requirement 6 bundles three prongs; the asymptotic-window prong is
//! expected to fail honestly — the closed-form power law it compares
//! against overstates the exact recursion at desk-scale chain lengths,
//! while the companion prongs show the simulation tracks the exact
//! recursion. The failure message carries the measured ratios.

use std::collections::BTreeSet;
use std::process::{Command, Output};
use std::sync::OnceLock;
use std::time::Instant;

use starweave::analytics::{
    arms_required, chain_cost, chain_plan, expected_splice_length, lattice_time_from_log,
    pair_success, prior_scheme_time,
};
use starweave::graph::{build_armed_chain, reduce_chain_to_star, star_reduction_schedule};
use starweave::protocol::{run_ensemble, run_one, run_trials, LayoutSpec};
use starweave::stabilizer::{
    lc_orbit, structural_key, verify_measurement_rule, verify_sweep, StabilizerTableau,
};
use starweave::{
    Basis, Boundary, Graph, ProtocolParams, SimTask, VertexId, VertexRole, XRuleVariant,
};

fn pass(id: &str, detail: String) {
    println!("criterion {id}: PASS - {detail}");
}

fn fail(id: &str, detail: String) -> ! {
    println!("criterion {id}: FAIL - {detail}");
    panic!("criterion {id} failed: {detail}");
}

fn params(p: f64, seed: u64) -> ProtocolParams {
    ProtocolParams {
        master_seed: seed,
        ..ProtocolParams::new(p)
    }
}

// ---------------------------------------------------------------------------
// 1. Exhaustive rule-oracle equivalence on all connected graphs <= 6 vertices.

#[test]
fn criterion_01_rule_oracle_equivalence_to_six_vertices() {
    let started = Instant::now();
    let report = verify_sweep(6, None, XRuleVariant::CompletePairSets).expect("sweep runs");
    let elapsed = started.elapsed().as_secs_f64();
    if !report.all_passed() {
        fail(
            "1",
            format!(
                "{} of {} cases disagree with the oracle; first: {:?}",
                report.cases_failed, report.cases_checked, report.first_counterexample
            ),
        );
    }
    let expected_census: Vec<u64> = vec![1, 1, 4, 38, 728, 26704];
    if report.connected_graphs != expected_census {
        fail(
            "1",
            format!(
                "connected-graph census {:?} differs from the known count {:?}",
                report.connected_graphs, expected_census
            ),
        );
    }
    if elapsed > 600.0 {
        fail("1", format!("sweep took {elapsed:.1} s, over the 10-minute budget"));
    }
    pass(
        "1",
        format!(
            "{} cases over {} connected graphs all match the oracle in {elapsed:.1} s",
            report.cases_checked, report.graphs_checked
        ),
    );
}

// ---------------------------------------------------------------------------
// 2. The canonical X-measurement case and its negative control.

#[test]
fn criterion_02_x_rule_canonical_case_and_negative_control() {
    let path = Graph::from_edges(1..=3, &[(1, 2), (2, 3)]).expect("path builds");

    let mut rewritten = path.clone();
    rewritten.measure_x(2, Some(1)).expect("x rule applies");
    if rewritten.edges() != vec![(1, 3)] {
        fail("2", format!("x on the path middle gave edges {:?}, want [(1, 3)]", rewritten.edges()));
    }

    let standard = verify_measurement_rule(&path, Basis::X, 2, Some(1), XRuleVariant::CompletePairSets)
        .expect("oracle check runs");
    if !standard.matched {
        fail(
            "2",
            format!(
                "oracle rejects the standard x rule: rule {} vs oracle {}",
                standard.rule_key, standard.oracle_key
            ),
        );
    }

    let control = verify_measurement_rule(&path, Basis::X, 2, Some(1), XRuleVariant::ExistingEdges)
        .expect("control check runs");
    if control.matched {
        fail("2", "the existing-edges reading passed the oracle; it must not".to_string());
    }
    pass(
        "2",
        format!(
            "path yields edge (1,3), oracle-confirmed; existing-edges control rejected ({} vs {})",
            control.rule_key, control.oracle_key
        ),
    );
}

// ---------------------------------------------------------------------------
// 3. Star construction shapes, oracle-tracked for the small sizes.

#[test]
fn criterion_03_star_shapes_and_oracle_equivalence() {
    for n_l in [1u64, 2, 3, 4, 8] {
        let chain = build_armed_chain(n_l).expect("armed chain builds");
        let star = reduce_chain_to_star(&chain).expect("reduction runs");
        let actives: Vec<VertexId> = star.active_vertices().collect();
        if actives.len() as u64 != 2 * n_l + 1 {
            fail("3", format!("n_l={n_l}: {} active vertices, want {}", actives.len(), 2 * n_l + 1));
        }
        let centers: Vec<VertexId> = actives
            .iter()
            .copied()
            .filter(|&v| star.label(v) == Some(VertexRole::Center))
            .collect();
        if centers.len() != 1 {
            fail("3", format!("n_l={n_l}: {} center-labeled vertices, want exactly 1", centers.len()));
        }
        let center = centers[0];
        if star.degree(center).unwrap() as u64 != n_l {
            fail("3", format!("n_l={n_l}: center degree {}, want {n_l}", star.degree(center).unwrap()));
        }
        let mut inners = 0u64;
        let mut outers = 0u64;
        for &v in actives.iter().filter(|&&v| v != center) {
            match star.degree(v).unwrap() {
                2 if star.has_edge(center, v) => inners += 1,
                1 => outers += 1,
                d => fail("3", format!("n_l={n_l}: vertex {v} has degree {d}, not an arm qubit")),
            }
        }
        if inners != n_l || outers != n_l {
            fail("3", format!("n_l={n_l}: {inners} inner / {outers} outer arm qubits, want {n_l} each"));
        }
    }

    // Oracle side for the tableau-sized cases: walk the schedule with
    // byproduct corrections; the tableau must match the rewrite frame
    // exactly at every step and land inside the star's LC orbit.
    for n_l in 1..=3u64 {
        let chain = build_armed_chain(n_l).unwrap();
        let star = reduce_chain_to_star(&chain).unwrap();
        let mut rule = chain.clone();
        let mut tab = StabilizerTableau::from_graph(&chain).unwrap();
        for m in star_reduction_schedule(n_l).unwrap().steps() {
            tab.measure_corrected(&rule, m.target, m.basis, m.special)
                .expect("corrected measurement runs");
            match m.basis {
                Basis::X => rule.measure_x(m.target, m.special).unwrap(),
                Basis::Y => rule.measure_y(m.target).unwrap(),
                Basis::Z => rule.measure_z(m.target).unwrap(),
            }
            let keep: BTreeSet<VertexId> = rule.active_vertices().collect();
            let ex = tab.extract_graph().unwrap();
            if structural_key(&ex.graph.induced(&keep)) != structural_key(&rule.induced(&keep)) {
                fail("3", format!("n_l={n_l}: tableau left the rewrite frame during the schedule"));
            }
        }
        let keep: BTreeSet<VertexId> = star.active_vertices().collect();
        let ex = tab.extract_graph().unwrap();
        let key = structural_key(&ex.graph.induced(&keep));
        let orbit = lc_orbit(&star.induced(&keep), None).unwrap();
        if !orbit.contains(&key) {
            fail("3", format!("n_l={n_l}: oracle end state {key} is outside the star's LC orbit"));
        }
    }
    pass(
        "3",
        "stars for n_l in {1,2,3,4,8} have one center of degree n_l with n_l two-qubit arms; \
         oracle tracks the reduction exactly for n_l <= 3"
            .to_string(),
    );
}

// ---------------------------------------------------------------------------
// 4. Splice expectation against the exact finite sum.

#[test]
fn criterion_04_splice_expectation() {
    let exact = expected_splice_length(50, 0.25).expect("closed form evaluates");
    let traces = run_trials(&SimTask::Splice { n0: 50 }, &params(0.25, 404), 100_000)
        .expect("ensemble runs");
    let mean = traces
        .iter()
        .map(|t| t.length.expect("splice reports a length") as f64)
        .sum::<f64>()
        / traces.len() as f64;
    let rel = (mean - exact.exact).abs() / exact.exact;
    if rel > 0.01 {
        fail(
            "4",
            format!(
                "mean merged length {mean:.4} vs exact sum {:.4}: off by {:.2}%",
                exact.exact,
                rel * 100.0
            ),
        );
    }
    pass(
        "4",
        format!(
            "10^5 trials: mean {mean:.4} vs exact finite sum {:.4} ({:+.3}%), asymptotic {:.0}",
            exact.exact,
            rel * 100.0 * (mean - exact.exact).signum(),
            exact.asymptotic
        ),
    );
}

// ---------------------------------------------------------------------------
// 5. Level-1 doubling ensemble against the closed-form recursion values.

#[test]
fn criterion_05_small_chain_recursion_values() {
    let (stats, _) = run_ensemble(&SimTask::SmallChain { level: 1 }, &params(0.5, 505), 100_000)
        .expect("ensemble runs");
    let dt = (stats.time.mean - 6.0).abs();
    let da = (stats.attempts.mean - 10.0).abs();
    if dt > 3.0 * stats.time.std_err {
        fail(
            "5",
            format!(
                "mean time {:.4} is {:.1} standard errors from 6",
                stats.time.mean,
                dt / stats.time.std_err
            ),
        );
    }
    if da > 3.0 * stats.attempts.std_err {
        fail(
            "5",
            format!(
                "mean attempts {:.4} is {:.1} standard errors from 10",
                stats.attempts.mean,
                da / stats.attempts.std_err
            ),
        );
    }
    pass(
        "5",
        format!(
            "10^5 trials at p=0.5: time {:.4} (exp 6, {:.1} SE), attempts {:.4} (exp 10, {:.1} SE)",
            stats.time.mean,
            dt / stats.time.std_err,
            stats.attempts.mean,
            da / stats.attempts.std_err
        ),
    );
}

// ---------------------------------------------------------------------------
// 6. Chain scaling grid, shared across the three prongs.

struct GridPoint {
    p: f64,
    n: u64,
    trials: u64,
    mean_time: f64,
    se_time: f64,
    mean_attempts: f64,
    se_attempts: f64,
    times: Vec<f64>,
    plan_time: f64,
    plan_attempts: f64,
    rounds: u32,
    asym_time: f64,
    asym_attempts: f64,
}

static GRID: OnceLock<Vec<GridPoint>> = OnceLock::new();

/// One master seed per `p` so ensembles at different `n` share trial
/// streams (prong three uses them as matched pairs).
fn grid() -> &'static [GridPoint] {
    GRID.get_or_init(|| {
        let mut points = Vec::new();
        let spec: &[(f64, &[(u64, u64)])] = &[
            (0.1, &[(50, 120), (100, 60), (200, 40)]),
            (0.25, &[(50, 1000), (100, 1000), (200, 1000)]),
            (0.5, &[(50, 2000), (100, 2000), (200, 2000)]),
        ];
        for &(p, sizes) in spec {
            let seed = 6000 + (p * 100.0) as u64;
            for &(n, trials) in sizes {
                let (stats, traces) =
                    run_ensemble(&SimTask::Chain { n }, &params(p, seed), trials)
                        .expect("ensemble runs");
                // The planned round count meets the target in expectation;
                // individual trials may fall short. The plan expectations
                // are unconditional, so the comparisons below use the
                // all-trials mean, with a sanity floor on the success rate.
                assert!(
                    stats.success_rate >= 0.9,
                    "chain success rate {} at p={p}, n={n} fell below the 0.9 floor",
                    stats.success_rate
                );
                assert!(
                    traces
                        .iter()
                        .all(|t| t.length.unwrap_or(0) >= n || !t.succeeded),
                    "successful trials deliver the full target length"
                );
                let plan = chain_plan(n, p).expect("plan exists above critical length");
                let asym = chain_cost(n, p, 1.0).expect("closed form evaluates");
                points.push(GridPoint {
                    p,
                    n,
                    trials,
                    mean_time: stats.time.mean,
                    se_time: stats.time.std_err,
                    mean_attempts: stats.attempts.mean,
                    se_attempts: stats.attempts.std_err,
                    times: traces.iter().map(|t| t.time).collect(),
                    plan_time: plan.expected_time(1.0),
                    plan_attempts: plan.expected_attempts(),
                    rounds: plan.rounds,
                    asym_time: asym.time,
                    asym_attempts: asym.attempts.expect("chain law reports attempts"),
                });
            }
        }
        points
    })
}

#[test]
fn criterion_06a_asymptotic_window() {
    let mut rows = Vec::new();
    let mut failures = 0usize;
    for pt in grid() {
        let rt = pt.mean_time / pt.asym_time;
        let ra = pt.mean_attempts / pt.asym_attempts;
        let ok = (rt - 1.0).abs() <= 0.15 && (ra - 1.0).abs() <= 0.15;
        failures += usize::from(!ok);
        rows.push(format!(
            "  p={:<4} n={:<3} trials={:<4} time {:>10.1} / asym {:>10.1} (x{:.3})  attempts {:>11.0} / asym {:>12.0} (x{:.3})  {}",
            pt.p, pt.n, pt.trials, pt.mean_time, pt.asym_time, rt, pt.mean_attempts, pt.asym_attempts, ra,
            if ok { "within 15%" } else { "OUTSIDE 15%" }
        ));
    }
    println!("{}", rows.join("\n"));
    if failures > 0 {
        fail(
            "6 (asymptotic 15% window)",
            format!(
                "{failures} of {} grid points fall outside the 15% window around the \
                 closed-form power laws. The laws keep only the leading geometric term of \
                 the doubling recursion, which overstates its exact solution several-fold \
                 at these chain lengths (the gap closes as p -> 1 and as the log term \
                 grows); the companion prong shows the same ensembles sit within 3 \
                 standard errors of the exact recursion, so the simulation is faithful \
                 and the window around the asymptote is unattainable at this scale.",
                grid().len()
            ),
        );
    }
    pass("6 (asymptotic 15% window)", "all grid points within 15% of the power laws".to_string());
}

#[test]
fn criterion_06b_exact_recursion_window() {
    let mut worst_t = 0.0f64;
    let mut worst_a = 0.0f64;
    for pt in grid() {
        let zt = (pt.mean_time - pt.plan_time).abs() / pt.se_time;
        let za = (pt.mean_attempts - pt.plan_attempts).abs() / pt.se_attempts;
        worst_t = worst_t.max(zt);
        worst_a = worst_a.max(za);
        if zt > 3.0 {
            fail(
                "6 (exact recursion, 3 SE)",
                format!(
                    "p={} n={}: mean time {:.1} is {zt:.1} SE from the exact expectation {:.1}",
                    pt.p, pt.n, pt.mean_time, pt.plan_time
                ),
            );
        }
        if za > 3.0 {
            fail(
                "6 (exact recursion, 3 SE)",
                format!(
                    "p={} n={}: mean attempts {:.0} is {za:.1} SE from the exact expectation {:.0}",
                    pt.p, pt.n, pt.mean_attempts, pt.plan_attempts
                ),
            );
        }
    }
    pass(
        "6 (exact recursion, 3 SE)",
        format!(
            "all 9 grid points within 3 SE of the exact recursion (worst: time {worst_t:.1} SE, attempts {worst_a:.1} SE)"
        ),
    );
}

#[test]
fn criterion_06c_log_slope_substitute() {
    // Full scale is out of desk reach; the substitute checks that adding one
    // doubling round (n -> ~2n) adds t_a/p to expected time. The two
    // ensembles share trial streams, so the per-trial difference isolates
    // the extra round.
    let pts = grid();
    let a = pts
        .iter()
        .find(|pt| pt.p == 0.25 && pt.n == 100)
        .expect("grid has p=0.25, n=100");
    let b = pts
        .iter()
        .find(|pt| pt.p == 0.25 && pt.n == 200)
        .expect("grid has p=0.25, n=200");
    let rounds_added = b.rounds - a.rounds;
    if rounds_added != 1 {
        fail(
            "6 (log-slope substitute)",
            format!("doubling n added {rounds_added} rounds, expected exactly 1"),
        );
    }
    let expected = 1.0 / 0.25;
    let diffs: Vec<f64> = a
        .times
        .iter()
        .zip(&b.times)
        .map(|(ta, tb)| tb - ta)
        .collect();
    let n = diffs.len() as f64;
    let mean = diffs.iter().sum::<f64>() / n;
    let var = diffs.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / (n - 1.0);
    let se = (var / n).sqrt();
    let z = (mean - expected).abs() / se;
    if z > 3.0 {
        fail(
            "6 (log-slope substitute)",
            format!(
                "paired time increment {mean:.3} per extra round is {z:.1} SE from t_a/p = {expected}"
            ),
        );
    }
    pass(
        "6 (log-slope substitute)",
        format!(
            "doubling n (100 -> 200 at p=0.25) adds {mean:.3} time units (expect t_a/p = {expected}, {z:.1} SE, paired over {} trials)",
            diffs.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// 7. Per-bond success probability.

#[test]
fn criterion_07_pair_success_probability() {
    let expected = pair_success(0.25, 4).expect("closed form evaluates");
    let p = params(0.25, 707);
    let trials = 1_000_000u64;
    let task = SimTask::PairConnect { attempts_per_pair: 4 };
    let mut successes = 0u64;
    for i in 0..trials {
        if run_one(&task, &p, i).expect("trial runs").succeeded {
            successes += 1;
        }
    }
    let empirical = successes as f64 / trials as f64;
    let sigma = (expected * (1.0 - expected) / trials as f64).sqrt();
    let z = (empirical - expected).abs() / sigma;
    if z > 3.0 {
        fail(
            "7",
            format!("empirical bond success {empirical:.6} is {z:.1} sigma from {expected}"),
        );
    }
    pass(
        "7",
        format!("10^6 bonds: empirical {empirical:.6} vs 1-(1-p)^4 = {expected} ({z:.1} sigma)"),
    );
}

// ---------------------------------------------------------------------------
// 8. Lattice assembly: calibrated success rate, and exact topology at p=1.

#[test]
fn criterion_08_lattice_assembly_and_topology_control() {
    let plan = arms_required(32.0, 0.1, 0.25, 4).expect("arm budget evaluates");
    if plan.arms != 96 {
        fail("8", format!("calibrated arm budget {} differs from 96", plan.arms));
    }

    let layout = LayoutSpec::square(4, 4, Boundary::Open);
    let task = SimTask::Assemble { layout: layout.clone(), arms_override: None };
    let mut p = params(0.25, 808);
    p.epsilon = 0.1;
    let traces = run_trials(&task, &p, 2000).expect("ensemble runs");
    let rate = traces.iter().filter(|t| t.succeeded).count() as f64 / traces.len() as f64;
    if rate < 0.9 {
        fail("8", format!("assembly success rate {rate:.4} fell below 0.9"));
    }

    // Deterministic control: p = 1 with the minimum arm budget in
    // full-topology mode must deliver exactly the labeled site lattice on
    // the star centers.
    let mut control = params(1.0, 1);
    control.full_graph = true;
    let trace = run_one(
        &SimTask::Assemble { layout: layout.clone(), arms_override: Some(4) },
        &control,
        0,
    )
    .expect("control trial runs");
    if !trace.succeeded {
        fail("8", "p=1 control failed to assemble".to_string());
    }
    let final_graph = trace.final_graph.expect("full mode keeps the graph");
    let sites = layout.site_graph().expect("site graph builds");
    // Star blocks are 4 n_l ids wide and the center sits at 2 n_l - 2.
    let center_of = |site: VertexId| site * 16 + 6;
    let expected_actives: BTreeSet<VertexId> = sites.active_vertices().map(center_of).collect();
    let got_actives: BTreeSet<VertexId> = final_graph.active_vertices().collect();
    if got_actives != expected_actives {
        fail("8", format!("control actives {got_actives:?} differ from centers {expected_actives:?}"));
    }
    let expected_edges: BTreeSet<(VertexId, VertexId)> = sites
        .edges()
        .into_iter()
        .map(|(a, b)| (center_of(a), center_of(b)))
        .collect();
    let got_edges: BTreeSet<(VertexId, VertexId)> = final_graph.edges().into_iter().collect();
    if got_edges != expected_edges {
        fail("8", format!("control edges {got_edges:?} differ from the site lattice {expected_edges:?}"));
    }
    for &v in &got_actives {
        if final_graph.label(v) != Some(VertexRole::Center) {
            fail("8", format!("control vertex {v} is not labeled as a center"));
        }
    }
    pass(
        "8",
        format!(
            "4x4 open lattice at p=0.25, eps=0.1 (96 arms): success rate {rate:.4} over 2000 trials; \
             p=1 control reproduces the labeled lattice exactly ({} sites, {} bonds)",
            got_actives.len(),
            got_edges.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// 9. Closed-form comparison: frozen values, ordering, and linearity.

#[test]
fn criterion_09_comparison_closed_forms() {
    let t1 = lattice_time_from_log(30.0, 0.25, 1.0).expect("parallel law evaluates").time;
    let t2 = prior_scheme_time(30.0, 0.25, 1.0).expect("baseline law evaluates").time;
    let ratio = t1 / t2;
    let sig4 = |x: f64, v: f64| (x - v).abs() / v < 5e-4;
    if !sig4(t1, 716.5305721974478) || !sig4(t2, 835.5305721974478) || !sig4(ratio, 0.8575755287002489)
    {
        fail("9", format!("closed forms moved: T1={t1:.10}, T2={t2:.10}, ratio={ratio:.10}"));
    }

    // Ordering on the full grid. The two laws share their first two time
    // terms as identical expressions, so T1 < T2 reduces exactly to the
    // non-shared terms; at small p the shared doubling term (~1e19 at
    // p=0.01) is so large that the totals legitimately tie in f64 - the
    // check certifies every tie is below total rounding granularity.
    let mut ties = 0u32;
    for pi in 1..=50u32 {
        let p = pi as f64 / 100.0;
        for li in 5..=50u32 {
            let l = li as f64;
            let a = lattice_time_from_log(l, p, 1.0).unwrap();
            let b = prior_scheme_time(l, p, 1.0).unwrap();
            if a.time_terms[0].to_bits() != b.time_terms[0].to_bits()
                || a.time_terms[1].to_bits() != b.time_terms[1].to_bits()
            {
                fail("9", format!("shared structural terms diverged at p={p}, L={l}"));
            }
            let diff = b.time_terms[2] - a.time_terms[2];
            if diff <= 0.0 {
                fail("9", format!("T2 - T1 = {diff} <= 0 at p={p}, L={l}"));
            }
            if a.time > b.time {
                fail("9", format!("totals reversed: T1 {} > T2 {} at p={p}, L={l}", a.time, b.time));
            }
            if a.time == b.time {
                ties += 1;
                if diff >= 2.0 * b.time * f64::EPSILON {
                    fail(
                        "9",
                        format!(
                            "totals tie at p={p}, L={l} though the difference {diff} is \
                             above rounding granularity {}",
                            b.time * f64::EPSILON
                        ),
                    );
                }
            }
        }
    }

    // T2 - T1 is linear in the log term; R^2 of a least-squares line must
    // exceed 0.999 at every fixed p. The difference comes from the
    // non-shared terms (exact); the raw totals repeat the check where f64
    // resolves them.
    let r_squared = |ls: &[f64], ds: &[f64]| -> f64 {
        let n = ls.len() as f64;
        let mx = ls.iter().sum::<f64>() / n;
        let my = ds.iter().sum::<f64>() / n;
        let sxy: f64 = ls.iter().zip(ds).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = ls.iter().map(|x| (x - mx) * (x - mx)).sum();
        let slope = sxy / sxx;
        let ss_res: f64 = ls
            .iter()
            .zip(ds)
            .map(|(x, y)| {
                let fit = my + slope * (x - mx);
                (y - fit) * (y - fit)
            })
            .sum();
        let ss_tot: f64 = ds.iter().map(|y| (y - my) * (y - my)).sum();
        1.0 - ss_res / ss_tot
    };
    let ls: Vec<f64> = (5..=50).map(f64::from).collect();
    for pi in 1..=50u32 {
        let p = pi as f64 / 100.0;
        let ds: Vec<f64> = ls
            .iter()
            .map(|&l| {
                prior_scheme_time(l, p, 1.0).unwrap().time_terms[2]
                    - lattice_time_from_log(l, p, 1.0).unwrap().time_terms[2]
            })
            .collect();
        let r2 = r_squared(&ls, &ds);
        if r2 <= 0.999 {
            fail("9", format!("R^2 of the linear fit to T2-T1 is {r2} at p={p}"));
        }
    }
    for p in [0.25, 0.5] {
        let ds: Vec<f64> = ls
            .iter()
            .map(|&l| {
                prior_scheme_time(l, p, 1.0).unwrap().time
                    - lattice_time_from_log(l, p, 1.0).unwrap().time
            })
            .collect();
        let r2 = r_squared(&ls, &ds);
        if r2 <= 0.999 {
            fail("9", format!("raw-total R^2 of the linear fit to T2-T1 is {r2} at p={p}"));
        }
    }
    pass(
        "9",
        format!(
            "T1={t1:.4}, T2={t2:.4}, ratio={ratio:.4} (4 significant digits); T1 < T2 on the \
             full 50x46 grid ({ties} small-p points tie in f64 totals, each certified below \
             rounding granularity); T2-T1 linear in the log term (R^2 > 0.999 at all 50 p values)"
        ),
    );
}

// ---------------------------------------------------------------------------
// 10. Byte determinism of the binary across reruns and thread counts.

#[test]
fn criterion_10_byte_determinism_of_simulate() {
    let bin = env!("CARGO_BIN_EXE_starweave");
    let run = |args: &[&str]| -> Output {
        Command::new(bin).args(args).output().expect("binary runs")
    };
    let cases: Vec<Vec<&str>> = vec![
        vec!["simulate", "chain", "--n", "80", "--p", "0.25", "--trials", "200", "--seed", "9"],
        vec![
            "simulate", "lattice", "--rows", "3", "--cols", "3", "--p", "0.25", "--epsilon",
            "0.1", "--trials", "10", "--seed", "5",
        ],
        vec![
            "simulate", "splice", "--n0", "40", "--p", "0.3", "--trials", "500", "--seed", "2",
            "--format", "csv",
        ],
    ];
    for case in &cases {
        let base = run(case);
        assert!(base.status.success(), "command failed: {case:?}");
        let rerun = run(case);
        let one = run(&[case.as_slice(), &["--threads", "1"]].concat());
        let four = run(&[case.as_slice(), &["--threads", "4"]].concat());
        if base.stdout != rerun.stdout || base.stdout != one.stdout || base.stdout != four.stdout {
            fail("10", format!("output bytes differ across reruns or thread counts for {case:?}"));
        }
    }
    pass(
        "10",
        format!("{} simulate commands byte-identical across reruns and 1/4 threads", cases.len()),
    );
}
