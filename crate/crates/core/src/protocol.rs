//! Monte Carlo simulation of chain, star, and lattice construction from
//! probabilistic entangling (CPF) gates, with faithful attempt accounting
//! and a critical-path timing model.
//!
//! Costs are counted two ways per trial: `attempts` is every CPF firing
//! anywhere in the (conceptually parallel) build, while `time` follows one
//! designated lineage from a leaf to the finished object — each merge
//! charges the build time of its first input plus one attempt window per
//! try, so ensemble mean times reproduce the doubling/splicing recursions
//! `T_i = (T_(i-1) + t_a)/p` exactly. Parallelism is a timing model only;
//! execution inside a trial is single-threaded and deterministic.
//!
//! Randomness discipline: each trial owns the dedicated stream
//! `(master_seed, trial_index)` of a counter-based generator, and every
//! random decision is drawn in a fixed order that does not depend on thread
//! scheduling or on whether full-topology mode is on. Batched geometric
//! draws replace runs of identical Bernoulli attempts; the distributions are
//! identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytics::{arms_required, chain_plan, ChainPlan};
use crate::error::{Error, Result};
use crate::graph::{
    build_armed_chain, contract_bridge, reduce_chain_to_star, Graph, VertexId, VertexRole,
};

/// How embedded single-qubit measurement outcomes are selected. Graph
/// topology after a measurement is outcome-independent (outcomes differ only
/// by local corrections), so the policy is recorded for interface
/// completeness and consumes no randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutcomePolicy {
    #[default]
    ForcePlus,
    Random,
}

/// Physical parameters and execution options shared by all protocols.
#[derive(Debug, Clone)]
pub struct ProtocolParams {
    /// Success probability of one CPF attempt, in (0, 1].
    pub p: f64,
    /// Duration of one CPF attempt window.
    pub t_a: f64,
    /// Overall failure budget used when sizing arm counts, in (0, 1).
    pub epsilon: f64,
    /// Seed from which every per-trial stream is derived.
    pub master_seed: u64,
    /// Optional guard: a trial whose total attempts exceed the cap stops and
    /// reports `cap_exceeded` instead of running forever.
    pub attempt_cap: Option<u64>,
    pub outcome_policy: OutcomePolicy,
    /// Maintain full graph topology (feasible to ~10^4 vertices); off, only
    /// lengths and costs are tracked. Both modes draw identical randomness.
    pub full_graph: bool,
}

impl ProtocolParams {
    pub fn new(p: f64) -> Self {
        ProtocolParams {
            p,
            t_a: 1.0,
            epsilon: 0.1,
            master_seed: 0,
            attempt_cap: None,
            outcome_policy: OutcomePolicy::default(),
            full_graph: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let dom = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Domain(msg)) };
        dom(
            self.p.is_finite() && self.p > 0.0 && self.p <= 1.0,
            format!("success probability must lie in (0, 1], got {}", self.p),
        )?;
        dom(
            self.t_a.is_finite() && self.t_a > 0.0,
            format!("attempt duration must be positive, got {}", self.t_a),
        )?;
        dom(
            self.epsilon > 0.0 && self.epsilon < 1.0,
            format!("failure budget must lie in (0, 1), got {}", self.epsilon),
        )
    }
}

/// Positions of armed qubits along a main chain (arms alternate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArmParity {
    /// Arms on positions 0, 2, 4, ...: `ceil(len/2)` armed qubits.
    EvenPositions,
    /// Arms on positions 1, 3, 5, ...: `floor(len/2)` armed qubits.
    OddPositions,
}

/// A linear cluster under construction: its main-chain length, the optional
/// alternating arm pattern, and (in full-topology mode) its graph.
#[derive(Debug, Clone, Default)]
pub struct ChainState {
    pub main_length: u64,
    pub armed: Option<ArmParity>,
    pub graph: Option<Graph>,
}

impl ChainState {
    pub fn bare(main_length: u64) -> Self {
        ChainState {
            main_length,
            armed: None,
            graph: None,
        }
    }

    pub fn armed_count(&self) -> u64 {
        match self.armed {
            None => 0,
            Some(ArmParity::EvenPositions) => self.main_length.div_ceil(2),
            Some(ArmParity::OddPositions) => self.main_length / 2,
        }
    }
}

/// Protocol stage a cost is attributed to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    /// Restart-doubling of leaf chains.
    Base,
    /// Chain-joining rounds.
    Splice,
    /// Star-unit construction during assembly.
    Units,
    /// The parallel connection round of assembly.
    Connect,
}

impl Stage {
    const ALL: [Stage; 4] = [Stage::Base, Stage::Splice, Stage::Units, Stage::Connect];

    pub fn as_str(self) -> &'static str {
        match self {
            Stage::Base => "base",
            Stage::Splice => "splice",
            Stage::Units => "units",
            Stage::Connect => "connect",
        }
    }

    fn index(self) -> usize {
        match self {
            Stage::Base => 0,
            Stage::Splice => 1,
            Stage::Units => 2,
            Stage::Connect => 3,
        }
    }
}

/// Attempts and lineage time attributed to one stage.
#[derive(Debug, Clone, Copy)]
pub struct StageCost {
    pub stage: Stage,
    pub attempts: u64,
    pub time: f64,
}

/// Complete record of one simulated trial.
#[derive(Debug, Clone, Default)]
pub struct SimTrace {
    /// Every CPF firing in the build; always the sum over `stages`.
    pub attempts: u64,
    /// Designated-lineage (critical-path) duration; always the sum over
    /// `stages` and never more than `attempts * t_a`.
    pub time: f64,
    pub succeeded: bool,
    /// True when the attempt cap stopped the trial; stage times are not
    /// reconstructed for capped trials (attempts remain accurate).
    pub cap_exceeded: bool,
    /// Delivered main-chain length, where the task has one.
    pub length: Option<u64>,
    pub stages: Vec<StageCost>,
    /// Final topology in full-graph mode.
    pub final_graph: Option<Graph>,
}

/// One CPF attempt: true with probability `p`, one draw from the stream.
pub fn attempt_cpf<R: Rng + ?Sized>(params: &ProtocolParams, rng: &mut R) -> bool {
    rng.gen::<f64>() < params.p
}

/// The dedicated random stream of one trial.
pub fn trial_rng(master_seed: u64, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// Per-trial execution context: attempt accounting, cap enforcement, and
/// the random stream. Cap exhaustion unwinds as `None`.
struct TrialCtx<'r> {
    p: f64,
    t_a: f64,
    cap: Option<u64>,
    rng: &'r mut ChaCha8Rng,
    attempts: u64,
    stage_attempts: [u64; 4],
    stage_override: Option<Stage>,
    capped: bool,
}

impl<'r> TrialCtx<'r> {
    fn new(params: &ProtocolParams, rng: &'r mut ChaCha8Rng) -> Self {
        TrialCtx {
            p: params.p,
            t_a: params.t_a,
            cap: params.attempt_cap,
            rng,
            attempts: 0,
            stage_attempts: [0; 4],
            stage_override: None,
            capped: false,
        }
    }

    /// Record `n` attempts against a stage; `None` once the cap is crossed.
    fn charge(&mut self, stage: Stage, n: u64) -> Option<()> {
        let s = self.stage_override.unwrap_or(stage);
        self.attempts = self.attempts.saturating_add(n);
        self.stage_attempts[s.index()] = self.stage_attempts[s.index()].saturating_add(n);
        if self.cap.is_some_and(|c| self.attempts > c) {
            self.capped = true;
            return None;
        }
        Some(())
    }

    /// Number of attempts up to and including the first success; exactly one
    /// draw per call (`k = 1 + floor(ln(1-U)/ln(1-p))`).
    fn geometric(&mut self) -> u64 {
        let u: f64 = self.rng.gen();
        if self.p >= 1.0 {
            return 1;
        }
        let extra = ((1.0 - u).ln() / (1.0 - self.p).ln()).floor();
        1u64.saturating_add(extra as u64)
    }

    /// Assemble the trace. `time` is always the sum of the stage times, and
    /// stages with no recorded cost are dropped.
    fn finish(
        self,
        succeeded: bool,
        length: Option<u64>,
        stage_times: &[(Stage, f64)],
    ) -> SimTrace {
        let time_of = |s: Stage| {
            stage_times
                .iter()
                .filter(|(st, _)| *st == s)
                .map(|(_, t)| *t)
                .sum::<f64>()
        };
        let stages: Vec<StageCost> = Stage::ALL
            .into_iter()
            .map(|s| StageCost {
                stage: s,
                attempts: self.stage_attempts[s.index()],
                time: time_of(s),
            })
            .filter(|c| c.attempts > 0 || c.time > 0.0)
            .collect();
        SimTrace {
            attempts: self.attempts,
            time: stages.iter().map(|c| c.time).sum(),
            succeeded,
            cap_exceeded: self.capped,
            length,
            stages,
            final_graph: None,
        }
    }

    fn finish_capped(self) -> SimTrace {
        self.finish(false, None, &[])
    }

    /// Build a `2^k`-qubit chain by restart-doubling; returns its lineage
    /// build time. `k = 0` is a bare qubit (free).
    fn build_pow2(&mut self, k: u32) -> Option<f64> {
        if k == 0 {
            return Some(0.0);
        }
        let tries = self.geometric();
        self.charge(Stage::Base, tries)?;
        let mut time = 0.0;
        for _ in 0..tries {
            // Every try consumes a fresh pair of half-size chains; the
            // lineage clock follows the first of each pair.
            let t1 = self.build_pow2(k - 1)?;
            let _t2 = self.build_pow2(k - 1)?;
            time += t1 + self.t_a;
        }
        Some(time)
    }

    /// Length of a chain after `round` splice rounds, drawn from the plan's
    /// distribution without charging attempts: spare chains come from the
    /// idle fleet the timing model already assumes.
    fn sample_len(&mut self, plan: &ChainPlan, round: u32) -> u64 {
        if round == 0 {
            return plan.leaf_length;
        }
        let la = self.sample_len(plan, round - 1);
        let lb = self.sample_len(plan, round - 1);
        self.splice_once(la, lb, plan, round - 1).0
    }

    /// Resolve one splice slot: a single geometric draw fixes the total
    /// tries `k`; each failure removes two end qubits from both chains, and
    /// a pair that dies is replaced by an uncharged spare pair while the
    /// remaining failures carry over. Returns `(merged_length, k)`.
    fn splice_once(&mut self, la: u64, lb: u64, plan: &ChainPlan, spare_round: u32) -> (u64, u64) {
        let k = self.geometric();
        let mut failures = k - 1;
        let (mut la, mut lb) = (la, lb);
        loop {
            let shorter = la.min(lb);
            // With `shorter` qubits, (shorter-1)/2 failures still leave a
            // qubit to bond; one more exhausts the pair.
            let survivable = (shorter - 1) / 2;
            if failures <= survivable {
                return (la + lb - 4 * failures, k);
            }
            failures -= (shorter + 1) / 2;
            la = self.sample_len(plan, spare_round);
            lb = self.sample_len(plan, spare_round);
        }
    }

    /// One node of the splice tree: `(length, leaf_time, splice_time)`,
    /// where the times are nonzero only along the designated lineage.
    fn build_round(&mut self, plan: &ChainPlan, round: u32, lineage: bool) -> Option<(u64, f64, f64)> {
        if round == 0 {
            let t = self.build_pow2(plan.levels)?;
            return Some((plan.leaf_length, if lineage { t } else { 0.0 }, 0.0));
        }
        let (la, t_leaf, t_splice) = self.build_round(plan, round - 1, lineage)?;
        let (lb, _, _) = self.build_round(plan, round - 1, false)?;
        let (merged, k) = self.splice_once(la, lb, plan, round - 1);
        self.charge(Stage::Splice, k)?;
        let t_splice = if lineage {
            t_splice + k as f64 * self.t_a
        } else {
            0.0
        };
        Some((merged, t_leaf, t_splice))
    }
}

/// Restart-doubling build of a `2^(level+1)`-qubit chain (level 0 is the
/// two-qubit chain): two half-size chains are built for every bonding try,
/// and any failure restarts the level from scratch.
pub fn sim_small_chain(
    level: u32,
    params: &ProtocolParams,
    rng: &mut ChaCha8Rng,
) -> Result<SimTrace> {
    if level > 40 {
        return Err(Error::Domain(format!(
            "doubling level capped at 40, got {level}"
        )));
    }
    let mut ctx = TrialCtx::new(params, rng);
    match ctx.build_pow2(level + 1) {
        Some(t) => {
            let length = 1u64 << (level + 1);
            Ok(ctx.finish(true, Some(length), &[(Stage::Base, t)]))
        }
        None => Ok(ctx.finish_capped()),
    }
}

/// Splice two chains end to end: repeated CPF attempts, each failure
/// removing two end qubits from both chains; exhaustion of either chain is
/// reported as a failed trace of length zero. Purely sequential, so
/// `time = attempts * t_a` exactly.
pub fn sim_splice(
    a: &ChainState,
    b: &ChainState,
    params: &ProtocolParams,
    rng: &mut ChaCha8Rng,
) -> Result<(ChainState, SimTrace)> {
    if a.main_length == 0 || b.main_length == 0 {
        return Err(Error::Domain(
            "splicing needs two nonempty chains".to_string(),
        ));
    }
    let mut ctx = TrialCtx::new(params, rng);
    let k = ctx.geometric();
    let failures = k - 1;
    let shorter = a.main_length.min(b.main_length);
    let survivable = (shorter - 1) / 2;
    let (merged, attempts, succeeded) = if failures <= survivable {
        (a.main_length + b.main_length - 4 * failures, k, true)
    } else {
        // The pair is exhausted by its (shorter+1)/2-th failure; later
        // attempts never happen.
        (0, (shorter + 1) / 2, false)
    };
    if ctx.charge(Stage::Splice, attempts).is_none() {
        return Ok((ChainState::bare(0), ctx.finish_capped()));
    }
    let time = attempts as f64 * params.t_a;
    let state = ChainState {
        main_length: merged,
        armed: a.armed,
        graph: None,
    };
    let trace = ctx.finish(succeeded, Some(merged), &[(Stage::Splice, time)]);
    Ok((state, trace))
}

/// Build an `n >= 2` chain: restart-doubling to the planned leaf length,
/// then the planned number of parallel pairwise splice rounds; surplus is
/// trimmed by Z measurements at zero cost. A trial whose final length falls
/// short of `n` is reported as unsuccessful.
pub fn sim_build_chain(
    n: u64,
    params: &ProtocolParams,
    rng: &mut ChaCha8Rng,
) -> Result<(ChainState, SimTrace)> {
    let plan = chain_plan(n, params.p)?;
    let mut ctx = TrialCtx::new(params, rng);
    let Some((len, t_leaf, t_splice)) = ctx.build_round(&plan, plan.rounds, true) else {
        return Ok((ChainState::bare(0), ctx.finish_capped()));
    };
    let succeeded = len >= n;
    let delivered = if succeeded { n } else { len };
    let trace = ctx.finish(
        succeeded,
        Some(delivered),
        &[(Stage::Base, t_leaf), (Stage::Splice, t_splice)],
    );
    let graph = (params.full_graph && succeeded).then(|| {
        let mut g = Graph::with_vertices(0..n as VertexId).expect("fresh ids");
        for v in 0..n as VertexId - 1 {
            g.toggle_edge(v, v + 1).expect("active vertices");
            g.set_label(v, VertexRole::MainChain).expect("active");
        }
        g.set_label(n as VertexId - 1, VertexRole::MainChain).expect("active");
        g
    });
    Ok((
        ChainState {
            main_length: delivered,
            armed: None,
            graph,
        },
        trace,
    ))
}

/// Build a star of `n_l` two-qubit arms: a chain build of main length
/// `2 n_l` (the armed pattern rides along at no extra gate cost), then the
/// measurement-only reduction, which is free. The returned graph is the
/// star; the trace carries the chain-build cost.
pub fn sim_build_star(
    n_l: u64,
    params: &ProtocolParams,
    rng: &mut ChaCha8Rng,
) -> Result<(Graph, SimTrace)> {
    if n_l == 0 {
        return Err(Error::Domain("a star needs at least one arm".to_string()));
    }
    let (_, trace) = sim_build_chain(2 * n_l, params, rng)?;
    let star = reduce_chain_to_star(&build_armed_chain(n_l)?)?;
    Ok((star, trace))
}

/// One connection window for a single adjacent pair: `attempts_per_pair`
/// simultaneous CPF attempts, success when any fires.
pub fn sim_pair_connect(
    attempts_per_pair: u64,
    params: &ProtocolParams,
    rng: &mut ChaCha8Rng,
) -> Result<SimTrace> {
    if attempts_per_pair == 0 {
        return Err(Error::Domain(
            "a connection window needs at least one attempt".to_string(),
        ));
    }
    let mut ctx = TrialCtx::new(params, rng);
    let k = ctx.geometric();
    if ctx.charge(Stage::Connect, attempts_per_pair).is_none() {
        return Ok(ctx.finish_capped());
    }
    let succeeded = k <= attempts_per_pair;
    Ok(ctx.finish(succeeded, None, &[(Stage::Connect, params.t_a)]))
}

/// Boundary condition of a grid layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Toroidal,
}

/// Shape of the target lattice.
#[derive(Debug, Clone)]
pub enum LayoutKind {
    Square { rows: u32, cols: u32 },
    /// Brick-wall representation of a degree-3 honeycomb: all horizontal
    /// edges, vertical edges where row+col is even.
    Hexagonal { rows: u32, cols: u32 },
    /// Explicit site graph (open boundary only).
    Custom { sites: Graph },
}

/// Target lattice specification for assembly.
#[derive(Debug, Clone)]
pub struct LayoutSpec {
    pub kind: LayoutKind,
    pub boundary: Boundary,
}

impl LayoutSpec {
    pub fn square(rows: u32, cols: u32, boundary: Boundary) -> Self {
        LayoutSpec {
            kind: LayoutKind::Square { rows, cols },
            boundary,
        }
    }

    pub fn hexagonal(rows: u32, cols: u32, boundary: Boundary) -> Self {
        LayoutSpec {
            kind: LayoutKind::Hexagonal { rows, cols },
            boundary,
        }
    }

    pub fn custom(sites: Graph) -> Self {
        LayoutSpec {
            kind: LayoutKind::Custom { sites },
            boundary: Boundary::Open,
        }
    }

    pub fn describe(&self) -> String {
        let b = match self.boundary {
            Boundary::Open => "open",
            Boundary::Toroidal => "toroidal",
        };
        match &self.kind {
            LayoutKind::Square { rows, cols } => format!("square {rows}x{cols} {b}"),
            LayoutKind::Hexagonal { rows, cols } => format!("hexagonal {rows}x{cols} {b}"),
            LayoutKind::Custom { sites } => {
                format!("custom {} sites, {} bonds", sites.active_count(), sites.edge_count())
            }
        }
    }

    /// The simple connected site graph this layout describes. Site ids of
    /// grid layouts are `row * cols + col`.
    pub fn site_graph(&self) -> Result<Graph> {
        match (&self.kind, self.boundary) {
            (LayoutKind::Square { rows, cols }, boundary) => {
                let (rows, cols) = (*rows, *cols);
                self.check_sites(rows, cols)?;
                if boundary == Boundary::Toroidal && (rows < 3 || cols < 3) {
                    return Err(Error::Domain(
                        "a toroidal square grid needs at least 3 rows and 3 columns".to_string(),
                    ));
                }
                let mut g = Graph::with_vertices(0..rows * cols)?;
                for r in 0..rows {
                    for c in 0..cols {
                        let v = r * cols + c;
                        if c + 1 < cols {
                            g.toggle_edge(v, v + 1)?;
                        } else if boundary == Boundary::Toroidal {
                            g.toggle_edge(v, r * cols)?;
                        }
                        if r + 1 < rows {
                            g.toggle_edge(v, v + cols)?;
                        } else if boundary == Boundary::Toroidal {
                            g.toggle_edge(v, c)?;
                        }
                    }
                }
                Ok(g)
            }
            (LayoutKind::Hexagonal { rows, cols }, boundary) => {
                let (rows, cols) = (*rows, *cols);
                self.check_sites(rows, cols)?;
                if boundary == Boundary::Toroidal && (rows % 2 != 0 || cols < 3) {
                    return Err(Error::Domain(
                        "a toroidal hexagonal grid needs an even row count and at least 3 columns"
                            .to_string(),
                    ));
                }
                let mut g = Graph::with_vertices(0..rows * cols)?;
                for r in 0..rows {
                    for c in 0..cols {
                        let v = r * cols + c;
                        if c + 1 < cols {
                            g.toggle_edge(v, v + 1)?;
                        } else if boundary == Boundary::Toroidal {
                            g.toggle_edge(v, r * cols)?;
                        }
                        if (r + c) % 2 == 0 {
                            if r + 1 < rows {
                                g.toggle_edge(v, v + cols)?;
                            } else if boundary == Boundary::Toroidal {
                                g.toggle_edge(v, c)?;
                            }
                        }
                    }
                }
                Ok(g)
            }
            (LayoutKind::Custom { sites }, Boundary::Open) => {
                if sites.active_count() < 2 {
                    return Err(Error::Domain(
                        "a custom layout needs at least 2 sites".to_string(),
                    ));
                }
                if !sites.measured_vertices().is_empty() {
                    return Err(Error::Domain(
                        "a custom site graph must not contain measured vertices".to_string(),
                    ));
                }
                if !graph_connected(sites) {
                    return Err(Error::Domain("the site graph must be connected".to_string()));
                }
                Ok(sites.clone())
            }
            (LayoutKind::Custom { .. }, Boundary::Toroidal) => Err(Error::Domain(
                "boundary conditions apply to grid layouts, not custom site graphs".to_string(),
            )),
        }
    }

    fn check_sites(&self, rows: u32, cols: u32) -> Result<()> {
        if rows == 0 || cols == 0 || (rows as u64 * cols as u64) < 2 {
            return Err(Error::Domain(format!(
                "a lattice needs at least 2 sites, got {rows}x{cols}"
            )));
        }
        if rows as u64 * cols as u64 > 1 << 20 {
            return Err(Error::Domain(format!(
                "lattice capped at 2^20 sites, got {rows}x{cols}"
            )));
        }
        Ok(())
    }

    /// Pair count the arm-budget formula is evaluated at: the large-lattice
    /// form `2 N` for square and `1.5 N` for hexagonal (matching the
    /// published budgets), the true bond count for custom layouts.
    pub fn analytic_pairs(&self) -> Result<f64> {
        match &self.kind {
            LayoutKind::Square { rows, cols } => Ok(2.0 * (*rows as f64) * (*cols as f64)),
            LayoutKind::Hexagonal { rows, cols } => Ok(1.5 * (*rows as f64) * (*cols as f64)),
            LayoutKind::Custom { .. } => Ok(self.site_graph()?.edge_count() as f64),
        }
    }
}

fn graph_connected(g: &Graph) -> bool {
    let mut it = g.active_vertices();
    let Some(start) = it.next() else { return false };
    let mut seen = std::collections::BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v).expect("active vertex") {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == g.active_count()
}

/// Assemble a lattice of star units: size the arm budget, build one unit
/// per site (in parallel: unit stage time is the maximum unit time), then
/// run the single connection window in which every adjacent pair fires its
/// `n_l / d` attempts simultaneously. Per pair the lowest-index successful
/// arm is kept and all other arms are removed by Z measurements; the flag
/// is true when every pair connected. Failure is an outcome, not an error.
pub fn sim_assemble(
    layout: &LayoutSpec,
    params: &ProtocolParams,
    arms_override: Option<u64>,
    rng: &mut ChaCha8Rng,
) -> Result<(Option<Graph>, SimTrace, bool)> {
    let sites = layout.site_graph()?;
    let degree = sites
        .active_vertices()
        .map(|v| sites.degree(v).expect("active vertex"))
        .max()
        .unwrap_or(0) as u64;
    if degree == 0 {
        return Err(Error::Domain("the site graph has no bonds".to_string()));
    }
    let n_l = match arms_override {
        Some(a) => {
            if a == 0 || a % degree != 0 {
                return Err(Error::Domain(format!(
                    "arm count must be a positive multiple of the site degree {degree}, got {a}"
                )));
            }
            a
        }
        None => {
            arms_required(layout.analytic_pairs()?, params.epsilon, params.p, degree as u32)?.arms
        }
    };
    let spp = n_l / degree;
    if params.full_graph && (sites.active_count() as u64) * 4 * n_l > u32::MAX as u64 {
        return Err(Error::Domain(
            "full-graph assembly would exceed the vertex id space".to_string(),
        ));
    }

    let mut ctx = TrialCtx::new(params, rng);
    let plan = chain_plan(2 * n_l, params.p)?;
    // Unit builds: attempts accrue to the unit stage; the stage clock is the
    // slowest unit. Unit-length shortfalls are absorbed by the same idle
    // fleet the timing model assumes, so units always deliver.
    ctx.stage_override = Some(Stage::Units);
    let mut max_unit_time = 0.0f64;
    for _ in 0..sites.active_count() {
        match ctx.build_round(&plan, plan.rounds, true) {
            Some((_len, t_leaf, t_splice)) => max_unit_time = max_unit_time.max(t_leaf + t_splice),
            None => return Ok((None, ctx.finish_capped(), false)),
        }
    }
    ctx.stage_override = None;

    // Connection window: one geometric draw per pair gives the first
    // successful arm index; all per-pair attempts are charged whether or
    // not one succeeds.
    let pairs = sites.edges();
    let mut kept: Vec<(VertexId, VertexId, Option<u64>)> = Vec::with_capacity(pairs.len());
    let mut all_connected = true;
    for &(a, b) in &pairs {
        let k = ctx.geometric();
        if ctx.charge(Stage::Connect, spp).is_none() {
            return Ok((None, ctx.finish_capped(), false));
        }
        let win = (k <= spp).then_some(k);
        all_connected &= win.is_some();
        kept.push((a, b, win));
    }

    let trace = ctx.finish(
        all_connected,
        None,
        &[(Stage::Units, max_unit_time), (Stage::Connect, params.t_a)],
    );
    let graph = if params.full_graph {
        Some(build_assembly_graph(&sites, n_l, spp, &kept)?)
    } else {
        None
    };
    Ok((graph, trace, all_connected))
}

/// Materialize the post-assembly topology: one star block per site, a bond
/// toggle plus bridge contraction per connected pair, then Z cleanup of
/// every leftover arm in ascending id order.
fn build_assembly_graph(
    sites: &Graph,
    n_l: u64,
    spp: u64,
    kept: &[(VertexId, VertexId, Option<u64>)],
) -> Result<Graph> {
    let site_ids: Vec<VertexId> = sites.active_vertices().collect();
    let block = (4 * n_l) as u32;
    let star = reduce_chain_to_star(&build_armed_chain(n_l)?)?.without_measured();
    let mut g = Graph::new();
    for (i, _) in site_ids.iter().enumerate() {
        g.merge_disjoint(&star.relabeled(i as u32 * block))?;
    }
    let site_index = |s: VertexId| site_ids.binary_search(&s).expect("site id") as u32;
    // Arm `a` of a site occupies ids offset + 2 n_l + 2a (inner) and +1
    // (outer); neighbor slot `g` owns arms [g*spp, (g+1)*spp).
    let arm_ids = |site: VertexId, other: VertexId, k: u64| -> Result<(VertexId, VertexId)> {
        let slot = sites
            .neighbors(site)?
            .iter()
            .position(|&w| w == other)
            .expect("adjacent sites") as u64;
        let arm = slot * spp + (k - 1);
        let inner = site_index(site) * block + (2 * n_l + 2 * arm) as u32;
        Ok((inner, inner + 1))
    };
    for &(a, b, win) in kept {
        if let Some(k) = win {
            let (inner_a, outer_a) = arm_ids(a, b, k)?;
            let (inner_b, outer_b) = arm_ids(b, a, k)?;
            g.toggle_edge(outer_a, outer_b)?;
            contract_bridge(&mut g, [inner_a, outer_a, outer_b, inner_b])?;
        }
    }
    let leftovers: Vec<VertexId> = g
        .active_vertices()
        .filter(|&v| {
            matches!(
                g.label(v),
                Some(VertexRole::ArmInner) | Some(VertexRole::ArmOuter)
            )
        })
        .collect();
    for v in leftovers {
        g.measure_z(v)?;
    }
    Ok(g)
}

/// A simulation task run_one can execute.
#[derive(Debug, Clone)]
pub enum SimTask {
    SmallChain { level: u32 },
    Splice { n0: u64 },
    Chain { n: u64 },
    Star { n_l: u64 },
    Assemble { layout: LayoutSpec, arms_override: Option<u64> },
    PairConnect { attempts_per_pair: u64 },
}

impl SimTask {
    pub fn describe(&self) -> String {
        match self {
            SimTask::SmallChain { level } => format!("small-chain(level={level})"),
            SimTask::Splice { n0 } => format!("splice(n0={n0})"),
            SimTask::Chain { n } => format!("chain(n={n})"),
            SimTask::Star { n_l } => format!("star(arms={n_l})"),
            SimTask::Assemble { layout, arms_override } => match arms_override {
                Some(a) => format!("assemble({}, arms={a})", layout.describe()),
                None => format!("assemble({})", layout.describe()),
            },
            SimTask::PairConnect { attempts_per_pair } => {
                format!("pair-connect(attempts={attempts_per_pair})")
            }
        }
    }
}

/// Execute one trial of a task on its dedicated random stream.
pub fn run_one(task: &SimTask, params: &ProtocolParams, trial_index: u64) -> Result<SimTrace> {
    params.validate()?;
    let mut rng = trial_rng(params.master_seed, trial_index);
    match task {
        SimTask::SmallChain { level } => sim_small_chain(*level, params, &mut rng),
        SimTask::Splice { n0 } => {
            if *n0 == 0 {
                return Err(Error::Domain("splicing needs two nonempty chains".to_string()));
            }
            let a = ChainState::bare(*n0);
            let b = ChainState::bare(*n0);
            sim_splice(&a, &b, params, &mut rng).map(|(_, t)| t)
        }
        SimTask::Chain { n } => {
            let (state, mut trace) = sim_build_chain(*n, params, &mut rng)?;
            trace.final_graph = state.graph;
            Ok(trace)
        }
        SimTask::Star { n_l } => {
            let (star, mut trace) = sim_build_star(*n_l, params, &mut rng)?;
            if trace.succeeded {
                trace.length = Some(2 * n_l);
            }
            if params.full_graph {
                trace.final_graph = Some(star);
            }
            Ok(trace)
        }
        SimTask::Assemble { layout, arms_override } => {
            let (graph, mut trace, _ok) = sim_assemble(layout, params, *arms_override, &mut rng)?;
            trace.final_graph = graph;
            Ok(trace)
        }
        SimTask::PairConnect { attempts_per_pair } => {
            sim_pair_connect(*attempts_per_pair, params, &mut rng)
        }
    }
}

/// Run `trials` independent trials. Trials execute in parallel but land in
/// trial order, so results are independent of thread count.
pub fn run_trials(task: &SimTask, params: &ProtocolParams, trials: u64) -> Result<Vec<SimTrace>> {
    params.validate()?;
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".to_string()));
    }
    (0..trials)
        .into_par_iter()
        .map(|i| run_one(task, params, i))
        .collect()
}

/// Mean / spread summary of one observable.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub mean: f64,
    pub std_dev: f64,
    pub std_err: f64,
    pub ci95: [f64; 2],
}

impl Summary {
    /// Two-pass mean and sample standard deviation, folded sequentially in
    /// trial order for bit-reproducibility.
    fn from_values(values: &[f64]) -> Summary {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = if values.len() < 2 {
            0.0
        } else {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
        };
        let std_dev = var.sqrt();
        let std_err = std_dev / n.sqrt();
        Summary {
            mean,
            std_dev,
            std_err,
            ci95: [mean - 1.96 * std_err, mean + 1.96 * std_err],
        }
    }
}

/// Ensemble statistics over the trials of one task.
#[derive(Debug, Clone, Serialize)]
pub struct Stats {
    pub task: String,
    pub trials: u64,
    pub success_rate: f64,
    pub cap_exceeded_trials: u64,
    pub time: Summary,
    pub attempts: Summary,
    /// Present when the task delivers a length.
    pub length: Option<Summary>,
}

/// Aggregate traces (in trial order) into Stats; a pure sequential fold, so
/// the result is a function of the trace list alone.
pub fn summarize(task: &SimTask, traces: &[SimTrace]) -> Stats {
    let times: Vec<f64> = traces.iter().map(|t| t.time).collect();
    let attempts: Vec<f64> = traces.iter().map(|t| t.attempts as f64).collect();
    let lengths: Vec<f64> = traces
        .iter()
        .filter_map(|t| t.length.map(|l| l as f64))
        .collect();
    Stats {
        task: task.describe(),
        trials: traces.len() as u64,
        success_rate: traces.iter().filter(|t| t.succeeded).count() as f64 / traces.len() as f64,
        cap_exceeded_trials: traces.iter().filter(|t| t.cap_exceeded).count() as u64,
        time: Summary::from_values(&times),
        attempts: Summary::from_values(&attempts),
        length: (!lengths.is_empty()).then(|| Summary::from_values(&lengths)),
    }
}

/// Run an ensemble and summarize it.
pub fn run_ensemble(
    task: &SimTask,
    params: &ProtocolParams,
    trials: u64,
) -> Result<(Stats, Vec<SimTrace>)> {
    let traces = run_trials(task, params, trials)?;
    Ok((summarize(task, &traces), traces))
}
