//! Closed-form cost model for chain and lattice construction from
//! probabilistic entangling gates.
//!
//! Time is counted in attempt windows of duration `t_a` (all gates fired in
//! one window count one unit) and attempts count individual gate firings.
//! Functions return either plain numbers or a [`CostReport`] that separates
//! the additive terms of a formula, so tables and plots can show term-level
//! structure. Asymptotic formulas are marked `asymptotic: true` and carry
//! exact planner references in `exact_time` / `exact_attempts` where a
//! matching exact recursion exists.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// Itemized cost evaluation of one formula.
#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    /// Human-readable name of the evaluated formula.
    pub formula: String,
    /// True when the headline numbers come from an asymptotic law rather
    /// than an exact expectation.
    pub asymptotic: bool,
    /// Expected completion time in units of `t_a`.
    pub time: f64,
    /// Additive terms of `time`, largest structural term first.
    pub time_terms: Vec<f64>,
    /// Expected total gate attempts, when the formula provides them.
    pub attempts: Option<f64>,
    /// Additive terms of `attempts`.
    pub attempt_terms: Vec<f64>,
    /// Exact expectation from the matching recursion, when one exists.
    pub exact_time: Option<f64>,
    /// Exact expected attempts from the matching recursion.
    pub exact_attempts: Option<f64>,
    /// Named numeric inputs the evaluation used.
    pub inputs: BTreeMap<String, f64>,
    /// Caveat attached when inputs leave the regime the formula was derived
    /// for.
    pub warning: Option<String>,
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg.into()))
    }
}

fn check_success_probability(p: f64) -> Result<()> {
    require(
        p.is_finite() && p > 0.0 && p <= 1.0,
        format!("success probability must lie in (0, 1], got {p}"),
    )
}

fn check_asymptotic_probability(p: f64) -> Result<()> {
    require(
        p.is_finite() && p > 0.0 && p < 1.0,
        format!("asymptotic lattice formulas need p in (0, 1), got {p}"),
    )
}

fn check_time_unit(t_a: f64) -> Result<()> {
    require(
        t_a.is_finite() && t_a > 0.0,
        format!("attempt duration must be positive, got {t_a}"),
    )
}

fn high_p_warning(p: f64) -> Option<String> {
    (p > 0.8).then(|| {
        format!(
            "asymptotic cost model is derived for gate success probabilities well below 1; \
             p = {p} is an extrapolation"
        )
    })
}

/// Length above which splicing two chains no longer grows the result:
/// `n_c = 4 (1 - p) / p`.
pub fn critical_length(p: f64) -> Result<f64> {
    check_success_probability(p)?;
    Ok(4.0 * (1.0 - p) / p)
}

/// Expected merged length when splicing two chains of `n0` qubits each.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpliceLength {
    /// Exact mean over the bonding process, counting chain exhaustion as a
    /// merged length of zero: `sum_i 2 (n0 - 2 i) p (1 - p)^i`.
    pub exact: f64,
    /// Large-`n0` form `2 n0 - n_c`.
    pub asymptotic: f64,
}

pub fn expected_splice_length(n0: u64, p: f64) -> Result<SpliceLength> {
    check_success_probability(p)?;
    require(
        n0 >= 2 && n0 % 2 == 0,
        format!("splice operands must have even length >= 2, got {n0}"),
    )?;
    let mut exact = 0.0;
    let mut weight = p;
    for i in 0..=(n0 / 2) {
        exact += 2.0 * (n0 as f64 - 2.0 * i as f64) * weight;
        weight *= 1.0 - p;
    }
    Ok(SpliceLength {
        exact,
        asymptotic: 2.0 * n0 as f64 - critical_length(p)?,
    })
}

/// One row of the restart-doubling cost table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DoublingRow {
    pub level: u32,
    /// Chain length produced at this level: `2^(level + 1)`.
    pub length: u64,
    pub expected_time: f64,
    pub expected_attempts: f64,
}

/// Exact expectations of the restart-doubling recursion,
/// `T_i = (T_(i-1) + t_a) / p` and `M_i = (2 M_(i-1) + 1) / p`,
/// with `T_0 = t_a / p`, `M_0 = 1 / p`, for levels `0..=levels`.
pub fn doubling_table(levels: u32, p: f64, t_a: f64) -> Result<Vec<DoublingRow>> {
    check_success_probability(p)?;
    check_time_unit(t_a)?;
    require(levels <= 60, format!("doubling table capped at 60 levels, got {levels}"))?;
    let mut rows = Vec::with_capacity(levels as usize + 1);
    let mut t = t_a / p;
    let mut m = 1.0 / p;
    for level in 0..=levels {
        if level > 0 {
            t = (t + t_a) / p;
            m = (2.0 * m + 1.0) / p;
        }
        rows.push(DoublingRow {
            level,
            length: 1u64 << (level + 1),
            expected_time: t,
            expected_attempts: m,
        });
    }
    Ok(rows)
}

/// Closed form of `levels` steps of the doubling recursion started from
/// `(t0, m0)`; returns `(time, attempts)`.
///
/// `T_r = t0 / p^r + t_a * sum_(k=1..r) p^-k` and
/// `M_r = (2/p)^r (m0 + 1/(2-p)) - 1/(2-p)`.
pub fn recursion_closed_form(levels: u32, p: f64, t0: f64, m0: f64, t_a: f64) -> Result<(f64, f64)> {
    check_success_probability(p)?;
    check_time_unit(t_a)?;
    let r = levels as f64;
    let time = if p == 1.0 {
        t0 + r * t_a
    } else {
        let inv = 1.0 / p;
        t0 * inv.powf(r) + t_a * inv * (inv.powf(r) - 1.0) / (inv - 1.0)
    };
    let fixed = 1.0 / (2.0 - p);
    let attempts = (2.0 / p).powf(r) * (m0 + fixed) - fixed;
    Ok((time, attempts))
}

/// Fixed construction plan for an `n`-qubit chain: restart-doubling to a
/// chain of `2^levels` qubits just above critical length, then `rounds`
/// pairwise splice rounds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChainPlan {
    pub target: u64,
    pub p: f64,
    pub critical_length: f64,
    /// Leaf chain length, `2^levels`; a single qubit when `p = 1`.
    pub leaf_length: u64,
    pub levels: u32,
    pub rounds: u32,
}

impl ChainPlan {
    /// Expected completion time under unbounded parallel preparation: the
    /// doubling time of one leaf plus one splice per round on the designated
    /// lineage, each costing `t_a / p` on average.
    pub fn expected_time(&self, t_a: f64) -> f64 {
        self.doubling_cost(t_a).0 + self.rounds as f64 * t_a / self.p
    }

    /// Expected total attempts across the whole tree: `2^rounds` leaves plus
    /// `2^rounds - 1` splices at `1/p` attempts each.
    pub fn expected_attempts(&self) -> f64 {
        let leaves = (1u64 << self.rounds) as f64;
        leaves * self.doubling_cost(1.0).1 + (leaves - 1.0) / self.p
    }

    /// `(time, attempts)` of one leaf; zero for single-qubit leaves.
    fn doubling_cost(&self, t_a: f64) -> (f64, f64) {
        if self.levels == 0 {
            (0.0, 0.0)
        } else {
            let row = doubling_table(self.levels - 1, self.p, t_a)
                .expect("validated parameters")
                .pop()
                .expect("non-empty table");
            (row.expected_time, row.expected_attempts)
        }
    }
}

/// Plan an `n`-qubit chain build (`n >= 2`). Leaves are doubled to the
/// smallest power of two exceeding the critical length (or to `n` itself
/// when that is closer); splice rounds then double the surplus above
/// critical until the target is reached.
pub fn chain_plan(n: u64, p: f64) -> Result<ChainPlan> {
    check_success_probability(p)?;
    require(n >= 2, format!("a chain needs at least 2 qubits, got {n}"))?;
    require(
        n <= 1 << 40,
        format!("chain planning capped at 2^40 qubits, got {n}"),
    )?;
    let nc = critical_length(p)?;
    let n0_raw = nc.ceil() as u64 + 1;
    // ceil(log2(x)) for x >= 1.
    let ceil_log2 = |x: u64| if x <= 1 { 0 } else { (x - 1).ilog2() + 1 };
    let mut levels = ceil_log2(n0_raw);
    let mut leaf = 1u64 << levels;
    let rounds;
    if n <= leaf {
        levels = ceil_log2(n);
        leaf = 1 << levels;
        rounds = 0;
    } else {
        let mut r = 0u32;
        while (leaf as f64 - nc) * (1u64 << r) as f64 + nc < n as f64 {
            r += 1;
        }
        rounds = r;
    }
    Ok(ChainPlan {
        target: n,
        p,
        critical_length: nc,
        leaf_length: leaf,
        levels,
        rounds,
    })
}

/// Power-law cost of a `2^(level+1)`-qubit chain built by restart-doubling
/// alone: `T = (t_a/p) n^(log2(1/p))`, `M = (1/p) n^(log2(2/p))` as the
/// headline, with the exact recursion in `exact_*`.
pub fn small_chain_cost(n: u64, p: f64, t_a: f64) -> Result<CostReport> {
    check_success_probability(p)?;
    check_time_unit(t_a)?;
    require(
        n >= 2 && n.is_power_of_two(),
        format!("restart-doubling builds power-of-two chain lengths >= 2, got {n}"),
    )?;
    require(n <= 1 << 32, format!("doubling cost capped at 2^32 qubits, got {n}"))?;
    let nf = n as f64;
    let time = t_a / p * nf.powf((1.0 / p).log2());
    let attempts = 1.0 / p * nf.powf((2.0 / p).log2());
    let level = n.ilog2() - 1;
    let row = *doubling_table(level, p, t_a)?.last().expect("non-empty table");
    Ok(CostReport {
        formula: "restart-doubling chain, power law".to_string(),
        asymptotic: true,
        time,
        time_terms: vec![time],
        attempts: Some(attempts),
        attempt_terms: vec![attempts],
        exact_time: Some(row.expected_time),
        exact_attempts: Some(row.expected_attempts),
        inputs: BTreeMap::from([
            ("n".to_string(), nf),
            ("p".to_string(), p),
            ("t_a".to_string(), t_a),
            ("level".to_string(), level as f64),
        ]),
        warning: None,
    })
}

/// General scaling law for splice-doubling past a start chain:
/// `T(n) = t0 + (t_a/p) log2[(n - n_c)/(n0 - n_c)]`.
pub fn scaling_time(n: f64, p: f64, t_a: f64, n0: f64, t0: f64) -> Result<f64> {
    check_success_probability(p)?;
    check_time_unit(t_a)?;
    let nc = critical_length(p)?;
    require(
        n0 > nc && n > nc,
        format!("scaling law needs chain lengths above critical length {nc}"),
    )?;
    Ok(t0 + t_a / p * ((n - nc) / (n0 - nc)).log2())
}

/// General scaling law for attempts:
/// `M(n) = (m0 + 1/p) (n - n_c)/(n0 - n_c) - 1/p`.
pub fn scaling_attempts(n: f64, p: f64, n0: f64, m0: f64) -> Result<f64> {
    check_success_probability(p)?;
    let nc = critical_length(p)?;
    require(
        n0 > nc && n > nc,
        format!("scaling law needs chain lengths above critical length {nc}"),
    )?;
    Ok((m0 + 1.0 / p) * (n - nc) / (n0 - nc) - 1.0 / p)
}

/// Asymptotic cost of an `n`-qubit chain (`n > n_c`): the scaling laws
/// seeded at the first super-critical length `n_c + 1` with power-law
/// leading terms,
/// `T(n) = t_a (1/p)^(log2(n_c+1)+1) + (t_a/p) log2(n - n_c)` and
/// `M(n) = (2/p)^(log2(n_c+1)+1) (n - n_c)/2`.
/// The exact planner expectation is attached in `exact_*`.
pub fn chain_cost(n: u64, p: f64, t_a: f64) -> Result<CostReport> {
    check_success_probability(p)?;
    check_time_unit(t_a)?;
    let nc = critical_length(p)?;
    require(
        (n as f64) > nc,
        format!("chain cost law applies above the critical length {nc}, got n = {n}"),
    )?;
    require(n >= 2, format!("a chain needs at least 2 qubits, got {n}"))?;
    let exponent = (nc + 1.0).log2() + 1.0;
    let t1 = t_a * (1.0 / p).powf(exponent);
    let t2 = t_a / p * (n as f64 - nc).log2();
    let attempts = (2.0 / p).powf(exponent) * (n as f64 - nc) / 2.0;
    let plan = chain_plan(n, p)?;
    Ok(CostReport {
        formula: "chain via doubling then splice rounds, asymptotic".to_string(),
        asymptotic: true,
        time: t1 + t2,
        time_terms: vec![t1, t2],
        attempts: Some(attempts),
        attempt_terms: vec![attempts],
        exact_time: Some(plan.expected_time(t_a)),
        exact_attempts: Some(plan.expected_attempts()),
        inputs: BTreeMap::from([
            ("n".to_string(), n as f64),
            ("p".to_string(), p),
            ("t_a".to_string(), t_a),
            ("n_c".to_string(), nc),
            ("plan_leaf_length".to_string(), plan.leaf_length as f64),
            ("plan_rounds".to_string(), plan.rounds as f64),
        ]),
        warning: high_p_warning(p),
    })
}

/// Probability that at least one of `attempts` independent gate firings
/// succeeds: `1 - (1 - p)^attempts`.
pub fn pair_success(p: f64, attempts: u64) -> Result<f64> {
    check_success_probability(p)?;
    require(attempts >= 1, "at least one attempt per pair is required")?;
    Ok(1.0 - (1.0 - p).powi(attempts.min(i32::MAX as u64) as i32))
}

/// Arm budget for assembling `pairs` bonds with overall failure budget
/// `epsilon` at site degree `degree`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ArmsPlan {
    /// Unrounded requirement `(degree/p) ln(pairs/epsilon)`.
    pub raw: f64,
    /// `raw` rounded up to a multiple of `degree` (at least one attempt per
    /// neighbor).
    pub arms: u64,
    /// Arms divided evenly over the site's neighbors.
    pub attempts_per_pair: u64,
    /// Per-bond success probability with that attempt budget.
    pub per_pair_success: f64,
    /// Probability that every bond of the lattice forms.
    pub all_pairs_success: f64,
}

pub fn arms_required(pairs: f64, epsilon: f64, p: f64, degree: u32) -> Result<ArmsPlan> {
    check_success_probability(p)?;
    require(
        pairs.is_finite() && pairs >= 1.0,
        format!("pair count must be at least 1, got {pairs}"),
    )?;
    require(
        epsilon > 0.0 && epsilon < 1.0,
        format!("failure budget must lie in (0, 1), got {epsilon}"),
    )?;
    require(degree >= 1, "site degree must be at least 1")?;
    let raw = degree as f64 / p * (pairs / epsilon).ln();
    let d = degree as u64;
    let arms = (((raw / d as f64).ceil() as u64).max(1)) * d;
    let attempts_per_pair = arms / d;
    let per = pair_success(p, attempts_per_pair)?;
    Ok(ArmsPlan {
        raw,
        arms,
        attempts_per_pair,
        per_pair_success: per,
        all_pairs_success: per.powf(pairs),
    })
}

/// Shared leading term of the lattice time laws:
/// `t_a (1/p)^(log2(4/p - 3) + 1)`, the cost of the first super-critical
/// chain.
fn lattice_leading_time(p: f64, t_a: f64) -> f64 {
    t_a * (1.0 / p).powf((4.0 / p - 3.0).log2() + 1.0)
}

fn lattice_report(
    formula: &str,
    p: f64,
    t_a: f64,
    unit_surplus: f64,
    attempt_parts: Option<(f64, f64)>,
    inputs: BTreeMap<String, f64>,
) -> CostReport {
    let t1 = lattice_leading_time(p, t_a);
    let t2 = t_a / p * (4.0 / p * unit_surplus).log2();
    let t3 = t_a;
    let (attempts, attempt_terms) = match attempt_parts {
        Some((a1, a2)) => (Some(a1 + a2), vec![a1, a2]),
        None => (None, Vec::new()),
    };
    CostReport {
        formula: formula.to_string(),
        asymptotic: true,
        time: t1 + t2 + t3,
        time_terms: vec![t1, t2, t3],
        attempts,
        attempt_terms,
        exact_time: None,
        exact_attempts: None,
        inputs,
        warning: high_p_warning(p),
    }
}

/// Asymptotic cost of assembling an `n_sites`-site square lattice with
/// overall failure budget `epsilon`. With `L = ln(2 n_sites / epsilon)`:
/// time `= t_a [(1/p)^(log2(4/p-3)+1) + (1/p) log2((4/p)(2L - 1)) + 1]`,
/// attempts `= (2/p)^(2+log2(4/p-3)) n_sites (2L - 1) + (2 n_sites / p) L`.
pub fn lattice_cost(n_sites: u64, epsilon: f64, p: f64, t_a: f64) -> Result<CostReport> {
    check_asymptotic_probability(p)?;
    check_time_unit(t_a)?;
    require(n_sites >= 2, format!("a lattice needs at least 2 sites, got {n_sites}"))?;
    require(
        epsilon > 0.0 && epsilon < 1.0,
        format!("failure budget must lie in (0, 1), got {epsilon}"),
    )?;
    let nf = n_sites as f64;
    let l = (2.0 * nf / epsilon).ln();
    let a1 = (2.0 / p).powf(2.0 + (4.0 / p - 3.0).log2()) * nf * (2.0 * l - 1.0);
    let a2 = 2.0 * nf / p * l;
    Ok(lattice_report(
        "square-lattice assembly, asymptotic",
        p,
        t_a,
        2.0 * l - 1.0,
        Some((a1, a2)),
        BTreeMap::from([
            ("n_sites".to_string(), nf),
            ("epsilon".to_string(), epsilon),
            ("p".to_string(), p),
            ("t_a".to_string(), t_a),
            ("log_term".to_string(), l),
        ]),
    ))
}

/// Square-lattice time law evaluated directly at a given `log_term`
/// (`= ln(2 n_sites / epsilon)`); attempts need the site count, so they are
/// omitted.
pub fn lattice_time_from_log(log_term: f64, p: f64, t_a: f64) -> Result<CostReport> {
    check_asymptotic_probability(p)?;
    check_time_unit(t_a)?;
    require(
        log_term.is_finite() && log_term > 0.5,
        format!("log term must exceed 0.5, got {log_term}"),
    )?;
    Ok(lattice_report(
        "square-lattice assembly time, asymptotic",
        p,
        t_a,
        2.0 * log_term - 1.0,
        None,
        BTreeMap::from([
            ("log_term".to_string(), log_term),
            ("p".to_string(), p),
            ("t_a".to_string(), t_a),
        ]),
    ))
}

/// Asymptotic cost of an `n_sites`-site hexagonal (degree-3) lattice. With
/// `L = ln(3 n_sites / (2 epsilon))`:
/// time `= t_a [(1/p)^(log2(4/p-3)+1) + (1/p) log2((4/p)(1.5 L - 1)) + 1]`,
/// attempts `= (2/p)^(2+log2(4/p-3)) n_sites (1.5 L - 1) + (3 n_sites / (2p)) L`.
pub fn hex_cost(n_sites: u64, epsilon: f64, p: f64, t_a: f64) -> Result<CostReport> {
    check_asymptotic_probability(p)?;
    check_time_unit(t_a)?;
    require(n_sites >= 2, format!("a lattice needs at least 2 sites, got {n_sites}"))?;
    require(
        epsilon > 0.0 && epsilon < 1.0,
        format!("failure budget must lie in (0, 1), got {epsilon}"),
    )?;
    let nf = n_sites as f64;
    let l = (3.0 * nf / (2.0 * epsilon)).ln();
    let a1 = (2.0 / p).powf(2.0 + (4.0 / p - 3.0).log2()) * nf * (1.5 * l - 1.0);
    let a2 = 3.0 * nf / (2.0 * p) * l;
    Ok(lattice_report(
        "hexagonal-lattice assembly, asymptotic",
        p,
        t_a,
        1.5 * l - 1.0,
        Some((a1, a2)),
        BTreeMap::from([
            ("n_sites".to_string(), nf),
            ("epsilon".to_string(), epsilon),
            ("p".to_string(), p),
            ("t_a".to_string(), t_a),
            ("log_term".to_string(), l),
        ]),
    ))
}

/// Time law of the sequential-merging baseline at the same `log_term`: the
/// two chain terms plus `log_term / p` merge windows instead of one.
pub fn prior_scheme_time(log_term: f64, p: f64, t_a: f64) -> Result<CostReport> {
    check_asymptotic_probability(p)?;
    check_time_unit(t_a)?;
    require(
        log_term.is_finite() && log_term > 0.5,
        format!("log term must exceed 0.5, got {log_term}"),
    )?;
    let t1 = lattice_leading_time(p, t_a);
    let t2 = t_a / p * (4.0 / p * (2.0 * log_term - 1.0)).log2();
    let t3 = t_a * log_term / p;
    Ok(CostReport {
        formula: "sequential-merging baseline time, asymptotic".to_string(),
        asymptotic: true,
        time: t1 + t2 + t3,
        time_terms: vec![t1, t2, t3],
        attempts: None,
        attempt_terms: Vec::new(),
        exact_time: None,
        exact_attempts: None,
        inputs: BTreeMap::from([
            ("log_term".to_string(), log_term),
            ("p".to_string(), p),
            ("t_a".to_string(), t_a),
        ]),
        warning: high_p_warning(p),
    })
}

/// Axis specification for the scheme-comparison tables.
#[derive(Debug, Clone, Copy)]
pub enum SweepSpec {
    /// Vary the log term at fixed `p`.
    LogRange {
        p: f64,
        l_min: f64,
        l_max: f64,
        l_step: f64,
    },
    /// Vary `p` at a fixed log term.
    PRange {
        log_term: f64,
        p_min: f64,
        p_max: f64,
        p_step: f64,
    },
}

/// One comparison row: `t1` is the parallel-assembly time, `t2` the
/// sequential baseline, `term1..term3` the additive parts of `t1`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub x: f64,
    pub t1: f64,
    pub t2: f64,
    pub ratio: f64,
    pub term1: f64,
    pub term2: f64,
    pub term3: f64,
}

fn grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>> {
    require(
        min.is_finite() && max.is_finite() && step.is_finite() && step > 0.0 && min <= max,
        format!("invalid sweep axis: min {min}, max {max}, step {step}"),
    )?;
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    require(count <= 100_000, "sweep axis has too many points")?;
    Ok((0..count).map(|i| min + i as f64 * step).collect())
}

/// Evaluate the parallel-assembly and sequential-baseline time laws over a
/// one-dimensional parameter grid. Log terms must lie in `[5, 50]` and `p`
/// in `(0, 0.5]`, the regime both laws are meaningful in.
pub fn comparison_table(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let check_l = |l: f64| {
        require(
            (5.0..=50.0).contains(&l),
            format!("log term must lie in [5, 50], got {l}"),
        )
    };
    let check_p = |p: f64| {
        require(
            p > 0.0 && p <= 0.5,
            format!("comparison sweeps cover p in (0, 0.5], got {p}"),
        )
    };
    let points: Vec<(f64, f64, f64)> = match *spec {
        SweepSpec::LogRange { p, l_min, l_max, l_step } => {
            check_p(p)?;
            check_l(l_min)?;
            check_l(l_max)?;
            grid(l_min, l_max, l_step)?
                .into_iter()
                .map(|l| (l, l, p))
                .collect()
        }
        SweepSpec::PRange { log_term, p_min, p_max, p_step } => {
            check_l(log_term)?;
            check_p(p_min)?;
            check_p(p_max)?;
            grid(p_min, p_max, p_step)?
                .into_iter()
                .map(|p| (p, log_term, p))
                .collect()
        }
    };
    points
        .into_iter()
        .map(|(x, l, p)| {
            let ours = lattice_time_from_log(l, p, 1.0)?;
            let baseline = prior_scheme_time(l, p, 1.0)?;
            Ok(SweepRow {
                x,
                t1: ours.time,
                t2: baseline.time,
                ratio: ours.time / baseline.time,
                term1: ours.time_terms[0],
                term2: ours.time_terms[1],
                term3: ours.time_terms[2],
            })
        })
        .collect()
}
