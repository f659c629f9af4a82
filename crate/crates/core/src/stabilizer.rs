//! Binary-symplectic stabilizer tableau: the independent oracle that checks
//! the graph-level measurement rewrite rules against actual quantum
//! mechanics on small registers.
//!
//! A Pauli operator on up to [`MAX_QUBITS`] qubits is stored as
//! `i^phase * X^x * Z^z` with bitmask exponents. A pure stabilizer state is a
//! full-rank list of commuting Hermitian generators. Measuring a single-qubit
//! Pauli updates the generator list exactly (including phases), and
//! [`StabilizerTableau::extract_graph`] recovers the unique graph equivalent
//! to the state under a deterministic choice of local basis changes.
//!
//! The oracle deliberately shares no code with the rewrite rules in
//! [`crate::graph`]: rules act on adjacency sets, the oracle on symplectic
//! bit matrices, and agreement between the two is established only through
//! [`verify_measurement_rule`] / [`verify_sweep`].

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Basis, Graph, VertexId, XRuleVariant};

/// Hard cap on tableau width: bitmasks are `u32` and exhaustive checks stay
/// cheap well below this.
pub const MAX_QUBITS: usize = 24;

/// Hard cap on local-complementation orbit enumeration.
pub const MAX_ORBIT_VERTICES: usize = 8;

/// Measurement outcome of a +/-1-valued Pauli observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

/// Single-qubit Clifford gates used to undo measurement byproducts.
///
/// Named by their action under conjugation:
/// - `SqrtZ` (phase gate S): X -> Y, Z -> Z
/// - `SqrtZDag` (S-dagger): X -> -Y, Z -> Z
/// - `SqrtYPlus` (+pi/2 rotation about Y): X -> Z, Z -> -X
/// - `SqrtYMinus` (-pi/2 rotation about Y): X -> -Z, Z -> X
/// - `PauliZ`: X -> -X, Z -> Z
/// - `Hadamard`: X <-> Z
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalOp {
    SqrtZ,
    SqrtZDag,
    SqrtYPlus,
    SqrtYMinus,
    PauliZ,
    Hadamard,
}

impl Outcome {
    pub fn sign(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }
}

/// Pauli operator `i^phase * X^x * Z^z` (bit q of `x`/`z` is the X/Z
/// exponent on qubit q; `phase` is an exponent of `i`, modulo 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PauliString {
    pub x: u32,
    pub z: u32,
    pub phase: u8,
}

impl PauliString {
    pub const IDENTITY: PauliString = PauliString { x: 0, z: 0, phase: 0 };

    /// Single-qubit X, Y, or Z; Y is `i * X * Z`.
    pub fn single(qubit: usize, basis: Basis) -> PauliString {
        assert!(qubit < MAX_QUBITS, "qubit index out of tableau range");
        let bit = 1u32 << qubit;
        match basis {
            Basis::X => PauliString { x: bit, z: 0, phase: 0 },
            Basis::Y => PauliString { x: bit, z: bit, phase: 1 },
            Basis::Z => PauliString { x: 0, z: bit, phase: 0 },
        }
    }

    /// Exact operator product. Moving `rhs`'s X block through `self`'s Z
    /// block contributes `(-1)^(|z & x'|)`.
    pub fn mul(self, rhs: PauliString) -> PauliString {
        let swaps = (self.z & rhs.x).count_ones();
        PauliString {
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: ((self.phase as u32 + rhs.phase as u32 + 2 * swaps) % 4) as u8,
        }
    }

    pub fn commutes_with(self, rhs: PauliString) -> bool {
        ((self.x & rhs.z).count_ones() + (self.z & rhs.x).count_ones()) % 2 == 0
    }

    /// Hermitian iff the phase exponent and the number of Y factors have the
    /// same parity.
    pub fn is_hermitian(self) -> bool {
        (self.phase as u32 + (self.x & self.z).count_ones()) % 2 == 0
    }

    pub fn weight(self) -> u32 {
        (self.x | self.z).count_ones()
    }

    fn sym_vec(self) -> u64 {
        (self.x as u64) | ((self.z as u64) << 32)
    }
}

/// Full-rank stabilizer description of a pure state. `ids[q]` is the graph
/// vertex carried by qubit column q.
#[derive(Debug, Clone)]
pub struct StabilizerTableau {
    ids: Vec<VertexId>,
    gens: Vec<PauliString>,
}

/// Result of [`StabilizerTableau::extract_graph`]: the adjacency structure
/// plus a note recording which deterministic local basis changes were applied.
#[derive(Debug, Clone)]
pub struct ExtractedGraph {
    pub graph: Graph,
    pub local_ops_note: String,
}

impl StabilizerTableau {
    /// Tableau of the graph state of the active part of `g`: one generator
    /// `X_v * prod_(w ~ v) Z_w` per active vertex.
    pub fn from_graph(g: &Graph) -> Result<StabilizerTableau> {
        let ids: Vec<VertexId> = g.active_vertices().collect();
        let n = ids.len();
        if n > MAX_QUBITS {
            return Err(Error::Domain(format!(
                "stabilizer oracle supports at most {MAX_QUBITS} qubits, got {n}"
            )));
        }
        let mut gens = Vec::with_capacity(n);
        for (q, &v) in ids.iter().enumerate() {
            let mut z = 0u32;
            for &w in g.neighbors(v)? {
                let col = ids.binary_search(&w).expect("neighbor is active");
                z |= 1 << col;
            }
            gens.push(PauliString { x: 1 << q, z, phase: 0 });
        }
        Ok(StabilizerTableau { ids, gens })
    }

    pub fn num_qubits(&self) -> usize {
        self.gens.len()
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.gens
    }

    fn qubit_index(&self, v: VertexId) -> Result<usize> {
        self.ids
            .binary_search(&v)
            .map_err(|_| Error::Precondition(format!("vertex {v} is not a qubit of this tableau")))
    }

    /// True iff `p` (sign included) is an element of the stabilizer group.
    pub fn stabilizes(&self, p: PauliString) -> bool {
        self.express(p.x, p.z).is_some_and(|acc| acc.phase == p.phase)
    }

    /// Group element with symplectic part `(x, z)` as an exact product of
    /// generators, or `None` if `(x, z)` lies outside the row space.
    fn express(&self, x: u32, z: u32) -> Option<PauliString> {
        let mut basis: Vec<Option<(u64, PauliString)>> = vec![None; 64];
        for &g in &self.gens {
            let mut v = g.sym_vec();
            let mut pa = g;
            while v != 0 {
                let lead = 63 - v.leading_zeros() as usize;
                match basis[lead] {
                    Some((bv, bp)) => {
                        v ^= bv;
                        pa = pa.mul(bp);
                    }
                    None => {
                        basis[lead] = Some((v, pa));
                        break;
                    }
                }
            }
        }
        let mut v = PauliString { x, z, phase: 0 }.sym_vec();
        let mut acc = PauliString::IDENTITY;
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            let (bv, bp) = basis[lead]?;
            v ^= bv;
            acc = acc.mul(bp);
        }
        Some(acc)
    }

    /// Measure the single-qubit Pauli `basis` on vertex `v`, taking the +1
    /// outcome whenever the outcome is random. A determined outcome is
    /// returned as-is: forcing cannot override it.
    pub fn measure_force_plus(&mut self, v: VertexId, basis: Basis) -> Result<Outcome> {
        self.measure_with(v, basis, || Outcome::Plus)
    }

    /// Measure with a fair coin for random outcomes; determined outcomes
    /// consume no randomness.
    pub fn measure_random<R: Rng + ?Sized>(
        &mut self,
        v: VertexId,
        basis: Basis,
        rng: &mut R,
    ) -> Result<Outcome> {
        self.measure_with(v, basis, || {
            if rng.gen::<bool>() {
                Outcome::Plus
            } else {
                Outcome::Minus
            }
        })
    }

    fn measure_with(
        &mut self,
        v: VertexId,
        basis: Basis,
        choose: impl FnOnce() -> Outcome,
    ) -> Result<Outcome> {
        let q = self.qubit_index(v)?;
        let p = PauliString::single(q, basis);
        match self.gens.iter().position(|g| !g.commutes_with(p)) {
            Some(pivot) => {
                // Random outcome: fold the pivot into every other
                // anticommuting generator, then replace it with the signed
                // measurement operator.
                let gp = self.gens[pivot];
                for r in 0..self.gens.len() {
                    if r != pivot && !self.gens[r].commutes_with(p) {
                        self.gens[r] = self.gens[r].mul(gp);
                    }
                }
                let outcome = choose();
                self.gens[pivot] = match outcome {
                    Outcome::Plus => p,
                    Outcome::Minus => PauliString {
                        phase: (p.phase + 2) % 4,
                        ..p
                    },
                };
                Ok(outcome)
            }
            None => self.determined_outcome(p),
        }
    }

    /// Conjugate every generator by a single-qubit Clifford on vertex `v`.
    ///
    /// Used to undo measurement byproducts so a tableau can track a graph
    /// rewrite frame exactly. Phase bookkeeping follows the storage
    /// convention `i^phase * X^x Z^z` per qubit.
    pub fn apply_local(&mut self, v: VertexId, op: LocalOp) -> Result<()> {
        let q = self.qubit_index(v)?;
        let bit = 1u32 << q;
        for g in &mut self.gens {
            let x = g.x >> q & 1;
            let z = g.z >> q & 1;
            let (nx, nz, dphase) = match op {
                // X -> Y: X^x Z^z gains i^x and z toggles when x is set.
                LocalOp::SqrtZ => (x, z ^ x, x),
                // X -> -Y: as above with i^{3x}.
                LocalOp::SqrtZDag => (x, z ^ x, 3 * x),
                // X -> Z, Z -> -X: swap, sign (-1)^{z + xz}.
                LocalOp::SqrtYPlus => (z, x, 2 * z + 2 * (x & z)),
                // X -> -Z, Z -> X: swap, sign (-1)^{x + xz}.
                LocalOp::SqrtYMinus => (z, x, 2 * x + 2 * (x & z)),
                // X -> -X.
                LocalOp::PauliZ => (x, z, 2 * x),
                // X <-> Z, sign (-1)^{xz}.
                LocalOp::Hadamard => (z, x, 2 * (x & z)),
            };
            g.x = (g.x & !bit) | (nx << q);
            g.z = (g.z & !bit) | (nz << q);
            g.phase = (g.phase + dphase as u8) % 4;
        }
        Ok(())
    }

    /// Measure `basis` on `v` taking the +1 branch, then undo the
    /// measurement byproduct so the tableau lands exactly on the graph
    /// rewrite's output frame. Neighborhoods are read from `frame`, the
    /// graph describing the state *before* this measurement; for X, the
    /// special neighbor defaults to the smallest, matching the rewrite.
    ///
    /// Byproduct inverses for the +1 outcome: none for Z; S-dagger on every
    /// neighbor for Y; a -pi/2 Y-rotation on the special neighbor plus
    /// Pauli Z on the neighbors of the target not adjacent to the special
    /// (and not the special itself) for X.
    pub fn measure_corrected(
        &mut self,
        frame: &Graph,
        v: VertexId,
        basis: Basis,
        special: Option<VertexId>,
    ) -> Result<()> {
        let neighbors = frame.neighbors(v)?.clone();
        if self.measure_force_plus(v, basis)? == Outcome::Minus {
            return Err(Error::Precondition(format!(
                "measurement of {basis:?} on vertex {v} came out determined -1; \
                 the tracked frame is inconsistent with the state"
            )));
        }
        match basis {
            Basis::Z => {}
            Basis::Y => {
                for &b in &neighbors {
                    self.apply_local(b, LocalOp::SqrtZDag)?;
                }
            }
            Basis::X => {
                let Some(&first) = neighbors.first() else {
                    return Ok(());
                };
                let k0 = special.unwrap_or(first);
                if !neighbors.contains(&k0) {
                    return Err(Error::Precondition(format!(
                        "special neighbor {k0} is not adjacent to vertex {v}"
                    )));
                }
                let nk0 = frame.neighbors(k0)?.clone();
                self.apply_local(k0, LocalOp::SqrtYMinus)?;
                for &b in neighbors.iter().filter(|&&b| b != k0 && !nk0.contains(&b)) {
                    self.apply_local(b, LocalOp::PauliZ)?;
                }
            }
        }
        Ok(())
    }

    /// Outcome of measuring an operator that commutes with every generator:
    /// either `p` or `-p` is in the group, the state is untouched, and the
    /// outcome is forced by the accumulated phase.
    fn determined_outcome(&self, p: PauliString) -> Result<Outcome> {
        let acc = self.express(p.x, p.z).ok_or_else(|| {
            Error::Precondition(
                "measurement operator commutes with the group but is not generated by it".into(),
            )
        })?;
        match (4 + p.phase - acc.phase) % 4 {
            0 => Ok(Outcome::Plus),
            2 => Ok(Outcome::Minus),
            _ => Err(Error::Precondition(
                "non-Hermitian phase relation in a determined outcome".into(),
            )),
        }
    }

    /// Recover the graph equivalent to this state under deterministic local
    /// basis changes.
    ///
    /// Three phases: (A) Gaussian elimination on the X block to find a
    /// maximal independent set of X columns, (B) a Hadamard on every other
    /// column (a column is Hadamarded only when it cannot serve as a pivot,
    /// taken in ascending order), (C) Gauss-Jordan to bring the X block to
    /// the identity. The Z block is then a symmetric adjacency matrix whose
    /// diagonal is cleared by phase-gate moves. Generator signs are tracked
    /// exactly throughout but deliberately dropped from the result, as the
    /// note records.
    pub fn extract_graph(&self) -> Result<ExtractedGraph> {
        let n = self.gens.len();
        let mut rows = self.gens.clone();

        // Phase A: rank profile of the X block.
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for c in 0..n {
            let Some(r) = (rank..n).find(|&r| rows[r].x >> c & 1 == 1) else {
                continue;
            };
            rows.swap(rank, r);
            let pr = rows[rank];
            for (rr, row) in rows.iter_mut().enumerate() {
                if rr != rank && row.x >> c & 1 == 1 {
                    *row = row.mul(pr);
                }
            }
            pivot_cols.push(c);
            rank += 1;
        }

        // Phase B: Hadamard the non-pivot columns (X <-> Z, Y -> -Y).
        let h_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        for &c in &h_cols {
            for row in rows.iter_mut() {
                let xb = row.x >> c & 1;
                let zb = row.z >> c & 1;
                if xb & zb == 1 {
                    row.phase = (row.phase + 2) % 4;
                }
                row.x = (row.x & !(1 << c)) | (zb << c);
                row.z = (row.z & !(1 << c)) | (xb << c);
            }
        }

        // Phase C: Gauss-Jordan to X = identity.
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| rows[r].x >> c & 1 == 1) else {
                return Err(Error::Precondition(
                    "X block is rank-deficient after the basis change; \
                     the tableau does not describe a pure stabilizer state"
                        .into(),
                ));
            };
            rows.swap(c, r);
            let pr = rows[c];
            for (rr, row) in rows.iter_mut().enumerate() {
                if rr != c && row.x >> c & 1 == 1 {
                    *row = row.mul(pr);
                }
            }
        }

        // The Z block must now be symmetric: with X = I, commutation of rows
        // i and j forces z_i[j] = z_j[i].
        for i in 0..n {
            for j in (i + 1)..n {
                if (rows[i].z >> j & 1) != (rows[j].z >> i & 1) {
                    return Err(Error::Precondition(
                        "extracted adjacency is not symmetric; generators do not commute".into(),
                    ));
                }
            }
        }

        // Clear the diagonal with phase-gate moves; with X = I only row i
        // carries an X component in column i, so only row i changes.
        let mut s_cols = Vec::new();
        for i in 0..n {
            if rows[i].z >> i & 1 == 1 {
                rows[i].z &= !(1u32 << i);
                rows[i].phase = (rows[i].phase + 3) % 4;
                s_cols.push(i);
            }
        }

        let mut graph = Graph::with_vertices(self.ids.iter().copied())?;
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i].z >> j & 1 == 1 {
                    graph.toggle_edge(self.ids[i], self.ids[j])?;
                }
            }
        }
        let to_ids = |cols: &[usize]| cols.iter().map(|&c| self.ids[c]).collect::<Vec<_>>();
        // An empty note certifies the state is exactly the graph state.
        let local_ops_note = if h_cols.is_empty() && s_cols.is_empty() {
            String::new()
        } else {
            format!(
                "H on qubits {:?}; S on qubits {:?}; phases ignored",
                to_ids(&h_cols),
                to_ids(&s_cols)
            )
        };
        Ok(ExtractedGraph {
            graph,
            local_ops_note,
        })
    }
}

/// Canonical structure-only key: active vertices and sorted edge list,
/// ignoring labels and the measured set.
pub fn structural_key(g: &Graph) -> String {
    let verts: Vec<VertexId> = g.active_vertices().collect();
    serde_json::to_string(&(verts, g.edges())).expect("key serialization cannot fail")
}

/// Dense adjacency over at most 8 vertices; `rows[i]` is the neighbor
/// bitmask of the i-th vertex of a fixed ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct SmallGraph {
    n: u8,
    rows: [u8; 8],
}

impl SmallGraph {
    fn from_graph_on(g: &Graph, order: &[VertexId]) -> SmallGraph {
        debug_assert!(order.len() <= MAX_ORBIT_VERTICES);
        let mut rows = [0u8; 8];
        for (i, &v) in order.iter().enumerate() {
            for (j, &w) in order.iter().enumerate() {
                if i != j && g.has_edge(v, w) {
                    rows[i] |= 1 << j;
                }
            }
        }
        SmallGraph {
            n: order.len() as u8,
            rows,
        }
    }

    fn key(self) -> u64 {
        u64::from_le_bytes(self.rows)
    }

    fn local_complement(mut self, a: usize) -> SmallGraph {
        let nbrs = self.rows[a];
        let mut rest = nbrs;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.rows[i] ^= nbrs & !(1 << i);
        }
        self
    }
}

fn small_to_graph(key: u64, order: &[VertexId]) -> Graph {
    let rows = key.to_le_bytes();
    let mut g = Graph::with_vertices(order.iter().copied()).expect("distinct vertex ids");
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            if rows[i] >> j & 1 == 1 {
                g.toggle_edge(order[i], order[j]).expect("active vertices");
            }
        }
    }
    g
}

/// Breadth-first closure of a graph under local complementation, as raw
/// adjacency keys.
fn orbit_keys(start: SmallGraph, max_size: Option<usize>) -> Result<HashSet<u64>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.key());
    queue.push_back(start);
    while let Some(g) = queue.pop_front() {
        for a in 0..g.n as usize {
            // Complementing at a vertex of degree 0 or 1 changes nothing.
            if g.rows[a].count_ones() < 2 {
                continue;
            }
            let h = g.local_complement(a);
            if seen.insert(h.key()) {
                if let Some(cap) = max_size {
                    if seen.len() > cap {
                        return Err(Error::Domain(format!(
                            "local-complementation orbit exceeded {cap} graphs"
                        )));
                    }
                }
                queue.push_back(h);
            }
        }
    }
    Ok(seen)
}

/// All graphs reachable from the active part of `g` by local
/// complementations, as structural keys. Two graph states are equivalent
/// under single-qubit Clifford operations exactly when their graphs share an
/// orbit.
pub fn lc_orbit(g: &Graph, max_size: Option<usize>) -> Result<BTreeSet<String>> {
    let order: Vec<VertexId> = g.active_vertices().collect();
    if order.len() > MAX_ORBIT_VERTICES {
        return Err(Error::Precondition(format!(
            "orbit enumeration supports at most {MAX_ORBIT_VERTICES} active vertices, got {}",
            order.len()
        )));
    }
    let keys = orbit_keys(SmallGraph::from_graph_on(g, &order), max_size)?;
    Ok(keys
        .into_iter()
        .map(|k| structural_key(&small_to_graph(k, &order)))
        .collect())
}

/// Outcome of checking one measurement rewrite against the oracle.
#[derive(Debug, Clone, Serialize)]
pub struct RuleCheck {
    pub matched: bool,
    pub rule_key: String,
    pub oracle_key: String,
}

/// Check one rewrite: apply the graph rule for (`basis`, `target`,
/// `special`) and, independently, measure the same Pauli on the tableau of
/// `g` and re-extract a graph. The two must agree on the surviving vertices
/// up to local complementation (single-qubit Clifford freedom).
pub fn verify_measurement_rule(
    g: &Graph,
    basis: Basis,
    target: VertexId,
    special: Option<VertexId>,
    variant: XRuleVariant,
) -> Result<RuleCheck> {
    let mut rule = g.clone();
    match basis {
        Basis::X => rule.measure_x_with_variant(target, special, variant)?,
        Basis::Y => rule.measure_y(target)?,
        Basis::Z => rule.measure_z(target)?,
    }

    let mut tab = StabilizerTableau::from_graph(g)?;
    tab.measure_force_plus(target, basis)?;
    let extracted = tab.extract_graph()?;

    let keep: BTreeSet<VertexId> = g.active_vertices().filter(|&v| v != target).collect();
    let oracle = extracted.graph.induced(&keep);
    let rule_restricted = rule.induced(&keep);
    let oracle_key = structural_key(&oracle);
    let rule_key = structural_key(&rule_restricted);
    let matched = lc_orbit(&rule_restricted, None)?.contains(&oracle_key);
    Ok(RuleCheck {
        matched,
        rule_key,
        oracle_key,
    })
}

/// One failing case of a verification sweep, with enough context to replay
/// it by hand.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub graph: serde_json::Value,
    pub basis: String,
    pub target: VertexId,
    pub special: Option<VertexId>,
    pub rule_key: String,
    pub oracle_key: String,
}

/// Aggregate result of [`verify_sweep`].
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub max_vertices: u32,
    pub rule_variant: String,
    pub outcome_sampling: String,
    pub seed: Option<u64>,
    /// Number of connected graphs per vertex count 1..=max_vertices.
    pub connected_graphs: Vec<u64>,
    pub graphs_checked: u64,
    pub cases_checked: u64,
    pub cases_passed: u64,
    pub cases_failed: u64,
    pub first_counterexample: Option<Counterexample>,
}

impl SweepReport {
    pub fn all_passed(&self) -> bool {
        self.cases_failed == 0
    }
}

/// Sort key identifying one sweep case; the reported counterexample is the
/// minimum over all failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct CaseKey {
    n: u8,
    mask: u32,
    target: u8,
    basis_rank: u8,
    special: u8, // 0 = none, else 1-based vertex id
}

fn basis_of_rank(rank: u8) -> Basis {
    match rank {
        0 => Basis::X,
        1 => Basis::Y,
        _ => Basis::Z,
    }
}

fn basis_rank(basis: Basis) -> u8 {
    match basis {
        Basis::X => 0,
        Basis::Y => 1,
        Basis::Z => 2,
    }
}

fn pair_list(n: u32) -> Vec<(u8, u8)> {
    let mut pairs = Vec::new();
    for a in 0..n as u8 {
        for b in (a + 1)..n as u8 {
            pairs.push((a, b));
        }
    }
    pairs
}

fn rows_from_mask(mask: u32, pairs: &[(u8, u8)]) -> [u8; 8] {
    let mut rows = [0u8; 8];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            rows[a as usize] |= 1 << b;
            rows[b as usize] |= 1 << a;
        }
    }
    rows
}

fn is_connected(n: u8, rows: &[u8; 8]) -> bool {
    if n == 0 {
        return false;
    }
    let mut visited = 1u8;
    let mut frontier = 1u8;
    while frontier != 0 {
        let mut next = 0u8;
        let mut rest = frontier;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= rows[v];
        }
        frontier = next & !visited;
        visited |= next;
    }
    visited == ((1u16 << n) - 1) as u8
}

/// Graph with vertex ids `1..=n` from an adjacency bitmask over the pair
/// list of `n`.
fn graph_from_rows(n: u32, rows: &[u8; 8]) -> Graph {
    let mut g = Graph::with_vertices(1..=n).expect("distinct ids");
    for i in 0..n as usize {
        for j in (i + 1)..n as usize {
            if rows[i] >> j & 1 == 1 {
                g.toggle_edge((i + 1) as VertexId, (j + 1) as VertexId)
                    .expect("active vertices");
            }
        }
    }
    g
}

fn case_rng(master_seed: u64, key: CaseKey) -> ChaCha8Rng {
    let packed = (key.mask as u64)
        | ((key.target as u64) << 21)
        | ((basis_rank(basis_of_rank(key.basis_rank)) as u64) << 24)
        | ((key.special as u64) << 26)
        | ((key.n as u64) << 30);
    ChaCha8Rng::seed_from_u64(master_seed ^ packed.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

type OrbitCache = HashMap<(u8, u64), HashSet<u64>>;

/// One rewrite check in index space, with a per-thread orbit cache keyed by
/// the rule-side adjacency.
fn check_case(
    g: &Graph,
    keep: &[VertexId],
    basis: Basis,
    target: VertexId,
    special: Option<VertexId>,
    variant: XRuleVariant,
    seed: Option<u64>,
    case: CaseKey,
    cache: &mut OrbitCache,
) -> Result<bool> {
    let mut rule = g.clone();
    match basis {
        Basis::X => rule.measure_x_with_variant(target, special, variant)?,
        Basis::Y => rule.measure_y(target)?,
        Basis::Z => rule.measure_z(target)?,
    }
    let mut tab = StabilizerTableau::from_graph(g)?;
    match seed {
        None => tab.measure_force_plus(target, basis)?,
        Some(s) => {
            let mut rng = case_rng(s, case);
            tab.measure_random(target, basis, &mut rng)?
        }
    };
    let extracted = tab.extract_graph()?;

    let rule_small = SmallGraph::from_graph_on(&rule, keep);
    let oracle_small = SmallGraph::from_graph_on(&extracted.graph, keep);
    let cache_key = (rule_small.n, rule_small.key());
    if let Some(orbit) = cache.get(&cache_key) {
        return Ok(orbit.contains(&oracle_small.key()));
    }
    let orbit = orbit_keys(rule_small, None)?;
    let matched = orbit.contains(&oracle_small.key());
    cache.insert(cache_key, orbit);
    Ok(matched)
}

#[derive(Debug, Default, Clone, Copy)]
struct MaskStats {
    graphs: u64,
    checked: u64,
    passed: u64,
    first_failure: Option<CaseKey>,
}

impl MaskStats {
    fn merge(self, other: MaskStats) -> MaskStats {
        MaskStats {
            graphs: self.graphs + other.graphs,
            checked: self.checked + other.checked,
            passed: self.passed + other.passed,
            first_failure: match (self.first_failure, other.first_failure) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

fn process_mask(
    n: u32,
    mask: u32,
    pairs: &[(u8, u8)],
    seed: Option<u64>,
    variant: XRuleVariant,
    cache: &mut OrbitCache,
) -> Result<MaskStats> {
    let rows = rows_from_mask(mask, pairs);
    if !is_connected(n as u8, &rows) {
        return Ok(MaskStats::default());
    }
    let g = graph_from_rows(n, &rows);
    let mut stats = MaskStats {
        graphs: 1,
        ..MaskStats::default()
    };
    for t in 0..n as u8 {
        let target = (t + 1) as VertexId;
        let keep: Vec<VertexId> = (1..=n).filter(|&v| v != target).collect();
        for basis in [Basis::X, Basis::Y, Basis::Z] {
            let specials: Vec<Option<VertexId>> = if basis == Basis::X {
                let nbrs = g.neighbors(target)?;
                if nbrs.is_empty() {
                    vec![None]
                } else {
                    nbrs.iter().map(|&j| Some(j)).collect()
                }
            } else {
                vec![None]
            };
            for special in specials {
                let case = CaseKey {
                    n: n as u8,
                    mask,
                    target: t,
                    basis_rank: basis_rank(basis),
                    special: special.map_or(0, |j| j as u8),
                };
                stats.checked += 1;
                if check_case(&g, &keep, basis, target, special, variant, seed, case, cache)? {
                    stats.passed += 1;
                } else {
                    stats.first_failure = Some(match stats.first_failure {
                        Some(k) => k.min(case),
                        None => case,
                    });
                }
            }
        }
    }
    Ok(stats)
}

/// Exhaustively check every measurement rewrite on every connected graph
/// with up to `max_vertices` vertices (at most 7): every target vertex, all
/// three bases, and every admissible special neighbor for X.
///
/// With `seed = None` random outcomes are forced to +1; with a seed, each
/// case draws its outcome from its own deterministic stream. Verdicts are
/// outcome-independent (outcomes differ by single-qubit corrections, which
/// stay inside the local-complementation orbit), so both modes must agree.
pub fn verify_sweep(
    max_vertices: u32,
    seed: Option<u64>,
    variant: XRuleVariant,
) -> Result<SweepReport> {
    if !(1..=7).contains(&max_vertices) {
        return Err(Error::Domain(format!(
            "verification sweep covers 1..=7 vertices, got {max_vertices}"
        )));
    }
    let mut census = Vec::new();
    let mut total = MaskStats::default();
    for n in 1..=max_vertices {
        let pairs = pair_list(n);
        let level = (0u32..(1u32 << pairs.len()))
            .into_par_iter()
            .map_init(
                OrbitCache::new,
                |cache, mask| process_mask(n, mask, &pairs, seed, variant, cache),
            )
            .try_reduce(MaskStats::default, |a, b| Ok(a.merge(b)))?;
        census.push(level.graphs);
        // `first_failure` keys start with n, so the running minimum is the
        // globally first counterexample.
        total = total.merge(level);
    }

    let first_counterexample = match total.first_failure {
        None => None,
        Some(case) => {
            let pairs = pair_list(case.n as u32);
            let g = graph_from_rows(case.n as u32, &rows_from_mask(case.mask, &pairs));
            let basis = basis_of_rank(case.basis_rank);
            let target = (case.target + 1) as VertexId;
            let special = (case.special != 0).then_some(case.special as VertexId);
            let check = verify_measurement_rule(&g, basis, target, special, variant)?;
            Some(Counterexample {
                graph: serde_json::from_str(&g.to_json())
                    .map_err(|e| Error::Schema(format!("graph re-serialization failed: {e}")))?,
                basis: basis.as_str().to_string(),
                target,
                special,
                rule_key: check.rule_key,
                oracle_key: check.oracle_key,
            })
        }
    };

    Ok(SweepReport {
        max_vertices,
        rule_variant: match variant {
            XRuleVariant::CompletePairSets => "complete-pair-sets".to_string(),
            XRuleVariant::ExistingEdges => "existing-edges".to_string(),
        },
        outcome_sampling: if seed.is_some() {
            "seeded-random".to_string()
        } else {
            "forced-plus".to_string()
        },
        seed,
        connected_graphs: census,
        graphs_checked: total.graphs,
        cases_checked: total.checked,
        cases_passed: total.passed,
        cases_failed: total.checked - total.passed,
        first_counterexample,
    })
}

/// Number of connected simple graphs on `n` labeled vertices, by direct
/// enumeration (supported for `n <= 7`).
pub fn connected_census(n: u32) -> Result<u64> {
    if !(1..=7).contains(&n) {
        return Err(Error::Domain(format!(
            "census enumeration covers 1..=7 vertices, got {n}"
        )));
    }
    let pairs = pair_list(n);
    Ok((0u32..(1u32 << pairs.len()))
        .into_par_iter()
        .filter(|&mask| is_connected(n as u8, &rows_from_mask(mask, &pairs)))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_armed_chain;

    fn path_graph(ids: std::ops::RangeInclusive<VertexId>) -> Graph {
        let start = *ids.start();
        let end = *ids.end();
        let edges: Vec<_> = (start..end).map(|v| (v, v + 1)).collect();
        Graph::from_edges(ids, &edges).unwrap()
    }

    #[test]
    fn pauli_products_and_phases() {
        let x = PauliString::single(0, Basis::X);
        let y = PauliString::single(0, Basis::Y);
        let z = PauliString::single(0, Basis::Z);
        // X*Z = -iY is anti-Hermitian; squares are the identity.
        assert!(!x.mul(z).is_hermitian());
        assert_eq!(y.mul(y), PauliString::IDENTITY);
        assert_eq!(x.mul(x), PauliString::IDENTITY);
        // Z*X = iY, X*Z = -iY: opposite phases.
        assert_eq!(z.mul(x).phase, (x.mul(z).phase + 2) % 4);
        assert!(x.is_hermitian() && y.is_hermitian() && z.is_hermitian());
        assert!(!x.commutes_with(z));
        assert!(!x.commutes_with(y));
        assert!(x.commutes_with(PauliString::single(1, Basis::Z)));
        assert_eq!(y, PauliString { x: 1, z: 1, phase: 1 });
    }

    #[test]
    fn local_clifford_conjugation_algebra() {
        // A single isolated vertex is stabilized by X alone; every
        // conjugation below acts on that generator.
        let single = Graph::with_vertices(0..=0).unwrap();
        let x = PauliString::single(0, Basis::X);
        let y = PauliString::single(0, Basis::Y);
        let z = PauliString::single(0, Basis::Z);
        let minus = |p: PauliString| PauliString { phase: (p.phase + 2) % 4, ..p };

        let run = |ops: &[LocalOp]| {
            let mut tab = StabilizerTableau::from_graph(&single).unwrap();
            for &op in ops {
                tab.apply_local(0, op).unwrap();
            }
            tab.generators()[0]
        };

        // S cycles X -> Y -> -X -> -Y -> X.
        assert_eq!(run(&[LocalOp::SqrtZ]), y);
        assert_eq!(run(&[LocalOp::SqrtZ; 2]), minus(x));
        assert_eq!(run(&[LocalOp::SqrtZ; 3]), minus(y));
        assert_eq!(run(&[LocalOp::SqrtZ; 4]), x);
        // S-dagger inverts S; the pair is the identity.
        assert_eq!(run(&[LocalOp::SqrtZDag]), minus(y));
        assert_eq!(run(&[LocalOp::SqrtZ, LocalOp::SqrtZDag]), x);
        // Y-rotations: X -> Z (plus) and X -> -Z (minus); inverses cancel.
        assert_eq!(run(&[LocalOp::SqrtYPlus]), z);
        assert_eq!(run(&[LocalOp::SqrtYMinus]), minus(z));
        assert_eq!(run(&[LocalOp::SqrtYPlus, LocalOp::SqrtYMinus]), x);
        // Pauli Z flips X; Hadamard exchanges X and Z.
        assert_eq!(run(&[LocalOp::PauliZ]), minus(x));
        assert_eq!(run(&[LocalOp::Hadamard]), z);
        assert_eq!(run(&[LocalOp::Hadamard; 2]), x);
        // Z is fixed by S and flipped in sign by the +pi/2 Y-rotation.
        assert_eq!(run(&[LocalOp::Hadamard, LocalOp::SqrtZ]), z);
        assert_eq!(run(&[LocalOp::Hadamard, LocalOp::SqrtYPlus]), minus(x));
        assert_eq!(run(&[LocalOp::Hadamard, LocalOp::SqrtYMinus]), x);
        // Y is preserved by both Y-rotations and flipped by Hadamard.
        assert_eq!(run(&[LocalOp::SqrtZ, LocalOp::SqrtYPlus]), y);
        assert_eq!(run(&[LocalOp::SqrtZ, LocalOp::SqrtYMinus]), y);
        assert_eq!(run(&[LocalOp::SqrtZ, LocalOp::Hadamard]), minus(y));

        // Conjugation preserves the group structure on entangled states.
        let pair = Graph::from_edges(0..=1, &[(0, 1)]).unwrap();
        let mut tab = StabilizerTableau::from_graph(&pair).unwrap();
        tab.apply_local(0, LocalOp::Hadamard).unwrap();
        let gens: Vec<_> = tab.generators().to_vec();
        assert!(gens.iter().all(|g| g.is_hermitian()));
        assert!(gens[0].commutes_with(gens[1]));
        // H on one leg of an edge graph yields the ZZ/XX stabilizer pair.
        let zz = PauliString::single(0, Basis::Z).mul(PauliString::single(1, Basis::Z));
        let xx = PauliString::single(0, Basis::X).mul(PauliString::single(1, Basis::X));
        assert!(tab.stabilizes(zz));
        assert!(tab.stabilizes(xx));
    }

    #[test]
    fn corrected_measurements_land_on_the_rewrite_frame() {
        // Measure X at the end of a 3-path with the middle as special:
        // the rewrite yields an edge between the far pair, and the
        // corrected tableau must extract exactly that graph.
        let g = path_graph(1..=3);
        let mut tab = StabilizerTableau::from_graph(&g).unwrap();
        tab.measure_corrected(&g, 1, Basis::X, Some(2)).unwrap();
        let mut rule = g.clone();
        rule.measure_x(1, Some(2)).unwrap();
        let ex = tab.extract_graph().unwrap();
        let actives: std::collections::BTreeSet<_> =
            rule.active_vertices().collect();
        assert_eq!(
            ex.graph.induced(&actives).canonical_form(),
            rule.induced(&actives).canonical_form()
        );
    }

    #[test]
    fn graph_generators_commute_and_stabilize() {
        let g = build_armed_chain(2).unwrap();
        let tab = StabilizerTableau::from_graph(&g).unwrap();
        for a in tab.generators() {
            assert!(a.is_hermitian());
            assert!(tab.stabilizes(*a));
            for b in tab.generators() {
                assert!(a.commutes_with(*b));
            }
        }
        // Products of generators are stabilized, their negations are not.
        let prod = tab.generators()[0].mul(tab.generators()[3]);
        assert!(tab.stabilizes(prod));
        assert!(!tab.stabilizes(PauliString {
            phase: (prod.phase + 2) % 4,
            ..prod
        }));
    }

    #[test]
    fn bell_pair_x_measurement_pins_partner() {
        // Graph state on edge 1-2; X on 1 with outcome +1 leaves qubit 2 in
        // the Z eigenstate, so Z_2 joins the stabilizer group.
        let g = Graph::from_edges(1..=2, &[(1, 2)]).unwrap();
        let mut tab = StabilizerTableau::from_graph(&g).unwrap();
        let outcome = tab.measure_force_plus(1, Basis::X).unwrap();
        assert_eq!(outcome, Outcome::Plus);
        let z2 = PauliString::single(1, Basis::Z);
        assert!(tab.stabilizes(z2));
        // Re-measuring the same observable is now determined.
        assert_eq!(tab.measure_force_plus(1, Basis::X).unwrap(), Outcome::Plus);
    }

    #[test]
    fn forced_plus_cannot_override_determined_minus() {
        let g = Graph::from_edges(1..=2, &[(1, 2)]).unwrap();
        let mut tab = StabilizerTableau::from_graph(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // Draw random outcomes until a Minus shows up, then re-measure.
        loop {
            let mut t = tab.clone();
            if t.measure_random(1, Basis::X, &mut rng).unwrap() == Outcome::Minus {
                tab = t;
                break;
            }
        }
        assert_eq!(tab.measure_force_plus(1, Basis::X).unwrap(), Outcome::Minus);
    }

    #[test]
    fn extraction_round_trips_graph_tableaus_exactly() {
        for g in [
            path_graph(1..=5),
            build_armed_chain(3).unwrap(),
            Graph::from_edges(1..=4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap(),
        ] {
            let tab = StabilizerTableau::from_graph(&g).unwrap();
            let ex = tab.extract_graph().unwrap();
            assert_eq!(structural_key(&ex.graph), structural_key(&g));
            assert!(ex.local_ops_note.is_empty(), "no corrections for a graph state");
        }
    }

    #[test]
    fn extraction_applies_basis_changes() {
        // A single |0> qubit: stabilizer Z_1 needs one Hadamard column.
        let tab = StabilizerTableau {
            ids: vec![1],
            gens: vec![PauliString::single(0, Basis::Z)],
        };
        let ex = tab.extract_graph().unwrap();
        assert_eq!(ex.graph.active_vertices().collect::<Vec<_>>(), vec![1]);
        assert!(ex.graph.edges().is_empty());
        assert_eq!(ex.local_ops_note, "H on qubits [1]; S on qubits []; phases ignored");

        // A single |+i> qubit: stabilizer Y_1 needs a phase-gate move.
        let tab = StabilizerTableau {
            ids: vec![7],
            gens: vec![PauliString::single(0, Basis::Y)],
        };
        let ex = tab.extract_graph().unwrap();
        assert_eq!(ex.local_ops_note, "H on qubits []; S on qubits [7]; phases ignored");
    }

    #[test]
    fn measured_qubit_comes_out_isolated() {
        let g = path_graph(1..=4);
        let mut tab = StabilizerTableau::from_graph(&g).unwrap();
        tab.measure_force_plus(2, Basis::Y).unwrap();
        let ex = tab.extract_graph().unwrap();
        assert_eq!(ex.graph.degree(2).unwrap(), 0);
    }

    #[test]
    fn orbit_of_a_path_contains_its_triangle() {
        let p = path_graph(1..=3);
        let orbit = lc_orbit(&p, None).unwrap();
        let triangle = Graph::from_edges(1..=3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(orbit.contains(&structural_key(&p)));
        assert!(orbit.contains(&structural_key(&triangle)));
        // A single edge is alone in its orbit.
        let e = Graph::from_edges(1..=2, &[(1, 2)]).unwrap();
        assert_eq!(lc_orbit(&e, None).unwrap().len(), 1);
        // Orbit size caps are enforced.
        assert!(matches!(
            lc_orbit(&path_graph(1..=5), Some(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn x_rule_on_path_matches_oracle_and_control_variant_fails() {
        let g = path_graph(1..=3);
        let ok = verify_measurement_rule(&g, Basis::X, 2, Some(1), XRuleVariant::CompletePairSets)
            .unwrap();
        assert!(ok.matched, "rule {} vs oracle {}", ok.rule_key, ok.oracle_key);
        let bad = verify_measurement_rule(&g, Basis::X, 2, Some(1), XRuleVariant::ExistingEdges)
            .unwrap();
        assert!(!bad.matched);
    }

    #[test]
    fn sweep_small_sizes_pass_and_census_matches() {
        let report = verify_sweep(4, None, XRuleVariant::CompletePairSets).unwrap();
        assert_eq!(report.connected_graphs, vec![1, 1, 4, 38]);
        assert_eq!(report.cases_failed, 0, "{:?}", report.first_counterexample);
        assert!(report.cases_checked > 0);
        assert!(report.first_counterexample.is_none());
    }

    #[test]
    fn sweep_flags_the_edge_filtered_variant() {
        let report = verify_sweep(3, None, XRuleVariant::ExistingEdges).unwrap();
        assert!(report.cases_failed > 0);
        let ce = report.first_counterexample.expect("counterexample");
        assert_eq!(ce.basis, "x");
    }

    #[test]
    fn seeded_and_forced_sweeps_agree() {
        let forced = verify_sweep(4, None, XRuleVariant::CompletePairSets).unwrap();
        let seeded = verify_sweep(4, Some(99), XRuleVariant::CompletePairSets).unwrap();
        assert_eq!(forced.cases_checked, seeded.cases_checked);
        assert_eq!(forced.cases_failed, seeded.cases_failed);
    }
}
