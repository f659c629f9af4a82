//! Labeled simple undirected graphs with the single-qubit Pauli measurement
//! rewrite rules and the composite constructions built from them.
//!
//! A graph stands for the topology of a cluster (graph) state: vertices are
//! qubits, edges record entanglement created by successful CPF (CZ) gates.
//! Measuring a qubit removes its vertex and rewrites edges according to the
//! basis:
//!
//! * Z deletes all edges incident to the vertex.
//! * Y complements the subgraph induced by the neighborhood, then deletes.
//! * X toggles three complete pair sets derived from the neighborhoods of the
//!   target and a designated special neighbor, then deletes.
//!
//! All rewrites are verified against a stabilizer oracle in `stabilizer`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Vertex identifier, unique within one graph.
pub type VertexId = u32;

/// Optional role tag used by the construction protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexRole {
    MainChain,
    ArmInner,
    ArmOuter,
    Center,
}

impl VertexRole {
    pub fn as_str(self) -> &'static str {
        match self {
            VertexRole::MainChain => "main-chain",
            VertexRole::ArmInner => "arm-inner",
            VertexRole::ArmOuter => "arm-outer",
            VertexRole::Center => "center",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "main-chain" => Ok(VertexRole::MainChain),
            "arm-inner" => Ok(VertexRole::ArmInner),
            "arm-outer" => Ok(VertexRole::ArmOuter),
            "center" => Ok(VertexRole::Center),
            other => Err(Error::Schema(format!("unknown vertex role `{other}`"))),
        }
    }
}

impl fmt::Display for VertexRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Measurement basis of a single-qubit Pauli measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::X => "x",
            Basis::Y => "y",
            Basis::Z => "z",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Basis::X),
            "y" | "Y" => Ok(Basis::Y),
            "z" | "Z" => Ok(Basis::Z),
            other => Err(Error::Schema(format!("unknown basis `{other}`"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One measurement instruction. `special` is meaningful only for basis X.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    pub basis: Basis,
    pub target: VertexId,
    pub special: Option<VertexId>,
}

/// Ordered list of measurements: each target at most once, and a special
/// neighbor may only accompany an X measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementSchedule {
    steps: Vec<Measurement>,
}

impl MeasurementSchedule {
    pub fn new(steps: Vec<Measurement>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for m in &steps {
            if !seen.insert(m.target) {
                return Err(Error::Precondition(format!(
                    "vertex {} is measured more than once in the schedule",
                    m.target
                )));
            }
            if m.special.is_some() && m.basis != Basis::X {
                return Err(Error::Precondition(format!(
                    "special neighbor given for a {} measurement on vertex {}; only x takes one",
                    m.basis, m.target
                )));
            }
        }
        Ok(MeasurementSchedule { steps })
    }

    pub fn steps(&self) -> &[Measurement] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// How the X rule interprets its three pair sets. The complete-pair-set
/// reading is the one validated by the stabilizer oracle; the existing-edges
/// variant can only delete edges and is kept as a negative control for the
/// verification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XRuleVariant {
    #[default]
    CompletePairSets,
    ExistingEdges,
}

impl XRuleVariant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "standard" | "complete-pair-sets" => Ok(XRuleVariant::CompletePairSets),
            "existing-edges" => Ok(XRuleVariant::ExistingEdges),
            other => Err(Error::Schema(format!("unknown x-rule variant `{other}`"))),
        }
    }
}

/// Labeled simple undirected graph with a separate set of measured
/// (consumed) vertices. Edges exist only between active vertices; a measured
/// vertex can never become active again.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    measured: BTreeSet<VertexId>,
    labels: BTreeMap<VertexId, VertexRole>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Graph with the given isolated active vertices and no edges.
    pub fn with_vertices(ids: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut g = Graph::new();
        for v in ids {
            g.add_vertex(v)?;
        }
        Ok(g)
    }

    /// Graph from explicit vertex and edge lists.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        let mut g = Graph::with_vertices(vertices)?;
        for &(a, b) in edges {
            if g.has_edge(a, b) {
                return Err(Error::Schema(format!("duplicate edge [{a},{b}]")));
            }
            g.toggle_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.measured.contains(&v) {
            return Err(Error::Precondition(format!(
                "vertex {v} was already measured and cannot be re-added"
            )));
        }
        if self.adj.insert(v, BTreeSet::new()).is_some() {
            return Err(Error::Precondition(format!("vertex {v} already present")));
        }
        Ok(())
    }

    pub fn is_active(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn is_measured(&self, v: VertexId) -> bool {
        self.measured.contains(&v)
    }

    pub fn active_count(&self) -> usize {
        self.adj.len()
    }

    pub fn active_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn measured_vertices(&self) -> &BTreeSet<VertexId> {
        &self.measured
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adj
            .get(&v)
            .ok_or_else(|| self.missing_vertex_error(v))
    }

    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Edges with the smaller id first, sorted ascending.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&v, nbrs) in &self.adj {
            for &w in nbrs.range(v + 1..) {
                out.push((v, w));
            }
        }
        out
    }

    pub fn label(&self, v: VertexId) -> Option<VertexRole> {
        self.labels.get(&v).copied()
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, VertexRole> {
        &self.labels
    }

    pub fn set_label(&mut self, v: VertexId, role: VertexRole) -> Result<()> {
        if !self.is_active(v) && !self.is_measured(v) {
            return Err(self.missing_vertex_error(v));
        }
        self.labels.insert(v, role);
        Ok(())
    }

    /// Copy with the same active vertices, edges, and labels but an empty
    /// measured set. Used when a constructed state becomes a fresh resource.
    pub fn without_measured(&self) -> Graph {
        Graph {
            adj: self.adj.clone(),
            measured: BTreeSet::new(),
            labels: self
                .labels
                .iter()
                .filter(|(v, _)| self.adj.contains_key(v))
                .map(|(&v, &r)| (v, r))
                .collect(),
        }
    }

    /// Induced subgraph on `keep` (active vertices only, labels retained,
    /// measured set empty).
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut adj = BTreeMap::new();
        for (&v, nbrs) in &self.adj {
            if keep.contains(&v) {
                adj.insert(v, nbrs.intersection(keep).copied().collect());
            }
        }
        let labels = self
            .labels
            .iter()
            .filter(|(v, _)| adj.contains_key(v))
            .map(|(&v, &r)| (v, r))
            .collect();
        Graph {
            adj,
            measured: BTreeSet::new(),
            labels,
        }
    }

    /// Copy with every vertex id shifted by `offset`.
    pub fn relabeled(&self, offset: VertexId) -> Graph {
        Graph {
            adj: self
                .adj
                .iter()
                .map(|(&v, nbrs)| (v + offset, nbrs.iter().map(|&w| w + offset).collect()))
                .collect(),
            measured: self.measured.iter().map(|&v| v + offset).collect(),
            labels: self.labels.iter().map(|(&v, &r)| (v + offset, r)).collect(),
        }
    }

    /// Disjoint union; vertex sets must not overlap.
    pub fn merge_disjoint(&mut self, other: &Graph) -> Result<()> {
        for v in other.adj.keys().chain(other.measured.iter()) {
            if self.is_active(*v) || self.is_measured(*v) {
                return Err(Error::Precondition(format!(
                    "vertex {v} present in both graphs of a disjoint union"
                )));
            }
        }
        for (&v, nbrs) in &other.adj {
            self.adj.insert(v, nbrs.clone());
        }
        self.measured.extend(other.measured.iter().copied());
        for (&v, &r) in &other.labels {
            self.labels.insert(v, r);
        }
        Ok(())
    }

    fn missing_vertex_error(&self, v: VertexId) -> Error {
        if self.measured.contains(&v) {
            Error::Precondition(format!("vertex {v} was already measured"))
        } else {
            Error::Precondition(format!("vertex {v} is not in the graph"))
        }
    }

    /// Toggle the edge between two distinct active vertices: the graph-level
    /// effect of one successful CPF gate.
    pub fn toggle_edge(&mut self, a: VertexId, b: VertexId) -> Result<()> {
        if a == b {
            return Err(Error::Precondition(format!(
                "self-loop on vertex {a} is not allowed"
            )));
        }
        if !self.is_active(a) {
            return Err(self.missing_vertex_error(a));
        }
        if !self.is_active(b) {
            return Err(self.missing_vertex_error(b));
        }
        let present = self.has_edge(a, b);
        if present {
            self.adj.get_mut(&a).unwrap().remove(&b);
            self.adj.get_mut(&b).unwrap().remove(&a);
        } else {
            self.adj.get_mut(&a).unwrap().insert(b);
            self.adj.get_mut(&b).unwrap().insert(a);
        }
        Ok(())
    }

    /// Complement the subgraph induced by the neighborhood of `v`.
    pub fn local_complement(&mut self, v: VertexId) -> Result<()> {
        let nbrs: Vec<VertexId> = self.neighbors(v)?.iter().copied().collect();
        for (idx, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[idx + 1..] {
                self.toggle_edge(a, b)?;
            }
        }
        Ok(())
    }

    fn retire(&mut self, v: VertexId) {
        let nbrs = self.adj.remove(&v).expect("retire on active vertex");
        for w in nbrs {
            self.adj.get_mut(&w).unwrap().remove(&v);
        }
        self.measured.insert(v);
    }

    /// Z rule: delete all edges incident to `v`, then retire it.
    pub fn measure_z(&mut self, v: VertexId) -> Result<()> {
        if !self.is_active(v) {
            return Err(self.missing_vertex_error(v));
        }
        self.retire(v);
        Ok(())
    }

    /// Y rule: local complementation at `v`, then the Z rule. Implemented as
    /// exactly that composition, so the definitional identity is structural.
    pub fn measure_y(&mut self, v: VertexId) -> Result<()> {
        self.local_complement(v)?;
        self.measure_z(v)
    }

    /// X rule with the complete-pair-set interpretation. `special` must be a
    /// neighbor of `v` when the neighborhood is nonempty; it defaults to the
    /// smallest neighbor id. An isolated vertex degenerates to the Z rule.
    pub fn measure_x(&mut self, v: VertexId, special: Option<VertexId>) -> Result<()> {
        self.measure_x_with_variant(v, special, XRuleVariant::CompletePairSets)
    }

    /// X rule with an explicit pair-set interpretation (see `XRuleVariant`).
    pub fn measure_x_with_variant(
        &mut self,
        v: VertexId,
        special: Option<VertexId>,
        variant: XRuleVariant,
    ) -> Result<()> {
        let ni: BTreeSet<VertexId> = self.neighbors(v)?.clone();
        if ni.is_empty() {
            if let Some(j) = special {
                return Err(Error::Precondition(format!(
                    "special neighbor {j} given, but vertex {v} has no neighbors \
                     (the x rule requires the special to be a neighbor)"
                )));
            }
            self.retire(v);
            return Ok(());
        }
        let j = special.unwrap_or_else(|| *ni.first().unwrap());
        if !ni.contains(&j) {
            return Err(Error::Precondition(format!(
                "special neighbor {j} is not adjacent to vertex {v} \
                 (the x rule requires the special to be a neighbor)"
            )));
        }
        let nj: BTreeSet<VertexId> = self.neighbors(j)?.clone();
        let inter: BTreeSet<VertexId> = ni.intersection(&nj).copied().collect();
        let ni_minus_j: BTreeSet<VertexId> = ni.iter().copied().filter(|&w| w != j).collect();
        let j_set: BTreeSet<VertexId> = [j].into_iter().collect();

        // Snapshot for the existing-edges negative control: pair sets are
        // filtered by edges present before any toggling.
        let before = match variant {
            XRuleVariant::CompletePairSets => None,
            XRuleVariant::ExistingEdges => Some(self.clone()),
        };
        let keep = |pair: &(VertexId, VertexId)| match &before {
            None => true,
            Some(g) => g.has_edge(pair.0, pair.1),
        };

        // The three pair sets are toggled in sequence; within one set each
        // unordered pair toggles exactly once.
        for pair in pairs_between(&nj, &ni).into_iter().filter(keep) {
            self.toggle_edge(pair.0, pair.1)?;
        }
        for pair in pairs_between(&inter, &inter).into_iter().filter(keep) {
            self.toggle_edge(pair.0, pair.1)?;
        }
        for pair in pairs_between(&j_set, &ni_minus_j).into_iter().filter(keep) {
            self.toggle_edge(pair.0, pair.1)?;
        }
        self.retire(v);
        Ok(())
    }

    /// Run a schedule in order, dispatching on each step's basis.
    pub fn apply_schedule(&mut self, schedule: &MeasurementSchedule) -> Result<()> {
        for m in schedule.steps() {
            match m.basis {
                Basis::X => self.measure_x(m.target, m.special)?,
                Basis::Y => {
                    self.measure_y(m.target)?;
                }
                Basis::Z => {
                    self.measure_z(m.target)?;
                }
            }
        }
        Ok(())
    }

    /// Deterministic canonical encoding: equal graphs (same vertices, edges,
    /// measured set, and labels) produce equal strings.
    pub fn canonical_form(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    /// Canonical JSON document, trailing newline included.
    pub fn to_json(&self) -> String {
        let mut s = self.canonical_form();
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let doc: GraphDoc = serde_json::from_str(text)
            .map_err(|e| Error::Schema(format!("graph JSON does not parse: {e}")))?;
        doc.try_into()
    }
}

/// Unordered pairs {a, b} with a in `left`, b in `right`, a != b, each pair
/// produced once, in ascending order.
fn pairs_between(left: &BTreeSet<VertexId>, right: &BTreeSet<VertexId>) -> Vec<(VertexId, VertexId)> {
    let mut out = BTreeSet::new();
    for &a in left {
        for &b in right {
            if a != b {
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out.into_iter().collect()
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Labels<'a>(&'a BTreeMap<VertexId, VertexRole>);
        impl Serialize for Labels<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                // Keys stream in numeric order; emission order is preserved.
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (v, role) in self.0 {
                    map.serialize_entry(&v.to_string(), role.as_str())?;
                }
                map.end()
            }
        }

        let mut s = serializer.serialize_struct("Graph", 4)?;
        s.serialize_field("vertices", &self.active_vertices().collect::<Vec<_>>())?;
        s.serialize_field(
            "edges",
            &self.edges().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        )?;
        s.serialize_field("measured", &self.measured)?;
        s.serialize_field("labels", &Labels(&self.labels))?;
        s.end()
    }
}

/// Raw JSON shape; validation happens in the `TryFrom` conversion.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    vertices: Vec<VertexId>,
    #[serde(default)]
    edges: Vec<[VertexId; 2]>,
    #[serde(default)]
    measured: Vec<VertexId>,
    #[serde(default)]
    labels: BTreeMap<String, String>,
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Graph> {
        let mut g = Graph::new();
        for v in &doc.vertices {
            if g.adj.insert(*v, BTreeSet::new()).is_some() {
                return Err(Error::Schema(format!("duplicate vertex {v}")));
            }
        }
        for m in &doc.measured {
            if g.adj.contains_key(m) {
                return Err(Error::Schema(format!(
                    "vertex {m} listed as both active and measured"
                )));
            }
            if !g.measured.insert(*m) {
                return Err(Error::Schema(format!("duplicate measured vertex {m}")));
            }
        }
        for [a, b] in &doc.edges {
            if a == b {
                return Err(Error::Schema(format!("self-loop on vertex {a}")));
            }
            if !g.is_active(*a) || !g.is_active(*b) {
                return Err(Error::Schema(format!(
                    "edge [{a},{b}] references a vertex that is not active"
                )));
            }
            if g.has_edge(*a, *b) {
                return Err(Error::Schema(format!("duplicate edge [{a},{b}]")));
            }
            g.adj.get_mut(a).unwrap().insert(*b);
            g.adj.get_mut(b).unwrap().insert(*a);
        }
        for (key, value) in &doc.labels {
            let v: VertexId = key
                .parse()
                .map_err(|_| Error::Schema(format!("label key `{key}` is not a vertex id")))?;
            if !g.is_active(v) && !g.is_measured(v) {
                return Err(Error::Schema(format!(
                    "label on vertex {v}, which is neither active nor measured"
                )));
            }
            g.labels.insert(v, VertexRole::parse(value)?);
        }
        Ok(g)
    }
}

/// Armed chain: main path `0 .. 2*n_l - 1`, with every even main vertex
/// carrying a two-qubit arm (inner `2*n_l + 2t`, outer `2*n_l + 2t + 1` for
/// the t-th armed vertex). Total `4*n_l` vertices, `4*n_l - 1` edges (a tree).
pub fn build_armed_chain(n_l: u64) -> Result<Graph> {
    if n_l == 0 {
        return Err(Error::Precondition(
            "an armed chain needs at least one arm (n_l >= 1)".into(),
        ));
    }
    let n_l = u32::try_from(n_l)
        .ok()
        .filter(|n| n.checked_mul(4).is_some())
        .ok_or_else(|| Error::Domain(format!("n_l = {n_l} is too large to lay out vertex ids")))?;
    let main = 2 * n_l;
    let mut g = Graph::with_vertices(0..4 * n_l)?;
    for v in 0..main - 1 {
        g.toggle_edge(v, v + 1)?;
    }
    for v in 0..main {
        g.set_label(v, VertexRole::MainChain)?;
    }
    for t in 0..n_l {
        let owner = 2 * t;
        let inner = main + 2 * t;
        let outer = inner + 1;
        g.toggle_edge(owner, inner)?;
        g.toggle_edge(inner, outer)?;
        g.set_label(inner, VertexRole::ArmInner)?;
        g.set_label(outer, VertexRole::ArmOuter)?;
    }
    Ok(g)
}

/// Measurement schedule that turns `build_armed_chain(n_l)` into a star.
///
/// Armless interior vertices are X-measured left to right, each with the
/// current hub as its special neighbor; every hub hand-off turns the previous
/// hub into a one-qubit arm. The hubs so produced and the terminal armless
/// vertex are then Z-measured away. An X measurement on the terminal armless
/// leaf would disconnect the state, which is why it is Z-measured instead.
pub fn star_reduction_schedule(n_l: u64) -> Result<MeasurementSchedule> {
    if n_l == 0 {
        return Err(Error::Precondition(
            "a star needs at least one arm (n_l >= 1)".into(),
        ));
    }
    let n_l = u32::try_from(n_l)
        .ok()
        .filter(|n| n.checked_mul(4).is_some())
        .ok_or_else(|| Error::Domain(format!("n_l = {n_l} is too large to lay out vertex ids")))?;
    let mut steps = Vec::new();
    for k in 1..n_l {
        steps.push(Measurement {
            basis: Basis::X,
            target: 2 * k - 1,
            special: Some(2 * k - 2),
        });
    }
    for k in 1..n_l {
        steps.push(Measurement {
            basis: Basis::Z,
            target: 2 * (k - 1),
            special: None,
        });
    }
    steps.push(Measurement {
        basis: Basis::Z,
        target: 2 * n_l - 1,
        special: None,
    });
    MeasurementSchedule::new(steps)
}

/// Reduce an armed chain to its star: one center (the last armed main-chain
/// vertex) with `n_l` two-qubit arms; `1 + 2*n_l` active vertices remain.
pub fn reduce_chain_to_star(g: &Graph) -> Result<Graph> {
    let mains = g
        .labels()
        .values()
        .filter(|r| **r == VertexRole::MainChain)
        .count() as u64;
    let n_l = mains / 2;
    if n_l == 0 || mains % 2 != 0 {
        return Err(Error::Precondition(
            "input lacks armed-chain labeling (no main-chain vertices)".into(),
        ));
    }
    let expected = build_armed_chain(n_l)?;
    if *g != expected {
        return Err(Error::Precondition(
            "input is not an armed chain as produced by build_armed_chain".into(),
        ));
    }
    let mut star = g.clone();
    star.apply_schedule(&star_reduction_schedule(n_l)?)?;
    let center = (2 * n_l - 2) as VertexId;
    star.set_label(center, VertexRole::Center)?;
    Ok(star)
}

/// Contract a two-arm bridge `c_i - a_i - b_i - b_j - a_j - c_j` into a
/// direct edge between the two centers by four Y measurements in order.
pub fn contract_bridge(g: &mut Graph, bridge: [VertexId; 4]) -> Result<()> {
    let [ai, bi, bj, aj] = bridge;
    let fail = |msg: String| Error::Precondition(msg);
    let distinct: BTreeSet<VertexId> = bridge.iter().copied().collect();
    if distinct.len() != 4 {
        return Err(fail(format!("bridge vertices {bridge:?} are not distinct")));
    }
    for &v in &bridge {
        if !g.is_active(v) {
            return Err(g.missing_vertex_error(v));
        }
    }
    for (a, b) in [(ai, bi), (bi, bj), (bj, aj)] {
        if !g.has_edge(a, b) {
            return Err(fail(format!(
                "bridge {bridge:?} is not a path: edge [{a},{b}] missing"
            )));
        }
    }
    let endpoint = |arm: VertexId, inner_nbr: VertexId| -> Result<VertexId> {
        let nbrs = g.neighbors(arm)?;
        if nbrs.len() != 2 {
            return Err(fail(format!(
                "bridge vertex {arm} must link exactly one center and the bridge (degree 2)"
            )));
        }
        let c = *nbrs.iter().find(|&&w| w != inner_nbr).unwrap();
        if distinct.contains(&c) {
            return Err(fail(format!(
                "bridge vertex {arm} does not reach a center outside the bridge"
            )));
        }
        Ok(c)
    };
    let ci = endpoint(ai, bi)?;
    let cj = endpoint(aj, bj)?;
    if ci == cj {
        return Err(fail(format!(
            "bridge {bridge:?} loops back to a single center {ci}"
        )));
    }
    for (mid, (left, right)) in [(bi, (ai, bj)), (bj, (bi, aj))] {
        let nbrs = g.neighbors(mid)?;
        if nbrs.len() != 2 || !nbrs.contains(&left) || !nbrs.contains(&right) {
            return Err(fail(format!(
                "bridge vertex {mid} must link exactly [{left},{right}]"
            )));
        }
    }
    for v in bridge {
        g.measure_y(v)?;
    }
    debug_assert!(g.has_edge(ci, cj), "bridge contraction must connect centers");
    Ok(())
}
