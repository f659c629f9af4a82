//! Simulation and analysis toolkit for growing cluster states — linear
//! chains, star units, and 2-D lattices — from probabilistic entangling
//! (CPF) gates that succeed with probability `p` per attempt.
//!
//! The crate has four layers:
//!
//! * [`graph`] — graph states as plain graphs, with the single-qubit
//!   measurement rewrite rules (X, Y, Z), armed-chain and star builders,
//!   and bridge contraction. Pure graph combinatorics, no linear algebra.
//! * [`stabilizer`] — an independent binary-symplectic stabilizer tableau:
//!   simulated measurement, graph extraction up to local H/S corrections,
//!   local-complementation orbits, and exhaustive cross-checks of the graph
//!   rewrite rules against the tableau on every small connected graph.
//! * [`analytics`] — closed-form expectations: doubling recursions and
//!   their closed forms, splice yield, chain/lattice time and attempt
//!   budgets, arm sizing, and the comparison tables behind the headline
//!   scaling plots.
//! * [`protocol`] — Monte Carlo simulation of the build protocols with
//!   per-trial deterministic random streams, attempt/time accounting, and
//!   optional full-topology tracking, plus ensemble statistics.
//!
//! Everything is deterministic given a master seed, independent of thread
//! count.

pub mod analytics;
pub mod error;
pub mod graph;
pub mod protocol;
pub mod stabilizer;

pub use error::{Error, Result};
pub use graph::{Basis, Graph, VertexId, VertexRole, XRuleVariant};
pub use protocol::{
    Boundary, ChainState, LayoutKind, LayoutSpec, OutcomePolicy, ProtocolParams, SimTask,
    SimTrace, Stage, Stats,
};
pub use stabilizer::{StabilizerTableau, SweepReport};
