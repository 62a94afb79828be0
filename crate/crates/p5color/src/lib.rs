//! Exact k-coloring and restricted k-list-coloring of P5-free graphs.
//!
//! For a fixed number of colors k, deciding whether a P5-free graph admits a
//! proper k-coloring is polynomial. This crate implements the
//! instance-branching algorithm behind that fact: color a dominating clique
//! or dominating path, partition the rest into fixed sets by their
//! witness-neighborhood signature, remove the dependencies between every pair
//! of fixed sets by pivot branching and component removal, then recurse into
//! each fixed set with a strictly smaller color universe.
//!
//! The solver either returns a verified coloring, reports UNSAT, or rejects
//! the input with an induced-P5 certificate when its structural guarantees
//! fail (a guarantee failure proves the input was not P5-free).
//!
//! Entry points:
//! - [`Graph::parse_dimacs`] / [`Graph::from_edges`] to build graphs,
//! - [`Instance::new_uniform`] / [`Instance::with_lists`] to pose a problem,
//! - [`engine::Solver::solve`] to run it,
//! - [`oracle`] for brute-force ground truth and seeded P5-free generators,
//! - [`accept`] for the self-check suites behind `p5color accept`,
//! - [`cli`] for the command-line front end.

#![forbid(unsafe_code)]

pub mod accept;
pub mod cli;
pub mod dominating;
pub mod engine;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod p5;

pub use dominating::{find_clique_exceeding, find_dominating_witness, DominatingWitness};
pub use engine::{verify_coloring, Answer, SolveError, Solver, Stats};
pub use graph::{Graph, GraphError, SharedGraph, VertexSet};
pub use instance::{Color, ColorSet, FixedSetKey, Infeasible, Instance, InstanceError};
pub use p5::{find_induced_p5, find_induced_p5_in, verify_certificate, P5Certificate};
