//! Robust maximum flow against an interdictor that steals flow path by path.
//!
//! The flow player routes a path flow; afterwards an interdictor with budget
//! `B_I` removes flow from individual paths, paying the path's bottleneck
//! interdiction cost per unit. This crate computes optimal robust flows, the
//! network-design variant where the flow player buys interdiction costs,
//! reduction-based instance generators and brute-force reference solvers.
//!
//! Every algorithm is generic over [`Scalar`]; use [`Rational`] for exact
//! results and `f64` for speed.

pub mod design;
pub mod error;
pub mod ext;
pub mod flow;
pub mod format;
pub mod graph;
pub mod interdiction;
pub mod lp;
pub mod oracle;
pub mod paths;
pub mod reductions;
pub mod scalar;

pub use error::{Error, Result};
pub use ext::Ext;
pub use graph::{Arc, ArcId, Budgets, Network, NodeId, Path, PathFlow, Terminal};
pub use scalar::Scalar;

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type ExactNetwork = Network<Rational>;
pub type FloatNetwork = Network<f64>;
pub type ExactPathFlow = PathFlow<Rational>;
pub type FloatPathFlow = PathFlow<f64>;

pub type ExactRfSolution = flow::RfSolution<Rational>;
pub type FloatRfSolution = flow::RfSolution<f64>;
pub type ExactDesignSolution = design::DesignSolution<Rational>;
pub type FloatDesignSolution = design::DesignSolution<f64>;
