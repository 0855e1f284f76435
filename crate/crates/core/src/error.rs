use thiserror::Error;

use crate::graph::{ArcId, NodeId, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown arc {0}")]
    UnknownArc(ArcId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("flow conservation violated at node {0}")]
    Conservation(NodeId),
    #[error("invalid arc flow: {0}")]
    InvalidArcFlow(String),
    #[error("invalid breakpoint arc {0}: interdiction cost must be positive and finite")]
    InvalidBreakpoint(ArcId),
    #[error("no path from node {from} to node {to}")]
    Disconnected { from: NodeId, to: NodeId },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex exceeded {0} iterations")]
    IterationLimit(usize),
    #[error("no protection budget")]
    NoProtectionBudget,
    #[error("a flow player budget is required")]
    MissingFlowBudget,
    #[error("budget violated: {0}")]
    BudgetViolated(String),
    #[error("capacity violated on arc {arc}")]
    CapacityViolated { arc: ArcId },
    #[error("negative value: {0}")]
    Negative(String),
    #[error("plan steals on arc {arc} which is not on the attacked path")]
    StealOffPath { arc: ArcId },
    #[error("more than {cap} paths; instance too large for enumeration")]
    PathCapExceeded { cap: usize },
    #[error("invalid instance: {}", join(.0))]
    InvalidInstance(Vec<Violation>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("pricing oracle failed: {0}")]
    Pricing(String),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
