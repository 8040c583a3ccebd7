//! Solvers whose exponential dependence is confined to the surplus-interval
//! parameter. Each returns a [`SolverReport`] carrying the optimum, a witness
//! that an independent predicate can re-check, and the number of explored
//! guesses (the quantity the scaling tests measure).

mod clique_cover;
mod coloring;
mod domination;
mod fvs;
mod subsets;
mod transversal;

pub use clique_cover::solve_clique_cover;
pub use coloring::{coloring_hardness_gadget, solve_p_coloring};
pub use domination::solve_dominating_set;
pub use fvs::solve_fvs;
pub use subsets::{solve_clique, solve_independent_set};
pub use transversal::{solve_transversal, to_nvalue_instance, NValueInstance};

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;

use crate::graph::{VertexId, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    IndependentSet,
    Clique,
    CliqueCover,
    FeedbackVertexSet,
    DominatingSet,
    Transversal,
    Coloring,
}

impl Problem {
    pub fn tag(&self) -> &'static str {
        match self {
            Problem::IndependentSet => "is",
            Problem::Clique => "clique",
            Problem::CliqueCover => "cc",
            Problem::FeedbackVertexSet => "fvs",
            Problem::DominatingSet => "ds",
            Problem::Transversal => "transversal",
            Problem::Coloring => "coloring",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Problem> {
        Some(match tag {
            "is" => Problem::IndependentSet,
            "clique" => Problem::Clique,
            "cc" => Problem::CliqueCover,
            "fvs" => Problem::FeedbackVertexSet,
            "ds" => Problem::DominatingSet,
            "transversal" => Problem::Transversal,
            "coloring" => Problem::Coloring,
            _ => return None,
        })
    }

    /// Maximization problems compare `optimum >= target`, the rest `<=`.
    pub fn is_maximization(&self) -> bool {
        matches!(self, Problem::IndependentSet | Problem::Clique)
    }
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertices(VertexSet),
    Points(Vec<i64>),
    Partition(Vec<VertexSet>),
    Coloring(BTreeMap<VertexId, u32>),
    None,
}

impl Witness {
    /// Single-line rendering for the CLI.
    pub fn display_tokens(&self) -> Vec<String> {
        match self {
            Witness::Vertices(s) => s.iter().map(|v| v.to_string()).collect(),
            Witness::Points(ps) => ps.iter().map(|p| p.to_string()).collect(),
            Witness::Partition(classes) => classes
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join("+")
                })
                .collect(),
            Witness::Coloring(map) => map.iter().map(|(v, c)| format!("{v}={c}")).collect(),
            Witness::None => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverReport {
    pub problem: Problem,
    pub optimum: i64,
    pub witness: Witness,
    /// Outer guesses evaluated; the unit each solver counts is documented at
    /// its definition.
    pub explored: u64,
    pub elapsed_seconds: f64,
    pub target: Option<i64>,
    /// Whether the optimum meets the target (`>=` for maximization problems,
    /// `<=` otherwise; the coloring decision directly).
    pub meets_target: Option<bool>,
}

impl SolverReport {
    pub(crate) fn new(
        problem: Problem,
        optimum: i64,
        witness: Witness,
        explored: u64,
        elapsed: Duration,
        target: Option<i64>,
    ) -> Self {
        let meets_target = target.map(|t| {
            if problem.is_maximization() {
                optimum >= t
            } else {
                optimum <= t
            }
        });
        SolverReport {
            problem,
            optimum,
            witness,
            explored,
            elapsed_seconds: elapsed.as_secs_f64(),
            target,
            meets_target,
        }
    }

    pub fn witness_vertices(&self) -> Option<&VertexSet> {
        match &self.witness {
            Witness::Vertices(s) => Some(s),
            _ => None,
        }
    }
}
