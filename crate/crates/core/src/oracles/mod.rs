//! Exponential-time ground-truth solvers, gated to small instances. These are
//! deliberately plain exhaustive searches so that a bug here is unlikely to
//! correlate with a bug in the clever solvers they validate.
//!
//! Witness feasibility checks live in [`checks`], in a separate file from both
//! the oracles and the solvers, and touch only basic graph accessors.

pub mod checks;
pub mod exact;
pub mod recognition;

use crate::error::{Error, Result};

/// Size limits for the exhaustive searches. Overridable through the
/// `GAPGRAPH_GUARD` environment variable as `vertices,intervals,permutation`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleGuard {
    pub max_vertices: usize,
    pub max_intervals: usize,
    pub max_permutation_base: usize,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard {
            max_vertices: 12,
            max_intervals: 14,
            max_permutation_base: 8,
        }
    }
}

impl OracleGuard {
    pub fn from_env() -> Self {
        match std::env::var("GAPGRAPH_GUARD") {
            Ok(spec) => Self::parse(&spec).unwrap_or_default(),
            Err(_) => Self::default(),
        }
    }

    fn parse(spec: &str) -> Option<Self> {
        let parts: Vec<usize> = spec
            .split(',')
            .map(|t| t.trim().parse().ok())
            .collect::<Option<_>>()?;
        (parts.len() == 3).then(|| OracleGuard {
            max_vertices: parts[0],
            max_intervals: parts[1],
            max_permutation_base: parts[2],
        })
    }

    pub fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            return Err(Error::Guard(format!(
                "{n} vertices exceeds the oracle limit of {}",
                self.max_vertices
            )));
        }
        Ok(())
    }

    pub fn check_intervals(&self, t: usize) -> Result<()> {
        if t > self.max_intervals {
            return Err(Error::Guard(format!(
                "{t} intervals exceeds the oracle limit of {}",
                self.max_intervals
            )));
        }
        Ok(())
    }

    pub fn check_permutation_base(&self, b: usize) -> Result<()> {
        if b > self.max_permutation_base {
            return Err(Error::Guard(format!(
                "{b} items exceeds the oracle permutation limit of {}",
                self.max_permutation_base
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_parses_env_format() {
        assert_eq!(
            OracleGuard::parse("10, 12, 7"),
            Some(OracleGuard {
                max_vertices: 10,
                max_intervals: 12,
                max_permutation_base: 7
            })
        );
        assert_eq!(OracleGuard::parse("10,12"), None);
        assert_eq!(OracleGuard::parse("x"), None);
    }

    #[test]
    fn guard_trips() {
        let g = OracleGuard::default();
        assert!(g.check_vertices(12).is_ok());
        assert!(g.check_vertices(13).is_err());
    }
}
