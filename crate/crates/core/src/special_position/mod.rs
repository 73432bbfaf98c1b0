//! Deciding special position, decomposing SP sequences, and the span bounds.
//!
//! A sequence of (k-1)-planes Λ_1..Λ_d of P^n is SP(n-k) when every
//! (n-k)-plane meeting all but one Λ_j also meets Λ_j. Plane indices are
//! 0-based throughout.

mod bounds;
mod brute;
mod certificate;
mod config;
mod decompose;
mod incidence;
mod tuple;

pub(crate) use bounds::check_partition;
pub use bounds::{span_bound_report, verify_partition_inequality, PartitionInequality, SpanBoundReport};
pub use brute::sp_bruteforce;
pub use certificate::{Method, SpCertificate, Verdict, Witness};
pub use config::Configuration;
pub use decompose::{decompose, decompose_in_table, decompose_with, PartitionReport, DEFAULT_MAX_PLANES};
pub use incidence::IncidenceTable;
pub use tuple::{extend_avoiding, in_randomized_regime, sp_tuple_witness, TupleMode};

use crate::error::{Error, Result};
use crate::grassmannian::DEFAULT_BUDGET;

pub const DEFAULT_TRIALS: u64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpTesterChoice {
    BruteForce,
    TupleExhaustive,
    TupleRandomized { seed: u64, trials: u64 },
    /// Witness search first, then an exact method when one fits the budget.
    Auto { seed: u64, trials: u64 },
}

impl Default for SpTesterChoice {
    fn default() -> Self {
        SpTesterChoice::Auto { seed: 0, trials: DEFAULT_TRIALS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpTester {
    pub choice: SpTesterChoice,
    pub budget: u128,
}

impl Default for SpTester {
    fn default() -> Self {
        SpTester { choice: SpTesterChoice::default(), budget: DEFAULT_BUDGET }
    }
}

impl SpTester {
    pub fn new(choice: SpTesterChoice, budget: u128) -> Self {
        SpTester { choice, budget }
    }

    pub fn check(&self, c: &Configuration) -> Result<SpCertificate> {
        check_sp(c, self.choice, self.budget)
    }
}

/// Decides SP(n-k) with the chosen tester.
///
/// `Auto` over GF(q): a short randomized witness search when the regime
/// allows it, then the exhaustive tuple search, then brute force if the
/// tuple search runs out of budget. Over Q only the randomized test exists,
/// so `Auto` returns its (probabilistic) verdict or refuses outside the
/// regime.
pub fn check_sp(c: &Configuration, choice: SpTesterChoice, budget: u128) -> Result<SpCertificate> {
    match choice {
        SpTesterChoice::BruteForce => sp_bruteforce(c, budget),
        SpTesterChoice::TupleExhaustive => sp_tuple_witness(c, TupleMode::Exhaustive, budget),
        SpTesterChoice::TupleRandomized { seed, trials } => {
            sp_tuple_witness(c, TupleMode::Randomized { seed, trials }, budget)
        }
        SpTesterChoice::Auto { seed, trials } => {
            let regime = in_randomized_regime(c);
            let quick = if regime {
                match sp_tuple_witness(c, TupleMode::Randomized { seed, trials }, budget) {
                    Ok(cert) if !cert.is_sp() => return Ok(cert),
                    Ok(cert) => Some(cert),
                    Err(Error::ExtensionFailed(_)) => None,
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            if !c.field().is_prime_field() {
                return quick.ok_or(Error::ValidityRegimeViolated { d: c.d(), n: c.n(), k: c.k() });
            }
            match sp_tuple_witness(c, TupleMode::Exhaustive, budget) {
                Ok(cert) => Ok(cert),
                Err(Error::BudgetExceeded { .. } | Error::ExtensionFailed(_)) => sp_bruteforce(c, budget),
                Err(e) => Err(e),
            }
        }
    }
}

#[cfg(test)]
mod tests;
