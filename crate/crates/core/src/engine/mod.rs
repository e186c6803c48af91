//! EP and EPD evaluation.
//!
//! EP is a 2-copy trace against the product-state moment operator. The
//! 4-copy EPD term is available two ways: a literal dense realization for
//! `d1 d2 ≤ 4`, and a permutation-sum path that evaluates each trace as a
//! closed tensor network of `U` and `U†` copies.

mod cycle;
mod entropy;
mod four_copy;
mod gram;
mod two_copy;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use cycle::cycle_trace;
pub use entropy::{linear_entropy, linear_entropy_bipartite};
pub(crate) use entropy::bipartite_entropy_kernel;
pub use four_copy::{
    copy_trace, epd_exact_cycle, epd_exact_dense, epd_trace_terms, TraceTerm, CYCLE_MAX_DIM,
    DENSE_MAX_DIM, RADICAND_CLAMP,
};
pub use gram::GRAM_MAX_DIM;
pub use two_copy::{check_vanishing_conditions, ep_exact, ep_exact_with_sign, operator_entanglement, VanishingCheck};

use crate::error::Result;
use crate::tensor::ComplexMatrix;

/// EP values at or below this count as zero when forming `epd / ep`.
pub const ETA_EP_FLOOR: f64 = 1e-15;

/// Which route produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactDense,
    ExactCycle,
    ExactGram,
    ClosedForm,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactDense => "exact-dense",
            Method::ExactCycle => "exact-cycle",
            Method::ExactGram => "exact-gram",
            Method::ClosedForm => "closed-form",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

/// EP and EPD with the method that produced them. Standard errors are zero
/// for exact and closed-form results.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpEpdResult {
    pub ep: f64,
    pub epd: f64,
    pub method: Method,
    pub ep_stderr: f64,
    pub epd_stderr: f64,
}

impl EpEpdResult {
    pub fn exact(ep: f64, epd: f64, method: Method) -> Self {
        Self {
            ep,
            epd,
            method,
            ep_stderr: 0.0,
            epd_stderr: 0.0,
        }
    }

    /// `epd / ep`, or `None` when `ep` is at rounding level.
    pub fn eta(&self) -> Option<f64> {
        (self.ep > ETA_EP_FLOOR).then(|| self.epd / self.ep)
    }
}

/// EP and EPD through the dense 4-copy oracle.
pub fn exact_dense(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<EpEpdResult> {
    let ep = ep_exact(u, d1, d2)?;
    let epd = four_copy::epd_dense_given_ep(u, d1, d2, ep)?;
    Ok(EpEpdResult::exact(ep, epd, Method::ExactDense))
}

/// EP and EPD through the permutation-sum network path.
pub fn exact_cycle(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<EpEpdResult> {
    let ep = ep_exact(u, d1, d2)?;
    let epd = four_copy::epd_cycle_given_ep(u, d1, d2, ep)?;
    Ok(EpEpdResult::exact(ep, epd, Method::ExactCycle))
}

/// EP and EPD through the Gram factor `P⁻₁₃ U⊗² P⁺₁₃P⁺₂₄`. Both moments are
/// sums of nonnegative or small terms, so near-local gates come out at the
/// rounding floor rather than at `√ε`.
pub fn exact_gram(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<EpEpdResult> {
    let (ep, epd) = gram::gram_ep_epd(u, d1, d2)?;
    Ok(EpEpdResult::exact(ep, epd, Method::ExactGram))
}

/// Upper bound `1 − 1/min(d1, d2)` on the linear entropy.
pub fn max_linear_entropy(d1: usize, d2: usize) -> f64 {
    1.0 - 1.0 / d1.min(d2) as f64
}
