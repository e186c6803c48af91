//! Haar-average building blocks for product inputs.
//!
//! The κ-th moment of a Haar-random pure state in dimension d is the
//! normalized symmetric projector `P_sym / binom(d+κ−1, κ)`. For a product
//! input `|ψ₁⟩⊗|ψ₂⟩` copied κ times, copies of subsystem 1 sit at odd
//! (1-based) positions and copies of subsystem 2 at even positions, so the
//! moment operator is a product of two partial symmetrizers.

use num_integer::binomial;

use crate::error::{Error, Result};
use crate::perm::{rational_to_f64, symmetric_projector, FormalGroupSum, ProjectorSign, Rational};
use crate::tensor::{ComplexMatrix, SubsystemLayout};

/// `(C_d, D_d) = (1/(d(d+1)), 1/(d(d+1)(d+2)(d+3)))`.
pub fn moment_constants(d: usize) -> Result<(Rational, Rational)> {
    if d == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let d = d as i64;
    Ok((
        Rational::new(1, d * (d + 1)),
        Rational::new(1, d * (d + 1) * (d + 2) * (d + 3)),
    ))
}

/// Returns `P_sym` over `S_κ` and its normalization `1/Tr P_sym`.
pub fn pure_state_haar_average(d: usize, kappa: usize) -> Result<(FormalGroupSum, Rational)> {
    if d == 0 || kappa == 0 {
        return Err(Error::Domain("dimension and order must be at least 1".into()));
    }
    let positions: Vec<usize> = (0..kappa).collect();
    let sym = symmetric_projector(kappa, &positions, ProjectorSign::Symmetric)?;
    let dim = binomial((d + kappa - 1) as i64, kappa as i64);
    Ok((sym, Rational::new(1, dim)))
}

/// Ensemble average of κ copies of a Haar-random product state, kept as
/// an exact prefactor times a formal permutation sum.
#[derive(Clone, Debug)]
pub struct MomentState {
    order: usize,
    prefactor: Rational,
    sum: FormalGroupSum,
    layout: SubsystemLayout,
}

/// Moment state of the given order for local dimensions `d1`, `d2`.
///
/// `order = 2` gives `(2!)² C_{d1} C_{d2} P⁺₁₃ P⁺₂₄` and `order = 4` gives
/// `(4!)² D_{d1} D_{d2} P⁺₁₃₅₇ P⁺₂₄₆₈`; other orders follow the same pattern.
pub fn omega(order: usize, d1: usize, d2: usize) -> Result<MomentState> {
    if order == 0 {
        return Err(Error::Domain("moment order must be at least 1".into()));
    }
    let degree = 2 * order;
    let odd: Vec<usize> = (0..degree).step_by(2).collect();
    let even: Vec<usize> = (1..degree).step_by(2).collect();
    let p_a = symmetric_projector(degree, &odd, ProjectorSign::Symmetric)?;
    let p_b = symmetric_projector(degree, &even, ProjectorSign::Symmetric)?;
    let (_, n1) = pure_state_haar_average(d1, order)?;
    let (_, n2) = pure_state_haar_average(d2, order)?;
    Ok(MomentState {
        order,
        prefactor: n1 * n2,
        sum: p_a.multiply(&p_b),
        layout: SubsystemLayout::bipartite_copies(d1, d2, order)?,
    })
}

impl MomentState {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prefactor(&self) -> Rational {
        self.prefactor
    }

    pub fn sum(&self) -> &FormalGroupSum {
        &self.sum
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    /// Dense realization on `(d1 d2)^order` dimensions.
    pub fn realize(&self) -> Result<ComplexMatrix> {
        Ok(self.sum.realize(&self.layout)?.scale_real(rational_to_f64(self.prefactor)))
    }

    pub fn trace(&self) -> Result<f64> {
        Ok(rational_to_f64(self.prefactor) * self.sum.trace(&self.layout)?)
    }
}
