use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::haar::omega;
use crate::perm::{
    basis_map, rational_to_f64, symmetric_projector, FormalGroupSum, Permutation, ProjectorSign,
};
use crate::tensor::{kron, ComplexMatrix, SubsystemLayout, UNITARITY_TOLERANCE};

pub(crate) fn check_gate(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<()> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::Dimension("local dimensions must be at least 1".into()));
    }
    if !u.is_square() || u.rows() != d1 * d2 {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for local dimensions {d1}x{d2}",
            u.rows(),
            u.cols()
        )));
    }
    u.ensure_unitary(UNITARITY_TOLERANCE)
}

/// `Tr(A V(σ) B V(τ))` from the basis maps of σ and τ, in `O(N²)`.
pub(crate) fn sandwich_trace(a: &ComplexMatrix, sigma: &[usize], b: &ComplexMatrix, tau: &[usize]) -> Complex64 {
    let n = a.rows();
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let ti = tau[i];
        let mut row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            row += a[(i, sigma[j])] * b[(j, ti)];
        }
        total += row;
    }
    total
}

/// `Σ_{σ,τ} a_σ b_τ Tr(U⊗² V(σ) U†⊗² V(τ))` on the 2-copy layout.
fn paired_trace(
    u2: &ComplexMatrix,
    u2_dag: &ComplexMatrix,
    left: &FormalGroupSum,
    right: &FormalGroupSum,
    layout: &SubsystemLayout,
) -> Result<f64> {
    let rights: Vec<(Vec<usize>, f64)> = right
        .iter()
        .map(|(p, &c)| Ok((basis_map(p, layout)?, rational_to_f64(c))))
        .collect::<Result<_>>()?;
    let mut total = Complex64::new(0.0, 0.0);
    for (sigma, &a) in left.iter() {
        let smap = basis_map(sigma, layout)?;
        for (tmap, b) in &rights {
            total += sandwich_trace(u2, &smap, u2_dag, tmap) * (rational_to_f64(a) * b);
        }
    }
    Ok(total.re)
}

/// EP as `2 Tr(U⊗² Ω⁽²⁾ U†⊗² P⁻₁₃)`, evaluated on `(d1 d2)²` dimensions.
///
/// By cyclicity and idempotence the trace equals `2‖K‖²_F / Tr(P⁺₁₃P⁺₂₄)`
/// with `K = P⁻₁₃ U⊗² P⁺₁₃P⁺₂₄`, which is what is computed: it is
/// nonnegative by construction and vanishes to rounding for local gates.
pub fn ep_exact(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<f64> {
    check_gate(u, d1, d2)?;
    let k = super::gram::gram_factor(u, d1, d2)?;
    Ok(super::gram::ep_from_factor(&k, d1, d2))
}

/// `2 Tr(U⊗² Ω⁽²⁾ U†⊗² P^±₁₃)` summed term by term over the permutation
/// expansion, with a caller-chosen projector on the first subsystem copies.
/// The antisymmetric choice is EP; the symmetric one exists to check that
/// validation detects a sign error.
#[doc(hidden)]
pub fn ep_exact_with_sign(u: &ComplexMatrix, d1: usize, d2: usize, sign: ProjectorSign) -> Result<f64> {
    check_gate(u, d1, d2)?;
    let w = omega(2, d1, d2)?;
    let p13 = symmetric_projector(4, &[0, 2], sign)?;
    let u2 = kron(u, u);
    let u2_dag = u2.adjoint();
    let t = paired_trace(&u2, &u2_dag, w.sum(), &p13, w.layout())?;
    Ok(2.0 * rational_to_f64(w.prefactor()) * t)
}

/// Linear operator entanglements `(E, Ẽ)`:
/// `E = 1 − Tr(U⊗² T₁₃ U†⊗² T₁₃)/(d1 d2)²` and `Ẽ` with `T₂₄` in the first slot.
pub fn operator_entanglement(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<(f64, f64)> {
    check_gate(u, d1, d2)?;
    let layout = SubsystemLayout::bipartite_copies(d1, d2, 2)?;
    let t13 = basis_map(&Permutation::transposition(4, 0, 2)?, &layout)?;
    let t24 = basis_map(&Permutation::transposition(4, 1, 3)?, &layout)?;
    let u2 = kron(u, u);
    let u2_dag = u2.adjoint();
    let n2 = ((d1 * d2) as f64).powi(2);
    let e = 1.0 - sandwich_trace(&u2, &t13, &u2_dag, &t13).re / n2;
    let e_tilde = 1.0 - sandwich_trace(&u2, &t24, &u2_dag, &t13).re / n2;
    Ok((e, e_tilde))
}

/// Outcome of the commutation test for vanishing EP.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VanishingCheck {
    /// `U⊗²` commutes with `P⁺₁₃`.
    pub condition_i: bool,
    /// `U⊗²` commutes with `P⁺₁₃ P⁺₂₄`.
    pub condition_ii: bool,
    pub ep_zero: bool,
    pub ep: f64,
}

/// Tests both commutation conditions at `1e-10` and confirms that either one
/// forces `ep = 0`. A violation is reported as a consistency error.
pub fn check_vanishing_conditions(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<VanishingCheck> {
    const TOL: f64 = 1e-10;
    check_gate(u, d1, d2)?;
    let layout = SubsystemLayout::bipartite_copies(d1, d2, 2)?;
    let p13 = symmetric_projector(4, &[0, 2], ProjectorSign::Symmetric)?;
    let p24 = symmetric_projector(4, &[1, 3], ProjectorSign::Symmetric)?;
    let u2 = kron(u, u);
    let commutes = |p: &FormalGroupSum| -> Result<bool> {
        let m = p.realize(&layout)?;
        Ok(u2.commutator(&m).frobenius_norm_sqr().sqrt() < TOL)
    };
    let condition_i = commutes(&p13)?;
    let condition_ii = commutes(&p13.multiply(&p24))?;
    let ep = ep_exact(u, d1, d2)?;
    let ep_zero = ep.abs() < TOL;
    if (condition_i || condition_ii) && !ep_zero {
        return Err(Error::Consistency(format!(
            "commutation condition holds but ep = {ep:e}"
        )));
    }
    Ok(VanishingCheck {
        condition_i,
        condition_ii,
        ep_zero,
        ep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_expansion_matches_factored_form() {
        let u = ComplexMatrix::from_fn(6, 6, |i, j| {
            Complex64::from_polar(1.0 / 6f64.sqrt(), 2.0 * std::f64::consts::PI * (i * j) as f64 / 6.0)
        });
        let a = ep_exact(&u, 2, 3).unwrap();
        let b = ep_exact_with_sign(&u, 2, 3, ProjectorSign::Antisymmetric).unwrap();
        assert!((a - b).abs() < 1e-13, "{a} {b}");
        let flipped = ep_exact_with_sign(&u, 2, 3, ProjectorSign::Symmetric).unwrap();
        assert!((flipped - a).abs() > 1e-3);
    }
}
