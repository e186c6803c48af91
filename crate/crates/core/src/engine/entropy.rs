use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{partial_trace, PureState, NORM_TOLERANCE};

/// `1 − Tr ρ²` of the reduced state on the subsystems in `cut` (0-based).
pub fn linear_entropy(state: &PureState, cut: &[usize]) -> Result<f64> {
    let rho = partial_trace(&state.density_matrix(), state.layout(), cut)?;
    Ok(1.0 - rho.frobenius_norm_sqr())
}

/// Linear entropy of a bipartite pure state given as `d1·d2` amplitudes,
/// computed from the `d1 × d1` Gram matrix of the amplitude reshaping.
pub fn linear_entropy_bipartite(amplitudes: &[Complex64], d1: usize, d2: usize) -> Result<f64> {
    if amplitudes.len() != d1 * d2 {
        return Err(Error::Dimension(format!(
            "{} amplitudes for a {d1}x{d2} bipartition",
            amplitudes.len()
        )));
    }
    let norm: f64 = amplitudes.iter().map(Complex64::norm_sqr).sum();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Domain(format!("state norm² is {norm}, expected 1")));
    }
    Ok(bipartite_entropy_kernel(amplitudes, d1, d2))
}

/// `1 − Tr ρ₁²` of a normalized state via the Lagrange identity
/// `2 Σ_{i<k} Σ_{j<l} |M_ij M_kl − M_il M_kj|²` with `M[i][j] = ψ[i d2 + j]`.
/// The sum has no cancellation, so product outputs give values at the
/// rounding floor instead of `1 − (1 ± ε)`.
pub(crate) fn bipartite_entropy_kernel(psi: &[Complex64], d1: usize, d2: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..d1 {
        let ri = &psi[i * d2..(i + 1) * d2];
        for k in i + 1..d1 {
            let rk = &psi[k * d2..(k + 1) * d2];
            for j in 0..d2 {
                for l in j + 1..d2 {
                    acc += (ri[j] * rk[l] - ri[l] * rk[j]).norm_sqr();
                }
            }
        }
    }
    2.0 * acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{ComplexMatrix, SubsystemLayout};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn product_and_bell() {
        let layout = SubsystemLayout::new(vec![2, 2]).unwrap();
        let zero = PureState::basis(layout.clone(), &[0, 0]).unwrap();
        assert!(linear_entropy(&zero, &[0]).unwrap().abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(layout, vec![c(h), c(0.0), c(0.0), c(h)]).unwrap();
        assert!((linear_entropy(&bell, &[0]).unwrap() - 0.5).abs() < 1e-14);
        assert!((linear_entropy(&bell, &[1]).unwrap() - 0.5).abs() < 1e-14);
        assert!((linear_entropy_bipartite(bell.amplitudes(), 2, 2).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn cnot_on_plus_zero() {
        let layout = SubsystemLayout::new(vec![2, 2]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let input = PureState::new(layout, vec![c(h), c(0.0), c(h), c(0.0)]).unwrap();
        let cnot = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let out = input.evolve(&cnot).unwrap();
        assert!((linear_entropy(&out, &[0]).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        let v = vec![c(1.0), c(1.0), c(0.0), c(0.0)];
        assert!(matches!(linear_entropy_bipartite(&v, 2, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn asymmetric_dims_agree_with_partial_trace() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let amps: Vec<Complex64> = (0..6).map(|i| Complex64::new(i as f64, 1.0 - i as f64)).collect();
        let s = PureState::normalized(layout, amps).unwrap();
        let a = linear_entropy(&s, &[0]).unwrap();
        let b = linear_entropy(&s, &[1]).unwrap();
        let fast = linear_entropy_bipartite(s.amplitudes(), 2, 3).unwrap();
        assert!((a - b).abs() < 1e-13 && (a - fast).abs() < 1e-13);
    }
}
