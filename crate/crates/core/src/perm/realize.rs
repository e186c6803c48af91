use num_complex::Complex64;

use super::Permutation;
use crate::error::{Error, Result};
use crate::tensor::{ComplexMatrix, SubsystemLayout};

fn check_cycles(pi: &Permutation, layout: &SubsystemLayout) -> Result<()> {
    if pi.degree() != layout.len() {
        return Err(Error::Layout(format!(
            "permutation of degree {} on a layout with {} subsystems",
            pi.degree(),
            layout.len()
        )));
    }
    let dims = layout.dims();
    for cycle in pi.cycles() {
        let d = dims[cycle[0]];
        if cycle.iter().any(|&p| dims[p] != d) {
            return Err(Error::Layout(format!(
                "cycle {:?} mixes subsystem dimensions",
                cycle.iter().map(|p| p + 1).collect::<Vec<_>>()
            )));
        }
    }
    Ok(())
}

/// Basis-index image of the permutation operator:
/// `V(π)|j⟩ = |map[j]⟩`, where the output digit at position `π(i)` is the
/// input digit at position `i`.
pub fn basis_map(pi: &Permutation, layout: &SubsystemLayout) -> Result<Vec<usize>> {
    check_cycles(pi, layout)?;
    let strides = layout.strides();
    let n = layout.total_dim();
    let mut map = Vec::with_capacity(n);
    for j in 0..n {
        let digits = layout.digits(j);
        let out = digits
            .iter()
            .enumerate()
            .map(|(i, &v)| v * strides[pi.apply(i)])
            .sum();
        map.push(out);
    }
    Ok(map)
}

/// Dense 0/1 matrix of `V(π)` on the given layout.
pub fn realize(pi: &Permutation, layout: &SubsystemLayout) -> Result<ComplexMatrix> {
    let map = basis_map(pi, layout)?;
    let n = map.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for (j, &i) in map.iter().enumerate() {
        m[(i, j)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// `Tr V(π) = Π_cycles d_cycle`.
pub fn permutation_trace(pi: &Permutation, layout: &SubsystemLayout) -> Result<f64> {
    check_cycles(pi, layout)?;
    Ok(pi
        .cycles()
        .iter()
        .map(|c| layout.dims()[c[0]] as f64)
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lay(d: &[usize]) -> SubsystemLayout {
        SubsystemLayout::new(d.to_vec()).unwrap()
    }

    #[test]
    fn identity_realizes_identity() {
        let v = realize(&Permutation::identity(2), &lay(&[2, 2])).unwrap();
        assert!(v.approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn transposition_is_swap() {
        let v = realize(&Permutation::parse_cycles("(12)", 2).unwrap(), &lay(&[2, 2])).unwrap();
        // |01⟩ (index 1) → |10⟩ (index 2)
        assert_eq!(v[(2, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(v[(1, 2)], Complex64::new(1.0, 0.0));
        assert_eq!(v[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(v[(3, 3)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn mixed_dimension_cycle_rejected() {
        let pi = Permutation::parse_cycles("(12)", 2).unwrap();
        assert!(matches!(realize(&pi, &lay(&[2, 3])), Err(Error::Layout(_))));
        // A cycle that stays within equal dimensions is fine.
        let ok = Permutation::parse_cycles("(13)", 4).unwrap();
        assert!(realize(&ok, &lay(&[2, 3, 2, 3])).is_ok());
    }

    #[test]
    fn trace_counts_cycles() {
        let pi = Permutation::parse_cycles("(13)", 4).unwrap();
        assert_eq!(permutation_trace(&pi, &lay(&[2, 3, 2, 3])).unwrap(), 2.0 * 9.0);
    }
}
