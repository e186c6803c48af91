use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::tensor::ComplexMatrix;

/// `Tr((A₁⊗…⊗A_κ) V(π))` as a product over the cycles of π: each cycle
/// starting at `l` contributes `Tr(A_l A_{π⁻¹(l)} A_{π⁻²(l)} …)`.
pub fn cycle_trace(factors: &[ComplexMatrix], pi: &Permutation) -> Result<Complex64> {
    if factors.len() != pi.degree() {
        return Err(Error::Dimension(format!(
            "{} factors for a permutation of degree {}",
            factors.len(),
            pi.degree()
        )));
    }
    let Some(first) = factors.first() else {
        return Ok(Complex64::new(1.0, 0.0));
    };
    let d = first.rows();
    if factors.iter().any(|a| a.rows() != d || a.cols() != d) {
        return Err(Error::Dimension("cycle trace needs square factors of equal size".into()));
    }
    let inv = pi.inverse();
    let mut total = Complex64::new(1.0, 0.0);
    for cycle in pi.cycles() {
        let start = cycle[0];
        let mut prod = factors[start].clone();
        let mut l = inv.apply(start);
        while l != start {
            prod = prod.matmul(&factors[l]);
            l = inv.apply(l);
        }
        total *= prod.trace();
    }
    Ok(total)
}
