use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};

/// Ordered local dimensions of a multi-subsystem space.
///
/// Subsystem 0 is the most significant digit of the mixed-radix basis index,
/// which is the ordering produced by [`kron`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::Layout(format!("zero local dimension in {dims:?}")));
        }
        Ok(Self { dims })
    }

    /// `[d1, d2, d1, d2, …]` with `copies` repetitions: odd positions (1-based)
    /// hold the first subsystem, even positions the second.
    pub fn bipartite_copies(d1: usize, d2: usize, copies: usize) -> Result<Self> {
        Self::new([d1, d2].repeat(copies))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Place value of each subsystem digit.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&j, &d)| acc * d + j)
    }

    pub(crate) fn check_operator(&self, m: &ComplexMatrix) -> Result<()> {
        if !m.is_square() || m.rows() != self.total_dim() {
            return Err(Error::Dimension(format!(
                "operator is {}x{} but layout {:?} has dimension {}",
                m.rows(),
                m.cols(),
                self.dims,
                self.total_dim()
            )));
        }
        Ok(())
    }

    /// Offsets contributed by every joint value of the listed subsystems.
    fn offsets(&self, subsystems: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut offsets = vec![0usize];
        for &s in subsystems {
            let mut next = Vec::with_capacity(offsets.len() * self.dims[s]);
            for &o in &offsets {
                for j in 0..self.dims[s] {
                    next.push(o + j * strides[s]);
                }
            }
            offsets = next;
        }
        offsets
    }
}

/// Normalized pure state on a layout.
#[derive(Clone, Debug)]
pub struct PureState {
    layout: SubsystemLayout,
    amplitudes: Vec<Complex64>,
}

pub const NORM_TOLERANCE: f64 = 1e-10;

impl PureState {
    pub fn new(layout: SubsystemLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != layout.total_dim() {
            return Err(Error::Dimension(format!(
                "{} amplitudes for layout of dimension {}",
                amplitudes.len(),
                layout.total_dim()
            )));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Domain(format!("state has squared norm {norm_sqr}")));
        }
        Ok(Self { layout, amplitudes })
    }

    /// Normalizes `amplitudes` before construction.
    pub fn normalized(layout: SubsystemLayout, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::Domain("zero vector cannot be normalized".into()));
        }
        amplitudes.iter_mut().for_each(|z| *z /= norm);
        Self::new(layout, amplitudes)
    }

    pub fn basis(layout: SubsystemLayout, digits: &[usize]) -> Result<Self> {
        let mut amps = vec![ZERO; layout.total_dim()];
        amps[layout.index(digits)] = Complex64::new(1.0, 0.0);
        Self::new(layout, amps)
    }

    /// `|a⟩ ⊗ |b⟩`.
    pub fn product(a: &PureState, b: &PureState) -> Self {
        let mut dims = a.layout.dims.clone();
        dims.extend_from_slice(&b.layout.dims);
        let amps = a
            .amplitudes
            .iter()
            .flat_map(|x| b.amplitudes.iter().map(move |y| x * y))
            .collect();
        Self {
            layout: SubsystemLayout { dims },
            amplitudes: amps,
        }
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn density_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }

    /// Applies `u` and renormalizes away rounding drift.
    pub fn evolve(&self, u: &ComplexMatrix) -> Result<Self> {
        self.layout.check_operator(u)?;
        Self::normalized(self.layout.clone(), u.apply(&self.amplitudes))
    }
}

/// Kronecker product; the left factor owns the most significant index digit.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// `m ⊗ m ⊗ … ⊗ m` (`copies` factors).
pub fn kron_power(m: &ComplexMatrix, copies: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(1);
    for _ in 0..copies {
        acc = kron(&acc, m);
    }
    acc
}

/// Reduced operator on the `keep` subsystems (0-based, any order; result
/// ordering follows ascending subsystem index).
pub fn partial_trace(m: &ComplexMatrix, layout: &SubsystemLayout, keep: &[usize]) -> Result<ComplexMatrix> {
    layout.check_operator(m)?;
    if let Some(&bad) = keep.iter().find(|&&k| k >= layout.len()) {
        return Err(Error::Dimension(format!(
            "subsystem {bad} out of range for {} subsystems",
            layout.len()
        )));
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..layout.len()).filter(|s| !kept.contains(s)).collect();

    let kept_off = layout.offsets(&kept);
    let traced_off = layout.offsets(&traced);
    let n = kept_off.len();
    let mut out = ComplexMatrix::zeros(n, n);
    for (r, &ro) in kept_off.iter().enumerate() {
        for (c, &co) in kept_off.iter().enumerate() {
            out[(r, c)] = traced_off.iter().map(|&t| m[(ro + t, co + t)]).sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn lay(d: &[usize]) -> SubsystemLayout {
        SubsystemLayout::new(d.to_vec()).unwrap()
    }

    #[test]
    fn digits_round_trip() {
        let l = lay(&[2, 3, 4]);
        for i in 0..l.total_dim() {
            assert_eq!(l.index(&l.digits(i)), i);
        }
        assert_eq!(l.digits(23), vec![1, 2, 3]);
        assert_eq!(l.strides(), vec![12, 4, 1]);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(SubsystemLayout::new(vec![2, 0]).is_err());
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(kron(&i2, &i2).approx_eq(&ComplexMatrix::identity(4), 0.0));
    }

    #[test]
    fn kron_xx_flips_both_bits() {
        let x = ComplexMatrix::from_real_rows(&[&[0., 1.], &[1., 0.]]).unwrap();
        let v = kron(&x, &x).apply(&[c(1.), c(0.), c(0.), c(0.)]);
        assert_eq!(v, vec![c(0.), c(0.), c(0.), c(1.)]);
    }

    #[test]
    fn kron_hadamard_on_first_factor() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap();
        let v = kron(&h, &ComplexMatrix::identity(2)).apply(&[c(1.), c(0.), c(0.), c(0.)]);
        let expect = [s, 0.0, s, 0.0];
        for (a, b) in v.iter().zip(expect) {
            assert!((a - c(b)).norm() < 1e-15);
        }
    }

    #[test]
    fn partial_trace_product_state() {
        let psi = PureState::basis(lay(&[2, 2]), &[0, 0]).unwrap();
        let rho = partial_trace(&psi.density_matrix(), psi.layout(), &[0]).unwrap();
        assert!(rho.approx_eq(&ComplexMatrix::diagonal(&[c(1.), c(0.)]), 1e-15));
    }

    #[test]
    fn partial_trace_bell_state_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(lay(&[2, 2]), vec![c(s), c(0.), c(0.), c(s)]).unwrap();
        let rho = partial_trace(&bell.density_matrix(), bell.layout(), &[0]).unwrap();
        assert!(rho.approx_eq(&ComplexMatrix::identity(2).scale_real(0.5), 1e-15));
    }

    #[test]
    fn partial_trace_rejects_out_of_range() {
        let m = ComplexMatrix::identity(4);
        assert!(matches!(partial_trace(&m, &lay(&[2, 2]), &[2]), Err(Error::Dimension(_))));
        assert!(partial_trace(&m, &lay(&[2, 3]), &[0]).is_err());
    }

    #[test]
    fn pure_state_requires_normalization() {
        assert!(PureState::new(lay(&[2]), vec![c(1.), c(1.)]).is_err());
        assert!(PureState::normalized(lay(&[2]), vec![c(1.), c(1.)]).is_ok());
    }
}
