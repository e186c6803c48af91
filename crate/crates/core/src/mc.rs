//! Monte Carlo estimates of EP and EPD from Haar-random product inputs.
//!
//! Sample `i` draws from its own ChaCha stream keyed by `(seed, i)`, so the
//! estimate does not depend on how samples are spread over threads.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{EpEpdResult, Method};
use crate::engine::bipartite_entropy_kernel;
use crate::error::{Error, Result};
use crate::reduce::tree_sum;
use crate::tensor::{kron, ComplexMatrix, PureState, SubsystemLayout, UNITARITY_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub samples: usize,
    pub dims: (usize, usize),
}

/// Sample mean and unbiased standard deviation with their standard errors.
/// `se_std` uses the normal approximation `std / √(2(n−1))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std: f64,
    pub se_mean: f64,
    pub se_std: f64,
    pub n: usize,
}

impl McEstimate {
    pub fn from_samples(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n < 2 {
            return Err(Error::Domain(format!("variance needs at least 2 samples, got {n}")));
        }
        let nf = n as f64;
        let mean = tree_sum(values, 0.0) / nf;
        let dev: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
        let std = (tree_sum(&dev, 0.0) / (nf - 1.0)).sqrt();
        Ok(Self {
            mean,
            std,
            se_mean: std / nf.sqrt(),
            se_std: std / (2.0 * (nf - 1.0)).sqrt(),
            n,
        })
    }

    pub fn to_result(&self) -> EpEpdResult {
        EpEpdResult {
            ep: self.mean,
            epd: self.std,
            method: Method::MonteCarlo,
            ep_stderr: self.se_mean,
            epd_stderr: self.se_std,
        }
    }
}

/// Complex standard Gaussian by Box–Muller.
fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::from_polar(r, 2.0 * PI * u2)
}

fn haar_amplitudes<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random pure state in `ℂᵈ`: normalized vector of complex Gaussians.
pub fn sample_haar_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<PureState> {
    let layout = SubsystemLayout::new(vec![d])?;
    PureState::new(layout, haar_amplitudes(d, rng))
}

/// Haar-random `d × d` unitary: Gram–Schmidt on a complex Gaussian matrix.
/// The columns come out with positive `R` diagonal, which is what makes the
/// distribution exactly Haar.
pub fn sample_haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let p: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= p * y;
                }
            }
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(d, d, |r, c| cols[c][r])
}

/// Haar-random element of `SU(d)`: a Haar unitary divided by a `d`-th root
/// of its determinant.
pub fn sample_haar_special_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let u = sample_haar_unitary(d, rng);
    let phase = Complex64::from_polar(1.0, -u.determinant().arg() / d as f64);
    u.scale(phase)
}

/// Generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Linear entropies of `U|ψ₁⟩|ψ₂⟩` for every sample, in index order.
pub fn sample_entropies(u: &ComplexMatrix, cfg: &SamplerConfig) -> Result<Vec<f64>> {
    let (d1, d2) = cfg.dims;
    if d1 == 0 || d2 == 0 || u.rows() != d1 * d2 || !u.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for local dimensions {d1}x{d2}",
            u.rows(),
            u.cols()
        )));
    }
    u.ensure_unitary(UNITARITY_TOLERANCE)?;
    Ok((0..cfg.samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let a = haar_amplitudes(d1, &mut rng);
            let b = haar_amplitudes(d2, &mut rng);
            let input: Vec<Complex64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
            let out = u.apply(&input);
            bipartite_entropy_kernel(&out, d1, d2)
        })
        .collect())
}

/// Mean (EP) and standard deviation (EPD) of the output linear entropy.
pub fn estimate_ep_epd(u: &ComplexMatrix, cfg: &SamplerConfig) -> Result<McEstimate> {
    if cfg.samples < 2 {
        return Err(Error::Domain(format!(
            "variance needs at least 2 samples, got {}",
            cfg.samples
        )));
    }
    McEstimate::from_samples(&sample_entropies(u, cfg)?)
}

/// Empirical `E[|ψ⟩⟨ψ|^{⊗κ}]` over `samples` Haar states in `ℂᵈ`.
pub fn empirical_moment(d: usize, kappa: usize, samples: usize, seed: u64) -> ComplexMatrix {
    let n = d.pow(kappa as u32);
    let parts: Vec<Vec<Complex64>> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let v = haar_amplitudes(d, &mut sample_rng(seed, i));
            let mut w = vec![Complex64::new(1.0, 0.0)];
            for _ in 0..kappa {
                let m = ComplexMatrix::from_vec(w.len(), 1, w).expect("column");
                let c = ComplexMatrix::from_vec(d, 1, v.clone()).expect("column");
                w = kron(&m, &c).into_vec();
            }
            ComplexMatrix::outer(&w).into_vec()
        })
        .collect();
    let mut sum = vec![Complex64::new(0.0, 0.0); n * n];
    for (k, entry) in sum.iter_mut().enumerate() {
        let col: Vec<Complex64> = parts.iter().map(|p| p[k]).collect();
        *entry = tree_sum(&col, Complex64::new(0.0, 0.0)) / samples as f64;
    }
    ComplexMatrix::from_vec(n, n, sum).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_independent_of_order() {
        let a: f64 = sample_rng(7, 3).gen();
        let _: f64 = sample_rng(7, 2).gen();
        let b: f64 = sample_rng(7, 3).gen();
        assert_eq!(a, b);
        let c: f64 = sample_rng(7, 4).gen();
        assert_ne!(a, c);
    }

    #[test]
    fn one_dimensional_state_is_trivial() {
        let s = sample_haar_state(1, &mut sample_rng(1, 0)).unwrap();
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn special_unitary_has_unit_determinant() {
        let u = sample_haar_special_unitary(4, &mut sample_rng(3, 0));
        assert!(u.is_unitary(1e-12));
        assert!((u.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn needs_two_samples() {
        let cfg = SamplerConfig { seed: 0, samples: 1, dims: (2, 2) };
        assert!(estimate_ep_epd(&ComplexMatrix::identity(4), &cfg).is_err());
    }
}
