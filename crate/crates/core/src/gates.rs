//! Gate families with their matrices and closed-form EP/EPD.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::{EpEpdResult, Method, ETA_EP_FLOOR};
use crate::error::{Error, Result};
use crate::tensor::ComplexMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateFamily {
    Cnot,
    Cp,
    Cu,
    SwapAlpha,
    Iswap,
    Kak,
    Swap,
    Gcx,
    F4,
}

impl GateFamily {
    pub const ALL: [GateFamily; 9] = [
        GateFamily::Cnot,
        GateFamily::Cp,
        GateFamily::Cu,
        GateFamily::SwapAlpha,
        GateFamily::Iswap,
        GateFamily::Kak,
        GateFamily::Swap,
        GateFamily::Gcx,
        GateFamily::F4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateFamily::Cnot => "cnot",
            GateFamily::Cp => "cp",
            GateFamily::Cu => "cu",
            GateFamily::SwapAlpha => "swap_alpha",
            GateFamily::Iswap => "iswap",
            GateFamily::Kak => "kak",
            GateFamily::Swap => "swap",
            GateFamily::Gcx => "gcx",
            GateFamily::F4 => "f4",
        }
    }

    /// Parameter names in positional order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            GateFamily::Cnot | GateFamily::F4 => &[],
            GateFamily::Cp => &["theta"],
            GateFamily::Cu => &["theta", "alpha", "beta", "delta"],
            GateFamily::SwapAlpha => &["alpha"],
            GateFamily::Iswap => &["theta", "phi"],
            GateFamily::Kak => &["b1", "b2", "b3"],
            GateFamily::Swap | GateFamily::Gcx => &["d"],
        }
    }
}

impl fmt::Display for GateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        GateFamily::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::UnsupportedFamily(s.to_string()))
    }
}

/// A fully parameterized catalog gate. Angles are in radians.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GateSpec {
    Cnot,
    /// `diag(1, 1, 1, e^{iθ})`, θ ∈ [0, 2π].
    Cp { theta: f64 },
    /// `|0⟩⟨0|⊗𝟙 + |1⟩⟨1|⊗u(θ, α, β, δ)`; δ is a global phase of `u`.
    Cu { theta: f64, alpha: f64, beta: f64, delta: f64 },
    /// Power of SWAP, α ∈ [0, 1].
    SwapAlpha { alpha: f64 },
    /// Partial iSWAP, θ ∈ [0, π].
    Iswap { theta: f64, phi: f64 },
    /// Canonical nonlocal core `exp(−i Σ β_k σ_k⊗σ_k)`.
    Kak { b1: f64, b2: f64, b3: f64 },
    /// SWAP on `ℂᵈ⊗ℂᵈ`.
    Swap { d: usize },
    /// Generalized controlled shift `Σ_a |a⟩⟨a| ⊗ X^a` on `ℂᵈ⊗ℂᵈ`.
    Gcx { d: usize },
    /// Two-qubit Fourier transform `(1/2) i^{mn}`.
    F4,
}

impl GateSpec {
    pub fn family(&self) -> GateFamily {
        match self {
            GateSpec::Cnot => GateFamily::Cnot,
            GateSpec::Cp { .. } => GateFamily::Cp,
            GateSpec::Cu { .. } => GateFamily::Cu,
            GateSpec::SwapAlpha { .. } => GateFamily::SwapAlpha,
            GateSpec::Iswap { .. } => GateFamily::Iswap,
            GateSpec::Kak { .. } => GateFamily::Kak,
            GateSpec::Swap { .. } => GateFamily::Swap,
            GateSpec::Gcx { .. } => GateFamily::Gcx,
            GateSpec::F4 => GateFamily::F4,
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match *self {
            GateSpec::Swap { d } | GateSpec::Gcx { d } => (d, d),
            _ => (2, 2),
        }
    }

    /// Named parameters in the family's positional order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        let values: Vec<f64> = match *self {
            GateSpec::Cnot | GateSpec::F4 => vec![],
            GateSpec::Cp { theta } => vec![theta],
            GateSpec::Cu { theta, alpha, beta, delta } => vec![theta, alpha, beta, delta],
            GateSpec::SwapAlpha { alpha } => vec![alpha],
            GateSpec::Iswap { theta, phi } => vec![theta, phi],
            GateSpec::Kak { b1, b2, b3 } => vec![b1, b2, b3],
            GateSpec::Swap { d } | GateSpec::Gcx { d } => vec![d as f64],
        };
        self.family().param_names().iter().copied().zip(values).collect()
    }

    /// Builds a spec from named values. Missing `delta`, `phi` default to 0
    /// and a missing swap dimension defaults to 2.
    pub fn from_params(family: GateFamily, params: &BTreeMap<String, f64>) -> Result<Self> {
        let names = family.param_names();
        if let Some(bad) = params.keys().find(|k| !names.contains(&k.as_str())) {
            return Err(Error::Domain(format!(
                "{family} has no parameter {bad:?}; expected {names:?}"
            )));
        }
        let get = |name: &str, default: Option<f64>| -> Result<f64> {
            params
                .get(name)
                .copied()
                .or(default)
                .ok_or_else(|| Error::Domain(format!("{family} requires parameter {name}")))
        };
        let dim = |v: f64| -> Result<usize> {
            if v.fract() != 0.0 || v < 0.0 {
                return Err(Error::Domain(format!("dimension {v} is not a whole number")));
            }
            Ok(v as usize)
        };
        let spec = match family {
            GateFamily::Cnot => GateSpec::Cnot,
            GateFamily::F4 => GateSpec::F4,
            GateFamily::Cp => GateSpec::Cp { theta: get("theta", None)? },
            GateFamily::Cu => GateSpec::Cu {
                theta: get("theta", None)?,
                alpha: get("alpha", None)?,
                beta: get("beta", None)?,
                delta: get("delta", Some(0.0))?,
            },
            GateFamily::SwapAlpha => GateSpec::SwapAlpha { alpha: get("alpha", None)? },
            GateFamily::Iswap => GateSpec::Iswap {
                theta: get("theta", None)?,
                phi: get("phi", Some(0.0))?,
            },
            GateFamily::Kak => GateSpec::Kak {
                b1: get("b1", None)?,
                b2: get("b2", None)?,
                b3: get("b3", None)?,
            },
            GateFamily::Swap => GateSpec::Swap { d: dim(get("d", Some(2.0))?)? },
            GateFamily::Gcx => GateSpec::Gcx { d: dim(get("d", None)?)? },
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks parameter ranges.
    pub fn validate(&self) -> Result<()> {
        let in_range = |name: &str, v: f64, lo: f64, hi: f64| {
            if v.is_finite() && (lo..=hi).contains(&v) {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} = {v} outside [{lo}, {hi}]")))
            }
        };
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be finite")))
            }
        };
        match *self {
            GateSpec::Cnot | GateSpec::F4 => Ok(()),
            GateSpec::Cp { theta } => in_range("theta", theta, 0.0, 2.0 * PI),
            GateSpec::Cu { theta, alpha, beta, delta } => {
                finite("theta", theta)?;
                finite("alpha", alpha)?;
                finite("beta", beta)?;
                finite("delta", delta)
            }
            GateSpec::SwapAlpha { alpha } => in_range("alpha", alpha, 0.0, 1.0),
            GateSpec::Iswap { theta, phi } => {
                in_range("theta", theta, 0.0, PI)?;
                finite("phi", phi)
            }
            GateSpec::Kak { b1, b2, b3 } => {
                finite("b1", b1)?;
                finite("b2", b2)?;
                finite("b3", b3)
            }
            GateSpec::Swap { d } | GateSpec::Gcx { d } => {
                if d >= 2 {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("dimension d = {d} must be at least 2")))
                }
            }
        }
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        let params = self.params();
        if !params.is_empty() {
            let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, x)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Two-qubit gate acting as `u` on the target when the control is `|1⟩`.
fn controlled(u: [[Complex64; 2]; 2]) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4);
    for r in 0..2 {
        for c in 0..2 {
            m[(2 + r, 2 + c)] = u[r][c];
        }
    }
    m
}

/// Canonical core with `c± = cos(β₁ ± β₂)`, `s± = sin(β₁ ± β₂)`.
fn kak_core(b1: f64, b2: f64, b3: f64) -> ComplexMatrix {
    let (cp, sp) = ((b1 + b2).cos(), (b1 + b2).sin());
    let (cm, sm) = ((b1 - b2).cos(), (b1 - b2).sin());
    let em = cis(-b3);
    let ep = cis(b3);
    let z = Complex64::new(0.0, 0.0);
    ComplexMatrix::from_rows(&[
        vec![em * cm, z, z, -I * em * sm],
        vec![z, ep * cp, -I * ep * sp, z],
        vec![z, -I * ep * sp, ep * cp, z],
        vec![-I * em * sm, z, z, em * cm],
    ])
    .expect("4x4")
}

/// Matrix of a catalog gate.
pub fn build(spec: &GateSpec) -> Result<ComplexMatrix> {
    spec.validate()?;
    let one = real(1.0);
    let zero = real(0.0);
    Ok(match *spec {
        GateSpec::Cnot => controlled([[zero, one], [one, zero]]),
        GateSpec::Cp { theta } => controlled([[one, zero], [zero, cis(theta)]]),
        GateSpec::Cu { theta, alpha, beta, delta } => {
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            controlled([
                [
                    cis(delta + alpha / 2.0 + beta / 2.0) * c,
                    cis(delta + alpha / 2.0 - beta / 2.0) * s,
                ],
                [
                    -cis(delta - alpha / 2.0 + beta / 2.0) * s,
                    cis(delta - alpha / 2.0 - beta / 2.0) * c,
                ],
            ])
        }
        GateSpec::SwapAlpha { alpha } => {
            let e = cis(PI * alpha);
            let mut m = ComplexMatrix::identity(4);
            m[(1, 1)] = (one + e) / 2.0;
            m[(2, 2)] = (one + e) / 2.0;
            m[(1, 2)] = (one - e) / 2.0;
            m[(2, 1)] = (one - e) / 2.0;
            m
        }
        GateSpec::Iswap { theta, phi } => {
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let mut m = ComplexMatrix::identity(4);
            m[(1, 1)] = real(c);
            m[(2, 2)] = real(c);
            m[(1, 2)] = I * cis(phi) * s;
            m[(2, 1)] = I * cis(-phi) * s;
            m
        }
        GateSpec::Kak { b1, b2, b3 } => kak_core(b1, b2, b3),
        GateSpec::Swap { d } => ComplexMatrix::from_fn(d * d, d * d, |r, c| {
            let (a, b) = (c / d, c % d);
            if r == b * d + a {
                one
            } else {
                zero
            }
        }),
        GateSpec::Gcx { d } => ComplexMatrix::from_fn(d * d, d * d, |r, c| {
            let (a, j) = (c / d, c % d);
            if r == a * d + (j + a) % d {
                one
            } else {
                zero
            }
        }),
        GateSpec::F4 => ComplexMatrix::from_fn(4, 4, |m, n| I.powu((m * n % 4) as u32) * 0.5),
    })
}

/// Closed-form EP of `Σ_a |a⟩⟨a| ⊗ X^a`.
pub fn gcx_ep(d: usize) -> f64 {
    let d = d as f64;
    d * (d - 1.0) / ((d + 1.0) * (d + 1.0))
}

/// Closed-form EPD² of `Σ_a |a⟩⟨a| ⊗ X^a`, written as
/// `N(d) / ((d+1)⁴ (d+2)² (d+3)²)` with
/// `N(d) = 8d⁵ + 34d⁴ + 8d³ − 38d² − 4d` for even `d` and
/// `N(d) − 2d(d+1)²` for odd `d`. The odd correction comes from the pairs
/// `a ≠ b` with `2(a − b) ≡ 0 mod d`, which exist only for even `d`.
pub fn gcx_epd_squared(d: usize) -> f64 {
    let n = gcx_epd_numerator(d);
    let x = d as f64;
    n / ((x + 1.0).powi(4) * (x + 2.0).powi(2) * (x + 3.0).powi(2))
}

/// Numerator `N(d)` of [`gcx_epd_squared`].
pub fn gcx_epd_numerator(d: usize) -> f64 {
    let x = d as f64;
    let even = 8.0 * x.powi(5) + 34.0 * x.powi(4) + 8.0 * x.powi(3) - 38.0 * x * x - 4.0 * x;
    if d % 2 == 0 {
        even
    } else {
        even - 2.0 * x * (x + 1.0).powi(2)
    }
}

fn kak_ep(b1: f64, b2: f64, b3: f64) -> f64 {
    let (c1, c2, c3) = ((4.0 * b1).cos(), (4.0 * b2).cos(), (4.0 * b3).cos());
    (3.0 - (c1 * c2 + c2 * c3 + c3 * c1)) / 18.0
}

fn kak_epd(b1: f64, b2: f64, b3: f64) -> f64 {
    let (c1, c2, c3) = ((4.0 * b1).cos(), (4.0 * b2).cos(), (4.0 * b3).cos());
    let (e1, e2, e3) = ((8.0 * b1).cos(), (8.0 * b2).cos(), (8.0 * b3).cos());
    let bracket = 57.0 - 4.0 * e2 - 23.0 * c2 * c3
        + c1 * ((e2 - 23.0) * c3 + (e3 - 23.0) * c2)
        + e3 * (7.0 * e2 - 4.0)
        + e1 * (7.0 * e2 + c2 * c3 + 7.0 * e3 - 4.0);
    bracket.max(0.0).sqrt() / (45.0 * SQRT_2)
}

/// Closed-form `(ep, epd)` for a catalog gate.
pub fn closed_form_ep_epd(spec: &GateSpec) -> Result<EpEpdResult> {
    spec.validate()?;
    let sqrt11 = 11f64.sqrt();
    let (ep, epd) = match *spec {
        GateSpec::Cnot => (2.0 / 9.0, 2.0 * sqrt11 / 45.0),
        GateSpec::Cp { theta } => {
            let s = (theta / 2.0).sin().powi(2);
            (2.0 / 9.0 * s, 2.0 * sqrt11 / 45.0 * s)
        }
        GateSpec::Cu { theta, alpha, beta, .. } => {
            let k = 3.0 + (theta / 2.0).cos().powi(2) * (1.0 + (alpha + beta).cos());
            (5.0 / 9.0 - k / 9.0, sqrt11 / 9.0 - sqrt11 / 45.0 * k)
        }
        GateSpec::SwapAlpha { alpha } => {
            let s = (PI * alpha).sin().powi(2);
            (s / 6.0, 5f64.sqrt() / 15.0 * s)
        }
        GateSpec::Iswap { theta, .. } => {
            let s = (theta / 2.0).sin().powi(2);
            let root = (34.0 + 30.0 * theta.cos() + 7.0 * (2.0 * theta).cos()).sqrt();
            (2.0 / 9.0 * s * (2.0 - s), 2.0 / 45.0 * s * root)
        }
        GateSpec::Kak { b1, b2, b3 } => (kak_ep(b1, b2, b3), kak_epd(b1, b2, b3)),
        GateSpec::Swap { .. } => (0.0, 0.0),
        GateSpec::Gcx { d } => (gcx_ep(d), gcx_epd_squared(d).max(0.0).sqrt()),
        GateSpec::F4 => (1.0 / 9.0, sqrt11 / 45.0),
    };
    Ok(EpEpdResult::exact(ep, epd, Method::ClosedForm))
}

/// Closed-form `epd / ep`.
pub fn eta_ratio(spec: &GateSpec) -> Result<f64> {
    let r = closed_form_ep_epd(spec)?;
    if r.ep.abs() <= ETA_EP_FLOOR {
        return Err(Error::UndefinedRatio);
    }
    Ok(r.epd / r.ep)
}

/// Named two-qubit reference points of the canonical parameter cube.
pub fn named_kak_points() -> [(&'static str, GateSpec); 4] {
    let q = PI / 4.0;
    let e = PI / 8.0;
    [
        ("CNOT", GateSpec::Kak { b1: q, b2: 0.0, b3: 0.0 }),
        ("B", GateSpec::Kak { b1: q, b2: e, b3: 0.0 }),
        ("sqrt(SWAP)", GateSpec::Kak { b1: e, b2: e, b3: e }),
        ("F4", GateSpec::Kak { b1: q, b2: q, b3: e }),
    ]
}

/// Closed-form values at one point of the canonical parameter cube.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KakSample {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub ep: f64,
    pub epd: f64,
}

/// `resolution` evenly spaced points covering `[0, π/4]` inclusive.
pub fn kak_axis(resolution: usize) -> Result<Vec<f64>> {
    if resolution < 2 {
        return Err(Error::Domain(format!("resolution {resolution} must be at least 2")));
    }
    let step = (PI / 4.0) / (resolution - 1) as f64;
    Ok((0..resolution).map(|i| i as f64 * step).collect())
}

/// Closed-form EP and EPD over `[0, π/4]³`, with `b1` varying slowest.
///
/// The closed forms depend on the `β_k` only through `cos 4β_k` and
/// `cos 8β_k`, which are even and π/2-periodic, and `[0, π/4]` already
/// sweeps `cos 4β` over its full range `[−1, 1]`. So the cell reaches every
/// attainable `(ep, epd)` pair.
pub fn scan_kak(resolution: usize) -> Result<Vec<KakSample>> {
    use rayon::prelude::*;
    let axis = kak_axis(resolution)?;
    let r = axis.len();
    Ok((0..r * r * r)
        .into_par_iter()
        .map(|i| {
            let (b1, b2, b3) = (axis[i / (r * r)], axis[(i / r) % r], axis[i % r]);
            KakSample {
                b1,
                b2,
                b3,
                ep: kak_ep(b1, b2, b3),
                epd: kak_epd(b1, b2, b3),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_family_round_trips_its_name() {
        for f in GateFamily::ALL {
            assert_eq!(f.name().parse::<GateFamily>().unwrap(), f);
        }
        assert!(matches!("toffoli".parse::<GateFamily>(), Err(Error::UnsupportedFamily(_))));
    }

    #[test]
    fn cu_reproduces_cnot_and_cp() {
        let cnot = build(&GateSpec::Cu { theta: PI, alpha: -PI / 2.0, beta: PI / 2.0, delta: PI / 2.0 }).unwrap();
        assert!(cnot.approx_eq(&build(&GateSpec::Cnot).unwrap(), 1e-15));
        let phi = 0.7;
        let cp = build(&GateSpec::Cu { theta: 0.0, alpha: -phi, beta: 0.0, delta: phi / 2.0 }).unwrap();
        assert!(cp.approx_eq(&build(&GateSpec::Cp { theta: phi }).unwrap(), 1e-15));
    }

    #[test]
    fn swap_alpha_endpoints() {
        let s = build(&GateSpec::SwapAlpha { alpha: 1.0 }).unwrap();
        assert!(s.approx_eq(&build(&GateSpec::Swap { d: 2 }).unwrap(), 1e-15));
        let id = build(&GateSpec::SwapAlpha { alpha: 0.0 }).unwrap();
        assert!(id.approx_eq(&ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn gcx_two_is_cnot() {
        let g = build(&GateSpec::Gcx { d: 2 }).unwrap();
        assert!(g.approx_eq(&build(&GateSpec::Cnot).unwrap(), 0.0));
        assert!((gcx_ep(3) - 0.375).abs() < 1e-15);
        assert!((gcx_epd_squared(2) - 44.0 / 2025.0).abs() < 1e-15);
    }

    #[test]
    fn catalog_is_unitary() {
        let specs = [
            GateSpec::Cnot,
            GateSpec::Cp { theta: 1.1 },
            GateSpec::Cu { theta: 0.4, alpha: 1.3, beta: -0.2, delta: 0.9 },
            GateSpec::SwapAlpha { alpha: 0.3 },
            GateSpec::Iswap { theta: 2.0, phi: 0.5 },
            GateSpec::Kak { b1: 0.3, b2: -0.8, b3: 2.0 },
            GateSpec::Swap { d: 3 },
            GateSpec::Gcx { d: 4 },
            GateSpec::F4,
        ];
        for s in specs {
            assert!(build(&s).unwrap().is_unitary(1e-12), "{s}");
        }
    }

    #[test]
    fn range_checks() {
        assert!(build(&GateSpec::SwapAlpha { alpha: 1.5 }).is_err());
        assert!(build(&GateSpec::Gcx { d: 1 }).is_err());
        assert!(build(&GateSpec::Cp { theta: f64::NAN }).is_err());
        assert!(build(&GateSpec::Iswap { theta: 4.0, phi: 0.0 }).is_err());
    }

    #[test]
    fn kak_matches_pauli_exponential() {
        // exp(−i Σ β_k σ_k⊗σ_k) = Π_k (cos β_k 𝟙 − i sin β_k σ_k⊗σ_k) since the terms commute.
        let z = real(0.0);
        let o = real(1.0);
        let paulis = [
            ComplexMatrix::from_rows(&[vec![z, o], vec![o, z]]).unwrap(),
            ComplexMatrix::from_rows(&[vec![z, -I], vec![I, z]]).unwrap(),
            ComplexMatrix::from_rows(&[vec![o, z], vec![z, -o]]).unwrap(),
        ];
        let betas: [f64; 3] = [0.37, -1.2, 0.81];
        let mut u = ComplexMatrix::identity(4);
        for (b, p) in betas.iter().zip(&paulis) {
            let pp = crate::tensor::kron(p, p);
            u = u.matmul(&(&ComplexMatrix::identity(4).scale_real(b.cos()) + &pp.scale(-I * b.sin())));
        }
        let k = build(&GateSpec::Kak { b1: betas[0], b2: betas[1], b3: betas[2] }).unwrap();
        assert!(k.approx_eq(&u, 1e-14));
    }

    #[test]
    fn scan_corners() {
        let rows = scan_kak(2).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.ep.is_finite() && r.epd.is_finite()));
        assert!(scan_kak(1).is_err());
    }

    #[test]
    fn eta_constants() {
        let cu = GateSpec::Cu { theta: 1.0, alpha: 0.2, beta: 0.3, delta: 0.0 };
        assert!((eta_ratio(&cu).unwrap() - 11f64.sqrt() / 5.0).abs() < 1e-12);
        let sa = GateSpec::SwapAlpha { alpha: 0.2 };
        assert!((eta_ratio(&sa).unwrap() - 2.0 * 5f64.sqrt() / 5.0).abs() < 1e-12);
        let is = GateSpec::Iswap { theta: PI / 2.0, phi: 0.0 };
        assert!((eta_ratio(&is).unwrap() - 2.0 * 27f64.sqrt() / 15.0).abs() < 1e-12);
        assert!(matches!(eta_ratio(&GateSpec::Swap { d: 2 }), Err(Error::UndefinedRatio)));
    }
}
