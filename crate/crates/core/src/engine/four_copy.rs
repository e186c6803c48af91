use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::two_copy::{check_gate, ep_exact};
use crate::error::{Error, Result};
use crate::haar::{moment_constants, omega};
use crate::perm::{permutation_trace, rational_to_f64, symmetric_projector, Permutation, ProjectorSign, Rational};
use crate::reduce::tree_sum;
use crate::tensor::{contract_network, kron_power, ComplexMatrix, Leg, NetworkNode, SubsystemLayout};

/// Largest `d1 d2` accepted by the dense 4-copy oracle.
pub const DENSE_MAX_DIM: usize = 4;
/// Largest `d1 d2` accepted by the network path.
pub const CYCLE_MAX_DIM: usize = 64;
/// Radicands in `[−RADICAND_CLAMP, 0)` are rounded up to zero.
pub const RADICAND_CLAMP: f64 = 1e-9;

/// One term `c · Tr(U⊗⁴ V(σ) U†⊗⁴ V(τ))` of the 4-copy sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTerm {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub coefficient: Rational,
}

impl TraceTerm {
    pub fn evaluate(&self, u: &ComplexMatrix, d1: usize, d2: usize) -> Result<Complex64> {
        Ok(copy_trace(u, d1, d2, &self.sigma, &self.tau)? * rational_to_f64(self.coefficient))
    }
}

/// All terms of `F_id − 2F₍₁₃₎ + F₍₁₃₎₍₅₇₎`, where
/// `F_π = Σ_{ν₁∈S_odd, ν₂∈S_even} Tr(U⊗⁴ V(ν₁∘ν₂) U†⊗⁴ V(π))`.
pub fn epd_trace_terms() -> Vec<TraceTerm> {
    let odd = [0, 2, 4, 6];
    let even = [1, 3, 5, 7];
    let taus = [
        (Permutation::identity(8), 1),
        (Permutation::transposition(8, 0, 2).expect("valid"), -2),
        (
            Permutation::from_cycles(8, &[&[0, 2], &[4, 6]]).expect("valid"),
            1,
        ),
    ];
    let s4 = Permutation::all(4);
    let mut terms = Vec::with_capacity(3 * 576);
    for (tau, c) in &taus {
        for n1 in &s4 {
            let a = n1.embed(&odd, 8).expect("valid");
            for n2 in &s4 {
                let b = n2.embed(&even, 8).expect("valid");
                terms.push(TraceTerm {
                    sigma: a.compose(&b),
                    tau: tau.clone(),
                    coefficient: Rational::from_integer(*c),
                });
            }
        }
    }
    terms
}

/// `Tr(U⊗κ V(σ) U†⊗κ V(τ))` for σ, τ on the `2κ` single-subsystem wires,
/// contracted as a network of κ copies of `U` and κ of `U†`.
pub fn copy_trace(
    u: &ComplexMatrix,
    d1: usize,
    d2: usize,
    sigma: &Permutation,
    tau: &Permutation,
) -> Result<Complex64> {
    if u.rows() != d1 * d2 || !u.is_square() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix for local dimensions {d1}x{d2}",
            u.rows(),
            u.cols()
        )));
    }
    let wires = sigma.degree();
    if wires % 2 != 0 || tau.degree() != wires {
        return Err(Error::Network(format!(
            "wire permutations of degree {} and {} on a bipartite copy space",
            sigma.degree(),
            tau.degree()
        )));
    }
    let copies = wires / 2;
    let dim = |w: usize| if w % 2 == 0 { d1 } else { d2 };
    // Row indices of U⊗κ are labelled a_w = w, row indices of U†⊗κ are
    // c_w = wires + w. V(σ) ties U's column index on wire w to c_{σ⁻¹(w)};
    // V(τ) ties U†'s column index on wire w to a_{τ⁻¹(w)}.
    let sigma_inv = sigma.inverse();
    let tau_inv = tau.inverse();
    let u_dag = u.adjoint();
    let mut nodes = Vec::with_capacity(2 * copies);
    for k in 0..copies {
        let (w0, w1) = (2 * k, 2 * k + 1);
        nodes.push(NetworkNode::new(
            u.clone(),
            vec![
                Leg::new(wires + sigma_inv.apply(w0), dim(w0)),
                Leg::new(wires + sigma_inv.apply(w1), dim(w1)),
            ],
            vec![Leg::new(w0, d1), Leg::new(w1, d2)],
        ));
        nodes.push(NetworkNode::new(
            u_dag.clone(),
            vec![
                Leg::new(tau_inv.apply(w0), dim(w0)),
                Leg::new(tau_inv.apply(w1), dim(w1)),
            ],
            vec![Leg::new(wires + w0, d1), Leg::new(wires + w1, d2)],
        ));
    }
    contract_network(&nodes)
}

/// Wire permutation induced by permuting whole copies: `2k+s ↦ 2g(k)+s`.
fn lift_copy_permutation(g: &Permutation) -> Permutation {
    let image = (0..2 * g.degree()).map(|w| 2 * g.apply(w / 2) + w % 2).collect();
    Permutation::from_image(image).expect("lift of a bijection")
}

/// Groups terms whose `(σ, τ)` pairs are simultaneously conjugate under a
/// copy permutation. `U⊗⁴` commutes with such permutations, so every pair in
/// a class has the same trace. Terms with `τ = id` are returned separately
/// because `Tr(U⊗⁴ V(σ) U†⊗⁴) = Tr V(σ)`.
fn classify(terms: &[TraceTerm]) -> TermClasses {
    let lifts: Vec<Permutation> = Permutation::all(4).iter().map(lift_copy_permutation).collect();
    let mut identity_terms: BTreeMap<Permutation, Rational> = BTreeMap::new();
    let mut classes: BTreeMap<(Permutation, Permutation), Rational> = BTreeMap::new();
    for t in terms {
        if t.tau.is_identity() {
            *identity_terms.entry(t.sigma.clone()).or_default() += t.coefficient;
            continue;
        }
        let key = lifts
            .iter()
            .map(|g| (t.sigma.conjugate_by(g), t.tau.conjugate_by(g)))
            .min()
            .expect("nonempty group");
        *classes.entry(key).or_default() += t.coefficient;
    }
    classes.retain(|_, c| *c != Rational::from_integer(0));
    (identity_terms.into_iter().collect(), classes.into_iter().collect())
}

type TermClasses = (Vec<(Permutation, Rational)>, Vec<((Permutation, Permutation), Rational)>);

fn term_classes() -> &'static TermClasses {
    static CLASSES: OnceLock<TermClasses> = OnceLock::new();
    CLASSES.get_or_init(|| classify(&epd_trace_terms()))
}

/// `F_id − 2F₍₁₃₎ + F₍₁₃₎₍₅₇₎` through network contractions.
fn f_combination(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<f64> {
    let layout = SubsystemLayout::bipartite_copies(d1, d2, 4)?;
    let (identity_terms, classes) = term_classes();
    let id_parts: Vec<f64> = identity_terms
        .iter()
        .map(|(s, c)| Ok(rational_to_f64(*c) * permutation_trace(s, &layout)?))
        .collect::<Result<_>>()?;
    let parts: Vec<Complex64> = classes
        .par_iter()
        .map(|((s, t), c)| Ok(copy_trace(u, d1, d2, s, t)? * rational_to_f64(*c)))
        .collect::<Result<_>>()?;
    let total = tree_sum(&parts, Complex64::new(0.0, 0.0));
    Ok(tree_sum(&id_parts, 0.0) + total.re)
}

fn finish(radicand: f64) -> Result<f64> {
    if radicand < -RADICAND_CLAMP {
        return Err(Error::Consistency(format!("EPD radicand {radicand:e} is negative")));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// EPD via the permutation-sum network path.
pub fn epd_exact_cycle(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<f64> {
    let ep = ep_exact(u, d1, d2)?;
    epd_cycle_given_ep(u, d1, d2, ep)
}

pub(super) fn epd_cycle_given_ep(u: &ComplexMatrix, d1: usize, d2: usize, ep: f64) -> Result<f64> {
    check_gate(u, d1, d2)?;
    if d1 * d2 > CYCLE_MAX_DIM {
        return Err(Error::Feasibility(format!(
            "d1·d2 = {} exceeds the network path limit {CYCLE_MAX_DIM}",
            d1 * d2
        )));
    }
    let (_, dd1) = moment_constants(d1)?;
    let (_, dd2) = moment_constants(d2)?;
    let f = f_combination(u, d1, d2)?;
    finish(rational_to_f64(dd1 * dd2) * f - ep * ep)
}

/// EPD via `√(4 Tr(U⊗⁴ Ω⁽⁴⁾ U†⊗⁴ P⁻₁₃ P⁻₅₇) − ep²)` with every operator
/// realized densely on `(d1 d2)⁴` dimensions.
pub fn epd_exact_dense(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<f64> {
    let ep = ep_exact(u, d1, d2)?;
    epd_dense_given_ep(u, d1, d2, ep)
}

pub(super) fn epd_dense_given_ep(u: &ComplexMatrix, d1: usize, d2: usize, ep: f64) -> Result<f64> {
    check_gate(u, d1, d2)?;
    if d1 * d2 > DENSE_MAX_DIM {
        return Err(Error::Feasibility(format!(
            "d1·d2 = {} exceeds the dense 4-copy limit {DENSE_MAX_DIM}; use the cycle path",
            d1 * d2
        )));
    }
    let w = omega(4, d1, d2)?;
    let u4 = kron_power(u, 4);
    let evolved = u4.matmul(&w.realize()?).matmul(&u4.adjoint());
    let p13 = symmetric_projector(8, &[0, 2], ProjectorSign::Antisymmetric)?;
    let p57 = symmetric_projector(8, &[4, 6], ProjectorSign::Antisymmetric)?;
    let p = p13.multiply(&p57).realize(w.layout())?;
    let n = evolved.rows();
    let mut t = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            t += evolved[(i, j)] * p[(j, i)];
        }
    }
    finish(4.0 * t.re - ep * ep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_count_and_classes() {
        let terms = epd_trace_terms();
        assert_eq!(terms.len(), 1728);
        let (ids, classes) = classify(&terms);
        assert_eq!(ids.len(), 576);
        assert!(classes.len() < 1152 / 4, "{} classes", classes.len());
        // Class coefficients add back to the raw totals: 576·(−2) + 576·1.
        let total: Rational = classes.iter().map(|(_, c)| *c).sum();
        assert_eq!(total, Rational::from_integer(-576));
    }

    #[test]
    fn lift_moves_whole_copies() {
        let g = Permutation::parse_cycles("(12)", 4).unwrap();
        assert_eq!(lift_copy_permutation(&g).to_string(), "(13)(24)");
    }

    #[test]
    fn clamp_window() {
        assert_eq!(finish(-5e-10).unwrap(), 0.0);
        assert!(matches!(finish(-2e-9), Err(Error::Consistency(_))));
        assert_eq!(finish(0.25).unwrap(), 0.5);
    }
}
