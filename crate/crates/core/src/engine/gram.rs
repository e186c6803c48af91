//! Well-conditioned evaluation through `K = P⁻₁₃ U⊗² P⁺₁₃P⁺₂₄`.
//!
//! With `G = K†K` the output linear entropy of a product input `x` is
//! `2 x†⊗x† G x⊗x`, so `EP = 2‖K‖²_F / Tr(P⁺₁₃P⁺₂₄)` and
//! `E[E²] = 4 Tr((G⊗G) Ω⁽⁴⁾)`. For nearly local gates `K` itself is nearly
//! zero, so both moments stay accurate down to the rounding floor instead of
//! emerging from a cancellation between O(1) sums.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use super::two_copy::check_gate;
use crate::error::{Error, Result};
use crate::perm::{basis_map, Permutation};
use crate::reduce::tree_sum;
use crate::tensor::{contract_network, kron, ComplexMatrix, Leg, NetworkNode, SubsystemLayout};

/// Largest `d1 d2` accepted by the Gram route.
pub const GRAM_MAX_DIM: usize = 36;

/// `K = P⁻₁₃ U⊗² P⁺₁₃P⁺₂₄` on the 2-copy layout.
pub(crate) fn gram_factor(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    let layout = SubsystemLayout::bipartite_copies(d1, d2, 2)?;
    let t13 = basis_map(&Permutation::transposition(4, 0, 2)?, &layout)?;
    let t24 = basis_map(&Permutation::transposition(4, 1, 3)?, &layout)?;
    let u2 = kron(u, u);
    let n = u2.rows();
    // Right factor: (1/4)(1 + T₁₃)(1 + T₂₄) acting on columns.
    let both: Vec<usize> = t13.iter().map(|&j| t24[j]).collect();
    let right = ComplexMatrix::from_fn(n, n, |i, j| {
        (u2[(i, j)] + u2[(i, t13[j])] + u2[(i, t24[j])] + u2[(i, both[j])]) * 0.25
    });
    // Left factor: (1/2)(1 − T₁₃) acting on rows; T₁₃ is an involution.
    Ok(ComplexMatrix::from_fn(n, n, |i, j| {
        (right[(i, j)] - right[(t13[i], j)]) * 0.5
    }))
}

fn sym_pair_dim(d1: usize, d2: usize) -> f64 {
    (d1 * (d1 + 1) * d2 * (d2 + 1)) as f64 / 4.0
}

/// EP as `2‖K‖²_F / Tr(P⁺₁₃P⁺₂₄)`.
pub(crate) fn ep_from_factor(k: &ComplexMatrix, d1: usize, d2: usize) -> f64 {
    2.0 * k.frobenius_norm_sqr() / sym_pair_dim(d1, d2)
}

/// Classes of `σ ∈ S_odd × S_even` on 8 wires under the symmetries of
/// `Tr((G⊗G) V(σ))`: `G` absorbs `T₁₃`, `T₂₄` on either side within each
/// 2-copy block, and the two blocks may be exchanged.
fn sigma_classes() -> Vec<(Permutation, usize)> {
    let odd = [0, 2, 4, 6];
    let even = [1, 3, 5, 7];
    let s4 = Permutation::all(4);
    let swaps = [
        Permutation::transposition(8, 0, 2).expect("valid"),
        Permutation::transposition(8, 1, 3).expect("valid"),
        Permutation::transposition(8, 4, 6).expect("valid"),
        Permutation::transposition(8, 5, 7).expect("valid"),
    ];
    let mut block_group = Vec::with_capacity(16);
    for mask in 0..16u32 {
        let mut h = Permutation::identity(8);
        for (b, s) in swaps.iter().enumerate() {
            if mask & (1 << b) != 0 {
                h = h.compose(s);
            }
        }
        block_group.push(h);
    }
    let exchange = Permutation::from_image(vec![4, 5, 6, 7, 0, 1, 2, 3]).expect("valid");
    let mut classes: BTreeMap<Permutation, usize> = BTreeMap::new();
    for n1 in &s4 {
        let a = n1.embed(&odd, 8).expect("valid");
        for n2 in &s4 {
            let sigma = a.compose(&n2.embed(&even, 8).expect("valid"));
            let mut key: Option<Permutation> = None;
            for h1 in &block_group {
                for h2 in &block_group {
                    let p = h1.compose(&sigma).compose(h2);
                    let q = p.conjugate_by(&exchange);
                    let m = p.min(q);
                    if key.as_ref().is_none_or(|k| m < *k) {
                        key = Some(m);
                    }
                }
            }
            *classes.entry(key.expect("nonempty")).or_default() += 1;
        }
    }
    classes.into_iter().collect()
}

/// `Tr((G⊗G) V(σ))` as a two-node network.
fn paired_gram_trace(g: &ComplexMatrix, d1: usize, d2: usize, sigma: &Permutation) -> Result<Complex64> {
    let dim = |w: usize| if w % 2 == 0 { d1 } else { d2 };
    let inv = sigma.inverse();
    let nodes: Vec<NetworkNode> = (0..2)
        .map(|k| {
            let wires = 4 * k..4 * k + 4;
            NetworkNode::new(
                g.clone(),
                wires.clone().map(|w| Leg::new(inv.apply(w), dim(w))).collect(),
                wires.map(|w| Leg::new(w, dim(w))).collect(),
            )
        })
        .collect();
    contract_network(&nodes)
}

/// EP and EPD through the Gram factor.
pub(crate) fn gram_ep_epd(u: &ComplexMatrix, d1: usize, d2: usize) -> Result<(f64, f64)> {
    check_gate(u, d1, d2)?;
    if d1 * d2 > GRAM_MAX_DIM {
        return Err(Error::Feasibility(format!(
            "d1·d2 = {} exceeds the Gram route limit {GRAM_MAX_DIM}",
            d1 * d2
        )));
    }
    let k = gram_factor(u, d1, d2)?;
    let ep = ep_from_factor(&k, d1, d2);
    let g = k.adjoint().matmul(&k);
    static CLASSES: OnceLock<Vec<(Permutation, usize)>> = OnceLock::new();
    let classes = CLASSES.get_or_init(sigma_classes);
    let parts: Vec<f64> = classes
        .par_iter()
        .map(|(s, m)| Ok(paired_gram_trace(&g, d1, d2, s)?.re * *m as f64))
        .collect::<Result<_>>()?;
    let sym4 = |d: usize| (d * (d + 1) * (d + 2) * (d + 3)) as f64 / 24.0;
    let second = 4.0 * tree_sum(&parts, 0.0) / (576.0 * sym4(d1) * sym4(d2));
    let radicand = second - ep * ep;
    if radicand < -super::RADICAND_CLAMP {
        return Err(Error::Consistency(format!("EPD radicand {radicand:e} is negative")));
    }
    Ok((ep, radicand.max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_cover_the_sum() {
        let c = sigma_classes();
        assert_eq!(c.iter().map(|(_, m)| m).sum::<usize>(), 576);
        assert!(c.len() < 40, "{} classes", c.len());
    }
}
