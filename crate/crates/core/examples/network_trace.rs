//! Traces of permuted tensor products, by cycle reduction and by network
//! contraction.

use entangling_power::engine::cycle_trace;
use entangling_power::perm::{realize, Permutation};
use entangling_power::tensor::{contract_network, kron, ComplexMatrix, Leg, NetworkNode, SubsystemLayout};
use num_complex::Complex64;

fn main() -> entangling_power::Result<()> {
    let m = |s: f64| ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new((i + 2 * j) as f64 * s, (i as f64 - j as f64) * 0.1));
    let factors = [m(0.3), m(-0.2), m(0.5)];
    let pi = Permutation::parse_cycles("(123)", 3)?;

    // Tr((A⊗B⊗C) V(π)) collapses to a product of traces over cycles.
    let fast = cycle_trace(&factors, &pi)?;
    let product = kron(&kron(&factors[0], &factors[1]), &factors[2]);
    let dense = product.matmul(&realize(&pi, &SubsystemLayout::new(vec![3; 3])?)?).trace();
    println!("cycle reduction {fast:.6}");
    println!("dense           {dense:.6}");

    // The same loop as three connected nodes.
    let nodes: Vec<NetworkNode> = (0..3)
        .map(|k| NetworkNode::new(factors[k].clone(), vec![Leg::new((k + 2) % 3, 3)], vec![Leg::new(k, 3)]))
        .collect();
    println!("network         {:.6}", contract_network(&nodes)?);
    Ok(())
}
