//! Permutations, their operators, and exact (anti)symmetrizers.

use entangling_power::perm::{permutation_trace, realize, symmetric_projector, Permutation, ProjectorSign};
use entangling_power::tensor::SubsystemLayout;

fn main() -> entangling_power::Result<()> {
    let a = Permutation::parse_cycles("(13)(57)", 8)?;
    let b = Permutation::parse_cycles("(1357)", 8)?;
    println!("a = {a}, b = {b}, a∘b = {}, sign(b) = {}", a.compose(&b), b.sign());

    let layout = SubsystemLayout::new(vec![2, 3, 2, 3])?;
    let t13 = Permutation::parse_cycles("(13)", 4)?;
    let v = realize(&t13, &layout)?;
    println!("V(13) on 2⊗3⊗2⊗3: {}x{}, trace {}", v.rows(), v.cols(), permutation_trace(&t13, &layout)?);

    let sym = symmetric_projector(4, &[0, 2], ProjectorSign::Symmetric)?;
    let anti = symmetric_projector(4, &[0, 2], ProjectorSign::Antisymmetric)?;
    println!("P+ idempotent: {}", sym.multiply(&sym) == sym);
    println!("P+ P- = 0: {}", sym.multiply(&anti).is_zero());

    for d in 2..=3 {
        for k in 2..=4 {
            let p = symmetric_projector(k, &(0..k).collect::<Vec<_>>(), ProjectorSign::Symmetric)?;
            let tr = p.trace(&SubsystemLayout::new(vec![d; k])?)?;
            println!("Tr P_sym(d={d}, κ={k}) = {tr}");
        }
    }
    Ok(())
}
