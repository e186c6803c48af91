//! Round-trips a user matrix through the JSON file format and evaluates it.
//!
//! Pass a path to evaluate an existing file instead.

use entangling_power::engine::{check_vanishing_conditions, exact_gram, operator_entanglement};
use entangling_power::gates::{build, GateSpec};
use entangling_power::tensor::{read_matrix_file, write_matrix_file};

fn main() -> entangling_power::Result<()> {
    let path = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let p = std::env::temp_dir().join("cu_gate.json");
            let u = build(&GateSpec::Cu { theta: 1.2, alpha: 0.4, beta: -0.7, delta: 0.0 })?;
            write_matrix_file(&p, &u, &[2, 2])?;
            p
        }
    };
    let (u, layout) = read_matrix_file(&path)?;
    let (d1, d2) = match layout.dims() {
        &[a, b] => (a, b),
        dims => return Err(entangling_power::Error::Format(format!("expected two subsystems, got {dims:?}"))),
    };
    let r = exact_gram(&u, d1, d2)?;
    let (e, e_swapped) = operator_entanglement(&u, d1, d2)?;
    let vanish = check_vanishing_conditions(&u, d1, d2)?;
    println!("{}: d1={d1} d2={d2}", path.display());
    println!("ep {:.10}  epd {:.10}  eta {:?}", r.ep, r.epd, r.eta());
    println!("operator entanglement {e:.6} / {e_swapped:.6}");
    println!(
        "commutes with P+13: {}  with P+13 P+24: {}",
        vanish.condition_i, vanish.condition_ii
    );
    Ok(())
}
