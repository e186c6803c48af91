//! Empirical moments of Haar-random states converge to the normalized
//! symmetric projector.

use entangling_power::haar::{omega, pure_state_haar_average};
use entangling_power::mc::empirical_moment;
use entangling_power::tensor::SubsystemLayout;

fn main() -> entangling_power::Result<()> {
    let (d, kappa) = (2, 2);
    let (sum, norm) = pure_state_haar_average(d, kappa)?;
    let exact = sum
        .realize(&SubsystemLayout::new(vec![d; kappa])?)?
        .scale_real(*norm.numer() as f64 / *norm.denom() as f64);
    for samples in [1_000, 10_000, 100_000] {
        let emp = empirical_moment(d, kappa, samples, 3);
        println!("{samples:>7} samples: max deviation {:.2e}", emp.max_abs_diff(&exact));
    }
    for order in [2, 4] {
        let w = omega(order, 2, 2)?;
        println!(
            "order {order}: {} permutation terms, prefactor {}, trace {}",
            w.sum().len(),
            w.prefactor(),
            w.trace()?
        );
    }
    Ok(())
}
