//! The EPD-to-EP ratio η along the one-parameter gate families.
//!
//! Controlled-unitary and fractional-SWAP families keep η fixed; partial
//! iSWAP does not.

use std::f64::consts::PI;

use entangling_power::engine::exact_cycle;
use entangling_power::gates::{build, GateSpec};

fn eta(spec: GateSpec) -> entangling_power::Result<f64> {
    let r = exact_cycle(&build(&spec)?, 2, 2)?;
    Ok(r.epd / r.ep)
}

fn main() -> entangling_power::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "cu", "swap_alpha", "iswap");
    for k in 1..=10 {
        let t = k as f64 / 10.0;
        let cu = eta(GateSpec::Cu { theta: PI * t, alpha: 0.3, beta: 1.1, delta: 0.0 })?;
        let sa = eta(GateSpec::SwapAlpha { alpha: 0.5 * t })?;
        let is = eta(GateSpec::Iswap { theta: PI * t, phi: 0.0 })?;
        println!("{t:>6.2} {cu:>12.9} {sa:>12.9} {is:>12.9}");
    }
    println!("sqrt(11)/5 = {:.9}, 2 sqrt(5)/5 = {:.9}", 11f64.sqrt() / 5.0, 2.0 * 5f64.sqrt() / 5.0);
    Ok(())
}
