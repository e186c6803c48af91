//! Sampling estimate of EP (mean entropy) and EPD (its standard deviation)
//! against the exact values.

use entangling_power::engine::exact_cycle;
use entangling_power::gates::{build, GateSpec};
use entangling_power::mc::{estimate_ep_epd, SamplerConfig};

fn main() -> entangling_power::Result<()> {
    let samples = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100_000);
    for spec in [GateSpec::Cnot, GateSpec::SwapAlpha { alpha: 0.5 }, GateSpec::Gcx { d: 3 }] {
        let dims = spec.dims();
        let u = build(&spec)?;
        let exact = exact_cycle(&u, dims.0, dims.1)?;
        let mc = estimate_ep_epd(&u, &SamplerConfig { seed: 7, samples, dims })?;
        println!("{spec}");
        println!(
            "  mean {:.6} ± {:.6}  exact ep  {:.6}  ({:+.2} se)",
            mc.mean,
            mc.se_mean,
            exact.ep,
            (mc.mean - exact.ep) / mc.se_mean
        );
        println!(
            "  std  {:.6} ± {:.6}  exact epd {:.6}  ({:+.2} se)",
            mc.std,
            mc.se_std,
            exact.epd,
            (mc.std - exact.epd) / mc.se_std
        );
    }
    Ok(())
}
