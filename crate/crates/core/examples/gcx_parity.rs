//! Generalized controlled shift on qudits: EP follows d(d−1)/(d+1)², while
//! EPD splits into separate even and odd branches.

use entangling_power::engine::exact_cycle;
use entangling_power::gates::{build, gcx_epd_numerator, GateSpec};

fn main() -> entangling_power::Result<()> {
    println!("{:>3} {:>12} {:>12} {:>14} {:>10}", "d", "ep", "epd", "scaled epd²", "gap");
    for d in 2..=6usize {
        let r = exact_cycle(&build(&GateSpec::Gcx { d })?, d, d)?;
        let x = d as f64;
        let scale = (x + 1.0).powi(4) * (x + 2.0).powi(2) * (x + 3.0).powi(2);
        let even = 8.0 * x.powi(5) + 34.0 * x.powi(4) + 8.0 * x.powi(3) - 38.0 * x * x - 4.0 * x;
        let scaled = r.epd * r.epd * scale;
        println!(
            "{d:>3} {:>12.9} {:>12.9} {scaled:>14.6} {:>10.4}",
            r.ep,
            r.epd,
            even - scaled
        );
        assert!((scaled - gcx_epd_numerator(d)).abs() < 1e-6 * scale);
    }
    println!("odd d sit 2d(d+1)² below the even-d polynomial");
    Ok(())
}
