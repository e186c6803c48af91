//! EP and EPD of the named two-qubit gates, by every exact route.

use entangling_power::engine::{exact_cycle, exact_dense, exact_gram};
use entangling_power::gates::{build, closed_form_ep_epd, named_kak_points};

fn main() -> entangling_power::Result<()> {
    println!("{:<12} {:>14} {:>14} {:>14} {:>10}", "gate", "ep", "epd", "epd/ep", "max |Δ|");
    for (name, spec) in named_kak_points() {
        let u = build(&spec)?;
        let closed = closed_form_ep_epd(&spec)?;
        let routes = [exact_dense(&u, 2, 2)?, exact_cycle(&u, 2, 2)?, exact_gram(&u, 2, 2)?];
        let worst = routes
            .iter()
            .map(|r| (r.ep - closed.ep).abs().max((r.epd - closed.epd).abs()))
            .fold(0.0, f64::max);
        println!(
            "{name:<12} {:>14.10} {:>14.10} {:>14.10} {worst:>10.1e}",
            closed.ep,
            closed.epd,
            closed.epd / closed.ep
        );
    }
    Ok(())
}
