//! Closed-form landscape over the canonical cube, with its upper frontier.

use entangling_power::gates::scan_kak;

fn main() -> entangling_power::Result<()> {
    let resolution = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(21);
    let samples = scan_kak(resolution)?;
    let by = |f: fn(&entangling_power::gates::KakSample) -> f64| {
        *samples.iter().max_by(|a, b| f(a).total_cmp(&f(b))).expect("nonempty grid")
    };
    let top_ep = by(|s| s.ep);
    let top_epd = by(|s| s.epd);
    println!("{} points at resolution {resolution}", samples.len());
    println!("max ep  {:.10} at ({:.4}, {:.4}, {:.4})", top_ep.ep, top_ep.b1, top_ep.b2, top_ep.b3);
    println!("max epd {:.10} at ({:.4}, {:.4}, {:.4})", top_epd.epd, top_epd.b1, top_epd.b2, top_epd.b3);

    // Largest EPD seen in each EP bin.
    let bins = 12;
    let mut frontier = vec![0f64; bins];
    for s in &samples {
        let b = ((s.ep / (2.0 / 9.0)) * bins as f64).min(bins as f64 - 1.0) as usize;
        frontier[b] = frontier[b].max(s.epd);
    }
    for (b, epd) in frontier.iter().enumerate() {
        let ep = (b as f64 + 0.5) / bins as f64 * 2.0 / 9.0;
        println!("ep ≈ {ep:.4}  max epd {epd:.6}  {}", "#".repeat((epd * 300.0) as usize));
    }
    Ok(())
}
