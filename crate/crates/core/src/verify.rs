//! Self-check suite behind `epd verify`.
//!
//! Each criterion compares engine output with reference values and reports
//! every individual comparison, so a failure shows exactly which value
//! drifted and by how much.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::engine::{self, cycle_trace, exact_cycle, exact_dense, exact_gram};
use crate::error::Result;
use crate::gates::{build, closed_form_ep_epd, gcx_epd_numerator, named_kak_points, scan_kak, GateSpec};
use crate::haar::pure_state_haar_average;
use crate::mc::{estimate_ep_epd, sample_haar_special_unitary, sample_haar_unitary, sample_rng, SamplerConfig};
use crate::perm::{realize, symmetric_projector, Permutation, ProjectorSign};
use crate::tensor::{kron, ComplexMatrix, SubsystemLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub level: Level,
    pub seed: u64,
    pub samples: usize,
    /// Evaluates EP with the symmetric projector in place of the
    /// antisymmetric one, to confirm the suite catches that mistake.
    pub flip_projector_sign: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            level: Level::Quick,
            seed: 1,
            samples: 100_000,
            flip_projector_sign: false,
        }
    }
}

/// One comparison. `passed` means `|computed − expected| ≤ tolerance`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub expected: f64,
    pub computed: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn close(label: impl Into<String>, expected: f64, computed: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            expected,
            computed,
            tolerance,
            passed: (computed - expected).abs() <= tolerance,
        }
    }

    /// Passes when `computed ≤ limit`.
    pub fn at_most(label: impl Into<String>, computed: f64, limit: f64) -> Self {
        Self {
            label: label.into(),
            expected: limit,
            computed,
            tolerance: 0.0,
            passed: computed <= limit,
        }
    }

    pub fn holds(label: impl Into<String>, ok: bool) -> Self {
        Self {
            label: label.into(),
            expected: 1.0,
            computed: if ok { 1.0 } else { 0.0 },
            tolerance: 0.0,
            passed: ok,
        }
    }

    pub fn delta(&self) -> f64 {
        (self.computed - self.expected).abs()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Criteria run at each level.
pub fn criteria(level: Level) -> Vec<u32> {
    match level {
        Level::Quick => vec![1, 2, 3, 7],
        Level::Full => (1..=8).collect(),
    }
}

pub fn title(id: u32) -> &'static str {
    match id {
        1 => "reference gate table",
        2 => "EP-to-EPD ratios",
        3 => "vanishing cases",
        4 => "dense and network paths agree",
        5 => "Monte Carlo concordance",
        6 => "generalized CX and parity",
        7 => "KAK landscape",
        8 => "algebraic property suites",
        _ => "unknown",
    }
}

pub fn run(opts: &VerifyOptions) -> Result<Vec<CriterionReport>> {
    criteria(opts.level).into_iter().map(|id| run_criterion(id, opts)).collect()
}

pub fn run_criterion(id: u32, opts: &VerifyOptions) -> Result<CriterionReport> {
    let start = Instant::now();
    let checks = match id {
        1 => reference_table(opts)?,
        2 => ratios()?,
        3 => vanishing(opts)?,
        4 => oracle_agreement(opts)?,
        5 => monte_carlo(opts)?,
        6 => generalized_cx()?,
        7 => landscape()?,
        8 => properties(opts)?,
        _ => vec![Check::holds(format!("criterion {id} exists"), false)],
    };
    Ok(CriterionReport {
        id,
        title: title(id),
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn ep_for(u: &ComplexMatrix, d1: usize, d2: usize, opts: &VerifyOptions) -> Result<f64> {
    if opts.flip_projector_sign {
        engine::ep_exact_with_sign(u, d1, d2, ProjectorSign::Symmetric)
    } else {
        engine::ep_exact(u, d1, d2)
    }
}

fn reference_table(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s11 = 11f64.sqrt();
    let expected = [
        (2.0 / 9.0, 2.0 * s11 / 45.0),
        (2.0 / 9.0, (7.0f64 / 5.0).sqrt() / 9.0),
        (1.0 / 6.0, 1.0 / (3.0 * 5f64.sqrt())),
        (1.0 / 9.0, s11 / 45.0),
    ];
    let mut gates: Vec<(String, ComplexMatrix, (f64, f64))> = named_kak_points()
        .iter()
        .zip(expected)
        .map(|((name, spec), e)| Ok((name.to_string(), build(spec)?, e)))
        .collect::<Result<_>>()?;
    gates.push(("CNOT matrix".into(), build(&GateSpec::Cnot)?, expected[0]));
    gates.push(("F4 Fourier matrix".into(), build(&GateSpec::F4)?, expected[3]));
    let mut out = Vec::new();
    for (name, u, (ep, epd)) in &gates {
        out.push(Check::close(format!("{name} ep"), *ep, ep_for(u, 2, 2, opts)?, 1e-9));
        let dense = exact_dense(u, 2, 2)?;
        let cycle = exact_cycle(u, 2, 2)?;
        out.push(Check::close(format!("{name} epd dense"), *epd, dense.epd, 1e-9));
        out.push(Check::close(format!("{name} epd cycle"), *epd, cycle.epd, 1e-9));
    }
    Ok(out)
}

fn ratios() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let eta = |spec: &GateSpec| -> Result<f64> {
        let r = exact_cycle(&build(spec)?, 2, 2)?;
        Ok(r.epd / r.ep)
    };
    let mut cu_dev: f64 = 0.0;
    let mut sa_dev: f64 = 0.0;
    let mut is_dev: f64 = 0.0;
    for i in 0..20 {
        let t = (i + 1) as f64 / 20.0;
        let cu = GateSpec::Cu { theta: PI * t, alpha: 0.4, beta: -1.1, delta: 0.25 };
        cu_dev = cu_dev.max((eta(&cu)? - 11f64.sqrt() / 5.0).abs());
        let sa = GateSpec::SwapAlpha { alpha: t * 0.95 };
        sa_dev = sa_dev.max((eta(&sa)? - 2.0 * 5f64.sqrt() / 5.0).abs());
        let theta = PI * t;
        let row = 2.0 * (34.0 + 30.0 * theta.cos() + 7.0 * (2.0 * theta).cos()).sqrt() / (5.0 * (3.0 + theta.cos()));
        is_dev = is_dev.max((eta(&GateSpec::Iswap { theta, phi: 0.3 })? - row).abs());
    }
    out.push(Check::at_most("cu eta max deviation from sqrt(11)/5", cu_dev, 1e-9));
    out.push(Check::at_most("swap_alpha eta max deviation from 2 sqrt(5)/5", sa_dev, 1e-9));
    out.push(Check::at_most("iswap eta max deviation from its theta formula", is_dev, 1e-9));
    Ok(out)
}

fn vanishing(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut cases: Vec<(String, ComplexMatrix, usize, usize)> = vec![
        ("identity 2x2".into(), ComplexMatrix::identity(4), 2, 2),
        ("identity 2x3".into(), ComplexMatrix::identity(6), 2, 3),
    ];
    for s in 0..10 {
        let mut rng = sample_rng(opts.seed.wrapping_add(s), 0);
        let u = kron(&sample_haar_unitary(2, &mut rng), &sample_haar_unitary(2, &mut rng));
        cases.push((format!("random product #{s}"), u, 2, 2));
    }
    for d in 2..=4 {
        cases.push((format!("swap d={d}"), build(&GateSpec::Swap { d })?, d, d));
    }
    let mut out = Vec::new();
    for (name, u, d1, d2) in &cases {
        let g = exact_gram(u, *d1, *d2)?;
        out.push(Check::at_most(format!("{name} ep"), g.ep.abs(), 1e-10));
        out.push(Check::at_most(format!("{name} epd"), g.epd, 1e-10));
        let th = engine::check_vanishing_conditions(u, *d1, *d2)?;
        out.push(Check::holds(
            format!("{name} commutes with P+13 or P+13 P+24"),
            th.condition_i || th.condition_ii,
        ));
    }
    Ok(out)
}

fn catalog_d2() -> Vec<GateSpec> {
    vec![
        GateSpec::Cnot,
        GateSpec::Cp { theta: 2.1 },
        GateSpec::Cu { theta: 1.3, alpha: 0.2, beta: 0.9, delta: 0.4 },
        GateSpec::SwapAlpha { alpha: 0.35 },
        GateSpec::Iswap { theta: 1.7, phi: 0.6 },
        GateSpec::Kak { b1: 0.61, b2: 0.27, b3: -0.12 },
        GateSpec::Swap { d: 2 },
        GateSpec::Gcx { d: 2 },
        GateSpec::F4,
    ]
}

fn oracle_agreement(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut worst: f64 = 0.0;
    for s in 0..25 {
        let u = sample_haar_special_unitary(4, &mut sample_rng(opts.seed.wrapping_add(1000 + s), 0));
        worst = worst.max((exact_cycle(&u, 2, 2)?.epd - exact_dense(&u, 2, 2)?.epd).abs());
    }
    out.push(Check::at_most("25 random SU(4): max |cycle - dense| epd", worst, 1e-9));
    for spec in catalog_d2() {
        let u = build(&spec)?;
        let c = exact_cycle(&u, 2, 2)?.epd;
        let d = exact_dense(&u, 2, 2)?.epd;
        out.push(Check::close(format!("{spec} cycle vs dense"), d, c, 1e-9));
    }
    Ok(out)
}

fn monte_carlo(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let specs = [
        ("CNOT", GateSpec::Cnot),
        ("sqrt(SWAP)", GateSpec::Kak { b1: PI / 8.0, b2: PI / 8.0, b3: PI / 8.0 }),
        ("iSWAP(pi/2, 0)", GateSpec::Iswap { theta: PI / 2.0, phi: 0.0 }),
        ("gcx d=3", GateSpec::Gcx { d: 3 }),
    ];
    let mut out = Vec::new();
    for (name, spec) in specs {
        let u = build(&spec)?;
        let (d1, d2) = spec.dims();
        let exact = exact_cycle(&u, d1, d2)?;
        let cfg = SamplerConfig { seed: opts.seed, samples: opts.samples, dims: (d1, d2) };
        let mc = estimate_ep_epd(&u, &cfg)?;
        out.push(Check::close(format!("{name} mean within 4 se"), exact.ep, mc.mean, 4.0 * mc.se_mean));
        out.push(Check::close(format!("{name} std within 4 se"), exact.epd, mc.std, 4.0 * mc.se_std));
    }
    Ok(out)
}

fn generalized_cx() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut scaled = Vec::new();
    for d in 2..=6usize {
        let u = build(&GateSpec::Gcx { d })?;
        let r = exact_cycle(&u, d, d)?;
        let x = d as f64;
        out.push(Check::close(format!("d={d} ep"), x * (x - 1.0) / ((x + 1.0) * (x + 1.0)), r.ep, 1e-9));
        let den = (x + 1.0).powi(4) * (x + 2.0).powi(2) * (x + 3.0).powi(2);
        scaled.push((d, r.epd * r.epd * den, den));
        let g = exact_gram(&u, d, d)?;
        out.push(Check::close(format!("d={d} epd network vs Gram route"), r.epd, g.epd, 1e-9));
        let cf = closed_form_ep_epd(&GateSpec::Gcx { d })?;
        out.push(Check::close(format!("d={d} epd closed form vs engine"), r.epd, cf.epd, 1e-8));
    }
    out.push(Check::close("d=2 epd^2 = 44/2025", 44.0 / 2025.0, scaled[0].1 / scaled[0].2, 1e-9));
    // Odd dimensions sit below the even-branch polynomial by 2d(d+1)².
    let even = |x: f64| 8.0 * x.powi(5) + 34.0 * x.powi(4) + 8.0 * x.powi(3) - 38.0 * x * x - 4.0 * x;
    for &(d, q, den) in &scaled {
        let x = d as f64;
        let tol = 1e-9 * den;
        if d % 2 == 0 {
            out.push(Check::close(format!("d={d} scaled epd^2 on even branch"), even(x), q, tol));
        } else {
            out.push(Check::close(
                format!("d={d} gap below even branch = 2d(d+1)^2"),
                2.0 * x * (x + 1.0).powi(2),
                even(x) - q,
                tol,
            ));
        }
        out.push(Check::close(format!("d={d} reconciled numerator"), gcx_epd_numerator(d), q, tol));
    }
    Ok(out)
}

fn landscape() -> Result<Vec<Check>> {
    let rows = scan_kak(21)?;
    let ep_max = 2.0 / 9.0;
    let epd_max = 1.0 / (3.0 * 5f64.sqrt());
    let best_ep = rows.iter().map(|r| r.ep).fold(f64::MIN, f64::max);
    let best_epd = rows.iter().map(|r| r.epd).fold(f64::MIN, f64::max);
    let q = PI / 4.0;
    let e = PI / 8.0;
    let at = |b: [f64; 3]| {
        rows.iter()
            .find(|r| (r.b1 - b[0]).abs() < 1e-12 && (r.b2 - b[1]).abs() < 1e-12 && (r.b3 - b[2]).abs() < 1e-12)
            .copied()
    };
    let cnot = at([q, 0.0, 0.0]);
    let sqrt_swap = at([e, e, e]);
    let both = rows
        .iter()
        .filter(|r| r.ep > ep_max - 1e-6 && r.epd > epd_max - 1e-6)
        .count();
    Ok(vec![
        Check::close("max ep over grid", ep_max, best_ep, 1e-9),
        Check::close("max epd over grid", epd_max, best_epd, 1e-9),
        Check::close("ep at (pi/4, 0, 0)", ep_max, cnot.map_or(f64::NAN, |r| r.ep), 1e-9),
        Check::close("epd at (pi/8, pi/8, pi/8)", epd_max, sqrt_swap.map_or(f64::NAN, |r| r.epd), 1e-9),
        Check::at_most("ep bound exceeded by", best_ep - ep_max, 1e-9),
        Check::at_most("epd bound exceeded by", best_epd - epd_max, 1e-9),
        Check::close("points near both maxima", 0.0, both as f64, 0.0),
    ])
}

fn random_matrix<R: Rng>(d: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(d, d, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

fn random_permutation<R: Rng>(k: usize, rng: &mut R) -> Permutation {
    let mut image: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        image.swap(i, rng.gen_range(0..=i));
    }
    Permutation::from_image(image).expect("shuffle is a bijection")
}

fn properties(opts: &VerifyOptions) -> Result<Vec<Check>> {
    const CASES: usize = 200;
    let mut rng = sample_rng(opts.seed, u64::MAX);
    let mut group = 0;
    let mut projector = 0;
    let mut sym_trace = 0;
    let mut cycles = 0;
    for _ in 0..CASES {
        let k = rng.gen_range(1..=6);
        let (a, b, c) = (
            random_permutation(k, &mut rng),
            random_permutation(k, &mut rng),
            random_permutation(k, &mut rng),
        );
        let id = Permutation::identity(k);
        let ok = a.compose(&b).compose(&c) == a.compose(&b.compose(&c))
            && a.compose(&a.inverse()) == id
            && a.compose(&id) == a
            && a.compose(&b).sign() == a.sign() * b.sign();
        group += usize::from(!ok);

        let degree = rng.gen_range(2..=5);
        let size = rng.gen_range(1..=degree.min(4));
        let mut pts: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            pts.swap(i, rng.gen_range(0..=i));
        }
        let subset = &pts[..size];
        let s = symmetric_projector(degree, subset, ProjectorSign::Symmetric)?;
        let t = symmetric_projector(degree, subset, ProjectorSign::Antisymmetric)?;
        let ok = s.multiply(&s) == s && t.multiply(&t) == t && (size < 2 || s.multiply(&t).is_zero());
        projector += usize::from(!ok);

        let d = rng.gen_range(1..=4);
        let kappa = rng.gen_range(1..=4);
        let (sum, norm) = pure_state_haar_average(d, kappa)?;
        let tr = sum.trace(&SubsystemLayout::new(vec![d; kappa])?)?;
        let binom = 1.0 / crate::perm::rational_to_f64(norm);
        sym_trace += usize::from((tr - binom).abs() > 1e-9 * binom);

        let kappa = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=3);
        let factors: Vec<ComplexMatrix> = (0..kappa).map(|_| random_matrix(d, &mut rng)).collect();
        let pi = random_permutation(kappa, &mut rng);
        let fast = cycle_trace(&factors, &pi)?;
        let mut prod = ComplexMatrix::identity(1);
        for f in &factors {
            prod = kron(&prod, f);
        }
        let dense = prod.matmul(&realize(&pi, &SubsystemLayout::new(vec![d; kappa])?)?).trace();
        cycles += usize::from((fast - dense).norm() > 1e-10 * (1.0 + dense.norm()));
    }
    Ok(vec![
        Check::close("group law failures in 200 cases", 0.0, group as f64, 0.0),
        Check::close("projector failures in 200 cases", 0.0, projector as f64, 0.0),
        Check::close("Tr P_sym failures in 200 cases", 0.0, sym_trace as f64, 0.0),
        Check::close("cycle trace failures in 200 cases", 0.0, cycles as f64, 0.0),
    ])
}
