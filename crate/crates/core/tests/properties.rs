use std::f64::consts::PI;

use entangling_power::engine::{ep_exact, exact_cycle, exact_dense, exact_gram};
use entangling_power::gates::{build, closed_form_ep_epd, GateSpec};
use entangling_power::haar::omega;
use entangling_power::mc::{estimate_ep_epd, sample_haar_special_unitary, sample_haar_unitary, sample_rng, SamplerConfig};
use entangling_power::perm::{realize, symmetric_projector, Permutation, ProjectorSign};
use entangling_power::tensor::{
    contract_network, kron, partial_trace, ComplexMatrix, Leg, NetworkNode, SubsystemLayout,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn small_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
        ComplexMatrix::from_vec(n, n, v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap()
    })
}

fn perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((0..k).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_image(v).unwrap())
}

fn haar(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    any::<u64>().prop_map(move |s| sample_haar_unitary(d, &mut sample_rng(s, 0)))
}

fn su4() -> impl Strategy<Value = ComplexMatrix> {
    any::<u64>().prop_map(|s| sample_haar_special_unitary(4, &mut sample_rng(s, 0)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn trace_of_kron_factorizes(a in small_matrix(3), b in small_matrix(2)) {
        let lhs = kron(&a, &b).trace();
        prop_assert!((lhs - a.trace() * b.trace()).norm() < 1e-12);
    }

    #[test]
    fn mixed_product_rule(a in small_matrix(2), b in small_matrix(2), c in small_matrix(3), d in small_matrix(3)) {
        let lhs = kron(&a.matmul(&b), &c.matmul(&d));
        let rhs = kron(&a, &c).matmul(&kron(&b, &d));
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn tracing_out_everything_is_the_trace(m in small_matrix(6)) {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let r = partial_trace(&m, &layout, &[]).unwrap();
        prop_assert_eq!((r.rows(), r.cols()), (1, 1));
        prop_assert!((r[(0, 0)] - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn contraction_ignores_node_order(a in small_matrix(2), b in small_matrix(2), c in small_matrix(2), order in perm(3)) {
        // Tr(ABC) as a ring of three nodes.
        let nodes = [
            NetworkNode::new(a.clone(), vec![Leg::new(1, 2)], vec![Leg::new(0, 2)]),
            NetworkNode::new(b.clone(), vec![Leg::new(2, 2)], vec![Leg::new(1, 2)]),
            NetworkNode::new(c.clone(), vec![Leg::new(0, 2)], vec![Leg::new(2, 2)]),
        ];
        let shuffled: Vec<NetworkNode> = order.image().iter().map(|&i| nodes[i].clone()).collect();
        let reference = a.matmul(&b).matmul(&c).trace();
        let value = contract_network(&shuffled).unwrap();
        prop_assert!((value - reference).norm() <= 1e-10 * (1.0 + reference.norm()));
    }

    #[test]
    fn realization_is_a_homomorphism(k in 1usize..=4, seed in any::<u64>()) {
        let mut rng = sample_rng(seed, 0);
        let pick = |rng: &mut _| {
            let mut v: Vec<usize> = (0..k).collect();
            for i in (1..k).rev() {
                v.swap(i, rand::Rng::gen_range(rng, 0..=i));
            }
            Permutation::from_image(v).unwrap()
        };
        let (a, b) = (pick(&mut rng), pick(&mut rng));
        let layout = SubsystemLayout::new(vec![2; k]).unwrap();
        let va = realize(&a, &layout).unwrap();
        let vb = realize(&b, &layout).unwrap();
        prop_assert!(realize(&a.compose(&b), &layout).unwrap().approx_eq(&va.matmul(&vb), 0.0));
        prop_assert!(realize(&a.inverse(), &layout).unwrap().approx_eq(&va.adjoint(), 0.0));
        prop_assert!(realize(&Permutation::identity(k), &layout).unwrap().approx_eq(&ComplexMatrix::identity(1 << k), 0.0));
    }

    #[test]
    fn permutation_conjugates_tensor_factors(pi in perm(3), a in small_matrix(2), b in small_matrix(2), c in small_matrix(2)) {
        let layout = SubsystemLayout::new(vec![2; 3]).unwrap();
        let v = realize(&pi, &layout).unwrap();
        let factors = [a, b, c];
        let lhs = v.matmul(&kron(&kron(&factors[0], &factors[1]), &factors[2])).matmul(&v.adjoint());
        // Factor at output position π(i) is A_i.
        let inv = pi.inverse();
        let rhs = kron(&kron(&factors[inv.apply(0)], &factors[inv.apply(1)]), &factors[inv.apply(2)]);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn disjoint_projectors_commute(n in 5usize..=6, pts in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(), split in 1usize..=2) {
        let pts: Vec<usize> = pts.into_iter().filter(|&p| p < n).collect();
        let (x, y) = pts.split_at(split + 1);
        let p = symmetric_projector(n, x, ProjectorSign::Symmetric).unwrap();
        let q = symmetric_projector(n, &y[..2], ProjectorSign::Antisymmetric).unwrap();
        prop_assert_eq!(p.multiply(&q), q.multiply(&p));
    }

    #[test]
    fn ep_and_epd_are_local_unitary_invariant(u in su4(), a in haar(2), b in haar(2), c in haar(2), e in haar(2)) {
        let v = kron(&a, &b).matmul(&u).matmul(&kron(&c, &e));
        let x = exact_gram(&u, 2, 2).unwrap();
        let y = exact_gram(&v, 2, 2).unwrap();
        prop_assert!((x.ep - y.ep).abs() < 1e-9);
        prop_assert!((x.epd - y.epd).abs() < 1e-9);
    }

    #[test]
    fn ep_vanishes_exactly_when_epd_does(u in su4(), a in haar(2), b in haar(2), local in any::<bool>()) {
        let u = if local { kron(&a, &b) } else { u };
        let r = exact_gram(&u, 2, 2).unwrap();
        prop_assert_eq!(r.ep < 1e-8, r.epd < 1e-8);
        prop_assert_eq!(local, r.ep < 1e-8);
    }

    #[test]
    fn two_qubit_ep_never_exceeds_two_ninths(u in su4()) {
        prop_assert!(ep_exact(&u, 2, 2).unwrap() <= 2.0 / 9.0 + 1e-12);
    }

    #[test]
    fn closed_forms_match_the_engine(t in 0.0f64..1.0, s in 0.0f64..1.0, r in 0.0f64..1.0) {
        let specs = [
            GateSpec::Cp { theta: 2.0 * PI * t },
            GateSpec::Cu { theta: 2.0 * PI * t, alpha: 6.0 * s - 3.0, beta: 6.0 * r - 3.0, delta: s },
            GateSpec::SwapAlpha { alpha: t },
            GateSpec::Iswap { theta: PI * t, phi: 2.0 * PI * s },
            GateSpec::Kak { b1: PI * t, b2: PI * s, b3: PI * r },
        ];
        for spec in specs {
            let closed = closed_form_ep_epd(&spec).unwrap();
            let engine = exact_gram(&build(&spec).unwrap(), 2, 2).unwrap();
            prop_assert!((closed.ep - engine.ep).abs() < 1e-9, "{spec}: ep {} vs {}", closed.ep, engine.ep);
            prop_assert!((closed.epd - engine.epd).abs() < 1e-9, "{spec}: epd {} vs {}", closed.epd, engine.epd);
        }
    }

    #[test]
    fn iswap_ignores_its_phase(theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI)) {
        let a = exact_cycle(&build(&GateSpec::Iswap { theta, phi: 0.0 }).unwrap(), 2, 2).unwrap();
        let b = exact_cycle(&build(&GateSpec::Iswap { theta, phi }).unwrap(), 2, 2).unwrap();
        prop_assert!((a.ep - b.ep).abs() < 1e-10);
        prop_assert!((a.epd - b.epd).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn second_moment_commutes_with_local_unitaries(a in haar(2), b in haar(3)) {
        let w = omega(2, 2, 3).unwrap().realize().unwrap();
        let local = kron(&a, &b);
        let g = kron(&local, &local);
        prop_assert!(w.commutator(&g).max_norm() < 1e-12);
    }
}

#[test]
fn fourth_moment_has_unit_trace_on_qubits() {
    let w = omega(4, 2, 2).unwrap().realize().unwrap();
    assert_eq!(w.rows(), 256);
    assert!((w.trace().re - 1.0).abs() < 1e-12);
}

#[test]
fn cycle_and_dense_agree_on_catalog() {
    let specs = [
        GateSpec::Cnot,
        GateSpec::Cp { theta: 1.0 },
        GateSpec::Cu { theta: 0.4, alpha: 2.0, beta: -0.3, delta: 0.0 },
        GateSpec::SwapAlpha { alpha: 0.2 },
        GateSpec::Iswap { theta: 0.8, phi: 0.0 },
        GateSpec::Kak { b1: 0.7, b2: 0.2, b3: 0.05 },
        GateSpec::Swap { d: 2 },
        GateSpec::Gcx { d: 2 },
        GateSpec::F4,
    ];
    for spec in specs {
        let u = build(&spec).unwrap();
        let c = exact_cycle(&u, 2, 2).unwrap().epd;
        let d = exact_dense(&u, 2, 2).unwrap().epd;
        assert!((c - d).abs() <= 1e-9, "{spec}: {c} vs {d}");
    }
}

#[test]
fn epd_increases_with_ep_along_families() {
    let check = |specs: Vec<GateSpec>| {
        let pts: Vec<(f64, f64)> = specs
            .iter()
            .map(|s| {
                let r = exact_cycle(&build(s).unwrap(), 2, 2).unwrap();
                (r.ep, r.epd)
            })
            .collect();
        for w in pts.windows(2) {
            assert!(w[1].0 > w[0].0 && w[1].1 > w[0].1, "{w:?}");
        }
    };
    check((1..=20).map(|k| GateSpec::Cu { theta: PI * k as f64 / 20.0, alpha: 0.3, beta: 0.1, delta: 0.0 }).collect());
    check((1..=20).map(|k| GateSpec::SwapAlpha { alpha: 0.5 * k as f64 / 20.0 }).collect());
}

#[test]
fn gcx_closed_form_matches_cycle_path() {
    for d in 2..=5 {
        let spec = GateSpec::Gcx { d };
        let closed = closed_form_ep_epd(&spec).unwrap();
        let engine = exact_cycle(&build(&spec).unwrap(), d, d).unwrap();
        assert!((closed.ep - engine.ep).abs() <= 1e-8);
        assert!((closed.epd - engine.epd).abs() <= 1e-8, "d={d}");
    }
}

#[test]
fn two_qubit_ep_bound_over_ten_thousand_samples() {
    use rayon::prelude::*;
    let worst = (0..10_000u64)
        .into_par_iter()
        .map(|i| ep_exact(&sample_haar_special_unitary(4, &mut sample_rng(7, i)), 2, 2).unwrap())
        .reduce(|| 0.0, f64::max);
    assert!(worst <= 2.0 / 9.0 + 1e-12, "{worst}");
}

#[test]
fn monte_carlo_is_seed_deterministic() {
    let u = build(&GateSpec::Cnot).unwrap();
    let cfg = SamplerConfig { seed: 42, samples: 5000, dims: (2, 2) };
    let a = estimate_ep_epd(&u, &cfg).unwrap();
    let b = estimate_ep_epd(&u, &cfg).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.std.to_bits(), b.std.to_bits());
}

#[test]
fn doubling_samples_shrinks_standard_error() {
    let u = build(&GateSpec::Cnot).unwrap();
    let mut ratio = 0.0;
    let seeds = 8;
    for seed in 0..seeds {
        let se = |n| estimate_ep_epd(&u, &SamplerConfig { seed, samples: n, dims: (2, 2) }).unwrap().se_mean;
        ratio += se(4000) / se(8000);
    }
    ratio /= seeds as f64;
    assert!((ratio - 2f64.sqrt()).abs() < 0.05, "{ratio}");
}

#[test]
fn monte_carlo_agrees_with_engine_on_catalog() {
    let specs = [
        GateSpec::Cnot,
        GateSpec::Cp { theta: 2.0 },
        GateSpec::Cu { theta: 1.0, alpha: 0.5, beta: 0.2, delta: 0.0 },
        GateSpec::SwapAlpha { alpha: 0.3 },
        GateSpec::Iswap { theta: 1.2, phi: 0.4 },
        GateSpec::Kak { b1: 0.6, b2: 0.3, b3: 0.1 },
        GateSpec::Swap { d: 2 },
        GateSpec::Gcx { d: 2 },
        GateSpec::F4,
    ];
    for (i, spec) in specs.iter().enumerate() {
        let u = build(spec).unwrap();
        let exact = exact_cycle(&u, 2, 2).unwrap();
        let mc = estimate_ep_epd(&u, &SamplerConfig { seed: 900 + i as u64, samples: 100_000, dims: (2, 2) }).unwrap();
        assert!((mc.mean - exact.ep).abs() <= 4.0 * mc.se_mean + 1e-15, "{spec} mean");
        assert!((mc.std - exact.epd).abs() <= 4.0 * mc.se_std + 1e-15, "{spec} std");
    }
}
