use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use pec_advantage::analytics::{gamma_total, NoiseCircuitSpec};
use pec_advantage::hamiltonian::{exact_ground_energy, Boundary, HubbardSpec, PauliMask};
use pec_advantage::sim::{
    batch_means, build_qpd_for, composition_defect, normality_check, with_workers, DensityMatrix, EstimatorKind,
    Simulator,
};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn single_site() -> HubbardSpec {
    HubbardSpec::new(1, 1, Boundary::Open, 1.0, 4.0, 1.0).unwrap()
}

fn dimer() -> HubbardSpec {
    HubbardSpec::new(1, 2, Boundary::Open, 1.0, 8.0, 3.75).unwrap()
}

fn random_state(n: usize, seed: u64) -> DensityMatrix {
    // A A^dagger / Tr from a deterministic pseudo-random A.
    let d = 1usize << n;
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (x >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let a = DMatrix::from_fn(d, d, |_, _| Complex64::new(next(), next()));
    let m = &a * a.adjoint();
    let tr = m.trace();
    DensityMatrix::from_matrix(n, m / tr).unwrap()
}

#[test]
fn depolarizing_matches_its_definition() {
    let rho = random_state(3, 7);
    let p = 0.3;
    let out = rho.depolarize(p).unwrap();
    let d = 8.0;
    let expected = rho.entries() * c(1.0 - p) + DMatrix::<Complex64>::identity(8, 8) * c(p / d);
    assert!((out.entries() - expected).camax() < 1e-15);
    out.check().unwrap();
    assert!(out.purity() < rho.purity());
}

#[test]
fn pauli_conjugation_is_a_unitary_channel() {
    let rho = random_state(2, 3);
    for k in 0..16 {
        let out = rho.conjugate(&PauliMask::from_index(k, 2));
        out.check().unwrap();
        assert!((out.purity() - rho.purity()).abs() < 1e-14);
        assert!((out.conjugate(&PauliMask::from_index(k, 2)).entries() - rho.entries()).camax() < 1e-15);
    }
}

#[test]
fn full_twirl_sum_reaches_the_mixed_state() {
    // (1/d^2) sum_P P rho P = I/d.
    let rho = random_state(2, 11);
    let mut acc = DMatrix::<Complex64>::zeros(4, 4);
    for k in 0..16 {
        acc += rho.conjugate(&PauliMask::from_index(k, 2)).entries();
    }
    let mixed = DensityMatrix::maximally_mixed(2).unwrap();
    assert!((acc / c(16.0) - mixed.entries()).camax() < 1e-15);
}

#[test]
fn prepared_state_is_the_ground_state() {
    for spec in [single_site(), dimer()] {
        let sim = Simulator::new(&spec, &NoiseCircuitSpec::new(2, 0.0, spec.qubits() as u32).unwrap()).unwrap();
        let rho = sim.initial_state();
        rho.check().unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        assert!((sim.exact_energy() - exact_ground_energy(&spec).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn branch_sum_inverts_the_noise() {
    // Weighted sum over every branch sequence of the evolved state returns rho_0.
    let spec = single_site();
    let (layers, p) = (2u32, 0.15);
    let sim = Simulator::new(&spec, &NoiseCircuitSpec::new(layers, p, 2).unwrap()).unwrap();
    let qpd = build_qpd_for(p, 2).unwrap();
    let weight = |op: u32| if op == 0 { qpd.q[0] } else { qpd.q[1] / 15.0 };
    let mut acc = DMatrix::<Complex64>::zeros(4, 4);
    for a in 0..16u32 {
        for b in 0..16u32 {
            acc += sim.evolve(&[a, b]).unwrap().entries() * c(weight(a) * weight(b));
        }
    }
    assert!((acc - sim.initial_state().entries()).camax() < 1e-12);
}

#[test]
fn oversized_and_mismatched_instances_are_rejected() {
    let big = HubbardSpec::reference_instance();
    let noise = NoiseCircuitSpec::new(64, 1e-3, 128).unwrap();
    assert!(matches!(Simulator::new(&big, &noise), Err(pec_advantage::Error::Capacity { .. })));
    let wrong = NoiseCircuitSpec::new(4, 0.05, 8).unwrap();
    assert!(Simulator::new(&dimer(), &wrong).is_err());
}

#[test]
fn mitigated_mean_is_unbiased() {
    let spec = single_site();
    let sim = Simulator::new(&spec, &NoiseCircuitSpec::new(3, 0.1, 2).unwrap()).unwrap();
    let pec = sim.run(EstimatorKind::Pec, 40_000, 5, false).unwrap();
    let raw = sim.run(EstimatorKind::Raw, 40_000, 5, false).unwrap();
    assert!((pec.mean - sim.exact_energy()).abs() <= 4.0 * pec.standard_error());
    assert!((raw.mean - sim.noisy_energy()).abs() <= 4.0 * raw.standard_error());
    // The noise bias is many standard errors wide, so the raw run cannot hit E0.
    assert!((raw.mean - sim.exact_energy()).abs() > 10.0 * raw.standard_error());
}

#[test]
fn empirical_negativity_tracks_the_analytic_one() {
    let noise = NoiseCircuitSpec::new(4, 0.05, 2).unwrap();
    let sim = Simulator::new(&single_site(), &noise).unwrap();
    let run = sim.run(EstimatorKind::Pec, 100_000, 9, false).unwrap();
    let g = gamma_total(&noise).unwrap();
    assert!((run.gamma_total - g).abs() < 1e-12);
    assert!((run.gamma_empirical.unwrap() / g - 1.0).abs() < 0.02);
}

#[test]
fn variance_respects_the_bound() {
    let noise = NoiseCircuitSpec::new(4, 0.05, 4).unwrap();
    let sim = Simulator::new(&dimer(), &noise).unwrap();
    for kind in [EstimatorKind::Pec, EstimatorKind::Raw] {
        let run = sim.run(kind, 20_000, 1, false).unwrap();
        assert!(run.variance <= 1.1 * sim.variance_bound(kind).unwrap(), "{kind:?}");
    }
}

#[test]
fn records_reconstruct_each_shot() {
    let noise = NoiseCircuitSpec::new(3, 0.2, 4).unwrap();
    let sim = Simulator::new(&dimer(), &noise).unwrap();
    let run = sim.run(EstimatorKind::Pec, 50, 2, true).unwrap();
    let qpd = build_qpd_for(0.2, 4).unwrap();
    let coeffs: Vec<f64> = sim.decomposition().terms().map(|(_, a)| a).collect();
    let c0 = sim.decomposition().identity_coefficient();
    for (rec, &v) in run.records.as_ref().unwrap().iter().zip(&run.shot_values) {
        assert_eq!(rec.outcome, v);
        assert_eq!(rec.executions.len(), coeffs.len());
        let mut total = c0;
        for ex in &rec.executions {
            let twirls = ex.sampled_ops.iter().filter(|&&o| o != 0).count() as i32;
            assert_eq!(ex.sign as f64, qpd.sign(1).powi(twirls));
            assert!(ex.eigenvalue == 1 || ex.eigenvalue == -1);
            assert!(ex.sampled_ops.iter().all(|&o| o < 256));
            total += coeffs[ex.term] * ex.sign as f64 * run.gamma_total * ex.eigenvalue as f64;
        }
        assert!((total - v).abs() < 1e-9);
    }
}

#[test]
fn runs_are_reproducible_and_worker_independent() {
    let noise = NoiseCircuitSpec::new(4, 0.05, 4).unwrap();
    let sim = Simulator::new(&dimer(), &noise).unwrap();
    let one = with_workers(1, || sim.run(EstimatorKind::Pec, 3000, 77, false)).unwrap().unwrap();
    let three = with_workers(3, || sim.run(EstimatorKind::Pec, 3000, 77, false)).unwrap().unwrap();
    assert_eq!(one, three);
    let other = sim.run(EstimatorKind::Pec, 3000, 78, false).unwrap();
    assert_ne!(one.shot_values, other.shot_values);
}

#[test]
fn noiseless_estimators_coincide() {
    let noise = NoiseCircuitSpec::new(4, 0.0, 4).unwrap();
    let sim = Simulator::new(&dimer(), &noise).unwrap();
    let pec = sim.run(EstimatorKind::Pec, 2000, 4, false).unwrap();
    let raw = sim.run(EstimatorKind::Raw, 2000, 4, false).unwrap();
    assert_eq!(pec.shot_values, raw.shot_values);
    assert_eq!(pec.gamma_empirical, Some(1.0));
}

#[test]
fn normality_statistic_separates_shapes() {
    // Quantiles of a normal and of an exponential, 200 points each.
    let normal: Vec<f64> = (0..200)
        .map(|i| {
            let u = (i as f64 + 0.5) / 200.0;
            let mut lo = -10.0;
            let mut hi = 10.0;
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if 0.5 * (1.0 + pec_advantage::stats::erf(mid / 2f64.sqrt())) < u {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        })
        .collect();
    let skewed: Vec<f64> = (0..200).map(|i| -(1.0 - (i as f64 + 0.5) / 200.0).ln()).collect();
    assert!(normality_check(&normal, 100).unwrap().passes_1());
    assert!(!normality_check(&skewed, 100).unwrap().passes_1());
    assert!(normality_check(&normal[..10], 100).is_err());
    assert!(normality_check(&normal, 10).is_err());
}

#[test]
fn batch_means_drop_partial_batches() {
    let v: Vec<f64> = (0..10).map(f64::from).collect();
    assert_eq!(batch_means(&v, 4).unwrap(), vec![1.5, 5.5]);
    assert!(batch_means(&v, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn qpd_inverts_depolarizing(p in 0.0..0.6f64, n in 1u32..=2) {
        let qpd = build_qpd_for(p, n).unwrap();
        prop_assert!((qpd.q.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(composition_defect(&qpd, p).unwrap() <= 1e-9);
        let g = gamma_total(&NoiseCircuitSpec::new(1, p, n).unwrap()).unwrap();
        prop_assert!((qpd.gamma - g).abs() <= 1e-12 * g);
    }

    #[test]
    fn channels_keep_states_physical(seed in any::<u64>(), p in 0.0..1.0f64, k in 0usize..64) {
        let rho = random_state(3, seed);
        rho.depolarize(p).unwrap().check().unwrap();
        let out = rho.conjugate(&PauliMask::from_index(k, 3));
        out.check().unwrap();
        prop_assert!((out.trace() - 1.0).abs() < 1e-12);
    }
}
