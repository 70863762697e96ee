mod common;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use pec_advantage::hamiltonian::{
    build_hubbard_pauli, dense_ground_energy, exact_ground_energy, reconstruct_matrix, Boundary, HubbardSpec,
};

fn max_entry_gap(a: &DMatrix<Complex64>, b: &DMatrix<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - Complex64::new(*y, 0.0)).norm())
        .fold(0.0, f64::max)
}

fn trace_moments(m: &DMatrix<Complex64>) -> (f64, f64) {
    let d = m.nrows() as f64;
    let tr = m.trace().re / d;
    let tr2 = m.iter().map(|z| z.norm_sqr()).sum::<f64>() / d;
    (tr, tr2)
}

#[test]
fn pauli_form_matches_fermionic_operators_on_small_lattices() {
    for (rows, cols, b) in common::small_lattices(3) {
        let spec = HubbardSpec::new(rows, cols, b, 1.3, 5.1, 2.2).unwrap();
        let pauli = reconstruct_matrix(&build_hubbard_pauli(&spec).unwrap()).unwrap();
        let oracle = common::fermionic_hubbard(&spec);
        assert!(max_entry_gap(&pauli, &oracle) <= 1e-12, "{rows}x{cols} {b:?}");
    }
}

#[test]
fn ten_qubit_chain_matches_the_oracle() {
    let spec = HubbardSpec::new(1, 5, Boundary::Periodic, 0.7, 3.0, -1.1).unwrap();
    let pauli = reconstruct_matrix(&build_hubbard_pauli(&spec).unwrap()).unwrap();
    assert!(max_entry_gap(&pauli, &common::fermionic_hubbard(&spec)) <= 1e-12);
}

#[test]
fn oracle_bonds_agree_with_the_lattice() {
    for (rows, cols, b) in common::small_lattices(12) {
        let spec = HubbardSpec::new(rows, cols, b, 1.0, 0.0, 0.0).unwrap();
        let ours: Vec<_> = spec.edges();
        let oracle: Vec<_> = common::bonds(&spec).into_iter().collect();
        assert_eq!(ours, oracle, "{rows}x{cols} {b:?}");
    }
}

#[test]
fn sector_solver_matches_dense_spectrum() {
    for (rows, cols, b) in common::small_lattices(3) {
        let spec = HubbardSpec::new(rows, cols, b, 1.0, 4.0, 1.5).unwrap();
        let sectors = exact_ground_energy(&spec).unwrap();
        let dense = dense_ground_energy(&build_hubbard_pauli(&spec).unwrap()).unwrap();
        assert!((sectors - dense).abs() < 1e-9, "{rows}x{cols}: {sectors} vs {dense}");
    }
}

#[test]
fn dimer_ground_energy_at_strong_coupling() {
    // Half-filled two-site Hubbard: (U - sqrt(U^2 + 16 t^2)) / 2 - 2 mu.
    let (t, u, mu) = (1.0, 8.0, 3.75);
    let spec = HubbardSpec::new(1, 2, Boundary::Open, t, u, mu).unwrap();
    let expected = (u - (u * u + 16.0 * t * t).sqrt()) / 2.0 - 2.0 * mu;
    assert!((exact_ground_energy(&spec).unwrap() - expected).abs() < 1e-12);
}

#[test]
fn reference_instance_via_closed_forms() {
    let spec = HubbardSpec::reference_instance();
    let h = build_hubbard_pauli(&spec).unwrap();
    assert!((h.norm2_squared() - spec.norm2_squared_closed_form()).abs() < 1e-9);
    assert_eq!(spec.norm2_squared_closed_form(), 386.0);
    assert_eq!(spec.identity_coefficient_closed_form(), -112.0);
    assert!(matches!(
        reconstruct_matrix(&h),
        Err(pec_advantage::Error::Capacity { qubits: 128, .. })
    ));
}

fn lattice() -> impl Strategy<Value = HubbardSpec> {
    (1usize..=3, 1usize..=3, any::<bool>(), -3.0..3.0f64, -10.0..10.0f64, -5.0..5.0f64)
        .prop_filter("at most 8 qubits", |(r, c, ..)| r * c <= 4)
        .prop_map(|(r, c, periodic, t, u, mu)| {
            let b = if periodic { Boundary::Periodic } else { Boundary::Open };
            HubbardSpec::new(r, c, b, t, u, mu).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn norm_is_encoding_independent(spec in lattice()) {
        let h = build_hubbard_pauli(&spec).unwrap();
        let (tr, tr2) = trace_moments(&reconstruct_matrix(&h).unwrap());
        let expected = tr2 - tr * tr;
        prop_assert!((h.norm2_squared() - expected).abs() <= 1e-9 * expected.abs().max(1.0));
        prop_assert!((h.identity_coefficient() - tr).abs() <= 1e-12 * tr.abs().max(1.0));
    }

    #[test]
    fn closed_forms_match_explicit_sums(spec in lattice()) {
        let h = build_hubbard_pauli(&spec).unwrap();
        let n2 = spec.norm2_squared_closed_form();
        prop_assert!((h.norm2_squared() - n2).abs() <= 1e-12 * n2.max(1.0));
        prop_assert!((h.identity_coefficient() - spec.identity_coefficient_closed_form()).abs() <= 1e-12);
    }

    #[test]
    fn matches_fermionic_oracle(spec in lattice()) {
        let pauli = reconstruct_matrix(&build_hubbard_pauli(&spec).unwrap()).unwrap();
        prop_assert!(max_entry_gap(&pauli, &common::fermionic_hubbard(&spec)) <= 1e-12);
    }
}
