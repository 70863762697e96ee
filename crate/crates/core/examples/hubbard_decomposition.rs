//! Pauli form of a Hubbard lattice and its norms.

use pec_advantage::hamiltonian::{build_hubbard_pauli, exact_ground_energy, Boundary, HubbardSpec};

fn main() -> pec_advantage::Result<()> {
    let lattice = HubbardSpec::reference_instance();
    let h = build_hubbard_pauli(&lattice)?;
    println!("{}x{} lattice on {} qubits, {} Pauli terms", lattice.rows, lattice.cols, h.n(), h.len());
    println!("||H||_2^2 = {}", h.norm2_squared());
    println!("Tr[H]/d   = {}", h.identity_coefficient());
    println!("Tr[H^2]/d = {}", h.frobenius_squared());

    let mut heaviest: Vec<_> = h.terms().collect();
    heaviest.sort_by(|a, b| b.1.abs().total_cmp(&a.1.abs()));
    for (s, c) in heaviest.iter().take(3) {
        println!("  {c:+.3} {s}");
    }

    // Small lattices are solved exactly.
    let chain = HubbardSpec::new(1, 4, Boundary::Periodic, 1.0, 8.0, 3.75)?;
    println!("1x4 ring ground energy: {:.8}", exact_ground_energy(&chain)?);
    Ok(())
}
