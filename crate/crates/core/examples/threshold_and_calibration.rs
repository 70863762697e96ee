//! Noise level at which raw sampling loses the interval, and layer noise
//! implied by a two-qubit gate error.

use pec_advantage::analytics::{gamma_total, p_layer_from_gate_error, threshold_p};
use pec_advantage::report::RunConfig;

fn main() -> pec_advantage::Result<()> {
    let problem = RunConfig::reference_instance().resolve()?.problem;
    let p_star = threshold_p(&problem.ham, problem.e_plus, problem.noise.layers())?;
    println!("E- = {:.3}, E+ = {:.3}", problem.e_minus, problem.e_plus);
    println!("raw mean crosses E+ at P = {p_star:.4e}");

    for p_2q in [3e-4, 1e-4, 3e-5] {
        let p = p_layer_from_gate_error(p_2q, 128)?;
        let g = gamma_total(&problem.noise.with_p(p)?)?;
        println!("p_2q = {p_2q:.0e}: P = {p:.4e}, gamma_tot = {g:.3e}");
    }
    Ok(())
}
