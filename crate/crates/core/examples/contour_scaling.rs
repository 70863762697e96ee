//! Along a fixed-success contour the shot count scales as gamma_tot^2, so
//! log N is nearly linear in P.

use pec_advantage::analytics::gamma_total;
use pec_advantage::report::RunConfig;

fn main() -> pec_advantage::Result<()> {
    let problem = RunConfig::reference_instance().resolve()?.problem;
    let base = problem.shots_for_proxy_success(0.0, 0.95)?;
    println!("{:>8} {:>14} {:>14} {:>12}", "P", "N(0.95)", "N0 gamma^2", "ln N / P");
    for p in [1e-4, 2.5e-4, 5e-4, 1e-3, 2e-3, 5e-3] {
        let n = problem.shots_for_proxy_success(p, 0.95)?;
        let g = gamma_total(&problem.noise.with_p(p)?)?;
        println!("{p:>8.1e} {n:>14.2} {:>14.2} {:>12.2}", base * g * g, (n / base).ln() / p);
    }
    println!("small-noise slope 4 D = {}", 4 * problem.noise.layers());
    Ok(())
}
