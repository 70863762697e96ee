//! Success probabilities of both strategies at a few operating points.

use pec_advantage::report::RunConfig;

fn main() -> pec_advantage::Result<()> {
    let problem = RunConfig::reference_instance().resolve()?.problem;
    println!("{:>8} {:>9} {:>10} {:>10}  winner", "P", "N", "PEC", "raw");
    for (p, n) in [(1e-4, 1_000_000), (1e-3, 10_000), (4e-3, 1000), (4e-3, 10), (2e-2, 1_000_000)] {
        let c = problem.classify(p, n)?;
        println!("{:>8.1e} {:>9} {:>10.6} {:>10.6}  {}", c.p, c.n_shots, c.pec_success, c.raw_success, c.label);
    }

    // Shots the proxy needs to reach the threshold.
    for p in [1e-3, 4e-3, 1e-2] {
        let n = problem.shots_for_proxy_success(p, problem.threshold)?;
        println!("P = {p:.0e}: {n:.1} shots for {}", problem.threshold);
    }
    Ok(())
}
