//! Shot-level Monte Carlo of both estimators on the two-site chain.

use pec_advantage::analytics::NoiseCircuitSpec;
use pec_advantage::hamiltonian::{Boundary, HubbardSpec};
use pec_advantage::sim::{batch_means, normality_check, EstimatorKind, Simulator};

fn main() -> pec_advantage::Result<()> {
    let dimer = HubbardSpec::new(1, 2, Boundary::Open, 1.0, 8.0, 3.75)?;
    let noise = NoiseCircuitSpec::new(4, 0.05, 4)?;
    let sim = Simulator::new(&dimer, &noise)?;
    println!("E0 = {:.6}, noisy E = {:.6}", sim.exact_energy(), sim.noisy_energy());

    for kind in [EstimatorKind::Pec, EstimatorKind::Raw] {
        let run = sim.run(kind, 50_000, 7, false)?;
        println!(
            "{kind:?}: mean {:.5} +- {:.5}, variance {:.3} (bound {:.3})",
            run.mean,
            run.standard_error(),
            run.variance,
            sim.variance_bound(kind)?
        );
        if let Some(g) = run.gamma_empirical {
            println!("  gamma empirical {g:.4}, analytic {:.4}", run.gamma_total);
        }
        let ks = normality_check(&batch_means(&run.shot_values, 500)?, 500)?;
        println!("  batch-mean KS {:.4} (1% critical {:.4})", ks.statistic, ks.critical_1);
    }

    let one = sim.run(EstimatorKind::Pec, 1, 7, true)?;
    let first = &one.records.unwrap()[0].executions[0];
    println!("first execution: term {}, branches {:?}, sign {}", first.term, first.sampled_ops, first.sign);
    Ok(())
}
