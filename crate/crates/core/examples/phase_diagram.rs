//! Winner over the default noise/shot grid, printed as a character map and
//! written as CSV and SVG to the temp directory.

use pec_advantage::advantage::Strategy;
use pec_advantage::report::artifact::phase_to_csv;
use pec_advantage::report::commands::phase_diagram_artifact;
use pec_advantage::report::svg::phase_svg;
use pec_advantage::report::RunConfig;

fn main() -> pec_advantage::Result<()> {
    let cfg = RunConfig::reference_instance();
    let artifact = phase_diagram_artifact(&cfg)?;
    let g = &artifact.grid;

    // N grows upward, P to the right; every fourth N and third P.
    for j in (0..g.shot_values.len()).rev().step_by(4) {
        let row: String = (0..g.p_values.len())
            .step_by(3)
            .map(|i| match g.label[i][j] {
                Strategy::Pec => 'P',
                Strategy::Raw => 'R',
                Strategy::None => '.',
            })
            .collect();
        println!("{:>8} {row}", g.shot_values[j]);
    }
    println!("{:>8} P from {:.0e} to {:.0e}", "", g.p_values[0], g.p_values[g.p_values.len() - 1]);

    let dir = std::env::temp_dir();
    std::fs::write(dir.join("phase_diagram.csv"), phase_to_csv(&artifact))?;
    std::fs::write(dir.join("phase_diagram.svg"), phase_svg(&artifact))?;
    println!("wrote phase_diagram.csv and .svg to {}", dir.display());
    Ok(())
}
