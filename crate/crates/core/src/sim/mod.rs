//! Density-matrix Monte Carlo of the mitigated and raw estimators on small
//! Hubbard instances.

mod density;
mod estimator;
mod normality;
mod qpd;

pub use density::{conjugate_matrix, depolarize_matrix, pauli_trace, prepare_ground_state, DensityMatrix};
pub use estimator::{
    run_pec_estimate, run_raw_estimate, with_workers, EstimatorKind, EstimatorRun, ShotRecord, Simulator,
    TermExecution,
};
pub use normality::{batch_means, normality_check, NormalityReport, MIN_BATCHES, MIN_BATCH_SIZE};
pub use qpd::{
    build_qpd, build_qpd_for, composition_defect, depolarizing_superoperator, qpd_superoperator, superoperator,
    twirl_matrix, ChannelOp, QuasiProbDecomposition,
};
