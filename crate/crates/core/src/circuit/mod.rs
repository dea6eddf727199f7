//! Circuit realizations, target trajectories, steered runs, and exact
//! reference averages.

pub mod averaging;
pub mod realization;
pub mod steering;
pub mod timeevo;
pub mod trajectory;

pub use averaging::{target_seeds, AveragingMode, ReferenceEstimate, ReferenceSpec};
pub use realization::{CircuitRealization, HalfCycle, LinkParity, RealizationKey};
pub use steering::{
    batch_steer, read_shots, run_steered, steer_with, write_shots, OutcomePolicy, ShotRecord,
    SteeredRun,
};
pub use timeevo::{run_time_evolution, InitialState, TimePoint};
pub use trajectory::{
    run_target, run_target_from, CompiledCircuit, CycleObservables, PersistedTarget, SeriesSpec,
    SubsystemObservables, TargetOptions, TargetRecord,
};
