//! Simulation of a narrowband photonic teleportation relay: a faint-laser
//! qubit source, an SPDC pair source and a beamsplitter Bell-state
//! measurement with threshold detectors.
//!
//! The photon-number algebra in [`fock`] is generic over [`Scalar`], so it can
//! be evaluated in floating point or exactly over rationals. Everything that
//! needs square roots or phases is generic over [`Real`] (`f32` / `f64`).
//! The aliases below fix the working precision used by the CLI.

pub mod error;
pub mod fock;
pub mod oracle;
pub mod protocol;
pub mod scalar;
pub mod sources;
pub mod visibility;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

/// Exact rational scalar.
pub type Exact = num_rational::BigRational;

pub type Distribution = fock::SingleMode<f64>;
pub type TwoModeDistribution = fock::TwoMode<f64>;
pub type ExactTwoModeDistribution = fock::TwoMode<Exact>;
pub type Detector = fock::DetectorSpec<f64>;
pub type Qubit = protocol::PolarizationQubit<f64>;
pub type Config = visibility::ExperimentConfig<f64>;
pub type Config32 = visibility::ExperimentConfig<f32>;
pub type Herald = visibility::HeraldStats<f64>;
pub type Visibility = visibility::VisibilityResult<f64>;
pub type Pipeline = visibility::PipelineResult<f64>;
pub type DarkCounts = visibility::DarkCountSet<f64>;
pub type Dfg = sources::DfgSpec<f64>;
pub type Budget = sources::BudgetChain<f64>;
