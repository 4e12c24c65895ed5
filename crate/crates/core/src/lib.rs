//! Correlation structure of a maximally entangled field mode probed by an
//! inertial observer (Alice) and two uniformly accelerated observers in the
//! right (Rob) and left (AntiRob) Rindler wedges.
//!
//! The pipeline builds the truncated tripartite state in the Rindler Fock
//! basis, reduces it by partial trace, and evaluates entropies, mutual
//! informations, classical correlations (optimized over qubit projective
//! measurements on Alice), quantum discord and the entanglement of formation
//! between the two wedges through the Koashi-Winter identity.

#[cfg(feature = "cli")]
pub mod cli;
pub mod correlations;
pub mod error;
pub mod fockla;
pub mod optimize;
pub mod oracle;
pub mod states;
pub mod sweep;

pub use correlations::{assemble_record, CorrelationRecord, PipelineConfig};
pub use error::{Error, Result};
pub use fockla::{BasisLabel, DensityMatrix, PureStateVector, Spectrum, Subsystem, Tolerances};
pub use states::{SqueezingParameter, TruncationPolicy};

/// Version string written into CSV headers and metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
