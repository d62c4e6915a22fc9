//! Numerics for entanglement distillation of low-rank bipartite states and
//! full-undistillability of tripartite pure states.
//!
//! The crate is organised bottom-up:
//!
//! - [`kernels`]: dense complex linear algebra with an explicit rank-tolerance
//!   policy (Hermitian spectra, numerical rank, support projectors, inverse
//!   square roots on the support).
//! - [`states`]: density matrices and pure states on tensor products, partial
//!   trace and transpose, entropies, canonical purifications and complements.
//! - [`channels`]: channels stored by their Choi matrix, complementary channels
//!   and a few named constructions.
//! - [`distill`]: local filtering, the low-rank two-way bound, the one-way
//!   witness search and the tripartite classifier.
//! - [`sampling`]: seeded induced-measure sampling and the low-rank Monte Carlo
//!   experiment.
//! - [`format`]: the JSON file formats shared with the command-line tool.
//!
//! Subsystems are ordered left to right as tensor factors and flattened in
//! row-major order: for dims `[d0, d1, ..]` the basis vector `|i0 i1 ..>` sits
//! at index `(i0 * d1 + i1) * d2 + ...`.

#![forbid(unsafe_code)]

pub mod channels;
pub mod distill;
mod error;
pub mod format;
pub mod kernels;
pub mod sampling;
pub mod states;

pub use channels::{CapacityBounds, ChoiChannel};
pub use distill::{
    AnalysisOptions, Classification, DistillabilityReport, FilterOutcome, RankRegimeReport,
    RateStatus, Side, WitnessSearch,
};
pub use error::{Error, Result};
pub use kernels::{ComplexMatrix, ComplexVector, HermitianSpectrum, Tolerances};
pub use num_complex::Complex64;
pub use sampling::{EnsembleReport, EnsembleSpec};
pub use states::{DensityMatrix, PptVerdict, PureState, TripartitePureState};

/// Crate version, echoed into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
