//! Optimal work extraction from multi-party quantum states under
//! non-interacting Hamiltonians.
//!
//! The crate computes global ergotropy (any unitary on the whole system),
//! local ergotropy (product unitaries only), their difference the ergotropic
//! gap, and the free-energy bounds on work extractable in contact with baths
//! at a common temperature. An independent brute-force optimizer over product
//! unitaries is included for cross-checking the closed forms.
//!
//! ```
//! use ergogap::{ergotropy, hamiltonian::CompositeHamiltonian, state::DensityMatrix};
//!
//! let h = CompositeHamiltonian::unit_gap_qubits(2).unwrap();
//! let rho = DensityMatrix::werner(0.5).unwrap();
//! let report = ergotropy::ergotropic_gap(&rho, &h).unwrap();
//! assert!((report.ergotropic_gap - 0.5).abs() < 1e-9);
//! ```

pub mod correlation;
pub mod ergotropy;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod oracle;
pub mod random;
pub mod state;
pub mod thermal;

pub use error::{Error, Result, Violation};
pub use hamiltonian::{CompositeHamiltonian, LocalHamiltonian, QubitHamiltonianParams};
pub use linalg::{ComplexMatrix, SpectralDecomposition, C64};
pub use state::DensityMatrix;
