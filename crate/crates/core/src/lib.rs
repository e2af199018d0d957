//! Extended adjacency spectra of graphs: exact and floating-point matrices,
//! spectral radii, characteristic polynomials of forests, exhaustive
//! enumeration and extremal verification.

pub mod appendix;
pub mod canon;
pub mod charpoly;
pub mod enumeration;
pub mod error;
pub mod exmatrix;
pub mod extremal;
pub mod family;
pub mod graph;
pub mod polynomial;
pub mod rational;
pub mod report;
pub mod spectra;

pub use error::{Error, Result};
pub use exmatrix::{FloatSymMatrix, RationalSymMatrix};
pub use family::{family, Family};
pub use graph::Graph;
pub use polynomial::{largest_root, Polynomial};
pub use rational::Rational;
pub use report::VerificationReport;
pub use spectra::{SpectralOptions, SpectralResult, Spectrum};
