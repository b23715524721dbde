//! Band spectra of periodic discrete Schrödinger operators on Z^d-periodic
//! graphs, bracketed by Neumann and Dirichlet eigenvalues of a fundamental
//! domain, and carried over to equilateral metric graphs.
//!
//! The band sweep runs on rayon when the `parallel` feature is enabled
//! (default); [`spectra::Execution::Sequential`] forces a single thread.

pub mod bracketing;
pub mod cattaneo;
pub mod document;
pub mod domain;
pub mod eigen;
pub mod embedding;
pub mod error;
pub mod fixtures;
pub mod floquet;
pub mod graph;
pub mod lattice;
pub mod report;
pub mod spectra;
pub mod suite;

pub use bracketing::{
    bracket_intervals, total_length_bound, verify_bracketing, BracketReport, Brackets, DomainEigendata, LengthBound,
};
pub use domain::{DomainVertex, FundamentalDomain};
pub use error::{Error, ErrorKind, Result};
pub use floquet::{floquet_matrix, HermitianMatrix, Potential};
pub use graph::{validate_graph, Edge, FundamentalGraph, VertexId};
pub use spectra::{band_sweep, BandSpectrum, Execution, Interval, SweepOptions};
