//! Two-sided eigenvalue bounds for the spin-1/2 ferromagnetic Heisenberg
//! Hamiltonian of an arbitrary interaction graph.
//!
//! The Hamiltonian decomposes into Laplacians of token graphs (symmetric
//! products) of the interaction graph, so spectral questions about an
//! exponentially large operator reduce to graph geometry. This crate builds
//! those token graphs, estimates their generalized diameters through a
//! minimum-cost assignment relaxation, fits edge-isoperimetric profiles, and
//! turns both into certified upper and lower bounds on individual eigenvalues.
//! Every bound can be cross-checked against exact dense diagonalization at
//! desk scale.
//!
//! Modules:
//! - [`graph`]: simple undirected graphs, distances, boundaries, subgraphs.
//! - [`eigen`]: dense symmetric matrices and a Jacobi eigenvalue oracle.
//! - [`sympow`]: token graphs, sector Laplacians, the full Hamiltonian.
//! - [`assignment`]: minimum-cost assignment and the k-set distance relaxation.
//! - [`diameter`]: generalized diameters and eigenvalue upper bounds.
//! - [`iso`]: edge-isoperimetric profiles, Sobolev seminorms, product bounds.
//! - [`lower`]: closed-form eigenvalue lower bounds from isoperimetric data.
//! - [`johnson`]: Johnson-scheme projectors and the mean-field spectrum.
//! - [`report`]: serializable bound reports.
//! - [`validate`]: invariant suites wired to the CLI `validate` subcommand.

pub mod assignment;
pub mod caps;
pub mod combin;
pub mod diameter;
pub mod eigen;
mod error;
pub mod extint;
pub mod graph;
pub mod iso;
pub mod johnson;
pub mod lower;
pub mod report;
pub mod sympow;
pub mod validate;

pub use error::{Error, Result};
pub use extint::ExtInt;
