//! Dirichlet poly-Laplace operators on finite subgraphs of ℤ^d and of general
//! finite graphs: assembly, full spectra, the Li–Yau/Kröger-type eigenvalue
//! bounds, the order comparison (λ_k^l)² ≤ λ_k^{2l}, and Fourier-side checks.

pub mod bounds;
pub mod eigen;
pub mod error;
pub mod experiments;
pub mod fourier;
pub mod lattice;
pub mod matrix;
pub mod operator;
pub mod report;

pub use error::{Error, Result};
pub use lattice::{AmbientGraph, DirichletDomain, Domain, DomainSpec, FiniteGraph, LatticeDomain, LatticeVertex};
pub use matrix::Matrix;
pub use operator::PolyLaplaceOperator;
