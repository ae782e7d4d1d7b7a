//! Exact linear algebra over the rationals and over Laurent polynomials in q.

pub mod eigen;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use eigen::{rational_eigenstructure, sym_float_eigs, EigenBlock, EigenStructure};
pub use laurent::QLaurent;
pub use matrix::{krylov_rank, EchelonBasis, RatMatrix};
pub use poly::Poly;
pub use rational::Rational;

/// Tolerance settings for the floating-point paths.
#[derive(Clone, Copy, Debug)]
pub struct FloatTol {
    pub jacobi_tol: f64,
    pub jacobi_sweeps: usize,
    /// Relative gap under which two eigenvalues are treated as equal.
    pub cluster: f64,
}

impl Default for FloatTol {
    fn default() -> Self {
        Self {
            jacobi_tol: 1e-12,
            jacobi_sweeps: 100,
            cluster: 1e-9,
        }
    }
}
