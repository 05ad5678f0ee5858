//! Sparse solvers for linear complementarity problems.
//!
//! `LCP(q, A)`: find `z >= 0` with `w = A z + q >= 0` and `z^T w = 0`.
//! The crate implements the modulus reformulation of the problem as an
//! absolute-value fixed-point equation and two families of matrix-splitting
//! sweeps over it: an accelerated family whose splitting is shifted by
//! `I - L` (Jacobi / Gauss-Seidel / SOR / AOR relaxations plus two
//! modulus forms), and the classical modulus-based baselines they are
//! benchmarked against.
//!
//! Alongside the solvers there is a certification module (matrix classes,
//! a certified spectral-radius bound for the sweep contraction, and
//! relaxation-diagonal domain checks), Matrix Market I/O, generators for
//! two block-tridiagonal benchmark families, and a CLI that reproduces
//! iteration-count tables.
//!
//! ```
//! use lcpkit::problem::gen_example1;
//! use lcpkit::solver::{solve, SolverConfig, SolveStatus};
//! use lcpkit::sparse::DiagonalMatrix;
//! use lcpkit::splitting::make_namgs;
//!
//! let p = gen_example1(10, 4.0).unwrap();
//! let omega = DiagonalMatrix::new(p.a().diagonal()).scaled(0.5);
//! let spec = make_namgs(p.a(), &omega).unwrap();
//! let report = solve(&p, &spec, &SolverConfig::default()).unwrap();
//! assert_eq!(report.status, SolveStatus::Converged);
//! assert!(report.final_residual < 1e-5);
//! ```

pub mod certify;
pub mod cli;
pub mod dense;
pub mod error;
pub mod market;
pub mod problem;
pub mod solver;
pub mod sparse;
pub mod splitting;

pub use error::{Error, Result};
