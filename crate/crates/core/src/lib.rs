//! Spectral solvers for the nonlinear Schrödinger equation
//! `i u_t + Δu + |u|^α u = 0` on the unit ball (1D interval, 2D radial)
//! with homogeneous Dirichlet boundary conditions.
//!
//! The crate is organised around the pipeline used in the stability
//! experiments:
//!
//! * [`cheb`] — Chebyshev collocation grids, differentiation matrices and
//!   Clenshaw-Curtis quadrature,
//! * [`reference`] — closed-form reference objects (1D solitons, Laplacian
//!   eigenpairs, Bessel `J0`, criticality classification),
//! * [`ground_state`] — Newton/continuation solver for the ground states
//!   `Q_b` with Pokhozhaev-identity validation,
//! * [`evolve`] — Crank-Nicolson time integrator with conservation monitors
//!   and blow-up detection,
//! * [`experiments`] — scripted mass/energy sweeps, branch-point detection,
//!   perturbation classification and convergence studies,
//! * [`io`] — profile persistence and CSV emission.

pub mod cheb;
pub mod error;
pub mod evolve;
pub mod experiments;
pub mod ground_state;
pub mod io;
pub mod operator;
pub mod reference;

pub use error::{Error, Result};
