//! Nonlinear conjugate gradient toolkit.
//!
//! The crate bundles everything needed to run and compare nonlinear CG
//! variants on smooth unconstrained problems:
//!
//! - [`objective`]: problem abstraction with evaluation counting and a
//!   finite-difference gradient checker.
//! - [`linesearch`]: strong Wolfe-Powell step selection (bracket + zoom).
//! - [`directions`]: the CG coefficient formulas (FR, PRP, HS, HRM, NHS and
//!   the adaptive hybrid AWHM), the direction update and the restart test.
//! - [`solver`]: the full iterative method with trace recording.
//! - [`benchsuite`]: a registry of standard test functions with analytic
//!   gradients and scalable dimensions.
//! - [`profiles`]: Dolan-More performance profiles (CSV and SVG emission).
//! - [`mlapp`]: a convex softmax token classifier over synthetic BIO-tagged
//!   data, trained by the solver and scored with precision/recall/F1.
//! - [`sweep`]: the parallel benchmark runner behind the `bench` subcommand.

// Validators spell positivity checks as `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod benchsuite;
pub mod directions;
pub mod error;
pub mod linesearch;
pub mod manifest;
pub mod mlapp;
pub mod objective;
pub mod profiles;
pub mod solver;
pub mod sweep;
pub mod vecops;

pub use error::{Error, Result};
pub use objective::{check_gradient, EvalCounters, Evaluator, ObjectiveProblem};
pub use solver::{solve, solve_traced, Method, SolveResult, SolveStatus, SolverConfig};
