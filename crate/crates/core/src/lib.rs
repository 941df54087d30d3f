//! Exact construction of second-order Fuchsian equations
//! `w'' + (G/ψ) w' + (H/ψ²) w = 0` with prescribed exponents at finite
//! points `t_1..t_n` and at infinity, and apparent singularities of weight
//! one (exponents `{0, 2}`, no logarithm) with prescribed momenta at points
//! `q_1..q_N`.
//!
//! All arithmetic is exact over the Gaussian rationals. [`builder`] solves
//! the Vandermonde system for `G` and the confluent Vandermonde system for
//! `H`; [`frobenius`] checks the result independently by local series
//! expansion; [`overdet`] covers `N ≠ n − 2`.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod builder;
pub mod error;
pub mod frobenius;
pub mod laurent;
pub mod linsys;
pub mod model;
pub mod overdet;
pub mod poly;
pub mod sample;
pub mod scalar;

pub use error::Error;
pub use model::{ApparentPoint, Case, ExponentPair, FinitePoint, FuchsianEquation, FuchsianInstance};
pub use poly::Polynomial;
pub use scalar::GaussianRational;
