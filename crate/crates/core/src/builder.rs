//! Assembly and exact solution of the two linear systems that determine an
//! equation with prescribed local data.
//!
//! The coefficients of `G` come from a Vandermonde system with one row per
//! finite point (`G(t_i) = α_i`) and one per apparent point
//! (`G(q_j) = γ_j`). The condition at infinity is implied by the others
//! through the residue theorem and is checked after solving rather than
//! included as a row.
//!
//! The coefficients of `H` come from a confluent Vandermonde system. Rows
//! are frozen in this order:
//!
//! 1. infinity: `H_{2(n+N−1)} = λ_1 λ_2`
//! 2. value rows at `t_1..t_n`: `H(t_i) = ρ^i_1 ρ^i_2 ψ'(t_i)²`
//! 3. value rows at `q_1..q_N`: `H(q_j) = 0`
//! 4. slope rows at `q_1..q_N`: `H'(q_j) = p_j ψ'(q_j)²`
//! 5. curvature rows at `q_1..q_N`: `H''(q_j) = δ_j p_j² + ε_j p_j`

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linsys::{self, Matrix, SolveKind};
use crate::model::{Case, FuchsianEquation, FuchsianInstance};
use crate::poly::{falling_factorial, Polynomial};
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointRef {
    Finite(usize),
    Apparent(usize),
}

/// Right-hand side of the `G`-row for a point: `α_i = (1 − ρ^i_1 − ρ^i_2) ψ'(t_i)`
/// or `γ_j = −ψ'(q_j)`.
pub fn g_rhs(instance: &FuchsianInstance, point: PointRef) -> GaussianRational {
    let dpsi = instance.psi().derivative(1);
    match point {
        PointRef::Finite(i) => {
            let p = &instance.finite_points[i];
            (GaussianRational::one() - p.exponents.sum()) * dpsi.eval(&p.t)
        }
        PointRef::Apparent(j) => -dpsi.eval(&instance.apparent_points[j].q),
    }
}

fn nodes(instance: &FuchsianInstance) -> Vec<GaussianRational> {
    instance
        .finite_points
        .iter()
        .map(|p| p.t.clone())
        .chain(instance.apparent_points.iter().map(|a| a.q.clone()))
        .collect()
}

/// Row of `d^k/dz^k z^m` evaluated at `x`, for `m = 0..width`.
fn derivative_row(x: &GaussianRational, k: usize, width: usize) -> Vec<GaussianRational> {
    let mut out = Vec::with_capacity(width);
    let mut power = GaussianRational::one();
    for m in 0..width {
        if m < k {
            out.push(GaussianRational::zero());
        } else {
            out.push(&falling_factorial(m, k) * &power);
            power *= x;
        }
    }
    out
}

/// The `(n+N) × (n+N)` Vandermonde system for the coefficients of `G`,
/// rows `t_1..t_n` then `q_1..q_N`.
pub fn build_g_system(instance: &FuchsianInstance) -> (Matrix, Vec<GaussianRational>) {
    let width = instance.g_degree_bound() + 1;
    let rows = nodes(instance).iter().map(|x| derivative_row(x, 0, width)).collect();
    let rhs = (0..instance.n())
        .map(PointRef::Finite)
        .chain((0..instance.apparent_count()).map(PointRef::Apparent))
        .map(|p| g_rhs(instance, p))
        .collect();
    (Matrix::from_rows(rows), rhs)
}

/// The value `G_{n+N−1}` must take for the given exponents at infinity.
pub fn g_leading_target(instance: &FuchsianInstance) -> GaussianRational {
    GaussianRational::one() + instance.infinity_exponents.sum()
}

/// Solves for `G` and checks the omitted condition at infinity.
pub fn solve_g(instance: &FuchsianInstance) -> Result<Polynomial, Error> {
    instance.require_valid()?;
    let (m, rhs) = build_g_system(instance);
    let out = linsys::eliminate(&m, &rhs)?;
    if out.kind != SolveKind::Unique {
        return Err(Error::NotUnique);
    }
    let coeffs = out.particular.expect("unique outcome carries a solution");
    let found = coeffs[instance.g_degree_bound()].clone();
    let expected = g_leading_target(instance);
    if found != expected {
        return Err(Error::InconsistentAtInfinity { expected: Box::new(expected), found: Box::new(found) });
    }
    Ok(Polynomial::new(coeffs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HRow {
    Infinity,
    FiniteValue(usize),
    ApparentValue(usize),
    ApparentSlope(usize),
    ApparentCurvature(usize),
}

/// Row kinds of the `H`-system in their frozen order.
pub fn h_rows(instance: &FuchsianInstance) -> Vec<HRow> {
    let n_app = instance.apparent_count();
    core::iter::once(HRow::Infinity)
        .chain((0..instance.n()).map(HRow::FiniteValue))
        .chain((0..n_app).map(HRow::ApparentValue))
        .chain((0..n_app).map(HRow::ApparentSlope))
        .chain((0..n_app).map(HRow::ApparentCurvature))
        .collect()
}

pub fn h_row_entries(instance: &FuchsianInstance, row: HRow) -> Vec<GaussianRational> {
    let width = instance.h_degree_bound() + 1;
    let q = |j: usize| &instance.apparent_points[j].q;
    match row {
        HRow::Infinity => {
            let mut v = alloc::vec![GaussianRational::zero(); width];
            v[width - 1] = GaussianRational::one();
            v
        }
        HRow::FiniteValue(i) => derivative_row(&instance.finite_points[i].t, 0, width),
        HRow::ApparentValue(j) => derivative_row(q(j), 0, width),
        HRow::ApparentSlope(j) => derivative_row(q(j), 1, width),
        HRow::ApparentCurvature(j) => derivative_row(q(j), 2, width),
    }
}

/// The `(n+3N+1) × (2n+2N−1)` confluent Vandermonde matrix. It depends only
/// on the point positions.
pub fn h_matrix(instance: &FuchsianInstance) -> Matrix {
    Matrix::from_rows(h_rows(instance).into_iter().map(|r| h_row_entries(instance, r)).collect())
}

/// Closed-form local constants at an apparent point `q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalConstants {
    /// `ψ'(q_j)`
    pub psi1: GaussianRational,
    /// `ψ''(q_j)`
    pub psi2: GaussianRational,
    /// `1/ψ'(q_j)²`
    pub mu: GaussianRational,
    /// `−ψ''(q_j)/ψ'(q_j)³`
    pub kappa: GaussianRational,
    /// Order-0 coefficient of `G/ψ` at `q_j`.
    pub g1: GaussianRational,
    /// `−2ψ'(q_j)²`
    pub delta: GaussianRational,
    /// `−2ψ'(q_j)² (g1 − ψ''(q_j)/ψ'(q_j))`
    pub epsilon: GaussianRational,
}

pub fn local_constants(instance: &FuchsianInstance, g: &Polynomial, j: usize) -> LocalConstants {
    let psi = instance.psi();
    let q = &instance.apparent_points[j].q;
    let psi1 = psi.derivative(1).eval(q);
    let psi2 = psi.derivative(2).eval(q);
    let psi1_sq = &psi1 * &psi1;
    let mu = psi1_sq.inv().expect("apparent points are simple roots of psi");
    let kappa = -(&psi2 / &(&psi1_sq * &psi1));
    let two = GaussianRational::from(2);
    let g1 = &(&g.derivative(1).eval(q) / &psi1) + &(&psi2 / &(&two * &psi1));
    let delta = -(&two * &psi1_sq);
    let epsilon = &delta * &(&g1 - &(&psi2 / &psi1));
    LocalConstants { psi1, psi2, mu, kappa, g1, delta, epsilon }
}

/// Right-hand side of one `H`-row, given the solved `G`.
pub fn h_rhs(instance: &FuchsianInstance, g: &Polynomial, row: HRow) -> GaussianRational {
    let dpsi = || instance.psi().derivative(1);
    match row {
        HRow::Infinity => instance.infinity_exponents.product(),
        HRow::FiniteValue(i) => {
            let p = &instance.finite_points[i];
            let d = dpsi().eval(&p.t);
            p.exponents.product() * &d * &d
        }
        HRow::ApparentValue(_) => GaussianRational::zero(),
        HRow::ApparentSlope(j) => {
            let a = &instance.apparent_points[j];
            let d = dpsi().eval(&a.q);
            &a.momentum * &(&d * &d)
        }
        HRow::ApparentCurvature(j) => {
            let c = local_constants(instance, g, j);
            let p = &instance.apparent_points[j].momentum;
            &(&c.delta * &(p * p)) + &(&c.epsilon * p)
        }
    }
}

pub fn build_h_system(instance: &FuchsianInstance, g: &Polynomial) -> (Matrix, Vec<GaussianRational>) {
    let rhs = h_rows(instance).into_iter().map(|r| h_rhs(instance, g, r)).collect();
    (h_matrix(instance), rhs)
}

/// The unique equation for an instance with exactly `n − 2` apparent points.
pub fn construct(instance: &FuchsianInstance) -> Result<FuchsianEquation, Error> {
    instance.require_valid()?;
    let case = instance.case();
    if case != Case::Square {
        return Err(Error::WrongCase { expected: Case::Square, found: case });
    }
    let g = solve_g(instance)?;
    let (m, rhs) = build_h_system(instance, &g);
    let out = linsys::eliminate(&m, &rhs)?;
    // full rank for distinct points; anything else is a bug
    if out.kind != SolveKind::Unique {
        return Err(Error::NotUnique);
    }
    let h = Polynomial::new(out.particular.expect("unique outcome carries a solution"));
    FuchsianEquation::new(instance.clone(), g, h)
}

/// `∏_{i<k}(t_i − t_k) ∏_{i,j}(t_i − q_j)³ ∏_{j<l}(q_j − q_l)⁹`, the point
/// dependence of the square `H`-matrix determinant.
pub fn confluent_product(instance: &FuchsianInstance) -> GaussianRational {
    let t: Vec<_> = instance.finite_points.iter().map(|p| &p.t).collect();
    let q: Vec<_> = instance.apparent_points.iter().map(|a| &a.q).collect();
    let mut acc = GaussianRational::one();
    for i in 0..t.len() {
        for k in i + 1..t.len() {
            acc *= &(t[i] - t[k]);
        }
        for qj in &q {
            acc *= &(t[i] - *qj).pow(3);
        }
    }
    for j in 0..q.len() {
        for l in j + 1..q.len() {
            acc *= &(q[j] - q[l]).pow(9);
        }
    }
    acc
}
