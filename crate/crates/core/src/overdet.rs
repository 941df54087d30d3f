//! Instances whose number `N` of apparent points differs from `n − 2`.
//!
//! For `N < n − 2` the `H`-system has full row rank and `n − 2 − N`
//! coefficients stay free. For `N > n − 2` it has full column rank and the
//! surplus curvature rows are linear combinations of the pivot rows; the
//! momenta must then satisfy one quadratic equation per surplus row. Either
//! way the family has dimension `n − 2`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::builder::{self, h_matrix, h_rows, local_constants, solve_g, HRow};
use crate::error::Error;
use crate::frobenius::verify;
use crate::laurent::series_divide;
use crate::linsys::{self, reduce, Matrix, Reduction, RhsValue, RowCertificate, SolveKind};
use crate::model::{Case, FuchsianEquation, FuchsianInstance};
use crate::poly::Polynomial;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub n: usize,
    pub apparent: usize,
    pub case: Case,
    /// `n − 2 − N` in the under case, else 0.
    pub h_free_dim: usize,
    /// `N − n + 2` in the over case, else 0.
    pub constraint_count: usize,
    /// `N + h_free_dim − constraint_count`.
    pub total_dimension: usize,
}

pub fn classify(instance: &FuchsianInstance) -> CaseReport {
    let n = instance.n();
    let apparent = instance.apparent_count();
    let cols = 2 * n + 2 * apparent - 1;
    let rows = n + 3 * apparent + 1;
    let h_free_dim = cols.saturating_sub(rows);
    let constraint_count = rows.saturating_sub(cols);
    CaseReport {
        n,
        apparent,
        case: instance.case(),
        h_free_dim,
        constraint_count,
        total_dimension: apparent + h_free_dim - constraint_count,
    }
}

/// An affine-quadratic, diagonal polynomial in the momenta:
/// `constant + Σ lin_k p_k + Σ quad_k p_k²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumPoly {
    pub constant: GaussianRational,
    pub lin: Vec<GaussianRational>,
    pub quad: Vec<GaussianRational>,
}

impl MomentumPoly {
    pub fn zero(vars: usize) -> Self {
        Self {
            constant: GaussianRational::zero(),
            lin: vec![GaussianRational::zero(); vars],
            quad: vec![GaussianRational::zero(); vars],
        }
    }

    pub fn constant(c: GaussianRational, vars: usize) -> Self {
        Self { constant: c, ..Self::zero(vars) }
    }

    pub fn eval(&self, p: &[GaussianRational]) -> GaussianRational {
        let mut acc = self.constant.clone();
        for (k, pk) in p.iter().enumerate() {
            acc += &(&self.lin[k] * pk);
            acc += &(&self.quad[k] * &(pk * pk));
        }
        acc
    }

    pub fn eval_complex(&self, p: &[Complex64]) -> Complex64 {
        let mut acc = self.constant.to_complex64();
        for (k, pk) in p.iter().enumerate() {
            acc += self.lin[k].to_complex64() * pk + self.quad[k].to_complex64() * pk * pk;
        }
        acc
    }
}

impl RhsValue for MomentumPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.lin.len())
    }

    fn vanishes(&self) -> bool {
        self.constant.is_zero() && self.lin.iter().all(Zero::is_zero) && self.quad.iter().all(Zero::is_zero)
    }

    fn sub_scaled(&mut self, other: &Self, factor: &GaussianRational) {
        self.constant.sub_scaled(&other.constant, factor);
        for (a, b) in self.lin.iter_mut().zip(&other.lin) {
            a.sub_scaled(b, factor);
        }
        for (a, b) in self.quad.iter_mut().zip(&other.quad) {
            a.sub_scaled(b, factor);
        }
    }

    fn scale(&mut self, factor: &GaussianRational) {
        self.constant *= factor;
        self.lin.iter_mut().for_each(|x| *x *= factor);
        self.quad.iter_mut().for_each(|x| *x *= factor);
    }
}

/// Right-hand side of an `H`-row as a polynomial in the momenta.
pub fn h_rhs_symbolic(instance: &FuchsianInstance, g: &Polynomial, row: HRow) -> MomentumPoly {
    let vars = instance.apparent_count();
    let dpsi = instance.psi().derivative(1);
    match row {
        HRow::Infinity => MomentumPoly::constant(instance.infinity_exponents.product(), vars),
        HRow::FiniteValue(i) => {
            let p = &instance.finite_points[i];
            let d = dpsi.eval(&p.t);
            MomentumPoly::constant(p.exponents.product() * &d * &d, vars)
        }
        HRow::ApparentValue(_) => MomentumPoly::zero(vars),
        HRow::ApparentSlope(j) => {
            let d = dpsi.eval(&instance.apparent_points[j].q);
            let mut m = MomentumPoly::zero(vars);
            m.lin[j] = &d * &d;
            m
        }
        HRow::ApparentCurvature(j) => {
            let c = local_constants(instance, g, j);
            let mut m = MomentumPoly::zero(vars);
            m.quad[j] = c.delta;
            m.lin[j] = c.epsilon;
            m
        }
    }
}

/// One solvability condition on the momenta, indexed by the apparent point
/// whose curvature row is dependent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticConstraint {
    pub j: usize,
    pub quad: BTreeMap<usize, GaussianRational>,
    pub lin: BTreeMap<usize, GaussianRational>,
    pub const_term: GaussianRational,
}

impl QuadraticConstraint {
    fn from_residual(j: usize, r: &MomentumPoly) -> Self {
        let nonzero = |v: &[GaussianRational]| {
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
        };
        Self { j, quad: nonzero(&r.quad), lin: nonzero(&r.lin), const_term: r.constant.clone() }
    }

    pub fn eval(&self, p: &[GaussianRational]) -> GaussianRational {
        let mut acc = self.const_term.clone();
        for (k, c) in &self.lin {
            acc += &(c * &p[*k]);
        }
        for (k, c) in &self.quad {
            acc += &(c * &(&p[*k] * &p[*k]));
        }
        acc
    }

    /// `(a, b, c)` of `a p_j² + b p_j + c` with every other momentum fixed
    /// at its value in `p`.
    pub fn restrict(&self, p: &[GaussianRational]) -> (GaussianRational, GaussianRational, GaussianRational) {
        let zero = GaussianRational::zero();
        let a = self.quad.get(&self.j).cloned().unwrap_or_else(GaussianRational::zero);
        let b = self.lin.get(&self.j).cloned().unwrap_or_else(GaussianRational::zero);
        let mut rest = p.to_vec();
        rest[self.j] = zero;
        (a, b, self.eval(&rest))
    }
}

/// Exact analysis of an over-case instance: the symbolic elimination of the
/// `H`-system and the constraints read off its dependent rows.
#[derive(Clone, Debug)]
pub struct OverSystem {
    instance: FuchsianInstance,
    g: Polynomial,
    matrix: Matrix,
    reduction: Reduction<MomentumPoly>,
    constraints: Vec<QuadraticConstraint>,
}

pub fn over_system(instance: &FuchsianInstance) -> Result<OverSystem, Error> {
    instance.require_valid()?;
    let case = instance.case();
    if case != Case::Over {
        return Err(Error::WrongCase { expected: Case::Over, found: case });
    }
    let g = solve_g(instance)?;
    let rows = h_rows(instance);
    let matrix = h_matrix(instance);
    let rhs: Vec<MomentumPoly> = rows.iter().map(|r| h_rhs_symbolic(instance, &g, *r)).collect();
    let reduction = reduce(&matrix, &rhs)?;
    if reduction.rank() != matrix.cols() {
        return Err(Error::NotUnique);
    }
    let constraints = reduction
        .certificates()
        .iter()
        .zip(reduction.residuals())
        .map(|(cert, res)| match rows[cert.row] {
            HRow::ApparentCurvature(j) => Ok(QuadraticConstraint::from_residual(j, res)),
            _ => Err(Error::UnexpectedDependentRow { row: cert.row }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(OverSystem { instance: instance.clone(), g, matrix, reduction, constraints })
}

impl OverSystem {
    pub fn instance(&self) -> &FuchsianInstance {
        &self.instance
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn constraints(&self) -> &[QuadraticConstraint] {
        &self.constraints
    }

    pub fn certificates(&self) -> &[RowCertificate] {
        self.reduction.certificates()
    }

    pub fn pivot_rows(&self) -> &[usize] {
        self.reduction.pivot_rows()
    }

    /// Coefficients of `H` from the pivot rows, as polynomials in the momenta.
    pub fn symbolic_h(&self) -> Vec<MomentumPoly> {
        self.reduction.pivot_solution(&MomentumPoly::zero(self.instance.apparent_count()))
    }

    /// `H` solving the pivot rows for the momenta `p`.
    pub fn h_at(&self, p: &[GaussianRational]) -> Polynomial {
        Polynomial::new(self.symbolic_h().iter().map(|c| c.eval(p)).collect())
    }

    pub fn h_at_complex(&self, p: &[Complex64]) -> Vec<Complex64> {
        self.symbolic_h().iter().map(|c| c.eval_complex(p)).collect()
    }

    /// Floating-point verification of the equation obtained for momenta `p`.
    pub fn float_verify(&self, p: &[Complex64], tolerance: f64) -> FloatReport {
        float_verify(&self.instance, &self.g, &self.h_at_complex(p), p, tolerance)
    }
}

pub fn quadratic_constraints(instance: &FuchsianInstance) -> Result<Vec<QuadraticConstraint>, Error> {
    Ok(over_system(instance)?.constraints)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MomentumCheck {
    Consistent(Box<FuchsianEquation>),
    /// Constraints that fail at the instance's momenta, with their values.
    Inconsistent {
        witness: Vec<(usize, GaussianRational)>,
    },
}

/// Decides whether the instance's own momenta admit an equation.
pub fn check_momenta(instance: &FuchsianInstance) -> Result<MomentumCheck, Error> {
    let sys = over_system(instance)?;
    let p = instance.momenta();
    let witness: Vec<_> = sys.constraints.iter().map(|c| (c.j, c.eval(&p))).filter(|(_, v)| !v.is_zero()).collect();
    if !witness.is_empty() {
        return Ok(MomentumCheck::Inconsistent { witness });
    }
    let eq = FuchsianEquation::new(instance.clone(), sys.g.clone(), sys.h_at(&p))?;
    if !verify(&eq).overall {
        return Err(Error::VerificationFailed);
    }
    Ok(MomentumCheck::Consistent(Box::new(eq)))
}

/// Roots in Q(i) of constraint `c` viewed as a quadratic in `p_j`, the other
/// momenta fixed at `p`.
pub fn exact_momentum_roots(
    c: &QuadraticConstraint,
    p: &[GaussianRational],
) -> Option<(GaussianRational, GaussianRational)> {
    let (a, b, cc) = c.restrict(p);
    if a.is_zero() {
        return None;
    }
    let disc = &(&b * &b) - &(&GaussianRational::from(4) * &(&a * &cc));
    let r = disc.sqrt()?;
    let two_a = &GaussianRational::from(2) * &a;
    Some((&(-&b + &r) / &two_a, &(-&b - &r) / &two_a))
}

/// Both roots of `a x² + b x + c`; the larger-magnitude root is computed
/// first and the other recovered from the product `c/a`.
pub fn solve_quadratic_float(a: Complex64, b: Complex64, c: Complex64) -> Result<(Complex64, Complex64), Error> {
    if a == Complex64::zero() {
        return Err(Error::DegenerateQuadratic);
    }
    let sq = (b * b - 4.0 * a * c).sqrt();
    let plus = -b + sq;
    let minus = -b - sq;
    let big = if minus.norm() >= plus.norm() { minus } else { plus };
    let r1 = big / (2.0 * a);
    let r2 = if r1 == Complex64::zero() { Complex64::zero() } else { c / (a * r1) };
    Ok((r1, r2))
}

/// Float roots of constraint `c` in `p_j`, with the other momenta fixed at
/// the instance's values.
pub fn float_momentum_roots(c: &QuadraticConstraint, p: &[GaussianRational]) -> Result<(Complex64, Complex64), Error> {
    let (a, b, cc) = c.restrict(p);
    solve_quadratic_float(a.to_complex64(), b.to_complex64(), cc.to_complex64())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatApparent {
    pub omega_abs: f64,
    pub residue_err: f64,
    pub double_pole_abs: f64,
    pub momentum_err: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FloatReport {
    pub apparent: Vec<FloatApparent>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn complex_taylor(coeffs: &[Complex64], a: Complex64) -> Vec<Complex64> {
    let mut work = coeffs.to_vec();
    let mut out = Vec::with_capacity(work.len());
    while !work.is_empty() {
        let mut carry = Complex64::zero();
        for c in work.iter_mut().rev() {
            let next = carry * a + *c;
            *c = carry;
            carry = next;
        }
        out.push(carry);
        work.pop();
    }
    out
}

fn complex_divide(f: &[Complex64], u: &[Complex64], terms: usize) -> Vec<Complex64> {
    let mut q: Vec<Complex64> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = f.get(k).copied().unwrap_or_default();
        for i in 1..=k.min(u.len() - 1) {
            acc -= u[i] * q[k - i];
        }
        q.push(acc / u[0]);
    }
    q
}

/// Local checks at every apparent point in `f64` complex arithmetic, for an
/// `H` given numerically. `ψ` and `G` expansions are exact up to the final
/// conversion.
pub fn float_verify(
    instance: &FuchsianInstance,
    g: &Polynomial,
    h: &[Complex64],
    p: &[Complex64],
    tolerance: f64,
) -> FloatReport {
    let psi = instance.psi();
    let psi_sq = &psi * &psi;
    let to_c = |v: &[GaussianRational]| v.iter().map(GaussianRational::to_complex64).collect::<Vec<_>>();
    let apparent: Vec<FloatApparent> = instance
        .apparent_points
        .iter()
        .zip(p)
        .map(|(a, pj)| {
            // simple root of psi, double root of psi²: drop the exact zeros
            let psi_t = psi.taylor_at(&a.q);
            let psi_sq_t = psi_sq.taylor_at(&a.q);
            let gq = series_divide(&g.taylor_at(&a.q), &psi_t[1..], 2).expect("q is a simple root of psi");
            let hq = complex_taylor(h, a.q.to_complex64());
            let hs = complex_divide(&hq, &to_c(&psi_sq_t[2..]), 3);
            let (g_res, g0) = (gq[0].to_complex64(), gq[1].to_complex64());
            let (h_dbl, h_res, h0) = (hs[0], hs[1], hs[2]);
            let omega = (g0 + h_res) * h_res + h0;
            FloatApparent {
                omega_abs: omega.norm(),
                residue_err: (g_res + 1.0).norm(),
                double_pole_abs: h_dbl.norm(),
                momentum_err: (h_res - pj).norm(),
            }
        })
        .collect();
    let max_deviation = apparent
        .iter()
        .flat_map(|c| [c.omega_abs, c.residue_err, c.double_pole_abs, c.momentum_err])
        .fold(0.0, f64::max);
    FloatReport { apparent, max_deviation, tolerance, passed: max_deviation < tolerance }
}

/// An equation for an under-case instance together with the coefficients
/// that were fixed by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnderSolution {
    pub equation: FuchsianEquation,
    /// Indices `m` of the pinned `H_m`, ascending.
    pub pinned_columns: Vec<usize>,
    /// True when the trailing coefficients could not be pinned and the
    /// non-pivot columns of the elimination were used instead.
    pub used_fallback: bool,
}

fn solve_pinned(
    m: &Matrix,
    rhs: &[GaussianRational],
    pinned: &[usize],
    values: &[GaussianRational],
) -> Result<Option<Vec<GaussianRational>>, Error> {
    let keep: Vec<usize> = (0..m.cols()).filter(|c| !pinned.contains(c)).collect();
    let reduced = m.select_cols(&keep);
    let rhs: Vec<GaussianRational> = (0..m.rows())
        .map(|r| {
            let mut v = rhs[r].clone();
            for (c, x) in pinned.iter().zip(values) {
                v -= &(m.get(r, *c) * x);
            }
            v
        })
        .collect();
    let out = linsys::eliminate(&reduced, &rhs)?;
    if out.kind != SolveKind::Unique {
        return Ok(None);
    }
    let part = out.particular.expect("unique outcome carries a solution");
    let mut full = vec![GaussianRational::zero(); m.cols()];
    for (c, v) in keep.iter().zip(part) {
        full[*c] = v;
    }
    for (c, v) in pinned.iter().zip(values) {
        full[*c] = v.clone();
    }
    Ok(Some(full))
}

/// Fixes `n − N − 2` coefficients of `H` to `free_values` and solves for the
/// rest. The trailing coefficients `H_{n+3N+1}, …` are tried first; since the
/// top coefficient is already fixed by the exponents at infinity, that
/// choice is usually singular and the non-pivot columns are pinned instead.
pub fn solve_under(instance: &FuchsianInstance, free_values: &[GaussianRational]) -> Result<UnderSolution, Error> {
    instance.require_valid()?;
    let case = instance.case();
    if case != Case::Under {
        return Err(Error::WrongCase { expected: Case::Under, found: case });
    }
    let free = classify(instance).h_free_dim;
    if free_values.len() != free {
        return Err(Error::FreeValuesLength { expected: free, found: free_values.len() });
    }
    let g = solve_g(instance)?;
    let (m, rhs) = builder::build_h_system(instance, &g);

    let trailing: Vec<usize> = (m.cols() - free..m.cols()).collect();
    let (coeffs, pinned, used_fallback) = match solve_pinned(&m, &rhs, &trailing, free_values)? {
        Some(c) => (c, trailing, false),
        None => {
            let pinned = reduce(&m, &rhs)?.free_cols();
            let c = solve_pinned(&m, &rhs, &pinned, free_values)?.ok_or(Error::NotUnique)?;
            (c, pinned, true)
        }
    };
    let equation = FuchsianEquation::new(instance.clone(), g, Polynomial::new(coeffs))?;
    if !verify(&equation).overall {
        return Err(Error::VerificationFailed);
    }
    Ok(UnderSolution { equation, pinned_columns: pinned, used_fallback })
}
