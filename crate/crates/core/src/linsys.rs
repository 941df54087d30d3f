//! Exact dense linear algebra over [`GaussianRational`].
//!
//! Elimination processes rows top to bottom. Each row is reduced against
//! the pivot rows found so far; a row that reduces to zero is dependent and
//! gets a certificate expressing it as a combination of earlier pivot rows.
//! Right-hand sides are generic so the same elimination can carry symbolic
//! data (see [`RhsValue`]).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::GaussianRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<GaussianRational>,
}

impl Matrix {
    /// Row-major entries; `entries.len()` must equal `rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<GaussianRational>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Self { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| GaussianRational::from(v)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = GaussianRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussianRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(idx.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    /// The columns in `idx`, in that order.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let rows = (0..self.rows).map(|r| idx.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        let mut m = Self::from_rows(rows);
        m.cols = idx.len();
        m
    }
}

/// Values that can ride along as the right-hand side of an elimination.
pub trait RhsValue: Clone {
    /// A zero of the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    /// `self -= factor * other`
    fn sub_scaled(&mut self, other: &Self, factor: &GaussianRational);
    fn scale(&mut self, factor: &GaussianRational);
}

impl RhsValue for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }

    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sub_scaled(&mut self, other: &Self, factor: &GaussianRational) {
        *self -= &(other * factor);
    }

    fn scale(&mut self, factor: &GaussianRational) {
        *self *= factor;
    }
}

/// No right-hand side at all (rank computations).
impl RhsValue for () {
    fn zero_like(&self) -> Self {}
    fn vanishes(&self) -> bool {
        true
    }
    fn sub_scaled(&mut self, _: &Self, _: &GaussianRational) {}
    fn scale(&mut self, _: &GaussianRational) {}
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveKind {
    Unique,
    Underdetermined,
    Inconsistent,
}

/// `row = Σ coefficient · pivot_row`, over pivot rows preceding `row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCertificate {
    pub row: usize,
    pub combination: Vec<(usize, GaussianRational)>,
}

impl RowCertificate {
    /// The combination evaluated against `m`; equals `m.row(self.row)`.
    pub fn expand(&self, m: &Matrix) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); m.cols()];
        for (r, c) in &self.combination {
            for (o, x) in out.iter_mut().zip(m.row(*r)) {
                *o += &(x * c);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome<R = GaussianRational> {
    pub kind: SolveKind,
    pub particular: Option<Vec<R>>,
    pub nullspace_basis: Vec<Vec<GaussianRational>>,
    pub dependent_row_certificates: Vec<RowCertificate>,
}

struct PivotRow<R> {
    source: usize,
    col: usize,
    entries: Vec<GaussianRational>,
    rhs: R,
    combination: Vec<GaussianRational>,
}

/// Result of eliminating a system; the reduced pivot rows are in reduced
/// row echelon form with unit pivots.
#[derive(Clone, Debug)]
pub struct Reduction<R> {
    cols: usize,
    pivot_rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    reduced: Vec<Vec<GaussianRational>>,
    reduced_rhs: Vec<R>,
    certificates: Vec<RowCertificate>,
    residuals: Vec<R>,
}

pub fn reduce<R: RhsValue>(m: &Matrix, rhs: &[R]) -> Result<Reduction<R>, Error> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: rhs.len() });
    }
    let mut basis: Vec<PivotRow<R>> = Vec::new();
    let mut certificates = Vec::new();
    let mut residuals = Vec::new();

    for r in 0..m.rows() {
        let mut v = m.row(r).to_vec();
        let mut rv = rhs[r].clone();
        let mut comb = vec![GaussianRational::zero(); m.rows()];
        comb[r] = GaussianRational::one();
        for b in &basis {
            if v[b.col].is_zero() {
                continue;
            }
            let f = v[b.col].clone();
            axpy(&mut v, &b.entries, &f);
            rv.sub_scaled(&b.rhs, &f);
            axpy(&mut comb, &b.combination, &f);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(col) => {
                let inv = v[col].inv()?;
                v.iter_mut().for_each(|x| *x *= &inv);
                rv.scale(&inv);
                comb.iter_mut().for_each(|x| *x *= &inv);
                basis.push(PivotRow { source: r, col, entries: v, rhs: rv, combination: comb });
            }
            None => {
                // comb · rows = 0 with comb[r] = 1
                let combination =
                    comb.iter().enumerate().filter(|(k, c)| *k != r && !c.is_zero()).map(|(k, c)| (k, -c)).collect();
                certificates.push(RowCertificate { row: r, combination });
                residuals.push(rv);
            }
        }
    }

    // back substitution to reduced echelon form
    for i in (0..basis.len()).rev() {
        let (head, tail) = basis.split_at_mut(i);
        let piv = &tail[0];
        for b in head.iter_mut() {
            if b.entries[piv.col].is_zero() {
                continue;
            }
            let f = b.entries[piv.col].clone();
            axpy(&mut b.entries, &piv.entries, &f);
            b.rhs.sub_scaled(&piv.rhs, &f);
        }
    }

    let mut pivot_rows = Vec::with_capacity(basis.len());
    let mut pivot_cols = Vec::with_capacity(basis.len());
    let mut reduced = Vec::with_capacity(basis.len());
    let mut reduced_rhs = Vec::with_capacity(basis.len());
    for b in basis {
        pivot_rows.push(b.source);
        pivot_cols.push(b.col);
        reduced.push(b.entries);
        reduced_rhs.push(b.rhs);
    }
    Ok(Reduction { cols: m.cols(), pivot_rows, pivot_cols, reduced, reduced_rhs, certificates, residuals })
}

fn axpy(target: &mut [GaussianRational], source: &[GaussianRational], f: &GaussianRational) {
    for (t, s) in target.iter_mut().zip(source) {
        if !s.is_zero() {
            *t -= &(s * f);
        }
    }
}

impl<R: RhsValue> Reduction<R> {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Original indices of the rows that carry pivots, in elimination order.
    pub fn pivot_rows(&self) -> &[usize] {
        &self.pivot_rows
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Columns without a pivot, ascending.
    pub fn free_cols(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivot_cols.contains(c)).collect()
    }

    pub fn certificates(&self) -> &[RowCertificate] {
        &self.certificates
    }

    /// For each certificate, `rhs[row] − Σ λ_k rhs[k]`. The system is
    /// consistent iff all of these vanish.
    pub fn residuals(&self) -> &[R] {
        &self.residuals
    }

    pub fn is_consistent(&self) -> bool {
        self.residuals.iter().all(RhsValue::vanishes)
    }

    /// The solution of the pivot-row subsystem with all free columns set
    /// to zero. Satisfies the full system iff [`Self::is_consistent`].
    pub fn pivot_solution(&self, zero: &R) -> Vec<R> {
        let mut x = vec![zero.zero_like(); self.cols];
        for (col, v) in self.pivot_cols.iter().zip(&self.reduced_rhs) {
            x[*col] = v.clone();
        }
        x
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<GaussianRational>> {
        self.free_cols()
            .into_iter()
            .map(|f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (row, col) in self.reduced.iter().zip(&self.pivot_cols) {
                    v[*col] = -&row[f];
                }
                v
            })
            .collect()
    }

    pub fn outcome(&self, zero: &R) -> SolveOutcome<R> {
        let kind = if !self.is_consistent() {
            SolveKind::Inconsistent
        } else if self.rank() == self.cols {
            SolveKind::Unique
        } else {
            SolveKind::Underdetermined
        };
        SolveOutcome {
            kind,
            particular: (kind != SolveKind::Inconsistent).then(|| self.pivot_solution(zero)),
            nullspace_basis: self.nullspace_basis(),
            dependent_row_certificates: self.certificates.clone(),
        }
    }
}

/// Solves `m x = rhs` exactly.
pub fn eliminate(m: &Matrix, rhs: &[GaussianRational]) -> Result<SolveOutcome, Error> {
    Ok(reduce(m, rhs)?.outcome(&GaussianRational::zero()))
}

pub fn rank(m: &Matrix) -> usize {
    reduce(m, &vec![(); m.rows()]).map_or(0, |r| r.rank())
}

pub fn det(m: &Matrix) -> Result<GaussianRational, Error> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut a: Vec<Vec<GaussianRational>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut acc = GaussianRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ok(GaussianRational::zero());
        };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        let inv = a[c][c].inv()?;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            axpy(&mut bottom[0][c..], &top[c][c..], &f);
        }
        acc *= &a[c][c];
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from(v)
    }

    fn gv(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| g(x)).collect()
    }

    #[test]
    fn identity_system() {
        let out = eliminate(&Matrix::identity(3), &gv(&[1, 2, 3])).unwrap();
        assert_eq!(out.kind, SolveKind::Unique);
        assert_eq!(out.particular.unwrap(), gv(&[1, 2, 3]));
        assert!(out.nullspace_basis.is_empty());
    }

    #[test]
    fn rank_one_system() {
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        let out = eliminate(&m, &gv(&[1, 2])).unwrap();
        assert_eq!(out.kind, SolveKind::Underdetermined);
        assert_eq!(out.nullspace_basis.len(), 1);
        assert_eq!(out.dependent_row_certificates, vec![RowCertificate { row: 1, combination: vec![(0, g(2))] }]);
        assert_eq!(m.mul_vec(&out.particular.unwrap()), gv(&[1, 2]));
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        let out = eliminate(&m, &gv(&[1, 3])).unwrap();
        assert_eq!(out.kind, SolveKind::Inconsistent);
        assert!(out.particular.is_none());
    }

    #[test]
    fn rhs_length_checked() {
        let r = eliminate(&Matrix::identity(2), &gv(&[1]));
        assert!(matches!(r, Err(Error::DimensionMismatch { expected: 2, found: 1 })));
    }

    #[test]
    fn determinants() {
        let m = Matrix::from_ints(&[&[0, 0, 1], &[1, 0, 0], &[1, 1, 1]]);
        assert_eq!(det(&m).unwrap(), g(1));
        assert_eq!(rank(&m), 3);
        let rep = Matrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]);
        assert_eq!(det(&rep).unwrap(), g(0));
        let mut d = Matrix::zeros(3, 3);
        d.set(0, 0, g(2));
        d.set(1, 1, g(3));
        d.set(2, 2, GaussianRational::ratio(1, 2));
        assert_eq!(det(&d).unwrap(), g(3));
        assert!(matches!(det(&Matrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Matrix::zeros(3, 4)), 0);
        assert_eq!(rank(&Matrix::from_ints(&[&[1, 1], &[2, 2]])), 1);
    }

    #[test]
    fn select_cols_keeps_order() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(m.select_cols(&[2, 0]), Matrix::from_ints(&[&[3, 1], &[6, 4]]));
    }
}
