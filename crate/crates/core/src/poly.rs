//! Dense univariate polynomials over [`GaussianRational`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::GaussianRational;

/// Coefficients in ascending degree; trailing zeros are always trimmed, so
/// the zero polynomial has no stored coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Polynomial {
    coeffs: Vec<GaussianRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| GaussianRational::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `z - a`
    pub fn linear_factor(a: &GaussianRational) -> Self {
        Self::new(vec![-a, GaussianRational::one()])
    }

    /// Monic polynomial whose roots are exactly `roots`, with multiplicity.
    pub fn from_roots(roots: &[GaussianRational]) -> Self {
        let mut coeffs = vec![GaussianRational::one()];
        for r in roots {
            // multiply by (z - r) in place
            coeffs.push(GaussianRational::zero());
            for k in (0..coeffs.len()).rev() {
                let lower = if k > 0 { coeffs[k - 1].clone() } else { GaussianRational::zero() };
                coeffs[k] = &lower - &(r * &coeffs[k]);
            }
        }
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Coefficients `0..len`, zero-padded. `len` must not cut off nonzero terms.
    pub fn padded(&self, len: usize) -> Vec<GaussianRational> {
        debug_assert!(self.coeffs.len() <= len);
        (0..len).map(|k| self.coeff(k)).collect()
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.coeffs.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    /// The `k`-th derivative.
    pub fn derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Self::zero();
        }
        let coeffs = (k..self.coeffs.len()).map(|d| &self.coeffs[d] * &falling_factorial(d, k)).collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Taylor coefficients at `a`: the coefficients of `x ↦ P(a + x)`.
    pub fn taylor_at(&self, a: &GaussianRational) -> Vec<GaussianRational> {
        // repeated synthetic division by (z - a)
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(work.len());
        while !work.is_empty() {
            let mut carry = GaussianRational::zero();
            for c in work.iter_mut().rev() {
                let next = &(&carry * a) + &*c;
                *c = carry;
                carry = next;
            }
            out.push(carry);
            work.pop();
        }
        out
    }

    /// The first `len` Taylor coefficients at `a`, padded with zeros.
    pub fn taylor_prefix(&self, a: &GaussianRational, len: usize) -> Vec<GaussianRational> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(len);
        while out.len() < len {
            let Some(top) = work.pop() else {
                out.push(GaussianRational::zero());
                continue;
            };
            let mut carry = top;
            for c in work.iter_mut().rev() {
                let next = &(&carry * a) + &*c;
                *c = carry;
                carry = next;
            }
            out.push(carry);
        }
        out
    }

    /// `z ↦ P(z + a)`.
    pub fn shift(&self, a: &GaussianRational) -> Self {
        Self::new(self.taylor_at(a))
    }

    /// `z^bound · P(1/z)`. Requires `deg P ≤ bound`.
    pub fn reversed(&self, bound: usize) -> Self {
        debug_assert!(self.degree().is_none_or(|d| d <= bound));
        Self::new((0..=bound).rev().map(|k| self.coeff(k)).collect())
    }
}

/// The first `len` coefficients of the product of two coefficient lists.
pub fn mul_truncated(a: &[GaussianRational], b: &[GaussianRational], len: usize) -> Vec<GaussianRational> {
    let mut out = alloc::vec![GaussianRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += &(x * y);
        }
    }
    out
}

/// `d (d-1) ⋯ (d-k+1)`
pub(crate) fn falling_factorial(d: usize, k: usize) -> GaussianRational {
    let v: i64 = (0..k).map(|i| (d - i) as i64).product();
    GaussianRational::from(v)
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from(v)
    }

    #[test]
    fn eval_examples() {
        let psi = Polynomial::from_ints(&[0, -1, 1]);
        assert_eq!(psi.eval(&g(2)), g(2));
        assert_eq!(Polynomial::zero().eval(&GaussianRational::i()), g(0));
        assert_eq!(Polynomial::from_ints(&[-4, 4]).eval(&g(1)), g(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(Polynomial::from_ints(&[0, -1, 1]).derivative(1), Polynomial::from_ints(&[-1, 2]));
        assert_eq!(Polynomial::from_ints(&[7]).derivative(1), Polynomial::zero());
        assert_eq!(Polynomial::from_ints(&[0, 0, 0, 0, 1]).derivative(2), Polynomial::from_ints(&[0, 0, 12]));
    }

    #[test]
    fn from_roots_examples() {
        assert_eq!(Polynomial::from_roots(&[g(0), g(1)]), Polynomial::from_ints(&[0, -1, 1]));
        assert_eq!(Polynomial::from_roots(&[]), Polynomial::from_ints(&[1]));
        assert_eq!(Polynomial::from_roots(&[g(0), g(1), g(2)]), Polynomial::from_ints(&[0, 2, -3, 1]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::from_ints(&[0, 0]).degree(), None);
        assert_eq!(Polynomial::from_ints(&[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn taylor_shift_matches_evaluation_of_derivatives() {
        let p = Polynomial::from_ints(&[3, -1, 0, 2, 5]);
        let a = GaussianRational::from_parts(1, 2, -1, 1);
        let t = p.taylor_at(&a);
        let mut fact = g(1);
        for (k, c) in t.iter().enumerate() {
            if k > 0 {
                fact = &fact * &g(k as i64);
            }
            assert_eq!(&(c * &fact), &p.derivative(k).eval(&a));
        }
        assert_eq!(p.shift(&a).eval(&g(0)), p.eval(&a));
    }

    #[test]
    fn reversal() {
        let p = Polynomial::from_ints(&[1, 2]);
        assert_eq!(p.reversed(3), Polynomial::from_ints(&[0, 0, 2, 1]));
    }

    #[test]
    fn prefixes_agree_with_full_expansions() {
        let p = Polynomial::from_ints(&[3, -1, 0, 2, 5]);
        let a = GaussianRational::from_parts(1, 2, -1, 1);
        let full = p.taylor_at(&a);
        assert_eq!(p.taylor_prefix(&a, 3), full[..3].to_vec());
        let mut padded = full.clone();
        padded.resize(7, GaussianRational::zero());
        assert_eq!(p.taylor_prefix(&a, 7), padded);
        let q = Polynomial::from_ints(&[1, 1, -2]);
        assert_eq!(mul_truncated(p.coeffs(), q.coeffs(), 4), (&p * &q).coeffs()[..4].to_vec());
    }
}
