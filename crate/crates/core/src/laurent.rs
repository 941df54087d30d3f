//! Truncated Laurent expansions of rational functions at a point.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::poly::Polynomial;
use crate::scalar::GaussianRational;

/// `Σ_{k ≥ min_order} c_k (z - base_point)^k`, known exactly through
/// [`LaurentSeries::max_order`]. Orders below `min_order` are zero; orders
/// above the stored window are unknown and querying them is an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    base_point: GaussianRational,
    min_order: i64,
    coeffs: Vec<GaussianRational>,
}

impl LaurentSeries {
    /// Builds a series from raw data. `coeffs` must be non-empty.
    pub fn new(base_point: GaussianRational, min_order: i64, coeffs: Vec<GaussianRational>) -> Self {
        assert!(!coeffs.is_empty(), "a Laurent series stores at least one coefficient");
        Self { base_point, min_order, coeffs }
    }

    pub fn base_point(&self) -> &GaussianRational {
        &self.base_point
    }

    pub fn min_order(&self) -> i64 {
        self.min_order
    }

    pub fn max_order(&self) -> i64 {
        self.min_order + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// True if every stored coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn coeff(&self, order: i64) -> Result<GaussianRational, Error> {
        if order > self.max_order() {
            return Err(Error::SeriesTruncated { order, available: self.max_order() });
        }
        if order < self.min_order {
            return Ok(GaussianRational::zero());
        }
        Ok(self.coeffs[(order - self.min_order) as usize].clone())
    }
}

fn valuation(taylor: &[GaussianRational]) -> Option<usize> {
    taylor.iter().position(|c| !c.is_zero())
}

/// Expansion of `num / den` at `a` with exactly `terms` stored coefficients,
/// starting at the true order of the quotient at `a`.
pub fn laurent_expand(
    num: &Polynomial,
    den: &Polynomial,
    a: &GaussianRational,
    terms: usize,
) -> Result<LaurentSeries, Error> {
    assert!(terms >= 1, "laurent_expand needs at least one term");
    let d = den.taylor_at(a);
    let m = valuation(&d).ok_or(Error::ZeroDenominator)?;
    let f = num.taylor_at(a);
    let Some(v) = valuation(&f) else {
        return Ok(LaurentSeries::new(a.clone(), -(m as i64), alloc::vec![GaussianRational::zero(); terms]));
    };
    let coeffs = series_divide(&f[v..], &d[m..], terms)?;
    Ok(LaurentSeries::new(a.clone(), v as i64 - m as i64, coeffs))
}

/// Expansion of `num / den` at `a` known through order `max_order`
/// inclusive. If the quotient vanishes through `max_order`, the result is a
/// single zero coefficient at `max_order`.
pub fn laurent_expand_through(
    num: &Polynomial,
    den: &Polynomial,
    a: &GaussianRational,
    max_order: i64,
) -> Result<LaurentSeries, Error> {
    expand_taylor(&num.taylor_at(a), &den.taylor_at(a), a, max_order, true)
}

/// Like [`laurent_expand_through`], from Taylor prefixes of numerator and
/// denominator at `a`. The prefixes must reach index `max_order + m` of the
/// numerator and `max_order + 2m − v` of the denominator, where `m` and `v`
/// are the valuations of denominator and numerator.
pub fn laurent_from_taylor(
    num: &[GaussianRational],
    den: &[GaussianRational],
    a: &GaussianRational,
    max_order: i64,
) -> Result<LaurentSeries, Error> {
    expand_taylor(num, den, a, max_order, false)
}

fn expand_taylor(
    f: &[GaussianRational],
    d: &[GaussianRational],
    a: &GaussianRational,
    max_order: i64,
    complete: bool,
) -> Result<LaurentSeries, Error> {
    let m = valuation(d).ok_or(Error::ZeroDenominator)? as i64;
    let zero_through = || Ok(LaurentSeries::new(a.clone(), max_order, alloc::vec![GaussianRational::zero()]));
    let Some(v) = valuation(f) else {
        if !complete && (f.len() as i64) < max_order + m + 1 {
            return Err(Error::SeriesTruncated { order: max_order, available: f.len() as i64 - m - 1 });
        }
        return zero_through();
    };
    let leading = v as i64 - m;
    if leading > max_order {
        return zero_through();
    }
    let terms = (max_order - leading + 1) as usize;
    if !complete && (f.len() < v + terms || d.len() < m as usize + terms) {
        let short = (f.len() - v).min(d.len() - m as usize) as i64;
        return Err(Error::SeriesTruncated { order: max_order, available: leading + short - 1 });
    }
    let coeffs = series_divide(&f[v..], &d[m as usize..], terms)?;
    Ok(LaurentSeries::new(a.clone(), leading, coeffs))
}

/// First `terms` coefficients of the power series `f / u`, `u[0] ≠ 0`.
pub(crate) fn series_divide(
    f: &[GaussianRational],
    u: &[GaussianRational],
    terms: usize,
) -> Result<Vec<GaussianRational>, Error> {
    let inv_lead = u[0].inv()?;
    let mut q: Vec<GaussianRational> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = f.get(k).cloned().unwrap_or_else(GaussianRational::zero);
        for i in 1..=k.min(u.len() - 1) {
            acc -= &(&u[i] * &q[k - i]);
        }
        q.push(&acc * &inv_lead);
    }
    Ok(q)
}
