//! Local series analysis of a constructed equation.
//!
//! Everything here works from the polynomials `G`, `H` and `ψ` alone, via
//! exact Laurent expansion, and never consults the linear systems used to
//! build the equation.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::laurent::{laurent_expand_through, laurent_from_taylor, LaurentSeries};
use crate::model::{ExponentPair, FuchsianEquation, FuchsianInstance};
use crate::poly::{mul_truncated, Polynomial};
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    Finite(GaussianRational),
    Infinity,
}

/// Expansions of the two coefficients of the equation at a point.
///
/// At a finite point `a` the series are in powers of `z − a`. At infinity
/// they are in powers of `s = 1/z`, so that `G/ψ = G_{n+N−1} s + …` and
/// `H/ψ² = H_{2(n+N−1)} s² + …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExpansion {
    pub point: Point,
    pub g_series: LaurentSeries,
    pub h_series: LaurentSeries,
}

/// Expansions known through order `terms − 2` for `G/ψ` and `terms − 3` for
/// `H/ψ²` (at infinity: through `s^terms` and `s^{terms+1}`).
pub fn local_expansion(eq: &FuchsianEquation, point: &Point, terms: usize) -> Result<LocalExpansion, Error> {
    assert!(terms >= 3, "local expansions need at least three terms");
    let terms = terms as i64;
    match point {
        Point::Finite(a) => {
            let inst = eq.instance();
            let m = psi_roots(inst).filter(|r| *r == a).count() as i64;
            let g_len = (terms - 2 + 2 * m + 1) as usize;
            let h_len = (terms - 3 + 4 * m + 1) as usize;
            let psi_t = psi_taylor(inst, a, g_len.max(h_len));
            let psi_sq = mul_truncated(&psi_t, &psi_t, h_len);
            let g_series = laurent_from_taylor(&eq.g().taylor_prefix(a, g_len), &psi_t[..g_len], a, terms - 2)?;
            let h_series = laurent_from_taylor(&eq.h().taylor_prefix(a, h_len), &psi_sq, a, terms - 3)?;
            Ok(LocalExpansion { point: point.clone(), g_series, h_series })
        }
        Point::Infinity => {
            let psi = eq.psi();
            let inst = eq.instance();
            let d = inst.g_degree_bound();
            let s = Polynomial::from_ints(&[0, 1]);
            let s2 = Polynomial::from_ints(&[0, 0, 1]);
            let psi_rev = psi.reversed(d + 1);
            let zero = GaussianRational::zero();
            let g_series = laurent_expand_through(&(&s * &eq.g().reversed(d)), &psi_rev, &zero, terms)?;
            let h_series =
                laurent_expand_through(&(&s2 * &eq.h().reversed(2 * d)), &(&psi_rev * &psi_rev), &zero, terms + 1)?;
            Ok(LocalExpansion { point: Point::Infinity, g_series, h_series })
        }
    }
}

/// Sum and product of the indicial roots, plus the roots themselves when
/// they lie in Q(i).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialRoots {
    pub sum: GaussianRational,
    pub product: GaussianRational,
    pub roots: Option<ExponentPair>,
}

impl IndicialRoots {
    fn from_sum_product(sum: GaussianRational, product: GaussianRational) -> Self {
        let disc = &(&sum * &sum) - &(&GaussianRational::from(4) * &product);
        let half = GaussianRational::ratio(1, 2);
        let roots = disc.sqrt().map(|r| ExponentPair::new(&(&sum + &r) * &half, &(&sum - &r) * &half));
        Self { sum, product, roots }
    }

    /// Multiset equality with `pair`, decided through sum and product.
    pub fn matches(&self, pair: &ExponentPair) -> bool {
        self.sum == pair.sum() && self.product == pair.product()
    }
}

/// Roots of `ρ(ρ−1) + G_0 ρ + H_0` at a finite point, or of
/// `λ(λ+1) − G_0 λ + H_0` at infinity.
pub fn indicial_roots(local: &LocalExpansion) -> Result<IndicialRoots, Error> {
    let one = GaussianRational::one();
    match local.point {
        Point::Finite(_) => {
            let g0 = local.g_series.coeff(-1)?;
            let h0 = local.h_series.coeff(-2)?;
            Ok(IndicialRoots::from_sum_product(&one - &g0, h0))
        }
        Point::Infinity => {
            let g0 = local.g_series.coeff(1)?;
            let h0 = local.h_series.coeff(2)?;
            Ok(IndicialRoots::from_sum_product(&g0 - &one, h0))
        }
    }
}

/// Outcome of the Frobenius recursion for the exponent-0 solution at an
/// apparent point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    /// The resonance value at shift 2; zero iff the solution is log-free.
    pub omega: GaussianRational,
    /// `a_0 = 1, a_1, …`; stops at `a_1` when `omega ≠ 0`, otherwise runs
    /// with `a_2 = 0` as far as the expansion allows.
    pub series: Vec<GaussianRational>,
}

impl Obstruction {
    pub fn is_log_free(&self) -> bool {
        self.omega.is_zero()
    }
}

/// Runs `s(s−2) a_s = −Σ_{k<s} [k g_{s−1−k} + h_{s−2−k}] a_k` from `a_0 = 1`.
pub fn frobenius_obstruction(local: &LocalExpansion) -> Result<Obstruction, Error> {
    if local.point == Point::Infinity
        || local.g_series.coeff(-1)? != -GaussianRational::one()
        || !local.h_series.coeff(-2)?.is_zero()
    {
        return Err(Error::NotApparentShape);
    }
    let depth = local.g_series.max_order().min(local.h_series.max_order()) + 2;
    if depth < 2 {
        return Err(Error::SeriesTruncated { order: 0, available: depth - 2 });
    }
    let gc = |m: i64| local.g_series.coeff(m);
    let hc = |m: i64| local.h_series.coeff(m);

    let mut a = alloc::vec![GaussianRational::one()];
    let mut omega = GaussianRational::zero();
    for s in 1..=depth {
        let mut acc = GaussianRational::zero();
        for (k, ak) in a.iter().enumerate() {
            let k = k as i64;
            let mut w = hc(s - 2 - k)?;
            if k > 0 {
                w += &(&GaussianRational::from(k) * &gc(s - 1 - k)?);
            }
            acc += &(&w * ak);
        }
        if s == 2 {
            omega = acc;
            if !omega.is_zero() {
                break;
            }
            a.push(GaussianRational::zero());
        } else {
            let lhs = GaussianRational::from(s * (s - 2));
            a.push(-(&acc / &lhs));
        }
    }
    Ok(Obstruction { omega, series: a })
}

fn psi_roots(inst: &FuchsianInstance) -> impl Iterator<Item = &GaussianRational> {
    inst.finite_points.iter().map(|p| &p.t).chain(inst.apparent_points.iter().map(|p| &p.q))
}

/// Taylor prefix of `ψ` at `a` of length `len`, multiplied out from the
/// linear factors so that only the small differences `a − r` enter.
fn psi_taylor(inst: &FuchsianInstance, a: &GaussianRational, len: usize) -> Vec<GaussianRational> {
    let mut acc = alloc::vec![GaussianRational::one()];
    for r in psi_roots(inst) {
        acc = mul_truncated(&acc, &[a - r, GaussianRational::one()], len);
    }
    acc.resize(len, GaussianRational::zero());
    acc
}

/// Coefficients through `z^order` of `ψ² w'' + ψ G w' + H w` in powers of
/// `z − q`, with `w` the given truncated series at `q`.
pub fn series_residual(
    eq: &FuchsianEquation,
    q: &GaussianRational,
    series: &[GaussianRational],
    order: usize,
) -> Vec<GaussianRational> {
    let len = order + 1;
    let psi = psi_taylor(eq.instance(), q, len);
    let g = eq.g().taylor_prefix(q, len);
    let h = eq.h().taylor_prefix(q, len);
    let w = Polynomial::new(series.to_vec());
    let (w1, w2) = (w.derivative(1), w.derivative(2));
    let a = mul_truncated(&mul_truncated(&psi, &psi, len), w2.coeffs(), len);
    let b = mul_truncated(&mul_truncated(&psi, &g, len), w1.coeffs(), len);
    let c = mul_truncated(&h, w.coeffs(), len);
    (0..len).map(|k| &(&a[k] + &b[k]) + &c[k]).collect()
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Degree `K` of the truncated series solution at apparent points.
    pub depth: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { depth: 8 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCheck {
    pub t: GaussianRational,
    pub expected: ExponentPair,
    pub found: IndicialRoots,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApparentCheck {
    pub q: GaussianRational,
    pub indicial: IndicialRoots,
    /// Indicial pair is `{0, 2}`.
    pub exponents_ok: bool,
    /// Residue of `G/ψ`; must be `−1`.
    pub residue: GaussianRational,
    /// Order `−2` coefficient of `H/ψ²`; must vanish.
    pub double_pole: GaussianRational,
    /// Order `−1` coefficient of `H/ψ²`.
    pub momentum: GaussianRational,
    pub momentum_ok: bool,
    pub omega: Option<GaussianRational>,
    pub log_free: bool,
    /// The series solution satisfies the equation through order `K − 2`.
    pub residual_ok: bool,
}

impl ApparentCheck {
    pub fn passed(&self) -> bool {
        self.exponents_ok
            && self.residue == -GaussianRational::one()
            && self.double_pole.is_zero()
            && self.momentum_ok
            && self.log_free
            && self.residual_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfinityCheck {
    pub expected: ExponentPair,
    pub found: IndicialRoots,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub finite: Vec<FiniteCheck>,
    pub apparent: Vec<ApparentCheck>,
    pub infinity: InfinityCheck,
    pub overall: bool,
}

pub fn verify(eq: &FuchsianEquation) -> VerificationReport {
    verify_with(eq, &VerifyOptions::default())
}

pub fn verify_with(eq: &FuchsianEquation, opts: &VerifyOptions) -> VerificationReport {
    let inst = eq.instance();
    let depth = opts.depth.max(2);

    let finite: Vec<FiniteCheck> = inst
        .finite_points
        .iter()
        .map(|p| {
            let local = local_expansion(eq, &Point::Finite(p.t.clone()), 3).expect("expansion at a finite point");
            let found = indicial_roots(&local).expect("three terms cover the indicial data");
            let matches = found.matches(&p.exponents);
            FiniteCheck { t: p.t.clone(), expected: p.exponents.clone(), found, matches }
        })
        .collect();

    let apparent: Vec<ApparentCheck> =
        inst.apparent_points.iter().map(|a| check_apparent(eq, &a.q, &a.momentum, depth)).collect();

    let inf_local = local_expansion(eq, &Point::Infinity, 3).expect("expansion at infinity");
    let inf_found = indicial_roots(&inf_local).expect("three terms cover the indicial data");
    let infinity = InfinityCheck {
        expected: inst.infinity_exponents.clone(),
        matches: inf_found.matches(&inst.infinity_exponents),
        found: inf_found,
    };

    let overall = finite.iter().all(|c| c.matches) && apparent.iter().all(ApparentCheck::passed) && infinity.matches;
    VerificationReport { finite, apparent, infinity, overall }
}

fn check_apparent(
    eq: &FuchsianEquation,
    q: &GaussianRational,
    momentum: &GaussianRational,
    depth: usize,
) -> ApparentCheck {
    let local = local_expansion(eq, &Point::Finite(q.clone()), depth + 1).expect("expansion at q");
    let indicial = indicial_roots(&local).expect("indicial data available");
    let exponents_ok = indicial.matches(&ExponentPair::new(GaussianRational::zero(), GaussianRational::from(2)));
    let residue = local.g_series.coeff(-1).expect("order -1 stored");
    let double_pole = local.h_series.coeff(-2).expect("order -2 stored");
    let h_residue = local.h_series.coeff(-1).expect("order -1 stored");
    let momentum_ok = &h_residue == momentum;

    let obstruction = frobenius_obstruction(&local).ok();
    let omega = obstruction.as_ref().map(|o| o.omega.clone());
    let log_free = obstruction.as_ref().is_some_and(Obstruction::is_log_free);
    let residual_ok = match &obstruction {
        Some(o) if o.is_log_free() && o.series.len() == depth + 1 => {
            series_residual(eq, q, &o.series, depth).iter().all(Zero::is_zero)
        }
        _ => false,
    };
    ApparentCheck {
        q: q.clone(),
        indicial,
        exponents_ok,
        residue,
        double_pole,
        momentum: h_residue,
        momentum_ok,
        omega,
        log_free,
        residual_ok,
    }
}
