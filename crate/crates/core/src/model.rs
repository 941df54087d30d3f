//! Problem data: singular points with their exponents, apparent points
//! with their momenta, and the resulting equation
//! `w'' + (G/ψ) w' + (H/ψ²) w = 0`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::poly::Polynomial;
use crate::scalar::GaussianRational;

/// An unordered pair of exponents.
#[derive(Clone, Debug, Eq)]
pub struct ExponentPair {
    pub rho1: GaussianRational,
    pub rho2: GaussianRational,
}

impl ExponentPair {
    pub fn new(rho1: GaussianRational, rho2: GaussianRational) -> Self {
        Self { rho1, rho2 }
    }

    pub fn sum(&self) -> GaussianRational {
        &self.rho1 + &self.rho2
    }

    pub fn product(&self) -> GaussianRational {
        &self.rho1 * &self.rho2
    }
}

impl PartialEq for ExponentPair {
    fn eq(&self, other: &Self) -> bool {
        (self.rho1 == other.rho1 && self.rho2 == other.rho2) || (self.rho1 == other.rho2 && self.rho2 == other.rho1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoint {
    pub t: GaussianRational,
    pub exponents: ExponentPair,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApparentPoint {
    pub q: GaussianRational,
    /// Prescribed residue `H^{q}_1` of `H/ψ²` at `q`.
    pub momentum: GaussianRational,
}

/// Data of one construction problem. `t_0 = ∞` is implicit; the exponents
/// there use the standard convention `w ~ z^{-λ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsianInstance {
    pub finite_points: Vec<FinitePoint>,
    pub infinity_exponents: ExponentPair,
    pub apparent_points: Vec<ApparentPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateFinite { first: usize, second: usize },
    DuplicateApparent { first: usize, second: usize },
    ApparentInP { apparent: usize, finite: usize },
    TooFewFinitePoints { n: usize },
}

/// Position of `|Q|` relative to `n − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    Under,
    Square,
    Over,
}

impl Case {
    pub fn of(n: usize, apparent: usize) -> Self {
        match apparent.cmp(&n.saturating_sub(2)) {
            Ordering::Less => Case::Under,
            Ordering::Equal => Case::Square,
            Ordering::Greater => Case::Over,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Case::Under => "under",
            Case::Square => "square",
            Case::Over => "over",
        }
    }
}

impl FuchsianInstance {
    pub fn new(
        finite_points: Vec<FinitePoint>,
        infinity_exponents: ExponentPair,
        apparent_points: Vec<ApparentPoint>,
    ) -> Self {
        Self { finite_points, infinity_exponents, apparent_points }
    }

    /// Number of finite singular points.
    pub fn n(&self) -> usize {
        self.finite_points.len()
    }

    /// Number of apparent points.
    pub fn apparent_count(&self) -> usize {
        self.apparent_points.len()
    }

    pub fn case(&self) -> Case {
        Case::of(self.n(), self.apparent_count())
    }

    /// Degree bound `n + N − 1` of `G`.
    pub fn g_degree_bound(&self) -> usize {
        (self.n() + self.apparent_count()).saturating_sub(1)
    }

    /// Degree bound `2(n + N − 1)` of `H`.
    pub fn h_degree_bound(&self) -> usize {
        2 * self.g_degree_bound()
    }

    pub fn momenta(&self) -> Vec<GaussianRational> {
        self.apparent_points.iter().map(|a| a.momentum.clone()).collect()
    }

    /// Checks distinctness of all points and `n ≥ 2`, collecting every violation.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if self.n() < 2 {
            out.push(Violation::TooFewFinitePoints { n: self.n() });
        }
        let t = &self.finite_points;
        let q = &self.apparent_points;
        for i in 0..t.len() {
            for k in i + 1..t.len() {
                if t[i].t == t[k].t {
                    out.push(Violation::DuplicateFinite { first: i, second: k });
                }
            }
        }
        for j in 0..q.len() {
            for l in j + 1..q.len() {
                if q[j].q == q[l].q {
                    out.push(Violation::DuplicateApparent { first: j, second: l });
                }
            }
            for (i, tp) in t.iter().enumerate() {
                if tp.t == q[j].q {
                    out.push(Violation::ApparentInP { apparent: j, finite: i });
                }
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub(crate) fn require_valid(&self) -> Result<(), Error> {
        self.validate().map_err(Error::InvalidInstance)
    }

    /// `Σ_{i=0}^{n} (ρ^i_1 + ρ^i_2) − (n − N − 1)`; zero exactly for admissible data.
    pub fn fuchs_defect(&self) -> GaussianRational {
        let total: GaussianRational = self
            .finite_points
            .iter()
            .map(|p| p.exponents.sum())
            .chain(core::iter::once(self.infinity_exponents.sum()))
            .sum();
        let target = self.n() as i64 - self.apparent_count() as i64 - 1;
        total - GaussianRational::from(target)
    }

    /// `ψ(z) = ∏(z − t_i) ∏(z − q_j)`.
    pub fn psi(&self) -> Polynomial {
        let roots: Vec<GaussianRational> = self
            .finite_points
            .iter()
            .map(|p| p.t.clone())
            .chain(self.apparent_points.iter().map(|a| a.q.clone()))
            .collect();
        Polynomial::from_roots(&roots)
    }

    /// All points moved by `c`.
    pub fn translated(&self, c: &GaussianRational) -> Self {
        let mut out = self.clone();
        for p in &mut out.finite_points {
            p.t = &p.t + c;
        }
        for a in &mut out.apparent_points {
            a.q = &a.q + c;
        }
        out
    }
}

/// `w'' + (G/ψ) w' + (H/ψ²) w = 0` together with the instance it solves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsianEquation {
    g: Polynomial,
    h: Polynomial,
    instance: FuchsianInstance,
}

impl FuchsianEquation {
    /// Fails if `G` or `H` exceed their degree bounds.
    pub fn new(instance: FuchsianInstance, g: Polynomial, h: Polynomial) -> Result<Self, Error> {
        let gb = instance.g_degree_bound();
        let hb = instance.h_degree_bound();
        if g.degree().is_some_and(|d| d > gb) {
            return Err(Error::DegreeBound { which: "G", bound: gb });
        }
        if h.degree().is_some_and(|d| d > hb) {
            return Err(Error::DegreeBound { which: "H", bound: hb });
        }
        Ok(Self { g, h, instance })
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn h(&self) -> &Polynomial {
        &self.h
    }

    pub fn instance(&self) -> &FuchsianInstance {
        &self.instance
    }

    pub fn psi(&self) -> Polynomial {
        self.instance.psi()
    }

    /// `G` padded to `n + N` coefficients.
    pub fn g_coeffs(&self) -> Vec<GaussianRational> {
        self.g.padded(self.instance.g_degree_bound() + 1)
    }

    /// `H` padded to `2(n + N − 1) + 1` coefficients.
    pub fn h_coeffs(&self) -> Vec<GaussianRational> {
        self.h.padded(self.instance.h_degree_bound() + 1)
    }
}

/// Convenience constructor for tests and examples: real exponents given as
/// integer pairs.
pub fn real_pair(a: i64, b: i64) -> ExponentPair {
    ExponentPair::new(GaussianRational::from(a), GaussianRational::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn g(v: i64) -> GaussianRational {
        GaussianRational::from(v)
    }

    fn fp(t: i64, a: i64, b: i64) -> FinitePoint {
        FinitePoint { t: g(t), exponents: real_pair(a, b) }
    }

    fn example_a() -> FuchsianInstance {
        FuchsianInstance::new(vec![fp(0, 0, -3), fp(1, 0, 1)], real_pair(1, 2), vec![])
    }

    #[test]
    fn pairs_compare_as_multisets() {
        assert_eq!(real_pair(1, 2), real_pair(2, 1));
        assert_ne!(real_pair(1, 2), real_pair(1, 1));
    }

    #[test]
    fn duplicate_finite_point() {
        let inst = FuchsianInstance::new(vec![fp(0, 0, 0), fp(0, 0, 1)], real_pair(0, 0), vec![]);
        let v = inst.validate().unwrap_err();
        assert_eq!(v, vec![Violation::DuplicateFinite { first: 0, second: 1 }]);
    }

    #[test]
    fn apparent_point_in_p() {
        let inst = FuchsianInstance::new(
            vec![fp(0, 0, 0), fp(1, 0, 1)],
            real_pair(0, 0),
            vec![ApparentPoint { q: g(1), momentum: g(0) }],
        );
        assert_eq!(inst.validate().unwrap_err(), vec![Violation::ApparentInP { apparent: 0, finite: 1 }]);
    }

    #[test]
    fn every_violation_is_reported() {
        let inst = FuchsianInstance::new(
            vec![fp(3, 0, 0)],
            real_pair(0, 0),
            vec![ApparentPoint { q: g(3), momentum: g(0) }, ApparentPoint { q: g(3), momentum: g(1) }],
        );
        let v = inst.validate().unwrap_err();
        assert_eq!(v.len(), 4);
        assert!(v.contains(&Violation::TooFewFinitePoints { n: 1 }));
        assert!(v.contains(&Violation::DuplicateApparent { first: 0, second: 1 }));
    }

    #[test]
    fn example_a_is_valid_and_admissible() {
        let a = example_a();
        assert!(a.validate().is_ok());
        assert_eq!(a.fuchs_defect(), g(0));
    }

    #[test]
    fn defect_examples() {
        let zeros = FuchsianInstance::new(vec![fp(0, 0, 0), fp(1, 0, 0)], real_pair(0, 0), vec![]);
        assert_eq!(zeros.fuchs_defect(), g(-1));
        let b = FuchsianInstance::new(vec![fp(0, 0, 0), fp(1, 0, 0)], real_pair(0, 1), vec![]);
        assert_eq!(b.fuchs_defect(), g(0));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(example_a().psi(), Polynomial::from_ints(&[0, -1, 1]));
        let mut with_q = example_a();
        with_q.apparent_points.push(ApparentPoint { q: g(2), momentum: g(0) });
        assert_eq!(with_q.psi(), Polynomial::from_ints(&[0, 2, -3, 1]));
        assert_eq!(with_q.psi().degree(), Some(3));
    }

    #[test]
    fn equation_degree_bounds() {
        let a = example_a();
        assert!(FuchsianEquation::new(a.clone(), Polynomial::from_ints(&[1, 1]), Polynomial::zero()).is_ok());
        let e = FuchsianEquation::new(a, Polynomial::from_ints(&[1, 1, 1]), Polynomial::zero());
        assert_eq!(e, Err(Error::DegreeBound { which: "G", bound: 1 }));
    }

    #[test]
    fn case_classification() {
        assert_eq!(Case::of(4, 2), Case::Square);
        assert_eq!(Case::of(4, 1), Case::Under);
        assert_eq!(Case::of(2, 1), Case::Over);
    }
}
