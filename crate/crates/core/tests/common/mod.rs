#![allow(dead_code)]

use fuchsian_core::model::{real_pair, ApparentPoint, FinitePoint, FuchsianInstance};
use fuchsian_core::GaussianRational;
use proptest::prelude::*;

pub fn g(v: i64) -> GaussianRational {
    GaussianRational::from(v)
}

pub fn fp(t: i64, a: i64, b: i64) -> FinitePoint {
    FinitePoint { t: g(t), exponents: real_pair(a, b) }
}

pub fn ap(q: i64, p: GaussianRational) -> ApparentPoint {
    ApparentPoint { q: g(q), momentum: p }
}

/// t = (0, 1), exponents {0,−3} and {0,1}, infinity {1, 2}.
pub fn example_a() -> FuchsianInstance {
    FuchsianInstance::new(vec![fp(0, 0, -3), fp(1, 0, 1)], real_pair(1, 2), vec![])
}

pub fn example_b() -> FuchsianInstance {
    FuchsianInstance::new(vec![fp(0, 0, 0), fp(1, 0, 0)], real_pair(0, 1), vec![])
}

/// t = (0, 1, 2) with exponents {0, 1}, infinity {−1, −1}, q = 3, p = 0.
pub fn example_c() -> FuchsianInstance {
    FuchsianInstance::new(vec![fp(0, 0, 1), fp(1, 0, 1), fp(2, 0, 1)], real_pair(-1, -1), vec![ap(3, g(0))])
}

/// n = 2, N = 1 with a constraint whose roots are p = −1 and p = 1.
pub fn over_with_rational_roots(p: i64) -> FuchsianInstance {
    FuchsianInstance::new(vec![fp(0, 0, -2), fp(1, 0, 1)], real_pair(-1, 2), vec![ap(2, g(p))])
}

pub fn small_scalar() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

pub fn small_real() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| GaussianRational::ratio(a, b))
}
