//! Seeded random instances for property suites and the `gen` command.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::model::{ApparentPoint, ExponentPair, FinitePoint, FuchsianInstance};
use crate::scalar::GaussianRational;

/// A rational `a/b` with `1 ≤ b ≤ max_den` and `|a/b| ≤ bound`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_den: i64) -> BigRational {
    let b = rng.gen_range(1..=max_den);
    let a = rng.gen_range(-bound * b..=bound * b);
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// A Gaussian rational whose imaginary part is nonzero with probability
/// `complex_prob` (before the draw itself possibly hitting zero).
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, bound: i64, max_den: i64, complex_prob: f64) -> GaussianRational {
    let re = random_rational(rng, bound, max_den);
    let im = if rng.gen_bool(complex_prob) {
        random_rational(rng, bound, max_den)
    } else {
        BigRational::from_integer(BigInt::from(0))
    };
    GaussianRational::new(re, im)
}

fn distinct_points<R: Rng + ?Sized>(rng: &mut R, count: usize, complex_prob: f64) -> Vec<GaussianRational> {
    let mut out: Vec<GaussianRational> = Vec::with_capacity(count);
    while out.len() < count {
        let p = random_scalar(rng, 10, 2, complex_prob);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn random_pair<R: Rng + ?Sized>(rng: &mut R) -> ExponentPair {
    ExponentPair::new(random_scalar(rng, 3, 3, 0.25), random_scalar(rng, 3, 3, 0.25))
}

/// A valid instance with `n` finite points and `apparent` apparent points on
/// distinct small rationals in `[-10, 10]`. The second exponent at infinity
/// is adjusted so that the Fuchs defect vanishes.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, apparent: usize) -> FuchsianInstance {
    instance_with(rng, n, apparent, 0.0)
}

/// Like [`random_instance`], with points in the square `[-10, 10]²` of the
/// complex plane.
pub fn random_complex_instance<R: Rng + ?Sized>(rng: &mut R, n: usize, apparent: usize) -> FuchsianInstance {
    instance_with(rng, n, apparent, 0.5)
}

fn instance_with<R: Rng + ?Sized>(rng: &mut R, n: usize, apparent: usize, complex_prob: f64) -> FuchsianInstance {
    let points = distinct_points(rng, n + apparent, complex_prob);
    let finite_points = points[..n].iter().map(|t| FinitePoint { t: t.clone(), exponents: random_pair(rng) }).collect();
    let apparent_points =
        points[n..].iter().map(|q| ApparentPoint { q: q.clone(), momentum: random_scalar(rng, 3, 3, 0.25) }).collect();
    let mut inst = FuchsianInstance::new(finite_points, random_pair(rng), apparent_points);
    let defect = inst.fuchs_defect();
    inst.infinity_exponents.rho2 = &inst.infinity_exponents.rho2 - &defect;
    inst
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_instances_are_valid_and_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..6 {
            for apparent in 0..4 {
                let inst = random_instance(&mut rng, n, apparent);
                assert!(inst.validate().is_ok());
                assert!(inst.fuchs_defect().is_zero());
                assert!(inst.finite_points.iter().all(|p| p.t.is_real()));
                let inst = random_complex_instance(&mut rng, n, apparent);
                assert!(inst.validate().is_ok());
                assert!(inst.fuchs_defect().is_zero());
            }
        }
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_instance(&mut ChaCha8Rng::seed_from_u64(7), 3, 1);
        let b = random_instance(&mut ChaCha8Rng::seed_from_u64(7), 3, 1);
        assert_eq!(a, b);
    }
}
