mod common;

use common::{example_a, example_b, example_c, g};
use fuchsian_core::builder::{confluent_product, construct, h_matrix, local_constants, solve_g};
use fuchsian_core::frobenius::verify;
use fuchsian_core::laurent::laurent_expand_through;
use fuchsian_core::linsys::det;
use fuchsian_core::sample::{random_complex_instance, random_instance, random_scalar};
use fuchsian_core::{Error, FuchsianEquation, GaussianRational, Polynomial};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ints(v: &[i64]) -> Vec<GaussianRational> {
    v.iter().map(|x| g(*x)).collect()
}

#[test]
fn hypergeometric_examples() {
    let a = construct(&example_a()).unwrap();
    assert_eq!(a.g_coeffs(), ints(&[-4, 4]));
    assert_eq!(a.h_coeffs(), ints(&[0, -2, 2]));
    let b = construct(&example_b()).unwrap();
    assert_eq!(b.g_coeffs(), ints(&[-1, 2]));
    assert_eq!(b.h_coeffs(), ints(&[0, 0, 0]));
}

#[test]
fn example_c_fixture() {
    let eq = construct(&example_c()).unwrap();
    assert_eq!(eq.g_coeffs(), ints(&[0, -2, 3, -1]));
    assert_eq!(eq.h_coeffs(), ints(&[0, -54, 135, -126, 56, -12, 1]));
    assert!(verify(&eq).overall);
}

#[test]
fn round_trip_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..60 {
        let n = 2 + k % 5;
        let inst =
            if k % 2 == 0 { random_instance(&mut rng, n, n - 2) } else { random_complex_instance(&mut rng, n, n - 2) };
        let eq = construct(&inst).unwrap();
        let report = verify(&eq);
        assert!(report.overall, "instance {k} failed: {report:?}");
    }
}

#[test]
fn closed_form_constants_match_laurent_expansions() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    while checked < 100 {
        let n = 3 + checked % 4;
        let inst = random_complex_instance(&mut rng, n, n - 2);
        let g_poly = solve_g(&inst).unwrap();
        let psi = inst.psi();
        let psi_sq = &psi * &psi;
        for (j, a) in inst.apparent_points.iter().enumerate() {
            let c = local_constants(&inst, &g_poly, j);
            let inv =
                laurent_expand_through(&Polynomial::constant(GaussianRational::one()), &psi_sq, &a.q, -1).unwrap();
            assert_eq!(inv.coeff(-2).unwrap(), c.mu);
            assert_eq!(inv.coeff(-1).unwrap(), c.kappa);
            let gs = laurent_expand_through(&g_poly, &psi, &a.q, 0).unwrap();
            assert_eq!(gs.coeff(-1).unwrap(), -GaussianRational::one());
            assert_eq!(gs.coeff(0).unwrap(), c.g1);

            // H with H(q) = 0, H'(q) = p ψ'², H''(q) = δ p² + ε p kills the
            // resonance for any p
            let p = random_scalar(&mut rng, 4, 3, 0.3);
            let x_poly = Polynomial::new(vec![
                GaussianRational::zero(),
                &p * &(&c.psi1 * &c.psi1),
                &(&(&c.delta * &(&p * &p)) + &(&c.epsilon * &p)) * &GaussianRational::ratio(1, 2),
            ]);
            let h_local = x_poly.shift(&-&a.q);
            let hs = laurent_expand_through(&h_local, &psi_sq, &a.q, 0).unwrap();
            assert!(hs.coeff(-2).unwrap().is_zero());
            assert_eq!(hs.coeff(-1).unwrap(), p);
            let omega = &(&(&c.g1 + &p) * &p) + &hs.coeff(0).unwrap();
            assert!(omega.is_zero());
            checked += 1;
        }
    }
}

#[test]
fn determinant_ratio_is_constant_per_n() {
    // mod 2^N from the k(k−1) scaling of the curvature rows
    let frozen = [(2, -1), (3, 2), (4, 4), (5, -8), (6, -16)];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (n, constant) in frozen {
        for _ in 0..5 {
            let inst = random_instance(&mut rng, n, n - 2);
            let d = det(&h_matrix(&inst)).unwrap();
            assert!(!d.is_zero());
            assert_eq!(&d / &confluent_product(&inst), g(constant));
        }
    }
}

#[test]
fn translation_moves_the_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 2..6 {
        let inst = random_complex_instance(&mut rng, n, n - 2);
        let c = random_scalar(&mut rng, 5, 2, 0.5);
        let eq = construct(&inst).unwrap();
        let moved = construct(&inst.translated(&c)).unwrap();
        assert_eq!(moved.g(), &eq.g().shift(&-&c));
        assert_eq!(moved.h(), &eq.h().shift(&-&c));
    }
}

#[test]
fn nonzero_defect_fails_at_infinity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in 0..20 {
        let n = 2 + k % 5;
        let mut inst = random_instance(&mut rng, n, n - 2);
        let shift = GaussianRational::from_parts(1 + k as i64 % 3, 2, k as i64 % 2, 1);
        inst.infinity_exponents.rho1 = &inst.infinity_exponents.rho1 + &shift;
        assert!(matches!(solve_g(&inst), Err(Error::InconsistentAtInfinity { .. })));
        assert!(construct(&inst).is_err());
        inst.infinity_exponents.rho2 = &inst.infinity_exponents.rho2 - &shift;
        assert!(inst.fuchs_defect().is_zero());
        assert!(verify(&construct(&inst).unwrap()).overall);
    }
}

#[test]
fn perturbing_any_h_coefficient_is_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 2..6 {
        let inst = random_instance(&mut rng, n, n - 2);
        let eq = construct(&inst).unwrap();
        let h = eq.h_coeffs();
        for m in 0..h.len() {
            let mut bumped = h.clone();
            bumped[m] = &bumped[m] + &GaussianRational::from_parts(1, 3, 1, 1);
            let tampered = FuchsianEquation::new(inst.clone(), eq.g().clone(), Polynomial::new(bumped)).unwrap();
            assert!(!verify(&tampered).overall, "n = {n}, H_{m}");
        }
    }
}

#[test]
fn tampered_example_a_fails() {
    let eq = construct(&example_a()).unwrap();
    let tampered = FuchsianEquation::new(example_a(), eq.g().clone(), Polynomial::from_ints(&[1, -2, 2])).unwrap();
    let report = verify(&tampered);
    assert!(!report.overall);
    assert!(!report.finite[0].matches);
}
