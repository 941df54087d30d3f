mod common;

use common::{small_real, small_scalar};
use fuchsian_core::laurent::{laurent_expand, laurent_expand_through};
use fuchsian_core::linsys::{det, eliminate, reduce, Matrix, SolveKind};
use fuchsian_core::sample::random_instance;
use fuchsian_core::{GaussianRational, Polynomial};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(small_scalar(), 0..max_len).prop_map(Polynomial::new)
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-2i64..=2, rows * cols)
        .prop_map(move |v| Matrix::new(rows, cols, v.into_iter().map(GaussianRational::from).collect()).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(&b * &b.inv().unwrap(), GaussianRational::one());
        }
    }

    #[test]
    fn square_of_sqrt(a in small_scalar()) {
        let sq = &a * &a;
        let r = sq.sqrt().expect("a perfect square");
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn from_roots_vanishes_at_roots(roots in proptest::collection::vec(small_scalar(), 0..6)) {
        let p = Polynomial::from_roots(&roots);
        prop_assert_eq!(p.degree().unwrap_or(0), roots.len());
        for r in &roots {
            prop_assert!(p.eval(r).is_zero());
        }
    }

    #[test]
    fn derivative_is_linear(f in poly(7), h in poly(7), c in small_scalar()) {
        let lhs = (&f.scale(&c) + &h).derivative(1);
        let rhs = &f.derivative(1).scale(&c) + &h.derivative(1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_rule(f in poly(6), h in poly(6)) {
        let lhs = (&f * &h).derivative(1);
        let rhs = &(&f.derivative(1) * &h) + &(&f * &h.derivative(1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_is_composition(f in poly(7), a in small_scalar(), x in small_scalar()) {
        prop_assert_eq!(f.shift(&a).eval(&x), f.eval(&(&x + &a)));
        let taylor = f.taylor_at(&a);
        for (k, c) in taylor.iter().enumerate() {
            let mut fact = GaussianRational::one();
            for i in 1..=k as i64 {
                fact *= &GaussianRational::from(i);
            }
            prop_assert_eq!(c * &fact, f.derivative(k).eval(&a));
        }
    }

    #[test]
    fn laurent_times_denominator_is_numerator(
        num in poly(6),
        roots in proptest::collection::vec(-2i64..=2, 1..4),
        extra in small_scalar(),
        a in -2i64..=2,
        terms in 1usize..8,
    ) {
        let mut den = Polynomial::from_roots(
            &roots.iter().map(|r| GaussianRational::from(*r)).collect::<Vec<_>>(),
        );
        den = &den * &Polynomial::new(vec![&extra + &GaussianRational::from(7), GaussianRational::one()]);
        let a = GaussianRational::from(a);
        let series = laurent_expand(&num, &den, &a, terms).unwrap();
        let d = den.taylor_at(&a);
        let f = num.taylor_at(&a);
        let m = d.iter().position(|c| !c.is_zero()).unwrap() as i64;
        let v = series.min_order();
        // f_k = Σ_j d_j c_{k−j} wherever the truncation does not interfere
        for k in (v + m).max(0)..(v + m + terms as i64) {
            let mut acc = GaussianRational::zero();
            for (j, dj) in d.iter().enumerate() {
                let order = k - j as i64;
                if order >= v && order <= series.max_order() {
                    acc += &(dj * &series.coeff(order).unwrap());
                }
            }
            let expected = f.get(k as usize).cloned().unwrap_or_else(GaussianRational::zero);
            prop_assert_eq!(acc, expected);
        }
        if !num.is_zero() {
            prop_assert!(!series.coeff(v).unwrap().is_zero());
        }
    }

    #[test]
    fn det_nonzero_iff_unique(m in int_matrix(4, 4), rhs in proptest::collection::vec(-3i64..=3, 4)) {
        let rhs: Vec<_> = rhs.into_iter().map(GaussianRational::from).collect();
        let d = det(&m).unwrap();
        let out = eliminate(&m, &rhs).unwrap();
        prop_assert_eq!(!d.is_zero(), out.kind == SolveKind::Unique);
        if let Some(x) = out.particular {
            if out.kind != SolveKind::Inconsistent {
                prop_assert_eq!(m.mul_vec(&x), rhs);
            }
        }
    }

    #[test]
    fn rank_nullity_and_certificates(m in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        let red = reduce(&m, &vec![(); m.rows()]).unwrap();
        let basis = red.nullspace_basis();
        prop_assert_eq!(red.rank() + basis.len(), m.cols());
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(red.certificates().len(), m.rows() - red.rank());
        for cert in red.certificates() {
            prop_assert_eq!(cert.expand(&m), m.row(cert.row).to_vec());
            prop_assert!(cert.combination.iter().all(|(r, _)| *r < cert.row));
        }
    }

    #[test]
    fn fuchs_defect_is_translation_invariant(seed in 0u64..1000, c in small_real(), n in 2usize..6, apparent in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, n, apparent);
        let mut bent = inst.clone();
        bent.infinity_exponents.rho1 = &bent.infinity_exponents.rho1 + &c;
        prop_assert_eq!(inst.translated(&c).fuchs_defect(), inst.fuchs_defect());
        prop_assert_eq!(bent.translated(&c).fuchs_defect(), bent.fuchs_defect());
    }
}

#[test]
fn residue_sum_is_top_coefficient() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..6 {
        for apparent in 0..3 {
            let inst = random_instance(&mut rng, n, apparent);
            let psi = inst.psi();
            let d = inst.g_degree_bound();
            let roots: Vec<_> = inst
                .finite_points
                .iter()
                .map(|p| p.t.clone())
                .chain(inst.apparent_points.iter().map(|a| a.q.clone()))
                .collect();
            let f = Polynomial::new((0..=d as i64).map(|k| GaussianRational::from_parts(k * k - 3, 2, k, 3)).collect());
            let total: GaussianRational =
                roots.iter().map(|r| laurent_expand_through(&f, &psi, r, -1).unwrap().coeff(-1).unwrap()).sum();
            assert_eq!(total, f.coeff(d));
        }
    }
}
