use huabell::cli::MatrixFile;
use huabell::kernel::{build_hua_bellman, hua_block_psd, hua_identity_residual, ostrowski_check, pd_check, PSD_REL_TOL};
use huabell::matrix::{as_contraction, hermitian_eigen, ComplexMatrix, HermitianMatrix, DEFAULT_MARGIN};
use huabell::metric::{
    delta_p_sq, hua_distance_sq, majorization_chain, mobius_transform, s_divergence, weak_majorization,
};
use huabell::perm::{alpha_permanent, block_alpha_permanent, partitions, per_via_immanants, CharacterTable, MultiIndex};
use huabell::sampling::{gaussian_matrix, random_contraction, random_hpd, random_unitary, substream};
use huabell::{Field, C64};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Real), Just(Field::Complex)]
}

fn unitary_conjugate(u: &nalgebra::DMatrix<C64>, m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::new(u * m.as_dmatrix() * u.adjoint()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_hermitian_with_unit_lower_bounded_diagonal(
        seed in any::<u64>(), m in 1usize..6, n in 1usize..4, alpha in 0.0f64..4.0, f in field(),
    ) {
        let mut rng = substream(seed, 0);
        let family: Vec<_> = (0..m).map(|_| random_contraction(&mut rng, n, f)).collect();
        let h = build_hua_bellman(&family, alpha, f).unwrap();
        let g = h.gram().as_dmatrix();
        for i in 0..m {
            prop_assert!(g[(i, i)].im == 0.0 && g[(i, i)].re >= 1.0);
            for j in 0..m {
                prop_assert_eq!(g[(i, j)], g[(j, i)].conj());
                if f == Field::Real {
                    prop_assert_eq!(g[(i, j)].im, 0.0);
                }
            }
        }
    }

    #[test]
    fn single_matrix_kernel_is_positive(seed in any::<u64>(), n in 1usize..4, alpha in 0.0f64..4.0) {
        let a = random_contraction(&mut substream(seed, 0), n, Field::Complex);
        let h = build_hua_bellman(&[a], alpha, Field::Complex).unwrap();
        prop_assert!(h.pd_check(PSD_REL_TOL).unwrap().is_psd());
    }

    #[test]
    fn hua_identity_and_block_hold(seed in any::<u64>(), n in 1usize..5, f in field()) {
        let mut rng = substream(seed, 0);
        let a = random_contraction(&mut rng, n, f);
        let b = random_contraction(&mut rng, n, f);
        prop_assert!(hua_identity_residual(&a, &b).unwrap() <= 1e-12);
        prop_assert!(hua_block_psd(&a, &b).unwrap().is_psd());
        if f == Field::Real {
            prop_assert!(ostrowski_check(&a, &b).unwrap().holds);
        }
    }

    #[test]
    fn hua_distance_is_symmetric_nonnegative_and_vanishes_on_diagonal(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = substream(seed, 0);
        let a = random_contraction(&mut rng, n, Field::Complex);
        let b = random_contraction(&mut rng, n, Field::Complex);
        let ab = hua_distance_sq(&a, &b).unwrap();
        let ba = hua_distance_sq(&b, &a).unwrap();
        prop_assert!(ab.squared >= 0.0);
        prop_assert!((ab.squared - ba.squared).abs() <= 1e-12 * (1.0 + ab.squared));
        prop_assert_eq!(hua_distance_sq(&a, &a).unwrap().value, 0.0);
    }

    #[test]
    fn hua_distance_is_unitarily_invariant(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = substream(seed, 0);
        let a = random_contraction(&mut rng, n, Field::Complex);
        let b = random_contraction(&mut rng, n, Field::Complex);
        let u = random_unitary(&mut rng, n, Field::Complex);
        let ua = as_contraction(unitary_conjugate(&u, &a), DEFAULT_MARGIN).unwrap();
        let ub = as_contraction(unitary_conjugate(&u, &b), DEFAULT_MARGIN).unwrap();
        let d = hua_distance_sq(&a, &b).unwrap().squared;
        prop_assert!((hua_distance_sq(&ua, &ub).unwrap().squared - d).abs() <= 1e-10 * (1.0 + d));
    }

    #[test]
    fn s_divergence_is_symmetric_and_congruence_invariant(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = substream(seed, 0);
        let x = random_hpd(&mut rng, n, Field::Complex);
        let y = random_hpd(&mut rng, n, Field::Complex);
        let g = gaussian_matrix(&mut rng, n, n, Field::Complex);
        let congruent = |h: &HermitianMatrix| {
            HermitianMatrix::new(ComplexMatrix::new(&g * h.as_dmatrix() * g.adjoint()).unwrap()).unwrap()
        };
        let d = s_divergence(&x, &y).unwrap().squared;
        prop_assert!(d >= 0.0);
        prop_assert!((s_divergence(&y, &x).unwrap().squared - d).abs() <= 1e-12 * (1.0 + d));
        prop_assert!((s_divergence(&congruent(&x), &congruent(&y)).unwrap().squared - d).abs() <= 1e-8 * (1.0 + d));
    }

    #[test]
    fn delta_p_is_unitarily_invariant(seed in any::<u64>(), n in 1usize..4, p in 0.0f64..2.0) {
        let mut rng = substream(seed, 0);
        let x = ComplexMatrix::new(gaussian_matrix(&mut rng, n, n, Field::Complex)).unwrap();
        let y = ComplexMatrix::new(gaussian_matrix(&mut rng, n, n, Field::Complex)).unwrap();
        let u = random_unitary(&mut rng, n, Field::Complex);
        let v = random_unitary(&mut rng, n, Field::Complex);
        let d = delta_p_sq(&x, &y, p).unwrap().squared;
        let twisted = |m: &ComplexMatrix| ComplexMatrix::new(&u * m.as_dmatrix() * &v).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert!((delta_p_sq(&y, &x, p).unwrap().squared - d).abs() <= 1e-10 * (1.0 + d));
        prop_assert!((delta_p_sq(&twisted(&x), &twisted(&y), p).unwrap().squared - d).abs() <= 1e-8 * (1.0 + d));
        prop_assert_eq!(delta_p_sq(&x, &x, p).unwrap().squared, 0.0);
    }

    #[test]
    fn mobius_image_lies_in_right_halfplane(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = substream(seed, 0);
        let a = random_contraction(&mut rng, n, Field::Complex);
        let b = random_contraction(&mut rng, n, Field::Complex);
        let pair = mobius_transform(&a, &b).unwrap();
        prop_assert!(pair.min_eig_re_x > 0.0 && pair.min_eig_re_y > 0.0);
        prop_assert!(pair.residual_product <= 1e-10);
    }

    #[test]
    fn majorization_chain_holds(seed in any::<u64>(), n in 1usize..4, p in 0.0f64..2.0) {
        let mut rng = substream(seed, 0);
        let pts: Vec<_> = (0..3).map(|_| ComplexMatrix::new(gaussian_matrix(&mut rng, n, n, Field::Complex)).unwrap()).collect();
        let chain = majorization_chain(&pts[0], &pts[1], &pts[2], p).unwrap();
        prop_assert!(chain.majorized && chain.squared_majorized && chain.minkowski);
    }

    #[test]
    fn weak_majorization_is_reflexive_and_order_free(mut v in prop::collection::vec(0.0f64..10.0, 1..8)) {
        prop_assert!(weak_majorization(&v, &v).unwrap());
        let sorted = { let mut s = v.clone(); s.sort_by(f64::total_cmp); s };
        v.reverse();
        prop_assert!(weak_majorization(&v, &sorted).unwrap());
        let bigger: Vec<f64> = sorted.iter().map(|x| x + 1.0).collect();
        prop_assert!(weak_majorization(&v, &bigger).unwrap());
        prop_assert!(!weak_majorization(&bigger, &v).unwrap());
    }

    #[test]
    fn alpha_permanent_is_invariant_under_simultaneous_permutation_and_transpose(
        seed in any::<u64>(), n in 1usize..6, re in -2.0f64..2.0, im in -2.0f64..2.0,
    ) {
        let mut rng = substream(seed, 0);
        let a = ComplexMatrix::new(gaussian_matrix(&mut rng, n, n, Field::Complex)).unwrap();
        let alpha = C64::new(re, im);
        let value = alpha_permanent(&a, alpha).unwrap();
        let shift: Vec<usize> = (0..n).map(|i| (i + seed as usize % n) % n).collect();
        let permuted = ComplexMatrix::new(nalgebra::DMatrix::from_fn(n, n, |i, j| a[(shift[i], shift[j])])).unwrap();
        let scale = 1e-10 * (1.0 + value.norm());
        prop_assert!((alpha_permanent(&permuted, alpha).unwrap() - value).norm() <= scale);
        prop_assert!((alpha_permanent(&a.transpose(), alpha).unwrap() - value).norm() <= scale);
        prop_assert!((per_via_immanants(&a, alpha).unwrap() - value).norm() <= scale);
    }

    #[test]
    fn alpha_permanent_of_diagonal_factorizes(diag in prop::collection::vec(-3.0f64..3.0, 1..7), alpha in -3.0f64..3.0) {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        let expected: f64 = diag.iter().map(|x| alpha * x).product();
        let value = alpha_permanent(&ComplexMatrix::from_diagonal(&d), C64::new(alpha, 0.0)).unwrap();
        prop_assert!((value.re - expected).abs() <= 1e-12 * (1.0 + expected.abs()) && value.im == 0.0);
    }

    #[test]
    fn block_permanent_of_unit_multi_index_is_plain(seed in any::<u64>(), n in 1usize..5, alpha in -2.0f64..2.0) {
        let a = ComplexMatrix::new(gaussian_matrix(&mut substream(seed, 0), n, n, Field::Complex)).unwrap();
        let alpha = C64::new(alpha, 0.0);
        let plain = alpha_permanent(&a, alpha).unwrap();
        let block = block_alpha_permanent(&a, &MultiIndex::ones(n), alpha).unwrap();
        prop_assert!((plain - block).norm() <= 1e-10 * (1.0 + plain.norm()));
    }

    #[test]
    fn pd_check_matches_eigenvalues(seed in any::<u64>(), n in 1usize..6, shift in -2.0f64..2.0) {
        let g = gaussian_matrix(&mut substream(seed, 0), n, n, Field::Complex);
        let h = &g * g.adjoint() + nalgebra::DMatrix::<C64>::identity(n, n) * C64::new(shift, 0.0);
        let h = HermitianMatrix::new(ComplexMatrix::new(h).unwrap()).unwrap();
        let report = pd_check(&h, PSD_REL_TOL).unwrap();
        let eig = hermitian_eigen(&h).unwrap();
        prop_assert_eq!(report.min_eigenvalue, eig.min());
        prop_assert_eq!(report.is_psd(), eig.min() >= -PSD_REL_TOL * h.trace().abs());
    }

    #[test]
    fn matrix_file_round_trips(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5, f in field()) {
        let m = ComplexMatrix::new(gaussian_matrix(&mut substream(seed, 0), rows, cols, f)).unwrap();
        let text = serde_json::to_string(&MatrixFile::from_matrix(&m, None)).unwrap();
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn contraction_margin_is_enforced(seed in any::<u64>(), n in 1usize..4, scale in 0.5f64..2.0) {
        let g = ComplexMatrix::new(gaussian_matrix(&mut substream(seed, 0), n, n, Field::Complex)).unwrap();
        let norm = huabell::matrix::spectral_norm(&g);
        let m = ComplexMatrix::new(g.as_dmatrix() * C64::new(scale / norm, 0.0)).unwrap();
        prop_assert_eq!(as_contraction(m, DEFAULT_MARGIN).is_ok(), scale < 1.0 - DEFAULT_MARGIN);
    }
}

#[test]
fn character_rows_have_dimension_at_identity() {
    for n in 1..=8 {
        let table = CharacterTable::new(n);
        let id = table.class_index(&huabell::perm::CycleType::identity(n)).unwrap();
        for (i, lambda) in table.irreps().iter().enumerate() {
            assert_eq!(table.row(i)[id] as u128, lambda.dimension());
        }
        assert_eq!(table.irreps().len(), partitions(n).len());
    }
}
