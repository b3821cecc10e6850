use hyperchow_numerics::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn opts() -> QuadOptions {
    QuadOptions::default()
}

#[test]
fn functional_equation_holds() {
    for lam in [c(2.0), c(3.0), c(5.0), c(1.5), Complex64::new(2.0, 1.0)] {
        let fe = functional_equation(lam, &opts()).unwrap();
        assert!(fe.residual.abs() <= 1e-8f64.max(3.0 * fe.error_estimate), "{lam}: {}", fe.residual);
        assert!(fe.i_lambda.value.converged && fe.i_inverse.value.converged);
    }
}

#[test]
fn i_of_lambda_is_half_log_modulus() {
    // translation by the 2-torsion point (0, 0) maps x to lambda / x
    for lam in [c(2.0), c(-4.0), Complex64::new(0.2, -0.9), c(0.5)] {
        let r = i_of_lambda(lam, &opts()).unwrap().value;
        assert!(r.agrees_with(0.5 * lam.norm().ln(), 3.0), "{lam}: {}", r.value);
    }
}

#[test]
fn i_of_lambda_is_conjugation_invariant_and_not_constant() {
    let lam = Complex64::new(2.0, 1.0);
    let a = i_of_lambda(lam, &opts()).unwrap().value;
    let b = i_of_lambda(lam.conj(), &opts()).unwrap().value;
    assert!((a.value - b.value).abs() <= 1e-8);
    let two = i_of_lambda(c(2.0), &opts()).unwrap().value;
    let half = i_of_lambda(c(0.5), &opts()).unwrap().value;
    assert!((two.value - half.value).abs() > 10.0 * (two.error_estimate + half.error_estimate));
}

#[test]
fn functional_equation_on_random_lambdas() {
    let config = Config { cases: 6, failure_persistence: None, ..Config::default() };
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(config, rng);
    let strategy = (-4.0f64..4.0, -4.0f64..4.0).prop_filter("away from 0 and 1", |(a, b)| {
        let z = Complex64::new(*a, *b);
        z.norm() > 0.2 && (z - 1.0).norm() > 0.2
    });
    runner
        .run(&strategy, |(a, b)| {
            let fe = functional_equation(Complex64::new(a, b), &opts()).unwrap();
            prop_assert!(fe.residual.abs() <= 1e-8f64.max(3.0 * fe.error_estimate));
            Ok(())
        })
        .unwrap();
}

#[test]
fn genus_one_gram_is_covolume() {
    let lam = c(3.0);
    let model = ComplexCurveModel::legendre(lam).unwrap();
    let g = gram_normalize(&model, &opts()).unwrap();
    let covol = elliptic_periods(lam).unwrap().covolume;
    assert!((g.gram[(0, 0)].re / covol - 1.0).abs() < 1e-8);
    assert!((g.zeta[(0, 0)].norm() * covol.sqrt() - 1.0).abs() < 1e-8);
}

#[test]
fn orthonormal_forms_recomputed() {
    let curves = [
        ComplexCurveModel::new(c(1.0), vec![c(0.0), c(1.0), c(2.0), c(3.0), c(4.0)]).unwrap(),
        ComplexCurveModel::new(c(1.0), (0..7).map(|k| c(k as f64)).collect()).unwrap(),
        ComplexCurveModel::new(c(2.0), vec![c(0.0), c(1.0), Complex64::new(2.0, 1.0), c(-1.5), Complex64::new(0.3, -1.2), c(3.0)])
            .unwrap(),
    ];
    for model in curves {
        let g = gram_normalize(&model, &opts()).unwrap();
        // Cholesky order: zeta_1 is a multiple of dx/y
        for j in 1..model.genus() {
            assert_eq!(g.zeta[(0, j)], c(0.0));
        }
        let (m, err) = g.inner_products_by_quadrature(&model, &opts());
        let id = DMatrix::<Complex64>::identity(model.genus(), model.genus());
        let dev = (m - id).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(dev <= 10.0 * 1e-8f64.max(err), "genus {}: {dev}", model.genus());
    }
}

#[test]
fn volume_form_validation() {
    let bad = DMatrix::from_row_slice(2, 2, &[c(1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.0), c(1.0)]);
    assert!(matches!(VolumeForm::new(bad), Err(NumericsError::NotHermitian)));
    let good = DMatrix::from_row_slice(2, 2, &[c(1.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0), c(1.0)]);
    let v = VolumeForm::new(good).unwrap();
    let x = Complex64::new(0.4, -0.3);
    // |1 + i conj(x) ... |: the density of |dx + i x dx|^2 / |h|
    let expect = (c(1.0) + Complex64::new(0.0, -1.0) * x).norm_sqr();
    assert!((v.density(x, 1.0) - expect).abs() < 1e-14);
}

#[test]
fn bielliptic_model_commutes() {
    for (a, b) in [(2.0, 3.0), (2.0, 5.0), (3.0, 5.0)] {
        let m = build_bielliptic(c(a), c(b)).unwrap();
        assert!(m.checks.diagram_residual < 1e-10);
        assert!(m.checks.c_spread < 1e-10);
        assert!(m.checks.c.norm() > 0.0);
        assert_eq!(m.checks.degree_g, 4);
        assert_eq!(m.checks.samples, 20);
        assert_eq!(m.curve.genus(), 2);
        for (v, p) in m.cover.critical_values.iter().zip(m.cover.critical_points) {
            assert!((m.cover.h(p) - v).norm() < 1e-12);
        }
    }
    assert!(build_bielliptic(c(2.0), c(2.0)).is_err());
    assert!(build_bielliptic(c(1.0), c(2.0)).is_err());
}

#[test]
fn pulled_back_forms_are_orthogonal() {
    let m = build_bielliptic(c(2.0), c(3.0)).unwrap();
    let basis = m.pullback_basis();
    let g = gram_normalize_basis(&m.curve, &basis, &opts()).unwrap();
    let (a, b) = (m.pullback_form(0), m.pullback_form(1));
    assert!(g.inner(&a, &b).norm() < 1e-8);
    // <k_i^* w_i, k_i^* w_i> = deg(k_i) covol(E_i)
    for (i, lam) in [c(2.0), c(3.0)].into_iter().enumerate() {
        let f = m.pullback_form(i);
        let norm = g.inner(&f, &f).re;
        assert!((norm / (2.0 * elliptic_periods(lam).unwrap().covolume) - 1.0).abs() < 1e-8);
    }
}

#[test]
fn bielliptic_splitting() {
    for (a, b) in [(2.0, 3.0), (2.0, 5.0), (3.0, 5.0)] {
        let r = bielliptic_identity_check(c(a), c(b), &opts()).unwrap();
        assert!(r.splitting_residual.abs() <= 1e-8f64.max(r.splitting_error));
        assert!(r.mass_difference.abs() <= 1e-8);
        for m in &r.masses {
            assert!((m.value - 2.0).abs() <= 1e-8);
        }
        // empirically I(g, i, C) = deg(k_i) I(lambda_i)
        assert!((r.degree_constant - 2.0).abs() < 1e-6);
        for ratio in r.degree_ratios {
            assert!((ratio - 2.0).abs() < 1e-6);
        }
        assert_eq!(r.verdict, Verdict::Nonzero);
    }
}

#[test]
fn pairing_matches_bielliptic_path() {
    let m = build_bielliptic(c(2.0), c(5.0)).unwrap();
    let report = bielliptic_identity_check(c(2.0), c(5.0), &opts()).unwrap();
    let basis = m.pullback_basis();
    let g = gram_normalize_basis(&m.curve, &basis, &opts()).unwrap();
    let f = LogFactor::weierstrass(Some(c(0.0)), None);
    let p = regulator_pairing_k(&m.curve, &f, &g, &opts()).unwrap();
    let expect = 2.0 * report.i_f_tau.value;
    assert!((p.value - expect).abs() <= 10.0 * (p.error_estimate + 2.0 * report.i_f_tau.error_estimate));

    let swapped = regulator_pairing_k(&m.curve, &f, &g.reordered(&[1, 0]), &opts()).unwrap();
    assert!((swapped.value + p.value).abs() <= 1e-12 * p.value.abs().max(1.0));

    // the same pairing written with an explicit tau matrix
    let tau = VolumeForm::from_forms(&g.zeta, &[1.0, -1.0]);
    let direct = integrate_scalar(&m.curve, vec![c(0.0)], |x, y| 2.0 * f.eval(x) * tau.density(x, y.norm_sqr()), &opts());
    assert_eq!(direct.value, p.value);
}

#[test]
fn pairing_needs_genus_two() {
    let model = ComplexCurveModel::legendre(c(2.0)).unwrap();
    let g = gram_normalize(&model, &opts()).unwrap();
    let f = LogFactor::weierstrass(Some(c(0.0)), None);
    assert!(matches!(regulator_pairing_k(&model, &f, &g, &opts()), Err(NumericsError::Genus { .. })));
}

#[test]
fn genus_three_cover() {
    let cover = build_genus3_cover(c(2.0), c(3.0), c(-2.0)).unwrap();
    let k = &cover.checks;
    assert_eq!((k.genus_c, k.genus_g), (3, 2));
    assert!(k.unramified());
    assert!(k.branch_over_legendre);
    assert!(k.diagram_residual < 1e-10);
    assert_eq!(k.samples, 20);
    let (up, down) = cover.pullback_mass(&opts());
    assert!((up.value - 2.0 * down.value).abs() <= 1e-7);

    let complex = build_genus3_cover(Complex64::new(0.5, 1.0), Complex64::new(-1.0, 0.5), c(4.0)).unwrap();
    assert!(complex.checks.unramified() && complex.checks.diagram_residual < 1e-10);
    assert!(build_genus3_cover(c(2.0), c(2.0), c(3.0)).is_err());
}
