use crate::model::ComplexCurveModel;
use crate::periods::elliptic_periods;
use crate::quadrature::{integrate_curve, Integrand, QuadOptions, QuadratureResult};
use crate::NumericsError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `(i/2) int dx/y ^ conj(dx/y)` over `y^2 = x (x - 1)(x - lambda)`, by quadrature.
pub fn covolume_by_quadrature(lambda: Complex64, opts: &QuadOptions) -> Result<QuadratureResult, NumericsError> {
    let model = ComplexCurveModel::legendre(lambda)?;
    let d = Integrand::new(1, vec![], |_x, y: Complex64, out: &mut [f64]| out[0] = 1.0 / y.norm_sqr());
    Ok(integrate_curve(&model, &d, opts).component(0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ILambda {
    pub lambda: Complex64,
    /// `int log|x| theta` with `theta` of unit mass.
    pub value: QuadratureResult,
    /// Unnormalized mass `(i/2) int dx/y ^ conj(dx/y)` from the same cells.
    pub mass: QuadratureResult,
    pub covolume_agm: f64,
    /// `mass / covolume_agm - 1`.
    pub mass_residual: f64,
}

/// The mean of `log|x|` on `y^2 = x (x - 1)(x - lambda)` against the
/// normalized invariant volume form.
pub fn i_of_lambda(lambda: Complex64, opts: &QuadOptions) -> Result<ILambda, NumericsError> {
    let model = ComplexCurveModel::legendre(lambda)?;
    let covolume_agm = elliptic_periods(lambda)?.covolume;
    let d = Integrand::new(2, vec![], |x: Complex64, y: Complex64, out: &mut [f64]| {
        let w = 1.0 / y.norm_sqr();
        out[0] = w * x.norm().ln();
        out[1] = w;
    });
    // the integrals are about covolume-sized; scale the target so the
    // normalized value meets opts.tol
    let inner = QuadOptions { tol: opts.tol * covolume_agm / 4.0, ..opts.clone() };
    let r = integrate_curve(&model, &d, &inner);
    let (n, m) = (r.values[0], r.values[1]);
    let value = n / m;
    let error = (r.errors[0] + value.abs() * r.errors[1]) / m;
    let mass = QuadratureResult { tolerance_requested: opts.tol, ..r.component(1) };
    Ok(ILambda {
        lambda,
        value: QuadratureResult {
            value,
            error_estimate: error,
            cells_used: r.cells_used,
            tolerance_requested: opts.tol,
            converged: r.converged,
        },
        mass_residual: m / covolume_agm - 1.0,
        mass,
        covolume_agm,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalEquation {
    pub lambda: Complex64,
    pub i_lambda: ILambda,
    pub i_inverse: ILambda,
    pub log_abs_lambda: f64,
    /// `I(lambda) - I(1/lambda) - log|lambda|`.
    pub residual: f64,
    pub error_estimate: f64,
}

pub fn functional_equation(lambda: Complex64, opts: &QuadOptions) -> Result<FunctionalEquation, NumericsError> {
    let i_lambda = i_of_lambda(lambda, opts)?;
    let i_inverse = i_of_lambda(1.0 / lambda, opts)?;
    let log_abs_lambda = lambda.norm().ln();
    Ok(FunctionalEquation {
        lambda,
        residual: i_lambda.value.value - i_inverse.value.value - log_abs_lambda,
        error_estimate: i_lambda.value.error_estimate + i_inverse.value.error_estimate,
        i_lambda,
        i_inverse,
        log_abs_lambda,
    })
}
