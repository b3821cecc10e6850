use crate::forms::GramData;
use crate::model::ComplexCurveModel;
use crate::quadrature::{integrate_curve, Integrand, QuadOptions, QuadratureResult};
use crate::NumericsError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `log|f|` for `f = c * prod (x - p)^m`, a rational function of `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogFactor {
    pub log_abs_constant: f64,
    pub terms: Vec<(Complex64, i32)>,
}

impl LogFactor {
    /// `(x - x(w1)) / (x - x(w2))` for Weierstrass points given by their
    /// abscissae; `None` stands for the point at infinity.
    pub fn weierstrass(w1: Option<Complex64>, w2: Option<Complex64>) -> Self {
        let mut terms = Vec::new();
        if let Some(a) = w1 {
            terms.push((a, 1));
        }
        if let Some(b) = w2 {
            terms.push((b, -1));
        }
        Self { log_abs_constant: 0.0, terms }
    }

    pub fn eval(&self, x: Complex64) -> f64 {
        self.terms.iter().fold(self.log_abs_constant, |s, (p, m)| s + *m as f64 * (x - p).norm().ln())
    }

    pub fn points(&self) -> Vec<Complex64> {
        self.terms.iter().map(|(p, _)| *p).collect()
    }
}

/// `<R(K), tau>` in the curve-integral gauge: `2 int_C log|f| tau` with
/// `tau = (i/2)(zeta_1 ^ conj(zeta_1) - zeta_2 ^ conj(zeta_2))` built from
/// the first two rows of `gram.zeta`. Both terms of K restrict the invariant
/// form to a translate of the same curve, hence the factor 2.
pub fn regulator_pairing_k(
    model: &ComplexCurveModel,
    f: &LogFactor,
    gram: &GramData,
    opts: &QuadOptions,
) -> Result<QuadratureResult, NumericsError> {
    if model.genus() < 2 || gram.zeta.nrows() < 2 {
        return Err(NumericsError::Genus { expected: 2, actual: model.genus() });
    }
    let tau = gram.tau();
    let d = Integrand::new(1, f.points(), |x: Complex64, y: Complex64, out: &mut [f64]| {
        out[0] = 2.0 * f.eval(x) * tau.density(x, y.norm_sqr());
    });
    Ok(integrate_curve(model, &d, opts).component(0))
}
