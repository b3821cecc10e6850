use crate::model::ComplexCurveModel;
use crate::periods::elliptic_periods;
use crate::quadrature::{integrate_curve, Integrand, QuadOptions, QuadratureResult};
use crate::NumericsError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A degree-2 map `h(z) = z (alpha z + beta) / (z - delta)` of the projective
/// line with `h(0) = 0`, `h(1) = 1`, `h(inf) = inf` and prescribed critical
/// values.
///
/// Writing `h - v = alpha (z - c)^2 / (z - delta)` at a critical value `v`
/// gives `beta^2 = v1 v2` and `4 alpha delta = v1 + v2 - 2 beta`, with
/// `alpha + delta = 1 - beta`. Convention: `beta` is the principal square
/// root of `v1 v2`, and `alpha` is the root of larger modulus (ties go to
/// the larger real part).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DoubleCover {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub delta: Complex64,
    pub critical_values: [Complex64; 2],
    pub critical_points: [Complex64; 2],
}

impl DoubleCover {
    pub fn with_critical_values(v1: Complex64, v2: Complex64) -> Result<Self, NumericsError> {
        let bad = |v: Complex64| v.norm() < 1e-12 || (v - 1.0).norm() < 1e-12 || !v.is_finite();
        if bad(v1) || bad(v2) || (v1 - v2).norm() < 1e-12 {
            return Err(NumericsError::Degenerate(format!("critical values {v1}, {v2}")));
        }
        let beta = (v1 * v2).sqrt();
        let s = 1.0 - beta;
        let p = 0.25 * (v1 + v2 - 2.0 * beta);
        let disc = (s * s - 4.0 * p).sqrt();
        let (r1, r2) = (0.5 * (s + disc), 0.5 * (s - disc));
        let pick_first = match r1.norm().partial_cmp(&r2.norm()) {
            Some(std::cmp::Ordering::Greater) => true,
            Some(std::cmp::Ordering::Less) => false,
            _ => r1.re >= r2.re,
        };
        let (alpha, delta) = if pick_first { (r1, r2) } else { (r2, r1) };
        if alpha.norm() < 1e-12 || delta.norm() < 1e-12 || (delta - 1.0).norm() < 1e-12 {
            return Err(NumericsError::Degenerate(format!("critical values {v1}, {v2} force a degree drop")));
        }
        let crit = |v: Complex64| (v - beta) / (2.0 * alpha);
        let cover = Self {
            alpha,
            beta,
            delta,
            critical_values: [v1, v2],
            critical_points: [crit(v1), crit(v2)],
        };
        for (cp, v) in cover.critical_points.iter().zip([v1, v2]) {
            if (cover.h(*cp) - v).norm() > 1e-9 * (1.0 + v.norm()) || cover.derivative(*cp).norm() > 1e-9 {
                return Err(NumericsError::Degenerate(format!("no critical point over {v}")));
            }
        }
        Ok(cover)
    }

    pub fn h(&self, z: Complex64) -> Complex64 {
        z * (self.alpha * z + self.beta) / (z - self.delta)
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let [c1, c2] = self.critical_points;
        self.alpha * (z - c1) * (z - c2) / ((z - self.delta) * (z - self.delta))
    }

    /// The deck involution: the other preimage of `h(z)`.
    pub fn sigma(&self, z: Complex64) -> Complex64 {
        (self.h(z) - self.beta) / self.alpha - z
    }

    /// Both preimages of a finite `w`.
    pub fn preimages(&self, w: Complex64) -> [Complex64; 2] {
        // alpha z^2 + (beta - w) z + w delta = 0
        let b = self.beta - w;
        let disc = (b * b - 4.0 * self.alpha * w * self.delta).sqrt();
        [(-b + disc) / (2.0 * self.alpha), (-b - disc) / (2.0 * self.alpha)]
    }

    /// The second preimage of 0 and of 1, and the pole.
    pub fn sigma0(&self) -> Complex64 {
        -self.beta / self.alpha
    }

    pub fn sigma1(&self) -> Complex64 {
        self.delta / self.alpha
    }
}

/// Deterministic sample abscissae on a golden-angle spiral.
pub(crate) fn sample_points(n: usize, offset: Complex64) -> Vec<Complex64> {
    (1..=n).map(|k| offset + Complex64::from_polar(0.37 * (k as f64).sqrt(), 2.399963229728653 * k as f64)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiellipticChecks {
    /// Largest relative residual of the elliptic equations at `k_i(P)`,
    /// together with `f_i(k_i(P)) - h(f(P))`.
    pub diagram_residual: f64,
    /// Constant with `f * fbar = c * g`.
    pub c: Complex64,
    /// Largest relative deviation of `f * fbar / g` from `c`.
    pub c_spread: f64,
    /// Number of distinct points in a generic fibre of `g`.
    pub degree_g: usize,
    pub samples: usize,
}

/// A genus-2 curve with two degree-2 maps to Legendre curves.
///
/// `C: y^2 = z (z - sigma(0)) (z - 1) (z - sigma(1)) (z - delta)` is branched
/// over `h^-1 {0, 1, inf}`. The maps are
/// `k_i(z, y) = (h(z), alpha^(3/2) (z - c_i) y / (z - delta)^2)` into
/// `E_i: Y^2 = X (X - 1)(X - lambda_i)`, so that
/// `k_i^*(dX/Y) = alpha^(-1/2) (z - c_j) dz / y` with `j != i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiellipticModel {
    pub lambdas: [Complex64; 2],
    pub cover: DoubleCover,
    pub curve: ComplexCurveModel,
    pub checks: BiellipticChecks,
}

impl BiellipticModel {
    pub fn k(&self, i: usize, z: Complex64, y: Complex64) -> (Complex64, Complex64) {
        let d = &self.cover;
        let w = z - d.delta;
        (d.h(z), d.alpha.powf(1.5) * (z - d.critical_points[i]) * y / (w * w))
    }

    pub fn f(&self, z: Complex64) -> Complex64 {
        z
    }

    pub fn fbar(&self, z: Complex64) -> Complex64 {
        self.cover.sigma(z)
    }

    pub fn g(&self, z: Complex64) -> Complex64 {
        self.cover.h(z)
    }

    /// Rows are `k_1^*(dX/Y)` and `k_2^*(dX/Y)` in monomial coefficients.
    pub fn pullback_basis(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(2, 2, |i, j| self.pullback_form(i)[j])
    }

    /// Monomial coefficients of `k_i^*(dX/Y)`.
    pub fn pullback_form(&self, i: usize) -> [Complex64; 2] {
        let s = self.cover.alpha.powf(-0.5);
        [-self.cover.critical_points[1 - i] * s, s]
    }
}

pub fn build_bielliptic(l1: Complex64, l2: Complex64) -> Result<BiellipticModel, NumericsError> {
    let cover = DoubleCover::with_critical_values(l1, l2)?;
    let roots = vec![c(0.0), cover.sigma0(), c(1.0), cover.sigma1(), cover.delta];
    let curve = ComplexCurveModel::new(c(1.0), roots)?;
    let mut model = BiellipticModel {
        lambdas: [l1, l2],
        cover,
        curve,
        checks: BiellipticChecks { diagram_residual: 0.0, c: c(0.0), c_spread: 0.0, degree_g: 0, samples: 0 },
    };
    let cc = cover.sigma1();
    let pts = sample_points(20, Complex64::new(0.11, 0.07));
    let mut residual = 0.0f64;
    let mut spread = 0.0f64;
    for z in &pts {
        let y = model.curve.y(*z);
        for (i, lam) in [l1, l2].into_iter().enumerate() {
            let (x, yy) = model.k(i, *z, y);
            let rhs = x * (x - 1.0) * (x - lam);
            residual = residual.max((yy * yy - rhs).norm() / rhs.norm().max(1.0));
            residual = residual.max((x - cover.h(model.f(*z))).norm() / x.norm().max(1.0));
        }
        let ratio = model.f(*z) * model.fbar(*z) / model.g(*z);
        spread = spread.max((ratio - cc).norm() / cc.norm());
    }
    let w0 = Complex64::new(0.3, 0.8);
    let mut fibre: Vec<(Complex64, Complex64)> = Vec::new();
    for z in cover.preimages(w0) {
        let y = model.curve.y(z);
        for p in [(z, y), (z, -y)] {
            if (model.g(p.0) - w0).norm() < 1e-9 && !fibre.iter().any(|q| (q.0 - p.0).norm() + (q.1 - p.1).norm() < 1e-9) {
                fibre.push(p);
            }
        }
    }
    model.checks = BiellipticChecks { diagram_residual: residual, c: cc, c_spread: spread, degree_g: fibre.len(), samples: pts.len() };
    Ok(model)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Nonzero,
    Indeterminate,
}

impl Verdict {
    /// Nonzero when `|value| > 5 * error`.
    pub fn of(r: &QuadratureResult) -> Self {
        if r.value.abs() > 5.0 * r.error_estimate.max(r.tolerance_requested) {
            Verdict::Nonzero
        } else {
            Verdict::Indeterminate
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BiellipticReport {
    pub model: BiellipticModel,
    /// `int_C k_i^* theta_i`, expected to be `deg k_i = 2`.
    pub masses: [QuadratureResult; 2],
    /// `I(r, i, C)` for `r = f, fbar, g`.
    pub i_f: [QuadratureResult; 2],
    pub i_fbar: [QuadratureResult; 2],
    pub i_g: [QuadratureResult; 2],
    /// `I(f, D) + I(fbar, D) - I(g, D) - log|c| int D` with `D = k_1^* theta_1 - k_2^* theta_2`.
    pub splitting_residual: f64,
    pub splitting_error: f64,
    /// `int_C D`.
    pub mass_difference: f64,
    pub mass_difference_error: f64,
    /// `I(lambda_i)` from the elliptic curves.
    pub i_lambda: [QuadratureResult; 2],
    /// `I(g, i, C) / I(lambda_i)`.
    pub degree_ratios: [f64; 2],
    /// `I(g, D) / (I(lambda_1) - I(lambda_2))`.
    pub degree_constant: f64,
    /// `I(f, tau_C)` with `tau_C = (1/2) D`.
    pub i_f_tau: QuadratureResult,
    pub verdict: Verdict,
}

fn combine(parts: &[(f64, &QuadratureResult)]) -> QuadratureResult {
    let first = parts[0].1;
    QuadratureResult {
        value: parts.iter().map(|(s, r)| s * r.value).sum(),
        error_estimate: parts.iter().map(|(s, r)| s.abs() * r.error_estimate).sum(),
        cells_used: parts.iter().map(|(_, r)| r.cells_used).max().unwrap_or(0),
        tolerance_requested: first.tolerance_requested,
        converged: parts.iter().all(|(_, r)| r.converged),
    }
}

pub fn bielliptic_identity_check(
    l1: Complex64,
    l2: Complex64,
    opts: &QuadOptions,
) -> Result<BiellipticReport, NumericsError> {
    let model = build_bielliptic(l1, l2)?;
    let covol = [elliptic_periods(l1)?.covolume, elliptic_periods(l2)?.covolume];
    let cover = model.cover;
    let scale = 1.0 / cover.alpha.norm();
    let d = Integrand::new(8, vec![], |z: Complex64, y: Complex64, out: &mut [f64]| {
        let ah = y.norm_sqr();
        let lf = z.norm().ln();
        let lfbar = cover.sigma(z).norm().ln();
        let lg = cover.h(z).norm().ln();
        for i in 0..2 {
            let w = scale * (z - cover.critical_points[1 - i]).norm_sqr() / (ah * covol[i]);
            out[4 * i] = w;
            out[4 * i + 1] = w * lf;
            out[4 * i + 2] = w * lfbar;
            out[4 * i + 3] = w * lg;
        }
    });
    let r = integrate_curve(&model.curve, &d, opts);
    let comp = |i: usize| r.component(i);
    let masses = [comp(0), comp(4)];
    let i_f = [comp(1), comp(5)];
    let i_fbar = [comp(2), comp(6)];
    let i_g = [comp(3), comp(7)];
    let log_c = model.checks.c.norm().ln();
    let split = combine(&[
        (1.0, &i_f[0]),
        (-1.0, &i_f[1]),
        (1.0, &i_fbar[0]),
        (-1.0, &i_fbar[1]),
        (-1.0, &i_g[0]),
        (1.0, &i_g[1]),
        (-log_c, &masses[0]),
        (log_c, &masses[1]),
    ]);
    let mass_diff = combine(&[(1.0, &masses[0]), (-1.0, &masses[1])]);
    let il = [crate::elliptic::i_of_lambda(l1, opts)?.value, crate::elliptic::i_of_lambda(l2, opts)?.value];
    let i_g_delta = i_g[0].value - i_g[1].value;
    let i_f_tau = combine(&[(0.5, &i_f[0]), (-0.5, &i_f[1])]);
    Ok(BiellipticReport {
        degree_ratios: [i_g[0].value / il[0].value, i_g[1].value / il[1].value],
        degree_constant: i_g_delta / (il[0].value - il[1].value),
        verdict: Verdict::of(&i_f_tau),
        splitting_residual: split.value,
        splitting_error: split.error_estimate,
        mass_difference: mass_diff.value,
        mass_difference_error: mass_diff.error_estimate,
        i_lambda: il,
        model,
        masses,
        i_f,
        i_fbar,
        i_g,
        i_f_tau,
    })
}
