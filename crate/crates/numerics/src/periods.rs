use crate::NumericsError;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Arithmetic-geometric mean with the optimal choice of square root at
/// every step (`|a - b| <= |a + b|`).
pub fn agm(mut a: Complex64, mut b: Complex64) -> Complex64 {
    for _ in 0..100 {
        let m = 0.5 * (a + b);
        let mut g = (a * b).sqrt();
        if (m - g).norm() > (m + g).norm() {
            g = -g;
        }
        a = m;
        b = g;
        if (a - b).norm() <= 1e-16 * a.norm() {
            break;
        }
    }
    0.5 * (a + b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipticPeriods {
    pub omega1: Complex64,
    pub omega2: Complex64,
    pub covolume: f64,
}

/// Lagrange-reduces a lattice basis, then orients it so that
/// `Im(omega2 / omega1) > 0`.
fn reduce(mut a: Complex64, mut b: Complex64) -> (Complex64, Complex64) {
    let longer = |a: Complex64, b: Complex64| {
        let (na, nb) = (a.norm_sqr(), b.norm_sqr());
        if (na - nb).abs() <= 1e-12 * na {
            // ties prefer the more horizontal vector first
            a.re.abs() < b.re.abs()
        } else {
            na > nb
        }
    };
    for _ in 0..200 {
        if longer(a, b) {
            std::mem::swap(&mut a, &mut b);
        }
        let mu = ((b * a.conj()).re / a.norm_sqr()).round();
        if mu == 0.0 {
            break;
        }
        b -= mu * a;
    }
    if longer(a, b) {
        std::mem::swap(&mut a, &mut b);
    }
    if (b / a).im < 0.0 {
        b = -b;
    }
    if a.re < 0.0 || (a.re == 0.0 && a.im < 0.0) {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Periods of `dx/y` on `y^2 = x (x - 1)(x - lambda)`, as a reduced basis.
pub fn elliptic_periods(lambda: Complex64) -> Result<EllipticPeriods, NumericsError> {
    if lambda.norm() < 1e-14 || (lambda - 1.0).norm() < 1e-14 || !lambda.is_finite() {
        return Err(NumericsError::DegenerateLambda(lambda));
    }
    let (e1, e2, e3) = (lambda, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let w1 = 2.0 * PI / agm((e1 - e3).sqrt(), (e1 - e2).sqrt());
    let w2 = 2.0 * PI / agm((e2 - e3).sqrt(), (e2 - e1).sqrt());
    let (omega1, omega2) = reduce(w1, w2);
    Ok(EllipticPeriods { omega1, omega2, covolume: (omega1.conj() * omega2).im.abs() })
}

fn theta_all(xi: Complex64, tau: Complex64) -> [Complex64; 4] {
    let i = Complex64::i();
    let mut t1 = Complex64::new(0.0, 0.0);
    let mut t2 = Complex64::new(0.0, 0.0);
    let mut t3 = Complex64::new(1.0, 0.0);
    let mut t4 = Complex64::new(1.0, 0.0);
    for n in 0..40 {
        let nf = n as f64;
        let half = (i * PI * tau * (nf + 0.5) * (nf + 0.5)).exp();
        let odd = (2.0 * nf + 1.0) * xi;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        t1 += 2.0 * sign * half * odd.sin();
        t2 += 2.0 * half * odd.cos();
        if n > 0 {
            let full = (i * PI * tau * nf * nf).exp();
            let even = (2.0 * nf * xi).cos();
            t3 += 2.0 * full * even;
            t4 += 2.0 * sign * full * even;
        }
        if half.norm() < 1e-30 && n > 2 {
            break;
        }
    }
    [t1, t2, t3, t4]
}

/// The Weierstrass function of the lattice spanned by `w1, w2`, through
/// Jacobi theta series.
pub fn weierstrass_p(z: Complex64, w1: Complex64, w2: Complex64) -> Complex64 {
    let (w1, w2) = reduce(w1, w2);
    let tau = w2 / w1;
    // shift z into the centred fundamental cell
    let det = w1.conj() * w2;
    let b = (z * w1.conj()).im / det.im;
    let a = (z.conj() * w2).im / det.im;
    let z = z - a.round() * w1 - b.round() * w2;
    let xi = PI * z / w1;
    let [_, t2z, t3z, t4z] = theta_all(Complex64::new(0.0, 0.0), tau);
    let [t1, t2, _, _] = theta_all(xi, tau);
    let c = PI / w1;
    let e1 = c * c / 3.0 * (t2z.powu(4) + 2.0 * t4z.powu(4));
    let r = c * t3z * t4z * t2 / t1;
    e1 + r * r
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: usize,
    pub seed: u64,
}

/// Estimates `I(lambda)`, the mean of `log|x|` against the invariant
/// probability measure on `y^2 = x (x - 1)(x - lambda)`.
///
/// Points are uniform on the torus `C / L` where `2L` is the period lattice
/// of `dx/y`, and `x = p(z) + (1 + lambda)/3` with `p` the Weierstrass
/// function of `L`.
pub fn monte_carlo_i(lambda: Complex64, samples: usize, seed: u64) -> Result<MonteCarloEstimate, NumericsError> {
    let per = elliptic_periods(lambda)?;
    let (w1, w2) = (0.5 * per.omega1, 0.5 * per.omega2);
    let shift = (1.0 + lambda) / 3.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for k in 0..samples {
        let z = rng.gen::<f64>() * w1 + rng.gen::<f64>() * w2;
        let v = (weierstrass_p(z, w1, w2) + shift).norm().ln();
        let d = v - mean;
        mean += d / (k + 1) as f64;
        m2 += d * (v - mean);
    }
    let var = if samples > 1 { m2 / (samples - 1) as f64 } else { f64::NAN };
    Ok(MonteCarloEstimate { mean, standard_error: (var / samples as f64).sqrt(), samples, seed })
}
