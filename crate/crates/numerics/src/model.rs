use crate::NumericsError;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A hyperelliptic curve `y^2 = h(x)` over the complex numbers, stored by the
/// leading coefficient and the finite branch points of `h`.
///
/// The square root is `y(x) = sqrt(lc) * prod sqrt(x - e)` with principal
/// branches, so the cut system is the set of horizontal rays running left
/// from each branch point. `flipped` swaps the global sheet tag.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexCurveModel {
    lc: Complex64,
    roots: Vec<Complex64>,
    #[serde(default)]
    flipped: bool,
}

impl ComplexCurveModel {
    pub fn new(lc: Complex64, roots: Vec<Complex64>) -> Result<Self, NumericsError> {
        if lc == Complex64::new(0.0, 0.0) || !lc.is_finite() {
            return Err(NumericsError::Degenerate("zero leading coefficient".into()));
        }
        if roots.len() < 3 {
            return Err(NumericsError::TooFewBranchPoints);
        }
        let scale = roots.iter().fold(1.0f64, |m, r| m.max(r.norm()));
        for (i, a) in roots.iter().enumerate() {
            if !a.is_finite() {
                return Err(NumericsError::Degenerate(format!("branch point {a}")));
            }
            if roots[..i].iter().any(|b| (a - b).norm() <= 1e-12 * scale) {
                return Err(NumericsError::RepeatedBranchPoint(*a));
            }
        }
        Ok(Self { lc, roots, flipped: false })
    }

    /// `y^2 = x (x - 1)(x - lambda)`.
    pub fn legendre(lambda: Complex64) -> Result<Self, NumericsError> {
        if lambda.norm() < 1e-14 || (lambda - 1.0).norm() < 1e-14 || !lambda.is_finite() {
            return Err(NumericsError::DegenerateLambda(lambda));
        }
        Self::new(Complex64::new(1.0, 0.0), vec![0.0.into(), 1.0.into(), lambda])
    }

    /// Builds the model from the coefficients of `h`, lowest degree first.
    pub fn from_coefficients(coeffs: &[Complex64]) -> Result<Self, NumericsError> {
        let mut c = coeffs.to_vec();
        while c.last().is_some_and(|x| x.norm() == 0.0) {
            c.pop();
        }
        if c.len() < 4 {
            return Err(NumericsError::TooFewBranchPoints);
        }
        let lc = *c.last().unwrap();
        Self::new(lc, poly_roots(&c))
    }

    pub fn genus(&self) -> usize {
        (self.roots.len() - 1) / 2
    }

    /// True when the point at infinity is a branch point.
    pub fn is_odd(&self) -> bool {
        self.roots.len() % 2 == 1
    }

    pub fn leading_coefficient(&self) -> Complex64 {
        self.lc
    }

    pub fn branch_points(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn flipped(&self) -> Self {
        Self { flipped: !self.flipped, ..self.clone() }
    }

    pub fn h(&self, x: Complex64) -> Complex64 {
        self.roots.iter().fold(self.lc, |acc, r| acc * (x - r))
    }

    pub fn abs_h(&self, x: Complex64) -> f64 {
        self.roots.iter().fold(self.lc.norm(), |acc, r| acc * (x - r).norm())
    }

    pub fn y(&self, x: Complex64) -> Complex64 {
        let y = self.roots.iter().fold(self.lc.sqrt(), |acc, r| acc * (x - r).sqrt());
        if self.flipped {
            -y
        } else {
            y
        }
    }

    /// Coefficients of `h`, lowest degree first.
    pub fn coefficients(&self) -> Vec<Complex64> {
        let mut c = vec![self.lc];
        for r in &self.roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * r;
            }
            c = next;
        }
        c
    }

    /// `|y^2 - h(x)|` relative to `|h(x)|`.
    pub fn residual(&self, x: Complex64, y: Complex64) -> f64 {
        let h = self.h(x);
        (y * y - h).norm() / h.norm().max(1.0)
    }
}

/// Aberth iteration followed by Newton polishing. `c` is lowest degree first.
pub(crate) fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lc).collect();
    let eval = |z: Complex64| {
        let mut p = monic[n];
        let mut dp = Complex64::new(0.0, 0.0);
        for a in monic[..n].iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let bound = 1.0 + monic[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, std::f64::consts::TAU * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[k] -= w;
            moved = moved.max(w.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-16 {
            break;
        }
    }
    for r in &mut z {
        for _ in 0..3 {
            let (p, dp) = eval(*r);
            if dp.norm() > 0.0 {
                *r -= p / dp;
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_expanded_product() {
        let roots: Vec<Complex64> = vec![0.0.into(), 1.0.into(), Complex64::new(2.0, 1.0), (-3.0).into()];
        let m = ComplexCurveModel::new(2.0.into(), roots.clone()).unwrap();
        let back = ComplexCurveModel::from_coefficients(&m.coefficients()).unwrap();
        for r in roots {
            assert!(back.branch_points().iter().any(|s| (s - r).norm() < 1e-12));
        }
        assert_eq!(back.genus(), 1);
        assert!(!back.is_odd());
    }
}
