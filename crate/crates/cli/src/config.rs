//! Input files and the small string syntaxes used on the command line.
//!
//! A curve file (TOML, or JSON when the name ends in `.json`):
//!
//! ```toml
//! scale = "210"
//! roots = ["0", "1", "2", "3", "4"]
//! w1 = "0"
//! w2 = "inf"
//! t = ["10", "1/2", "9/2"]
//! datum = ["1", "2", "3", "4"]
//! random_data = 10
//! ```
//!
//! Either `scale` with `roots`, or `coefficients` (ascending), must be given.
//! Points are written `inf`, `inf+`, `inf-`, `x` or `x:y`; a bare `x` names the
//! branch point over `x` or, failing that, the first rational point over it.

use std::path::Path;

use hyperchow_core::rational::{parse_rational, to_f64};
use hyperchow_core::{CurvePoint, Divisor, HyperellipticCurve, InfinitySheet, Jacobian, Polynomial, Rational};
use hyperchow_numerics::Complex64;
use serde::Deserialize;

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub scale: Option<String>,
    pub roots: Option<Vec<String>>,
    pub coefficients: Option<Vec<String>>,
    pub w1: String,
    pub w2: Option<String>,
    #[serde(default)]
    pub t: Vec<String>,
    pub datum: Option<Vec<String>>,
    #[serde(default)]
    pub random_data: usize,
}

/// A curve file after validation against exact arithmetic.
#[derive(Clone, Debug)]
pub struct CurveSetup {
    pub curve: HyperellipticCurve,
    pub jac: Jacobian,
    pub w2: Option<CurvePoint>,
    pub ts: Vec<CurvePoint>,
    pub datum: Option<[CurvePoint; 4]>,
    pub random_data: usize,
}

impl CurveFile {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        if text.trim().is_empty() {
            return Err(usage(format!("{}: empty configuration", path.display())));
        }
        let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if json {
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
        } else {
            toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
        }
    }

    pub fn curve(&self) -> Result<HyperellipticCurve, UsageError> {
        let curve = match (&self.scale, &self.roots, &self.coefficients) {
            (Some(scale), Some(roots), None) => {
                let roots = roots.iter().map(|r| rational(r)).collect::<Result<Vec<_>, _>>()?;
                HyperellipticCurve::from_roots(rational(scale)?, &roots)
            }
            (None, None, Some(coeffs)) => {
                let c = coeffs.iter().map(|r| rational(r)).collect::<Result<Vec<_>, _>>()?;
                HyperellipticCurve::new(Polynomial::new(c))
            }
            _ => return Err(usage("give either `scale` and `roots`, or `coefficients`")),
        };
        curve.map_err(|e| usage(e.to_string()))
    }

    pub fn setup(&self) -> Result<CurveSetup, UsageError> {
        let curve = self.curve()?;
        let w1 = point(&curve, &self.w1)?;
        let jac = Jacobian::new(&curve, &w1).map_err(|e| usage(format!("w1: {e}")))?;
        let w2 = self.w2.as_deref().map(|s| point(&curve, s)).transpose()?;
        if let Some(w2) = &w2 {
            if !w2.is_weierstrass() || *w2 == w1 {
                return Err(usage("w2 must be a Weierstrass point distinct from w1"));
            }
        }
        let ts = self.t.iter().map(|s| point(&curve, s)).collect::<Result<Vec<_>, _>>()?;
        let datum = match &self.datum {
            None => None,
            Some(d) if d.len() == 4 => {
                let p = d.iter().map(|s| point(&curve, s)).collect::<Result<Vec<_>, _>>()?;
                Some([p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone()])
            }
            Some(d) => return Err(usage(format!("datum needs 4 points, got {}", d.len()))),
        };
        Ok(CurveSetup { curve, jac, w2, ts, datum, random_data: self.random_data })
    }
}

pub fn rational(s: &str) -> Result<Rational, UsageError> {
    parse_rational(s).map_err(|e| usage(e.to_string()))
}

pub fn point(curve: &HyperellipticCurve, s: &str) -> Result<CurvePoint, UsageError> {
    let s = s.trim();
    let p = match s {
        "inf" | "infinity" if curve.is_odd_degree() => CurvePoint::infinity(),
        "inf" | "infinity" => return Err(usage("even degree model: write inf+ or inf-")),
        "inf+" => CurvePoint::Infinity { sheet: InfinitySheet::Plus },
        "inf-" => CurvePoint::Infinity { sheet: InfinitySheet::Minus },
        _ => match s.split_once(':') {
            Some((x, y)) => CurvePoint::affine(rational(x)?, rational(y)?),
            None => {
                let x = rational(s)?;
                curve
                    .points_over(&x)
                    .into_iter()
                    .next()
                    .ok_or_else(|| usage(format!("no rational point over x = {s}")))?
            }
        },
    };
    curve.check_point(&p).map_err(|e| usage(e.to_string()))?;
    Ok(p)
}

/// `"2*0, -2*inf, 1*10:2310"`; a term without `*` has multiplicity 1.
pub fn divisor(curve: &HyperellipticCurve, s: &str) -> Result<Divisor, UsageError> {
    let mut terms = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (m, p) = match tok.split_once('*') {
            Some((m, p)) => (m.trim().parse::<i64>().map_err(|_| usage(format!("bad multiplicity in {tok:?}")))?, p),
            None => (1, tok),
        };
        terms.push((point(curve, p)?, m));
    }
    Ok(Divisor::from_points(terms))
}

/// Ascending coefficients separated by commas.
pub fn polynomial(s: &str) -> Result<Polynomial, UsageError> {
    let c = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(rational)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(c))
}

fn real(s: &str) -> Result<f64, UsageError> {
    let s = s.trim();
    match s {
        "" | "+" => return Ok(1.0),
        "-" => return Ok(-1.0),
        _ => {}
    }
    if let Ok(r) = parse_rational(s) {
        return Ok(to_f64(&r));
    }
    s.parse::<f64>().map_err(|_| usage(format!("not a number: {s:?}")))
}

/// `3/2`, `2.5`, `1+2i`, `-0.5-1/3i`, `2i`.
pub fn complex(s: &str) -> Result<Complex64, UsageError> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(real(&body[..k])?, real(&body[k..])?)),
        None => Ok(Complex64::new(0.0, real(body)?)),
    }
}

pub fn complex_list(s: &str) -> Result<Vec<Complex64>, UsageError> {
    let v = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(complex)
        .collect::<Result<Vec<_>, _>>()?;
    if v.is_empty() {
        return Err(usage("empty list"));
    }
    Ok(v)
}

/// `2:3,2:5` as pairs.
pub fn pair_list(s: &str) -> Result<Vec<(Complex64, Complex64)>, UsageError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t.split_once(':').ok_or_else(|| usage(format!("pair {t:?} needs the form a:b")))?;
            Ok((complex(a)?, complex(b)?))
        })
        .collect()
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        assert_eq!(complex("3/2").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(complex("-0.5-1/4i").unwrap(), Complex64::new(-0.5, -0.25));
        assert_eq!(complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(complex("1e-3+i").unwrap(), Complex64::new(1e-3, 1.0));
        assert!(complex("x").is_err());
        assert_eq!(format_complex(Complex64::new(2.0, -1.0)), "2-1i");
    }
}
