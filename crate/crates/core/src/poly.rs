//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::rational::{self, Rational};

/// Coefficients stored lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(with = "rational::serde_vec")]
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `x - root`.
    pub fn linear(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    /// Monic polynomial with the given roots (with repetition).
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = -1.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        // pseudo-division on integer numerators: l^k A = Q B + R
        let (da, mut r) = self.integer_form();
        let (dd, b) = divisor.integer_form();
        let l = b[db].clone();
        let steps = r.len() - db;
        let mut q = vec![BigInt::zero(); steps];
        let mut lk = BigInt::one();
        for k in (0..steps).rev() {
            let c = r[k + db].clone();
            if !l.is_one() {
                for x in r.iter_mut().take(k + db) {
                    *x *= &l;
                }
                for x in q.iter_mut().skip(k + 1) {
                    *x *= &l;
                }
                lk *= &l;
            }
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate().take(db) {
                    r[k + j] -= &c * bj;
                }
            }
            r[k + db] = BigInt::zero();
            q[k] = c;
        }
        r.truncate(db);
        // A = N_a / da, B = N_b / dd, so Q = dd Q' / (da l^k) and R = R' / (da l^k)
        let den = &da * &lk;
        let quot = q.into_iter().map(|c| Rational::new(c * &dd, den.clone())).collect();
        let rem = r.into_iter().map(|c| Rational::new(c, den.clone())).collect();
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `(D, N)` with coefficients `N_i / D`, `D` the lcm of the denominators.
    fn integer_form(&self) -> (BigInt, Vec<BigInt>) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            if !c.denom().is_one() && !(&den % c.denom()).is_zero() {
                den = den.lcm(c.denom());
            }
        }
        let nums = self
            .coeffs
            .iter()
            .map(|c| {
                if c.denom() == &den {
                    c.numer().clone()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (den, nums)
    }

    pub fn rem(&self, m: &Self) -> Self {
        self.div_rem(m).expect("nonzero modulus").1
    }

    /// Quotient of an exact division; panics in debug builds if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with g = gcd monic and s·self + t·other = g.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if gcd(self, m) = 1.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        if g.is_one() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Multiplicity of `x0` as a root; `self` must be nonzero.
    pub fn multiplicity_at(&self, x0: &Rational) -> usize {
        self.multiplicity_of(&Self::linear(x0))
    }

    /// Largest k with q^k | self; `self` nonzero, deg q ≥ 1.
    pub fn multiplicity_of(&self, q: &Self) -> usize {
        debug_assert!(!self.is_zero() && q.deg() >= 1);
        let mut k = 0;
        let mut p = self.clone();
        loop {
            let (quot, r) = p.div_rem(q).expect("nonzero");
            if !r.is_zero() {
                return k;
            }
            k += 1;
            p = quot;
        }
    }

    /// Removes the factor q^k, returning (self / q^k, k) for maximal k.
    pub fn strip_factor(&self, q: &Self) -> (Self, usize) {
        let mut k = 0;
        let mut p = self.clone();
        loop {
            let (quot, r) = p.div_rem(q).expect("nonzero");
            if !r.is_zero() {
                return (p, k);
            }
            k += 1;
            p = quot;
        }
    }

    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg() == 0
    }

    /// Primitive integer coefficient vector with positive leading coefficient.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Distinct rational roots, sorted increasingly.
    pub fn rational_roots(&self) -> Result<Vec<Rational>, AlgebraError> {
        if self.deg() <= 0 {
            return Ok(Vec::new());
        }
        let mut p = self.squarefree_part();
        let mut roots = Vec::new();
        if p.coeff(0).is_zero() {
            roots.push(Rational::zero());
            p = p.exact_div(&Self::x());
        }
        if p.deg() >= 1 {
            roots.extend(padic_rational_roots(&p.primitive_integer_coeffs()));
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// Resultant via the Euclidean algorithm over Q.
    pub fn resultant(&self, other: &Self) -> Rational {
        if self.is_zero() || other.is_zero() {
            return Rational::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut res = Rational::one();
        loop {
            let da = a.deg();
            let db = b.deg();
            if db == 0 {
                return res * num_traits::pow(b.lc(), da as usize);
            }
            if da < db {
                if (da * db) % 2 == 1 {
                    res = -res;
                }
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Rational::zero();
            }
            // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
            let dr = r.deg();
            res *= num_traits::pow(b.lc(), (da - dr) as usize);
            if (da * db) % 2 == 1 {
                res = -res;
            }
            a = b;
            b = r;
        }
    }

    /// P(x) = Σ p_i (αx+β)^i (γx+δ)^(n-i), the numerator of p((αx+β)/(γx+δ)) over (γx+δ)^n.
    pub fn mobius_numerator(
        &self,
        alpha: &Rational,
        beta: &Rational,
        gamma: &Rational,
        delta: &Rational,
        n: usize,
    ) -> Self {
        debug_assert!(self.deg() <= n as i64);
        let num = Self::new(vec![beta.clone(), alpha.clone()]);
        let den = Self::new(vec![delta.clone(), gamma.clone()]);
        let mut num_pows = vec![Self::one()];
        let mut den_pows = vec![Self::one()];
        for i in 1..=n {
            num_pows.push(&num_pows[i - 1] * &num);
            den_pows.push(&den_pows[i - 1] * &den);
        }
        let mut acc = Self::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let term = (&num_pows[i] * &den_pows[n - i]).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational::to_f64).collect()
    }
}

/// Pairwise coprime squarefree refinement of a family of nonzero polynomials.
///
/// Every input is, up to a constant, a product of powers of the returned monic factors.
pub fn coprime_basis(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = Vec::new();
    for p in polys {
        if p.deg() <= 0 {
            continue;
        }
        let mut pending = vec![p.squarefree_part()];
        while let Some(mut cur) = pending.pop() {
            if cur.deg() <= 0 {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = cur.gcd(&basis[i]);
                if g.deg() >= 1 {
                    let b = basis.swap_remove(i);
                    let b_rest = b.exact_div(&g).monic();
                    let cur_rest = cur.exact_div(&g).monic();
                    pending.push(g);
                    pending.push(b_rest);
                    cur = cur_rest;
                    if cur.deg() <= 0 {
                        break;
                    }
                    i = 0;
                } else {
                    i += 1;
                }
            }
            if cur.deg() >= 1 {
                basis.push(cur);
            }
        }
    }
    basis.sort();
    basis
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => Rational::zero(),
                })
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // integer convolution, one normalisation per output coefficient
        let (da, a) = self.integer_form();
        let (db, b) = rhs.integer_form();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        Polynomial::new(out.into_iter().map(|c| Rational::new(c, den.clone())).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let cs = rational::format_rational(&abs);
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{cs}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Rational roots of a squarefree integer polynomial: roots modulo a good prime are
// lifted p-adically past the Cauchy bound for `lc * root` and then tested exactly.
fn padic_rational_roots(c: &[BigInt]) -> Vec<Rational> {
    let n = c.len() - 1;
    let lc = c[n].clone();
    if n == 1 {
        return vec![Rational::new(-c[0].clone(), c[1].clone())];
    }
    let p = good_prime(c);
    let pb = BigInt::from(p);
    let bound = c.iter().map(|x| x.abs()).max().unwrap() + lc.abs();
    let mut modulus = pb.clone();
    let mut steps = 0;
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let eval = |x: &BigInt, m: &BigInt| c.iter().rev().fold(BigInt::zero(), |acc, ci| (acc * x + ci).mod_floor(m));
    let deriv = |x: &BigInt, m: &BigInt| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(BigInt::zero(), |acc, (i, ci)| (acc * x + ci * BigInt::from(i)).mod_floor(m))
    };
    let mut out = Vec::new();
    for r0 in 0..p {
        let mut r = BigInt::from(r0);
        if !eval(&r, &pb).is_zero() {
            continue;
        }
        let mut m = pb.clone();
        for _ in 0..steps {
            m = &m * &m;
            let d = deriv(&r, &m);
            let inv = mod_inverse(&d, &m).expect("simple root modulo a good prime");
            r = (&r - eval(&r, &m) * inv).mod_floor(&m);
        }
        let mut cand = (&lc * &r).mod_floor(&modulus);
        if &cand * 2 > modulus {
            cand -= &modulus;
        }
        let x = Rational::new(cand, lc.clone());
        // sum c_i num^i den^(n-i) == 0
        let (num, den) = (x.numer().clone(), x.denom().clone());
        let value = c.iter().enumerate().fold(BigInt::zero(), |s, (i, ci)| {
            s + ci * num_traits::pow(num.clone(), i) * num_traits::pow(den.clone(), n - i)
        });
        if value.is_zero() {
            out.push(x);
        }
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

// A prime not dividing the leading coefficient, modulo which the polynomial stays squarefree.
fn good_prime(c: &[BigInt]) -> u64 {
    let mut p = 2u64;
    loop {
        p += 1;
        if !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
            continue;
        }
        let pb = BigInt::from(p);
        let red: Vec<u64> = c.iter().map(|x| x.mod_floor(&pb).to_u64().unwrap()).collect();
        if *red.last().unwrap() == 0 {
            continue;
        }
        let der: Vec<u64> = red.iter().enumerate().skip(1).map(|(i, x)| x * (i as u64 % p) % p).collect();
        if gcd_mod_p(red, der, p).len() == 1 {
            return p;
        }
    }
}

fn trim_mod(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

// Euclid over F_p; the result's length is degree + 1 (0 for the zero polynomial).
fn gcd_mod_p(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim_mod(a), trim_mod(b));
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let k = a.len() - b.len();
            let f = a.last().unwrap() * inv % p;
            for (i, bi) in b.iter().enumerate() {
                a[i + k] = (a[i + k] + p - f * bi % p) % p;
            }
            a = trim_mod(a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 0, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(&q * &p(&[1, 1]), a);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn rational_roots_found() {
        // (2x - 1)(3x + 4)(x^2 + 1)
        let f = &(&p(&[-1, 2]) * &p(&[4, 3])) * &p(&[1, 0, 1]);
        assert_eq!(f.rational_roots().unwrap(), vec![frac(-4, 3), frac(1, 2)]);
        let g = Polynomial::from_roots(&[int(0), int(0), int(5)]);
        assert_eq!(g.rational_roots().unwrap(), vec![int(0), int(5)]);
        // large coefficients with many divisors
        let big = Polynomial::from_roots(&[frac(720720, 17), frac(-510510, 9699690), int(2)]);
        let h = &(&big * &p(&[3, 0, 7])) * &p(&[-3, 0, 0, 1]);
        assert_eq!(
            h.rational_roots().unwrap(),
            vec![frac(-1, 19), int(2), frac(720720, 17)]
        );
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(x^2 - 2, x - 3) = (3^2 - 2) up to sign convention: Res(a,b) = lc(a)^deg b Π b(α)
        let a = p(&[-2, 0, 1]);
        let b = p(&[-3, 1]);
        // Π over roots α of a of b(α) = (√2 - 3)(-√2 - 3) = 7
        assert_eq!(a.resultant(&b), int(7));
        // Res(b, a) = Π a(β) over roots β of b = a(3) = 7
        assert_eq!(b.resultant(&a), int(7));
        let c = p(&[1, 0, 1]);
        // Π (α^2 - 2) over α = ±i: (-3)(-3) = 9
        assert_eq!(c.resultant(&a), int(9));
    }

    #[test]
    fn coprime_basis_refines() {
        let a = &p(&[-1, 1]) * &p(&[-2, 1]);
        let b = &p(&[-2, 1]) * &p(&[-3, 1]);
        let basis = coprime_basis(&[a, b]);
        assert_eq!(basis.len(), 3);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                assert_eq!(basis[i].gcd(&basis[j]), Polynomial::one());
            }
        }
    }

    #[test]
    fn mobius_numerator_inverts() {
        // p(x) = x^2 - 3x + 1 evaluated at 1/x, times x^2
        let q = p(&[1, -3, 1]);
        let r = q.mobius_numerator(&int(0), &int(1), &int(1), &int(0), 2);
        assert_eq!(r, p(&[1, -3, 1]));
    }

    #[test]
    fn multiplicity_and_squarefree() {
        let f = Polynomial::from_roots(&[int(1), int(1), int(1), int(2)]);
        assert_eq!(f.multiplicity_at(&int(1)), 3);
        assert_eq!(f.multiplicity_at(&int(3)), 0);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), Polynomial::from_roots(&[int(1), int(2)]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -3, 0, 2]).to_string(), "2*x^3 - 3*x + 1");
    }
}
