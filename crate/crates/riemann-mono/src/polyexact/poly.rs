//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar: arbitrary-precision numerator, positive
/// denominator, always in lowest terms (all guaranteed by the underlying
/// representation).
pub type Rational = BigRational;

/// Convenience: the rational `n/d` (panics if `d == 0`).
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience: the rational `n/1`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a rational from either `p/q` form (`-3/4`) or decimal form
/// (`0.25`, `-1.5`, `7`). The result is exact: decimals are scaled by a
/// power of ten.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if s.contains('/') {
        return Rational::from_str(s)
            .map_err(|e| Error::Parse(format!("invalid rational `{s}`: {e}")));
    }
    if let Some(dot) = s.find('.') {
        let (int_part, frac_part) = (&s[..dot], &s[dot + 1..]);
        if frac_part.is_empty() || frac_part.contains(['+', '-']) {
            return Err(Error::Parse(format!("invalid decimal `{s}`")));
        }
        let digits = format!("{int_part}{frac_part}");
        let numer = BigInt::from_str(&digits)
            .map_err(|e| Error::Parse(format!("invalid decimal `{s}`: {e}")))?;
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rational::new(numer, denom));
    }
    let numer =
        BigInt::from_str(s).map_err(|e| Error::Parse(format!("invalid integer `{s}`: {e}")))?;
    Ok(Rational::from_integer(numer))
}

/// Dense polynomial with [`Rational`] coefficients in ascending order
/// (`coeffs[i]` multiplies `x^i`).
///
/// The zero polynomial is represented by an empty coefficient vector;
/// non-zero polynomials never carry trailing zero coefficients, so equal
/// polynomials compare equal structurally.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        RationalPoly { coeffs }
    }

    /// `x + s` for integer `s` — handy for denominator factors.
    pub fn linear_shift(s: i64) -> Self {
        Self::new(vec![rat_int(s), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Ascending coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        Self::new(coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs)
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in floating point (used only for plotting and
    /// numeric probes, never for decisions).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rational_to_f64(c);
        }
        acc
    }

    /// Sign of the polynomial at a rational point: `-1`, `0`, or `1`.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * rat_int(i as i64))
            .collect();
        Self::new(coeffs)
    }

    /// Substitutes `x ← a·x + b`, i.e. returns `p(a·x + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let inner = Self::new(vec![b.clone(), a.clone()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `self = q·div + r` and `deg r < deg div`. Errors on division by the
    /// zero polynomial.
    pub fn divrem(&self, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::Domain("polynomial division by zero".into()));
        }
        let dd = div.degree().unwrap();
        let lead = div.leading_coeff();
        let mut rem = self.clone();
        let mut quot_coeffs =
            vec![Rational::zero(); self.coeffs.len().saturating_sub(div.coeffs.len()) + 1];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let factor = rem.leading_coeff() / &lead;
            let shift = dr - dd;
            quot_coeffs[shift] = factor.clone();
            rem = rem.sub(&div.mul(&Self::monomial(factor, shift)));
        }
        Ok((Self::new(quot_coeffs), rem))
    }

    /// Monic greatest common divisor via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("divisor checked non-zero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coeff();
        a.scale(&(Rational::one() / lead))
    }

    /// Square-free part `p / gcd(p, p')` — same real roots, multiplicity
    /// one. Note the quotient may differ from `p` in sign between roots;
    /// use it for root *location* only.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g).expect("gcd divides evenly");
        debug_assert!(r.is_zero());
        q
    }

    /// Divides out the positive content, producing integer coefficients
    /// with gcd 1. The sign of every value is preserved.
    pub fn primitive_integer_form(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let scaled: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &scaled {
            g = g.gcd(v);
        }
        Self::new(
            scaled
                .into_iter()
                .map(|v| Rational::from_integer(v / &g))
                .collect(),
        )
    }

    /// Cauchy root bound: every real root lies in `(-B, B)` with
    /// `B = 1 + max |c_i| / |c_d|`.
    pub fn cauchy_root_bound(&self) -> Rational {
        let Some(d) = self.degree() else {
            return Rational::one();
        };
        let lead = self.coeffs[d].abs();
        let mut max_ratio = Rational::zero();
        for c in &self.coeffs[..d] {
            let ratio = c.abs() / &lead;
            if ratio > max_ratio {
                max_ratio = ratio;
            }
        }
        max_ratio + Rational::one()
    }
}

/// Converts an exact rational to the nearest `f64` (used at the numeric
/// boundary only).
pub fn rational_to_f64(r: &Rational) -> f64 {
    num::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly[{self}]")
    }
}

impl fmt::Display for RationalPoly {
    /// Human-oriented form, ascending powers of `n`: `1/2 + 3n - n^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "n")?;
                    } else {
                        write!(f, "n^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
