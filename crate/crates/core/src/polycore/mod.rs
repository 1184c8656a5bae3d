//! Exact polynomial arithmetic over the rationals, generation of the monic
//! hypergeometric-type polynomials and the classical-polynomial oracle.

mod classical;
mod gaussian;
mod phi;

pub use classical::{
    classical_reference, hermite, jacobi, jacobi_gaussian, laguerre, romanovski_gaussian,
};
pub use gaussian::{GaussianRational, GaussianRationalPoly};
pub use phi::generate_phi;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::jet::Jet;

pub type Rational = BigRational;

/// Shorthand for the rational `n / d`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Dense polynomial in `s` with exact rational coefficients, lowest power
/// first. Trailing zeros are never stored; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * s^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The polynomial `s`.
    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `c1 * s + c0`.
    pub fn linear(c1: Rational, c0: Rational) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lead) => self.scale(&lead.recip()),
            None => Self::zero(),
        }
    }

    pub fn derive(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * qi(k as i64))
                .collect(),
        )
    }

    pub fn derive_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derive())
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * s + c)
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        self.to_float().eval(s)
    }

    pub fn eval_jet(&self, s: &Jet) -> Jet {
        self.to_float().eval_jet(s)
    }

    /// `p(-s)`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `self(inner(s))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg remainder < deg divisor`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(n_deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n_deg < d_deg {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n_deg - d_deg + 1];
        for i in (0..=n_deg - d_deg).rev() {
            let c = &rem[i + d_deg] / &d_lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(d_deg);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly::new(self.coeffs.iter().map(rational_to_f64).collect())
    }

    /// Coefficients as exact `"p/q"` strings (integers without a slash),
    /// ascending powers.
    pub fn coeff_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalPoly({self})")
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 if show_coeff => write!(f, "*s")?,
                1 => write!(f, "s")?,
                _ if show_coeff => write!(f, "*s^{k}")?,
                _ => write!(f, "s^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&RationalPoly> for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalPoly> for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: &RationalPoly) -> RationalPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<RationalPoly> for &RationalPoly {
            type Output = RationalPoly;
            fn $m(self, rhs: RationalPoly) -> RationalPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        -&self
    }
}

/// Floating-point copy of a polynomial for fast evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatPoly {
    coeffs: Vec<f64>,
}

impl FloatPoly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn eval_jet(&self, s: &Jet) -> Jet {
        let mut acc = Jet::constant(s.anchor(), 0.0, s.order());
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * s) + c;
        }
        acc
    }

    /// `(ln |p(s)|, sign p(s))`, stable for `|s|` far beyond the range
    /// where `s^deg` overflows.
    pub fn ln_abs(&self, s: f64) -> (f64, f64) {
        let Some(deg) = self.coeffs.len().checked_sub(1) else {
            return (f64::NEG_INFINITY, 0.0);
        };
        if s.abs() <= 1.0 || deg == 0 {
            let v = self.eval(s);
            return (v.abs().ln(), v.signum());
        }
        // p(s) = s^deg * r(1/s) with r the reversed polynomial.
        let t = s.recip();
        let r = self.coeffs.iter().fold(0.0, |acc, &c| acc * t + c);
        let sign = if deg % 2 == 1 && s < 0.0 {
            -r.signum()
        } else {
            r.signum()
        };
        (deg as f64 * s.abs().ln() + r.abs().ln(), sign)
    }
}
