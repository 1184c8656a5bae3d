//! Classical Hermite, Laguerre and Jacobi polynomials computed from their
//! explicit sums and recurrences, and the per-case mapping onto the monic
//! `Φ_l`. This is an oracle: it shares no code path with
//! [`generate_phi`](super::generate_phi).

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use super::{q, qi, GaussianRational, GaussianRationalPoly, Rational, RationalPoly};
use crate::error::{Error, Result};
use crate::family::{Family, SigmaCase};

/// Generalized binomial `C(z, j) = z (z-1) ... (z-j+1) / j!`.
fn binom(z: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (z - qi(i as i64)) / qi(i as i64 + 1);
    }
    acc
}

fn binom_gaussian(z: &GaussianRational, j: usize) -> GaussianRational {
    let mut acc = GaussianRational::one();
    for i in 0..j {
        let shift = Complex::new(qi(i as i64), Rational::zero());
        let denom = Complex::new(qi(i as i64 + 1), Rational::zero());
        acc = acc * (z - shift) / denom;
    }
    acc
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * qi(k as i64))
}

/// Physicists' Hermite polynomial `H_n(y)` with `y` itself a polynomial in
/// `s`, from `H_{n+1} = 2 y H_n - 2 n H_{n-1}`.
pub fn hermite(n: usize, y: &RationalPoly) -> RationalPoly {
    let two_y = y.scale(&qi(2));
    let mut prev = RationalPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two_y.clone();
    for k in 1..n {
        let next = &(&two_y * &cur) - &prev.scale(&qi(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Generalized Laguerre `L_n^p(y) = Σ_k (-1)^k C(n+p, n-k) y^k / k!` for
/// any rational `p`, as a polynomial in `y`.
pub fn laguerre(n: usize, p: &Rational) -> RationalPoly {
    let top = qi(n as i64) + p;
    RationalPoly::from_coeffs(
        (0..=n)
            .map(|k| {
                let c = binom(&top, n - k) / factorial(k);
                if k % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Jacobi `P_n^{(a,b)}(x)` with Gaussian-rational parameters:
/// `Σ_k C(n+a, n-k) C(n+b, k) ((x-1)/2)^k ((x+1)/2)^{n-k}`.
pub fn jacobi_gaussian(n: usize, a: &GaussianRational, b: &GaussianRational) -> GaussianRationalPoly {
    let nn = Complex::new(qi(n as i64), Rational::zero());
    let half = Complex::new(q(1, 2), Rational::zero());
    let minus = GaussianRationalPoly::from_coeffs(vec![-half.clone(), half.clone()]);
    let plus = GaussianRationalPoly::from_coeffs(vec![half.clone(), half]);
    let pow = |p: &GaussianRationalPoly, e: usize| {
        (0..e).fold(GaussianRationalPoly::one(), |acc, _| acc.mul(p))
    };
    let na = &nn + a;
    let nb = &nn + b;
    let mut out = GaussianRationalPoly::from_coeffs(Vec::new());
    for k in 0..=n {
        let c = binom_gaussian(&na, n - k) * binom_gaussian(&nb, k);
        let term = pow(&minus, k).mul(&pow(&plus, n - k)).scale(&c);
        out = out.add(&term);
    }
    out
}

/// Jacobi `P_n^{(a,b)}(x)` with rational parameters.
pub fn jacobi(n: usize, a: &Rational, b: &Rational) -> RationalPoly {
    let lift = |r: &Rational| Complex::new(r.clone(), Rational::zero());
    jacobi_gaussian(n, &lift(a), &lift(b))
        .to_real()
        .expect("real parameters give a real polynomial")
}

/// Exact square root of a non-negative rational, when it exists.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Monic `Φ_l` computed through the classical polynomials:
///
/// | σ | classical form |
/// |---|---|
/// | 1 | `H_l(√(-α/2) s - β/√(-2α))` |
/// | s | `L_l^{β-1}(-α s)` |
/// | 1-s² | `P_l^{(-(α+β)/2-1, (-α+β)/2-1)}(s)` |
/// | s²-1 | `P_l^{((α-β)/2-1, (α+β)/2-1)}(-s)` |
/// | s² | `(s/β)^l L_l^{1-α-2l}(β/s)` |
/// | s²+1 | `i^l P_l^{((α+iβ)/2-1, (α-iβ)/2-1)}(i s)` |
pub fn classical_reference(family: &Family, l: usize) -> Result<RationalPoly> {
    family.check_index(l)?;
    let alpha = family.alpha();
    let beta = family.beta();
    let half = q(1, 2);
    let one = Rational::one();
    let raw = match family.case() {
        SigmaCase::One => {
            let c1 = rational_sqrt(&(-alpha * &half)).ok_or_else(|| {
                Error::Unsupported(format!("sqrt(-alpha/2) is irrational for alpha = {alpha}"))
            })?;
            if c1.is_zero() {
                return Err(Error::Unsupported("alpha = 0".into()));
            }
            // β/√(-2α) = β / (2 c1)
            let c0 = -(beta / (qi(2) * &c1));
            hermite(l, &RationalPoly::linear(c1, c0))
        }
        SigmaCase::S => laguerre(l, &(beta - &one)).compose(&RationalPoly::monomial(-alpha, 1)),
        SigmaCase::OneMinusS2 => {
            let a = -(alpha + beta) * &half - &one;
            let b = (beta - alpha) * &half - &one;
            jacobi(l, &a, &b)
        }
        SigmaCase::S2Minus1 => {
            let a = (alpha - beta) * &half - &one;
            let b = (alpha + beta) * &half - &one;
            jacobi(l, &a, &b).reflect()
        }
        SigmaCase::S2 => {
            if beta.is_zero() {
                return Err(Error::Unsupported("beta = 0 in the s^2 case".into()));
            }
            // (s/β)^l Σ_k (-1)^k C(l+p, l-k) (β/s)^k / k!, p = 1-α-2l
            let p = &one - alpha - qi(2 * l as i64);
            let lag = laguerre(l, &p);
            let mut coeffs = vec![Rational::zero(); l + 1];
            for k in 0..=l {
                coeffs[l - k] = lag.coeff(k) * pow_rational(beta, k as i64 - l as i64);
            }
            RationalPoly::from_coeffs(coeffs)
        }
        SigmaCase::S2Plus1 => {
            return romanovski_gaussian(family, l)
                .to_real().ok_or_else(|| {
                Error::Unsupported("Gaussian-rational route produced a non-real polynomial".into())
            });
        }
    };
    if raw.is_zero() {
        return Err(Error::Unsupported("classical form vanishes identically".into()));
    }
    Ok(raw.monic())
}

/// Exact integer power of a nonzero rational.
fn pow_rational(r: &Rational, e: i64) -> Rational {
    let base = if e < 0 { r.recip() } else { r.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// Monic Gaussian-rational form of the σ = s²+1 mapping before the realness
/// check, for callers that want to inspect the imaginary parts.
pub fn romanovski_gaussian(family: &Family, l: usize) -> GaussianRationalPoly {
    let half = q(1, 2);
    let one = Rational::one();
    let a = Complex::new(family.alpha() * &half - &one, family.beta() * &half);
    let b = Complex::new(family.alpha() * &half - &one, -(family.beta() * &half));
    let il = (0..l).fold(GaussianRational::one(), |acc, _| acc * GaussianRational::i());
    jacobi_gaussian(l, &a, &b).substitute_i_s().scale(&il).monic()
}
