use num_complex::Complex;
use num_traits::{One, Zero};

use super::{Rational, RationalPoly};

/// Complex number with exact rational real and imaginary parts.
pub type GaussianRational = Complex<Rational>;

/// Polynomial in `s` over the Gaussian rationals, lowest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianRationalPoly {
    coeffs: Vec<GaussianRational>,
}

impl GaussianRationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(p: &RationalPoly) -> Self {
        Self::from_coeffs(
            p.coeffs()
                .iter()
                .map(|c| Complex::new(c.clone(), Rational::zero()))
                .collect(),
        )
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> GaussianRational {
        self.coeffs.get(k).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::from_coeffs(Vec::new());
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(i*s)`: the k-th coefficient picks up a factor `i^k`.
    pub fn substitute_i_s(&self) -> Self {
        let mut ik = GaussianRational::one();
        let i = GaussianRational::i();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &ik);
            ik = &ik * &i;
        }
        Self::from_coeffs(out)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lead) => {
                let inv = GaussianRational::one() / lead.clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// `true` when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im.is_zero())
    }

    /// Real parts, or `None` if any imaginary part is nonzero.
    pub fn to_real(&self) -> Option<RationalPoly> {
        self.is_real()
            .then(|| RationalPoly::from_coeffs(self.coeffs.iter().map(|c| c.re.clone()).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::{q, qi};

    fn g(re: Rational, im: Rational) -> GaussianRational {
        Complex::new(re, im)
    }

    #[test]
    fn substitution_by_i_s() {
        // 1 + s + s^2  ->  1 + i s - s^2
        let p = GaussianRationalPoly::from_real(&RationalPoly::from_ints(&[1, 1, 1]));
        let r = p.substitute_i_s();
        assert_eq!(r.coeff(0), g(qi(1), qi(0)));
        assert_eq!(r.coeff(1), g(qi(0), qi(1)));
        assert_eq!(r.coeff(2), g(qi(-1), qi(0)));
    }

    #[test]
    fn arithmetic_closure() {
        let a = GaussianRationalPoly::from_coeffs(vec![g(q(1, 2), qi(1)), g(qi(0), qi(-1))]);
        let b = GaussianRationalPoly::from_coeffs(vec![g(qi(2), qi(0)), g(qi(0), qi(1))]);
        let prod = a.mul(&b);
        // (1/2 + i - i s)(2 + i s) = 1 + 2i + (i/2 - 1 - 2i) s + s^2
        assert_eq!(prod.coeff(0), g(qi(1), qi(2)));
        assert_eq!(prod.coeff(1), g(qi(-1), q(-3, 2)));
        assert_eq!(prod.coeff(2), g(qi(1), qi(0)));
        let m = prod.scale(&g(qi(0), qi(1))).monic();
        assert_eq!(m.coeff(2), GaussianRational::one());
        assert!(!a.add(&b).is_real());
        assert!(GaussianRationalPoly::one().is_real());
    }
}
