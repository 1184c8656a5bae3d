//! Truncated Taylor series ("jets") in one variable.
//!
//! A jet of order `N` anchored at `x0` stores `f(x0), f'(x0), f''(x0)/2!,
//! ..., f^(N)(x0)/N!`. Arithmetic and the elementary functions propagate
//! all coefficients through the usual convolution recurrences, so chains
//! of `d/dx` can be applied pointwise without finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    anchor: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// The identity function `x` expanded at `x0`.
    pub fn variable(x0: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = x0;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Self { anchor: x0, coeffs }
    }

    pub fn constant(x0: f64, value: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = value;
        Self { anchor: x0, coeffs }
    }

    pub fn from_coeffs(x0: f64, coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the value");
        Self { anchor: x0, coeffs }
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Taylor coefficient `f^(k)(x0) / k!`.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// `f^(k)(x0)`.
    pub fn derivative_at(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.coeff(k) * fact
    }

    /// Jet of `f'`, one order lower.
    pub fn derive(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(self.anchor, 0.0, 0);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| k as f64 * c)
            .collect();
        Self {
            anchor: self.anchor,
            coeffs,
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, 0.0);
        Self {
            anchor: self.anchor,
            coeffs,
        }
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map_coeffs(|a| a * c)
    }

    fn map_coeffs(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            anchor: self.anchor,
            coeffs: self.coeffs.iter().map(|&a| f(a)).collect(),
        }
    }

    pub fn recip(&self) -> Self {
        Self::constant(self.anchor, 1.0, self.order()).div_jet(self)
    }

    fn div_jet(&self, den: &Self) -> Self {
        let n = self.common_order(den);
        let v0 = den.coeffs[0];
        let mut q = vec![0.0; n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= den.coeffs[j] * q[k - j];
            }
            q[k] = acc / v0;
        }
        Self {
            anchor: self.anchor,
            coeffs: q,
        }
    }

    pub fn exp(&self) -> Self {
        let a = &self.coeffs;
        let n = self.order();
        let mut f = vec![0.0; n + 1];
        f[0] = a[0].exp();
        for k in 1..=n {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * f[k - j]).sum();
            f[k] = s / k as f64;
        }
        Self::from_coeffs(self.anchor, f)
    }

    /// Natural logarithm; the value must be positive.
    pub fn ln(&self) -> Self {
        let a = &self.coeffs;
        let n = self.order();
        let mut f = vec![0.0; n + 1];
        f[0] = a[0].ln();
        for k in 1..=n {
            let s: f64 = (1..k).map(|j| j as f64 * f[j] * a[k - j]).sum();
            f[k] = (a[k] - s / k as f64) / a[0];
        }
        Self::from_coeffs(self.anchor, f)
    }

    /// `u^p` for real `p`; the value must be positive unless `p` is a
    /// non-negative integer.
    pub fn powf(&self, p: f64) -> Self {
        let a = &self.coeffs;
        let n = self.order();
        if a[0] == 0.0 {
            if p.fract() == 0.0 && p >= 0.0 {
                return self.powi(p as u32);
            }
            let mut f = vec![f64::NAN; n + 1];
            f[0] = 0f64.powf(p);
            return Self::from_coeffs(self.anchor, f);
        }
        let mut f = vec![0.0; n + 1];
        f[0] = a[0].powf(p);
        for k in 1..=n {
            let s: f64 = (1..=k)
                .map(|j| ((p + 1.0) * j as f64 - k as f64) * a[j] * f[k - j])
                .sum();
            f[k] = s / (k as f64 * a[0]);
        }
        Self::from_coeffs(self.anchor, f)
    }

    pub fn powi(&self, e: u32) -> Self {
        let one = Self::constant(self.anchor, 1.0, self.order());
        (0..e).fold(one, |acc, _| &acc * self)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.coeffs;
        let n = self.order();
        let mut s = vec![0.0; n + 1];
        let mut c = vec![0.0; n + 1];
        (s[0], c[0]) = a[0].sin_cos();
        for k in 1..=n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc -= j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (
            Self::from_coeffs(self.anchor, s),
            Self::from_coeffs(self.anchor, c),
        )
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn sinh_cosh(&self) -> (Self, Self) {
        let a = &self.coeffs;
        let n = self.order();
        let mut s = vec![0.0; n + 1];
        let mut c = vec![0.0; n + 1];
        s[0] = a[0].sinh();
        c[0] = a[0].cosh();
        for k in 1..=n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                ss += j as f64 * a[j] * c[k - j];
                cc += j as f64 * a[j] * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (
            Self::from_coeffs(self.anchor, s),
            Self::from_coeffs(self.anchor, c),
        )
    }

    pub fn sinh(&self) -> Self {
        self.sinh_cosh().0
    }

    pub fn cosh(&self) -> Self {
        self.sinh_cosh().1
    }

    /// `atan u`, integrating `u' / (1 + u²)`.
    pub fn atan(&self) -> Self {
        let n = self.order();
        let mut f = vec![0.0; n + 1];
        f[0] = self.coeffs[0].atan();
        if n > 0 {
            let g = &self.derive() / &(&(self * self) + 1.0).truncate(n - 1);
            for k in 1..=n {
                f[k] = g.coeffs[k - 1] / k as f64;
            }
        }
        Self::from_coeffs(self.anchor, f)
    }
}

impl Add<&Jet> for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let n = self.common_order(rhs);
        Jet::from_coeffs(
            self.anchor,
            (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        )
    }
}

impl Sub<&Jet> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let n = self.common_order(rhs);
        Jet::from_coeffs(
            self.anchor,
            (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        )
    }
}

impl Mul<&Jet> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.common_order(rhs);
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|j| self.coeffs[j] * rhs.coeffs[k - j]).sum())
            .collect();
        Jet::from_coeffs(self.anchor, coeffs)
    }
}

impl Div<&Jet> for &Jet {
    type Output = Jet;
    fn div(self, rhs: &Jet) -> Jet {
        self.div_jet(rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.map_coeffs(|a| -a)
    }
}

impl Add<f64> for &Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += rhs;
        out
    }
}

impl Sub<f64> for &Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        self + (-rhs)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet {
                (&self).$m(rhs)
            }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet {
                self.$m(&rhs)
            }
        }
        impl $tr<f64> for Jet {
            type Output = Jet;
            fn $m(self, rhs: f64) -> Jet {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        &self / &rhs
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn known_series_at_zero() {
        let x = Jet::variable(0.0, 5);
        let e = x.exp();
        let expect = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0, 1.0 / 120.0];
        for (k, v) in expect.iter().enumerate() {
            assert_relative_eq!(e.coeff(k), v, max_relative = 1e-15);
        }
        let s = x.sin();
        assert_relative_eq!(s.coeff(3), -1.0 / 6.0, max_relative = 1e-15);
        assert_eq!(s.coeff(2), 0.0);
        let a = x.atan();
        assert_relative_eq!(a.coeff(1), 1.0);
        assert_relative_eq!(a.coeff(3), -1.0 / 3.0, max_relative = 1e-15);
        assert_relative_eq!(a.coeff(5), 1.0 / 5.0, max_relative = 1e-15);
        assert_eq!(a.coeff(4), 0.0);
    }

    #[test]
    fn ln_of_one_plus_x() {
        let l = (&Jet::variable(0.0, 4) + 1.0).ln();
        let expect = [0.0, 1.0, -0.5, 1.0 / 3.0, -0.25];
        for (k, v) in expect.iter().enumerate() {
            assert_relative_eq!(l.coeff(k), v, epsilon = 1e-15);
        }
    }

    #[test]
    fn derivative_lowers_order() {
        let x = Jet::variable(2.0, 3);
        let cube = x.powi(3);
        let d = cube.derive();
        assert_eq!(d.order(), 2);
        assert_relative_eq!(d.value(), 12.0);
        assert_relative_eq!(d.derivative_at(1), 12.0);
        assert_relative_eq!(d.derivative_at(2), 6.0);
        assert_eq!(Jet::constant(0.0, 3.0, 0).derive().value(), 0.0);
    }

    #[test]
    fn order_zero_is_pointwise() {
        let x = Jet::variable(0.7, 0);
        assert_eq!(x.exp().value(), 0.7f64.exp());
        assert_eq!(x.cosh().value(), 0.7f64.cosh());
        assert_eq!(x.sqrt().value(), 0.7f64.sqrt());
    }

    #[test]
    fn mixed_orders_truncate_to_the_lower() {
        let a = Jet::variable(1.0, 5);
        let b = Jet::variable(1.0, 2);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!((&a + &b).order(), 2);
    }

    proptest! {
        #[test]
        fn exp_ln_roundtrip(x0 in 0.1f64..5.0) {
            let x = Jet::variable(x0, 6);
            let back = x.ln().exp();
            for k in 0..=6 {
                // the ln coefficients grow like x0^-k, and so does the roundoff
                let scale = 1.0 + x0.powi(-(k as i32));
                prop_assert!((back.coeff(k) - x.coeff(k)).abs() < 1e-13 * scale);
            }
        }

        #[test]
        fn pythagoras(x0 in -4.0f64..4.0) {
            let u = &Jet::variable(x0, 6) * 1.7;
            let (s, c) = u.sin_cos();
            let one = &(&s * &s) + &(&c * &c);
            prop_assert!((one.value() - 1.0).abs() < 1e-14);
            for k in 1..=6 {
                prop_assert!(one.coeff(k).abs() < 1e-12);
            }
            let (sh, ch) = u.sinh_cosh();
            let one = &(&ch * &ch) - &(&sh * &sh);
            for k in 1..=6 {
                prop_assert!(one.coeff(k).abs() < 1e-9 * ch.value().powi(2));
            }
        }

        #[test]
        fn division_inverts_multiplication(x0 in -3.0f64..3.0, c in 0.5f64..3.0) {
            let x = Jet::variable(x0, 5);
            let den = &x.exp() + c;
            let q = &(&x.sin() * &den) / &den;
            let s = x.sin();
            for k in 0..=5 {
                prop_assert!((q.coeff(k) - s.coeff(k)).abs() < 1e-12);
            }
        }

        #[test]
        fn powf_matches_exp_ln(x0 in 0.2f64..4.0, p in -2.5f64..2.5) {
            let x = Jet::variable(x0, 5);
            let a = x.powf(p);
            let b = (&x.ln() * p).exp();
            for k in 0..=5 {
                prop_assert!((a.coeff(k) - b.coeff(k)).abs() < 1e-10 * (1.0 + b.coeff(k).abs()));
            }
        }
    }
}
