//! Closed forms of `W_m` and `𝒱_m` for the six standard changes of
//! variable, with `α_m = -(2m+α-1)/2` and `α'_m = (2m-α-1)/2`.
//! Kept separate from the generic formula so the two can be compared.

use crate::family::{Family, SigmaCase};

pub fn catalogue_superpotential(family: &Family, m: usize, x: f64) -> f64 {
    let (a, b) = (family.alpha_f64(), family.beta_f64());
    let mf = m as f64;
    let am = -(2.0 * mf + a - 1.0) / 2.0;
    let apm = (2.0 * mf - a - 1.0) / 2.0;
    match family.case() {
        SigmaCase::One => -(a * x + b) / 2.0,
        SigmaCase::S => -a * x / 4.0 - (b + mf - 0.5) / x,
        SigmaCase::OneMinusS2 => (apm * x.cos() - b / 2.0) / x.sin(),
        SigmaCase::S2Minus1 => (am * x.cosh() - b / 2.0) / x.sinh(),
        SigmaCase::S2 => -b / 2.0 * (-x).exp() + am,
        SigmaCase::S2Plus1 => (am * x.sinh() - b / 2.0) / x.cosh(),
    }
}

pub fn catalogue_potential(family: &Family, m: usize, x: f64) -> f64 {
    let (a, b) = (family.alpha_f64(), family.beta_f64());
    let mf = m as f64;
    let lambda = family.eigenvalue_f64(m);
    let am = -(2.0 * mf + a - 1.0) / 2.0;
    let apm = (2.0 * mf - a - 1.0) / 2.0;
    match family.case() {
        SigmaCase::One => (a * x + b).powi(2) / 4.0 + a / 2.0 + lambda,
        SigmaCase::S => {
            let c = b + mf - 0.5;
            a * a / 16.0 * x * x + c * (c - 1.0) / (x * x) + a / 2.0 * (b + mf) + lambda
        }
        SigmaCase::OneMinusS2 => {
            let (sn, cs) = x.sin_cos();
            let csc = sn.recip();
            (apm * apm - apm + b * b / 4.0) * csc * csc - (2.0 * apm - 1.0) * b / 2.0 * cs * csc * csc - apm * apm
                + lambda
        }
        SigmaCase::S2Minus1 => {
            let csch = x.sinh().recip();
            let coth = x.cosh() * csch;
            (am * am + am + b * b / 4.0) * csch * csch - (2.0 * am + 1.0) * b / 2.0 * coth * csch + am * am + lambda
        }
        SigmaCase::S2 => {
            let e = (-x).exp();
            b * b / 4.0 * e * e - (2.0 * am + 1.0) * b / 2.0 * e + am * am + lambda
        }
        SigmaCase::S2Plus1 => {
            let sech = x.cosh().recip();
            let tanh = x.tanh();
            (-am * am - am + b * b / 4.0) * sech * sech - (2.0 * am + 1.0) * b / 2.0 * tanh * sech + am * am + lambda
        }
    }
}
