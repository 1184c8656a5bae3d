//! Schrödinger form of the ladder structure: a change of variable
//! `ds/dx = ±κ(s)` turns `H_m` into `-d²/dx² + 𝒱_m(x)` acting on
//! `Ψ_{l,m}(x) = √(κρ) Φ_{l,m}(s(x))`.
//!
//! Everything here is pointwise and carried by [`Jet`]s, so derivatives in
//! `x` are exact up to rounding.

mod catalogue;
mod coords;
pub mod grid;

use serde::Serialize;

pub use catalogue::{catalogue_potential, catalogue_superpotential};
pub use coords::{coordinate_map, CoordinateMap};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::jet::Jet;
use crate::ladder::{associated, associated_norm, LayeredFunction};
use crate::polycore::FloatPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// One row of a potential table. `v` includes the `+λ_m` offset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSample {
    pub x: f64,
    pub v: f64,
    pub w: f64,
    pub lambda_offset: f64,
}

pub(crate) fn check_x(map: &CoordinateMap, x: f64) -> Result<()> {
    if map.contains(x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(x, map.domain_string()))
    }
}

/// `W_m = -τ(s)/(2κ) - (m - 1/2) dκ/ds` on a jet in `x`.
pub fn superpotential_jet(family: &Family, m: usize, x: &Jet) -> Jet {
    let map = coordinate_map(family.case());
    let s = map.s_jet(x);
    let kappa = map.kappa_jet(x);
    let tau = &(&s * family.alpha_f64()) + family.beta_f64();
    let first = (&tau / &kappa).scale(-0.5);
    let second = map.dkappa_jet(x).scale(m as f64 - 0.5);
    first - second
}

/// `𝒱_m = W_m² - sign·Ẇ_m + λ_m` to the order of `x`.
pub fn potential_jet(family: &Family, m: usize, x: &Jet) -> Jet {
    let map = coordinate_map(family.case());
    let wide = Jet::variable(x.anchor(), x.order() + 1);
    let w = superpotential_jet(family, m, &wide);
    let dw = w.derive();
    let w = w.truncate(x.order());
    &(&w * &w) - &dw.scale(map.sign) + family.eigenvalue_f64(m)
}

pub fn superpotential(family: &Family, m: usize, x: f64) -> Result<f64> {
    check_x(&coordinate_map(family.case()), x)?;
    Ok(superpotential_jet(family, m, &Jet::variable(x, 0)).value())
}

pub fn potential(family: &Family, m: usize, x: f64) -> Result<f64> {
    check_x(&coordinate_map(family.case()), x)?;
    Ok(potential_jet(family, m, &Jet::variable(x, 0)).value())
}

pub fn sample_potential(family: &Family, m: usize, x: f64) -> Result<PotentialSample> {
    Ok(PotentialSample {
        x,
        v: potential(family, m, x)?,
        w: superpotential(family, m, x)?,
        lambda_offset: family.eigenvalue_f64(m),
    })
}

/// `ln(κρ)` at `s(x)`, written per case so that no factor of ρ is formed
/// by cancellation near a finite endpoint.
pub fn ln_kappa_rho_jet(family: &Family, x: &Jet) -> Jet {
    use crate::family::SigmaCase::*;
    let a = family.alpha_f64();
    let b = family.beta_f64();
    let ln2 = std::f64::consts::LN_2;
    match family.case() {
        One => &(&(x * x) * (0.5 * a)) + &(x * b),
        S => {
            let half = x.scale(0.5).ln().scale(2.0 * b - 1.0);
            // α = 0 on the Coulomb row; skip the term so huge x stays finite
            if a == 0.0 {
                half
            } else {
                &half + &(x * x).scale(a / 4.0)
            }
        }
        OneMinusS2 => {
            // 1 + cos x = 2cos²(x/2), 1 - cos x = 2sin²(x/2)
            let (sh, ch) = x.scale(0.5).sin_cos();
            let (ls, lc) = (sh.ln(), ch.ln());
            let p = -(a - b) / 2.0 - 1.0;
            let q = -(a + b) / 2.0 - 1.0;
            let ln_kappa = &(&ls + &lc) + ln2;
            let rho = &(&lc.scale(2.0 * p) + &ls.scale(2.0 * q)) + (p + q) * ln2;
            ln_kappa + rho
        }
        S2Minus1 => {
            let (sh, ch) = x.scale(0.5).sinh_cosh();
            let (ls, lc) = (sh.ln(), ch.ln());
            let p = (a - b) / 2.0 - 1.0;
            let q = (a + b) / 2.0 - 1.0;
            let ln_kappa = &(&ls + &lc) + ln2;
            let rho = &(&lc.scale(2.0 * p) + &ls.scale(2.0 * q)) + (p + q) * ln2;
            ln_kappa + rho
        }
        S2 if b == 0.0 => x.scale(a - 1.0),
        S2 => &x.scale(a - 1.0) - &(-x).exp().scale(b),
        S2Plus1 if b == 0.0 => x.cosh().ln().scale(a - 1.0),
        S2Plus1 => &x.cosh().ln().scale(a - 1.0) + &x.sinh().atan().scale(b),
    }
}

/// `ln κ(s(x))`.
pub fn ln_kappa_jet(family: &Family, x: &Jet) -> Jet {
    use crate::family::SigmaCase::*;
    match family.case() {
        One => Jet::constant(x.anchor(), 0.0, x.order()),
        S => x.scale(0.5).ln(),
        OneMinusS2 => {
            let (sh, ch) = x.scale(0.5).sin_cos();
            &(&sh.ln() + &ch.ln()) + std::f64::consts::LN_2
        }
        S2Minus1 => {
            let (sh, ch) = x.scale(0.5).sinh_cosh();
            &(&sh.ln() + &ch.ln()) + std::f64::consts::LN_2
        }
        S2 => x.clone(),
        S2Plus1 => x.cosh().ln(),
    }
}

/// `ln |Ψ|` for a layered function, used to pick a common scale.
pub(crate) fn ln_abs_psi(family: &Family, g: &LayeredFunction, x: f64) -> f64 {
    let map = coordinate_map(family.case());
    let xj = Jet::variable(x, 0);
    let amp = ln_kappa_rho_jet(family, &xj).value() * 0.5 + g.m as f64 * ln_kappa_jet(family, &xj).value();
    amp + g.p.to_float().ln_abs(map.s_of_x(x)).0
}

/// Upper bound for `ln |Ψ|` that has no zeros: `|P|` is replaced by
/// `Σ |c_k| |s|^k`.
pub(crate) fn ln_envelope(family: &Family, g: &LayeredFunction, x: f64) -> f64 {
    let map = coordinate_map(family.case());
    let xj = Jet::variable(x, 0);
    let amp = ln_kappa_rho_jet(family, &xj).value() * 0.5 + g.m as f64 * ln_kappa_jet(family, &xj).value();
    let abs = FloatPoly::new(g.p.to_float().coeffs().iter().map(|c| c.abs()).collect());
    amp + abs.ln_abs(map.s_of_x(x).abs()).0
}

/// Jet of `exp(-shift) κ^m √(κρ) P(s(x))`.
pub(crate) fn layered_psi_jet(family: &Family, g: &LayeredFunction, x0: f64, order: usize, shift: f64) -> Jet {
    let map = coordinate_map(family.case());
    let x = Jet::variable(x0, order);
    let amp = &(&ln_kappa_rho_jet(family, &x).scale(0.5) + &ln_kappa_jet(family, &x).scale(g.m as f64)) - shift;
    let p = g.p.to_float().eval_jet(&map.s_jet(&x));
    amp.exp() * p
}

/// Jet of the unnormalized `Ψ_{l,m}` at `x0`.
pub fn eigenfunction_jet(family: &Family, l: usize, m: usize, x0: f64, order: usize) -> Result<Jet> {
    check_x(&coordinate_map(family.case()), x0)?;
    let g = associated(family, l, m)?;
    Ok(layered_psi_jet(family, &g, x0, order, 0.0))
}

/// Jet of `ψ_{l,m} = Ψ_{l,m} / ||Φ_{l,m}||`, which has unit `L²(dx)` norm.
pub fn normalized_eigenfunction_jet(family: &Family, l: usize, m: usize, x0: f64, order: usize) -> Result<Jet> {
    let jet = eigenfunction_jet(family, l, m, x0, order)?;
    Ok(jet.scale(associated_norm(family, l, m)?.recip()))
}

/// `up: sign·Ψ' + W_mΨ`, `down: -sign·Ψ' + W_mΨ`. The result has one
/// order less than the input.
pub fn x_ladder_apply(family: &Family, m: usize, direction: Direction, psi: &Jet) -> Result<Jet> {
    if psi.order() == 0 {
        return Err(Error::InsufficientOrder { have: 0, need: 1 });
    }
    let map = coordinate_map(family.case());
    let order = psi.order() - 1;
    let w = superpotential_jet(family, m, &Jet::variable(psi.anchor(), order));
    let sign = match direction {
        Direction::Up => map.sign,
        Direction::Down => -map.sign,
    };
    Ok(&psi.derive().scale(sign) + &(&w * &psi.truncate(order)))
}

/// Normalized residual of `-Ψ'' + 𝒱Ψ = λΨ` at one point, with `Ψ` already
/// scaled so that its maximum over the grid is about one.
pub(crate) fn pointwise_residual(psi: &Jet, v: f64, lambda: f64) -> f64 {
    let p = psi.value();
    let d2 = psi.derivative_at(2);
    (-d2 + v * p - lambda * p).abs() / (1.0 + lambda.abs() * p.abs())
}

/// `max |-Ψ'' + 𝒱_mΨ - λ_lΨ| / (1 + |λ_l||Ψ|)` over `grid`, with `Ψ`
/// scaled so that `max |Ψ| = 1` on the grid.
pub fn schrodinger_residual(family: &Family, l: usize, m: usize, grid: &[f64]) -> Result<f64> {
    let map = coordinate_map(family.case());
    for &x in grid {
        check_x(&map, x)?;
    }
    let g = associated(family, l, m)?;
    let shift = grid
        .iter()
        .map(|&x| ln_abs_psi(family, &g, x))
        .fold(f64::NEG_INFINITY, f64::max);
    let lambda = family.eigenvalue_f64(l);
    let mut worst: f64 = 0.0;
    for &x in grid {
        let psi = layered_psi_jet(family, &g, x, 2, shift);
        let v = potential_jet(family, m, &Jet::variable(x, 0)).value();
        worst = worst.max(pointwise_residual(&psi, v, lambda));
    }
    Ok(worst)
}

/// The residual grid for `Ψ_{l,m}`: `n` Chebyshev nodes on the window
/// described in [`grid`].
pub fn eigen_grid(family: &Family, l: usize, m: usize, n: usize) -> Result<Vec<f64>> {
    let g = associated(family, l, m)?;
    let map = coordinate_map(family.case());
    Ok(grid::chebyshev_window(&map, n, |x| ln_envelope(family, &g, x)))
}

/// `∫ Ψ_{l,m} Ψ_{k,m} dx` over the whole `x` domain.
pub fn x_inner_product(family: &Family, l: usize, k: usize, m: usize) -> Result<f64> {
    let map = coordinate_map(family.case());
    let g1 = associated(family, l, m)?;
    let g2 = associated(family, k, m)?;
    let (lo, hi) = map.x_domain;
    let r = crate::quad::integrate(lo, hi, &Default::default(), |n| {
        let x = if n.from_lo <= n.from_hi { lo + n.from_lo } else { hi - n.from_hi };
        let l1 = ln_abs_psi(family, &g1, x);
        let l2 = ln_abs_psi(family, &g2, x);
        let s = map.s_of_x(x);
        let sign = g1.p.eval_f64(s).signum() * g2.p.eval_f64(s).signum();
        sign * (l1 + l2).exp()
    })?;
    Ok(r.value)
}
