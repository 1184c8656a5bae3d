//! γ-shifted ladders for the families whose weight is a power of σ,
//! `ρ = σ^k`. Shifting both `A_m` and `A_m⁺` by `ε_m = γ/(2m+2k+1)`
//! keeps the factorization shape invariant, with
//! `H̃_m = H_m - γ dκ/ds` and `λ̃_m = λ_m - ε_m²`.
//!
//! The eigenfunctions pick up a factor `e^{∓ε x}` and are no longer
//! polynomial in `s`, so everything here works on jets in `x`.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::family::{Family, SigmaCase};
use crate::jet::Jet;
use crate::polycore::{qi, rational_to_f64, Rational};
use crate::quad::{integrate, QuadratureSpec};
use crate::schrod::{
    check_x, coordinate_map, grid, ln_kappa_jet, ln_kappa_rho_jet, pointwise_residual, potential_jet,
    superpotential_jet, CoordinateMap,
};

#[derive(Debug, Clone, PartialEq)]
pub struct TildeFamily {
    base: Family,
    k: Rational,
    gamma: Rational,
}

/// Builds the γ-shifted family. Every index the base family admits must
/// have `2m + 2k + 1 ≠ 0`.
pub fn make_tilde(family: &Family, gamma: Rational) -> Result<TildeFamily> {
    let k = family.power_weight_exponent().ok_or(Error::NotPowerWeight)?;
    // 2m + 2k + 1 = 0 at m = -k - 1/2, when that is an admissible index
    let m_bad = -&k - Rational::new(1.into(), 2.into());
    if m_bad.is_integer() && m_bad >= Rational::zero() {
        let m = m_bad.to_integer().to_usize().unwrap_or(usize::MAX);
        if family.check_index(m).is_ok() {
            return Err(Error::DegenerateShift(m));
        }
    }
    Ok(TildeFamily {
        base: family.clone(),
        k,
        gamma,
    })
}

impl TildeFamily {
    pub fn base(&self) -> &Family {
        &self.base
    }

    pub fn k(&self) -> &Rational {
        &self.k
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn gamma_f64(&self) -> f64 {
        rational_to_f64(&self.gamma)
    }

    pub fn map(&self) -> CoordinateMap {
        coordinate_map(self.base.case())
    }

    fn denominator(&self, m: usize) -> Result<Rational> {
        let d = qi(2 * m as i64 + 1) + qi(2) * &self.k;
        if d.is_zero() {
            Err(Error::DegenerateShift(m))
        } else {
            Ok(d)
        }
    }

    /// `ε_m = γ / (2m + 2k + 1)`.
    pub fn epsilon_exact(&self, m: usize) -> Result<Rational> {
        Ok(&self.gamma / self.denominator(m)?)
    }

    pub fn epsilon(&self, m: usize) -> Result<f64> {
        Ok(rational_to_f64(&self.epsilon_exact(m)?))
    }

    /// `λ̃_m = λ_m - ε_m²` with `λ_m` from the general eigenvalue formula.
    pub fn lambda_exact(&self, m: usize) -> Result<Rational> {
        let e = self.epsilon_exact(m)?;
        Ok(self.base.eigenvalue(m) - &e * &e)
    }

    pub fn lambda(&self, m: usize) -> Result<f64> {
        Ok(rational_to_f64(&self.lambda_exact(m)?))
    }

    /// `W̃_m = W_m + ε_m` on a jet in `x`.
    pub fn superpotential_jet(&self, m: usize, x: &Jet) -> Result<Jet> {
        Ok(superpotential_jet(&self.base, m, x) + self.epsilon(m)?)
    }

    /// `𝒱̃_m = 𝒱_m - γ dκ/ds` on a jet in `x`.
    pub fn potential_jet(&self, m: usize, x: &Jet) -> Result<Jet> {
        self.denominator(m)?;
        let dk = self.map().dkappa_jet(x).scale(self.gamma_f64());
        Ok(potential_jet(&self.base, m, x) - dk)
    }

    /// `W̃_m² - sign·W̃_m' + λ̃_m`, the factorized form of `𝒱̃_m`.
    pub fn potential_from_superpotential(&self, m: usize, x: f64) -> Result<f64> {
        check_x(&self.map(), x)?;
        let w = self.superpotential_jet(m, &Jet::variable(x, 1))?;
        let (v, dv) = (w.value(), w.derivative_at(1));
        Ok(v * v - self.map().sign * dv + self.lambda(m)?)
    }
}

pub fn tilde_lambda(tf: &TildeFamily, m: usize) -> Result<f64> {
    tf.lambda(m)
}

pub fn tilde_superpotential(tf: &TildeFamily, m: usize, x: f64) -> Result<f64> {
    check_x(&tf.map(), x)?;
    Ok(tf.superpotential_jet(m, &Jet::variable(x, 0))?.value())
}

pub fn tilde_potential(tf: &TildeFamily, m: usize, x: f64) -> Result<f64> {
    check_x(&tf.map(), x)?;
    Ok(tf.potential_jet(m, &Jet::variable(x, 0))?.value())
}

/// Closed forms of `W̃_m` for the four standard cases, or `None` for a
/// power-weight family without a catalogue entry.
pub fn catalogue_tilde_superpotential(tf: &TildeFamily, m: usize, x: f64) -> Option<f64> {
    let f = &tf.base;
    let (a, b, g) = (f.alpha_f64(), f.beta_f64(), tf.gamma_f64());
    let mf = m as f64;
    let am = -(2.0 * mf + a - 1.0) / 2.0;
    let apm = (2.0 * mf - a - 1.0) / 2.0;
    Some(match f.case() {
        SigmaCase::S => -(b + mf - 0.5) / x + g / (2.0 * mf + 2.0 * b - 1.0),
        SigmaCase::OneMinusS2 => apm / x.tan() + g / (2.0 * mf - a - 1.0),
        SigmaCase::S2Minus1 => am / x.tanh() + g / (2.0 * mf + a - 1.0),
        SigmaCase::S2Plus1 => am * x.tanh() + g / (2.0 * mf + a - 1.0),
        _ => return None,
    })
}

/// Closed forms of `𝒱̃_m`; `λ_m` is the general eigenvalue.
pub fn catalogue_tilde_potential(tf: &TildeFamily, m: usize, x: f64) -> Option<f64> {
    let f = &tf.base;
    let (a, b, g) = (f.alpha_f64(), f.beta_f64(), tf.gamma_f64());
    let mf = m as f64;
    let lambda = f.eigenvalue_f64(m);
    let am = -(2.0 * mf + a - 1.0) / 2.0;
    let apm = (2.0 * mf - a - 1.0) / 2.0;
    Some(match f.case() {
        SigmaCase::S => {
            let c = b + mf - 0.5;
            c * (c - 1.0) / (x * x) - g / x + lambda
        }
        SigmaCase::OneMinusS2 => {
            let csc = x.sin().recip();
            (apm * apm - apm) * csc * csc + g / x.tan() - apm * apm + lambda
        }
        SigmaCase::S2Minus1 => {
            let csch = x.sinh().recip();
            (am * am + am) * csch * csch - g / x.tanh() + am * am + lambda
        }
        SigmaCase::S2Plus1 => {
            let sech = x.cosh().recip();
            -(am * am + am) * sech * sech - g * x.tanh() + am * am + lambda
        }
        _ => return None,
    })
}

/// `ln` of `√(κρ) κ^l e^{-sign ε_l x}` as a jet.
fn ln_ground_jet(tf: &TildeFamily, l: usize, x: &Jet) -> Result<Jet> {
    let f = &tf.base;
    let eps = tf.epsilon(l)?;
    let amp = &ln_kappa_rho_jet(f, x).scale(0.5) + &ln_kappa_jet(f, x).scale(l as f64);
    Ok(amp - x.scale(tf.map().sign * eps))
}

fn ground_with_shift(tf: &TildeFamily, l: usize, x0: f64, order: usize, shift: f64) -> Result<Jet> {
    let x = Jet::variable(x0, order);
    Ok((ln_ground_jet(tf, l, &x)? - shift).exp())
}

/// Jet of `Ψ̃_{l,l}(x) = √(κρ) κ^l e^{-sign ε_l x}`, the solution of
/// `(sign d/dx + W̃_l) Ψ̃_{l,l} = 0` (unnormalized).
pub fn tilde_ground(tf: &TildeFamily, l: usize, x0: f64, order: usize) -> Result<Jet> {
    tf.base.check_index(l)?;
    check_x(&tf.map(), x0)?;
    ground_with_shift(tf, l, x0, order, 0.0)
}

/// `sign·Ψ' + W̃_mΨ`.
pub fn tilde_up(tf: &TildeFamily, m: usize, psi: &Jet) -> Result<Jet> {
    apply_first_order(tf, m, tf.map().sign, psi)
}

/// `-sign·Ψ' + W̃_mΨ`.
pub fn tilde_down(tf: &TildeFamily, m: usize, psi: &Jet) -> Result<Jet> {
    apply_first_order(tf, m, -tf.map().sign, psi)
}

fn apply_first_order(tf: &TildeFamily, m: usize, sign: f64, psi: &Jet) -> Result<Jet> {
    if psi.order() == 0 {
        return Err(Error::InsufficientOrder { have: 0, need: 1 });
    }
    let order = psi.order() - 1;
    let w = tf.superpotential_jet(m, &Jet::variable(psi.anchor(), order))?;
    Ok(&psi.derive().scale(sign) + &(&w * &psi.truncate(order)))
}

/// `-Ψ'' + 𝒱̃_mΨ`; the result has two orders less than the input.
pub fn tilde_hamiltonian(tf: &TildeFamily, m: usize, psi: &Jet) -> Result<Jet> {
    if psi.order() < 2 {
        return Err(Error::InsufficientOrder {
            have: psi.order(),
            need: 2,
        });
    }
    let order = psi.order() - 2;
    let v = tf.potential_jet(m, &Jet::variable(psi.anchor(), order))?;
    Ok(&(&v * &psi.truncate(order)) - &psi.derive().derive())
}

fn chain(tf: &TildeFamily, l: usize, m: usize, mut psi: Jet) -> Result<Jet> {
    let lambda_l = tf.lambda(l)?;
    for j in (m..l).rev() {
        let gap = lambda_l - tf.lambda(j)?;
        if gap.abs() <= 1e-14 * (1.0 + lambda_l.abs()) {
            return Err(Error::DegenerateTildeEigenvalue { l, j });
        }
        psi = tilde_down(tf, j, &psi)?.scale(gap.recip());
    }
    Ok(psi)
}

fn check_indices(tf: &TildeFamily, l: usize, m: usize) -> Result<()> {
    if m > l {
        return Err(Error::InvalidIndex(format!("m = {m} exceeds l = {l}")));
    }
    tf.base.check_index(l)
}

/// Jet of `Ψ̃_{l,m}` of the requested order, from `Ψ̃_{l,l}` through
/// `(-sign d/dx + W̃_j) / (λ̃_l - λ̃_j)` for `j = l-1, ..., m`.
pub fn tilde_eigenfunction(tf: &TildeFamily, l: usize, m: usize, x0: f64, order: usize) -> Result<Jet> {
    check_indices(tf, l, m)?;
    check_x(&tf.map(), x0)?;
    let ground = ground_with_shift(tf, l, x0, order + (l - m), 0.0)?;
    chain(tf, l, m, ground)
}

fn ln_ground_value(tf: &TildeFamily, l: usize, x: f64) -> Result<f64> {
    Ok(ln_ground_jet(tf, l, &Jet::variable(x, 0))?.value())
}

/// Grid for `Ψ̃_{l,m}`, windowed on the envelope of `Ψ̃_{l,l}`; the ladder
/// chain does not change the exponential tails.
pub fn tilde_grid(tf: &TildeFamily, l: usize, m: usize, n: usize) -> Result<Vec<f64>> {
    check_indices(tf, l, m)?;
    tf.epsilon(l)?;
    let map = tf.map();
    Ok(grid::chebyshev_window(&map, n, |x| {
        ln_ground_value(tf, l, x).unwrap_or(f64::NEG_INFINITY)
    }))
}

/// Normalized residual of `H̃_mΨ̃_{l,m} = λ̃_lΨ̃_{l,m}` over the grid, with
/// `Ψ̃` scaled to `max |Ψ̃| = 1` on the grid.
pub fn tilde_residual(tf: &TildeFamily, l: usize, m: usize, grid: &[f64]) -> Result<f64> {
    check_indices(tf, l, m)?;
    let map = tf.map();
    for &x in grid {
        check_x(&map, x)?;
    }
    let mut shift = f64::NEG_INFINITY;
    for &x in grid {
        shift = shift.max(ln_ground_value(tf, l, x)?);
    }
    let mut jets = Vec::with_capacity(grid.len());
    for &x in grid {
        let ground = ground_with_shift(tf, l, x, 2 + (l - m), shift)?;
        jets.push(chain(tf, l, m, ground)?);
    }
    let peak = jets.iter().map(|j| j.value().abs()).fold(0.0, f64::max);
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::Unsupported(format!("eigenfunction scale {peak} on the grid")));
    }
    let lambda = tf.lambda(l)?;
    let mut worst: f64 = 0.0;
    for (jet, &x) in jets.iter().zip(grid) {
        let v = tf.potential_jet(m, &Jet::variable(x, 0))?.value();
        worst = worst.max(pointwise_residual(&jet.scale(peak.recip()), v, lambda));
    }
    Ok(worst)
}

/// `∫ Ψ̃_{l,m} Ψ̃_{k,m} dx`, both functions unnormalized. A finite end of
/// the domain is approached to within `1e-12` of the window width (jets
/// lose range beyond that); an infinite end is followed to twice the
/// point where `|Ψ̃|` has dropped by `1e-14`.
pub fn tilde_inner_product(tf: &TildeFamily, l: usize, k: usize, m: usize) -> Result<f64> {
    tilde_integral(tf, l, k, m, 1e-12, 2.0)
}

fn tilde_integral(tf: &TildeFamily, l: usize, k: usize, m: usize, inset: f64, reach: f64) -> Result<f64> {
    check_indices(tf, l, m)?;
    check_indices(tf, k, m)?;
    let map = tf.map();
    let (lo, hi) = map.x_domain;
    let win_l = grid::window(&map, |x| ln_ground_value(tf, l, x).unwrap_or(f64::NEG_INFINITY));
    let win_k = grid::window(&map, |x| ln_ground_value(tf, k, x).unwrap_or(f64::NEG_INFINITY));
    let (wa, wb) = (win_l.0.min(win_k.0), win_l.1.max(win_k.1));
    let width = wb - wa;
    let a = if lo.is_finite() { lo + inset * width } else { wa * reach };
    let b = if hi.is_finite() { hi - inset * width } else { wb * reach };
    let eval = |j: usize, x: f64| -> Result<f64> {
        let ground = ground_with_shift(tf, j, x, j - m, 0.0)?;
        Ok(chain(tf, j, m, ground)?.value())
    };
    let failed = std::cell::Cell::new(None);
    let r = integrate(a, b, &QuadratureSpec::default(), |n| {
        let x = if n.from_lo <= n.from_hi { a + n.from_lo } else { b - n.from_hi };
        match (eval(l, x), eval(k, x)) {
            (Ok(u), Ok(v)) => u * v,
            (Err(e), _) | (_, Err(e)) => {
                failed.set(Some(e));
                0.0
            }
        }
    });
    if let Some(e) = failed.take() {
        return Err(e);
    }
    Ok(r?.value)
}

/// Whether `Ψ̃_{l,m}` is square-integrable: the norm integral has to
/// converge and stay put when the cuts move further toward the ends.
pub fn is_normalizable(tf: &TildeFamily, l: usize, m: usize) -> Result<bool> {
    let near = tilde_integral(tf, l, l, m, 1e-8, 2.0);
    let far = tilde_integral(tf, l, l, m, 1e-16, 4.0);
    match (near, far) {
        (Ok(a), Ok(b)) => Ok(a.is_finite() && b.is_finite() && b > 0.0 && (a - b).abs() <= 1e-6 * b),
        (Err(Error::Divergent { .. }), _) | (_, Err(Error::Divergent { .. })) => Ok(false),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Validation;
    use crate::polycore::q;
    use crate::schrod::{eigen_grid, eigenfunction_jet, potential, superpotential};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn pw(case: SigmaCase, a: i64, b: i64) -> Family {
        Family::build(case, qi(a), qi(b), Validation::PowerWeight).unwrap()
    }

    fn coulomb() -> TildeFamily {
        make_tilde(&pw(SigmaCase::S, 0, 1), qi(2)).unwrap()
    }

    fn trig_rm() -> TildeFamily {
        make_tilde(&pw(SigmaCase::OneMinusS2, -4, 0), qi(3)).unwrap()
    }

    fn four() -> Vec<TildeFamily> {
        vec![
            coulomb(),
            trig_rm(),
            // |γ| < 1/2 keeps Ψ̃_{4,m} decaying at infinity
            make_tilde(&pw(SigmaCase::S2Minus1, -8, 0), q(1, 4)).unwrap(),
            make_tilde(&pw(SigmaCase::S2Plus1, -8, 0), q(1, 4)).unwrap(),
        ]
    }

    #[test]
    fn construction() {
        assert_eq!(coulomb().k(), &qi(0));
        assert_eq!(trig_rm().k(), &qi(1));
        let osc = Family::new(SigmaCase::One, qi(-2), qi(0)).unwrap();
        assert_eq!(make_tilde(&osc, qi(1)), Err(Error::NotPowerWeight));
        // k = -3/2 puts the pole at m = 1
        let f = Family::build(SigmaCase::S, qi(0), q(-1, 2), Validation::Formal).unwrap();
        assert_eq!(make_tilde(&f, qi(1)), Err(Error::DegenerateShift(1)));
    }

    #[test]
    fn lambda_examples() {
        let c = coulomb();
        assert_eq!(c.lambda_exact(0).unwrap(), qi(-4));
        assert_eq!(c.lambda_exact(1).unwrap(), q(-4, 9));
        assert_eq!(trig_rm().lambda_exact(1).unwrap(), q(91, 25));
        for m in 0..=10 {
            assert_eq!(c.lambda_exact(m).unwrap(), q(-4, ((2 * m + 1) * (2 * m + 1)) as i64));
            assert!(c.lambda(m).unwrap() < c.lambda(m + 1).unwrap());
            assert!(c.lambda(m + 1).unwrap() < 0.0);
        }
    }

    #[test]
    fn superpotential_and_potential_examples() {
        assert_relative_eq!(tilde_superpotential(&coulomb(), 0, 1.0).unwrap(), 1.5, epsilon = 1e-14);
        assert_relative_eq!(tilde_superpotential(&trig_rm(), 0, PI / 2.0).unwrap(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(tilde_potential(&coulomb(), 0, 2.0).unwrap(), -1.0625, epsilon = 1e-14);
        let hrm = make_tilde(&pw(SigmaCase::S2Plus1, -6, 0), qi(1)).unwrap();
        assert_relative_eq!(tilde_potential(&hrm, 0, 0.0).unwrap(), -3.5, epsilon = 1e-14);

        let eck = pw(SigmaCase::S2Minus1, -8, 0);
        let t0 = make_tilde(&eck, qi(0)).unwrap();
        for x in [0.2, 1.0, 3.0] {
            assert_eq!(tilde_superpotential(&t0, 2, x).unwrap(), superpotential(&eck, 2, x).unwrap());
            assert_eq!(tilde_potential(&t0, 2, x).unwrap(), potential(&eck, 2, x).unwrap());
        }
    }

    #[test]
    fn generic_matches_catalogue_and_factorized_form() {
        for tf in four() {
            let map = tf.map();
            for m in 0..=tf.base().degree_budget().cap(4) {
                let xs = grid::chebyshev_window(&map, 15, |x| ln_ground_value(&tf, m, x).unwrap());
                for x in xs {
                    let v = tilde_potential(&tf, m, x).unwrap();
                    let tol = 1e-10 * (1.0 + v.abs());
                    let vc = catalogue_tilde_potential(&tf, m, x).unwrap();
                    assert!((v - vc).abs() <= tol, "{} m={m} x={x}: {v} vs {vc}", tf.base().describe());
                    assert!((v - tf.potential_from_superpotential(m, x).unwrap()).abs() <= tol);
                    let w = tilde_superpotential(&tf, m, x).unwrap();
                    let wc = catalogue_tilde_superpotential(&tf, m, x).unwrap();
                    assert!((w - wc).abs() <= 1e-10 * (1.0 + w.abs()));
                }
            }
        }
    }

    #[test]
    fn coulomb_ground_state() {
        let c = coulomb();
        for x in [0.1, 0.7, 2.0, 5.0] {
            let g = tilde_ground(&c, 0, x, 2).unwrap();
            // √(κρ) = √(x/2)
            assert_relative_eq!(g.value(), (x / 2.0).sqrt() * (-2.0 * x).exp(), max_relative = 1e-13);
            let killed = tilde_up(&c, 0, &g).unwrap();
            assert!(killed.value().abs() <= 1e-10 * g.value().abs().max(1e-300));
        }
        let grid = tilde_grid(&c, 0, 0, 200).unwrap();
        assert!(tilde_residual(&c, 0, 0, &grid).unwrap() <= 1e-10);
    }

    #[test]
    fn residuals_four_cases() {
        for tf in four() {
            for l in 0..=tf.base().degree_budget().cap(4) {
                for m in 0..=l {
                    let grid = tilde_grid(&tf, l, m, 200).unwrap();
                    let r = tilde_residual(&tf, l, m, &grid).unwrap();
                    assert!(r <= 1e-8, "{} l={l} m={m}: {r:e}", tf.base().describe());
                }
            }
        }
    }

    #[test]
    fn chain_relations() {
        for tf in four() {
            let lmax = tf.base().degree_budget().cap(4);
            for l in 1..=lmax {
                for m in 0..l {
                    let x = tilde_grid(&tf, l, m, 9).unwrap()[3];
                    let psi = tilde_eigenfunction(&tf, l, m, x, 2).unwrap();
                    let next = tilde_eigenfunction(&tf, l, m + 1, x, 1).unwrap();
                    let up = tilde_up(&tf, m, &psi).unwrap();
                    let scale = psi.coeffs().iter().chain(next.coeffs()).fold(0.0f64, |a, c| a.max(c.abs()));
                    assert!((up.value() - next.value()).abs() <= 1e-9 * scale);
                    let down = tilde_down(&tf, m, &next).unwrap();
                    let gap = tf.lambda(l).unwrap() - tf.lambda(m).unwrap();
                    assert!((down.value() - gap * psi.value()).abs() <= 1e-9 * scale * (1.0 + gap.abs()));
                }
                let top = tilde_eigenfunction(&tf, l, l, 0.5, 1).unwrap();
                assert_eq!(top, tilde_ground(&tf, l, 0.5, 1).unwrap());
            }
        }
    }

    #[test]
    fn shape_invariance_on_sample_functions() {
        for tf in four() {
            let map = tf.map();
            let xs = grid::chebyshev_window(&map, 5, |x| ln_ground_value(&tf, 0, x).unwrap());
            let m_top = tf.base().degree_budget().cap(3).saturating_sub(1);
            for (n, (j, i, c)) in [(0, 0, 0.0), (1, 0, 0.3), (0, 1, -0.2), (2, 1, 0.1), (1, 2, 0.0), (3, 0, -0.5), (0, 2, 0.4), (2, 2, 0.2), (1, 1, -0.1), (0, 3, 0.05)]
                .into_iter()
                .enumerate()
            {
                let x0 = xs[n % xs.len()];
                let x = Jet::variable(x0, 4);
                let f = &(&map.kappa_jet(&x).powi(j) * &map.s_jet(&x).powi(i)) * &x.scale(c).exp();
                for m in 0..=m_top {
                    let lm = tf.lambda(m).unwrap();
                    let h_m = tilde_hamiltonian(&tf, m, &f).unwrap();
                    let h_m1 = tilde_hamiltonian(&tf, m + 1, &f).unwrap();
                    let du = tilde_down(&tf, m, &tilde_up(&tf, m, &f).unwrap()).unwrap();
                    let ud = tilde_up(&tf, m, &tilde_down(&tf, m, &f).unwrap()).unwrap();
                    let scale = 1.0 + h_m.coeffs().iter().chain(du.coeffs()).fold(0.0f64, |a, c| a.max(c.abs()));
                    assert!((du.value() - (h_m.value() - lm * f.value())).abs() <= 1e-9 * scale);
                    assert!((ud.value() - (h_m1.value() - lm * f.value())).abs() <= 1e-9 * scale);
                    let a = tilde_up(&tf, m, &h_m).unwrap();
                    let b = tilde_hamiltonian(&tf, m + 1, &tilde_up(&tf, m, &f).unwrap()).unwrap();
                    let scale = 1.0 + a.value().abs().max(b.value().abs());
                    assert!((a.value() - b.value()).abs() <= 1e-9 * scale);
                }
            }
        }
    }

    #[test]
    fn coulomb_orthogonality() {
        let c = coulomb();
        for l in 0..=3 {
            let nl = tilde_inner_product(&c, l, l, 0).unwrap();
            assert!(nl > 0.0);
            for k in 0..l {
                let nk = tilde_inner_product(&c, k, k, 0).unwrap();
                let v = tilde_inner_product(&c, l, k, 0).unwrap();
                assert!(v.abs() <= 1e-7 * (nl * nk).sqrt(), "{l},{k}: {v:e}");
            }
        }
        assert!(is_normalizable(&c, 2, 0).unwrap());
        // Eckart states with α = -8 blow up like sinh^{l-9/2} x at the origin
        let eck = make_tilde(&pw(SigmaCase::S2Minus1, -8, 0), q(1, 4)).unwrap();
        assert!(!is_normalizable(&eck, 1, 1).unwrap());
        // γ = 1 makes Ψ̃_{4,4} grow like e^{x/2}
        let hrm = make_tilde(&pw(SigmaCase::S2Plus1, -8, 0), qi(1)).unwrap();
        assert!(!is_normalizable(&hrm, 4, 4).unwrap());
        assert!(is_normalizable(&hrm, 1, 1).unwrap());
    }

    #[test]
    fn small_gamma_is_continuous() {
        let base = pw(SigmaCase::OneMinusS2, -4, 0);
        let tf = make_tilde(&base, q(1, 1_000_000)).unwrap();
        for m in 0..=3 {
            let dl = (tf.lambda(m).unwrap() - base.eigenvalue_f64(m)).abs();
            assert!(dl <= 1e-4 * (1.0 + base.eigenvalue_f64(m).abs()));
        }
        let fact = |l: usize| (1..=l).product::<usize>() as f64;
        for l in 0..=3 {
            for m in 0..=l {
                let grid = eigen_grid(&base, l, m, 7).unwrap();
                let base_vals: Vec<f64> = grid
                    .iter()
                    .map(|&x| eigenfunction_jet(&base, l, m, x, 0).unwrap().value() / fact(l))
                    .collect();
                let scale = base_vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                for (&x, b) in grid.iter().zip(base_vals) {
                    let t = tilde_eigenfunction(&tf, l, m, x, 0).unwrap().value();
                    assert!((t - b).abs() <= 1e-4 * scale, "{l},{m} {x}: {t} {b}");
                }
            }
        }
    }
}
