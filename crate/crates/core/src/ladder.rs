//! Associated special functions `Φ_{l,m} = κ^m Φ_l^{(m)}` and the ladder
//! operators acting on them.
//!
//! Functions of the form `κ(s)^m P(s)` with `κ = √σ` are carried as the pair
//! `(m, P)`. Every operator here maps such a pair to another one with exact
//! rational coefficients, so no square root is ever taken.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::polycore::{generate_phi, qi, rational_to_f64, Rational, RationalPoly};
use crate::quad::inner_product;

/// `κ(s)^m · p(s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayeredFunction {
    pub m: usize,
    #[serde(serialize_with = "serialize_poly")]
    pub p: RationalPoly,
}

fn serialize_poly<S: serde::Serializer>(p: &RationalPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeff_strings())
}

impl LayeredFunction {
    pub fn new(m: usize, p: RationalPoly) -> Self {
        Self { m, p }
    }

    pub fn zero(m: usize) -> Self {
        Self::new(m, RationalPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.m, self.p.scale(c))
    }

    /// Value at `s`, with `κ = √σ(s)`.
    pub fn eval_f64(&self, family: &Family, s: f64) -> f64 {
        let sigma = family.case().sigma_f64(s);
        sigma.sqrt().powi(self.m as i32) * self.p.eval_f64(s)
    }
}

impl std::fmt::Display for LayeredFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "κ^{} · ({})", self.m, self.p)
    }
}

/// `Φ_{l,m} = (m, Φ_l^{(m)})` with monic `Φ_l`.
pub fn associated(family: &Family, l: usize, m: usize) -> Result<LayeredFunction> {
    if m > l {
        return Err(Error::InvalidIndex(format!("m = {m} exceeds l = {l}")));
    }
    let phi = generate_phi(family, l)?;
    Ok(LayeredFunction::new(m, phi.derive_n(m)))
}

/// `A_m = κ d/ds - m κ'` on layer `m`: `(m, P) ↦ (m+1, P')`.
pub fn raise_m(_family: &Family, g: &LayeredFunction) -> LayeredFunction {
    LayeredFunction::new(g.m + 1, g.p.derive())
}

/// `A_m⁺ = -κ d/ds - τ/κ - (m-1)κ'` with `m = g.m - 1`:
/// `(m+1, Q) ↦ (m, -σQ' - τQ - mσ'Q)`.
pub fn lower_m(family: &Family, g: &LayeredFunction) -> Result<LayeredFunction> {
    if g.m == 0 {
        return Err(Error::LayerUnderflow);
    }
    let m = g.m - 1;
    let sigma = family.sigma();
    let dsigma = sigma.derive();
    let tau = family.tau();
    let q = &g.p;
    let p = -(&(&(&sigma * &q.derive()) + &(&tau * q)) + &(&dsigma * q).scale(&qi(m as i64)));
    Ok(LayeredFunction::new(m, p))
}

/// `H_m g` through the factorization `H_m = A_m⁺ A_m + λ_m`.
pub fn hamiltonian_apply(family: &Family, g: &LayeredFunction) -> LayeredFunction {
    let lowered = lower_m(family, &raise_m(family, g)).expect("raised layer is at least 1");
    let lambda = family.eigenvalue(g.m);
    LayeredFunction::new(g.m, &lowered.p + &g.p.scale(&lambda))
}

/// `H_m g` by expanding
/// `-σ f'' - τ f' + [m(m-2)σ'²/(4σ) + mτσ'/(2σ) - m(m-2)σ''/2 - mτ'] f`
/// for `f = κ^m P` over the common denominator `4σ` and dividing out.
/// Fails if the division leaves a remainder, which would mean the
/// potential terms do not cancel on this layer.
pub fn hamiltonian_direct(family: &Family, g: &LayeredFunction) -> Result<LayeredFunction> {
    let m = qi(g.m as i64);
    let sigma = family.sigma();
    let ds = sigma.derive();
    let dds = ds.derive();
    let tau = family.tau();
    let dtau = tau.derive();
    let p = &g.p;
    let dp = p.derive();
    let ddp = dp.derive();
    let k = |c: Rational| RationalPoly::constant(c);

    // (κ^m P)'' / κ^m = P'' + m (σ'/σ) P' + (m/2) σ''/σ P + (m(m-2)/4) σ'²/σ² P
    let f2 = &(&(&(&sigma * &sigma) * &ddp).scale(&qi(4))
        + &(&(&sigma * &ds) * &dp).scale(&(qi(4) * &m)))
        + &(&(&(&sigma * &dds).scale(&(qi(2) * &m))
            + &(&ds * &ds).scale(&(&m * (&m - qi(2)))))
            * p);
    // (κ^m P)' / κ^m = P' + (m/2)(σ'/σ) P
    let f1 = &(&(&sigma * &dp).scale(&qi(4)) + &(&ds * p).scale(&(qi(2) * &m))) * &tau;

    let potential = &(&(&(&ds * &ds).scale(&(&m * (&m - qi(2))))
        + &(&tau * &ds).scale(&(qi(2) * &m)))
        - &(&sigma * &dds).scale(&(qi(2) * &m * (&m - qi(2)))))
        - &(&sigma * &dtau).scale(&(qi(4) * &m));
    let numerator = &(&(-&f2) - &f1) + &(&potential * p);

    let denom = &sigma * &k(qi(4));
    let (quot, rem) = numerator.div_rem(&denom);
    if !rem.is_zero() {
        return Err(Error::NonPolynomialRemainder(rem.to_string()));
    }
    Ok(LayeredFunction::new(g.m, quot))
}

/// `Φ_{l,m} / l!` rebuilt from the top of the ladder: starting at
/// `(l, 1) = κ^l` and applying `A_j⁺ / (λ_l - λ_j)` for `j = l-1, ..., m`.
pub fn build_from_top(family: &Family, l: usize, m: usize) -> Result<LayeredFunction> {
    if m > l {
        return Err(Error::InvalidIndex(format!("m = {m} exceeds l = {l}")));
    }
    family.check_index(l)?;
    let lambda_l = family.eigenvalue(l);
    let mut g = LayeredFunction::new(l, RationalPoly::one());
    for j in (m..l).rev() {
        let gap = &lambda_l - family.eigenvalue(j);
        if gap.is_zero() {
            return Err(Error::DegenerateEigenvalue { l, j });
        }
        g = lower_m(family, &g)?.scale(&gap.recip());
    }
    Ok(g)
}

/// `||Φ_{l,m}||` for `m = l, l-1, ..., 0` from `||Φ_{l,l}||` and
/// `||Φ_{l,m+1}|| = √(λ_l - λ_m) ||Φ_{l,m}||`.
pub fn norm_chain(family: &Family, l: usize, base_norm: f64) -> Result<Vec<f64>> {
    let lambda_l = family.eigenvalue(l);
    let mut out = Vec::with_capacity(l + 1);
    let mut norm = base_norm;
    out.push(norm);
    for j in (0..l).rev() {
        let gap = &lambda_l - family.eigenvalue(j);
        if gap <= Rational::zero() {
            return Err(Error::DegenerateEigenvalue { l, j });
        }
        norm /= rational_to_f64(&gap).sqrt();
        out.push(norm);
    }
    Ok(out)
}

/// `||Φ_{l,l}|| = l! (∫ σ^l ρ)^{1/2}`.
pub fn top_norm(family: &Family, l: usize) -> Result<f64> {
    family.check_index(l)?;
    let top = associated(family, l, l)?;
    Ok(inner_product(family, &top, &top)?.value.sqrt())
}

/// `||Φ_{l,m}||` via [`top_norm`] and [`norm_chain`].
pub fn associated_norm(family: &Family, l: usize, m: usize) -> Result<f64> {
    if m > l {
        return Err(Error::InvalidIndex(format!("m = {m} exceeds l = {l}")));
    }
    let chain = norm_chain(family, l, top_norm(family, l)?)?;
    Ok(chain[l - m])
}

/// Normalized `φ_{l,m}(s) = Φ_{l,m}(s) / ||Φ_{l,m}||`.
pub fn normalized_phi(family: &Family, l: usize, m: usize, s: f64) -> Result<f64> {
    if !family.interval().contains(s) {
        return Err(Error::OutOfDomain(s, family.interval().to_string()));
    }
    let g = associated(family, l, m)?;
    Ok(g.eval_f64(family, s) / associated_norm(family, l, m)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{SigmaCase, Validation};
    use crate::polycore::q;
    use num_traits::One;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn hermite() -> Family {
        Family::new(SigmaCase::One, qi(-2), qi(0)).unwrap()
    }

    fn laguerre() -> Family {
        Family::new(SigmaCase::S, qi(-1), qi(1)).unwrap()
    }

    fn legendre() -> Family {
        Family::new_power_weight(SigmaCase::OneMinusS2, qi(-2), qi(0)).unwrap()
    }

    fn lf(m: usize, c: &[i64]) -> LayeredFunction {
        LayeredFunction::new(m, RationalPoly::from_ints(c))
    }

    fn representatives() -> Vec<Family> {
        vec![
            hermite(),
            laguerre(),
            legendre(),
            Family::new(SigmaCase::OneMinusS2, qi(-3), q(1, 2)).unwrap(),
            Family::new(SigmaCase::S2Minus1, qi(-10), qi(11)).unwrap(),
            Family::build(SigmaCase::S2Minus1, qi(-10), qi(1), Validation::Formal).unwrap(),
            Family::new(SigmaCase::S2, qi(-10), qi(1)).unwrap(),
            Family::new(SigmaCase::S2Plus1, qi(-9), qi(1)).unwrap(),
        ]
    }

    fn top(f: &Family) -> usize {
        f.degree_budget().cap(12)
    }

    #[test]
    fn associated_examples() {
        let f = hermite();
        assert_eq!(associated(&f, 2, 1).unwrap(), lf(1, &[0, 2]));
        assert_eq!(associated(&f, 0, 0).unwrap(), lf(0, &[1]));
        assert_eq!(associated(&f, 2, 2).unwrap(), lf(2, &[2]));
        assert!(matches!(associated(&f, 1, 2), Err(Error::InvalidIndex(_))));
    }

    #[test]
    fn raise_examples() {
        let f = hermite();
        assert_eq!(raise_m(&f, &lf(1, &[0, 2])), associated(&f, 2, 2).unwrap());
        assert_eq!(raise_m(&f, &lf(3, &[5])), LayeredFunction::zero(4));
        assert_eq!(raise_m(&f, &lf(0, &[0, 0, 0, 1])), lf(1, &[0, 0, 3]));
    }

    #[test]
    fn lower_examples() {
        let f = hermite();
        assert_eq!(lower_m(&f, &lf(2, &[2])).unwrap(), lf(1, &[0, 4]));
        assert_eq!(lower_m(&f, &LayeredFunction::zero(1)).unwrap(), LayeredFunction::zero(0));
        assert_eq!(lower_m(&laguerre(), &lf(1, &[1])).unwrap(), lf(0, &[-1, 1]));
        assert_eq!(lower_m(&f, &lf(0, &[1])), Err(Error::LayerUnderflow));
    }

    #[test]
    fn hamiltonian_examples() {
        let f = hermite();
        let phi2 = associated(&f, 2, 0).unwrap();
        assert_eq!(hamiltonian_apply(&f, &phi2), phi2.scale(&qi(4)));
        assert_eq!(hamiltonian_apply(&f, &LayeredFunction::zero(3)), LayeredFunction::zero(3));
        let g = legendre();
        assert_eq!(hamiltonian_apply(&g, &lf(0, &[0, 1])), lf(0, &[0, 2]));
    }

    #[test]
    fn build_from_top_examples() {
        let f = hermite();
        assert_eq!(build_from_top(&f, 2, 2).unwrap(), lf(2, &[1]));
        assert_eq!(build_from_top(&f, 2, 1).unwrap(), lf(1, &[0, 1]));
        assert_eq!(build_from_top(&laguerre(), 1, 0).unwrap(), lf(0, &[-1, 1]));
    }

    #[test]
    fn ladder_identities_all_cases() {
        for f in representatives() {
            for l in 0..=top(&f) {
                let lambda_l = f.eigenvalue(l);
                let fact = (1..=l).fold(Rational::one(), |a, k| a * qi(k as i64));
                for m in 0..=l {
                    let a = associated(&f, l, m).unwrap();
                    let up = raise_m(&f, &a);
                    if m < l {
                        assert_eq!(up, associated(&f, l, m + 1).unwrap(), "{} l={l} m={m}", f.describe());
                        let down = lower_m(&f, &up).unwrap();
                        assert_eq!(down, a.scale(&(&lambda_l - f.eigenvalue(m))));
                    } else {
                        assert!(up.is_zero());
                    }
                    assert_eq!(hamiltonian_apply(&f, &a), a.scale(&lambda_l));
                    assert_eq!(build_from_top(&f, l, m).unwrap().scale(&fact), a);
                }
            }
        }
    }

    #[test]
    fn factorization_and_shape_invariance_on_basis() {
        for f in representatives() {
            for m in 0..=4 {
                for k in 0..=8 {
                    let g = LayeredFunction::new(m, RationalPoly::monomial(qi(1), k));
                    let fact = hamiltonian_apply(&f, &g);
                    let direct = hamiltonian_direct(&f, &g).unwrap();
                    assert_eq!(fact, direct, "{} m={m} k={k}", f.describe());
                    let lhs = raise_m(&f, &fact);
                    let rhs = hamiltonian_apply(&f, &raise_m(&f, &g));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn norm_chain_examples() {
        let f = hermite();
        assert_eq!(norm_chain(&f, 0, 1.5).unwrap(), vec![1.5]);
        let chain = norm_chain(&f, 2, 3.0).unwrap();
        // λ_2 - λ_1 = 2
        assert_relative_eq!(chain[1], 3.0 / 2f64.sqrt());
        let n20 = associated_norm(&f, 2, 0).unwrap();
        assert_relative_eq!(n20, (PI.sqrt() / 2.0).sqrt(), max_relative = 1e-12);
        assert_relative_eq!(n20, 0.941_396_263_8, epsilon = 1e-9);
    }

    #[test]
    fn norm_chain_matches_direct_quadrature() {
        for f in representatives().into_iter().filter(|f| f.validation() != Validation::Formal) {
            for l in 0..=f.degree_budget().cap(6) {
                let chain = norm_chain(&f, l, top_norm(&f, l).unwrap()).unwrap();
                for m in 0..=l {
                    let a = associated(&f, l, m).unwrap();
                    let direct = inner_product(&f, &a, &a).unwrap().value.sqrt();
                    assert_relative_eq!(chain[l - m], direct, max_relative = 1e-8);
                }
            }
        }
    }

    #[test]
    fn normalized_examples() {
        let f = hermite();
        assert_relative_eq!(normalized_phi(&f, 0, 0, 0.3).unwrap(), PI.powf(-0.25), max_relative = 1e-12);
        assert_relative_eq!(normalized_phi(&f, 0, 0, 0.3).unwrap(), 0.7511255, epsilon = 1e-7);
        assert_relative_eq!(normalized_phi(&f, 1, 0, 1.0).unwrap(), 1.0622519, epsilon = 1e-7);
        assert!(matches!(
            normalized_phi(&laguerre(), 0, 0, -1.0),
            Err(Error::OutOfDomain(..))
        ));
    }
}
