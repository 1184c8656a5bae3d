//! Tanh-sinh (double-exponential) quadrature on finite, semi-infinite and
//! doubly infinite intervals, and the weighted scalar product
//! `⟨f, g⟩ = ∫ f g ρ ds` on layered functions.
//!
//! Every node hands the integrand its distance to each finite endpoint,
//! computed from the complement `1 - |u|` rather than from `x` itself, so
//! integrable endpoint singularities of the weight are resolved down to
//! subnormal distances.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::ladder::{associated, LayeredFunction};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Finest refinement level; the step at level `j` is `2^-j`.
    pub max_level: usize,
    /// Levels always computed before convergence is tested.
    pub min_level: usize,
    pub abs_tol: f64,
    /// Tolerance relative to `∫ |f|`, for integrals far from unit size.
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            max_level: 12,
            min_level: 3,
            abs_tol: 1e-12,
            rel_tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub levels_used: usize,
}

/// A quadrature node: the abscissa and its distances to the two endpoints
/// (infinite for an infinite endpoint).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub from_lo: f64,
    pub from_hi: f64,
}

/// Largest `t` for which the complement `1 - |u|` is still a normal float.
const T_MAX: f64 = 6.0;

/// Node of the `[-1, 1]` rule at `t`: `(u, 1 - |u|, weight)`.
fn tanh_sinh_node(t: f64) -> (f64, f64, f64) {
    let y = FRAC_PI_2 * t.sinh();
    let e = (-2.0 * y.abs()).exp();
    let comp = 2.0 * e / (1.0 + e);
    let u = (1.0 - e) / (1.0 + e) * y.signum();
    // w = (π/2) cosh t / cosh² y, with cosh² y = (1+e)² / (4e)
    let w = FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    (u, comp, w)
}

enum Transform {
    Finite { lo: f64, hi: f64 },
    Upper { lo: f64 },
    Lower { hi: f64 },
    Whole,
}

impl Transform {
    fn new(lo: f64, hi: f64) -> Self {
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => Transform::Finite { lo, hi },
            (true, false) => Transform::Upper { lo },
            (false, true) => Transform::Lower { hi },
            (false, false) => Transform::Whole,
        }
    }

    /// Maps `u` (with complement `comp = 1 - |u|`) to a node and `dx/du`.
    fn map(&self, u: f64, comp: f64) -> (Node, f64) {
        // 1 + u and 1 - u, each at full precision
        let (one_plus, one_minus) = if u < 0.0 {
            (comp, 2.0 - comp)
        } else {
            (2.0 - comp, comp)
        };
        match *self {
            Transform::Finite { lo, hi } => {
                let half = 0.5 * (hi - lo);
                let from_lo = half * one_plus;
                let from_hi = half * one_minus;
                let x = if u < 0.0 { lo + from_lo } else { hi - from_hi };
                (Node { x, from_lo, from_hi }, half)
            }
            Transform::Upper { lo } => {
                // t = (1+u)/2, x = lo + t / (1 - t)
                let r = one_plus / one_minus;
                let jac = 2.0 / (one_minus * one_minus);
                (
                    Node {
                        x: lo + r,
                        from_lo: r,
                        from_hi: f64::INFINITY,
                    },
                    jac,
                )
            }
            Transform::Lower { hi } => {
                // mirror of Upper: x = hi - (1-u)/(1+u)
                let r = one_minus / one_plus;
                let jac = 2.0 / (one_plus * one_plus);
                (
                    Node {
                        x: hi - r,
                        from_lo: f64::INFINITY,
                        from_hi: r,
                    },
                    jac,
                )
            }
            Transform::Whole => {
                // x = u / (1 - u²)
                let d = one_plus * one_minus;
                let jac = (1.0 + u * u) / (d * d);
                (
                    Node {
                        x: u / d,
                        from_lo: f64::INFINITY,
                        from_hi: f64::INFINITY,
                    },
                    jac,
                )
            }
        }
    }
}

/// `∫_lo^hi f` with either endpoint possibly infinite.
pub fn integrate<F>(lo: f64, hi: f64, spec: &QuadratureSpec, f: F) -> Result<IntegralResult>
where
    F: Fn(Node) -> f64,
{
    if !(lo < hi) {
        return Ok(IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            levels_used: 0,
        });
    }
    let transform = Transform::new(lo, hi);
    let eval = |t: f64| -> (f64, f64) {
        let (u, comp, w) = tanh_sinh_node(t);
        if w == 0.0 || comp == 0.0 {
            return (0.0, 0.0);
        }
        let (node, jac) = transform.map(u, comp);
        let scale = w * jac;
        // far out on an infinite end the node weight overflows; the
        // integrand there is below the smallest double anyway
        if !scale.is_finite() {
            return (0.0, 0.0);
        }
        let v = f(node);
        let term = scale * v;
        if v == 0.0 {
            (0.0, 0.0)
        } else {
            (term, term.abs())
        }
    };

    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut prev: Option<f64> = None;
    let mut estimate = f64::INFINITY;
    for level in 0..=spec.max_level {
        let h = 0.5f64.powi(level as i32);
        // level 0 visits every integer k; later levels only odd multiples
        let (start, stride) = if level == 0 { (0usize, 1usize) } else { (1, 2) };
        let mut k = start;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let (a, b) = eval(t);
            sum += a;
            abs_sum += b;
            if k != 0 {
                let (a, b) = eval(-t);
                sum += a;
                abs_sum += b;
            }
            k += stride;
        }
        let value = h * sum;
        let l1 = h * abs_sum;
        if !value.is_finite() {
            return Err(Error::Divergent {
                estimate: f64::INFINITY,
                levels: level,
            });
        }
        if let Some(p) = prev {
            estimate = (value - p).abs();
            if level >= spec.min_level && estimate <= spec.abs_tol.max(spec.rel_tol * l1) {
                return Ok(IntegralResult {
                    value,
                    error_estimate: estimate,
                    levels_used: level,
                });
            }
        }
        prev = Some(value);
    }
    Err(Error::Divergent {
        estimate,
        levels: spec.max_level,
    })
}

/// `∫_a^b σ^m p1 p2 ρ ds` for two functions on the same layer `m`.
pub fn inner_product(
    family: &Family,
    g1: &LayeredFunction,
    g2: &LayeredFunction,
) -> Result<IntegralResult> {
    inner_product_with(family, g1, g2, &QuadratureSpec::default())
}

pub fn inner_product_with(
    family: &Family,
    g1: &LayeredFunction,
    g2: &LayeredFunction,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    if g1.m != g2.m {
        return Err(Error::LayerMismatch(g1.m, g2.m));
    }
    if g1.p.is_zero() || g2.p.is_zero() {
        return Ok(IntegralResult {
            value: 0.0,
            error_estimate: 0.0,
            levels_used: 0,
        });
    }
    let m = g1.m as f64;
    let p1 = g1.p.to_float();
    let p2 = g2.p.to_float();
    let case = family.case();
    let weight = family.weight();
    let iv = family.interval();
    integrate(iv.a.to_f64(), iv.b.to_f64(), spec, |n| {
        let (l1, s1) = p1.ln_abs(n.x);
        let (l2, s2) = p2.ln_abs(n.x);
        if s1 == 0.0 || s2 == 0.0 {
            return 0.0;
        }
        let ln_sigma = if m == 0.0 {
            0.0
        } else {
            m * case.ln_sigma(n.x, n.from_lo, n.from_hi)
        };
        let ln = weight.ln_weight(n.x, n.from_lo, n.from_hi) + ln_sigma + l1 + l2;
        s1 * s2 * ln.exp()
    })
}

/// Matrix of `⟨Φ_{l,m}, Φ_{k,m}⟩` for `l, k = m..=l_max`.
pub fn gram_matrix(family: &Family, m: usize, l_max: usize) -> Result<Vec<Vec<f64>>> {
    if m > l_max {
        return Err(Error::InvalidIndex(format!("m = {m} > l_max = {l_max}")));
    }
    let funcs = (m..=l_max)
        .map(|l| associated(family, l, m))
        .collect::<Result<Vec<_>>>()?;
    let n = funcs.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = inner_product(family, &funcs[i], &funcs[j])?.value;
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SigmaCase;
    use crate::polycore::{qi, RationalPoly};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn finite_interval_with_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2, using the exact distance to 0
        let r = integrate(0.0, 1.0, &spec(), |n| n.from_lo.powf(-0.5)).unwrap();
        assert_relative_eq!(r.value, 2.0, epsilon = 1e-12);
        // ∫_{-1}^{1} (1-x)^{-0.9} dx = 2^{0.1}/0.1
        let r = integrate(-1.0, 1.0, &spec(), |n| n.from_hi.powf(-0.9)).unwrap();
        assert_relative_eq!(r.value, 2f64.powf(0.1) / 0.1, max_relative = 1e-11);
    }

    #[test]
    fn infinite_intervals() {
        let r = integrate(f64::NEG_INFINITY, f64::INFINITY, &spec(), |n| (-n.x * n.x).exp()).unwrap();
        assert_relative_eq!(r.value, PI.sqrt(), epsilon = 1e-12);
        let r = integrate(0.0, f64::INFINITY, &spec(), |n| (-n.x).exp()).unwrap();
        assert_relative_eq!(r.value, 1.0, epsilon = 1e-12);
        let r = integrate(f64::NEG_INFINITY, 0.0, &spec(), |n| 1.0 / (1.0 + n.x * n.x)).unwrap();
        assert_relative_eq!(r.value, PI / 2.0, epsilon = 1e-12);
        assert!(r.error_estimate >= 0.0);
    }

    #[test]
    fn non_integrable_is_divergent() {
        let r = integrate(0.0, 1.0, &spec(), |n| 1.0 / n.from_lo);
        assert!(matches!(r, Err(Error::Divergent { .. })));
    }

    #[test]
    fn hermite_like_products() {
        let f = Family::new(SigmaCase::One, qi(-2), qi(0)).unwrap();
        let phi = |l| associated(&f, l, 0).unwrap();
        let r = inner_product(&f, &phi(0), &phi(0)).unwrap();
        assert_relative_eq!(r.value, PI.sqrt(), epsilon = 1e-12);
        let r = inner_product(&f, &phi(1), &phi(2)).unwrap();
        assert!(r.value.abs() < 1e-12);
        let g = gram_matrix(&f, 0, 2).unwrap();
        let sp = PI.sqrt();
        for (i, d) in [sp, sp / 2.0, sp / 2.0].iter().enumerate() {
            assert_relative_eq!(g[i][i], d, max_relative = 1e-12);
        }
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(g[i][j].abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn legendre_like_unit_weight() {
        let f = Family::new_power_weight(SigmaCase::OneMinusS2, qi(-2), qi(0)).unwrap();
        let one = LayeredFunction::new(0, RationalPoly::one());
        assert_relative_eq!(inner_product(&f, &one, &one).unwrap().value, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn layer_mismatch() {
        let f = Family::new(SigmaCase::One, qi(-2), qi(0)).unwrap();
        let a = LayeredFunction::new(0, RationalPoly::one());
        let b = LayeredFunction::new(1, RationalPoly::one());
        assert_eq!(inner_product(&f, &a, &b), Err(Error::LayerMismatch(0, 1)));
    }

    #[test]
    fn single_entry_gram() {
        let f = Family::new(SigmaCase::S, qi(-1), qi(1)).unwrap();
        let g = gram_matrix(&f, 3, 3).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g[0][0] > 0.0);
    }

    #[test]
    fn finite_family_gram_is_diagonal() {
        let f = Family::new(SigmaCase::S2, qi(-10), qi(1)).unwrap();
        let g = gram_matrix(&f, 0, 5).unwrap();
        for i in 0..6 {
            assert!(g[i][i] > 0.0);
            for j in 0..6 {
                if i != j {
                    let rel = g[i][j].abs() / (g[i][i] * g[j][j]).sqrt();
                    assert!(rel < 1e-10, "({i},{j}) -> {rel:e}");
                }
            }
        }
    }

    #[test]
    fn refinement_is_stable() {
        let f = Family::new(SigmaCase::S, qi(-1), qi(1)).unwrap();
        let a = associated(&f, 2, 0).unwrap();
        let base = inner_product(&f, &a, &a).unwrap();
        let finer = QuadratureSpec {
            min_level: base.levels_used + 2,
            max_level: 24,
            ..spec()
        };
        let fine = inner_product_with(&f, &a, &a, &finer).unwrap();
        assert!((fine.value - base.value).abs() < 10.0 * spec().abs_tol);
    }
}
