//! The six canonical hypergeometric-type equations
//! `σ(s) y'' + τ(s) y' + λ y = 0` with `τ(s) = α s + β`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{q, qi, rational_to_f64, Rational, RationalPoly};

/// Which of the six canonical `σ` polynomials the equation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SigmaCase {
    /// `σ = 1`
    One,
    /// `σ = s`
    S,
    /// `σ = 1 - s²`
    OneMinusS2,
    /// `σ = s² - 1`
    S2Minus1,
    /// `σ = s²`
    S2,
    /// `σ = s² + 1`
    S2Plus1,
}

impl SigmaCase {
    pub const ALL: [SigmaCase; 6] = [
        SigmaCase::One,
        SigmaCase::S,
        SigmaCase::OneMinusS2,
        SigmaCase::S2Minus1,
        SigmaCase::S2,
        SigmaCase::S2Plus1,
    ];

    /// `(σ0, σ1, σ2)` with `σ(s) = σ2 s² + σ1 s + σ0`.
    pub fn sigma_coeffs(self) -> (i64, i64, i64) {
        match self {
            SigmaCase::One => (1, 0, 0),
            SigmaCase::S => (0, 1, 0),
            SigmaCase::OneMinusS2 => (1, 0, -1),
            SigmaCase::S2Minus1 => (-1, 0, 1),
            SigmaCase::S2 => (0, 0, 1),
            SigmaCase::S2Plus1 => (1, 0, 1),
        }
    }

    pub fn sigma(self) -> RationalPoly {
        let (s0, s1, s2) = self.sigma_coeffs();
        RationalPoly::from_ints(&[s0, s1, s2])
    }

    pub fn sigma_f64(self, s: f64) -> f64 {
        let (s0, s1, s2) = self.sigma_coeffs();
        (s2 as f64 * s + s1 as f64) * s + s0 as f64
    }

    /// `σ'(s)`.
    pub fn sigma_prime_f64(self, s: f64) -> f64 {
        let (_, s1, s2) = self.sigma_coeffs();
        2.0 * s2 as f64 * s + s1 as f64
    }

    /// `ln σ(s)` using the endpoint distances `from_a = s - a`,
    /// `from_b = b - s` wherever σ vanishes at a finite endpoint.
    pub fn ln_sigma(self, s: f64, from_a: f64, from_b: f64) -> f64 {
        match self {
            SigmaCase::One => 0.0,
            SigmaCase::S => from_a.ln(),
            SigmaCase::OneMinusS2 => from_a.ln() + from_b.ln(),
            SigmaCase::S2Minus1 => from_a.ln() + (s + 1.0).ln(),
            SigmaCase::S2 => 2.0 * from_a.ln(),
            SigmaCase::S2Plus1 => (s * s).ln_1p(),
        }
    }

    /// Whether the polynomial system is infinite (`Λ = ∞`).
    pub fn is_infinite(self) -> bool {
        matches!(self, SigmaCase::One | SigmaCase::S | SigmaCase::OneMinusS2)
    }

    pub fn tag(self) -> &'static str {
        match self {
            SigmaCase::One => "one",
            SigmaCase::S => "s",
            SigmaCase::OneMinusS2 => "one-minus-s2",
            SigmaCase::S2Minus1 => "s2-minus-1",
            SigmaCase::S2 => "s2",
            SigmaCase::S2Plus1 => "s2-plus-1",
        }
    }

    pub fn sigma_formula(self) -> &'static str {
        match self {
            SigmaCase::One => "1",
            SigmaCase::S => "s",
            SigmaCase::OneMinusS2 => "1-s^2",
            SigmaCase::S2Minus1 => "s^2-1",
            SigmaCase::S2 => "s^2",
            SigmaCase::S2Plus1 => "s^2+1",
        }
    }

    /// Interval `(a, b)` on which `σ > 0` and the weight lives.
    pub fn interval(self) -> Interval {
        use Endpoint::*;
        let (a, b) = match self {
            SigmaCase::One | SigmaCase::S2Plus1 => (NegInfinity, PosInfinity),
            SigmaCase::S | SigmaCase::S2 => (Finite(0), PosInfinity),
            SigmaCase::OneMinusS2 => (Finite(-1), Finite(1)),
            SigmaCase::S2Minus1 => (Finite(1), PosInfinity),
        };
        Interval { a, b }
    }
}

impl fmt::Display for SigmaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SigmaCase {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm = s.to_ascii_lowercase().replace(['_', ' '], "-");
        Ok(match norm.as_str() {
            "one" | "1" => SigmaCase::One,
            "s" => SigmaCase::S,
            "one-minus-s2" | "1-s^2" | "1-s2" => SigmaCase::OneMinusS2,
            "s2-minus-1" | "s^2-1" | "s2-1" => SigmaCase::S2Minus1,
            "s2" | "s^2" => SigmaCase::S2,
            "s2-plus-1" | "s^2+1" | "s2+1" => SigmaCase::S2Plus1,
            _ => return Err(format!("unknown sigma case `{s}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    NegInfinity,
    Finite(i64),
    PosInfinity,
}

impl Endpoint {
    pub fn to_f64(self) -> f64 {
        match self {
            Endpoint::NegInfinity => f64::NEG_INFINITY,
            Endpoint::Finite(v) => v as f64,
            Endpoint::PosInfinity => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub a: Endpoint,
    pub b: Endpoint,
}

impl Interval {
    pub fn contains(&self, s: f64) -> bool {
        s > self.a.to_f64() && s < self.b.to_f64()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: Endpoint| match e {
            Endpoint::NegInfinity => "-inf".to_string(),
            Endpoint::PosInfinity => "inf".to_string(),
            Endpoint::Finite(v) => v.to_string(),
        };
        write!(f, "({}, {})", show(self.a), show(self.b))
    }
}

/// `Λ`: the bound below which polynomial indices are admissible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cutoff {
    Infinite,
    Finite(Rational),
}

impl Cutoff {
    pub fn admits(&self, l: usize) -> bool {
        match self {
            Cutoff::Infinite => true,
            Cutoff::Finite(c) => &qi(l as i64) < c,
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Infinite => f.write_str("inf"),
            Cutoff::Finite(c) => write!(f, "{c}"),
        }
    }
}

/// Largest admissible polynomial index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeBudget {
    Infinite,
    Max(usize),
}

impl DegreeBudget {
    /// `min(cap, L)`.
    pub fn cap(self, cap: usize) -> usize {
        match self {
            DegreeBudget::Infinite => cap,
            DegreeBudget::Max(l) => l.min(cap),
        }
    }
}

/// Closed-form weight `ρ` for each row of the table of cases.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `exp(c2 s² + c1 s)`
    Gaussian { c2: Rational, c1: Rational },
    /// `s^p exp(r s)`
    Gamma { p: Rational, r: Rational },
    /// `(1+s)^p (1-s)^q`
    Jacobi { p: Rational, q: Rational },
    /// `(s+1)^p (s-1)^q`
    HyperbolicJacobi { p: Rational, q: Rational },
    /// `s^p exp(c / s)`
    InverseGamma { p: Rational, c: Rational },
    /// `(1+s²)^p exp(c atan s)`
    Romanovski { p: Rational, c: Rational },
}

impl WeightSpec {
    fn for_case(case: SigmaCase, alpha: &Rational, beta: &Rational) -> Self {
        let half = q(1, 2);
        let one = Rational::one();
        match case {
            SigmaCase::One => WeightSpec::Gaussian {
                c2: alpha * &half,
                c1: beta.clone(),
            },
            SigmaCase::S => WeightSpec::Gamma {
                p: beta - &one,
                r: alpha.clone(),
            },
            SigmaCase::OneMinusS2 => WeightSpec::Jacobi {
                p: -(alpha - beta) * &half - &one,
                q: -(alpha + beta) * &half - &one,
            },
            SigmaCase::S2Minus1 => WeightSpec::HyperbolicJacobi {
                p: (alpha - beta) * &half - &one,
                q: (alpha + beta) * &half - &one,
            },
            SigmaCase::S2 => WeightSpec::InverseGamma {
                p: alpha - qi(2),
                c: -beta,
            },
            SigmaCase::S2Plus1 => WeightSpec::Romanovski {
                p: alpha * &half - &one,
                c: beta.clone(),
            },
        }
    }

    /// `ln ρ(s)`. `from_a = s - a` and `from_b = b - s` carry the distances
    /// to finite endpoints at full precision; they are ignored for infinite
    /// endpoints.
    pub fn ln_weight(&self, s: f64, from_a: f64, from_b: f64) -> f64 {
        let f = rational_to_f64;
        match self {
            WeightSpec::Gaussian { c2, c1 } => f(c2) * s * s + f(c1) * s,
            WeightSpec::Gamma { p, r } => xlny(f(p), from_a) + f(r) * s,
            WeightSpec::Jacobi { p, q } => xlny(f(p), from_a) + xlny(f(q), from_b),
            WeightSpec::HyperbolicJacobi { p, q } => xlny(f(p), s + 1.0) + xlny(f(q), from_a),
            WeightSpec::InverseGamma { p, c } => xlny(f(p), from_a) + f(c) / from_a,
            WeightSpec::Romanovski { p, c } => f(p) * (s * s).ln_1p() + f(c) * s.atan(),
        }
    }

    /// Human-readable formula.
    pub fn formula(&self) -> String {
        match self {
            WeightSpec::Gaussian { c2, c1 } => {
                exp_factor(&RationalPoly::from_coeffs(vec![Rational::zero(), c1.clone(), c2.clone()]))
                    .unwrap_or_else(|| "1".into())
            }
            WeightSpec::Gamma { p, r } => product(vec![
                power_factor("s", p),
                exp_factor(&RationalPoly::monomial(r.clone(), 1)),
            ]),
            WeightSpec::Jacobi { p, q } => {
                product(vec![power_factor("(1+s)", p), power_factor("(1-s)", q)])
            }
            WeightSpec::HyperbolicJacobi { p, q } => {
                product(vec![power_factor("(s+1)", p), power_factor("(s-1)", q)])
            }
            WeightSpec::InverseGamma { p, c } => {
                let e = if c.is_zero() {
                    None
                } else {
                    Some(format!("exp({})", scaled(c, "/s")))
                };
                product(vec![power_factor("s", p), e])
            }
            WeightSpec::Romanovski { p, c } => {
                let e = if c.is_zero() {
                    None
                } else {
                    Some(format!("exp({})", scaled(c, "*atan(s)")))
                };
                product(vec![power_factor("(1+s^2)", p), e])
            }
        }
    }
}

/// `x ln y` with the convention `0 ln 0 = 0`.
fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}

fn power_factor(base: &str, p: &Rational) -> Option<String> {
    if p.is_zero() {
        None
    } else if p.is_one() {
        Some(base.to_string())
    } else if p.is_integer() && p.is_positive() {
        Some(format!("{base}^{p}"))
    } else {
        Some(format!("{base}^({p})"))
    }
}

fn exp_factor(arg: &RationalPoly) -> Option<String> {
    (!arg.is_zero()).then(|| format!("exp({arg})"))
}

fn scaled(c: &Rational, what: &str) -> String {
    let tail = what.trim_start_matches('*');
    if c.is_one() {
        if what.starts_with('/') {
            format!("1{what}")
        } else {
            tail.to_string()
        }
    } else if (-c).is_one() {
        if what.starts_with('/') {
            format!("-1{what}")
        } else {
            format!("-{tail}")
        }
    } else {
        format!("{c}{what}")
    }
}

fn product(factors: Vec<Option<String>>) -> String {
    let parts: Vec<String> = factors.into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// How strictly [`Family::build`] checks the table inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Validation {
    /// Only the parameter region of the table of cases.
    Strict,
    /// Additionally admits the `ρ = σ^k` rows used by the γ-shifted
    /// operators (`α = 0` for `σ = s`, `β = 0` elsewhere).
    PowerWeight,
    /// No inequality checks beyond `Λ > 0`. For purely algebraic identities
    /// (the polynomial ODE, the ladder algebra) that do not depend on the
    /// weight being integrable.
    Formal,
}

/// One validated hypergeometric-type equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    case: SigmaCase,
    alpha: Rational,
    beta: Rational,
    validation: Validation,
    weight: WeightSpec,
    cutoff: Cutoff,
}

impl Family {
    /// Strictly validated family.
    pub fn new(case: SigmaCase, alpha: Rational, beta: Rational) -> Result<Self> {
        Self::build(case, alpha, beta, Validation::Strict)
    }

    /// Family admitting the `ρ = σ^k` rows as well.
    pub fn new_power_weight(case: SigmaCase, alpha: Rational, beta: Rational) -> Result<Self> {
        Self::build(case, alpha, beta, Validation::PowerWeight)
    }

    pub fn build(
        case: SigmaCase,
        alpha: Rational,
        beta: Rational,
        validation: Validation,
    ) -> Result<Self> {
        let cutoff = if case.is_infinite() {
            Cutoff::Infinite
        } else {
            Cutoff::Finite((Rational::one() - &alpha) / qi(2))
        };
        let strict = strict_constraint(case, &alpha, &beta);
        match validation {
            Validation::Strict => strict?,
            Validation::PowerWeight => {
                if let Err(Error::ParameterConstraintViolated(msg)) = strict {
                    if power_weight_row(case, &alpha, &beta).is_none() {
                        return Err(Error::ParameterConstraintViolated(format!(
                            "{msg} (and no power-weight row: {})",
                            power_row_description(case)
                        )));
                    }
                }
                if let Some(msg) = power_row_sanity(case, &alpha, &beta) {
                    return Err(Error::ParameterConstraintViolated(msg));
                }
            }
            Validation::Formal => {}
        }
        if let Cutoff::Finite(c) = &cutoff {
            if !c.is_positive() {
                return Err(Error::ParameterConstraintViolated(
                    "(1-alpha)/2 > 0".to_string(),
                ));
            }
        }
        let weight = WeightSpec::for_case(case, &alpha, &beta);
        Ok(Self {
            case,
            alpha,
            beta,
            validation,
            weight,
            cutoff,
        })
    }

    pub fn case(&self) -> SigmaCase {
        self.case
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn alpha_f64(&self) -> f64 {
        rational_to_f64(&self.alpha)
    }

    pub fn beta_f64(&self) -> f64 {
        rational_to_f64(&self.beta)
    }

    pub fn validation(&self) -> Validation {
        self.validation
    }

    pub fn interval(&self) -> Interval {
        self.case.interval()
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    pub fn cutoff(&self) -> &Cutoff {
        &self.cutoff
    }

    pub fn sigma(&self) -> RationalPoly {
        self.case.sigma()
    }

    /// `τ(s) = α s + β`.
    pub fn tau(&self) -> RationalPoly {
        RationalPoly::linear(self.alpha.clone(), self.beta.clone())
    }

    pub fn tau_f64(&self, s: f64) -> f64 {
        self.alpha_f64() * s + self.beta_f64()
    }

    /// `σ''/2`.
    pub fn half_sigma_second(&self) -> Rational {
        qi(self.case.sigma_coeffs().2)
    }

    /// `λ_l = -(σ''/2) l (l-1) - α l`.
    pub fn eigenvalue(&self, l: usize) -> Rational {
        let l = qi(l as i64);
        -(self.half_sigma_second() * &l * (&l - Rational::one())) - &self.alpha * &l
    }

    pub fn eigenvalue_f64(&self, l: usize) -> f64 {
        rational_to_f64(&self.eigenvalue(l))
    }

    /// `L = max{l | l < Λ}`, or infinite.
    pub fn degree_budget(&self) -> DegreeBudget {
        match &self.cutoff {
            Cutoff::Infinite => DegreeBudget::Infinite,
            Cutoff::Finite(c) => {
                // Largest integer strictly below c (c > 0 is guaranteed).
                let fl = c.floor();
                let l = if &fl == c { fl - Rational::one() } else { fl };
                DegreeBudget::Max(l.to_integer().try_into().unwrap_or(0))
            }
        }
    }

    pub fn check_index(&self, l: usize) -> Result<()> {
        if self.cutoff.admits(l) {
            Ok(())
        } else {
            Err(Error::IndexBeyondCutoff {
                l,
                cutoff: self.cutoff.to_string(),
            })
        }
    }

    /// `ρ(s)` at an interior point.
    pub fn weight_at(&self, s: f64) -> Result<f64> {
        let iv = self.interval();
        if !iv.contains(s) {
            return Err(Error::OutOfDomain(s, iv.to_string()));
        }
        let from_a = s - iv.a.to_f64();
        let from_b = iv.b.to_f64() - s;
        Ok(self.weight.ln_weight(s, from_a, from_b).exp())
    }

    /// `k` with `ρ = σ^k`, when the parameters match a power-weight row.
    pub fn power_weight_exponent(&self) -> Option<Rational> {
        power_weight_row(self.case, &self.alpha, &self.beta)
    }

    /// Human-readable summary used by the CLI.
    pub fn describe(&self) -> String {
        format!(
            "sigma = {}, tau = {}, rho = {}, interval = {}, Lambda = {}",
            self.case.sigma_formula(),
            self.tau(),
            self.weight.formula(),
            self.interval(),
            self.cutoff
        )
    }
}

fn violated(msg: &str) -> Result<()> {
    Err(Error::ParameterConstraintViolated(msg.to_string()))
}

fn strict_constraint(case: SigmaCase, alpha: &Rational, beta: &Rational) -> Result<()> {
    let zero = Rational::zero();
    match case {
        SigmaCase::One | SigmaCase::S2Plus1 => {
            if alpha >= &zero {
                return violated("alpha < 0");
            }
        }
        SigmaCase::S | SigmaCase::S2 => {
            if alpha >= &zero {
                return violated("alpha < 0");
            }
            if beta <= &zero {
                return violated("beta > 0");
            }
        }
        SigmaCase::OneMinusS2 => {
            if !(alpha < beta && beta < &-alpha) {
                return violated("alpha < beta < -alpha");
            }
        }
        SigmaCase::S2Minus1 => {
            if !(&-beta < alpha && alpha < &zero) {
                return violated("-beta < alpha < 0");
            }
        }
    }
    Ok(())
}

fn power_weight_row(case: SigmaCase, alpha: &Rational, beta: &Rational) -> Option<Rational> {
    let one = Rational::one();
    match case {
        SigmaCase::One => None,
        SigmaCase::S => alpha.is_zero().then(|| beta - &one),
        SigmaCase::OneMinusS2 => beta.is_zero().then(|| -alpha / qi(2) - &one),
        SigmaCase::S2Minus1 | SigmaCase::S2 | SigmaCase::S2Plus1 => {
            beta.is_zero().then(|| alpha / qi(2) - &one)
        }
    }
}

fn power_row_description(case: SigmaCase) -> &'static str {
    match case {
        SigmaCase::One => "none for sigma = 1",
        SigmaCase::S => "alpha = 0, beta > 0",
        _ => "beta = 0, alpha < 0",
    }
}

/// Minimal requirements on a power-weight row: a positive weight exponent
/// sign pattern that still leaves a non-empty index range.
fn power_row_sanity(case: SigmaCase, alpha: &Rational, beta: &Rational) -> Option<String> {
    power_weight_row(case, alpha, beta)?;
    match case {
        SigmaCase::S if !beta.is_positive() => Some("beta > 0".into()),
        SigmaCase::OneMinusS2 | SigmaCase::S2Minus1 | SigmaCase::S2 | SigmaCase::S2Plus1
            if !alpha.is_negative() =>
        {
            Some("alpha < 0".into())
        }
        _ => None,
    }
}
