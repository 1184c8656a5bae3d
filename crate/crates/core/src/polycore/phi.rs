use num_traits::{One, Zero};

use super::{qi, Rational, RationalPoly};
use crate::error::{Error, Result};
use crate::family::Family;

/// The monic degree-`l` polynomial solution of
/// `σ Φ'' + τ Φ' + λ_l Φ = 0`.
///
/// Coefficients come from the downward recurrence
/// `(λ_l - λ_j) c_j = -[(j+1)(σ1 j + β) c_{j+1} + σ0 (j+2)(j+1) c_{j+2}]`
/// starting at `c_l = 1`.
pub fn generate_phi(family: &Family, l: usize) -> Result<RationalPoly> {
    family.check_index(l)?;
    let (s0, s1, _) = family.case().sigma_coeffs();
    let (s0, s1) = (qi(s0), qi(s1));
    let beta = family.beta();
    let lambda_l = family.eigenvalue(l);

    let mut c = vec![Rational::zero(); l + 3];
    c[l] = Rational::one();
    for j in (0..l).rev() {
        let gap = &lambda_l - family.eigenvalue(j);
        if gap.is_zero() {
            return Err(Error::DegenerateEigenvalue { l, j });
        }
        let jq = qi(j as i64);
        let rhs = qi(j as i64 + 1) * (&s1 * &jq + beta) * &c[j + 1]
            + &s0 * qi(j as i64 + 2) * qi(j as i64 + 1) * &c[j + 2];
        c[j] = -rhs / gap;
    }
    c.truncate(l + 1);
    Ok(RationalPoly::from_coeffs(c))
}
