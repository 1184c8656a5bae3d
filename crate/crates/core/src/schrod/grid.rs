//! Sample grids in `x`.
//!
//! A finite end of the domain is inset by `10⁻³` of the window width. An
//! infinite end is cut where the envelope of `|Ψ|` drops below `10⁻¹⁴` of
//! its maximum. Nodes are Chebyshev points of the first kind on the
//! window; for odd `n` the middle node is exactly the window midpoint.

use std::f64::consts::PI;

use super::CoordinateMap;

/// `ln(10¹⁴)`.
const DROP: f64 = 32.236_191_301_916_64;
const INSET: f64 = 1e-3;
/// Infinite ends are never cut beyond `|x| = X_CAP`, which keeps `cosh x`
/// and its square finite when `Ψ` does not decay.
pub const X_CAP: f64 = 300.0;

/// Anchor from which the infinite ends are searched.
fn anchor(lo: f64, hi: f64) -> f64 {
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 1.0,
        (false, true) => hi - 1.0,
        (false, false) => 0.0,
    }
}

/// Last point (at float resolution) between `inside` and `outside` where
/// `env >= level`, assuming `env(inside) >= level > env(outside)`.
fn bisect(env: &impl Fn(f64) -> f64, level: f64, mut inside: f64, mut outside: f64) -> f64 {
    loop {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            return inside;
        }
        if env(mid) >= level {
            inside = mid;
        } else {
            outside = mid;
        }
    }
}

/// Walks from `start` in direction `dir` with doubling steps until `env`
/// has dropped by [`DROP`] below the running maximum. Returns the last
/// point above the threshold and the first point below it.
fn bracket(env: &impl Fn(f64) -> f64, start: f64, dir: f64, gmax: &mut f64) -> (f64, f64) {
    let mut prev = start;
    let mut step = 0.25;
    for _ in 0..80 {
        let x = (start + dir * step).clamp(-X_CAP, X_CAP);
        let g = env(x);
        if g > *gmax {
            *gmax = g;
        }
        if g < *gmax - DROP || !g.is_finite() || x.abs() == X_CAP {
            return (prev, x);
        }
        prev = x;
        step *= 2.0;
    }
    (prev, prev)
}

/// Truncated window `[A, B]` for the envelope `env = ln|Ψ|` (an upper
/// bound without zeros).
pub fn window(map: &CoordinateMap, env: impl Fn(f64) -> f64) -> (f64, f64) {
    let (lo, hi) = map.x_domain;
    let c = anchor(lo, hi);
    let mut gmax = env(c);
    let up = (!hi.is_finite()).then(|| bracket(&env, c, 1.0, &mut gmax));
    let down = (!lo.is_finite()).then(|| bracket(&env, c, -1.0, &mut gmax));

    // refine the maximum on a dense scan, then settle each cut exactly
    let rough_hi = up.map_or(hi, |(_, out)| out);
    let rough_lo = down.map_or(lo, |(_, out)| out);
    let (mut arg, mut best) = (c, gmax);
    let n = 512;
    for i in 1..n {
        let x = rough_lo + (rough_hi - rough_lo) * i as f64 / n as f64;
        let g = env(x);
        if g > best {
            best = g;
            arg = x;
        }
    }
    let level = best - DROP;
    // a cut at the cap means |Ψ| never dropped far enough
    let settle = |out: f64| {
        if out.abs() == X_CAP && env(out) >= level {
            out
        } else {
            bisect(&env, level, arg, out)
        }
    };
    let b = up.map_or(hi, |(_, out)| settle(out));
    let a = down.map_or(lo, |(_, out)| settle(out));
    let width = b - a;
    let a = if lo.is_finite() { lo + INSET * width } else { a };
    let b = if hi.is_finite() { hi - INSET * width } else { b };
    (a, b)
}

/// `n` Chebyshev nodes on `[a, b]`, ascending.
pub fn chebyshev(a: f64, b: f64, n: usize) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    // upper half mirrors the lower half so symmetric windows give symmetric nodes
    let offset = |i: usize| half * (PI * (2 * i + 1) as f64 / (2 * n) as f64).cos();
    (0..n)
        .map(|i| {
            if n % 2 == 1 && 2 * i + 1 == n {
                mid
            } else if 2 * i < n {
                mid - offset(i)
            } else {
                mid + offset(n - 1 - i)
            }
        })
        .collect()
}

pub fn chebyshev_window(map: &CoordinateMap, n: usize, env: impl Fn(f64) -> f64) -> Vec<f64> {
    let (a, b) = window(map, env);
    chebyshev(a, b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::SigmaCase;
    use crate::schrod::coordinate_map;

    #[test]
    fn gaussian_window_is_symmetric() {
        let map = coordinate_map(SigmaCase::One);
        let (a, b) = window(&map, |x| -x * x / 2.0);
        assert_eq!(a, -b);
        // e^{-x²/2} = 1e-14 at x = √(2 ln 1e14)
        assert!((b - (2.0 * DROP).sqrt()).abs() < 1e-12);
        let nodes = chebyshev(a, b, 5);
        assert_eq!(nodes[2], 0.0);
        assert_eq!(nodes[0], -nodes[4]);
        assert_eq!(nodes[1], -nodes[3]);
        assert!(nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn finite_ends_are_inset() {
        let map = coordinate_map(SigmaCase::OneMinusS2);
        let (a, b) = window(&map, |x| x.sin().ln());
        assert!((a - PI * INSET).abs() < 1e-15);
        assert!((b - PI * (1.0 - INSET)).abs() < 1e-15);
        let map = coordinate_map(SigmaCase::S);
        let (a, b) = window(&map, |x| x.ln() - x);
        assert!(a > 0.0 && b > 30.0);
    }
}
