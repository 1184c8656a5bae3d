use std::f64::consts::PI;

use serde::Serialize;

use crate::family::SigmaCase;
use crate::jet::Jet;

/// The change of variable `s = s(x)` with `ds/dx = sign·κ(s(x))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordinateMap {
    pub case: SigmaCase,
    pub sign: f64,
    pub x_domain: (f64, f64),
}

pub fn coordinate_map(case: SigmaCase) -> CoordinateMap {
    use SigmaCase::*;
    let inf = f64::INFINITY;
    let (sign, x_domain) = match case {
        One | S2 | S2Plus1 => (1.0, (-inf, inf)),
        S | S2Minus1 => (1.0, (0.0, inf)),
        OneMinusS2 => (-1.0, (0.0, PI)),
    };
    CoordinateMap { case, sign, x_domain }
}

impl CoordinateMap {
    pub fn contains(&self, x: f64) -> bool {
        x > self.x_domain.0 && x < self.x_domain.1
    }

    pub fn domain_string(&self) -> String {
        let show = |v: f64| {
            if v.is_infinite() {
                if v > 0.0 { "inf".to_string() } else { "-inf".to_string() }
            } else if v == PI {
                "pi".to_string()
            } else {
                v.to_string()
            }
        };
        format!("({}, {})", show(self.x_domain.0), show(self.x_domain.1))
    }

    pub fn s_of_x(&self, x: f64) -> f64 {
        use SigmaCase::*;
        match self.case {
            One => x,
            S => x * x / 4.0,
            OneMinusS2 => x.cos(),
            S2Minus1 => x.cosh(),
            S2 => x.exp(),
            S2Plus1 => x.sinh(),
        }
    }

    pub fn x_of_s(&self, s: f64) -> f64 {
        use SigmaCase::*;
        match self.case {
            One => s,
            S => 2.0 * s.sqrt(),
            OneMinusS2 => s.acos(),
            S2Minus1 => s.acosh(),
            S2 => s.ln(),
            S2Plus1 => s.asinh(),
        }
    }

    /// `sign·κ(s(x))`.
    pub fn ds_dx(&self, x: f64) -> f64 {
        self.sign * self.kappa_jet(&Jet::variable(x, 0)).value()
    }

    pub fn s_jet(&self, x: &Jet) -> Jet {
        use SigmaCase::*;
        match self.case {
            One => x.clone(),
            S => (x * x).scale(0.25),
            OneMinusS2 => x.cos(),
            S2Minus1 => x.cosh(),
            S2 => x.exp(),
            S2Plus1 => x.sinh(),
        }
    }

    /// `κ(s(x))`, in the form that stays accurate where σ vanishes.
    pub fn kappa_jet(&self, x: &Jet) -> Jet {
        use SigmaCase::*;
        match self.case {
            One => Jet::constant(x.anchor(), 1.0, x.order()),
            S => x.scale(0.5),
            OneMinusS2 => x.sin(),
            S2Minus1 => x.sinh(),
            S2 => x.exp(),
            S2Plus1 => x.cosh(),
        }
    }

    /// `dκ/ds = σ'/(2κ)` at `s(x)`.
    pub fn dkappa_jet(&self, x: &Jet) -> Jet {
        use SigmaCase::*;
        match self.case {
            One => Jet::constant(x.anchor(), 0.0, x.order()),
            S => x.recip(),
            OneMinusS2 => {
                let (s, c) = x.sin_cos();
                -(c / s)
            }
            S2Minus1 => {
                let (s, c) = x.sinh_cosh();
                c / s
            }
            S2 => Jet::constant(x.anchor(), 1.0, x.order()),
            S2Plus1 => {
                let (s, c) = x.sinh_cosh();
                s / c
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn catalogue_maps() {
        assert_relative_eq!(coordinate_map(SigmaCase::S).x_of_s(1.0), 2.0);
        assert_eq!(coordinate_map(SigmaCase::S2).s_of_x(0.0), 1.0);
        assert_eq!(coordinate_map(SigmaCase::OneMinusS2).sign, -1.0);
        assert_eq!(coordinate_map(SigmaCase::One).domain_string(), "(-inf, inf)");
        assert_eq!(coordinate_map(SigmaCase::OneMinusS2).domain_string(), "(0, pi)");
    }

    #[test]
    fn derivative_matches_sign_kappa() {
        for case in SigmaCase::ALL {
            let map = coordinate_map(case);
            for x in [0.3, 0.9, 1.7, 2.5] {
                let h = 1e-5;
                let fd = (map.s_of_x(x + h) - map.s_of_x(x - h)) / (2.0 * h);
                assert_relative_eq!(map.ds_dx(x), fd, max_relative = 1e-9);
                assert_relative_eq!(map.x_of_s(map.s_of_x(x)), x, max_relative = 1e-12);
                let jet = map.s_jet(&Jet::variable(x, 1));
                assert_relative_eq!(jet.derivative_at(1), map.ds_dx(x), max_relative = 1e-14);
                // dκ/ds through the chain rule
                let k = map.kappa_jet(&Jet::variable(x, 1));
                let dk = map.dkappa_jet(&Jet::variable(x, 0)).value();
                assert_relative_eq!(k.derivative_at(1), dk * map.ds_dx(x), max_relative = 1e-12, epsilon = 1e-14);
            }
        }
    }
}
