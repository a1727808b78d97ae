use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Rational rotation angle `θ = p/q` in lowest terms, `0 ≤ θ < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RationalAngle {
    p: u32,
    q: u32,
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { p: 0, q: 1 };

    /// Requires `gcd(p, q) = 1` and `p < q` (with `0/1` for θ = 0).
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return invalid("angle denominator must be positive");
        }
        if p >= q && !(p == 0 && q == 1) {
            return invalid(format!("angle {p}/{q} is not in [0, 1)"));
        }
        if p.gcd(&q) != 1 {
            return invalid(format!("angle {p}/{q} is not in lowest terms"));
        }
        Ok(RationalAngle { p, q })
    }

    /// Reduces `p/q` modulo 1 to lowest terms.
    pub fn reduced(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return invalid("angle denominator must be positive");
        }
        let p = p % q;
        let g = p.gcd(&q);
        Ok(RationalAngle { p: p / g, q: q / g })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn theta(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// `1 - θ`, reduced modulo 1.
    pub fn reflect(&self) -> Self {
        RationalAngle::reduced(self.q - self.p, self.q).expect("q > 0")
    }

    /// `2π·(k·θ mod 1)`, computed from the exact residue `k·p mod q`.
    pub fn turn(&self, k: i64) -> f64 {
        let r = (k * self.p as i64).rem_euclid(self.q as i64);
        2.0 * PI * r as f64 / self.q as f64
    }

    /// `s = sin πθ`.
    pub fn s(&self) -> f64 {
        (PI * self.theta()).sin()
    }

    /// `c_m = cos 2mπθ`.
    pub fn c(&self, m: i64) -> f64 {
        self.turn(m).cos()
    }

    /// `b_m = 1 - cos 2mπθ = 2 sin² mπθ`.
    pub fn b(&self, m: i64) -> f64 {
        let half = 0.5 * self.turn(m);
        2.0 * half.sin() * half.sin()
    }

    /// `Z_θ = 4 sin² πθ`.
    pub fn z_scalar(&self) -> f64 {
        let s = self.s();
        4.0 * s * s
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        (self.p as u64 * other.q as u64).cmp(&(other.p as u64 * self.q as u64))
    }

    pub fn le_value(&self, other: &Self) -> bool {
        self.cmp_value(other) != Ordering::Greater
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidParameter(format!("expected p/q, got {s:?}")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidParameter(format!("bad integer {t:?} in angle {s:?}")))
        };
        RationalAngle::new(parse(p)?, parse(q)?)
    }
}

/// All reduced `p/q ∈ [0, 1)` with `q ≤ q_max`, sorted by `(q, p)`.
pub fn farey_grid(q_max: u32) -> Vec<RationalAngle> {
    let mut out = vec![RationalAngle::ZERO];
    for q in 2..=q_max {
        for p in 1..q {
            if p.gcd(&q) == 1 {
                out.push(RationalAngle { p, q });
            }
        }
    }
    out
}

/// The part of [`farey_grid`] with `θ ≤ bound`.
pub fn farey_grid_upto(q_max: u32, bound: f64) -> Vec<RationalAngle> {
    farey_grid(q_max).into_iter().filter(|a| a.theta() <= bound).collect()
}

/// The part of [`farey_grid`] with `θ ≤ 1/2`.
pub fn farey_grid_half(q_max: u32) -> Vec<RationalAngle> {
    let half = RationalAngle { p: 1, q: 2 };
    farey_grid(q_max).into_iter().filter(|a| a.le_value(&half)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_size_and_order() {
        // 1 + Σ_{q=2}^{5} φ(q) = 1 + 1 + 2 + 2 + 4.
        let g = farey_grid(5);
        assert_eq!(g.len(), 10);
        assert!(g.windows(2).all(|w| (w[0].q, w[0].p) < (w[1].q, w[1].p)));
        assert_eq!(farey_grid_half(4).len(), 4);
    }

    #[test]
    fn derived_quantities() {
        let a = RationalAngle::new(1, 2).unwrap();
        assert!((a.s() - 1.0).abs() < 1e-15);
        assert_eq!(a.b(0), 0.0);
        assert!((a.b(1) - 2.0).abs() < 1e-15);
        assert!((a.z_scalar() - 4.0).abs() < 1e-15);
        assert!(RationalAngle::new(2, 4).is_err());
        assert_eq!("3/7".parse::<RationalAngle>().unwrap(), RationalAngle::new(3, 7).unwrap());
        assert_eq!(RationalAngle::new(1, 3).unwrap().reflect(), RationalAngle::new(2, 3).unwrap());
    }
}
