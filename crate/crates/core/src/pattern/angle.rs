use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

/// Measurement angle in `[0, 2π)`, optionally an exact rational multiple
/// of π.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    /// `(k, d)` meaning `kπ/d`, reduced, `0 ≤ k < 2d`.
    exact: Option<(u64, u64)>,
    radians: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleError(pub String);

impl fmt::Display for AngleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad angle {:?}", self.0)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Angle {
    pub const ZERO: Angle = Angle {
        exact: Some((0, 1)),
        radians: 0.0,
    };
    pub const PI: Angle = Angle {
        exact: Some((1, 1)),
        radians: PI,
    };

    /// `kπ/d`, reduced modulo 2π. Panics on `d = 0`.
    pub fn from_ratio(k: i64, d: u64) -> Self {
        assert!(d > 0, "zero denominator");
        let period = 2 * d as i128;
        let k = (k as i128).rem_euclid(period) as u64;
        let g = gcd(k, d).max(1);
        let (k, d) = (k / g, d / g);
        Self {
            exact: Some((k, d)),
            radians: k as f64 * PI / d as f64,
        }
    }

    /// Arbitrary radians, reduced into `[0, 2π)`. An exact zero stays exact.
    pub fn from_radians(r: f64) -> Self {
        if r == 0.0 {
            return Self::ZERO;
        }
        let mut x = r.rem_euclid(2.0 * PI);
        if x >= 2.0 * PI {
            x = 0.0;
        }
        Self {
            exact: None,
            radians: x,
        }
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    pub fn exact(&self) -> Option<(u64, u64)> {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        self.exact == Some((0, 1))
    }

    pub fn is_pi(&self) -> bool {
        self.exact == Some((1, 1))
    }

    /// Exactly 0 or π: the only angles a Pauli measurement may carry.
    pub fn is_pauli(&self) -> bool {
        self.is_zero() || self.is_pi()
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some((0, _)) => f.write_str("0"),
            Some((1, 1)) => f.write_str("pi"),
            Some((k, 1)) => write!(f, "{k} pi"),
            Some((k, d)) => write!(f, "{k}/{d} pi"),
            None => write!(f, "{}", self.radians),
        }
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    /// Accepts `pi`, `k pi`, `k/d pi` and decimal radians.
    fn from_str(s: &str) -> Result<Self, AngleError> {
        let err = || AngleError(s.to_string());
        let words: Vec<&str> = s.split_whitespace().collect();
        match words.as_slice() {
            ["pi"] => Ok(Self::PI),
            ["-pi"] => Ok(Self::from_ratio(-1, 1)),
            [coeff, "pi"] => {
                let (k, d) = match coeff.split_once('/') {
                    Some((k, d)) => (k, d),
                    None => (*coeff, "1"),
                };
                let k: i64 = k.parse().map_err(|_| err())?;
                let d: u64 = d.parse().map_err(|_| err())?;
                if d == 0 {
                    return Err(err());
                }
                Ok(Self::from_ratio(k, d))
            }
            [decimal] => {
                let r: f64 = decimal.parse().map_err(|_| err())?;
                if !r.is_finite() {
                    return Err(err());
                }
                Ok(Self::from_radians(r))
            }
            _ => Err(err()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_forms() {
        assert_eq!(Angle::from_ratio(2, 4), Angle::from_ratio(1, 2));
        assert_eq!(Angle::from_ratio(-1, 4), Angle::from_ratio(7, 4));
        assert_eq!(Angle::from_ratio(2, 1), Angle::ZERO);
        assert!(Angle::from_ratio(3, 1).is_pi());
        assert!((Angle::from_ratio(1, 2).radians() - PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "pi", "1/4 pi", "7/4 pi", "1.25"] {
            let a: Angle = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
            assert_eq!(a.to_string().parse::<Angle>().unwrap(), a);
        }
        assert_eq!("0.0".parse::<Angle>().unwrap(), Angle::ZERO);
        assert_eq!("-1/2 pi".parse::<Angle>().unwrap(), Angle::from_ratio(3, 2));
        assert!("pi pi".parse::<Angle>().is_err());
        assert!("1/0 pi".parse::<Angle>().is_err());
    }

    #[test]
    fn only_exact_zero_and_pi_are_pauli() {
        assert!(Angle::ZERO.is_pauli() && Angle::PI.is_pauli());
        assert!(!Angle::from_radians(PI).is_pauli());
        assert!(!Angle::from_ratio(1, 2).is_pauli());
    }
}
