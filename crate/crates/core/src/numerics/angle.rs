//! Angle literals that may be exact rational multiples of pi.

use std::fmt;
use std::str::FromStr;

use rug::Rational;

use super::Scalar;
use crate::error::{Error, Result};

/// A parsed angle: either `p/q * pi` held exactly or a decimal literal.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    PiMultiple(Rational),
    Decimal(String),
}

impl Angle {
    pub fn pi_fraction(num: i64, den: i64) -> Self {
        Angle::PiMultiple(Rational::from((num, den)))
    }

    pub fn to_scalar(&self, prec: u32) -> Result<Scalar> {
        match self {
            Angle::PiMultiple(q) => Ok(Scalar::pi(prec) * Scalar::from_rational(prec, q)),
            Angle::Decimal(text) => {
                Scalar::parse_decimal(prec, text).ok_or_else(|| Error::InvalidAngle(text.clone()))
            }
        }
    }

    /// `pi - self`, kept exact for rational multiples of pi.
    pub fn reflected(&self, prec: u32) -> Result<Angle> {
        match self {
            Angle::PiMultiple(q) => Ok(Angle::PiMultiple(Rational::from(1) - q.clone())),
            Angle::Decimal(_) => {
                let v = Scalar::pi(prec) - self.to_scalar(prec)?;
                Ok(Angle::Decimal(v.to_decimal_string()))
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(q) => {
                let (num, den) = (q.numer(), q.denom());
                let head = if *num == 1 {
                    "pi".to_string()
                } else if *num == -1 {
                    "-pi".to_string()
                } else {
                    format!("{num}*pi")
                };
                if *den == 1 {
                    write!(f, "{head}")
                } else {
                    write!(f, "{head}/{den}")
                }
            }
            Angle::Decimal(text) => write!(f, "{text}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `0.7`, `pi`, `pi/6`, `-pi/4`, `2pi/3`, `2*pi/3`, `3/4*pi`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidAngle(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let lower = compact.to_ascii_lowercase();
        if lower.is_empty() {
            return Err(bad());
        }
        let Some(pos) = lower.find("pi") else {
            if Scalar::parse_decimal(64, &lower).is_none() {
                return Err(bad());
            }
            return Ok(Angle::Decimal(lower));
        };
        let before = &lower[..pos];
        let after = &lower[pos + 2..];
        // coefficient in front of pi: "", "-", "2", "2*", "3/4*"
        let before = before.strip_suffix('*').unwrap_or(before);
        let coeff = match before {
            "" | "+" => Rational::from(1),
            "-" => Rational::from(-1),
            other => parse_rational(other).ok_or_else(bad)?,
        };
        let divisor = if after.is_empty() {
            Rational::from(1)
        } else {
            let den = after.strip_prefix('/').ok_or_else(bad)?;
            let d = parse_rational(den).ok_or_else(bad)?;
            if d == 0 {
                return Err(bad());
            }
            d
        };
        Ok(Angle::PiMultiple(coeff / divisor))
    }
}

fn parse_rational(text: &str) -> Option<Rational> {
    match text.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.parse().ok()?;
            let d: i64 = d.parse().ok()?;
            (d != 0).then(|| Rational::from((n, d)))
        }
        None => text.parse::<i64>().ok().map(Rational::from),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pi_fractions() {
        assert_eq!("pi/2".parse::<Angle>().unwrap(), Angle::pi_fraction(1, 2));
        assert_eq!("-pi/4".parse::<Angle>().unwrap(), Angle::pi_fraction(-1, 4));
        assert_eq!("2pi/3".parse::<Angle>().unwrap(), Angle::pi_fraction(2, 3));
        assert_eq!("2*pi/3".parse::<Angle>().unwrap(), Angle::pi_fraction(2, 3));
        assert_eq!("3/4*pi".parse::<Angle>().unwrap(), Angle::pi_fraction(3, 4));
        assert_eq!("PI".parse::<Angle>().unwrap(), Angle::pi_fraction(1, 1));
    }

    #[test]
    fn parses_decimals_and_rejects_garbage() {
        assert_eq!(
            "0.7".parse::<Angle>().unwrap(),
            Angle::Decimal("0.7".to_string())
        );
        assert!("pi/0".parse::<Angle>().is_err());
        assert!("pix".parse::<Angle>().is_err());
        assert!("".parse::<Angle>().is_err());
        assert!("seven".parse::<Angle>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["pi/2", "pi/6", "-pi/4", "2*pi/3", "pi", "0.7"] {
            let a: Angle = text.parse().unwrap();
            let again: Angle = a.to_string().parse().unwrap();
            assert_eq!(a, again, "{text}");
        }
    }

    #[test]
    fn exact_reflection() {
        let a: Angle = "pi/3".parse().unwrap();
        assert_eq!(a.reflected(256).unwrap(), Angle::pi_fraction(2, 3));
        let half: Angle = "pi/2".parse().unwrap();
        assert_eq!(half.reflected(256).unwrap(), half);
    }
}
