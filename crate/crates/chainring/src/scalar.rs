//! Exact coefficient arithmetic: arbitrary-precision rationals or GF(p).
//!
//! Every suite in this crate is characteristic-independent, so the field is a
//! runtime choice. Rationals are the default; a prime field trades exactness
//! of representation for speed on large enumerations.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Runtime description of the coefficient field.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Field {
    /// Exact rationals.
    Rational,
    /// The prime field GF(p).
    Prime(u64),
}

impl Field {
    /// Parses a field spec: `Q`, `F7`, or `Fp:7`.
    pub fn parse(s: &str) -> Result<Field> {
        let spec = s.trim();
        if spec == "Q" || spec == "q" {
            return Ok(Field::Rational);
        }
        let digits = spec
            .strip_prefix("Fp:")
            .or_else(|| spec.strip_prefix("F"))
            .or_else(|| spec.strip_prefix("f"));
        if let Some(digits) = digits {
            let p: u64 = digits
                .parse()
                .map_err(|_| Error::field_spec(spec, "modulus is not an integer"))?;
            if !is_prime(p) {
                return Err(Error::field_spec(spec, "modulus is not prime"));
            }
            return Ok(Field::Prime(p));
        }
        Err(Error::field_spec(spec, "expected Q, F<p>, or Fp:<p>"))
    }

    /// Canonical label used in reports and instance files.
    pub fn label(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod { val: r % p, p }
            }
        }
    }

    /// Parses a coefficient in this field: `3/7`, `-2`, or a residue.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let text = s.trim();
        match self {
            Field::Rational => {
                let r = BigRational::from_str(text)
                    .map_err(|_| Error::scalar_parse(text, "expected an integer or num/den"))?;
                Ok(Scalar::Rat(r))
            }
            Field::Prime(p) => {
                let n: i128 = text
                    .parse()
                    .map_err(|_| Error::scalar_parse(text, "expected an integer residue"))?;
                let r = n.rem_euclid(p as i128) as u64;
                Ok(Scalar::Mod { val: r, p })
            }
        }
    }

    /// All field elements, for exhaustive scans. `None` over the rationals.
    pub fn enumerate(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::Mod { val: v, p }).collect()),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// An element of the configured field.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; every public entry point fixes a single field per run.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod { val: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { val: (a + b) % p, p: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { val, p } => Scalar::Mod { val: (p - val) % p, p: *p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { val: a, p }, Scalar::Mod { val: b, p: q }) => {
                assert_eq!(p, q, "mixed prime fields");
                Scalar::Mod { val: ((*a as u128 * *b as u128) % *p as u128) as u64, p: *p }
            }
            _ => panic!("mixed-field scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { val, p } => Scalar::Mod { val: mod_pow(*val, p - 2, *p), p: *p },
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|inv| self.mul(&inv))
    }

    /// Canonical text form: `num/den` over the rationals, residue over GF(p).
    pub fn render(&self) -> String {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { val, .. } => val.to_string(),
        }
    }

    /// Absolute numerator+denominator size, used only to pick small pivots.
    pub(crate) fn size_hint(&self) -> u64 {
        match self {
            Scalar::Rat(r) => {
                let bits = r.numer().abs().bits() + r.denom().bits();
                bits.min(u64::MAX as u64)
            }
            Scalar::Mod { .. } => 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_field_specs() {
        assert_eq!(Field::parse("Q").unwrap(), Field::Rational);
        assert_eq!(Field::parse("F2").unwrap(), Field::Prime(2));
        assert_eq!(Field::parse("Fp:97").unwrap(), Field::Prime(97));
        assert!(Field::parse("F4").is_err());
        assert!(Field::parse("R").is_err());
    }

    #[test]
    fn rational_round_trip() {
        let f = Field::Rational;
        let x = f.parse_scalar("3/7").unwrap();
        assert_eq!(x.render(), "3/7");
        assert_eq!(x.mul(&f.from_i64(7)).render(), "3");
    }

    #[test]
    fn prime_field_inverses() {
        let f = Field::Prime(7);
        for v in 1..7 {
            let x = f.from_i64(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn negation_wraps() {
        let f = Field::Prime(5);
        assert_eq!(f.from_i64(-3), f.from_i64(2));
        assert!(f.from_i64(2).add(&f.from_i64(3)).is_zero());
    }
}
