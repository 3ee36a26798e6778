//! Exact rationals and their JSON form.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use num_rational::BigRational;

/// A rational serialised as decimal strings so tiny values such as `2^-40`
/// survive JSON unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(r: &BigRational) -> Self {
        RationalJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Option<BigRational> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    }
}

/// `#[serde(with = "crate::rational::as_json")]` for `BigRational` fields.
pub mod as_json {
    use super::{BigRational, RationalJson};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        RationalJson::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RationalJson::deserialize(d)?
            .to_rational()
            .ok_or_else(|| D::Error::custom("invalid rational"))
    }
}

/// As [`as_json`], for `Option<BigRational>`.
pub mod opt_json {
    use super::{BigRational, RationalJson};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(RationalJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Ok(Option::<RationalJson>::deserialize(d)?.and_then(|j| j.to_rational()))
    }
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &BigRational, exp: u64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let num: BigInt = Pow::pow(base.numer(), exp);
    let den: BigInt = Pow::pow(base.denom(), exp);
    BigRational::new(num, den)
}

/// `2^-k`.
pub fn half_pow(k: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << k))
}

/// Parse `a/b` or `a`.
pub fn parse(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let den: BigInt = b.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(a.trim().parse().ok()?, den))
        }
        None => Some(int(s.parse::<BigInt>().ok()?)),
    }
}

/// `num/den` in lowest terms.
pub fn display(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Natural log of a positive rational, accurate to double precision even when
/// numerator and denominator are far outside the `f64` range.
pub fn ln(r: &BigRational) -> f64 {
    assert!(r.is_positive(), "ln of non-positive rational");
    ln_big(&r.numer().magnitude().clone()) - ln_big(&r.denom().magnitude().clone())
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        0.0
    } else if r.is_negative() {
        -ln(&-r).exp()
    } else {
        ln(r).exp()
    }
}
