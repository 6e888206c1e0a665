//! Exact rationals and their `"p/q"` text form.

use malachite_base::num::arithmetic::traits::Gcd;
use malachite_nz::natural::Natural;
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

/// Operands at least this long take the subquadratic gcd.
const LARGE_GCD_BITS: u64 = 4096;

/// `numer / denom` in lowest terms, for a positive `denom`.
///
/// Periodic expansions with long periods produce operands of millions of
/// bits, where a binary gcd is quadratic; those go through `malachite`.
pub fn reduced(numer: BigInt, denom: BigInt) -> Rational {
    debug_assert!(denom.is_positive());
    if numer.bits().min(denom.bits()) < LARGE_GCD_BITS {
        return Rational::new(numer, denom);
    }
    let to_natural = |x: &BigUint| Natural::from_limbs_asc(&x.to_u64_digits());
    let g = to_natural(numer.magnitude()).gcd(to_natural(denom.magnitude()));
    let digits: Vec<u32> = g
        .to_limbs_asc()
        .into_iter()
        .flat_map(|limb| [limb as u32, (limb >> 32) as u32])
        .collect();
    let g = BigInt::from_biguint(Sign::Plus, BigUint::new(digits));
    Rational::new_raw(numer / &g, denom / &g)
}

/// Lowest-terms `p/q`, always with an explicit denominator (`1/1`, `0/1`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn in_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q <= Rational::one()
}

/// Serde adapter for rationals stored as `"p/q"` strings.
pub mod as_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(de::Error::custom),
            Raw::Int(n) => Ok(super::int(n)),
        }
    }
}
