//! The standard DMV-algebra: exact rationals in `[0, 1]` with the MV operations,
//! the division operators `delta_n` and the rational scalar action.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Unbounded exact rational. Used for coefficients, bounds and coordinates.
pub type Rational = BigRational;

/// Parses `"p/q"` or `"p"` (with optional sign) into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |reason: &str| Error::BadRational {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| bad("numerator is not an integer"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| bad("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// An exact rational in `[0, 1]`, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitRational(Rational);

impl UnitRational {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::BadRational {
                text: value.to_string(),
                reason: "value outside [0,1]".into(),
            });
        }
        Ok(UnitRational(value))
    }

    /// Builds `num/den`; fails when `den == 0` or the value leaves `[0, 1]`.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadRational {
                text: format!("{num}/{den}"),
                reason: "zero denominator".into(),
            });
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        UnitRational(Rational::zero())
    }

    pub fn one() -> Self {
        UnitRational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Clamps an arbitrary rational into `[0, 1]`.
    pub(crate) fn clamp(q: Rational) -> Self {
        if q.is_negative() {
            Self::zero()
        } else if q > Rational::one() {
            Self::one()
        } else {
            UnitRational(q)
        }
    }

    pub(crate) fn new_unchecked(q: Rational) -> Self {
        debug_assert!(!q.is_negative() && q <= Rational::one());
        UnitRational(q)
    }
}

impl fmt::Display for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for UnitRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for UnitRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        UnitRational::new(q).map_err(|_| Error::BadRational {
            text: s.to_string(),
            reason: "value outside [0,1]".into(),
        })
    }
}

impl Serialize for UnitRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for UnitRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `x ⊕ y = min(x + y, 1)`
pub fn mv_add(x: &UnitRational, y: &UnitRational) -> UnitRational {
    UnitRational::clamp(&x.0 + &y.0)
}

/// `x* = 1 - x`
pub fn mv_neg(x: &UnitRational) -> UnitRational {
    UnitRational(Rational::one() - &x.0)
}

/// `x ⊙ y = (x* ⊕ y*)*`
pub fn mv_mul_trunc(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_neg(&mv_add(&mv_neg(x), &mv_neg(y)))
}

/// `x ∨ y = (x ⊙ y*) ⊕ y`
pub fn mv_join(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_add(&mv_mul_trunc(x, &mv_neg(y)), y)
}

/// `x ∧ y = (x ⊕ y*) ⊙ y`
pub fn mv_meet(x: &UnitRational, y: &UnitRational) -> UnitRational {
    mv_mul_trunc(&mv_add(x, &mv_neg(y)), y)
}

/// `δ_n x = x / n`. Rejects `n = 0`.
pub fn delta(n: u64, x: &UnitRational) -> Result<UnitRational> {
    if n == 0 {
        return Err(Error::ZeroDivisor(0));
    }
    Ok(UnitRational(&x.0 / Rational::from_integer(n.into())))
}

/// Scalar action `r · x` of `[0,1] ∩ Q` on itself.
pub fn scalar(r: &UnitRational, x: &UnitRational) -> UnitRational {
    UnitRational(&r.0 * &x.0)
}

/// `m`-fold truncated sum `x ⊕ ... ⊕ x` (`0` when `m = 0`).
pub fn mv_multiple(m: u64, x: &UnitRational) -> UnitRational {
    UnitRational::clamp(&x.0 * Rational::from_integer(m.into()))
}
