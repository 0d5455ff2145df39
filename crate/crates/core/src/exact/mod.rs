//! Exact arithmetic: rationals, dense matrices with fraction-free
//! determinants, univariate and Laurent polynomials over the rationals,
//! and Sturm-chain root counting.

mod laurent;
mod matrix;
mod poly;
mod sturm;
mod zpoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use laurent::{laurent_det, LaurentMatrix, LaurentPoly};
pub use matrix::{det_bareiss, Matrix, RatMatrix};
pub use poly::Poly;
pub use sturm::{isolate_real_roots, sturm_count, SturmChain};
pub use zpoly::roots_above;

/// Arbitrary-precision fraction. Always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Commutative ring with identity, as needed by the generic matrix code.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, an integer, or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => BigInt::from_str(w).map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = Rational::from_integer(whole.abs()) + Rational::new(frac, scale);
        return Ok(if negative { -mag } else { mag });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// `r^e` for a possibly negative exponent. Panics on `0^negative`.
pub fn pow_i(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), e.unsigned_abs() as usize)
    }
}

/// Rational extended by an unsigned infinity (nonzero over zero) and an
/// indeterminate value (zero over zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
    Indeterminate,
}

impl ExtRational {
    pub fn ratio(num: &Rational, den: &Rational) -> Self {
        match (num.is_zero(), den.is_zero()) {
            (true, true) => ExtRational::Indeterminate,
            (false, true) => ExtRational::Infinity,
            _ => ExtRational::Finite(num / den),
        }
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// `0 < self < inf`.
    pub fn is_positive_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_positive())
    }

    pub fn is_indeterminate(&self) -> bool {
        matches!(self, ExtRational::Indeterminate)
    }

    /// Multiplication with the conventions inf * nonzero = inf,
    /// inf * 0 = indeterminate, and indeterminate absorbing.
    pub fn mul(&self, other: &ExtRational) -> ExtRational {
        use ExtRational::*;
        match (self, other) {
            (Indeterminate, _) | (_, Indeterminate) => Indeterminate,
            (Finite(a), Finite(b)) => Finite(a * b),
            (Infinity, Infinity) => Infinity,
            (Infinity, Finite(x)) | (Finite(x), Infinity) => {
                if x.is_zero() {
                    Indeterminate
                } else {
                    Infinity
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> ExtRational {
        self.mul(&ExtRational::Finite(factor.clone()))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinity => f.write_str("inf"),
            ExtRational::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub mod vec {
        use super::Rational;
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&r.to_string())?;
            }
            seq.end()
        }
    }

    pub mod option {
        use super::Rational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.collect_str(r),
                None => s.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("2.5").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn zero_is_canonical() {
        let z = rat(0, -5);
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(rat(4, -6), rat(-2, 3));
        assert!(rat(4, -6).denom().is_positive());
    }

    #[test]
    fn ext_rational_conventions() {
        use ExtRational::*;
        assert_eq!(ExtRational::ratio(&int(0), &int(0)), Indeterminate);
        assert_eq!(ExtRational::ratio(&int(3), &int(0)), Infinity);
        assert_eq!(ExtRational::ratio(&int(0), &int(3)), Finite(int(0)));
        assert_eq!(Infinity.mul(&Finite(int(0))), Indeterminate);
        assert_eq!(Infinity.mul(&Finite(int(-2))), Infinity);
        assert_eq!(Indeterminate.mul(&Finite(int(1))), Indeterminate);
        assert_eq!(Finite(rat(1, 2)).mul(&Finite(int(4))), Finite(int(2)));
        assert_eq!(Infinity.to_string(), "inf");
        assert_eq!(Indeterminate.to_string(), "indeterminate");
        assert_eq!(Finite(rat(-1, 5)).to_string(), "-1/5");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow_i(&int(2), -3), rat(1, 8));
        assert_eq!(pow_i(&rat(2, 3), 2), rat(4, 9));
        assert_eq!(pow_i(&int(5), 0), int(1));
    }
}
