//! Arbitrary precision reals and a few helpers around them.

use std::str::FromStr;

use dashu_float::ops::SquareRoot;
use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::IBig;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binary floating point number with per-value precision.
pub type Real = FBig<HalfEven, 2>;

/// Working precision in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Precision(pub usize);

impl Default for Precision {
    fn default() -> Self {
        Precision(128)
    }
}

impl Precision {
    pub fn bits(self) -> usize {
        self.0
    }

    /// Absolute tolerance `2^(-bits/2)` used for coincidence tests.
    pub fn tolerance(self) -> Real {
        Real::from_parts(IBig::ONE, -((self.0 / 2) as isize))
            .with_precision(self.0)
            .value()
    }

    pub fn int(self, n: i64) -> Real {
        Real::from(n).with_precision(self.0).value()
    }

    pub fn zero(self) -> Real {
        self.int(0)
    }

    pub fn one(self) -> Real {
        self.int(1)
    }

    /// Converts an `f64` exactly, then rounds to this precision.
    pub fn from_f64(self, x: f64) -> Real {
        Real::try_from(x)
            .expect("finite float")
            .with_precision(self.0)
            .value()
    }

    pub fn ratio(self, p: i64, q: i64) -> Real {
        self.int(p) / self.int(q)
    }

    /// Parses a decimal string such as `"0.4"` or `"-1.5e-3"`.
    pub fn parse(self, s: &str) -> Result<Real> {
        let t = s.trim();
        let d = DBig::from_str(t).map_err(|e| Error::Parse {
            pos: 0,
            msg: format!("bad decimal {t:?}: {e}"),
        })?;
        Ok(d.with_base_and_precision::<2>(self.0)
            .value()
            .with_rounding::<HalfEven>())
    }

    pub fn sqrt_int(self, n: i64) -> Real {
        self.int(n).sqrt()
    }

    /// Decimal digits that faithfully represent this precision.
    pub fn decimal_digits(self) -> usize {
        (self.0 as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
    }
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// Decimal rendering with as many significant digits as the precision of `x` supports.
pub fn to_decimal(x: &Real) -> String {
    let digits = Precision(x.precision().max(2)).decimal_digits();
    let d = x.clone().with_base_and_precision::<10>(digits).value();
    d.to_string()
}

pub fn abs(x: &Real) -> Real {
    if x.sign() == dashu_base::Sign::Negative {
        -x.clone()
    } else {
        x.clone()
    }
}

pub fn is_negative(x: &Real) -> bool {
    x.sign() == dashu_base::Sign::Negative && !x.repr().is_zero()
}

pub fn is_positive(x: &Real) -> bool {
    x.sign() == dashu_base::Sign::Positive && !x.repr().is_zero()
}

pub fn min_of<'a>(xs: impl IntoIterator<Item = &'a Real>) -> Option<Real> {
    xs.into_iter()
        .fold(None, |m: Option<&Real>, x| match m {
            Some(m) if m <= x => Some(m),
            _ => Some(x),
        })
        .cloned()
}

pub fn max_of<'a>(xs: impl IntoIterator<Item = &'a Real>) -> Option<Real> {
    xs.into_iter()
        .fold(None, |m: Option<&Real>, x| match m {
            Some(m) if m >= x => Some(m),
            _ => Some(x),
        })
        .cloned()
}

pub fn sum<'a>(xs: impl IntoIterator<Item = &'a Real>, prec: Precision) -> Real {
    xs.into_iter().fold(prec.zero(), |acc, x| acc + x)
}

pub fn sqrt(x: &Real) -> Real {
    x.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let p = Precision(128);
        let x = p.parse("0.4").unwrap();
        assert!((to_f64(&x) - 0.4).abs() < 1e-16);
        assert!(to_decimal(&x).starts_with("0.4000000000"));
        assert!(p.parse("0.4.1").is_err());
    }

    #[test]
    fn tolerance_scale() {
        assert_eq!(to_f64(&Precision(100).tolerance()), 2f64.powi(-50));
    }

    #[test]
    fn signs() {
        let p = Precision(64);
        assert!(is_negative(&p.int(-1)));
        assert!(!is_negative(&p.zero()));
        assert!(!is_positive(&p.zero()));
        assert_eq!(to_f64(&abs(&p.int(-3))), 3.0);
    }
}
