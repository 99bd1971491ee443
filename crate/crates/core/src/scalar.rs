//! Coefficient rings for enumerator polynomials.

use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative ring that exact rationals embed into.
///
/// Exact verification runs over [`BigRational`] and
/// [`Cyclotomic`](crate::Cyclotomic); the floating-point impls exist for
/// numeric evaluation only.
pub trait Scalar: Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> {
    fn from_rational(r: &BigRational) -> Self;

    fn from_integer(n: u64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for Complex<f64> {
    fn from_rational(r: &BigRational) -> Self {
        Complex::new(f64::from_rational(r), 0.0)
    }
}

/// `"<num>/<den>"` in lowest terms, denominator positive, always with a slash.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Format(format!("bad rational `{s}`"));
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(num.clone(), den.clone());
    // only the canonical spelling is accepted so documents round-trip bit-exactly
    if *r.numer() != num || *r.denom() != den {
        return Err(Error::Format(format!("rational `{s}` is not in lowest terms")));
    }
    Ok(r)
}
