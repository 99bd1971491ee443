//! Exact arithmetic in Q(ζ_p) for prime p.
//!
//! Values are kept in the power basis `1, ζ, …, ζ^{p−2}` with
//! `ζ^{p−1} = −(1 + ζ + … + ζ^{p−2})` applied eagerly. Rational values are
//! normalized to an order-free form so that `0` and `1` exist without
//! knowing p and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::scalar::{parse_rational, rational_to_string, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    /// 0 while the value is rational.
    p: u32,
    /// Trailing zeros trimmed; length ≤ 1 iff rational.
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    fn normalized(p: u32, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let p = if coeffs.len() <= 1 { 0 } else { p };
        Cyclotomic { p, coeffs }
    }

    pub fn rational(r: BigRational) -> Self {
        Self::normalized(0, vec![r])
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Builds `Σ c_i ζ_p^i` from coefficients in the reduced basis.
    pub fn from_basis(p: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() > (p as usize).saturating_sub(1).max(1) {
            return Err(Error::InvalidArgument(format!(
                "Q(ζ_{p}) has a basis of size {}",
                p.saturating_sub(1)
            )));
        }
        Ok(Self::normalized(p, coeffs))
    }

    /// ζ_p^k.
    pub fn zeta_pow(p: u32, k: i64) -> Self {
        let p_i = p as i64;
        let k = k.rem_euclid(p_i) as usize;
        let pu = p as usize;
        if k == 0 {
            Self::one()
        } else if k == pu - 1 {
            Self::normalized(p, vec![-BigRational::one(); pu - 1])
        } else {
            let mut coeffs = vec![BigRational::zero(); k + 1];
            coeffs[k] = BigRational::one();
            Self::normalized(p, coeffs)
        }
    }

    /// The additive character χ(α) = ζ_p^{α₀}.
    pub fn chi(field: &Field, a: FieldElement) -> Self {
        Self::zeta_pow(field.p(), field.trace_coordinate(a) as i64)
    }

    /// The prime order, or `None` for a rational value.
    pub fn order(&self) -> Option<u32> {
        (self.p != 0).then_some(self.p)
    }

    pub fn is_rational(&self) -> bool {
        self.p == 0
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Coefficient of ζ^i in the reduced basis.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    fn join(&self, other: &Self) -> Result<u32> {
        match (self.p, other.p) {
            (0, q) | (q, 0) => Ok(q),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::OrderMismatch { left: a, right: b }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let p = self.join(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Ok(Self::normalized(p, coeffs))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let p = self.join(other)?;
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::zero());
        }
        if p == 0 {
            return Ok(Self::rational(&self.coeffs[0] * &other.coeffs[0]));
        }
        let pu = p as usize;
        let mut full = vec![BigRational::zero(); pu];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                full[(i + j) % pu] += a * b;
            }
        }
        Ok(Self::normalized(p, reduce_top(full)))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::normalized(self.p, self.coeffs.iter().map(|c| c * r).collect())
    }

    /// `p − 1` coefficient strings.
    pub fn to_strings(&self, p: u32) -> Result<Vec<String>> {
        if self.p != 0 && self.p != p {
            return Err(Error::OrderMismatch {
                left: self.p,
                right: p,
            });
        }
        let len = (p as usize - 1).max(1);
        Ok((0..len).map(|i| rational_to_string(&self.coeff(i))).collect())
    }

    pub fn from_strings(p: u32, parts: &[String]) -> Result<Self> {
        let len = (p as usize - 1).max(1);
        if parts.len() != len {
            return Err(Error::Format(format!(
                "cyclotomic value over ζ_{p} needs {len} coefficients"
            )));
        }
        let coeffs = parts.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        Self::from_basis(p, coeffs)
    }
}

/// Folds a length-p vector over `1, ζ, …, ζ^{p−1}` into the reduced basis.
fn reduce_top(mut full: Vec<BigRational>) -> Vec<BigRational> {
    let top = full.pop().expect("p ≥ 2");
    if !top.is_zero() {
        for c in &mut full {
            *c -= &top;
        }
    }
    full
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ{}", self.p)?,
                _ => write!(f, "({c})ζ{}^{i}", self.p)?,
            }
        }
        Ok(())
    }
}

/// Operators panic on mixed orders; use the `checked_*` methods to get an error instead.
impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("cyclotomic order mismatch")
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Self) -> Self {
        self.checked_add(&-rhs).expect("cyclotomic order mismatch")
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("cyclotomic order mismatch")
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic {
            p: 0,
            coeffs: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self::integer(1)
    }
}

impl Scalar for Cyclotomic {
    fn from_rational(r: &BigRational) -> Self {
        Self::rational(r.clone())
    }
}
