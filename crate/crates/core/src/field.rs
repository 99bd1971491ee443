//! Small prime-power fields F_{p^m} with table-driven arithmetic.
//!
//! Elements are stored as their index `Σ α_j p^j` where `α_j` is the
//! coordinate of `λ^j` in the power basis of a root `λ` of the defining
//! polynomial. Index order is the canonical element order `ω_0 = 0, ω_1, ...`
//! used for every variable and composition slot in the crate.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order the brute-force machinery accepts.
pub const MAX_ORDER: u32 = 16;

/// An element of F_q, identified by its canonical index in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    p: u32,
    m: u32,
    q: u32,
    poly: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// The field F_q = F_p[x]/(f) together with its arithmetic tables.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    t: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.m == other.t.m && self.t.poly == other.t.poly)
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in defining polynomials, constant coefficient first.
pub fn default_poly(p: u32, m: u32) -> Option<Vec<u32>> {
    match (p, m) {
        (_, 1) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (3, 2) => Some(vec![2, 1, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        _ => None,
    }
}

// Dense polynomials over F_p, constant coefficient first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let modulus = trim(modulus.to_vec());
    let dm = modulus.len() - 1;
    let lead_inv = inv_mod(modulus[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dm;
        for (i, &c) in modulus.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - factor * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("unit in F_p")
}

fn digits(mut index: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = index % p;
            index /= p;
            d
        })
        .collect()
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        for low in 0..p.pow(d) {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn order_of_x(f: &[u32], p: u32, q: u32) -> u32 {
    let one = vec![1u32];
    let x = vec![0u32, 1];
    let mut acc = poly_rem(&x, f, p);
    for k in 1..q {
        if acc == one {
            return k;
        }
        acc = poly_rem(&poly_mul(&acc, &x, p), f, p);
    }
    q
}

impl Field {
    /// Builds F_{p^m}. `poly` defaults to the built-in choice and is
    /// validated (monic, irreducible, primitive) either way.
    pub fn new(p: u32, m: u32, poly: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("p={p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidField("m must be positive".into()));
        }
        let q = match p.checked_pow(m) {
            Some(q) if q <= MAX_ORDER => q,
            _ => {
                return Err(Error::Capacity {
                    what: "field order",
                    needed: (p as u128).saturating_pow(m),
                    budget: MAX_ORDER as u64,
                })
            }
        };
        let poly = match poly {
            Some(poly) => poly,
            None => default_poly(p, m).ok_or_else(|| {
                Error::InvalidField(format!("no built-in polynomial for p={p} m={m}"))
            })?,
        };
        if poly.len() != m as usize + 1 {
            return Err(Error::InvalidField(format!(
                "defining polynomial needs {} coefficients, got {}",
                m + 1,
                poly.len()
            )));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "polynomial coefficients must lie in [0, {p})"
            )));
        }
        if poly[m as usize] != 1 {
            return Err(Error::InvalidField("defining polynomial is not monic".into()));
        }
        if m == 1 {
            if poly != [0, 1] {
                return Err(Error::InvalidField(
                    "prime fields use the placeholder polynomial 0,1".into(),
                ));
            }
        } else {
            if !is_irreducible(&poly, p) {
                return Err(Error::InvalidField("defining polynomial is reducible".into()));
            }
            if order_of_x(&poly, p, q) != q - 1 {
                return Err(Error::InvalidField("defining polynomial is not primitive".into()));
            }
        }

        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a, p, m);
            for b in 0..q {
                let db = digits(b, p, m);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as u8;
                let prod = if m == 1 {
                    vec![da[0] * db[0] % p]
                } else {
                    poly_rem(&poly_mul(&da, &db, p), &poly, p)
                };
                let mut prod = prod;
                prod.resize(m as usize, 0);
                mul[(a * q + b) as usize] = undigits(&prod, p) as u8;
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..qs)
            .map(|a| {
                (0..qs)
                    .find(|&b| mul[a * qs + b] == 1)
                    .map_or(0, |b| b as u8)
            })
            .collect();
        Ok(Field {
            t: Arc::new(Tables {
                p,
                m,
                q,
                poly,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    /// F_q with the built-in defining polynomial.
    pub fn of_order(q: u32) -> Result<Field> {
        for p in 2..=q {
            if q.is_multiple_of(p) {
                let mut m = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    m += 1;
                }
                if r != 1 || !is_prime(p) {
                    break;
                }
                return Field::new(p, m, None);
            }
        }
        Err(Error::InvalidField(format!("{q} is not a prime power")))
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn m(&self) -> u32 {
        self.t.m
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Number of elements as a `usize`.
    pub fn size(&self) -> usize {
        self.t.q as usize
    }

    pub fn poly(&self) -> &[u32] {
        &self.t.poly
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.t.q {
            Ok(FieldElement(index as u8))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                q: self.t.q,
            })
        }
    }

    /// Element with the given power-basis coordinates (constant first).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.t.m as usize || coeffs.iter().any(|&c| c >= self.t.p) {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates in [0, {})",
                self.t.m, self.t.p
            )));
        }
        self.element(undigits(coeffs, self.t.p))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0 as u32, self.t.p, self.t.m)
    }

    /// The constant coordinate α₀, the only one the additive character reads.
    pub fn trace_coordinate(&self, a: FieldElement) -> u32 {
        a.0 as u32 % self.t.p
    }

    /// The root λ of the defining polynomial (equal to 1's successor in
    /// index order only when m > 1).
    pub fn generator(&self) -> FieldElement {
        if self.t.m == 1 {
            // any primitive root of F_p
            let p = self.t.p;
            let g = (1..p)
                .find(|&g| (1..p - 1).all(|k| pow_mod(g, k, p) != 1))
                .unwrap_or(1);
            FieldElement(g as u8)
        } else {
            FieldElement(self.t.p as u8)
        }
    }

    /// ω₀, …, ω_{q−1} in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.t.q as u8).map(FieldElement)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.t.q as u8).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.t.add[a.index() * self.size() + b.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.index()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.t.mul[a.index() * self.size() + b.index()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(FieldElement(self.t.inv[a.index()]))
        }
    }

    pub fn pow(&self, a: FieldElement, k: u32) -> FieldElement {
        (0..k).fold(FieldElement::ONE, |acc, _| self.mul(acc, a))
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut acc = a;
        let mut k = 1;
        while acc != FieldElement::ONE {
            acc = self.mul(acc, a);
            k += 1;
        }
        Some(k)
    }

    pub fn dot(&self, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
        u.iter()
            .zip(v)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }

    pub fn ensure_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.q(),
                right: other.q(),
            })
        }
    }
}

fn pow_mod(b: u32, e: u32, p: u32) -> u32 {
    (0..e).fold(1, |acc, _| acc * b % p)
}

/// `field p=<p> m=<m> [poly=<c0,...,cm>]`; the polynomial is printed only when m > 1.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "field p={} m={}", self.t.p, self.t.m)?;
        if self.t.m > 1 {
            let cs: Vec<String> = self.t.poly.iter().map(|c| c.to_string()).collect();
            write!(f, " poly={}", cs.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let mut words = s.split_whitespace();
        if words.next() != Some("field") {
            return Err(Error::InvalidField("expected `field p=<p> m=<m>`".into()));
        }
        let (mut p, mut m, mut poly) = (None, None, None);
        for word in words {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| Error::InvalidField(format!("bad token `{word}`")))?;
            let num = |v: &str| {
                v.parse::<u32>()
                    .map_err(|_| Error::InvalidField(format!("bad number `{v}`")))
            };
            match key {
                "p" => p = Some(num(value)?),
                "m" => m = Some(num(value)?),
                "poly" => {
                    poly = Some(
                        value
                            .split(',')
                            .map(num)
                            .collect::<Result<Vec<u32>>>()?,
                    )
                }
                _ => return Err(Error::InvalidField(format!("unknown key `{key}`"))),
            }
        }
        let p = p.ok_or_else(|| Error::InvalidField("missing p".into()))?;
        let m = m.ok_or_else(|| Error::InvalidField("missing m".into()))?;
        Field::new(p, m, poly)
    }
}
