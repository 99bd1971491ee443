//! Sparse polynomials in the variables `x_a`, `a ∈ F_q^g`.
//!
//! Exponent vectors have one slot per cell in canonical cell order (see
//! [`composition`](crate::composition)). Terms are kept in a `BTreeMap`, so
//! iteration and serialization follow lexicographic order on exponent arrays.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::Value;

use crate::composition::{cell_count, cell_tuple, Census};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rational_to_string, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnumeratorPolynomial<C> {
    q: usize,
    fold: usize,
    n: usize,
    terms: BTreeMap<ExponentVector, C>,
}

/// Image of one variable under [`EnumeratorPolynomial::specialize`].
#[derive(Debug, Clone, PartialEq)]
pub enum Substitution<C> {
    /// Another variable, by cell index in the target space.
    Var(usize),
    Const(C),
}

/// A variable map from a `fold`-fold space into a `target_fold`-fold space.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<C> {
    pub target_fold: usize,
    pub images: Vec<Substitution<C>>,
}

impl<C: Scalar> Assignment<C> {
    pub fn identity(q: usize, fold: usize) -> Self {
        Assignment {
            target_fold: fold,
            images: (0..cell_count(q, fold)).map(Substitution::Var).collect(),
        }
    }

    /// Every variable set to the constant `value`.
    pub fn constant(q: usize, fold: usize, value: C) -> Self {
        Assignment {
            target_fold: 0,
            images: vec![Substitution::Const(value); cell_count(q, fold)],
        }
    }
}

impl<C: Scalar> EnumeratorPolynomial<C> {
    pub fn zero(q: usize, fold: usize, n: usize) -> Self {
        EnumeratorPolynomial {
            q,
            fold,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(q: usize, fold: usize, value: C) -> Self {
        let mut p = Self::zero(q, fold, 0);
        p.add_term(ExponentVector(vec![0; cell_count(q, fold)]), value);
        p
    }

    /// The single variable at `cell`.
    pub fn variable(q: usize, fold: usize, cell: usize) -> Self {
        let mut exp = vec![0; cell_count(q, fold)];
        exp[cell] = 1;
        let mut p = Self::zero(q, fold, 1);
        p.add_term(ExponentVector(exp), C::one());
        p
    }

    /// `Σ_η A_η Π x^η` from a census.
    pub fn from_census(census: &Census, q: usize) -> Self {
        let mut p = Self::zero(q, census.fold(), census.len());
        for (profile, count) in census.iter() {
            p.add_term(ExponentVector(profile.counts().to_vec()), C::from_integer(count));
        }
        p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    /// The nominal degree (code length).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> usize {
        cell_count(self.q, self.fold)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> C {
        self.terms
            .get(&ExponentVector(exp.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.keys().all(|e| e.degree() as usize == self.n)
    }

    /// Adds `coef · x^exp`, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: ExponentVector, coef: C) {
        debug_assert_eq!(exp.0.len(), self.cells());
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn ensure_shape(&self, other: &Self) -> Result<()> {
        if self.q != other.q || self.fold != other.fold {
            return Err(Error::Dimension(format!(
                "polynomial shapes differ: q={} g={} vs q={} g={}",
                self.q, self.fold, other.q, other.fold
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_shape(other)?;
        let mut out = self.clone();
        out.n = self.n.max(other.n);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_shape(other)?;
        let mut acc: HashMap<Vec<u32>, C> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(x, y)| x + y).collect();
                let prod = ca.clone() * cb.clone();
                match acc.get_mut(&e) {
                    Some(c) => *c = c.clone() + prod,
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        let mut out = Self::zero(self.q, self.fold, self.n + other.n);
        for (e, c) in acc {
            if !c.is_zero() {
                out.terms.insert(ExponentVector(e), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.q, self.fold, C::one());
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same shape");
        }
        acc
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero(self.q, self.fold, self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * factor.clone());
        }
        out
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> EnumeratorPolynomial<D> {
        let mut out = EnumeratorPolynomial::zero(self.q, self.fold, self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Value at `point`, one entry per cell.
    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.cells() {
            return Err(Error::Dimension(format!(
                "evaluation point has {} entries, expected {}",
                point.len(),
                self.cells()
            )));
        }
        let mut total = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    term = term * x.clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Replaces variable `x_c` by `images[c]` (all in one target space) and expands.
    pub fn substitute(&self, images: &[EnumeratorPolynomial<C>], target_fold: usize) -> Result<Self> {
        if images.len() != self.cells() {
            return Err(Error::Dimension(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.cells()
            )));
        }
        if let Some(bad) = images.iter().find(|p| p.q != self.q || p.fold != target_fold) {
            return Err(Error::Dimension(format!(
                "substitution image lives in q={} g={}, expected q={} g={target_fold}",
                bad.q, bad.fold, self.q
            )));
        }
        let mut powers: HashMap<(usize, u32), EnumeratorPolynomial<C>> = HashMap::new();
        let n = self
            .terms
            .keys()
            .map(|e| {
                e.0.iter()
                    .zip(images)
                    .map(|(&k, img)| k as usize * img.n)
                    .sum::<usize>()
            })
            .max()
            .unwrap_or(0);
        let mut out = Self::zero(self.q, target_fold, n);
        for (e, c) in &self.terms {
            let mut prod = EnumeratorPolynomial::constant(self.q, target_fold, c.clone());
            for (cell, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let power = powers
                    .entry((cell, k))
                    .or_insert_with(|| images[cell].pow(k));
                prod = prod.checked_mul(power)?;
            }
            for (pe, pc) in prod.terms {
                out.add_term(pe, pc);
            }
        }
        out.n = n;
        Ok(out)
    }

    /// Variable-to-variable-or-constant substitution.
    pub fn specialize(&self, assignment: &Assignment<C>) -> Result<Self> {
        if assignment.images.len() != self.cells() {
            return Err(Error::Dimension(format!(
                "assignment covers {} variables, polynomial has {}",
                assignment.images.len(),
                self.cells()
            )));
        }
        let target_cells = cell_count(self.q, assignment.target_fold);
        let images = assignment
            .images
            .iter()
            .map(|s| match s {
                Substitution::Var(c) if *c < target_cells => Ok(EnumeratorPolynomial::variable(
                    self.q,
                    assignment.target_fold,
                    *c,
                )),
                Substitution::Var(c) => Err(Error::InvalidArgument(format!(
                    "target cell {c} out of range"
                ))),
                Substitution::Const(v) => Ok(EnumeratorPolynomial::constant(
                    self.q,
                    assignment.target_fold,
                    v.clone(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = self.substitute(&images, assignment.target_fold)?;
        out.n = self.n;
        Ok(out)
    }

    /// Human-readable form, e.g. `x[0,0]^2 + 1/2*x[1,0]*x[2,0]`.
    pub fn pretty(&self, coef: impl Fn(&C) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (cell, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let t = cell_tuple(self.q, self.fold, cell);
                let name = format!(
                    "x[{}]",
                    t.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
                );
                factors.push(if k == 1 { name } else { format!("{name}^{k}") });
            }
            let c_text = coef(c);
            let monomial = factors.join("*");
            parts.push(match (c_text.as_str(), monomial.is_empty()) {
                (_, true) => c_text,
                ("1", false) => monomial,
                _ => format!("{c_text}*{monomial}"),
            });
        }
        parts.join(" + ")
    }
}

/// Text form of a coefficient inside a polynomial document.
pub trait CoefficientText: Sized {
    fn to_json(&self, p: u32) -> Result<Value>;
    fn from_json(v: &Value, p: u32) -> Result<Self>;
}

impl CoefficientText for BigRational {
    fn to_json(&self, _p: u32) -> Result<Value> {
        Ok(Value::String(rational_to_string(self)))
    }

    fn from_json(v: &Value, _p: u32) -> Result<Self> {
        v.as_str()
            .ok_or_else(|| Error::Format("coefficient must be a string".into()))
            .and_then(parse_rational)
    }
}

impl CoefficientText for Cyclotomic {
    fn to_json(&self, p: u32) -> Result<Value> {
        Ok(Value::Array(
            self.to_strings(p)?.into_iter().map(Value::String).collect(),
        ))
    }

    fn from_json(v: &Value, p: u32) -> Result<Self> {
        let parts = v
            .as_array()
            .ok_or_else(|| Error::Format("cyclotomic coefficient must be an array".into()))?
            .iter()
            .map(|x| {
                x.as_str()
                    .map(String::from)
                    .ok_or_else(|| Error::Format("coefficient entries must be strings".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Cyclotomic::from_strings(p, &parts)
    }
}

fn char_of(q: usize) -> u32 {
    (2..=q as u32).find(|d| (q as u32).is_multiple_of(*d)).unwrap_or(2)
}

impl<C: Scalar + CoefficientText> EnumeratorPolynomial<C> {
    /// Canonical document: fields `fold`, `q`, `n`, `terms`, one term per line.
    pub fn to_document(&self) -> Result<String> {
        let p = char_of(self.q);
        let mut s = String::new();
        let _ = writeln!(s, "{{");
        let _ = writeln!(s, "  \"fold\": {},", self.fold);
        let _ = writeln!(s, "  \"q\": {},", self.q);
        let _ = writeln!(s, "  \"n\": {},", self.n);
        if self.terms.is_empty() {
            let _ = writeln!(s, "  \"terms\": []");
        } else {
            let _ = writeln!(s, "  \"terms\": [");
            let last = self.terms.len() - 1;
            for (i, (e, c)) in self.terms.iter().enumerate() {
                let exp = serde_json::to_string(&e.0).expect("u32 array");
                let coef = serde_json::to_string(&c.to_json(p)?).expect("json value");
                let sep = if i == last { "" } else { "," };
                let _ = writeln!(s, "    {{\"exp\": {exp}, \"coef\": {coef}}}{sep}");
            }
            let _ = writeln!(s, "  ]");
        }
        let _ = writeln!(s, "}}");
        Ok(s)
    }

    pub fn from_document(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("invalid JSON: {e}")))?;
        let field = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Format(format!("missing or invalid `{k}`")))
        };
        let (fold, q, n) = (field("fold")?, field("q")?, field("n")?);
        if q < 2 || q > crate::field::MAX_ORDER as usize || fold > 4 {
            return Err(Error::Format(format!("unsupported shape q={q} fold={fold}")));
        }
        let p = char_of(q);
        let cells = cell_count(q, fold);
        let mut out = Self::zero(q, fold, n);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("missing `terms`".into()))?;
        for t in terms {
            let exp: Vec<u32> = t
                .get("exp")
                .cloned()
                .and_then(|e| serde_json::from_value(e).ok())
                .ok_or_else(|| Error::Format("term without a valid `exp`".into()))?;
            if exp.len() != cells {
                return Err(Error::Format(format!(
                    "exponent vector has {} entries, expected {cells}",
                    exp.len()
                )));
            }
            let coef = C::from_json(
                t.get("coef")
                    .ok_or_else(|| Error::Format("term without `coef`".into()))?,
                p,
            )?;
            let key = ExponentVector(exp);
            if coef.is_zero() || out.terms.contains_key(&key) {
                return Err(Error::Format("zero or repeated term".into()));
            }
            out.terms.insert(key, coef);
        }
        Ok(out)
    }
}

impl EnumeratorPolynomial<BigRational> {
    /// Coefficients embedded into another scalar ring.
    pub fn to_ring<T: Scalar>(&self) -> EnumeratorPolynomial<T> {
        self.map_coefficients(T::from_rational)
    }

    pub fn pretty_rational(&self) -> String {
        self.pretty(|c| {
            if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        })
    }
}
