//! Character-sum substitutions of the MacWilliams identities.
//!
//! Dualizing the codes in coordinate set `S` replaces each variable by
//!
//! ```text
//! x_a  ←  Σ_{b : b_j = a_j for j ∉ S}  χ(Σ_{j∈S} b_j a_j) · x_b
//! ```
//!
//! and scales by `Π_{j∈S} 1/|C_j|`. For joint enumerators, `S = {1}`, `{2}`
//! and `{1, 2}` give the three classical variants.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::budget::{pow_sat, Budget};
use crate::composition::{cell_count, cell_index, cell_tuple};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::EnumeratorPolynomial;

/// Which codes of a joint enumerator get dualized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// C1 → C1^⊥ (also the single-code identity).
    First,
    /// C2 → C2^⊥.
    Second,
    Both,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::First, Variant::Second, Variant::Both];

    pub fn coordinates(self) -> &'static [usize] {
        match self {
            Variant::First => &[0],
            Variant::Second => &[1],
            Variant::Both => &[0, 1],
        }
    }

    pub fn roman(self) -> &'static str {
        match self {
            Variant::First => "i",
            Variant::Second => "ii",
            Variant::Both => "iii",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" | "first" => Ok(Variant::First),
            "ii" | "second" => Ok(Variant::Second),
            "iii" | "both" => Ok(Variant::Both),
            _ => Err(Error::InvalidArgument(format!("unknown variant `{s}`"))),
        }
    }
}

/// The image of every variable under the dualizing substitution on `coords`.
pub fn substitution_forms(
    field: &Field,
    fold: usize,
    coords: &[usize],
) -> Result<Vec<EnumeratorPolynomial<Cyclotomic>>> {
    if let Some(&bad) = coords.iter().find(|&&j| j >= fold) {
        return Err(Error::InvalidArgument(format!(
            "cannot dualize coordinate {bad} of a {fold}-fold enumerator"
        )));
    }
    let q = field.size();
    let cells = cell_count(q, fold);
    let mut forms = Vec::with_capacity(cells);
    for target in 0..cells {
        let a = cell_tuple(q, fold, target);
        let mut form = EnumeratorPolynomial::zero(q, fold, 1);
        // b ranges over tuples agreeing with a outside `coords`
        for free in 0..cell_count(q, coords.len()) {
            let choice = cell_tuple(q, coords.len(), free);
            let mut b = a.clone();
            let mut pairing = FieldElement::ZERO;
            for (&j, &w) in coords.iter().zip(&choice) {
                b[j] = w;
                let wj = field.element(w as u32)?;
                let aj = field.element(a[j] as u32)?;
                pairing = field.add(pairing, field.mul(wj, aj));
            }
            let mut var = EnumeratorPolynomial::variable(q, fold, cell_index(q, &b));
            var = var.scale(&Cyclotomic::chi(field, pairing));
            form = form.checked_add(&var)?;
        }
        forms.push(form);
    }
    Ok(forms)
}

fn to_rational_poly(
    p: &EnumeratorPolynomial<Cyclotomic>,
    n: usize,
) -> Result<EnumeratorPolynomial<BigRational>> {
    let mut out = EnumeratorPolynomial::zero(p.q(), p.fold(), n);
    for (e, c) in p.terms() {
        let r = c
            .to_rational()
            .ok_or_else(|| Error::NonRational(format!("{c} at {:?}", e.as_slice())))?;
        out.add_term(e.clone(), r);
    }
    Ok(out)
}

/// Applies the dualizing substitution on `coords` and the `1/Π|C_j|`
/// prefactor; `sizes[j]` is |C_j| for every coordinate j.
pub fn transform_coordinates(
    field: &Field,
    poly: &EnumeratorPolynomial<BigRational>,
    coords: &[usize],
    sizes: &[u128],
    budget: &Budget,
) -> Result<EnumeratorPolynomial<BigRational>> {
    if poly.q() != field.size() {
        return Err(Error::FieldMismatch {
            left: poly.q() as u32,
            right: field.q(),
        });
    }
    if sizes.len() != poly.fold() {
        return Err(Error::Dimension(format!(
            "{} code sizes for a {}-fold enumerator",
            sizes.len(),
            poly.fold()
        )));
    }
    let fan_out = pow_sat(field.size() as u128, coords.len());
    budget.check(
        "MacWilliams expansion",
        pow_sat(fan_out, poly.n()).saturating_mul(poly.len() as u128),
    )?;
    let forms = substitution_forms(field, poly.fold(), coords)?;
    let expanded = poly
        .to_ring::<Cyclotomic>()
        .substitute(&forms, poly.fold())?;
    let mut denom = BigInt::from(1);
    for &j in coords {
        if sizes[j] == 0 {
            return Err(Error::InvalidArgument("code size must be positive".into()));
        }
        denom *= BigInt::from(sizes[j]);
    }
    let prefactor = BigRational::new(BigInt::from(1), denom);
    let out = to_rational_poly(&expanded, poly.n())?;
    let scaled = out.scale(&prefactor);
    debug_assert!(scaled.terms().all(|(_, c)| !c.is_zero()));
    Ok(scaled)
}

/// The three joint-enumerator variants; for a 1-fold enumerator only
/// [`Variant::First`] applies. `sizes` lists |C_1| (and |C_2|).
pub fn macwilliams_transform(
    field: &Field,
    poly: &EnumeratorPolynomial<BigRational>,
    variant: Variant,
    sizes: &[u128],
    budget: &Budget,
) -> Result<EnumeratorPolynomial<BigRational>> {
    match (poly.fold(), variant) {
        (1, Variant::First) | (2, _) => {
            transform_coordinates(field, poly, variant.coordinates(), sizes, budget)
        }
        (g, v) => Err(Error::InvalidArgument(format!(
            "variant {} does not apply to a {g}-fold enumerator",
            v.roman()
        ))),
    }
}
