//! Monomial-group averages of joint enumerators.
//!
//! Two independent routes are provided for every average: the defining sum
//! over all (q−1)ⁿ·n! monomial matrices, and the closed multinomial
//! formulas (evaluated exactly as written, without correction). For q = 2
//! the two must agree; for q > 2 [`compare`] records where they differ.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use crate::budget::Budget;
use crate::code::{LinearCode, Word};
use crate::composition::{
    cell_count, cell_index, composition_count, profile_space, profiles, total_tuples, Census,
};
use crate::error::{Error, Result};
use crate::macwilliams::{transform_coordinates, Variant};
use crate::monomial::{group_order, monomial_group};
use crate::multinomial::multinomial;
use crate::poly::ExponentVector;
use crate::scalar::rational_to_string;
use crate::RationalPoly;

fn ensure_family(codes: &[LinearCode], budget: &Budget) -> Result<()> {
    let Some(first) = codes.first() else {
        return Err(Error::InvalidArgument("need at least one code".into()));
    };
    budget.check_len(first.len())?;
    for c in &codes[1..] {
        first.ensure_compatible(c)?;
    }
    Ok(())
}

fn averaged(q: usize, fold: usize, n: usize, sums: BTreeMap<Vec<u32>, u128>, order: u128) -> RationalPoly {
    let mut p = RationalPoly::zero(q, fold, n);
    let order = BigInt::from(order);
    for (exp, count) in sums {
        p.add_term(
            ExponentVector(exp),
            BigRational::new(BigInt::from(count), order.clone()),
        );
    }
    p
}

/// `1/((q−1)ⁿ n!) · Σ_M CJW_{C1 M, C2}`, with each image code C1M built
/// and re-enumerated.
pub fn avg_cjwe_bruteforce(c1: &LinearCode, c2: &LinearCode, budget: &Budget) -> Result<RationalPoly> {
    ensure_family(&[c1.clone(), c2.clone()], budget)?;
    let field = c1.field();
    let n = c1.len();
    let order = group_order(field, n);
    budget.check(
        "brute-force average",
        order
            .saturating_mul(c1.size())
            .saturating_mul(c2.size())
            .saturating_mul(n as u128),
    )?;
    let mut sums: BTreeMap<Vec<u32>, u128> = BTreeMap::new();
    for m in monomial_group(field, n, budget)? {
        let image = m.apply_code(c1)?;
        let census = Census::of(&[image, c2.clone()], budget)?;
        for (eta, count) in census.iter() {
            *sums.entry(eta.counts().to_vec()).or_insert(0) += count as u128;
        }
    }
    Ok(averaged(field.size(), 2, n, sums, order))
}

/// `1/((q−1)ⁿ n!) · Σ_M CJW_{C1 M, C2, …, Cg}`, applying each M to the
/// codewords of C1 directly.
pub fn avg_gfold_bruteforce(codes: &[LinearCode], budget: &Budget) -> Result<RationalPoly> {
    ensure_family(codes, budget)?;
    let c1 = &codes[0];
    let field = c1.field();
    let q = field.size();
    let n = c1.len();
    let g = codes.len();
    let order = group_order(field, n);
    budget.check(
        "brute-force average",
        order
            .saturating_mul(total_tuples(codes))
            .saturating_mul(n as u128),
    )?;

    // per-position cells of (c_2, …, c_g), with multiplicity
    let mut patterns: HashMap<Vec<usize>, u128> = HashMap::new();
    patterns.insert(vec![0; n], 1);
    for code in &codes[1..] {
        let words: Vec<Word> = code.codewords(budget)?.collect();
        let mut next = HashMap::new();
        for (pat, mult) in &patterns {
            for w in &words {
                let key: Vec<usize> = pat.iter().zip(w).map(|(&p, x)| p * q + x.index()).collect();
                *next.entry(key).or_insert(0) += mult;
            }
        }
        patterns = next;
    }
    let mut patterns: Vec<(Vec<usize>, u128)> = patterns.into_iter().collect();
    patterns.sort();

    let words1: Vec<Word> = c1.codewords(budget)?.collect();
    let stride = cell_count(q, g - 1);
    let cells = cell_count(q, g);
    let mut sums: BTreeMap<Vec<u32>, u128> = BTreeMap::new();
    let mut image = vec![Default::default(); n];
    for m in monomial_group(field, n, budget)? {
        for u in &words1 {
            m.apply_into(field, u, &mut image);
            for (pat, mult) in &patterns {
                let mut profile = vec![0u32; cells];
                for (x, &b) in image.iter().zip(pat) {
                    profile[x.index() * stride + b] += 1;
                }
                *sums.entry(profile).or_insert(0) += mult;
            }
        }
    }
    Ok(averaged(q, g, n, sums, order))
}

fn ratio(numer: num_bigint::BigUint, denom: num_bigint::BigUint) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The two-code closed form:
///
/// ```text
/// Σ_{r,s,η} A_r^{C1} A_s^{C2} · Π_i (s_i; η_{ω0 ωi}, …, η_{ω_{q−1} ωi}) / (n; r_0, …, r_{q−1}) · Π x^η
/// ```
///
/// with r and s the row and column marginals of η.
pub fn avg_cjwe_closedform(c1: &LinearCode, c2: &LinearCode, budget: &Budget) -> Result<RationalPoly> {
    ensure_family(&[c1.clone(), c2.clone()], budget)?;
    let q = c1.field().size();
    let n = c1.len();
    budget.check("profile enumeration", composition_count(n, q * q))?;
    let a1 = Census::of(std::slice::from_ref(c1), budget)?;
    let a2 = Census::of(std::slice::from_ref(c2), budget)?;
    let mut out = RationalPoly::zero(q, 2, n);
    for eta in profiles(q, 2, n as u32) {
        let r = eta.marginal(0)?;
        let s = eta.marginal(1)?;
        let (ar, as_) = (a1.get(&r), a2.get(&s));
        if ar == 0 || as_ == 0 {
            continue;
        }
        let mut numer = num_bigint::BigUint::from(1u32);
        for i in 0..q {
            let column: Vec<u32> = (0..q).map(|j| eta.get(&[j, i])).collect();
            numer *= multinomial(s.counts()[i], &column)?;
        }
        let denom = multinomial(n as u32, r.counts())?;
        let coef = ratio(numer, denom) * BigRational::from_integer(BigInt::from(ar) * BigInt::from(as_));
        out.add_term(ExponentVector(eta.counts().to_vec()), coef);
    }
    Ok(out)
}

/// The g-fold closed form:
///
/// ```text
/// Σ A_{s1}^{C1} A_{η^{g−1}}^{C2,…,Cg} · Π_b (η^{g−1}_b; η^g_{(ω0,b)}, …, η^g_{(ω_{q−1},b)}) / (n; s1) · Π x^{η^g}
/// ```
///
/// with `s1` the first marginal and `η^{g−1}_b = Σ_{[a;1]=b} η^g_a`.
pub fn avg_gfold_closedform(codes: &[LinearCode], budget: &Budget) -> Result<RationalPoly> {
    ensure_family(codes, budget)?;
    let c1 = &codes[0];
    let q = c1.field().size();
    let n = c1.len();
    let g = codes.len();
    budget.check("profile enumeration", profile_space(q, g, n))?;
    let first = Census::of(std::slice::from_ref(c1), budget)?;
    let rest = if g == 1 {
        Census::trivial(q, n)
    } else {
        Census::of(&codes[1..], budget)?
    };
    let mut out = RationalPoly::zero(q, g, n);
    for eta in profiles(q, g, n as u32) {
        let s1 = eta.marginal(0)?;
        let eta_rest = eta.drop_coordinate(0)?;
        let (a_first, a_rest) = (first.get(&s1), rest.get(&eta_rest));
        if a_first == 0 || a_rest == 0 {
            continue;
        }
        let mut numer = num_bigint::BigUint::from(1u32);
        for b in 0..cell_count(q, g - 1) {
            let column: Vec<u32> = (0..q)
                .map(|z| eta.counts()[z * cell_count(q, g - 1) + b])
                .collect();
            numer *= multinomial(eta_rest.counts()[b], &column)?;
        }
        let denom = multinomial(n as u32, s1.counts())?;
        let coef = ratio(numer, denom)
            * BigRational::from_integer(BigInt::from(a_first) * BigInt::from(a_rest));
        out.add_term(ExponentVector(eta.counts().to_vec()), coef);
    }
    Ok(out)
}

/// The averaged MacWilliams substitution; identical to the plain transform
/// applied to an averaged enumerator, with prefactor 1/|C1|, 1/|C2| or both.
pub fn avg_macwilliams(
    field: &crate::field::Field,
    averaged: &RationalPoly,
    variant: Variant,
    sizes: &[u128],
    budget: &Budget,
) -> Result<RationalPoly> {
    if averaged.fold() != 2 {
        return Err(Error::InvalidArgument(
            "averaged MacWilliams identities need a 2-fold enumerator".into(),
        ));
    }
    transform_coordinates(field, averaged, variant.coordinates(), sizes, budget)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Difference {
    pub exp: ExponentVector,
    pub left: BigRational,
    pub right: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AverageReport {
    pub left: RationalPoly,
    pub right: RationalPoly,
    pub differences: Vec<Difference>,
    pub agreed: bool,
}

/// Exact term-by-term comparison in canonical order.
pub fn compare(left: &RationalPoly, right: &RationalPoly) -> Result<AverageReport> {
    if left.q() != right.q() || left.fold() != right.fold() || left.n() != right.n() {
        return Err(Error::Dimension(format!(
            "cannot compare q={} g={} n={} with q={} g={} n={}",
            left.q(),
            left.fold(),
            left.n(),
            right.q(),
            right.fold(),
            right.n()
        )));
    }
    let mut keys: Vec<&ExponentVector> = left.terms().map(|(e, _)| e).collect();
    keys.extend(right.terms().map(|(e, _)| e));
    keys.sort();
    keys.dedup();
    let differences: Vec<Difference> = keys
        .into_iter()
        .filter_map(|e| {
            let (l, r) = (left.coefficient(e.as_slice()), right.coefficient(e.as_slice()));
            (l != r).then(|| Difference {
                exp: e.clone(),
                left: l,
                right: r,
            })
        })
        .collect();
    Ok(AverageReport {
        agreed: differences.is_empty(),
        left: left.clone(),
        right: right.clone(),
        differences,
    })
}

impl AverageReport {
    /// Canonical document with `agreed` and `differences`.
    pub fn to_document(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{{");
        let _ = writeln!(s, "  \"fold\": {},", self.left.fold());
        let _ = writeln!(s, "  \"q\": {},", self.left.q());
        let _ = writeln!(s, "  \"n\": {},", self.left.n());
        let _ = writeln!(s, "  \"agreed\": {},", self.agreed);
        if self.differences.is_empty() {
            let _ = writeln!(s, "  \"differences\": []");
        } else {
            let _ = writeln!(s, "  \"differences\": [");
            let last = self.differences.len() - 1;
            for (i, d) in self.differences.iter().enumerate() {
                let exp = serde_json::to_string(d.exp.as_slice()).expect("u32 array");
                let sep = if i == last { "" } else { "," };
                let _ = writeln!(
                    s,
                    "    {{\"exp\": {exp}, \"left\": {}, \"right\": {}}}{sep}",
                    Value::String(rational_to_string(&d.left)),
                    Value::String(rational_to_string(&d.right))
                );
            }
            let _ = writeln!(s, "  ]");
        }
        let _ = writeln!(s, "}}");
        s
    }

    /// The all-zero coefficient differences are impossible by construction.
    pub fn max_abs_difference(&self) -> BigRational {
        self.differences
            .iter()
            .map(|d| {
                let x = &d.left - &d.right;
                if x < BigRational::zero() {
                    -x
                } else {
                    x
                }
            })
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Numbers of nonzero (η, coefficient) cells, useful for quick summaries.
pub fn term_index(q: usize, tuple: &[usize]) -> usize {
    cell_index(q, tuple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::all_codes;
    use crate::enumerators::{cjwe, cwe};
    use crate::field::Field;
    use num_traits::One;

    fn f(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    fn exp9(cells: &[(usize, u32)]) -> Vec<u32> {
        let mut e = vec![0; 9];
        for &(c, k) in cells {
            e[c] = k;
        }
        e
    }

    #[test]
    fn binary_pair_both_routes() {
        let b = Budget::default();
        let f2 = f(2);
        let c1 = LinearCode::from_indices(&f2, 2, &[&[1, 1]]).unwrap();
        let c2 = LinearCode::from_indices(&f2, 2, &[&[0, 1]]).unwrap();
        let direct = cjwe::<BigRational>(&c1, &c2, &b).unwrap();
        assert_eq!(avg_cjwe_bruteforce(&c1, &c2, &b).unwrap(), direct);
        assert_eq!(avg_cjwe_closedform(&c1, &c2, &b).unwrap(), direct);
        assert!(compare(&direct, &avg_cjwe_closedform(&c1, &c2, &b).unwrap()).unwrap().agreed);
    }

    #[test]
    fn ternary_pair_routes_diverge() {
        // C1 = span{(1,1)} over F_3, C2 = zero code; cells 10 and 20 are indices 3 and 6
        let b = Budget::default();
        let f3 = f(3);
        let c1 = LinearCode::from_indices(&f3, 2, &[&[1, 1]]).unwrap();
        let c2 = LinearCode::zero(f3, 2).unwrap();
        let brute = avg_cjwe_bruteforce(&c1, &c2, &b).unwrap();
        let mut expected = RationalPoly::zero(3, 2, 2);
        expected.add_term(ExponentVector(exp9(&[(0, 2)])), BigRational::one());
        expected.add_term(ExponentVector(exp9(&[(3, 2)])), half());
        expected.add_term(ExponentVector(exp9(&[(6, 2)])), half());
        expected.add_term(ExponentVector(exp9(&[(3, 1), (6, 1)])), BigRational::one());
        assert_eq!(brute, expected);

        let closed = avg_cjwe_closedform(&c1, &c2, &b).unwrap();
        let mut expected_closed = RationalPoly::zero(3, 2, 2);
        for cell in [0, 3, 6] {
            expected_closed.add_term(ExponentVector(exp9(&[(cell, 2)])), BigRational::one());
        }
        assert_eq!(closed, expected_closed);

        let report = compare(&closed, &brute).unwrap();
        assert!(!report.agreed);
        let diff_exps: Vec<Vec<u32>> = report.differences.iter().map(|d| d.exp.0.clone()).collect();
        let mut want = vec![exp9(&[(3, 1), (6, 1)]), exp9(&[(6, 2)]), exp9(&[(3, 2)])];
        want.sort();
        assert_eq!(diff_exps, want);
        assert_eq!(report.max_abs_difference(), BigRational::one());
    }

    #[test]
    fn zero_first_code_is_fixed() {
        let b = Budget::default();
        let f3 = f(3);
        let z = LinearCode::zero(f3.clone(), 3).unwrap();
        let c2 = LinearCode::from_indices(&f3, 3, &[&[1, 2, 0], &[0, 1, 1]]).unwrap();
        let direct = cjwe::<BigRational>(&z, &c2, &b).unwrap();
        assert_eq!(avg_cjwe_bruteforce(&z, &c2, &b).unwrap(), direct);
        assert_eq!(avg_gfold_bruteforce(&[z.clone(), c2.clone()], &b).unwrap(), direct);
        let zz = cjwe::<BigRational>(&z, &z, &b).unwrap();
        assert_eq!(avg_cjwe_closedform(&z, &z, &b).unwrap(), zz);
    }

    #[test]
    fn gfold_examples() {
        let b = Budget::default();
        let f2 = f(2);
        let c1 = LinearCode::from_indices(&f2, 2, &[&[1, 1]]).unwrap();
        let z = LinearCode::zero(f2.clone(), 2).unwrap();
        let triple = [c1.clone(), z.clone(), z.clone()];
        let mut expected = RationalPoly::zero(2, 3, 2);
        let mut e0 = vec![0; 8];
        e0[0] = 2;
        let mut e1 = vec![0; 8];
        e1[4] = 2; // cell (1,0,0)
        expected.add_term(ExponentVector(e0), BigRational::one());
        expected.add_term(ExponentVector(e1), BigRational::one());
        assert_eq!(avg_gfold_bruteforce(&triple, &b).unwrap(), expected);
        assert_eq!(avg_gfold_closedform(&triple, &b).unwrap(), expected);

        let full = LinearCode::full(f2.clone(), 3).unwrap();
        assert_eq!(
            avg_gfold_bruteforce(std::slice::from_ref(&full), &b).unwrap(),
            cwe::<BigRational>(&full, &b).unwrap()
        );
        let zz = [z.clone(), z.clone(), z];
        assert_eq!(
            avg_gfold_closedform(&zz, &b).unwrap(),
            crate::enumerators::gfold_cjwe::<BigRational>(&zz, &b).unwrap()
        );
    }

    #[test]
    fn gfold_reduces_to_pairs() {
        let b = Budget::default();
        for q in [2, 3] {
            let codes = all_codes(&f(q), 2, &b).unwrap();
            for c1 in &codes {
                for c2 in &codes {
                    let pair = [c1.clone(), c2.clone()];
                    assert_eq!(
                        avg_gfold_bruteforce(&pair, &b).unwrap(),
                        avg_cjwe_bruteforce(c1, c2, &b).unwrap()
                    );
                    assert_eq!(
                        avg_gfold_closedform(&pair, &b).unwrap(),
                        avg_cjwe_closedform(c1, c2, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn report_document() {
        let b = Budget::default();
        let f3 = f(3);
        let c1 = LinearCode::from_indices(&f3, 2, &[&[1, 1]]).unwrap();
        let c2 = LinearCode::zero(f3, 2).unwrap();
        let report = compare(
            &avg_cjwe_closedform(&c1, &c2, &b).unwrap(),
            &avg_cjwe_bruteforce(&c1, &c2, &b).unwrap(),
        )
        .unwrap();
        let doc = report.to_document();
        assert!(doc.contains("\"agreed\": false"));
        assert!(doc.contains("{\"exp\": [0,0,0,2,0,0,0,0,0], \"left\": \"1/1\", \"right\": \"1/2\"}"));
        let v: Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(v["differences"].as_array().unwrap().len(), 3);
        let same = compare(&report.left, &report.left).unwrap();
        assert!(same.agreed && same.differences.is_empty());
    }

    #[test]
    fn shape_mismatch() {
        let a = RationalPoly::zero(2, 2, 2);
        let b = RationalPoly::zero(3, 2, 2);
        assert!(compare(&a, &b).is_err());
    }
}
