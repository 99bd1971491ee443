//! Instance sweeps for the identities and lemmas around the averaged
//! enumerators.
//!
//! Equality claims with independent proofs (both MacWilliams families, and
//! the closed forms over F_2) are asserted; the remaining checks only
//! report what they find.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::average::{
    avg_cjwe_bruteforce, avg_cjwe_closedform, avg_gfold_bruteforce, avg_gfold_closedform,
    avg_macwilliams, compare,
};
use crate::budget::{pow_sat, Budget};
use crate::code::{all_codes, random_code, LinearCode};
use crate::codefile::write_code;
use crate::composition::{profiles, Census, CompositionProfile};
use crate::enumerators::cjwe;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::macwilliams::{macwilliams_transform, Variant};
use crate::monomial::{diagonals, monomial_group, MonomialMatrix};

/// `C^⊥ M = (C M^{-1})^⊥` for one matrix.
pub fn check_lemma31(code: &LinearCode, m: &MonomialMatrix) -> Result<bool> {
    let field = code.field();
    let left = m.apply_code(&code.dual())?;
    let right = m.inverse(field).apply_code(code)?.dual();
    Ok(left == right)
}

/// Per-matrix verdicts over the whole monomial group, in group order.
pub fn sweep_lemma31(code: &LinearCode, budget: &Budget) -> Result<Vec<(MonomialMatrix, bool)>> {
    monomial_group(code.field(), code.len(), budget)?
        .map(|m| check_lemma31(code, &m).map(|ok| (m, ok)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma42 {
    pub lhs: u128,
    pub rhs: u128,
    pub equal: bool,
}

/// `Σ_D A_r^{CD}` against `(q−1)ⁿ A_r^C`, D over invertible diagonals.
pub fn check_lemma42(code: &LinearCode, r: &CompositionProfile, budget: &Budget) -> Result<Lemma42> {
    let field = code.field();
    let n = code.len();
    if r.fold() != 1 || r.q() != field.size() || r.total() as usize != n {
        return Err(Error::Dimension(format!(
            "profile {r} does not fit a length-{n} code over F_{}",
            field.q()
        )));
    }
    let scalings = pow_sat(field.q() as u128 - 1, n);
    budget.check(
        "diagonal sweep",
        scalings.saturating_mul(code.size()).saturating_mul(n as u128),
    )?;
    let mut lhs = 0u128;
    for d in diagonals(field, n) {
        let image = MonomialMatrix::diagonal(d)?.apply_code(code)?;
        lhs += Census::of(&[image], budget)?.get(r) as u128;
    }
    let rhs = scalings * Census::of(std::slice::from_ref(code), budget)?.get(r) as u128;
    Ok(Lemma42 {
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// The generator behind every seeded sweep and random code.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// MacWilliams identities for the joint enumerator; `None` runs all three.
    MacWilliams(Option<Variant>),
    /// The same identities for the monomial average.
    AvgMacWilliams(Option<Variant>),
    /// Pairwise closed form against the brute-force average.
    Yoshida,
    /// Three-fold closed form against the brute-force average.
    GFold,
    Lemma31,
    Lemma42,
}

impl Claim {
    pub fn id(self) -> String {
        let suffix = |v: Option<Variant>| v.map(Variant::roman).unwrap_or("");
        match self {
            Claim::MacWilliams(v) => format!("thm32{}", suffix(v)),
            Claim::AvgMacWilliams(v) => format!("thm33{}", suffix(v)),
            Claim::Yoshida => "thm43".into(),
            Claim::GFold => "thm52".into(),
            Claim::Lemma31 => "lemma31".into(),
            Claim::Lemma42 => "lemma42".into(),
        }
    }

    /// Number of codes per instance.
    pub fn arity(self) -> usize {
        match self {
            Claim::MacWilliams(_) | Claim::AvgMacWilliams(_) | Claim::Yoshida => 2,
            Claim::GFold => 3,
            Claim::Lemma31 | Claim::Lemma42 => 1,
        }
    }

    /// Whether a failure at this field order counts as a violation.
    pub fn asserted_at(self, q: u32) -> bool {
        match self {
            Claim::MacWilliams(_) | Claim::AvgMacWilliams(_) => true,
            Claim::Yoshida | Claim::GFold => q == 2,
            Claim::Lemma31 | Claim::Lemma42 => false,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Claim> {
        let variant = |rest: &str| -> Result<Option<Variant>> {
            if rest.is_empty() {
                Ok(None)
            } else {
                rest.parse().map(Some)
            }
        };
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "macwilliams" => return Ok(Claim::MacWilliams(None)),
            "avg-macwilliams" => return Ok(Claim::AvgMacWilliams(None)),
            "thm43" | "yoshida" => return Ok(Claim::Yoshida),
            "thm52" | "gfold" => return Ok(Claim::GFold),
            "lemma31" => return Ok(Claim::Lemma31),
            "lemma42" => return Ok(Claim::Lemma42),
            _ => {}
        }
        let bad = || Error::InvalidArgument(format!("unknown claim `{s}`"));
        if let Some(rest) = s.strip_prefix("thm32") {
            return variant(rest.trim_start_matches('-')).map(Claim::MacWilliams).map_err(|_| bad());
        }
        if let Some(rest) = s.strip_prefix("thm33") {
            return variant(rest.trim_start_matches('-')).map(Claim::AvgMacWilliams).map_err(|_| bad());
        }
        Err(bad())
    }
}

/// Field orders and lengths to sweep. Without `trials`, every instance is
/// enumerated; otherwise `trials` seeded random instances per (q, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub q: Vec<u32>,
    pub n: Vec<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            q: vec![2, 3, 4],
            n: vec![1, 2, 3],
            trials: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub index: usize,
    pub q: u32,
    pub n: usize,
    pub check: String,
    pub holds: bool,
    pub asserted: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    /// The instance's codes in code-file format.
    pub codes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub grid_q: Vec<u32>,
    pub grid_n: Vec<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// A failed check whose equality is asserted.
    pub violated: bool,
    pub verdicts: Vec<Verdict>,
}

impl ClaimCheck {
    pub fn to_document(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("claim check serializes");
        s.push('\n');
        s
    }
}

fn instances(claim: Claim, grid: &Grid, budget: &Budget) -> Result<Vec<(u32, usize, Vec<LinearCode>)>> {
    let mut rng = seeded_rng(grid.seed);
    let mut out = Vec::new();
    for &q in &grid.q {
        let field = Field::of_order(q)?;
        for &n in &grid.n {
            if n == 0 {
                return Err(Error::InvalidArgument("code length must be positive".into()));
            }
            budget.check_len(n)?;
            match grid.trials {
                Some(trials) => {
                    for _ in 0..trials {
                        let codes = (0..claim.arity())
                            .map(|_| {
                                let k = rng.gen_range(0..=n);
                                random_code(&field, n, k, &mut rng)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        out.push((q, n, codes));
                    }
                }
                None => {
                    let all = all_codes(&field, n, budget)?;
                    let count = pow_sat(all.len() as u128, claim.arity());
                    budget.check("instance enumeration", count)?;
                    let mut tuples: Vec<Vec<LinearCode>> = vec![Vec::new()];
                    for _ in 0..claim.arity() {
                        tuples = tuples
                            .into_iter()
                            .flat_map(|t| {
                                all.iter().map(move |c| {
                                    let mut t = t.clone();
                                    t.push(c.clone());
                                    t
                                })
                            })
                            .collect();
                    }
                    out.extend(tuples.into_iter().map(|t| (q, n, t)));
                }
            }
        }
    }
    Ok(out)
}

fn dualized(codes: &[LinearCode], variant: Variant) -> Vec<LinearCode> {
    codes
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if variant.coordinates().contains(&j) {
                c.dual()
            } else {
                c.clone()
            }
        })
        .collect()
}

fn variants(v: Option<Variant>) -> Vec<Variant> {
    v.map_or_else(|| Variant::ALL.to_vec(), |v| vec![v])
}

fn check_instance(
    claim: Claim,
    codes: &[LinearCode],
    budget: &Budget,
) -> Result<Vec<(String, bool, Value)>> {
    let field = codes[0].field();
    let sizes: Vec<u128> = codes.iter().map(LinearCode::size).collect();
    let mut out = Vec::new();
    match claim {
        Claim::MacWilliams(v) => {
            let joint = cjwe::<BigRational>(&codes[0], &codes[1], budget)?;
            for variant in variants(v) {
                let left = macwilliams_transform(field, &joint, variant, &sizes, budget)?;
                let d = dualized(codes, variant);
                let right = cjwe::<BigRational>(&d[0], &d[1], budget)?;
                out.push((variant.roman().to_string(), left == right, Value::Null));
            }
        }
        Claim::AvgMacWilliams(v) => {
            let avg = avg_cjwe_bruteforce(&codes[0], &codes[1], budget)?;
            for variant in variants(v) {
                let left = avg_macwilliams(field, &avg, variant, &sizes, budget)?;
                let d = dualized(codes, variant);
                let right = avg_cjwe_bruteforce(&d[0], &d[1], budget)?;
                out.push((variant.roman().to_string(), left == right, Value::Null));
            }
        }
        Claim::Yoshida | Claim::GFold => {
            let (closed, brute) = if claim == Claim::Yoshida {
                (
                    avg_cjwe_closedform(&codes[0], &codes[1], budget)?,
                    avg_cjwe_bruteforce(&codes[0], &codes[1], budget)?,
                )
            } else {
                (avg_gfold_closedform(codes, budget)?, avg_gfold_bruteforce(codes, budget)?)
            };
            let report = compare(&closed, &brute)?;
            let detail = if report.agreed {
                Value::Null
            } else {
                json!({ "differences": report.differences.len() })
            };
            out.push(("closed=brute".into(), report.agreed, detail));
        }
        Claim::Lemma31 => {
            let sweep = sweep_lemma31(&codes[0], budget)?;
            let failures = sweep.iter().filter(|(_, ok)| !ok).count();
            let first = sweep.iter().find(|(_, ok)| !ok).map(|(m, _)| {
                json!({
                    "perm": m.perm(),
                    "diag": m.diag().iter().map(|d| d.index()).collect::<Vec<_>>(),
                })
            });
            let mut detail = json!({ "matrices": sweep.len(), "failures": failures });
            if let Some(first) = first {
                detail["first_failure"] = first;
            }
            out.push(("all M".into(), failures == 0, detail));
        }
        Claim::Lemma42 => {
            let code = &codes[0];
            for r in profiles(field.size(), 1, code.len() as u32) {
                let res = check_lemma42(code, &r, budget)?;
                if res.lhs == 0 && res.rhs == 0 {
                    continue;
                }
                let detail = json!({ "r": r.counts(), "lhs": res.lhs, "rhs": res.rhs });
                out.push((format!("r={r}"), res.equal, detail));
            }
        }
    }
    Ok(out)
}

pub fn verify(claim: Claim, grid: &Grid, budget: &Budget) -> Result<ClaimCheck> {
    let all = instances(claim, grid, budget)?;
    let mut verdicts = Vec::new();
    for (index, (q, n, codes)) in all.iter().enumerate() {
        let texts: Vec<String> = codes.iter().map(write_code).collect();
        for (check, holds, detail) in check_instance(claim, codes, budget)? {
            verdicts.push(Verdict {
                index,
                q: *q,
                n: *n,
                check,
                holds,
                asserted: claim.asserted_at(*q),
                detail,
                codes: texts.clone(),
            });
        }
    }
    let passed = verdicts.iter().filter(|v| v.holds).count();
    Ok(ClaimCheck {
        claim: claim.id(),
        grid_q: grid.q.clone(),
        grid_n: grid.n.clone(),
        trials: grid.trials,
        seed: grid.seed,
        instances: all.len(),
        passed,
        failed: verdicts.len() - passed,
        violated: verdicts.iter().any(|v| v.asserted && !v.holds),
        verdicts,
    })
}
