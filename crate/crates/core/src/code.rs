//! Linear codes stored by a canonical (reduced row-echelon) generator matrix.

use itertools::Itertools;
use rand::Rng;

use crate::budget::{pow_sat, Budget};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub type Word = Vec<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: Field,
    n: usize,
    rows: Vec<Word>,
}

/// Reduced row-echelon form; zero rows are dropped.
pub fn rref(field: &Field, rows: &[Word], n: usize) -> Vec<Word> {
    let mut m: Vec<Word> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][col]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            let factor = row[col];
            if r != rank && !factor.is_zero() {
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

fn pivots(rows: &[Word]) -> Vec<usize> {
    rows.iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
        .collect()
}

impl LinearCode {
    /// The span of `generators`; rows may be dependent.
    pub fn new(field: Field, n: usize, generators: Vec<Word>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("code length must be positive".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::Dimension(format!(
                    "generator {i} has length {}, expected {n}",
                    g.len()
                )));
            }
            if let Some(bad) = g.iter().find(|x| x.index() >= field.size()) {
                return Err(Error::ElementOutOfRange {
                    index: bad.index() as u32,
                    q: field.q(),
                });
            }
        }
        let rows = rref(&field, &generators, n);
        Ok(LinearCode { field, n, rows })
    }

    pub fn zero(field: Field, n: usize) -> Result<Self> {
        Self::new(field, n, Vec::new())
    }

    pub fn full(field: Field, n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO })
                    .collect()
            })
            .collect();
        Self::new(field, n, rows)
    }

    /// Convenience constructor from element indices.
    pub fn from_indices(field: &Field, n: usize, generators: &[&[u32]]) -> Result<Self> {
        let rows = generators
            .iter()
            .map(|g| g.iter().map(|&i| field.element(i)).collect::<Result<Word>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(field.clone(), n, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[Word] {
        &self.rows
    }

    /// |C| = q^k, saturating.
    pub fn size(&self) -> u128 {
        pow_sat(self.field.q() as u128, self.dim())
    }

    pub fn contains(&self, word: &[FieldElement]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let mut rows = self.rows.clone();
        rows.push(word.to_vec());
        rref(&self.field, &rows, self.n).len() == self.dim()
    }

    /// All q^k codewords, message vectors in index order (first coordinate
    /// most significant).
    pub fn codewords(&self, budget: &Budget) -> Result<Codewords<'_>> {
        budget.check("codeword enumeration", self.size())?;
        Ok(Codewords {
            code: self,
            message: vec![0; self.dim()],
            done: false,
        })
    }

    /// The dual under the standard inner product.
    pub fn dual(&self) -> LinearCode {
        let piv = pivots(&self.rows);
        let free = (0..self.n).filter(|c| !piv.contains(c));
        let basis = free
            .map(|f| {
                let mut v = vec![FieldElement::ZERO; self.n];
                v[f] = FieldElement::ONE;
                for (row, &pc) in self.rows.iter().zip(&piv) {
                    v[pc] = self.field.neg(row[f]);
                }
                v
            })
            .collect::<Vec<_>>();
        LinearCode {
            field: self.field.clone(),
            n: self.n,
            rows: rref(&self.field, &basis, self.n),
        }
    }

    pub fn ensure_compatible(&self, other: &LinearCode) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "code lengths differ: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }
}

pub struct Codewords<'a> {
    code: &'a LinearCode,
    message: Vec<usize>,
    done: bool,
}

impl Iterator for Codewords<'_> {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let f = &self.code.field;
        let mut word = vec![FieldElement::ZERO; self.code.n];
        for (&mi, row) in self.message.iter().zip(&self.code.rows) {
            if mi == 0 {
                continue;
            }
            let coef = f.element(mi as u32).expect("message digit in range");
            for (w, &g) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(coef, g));
            }
        }
        // odometer, last digit fastest
        self.done = true;
        for digit in self.message.iter_mut().rev() {
            *digit += 1;
            if *digit < f.size() {
                self.done = false;
                break;
            }
            *digit = 0;
        }
        Some(word)
    }
}

/// Every subspace of F_q^n, ordered by dimension, then pivot set, then
/// free entries in index order.
pub fn all_codes(field: &Field, n: usize, budget: &Budget) -> Result<Vec<LinearCode>> {
    budget.check_len(n)?;
    let q = field.size();
    let mut out = Vec::new();
    let mut spent: u128 = 0;
    for k in 0..=n {
        for piv in (0..n).combinations(k) {
            let free_slots: Vec<(usize, usize)> = piv
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    let piv = &piv;
                    (pc + 1..n)
                        .filter(move |c| !piv.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let count = pow_sat(q as u128, free_slots.len());
            spent = spent.saturating_add(count);
            budget.check("subspace enumeration", spent)?;
            for fill in 0..count as usize {
                let mut rows = vec![vec![FieldElement::ZERO; n]; k];
                for (r, &pc) in piv.iter().enumerate() {
                    rows[r][pc] = FieldElement::ONE;
                }
                let mut rest = fill;
                for &(r, c) in free_slots.iter().rev() {
                    rows[r][c] = field.element((rest % q) as u32)?;
                    rest /= q;
                }
                out.push(LinearCode {
                    field: field.clone(),
                    n,
                    rows,
                });
            }
        }
    }
    Ok(out)
}

/// A uniformly random k×n matrix, row reduced. The rank may come out below k.
pub fn random_code<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<LinearCode> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k={k} exceeds n={n}")));
    }
    let rows = (0..k)
        .map(|_| {
            (0..n)
                .map(|_| field.element(rng.gen_range(0..field.q())))
                .collect::<Result<Word>>()
        })
        .collect::<Result<Vec<_>>>()?;
    LinearCode::new(field.clone(), n, rows)
}
