//! Monomial matrices M = DP and their right action on words and codes.
//!
//! The action is fixed as `v_i = d_i · u_{π(i)}`.

use itertools::Itertools;

use crate::budget::{factorial_sat, pow_sat, Budget};
use crate::code::{LinearCode, Word};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    diag: Vec<FieldElement>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, diag: Vec<FieldElement>) -> Result<Self> {
        let n = perm.len();
        if diag.len() != n {
            return Err(Error::Dimension(format!(
                "permutation has size {n}, diagonal {}",
                diag.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
        }
        if diag.iter().any(|d| d.is_zero()) {
            return Err(Error::InvalidArgument("diagonal entries must be nonzero".into()));
        }
        Ok(MonomialMatrix { perm, diag })
    }

    pub fn identity(n: usize) -> Self {
        MonomialMatrix {
            perm: (0..n).collect(),
            diag: vec![FieldElement::ONE; n],
        }
    }

    pub fn diagonal(diag: Vec<FieldElement>) -> Result<Self> {
        Self::new((0..diag.len()).collect(), diag)
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        Self::new(perm, vec![FieldElement::ONE; n])
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn diag(&self) -> &[FieldElement] {
        &self.diag
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
            && self.diag.iter().all(|&d| d == FieldElement::ONE)
    }

    /// Writes `uM` into `out` without checks.
    #[inline]
    pub(crate) fn apply_into(&self, field: &Field, u: &[FieldElement], out: &mut [FieldElement]) {
        for ((o, &d), &p) in out.iter_mut().zip(&self.diag).zip(&self.perm) {
            *o = field.mul(d, u[p]);
        }
    }

    pub fn apply(&self, field: &Field, u: &[FieldElement]) -> Result<Word> {
        if u.len() != self.size() {
            return Err(Error::Dimension(format!(
                "word of length {} under a {}×{} monomial matrix",
                u.len(),
                self.size(),
                self.size()
            )));
        }
        if let Some(bad) = self.diag.iter().chain(u).find(|x| x.index() >= field.size()) {
            return Err(Error::ElementOutOfRange {
                index: bad.index() as u32,
                q: field.q(),
            });
        }
        let mut out = vec![FieldElement::ZERO; u.len()];
        self.apply_into(field, u, &mut out);
        Ok(out)
    }

    /// The image code CM, re-canonicalized.
    pub fn apply_code(&self, code: &LinearCode) -> Result<LinearCode> {
        let rows = code
            .generators()
            .iter()
            .map(|g| self.apply(code.field(), g))
            .collect::<Result<Vec<_>>>()?;
        LinearCode::new(code.field().clone(), code.len(), rows)
    }

    /// The matrix acting as "first `self`, then `next`".
    pub fn then(&self, field: &Field, next: &MonomialMatrix) -> Result<Self> {
        if self.size() != next.size() {
            return Err(Error::Dimension("monomial matrices differ in size".into()));
        }
        let perm = next.perm.iter().map(|&j| self.perm[j]).collect();
        let diag = next
            .perm
            .iter()
            .zip(&next.diag)
            .map(|(&j, &d)| field.mul(d, self.diag[j]))
            .collect();
        Ok(MonomialMatrix { perm, diag })
    }

    pub fn inverse(&self, field: &Field) -> Self {
        let n = self.size();
        let mut perm = vec![0; n];
        let mut diag = vec![FieldElement::ONE; n];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
            diag[p] = field.inv(self.diag[i]).expect("diagonal is nonzero");
        }
        MonomialMatrix { perm, diag }
    }
}

/// (q−1)ⁿ·n!, saturating.
pub fn group_order(field: &Field, n: usize) -> u128 {
    pow_sat(field.q() as u128 - 1, n).saturating_mul(factorial_sat(n))
}

/// All invertible diagonal matrices, diagonal vectors in index order.
pub fn diagonals(field: &Field, n: usize) -> impl Iterator<Item = Vec<FieldElement>> + Clone {
    (0..n)
        .map(|_| field.nonzero())
        .multi_cartesian_product()
}

/// Every monomial matrix of size n: diagonals in index order, and for each,
/// permutations in lexicographic order.
pub fn monomial_group(
    field: &Field,
    n: usize,
    budget: &Budget,
) -> Result<impl Iterator<Item = MonomialMatrix>> {
    budget.check("monomial group", group_order(field, n))?;
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    Ok(diagonals(field, n).flat_map(move |diag| {
        perms
            .clone()
            .into_iter()
            .map(move |perm| MonomialMatrix {
                perm,
                diag: diag.clone(),
            })
    }))
}
