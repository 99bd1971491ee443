//! Composition profiles (1-, 2- and g-fold) and codeword-tuple censuses.
//!
//! A g-fold profile has one cell per tuple in F_q^g. Cells are ordered
//! lexicographically by element index with the first coordinate most
//! significant, so cell `(a_1, …, a_g)` sits at `Σ a_j q^{g−j}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::budget::Budget;
use crate::code::{LinearCode, Word};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CompositionProfile {
    q: usize,
    fold: usize,
    counts: Vec<u32>,
}

pub fn cell_count(q: usize, fold: usize) -> usize {
    q.pow(fold as u32)
}

pub fn cell_index(q: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * q + a)
}

pub fn cell_tuple(q: usize, fold: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; fold];
    for slot in t.iter_mut().rev() {
        *slot = index % q;
        index /= q;
    }
    t
}

/// `[a; j]`: the tuple with coordinate `j` (0-based) removed.
pub fn project_tuple<T: Clone>(a: &[T], j: usize) -> Result<Vec<T>> {
    if j >= a.len() {
        return Err(Error::InvalidArgument(format!(
            "coordinate {j} of a {}-tuple",
            a.len()
        )));
    }
    let mut out = a.to_vec();
    out.remove(j);
    Ok(out)
}

/// `(z, b)`: `z` prepended to `b`.
pub fn prepend<T: Clone>(z: T, b: &[T]) -> Vec<T> {
    std::iter::once(z).chain(b.iter().cloned()).collect()
}

impl CompositionProfile {
    pub fn new(q: usize, fold: usize, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != cell_count(q, fold) {
            return Err(Error::Dimension(format!(
                "{fold}-fold profile over F_{q} needs {} cells, got {}",
                cell_count(q, fold),
                counts.len()
            )));
        }
        Ok(CompositionProfile { q, fold, counts })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn get(&self, tuple: &[usize]) -> u32 {
        self.counts[cell_index(self.q, tuple)]
    }

    /// Profile of coordinate `j` alone (0-based).
    pub fn marginal(&self, j: usize) -> Result<CompositionProfile> {
        if j >= self.fold {
            return Err(Error::InvalidArgument(format!(
                "marginal {j} of a {}-fold profile",
                self.fold
            )));
        }
        let mut out = vec![0u32; self.q];
        for (idx, &c) in self.counts.iter().enumerate() {
            out[cell_tuple(self.q, self.fold, idx)[j]] += c;
        }
        Ok(CompositionProfile {
            q: self.q,
            fold: 1,
            counts: out,
        })
    }

    /// The (g−1)-fold profile `η_b = Σ_{[a;j]=b} η_a`.
    pub fn drop_coordinate(&self, j: usize) -> Result<CompositionProfile> {
        if j >= self.fold {
            return Err(Error::InvalidArgument(format!(
                "coordinate {j} of a {}-fold profile",
                self.fold
            )));
        }
        let mut out = vec![0u32; cell_count(self.q, self.fold - 1)];
        for (idx, &c) in self.counts.iter().enumerate() {
            let b = project_tuple(&cell_tuple(self.q, self.fold, idx), j)?;
            out[cell_index(self.q, &b)] += c;
        }
        Ok(CompositionProfile {
            q: self.q,
            fold: self.fold - 1,
            counts: out,
        })
    }
}

impl fmt::Display for CompositionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// s(u): how many coordinates of `u` equal each field element.
pub fn composition(field: &Field, u: &[FieldElement]) -> CompositionProfile {
    let mut counts = vec![0u32; field.size()];
    for x in u {
        counts[x.index()] += 1;
    }
    CompositionProfile {
        q: field.size(),
        fold: 1,
        counts,
    }
}

/// η(u, v): joint counts of the pairs (u_i, v_i).
pub fn bicomposition(
    field: &Field,
    u: &[FieldElement],
    v: &[FieldElement],
) -> Result<CompositionProfile> {
    gcomposition(field, &[u, v])
}

/// η^g(c_1, …, c_g).
pub fn gcomposition(field: &Field, words: &[&[FieldElement]]) -> Result<CompositionProfile> {
    let Some(first) = words.first() else {
        return Err(Error::InvalidArgument("g-fold composition needs g ≥ 1".into()));
    };
    let n = first.len();
    if let Some(w) = words.iter().find(|w| w.len() != n) {
        return Err(Error::Dimension(format!(
            "word lengths differ: {n} vs {}",
            w.len()
        )));
    }
    let q = field.size();
    let mut counts = vec![0u32; cell_count(q, words.len())];
    for i in 0..n {
        let idx = words.iter().fold(0, |acc, w| acc * q + w[i].index());
        counts[idx] += 1;
    }
    Ok(CompositionProfile {
        q,
        fold: words.len(),
        counts,
    })
}

/// Number of compositions of `n` into `parts` ordered parts: C(n+parts−1, parts−1).
pub fn composition_count(n: usize, parts: usize) -> u128 {
    if parts == 0 {
        return u128::from(n == 0);
    }
    let k = parts as u128 - 1;
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul(n as u128 + i) / i;
    }
    acc
}

/// Stars and bars: all vectors of `parts` non-negative integers summing to
/// `n`, starting at `(n, 0, …, 0)` and ending at `(0, …, 0, n)`.
pub struct Compositions {
    current: Option<Vec<u32>>,
}

pub fn compositions(n: u32, parts: usize) -> Compositions {
    let current = match parts {
        0 => (n == 0).then(Vec::new),
        _ => {
            let mut v = vec![0; parts];
            v[0] = n;
            Some(v)
        }
    };
    Compositions { current }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let parts = out.len();
        // move one unit from the last nonzero slot before the tail to its right neighbour,
        // and sweep the tail back into that neighbour
        let mut next = out.clone();
        let tail = next.get(parts.wrapping_sub(1)).copied().unwrap_or(0);
        if parts > 1 {
            next[parts - 1] = 0;
            if let Some(i) = (0..parts - 1).rev().find(|&i| next[i] > 0) {
                next[i] -= 1;
                next[i + 1] = tail + 1;
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// All g-fold profiles with total `n`, in stars-and-bars order.
pub fn profiles(q: usize, fold: usize, n: u32) -> impl Iterator<Item = CompositionProfile> {
    compositions(n, cell_count(q, fold)).map(move |counts| CompositionProfile { q, fold, counts })
}

/// Exact counts A of codeword tuples per g-fold profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    q: usize,
    fold: usize,
    n: usize,
    counts: BTreeMap<CompositionProfile, u64>,
}

impl Census {
    /// Census of `C_1 × … × C_g`.
    pub fn of(codes: &[LinearCode], budget: &Budget) -> Result<Census> {
        let Some(first) = codes.first() else {
            return Err(Error::InvalidArgument("census needs at least one code".into()));
        };
        for c in &codes[1..] {
            first.ensure_compatible(c)?;
        }
        let field = first.field();
        let n = first.len();
        let tuples = codes
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.size()));
        budget.check("census", tuples.saturating_mul(n as u128))?;
        let words: Vec<Vec<Word>> = codes
            .iter()
            .map(|c| c.codewords(budget).map(Iterator::collect))
            .collect::<Result<_>>()?;
        let q = field.size();
        let mut counts = BTreeMap::new();
        let mut cells = vec![0usize; n];
        walk(&words, q, 0, &mut cells, &mut counts);
        Ok(Census {
            q,
            fold: codes.len(),
            n,
            counts,
        })
    }

    /// The 0-fold census: one empty tuple whose single cell holds all n positions.
    pub fn trivial(q: usize, n: usize) -> Census {
        let profile = CompositionProfile {
            q,
            fold: 0,
            counts: vec![n as u32],
        };
        Census {
            q,
            fold: 0,
            n,
            counts: BTreeMap::from([(profile, 1)]),
        }
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, profile: &CompositionProfile) -> u64 {
        self.counts.get(profile).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CompositionProfile, u64)> {
        self.counts.iter().map(|(p, &c)| (p, c))
    }

    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// B_{r,s,η}: pairs with row marginal r, column marginal s and joint profile η.
    pub fn b(&self, r: &CompositionProfile, s: &CompositionProfile, eta: &CompositionProfile) -> Result<u64> {
        if self.fold != 2 {
            return Err(Error::InvalidArgument("B counts need a 2-fold census".into()));
        }
        if eta.marginal(0)? == *r && eta.marginal(1)? == *s {
            Ok(self.get(eta))
        } else {
            Ok(0)
        }
    }

    /// Every nonzero B_{r,s,η}, keyed by (r, s, η).
    pub fn b_view(
        &self,
    ) -> Result<BTreeMap<(CompositionProfile, CompositionProfile, CompositionProfile), u64>> {
        if self.fold != 2 {
            return Err(Error::InvalidArgument("B counts need a 2-fold census".into()));
        }
        self.counts
            .iter()
            .map(|(eta, &c)| Ok(((eta.marginal(0)?, eta.marginal(1)?, eta.clone()), c)))
            .collect()
    }
}

fn walk(
    words: &[Vec<Word>],
    q: usize,
    depth: usize,
    cells: &mut [usize],
    counts: &mut BTreeMap<CompositionProfile, u64>,
) {
    if depth == words.len() {
        let mut profile = vec![0u32; cell_count(q, words.len())];
        for &c in cells.iter() {
            profile[c] += 1;
        }
        *counts
            .entry(CompositionProfile {
                q,
                fold: words.len(),
                counts: profile,
            })
            .or_insert(0) += 1;
        return;
    }
    let saved = cells.to_vec();
    for w in &words[depth] {
        for (cell, x) in cells.iter_mut().zip(w) {
            *cell = *cell * q + x.index();
        }
        walk(words, q, depth + 1, cells, counts);
        cells.copy_from_slice(&saved);
    }
}

pub(crate) fn total_tuples(codes: &[LinearCode]) -> u128 {
    codes.iter().fold(1u128, |acc, c| acc.saturating_mul(c.size()))
}

pub(crate) fn profile_space(q: usize, fold: usize, n: usize) -> u128 {
    composition_count(n, cell_count(q, fold))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    fn w(field: &Field, xs: &[u32]) -> Word {
        xs.iter().map(|&x| field.element(x).unwrap()).collect()
    }

    #[test]
    fn single_compositions() {
        let f3 = f(3);
        assert_eq!(composition(&f3, &w(&f3, &[0, 1, 1, 2])).counts(), &[1, 2, 1]);
        assert_eq!(composition(&f3, &w(&f3, &[0, 0, 0])).counts(), &[3, 0, 0]);
        let f4 = f(4);
        assert_eq!(composition(&f4, &w(&f4, &[2, 3])).counts(), &[0, 0, 1, 1]);
    }

    #[test]
    fn joint_compositions() {
        let f2 = f(2);
        let eta = bicomposition(&f2, &w(&f2, &[0, 0]), &w(&f2, &[0, 1])).unwrap();
        assert_eq!(eta.get(&[0, 0]), 1);
        assert_eq!(eta.get(&[0, 1]), 1);
        assert_eq!(eta.total(), 2);
        let eta = bicomposition(&f2, &w(&f2, &[1, 1]), &w(&f2, &[0, 1])).unwrap();
        assert_eq!(eta.counts(), &[0, 0, 1, 1]);

        let f3 = f(3);
        let u = w(&f3, &[0, 1, 2, 2, 1]);
        let eta = bicomposition(&f3, &u, &u).unwrap();
        for a in 0..3 {
            assert_eq!(eta.get(&[a, a]), composition(&f3, &u).counts()[a]);
        }

        let g3 = gcomposition(&f2, &[&w(&f2, &[0, 0]), &w(&f2, &[0, 1]), &w(&f2, &[1, 1])]).unwrap();
        assert_eq!(g3.get(&[0, 0, 1]), 1);
        assert_eq!(g3.get(&[0, 1, 1]), 1);
        assert_eq!(g3.total(), 2);

        let zeros = w(&f2, &[0, 0, 0]);
        let z = gcomposition(&f2, &[&zeros, &zeros, &zeros]).unwrap();
        assert_eq!(z.get(&[0, 0, 0]), 3);

        assert!(bicomposition(&f2, &w(&f2, &[0]), &w(&f2, &[0, 1])).is_err());
        assert!(gcomposition(&f2, &[]).is_err());
    }

    #[test]
    fn marginals_and_projection() {
        let f3 = f(3);
        let u = w(&f3, &[0, 1, 2, 2]);
        let v = w(&f3, &[1, 1, 0, 2]);
        let x = w(&f3, &[2, 0, 0, 1]);
        let eta = gcomposition(&f3, &[&u, &v, &x]).unwrap();
        assert_eq!(eta.marginal(0).unwrap(), composition(&f3, &u));
        assert_eq!(eta.marginal(1).unwrap(), composition(&f3, &v));
        assert_eq!(eta.marginal(2).unwrap(), composition(&f3, &x));
        assert_eq!(eta.drop_coordinate(0).unwrap(), bicomposition(&f3, &v, &x).unwrap());
        assert!(eta.marginal(3).is_err());
    }

    #[test]
    fn tuple_calculus() {
        assert_eq!(project_tuple(&['x', 'y', 'z'], 0).unwrap(), vec!['y', 'z']);
        assert_eq!(prepend('w', &['y', 'z']), vec!['w', 'y', 'z']);
        assert_eq!(project_tuple(&prepend(7, &[1, 2]), 0).unwrap(), vec![1, 2]);
        assert!(project_tuple(&[1, 2], 2).is_err());
        assert_eq!(cell_tuple(3, 3, cell_index(3, &[2, 0, 1])), vec![2, 0, 1]);
    }

    #[test]
    fn stars_and_bars() {
        let all: Vec<_> = compositions(2, 3).collect();
        assert_eq!(
            all,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for (n, parts) in [(0, 1), (0, 4), (3, 1), (4, 4), (3, 9), (5, 2)] {
            let got: Vec<_> = compositions(n, parts).collect();
            assert_eq!(got.len() as u128, composition_count(n as usize, parts));
            assert!(got.iter().all(|c| c.iter().sum::<u32>() == n));
            let mut dedup = got.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), got.len());
        }
        assert_eq!(compositions(0, 0).count(), 1);
        assert_eq!(compositions(1, 0).count(), 0);
    }

    #[test]
    fn census_examples() {
        let f2 = f(2);
        let rep = LinearCode::from_indices(&f2, 2, &[&[1, 1]]).unwrap();
        let c = Census::of(std::slice::from_ref(&rep), &Budget::default()).unwrap();
        assert_eq!(c.get(&CompositionProfile::new(2, 1, vec![2, 0]).unwrap()), 1);
        assert_eq!(c.get(&CompositionProfile::new(2, 1, vec![0, 2]).unwrap()), 1);
        assert_eq!(c.total(), 2);

        for q in [2, 3, 4] {
            let z = LinearCode::zero(f(q), 2).unwrap();
            let c = Census::of(&[z], &Budget::default()).unwrap();
            assert_eq!(c.iter().count(), 1);
        }

        let f3 = f(3);
        let c3 = LinearCode::from_indices(&f3, 2, &[&[1, 1]]).unwrap();
        let census = Census::of(&[c3], &Budget::default()).unwrap();
        for counts in [vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]] {
            assert_eq!(census.get(&CompositionProfile::new(3, 1, counts).unwrap()), 1);
        }
        assert_eq!(census.total(), 3);
    }

    #[test]
    fn b_counts_follow_marginals() {
        let f3 = f(3);
        let c1 = LinearCode::from_indices(&f3, 3, &[&[1, 2, 0]]).unwrap();
        let c2 = LinearCode::from_indices(&f3, 3, &[&[0, 1, 1], &[1, 0, 2]]).unwrap();
        let census = Census::of(&[c1.clone(), c2.clone()], &Budget::default()).unwrap();
        assert_eq!(census.total(), 27);

        // brute-force B from the definition
        let mut oracle = BTreeMap::new();
        for u in c1.codewords(&Budget::default()).unwrap() {
            for v in c2.codewords(&Budget::default()).unwrap() {
                let key = (
                    composition(&f3, &u),
                    composition(&f3, &v),
                    bicomposition(&f3, &u, &v).unwrap(),
                );
                *oracle.entry(key).or_insert(0u64) += 1;
            }
        }
        assert_eq!(census.b_view().unwrap(), oracle);
        for eta in profiles(3, 2, 3) {
            let r = eta.marginal(0).unwrap();
            let s = eta.marginal(1).unwrap();
            assert_eq!(census.b(&r, &s, &eta).unwrap(), census.get(&eta));
            let wrong = CompositionProfile::new(3, 1, vec![3, 0, 0]).unwrap();
            if r != wrong {
                assert_eq!(census.b(&wrong, &s, &eta).unwrap(), 0);
            }
        }
    }

    #[test]
    fn census_respects_budget() {
        let big = LinearCode::full(f(4), 6).unwrap();
        assert!(matches!(
            Census::of(&[big.clone(), big], &Budget::default()),
            Err(Error::Capacity { .. })
        ));
    }
}
