//! Exact sparse row echelon form over the rationals.
//!
//! Vectors are sparse maps from an ordered key set to nonzero rationals. Each
//! stored row is indexed by its greatest key, so reducing an incoming vector
//! against the table strictly lowers its greatest key at every step.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// `target += factor * source`, dropping entries that cancel.
pub fn axpy<K: Ord + Clone>(target: &mut SparseVec<K>, factor: &Rational, source: &SparseVec<K>) {
    if factor.is_zero() {
        return;
    }
    for (k, c) in source {
        let delta = factor * c;
        match target.get_mut(k) {
            Some(slot) => {
                *slot += delta;
                if slot.is_zero() {
                    target.remove(k);
                }
            }
            None => {
                target.insert(k.clone(), delta);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows until its leading key is not a pivot.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        loop {
            let Some((lead, coeff)) = v.iter().next_back() else {
                return v;
            };
            let Some(row) = self.rows.get(lead) else {
                return v;
            };
            let factor = -coeff.clone();
            axpy(&mut v, &factor, row);
        }
    }

    /// Inserts `v`; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let mut v = self.reduce(v);
        let Some((lead, coeff)) = v.iter().next_back() else {
            return false;
        };
        let lead = lead.clone();
        let inv = Rational::one() / coeff;
        for c in v.values_mut() {
            *c *= &inv;
        }
        self.rows.insert(lead, v);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<K>> {
        self.rows.values()
    }
}

/// Dimension of the span of `vectors`.
pub fn rank<K: Ord + Clone>(vectors: impl IntoIterator<Item = SparseVec<K>>) -> usize {
    let mut echelon = SparseEchelon::new();
    for v in vectors {
        echelon.insert(v);
    }
    echelon.rank()
}
