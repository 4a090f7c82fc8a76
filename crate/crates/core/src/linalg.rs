//! Sparse exact row reduction over a [`Field`].

use std::collections::BTreeMap;

use crate::engine::Field;

/// Sparse vector: column index → nonzero entry.
pub type SparseVec<F> = BTreeMap<usize, <F as Field>::Elem>;

/// Row echelon form, built one row at a time. Every stored row has pivot
/// entry 1 and no entries left of its pivot; back-substitution is deferred
/// to [`Echelon::kernel`].
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Echelon<F> {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// `row - k·other`, dropping zeros.
    fn axpy(&self, row: &mut SparseVec<F>, k: &F::Elem, other: &SparseVec<F>) {
        for (&c, v) in other {
            let delta = self.field.mul(k, v);
            let cur = row.remove(&c).unwrap_or_else(|| self.field.zero());
            let next = self.field.sub(&cur, &delta);
            if !self.field.is_zero(&next) {
                row.insert(c, next);
            }
        }
    }

    // Clearing pivot columns left to right only ever adds entries further
    // right, so one sweep suffices.
    fn reduce(&self, mut row: SparseVec<F>) -> SparseVec<F> {
        let mut from = 0;
        loop {
            let hit = row
                .range(from..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, k)| (c, k.clone()));
            let Some((c, k)) = hit else {
                return row;
            };
            self.axpy(&mut row, &k, &self.rows[&c]);
            from = c + 1;
        }
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseVec<F>) -> bool {
        let mut row = self.reduce(row);
        row.retain(|_, v| !self.field.is_zero(v));
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = self.field.inv(lead).expect("nonzero lead");
        for v in row.values_mut() {
            *v = self.field.mul(v, &inv);
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, row: &SparseVec<F>) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Basis of `{x : Ax = 0}` for the stored rows over `ncols` unknowns,
    /// one vector per free column in increasing order.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseVec<F>> {
        // Back-substitute from the last pivot so each row is cleared against
        // rows that are already fully reduced.
        let mut reduced: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut row = row.clone();
            let hits: Vec<usize> = row
                .keys()
                .copied()
                .filter(|&c| c != p && reduced.contains_key(&c))
                .collect();
            for c in hits {
                if let Some(k) = row.get(&c).cloned() {
                    self.axpy(&mut row, &k, &reduced[&c]);
                }
            }
            reduced.insert(p, row);
        }
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !reduced.contains_key(c)) {
            let mut v = SparseVec::<F>::new();
            v.insert(free, self.field.one());
            for (&p, row) in &reduced {
                if let Some(k) = row.get(&free) {
                    v.insert(p, self.field.neg(k));
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn rank<F: Field>(field: &F, vectors: &[SparseVec<F>]) -> usize {
    let mut e = Echelon::new(field.clone());
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Whether two families span the same subspace.
pub fn same_span<F: Field>(field: &F, a: &[SparseVec<F>], b: &[SparseVec<F>]) -> bool {
    let mut ea = Echelon::new(field.clone());
    for v in a {
        ea.insert(v.clone());
    }
    let mut eb = Echelon::new(field.clone());
    for v in b {
        eb.insert(v.clone());
    }
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}
