//! Exact sparse Gaussian elimination over `Q`.
//!
//! Systems here are small (a few hundred unknowns) but very sparse, and they are
//! solved for many right-hand sides, so the eliminator records for each pivot the
//! combination of original equations that produced it. Once the unknowns are all
//! pivots, that record *is* a left inverse.

use std::collections::BTreeMap;

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::Zero;
use malachite_q::Rational;

/// A sparse row: `(column, value)` with strictly increasing columns and no zeros.
pub type SparseRow = Vec<(usize, Rational)>;

fn axpy(row: &SparseRow, c: &Rational, other: &SparseRow) -> SparseRow {
    // row + c * other
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        if j >= other.len() || (i < row.len() && row[i].0 < other[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i >= row.len() || other[j].0 < row[i].0 {
            out.push((other[j].0, c * &other[j].1));
            j += 1;
        } else {
            let v = &row[i].1 + c * &other[j].1;
            if v != Rational::ZERO {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(row: &SparseRow, c: &Rational) -> SparseRow {
    row.iter().map(|(i, v)| (*i, v * c)).collect()
}

fn get(row: &SparseRow, col: usize) -> Option<&Rational> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// Incremental row-reduced echelon form with provenance.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    ncols: usize,
    /// pivot column -> (reduced row, combination of original equations)
    pivots: BTreeMap<usize, (SparseRow, SparseRow)>,
    n_eqs: usize,
}

impl Eliminator {
    pub fn new(ncols: usize) -> Self {
        Eliminator { ncols, pivots: BTreeMap::new(), n_eqs: 0 }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn n_equations(&self) -> usize {
        self.n_eqs
    }

    /// Adds an equation row; returns true if it was independent of the earlier ones.
    pub fn push(&mut self, row: SparseRow) -> bool {
        let id = self.n_eqs;
        self.n_eqs += 1;
        let mut r = row;
        let mut comb: SparseRow = vec![(id, Rational::from(1))];
        let cols: Vec<usize> = r.iter().map(|(c, _)| *c).filter(|c| self.pivots.contains_key(c)).collect();
        for c in cols {
            let Some(v) = get(&r, c).cloned() else { continue };
            let (prow, pcomb) = &self.pivots[&c];
            let m = -v;
            r = axpy(&r, &m, prow);
            comb = axpy(&comb, &m, pcomb);
        }
        let Some((pc, pv)) = r.first().cloned() else {
            return false;
        };
        let inv = pv.reciprocal();
        let r = scale(&r, &inv);
        let comb = scale(&comb, &inv);
        // Keep the basis fully reduced: clear the new pivot column from older rows.
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        for k in keys {
            let entry = self.pivots.get_mut(&k).unwrap();
            if let Some(v) = get(&entry.0, pc).cloned() {
                let m = -v;
                entry.0 = axpy(&entry.0, &m, &r);
                entry.1 = axpy(&entry.1, &m, &comb);
            }
        }
        self.pivots.insert(pc, (r, comb));
        true
    }

    /// Columns that are not pivots (free directions of the kernel).
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::ZERO; self.ncols];
                v[f] = Rational::from(1);
                for (p, (row, _)) in self.pivots.iter() {
                    if let Some(x) = get(row, f) {
                        v[*p] = -x;
                    }
                }
                v
            })
            .collect()
    }

    /// When every column is a pivot: the left inverse as, for each unknown, the sparse
    /// combination of original equations giving its value.
    pub fn left_inverse(&self) -> Option<Vec<SparseRow>> {
        if self.pivots.len() != self.ncols {
            return None;
        }
        Some(self.pivots.values().map(|(_, comb)| comb.clone()).collect())
    }
}

/// Applies a left inverse to a right-hand side.
pub fn apply_left_inverse(inv: &[SparseRow], rhs: &[Rational]) -> Vec<Rational> {
    inv.iter()
        .map(|comb| {
            let mut acc = Rational::ZERO;
            for (e, c) in comb {
                if rhs[*e] != Rational::ZERO {
                    acc += c * &rhs[*e];
                }
            }
            acc
        })
        .collect()
}

/// Builds a sparse row from dense-ish `(column, value)` pairs, merging duplicates.
pub fn sparse_row<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> SparseRow {
    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in entries {
        *m.entry(c).or_insert(Rational::ZERO) += v;
    }
    m.into_iter().filter(|(_, v)| *v != Rational::ZERO).collect()
}
