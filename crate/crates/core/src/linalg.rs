//! Exact Gaussian elimination over Q(i, sqrt2).
//!
//! Dense matrices for rank/kernel/solve, plus an incremental span builder
//! keyed by arbitrary ordered monomial keys. All pivots are exact; there is
//! no tolerance anywhere.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            // Find a pivot at or below `row`.
            let Some(p) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.at(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.at(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.at(r, col).is_zero() {
                    continue;
                }
                let factor = self.at(r, col).clone();
                for c in col..self.cols {
                    let v = self.at(r, c) - &(&factor * self.at(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space {x : Ax = 0}.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_row: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_row.contains_key(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (&pc, &pr) in pivot_row.iter() {
                v[pc] = -m.at(pr, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Incremental exact span over sparse vectors keyed by `K`.
///
/// Rows are kept sparse and in generalized echelon form: each stored row
/// has a distinct pivot column and vanishes on the pivot columns of all
/// earlier rows. Each row also remembers how it was built from the
/// inserted vectors, so membership queries can return explicit
/// coordinates.
pub struct SpanBuilder<K: Ord + Clone> {
    cols: BTreeMap<K, usize>,
    /// Sparse rows: sorted (column, coefficient) pairs.
    rows: Vec<Vec<(usize, Scalar)>>,
    pivots: Vec<usize>,
    exprs: Vec<BTreeMap<usize, Scalar>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for SpanBuilder<K> {
    fn default() -> Self {
        SpanBuilder {
            cols: BTreeMap::new(),
            rows: Vec::new(),
            pivots: Vec::new(),
            exprs: Vec::new(),
            inserted: 0,
        }
    }
}

impl<K: Ord + Clone> SpanBuilder<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_inserted(&self) -> usize {
        self.inserted
    }

    fn sparsify(&mut self, v: &BTreeMap<K, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (k, c) in v {
            if c.is_zero() {
                continue;
            }
            let next = self.cols.len();
            let idx = *self.cols.entry(k.clone()).or_insert(next);
            out.insert(idx, c.clone());
        }
        out
    }

    /// Reduce against the stored rows in insertion order, collecting the
    /// combination of inserted vectors that was subtracted. A single pass
    /// suffices: every row vanishes on the pivots of earlier rows.
    fn reduce(
        &self,
        vec: &mut BTreeMap<usize, Scalar>,
        combo: &mut BTreeMap<usize, Scalar>,
    ) {
        for (ri, row) in self.rows.iter().enumerate() {
            let pivot = self.pivots[ri];
            let Some(factor) = vec.get(&pivot).cloned() else {
                continue;
            };
            if factor.is_zero() {
                vec.remove(&pivot);
                continue;
            }
            for (col, coeff) in row {
                let entry = vec.entry(*col).or_insert_with(Scalar::zero);
                *entry -= &(&factor * coeff);
                if entry.is_zero() {
                    vec.remove(col);
                }
            }
            for (i, c) in self.exprs[ri].iter() {
                let entry = combo.entry(*i).or_insert_with(Scalar::zero);
                *entry += &(&factor * c);
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &BTreeMap<K, Scalar>) -> bool {
        let mut vec = self.sparsify(v);
        let mut combo = BTreeMap::new();
        self.reduce(&mut vec, &mut combo);
        let idx = self.inserted;
        self.inserted += 1;
        let Some((&pivot, _)) = vec.iter().next() else {
            return false;
        };
        let inv = vec[&pivot].inv().expect("nonzero pivot");
        let row: Vec<(usize, Scalar)> = vec.iter().map(|(c, v)| (*c, v * &inv)).collect();
        let mut expr: BTreeMap<usize, Scalar> = BTreeMap::new();
        expr.insert(idx, inv.clone());
        for (i, c) in combo {
            let coeff = -(&c * &inv);
            if !coeff.is_zero() {
                expr.insert(i, coeff);
            }
        }
        self.rows.push(row);
        self.pivots.push(pivot);
        self.exprs.push(expr);
        true
    }

    /// Does `v` lie in the current span?
    pub fn contains(&mut self, v: &BTreeMap<K, Scalar>) -> bool {
        self.solve(v).is_some()
    }

    /// Coordinates of `v` over the *inserted* vectors, if `v` is in the span.
    pub fn solve(&mut self, v: &BTreeMap<K, Scalar>) -> Option<BTreeMap<usize, Scalar>> {
        let mut vec = self.sparsify(v);
        let mut combo = BTreeMap::new();
        self.reduce(&mut vec, &mut combo);
        if vec.is_empty() {
            combo.retain(|_, c| !c.is_zero());
            Some(combo)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let mut m = Matrix::zero(2, 3);
        m.set(0, 0, s(1));
        m.set(0, 1, s(2));
        m.set(0, 2, s(3));
        m.set(1, 0, s(2));
        m.set(1, 1, s(4));
        m.set(1, 2, s(6));
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            for r in 0..2 {
                let mut acc = Scalar::zero();
                for c in 0..3 {
                    acc += &(m.at(r, c) * &v[c]);
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn span_builder_membership_and_coordinates() {
        let mut sb: SpanBuilder<&'static str> = SpanBuilder::new();
        let v0: BTreeMap<_, _> = [("a", s(1)), ("b", s(1))].into();
        let v1: BTreeMap<_, _> = [("b", s(2))].into();
        let v2: BTreeMap<_, _> = [("a", s(3)), ("b", s(5))].into(); // = 3 v0 + v1
        assert!(sb.insert(&v0));
        assert!(sb.insert(&v1));
        assert!(!sb.insert(&v2));
        assert_eq!(sb.rank(), 2);
        let coords = sb.solve(&v2).unwrap();
        assert_eq!(coords.get(&0), Some(&s(3)));
        assert_eq!(coords.get(&1), Some(&s(1)));
        let outside: BTreeMap<_, _> = [("c", s(1))].into();
        assert!(!sb.contains(&outside));
    }

    #[test]
    fn span_builder_with_exotic_scalars() {
        let mut sb: SpanBuilder<u32> = SpanBuilder::new();
        let r2 = Scalar::sqrt2();
        let v0: BTreeMap<_, _> = [(0u32, r2.clone())].into();
        let v1: BTreeMap<_, _> = [(0u32, s(2))].into(); // = sqrt2 * v0
        assert!(sb.insert(&v0));
        assert!(!sb.insert(&v1));
        let coords = sb.solve(&v1).unwrap();
        assert_eq!(coords.get(&0), Some(&r2));
    }
}
