//! Sparse exact elimination over `Q`.

use crate::rational::Q;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse matrix stored by rows.
#[derive(Clone, Debug, Default)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BTreeMap<usize, Q>>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(&j).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, x)| (i, *j, x)))
    }

    pub fn mul_vec(&self, x: &[Q]) -> Vec<Q> {
        self.data.iter().map(|r| r.iter().map(|(j, a)| a * &x[*j]).sum()).collect()
    }
}

/// Row-reduced echelon form built incrementally.
#[derive(Default)]
pub struct Echelon {
    cols: usize,
    /// pivot column -> normalized row with 1 at the pivot and zeros in all other pivot columns
    pivots: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new() }
    }

    fn reduce(&self, mut row: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.pivots.contains_key(c)).collect();
        for c in hits {
            let Some(f) = row.get(&c).cloned() else { continue };
            for (j, x) in &self.pivots[&c] {
                let v = row.entry(*j).or_insert_with(Q::zero);
                *v -= &f * x;
                if v.is_zero() {
                    row.remove(j);
                }
            }
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: BTreeMap<usize, Q>) -> bool {
        let row = self.reduce(row);
        let Some((&lead, f)) = row.iter().next() else { return false };
        let inv = Q::one() / f;
        let row: BTreeMap<usize, Q> = row.into_iter().map(|(j, x)| (j, x * &inv)).collect();
        for other in self.pivots.values_mut() {
            if let Some(g) = other.get(&lead).cloned() {
                for (j, x) in &row {
                    let v = other.entry(*j).or_insert_with(Q::zero);
                    *v -= &g * x;
                    if v.is_zero() {
                        other.remove(j);
                    }
                }
            }
        }
        self.pivots.insert(lead, row);
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (p, row) in &self.pivots {
                if let Some(x) = row.get(&f) {
                    v[*p] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of the null space of `m`.
pub fn kernel(m: &Matrix) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(m.cols);
    for r in &m.data {
        e.insert(r.clone());
    }
    e.kernel()
}

pub fn rank(m: &Matrix) -> usize {
    let mut e = Echelon::new(m.cols);
    for r in &m.data {
        e.insert(r.clone());
    }
    e.rank()
}
