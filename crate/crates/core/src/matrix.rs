//! Binary matrices: a sparse set-of-positions form for neighborhood
//! operators and a packed dense form for GF(2) elimination.

use std::collections::BTreeSet;

use serde::Serialize;

/// 0/1 matrix stored as the set of positions holding 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseBinaryMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl SparseBinaryMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: BTreeSet::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sets position `(r, c)` to 1. Panics if out of range.
    pub fn insert(&mut self, r: usize, c: usize) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) outside {}x{}", self.rows, self.cols);
        self.entries.insert((r, c));
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.entries.contains(&(r, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn row_count(&self, r: usize) -> usize {
        self.entries.range((r, 0)..(r + 1, 0)).count()
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }

    /// Product over GF(2).
    pub fn mul_gf2(&self, other: &SparseBinaryMatrix) -> SparseBinaryMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); other.rows];
        for (r, c) in other.entries() {
            by_row[r].push(c);
        }
        let mut acc = vec![false; other.cols];
        let mut out = SparseBinaryMatrix::new(self.rows, other.cols);
        let mut current = None;
        let flush = |row: usize, acc: &mut Vec<bool>, out: &mut SparseBinaryMatrix| {
            for (c, bit) in acc.iter_mut().enumerate() {
                if *bit {
                    out.insert(row, c);
                    *bit = false;
                }
            }
        };
        for (r, k) in self.entries() {
            if current != Some(r) {
                if let Some(prev) = current {
                    flush(prev, &mut acc, &mut out);
                }
                current = Some(r);
            }
            for &c in &by_row[k] {
                acc[c] ^= true;
            }
        }
        if let Some(prev) = current {
            flush(prev, &mut acc, &mut out);
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let mut d = vec![vec![0u8; self.cols]; self.rows];
        for (r, c) in self.entries() {
            d[r][c] = 1;
        }
        d
    }

    /// Rank over GF(2).
    pub fn rank_gf2(&self) -> usize {
        BitMatrix::from_sparse(self).rank()
    }
}

/// Dense GF(2) matrix with rows packed into `u64` words.
#[derive(Debug, Clone)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        Self { cols, rows: vec![vec![0; words]; rows] }
    }

    pub fn from_sparse(m: &SparseBinaryMatrix) -> Self {
        let mut b = Self::zeros(m.rows(), m.cols());
        for (r, c) in m.entries() {
            b.set(r, c);
        }
        b
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.rows[r][c / 64] |= 1 << (c % 64);
    }

    fn bit(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    /// Row-echelon elimination; consumes a copy of the rows.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col / 64] >> (col % 64) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col / 64] >> (col % 64) & 1 == 1 {
                    for (w, p) in row.iter_mut().zip(&pivot_row) {
                        *w ^= p;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bit(r, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(d: &[&[u8]]) -> SparseBinaryMatrix {
        let mut m = SparseBinaryMatrix::new(d.len(), d[0].len());
        for (r, row) in d.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 1 {
                    m.insert(r, c);
                }
            }
        }
        m
    }

    #[test]
    fn rank_small_cases() {
        assert_eq!(from_dense(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).rank_gf2(), 2);
        assert_eq!(from_dense(&[&[1, 0], &[0, 1]]).rank_gf2(), 2);
        assert_eq!(SparseBinaryMatrix::new(3, 4).rank_gf2(), 0);
    }

    #[test]
    fn rank_across_word_boundary() {
        let mut m = SparseBinaryMatrix::new(3, 130);
        m.insert(0, 0);
        m.insert(0, 129);
        m.insert(1, 129);
        m.insert(2, 0);
        assert_eq!(m.rank_gf2(), 2);
    }

    #[test]
    fn product_mod_two() {
        let a = from_dense(&[&[1, 1, 1]]);
        let b = from_dense(&[&[1], &[1], &[0]]);
        assert_eq!(a.mul_gf2(&b).nnz(), 0);
        let c = from_dense(&[&[1], &[0], &[0]]);
        assert!(a.mul_gf2(&c).get(0, 0));
    }

    #[test]
    fn transpose_twice_is_identity() {
        let a = from_dense(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(a.transpose().transpose(), a);
        assert!(a.transpose().get(2, 1));
    }
}
