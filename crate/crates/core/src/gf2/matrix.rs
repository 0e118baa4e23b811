use alloc::vec::Vec;

use super::BitVec;

/// Dense GF(2) matrix stored as rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: GF2Matrix,
    pub pivots: Vec<usize>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: (0..rows).map(|_| BitVec::zeros(cols)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| BitVec::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { rows: rows.len(), cols, data: rows }
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.iter_ones() {
                m.data[i].set(j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i].set(j, v);
    }

    pub fn column(&self, j: usize) -> BitVec {
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&i| self.data[i].get(j)))
    }

    pub fn transpose(&self) -> Self {
        let cols: Vec<BitVec> = self.data.clone();
        Self::from_columns(self.cols, &cols)
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        BitVec::from_indices(self.rows, (0..self.rows).filter(|&i| self.data[i].dot(v)))
    }

    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let rows = self
            .data
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.data[k]);
                }
                acc
            })
            .collect();
        Self::from_rows(other.cols, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVec::is_zero)
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| m.data[i].get(c)) else {
                continue;
            };
            m.data.swap(r, p);
            let pivot_row = m.data[r].clone();
            for i in 0..self.rows {
                if i != r && m.data[i].get(c) {
                    m.data[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Some `x` with `self · x = b`, or `None` if `b` is outside the column space.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let augmented = GF2Matrix::from_rows(
            self.cols + 1,
            self.data
                .iter()
                .enumerate()
                .map(|(i, row)| row.concat(&BitVec::from_indices(1, b.get(i).then_some(0))))
                .collect(),
        );
        let ech = augmented.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in ech.pivots.iter().enumerate() {
            if ech.matrix.data[r].get(self.cols) {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// A basis of the null space `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = BitVec::unit(self.cols, f);
                for (r, &p) in ech.pivots.iter().enumerate() {
                    if ech.matrix.data[r].get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect()
    }

    /// Reduced basis of the row space (the nonzero rows of the RREF).
    pub fn row_space(&self) -> Vec<BitVec> {
        let ech = self.echelon();
        ech.matrix.data.into_iter().take(ech.pivots.len()).collect()
    }
}

/// Reduced basis of the span of `vectors` (all of length `len`).
pub fn span_basis(len: usize, vectors: &[BitVec]) -> Vec<BitVec> {
    GF2Matrix::from_rows(len, vectors.to_vec()).row_space()
}
