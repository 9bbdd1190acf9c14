//! Sparse matrices with exact entries.

use std::collections::BTreeMap;

use super::field::{Field, Scalar};

/// A sparse matrix over a fixed field. At most one entry per `(row, col)`
/// and no stored zeros; both invariants are maintained by construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = SparseMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Sets an entry, dropping it from storage when the value is zero.
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if self.field.is_zero(&v) {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c);
        let sum = self.field.add(&cur, v);
        self.set(r, c, sum);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zero(self.field, self.cols, self.rows);
        for (&(r, c), v) in &self.entries {
            t.entries.insert((c, r), v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.field, self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.set(r, c, self.field.mul(v, s));
        }
        out
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(&self.field.neg(&self.field.one()))
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_to(r, c, v);
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = SparseMatrix::zero(self.field, self.rows, other.cols);
        // Group the right factor by row for the sparse triple loop.
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    let prod = self.field.mul(a, b);
                    out.add_to(r, c, &prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![self.field.zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !self.field.is_zero(&v[c]) {
                let t = self.field.mul(a, &v[c]);
                out[r] = self.field.add(&out[r], &t);
            }
        }
        out
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.rows];
        for (&(r, cc), v) in &self.entries {
            if cc == c {
                out[r] = v.clone();
            }
        }
        out
    }

    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                if !field.is_zero(v) {
                    m.set(r, c, v.clone());
                }
            }
        }
        m
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<Scalar>> {
        let mut rows = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r][c] = v.clone();
        }
        rows
    }
}

pub fn vec_is_zero(field: &Field, v: &[Scalar]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

pub fn vec_sub(field: &Field, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn vec_add_scaled(field: &Field, a: &mut [Scalar], s: &Scalar, b: &[Scalar]) {
    assert_eq!(a.len(), b.len());
    if field.is_zero(s) {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        let t = field.mul(s, y);
        *x = field.add(x, &t);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let f = Field::prime(7).unwrap();
        let mut a = SparseMatrix::zero(f, 2, 2);
        a.set(0, 0, f.from_i64(2));
        a.set(0, 1, f.from_i64(3));
        a.set(1, 1, f.from_i64(5));
        let id = SparseMatrix::identity(f, 2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);

        let t = a.transpose();
        assert_eq!(t.get(1, 0), f.from_i64(3));
    }

    #[test]
    fn zero_entries_not_stored() {
        let f = Field::prime(5).unwrap();
        let mut a = SparseMatrix::zero(f, 2, 2);
        a.set(0, 0, f.from_i64(3));
        a.add_to(0, 0, &f.from_i64(2));
        assert_eq!(a.nnz(), 0);
        assert!(a.is_zero());
    }
}
