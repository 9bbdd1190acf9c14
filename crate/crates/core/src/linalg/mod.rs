//! Exact linear algebra over a prime field or the rationals: rank, kernel
//! and image bases, solving, and cokernels with chosen representatives.
//!
//! Everything here is deterministic. Elimination always picks the
//! leftmost-lowest-index nonzero pivot, and subspaces are stored in reduced
//! echelon form, which is a unique representative, so repeated runs (and
//! runs on different thread counts) produce identical output.

mod field;
mod matrix;

pub use field::{Field, FieldMode, Scalar, DEFAULT_PRIME};
pub use matrix::{vec_add_scaled, vec_is_zero, vec_sub, SparseMatrix};

use crate::error::{EngineError, Result};

/// A subspace of a coordinate space, stored as a reduced-echelon basis.
///
/// The reduced echelon form is unique for the subspace, so `==` is
/// subspace equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    field: Field,
    /// Basis vectors in reduced echelon form, ordered by pivot index.
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            field,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut ech = Echelon::new(self.field, self.ambient_dim);
        for b in &self.basis {
            ech.insert(b.clone());
        }
        let (resid, _) = ech.reduce(v.to_vec());
        vec_is_zero(&self.field, &resid)
    }

    /// Basis vectors packed as matrix columns.
    pub fn as_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.field, self.ambient_dim, &self.basis)
    }
}

/// Incremental reduced-echelon accumulator with coefficient tracking.
///
/// `insert` keeps the stored rows fully reduced against each other, so the
/// row set is always the reduced echelon basis of the span of everything
/// inserted so far.
pub struct Echelon {
    field: Field,
    width: usize,
    /// (pivot column, row vector with 1 at the pivot), ordered by pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

pub enum Inserted {
    /// The vector was independent; a new pivot was created.
    NewPivot(usize),
    /// The vector reduced to zero against the existing rows.
    Dependent,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Self {
        Echelon {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Reduces `v` against the stored rows. Returns the residual together
    /// with the coefficient taken on each stored row (in row order).
    pub fn reduce(&self, mut v: Vec<Scalar>) -> (Vec<Scalar>, Vec<Scalar>) {
        assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut coeffs = vec![f.zero(); self.rows.len()];
        for (idx, (p, row)) in self.rows.iter().enumerate() {
            let c = v[*p].clone();
            if !f.is_zero(&c) {
                coeffs[idx] = c.clone();
                let neg = f.neg(&c);
                vec_add_scaled(&f, &mut v, &neg, row);
            }
        }
        (v, coeffs)
    }

    pub fn insert(&mut self, v: Vec<Scalar>) -> Inserted {
        let f = self.field;
        let (mut v, _) = self.reduce(v);
        // Leftmost nonzero coordinate becomes the pivot.
        let pivot = match v.iter().position(|x| !f.is_zero(x)) {
            Some(p) => p,
            None => return Inserted::Dependent,
        };
        let inv = f.inv(&v[pivot]).expect("pivot nonzero");
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Back-substitute into existing rows to keep reduced form.
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot].clone();
            if !f.is_zero(&c) {
                let neg = f.neg(&c);
                vec_add_scaled(&f, row, &neg, &v);
            }
        }
        let at = self
            .rows
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .expect_err("duplicate pivot");
        self.rows.insert(at, (pivot, v));
        Inserted::NewPivot(pivot)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace {
            ambient_dim: self.width,
            field: self.field,
            pivots: self.rows.iter().map(|(p, _)| *p).collect(),
            basis: self.rows.into_iter().map(|(_, r)| r).collect(),
        }
    }
}

/// Row-reduction record for one matrix: reduced echelon form of the row
/// space plus pivot columns.
struct RowReduction {
    ech: Echelon,
}

fn row_reduce(m: &SparseMatrix) -> RowReduction {
    let mut ech = Echelon::new(m.field(), m.cols());
    for row in m.to_dense_rows() {
        ech.insert(row);
    }
    RowReduction { ech }
}

/// Rank over the field; at most `min(rows, cols)`.
pub fn rank(m: &SparseMatrix) -> usize {
    row_reduce(m).ech.rank()
}

/// Right kernel `{v : m v = 0}` as a subspace in reduced echelon form.
pub fn kernel(m: &SparseMatrix) -> Subspace {
    let f = m.field();
    let red = row_reduce(m);
    let pivots = red.ech.pivots();
    let is_pivot = {
        let mut v = vec![false; m.cols()];
        for p in &pivots {
            v[*p] = true;
        }
        v
    };
    let mut basis = Echelon::new(f, m.cols());
    for free in 0..m.cols() {
        if is_pivot[free] {
            continue;
        }
        // Standard free-variable vector: 1 at the free column, solved
        // pivot coordinates elsewhere.
        let mut v = vec![f.zero(); m.cols()];
        v[free] = f.one();
        for (row_idx, (p, row)) in red.ech.rows.iter().enumerate() {
            let _ = row_idx;
            let c = row[free].clone();
            if !f.is_zero(&c) {
                v[*p] = f.neg(&c);
            }
        }
        basis.insert(v);
    }
    debug_assert_eq!(basis.rank(), m.cols() - red.ech.rank());
    basis.into_subspace()
}

/// Column space of `m` as a subspace of the target coordinate space.
pub fn image(m: &SparseMatrix) -> Subspace {
    let mut ech = Echelon::new(m.field(), m.rows());
    for c in 0..m.cols() {
        ech.insert(m.column(c));
    }
    ech.into_subspace()
}

/// Solves `m x = b`. Returns `Err(InconsistentSystem)` when no solution
/// exists. In debug builds every returned solution is re-verified by
/// substitution.
pub fn solve(m: &SparseMatrix, b: &[Scalar]) -> Result<Vec<Scalar>> {
    assert_eq!(m.rows(), b.len());
    let f = m.field();
    // Eliminate on the transpose augmented with coefficient tracking:
    // express b in terms of the columns of m.
    let mut ech = Echelon::new(f, m.rows());
    let mut exprs: Vec<Vec<Scalar>> = Vec::new(); // expression of each echelon row in columns of m
    let ncols = m.cols();
    for c in 0..ncols {
        let col = m.column(c);
        let (resid, coeffs) = ech.reduce(col);
        if vec_is_zero(&f, &resid) {
            continue;
        }
        // New echelon row = (column c) - sum coeffs * previous rows.
        let mut expr = vec![f.zero(); ncols];
        expr[c] = f.one();
        for (i, co) in coeffs.iter().enumerate() {
            if !f.is_zero(co) {
                let neg = f.neg(co);
                let prev = exprs[i].clone();
                vec_add_scaled(&f, &mut expr, &neg, &prev);
            }
        }
        // Normalize exactly as Echelon::insert will.
        let pivot = resid.iter().position(|x| !f.is_zero(x)).unwrap();
        let inv = f.inv(&resid[pivot]).unwrap();
        for x in expr.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Mirror the back-substitution applied to stored rows.
        let mut norm_resid = resid.clone();
        for x in norm_resid.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for ((_, row), e) in ech.rows.iter_mut().zip(exprs.iter_mut()) {
            let c0 = row[pivot].clone();
            if !f.is_zero(&c0) {
                let neg = f.neg(&c0);
                vec_add_scaled(&f, row, &neg, &norm_resid);
                let delta = expr.clone();
                vec_add_scaled(&f, e, &neg, &delta);
            }
        }
        let at = ech
            .rows
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .expect_err("duplicate pivot");
        ech.rows.insert(at, (pivot, norm_resid));
        exprs.insert(at, expr);
    }
    let (resid, coeffs) = ech.reduce(b.to_vec());
    if !vec_is_zero(&f, &resid) {
        return Err(EngineError::InconsistentSystem);
    }
    let mut x = vec![f.zero(); ncols];
    for (i, co) in coeffs.iter().enumerate() {
        if !f.is_zero(co) {
            let expr = exprs[i].clone();
            vec_add_scaled(&f, &mut x, co, &expr);
        }
    }
    debug_assert_eq!(m.mul_vec(&x), b.to_vec(), "solve substitution check");
    Ok(x)
}

/// Cokernel of `m`: dimension `rows - rank` together with a surjective
/// projection matrix whose composite with `m` is zero.
///
/// The projection sends a vector to its canonical representative on the
/// non-pivot coordinates of the image's echelon basis.
pub fn cokernel_basis(m: &SparseMatrix) -> (usize, SparseMatrix) {
    let f = m.field();
    let im = image(m);
    let dim = m.rows() - im.dim();
    let is_pivot = {
        let mut v = vec![false; m.rows()];
        for p in im.pivots() {
            v[*p] = true;
        }
        v
    };
    let coords: Vec<usize> = (0..m.rows()).filter(|r| !is_pivot[*r]).collect();
    let mut ech = Echelon::new(f, m.rows());
    for b in im.basis() {
        ech.insert(b.clone());
    }
    let mut proj = SparseMatrix::zero(f, dim, m.rows());
    for r in 0..m.rows() {
        let mut e = vec![f.zero(); m.rows()];
        e[r] = f.one();
        let (resid, _) = ech.reduce(e);
        for (t, &coord) in coords.iter().enumerate() {
            if !f.is_zero(&resid[coord]) {
                proj.set(t, r, resid[coord].clone());
            }
        }
    }
    debug_assert!(proj.mul(&m.clone()).is_zero());
    (dim, proj)
}

/// Cohomology data at one spot of a complex `… -> U -d_in-> V -d_out-> W -> …`:
/// the dimension, chosen cycle representatives, and a routine expressing an
/// arbitrary cycle in the representative basis.
pub struct CohomologySpot {
    field: Field,
    /// Echelon basis of the image of `d_in`.
    boundaries: Echelon,
    /// Cycle representatives, one per cohomology class, as ambient vectors.
    reps: Vec<Vec<Scalar>>,
    /// Echelon over boundaries extended by reps; used to express cycles.
    extended: Echelon,
    /// For each extended row, its coefficient history on the reps.
    rep_coords: Vec<Vec<Scalar>>,
}

impl CohomologySpot {
    /// `d_in`: matrix into the spot (or `None` at a complex boundary, meaning
    /// zero); `d_out`: matrix out of the spot (likewise).
    pub fn new(field: Field, dim: usize, d_in: Option<&SparseMatrix>, d_out: Option<&SparseMatrix>) -> Self {
        let cycles = match d_out {
            Some(d) => {
                assert_eq!(d.cols(), dim);
                kernel(d)
            }
            None => {
                let mut ech = Echelon::new(field, dim);
                for i in 0..dim {
                    let mut v = vec![field.zero(); dim];
                    v[i] = field.one();
                    ech.insert(v);
                }
                ech.into_subspace()
            }
        };
        let mut boundaries = Echelon::new(field, dim);
        if let Some(d) = d_in {
            assert_eq!(d.rows(), dim);
            for c in 0..d.cols() {
                boundaries.insert(d.column(c));
            }
        }
        let mut extended = Echelon::new(field, dim);
        let mut rep_coords: Vec<Vec<Scalar>> = Vec::new();
        for (p, row) in &boundaries.rows {
            let _ = p;
            extended.insert(row.clone());
            rep_coords.push(Vec::new()); // boundary rows carry no rep coordinates
        }
        let mut reps = Vec::new();
        for v in cycles.basis() {
            let before = extended.rank();
            extended.insert(v.clone());
            if extended.rank() > before {
                reps.push(v.clone());
            }
        }
        // Rebuild extended with clean bookkeeping: boundary rows first, then
        // reps, tracking rep coefficients through reduction.
        let mut extended = Echelon::new(field, dim);
        let mut rep_coords2: Vec<Vec<Scalar>> = Vec::new();
        for (_, row) in &boundaries.rows {
            extended.insert(row.clone());
            rep_coords2.push(vec![field.zero(); reps.len()]);
        }
        for (k, v) in reps.iter().enumerate() {
            // Mimic insert: reduce, normalize, back-substitute, while
            // carrying the rep coordinate vector alongside.
            let (resid, coeffs) = extended.reduce(v.clone());
            debug_assert!(!vec_is_zero(&field, &resid));
            let mut coord = vec![field.zero(); reps.len()];
            coord[k] = field.one();
            for (i, c) in coeffs.iter().enumerate() {
                if !field.is_zero(c) {
                    let neg = field.neg(c);
                    let prev = rep_coords2[i].clone();
                    vec_add_scaled(&field, &mut coord, &neg, &prev);
                }
            }
            let pivot = resid.iter().position(|x| !field.is_zero(x)).unwrap();
            let inv = field.inv(&resid[pivot]).unwrap();
            let mut norm = resid.clone();
            for x in norm.iter_mut() {
                *x = field.mul(x, &inv);
            }
            for x in coord.iter_mut() {
                *x = field.mul(x, &inv);
            }
            for ((_, row), rc) in extended.rows.iter_mut().zip(rep_coords2.iter_mut()) {
                let c0 = row[pivot].clone();
                if !field.is_zero(&c0) {
                    let neg = field.neg(&c0);
                    vec_add_scaled(&field, row, &neg, &norm);
                    let delta = coord.clone();
                    vec_add_scaled(&field, rc, &neg, &delta);
                }
            }
            let at = extended
                .rows
                .binary_search_by_key(&pivot, |(p, _)| *p)
                .expect_err("duplicate pivot");
            extended.rows.insert(at, (pivot, norm));
            rep_coords2.insert(at, coord);
        }
        rep_coords = rep_coords2;
        CohomologySpot {
            field,
            boundaries,
            reps,
            extended,
            rep_coords,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    /// Expresses a cycle in the representative basis. The cycle must reduce
    /// to zero against boundaries plus representatives (true for any cycle).
    pub fn class_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        let (resid, coeffs) = self.extended.reduce(v.to_vec());
        assert!(
            vec_is_zero(&self.field, &resid),
            "vector is not a cycle modulo the stored boundaries"
        );
        let mut out = vec![self.field.zero(); self.reps.len()];
        for (i, c) in coeffs.iter().enumerate() {
            if !self.field.is_zero(c) {
                let rc = self.rep_coords[i].clone();
                vec_add_scaled(&self.field, &mut out, c, &rc);
            }
        }
        out
    }

    /// True when `v` lies in the span of boundaries (class zero).
    pub fn is_boundary(&self, v: &[Scalar]) -> bool {
        let (resid, _) = self.boundaries.reduce(v.to_vec());
        vec_is_zero(&self.field, &resid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(field: Field, rows: usize, cols: usize, data: &[i64]) -> SparseMatrix {
        let mut m = SparseMatrix::zero(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, field.from_i64(data[r * cols + c]));
            }
        }
        m
    }

    #[test]
    fn rank_empty_matrix_is_zero() {
        let f = Field::default_prime();
        let m = SparseMatrix::zero(f, 0, 0);
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn rank_identity() {
        let f = Field::default_prime();
        assert_eq!(rank(&SparseMatrix::identity(f, 3)), 3);
    }

    #[test]
    fn rank_dependent_rows_over_rationals() {
        // [[1,2],[2,4]] has rank 1: second row is twice the first.
        let f = Field::rationals();
        let m = fm(f, 2, 2, &[1, 2, 2, 4]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let f = Field::default_prime();
        let k = kernel(&SparseMatrix::identity(f, 4));
        assert_eq!(k.dim(), 0);
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let f = Field::default_prime();
        let k = kernel(&SparseMatrix::zero(f, 2, 3));
        assert_eq!(k.dim(), 3);
        assert_eq!(k.as_matrix(), SparseMatrix::identity(f, 3));
    }

    #[test]
    fn kernel_echelon_representative_over_f5() {
        // Kernel of [1 1] over F_5 is spanned by (1, 4); checked against a
        // full enumeration of F_5^2.
        let f = Field::prime(5).unwrap();
        let m = fm(f, 1, 2, &[1, 1]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![f.from_i64(1), f.from_i64(4)]);
        let mut members = 0;
        for a in 0..5 {
            for b in 0..5 {
                let v = vec![f.from_i64(a), f.from_i64(b)];
                if vec_is_zero(&f, &m.mul_vec(&v)) {
                    members += 1;
                    assert!(k.contains(&v));
                }
            }
        }
        assert_eq!(members, 5); // q^dim elements in the kernel
    }

    #[test]
    fn cokernel_cases() {
        let f = Field::prime(7).unwrap();
        let (d, proj) = cokernel_basis(&SparseMatrix::identity(f, 3));
        assert_eq!(d, 0);
        assert_eq!(proj.rows(), 0);

        let (d, proj) = cokernel_basis(&SparseMatrix::zero(f, 3, 1));
        assert_eq!(d, 3);
        assert_eq!(proj, SparseMatrix::identity(f, 3));

        let m = fm(f, 2, 2, &[2, 0, 0, 0]);
        let (d, proj) = cokernel_basis(&m);
        assert_eq!(d, 1);
        assert!(proj.mul(&m).is_zero());
        assert_eq!(rank(&proj), 1);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Field::rationals();
        let m = fm(f, 2, 2, &[1, 2, 3, 4]);
        let b = vec![f.from_i64(5), f.from_i64(11)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&x), b);

        let sing = fm(f, 2, 2, &[1, 2, 2, 4]);
        let bad = vec![f.from_i64(1), f.from_i64(0)];
        assert!(matches!(
            solve(&sing, &bad),
            Err(EngineError::InconsistentSystem)
        ));
    }

    #[test]
    fn cohomology_spot_two_term() {
        // 0 -> k -x2-> k -> 0 over F_7 has no cohomology at the right spot
        // when the map is injective... here d_in = [2], so H = 0.
        let f = Field::prime(7).unwrap();
        let d_in = fm(f, 1, 1, &[2]);
        let spot = CohomologySpot::new(f, 1, Some(&d_in), None);
        assert_eq!(spot.dim(), 0);

        let spot = CohomologySpot::new(f, 1, None, None);
        assert_eq!(spot.dim(), 1);
        let cls = spot.class_of(&[f.from_i64(3)]);
        assert_eq!(cls, vec![f.from_i64(3)]);
    }
}
