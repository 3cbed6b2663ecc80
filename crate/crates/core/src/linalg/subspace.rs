use super::field::{Field, Scalar};
use super::matrix::{combine, is_zero_vector, Matrix, Vector};

/// A linear subspace of `k^n`, kept as the nonzero rows of a reduced row-echelon matrix.
///
/// Two subspaces are equal iff their canonical bases are equal, so `==` decides equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vector]) -> Self {
        let m = Matrix::from_rows(field, ambient_dim, vectors);
        let rref = m.rref();
        let r = rref.pivots.len();
        Subspace {
            ambient_dim,
            basis: rref.matrix.submatrix(0..r, 0..ambient_dim),
            pivots: rref.pivots,
        }
    }

    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Self::span(field, ambient_dim, &[])
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Matrix::identity(field, ambient_dim).image()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// `v` minus its component along the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.ambient_dim {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    out[j] = &out[j] - &(&c * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Non-pivot coordinates; their unit vectors give the canonical quotient basis.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&j| !is_pivot[j]).collect()
    }

    /// Coordinates of the class of `v` in `k^n / self`.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vector {
        let r = self.reduce(v);
        self.complement_indices()
            .into_iter()
            .map(|j| r[j].clone())
            .collect()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(self.field(), self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // v = A^T x = B^T y  <=>  [A^T | -B^T] (x, y) = 0
        let a = self.basis.transpose();
        let b = other.basis.transpose();
        let ker = a.hstack(&b.neg()).kernel();
        let vs: Vec<Vector> = ker
            .vectors()
            .iter()
            .map(|xy| a.mul_vec(&xy[..self.dim()]))
            .collect();
        Subspace::span(self.field(), self.ambient_dim, &vs)
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = self.vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(self.field(), m.rows(), &vs)
    }

    /// `{v : m v in self}`.
    pub fn preimage_under(&self, m: &Matrix) -> Subspace {
        // m v in S  <=>  the quotient coordinates of m v vanish
        let q = self.complement_indices();
        let rows: Vec<Vector> = (0..m.cols())
            .map(|j| {
                let r = self.reduce(&m.col(j));
                q.iter().map(|&i| r[i].clone()).collect()
            })
            .collect();
        Matrix::from_rows(self.field(), q.len(), &rows)
            .transpose()
            .kernel()
    }
}

/// A subquotient `top / bottom` with a canonical basis of representatives.
///
/// Representatives are chosen greedily from the canonical basis of `top`, skipping any vector
/// already in the span of `bottom` and earlier picks.
#[derive(Clone, Debug)]
pub struct Subquotient {
    top: Subspace,
    bottom: Subspace,
    reps: Vec<Vector>,
    solver: Matrix,
}

impl Subquotient {
    pub fn new(top: Subspace, bottom: Subspace) -> Self {
        debug_assert!(top.contains_subspace(&bottom), "bottom must lie in top");
        let field = top.field();
        let n = top.ambient_dim();
        let mut span = bottom.clone();
        let mut reps = Vec::new();
        for v in top.vectors() {
            if !span.contains(&v) {
                span = span.sum(&Subspace::span(field, n, std::slice::from_ref(&v)));
                reps.push(v);
            }
        }
        let mut cols = bottom.vectors();
        cols.extend(reps.iter().cloned());
        let solver = Matrix::from_cols(field, n, &cols);
        Subquotient {
            top,
            bottom,
            reps,
            solver,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn top(&self) -> &Subspace {
        &self.top
    }

    pub fn bottom(&self) -> &Subspace {
        &self.bottom
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    pub fn ambient_dim(&self) -> usize {
        self.top.ambient_dim()
    }

    /// Class coordinates of `v` in the representative basis; `None` when `v` is not in `top`.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.top.contains(v) {
            return None;
        }
        let x = self
            .solver
            .solve(v)
            .expect("top is spanned by bottom and reps");
        Some(x[self.bottom.dim()..].to_vec())
    }

    pub fn is_zero_class(&self, v: &[Scalar]) -> bool {
        self.bottom.contains(v)
    }

    /// The representative vector `sum_i coords[i] * reps[i]`.
    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        combine(self.top.field(), self.ambient_dim(), coords, &self.reps)
    }
}
