//! Exact linear algebra over `Q` and `F_p`.
//!
//! Everything downstream reduces to [`rank`], [`kernel_basis`], [`solve`] and
//! [`induced_on_quotient`]. Subspaces are stored in reduced row-echelon form so that
//! equality of subspaces is plain structural equality.

mod field;
mod matrix;
mod subspace;

pub use field::{Field, Scalar, ScalarText};
pub use matrix::{
    add_vectors, combine, dot, format_vector, is_zero_vector, parse_vector, scale_vector,
    sub_vectors, unit_vector, zero_vector, Matrix, Rref, Vector,
};
pub use subspace::{Subquotient, Subspace};

use crate::error::{Error, Result};

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &Matrix) -> Subspace {
    m.kernel()
}

pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vector> {
    m.solve(b)
}

/// Matrix of the map `k^n / src_sub -> k^m / dst_sub` induced by `m`, in the canonical
/// quotient bases (unit vectors at the non-pivot coordinates).
pub fn induced_on_quotient(m: &Matrix, src_sub: &Subspace, dst_sub: &Subspace) -> Result<Matrix> {
    if src_sub.ambient_dim() != m.cols() || dst_sub.ambient_dim() != m.rows() {
        return Err(Error::Shape(
            "subspace ambient dimensions do not match the matrix".into(),
        ));
    }
    if !dst_sub.contains_subspace(&src_sub.image_under(m)) {
        return Err(Error::SubspaceNotPreserved);
    }
    let field = m.field();
    let cols: Vec<Vector> = src_sub
        .complement_indices()
        .into_iter()
        .map(|j| dst_sub.quotient_coords(&m.col(j)))
        .collect();
    Ok(Matrix::from_cols(field, dst_sub.codim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::zeros(q(), 0, 0)), 0);
        assert_eq!(rank(&Matrix::identity(q(), 3)), 3);
        assert_eq!(rank(&Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 2)).dim(), 0);
        assert_eq!(kernel_basis(&Matrix::zeros(q(), 2, 3)).dim(), 3);
        let f2 = Field::Prime(2);
        let k = kernel_basis(&Matrix::from_i64(f2, 1, 3, &[1, 1, 0]));
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[f2.one(), f2.one(), f2.zero()]));
        // brute force: exactly the 4 vectors with v0 + v1 = 0
        let els = f2.elements().unwrap();
        let mut count = 0;
        for a in &els {
            for b in &els {
                for c in &els {
                    let v = vec![a.clone(), b.clone(), c.clone()];
                    let in_ker = (a + b).is_zero();
                    assert_eq!(k.contains(&v), in_ker);
                    count += in_ker as usize;
                }
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn solve_examples() {
        let b = vec![q().from_i64(3), q().from_i64(-1)];
        assert_eq!(solve(&Matrix::identity(q(), 2), &b), Some(b.clone()));
        assert_eq!(solve(&Matrix::zeros(q(), 2, 2), &b), None);
        let x = solve(&Matrix::from_i64(q(), 1, 1, &[2]), &[q().one()]).unwrap();
        assert_eq!(x[0].to_string(), "1/2");
        // free variables are zero
        let x = solve(&Matrix::from_i64(q(), 1, 2, &[1, 1]), &[q().from_i64(5)]).unwrap();
        assert_eq!(x, vec![q().from_i64(5), q().zero()]);
    }

    #[test]
    fn induced_on_quotient_examples() {
        let e1 = Subspace::span(q(), 2, &[unit_vector(q(), 2, 0)]);
        let id = Matrix::identity(q(), 2);
        assert_eq!(
            induced_on_quotient(&id, &e1, &e1).unwrap(),
            Matrix::identity(q(), 1)
        );

        let into_e1 = Matrix::from_i64(q(), 2, 2, &[1, 1, 0, 0]);
        assert!(induced_on_quotient(&into_e1, &e1, &e1).unwrap().is_zero());

        let diag = Matrix::from_i64(q(), 2, 2, &[1, 0, 0, 2]);
        assert_eq!(
            induced_on_quotient(&diag, &e1, &e1).unwrap(),
            Matrix::from_i64(q(), 1, 1, &[2])
        );

        let e2 = Subspace::span(q(), 2, &[unit_vector(q(), 2, 1)]);
        let swap = Matrix::from_i64(q(), 2, 2, &[0, 1, 1, 0]);
        assert_eq!(
            induced_on_quotient(&swap, &e1, &e1),
            Err(Error::SubspaceNotPreserved)
        );
        assert!(induced_on_quotient(&swap, &e1, &e2).is_ok());
    }

    #[test]
    fn subspace_operations() {
        let f = q();
        let a = Subspace::span(f, 3, &[unit_vector(f, 3, 0), unit_vector(f, 3, 1)]);
        let b = Subspace::span(f, 3, &[unit_vector(f, 3, 1), unit_vector(f, 3, 2)]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
        let m = Matrix::from_i64(f, 3, 3, &[0, 0, 0, 1, 0, 0, 0, 1, 0]);
        assert_eq!(a.image_under(&m), b);
        assert_eq!(b.preimage_under(&m).dim(), 3);
    }

    #[test]
    fn subquotient_coords() {
        let f = q();
        let top = Subspace::full(f, 2);
        let bottom = Subspace::span(f, 2, &[vec![f.one(), f.one()]]);
        let sq = Subquotient::new(top, bottom);
        assert_eq!(sq.dim(), 1);
        // (1,1) is zero, (1,0) and (0,-1) agree
        assert!(sq.coords(&[f.one(), f.one()]).unwrap()[0].is_zero());
        assert_eq!(
            sq.coords(&[f.one(), f.zero()]).unwrap(),
            sq.coords(&[f.zero(), -f.one()]).unwrap()
        );
    }

    #[test]
    fn inverse_and_determinant() {
        let f = q();
        let m = Matrix::from_i64(f, 2, 2, &[2, 1, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(f, 2));
        assert_eq!(m.determinant(), f.one());
        assert!(Matrix::from_i64(f, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }
}
