use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use super::resolution::FreeResolution;
use super::ring::{combine_matrices, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Field, Matrix, Scalar, Subspace, Vector};

/// A finite-dimensional module over a [`FinDimAlgebra`], one action matrix per basis element.
#[derive(Clone, Debug)]
pub struct AModule {
    algebra: Arc<FinDimAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
    // resolutions are deterministic, so a longer one serves every shorter request
    memo: Arc<Mutex<Option<Arc<FreeResolution>>>>,
}

impl PartialEq for AModule {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.dim == other.dim && self.action == other.action
    }
}

impl Eq for AModule {}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleRepr {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl AModule {
    pub fn new(algebra: Arc<FinDimAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        let field = algebra.field();
        let n = algebra.dim();
        if action.len() != n {
            return Err(Error::InvalidModule(format!(
                "expected {n} action matrices, got {}",
                action.len()
            )));
        }
        for (i, m) in action.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.shape() != (dim, dim) {
                return Err(Error::InvalidModule(format!(
                    "action of e{i} is {:?}, expected {dim}x{dim}",
                    m.shape()
                )));
            }
        }
        if combine_matrices(field, dim, algebra.unit(), &action) != Matrix::identity(field, dim) {
            return Err(Error::InvalidModule(
                "unit does not act as the identity".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = action[i].mul(&action[j]);
                if lhs != action[j].mul(&action[i]) {
                    return Err(Error::InvalidModule(format!(
                        "actions of e{i} and e{j} do not commute"
                    )));
                }
                if lhs != combine_matrices(field, dim, algebra.basis_product(i, j), &action) {
                    return Err(Error::InvalidModule(format!(
                        "action does not respect e{i}e{j}"
                    )));
                }
            }
        }
        Ok(Self::unchecked(algebra, dim, action))
    }

    pub(crate) fn unchecked(algebra: Arc<FinDimAlgebra>, dim: usize, action: Vec<Matrix>) -> Self {
        AModule {
            algebra,
            dim,
            action,
            memo: Arc::new(Mutex::new(None)),
        }
    }

    pub fn from_repr(algebra: Arc<FinDimAlgebra>, repr: ModuleRepr) -> Result<Self> {
        Self::new(algebra, repr.dim, repr.action)
    }

    pub fn to_repr(&self) -> ModuleRepr {
        ModuleRepr {
            dim: self.dim,
            action: self.action.clone(),
        }
    }

    /// `A^rank`, basis ordered generator-major: index `j * dim A + a` is `e_a` in copy `j`.
    pub fn free(algebra: &Arc<FinDimAlgebra>, rank: usize) -> Self {
        let field = algebra.field();
        let action = (0..algebra.dim())
            .map(|i| Matrix::block_diag(field, &vec![algebra.left_basis(i).clone(); rank]))
            .collect();
        Self::unchecked(algebra.clone(), rank * algebra.dim(), action)
    }

    pub fn zero(algebra: &Arc<FinDimAlgebra>) -> Self {
        Self::free(algebra, 0)
    }

    /// The one-dimensional module on which `e_i` acts by `chi[i]`; `chi` must be a character.
    pub fn character(algebra: &Arc<FinDimAlgebra>, chi: &[Scalar]) -> Result<Self> {
        let field = algebra.field();
        let action = chi.iter().map(|c| Matrix::scalar(field, 1, c)).collect();
        Self::new(algebra.clone(), 1, action)
    }

    /// `k` for the local built-ins `k[x]/(x^m)`: `x` acts by zero.
    pub fn residue_field(algebra: &Arc<FinDimAlgebra>) -> Result<Self> {
        Self::character(algebra, &unit_vector(algebra.field(), algebra.dim(), 0))
    }

    pub fn algebra(&self) -> &Arc<FinDimAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Matrix of multiplication by the algebra element `a`.
    pub fn action_of(&self, a: &[Scalar]) -> Matrix {
        combine_matrices(self.field(), self.dim, a, &self.action)
    }

    pub fn is_free_of_rank(&self, rank: usize) -> bool {
        *self == AModule::free(&self.algebra, rank)
    }

    /// Smallest submodule containing `vectors`.
    pub fn generated(&self, vectors: &[Vector]) -> Subspace {
        let all: Vec<Vector> = vectors
            .iter()
            .flat_map(|v| self.action.iter().map(move |m| m.mul_vec(v)))
            .collect();
        Subspace::span(self.field(), self.dim, &all)
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        self.action
            .iter()
            .all(|m| s.contains_subspace(&s.image_under(m)))
    }

    /// The submodule `s` on its echelon basis, with its inclusion.
    pub fn submodule(&self, s: &Subspace) -> Result<(AModule, ModuleMap)> {
        if s.ambient_dim() != self.dim {
            return Err(Error::Shape(
                "subspace lives in the wrong ambient space".into(),
            ));
        }
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule(
                "subspace is not stable under the action".into(),
            ));
        }
        let basis = s.vectors();
        let field = self.field();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = basis
                    .iter()
                    .map(|v| s.coords(&m.mul_vec(v)).expect("stable"))
                    .collect();
                Matrix::from_cols(field, s.dim(), &cols)
            })
            .collect();
        let sub = Self::unchecked(self.algebra.clone(), s.dim(), action);
        let inc = Matrix::from_cols(field, self.dim, &basis);
        Ok((sub.clone(), ModuleMap::unchecked(sub, self.clone(), inc)))
    }

    /// `self / s` on the canonical quotient basis, with the projection.
    pub fn quotient(&self, s: &Subspace) -> Result<(AModule, ModuleMap)> {
        if s.ambient_dim() != self.dim {
            return Err(Error::Shape(
                "subspace lives in the wrong ambient space".into(),
            ));
        }
        if !self.is_submodule(s) {
            return Err(Error::InvalidModule(
                "subspace is not stable under the action".into(),
            ));
        }
        let action = self
            .action
            .iter()
            .map(|m| crate::linalg::induced_on_quotient(m, s, s))
            .collect::<Result<Vec<_>>>()?;
        let q = Self::unchecked(self.algebra.clone(), s.codim(), action);
        let field = self.field();
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| s.quotient_coords(&unit_vector(field, self.dim, j)))
            .collect();
        let proj = Matrix::from_cols(field, s.codim(), &cols);
        Ok((q.clone(), ModuleMap::unchecked(self.clone(), q, proj)))
    }

    pub fn direct_sum(&self, other: &AModule) -> Result<AModule> {
        self.same_algebra(other)?;
        let field = self.field();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Matrix::block_diag(field, &[a.clone(), b.clone()]))
            .collect();
        Ok(Self::unchecked(
            self.algebra.clone(),
            self.dim + other.dim,
            action,
        ))
    }

    pub(crate) fn same_algebra(&self, other: &AModule) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::InvalidModule(
                "modules over different algebras".into(),
            ));
        }
        Ok(())
    }

    /// A free resolution of length at least `length`, computed once and shared by clones.
    pub fn resolution(&self, length: usize) -> Arc<FreeResolution> {
        let mut memo = self.memo.lock().expect("resolution memo poisoned");
        match memo.as_ref() {
            Some(r) if r.length() >= length => r.clone(),
            cached => {
                let r = Arc::new(match cached {
                    Some(r) => r.extended_to(length),
                    None => FreeResolution::compute(self, length),
                });
                *memo = Some(r.clone());
                r
            }
        }
    }
}

/// An `A`-linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    src: AModule,
    dst: AModule,
    matrix: Matrix,
}

impl ModuleMap {
    pub fn new(src: AModule, dst: AModule, matrix: Matrix) -> Result<Self> {
        src.same_algebra(&dst)?;
        if matrix.shape() != (dst.dim, src.dim) {
            return Err(Error::Shape(format!(
                "map matrix is {:?}, expected {}x{}",
                matrix.shape(),
                dst.dim,
                src.dim
            )));
        }
        for (i, (a, b)) in src.action.iter().zip(&dst.action).enumerate() {
            if matrix.mul(a) != b.mul(&matrix) {
                return Err(Error::NotAMorphism(format!("does not commute with e{i}")));
            }
        }
        Ok(Self::unchecked(src, dst, matrix))
    }

    pub(crate) fn unchecked(src: AModule, dst: AModule, matrix: Matrix) -> Self {
        ModuleMap { src, dst, matrix }
    }

    pub fn identity(m: &AModule) -> Self {
        Self::unchecked(m.clone(), m.clone(), Matrix::identity(m.field(), m.dim))
    }

    pub fn zero(src: &AModule, dst: &AModule) -> Self {
        Self::unchecked(
            src.clone(),
            dst.clone(),
            Matrix::zeros(src.field(), dst.dim, src.dim),
        )
    }

    pub fn src(&self) -> &AModule {
        &self.src
    }

    pub fn dst(&self) -> &AModule {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.dst != other.src {
            return Err(Error::Shape(
                "composition of non-composable module maps".into(),
            ));
        }
        Ok(Self::unchecked(
            self.src.clone(),
            other.dst.clone(),
            other.matrix.mul(&self.matrix),
        ))
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::Shape(
                "sum of module maps with different endpoints".into(),
            ));
        }
        Ok(Self::unchecked(
            self.src.clone(),
            self.dst.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        Self::unchecked(self.src.clone(), self.dst.clone(), self.matrix.scale(c))
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image()
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.src.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.dst.dim
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let inv = self.matrix.inverse()?;
        Some(Self::unchecked(self.dst.clone(), self.src.clone(), inv))
    }
}

/// `0 -> B --i--> C --π--> D -> 0`, exact.
#[derive(Clone, Debug)]
pub struct ModuleSes {
    pub i: ModuleMap,
    pub pi: ModuleMap,
}

impl ModuleSes {
    pub fn new(i: ModuleMap, pi: ModuleMap) -> Result<Self> {
        if i.dst() != pi.src() {
            return Err(Error::NotExact("middle modules differ".into()));
        }
        if !i.is_injective() {
            return Err(Error::NotExact("left map is not injective".into()));
        }
        if !pi.is_surjective() {
            return Err(Error::NotExact("right map is not surjective".into()));
        }
        if i.image() != pi.kernel() {
            return Err(Error::NotExact(
                "image of the left map is not the kernel of the right map".into(),
            ));
        }
        Ok(ModuleSes { i, pi })
    }

    pub fn sub(&self) -> &AModule {
        self.i.src()
    }

    pub fn middle(&self) -> &AModule {
        self.i.dst()
    }

    pub fn quotient(&self) -> &AModule {
        self.pi.dst()
    }

    /// `0 -> B -> B ⊕ D -> D -> 0`.
    pub fn split(b: &AModule, d: &AModule) -> Result<Self> {
        let c = b.direct_sum(d)?;
        let field = b.field();
        let mut inc = Matrix::zeros(field, c.dim(), b.dim());
        inc.set_block(0, 0, &Matrix::identity(field, b.dim()));
        let mut proj = Matrix::zeros(field, d.dim(), c.dim());
        proj.set_block(0, b.dim(), &Matrix::identity(field, d.dim()));
        Self::new(
            ModuleMap::new(b.clone(), c.clone(), inc)?,
            ModuleMap::new(c, d.clone(), proj)?,
        )
    }

    /// `0 -> S -> M -> M/S -> 0` for a submodule `S`.
    pub fn from_submodule(m: &AModule, s: &Subspace) -> Result<Self> {
        let (_, inc) = m.submodule(s)?;
        let (_, proj) = m.quotient(s)?;
        Self::new(inc, proj)
    }
}

/// The matrix of the `A`-linear map `A^rank -> dst` sending generator `j` to `images[j]`.
pub fn free_map_matrix(algebra: &FinDimAlgebra, dst: &AModule, images: &[Vector]) -> Matrix {
    let field = algebra.field();
    let n = algebra.dim();
    let mut m = Matrix::zeros(field, dst.dim(), images.len() * n);
    for (j, y) in images.iter().enumerate() {
        for a in 0..n {
            let col = dst.action()[a].mul_vec(y);
            for (r, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(r, j * n + a, v);
                }
            }
        }
    }
    m
}

/// Images of the free generators under a map out of `A^rank`, given as a matrix.
pub fn generator_images(algebra: &FinDimAlgebra, rank: usize, m: &Matrix) -> Vec<Vector> {
    let n = algebra.dim();
    (0..rank)
        .map(|j| {
            let mut u = vec![algebra.field().zero(); rank * n];
            u[j * n..(j + 1) * n].clone_from_slice(algebra.unit());
            m.mul_vec(&u)
        })
        .collect()
}

/// `Hom_A(f, g)`: a basis of the solutions of `X · F_a = G_a · X` for all basis elements `a`.
pub fn hom_space(f: &AModule, g: &AModule) -> Result<(usize, Vec<ModuleMap>)> {
    f.same_algebra(g)?;
    let field = f.field();
    let (df, dg) = (f.dim(), g.dim());
    let id_f = Matrix::identity(field, df);
    let id_g = Matrix::identity(field, dg);
    // column-major vec: vec(X F) = (Fᵀ ⊗ I) vec X and vec(G X) = (I ⊗ G) vec X
    let mut system = Matrix::zeros(field, 0, df * dg);
    for (fa, ga) in f.action().iter().zip(g.action()) {
        system = system.vstack(&fa.transpose().kron(&id_g).sub(&id_f.kron(ga)));
    }
    let kernel = system.kernel();
    let maps = kernel
        .vectors()
        .into_iter()
        .map(|v| {
            ModuleMap::unchecked(
                f.clone(),
                g.clone(),
                Matrix::from_col_major(field, dg, df, &v),
            )
        })
        .collect::<Vec<_>>();
    Ok((maps.len(), maps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual() -> Arc<FinDimAlgebra> {
        Arc::new(FinDimAlgebra::dual_numbers(Field::Rationals))
    }

    #[test]
    fn free_and_residue_modules_validate() {
        let a = dual();
        let free = AModule::free(&a, 2);
        AModule::new(a.clone(), free.dim(), free.action().to_vec()).unwrap();
        let k = AModule::residue_field(&a).unwrap();
        assert_eq!(k.dim(), 1);
        assert!(AModule::character(&a, &[Field::Rationals.one(), Field::Rationals.one()]).is_err());
    }

    #[test]
    fn hom_space_examples() {
        let a = dual();
        let q = Field::Rationals;
        let k = AModule::residue_field(&a).unwrap();
        let free1 = AModule::free(&a, 1);
        assert_eq!(hom_space(&free1, &k).unwrap().0, 1);
        assert_eq!(hom_space(&free1, &AModule::free(&a, 2)).unwrap().0, 4);
        let (n, maps) = hom_space(&k, &free1).unwrap();
        assert_eq!(n, 1);
        // image is the socle (x)
        assert!(maps[0].matrix().get(0, 0).is_zero());
        let k2 = k.direct_sum(&k).unwrap();
        assert_eq!(hom_space(&k2, &k).unwrap().0, 2);
        for m in maps {
            ModuleMap::new(m.src().clone(), m.dst().clone(), m.matrix().clone()).unwrap();
        }
        let _ = q;
    }

    #[test]
    fn sub_and_quotient() {
        let a = dual();
        let free = AModule::free(&a, 1);
        let x = free.generated(&[unit_vector(Field::Rationals, 2, 1)]);
        let (sub, inc) = free.submodule(&x).unwrap();
        let (quo, proj) = free.quotient(&x).unwrap();
        assert_eq!(sub, AModule::residue_field(&a).unwrap());
        assert_eq!(quo, AModule::residue_field(&a).unwrap());
        assert!(inc.then(&proj).unwrap().matrix().is_zero());
        let not_sub = Subspace::span(Field::Rationals, 2, &[unit_vector(Field::Rationals, 2, 0)]);
        assert!(free.submodule(&not_sub).is_err());
    }

    #[test]
    fn equivariance_is_enforced() {
        let a = dual();
        let free = AModule::free(&a, 1);
        let k = AModule::residue_field(&a).unwrap();
        let q = Field::Rationals;
        // 1 ↦ 0, x ↦ 1 is not A-linear
        assert!(
            ModuleMap::new(free.clone(), k.clone(), Matrix::from_i64(q, 1, 2, &[0, 1])).is_err()
        );
        assert!(ModuleMap::new(free, k, Matrix::from_i64(q, 1, 2, &[1, 0])).is_ok());
    }
}
