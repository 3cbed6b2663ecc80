use serde::Serialize;

use super::module::{free_map_matrix, generator_images, AModule, ModuleMap};
use super::ring::{combine_matrices, FinDimAlgebra};
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{unit_vector, Matrix, Subspace, Vector};

/// `0 <- M <- P_0 <- P_1 <- … <- P_L` with `P_i = A^{s_i}`, exact at every computed stage.
#[derive(Clone, Debug, Serialize)]
pub struct FreeResolution {
    #[serde(skip)]
    module: AModule,
    ranks: Vec<usize>,
    augmentation: Matrix,
    /// `differentials[i - 1]` is `∂_i : P_i -> P_{i-1}`.
    differentials: Vec<Matrix>,
}

/// Greedy canonical generators: walk `candidates` in order, keep those not yet generated.
fn generators(m: &AModule, target: &Subspace, candidates: &[Vector]) -> Vec<Vector> {
    let mut chosen: Vec<Vector> = Vec::new();
    let mut current = Subspace::zero(m.field(), m.dim());
    for c in candidates {
        if current.dim() == target.dim() {
            break;
        }
        if !current.contains(c) {
            chosen.push(c.clone());
            current = m.generated(&chosen);
        }
    }
    debug_assert_eq!(current, *target);
    chosen
}

impl FreeResolution {
    pub(crate) fn compute(m: &AModule, length: usize) -> Self {
        let alg = m.algebra();
        let field = m.field();
        let candidates: Vec<Vector> = (0..m.dim())
            .map(|j| unit_vector(field, m.dim(), j))
            .collect();
        let gens = generators(m, &Subspace::full(field, m.dim()), &candidates);
        let augmentation = free_map_matrix(alg, m, &gens);
        let start = FreeResolution {
            module: m.clone(),
            ranks: vec![gens.len()],
            augmentation,
            differentials: vec![],
        };
        start.extended_to(length)
    }

    /// Continues the canonical construction; the existing terms are a prefix of the result.
    pub(crate) fn extended_to(&self, length: usize) -> Self {
        let mut out = self.clone();
        let alg = self.module.algebra().clone();
        while out.length() < length {
            let top = out.length();
            let last = if top == 0 {
                &out.augmentation
            } else {
                &out.differentials[top - 1]
            };
            let kernel = last.kernel();
            let p_top = AModule::free(&alg, out.ranks[top]);
            let gens = generators(&p_top, &kernel, &kernel.vectors());
            out.differentials.push(free_map_matrix(&alg, &p_top, &gens));
            out.ranks.push(gens.len());
        }
        out
    }

    /// Validates a resolution supplied from outside (e.g. a deliberately non-minimal one).
    pub fn new(
        module: AModule,
        ranks: Vec<usize>,
        augmentation: Matrix,
        differentials: Vec<Matrix>,
    ) -> Result<Self> {
        if ranks.is_empty() || differentials.len() + 1 != ranks.len() {
            return Err(Error::Shape(
                "need one rank per term and one differential per positive degree".into(),
            ));
        }
        let alg = module.algebra().clone();
        let term = |i: usize| AModule::free(&alg, ranks[i]);
        let eps = ModuleMap::new(term(0), module.clone(), augmentation.clone())?;
        if !eps.is_surjective() {
            return Err(Error::NotExact("augmentation is not onto".into()));
        }
        let mut kernel = eps.kernel();
        for (i, d) in differentials.iter().enumerate() {
            let d = ModuleMap::new(term(i + 1), term(i), d.clone())?;
            if d.image() != kernel {
                return Err(Error::NotExact(format!(
                    "image of the differential out of degree {} is not the kernel",
                    i + 1
                )));
            }
            kernel = d.kernel();
        }
        Ok(FreeResolution {
            module,
            ranks,
            augmentation,
            differentials,
        })
    }

    pub fn module(&self) -> &AModule {
        &self.module
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        self.module.algebra()
    }

    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn term(&self, i: usize) -> AModule {
        AModule::free(self.module.algebra(), self.ranks[i])
    }

    pub fn augmentation(&self) -> &Matrix {
        &self.augmentation
    }

    /// `∂_i : P_i -> P_{i-1}` for `1 <= i <= length`.
    pub fn differential(&self, i: usize) -> &Matrix {
        &self.differentials[i - 1]
    }

    /// The first `length + 1` terms.
    pub fn truncated(&self, length: usize) -> Self {
        assert!(length <= self.length());
        FreeResolution {
            module: self.module.clone(),
            ranks: self.ranks[..=length].to_vec(),
            augmentation: self.augmentation.clone(),
            differentials: self.differentials[..length].to_vec(),
        }
    }

    /// Images of the generators of `P_i` under `∂_i` (or under the augmentation for `i = 0`).
    pub fn boundary_images(&self, i: usize) -> Vec<Vector> {
        let m = if i == 0 {
            &self.augmentation
        } else {
            self.differential(i)
        };
        generator_images(self.algebra(), self.ranks[i], m)
    }

    /// `Hom_A(P_•, g)` in degrees `0..=length`, with `Hom_A(P_i, g) = g^{s_i}` by generator images.
    pub fn hom_into(&self, g: &AModule) -> Result<CochainComplex> {
        self.module.same_algebra(g)?;
        let field = g.field();
        let dims: Vec<usize> = self.ranks.iter().map(|s| s * g.dim()).collect();
        let diffs = (1..=self.length())
            .map(|i| {
                pullback_matrix(
                    self.algebra(),
                    g,
                    self.ranks[i - 1],
                    &self.boundary_images(i),
                )
            })
            .collect();
        CochainComplex::new(field, 0, dims, diffs)
    }
}

/// For `ψ : A^s -> A^t` with generator images `images` (each in `A^t`), the matrix of
/// `φ ↦ φ ∘ ψ : g^t -> g^s` in generator-image coordinates.
pub fn pullback_matrix(
    algebra: &FinDimAlgebra,
    g: &AModule,
    t: usize,
    images: &[Vector],
) -> Matrix {
    let field = g.field();
    let (n, dg) = (algebra.dim(), g.dim());
    let mut out = Matrix::zeros(field, images.len() * dg, t * dg);
    for (jp, w) in images.iter().enumerate() {
        for j in 0..t {
            let block = combine_matrices(field, dg, &w[j * n..(j + 1) * n], g.action());
            out.set_block(jp * dg, j * dg, &block);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::Field;

    #[test]
    fn free_module_resolves_trivially() {
        let a = Arc::new(FinDimAlgebra::dual_numbers(Field::Rationals));
        let r = AModule::free(&a, 2).resolution(3);
        assert_eq!(&r.ranks()[..4], &[2, 0, 0, 0]);
        assert_eq!(*r.augmentation(), Matrix::identity(Field::Rationals, 4));
    }

    #[test]
    fn residue_field_of_dual_numbers_is_periodic() {
        let q = Field::Rationals;
        let a = Arc::new(FinDimAlgebra::dual_numbers(q));
        let k = AModule::residue_field(&a).unwrap();
        let r = k.resolution(4);
        assert_eq!(&r.ranks()[..5], &[1, 1, 1, 1, 1]);
        for i in 1..=4 {
            assert_eq!(*r.differential(i), *a.left_basis(1));
        }
    }

    #[test]
    fn zero_module() {
        let a = Arc::new(FinDimAlgebra::truncated_polynomial(Field::Prime(3), 3));
        let r = AModule::zero(&a).resolution(2);
        assert!(r.ranks().iter().all(|&s| s == 0));
    }

    #[test]
    fn prefixes_agree() {
        let a = Arc::new(FinDimAlgebra::truncated_polynomial(Field::Rationals, 3));
        let k = AModule::residue_field(&a).unwrap();
        let short = FreeResolution::compute(&k, 2);
        let long = FreeResolution::compute(&k, 5);
        assert_eq!(long.truncated(2).ranks(), short.ranks());
        assert_eq!(long.truncated(2).differentials, short.differentials);
        FreeResolution::new(
            k,
            long.ranks.clone(),
            long.augmentation.clone(),
            long.differentials.clone(),
        )
        .unwrap();
    }

    #[test]
    fn non_exact_input_is_rejected() {
        let q = Field::Rationals;
        let a = Arc::new(FinDimAlgebra::dual_numbers(q));
        let k = AModule::residue_field(&a).unwrap();
        let eps = Matrix::from_i64(q, 1, 2, &[1, 0]);
        // P_1 = A mapping by 0 misses the kernel (x)
        let err =
            FreeResolution::new(k, vec![1, 1], eps, vec![Matrix::zeros(q, 2, 2)]).unwrap_err();
        assert!(matches!(err, Error::NotExact(_)));
    }
}
