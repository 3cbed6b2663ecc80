use serde::Serialize;

use super::module::{free_map_matrix, AModule, ModuleMap};
use super::resolution::{pullback_matrix, FreeResolution};
use crate::error::{Error, Result};
use crate::linalg::{format_vector, zero_vector, Matrix, Scalar, Subquotient, Subspace, Vector};

/// `δ^i : Hom(P_i, g) -> Hom(P_{i+1}, g)`; needs `res.length() > i`.
fn hom_differential(res: &FreeResolution, g: &AModule, i: usize) -> Matrix {
    pullback_matrix(res.algebra(), g, res.rank(i), &res.boundary_images(i + 1))
}

fn ext_subquotient(res: &FreeResolution, g: &AModule, k: usize) -> Subquotient {
    let top = hom_differential(res, g, k).kernel();
    let bottom = if k == 0 {
        Subspace::zero(g.field(), top.ambient_dim())
    } else {
        hom_differential(res, g, k - 1).image()
    };
    Subquotient::new(top, bottom)
}

/// `Ext^k(f, g) = H^k(Hom_A(P_•(f), g))`.
#[derive(Clone, Debug)]
pub struct ExtGroup {
    degree: usize,
    group: Subquotient,
    basis: Vec<ExtClass>,
}

impl Serialize for ExtGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            degree: usize,
            dim: usize,
            cocycles: Vec<Vec<String>>,
        }
        Repr {
            degree: self.degree,
            dim: self.dim(),
            cocycles: self.group.reps().iter().map(|v| format_vector(v)).collect(),
        }
        .serialize(s)
    }
}

impl ExtGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    /// Canonical cocycle representatives.
    pub fn basis(&self) -> &[ExtClass] {
        &self.basis
    }

    pub fn cocycles(&self) -> &[Vector] {
        self.group.reps()
    }

    /// Coordinates of a cocycle in the basis; `None` if it is not a cocycle.
    pub fn coords_of(&self, cocycle: &[Scalar]) -> Option<Vector> {
        self.group.coords(cocycle)
    }
}

/// Ext group computed from the canonical resolution truncated at `length`.
pub fn ext_group(f: &AModule, g: &AModule, k: usize, length: usize) -> Result<ExtGroup> {
    if k >= length {
        return Err(Error::TruncationTooShort { degree: k, length });
    }
    f.same_algebra(g)?;
    let res = f.resolution(length);
    let group = ext_subquotient(&res, g, k);
    let basis = group
        .reps()
        .iter()
        .map(|v| ExtClass {
            f: f.clone(),
            g: g.clone(),
            degree: k,
            cocycle: v.clone(),
        })
        .collect();
    Ok(ExtGroup {
        degree: k,
        group,
        basis,
    })
}

/// Ext dimension from an arbitrary supplied resolution (not necessarily the canonical one).
pub fn ext_dim_with(res: &FreeResolution, g: &AModule, k: usize) -> Result<usize> {
    if k >= res.length() {
        return Err(Error::TruncationTooShort {
            degree: k,
            length: res.length(),
        });
    }
    res.module().same_algebra(g)?;
    Ok(ext_subquotient(res, g, k).dim())
}

/// A class in `Ext^k(f, g)`, represented by a cocycle `P_k(f) -> g` on the canonical resolution,
/// stored as the images of the free generators (`s_k · dim g` coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    f: AModule,
    g: AModule,
    degree: usize,
    cocycle: Vector,
}

impl ExtClass {
    pub fn new(f: &AModule, g: &AModule, degree: usize, cocycle: Vector) -> Result<Self> {
        f.same_algebra(g)?;
        let res = f.resolution(degree + 1);
        if cocycle.len() != res.rank(degree) * g.dim() {
            return Err(Error::Shape(format!(
                "cocycle has {} coordinates, expected {}",
                cocycle.len(),
                res.rank(degree) * g.dim()
            )));
        }
        if !crate::linalg::is_zero_vector(&hom_differential(&res, g, degree).mul_vec(&cocycle)) {
            return Err(Error::NotACocycle(format!(
                "degree {degree} cochain does not vanish on boundaries"
            )));
        }
        Ok(ExtClass {
            f: f.clone(),
            g: g.clone(),
            degree,
            cocycle,
        })
    }

    pub fn zero(f: &AModule, g: &AModule, degree: usize) -> Self {
        let s = f.resolution(degree + 1).rank(degree);
        ExtClass {
            f: f.clone(),
            g: g.clone(),
            degree,
            cocycle: zero_vector(g.field(), s * g.dim()),
        }
    }

    /// The degree-0 class of a module map `φ`, i.e. the cocycle `φ ∘ ε`.
    pub fn from_module_map(phi: &ModuleMap) -> Self {
        let res = phi.src().resolution(1);
        let cocycle = res
            .boundary_images(0)
            .iter()
            .flat_map(|v| phi.apply(v))
            .collect();
        ExtClass {
            f: phi.src().clone(),
            g: phi.dst().clone(),
            degree: 0,
            cocycle,
        }
    }

    pub fn identity(m: &AModule) -> Self {
        Self::from_module_map(&ModuleMap::identity(m))
    }

    pub fn source(&self) -> &AModule {
        &self.f
    }

    pub fn target(&self) -> &AModule {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cocycle(&self) -> &Vector {
        &self.cocycle
    }

    /// The cocycle as images of the generators of `P_k`.
    pub fn images(&self) -> Vec<Vector> {
        let dg = self.g.dim();
        if dg == 0 {
            return vec![vec![]; self.f.resolution(self.degree + 1).rank(self.degree)];
        }
        self.cocycle.chunks(dg).map(|c| c.to_vec()).collect()
    }

    /// Coordinates in the canonical basis of `Ext^k(f, g)`.
    pub fn coords(&self) -> Vector {
        let res = self.f.resolution(self.degree + 1);
        ext_subquotient(&res, &self.g, self.degree)
            .coords(&self.cocycle)
            .expect("stored cochains are cocycles")
    }

    pub fn is_zero(&self) -> bool {
        crate::linalg::is_zero_vector(&self.coords())
    }

    fn compatible(&self, other: &ExtClass) -> Result<()> {
        if self.f != other.f || self.g != other.g || self.degree != other.degree {
            return Err(Error::Shape("classes live in different Ext groups".into()));
        }
        Ok(())
    }

    /// Equality of classes: the difference is a coboundary.
    pub fn same_class(&self, other: &ExtClass) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.coords() == other.coords())
    }

    pub fn add(&self, other: &ExtClass) -> Result<ExtClass> {
        self.compatible(other)?;
        let cocycle = crate::linalg::add_vectors(&self.cocycle, &other.cocycle);
        Ok(ExtClass {
            cocycle,
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &Scalar) -> ExtClass {
        ExtClass {
            cocycle: crate::linalg::scale_vector(c, &self.cocycle),
            ..self.clone()
        }
    }

    /// Covariant functoriality `Ext^k(f, g) -> Ext^k(f, g')` along `φ : g -> g'`.
    pub fn pushforward(&self, phi: &ModuleMap) -> Result<ExtClass> {
        if *phi.src() != self.g {
            return Err(Error::EndpointMismatch(
                "map does not start at the class target".into(),
            ));
        }
        let cocycle = self.images().iter().flat_map(|v| phi.apply(v)).collect();
        Ok(ExtClass {
            f: self.f.clone(),
            g: phi.dst().clone(),
            degree: self.degree,
            cocycle,
        })
    }

    /// Contravariant functoriality `Ext^k(f, g) -> Ext^k(f', g)` along `ψ : f' -> f`,
    /// through the comparison map of canonical resolutions.
    pub fn pullback(&self, psi: &ModuleMap) -> Result<ExtClass> {
        if *psi.dst() != self.f {
            return Err(Error::EndpointMismatch(
                "map does not end at the class source".into(),
            ));
        }
        let k = self.degree;
        let lambda = comparison_map(psi, k);
        let res = self.f.resolution(k + 1);
        let alpha = free_map_matrix(res.algebra(), &self.g, &self.images());
        let cocycle = lambda[k].iter().flat_map(|v| alpha.mul_vec(v)).collect();
        Ok(ExtClass {
            f: psi.src().clone(),
            g: self.g.clone(),
            degree: k,
            cocycle,
        })
    }
}

/// Matrix of `Ext^k(f, φ) : Ext^k(f, g) -> Ext^k(f, g')` in the canonical bases.
pub fn ext_pushforward_matrix(f: &AModule, phi: &ModuleMap, k: usize) -> Result<Matrix> {
    let src = ext_group(f, phi.src(), k, k + 1)?;
    let dst = ext_group(f, phi.dst(), k, k + 1)?;
    let cols = src
        .basis()
        .iter()
        .map(|c| Ok(c.pushforward(phi)?.coords()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(f.field(), dst.dim(), &cols))
}

/// Matrix of `Ext^k(ψ, g) : Ext^k(f, g) -> Ext^k(f', g)` for `ψ : f' -> f`.
pub fn ext_pullback_matrix(psi: &ModuleMap, g: &AModule, k: usize) -> Result<Matrix> {
    let src = ext_group(psi.dst(), g, k, k + 1)?;
    let dst = ext_group(psi.src(), g, k, k + 1)?;
    let cols = src
        .basis()
        .iter()
        .map(|c| Ok(c.pullback(psi)?.coords()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_cols(g.field(), dst.dim(), &cols))
}

/// Lifts a cocycle `α : P_m(f) -> g` to maps `λ_j : P_{m+j}(f) -> P_j(g)` for `j = 0..=n`,
/// with `ε ∘ λ_0 = α` and `∂ ∘ λ_j = λ_{j-1} ∘ ∂`. Each `λ_j` is given by generator images.
pub fn lift_cocycle(
    res_f: &FreeResolution,
    m: usize,
    alpha: &[Vector],
    res_g: &FreeResolution,
    n: usize,
) -> Vec<Vec<Vector>> {
    assert!(
        res_f.length() >= m + n && res_g.length() >= n,
        "resolutions too short to lift"
    );
    let alg = res_f.algebra();
    let mut lambdas: Vec<Vec<Vector>> = Vec::with_capacity(n + 1);
    let lift = |target: &Matrix, y: &Vector| -> Vector {
        target
            .solve(y)
            .expect("exactness of the target resolution guarantees a lift")
    };
    lambdas.push(
        alpha
            .iter()
            .map(|y| lift(res_g.augmentation(), y))
            .collect(),
    );
    for j in 1..=n {
        let prev = free_map_matrix(alg, &res_g.term(j - 1), &lambdas[j - 1]);
        let images = res_f
            .boundary_images(m + j)
            .iter()
            .map(|w| lift(res_g.differential(j), &prev.mul_vec(w)))
            .collect();
        lambdas.push(images);
    }
    lambdas
}

/// Comparison maps `P_j(f') -> P_j(f)` over `ψ : f' -> f`, for `j = 0..=n`.
pub fn comparison_map(psi: &ModuleMap, n: usize) -> Vec<Vec<Vector>> {
    let res_src = psi.src().resolution(n);
    let res_dst = psi.dst().resolution(n);
    let alpha: Vec<Vector> = res_src
        .boundary_images(0)
        .iter()
        .map(|v| psi.apply(v))
        .collect();
    lift_cocycle(&res_src, 0, &alpha, &res_dst, n)
}

/// Yoneda composite `b ⋆ a ∈ Ext^{m+n}(f, h)` of `a ∈ Ext^m(f, g)` and `b ∈ Ext^n(g, h)`.
pub fn yoneda_product(a: &ExtClass, b: &ExtClass) -> Result<ExtClass> {
    if a.g != b.f {
        return Err(Error::EndpointMismatch(
            "target of the first class is not the source of the second".into(),
        ));
    }
    let (m, n) = (a.degree, b.degree);
    let res_f = a.f.resolution(m + n + 1);
    let res_g = b.f.resolution(n + 1);
    let lambda = lift_cocycle(&res_f, m, &a.images(), &res_g, n);
    let beta = free_map_matrix(res_g.algebra(), &b.g, &b.images());
    let cocycle = lambda[n].iter().flat_map(|v| beta.mul_vec(v)).collect();
    ExtClass::new(&a.f, &b.g, m + n, cocycle)
}
