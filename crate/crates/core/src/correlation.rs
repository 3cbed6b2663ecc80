//! Correlation functionals `⟨a_1 … a_k⟩ = t(α_1 ⋆ … ⋆ α_k)`.
//!
//! The model is a nerve carrying the constant presheaves `Hom_A(A^r, A^s)` between free modules.
//! Operators are Čech cocycles; each is lifted through the local-to-global spectral sequence,
//! the lifts are composed face by face (front face ∪ back face, Yoneda in the fibre), and the
//! volume functional `t` is applied to the top class.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{
    free_map_matrix, generator_images, lift_cocycle, AModule, FinDimAlgebra, FreeResolution,
};
use crate::cech::{
    cech_complex, hyper_double_complex, CechClass, ComplexPresheaf, Nerve, NervePresheaf,
    SignPlacement,
};
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{
    add_vectors, dot, format_vector, is_zero_vector, unit_vector, zero_vector, Field, Matrix,
    Scalar, Vector,
};
use crate::spectral::{class_map, ClassLift, DoubleComplex, LiftStatus};

/// Free modules over `algebra`, constant over `nerve`.
#[derive(Clone, Debug)]
pub struct FreeModel {
    algebra: Arc<FinDimAlgebra>,
    nerve: Arc<Nerve>,
}

impl FreeModel {
    pub fn new(algebra: Arc<FinDimAlgebra>, nerve: Arc<Nerve>) -> Self {
        FreeModel { algebra, nerve }
    }

    pub fn algebra(&self) -> &Arc<FinDimAlgebra> {
        &self.algebra
    }

    pub fn nerve(&self) -> &Arc<Nerve> {
        &self.nerve
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// The degree `n` carrying the volume class: the top dimension of the nerve.
    pub fn top_degree(&self) -> usize {
        self.nerve.max_dim()
    }

    /// `Hom_A(A^r, A^s)` as generator images: `r · s · dim A` coordinates.
    pub fn hom_dim(&self, r: usize, s: usize) -> usize {
        r * s * self.algebra.dim()
    }

    /// Čech complex of the constant presheaf `Hom_A(A^r, A^s)`.
    pub fn hom_cech(&self, r: usize, s: usize) -> CochainComplex {
        cech_complex(&NervePresheaf::constant(
            self.nerve.clone(),
            self.field(),
            self.hom_dim(r, s),
        ))
    }

    /// Čech complex of the constant presheaf `A` (values of the trace).
    pub fn scalar_cech(&self) -> CochainComplex {
        cech_complex(&NervePresheaf::constant(
            self.nerve.clone(),
            self.field(),
            self.algebra.dim(),
        ))
    }

    /// Čech degree horizontally, Ext degree vertically; free sources make it a single row.
    pub fn double_complex(&self, r: usize, s: usize) -> DoubleComplex {
        let hom = CochainComplex::concentrated(self.field(), 0, self.hom_dim(r, s));
        hyper_double_complex(
            &ComplexPresheaf::constant(self.nerve.clone(), &hom),
            SignPlacement::Vertical,
        )
        .expect("constant presheaves are functorial")
    }

    /// `dim H^q(N, Ext^p(A^r, A^s))`; zero for `p > 0` because free modules have no higher Ext.
    pub fn operator_space_dim(&self, r: usize, s: usize, p: usize, q: usize) -> usize {
        if p > 0 {
            0
        } else {
            self.hom_cech(r, s).cohomology(q as i64).dim()
        }
    }

    /// Canonical cocycles spanning `H^q(N, Hom_A(A^r, A^s))`.
    pub fn operator_basis(&self, r: usize, s: usize, q: usize) -> Vec<Vector> {
        self.hom_cech(r, s).cohomology(q as i64).basis().to_vec()
    }

    /// `A^r` resolved by itself.
    fn trivial_resolution(&self, r: usize) -> FreeResolution {
        let m = AModule::free(&self.algebra, r);
        let id = Matrix::identity(self.field(), m.dim());
        FreeResolution::new(m, vec![r], id, vec![]).expect("identity resolves a free module")
    }

    /// Yoneda composite `b ⋆ a` of `a ∈ Hom(A^r, A^s)` and `b ∈ Hom(A^s, A^t)`.
    fn yoneda(&self, (r, s, t): (usize, usize, usize), a: &[Scalar], b: &[Scalar]) -> Vector {
        let n = self.algebra.dim();
        let alpha: Vec<Vector> = a.chunks(s * n).map(<[Scalar]>::to_vec).collect();
        let lambda = lift_cocycle(
            &self.trivial_resolution(r),
            0,
            &alpha,
            &self.trivial_resolution(s),
            0,
        );
        let beta = free_map_matrix(
            &self.algebra,
            &AModule::free(&self.algebra, t),
            &chunk(b, t * n),
        );
        lambda[0].iter().flat_map(|v| beta.mul_vec(v)).collect()
    }

    /// The same composite through `k`-matrices of the module maps.
    fn matrix_compose(
        &self,
        (r, s, t): (usize, usize, usize),
        a: &[Scalar],
        b: &[Scalar],
    ) -> Vector {
        let n = self.algebra.dim();
        let ma = free_map_matrix(
            &self.algebra,
            &AModule::free(&self.algebra, s),
            &chunk(a, s * n),
        );
        let mb = free_map_matrix(
            &self.algebra,
            &AModule::free(&self.algebra, t),
            &chunk(b, t * n),
        );
        generator_images(&self.algebra, r, &mb.mul(&ma)).concat()
    }

    /// `tr : End_A(A^r) -> A` on generator images.
    pub fn trace(&self, r: usize, images: &[Scalar]) -> Vector {
        let n = self.algebra.dim();
        (0..r).fold(zero_vector(self.field(), n), |acc, i| {
            let start = i * r * n + i * n;
            add_vectors(&acc, &images[start..start + n])
        })
    }

    /// Facewise trace of an `End_A(A^r)`-valued cochain of degree `q`.
    pub fn trace_cochain(&self, r: usize, q: usize, cochain: &[Scalar]) -> Vector {
        let d = self.hom_dim(r, r);
        let faces = self.nerve.faces_of_dim(q).len();
        (0..faces)
            .flat_map(|f| self.trace(r, &cochain[f * d..(f + 1) * d]))
            .collect()
    }
}

fn chunk(v: &[Scalar], size: usize) -> Vec<Vector> {
    if size == 0 {
        return vec![];
    }
    v.chunks(size).map(<[Scalar]>::to_vec).collect()
}

/// Front-face/back-face cup product of cochains of constant presheaves, composing on each face.
pub fn cup(
    nerve: &Nerve,
    (q1, a, d1): (usize, &[Scalar], usize),
    (q2, b, d2): (usize, &[Scalar], usize),
    mut compose: impl FnMut(&[Scalar], &[Scalar]) -> Vector,
) -> Vector {
    let position = |q: usize, face: &[usize]| {
        let all = nerve.faces_of_dim(q);
        let idx = nerve.face_index(face).expect("faces of a face are faces");
        all.iter()
            .position(|&i| i == idx)
            .expect("face of the right dimension")
    };
    let mut out = Vec::new();
    for f in nerve.faces_of_dim(q1 + q2) {
        let face = &nerve.faces()[f];
        let (i, j) = (position(q1, &face[..=q1]), position(q2, &face[q1..]));
        out.extend(compose(&a[i * d1..(i + 1) * d1], &b[j * d2..(j + 1) * d2]));
    }
    out
}

/// An operator `a ∈ H^q(N, Ext^p(A^{source}, A^{target}))`, stored by a Čech cocycle.
#[derive(Clone, Debug)]
pub struct LocalOperator {
    pub position: (usize, usize),
    pub source_rank: usize,
    pub target_rank: usize,
    pub data: CechClass,
}

impl LocalOperator {
    pub fn new(
        model: &FreeModel,
        (p, q): (usize, usize),
        source_rank: usize,
        target_rank: usize,
        cochain: Vector,
    ) -> Result<Self> {
        if source_rank == 0 || target_rank == 0 {
            return Err(Error::Shape("operator ranks must be positive".into()));
        }
        let expected = if p > 0 {
            0
        } else {
            model.hom_cech(source_rank, target_rank).dim(q as i64)
        };
        if cochain.len() != expected {
            return Err(Error::Shape(format!(
                "operator at ({p},{q}) has {} coordinates, expected {expected}",
                cochain.len()
            )));
        }
        if p == 0
            && !is_zero_vector(
                &model
                    .hom_cech(source_rank, target_rank)
                    .d(q as i64)
                    .mul_vec(&cochain),
            )
        {
            return Err(Error::NotACocycle(format!(
                "operator at ({p},{q}) is not a Čech cocycle"
            )));
        }
        Ok(LocalOperator {
            position: (p, q),
            source_rank,
            target_rank,
            data: CechClass { degree: q, cochain },
        })
    }

    pub fn degree(&self) -> usize {
        self.position.0 + self.position.1
    }
}

/// The functional `t` on `Ext^n(A^r, A^r)`, optionally factored as `vol_scalar ∘ tr`.
#[derive(Clone, Debug)]
pub struct VolumeFunctional {
    model: FreeModel,
    rank: usize,
    /// Coefficients on the canonical basis of `H^n(N, End_A(A^r))`.
    coefficients: Vector,
    /// Coefficients on the canonical basis of `H^n(N, A)`, when `t` factors through the trace.
    vol_scalar: Option<Vector>,
    nondegenerate: bool,
}

impl VolumeFunctional {
    /// An arbitrary functional; with `nondegenerate` set the pairing is validated.
    pub fn new(
        model: &FreeModel,
        rank: usize,
        coefficients: Vector,
        nondegenerate: bool,
    ) -> Result<Self> {
        let n = model.top_degree() as i64;
        let dim = model.hom_cech(rank, rank).cohomology(n).dim();
        if coefficients.len() != dim {
            return Err(Error::Shape(format!(
                "{} coefficients for a {dim}-dimensional top group",
                coefficients.len()
            )));
        }
        let t = VolumeFunctional {
            model: model.clone(),
            rank,
            coefficients,
            vol_scalar: None,
            nondegenerate,
        };
        t.validate()
    }

    fn validate(self) -> Result<Self> {
        if self.nondegenerate && !self.is_nondegenerate() {
            return Err(Error::Degenerate(
                "the pairing (σ, τ) ↦ t(σ ⋆ τ) is not perfect".into(),
            ));
        }
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coefficients
    }

    pub fn vol_scalar(&self) -> Option<&[Scalar]> {
        self.vol_scalar.as_deref()
    }

    pub fn nondegenerate_flag(&self) -> bool {
        self.nondegenerate
    }

    /// `t` on a top cocycle of `End_A(A^r)`, through its class.
    pub fn apply(&self, top: &[Scalar]) -> Result<Scalar> {
        let n = self.model.top_degree() as i64;
        let coords = self
            .model
            .hom_cech(self.rank, self.rank)
            .cohomology(n)
            .coords(top)
            .ok_or_else(|| Error::NotACocycle("top cochain is not a cocycle".into()))?;
        Ok(dot(&self.coefficients, &coords, self.model.field()))
    }

    /// `vol_scalar(tr σ)`, evaluated without the precomputed coefficients.
    pub fn via_trace(&self, top: &[Scalar]) -> Result<Scalar> {
        let vol = self
            .vol_scalar
            .as_ref()
            .ok_or_else(|| Error::NotFree("functional has no trace factorization".into()))?;
        let n = self.model.top_degree();
        let tr = self.model.trace_cochain(self.rank, n, top);
        let coords = self
            .model
            .scalar_cech()
            .cohomology(n as i64)
            .coords(&tr)
            .ok_or_else(|| {
                Error::NotACocycle("trace of the top cochain is not a cocycle".into())
            })?;
        Ok(dot(vol, &coords, self.model.field()))
    }

    /// `P_{ij} = t(σ_i ⋆ τ_j)` for canonical bases of `H^q` and `H^{n-q}` of `End_A(A^r)`.
    pub fn pairing_matrix(&self, q: usize) -> Matrix {
        let m = &self.model;
        let (n, r) = (m.top_degree(), self.rank);
        let d = m.hom_dim(r, r);
        let left = m.operator_basis(r, r, q);
        let right = m.operator_basis(r, r, n - q);
        let mut out = Matrix::zeros(m.field(), left.len(), right.len());
        for (i, s) in left.iter().enumerate() {
            for (j, t) in right.iter().enumerate() {
                let prod = cup(m.nerve(), (q, s, d), (n - q, t, d), |a, b| {
                    m.yoneda((r, r, r), a, b)
                });
                out.set(
                    i,
                    j,
                    self.apply(&prod).expect("cup of cocycles is a cocycle"),
                );
            }
        }
        out
    }

    /// Every pairing `H^q × H^{n-q} -> k` is perfect.
    pub fn is_nondegenerate(&self) -> bool {
        (0..=self.model.top_degree()).all(|q| {
            let p = self.pairing_matrix(q);
            p.rows() == p.cols() && p.rank() == p.rows()
        })
    }
}

/// `t = vol_scalar ∘ tr` for a free module `f = A^r`; `vol_scalar` is given on the canonical basis
/// of `H^n(N, A)`.
pub fn locally_free_trace(
    model: &FreeModel,
    f: &AModule,
    vol_scalar: Vector,
    nondegenerate: bool,
) -> Result<VolumeFunctional> {
    let n = model.algebra().dim();
    if f.algebra() != model.algebra()
        || !f.dim().is_multiple_of(n)
        || !f.is_free_of_rank(f.dim() / n)
    {
        return Err(Error::NotFree(
            "the trace functional needs a free module A^r".into(),
        ));
    }
    let rank = f.dim() / n;
    let top = model.top_degree();
    let scalar_top = model.scalar_cech().cohomology(top as i64);
    if vol_scalar.len() != scalar_top.dim() {
        return Err(Error::Shape(format!(
            "vol_scalar has {} coefficients, H^{top}(N, A) has dimension {}",
            vol_scalar.len(),
            scalar_top.dim()
        )));
    }
    let coefficients = model
        .operator_basis(rank, rank, top)
        .iter()
        .map(|c| {
            let tr = model.trace_cochain(rank, top, c);
            dot(
                &vol_scalar,
                &scalar_top.coords(&tr).expect("trace is a chain map"),
                model.field(),
            )
        })
        .collect();
    VolumeFunctional {
        model: model.clone(),
        rank,
        coefficients,
        vol_scalar: Some(vol_scalar),
        nondegenerate,
    }
    .validate()
}

/// The trace functional normalized to send the first canonical top class of `H^n(N, A)` to 1.
pub fn normalized_trace(model: &FreeModel, rank: usize) -> Result<VolumeFunctional> {
    let dim = model
        .scalar_cech()
        .cohomology(model.top_degree() as i64)
        .dim();
    if dim == 0 {
        return Err(Error::Degenerate("the nerve has no top cohomology".into()));
    }
    locally_free_trace(
        model,
        &AModule::free(model.algebra(), rank),
        unit_vector(model.field(), dim, 0),
        false,
    )
}

#[derive(Clone, Debug)]
pub struct Correlation {
    pub value: Scalar,
    pub lifts: Vec<ClassLift>,
}

impl Serialize for Correlation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            value: String,
            lifts: &'a [ClassLift],
        }
        Repr {
            value: self.value.to_string(),
            lifts: &self.lifts,
        }
        .serialize(s)
    }
}

/// The pipeline on already-lifted operators: zero if any lift dies, otherwise `functional`
/// applied to `compose` of the total cocycles.
pub fn correlate_with(
    field: Field,
    lifts: Vec<ClassLift>,
    compose: impl FnOnce(&[Vector]) -> Result<Vector>,
    functional: impl FnOnce(&[Scalar]) -> Result<Scalar>,
) -> Result<Correlation> {
    let cocycles: Option<Vec<Vector>> = lifts
        .iter()
        .map(|l| match &l.status {
            LiftStatus::Survives { total_cocycle, .. } => Some(total_cocycle.clone()),
            LiftStatus::Dies { .. } => None,
        })
        .collect();
    let value = match cocycles {
        None => field.zero(),
        Some(z) => functional(&compose(&z)?)?,
    };
    Ok(Correlation { value, lifts })
}

fn check_chain(model: &FreeModel, ops: &[LocalOperator], vol: &VolumeFunctional) -> Result<()> {
    let first = ops
        .first()
        .ok_or_else(|| Error::Shape("no operators".into()))?;
    for w in ops.windows(2) {
        if w[1].source_rank != w[0].target_rank {
            return Err(Error::EndpointMismatch(
                "consecutive operators do not compose".into(),
            ));
        }
    }
    if ops.last().unwrap().target_rank != first.source_rank || vol.rank != first.source_rank {
        return Err(Error::EndpointMismatch(
            "the composite must be an endomorphism of the functional's module".into(),
        ));
    }
    let total: usize = ops.iter().map(LocalOperator::degree).sum();
    if total != model.top_degree() {
        return Err(Error::DegreeMismatch {
            expected: model.top_degree(),
            found: total,
        });
    }
    Ok(())
}

/// `⟨a_1 … a_k⟩`: lift through the spectral sequence, compose the lifts, apply `t`.
pub fn correlate(
    model: &FreeModel,
    ops: &[LocalOperator],
    vol: &VolumeFunctional,
) -> Result<Correlation> {
    check_chain(model, ops, vol)?;
    let field = model.field();
    let mut lifts = Vec::new();
    let mut cells = Vec::new();
    for op in ops {
        let (p, q) = op.position;
        let dc = model.double_complex(op.source_rank, op.target_rank);
        lifts.push(class_map(&dc, q as i64, p as i64, &op.data.cochain)?);
        cells.push(
            dc.total_layout(op.degree() as i64)
                .into_iter()
                .find(|c| c.0 == q as i64),
        );
    }
    let r0 = ops[0].source_rank;
    let n = model.top_degree();
    let compose = |cocycles: &[Vector]| -> Result<Vector> {
        if ops.iter().any(|op| op.position.0 > 0) {
            return Ok(zero_vector(field, model.hom_cech(r0, r0).dim(n as i64)));
        }
        let component = |j: usize| {
            let (_, off, d) = cells[j].expect("p = 0 operators sit in the bottom row");
            cocycles[j][off..off + d].to_vec()
        };
        let mut acc = component(0);
        let (mut deg, mut rank) = (ops[0].position.1, ops[0].target_rank);
        for (j, op) in ops.iter().enumerate().skip(1) {
            let dims = (r0, rank, op.target_rank);
            acc = cup(
                model.nerve(),
                (deg, &acc, model.hom_dim(r0, rank)),
                (
                    op.position.1,
                    &component(j),
                    model.hom_dim(rank, op.target_rank),
                ),
                |a, b| model.yoneda(dims, a, b),
            );
            deg += op.position.1;
            rank = op.target_rank;
        }
        Ok(acc)
    };
    correlate_with(field, lifts, compose, |top| vol.apply(top))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalencia {
    /// Through the spectral sequence, Yoneda composition and `t`.
    pub correlate: Scalar,
    /// `vol_scalar(tr(a_1 ∪ … ∪ a_k))` straight from the Čech cocycles.
    pub trace_route: Scalar,
    pub agree: bool,
}

impl Serialize for Equivalencia {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            correlate: String,
            trace_route: String,
            agree: bool,
        }
        Repr {
            correlate: self.correlate.to_string(),
            trace_route: self.trace_route.to_string(),
            agree: self.agree,
        }
        .serialize(s)
    }
}

/// Both evaluation routes for free modules with all `p_j = 0`.
pub fn equivalencia_check(
    model: &FreeModel,
    ops: &[LocalOperator],
    vol: &VolumeFunctional,
) -> Result<Equivalencia> {
    equivalencia_check_with_sign(model, ops, vol, 1)
}

/// As [`equivalencia_check`], with every cup product on the trace route multiplied by `sign`
/// (`sign = -1` is a negative control).
pub fn equivalencia_check_with_sign(
    model: &FreeModel,
    ops: &[LocalOperator],
    vol: &VolumeFunctional,
    sign: i64,
) -> Result<Equivalencia> {
    check_chain(model, ops, vol)?;
    let correlate = correlate(model, ops, vol)?.value;
    let field = model.field();
    let trace_route = if ops.iter().any(|op| op.position.0 > 0) {
        field.zero()
    } else {
        let r0 = ops[0].source_rank;
        let s = field.from_i64(sign);
        let mut acc = ops[0].data.cochain.clone();
        let (mut deg, mut rank) = (ops[0].position.1, ops[0].target_rank);
        for op in &ops[1..] {
            let dims = (r0, rank, op.target_rank);
            acc = cup(
                model.nerve(),
                (deg, &acc, model.hom_dim(r0, rank)),
                (
                    op.position.1,
                    &op.data.cochain,
                    model.hom_dim(rank, op.target_rank),
                ),
                |a, b| model.matrix_compose(dims, a, b),
            )
            .iter()
            .map(|x| x * &s)
            .collect();
            deg += op.position.1;
            rank = op.target_rank;
        }
        vol.via_trace(&acc)?
    };
    Ok(Equivalencia {
        agree: correlate == trace_route,
        correlate,
        trace_route,
    })
}

/// Formats a correlation value and statuses for text reports.
pub fn describe(c: &Correlation) -> String {
    let statuses: Vec<String> = c
        .lifts
        .iter()
        .map(|l| match &l.status {
            LiftStatus::Survives { class, .. } => {
                format!("({},{}) survives {:?}", l.p, l.q, format_vector(class))
            }
            LiftStatus::Dies { page } => format!("({},{}) dies on page {page}", l.p, l.q),
        })
        .collect();
    format!("value {}; {}", c.value, statuses.join("; "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scale_vector;
    use crate::random;
    use crate::spectral::dies_on_page_two;
    use rand::Rng;

    fn field_model(nerve: Nerve) -> FreeModel {
        FreeModel::new(
            Arc::new(FinDimAlgebra::ground_field(Field::Rationals)),
            Arc::new(nerve),
        )
    }

    fn random_cocycle(
        model: &FreeModel,
        r: usize,
        s: usize,
        q: usize,
        rng: &mut impl Rng,
    ) -> Vector {
        let basis = model.hom_cech(r, s).d(q as i64).kernel().vectors();
        let dim = model.hom_cech(r, s).dim(q as i64);
        basis
            .iter()
            .fold(zero_vector(model.field(), dim), |acc, b| {
                add_vectors(&acc, &scale_vector(&random::scalar(model.field(), rng), b))
            })
    }

    #[test]
    fn point_model_examples() {
        let model = field_model(Nerve::point());
        let q = Field::Rationals;
        let vol = normalized_trace(&model, 2).unwrap();
        let id = LocalOperator::new(
            &model,
            (0, 0),
            2,
            2,
            vec![q.one(), q.zero(), q.zero(), q.one()],
        )
        .unwrap();
        assert_eq!(correlate(&model, &[id], &vol).unwrap().value, q.from_i64(2));
        // e_12 sends the second generator to the first
        let e12 = LocalOperator::new(
            &model,
            (0, 0),
            2,
            2,
            vec![q.zero(), q.zero(), q.one(), q.zero()],
        )
        .unwrap();
        assert!(correlate(&model, &[e12.clone(), e12.clone()], &vol)
            .unwrap()
            .value
            .is_zero());
        assert!(
            equivalencia_check(&model, &[e12.clone(), e12], &vol)
                .unwrap()
                .agree
        );
    }

    #[test]
    fn trace_functional_examples() {
        let model = field_model(Nerve::triangle_boundary());
        let q = Field::Rationals;
        let vol = normalized_trace(&model, 3).unwrap();
        let basis = model.operator_basis(3, 3, 1);
        assert_eq!(basis.len(), 9);
        // id ⊗ c on the top class c picked by the normalization
        let top = model.scalar_cech().cohomology(1).basis()[0].clone();
        let id: Vec<Scalar> = (0..9)
            .map(|i| if i % 4 == 0 { q.one() } else { q.zero() })
            .collect();
        let sigma: Vector = top.iter().flat_map(|c| scale_vector(c, &id)).collect();
        assert_eq!(vol.apply(&sigma).unwrap(), q.from_i64(3));
        assert_eq!(vol.via_trace(&sigma).unwrap(), q.from_i64(3));
        let traceless: Vec<Scalar> = (0..9)
            .map(|i| if i == 1 { q.one() } else { q.zero() })
            .collect();
        let sigma: Vector = top
            .iter()
            .flat_map(|c| scale_vector(c, &traceless))
            .collect();
        assert!(vol.apply(&sigma).unwrap().is_zero());
    }

    #[test]
    fn factorization_and_bilinearity() {
        let mut rng = random::rng(17);
        let model = FreeModel::new(
            Arc::new(FinDimAlgebra::dual_numbers(Field::Rationals)),
            Arc::new(Nerve::triangle_boundary()),
        );
        let vol = normalized_trace(&model, 2).unwrap();
        for _ in 0..5 {
            let top = random_cocycle(&model, 2, 2, 1, &mut rng);
            assert_eq!(vol.apply(&top).unwrap(), vol.via_trace(&top).unwrap());
        }
        let d = model.hom_dim(2, 2);
        let pair = |s: &[Scalar], t: &[Scalar]| {
            vol.apply(&cup(model.nerve(), (0, s, d), (1, t, d), |a, b| {
                model.yoneda((2, 2, 2), a, b)
            }))
            .unwrap()
        };
        let (s1, s2) = (
            random_cocycle(&model, 2, 2, 0, &mut rng),
            random_cocycle(&model, 2, 2, 0, &mut rng),
        );
        let t = random_cocycle(&model, 2, 2, 1, &mut rng);
        let c = Field::Rationals.from_i64(3);
        let lhs = pair(&add_vectors(&s1, &scale_vector(&c, &s2)), &t);
        assert_eq!(lhs, pair(&s1, &t) + &(&c * &pair(&s2, &t)));
    }

    #[test]
    fn nondegeneracy_flag() {
        let dual = Arc::new(FinDimAlgebra::dual_numbers(Field::Rationals));
        let model = FreeModel::new(dual.clone(), Arc::new(Nerve::point()));
        let a = AModule::free(&dual, 1);
        let q = Field::Rationals;
        // evaluating at 1 kills the socle pairing; evaluating the x-coefficient is a Frobenius form
        assert!(matches!(
            locally_free_trace(&model, &a, vec![q.one(), q.zero()], true),
            Err(Error::Degenerate(_))
        ));
        assert!(locally_free_trace(&model, &a, vec![q.zero(), q.one()], true).is_ok());
        let k = AModule::residue_field(&dual).unwrap();
        assert!(matches!(
            locally_free_trace(&model, &k, vec![q.one(), q.zero()], false),
            Err(Error::NotFree(_))
        ));
    }

    #[test]
    fn triangle_equivalencia_and_negative_control() {
        let mut rng = random::rng(23);
        let model = field_model(Nerve::triangle_boundary());
        let vol = normalized_trace(&model, 2).unwrap();
        let q = Field::Rationals;
        let a1 = LocalOperator::new(
            &model,
            (0, 0),
            2,
            2,
            model.operator_basis(2, 2, 0)[0].clone(),
        )
        .unwrap();
        let mut found_nonzero = false;
        for _ in 0..10 {
            let a2 = LocalOperator::new(
                &model,
                (0, 1),
                2,
                2,
                random_cocycle(&model, 2, 2, 1, &mut rng),
            )
            .unwrap();
            let ops = [a1.clone(), a2];
            let good = equivalencia_check(&model, &ops, &vol).unwrap();
            assert!(good.agree);
            let bad = equivalencia_check_with_sign(&model, &ops, &vol, -1).unwrap();
            if !good.correlate.is_zero() {
                found_nonzero = true;
                assert!(!bad.agree);
            }
        }
        assert!(found_nonzero);
        let wrong = LocalOperator::new(
            &model,
            (0, 0),
            2,
            2,
            model.operator_basis(2, 2, 0)[0].clone(),
        )
        .unwrap();
        assert!(matches!(
            correlate(&model, &[wrong], &vol),
            Err(Error::DegreeMismatch { .. })
        ));
        let a = LocalOperator::new(&model, (0, 0), 2, 1, zero_vector(q, 6)).unwrap();
        let b = LocalOperator::new(&model, (0, 1), 2, 2, zero_vector(q, 12)).unwrap();
        assert!(matches!(
            correlate(&model, &[a, b], &vol),
            Err(Error::EndpointMismatch(_))
        ));
    }

    #[test]
    fn higher_ext_operators_are_zero() {
        let model = field_model(Nerve::triangle_boundary());
        assert_eq!(model.operator_space_dim(2, 2, 1, 0), 0);
        let vol = normalized_trace(&model, 1).unwrap();
        let a = LocalOperator::new(&model, (1, 0), 1, 1, vec![]).unwrap();
        let c = correlate(&model, &[a], &vol).unwrap();
        assert!(c.value.is_zero());
        assert!(LocalOperator::new(&model, (1, 0), 1, 1, vec![Field::Rationals.one()]).is_err());
    }

    #[test]
    fn dying_classes_give_zero() {
        let dc = dies_on_page_two();
        let lift = class_map(&dc, 0, 1, &[Field::Rationals.one()]).unwrap();
        assert!(!lift.survives());
        let c = correlate_with(
            Field::Rationals,
            vec![lift],
            |_| panic!("not reached"),
            |_| Ok(Field::Rationals.one()),
        )
        .unwrap();
        assert!(c.value.is_zero());
    }

    #[test]
    fn multilinear_in_each_slot() {
        let mut rng = random::rng(31);
        let model = FreeModel::new(
            Arc::new(FinDimAlgebra::dual_numbers(Field::Prime(5))),
            Arc::new(Nerve::triangle_boundary()),
        );
        let vol = normalized_trace(&model, 1).unwrap();
        let q = model.field();
        for slot in 0..3 {
            let degs = [0, 1, 0];
            let ranks = [1, 2, 1, 1];
            let mk = |j: usize, rng: &mut random::SeededRng| {
                random_cocycle(&model, ranks[j], ranks[j + 1], degs[j], rng)
            };
            let mut base: Vec<Vector> = (0..3).map(|j| mk(j, &mut rng)).collect();
            let other = mk(slot, &mut rng);
            let c = random::scalar(q, &mut rng);
            let value = |data: &[Vector]| {
                let ops: Vec<LocalOperator> = (0..3)
                    .map(|j| {
                        LocalOperator::new(
                            &model,
                            (0, degs[j]),
                            ranks[j],
                            ranks[j + 1],
                            data[j].clone(),
                        )
                        .unwrap()
                    })
                    .collect();
                correlate(&model, &ops, &vol).unwrap().value
            };
            let v0 = value(&base);
            let saved = base[slot].clone();
            base[slot] = other.clone();
            let v1 = value(&base);
            base[slot] = add_vectors(&saved, &scale_vector(&c, &other));
            assert_eq!(value(&base), v0 + &(&c * &v1));
        }
    }
}
