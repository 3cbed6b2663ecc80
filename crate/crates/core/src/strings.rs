//! Extensions as data: pullback, pushout, Baer sum, splicing, obstruction classes and the long
//! exact Ext sequences of a short exact sequence.
//!
//! An `Extension1` is `0 -> G -> H -> F -> 0`; its class lives in `Ext^1(F, G)`. A p-fold
//! extension is stored from the `F` end: `splices[0]` ends at `F`, the last one starts at `G`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    ext_group, ext_pullback_matrix, ext_pushforward_matrix, free_map_matrix, hom_space,
    yoneda_product, AModule, ExtClass, FinDimAlgebra, FreeResolution, ModuleMap, ModuleRepr,
    ModuleSes,
};
use crate::complex::{ChainMap, CochainComplex, LongExactSequence, ShortExactSequence};
use crate::error::{Error, Result};
use crate::linalg::{format_vector, Matrix, Scalar, Vector};

/// `0 -> G --inject--> H --project--> F -> 0`.
#[derive(Clone, Debug)]
pub struct Extension1 {
    ses: ModuleSes,
}

impl Extension1 {
    pub fn new(inject: ModuleMap, project: ModuleMap) -> Result<Self> {
        Ok(Extension1 {
            ses: ModuleSes::new(inject, project)?,
        })
    }

    pub fn from_ses(ses: ModuleSes) -> Self {
        Extension1 { ses }
    }

    /// `0 -> G -> G ⊕ F -> F -> 0`.
    pub fn split(g: &AModule, f: &AModule) -> Result<Self> {
        Ok(Extension1 {
            ses: ModuleSes::split(g, f)?,
        })
    }

    pub fn g_module(&self) -> &AModule {
        self.ses.sub()
    }

    pub fn middle(&self) -> &AModule {
        self.ses.middle()
    }

    pub fn f_module(&self) -> &AModule {
        self.ses.quotient()
    }

    pub fn inject(&self) -> &ModuleMap {
        &self.ses.i
    }

    pub fn project(&self) -> &ModuleMap {
        &self.ses.pi
    }

    pub fn as_ses(&self) -> &ModuleSes {
        &self.ses
    }

    /// The same extension with the middle term rewritten through the invertible `beta`.
    pub fn transport(&self, beta: &Matrix) -> Result<Self> {
        let inv = beta
            .inverse()
            .ok_or_else(|| Error::InvalidExtension("change of basis is singular".into()))?;
        let h = self.middle();
        let action = h.action().iter().map(|a| beta.mul(a).mul(&inv)).collect();
        let h2 = AModule::new(h.algebra().clone(), h.dim(), action)?;
        Self::new(
            ModuleMap::new(
                self.g_module().clone(),
                h2.clone(),
                beta.mul(self.inject().matrix()),
            )?,
            ModuleMap::new(
                h2,
                self.f_module().clone(),
                self.project().matrix().mul(&inv),
            )?,
        )
    }

    pub fn to_repr(&self) -> Extension1Repr {
        Extension1Repr {
            algebra: self.middle().algebra().as_ref().clone(),
            g_module: self.g_module().to_repr(),
            middle: self.middle().to_repr(),
            f_module: self.f_module().to_repr(),
            inject: self.inject().matrix().clone(),
            project: self.project().matrix().clone(),
        }
    }

    pub fn from_repr(r: Extension1Repr) -> Result<Self> {
        let alg = Arc::new(r.algebra);
        let g = AModule::from_repr(alg.clone(), r.g_module)?;
        let h = AModule::from_repr(alg.clone(), r.middle)?;
        let f = AModule::from_repr(alg, r.f_module)?;
        Self::new(
            ModuleMap::new(g, h.clone(), r.inject)?,
            ModuleMap::new(h, f, r.project)?,
        )
    }
}

/// JSON form: the algebra, three modules and the two maps.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Extension1Repr {
    pub algebra: FinDimAlgebra,
    pub g_module: ModuleRepr,
    pub middle: ModuleRepr,
    pub f_module: ModuleRepr,
    pub inject: Matrix,
    pub project: Matrix,
}

impl Serialize for Extension1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Extension1 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Extension1::from_repr(Extension1Repr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `0 -> G -> H_{p-1} -> … -> H_0 -> F -> 0` as a list of spliced short exact sequences.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Extension1>", into = "Vec<Extension1>")]
pub struct ExtensionP {
    splices: Vec<Extension1>,
}

impl TryFrom<Vec<Extension1>> for ExtensionP {
    type Error = Error;
    fn try_from(v: Vec<Extension1>) -> Result<Self> {
        ExtensionP::new(v)
    }
}

impl From<ExtensionP> for Vec<Extension1> {
    fn from(e: ExtensionP) -> Self {
        e.splices
    }
}

impl ExtensionP {
    /// `splices[j + 1]` must end where `splices[j]` starts.
    pub fn new(splices: Vec<Extension1>) -> Result<Self> {
        if splices.is_empty() {
            return Err(Error::InvalidExtension(
                "a p-fold extension needs p >= 1 pieces".into(),
            ));
        }
        for (j, w) in splices.windows(2).enumerate() {
            if w[1].f_module() != w[0].g_module() {
                return Err(Error::InvalidExtension(format!(
                    "pieces {j} and {} do not glue",
                    j + 1
                )));
            }
        }
        Ok(ExtensionP { splices })
    }

    pub fn single(e: Extension1) -> Self {
        ExtensionP { splices: vec![e] }
    }

    /// Splices `upper ⋆ lower`: `lower` ends at `F`, `upper` starts at `G`.
    pub fn splice(lower: &ExtensionP, upper: &ExtensionP) -> Result<Self> {
        Self::new(
            lower
                .splices
                .iter()
                .chain(&upper.splices)
                .cloned()
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.splices.len()
    }

    pub fn splices(&self) -> &[Extension1] {
        &self.splices
    }

    pub fn f_module(&self) -> &AModule {
        self.splices[0].f_module()
    }

    pub fn g_module(&self) -> &AModule {
        self.splices.last().expect("nonempty").g_module()
    }
}

fn solve_into(m: &ModuleMap, y: &[Scalar], what: &str) -> Result<Vector> {
    m.matrix()
        .solve(y)
        .ok_or_else(|| Error::InvalidExtension(format!("{what} has no preimage")))
}

/// Fibered product: middle `{(f', h) : γ(f') = project(h)} ⊂ F' ⊕ H`.
pub fn pullback_ext(s: &Extension1, gamma: &ModuleMap) -> Result<Extension1> {
    if gamma.dst() != s.f_module() {
        return Err(Error::EndpointMismatch(
            "γ must land in the quotient of the extension".into(),
        ));
    }
    let (fp, h, g) = (gamma.src(), s.middle(), s.g_module());
    let field = h.field();
    let sum = fp.direct_sum(h)?;
    let condition = gamma.matrix().hstack(&s.project().matrix().neg());
    let (m, inc) = sum.submodule(&condition.kernel())?;
    let into_sum = Matrix::zeros(field, fp.dim(), g.dim()).vstack(s.inject().matrix());
    let inject = inc
        .matrix()
        .solve_matrix(&into_sum)
        .expect("(0, inject(g)) lies in the fibered product");
    let first = Matrix::identity(field, fp.dim()).hstack(&Matrix::zeros(field, fp.dim(), h.dim()));
    Extension1::new(
        ModuleMap::new(g.clone(), m.clone(), inject)?,
        ModuleMap::new(m, fp.clone(), first.mul(inc.matrix()))?,
    )
}

/// Fibered coproduct: middle `(H ⊕ G') / {(inject(g), -α(g))}`.
pub fn pushout_ext(s: &Extension1, alpha: &ModuleMap) -> Result<Extension1> {
    if alpha.src() != s.g_module() {
        return Err(Error::EndpointMismatch(
            "α must start at the submodule of the extension".into(),
        ));
    }
    let (gp, h, f) = (alpha.dst(), s.middle(), s.f_module());
    let field = h.field();
    let sum = h.direct_sum(gp)?;
    let relation = s.inject().matrix().vstack(&alpha.matrix().neg());
    let (m, proj) = sum.quotient(&relation.image())?;
    let inject = proj
        .matrix()
        .mul(&Matrix::zeros(field, h.dim(), gp.dim()).vstack(&Matrix::identity(field, gp.dim())));
    let section = proj
        .matrix()
        .solve_matrix(&Matrix::identity(field, m.dim()))
        .expect("quotient map is onto");
    let down = s
        .project()
        .matrix()
        .hstack(&Matrix::zeros(field, f.dim(), gp.dim()));
    Extension1::new(
        ModuleMap::new(gp.clone(), m.clone(), inject)?,
        ModuleMap::new(m, f.clone(), down.mul(&section))?,
    )
}

/// A middle map `β : H -> H'` commuting with both legs, if one exists. Any such `β` is an
/// isomorphism by the five lemma, so solvability of the affine system decides equivalence.
pub fn equivalence(s: &Extension1, t: &Extension1) -> Option<ModuleMap> {
    if s.g_module() != t.g_module()
        || s.f_module() != t.f_module()
        || s.middle().dim() != t.middle().dim()
    {
        return None;
    }
    let (h, h2) = (s.middle(), t.middle());
    let field = h.field();
    let (n, n2) = (h.dim(), h2.dim());
    let (id, id2) = (Matrix::identity(field, n), Matrix::identity(field, n2));
    // column-major vec: vec(XM) = (Mᵀ ⊗ I) vec X, vec(MX) = (I ⊗ M) vec X
    let mut system = Matrix::zeros(field, 0, n * n2);
    let mut rhs: Vector = Vec::new();
    for (a, a2) in h.action().iter().zip(h2.action()) {
        system = system.vstack(&a.transpose().kron(&id2).sub(&id.kron(a2)));
        rhs.extend(std::iter::repeat_n(field.zero(), n * n2));
    }
    system = system.vstack(&s.inject().matrix().transpose().kron(&id2));
    rhs.extend(t.inject().matrix().to_col_major());
    system = system.vstack(&id.kron(t.project().matrix()));
    rhs.extend(s.project().matrix().to_col_major());
    let x = system.solve(&rhs)?;
    let beta = Matrix::from_col_major(field, n2, n, &x);
    beta.inverse()?;
    ModuleMap::new(h.clone(), h2.clone(), beta).ok()
}

pub fn is_equivalent(s: &Extension1, t: &Extension1) -> bool {
    equivalence(s, t).is_some()
}

/// `0 -> G ⊕ G' -> H ⊕ H' -> F ⊕ F' -> 0`.
pub fn direct_sum_ext(s: &Extension1, t: &Extension1) -> Result<Extension1> {
    let field = s.middle().field();
    let diag = |a: &ModuleMap, b: &ModuleMap, src: AModule, dst: AModule| {
        ModuleMap::new(
            src,
            dst,
            Matrix::block_diag(field, &[a.matrix().clone(), b.matrix().clone()]),
        )
    };
    let g = s.g_module().direct_sum(t.g_module())?;
    let h = s.middle().direct_sum(t.middle())?;
    let f = s.f_module().direct_sum(t.f_module())?;
    Extension1::new(
        diag(s.inject(), t.inject(), g, h.clone())?,
        diag(s.project(), t.project(), h, f)?,
    )
}

/// Pull back `s ⊕ t` along the diagonal of `F`, push out along the sum map of `G`.
pub fn baer_sum(s: &Extension1, t: &Extension1) -> Result<Extension1> {
    if s.g_module() != t.g_module() || s.f_module() != t.f_module() {
        return Err(Error::EndpointMismatch(
            "Baer sum needs equal end modules".into(),
        ));
    }
    let (g, f) = (s.g_module(), s.f_module());
    let field = g.field();
    let both = direct_sum_ext(s, t)?;
    let delta = Matrix::identity(field, f.dim()).vstack(&Matrix::identity(field, f.dim()));
    let nabla = Matrix::identity(field, g.dim()).hstack(&Matrix::identity(field, g.dim()));
    let pulled = pullback_ext(
        &both,
        &ModuleMap::new(f.clone(), both.f_module().clone(), delta)?,
    )?;
    pushout_ext(
        &pulled,
        &ModuleMap::new(both.g_module().clone(), g.clone(), nabla)?,
    )
}

/// Class of a p-fold extension: lift `id_F` along the splice to `P_• -> H_•`; the top component
/// lands in `G` and is the cocycle.
pub fn ext_class_of(e: &ExtensionP) -> Result<ExtClass> {
    let p = e.degree();
    let (f, g) = (e.f_module(), e.g_module());
    let res = f.resolution(p + 1);
    let alg = res.algebra();
    let s = e.splices();
    let mut beta: Vec<Vector> = res
        .boundary_images(0)
        .iter()
        .map(|y| solve_into(s[0].project(), y, "ε"))
        .collect::<Result<_>>()?;
    for j in 1..p {
        let prev = free_map_matrix(alg, s[j - 1].middle(), &beta);
        beta = res
            .boundary_images(j)
            .iter()
            .map(|w| {
                let k = solve_into(s[j - 1].inject(), &prev.mul_vec(w), "boundary")?;
                solve_into(s[j].project(), &k, "kernel element")
            })
            .collect::<Result<_>>()?;
    }
    let prev = free_map_matrix(alg, s[p - 1].middle(), &beta);
    let mut cocycle = Vec::new();
    for w in res.boundary_images(p) {
        cocycle.extend(solve_into(
            s[p - 1].inject(),
            &prev.mul_vec(&w),
            "top boundary",
        )?);
    }
    ExtClass::new(f, g, p, cocycle)
}

/// The p-fold extension of a cocycle `c : P_p -> G` (`p >= 1`): factor `c` through
/// `K_p = im ∂_p`, push out `0 -> K_p -> P_{p-1} -> K_{p-1} -> 0` along it, and splice with the
/// lower pieces of the resolution.
pub fn extension_from_cocycle(c: &ExtClass) -> Result<ExtensionP> {
    let p = c.degree();
    if p == 0 {
        return Err(Error::InvalidExtension(
            "degree-0 classes are module maps, not extensions".into(),
        ));
    }
    let (f, g) = (c.source(), c.target());
    let field = f.field();
    let res = f.resolution(p + 1);
    let alg = res.algebra();
    // kernels[j] = (K_j, K_j -> P_{j-1}) and corestrictions[j] : P_j -> K_j, with K_0 = F
    let mut kernels: Vec<(AModule, ModuleMap)> = vec![(f.clone(), ModuleMap::identity(f))];
    let mut corestrictions = vec![ModuleMap::new(
        res.term(0),
        f.clone(),
        res.augmentation().clone(),
    )?];
    for j in 1..=p {
        let pj1 = res.term(j - 1);
        let (k, inc) = pj1.submodule(&res.differential(j).image())?;
        let co = inc
            .matrix()
            .solve_matrix(res.differential(j))
            .expect("∂ lands in its image");
        corestrictions.push(ModuleMap::new(res.term(j), k.clone(), co)?);
        kernels.push((k, inc));
    }
    let piece = |j: usize| Extension1::new(kernels[j].1.clone(), corestrictions[j - 1].clone());
    let mut splices: Vec<Extension1> = (1..p).map(piece).collect::<Result<_>>()?;
    let section = corestrictions[p]
        .matrix()
        .solve_matrix(&Matrix::identity(field, kernels[p].0.dim()))
        .expect("corestriction is onto");
    let c_map = free_map_matrix(alg, g, &c.images());
    let factored = ModuleMap::new(kernels[p].0.clone(), g.clone(), c_map.mul(&section))?;
    splices.push(pushout_ext(&piece(p)?, &factored)?);
    ExtensionP::new(splices)
}

/// Convenience: validates the cochain first.
pub fn extension_from_cochain(
    f: &AModule,
    g: &AModule,
    p: usize,
    cochain: Vector,
) -> Result<ExtensionP> {
    extension_from_cocycle(&ExtClass::new(f, g, p, cochain)?)
}

/// The module map `F -> G` of a degree-0 class.
pub fn degree_zero_map(c: &ExtClass) -> Result<ModuleMap> {
    if c.degree() != 0 {
        return Err(Error::Shape(format!(
            "class has degree {}, not 0",
            c.degree()
        )));
    }
    let (f, g) = (c.source(), c.target());
    let res = f.resolution(1);
    let phi = free_map_matrix(res.algebra(), g, &c.images());
    let section = res
        .augmentation()
        .solve_matrix(&Matrix::identity(f.field(), f.dim()))
        .expect("augmentation is onto");
    ModuleMap::new(f.clone(), g.clone(), phi.mul(&section))
}

fn combination(
    f: &AModule,
    g: &AModule,
    k: usize,
    basis: &[ExtClass],
    coeffs: &[Scalar],
) -> Result<ExtClass> {
    let mut acc = ExtClass::zero(f, g, k);
    for (b, c) in basis.iter().zip(coeffs) {
        acc = acc.add(&b.scale(c))?;
    }
    Ok(acc)
}

/// A class on the larger object; for degree 0 also the module map itself.
#[derive(Clone, Debug)]
pub struct Witness {
    pub class: ExtClass,
    pub map: Option<ModuleMap>,
}

#[derive(Clone, Debug)]
pub struct ObstructionClass {
    pub value: ExtClass,
    pub vanishes: bool,
    pub witness: Option<Witness>,
}

impl Serialize for ObstructionClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct WitnessRepr {
            class: Vec<String>,
            map: Option<Matrix>,
        }
        #[derive(Serialize)]
        struct Repr {
            degree: usize,
            value: Vec<String>,
            vanishes: bool,
            witness: Option<WitnessRepr>,
        }
        Repr {
            degree: self.value.degree(),
            value: format_vector(&self.value.coords()),
            vanishes: self.vanishes,
            witness: self.witness.as_ref().map(|w| WitnessRepr {
                class: format_vector(&w.class.coords()),
                map: w.map.as_ref().map(|m| m.matrix().clone()),
            }),
        }
        .serialize(s)
    }
}

fn witness(class: ExtClass) -> Result<Witness> {
    let map = if class.degree() == 0 {
        Some(degree_zero_map(&class)?)
    } else {
        None
    };
    Ok(Witness { class, map })
}

/// Obstruction to extending `ρ ∈ Ext^p(B, G)` along `u : 0 -> B -> C -> D -> 0`: the Yoneda
/// composite `ρ ⋆ [u] ∈ Ext^{p+1}(D, G)`. A witness in `Ext^p(C, G)` restricting to `ρ` is
/// solved for independently.
pub fn obstruction_extend(rho: &ExtClass, u: &Extension1) -> Result<ObstructionClass> {
    if rho.source() != u.g_module() {
        return Err(Error::EndpointMismatch(
            "ρ must start at the submodule of u".into(),
        ));
    }
    let (p, g) = (rho.degree(), rho.target());
    let value = yoneda_product(&ext_class_of(&ExtensionP::single(u.clone()))?, rho)?;
    let restriction = ext_pullback_matrix(u.inject(), g, p)?;
    let witness = match restriction.solve(&rho.coords()) {
        Some(x) => {
            let basis = ext_group(u.middle(), g, p, p + 1)?;
            Some(witness(combination(u.middle(), g, p, basis.basis(), &x)?)?)
        }
        None => None,
    };
    Ok(ObstructionClass {
        vanishes: value.is_zero(),
        value,
        witness,
    })
}

/// Obstruction to lifting `τ ∈ Ext^p(F, D)` through `u : 0 -> B -> C -> D -> 0`: the composite
/// `[u] ⋆ τ ∈ Ext^{p+1}(F, B)`, with a witness in `Ext^p(F, C)` when one exists.
pub fn obstruction_lift(tau: &ExtClass, u: &Extension1) -> Result<ObstructionClass> {
    if tau.target() != u.f_module() {
        return Err(Error::EndpointMismatch(
            "τ must land in the quotient of u".into(),
        ));
    }
    let (p, f) = (tau.degree(), tau.source());
    let value = yoneda_product(tau, &ext_class_of(&ExtensionP::single(u.clone()))?)?;
    let push = ext_pushforward_matrix(f, u.project(), p)?;
    let witness = match push.solve(&tau.coords()) {
        Some(x) => {
            let basis = ext_group(f, u.middle(), p, p + 1)?;
            Some(witness(combination(f, u.middle(), p, basis.basis(), &x)?)?)
        }
        None => None,
    };
    Ok(ObstructionClass {
        vanishes: value.is_zero(),
        value,
        witness,
    })
}

/// Horseshoe resolution of the middle of `u` from the canonical resolutions of its ends:
/// `P_n(C) = P_n(B) ⊕ P_n(D)`, `∂ = [[∂_B, θ], [0, ∂_D]]`.
pub fn horseshoe(u: &Extension1, length: usize) -> Result<FreeResolution> {
    let (b, c, d) = (u.g_module(), u.middle(), u.f_module());
    let (rb, rd) = (b.resolution(length), d.resolution(length));
    let alg = rb.algebra();
    let n = alg.dim();
    let field = c.field();
    let sigma: Vec<Vector> = rd
        .boundary_images(0)
        .iter()
        .map(|y| solve_into(u.project(), y, "ε_D"))
        .collect::<Result<_>>()?;
    let mut aug_images: Vec<Vector> = rb
        .boundary_images(0)
        .iter()
        .map(|y| u.inject().apply(y))
        .collect();
    aug_images.extend(sigma.iter().cloned());
    let augmentation = free_map_matrix(alg, c, &aug_images);
    let sigma_map = free_map_matrix(alg, c, &sigma);
    let mut theta: Vec<Vector> = Vec::new();
    let mut diffs = Vec::new();
    let mut ranks = vec![rb.rank(0) + rd.rank(0)];
    for k in 1..=length {
        theta = rd
            .boundary_images(k)
            .iter()
            .map(|w| {
                if k == 1 {
                    let y = solve_into(u.inject(), &sigma_map.mul_vec(w), "σ∂")?;
                    Ok(rb
                        .augmentation()
                        .solve(&crate::linalg::scale_vector(&field.from_i64(-1), &y))
                        .expect("ε_B onto"))
                } else {
                    let prev = free_map_matrix(alg, &rb.term(k - 2), &theta);
                    let y = prev.mul_vec(w);
                    Ok(rb
                        .differential(k - 1)
                        .solve(&crate::linalg::scale_vector(&field.from_i64(-1), &y))
                        .expect("exact"))
                }
            })
            .collect::<Result<_>>()?;
        let zeros_d = vec![field.zero(); rd.rank(k - 1) * n];
        let mut images: Vec<Vector> = rb
            .boundary_images(k)
            .into_iter()
            .map(|v| [v, zeros_d.clone()].concat())
            .collect();
        images.extend(
            theta
                .iter()
                .zip(rd.boundary_images(k))
                .map(|(t, v)| [t.clone(), v].concat()),
        );
        let target = AModule::free(c.algebra(), ranks[k - 1]);
        diffs.push(free_map_matrix(alg, &target, &images));
        ranks.push(rb.rank(k) + rd.rank(k));
    }
    FreeResolution::new(c.clone(), ranks, augmentation, diffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LesSide {
    /// `Ext^•(F, -)` applied to `u`.
    CovariantFromF,
    /// `Ext^•(-, G)` applied to `u`.
    ContravariantToG,
}

/// The long exact Ext sequence of `u` against a fixed module, in degrees `0..=length`
/// (plus the first group of degree `length + 1`).
#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub side: LesSide,
    pub length: usize,
    pub sequence: LongExactSequence,
    pub exact: bool,
    /// Connecting matrices in degrees `0..=length`.
    pub connecting: Vec<Matrix>,
    /// For a projective (locally free) fixed module on the covariant side: higher Ext vanish and
    /// `Ext^0` matches `Hom`.
    pub locally_free_check: Option<bool>,
}

fn blockwise(ranks: &[usize], m: &Matrix) -> Vec<Matrix> {
    ranks
        .iter()
        .map(|&s| Matrix::identity(m.field(), s).kron(m))
        .collect()
}

fn truncate(les: LongExactSequence, nodes: usize) -> LongExactSequence {
    let mut les = les;
    les.labels.truncate(nodes);
    les.sequence.dims.truncate(nodes);
    les.sequence.maps.truncate(nodes - 1);
    les
}

pub fn les_report(
    u: &Extension1,
    other: &AModule,
    side: LesSide,
    length: usize,
) -> Result<LesReport> {
    let field = other.field();
    let (b, c, d) = (u.g_module(), u.middle(), u.f_module());
    let (ses, names) = match side {
        LesSide::CovariantFromF => {
            let res = other.resolution(length + 2);
            let (hb, hc, hd) = (res.hom_into(b)?, res.hom_into(c)?, res.hom_into(d)?);
            let left = ChainMap::new(hb, hc.clone(), blockwise(res.ranks(), u.inject().matrix()))?;
            let right = ChainMap::new(hc, hd, blockwise(res.ranks(), u.project().matrix()))?;
            (ShortExactSequence::new(left, right)?, ["F,B", "F,C", "F,D"])
        }
        LesSide::ContravariantToG => {
            let (rb, rd) = (b.resolution(length + 2), d.resolution(length + 2));
            let shoe = horseshoe(u, length + 2)?;
            let (hd, hc, hb) = (
                rd.hom_into(other)?,
                shoe.hom_into(other)?,
                rb.hom_into(other)?,
            );
            let g = other.dim();
            let left = (0..=length + 2)
                .map(|k| {
                    let (sb, sd) = (rb.rank(k) * g, rd.rank(k) * g);
                    Matrix::zeros(field, sb, sd).vstack(&Matrix::identity(field, sd))
                })
                .collect();
            let right = (0..=length + 2)
                .map(|k| {
                    let (sb, sd) = (rb.rank(k) * g, rd.rank(k) * g);
                    Matrix::identity(field, sb).hstack(&Matrix::zeros(field, sb, sd))
                })
                .collect();
            let left = ChainMap::new(hd, hc.clone(), left)?;
            let right = ChainMap::new(hc, hb, right)?;
            (ShortExactSequence::new(left, right)?, ["D,G", "C,G", "B,G"])
        }
    };
    let mut sequence = truncate(ses.long_exact_sequence(), 3 * (length + 1) + 2);
    for (i, label) in sequence.labels.iter_mut().enumerate().skip(1) {
        *label = format!("Ext^{}({})", (i - 1) / 3, names[(i - 1) % 3]);
    }
    let exact = sequence.is_exact();
    let connecting = (0..=length as i64).map(|n| ses.connecting_at(n)).collect();
    let locally_free_check = match side {
        LesSide::CovariantFromF if other.resolution(1).rank(1) == 0 => {
            let mut ok = true;
            for x in [b, c, d] {
                ok &= hom_space(other, x)?.0 == ext_group(other, x, 0, 1)?.dim();
                for k in 1..=length {
                    ok &= ext_group(other, x, k, k + 1)?.dim() == 0;
                }
            }
            Some(ok)
        }
        _ => None,
    };
    Ok(LesReport {
        side,
        length,
        sequence,
        exact,
        connecting,
        locally_free_check,
    })
}

/// The horseshoe connecting map `Ext^p(B, G) -> Ext^{p+1}(D, G)` applied to `ρ`, as a class on the
/// canonical resolution of `D`.
pub fn contravariant_connecting(rho: &ExtClass, u: &Extension1) -> Result<ExtClass> {
    let p = rho.degree();
    let g = rho.target();
    let (rb, rd) = (
        u.g_module().resolution(p + 2),
        u.f_module().resolution(p + 2),
    );
    let shoe = horseshoe(u, p + 2)?;
    let (hd, hc) = (rd.hom_into(g)?, shoe.hom_into(g)?);
    let gd = g.dim();
    let lift: Vector = rho
        .cocycle()
        .iter()
        .cloned()
        .chain(std::iter::repeat_n(g.field().zero(), rd.rank(p) * gd))
        .collect();
    let dc = hc.d(p as i64).mul_vec(&lift);
    let sb = rb.rank(p + 1) * gd;
    let image = dc[sb..].to_vec();
    debug_assert!(crate::linalg::is_zero_vector(&dc[..sb]));
    debug_assert_eq!(hd.dim(p as i64 + 1), image.len());
    ExtClass::new(u.f_module(), g, p + 1, image)
}

/// `0 -> k -> A -> k -> 0` over the dual numbers `A = k[x]/(x^2)` (basis `1, x`).
pub fn dual_numbers_extension(alg: &Arc<FinDimAlgebra>) -> Result<Extension1> {
    let a = AModule::free(alg, 1);
    let field = a.field();
    let socle = a.generated(&[vec![field.zero(), field.one()]]);
    Ok(Extension1::from_ses(ModuleSes::from_submodule(&a, &socle)?))
}

/// Cochain complex of a horseshoe-resolved middle term; exposed for reports.
pub fn middle_hom_complex(u: &Extension1, g: &AModule, length: usize) -> Result<CochainComplex> {
    horseshoe(u, length)?.hom_into(g)
}
