//! Čech complexes on finite nerves.
//!
//! Presheaves store only the codimension-1 restrictions `F(τ ∖ τ_j) -> F(τ)`; functoriality is
//! checked on every codimension-2 square. `(δc)_τ = Σ_j (-1)^j r_{τ,j}(c_{τ ∖ τ_j})`, faces sorted
//! by dimension and then lexicographically.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{ext_group, ext_pushforward_matrix, AModule, ModuleMap, ModuleSes};
use crate::complex::{
    support_union, ChainMap, CochainComplex, LongExactSequence, ShortExactSequence,
};
use crate::error::{Error, Result};
use crate::koszul::{self, koszul_hom, SeparatedSequence, ZPoint};
use crate::linalg::{is_zero_vector, Field, Matrix, Scalar, Subspace, Vector};
use crate::spectral::DoubleComplex;

/// A finite abstract simplicial complex on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NerveRepr", into = "NerveRepr")]
pub struct Nerve {
    vertex_count: usize,
    faces: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NerveRepr {
    vertex_count: usize,
    faces: Vec<Vec<usize>>,
}

impl TryFrom<NerveRepr> for Nerve {
    type Error = Error;
    fn try_from(r: NerveRepr) -> Result<Self> {
        Nerve::new(r.vertex_count, r.faces)
    }
}

impl From<Nerve> for NerveRepr {
    fn from(n: Nerve) -> Self {
        NerveRepr {
            vertex_count: n.vertex_count,
            faces: n.faces,
        }
    }
}

fn sort_faces(faces: &mut [Vec<usize>]) {
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

impl Nerve {
    /// Validates ascending faces, no duplicates, every vertex present and downward closure.
    pub fn new(vertex_count: usize, mut faces: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidNerve(m));
        for f in &faces {
            if f.is_empty() {
                return bad("empty face".into());
            }
            if f.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("face {f:?} is not strictly ascending"));
            }
            if f.iter().any(|&v| v >= vertex_count) {
                return bad(format!(
                    "face {f:?} uses a vertex outside 0..{vertex_count}"
                ));
            }
        }
        sort_faces(&mut faces);
        if faces.windows(2).any(|w| w[0] == w[1]) {
            return bad("duplicate face".into());
        }
        let index: HashMap<Vec<usize>, usize> = faces
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        for v in 0..vertex_count {
            if !index.contains_key(&vec![v]) {
                return bad(format!("vertex {v} is missing"));
            }
        }
        for f in &faces {
            for j in 0..f.len() {
                if f.len() > 1 && !index.contains_key(&remove(f, j)) {
                    return bad(format!("face {f:?} has a missing facet"));
                }
            }
        }
        Ok(Nerve {
            vertex_count,
            faces,
            index,
        })
    }

    /// Downward closure of the given faces, plus all vertices.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut all: Vec<Vec<usize>> = (0..vertex_count).map(|v| vec![v]).collect();
        for f in maximal {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            for mask in 1u64..1 << f.len() {
                all.push(
                    (0..f.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| f[i])
                        .collect(),
                );
            }
        }
        sort_faces(&mut all);
        all.dedup();
        Nerve::new(vertex_count, all)
    }

    pub fn point() -> Self {
        Self::simplex(1)
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_maximal(n, &[(0..n).collect()]).expect("simplex")
    }

    /// Three vertices and three edges: a circle.
    pub fn triangle_boundary() -> Self {
        Self::from_maximal(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).expect("triangle")
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_maximal(n, &[]).expect("vertices")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn max_dim(&self) -> usize {
        self.faces.last().map_or(0, |f| f.len() - 1)
    }

    pub fn face_index(&self, face: &[usize]) -> Option<usize> {
        self.index.get(face).copied()
    }

    /// Indices of the `q`-dimensional faces, in order.
    pub fn faces_of_dim(&self, q: usize) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| self.faces[i].len() == q + 1)
            .collect()
    }
}

fn remove(face: &[usize], j: usize) -> Vec<usize> {
    face.iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &v)| v)
        .collect()
}

/// A presheaf of finite-dimensional spaces on a nerve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NervePresheaf {
    nerve: Arc<Nerve>,
    field: Field,
    dims: Vec<usize>,
    /// `restrictions[τ][j] : F(τ ∖ τ_j) -> F(τ)`
    restrictions: Vec<Vec<Matrix>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionRepr {
    pub face: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionRepr {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub matrix: Matrix,
}

/// JSON form: face dimensions (missing faces carry `0`) and codimension-1 restrictions
/// (missing ones are zero).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresheafRepr {
    pub nerve: Nerve,
    pub field: Field,
    pub sections: Vec<SectionRepr>,
    #[serde(default)]
    pub restrictions: Vec<RestrictionRepr>,
}

impl TryFrom<PresheafRepr> for NervePresheaf {
    type Error = Error;
    fn try_from(r: PresheafRepr) -> Result<Self> {
        let nerve = Arc::new(r.nerve);
        let mut dims = vec![0; nerve.faces().len()];
        for s in &r.sections {
            let i = nerve
                .face_index(&s.face)
                .ok_or_else(|| Error::InvalidNerve(format!("unknown face {:?}", s.face)))?;
            dims[i] = s.dim;
        }
        let mut given: HashMap<(usize, usize), Matrix> = HashMap::new();
        for x in r.restrictions {
            let t = nerve
                .face_index(&x.to)
                .ok_or_else(|| Error::InvalidNerve(format!("unknown face {:?}", x.to)))?;
            let j = (0..x.to.len())
                .find(|&j| remove(&x.to, j) == x.from)
                .ok_or_else(|| {
                    Error::InvalidNerve(format!("{:?} is not a facet of {:?}", x.from, x.to))
                })?;
            given.insert((t, j), x.matrix);
        }
        NervePresheaf::from_fn(
            nerve,
            r.field,
            |i| dims[i],
            |t, j, rows, cols| {
                given
                    .remove(&(t, j))
                    .unwrap_or_else(|| Matrix::zeros(r.field, rows, cols))
            },
        )
    }
}

impl NervePresheaf {
    /// Builds and validates: `restriction(τ, j, rows, cols)` gives `F(τ ∖ τ_j) -> F(τ)`.
    pub fn from_fn(
        nerve: Arc<Nerve>,
        field: Field,
        dim: impl Fn(usize) -> usize,
        mut restriction: impl FnMut(usize, usize, usize, usize) -> Matrix,
    ) -> Result<Self> {
        let dims: Vec<usize> = (0..nerve.faces().len()).map(&dim).collect();
        let mut restrictions = Vec::with_capacity(dims.len());
        for (t, face) in nerve.faces().iter().enumerate() {
            let mut row = Vec::new();
            if face.len() > 1 {
                for j in 0..face.len() {
                    let s = nerve
                        .face_index(&remove(face, j))
                        .expect("closed under facets");
                    let m = restriction(t, j, dims[t], dims[s]);
                    if m.field() != field {
                        return Err(Error::FieldMismatch(field, m.field()));
                    }
                    if m.shape() != (dims[t], dims[s]) {
                        return Err(Error::Shape(format!(
                            "restriction into {face:?} is {:?}, expected {}x{}",
                            m.shape(),
                            dims[t],
                            dims[s]
                        )));
                    }
                    row.push(m);
                }
            }
            restrictions.push(row);
        }
        let p = NervePresheaf {
            nerve,
            field,
            dims,
            restrictions,
        };
        p.check_functoriality()?;
        Ok(p)
    }

    fn check_functoriality(&self) -> Result<()> {
        for (t, face) in self
            .nerve
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.len() > 2)
        {
            for i in 0..face.len() {
                for j in i + 1..face.len() {
                    // drop face[i] then face[j] (now at j - 1), versus face[j] then face[i]
                    let without_i = self.nerve.face_index(&remove(face, i)).unwrap();
                    let without_j = self.nerve.face_index(&remove(face, j)).unwrap();
                    let a = self.restrictions[t][i].mul(&self.restrictions[without_i][j - 1]);
                    let b = self.restrictions[t][j].mul(&self.restrictions[without_j][i]);
                    if a != b {
                        return Err(Error::FunctorialityViolation(face.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same space `k^dim` on every face with identity restrictions.
    pub fn constant(nerve: Arc<Nerve>, field: Field, dim: usize) -> Self {
        Self::from_fn(
            nerve,
            field,
            |_| dim,
            |_, _, _, _| Matrix::identity(field, dim),
        )
        .expect("constant presheaf")
    }

    pub fn nerve(&self) -> &Arc<Nerve> {
        &self.nerve
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self, face: usize) -> usize {
        self.dims[face]
    }

    pub fn restriction(&self, face: usize, j: usize) -> &Matrix {
        &self.restrictions[face][j]
    }

    /// Offsets of the `q`-faces inside `C^q`.
    fn layout(&self, q: usize) -> Vec<(usize, usize)> {
        let mut off = 0;
        self.nerve
            .faces_of_dim(q)
            .into_iter()
            .map(|f| {
                let e = (f, off);
                off += self.dims[f];
                e
            })
            .collect()
    }

    fn cochain_dim(&self, q: usize) -> usize {
        self.nerve
            .faces_of_dim(q)
            .iter()
            .map(|&f| self.dims[f])
            .sum()
    }

    fn coboundary(&self, q: usize) -> Matrix {
        let src = self.layout(q);
        let mut d = Matrix::zeros(self.field, self.cochain_dim(q + 1), self.cochain_dim(q));
        for (t, toff) in self.layout(q + 1) {
            let face = &self.nerve.faces()[t];
            for j in 0..face.len() {
                let s = self.nerve.face_index(&remove(face, j)).unwrap();
                let soff = src.iter().find(|e| e.0 == s).unwrap().1;
                let block = self.restrictions[t][j].scale(&self.field.one().signed(j as i64));
                d.set_block(toff, soff, &block);
            }
        }
        d
    }
}

/// `C^q = ⊕_{q-faces} F(σ)` for `q = 0..=max_dim`.
pub fn cech_complex(p: &NervePresheaf) -> CochainComplex {
    let top = p.nerve.max_dim() as i64;
    CochainComplex::from_parts(
        p.field,
        0,
        top,
        |q| p.cochain_dim(q as usize),
        |q| {
            if q < 0 {
                Matrix::zeros(p.field, p.cochain_dim(0), 0)
            } else {
                p.coboundary(q as usize)
            }
        },
    )
}

/// Value on a face = `⊕` over the points lying in every open of the face, `k^{stalk_dim}` each;
/// restrictions are the coordinate projections. `points[x]` lists the opens containing `x`.
pub fn skyscraper_presheaf(
    nerve: Arc<Nerve>,
    field: Field,
    points: &[Vec<usize>],
    stalk_dim: usize,
) -> Result<NervePresheaf> {
    if let Some(x) = points.iter().position(|opens| opens.is_empty()) {
        return Err(Error::InvalidNerve(format!("point {x} lies in no open")));
    }
    let present = |face: &[usize]| -> Vec<usize> {
        (0..points.len())
            .filter(|&x| face.iter().all(|v| points[x].contains(v)))
            .collect()
    };
    let faces = nerve.faces().to_vec();
    NervePresheaf::from_fn(
        nerve,
        field,
        |f| present(&faces[f]).len() * stalk_dim,
        |t, j, rows, cols| {
            let big = present(&remove(&faces[t], j));
            let small = present(&faces[t]);
            projection(field, &big, &small, stalk_dim, rows, cols)
        },
    )
}

/// Selects the blocks of `small` (a subset of `big`) out of `⊕_{big} k^{block}`.
fn projection(
    field: Field,
    big: &[usize],
    small: &[usize],
    block: usize,
    rows: usize,
    cols: usize,
) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for (r, x) in small.iter().enumerate() {
        let c = big
            .iter()
            .position(|y| y == x)
            .expect("fewer points on a smaller open");
        m.set_block(r * block, c * block, &Matrix::identity(field, block));
    }
    m
}

/// A Čech cohomology class, stored by a canonical cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechClass {
    pub degree: usize,
    pub cochain: Vector,
}

/// `H^q` of the Čech complex with its canonical basis.
pub fn vertex_space(p: &NervePresheaf, q: usize) -> (usize, Vec<CechClass>) {
    let h = cech_complex(p).cohomology(q as i64);
    let basis = h
        .basis()
        .iter()
        .map(|v| CechClass {
            degree: q,
            cochain: v.clone(),
        })
        .collect::<Vec<_>>();
    (basis.len(), basis)
}

/// A presheaf of cochain complexes: a complex per face, chain maps along codimension-1 inclusions.
#[derive(Clone, Debug)]
pub struct ComplexPresheaf {
    nerve: Arc<Nerve>,
    field: Field,
    complexes: Vec<CochainComplex>,
    restrictions: Vec<Vec<ChainMap>>,
}

impl ComplexPresheaf {
    pub fn new(
        nerve: Arc<Nerve>,
        complexes: Vec<CochainComplex>,
        restrictions: Vec<Vec<ChainMap>>,
    ) -> Result<Self> {
        let field = complexes
            .first()
            .map_or(Field::Rationals, CochainComplex::field);
        if complexes.len() != nerve.faces().len() || restrictions.len() != complexes.len() {
            return Err(Error::Shape(
                "one complex and one restriction list per face".into(),
            ));
        }
        for (t, face) in nerve.faces().iter().enumerate() {
            let expected = if face.len() > 1 { face.len() } else { 0 };
            if restrictions[t].len() != expected {
                return Err(Error::Shape(format!(
                    "face {face:?} needs {expected} restrictions"
                )));
            }
            for (j, r) in restrictions[t].iter().enumerate() {
                let s = nerve.face_index(&remove(face, j)).unwrap();
                if !r.src().same_as(&complexes[s]) || !r.dst().same_as(&complexes[t]) {
                    return Err(Error::NotAChainMap(format!(
                        "restriction into {face:?} has the wrong endpoints"
                    )));
                }
            }
        }
        let cp = ComplexPresheaf {
            nerve,
            field,
            complexes,
            restrictions,
        };
        let (lo, hi) = cp.degree_range();
        for q in lo..=hi {
            cp.term(q)?;
        }
        Ok(cp)
    }

    /// The complex `c` on every face with identity restrictions.
    pub fn constant(nerve: Arc<Nerve>, c: &CochainComplex) -> Self {
        let complexes = vec![c.clone(); nerve.faces().len()];
        let restrictions = nerve
            .faces()
            .iter()
            .map(|f| {
                if f.len() > 1 {
                    vec![ChainMap::identity(c); f.len()]
                } else {
                    vec![]
                }
            })
            .collect();
        ComplexPresheaf {
            nerve,
            field: c.field(),
            complexes,
            restrictions,
        }
    }

    pub fn nerve(&self) -> &Arc<Nerve> {
        &self.nerve
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn complex(&self, face: usize) -> &CochainComplex {
        &self.complexes[face]
    }

    pub fn degree_range(&self) -> (i64, i64) {
        support_union(&self.complexes.iter().collect::<Vec<_>>())
    }

    /// The presheaf of degree-`q` terms (validated for functoriality).
    pub fn term(&self, q: i64) -> Result<NervePresheaf> {
        NervePresheaf::from_fn(
            self.nerve.clone(),
            self.field,
            |f| self.complexes[f].dim(q),
            |t, j, _, _| self.restrictions[t][j].component(q),
        )
    }

    /// `σ ↦ H^q(F(σ))` with the induced restrictions.
    pub fn cohomology_presheaf(&self, q: i64) -> Result<NervePresheaf> {
        let groups: Vec<_> = self.complexes.iter().map(|c| c.cohomology(q)).collect();
        let faces = self.nerve.faces().to_vec();
        NervePresheaf::from_fn(
            self.nerve.clone(),
            self.field,
            |f| groups[f].dim(),
            |t, j, rows, _| {
                let s = self.nerve.face_index(&remove(&faces[t], j)).unwrap();
                let r = self.restrictions[t][j].component(q);
                let cols: Vec<Vector> = groups[s]
                    .basis()
                    .iter()
                    .map(|z| {
                        groups[t]
                            .coords(&r.mul_vec(z))
                            .expect("chain maps preserve cocycles")
                    })
                    .collect();
                Matrix::from_cols(self.field, rows, &cols)
            },
        )
    }

    fn vertical(&self, p: usize, q: i64) -> Matrix {
        let blocks: Vec<Matrix> = self
            .nerve
            .faces_of_dim(p)
            .iter()
            .map(|&f| self.complexes[f].d(q))
            .collect();
        Matrix::block_diag(self.field, &blocks)
    }
}

/// Where the anticommutation sign goes in the Čech–complex double complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignPlacement {
    /// `d_h = δ`, `d_v = (-1)^p d`.
    Vertical,
    /// `d_h = (-1)^q δ`, `d_v = d`.
    Horizontal,
}

/// `C^{p,q} = Č^p(F^q)` on `p ∈ [0, max_dim]`, `q ∈` the degree range of the presheaf.
pub fn hyper_double_complex(cp: &ComplexPresheaf, sign: SignPlacement) -> Result<DoubleComplex> {
    let (lo, hi) = cp.degree_range();
    let (lo, hi) = if lo > hi { (0, 0) } else { (lo, hi) };
    let terms: Vec<NervePresheaf> = (lo..=hi).map(|q| cp.term(q)).collect::<Result<_>>()?;
    let term = |q: i64| &terms[(q - lo) as usize];
    let field = cp.field;
    let top = cp.nerve.max_dim() as i64;
    Ok(DoubleComplex::from_fn(
        field,
        (0, top),
        (lo, hi),
        |p, q| term(q).cochain_dim(p as usize),
        |p, q| {
            let d = term(q).coboundary(p as usize);
            match sign {
                SignPlacement::Vertical => d,
                SignPlacement::Horizontal => d.scale(&field.one().signed(q)),
            }
        },
        |p, q| {
            let d = cp.vertical(p as usize, q);
            match sign {
                SignPlacement::Vertical => d.scale(&field.one().signed(p)),
                SignPlacement::Horizontal => d,
            }
        },
    ))
}

#[derive(Clone, Debug)]
pub struct Hypercohomology {
    pub double: DoubleComplex,
    /// `(k, dim ℍ^k)` over the total range.
    pub dims: Vec<(i64, usize)>,
    /// The same with the sign on the other differential.
    pub alternative_dims: Vec<(i64, usize)>,
}

pub fn hypercohomology(cp: &ComplexPresheaf) -> Result<Hypercohomology> {
    let double = hyper_double_complex(cp, SignPlacement::Vertical)?;
    let alt = hyper_double_complex(cp, SignPlacement::Horizontal)?;
    let dims = double.total().cohomology_dims();
    let alternative_dims = alt.total().cohomology_dims();
    Ok(Hypercohomology {
        double,
        dims,
        alternative_dims,
    })
}

/// `∂*f = 0`, `δf = ∂*h`, `δh = 0` for `f ∈ Č^0(F^1)` and `h ∈ Č^1(F^0)`.
pub fn globaxten_check(cp: &ComplexPresheaf, f: &[Scalar], h: &[Scalar]) -> Result<bool> {
    let (t0, t1) = (cp.term(0)?, cp.term(1)?);
    if f.len() != t1.cochain_dim(0) {
        return Err(Error::Shape(format!(
            "f has {} coordinates, expected {}",
            f.len(),
            t1.cochain_dim(0)
        )));
    }
    if h.len() != t0.cochain_dim(1) {
        return Err(Error::Shape(format!(
            "h has {} coordinates, expected {}",
            h.len(),
            t0.cochain_dim(1)
        )));
    }
    let closed_f = is_zero_vector(&cp.vertical(0, 1).mul_vec(f));
    let matched = t1.coboundary(0).mul_vec(f) == cp.vertical(1, 0).mul_vec(h);
    let closed_h = is_zero_vector(&t0.coboundary(1).mul_vec(h));
    Ok(closed_f && matched && closed_h)
}

/// The pair `(f, h)` as an element of `Tot^1` of the (vertical-sign) double complex.
pub fn globaxten_total_element(cp: &ComplexPresheaf, f: &[Scalar], h: &[Scalar]) -> Result<Vector> {
    let dc = hyper_double_complex(cp, SignPlacement::Vertical)?;
    let layout = dc.total_layout(1);
    let mut v = crate::linalg::zero_vector(cp.field, layout.iter().map(|c| c.2).sum());
    for &(p, off, d) in &layout {
        let part = match p {
            0 => f,
            1 => h,
            _ => continue,
        };
        if part.len() != d {
            return Err(Error::Shape(
                "cochain does not fit the total complex".into(),
            ));
        }
        v[off..off + d].clone_from_slice(part);
    }
    Ok(v)
}

/// A morphism of presheaves, facewise.
#[derive(Clone, Debug)]
pub struct PresheafMorphism {
    src: NervePresheaf,
    dst: NervePresheaf,
    maps: Vec<Matrix>,
}

impl PresheafMorphism {
    pub fn new(src: NervePresheaf, dst: NervePresheaf, maps: Vec<Matrix>) -> Result<Self> {
        if src.nerve != dst.nerve || maps.len() != src.dims.len() {
            return Err(Error::Shape(
                "morphism needs a map per face of a common nerve".into(),
            ));
        }
        for (f, m) in maps.iter().enumerate() {
            if m.shape() != (dst.dims[f], src.dims[f]) {
                return Err(Error::Shape(format!(
                    "map on face {:?} has shape {:?}",
                    src.nerve.faces()[f],
                    m.shape()
                )));
            }
        }
        for (t, face) in src.nerve.faces().iter().enumerate() {
            for j in 0..src.restrictions[t].len() {
                let s = src.nerve.face_index(&remove(face, j)).unwrap();
                if maps[t].mul(&src.restrictions[t][j]) != dst.restrictions[t][j].mul(&maps[s]) {
                    return Err(Error::NotAMorphism(format!(
                        "does not commute with restriction into {face:?}"
                    )));
                }
            }
        }
        Ok(PresheafMorphism { src, dst, maps })
    }

    pub fn src(&self) -> &NervePresheaf {
        &self.src
    }

    pub fn dst(&self) -> &NervePresheaf {
        &self.dst
    }

    pub fn map(&self, face: usize) -> &Matrix {
        &self.maps[face]
    }

    /// The induced map `Č^q(src) -> Č^q(dst)`.
    pub fn on_cochains(&self, q: usize) -> Matrix {
        let blocks: Vec<Matrix> = self
            .src
            .nerve
            .faces_of_dim(q)
            .iter()
            .map(|&f| self.maps[f].clone())
            .collect();
        Matrix::block_diag(self.src.field, &blocks)
    }
}

/// Subpresheaf spanned facewise by `bases[f]` (columns in the ambient presheaf).
fn subpresheaf(ambient: &NervePresheaf, bases: &[Subspace]) -> Result<NervePresheaf> {
    let faces = ambient.nerve.faces().to_vec();
    NervePresheaf::from_fn(
        ambient.nerve.clone(),
        ambient.field,
        |f| bases[f].dim(),
        |t, j, rows, _| {
            let s = ambient.nerve.face_index(&remove(&faces[t], j)).unwrap();
            let cols: Vec<Vector> = bases[s]
                .vectors()
                .iter()
                .map(|v| {
                    bases[t]
                        .coords(&ambient.restrictions[t][j].mul_vec(v))
                        .expect("restriction preserves the subpresheaf")
                })
                .collect();
            Matrix::from_cols(ambient.field, rows, &cols)
        },
    )
}

#[derive(Clone, Debug)]
pub struct VertexLes {
    pub kernel: NervePresheaf,
    pub image: NervePresheaf,
    pub sequence: LongExactSequence,
    pub exact: bool,
}

/// `0 -> Ker β -> P -> Im β -> 0` facewise, and the long exact sequence of Čech cohomology.
pub fn vertex_les(beta: &PresheafMorphism) -> Result<VertexLes> {
    let kernels: Vec<Subspace> = beta.maps.iter().map(Matrix::kernel).collect();
    let images: Vec<Subspace> = beta.maps.iter().map(Matrix::image).collect();
    let kernel = subpresheaf(&beta.src, &kernels)?;
    let image = subpresheaf(&beta.dst, &images)?;
    let (ck, cp, ci) = (
        cech_complex(&kernel),
        cech_complex(&beta.src),
        cech_complex(&image),
    );
    let field = beta.src.field;
    let nerve = beta.src.nerve.clone();
    let top = nerve.max_dim();
    let inclusion = (0..=top)
        .map(|q| {
            let blocks: Vec<Matrix> = nerve
                .faces_of_dim(q)
                .iter()
                .map(|&f| Matrix::from_cols(field, beta.src.dims[f], &kernels[f].vectors()))
                .collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    let corestriction = (0..=top)
        .map(|q| {
            let blocks: Vec<Matrix> = nerve
                .faces_of_dim(q)
                .iter()
                .map(|&f| {
                    let cols: Vec<Vector> = beta.maps[f]
                        .col_vectors()
                        .iter()
                        .map(|c| images[f].coords(c).expect("in the image"))
                        .collect();
                    Matrix::from_cols(field, images[f].dim(), &cols)
                })
                .collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    let left = ChainMap::new(ck, cp.clone(), inclusion)?;
    let right = ChainMap::new(cp, ci, corestriction)?;
    let ses = ShortExactSequence::new(left, right)?;
    let sequence = ses.long_exact_sequence();
    let exact = sequence.is_exact();
    Ok(VertexLes {
        kernel,
        image,
        sequence,
        exact,
    })
}

/// The presheaf map `β = Ext^k(f, π)` between `σ ↦ Ext^k(f, e_σ C)` and `σ ↦ Ext^k(f, e_σ D)`,
/// localized at central idempotents `e_σ` (use the unit everywhere for constant presheaves).
/// Requires `e_τ e_σ = e_τ` whenever `σ ⊂ τ`.
pub fn ext_presheaf_morphism(
    nerve: Arc<Nerve>,
    ses: &ModuleSes,
    f: &AModule,
    k: usize,
    idempotent: impl Fn(&[usize]) -> Vector,
) -> Result<PresheafMorphism> {
    let alg = f.algebra().clone();
    let field = f.field();
    let faces = nerve.faces().to_vec();
    let idem: Vec<Vector> = faces.iter().map(|s| idempotent(s)).collect();
    for e in &idem {
        if alg.product(e, e) != *e {
            return Err(Error::InvalidModule(
                "localizing element is not idempotent".into(),
            ));
        }
    }
    let localize = |m: &AModule, e: &Vector| m.submodule(&m.action_of(e).image());
    let local_c: Vec<(AModule, ModuleMap)> = idem
        .iter()
        .map(|e| localize(ses.middle(), e))
        .collect::<Result<_>>()?;
    let local_d: Vec<(AModule, ModuleMap)> = idem
        .iter()
        .map(|e| localize(ses.quotient(), e))
        .collect::<Result<_>>()?;
    // e_σ M -> e_τ M, v ↦ e_τ v
    let shrink = |m: &AModule,
                  from: &(AModule, ModuleMap),
                  to: &(AModule, ModuleMap),
                  e: &Vector|
     -> Result<ModuleMap> {
        let act = m.action_of(e);
        let target = to.1.image();
        let cols: Vec<Vector> = from
            .1
            .matrix()
            .col_vectors()
            .iter()
            .map(|v| {
                target
                    .coords(&act.mul_vec(v))
                    .ok_or(Error::InvalidModule("idempotents are not nested".into()))
            })
            .collect::<Result<_>>()?;
        ModuleMap::new(
            from.0.clone(),
            to.0.clone(),
            Matrix::from_cols(field, to.0.dim(), &cols),
        )
    };
    let mut beta_maps = Vec::new();
    for (fi, _) in faces.iter().enumerate() {
        let (c, d) = (&local_c[fi], &local_d[fi]);
        let pi = ses.pi.matrix();
        let target = d.1.image();
        let cols: Vec<Vector> =
            c.1.matrix()
                .col_vectors()
                .iter()
                .map(|v| {
                    target
                        .coords(&pi.mul_vec(v))
                        .expect("π commutes with the idempotent")
                })
                .collect();
        let local_pi = ModuleMap::new(
            c.0.clone(),
            d.0.clone(),
            Matrix::from_cols(field, d.0.dim(), &cols),
        )?;
        beta_maps.push(ext_pushforward_matrix(f, &local_pi, k)?);
    }
    let ext_dims = |locals: &[(AModule, ModuleMap)]| -> Result<Vec<usize>> {
        locals
            .iter()
            .map(|(m, _)| Ok(ext_group(f, m, k, k + 1)?.dim()))
            .collect()
    };
    let (dc, dd) = (ext_dims(&local_c)?, ext_dims(&local_d)?);
    let build =
        |m: &AModule, locals: &[(AModule, ModuleMap)], dims: &[usize]| -> Result<NervePresheaf> {
            let mut err = None;
            let p = NervePresheaf::from_fn(
                nerve.clone(),
                field,
                |i| dims[i],
                |t, j, rows, cols| {
                    let s = nerve.face_index(&remove(&faces[t], j)).unwrap();
                    match shrink(m, &locals[s], &locals[t], &idem[t])
                        .and_then(|r| ext_pushforward_matrix(f, &r, k))
                    {
                        Ok(mat) => mat,
                        Err(e) => {
                            err = Some(e);
                            Matrix::zeros(field, rows, cols)
                        }
                    }
                },
            );
            match err {
                Some(e) => Err(e),
                None => p,
            }
        };
    let src = build(ses.middle(), &local_c, &dc)?;
    let dst = build(ses.quotient(), &local_d, &dd)?;
    PresheafMorphism::new(src, dst, beta_maps)
}

/// The D0 setup: `Z = V(f)` split over `opens`; `assignment[x]` lists the opens containing point `x`.
#[derive(Clone, Debug)]
pub struct D0Cover {
    pub points: Vec<ZPoint>,
    pub assignment: Vec<Vec<usize>>,
    pub presheaf: ComplexPresheaf,
}

/// Koszul Hom presheaf `σ ↦ Hom(E_•, O_Z|_{U_σ})` on the full simplex of `opens` vertices.
pub fn d0_cover(
    seq: &SeparatedSequence,
    opens: usize,
    assignment: Vec<Vec<usize>>,
) -> Result<D0Cover> {
    let points = koszul::z_points(seq)?;
    if assignment.len() != points.len() {
        return Err(Error::Shape(format!(
            "{} points but {} assignments",
            points.len(),
            assignment.len()
        )));
    }
    if assignment
        .iter()
        .any(|a| a.is_empty() || a.iter().any(|&v| v >= opens))
    {
        return Err(Error::InvalidNerve(
            "every point needs at least one valid open".into(),
        ));
    }
    let nerve = Arc::new(Nerve::simplex(opens));
    let field = seq.field();
    let n = seq.n();
    let locals: Vec<_> = points.iter().map(ZPoint::local_module).collect();
    let present = |face: &[usize]| -> Vec<usize> {
        (0..points.len())
            .filter(|&x| face.iter().all(|v| assignment[x].contains(v)))
            .collect()
    };
    let complexes = nerve
        .faces()
        .iter()
        .map(|face| {
            let parts: Vec<_> = present(face)
                .into_iter()
                .map(|x| locals[x].clone())
                .collect();
            Ok(koszul_hom(seq, &koszul::direct_sum(field, n, &parts))?.complex)
        })
        .collect::<Result<Vec<_>>>()?;
    let offsets = |pts: &[usize]| -> Vec<(usize, usize)> {
        let mut off = 0;
        pts.iter()
            .map(|&x| {
                let e = (off, locals[x].dim());
                off += locals[x].dim();
                e
            })
            .collect()
    };
    let mut restrictions = Vec::new();
    for (t, face) in nerve.faces().iter().enumerate() {
        let mut row = Vec::new();
        if face.len() > 1 {
            for j in 0..face.len() {
                let sface = remove(face, j);
                let s = nerve.face_index(&sface).unwrap();
                let (big, small) = (present(&sface), present(face));
                let (bo, so) = (offsets(&big), offsets(&small));
                let (bd, sd) = (bo.iter().map(|e| e.1).sum(), so.iter().map(|e| e.1).sum());
                let mut proj = Matrix::zeros(field, sd, bd);
                for (i, x) in small.iter().enumerate() {
                    let b = big.iter().position(|y| y == x).unwrap();
                    proj.set_block(so[i].0, bo[b].0, &Matrix::identity(field, so[i].1));
                }
                let components = (0..=n)
                    .map(|p| Matrix::identity(field, koszul::subsets(n, p).len()).kron(&proj))
                    .collect();
                row.push(ChainMap::new(
                    complexes[s].clone(),
                    complexes[t].clone(),
                    components,
                )?);
            }
        }
        restrictions.push(row);
    }
    let presheaf = ComplexPresheaf::new(nerve, complexes, restrictions)?;
    Ok(D0Cover {
        points,
        assignment,
        presheaf,
    })
}

/// Each point in exactly one open, round robin.
pub fn d0_cover_split(seq: &SeparatedSequence, opens: usize) -> Result<D0Cover> {
    let count = koszul::z_points(seq)?.len();
    d0_cover(seq, opens, (0..count).map(|x| vec![x % opens]).collect())
}
