//! Bounded cochain complexes of based vector spaces.
//!
//! Differentials raise degree: `d^n : C^n -> C^{n+1}`. Shifts follow `C[k]^n = C^{n+k}` with
//! `d_{C[k]} = (-1)^k d_C`, and the mapping cone of `f : K -> L` is `K[1] ⊕ L` with
//! differential `[[-d_K, 0], [-f, d_L]]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar, Subquotient, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct CochainComplex {
    field: Field,
    lo: i64,
    dims: Vec<usize>,
    // diffs[i] : degree lo + i -> lo + i + 1
    diffs: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexRepr {
    field: Field,
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl TryFrom<ComplexRepr> for CochainComplex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Self> {
        if r.hi - r.lo + 1 != r.dims.len() as i64 {
            return Err(Error::InvalidComplex(format!(
                "support [{}, {}] does not match {} dims",
                r.lo,
                r.hi,
                r.dims.len()
            )));
        }
        CochainComplex::new(r.field, r.lo, r.dims, r.differentials)
    }
}

impl From<CochainComplex> for ComplexRepr {
    fn from(c: CochainComplex) -> Self {
        ComplexRepr {
            field: c.field,
            lo: c.lo,
            hi: c.hi(),
            dims: c.dims,
            differentials: c.diffs,
        }
    }
}

impl CochainComplex {
    /// Validates shapes, fields and `d∘d = 0`.
    pub fn new(field: Field, lo: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let expected = dims.len().saturating_sub(1);
        if diffs.len() != expected {
            return Err(Error::InvalidComplex(format!(
                "{} dims need {expected} differentials, got {}",
                dims.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.field() != field {
                return Err(Error::FieldMismatch(field, d.field()));
            }
            if d.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::InvalidComplex(format!(
                    "d^{} has shape {:?}, expected {:?}",
                    lo + i as i64,
                    d.shape(),
                    (dims[i + 1], dims[i])
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i].mul(&diffs[i - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d∘d != 0 at degree {}",
                    lo + i as i64 - 1
                )));
            }
        }
        Ok(CochainComplex {
            field,
            lo,
            dims,
            diffs,
        })
    }

    /// Builds a complex from a degree range and a differential callback, without re-checking `d∘d`.
    pub(crate) fn from_parts(
        field: Field,
        lo: i64,
        hi: i64,
        dim: impl Fn(i64) -> usize,
        d: impl Fn(i64) -> Matrix,
    ) -> Self {
        if hi < lo {
            return CochainComplex::zero(field);
        }
        let dims: Vec<usize> = (lo..=hi).map(&dim).collect();
        let diffs: Vec<Matrix> = (lo..hi).map(&d).collect();
        debug_assert!(diffs
            .iter()
            .enumerate()
            .all(|(i, m)| m.shape() == (dims[i + 1], dims[i])));
        CochainComplex {
            field,
            lo,
            dims,
            diffs,
        }
    }

    pub fn zero(field: Field) -> Self {
        CochainComplex {
            field,
            lo: 0,
            dims: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `k^dim` placed in a single degree.
    pub fn concentrated(field: Field, degree: i64, dim: usize) -> Self {
        CochainComplex {
            field,
            lo: degree,
            dims: vec![dim],
            diffs: Vec::new(),
        }
    }

    /// A two-term complex `k^a --m--> k^b` in degrees `lo`, `lo + 1`.
    pub fn two_term(lo: i64, m: Matrix) -> Self {
        let (b, a) = m.shape();
        CochainComplex {
            field: m.field(),
            lo,
            dims: vec![a, b],
            diffs: vec![m],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Degrees carrying data; empty for the zero complex.
    pub fn support(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// `d^n : C^n -> C^{n+1}`; a correctly shaped zero matrix outside the stored range.
    pub fn d(&self, n: i64) -> Matrix {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim(n + 1), self.dim(n))
        }
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.diffs
    }

    pub fn cohomology(&self, n: i64) -> Cohomology {
        let cocycles = self.d(n).kernel();
        let coboundaries = self.d(n - 1).image();
        Cohomology {
            degree: n,
            group: Subquotient::new(cocycles, coboundaries),
        }
    }

    pub fn cohomology_dims(&self) -> Vec<(i64, usize)> {
        self.support()
            .map(|n| (n, self.cohomology(n).dim()))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.support().all(|n| self.cohomology(n).dim() == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.support().map(|n| sign(n) * self.dim(n) as i64).sum()
    }

    pub fn shift(&self, k: i64) -> CochainComplex {
        CochainComplex {
            field: self.field,
            lo: self.lo - k,
            dims: self.dims.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| d.scale(&self.field.one().signed(k)))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &CochainComplex) -> Result<CochainComplex> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let (lo, hi) = support_union(&[self, other]);
        Ok(CochainComplex::from_parts(
            self.field,
            lo,
            hi,
            |n| self.dim(n) + other.dim(n),
            |n| Matrix::block_diag(self.field, &[self.d(n), other.d(n)]),
        ))
    }

    /// Structural equality that ignores zero-dimensional padding at the ends.
    pub fn same_as(&self, other: &CochainComplex) -> bool {
        if self.field != other.field {
            return false;
        }
        let (lo, hi) = support_union(&[self, other]);
        (lo..=hi).all(|n| self.dim(n) == other.dim(n)) && (lo..hi).all(|n| self.d(n) == other.d(n))
    }
}

pub(crate) fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Union of supports of the non-empty complexes; `(0, -1)` when all are empty.
pub(crate) fn support_union(cs: &[&CochainComplex]) -> (i64, i64) {
    let nonempty: Vec<_> = cs.iter().filter(|c| !c.is_empty()).collect();
    if nonempty.is_empty() {
        return (0, -1);
    }
    let lo = nonempty.iter().map(|c| c.lo()).min().unwrap();
    let hi = nonempty.iter().map(|c| c.hi()).max().unwrap();
    (lo, hi)
}

/// `H^n` as the subquotient `ker d^n / im d^{n-1}` with canonical cocycle representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    pub group: Subquotient,
}

impl Cohomology {
    pub fn dim(&self) -> usize {
        self.group.dim()
    }

    pub fn basis(&self) -> &[Vector] {
        self.group.reps()
    }

    /// Class coordinates of a cocycle; `None` if `v` is not a cocycle.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.group.coords(v)
    }

    pub fn is_coboundary(&self, v: &[Scalar]) -> bool {
        self.group.is_zero_class(v)
    }
}

/// `(dimension, basis of representatives)` of `H^n(c)`.
pub fn cohomology(c: &CochainComplex, n: i64) -> (usize, Vec<Vector>) {
    let h = c.cohomology(n);
    (h.dim(), h.basis().to_vec())
}

pub fn shift(c: &CochainComplex, k: i64) -> CochainComplex {
    c.shift(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    src: CochainComplex,
    dst: CochainComplex,
    // components[i] : src degree src.lo + i
    components: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapRepr {
    pub components: Vec<Matrix>,
}

impl ChainMap {
    /// `components` are indexed by the degrees of `src`'s support.
    pub fn new(src: CochainComplex, dst: CochainComplex, components: Vec<Matrix>) -> Result<Self> {
        if src.field() != dst.field() {
            return Err(Error::FieldMismatch(src.field(), dst.field()));
        }
        if components.len() != src.dims().len() {
            return Err(Error::NotAChainMap(format!(
                "{} components for a source with {} degrees",
                components.len(),
                src.dims().len()
            )));
        }
        let map = ChainMap {
            src,
            dst,
            components,
        };
        for n in map.src.support() {
            let f = map.component(n);
            if f.shape() != (map.dst.dim(n), map.src.dim(n)) {
                return Err(Error::NotAChainMap(format!(
                    "component {n} has shape {:?}",
                    f.shape()
                )));
            }
        }
        let (lo, hi) = support_union(&[&map.src, &map.dst]);
        for n in lo - 1..=hi {
            let lhs = map.dst.d(n).mul(&map.component(n));
            let rhs = map.component(n + 1).mul(&map.src.d(n));
            if lhs != rhs {
                return Err(Error::NotAChainMap(format!(
                    "square at degree {n} does not commute"
                )));
            }
        }
        Ok(map)
    }

    pub(crate) fn from_fn(
        src: CochainComplex,
        dst: CochainComplex,
        f: impl Fn(i64) -> Matrix,
    ) -> Self {
        let components = src.support().map(f).collect();
        ChainMap {
            src,
            dst,
            components,
        }
    }

    pub fn identity(c: &CochainComplex) -> Self {
        Self::from_fn(c.clone(), c.clone(), |n| {
            Matrix::identity(c.field(), c.dim(n))
        })
    }

    pub fn zero(src: &CochainComplex, dst: &CochainComplex) -> Self {
        Self::from_fn(src.clone(), dst.clone(), |n| {
            Matrix::zeros(src.field(), dst.dim(n), src.dim(n))
        })
    }

    pub fn src(&self) -> &CochainComplex {
        &self.src
    }

    pub fn dst(&self) -> &CochainComplex {
        &self.dst
    }

    pub fn components(&self) -> &[Matrix] {
        &self.components
    }

    pub fn component(&self, n: i64) -> Matrix {
        if self.src.support().contains(&n) {
            self.components[(n - self.src.lo()) as usize].clone()
        } else {
            Matrix::zeros(self.src.field(), self.dst.dim(n), self.src.dim(n))
        }
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            components: self.components.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::NotAChainMap(
                "sum of maps between different complexes".into(),
            ));
        }
        Ok(ChainMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if !self.dst.same_as(&other.src) {
            return Err(Error::NotAChainMap(
                "composition of non-composable maps".into(),
            ));
        }
        Ok(ChainMap::from_fn(
            self.src.clone(),
            other.dst.clone(),
            |n| other.component(n).mul(&self.component(n)),
        ))
    }

    /// Matrix of `H^n(src) -> H^n(dst)` in the canonical representative bases.
    pub fn induced_on_cohomology(&self, n: i64) -> Matrix {
        let hs = self.src.cohomology(n);
        let ht = self.dst.cohomology(n);
        let cols: Vec<Vector> = hs
            .basis()
            .iter()
            .map(|v| {
                ht.coords(&self.component(n).mul_vec(v))
                    .expect("chain maps send cocycles to cocycles")
            })
            .collect();
        Matrix::from_cols(self.src.field(), ht.dim(), &cols)
    }

    pub fn is_quasi_isomorphism(&self) -> bool {
        let (lo, hi) = support_union(&[&self.src, &self.dst]);
        (lo..=hi).all(|n| {
            let m = self.induced_on_cohomology(n);
            m.is_square() && m.rank() == m.rows()
        })
    }

    pub fn to_repr(&self) -> ChainMapRepr {
        ChainMapRepr {
            components: self.components.clone(),
        }
    }
}

/// A basis of the space of all chain maps `src -> dst`.
pub fn chain_map_space(src: &CochainComplex, dst: &CochainComplex) -> Result<Vec<ChainMap>> {
    if src.field() != dst.field() {
        return Err(Error::FieldMismatch(src.field(), dst.field()));
    }
    let field = src.field();
    let degrees: Vec<i64> = src.support().collect();
    // unknowns: components in column-major order, concatenated over degrees
    let mut offsets = Vec::new();
    let mut total = 0;
    for &n in &degrees {
        offsets.push(total);
        total += dst.dim(n) * src.dim(n);
    }
    let offset_of = |n: i64| degrees.iter().position(|&m| m == n).map(|i| offsets[i]);
    let mut rows: Vec<Vector> = Vec::new();
    let (lo, hi) = support_union(&[src, dst]);
    for n in lo - 1..=hi {
        // d_dst^n f^n - f^{n+1} d_src^n = 0, entry (i, j) of a dst(n+1) x src(n) matrix
        let dd = dst.d(n);
        let ds = src.d(n);
        for i in 0..dst.dim(n + 1) {
            for j in 0..src.dim(n) {
                let mut row = vec![field.zero(); total];
                if let Some(off) = offset_of(n) {
                    // (dd f)_{ij} = sum_k dd_{ik} f_{kj}
                    for k in 0..dst.dim(n) {
                        row[off + j * dst.dim(n) + k] = dd.get(i, k).clone();
                    }
                }
                if let Some(off) = offset_of(n + 1) {
                    // (f ds)_{ij} = sum_k f_{ik} ds_{kj}
                    for k in 0..src.dim(n + 1) {
                        let idx = off + k * dst.dim(n + 1) + i;
                        row[idx] = &row[idx] - ds.get(k, j);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(field, total, &rows);
    Ok(system
        .kernel()
        .vectors()
        .into_iter()
        .map(|v| {
            ChainMap::from_fn(src.clone(), dst.clone(), |n| {
                let off = offset_of(n).unwrap();
                let (r, c) = (dst.dim(n), src.dim(n));
                Matrix::from_col_major(field, r, c, &v[off..off + r * c])
            })
        })
        .collect())
}

/// Mapping cone `Con(f)^m = K^{m+1} ⊕ L^m` with differential `[[-d_K, 0], [-f, d_L]]`.
pub fn cone(f: &ChainMap) -> CochainComplex {
    cone_with_sign(f, -1)
}

/// Cone with differential `[[-d_K, 0], [sign·f, d_L]]`; `sign = -1` is the standard one.
pub fn cone_with_sign(f: &ChainMap, sign: i64) -> CochainComplex {
    let (k, l) = (f.src(), f.dst());
    let field = k.field();
    let k1 = k.shift(1);
    let (lo, hi) = support_union(&[&k1, l]);
    let s = field.from_i64(sign);
    CochainComplex::from_parts(
        field,
        lo,
        hi,
        |m| k.dim(m + 1) + l.dim(m),
        |m| {
            let (a0, b0) = (k.dim(m + 1), l.dim(m));
            let (a1, b1) = (k.dim(m + 2), l.dim(m + 1));
            let mut d = Matrix::zeros(field, a1 + b1, a0 + b0);
            d.set_block(0, 0, &k.d(m + 1).neg());
            d.set_block(a1, 0, &f.component(m + 1).scale(&s));
            d.set_block(a1, a0, &l.d(m));
            d
        },
    )
}

/// Mapping cylinder of `f : B -> A` with the natural maps `B -> Cyl(f)` and `Cyl(f) -> Con(f)`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: CochainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

/// `Cyl(f)^m = B^m ⊕ B^{m+1} ⊕ A^m` with differential
/// `[[d_B, -id, 0], [0, -d_B, 0], [0, -f, d_A]]`.
pub fn cylinder(f: &ChainMap) -> Cylinder {
    let (b, a) = (f.src(), f.dst());
    let field = b.field();
    let b1 = b.shift(1);
    let (lo, hi) = support_union(&[b, &b1, a]);
    let complex = CochainComplex::from_parts(
        field,
        lo,
        hi,
        |m| b.dim(m) + b.dim(m + 1) + a.dim(m),
        |m| {
            let (x0, y0, z0) = (b.dim(m), b.dim(m + 1), a.dim(m));
            let (x1, y1, z1) = (b.dim(m + 1), b.dim(m + 2), a.dim(m + 1));
            let mut d = Matrix::zeros(field, x1 + y1 + z1, x0 + y0 + z0);
            d.set_block(0, 0, &b.d(m));
            d.set_block(0, x0, &Matrix::identity(field, x1).neg());
            d.set_block(x1, x0, &b.d(m + 1).neg());
            d.set_block(x1 + y1, x0, &f.component(m + 1).neg());
            d.set_block(x1 + y1, x0 + y0, &a.d(m));
            d
        },
    );
    let con = cone(f);
    let inclusion = ChainMap::from_fn(b.clone(), complex.clone(), |m| {
        let mut c = Matrix::zeros(field, complex.dim(m), b.dim(m));
        c.set_block(0, 0, &Matrix::identity(field, b.dim(m)));
        c
    });
    let projection = ChainMap::from_fn(complex.clone(), con.clone(), |m| {
        let (x0, y0, z0) = (b.dim(m), b.dim(m + 1), a.dim(m));
        let mut p = Matrix::zeros(field, y0 + z0, x0 + y0 + z0);
        p.set_block(0, x0, &Matrix::identity(field, y0));
        p.set_block(y0, x0 + y0, &Matrix::identity(field, z0));
        p
    });
    Cylinder {
        complex,
        inclusion,
        projection,
    }
}

/// A finite sequence of linear maps `V_0 -> V_1 -> ... -> V_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearSequence {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

/// True iff `ker = im` at every interior node.
pub fn exactness_check(seq: &LinearSequence) -> Result<bool> {
    if seq.maps.len() + 1 != seq.dims.len() && !(seq.dims.is_empty() && seq.maps.is_empty()) {
        return Err(Error::Shape(format!(
            "{} spaces need {} maps",
            seq.dims.len(),
            seq.dims.len().saturating_sub(1)
        )));
    }
    for (i, m) in seq.maps.iter().enumerate() {
        if m.shape() != (seq.dims[i + 1], seq.dims[i]) {
            return Err(Error::Shape(format!("map {i} has shape {:?}", m.shape())));
        }
    }
    for i in 1..seq.maps.len() {
        let (inc, out) = (&seq.maps[i - 1], &seq.maps[i]);
        if !out.mul(inc).is_zero() {
            return Ok(false);
        }
        if out.kernel().dim() != inc.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `0 -> B --left--> C --right--> D -> 0`, degreewise exact.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    left: ChainMap,
    right: ChainMap,
}

impl ShortExactSequence {
    pub fn new(left: ChainMap, right: ChainMap) -> Result<Self> {
        if !left.dst().same_as(right.src()) {
            return Err(Error::NotExact("middle complexes differ".into()));
        }
        let c = left.dst();
        let (lo, hi) = support_union(&[left.src(), c, right.dst()]);
        for n in lo..=hi {
            let i = left.component(n);
            let p = right.component(n);
            let field = c.field();
            let seq = LinearSequence {
                dims: vec![0, left.src().dim(n), c.dim(n), right.dst().dim(n), 0],
                maps: vec![
                    Matrix::zeros(field, left.src().dim(n), 0),
                    i,
                    p,
                    Matrix::zeros(field, 0, right.dst().dim(n)),
                ],
            };
            if !exactness_check(&seq)? {
                return Err(Error::NotExact(format!("degree {n}")));
            }
        }
        Ok(ShortExactSequence { left, right })
    }

    pub fn left(&self) -> &ChainMap {
        &self.left
    }

    pub fn right(&self) -> &ChainMap {
        &self.right
    }

    pub fn sub(&self) -> &CochainComplex {
        self.left.src()
    }

    pub fn middle(&self) -> &CochainComplex {
        self.left.dst()
    }

    pub fn quotient(&self) -> &CochainComplex {
        self.right.dst()
    }

    fn degree_range(&self) -> (i64, i64) {
        support_union(&[self.sub(), self.middle(), self.quotient()])
    }

    /// Connecting map `H^n(D) -> H^{n+1}(B)`: lift, differentiate, pull back.
    pub fn connecting_at(&self, n: i64) -> Matrix {
        let field = self.middle().field();
        let hd = self.quotient().cohomology(n);
        let hb = self.sub().cohomology(n + 1);
        let p = self.right.component(n);
        let i = self.left.component(n + 1);
        let d = self.middle().d(n);
        let cols: Vec<Vector> = hd
            .basis()
            .iter()
            .map(|z| {
                let lift = p.solve(z).expect("right map is surjective");
                let y = i
                    .solve(&d.mul_vec(&lift))
                    .expect("d(lift) lies in the image of the left map");
                hb.coords(&y).expect("pulled-back element is a cocycle")
            })
            .collect();
        Matrix::from_cols(field, hb.dim(), &cols)
    }

    pub fn connecting(&self) -> Vec<(i64, Matrix)> {
        let (lo, hi) = self.degree_range();
        (lo - 1..=hi).map(|n| (n, self.connecting_at(n))).collect()
    }

    /// The long exact cohomology sequence, framed by zeros at both ends.
    pub fn long_exact_sequence(&self) -> LongExactSequence {
        let field = self.middle().field();
        let (lo, hi) = self.degree_range();
        let mut labels = vec!["0".to_string()];
        let mut dims = vec![0];
        let mut maps = Vec::new();
        let mut prev = 0;
        for n in lo..=hi {
            let hb = self.sub().cohomology(n).dim();
            maps.push(if n == lo {
                Matrix::zeros(field, hb, prev)
            } else {
                self.connecting_at(n - 1)
            });
            labels.push(format!("H^{n}(B)"));
            dims.push(hb);
            maps.push(self.left.induced_on_cohomology(n));
            labels.push(format!("H^{n}(C)"));
            dims.push(self.middle().cohomology(n).dim());
            maps.push(self.right.induced_on_cohomology(n));
            labels.push(format!("H^{n}(D)"));
            let hd = self.quotient().cohomology(n).dim();
            dims.push(hd);
            prev = hd;
        }
        maps.push(Matrix::zeros(field, 0, prev));
        labels.push("0".into());
        dims.push(0);
        LongExactSequence {
            labels,
            sequence: LinearSequence { dims, maps },
        }
    }
}

pub fn connecting(ses: &ShortExactSequence) -> Vec<(i64, Matrix)> {
    ses.connecting()
}

#[derive(Clone, Debug, Serialize)]
pub struct LongExactSequence {
    pub labels: Vec<String>,
    pub sequence: LinearSequence,
}

impl LongExactSequence {
    pub fn is_exact(&self) -> bool {
        exactness_check(&self.sequence).expect("assembled sequence is well shaped")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn k_in(deg: i64) -> CochainComplex {
        CochainComplex::concentrated(q(), deg, 1)
    }

    #[test]
    fn cohomology_examples() {
        let z = CochainComplex::zero(q());
        assert_eq!(cohomology(&z, 0).0, 0);
        let acyclic = CochainComplex::two_term(0, Matrix::identity(q(), 1));
        assert_eq!(acyclic.cohomology(0).dim(), 0);
        assert_eq!(acyclic.cohomology(1).dim(), 0);
        let zero_map = CochainComplex::two_term(0, Matrix::zeros(q(), 1, 1));
        assert_eq!(zero_map.cohomology_dims(), vec![(0, 1), (1, 1)]);
    }

    #[test]
    fn rejects_bad_complexes() {
        let d = Matrix::identity(q(), 1);
        assert!(CochainComplex::new(q(), 0, vec![1, 1, 1], vec![d.clone(), d.clone()]).is_err());
        assert!(CochainComplex::new(q(), 0, vec![1, 2], vec![d]).is_err());
    }

    #[test]
    fn shift_examples() {
        let c = CochainComplex::two_term(0, Matrix::from_i64(q(), 1, 1, &[3]));
        assert_eq!(c.shift(0), c);
        let s = k_in(0).shift(1);
        assert_eq!((s.lo(), s.dim(-1)), (-1, 1));
        assert_eq!(c.shift(1).shift(1), c.shift(2));
        assert_eq!(c.shift(2).d(-2), c.d(0));
        assert_eq!(c.shift(1).d(-1), c.d(0).neg());
    }

    #[test]
    fn cone_examples() {
        let k = k_in(0);
        assert!(cone(&ChainMap::identity(&k)).is_acyclic());

        let zero = ChainMap::zero(&k, &k);
        let c = cone(&zero);
        assert_eq!(c.cohomology(-1).dim(), 1);
        assert_eq!(c.cohomology(0).dim(), 1);

        let f2 = Field::Prime(2);
        let kf = CochainComplex::concentrated(f2, 0, 1);
        let two = ChainMap::new(
            kf.clone(),
            kf.clone(),
            vec![Matrix::from_i64(f2, 1, 1, &[2])],
        )
        .unwrap();
        let c = cone(&two);
        assert_eq!(c.cohomology_dims(), vec![(-1, 1), (0, 1)]);
    }

    #[test]
    fn cylinder_examples() {
        let b = CochainComplex::two_term(0, Matrix::from_i64(q(), 2, 1, &[1, 0]));
        let cyl = cylinder(&ChainMap::identity(&b));
        for n in -2..3 {
            assert_eq!(cyl.complex.cohomology(n).dim(), b.cohomology(n).dim());
        }
        let (kb, ka) = (k_in(0), CochainComplex::concentrated(q(), 0, 2));
        let cyl = cylinder(&ChainMap::zero(&kb, &ka));
        // the internal -id cancels B against B[1], leaving H(A)
        assert_eq!(cyl.complex.cohomology(0).dim(), 2);
        assert_eq!(cyl.complex.cohomology(-1).dim(), 0);
        ShortExactSequence::new(cyl.inclusion, cyl.projection).unwrap();
    }

    #[test]
    fn exactness_examples() {
        let id = Matrix::identity(q(), 2);
        let z = |r, c| Matrix::zeros(q(), r, c);
        let seq = LinearSequence {
            dims: vec![0, 2, 2, 0],
            maps: vec![z(2, 0), id, z(0, 2)],
        };
        assert!(exactness_check(&seq).unwrap());
        let inc = Matrix::from_i64(q(), 2, 1, &[1, 0]);
        let proj = Matrix::from_i64(q(), 1, 2, &[0, 1]);
        let seq = LinearSequence {
            dims: vec![0, 1, 2, 1, 0],
            maps: vec![z(1, 0), inc, proj, z(0, 1)],
        };
        assert!(exactness_check(&seq).unwrap());
        let seq = LinearSequence {
            dims: vec![0, 1, 1, 0],
            maps: vec![z(1, 0), z(1, 1), z(0, 1)],
        };
        assert!(!exactness_check(&seq).unwrap());
        let bad = LinearSequence {
            dims: vec![1, 1],
            maps: vec![z(2, 1)],
        };
        assert!(exactness_check(&bad).is_err());
    }

    #[test]
    fn split_ses_has_zero_connecting_map() {
        let b = k_in(0);
        let c = CochainComplex::concentrated(q(), 0, 2);
        let left = ChainMap::new(
            b.clone(),
            c.clone(),
            vec![Matrix::from_i64(q(), 2, 1, &[1, 0])],
        )
        .unwrap();
        let right = ChainMap::new(c, b, vec![Matrix::from_i64(q(), 1, 2, &[0, 1])]).unwrap();
        let ses = ShortExactSequence::new(left, right).unwrap();
        assert!(ses.connecting().iter().all(|(_, m)| m.is_zero()));
        assert!(ses.long_exact_sequence().is_exact());
    }

    #[test]
    fn nonsplit_connecting_map() {
        // 0 -> k[-1] -> (k --id--> k) -> k[0] -> 0 has an isomorphism H^0(D) -> H^1(B)
        let b = k_in(1);
        let c = CochainComplex::two_term(0, Matrix::identity(q(), 1));
        let d = k_in(0);
        let left = ChainMap::new(b, c.clone(), vec![Matrix::identity(q(), 1)]).unwrap();
        let right = ChainMap::new(
            c,
            d,
            vec![Matrix::identity(q(), 1), Matrix::zeros(q(), 0, 1)],
        )
        .unwrap();
        let ses = ShortExactSequence::new(left, right).unwrap();
        assert_eq!(ses.connecting_at(0).rank(), 1);
        assert!(ses.long_exact_sequence().is_exact());
    }

    #[test]
    fn not_exact_rejected() {
        let k = k_in(0);
        let left = ChainMap::zero(&k, &k);
        let right = ChainMap::identity(&k);
        assert!(matches!(
            ShortExactSequence::new(left, right),
            Err(Error::NotExact(_))
        ));
    }

    #[test]
    fn chain_map_space_dimension() {
        // maps k -> k in degree 0: one-dimensional
        assert_eq!(chain_map_space(&k_in(0), &k_in(0)).unwrap().len(), 1);
        // maps from (k -id-> k) to k[0]: f^0 must vanish on nothing... f^0 d = 0 forces f^1 = 0
        let c = CochainComplex::two_term(0, Matrix::identity(q(), 1));
        let space = chain_map_space(&c, &k_in(0)).unwrap();
        assert_eq!(space.len(), 1);
        for m in &space {
            ChainMap::new(m.src().clone(), m.dst().clone(), m.components().to_vec()).unwrap();
        }
    }

    #[test]
    fn serde_roundtrip() {
        let c = CochainComplex::two_term(-1, Matrix::from_i64(q(), 2, 1, &[1, 2]));
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"hi\":0"));
        let back: CochainComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
