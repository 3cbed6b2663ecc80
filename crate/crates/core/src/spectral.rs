//! Spectral sequence of a bounded double complex for the filtration by the first degree `p`.
//!
//! Pages are stored as explicit towers inside `C^{p,q}`:
//! `Z_r = π_p{z ∈ F^p : Dz ∈ F^{p+r}}` and `B_r = π_p(D{w ∈ F^{p-r+1} : Dw ∈ F^p})`,
//! with `E_r = Z_r / B_r`. So `E_0 = C`, `E_1 = H(d_v)`, `E_2 = H_h H_v`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{format_vector, Field, Matrix, Scalar, Subquotient, Subspace, Vector};

/// `C^{p,q}` on the rectangle `[p_lo, p_hi] × [q_lo, q_hi]`, with anticommuting `d_h`, `d_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DoubleRepr", into = "DoubleRepr")]
pub struct DoubleComplex {
    field: Field,
    p_lo: i64,
    q_lo: i64,
    dims: Vec<Vec<usize>>,
    dh: Vec<Vec<Matrix>>,
    dv: Vec<Vec<Matrix>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleRepr {
    field: Field,
    p_lo: i64,
    q_lo: i64,
    /// `dims[p - p_lo][q - q_lo]`
    dims: Vec<Vec<usize>>,
    /// `dh[p - p_lo][q - q_lo] : C^{p,q} -> C^{p+1,q}`, one column fewer than `dims`
    dh: Vec<Vec<Matrix>>,
    /// `dv[p - p_lo][q - q_lo] : C^{p,q} -> C^{p,q+1}`, one row fewer than `dims`
    dv: Vec<Vec<Matrix>>,
}

impl TryFrom<DoubleRepr> for DoubleComplex {
    type Error = Error;
    fn try_from(r: DoubleRepr) -> Result<Self> {
        DoubleComplex::new(r.field, r.p_lo, r.q_lo, r.dims, r.dh, r.dv)
    }
}

impl From<DoubleComplex> for DoubleRepr {
    fn from(d: DoubleComplex) -> Self {
        DoubleRepr {
            field: d.field,
            p_lo: d.p_lo,
            q_lo: d.q_lo,
            dims: d.dims,
            dh: d.dh,
            dv: d.dv,
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidDoubleComplex(msg.into())
}

impl DoubleComplex {
    pub fn new(
        field: Field,
        p_lo: i64,
        q_lo: i64,
        dims: Vec<Vec<usize>>,
        dh: Vec<Vec<Matrix>>,
        dv: Vec<Vec<Matrix>>,
    ) -> Result<Self> {
        let width = dims.len();
        let height = dims.first().map_or(0, Vec::len);
        if width == 0 || height == 0 || dims.iter().any(|c| c.len() != height) {
            return Err(invalid("dims must be a nonempty rectangle"));
        }
        if dh.len() + 1 != width || dh.iter().any(|c| c.len() != height) {
            return Err(invalid("dh must have one column fewer than dims"));
        }
        if dv.len() != width || dv.iter().any(|c| c.len() + 1 != height) {
            return Err(invalid("dv must have one row fewer than dims"));
        }
        for (a, col) in dh.iter().enumerate() {
            for (b, m) in col.iter().enumerate() {
                check_block(field, m, dims[a + 1][b], dims[a][b], "dh")?;
            }
        }
        for (a, col) in dv.iter().enumerate() {
            for (b, m) in col.iter().enumerate() {
                check_block(field, m, dims[a][b + 1], dims[a][b], "dv")?;
            }
        }
        let dc = DoubleComplex {
            field,
            p_lo,
            q_lo,
            dims,
            dh,
            dv,
        };
        dc.check_relations()?;
        Ok(dc)
    }

    pub(crate) fn from_fn(
        field: Field,
        (p_lo, p_hi): (i64, i64),
        (q_lo, q_hi): (i64, i64),
        dim: impl Fn(i64, i64) -> usize,
        dh: impl Fn(i64, i64) -> Matrix,
        dv: impl Fn(i64, i64) -> Matrix,
    ) -> Self {
        let dims = (p_lo..=p_hi)
            .map(|p| (q_lo..=q_hi).map(|q| dim(p, q)).collect())
            .collect();
        let h = (p_lo..p_hi)
            .map(|p| (q_lo..=q_hi).map(|q| dh(p, q)).collect())
            .collect();
        let v = (p_lo..=p_hi)
            .map(|p| (q_lo..q_hi).map(|q| dv(p, q)).collect())
            .collect();
        DoubleComplex {
            field,
            p_lo,
            q_lo,
            dims,
            dh: h,
            dv: v,
        }
    }

    fn check_relations(&self) -> Result<()> {
        for p in self.p_range() {
            for q in self.q_range() {
                let (h, v) = (self.dh(p, q), self.dv(p, q));
                if !self.dh(p + 1, q).mul(&h).is_zero() {
                    return Err(invalid(format!("dh∘dh ≠ 0 at ({p},{q})")));
                }
                if !self.dv(p, q + 1).mul(&v).is_zero() {
                    return Err(invalid(format!("dv∘dv ≠ 0 at ({p},{q})")));
                }
                if !self
                    .dh(p, q + 1)
                    .mul(&v)
                    .add(&self.dv(p + 1, q).mul(&h))
                    .is_zero()
                {
                    return Err(invalid(format!(
                        "dh and dv do not anticommute at ({p},{q})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn width(&self) -> usize {
        self.dims.len()
    }

    pub fn height(&self) -> usize {
        self.dims[0].len()
    }

    pub fn p_range(&self) -> std::ops::RangeInclusive<i64> {
        self.p_lo..=self.p_lo + self.width() as i64 - 1
    }

    pub fn q_range(&self) -> std::ops::RangeInclusive<i64> {
        self.q_lo..=self.q_lo + self.height() as i64 - 1
    }

    fn inside(&self, p: i64, q: i64) -> bool {
        self.p_range().contains(&p) && self.q_range().contains(&q)
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        if self.inside(p, q) {
            self.dims[(p - self.p_lo) as usize][(q - self.q_lo) as usize]
        } else {
            0
        }
    }

    /// `d_h : C^{p,q} -> C^{p+1,q}` (a zero matrix off the support).
    pub fn dh(&self, p: i64, q: i64) -> Matrix {
        if self.inside(p, q) && self.inside(p + 1, q) {
            self.dh[(p - self.p_lo) as usize][(q - self.q_lo) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim(p + 1, q), self.dim(p, q))
        }
    }

    /// `d_v : C^{p,q} -> C^{p,q+1}` (a zero matrix off the support).
    pub fn dv(&self, p: i64, q: i64) -> Matrix {
        if self.inside(p, q) && self.inside(p, q + 1) {
            self.dv[(p - self.p_lo) as usize][(q - self.q_lo) as usize].clone()
        } else {
            Matrix::zeros(self.field, self.dim(p, q + 1), self.dim(p, q))
        }
    }

    /// Total degrees spanned by the support.
    pub fn total_range(&self) -> (i64, i64) {
        (
            *self.p_range().start() + *self.q_range().start(),
            *self.p_range().end() + *self.q_range().end(),
        )
    }

    /// Components of `Tot^k` as `(p, offset, dim)`, by ascending `p`.
    pub fn total_layout(&self, k: i64) -> Vec<(i64, usize, usize)> {
        let mut offset = 0;
        self.p_range()
            .filter(|&p| self.q_range().contains(&(k - p)))
            .map(|p| {
                let d = self.dim(p, k - p);
                let entry = (p, offset, d);
                offset += d;
                entry
            })
            .collect()
    }

    fn total_dim(&self, k: i64) -> usize {
        self.total_layout(k).iter().map(|c| c.2).sum()
    }

    fn total_d(&self, k: i64) -> Matrix {
        let src = self.total_layout(k);
        let dst = self.total_layout(k + 1);
        let mut d = Matrix::zeros(self.field, self.total_dim(k + 1), self.total_dim(k));
        let find = |p: i64| dst.iter().find(|c| c.0 == p).map(|c| c.1);
        for &(p, off, _) in &src {
            let q = k - p;
            if let Some(t) = find(p + 1) {
                d.set_block(t, off, &self.dh(p, q));
            }
            if let Some(t) = find(p) {
                d.set_block(t, off, &self.dv(p, q));
            }
        }
        d
    }

    /// `Tot^k = ⊕_{p+q=k} C^{p,q}` with `D = d_h + d_v`.
    pub fn total(&self) -> CochainComplex {
        let (lo, hi) = self.total_range();
        CochainComplex::from_parts(
            self.field,
            lo,
            hi,
            |k| self.total_dim(k),
            |k| self.total_d(k),
        )
    }

    /// Transposed double complex `C'^{q,p} = C^{p,q}`; the total complex is unchanged up to reordering.
    pub fn transpose(&self) -> DoubleComplex {
        DoubleComplex::from_fn(
            self.field,
            (*self.q_range().start(), *self.q_range().end()),
            (*self.p_range().start(), *self.p_range().end()),
            |a, b| self.dim(b, a),
            |a, b| self.dv(b, a),
            |a, b| self.dh(b, a),
        )
    }

    /// Blockwise direct sum of two double complexes on the same rectangle.
    pub fn direct_sum(&self, other: &DoubleComplex) -> Result<DoubleComplex> {
        if self.field != other.field
            || self.p_range() != other.p_range()
            || self.q_range() != other.q_range()
        {
            return Err(invalid(
                "direct sum needs the same field and support rectangle",
            ));
        }
        let field = self.field;
        let ranges = (
            (self.p_lo, *self.p_range().end()),
            (self.q_lo, *self.q_range().end()),
        );
        Ok(DoubleComplex::from_fn(
            field,
            ranges.0,
            ranges.1,
            |p, q| self.dim(p, q) + other.dim(p, q),
            |p, q| Matrix::block_diag(field, &[self.dh(p, q), other.dh(p, q)]),
            |p, q| Matrix::block_diag(field, &[self.dv(p, q), other.dv(p, q)]),
        ))
    }

    /// Stabilization page: width + height + 1.
    pub fn r_max(&self) -> usize {
        self.width() + self.height() + 1
    }
}

fn check_block(field: Field, m: &Matrix, rows: usize, cols: usize, what: &str) -> Result<()> {
    if m.field() != field {
        return Err(Error::FieldMismatch(field, m.field()));
    }
    if m.shape() != (rows, cols) {
        return Err(invalid(format!(
            "{what} block is {:?}, expected {rows}x{cols}",
            m.shape()
        )));
    }
    Ok(())
}

/// The filtration machinery: total complex plus coordinate bookkeeping.
struct Filtered<'a> {
    dc: &'a DoubleComplex,
    tot: CochainComplex,
}

impl<'a> Filtered<'a> {
    fn new(dc: &'a DoubleComplex) -> Self {
        Filtered {
            dc,
            tot: dc.total(),
        }
    }

    /// Coordinates of `Tot^k` lying in `F^p`, and the range of the `p` component.
    fn layout(&self, k: i64, p: i64) -> (Vec<usize>, std::ops::Range<usize>) {
        let layout = self.dc.total_layout(k);
        let f: Vec<usize> = layout
            .iter()
            .filter(|c| c.0 >= p)
            .flat_map(|c| c.1..c.1 + c.2)
            .collect();
        let comp = layout
            .iter()
            .find(|c| c.0 == p)
            .map_or(0..0, |c| c.1..c.1 + c.2);
        (f, comp)
    }

    fn rows_below(&self, k: i64, p: i64) -> Vec<usize> {
        let layout = self.dc.total_layout(k);
        layout
            .iter()
            .filter(|c| c.0 < p)
            .flat_map(|c| c.1..c.1 + c.2)
            .collect()
    }

    /// Basis (as columns over the `F^p` coordinates) of `{z ∈ F^p Tot^k : Dz ∈ F^{p+r}}`.
    fn zr_tilde(&self, k: i64, p: i64, r: usize) -> (Vec<usize>, Vec<Vector>) {
        let (cols, _) = self.layout(k, p);
        let d = self.tot.d(k);
        let rows = self.rows_below(k + 1, p + r as i64);
        let m = d.select_rows(&rows).select_cols(&cols);
        (cols, m.kernel().vectors())
    }

    fn project(&self, k: i64, p: i64, cols: &[usize], v: &[Scalar]) -> Vector {
        let (_, comp) = self.layout(k, p);
        comp.map(|i| {
            v[cols
                .iter()
                .position(|&c| c == i)
                .expect("component lies in F^p")]
            .clone()
        })
        .collect()
    }

    fn z(&self, p: i64, q: i64, r: usize) -> Subspace {
        let k = p + q;
        let (cols, basis) = self.zr_tilde(k, p, r);
        let proj: Vec<Vector> = basis.iter().map(|v| self.project(k, p, &cols, v)).collect();
        Subspace::span(self.dc.field, self.dc.dim(p, q), &proj)
    }

    fn b(&self, p: i64, q: i64, r: usize) -> Subspace {
        let k = p + q;
        let from = p - r as i64 + 1;
        let (cols, _) = self.layout(k - 1, from);
        let d = self.tot.d(k - 1);
        let rows = self.rows_below(k, p);
        let kernel = d.select_rows(&rows).select_cols(&cols).kernel().vectors();
        let (_, comp) = self.layout(k, p);
        let dcols = d.select_cols(&cols);
        let images: Vec<Vector> = kernel
            .iter()
            .map(|w| dcols.mul_vec(w)[comp.clone()].to_vec())
            .collect();
        Subspace::span(self.dc.field, self.dc.dim(p, q), &images)
    }

    /// Some `z ∈ F^p Tot^{p+q}` with `π_p z = a` and `Dz ∈ F^{p+r}`, as a full vector of `Tot^k`.
    fn lift(&self, p: i64, q: i64, r: usize, a: &[Scalar]) -> Option<Vector> {
        let k = p + q;
        let (cols, basis) = self.zr_tilde(k, p, r);
        let field = self.dc.field;
        let proj: Vec<Vector> = basis.iter().map(|v| self.project(k, p, &cols, v)).collect();
        let coeffs = Matrix::from_cols(field, a.len(), &proj).solve(a)?;
        let z_cols = crate::linalg::combine(field, cols.len(), &coeffs, &basis);
        let mut z = crate::linalg::zero_vector(field, self.tot.dim(k));
        for (i, c) in cols.iter().enumerate() {
            z[*c] = z_cols[i].clone();
        }
        Some(z)
    }

    fn component(&self, k: i64, p: i64, v: &[Scalar]) -> Vector {
        let (_, comp) = self.layout(k, p);
        v[comp].to_vec()
    }
}

#[derive(Clone, Debug)]
pub struct PageCell {
    pub p: i64,
    pub q: i64,
    pub z: Subspace,
    pub b: Subspace,
    pub group: Subquotient,
}

#[derive(Clone, Debug, Serialize)]
pub struct PageArrow {
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub matrix: Matrix,
}

/// `E_r` as subquotients `Z_r / B_r` of `C^{p,q}`, with `d_r` of bidegree `(r, 1 - r)` in the
/// canonical bases of the subquotients.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    pub r: usize,
    cells: Vec<PageCell>,
    arrows: Vec<PageArrow>,
}

impl Serialize for SpectralPage {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Cell {
            p: i64,
            q: i64,
            dim: usize,
        }
        #[derive(Serialize)]
        struct Repr<'a> {
            r: usize,
            cells: Vec<Cell>,
            nonzero_differentials: Vec<&'a PageArrow>,
        }
        Repr {
            r: self.r,
            cells: self
                .cells
                .iter()
                .map(|c| Cell {
                    p: c.p,
                    q: c.q,
                    dim: c.group.dim(),
                })
                .collect(),
            nonzero_differentials: self.arrows.iter().filter(|a| !a.matrix.is_zero()).collect(),
        }
        .serialize(s)
    }
}

impl SpectralPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cell(p, q).map_or(0, |c| c.group.dim())
    }

    pub fn cell(&self, p: i64, q: i64) -> Option<&PageCell> {
        self.cells.iter().find(|c| c.p == p && c.q == q)
    }

    pub fn cells(&self) -> &[PageCell] {
        &self.cells
    }

    pub fn arrows(&self) -> &[PageArrow] {
        &self.arrows
    }

    /// `d_r` out of `(p, q)`, if its target lies in the support.
    pub fn differential(&self, p: i64, q: i64) -> Option<&PageArrow> {
        self.arrows.iter().find(|a| a.from == (p, q))
    }

    pub fn differential_into(&self, p: i64, q: i64) -> Option<&PageArrow> {
        self.arrows.iter().find(|a| a.to == (p, q))
    }

    /// Total dimension on the antidiagonal `p + q = k`.
    pub fn diagonal_dim(&self, k: i64) -> usize {
        self.cells
            .iter()
            .filter(|c| c.p + c.q == k)
            .map(|c| c.group.dim())
            .sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.arrows.iter().all(|a| a.matrix.is_zero())
    }
}

fn page(f: &Filtered, r: usize) -> SpectralPage {
    let dc = f.dc;
    let mut cells = Vec::new();
    for p in dc.p_range() {
        for q in dc.q_range() {
            let z = f.z(p, q, r);
            let b = f.b(p, q, r);
            debug_assert!(z.contains_subspace(&b));
            let group = Subquotient::new(z.clone(), b.clone());
            cells.push(PageCell { p, q, z, b, group });
        }
    }
    let mut arrows = Vec::new();
    for c in &cells {
        let (tp, tq) = (c.p + r as i64, c.q + 1 - r as i64);
        let Some(target) = cells.iter().find(|t| t.p == tp && t.q == tq) else {
            continue;
        };
        let cols: Vec<Vector> = c
            .group
            .reps()
            .iter()
            .map(|a| {
                let z = f.lift(c.p, c.q, r, a).expect("representatives lie in Z_r");
                let dz = f.tot.d(c.p + c.q).mul_vec(&z);
                let image = f.component(c.p + c.q + 1, tp, &dz);
                target
                    .group
                    .coords(&image)
                    .expect("d_r lands in Z_r of the target")
            })
            .collect();
        let matrix = Matrix::from_cols(dc.field, target.group.dim(), &cols);
        arrows.push(PageArrow {
            from: (c.p, c.q),
            to: (tp, tq),
            matrix,
        });
    }
    SpectralPage { r, cells, arrows }
}

/// Pages `E_0 … E_{up_to}` (index `r` is the page number).
pub fn pages(dc: &DoubleComplex, up_to: usize) -> Vec<SpectralPage> {
    let f = Filtered::new(dc);
    (0..=up_to).map(|r| page(&f, r)).collect()
}

/// `E_∞ = E_{r_max}`.
pub fn e_infinity(dc: &DoubleComplex) -> SpectralPage {
    page(&Filtered::new(dc), dc.r_max())
}

#[derive(Clone, Debug, Serialize)]
pub struct AbutmentRow {
    pub degree: i64,
    pub e_infinity: usize,
    pub total: usize,
}

/// Per total degree: `Σ_{p+q=k} dim E_∞^{p,q}` against `dim H^k(Tot)`.
pub fn abutment_report(dc: &DoubleComplex) -> Vec<AbutmentRow> {
    let einf = e_infinity(dc);
    let tot = dc.total();
    let (lo, hi) = dc.total_range();
    (lo..=hi)
        .map(|k| AbutmentRow {
            degree: k,
            e_infinity: einf.diagonal_dim(k),
            total: tot.cohomology(k).dim(),
        })
        .collect()
}

pub fn abutment_check(dc: &DoubleComplex) -> bool {
    abutment_report(dc).iter().all(|r| r.e_infinity == r.total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftStatus {
    /// A total cocycle `z ∈ F^p` with `π_p z = a`, and the coordinates of its class in `H^{p+q}(Tot)`.
    Survives {
        total_cocycle: Vector,
        class: Vector,
    },
    /// `a` supports a nonzero `d_r` on this page; its class is taken to be zero.
    Dies { page: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLift {
    pub p: i64,
    pub q: i64,
    pub source: Vector,
    pub status: LiftStatus,
}

impl Serialize for ClassLift {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "status", rename_all = "snake_case")]
        enum Status {
            Survives {
                total_cocycle: Vec<String>,
                class: Vec<String>,
            },
            Dies {
                page: usize,
            },
        }
        #[derive(Serialize)]
        struct Repr {
            p: i64,
            q: i64,
            source: Vec<String>,
            #[serde(flatten)]
            status: Status,
        }
        let status = match &self.status {
            LiftStatus::Survives {
                total_cocycle,
                class,
            } => Status::Survives {
                total_cocycle: format_vector(total_cocycle),
                class: format_vector(class),
            },
            LiftStatus::Dies { page } => Status::Dies { page: *page },
        };
        Repr {
            p: self.p,
            q: self.q,
            source: format_vector(&self.source),
            status,
        }
        .serialize(s)
    }
}

impl ClassLift {
    pub fn survives(&self) -> bool {
        matches!(self.status, LiftStatus::Survives { .. })
    }

    /// The total class, zero for classes that die.
    pub fn total_class(&self, dim: usize, field: Field) -> Vector {
        match &self.status {
            LiftStatus::Survives { class, .. } => class.clone(),
            LiftStatus::Dies { .. } => crate::linalg::zero_vector(field, dim),
        }
    }
}

/// The map `a ↦ α`: staircase-lift an `E_2`-cocycle at `(p, q)` to a total cocycle.
pub fn class_map(dc: &DoubleComplex, p: i64, q: i64, a: &[Scalar]) -> Result<ClassLift> {
    if a.len() != dc.dim(p, q) {
        return Err(Error::Shape(format!(
            "element has {} coordinates, C^{{{p},{q}}} has {}",
            a.len(),
            dc.dim(p, q)
        )));
    }
    let f = Filtered::new(dc);
    if !f.z(p, q, 2).contains(a) {
        return Err(Error::NotACocycle(format!(
            "element of C^{{{p},{q}}} is not in Z_2"
        )));
    }
    let r_max = dc.r_max();
    for r in 2..r_max {
        if !f.z(p, q, r + 1).contains(a) {
            return Ok(ClassLift {
                p,
                q,
                source: a.to_vec(),
                status: LiftStatus::Dies { page: r },
            });
        }
    }
    let z = f.lift(p, q, r_max, a).expect("a ∈ Z_∞");
    debug_assert!(crate::linalg::is_zero_vector(&f.tot.d(p + q).mul_vec(&z)));
    let class = f.tot.cohomology(p + q).coords(&z).expect("total cocycle");
    Ok(ClassLift {
        p,
        q,
        source: a.to_vec(),
        status: LiftStatus::Survives {
            total_cocycle: z,
            class,
        },
    })
}

/// Aligned text grid of page dimensions (rows are `q`, descending) followed by nonzero arrows.
pub fn render_page(page: &SpectralPage, dc: &DoubleComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "E_{}:", page.r);
    for q in dc.q_range().rev() {
        let _ = write!(out, "{q:>4} |");
        for p in dc.p_range() {
            let _ = write!(out, "{:>4}", page.dim(p, q));
        }
        out.push('\n');
    }
    let _ = write!(out, "     +");
    for _ in dc.p_range() {
        out.push_str("----");
    }
    out.push('\n');
    let _ = write!(out, "      ");
    for p in dc.p_range() {
        let _ = write!(out, "{p:>4}");
    }
    out.push('\n');
    for a in page.arrows().iter().filter(|a| !a.matrix.is_zero()) {
        let _ = writeln!(
            out,
            "  d_{}: ({},{}) -> ({},{}) rank {}",
            page.r,
            a.from.0,
            a.from.1,
            a.to.0,
            a.to.1,
            a.matrix.rank()
        );
    }
    out
}

/// Cells (0,1), (1,1), (1,0), (2,0) of dimension one over `Q`; the generator of `C^{0,1}`
/// supports a nonzero `d_2`, so it dies on page two.
pub fn dies_on_page_two() -> DoubleComplex {
    let field = Field::Rationals;
    let one = || Matrix::from_i64(field, 1, 1, &[1]);
    let dims = |p: i64, q: i64| usize::from(matches!((p, q), (0, 1) | (1, 1) | (1, 0) | (2, 0)));
    DoubleComplex::from_fn(
        field,
        (0, 2),
        (0, 1),
        dims,
        |p, q| match (p, q) {
            (0, 1) | (1, 0) => one(),
            _ => Matrix::zeros(field, dims(p + 1, q), dims(p, q)),
        },
        |p, q| match (p, q) {
            (1, 0) => one(),
            _ => Matrix::zeros(field, dims(p, q + 1), dims(p, q)),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn q() -> Field {
        Field::Rationals
    }

    fn one(n: i64) -> Matrix {
        Matrix::from_i64(q(), 1, 1, &[n])
    }

    #[test]
    fn fixture_validates_and_dies() {
        let dc = dies_on_page_two();
        DoubleComplex::new(q(), 0, 0, dc.dims.clone(), dc.dh.clone(), dc.dv.clone()).unwrap();
        let lift = class_map(&dc, 0, 1, &[q().one()]).unwrap();
        assert_eq!(lift.status, LiftStatus::Dies { page: 2 });
        let e2 = &pages(&dc, 2)[2];
        assert_eq!(e2.dim(0, 1), 1);
        assert_eq!(e2.dim(2, 0), 1);
        assert!(!e2.is_degenerate());
        assert!(abutment_check(&dc));
        assert!(e_infinity(&dc).cells().iter().all(|c| c.group.dim() == 0));
    }

    #[test]
    fn zero_class_survives() {
        let dc = dies_on_page_two();
        let lift = class_map(&dc, 0, 1, &[q().zero()]).unwrap();
        assert!(lift.survives());
        assert_eq!(lift.total_class(0, q()), Vec::<Scalar>::new());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        // a single vertical arrow (0,0) -> (0,1)
        let dc =
            DoubleComplex::from_fn(q(), (0, 0), (0, 1), |_, _| 1, |_, _| one(0), |_, _| one(1));
        assert!(matches!(
            class_map(&dc, 0, 0, &[q().one()]),
            Err(Error::NotACocycle(_))
        ));
        // two-term column: degenerate from E_1 on
        let ps = pages(&dc, 3);
        assert!((1..=3).all(|r| ps[r].cells().iter().all(|c| c.group.dim() == 0)));
    }

    #[test]
    fn single_row_is_degenerate_at_e2() {
        let mut rng = random::rng(1);
        let c = random::complex(q(), 0, 4, 2, &mut rng);
        let dc = DoubleComplex::from_fn(
            q(),
            (0, 3),
            (0, 0),
            |p, _| c.dim(p),
            |p, _| c.d(p),
            |p, _| Matrix::zeros(q(), 0, c.dim(p)),
        );
        let ps = pages(&dc, dc.r_max());
        for r in 2..ps.len() {
            assert!(ps[r].is_degenerate());
        }
        for p in 0..4 {
            assert_eq!(ps[2].dim(p, 0), c.cohomology(p).dim());
            let a = ps[2].cell(p, 0).unwrap().group.reps().to_vec();
            for v in a {
                let lift = class_map(&dc, p, 0, &v).unwrap();
                assert!(lift.survives());
            }
        }
        assert!(abutment_check(&dc));
    }

    #[test]
    fn anticommuting_square_of_isomorphisms() {
        let dc = DoubleComplex::from_fn(
            q(),
            (0, 1),
            (0, 1),
            |_, _| 1,
            |_, _| one(1),
            |p, _| one(if p == 0 { 1 } else { -1 }),
        );
        let e2 = &pages(&dc, 2)[2];
        assert!(e2.cells().iter().all(|c| c.group.dim() == 0));
        assert!(abutment_check(&dc));
        assert!(dc.total().is_acyclic());
    }

    #[test]
    fn random_double_complexes_abut() {
        let mut rng = random::rng(99);
        for _ in 0..20 {
            let dc = random::double_complex(q(), &mut rng);
            assert!(abutment_check(&dc));
            let ps = pages(&dc, dc.r_max());
            for r in 0..ps.len() - 1 {
                for c in ps[r].cells() {
                    assert!(ps[r + 1].dim(c.p, c.q) <= c.group.dim());
                    // E_{r+1} = H(d_r)
                    let out = ps[r].differential(c.p, c.q).map_or(0, |a| a.matrix.rank());
                    let inc = ps[r]
                        .differential_into(c.p, c.q)
                        .map_or(0, |a| a.matrix.rank());
                    assert_eq!(ps[r + 1].dim(c.p, c.q), c.group.dim() - out - inc);
                }
                for a in ps[r].arrows() {
                    if let Some(next) = ps[r].differential(a.to.0, a.to.1) {
                        assert!(next.matrix.mul(&a.matrix).is_zero());
                    }
                }
            }
            assert!(dc
                .transpose()
                .total()
                .cohomology_dims()
                .iter()
                .map(|x| x.1)
                .eq(dc.total().cohomology_dims().iter().map(|x| x.1)));
        }
    }

    #[test]
    fn serde_round_trip() {
        let dc = dies_on_page_two();
        let json = serde_json::to_string(&dc).unwrap();
        let back: DoubleComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(dc, back);
        let text = render_page(&pages(&dc, 2)[2], &dc);
        assert!(text.contains("d_2: (0,1) -> (2,0) rank 1"));
    }
}
