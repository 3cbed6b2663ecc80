//! Hom complexes `Hom^•(P, B)` and the compatibility of `Hom(P, -)` with cones and cylinders.
//!
//! `Hom^m(P, B) = ∏_i Hom(P^i, B^{m+i})` with
//! `d(s)_i = d_B ∘ s_i - (-1)^m s_{i+1} ∘ d_P`.
//! Basis order in degree `m`: blocks by ascending `i`, each block flattened column-major.

use serde::Serialize;

use crate::complex::{cone, cylinder, support_union, ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HomBlock {
    /// Source degree `i` of `Hom(P^i, B^{m+i})`.
    pub i: i64,
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Clone, Debug)]
pub struct HomComplex {
    underlying: CochainComplex,
    src: CochainComplex,
    dst: CochainComplex,
}

#[derive(Serialize)]
struct DegreeIndex {
    degree: i64,
    blocks: Vec<HomBlock>,
}

impl Serialize for HomComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            complex: &'a CochainComplex,
            index: Vec<DegreeIndex>,
        }
        let index = self
            .underlying
            .support()
            .map(|m| DegreeIndex {
                degree: m,
                blocks: self.blocks(m),
            })
            .collect();
        Repr {
            complex: &self.underlying,
            index,
        }
        .serialize(s)
    }
}

fn blocks_of(p: &CochainComplex, b: &CochainComplex, m: i64) -> Vec<HomBlock> {
    let mut offset = 0;
    p.support()
        .map(|i| {
            let blk = HomBlock {
                i,
                offset,
                rows: b.dim(m + i),
                cols: p.dim(i),
            };
            offset += blk.rows * blk.cols;
            blk
        })
        .collect()
}

fn hom_degrees(p: &CochainComplex, b: &CochainComplex) -> (i64, i64) {
    if p.is_empty() || b.is_empty() {
        (0, -1)
    } else {
        (b.lo() - p.hi(), b.hi() - p.lo())
    }
}

fn hom_dim(p: &CochainComplex, b: &CochainComplex, m: i64) -> usize {
    p.support().map(|i| p.dim(i) * b.dim(m + i)).sum()
}

impl HomComplex {
    pub fn complex(&self) -> &CochainComplex {
        &self.underlying
    }

    pub fn into_complex(self) -> CochainComplex {
        self.underlying
    }

    pub fn src(&self) -> &CochainComplex {
        &self.src
    }

    pub fn dst(&self) -> &CochainComplex {
        &self.dst
    }

    pub fn blocks(&self, m: i64) -> Vec<HomBlock> {
        blocks_of(&self.src, &self.dst, m)
    }

    /// Coordinate of entry `(r, c)` of the block `Hom(P^i, B^{m+i})`.
    pub fn index(&self, m: i64, i: i64, r: usize, c: usize) -> usize {
        let blk = self
            .blocks(m)
            .into_iter()
            .find(|b| b.i == i)
            .expect("degree in support");
        blk.offset + c * blk.rows + r
    }

    /// The block `s_i` of a degree-`m` element, as a matrix.
    pub fn component(&self, m: i64, v: &[crate::linalg::Scalar], i: i64) -> Matrix {
        let blk = self
            .blocks(m)
            .into_iter()
            .find(|b| b.i == i)
            .expect("degree in support");
        Matrix::from_col_major(
            self.src.field(),
            blk.rows,
            blk.cols,
            &v[blk.offset..blk.offset + blk.rows * blk.cols],
        )
    }
}

pub fn hom_complex(p: &CochainComplex, b: &CochainComplex) -> Result<HomComplex> {
    if p.field() != b.field() {
        return Err(Error::FieldMismatch(p.field(), b.field()));
    }
    let field = p.field();
    let (lo, hi) = hom_degrees(p, b);
    let underlying = CochainComplex::from_parts(
        field,
        lo,
        hi,
        |m| hom_dim(p, b, m),
        |m| hom_differential(p, b, m),
    );
    Ok(HomComplex {
        underlying,
        src: p.clone(),
        dst: b.clone(),
    })
}

fn hom_differential(p: &CochainComplex, b: &CochainComplex, m: i64) -> Matrix {
    let field = p.field();
    let src_blocks = blocks_of(p, b, m);
    let dst_blocks = blocks_of(p, b, m + 1);
    let block_at = |blocks: &[HomBlock], i: i64| blocks.iter().find(|x| x.i == i).copied();
    let mut d = Matrix::zeros(field, hom_dim(p, b, m + 1), hom_dim(p, b, m));
    let eps = field.one().signed(m);
    for sb in &src_blocks {
        let i = sb.i;
        let db = b.d(m + i);
        for c in 0..sb.cols {
            for r in 0..sb.rows {
                let col = sb.offset + c * sb.rows + r;
                // d_B ∘ E_rc lands in block i of degree m + 1
                if let Some(tb) = block_at(&dst_blocks, i) {
                    for r2 in 0..tb.rows {
                        let v = db.get(r2, r);
                        if !v.is_zero() {
                            d.set(tb.offset + c * tb.rows + r2, col, v.clone());
                        }
                    }
                }
                // -(-1)^m E_rc ∘ d_P^{i-1} lands in block i - 1 (this is s_{(i-1)+1})
                if let Some(tb) = block_at(&dst_blocks, i - 1) {
                    let dp = p.d(i - 1);
                    for c2 in 0..tb.cols {
                        let v = dp.get(c, c2);
                        if !v.is_zero() {
                            let row = tb.offset + c2 * tb.rows + r;
                            let cur = d.get(row, col).clone();
                            d.set(row, col, cur - &eps * v);
                        }
                    }
                }
            }
        }
    }
    d
}

/// `Hom(p, g) : Hom(p, K) -> Hom(p, L)`, acting blockwise by `r_i ↦ g ∘ r_i`.
pub fn induced_hom_map(p: &CochainComplex, g: &ChainMap) -> Result<ChainMap> {
    let hk = hom_complex(p, g.src())?;
    let hl = hom_complex(p, g.dst())?;
    let field = p.field();
    let (k, l) = (g.src(), g.dst());
    let components = hk
        .complex()
        .support()
        .map(|m| {
            let mut out = Matrix::zeros(field, hl.complex().dim(m), hk.complex().dim(m));
            let tblocks = hl.blocks(m);
            for sb in hk.blocks(m) {
                let tb = tblocks
                    .iter()
                    .find(|x| x.i == sb.i)
                    .expect("same source degrees");
                let gm = g.component(m + sb.i);
                debug_assert_eq!(gm.shape(), (l.dim(m + sb.i), k.dim(m + sb.i)));
                for c in 0..sb.cols {
                    for r in 0..sb.rows {
                        for r2 in 0..tb.rows {
                            let v = gm.get(r2, r);
                            if !v.is_zero() {
                                out.set(
                                    tb.offset + c * tb.rows + r2,
                                    sb.offset + c * sb.rows + r,
                                    v.clone(),
                                );
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    ChainMap::new(hk.into_complex(), hl.into_complex(), components)
}

/// Compares two complexes after relabelling the basis of `rhs` into that of `lhs` by `perm`:
/// `perm(m, j)` is the `lhs` index of the `j`-th basis vector of `rhs^m`.
fn equal_after_reindexing(
    lhs: &CochainComplex,
    rhs: &CochainComplex,
    perm: impl Fn(i64, usize) -> usize,
) -> bool {
    if lhs.field() != rhs.field() {
        return false;
    }
    let (lo, hi) = support_union(&[lhs, rhs]);
    if !(lo..=hi).all(|m| lhs.dim(m) == rhs.dim(m)) {
        return false;
    }
    (lo..hi).all(|m| {
        let (dl, dr) = (lhs.d(m), rhs.d(m));
        (0..dr.rows())
            .all(|a| (0..dr.cols()).all(|b| dl.get(perm(m + 1, a), perm(m, b)) == dr.get(a, b)))
    })
}

/// Checks `Con(Hom(p, g)) = Hom(p, Con(g))` as based complexes, building the left cone with `cone_of`.
///
/// The basis of `Hom(p, Con(g))^m` is matched to `Hom(p, K)^{m+1} ⊕ Hom(p, L)^m` entrywise:
/// the `K` rows of each block go to the first summand, the `L` rows to the second.
pub fn cone_hom_commutes_with(
    p: &CochainComplex,
    g: &ChainMap,
    cone_of: impl Fn(&ChainMap) -> CochainComplex,
) -> Result<bool> {
    let (k, l) = (g.src(), g.dst());
    let lhs = cone_of(&induced_hom_map(p, g)?);
    let rhs = hom_complex(p, &cone(g))?;
    let perm = |m: i64, j: usize| -> usize {
        let khat_dim = hom_dim(p, k, m + 1);
        let rblocks = rhs.blocks(m);
        let blk = rblocks
            .iter()
            .rev()
            .find(|b| b.offset <= j && b.rows * b.cols > 0)
            .copied();
        let blk = blk.expect("index inside a nonempty block");
        let local = j - blk.offset;
        let (c, r) = (local / blk.rows, local % blk.rows);
        let kd = k.dim(m + blk.i + 1);
        if r < kd {
            let kb = blocks_of(p, k, m + 1)
                .into_iter()
                .find(|b| b.i == blk.i)
                .unwrap();
            kb.offset + c * kd + r
        } else {
            let lb = blocks_of(p, l, m)
                .into_iter()
                .find(|b| b.i == blk.i)
                .unwrap();
            khat_dim + lb.offset + c * lb.rows + (r - kd)
        }
    };
    Ok(equal_after_reindexing(&lhs, rhs.complex(), perm))
}

pub fn cone_hom_commutes(p: &CochainComplex, g: &ChainMap) -> Result<bool> {
    cone_hom_commutes_with(p, g, cone)
}

/// Checks `Cyl(Hom(p, g)) = Hom(p, Cyl(g))` with the analogous three-part reindexing.
pub fn cylinder_hom_commutes(p: &CochainComplex, g: &ChainMap) -> Result<bool> {
    let (b, a) = (g.src(), g.dst());
    let lhs = cylinder(&induced_hom_map(p, g)?).complex;
    let rhs = hom_complex(p, &cylinder(g).complex)?;
    let perm = |m: i64, j: usize| -> usize {
        let bhat_m = hom_dim(p, b, m);
        let bhat_m1 = hom_dim(p, b, m + 1);
        let rblocks = rhs.blocks(m);
        let blk = rblocks
            .iter()
            .rev()
            .find(|x| x.offset <= j && x.rows * x.cols > 0)
            .copied();
        let blk = blk.expect("index inside a nonempty block");
        let local = j - blk.offset;
        let (c, r) = (local / blk.rows, local % blk.rows);
        let (x, y) = (b.dim(m + blk.i), b.dim(m + blk.i + 1));
        if r < x {
            let bb = blocks_of(p, b, m)
                .into_iter()
                .find(|q| q.i == blk.i)
                .unwrap();
            bb.offset + c * bb.rows + r
        } else if r < x + y {
            let bb = blocks_of(p, b, m + 1)
                .into_iter()
                .find(|q| q.i == blk.i)
                .unwrap();
            bhat_m + bb.offset + c * bb.rows + (r - x)
        } else {
            let ab = blocks_of(p, a, m)
                .into_iter()
                .find(|q| q.i == blk.i)
                .unwrap();
            bhat_m + bhat_m1 + ab.offset + c * ab.rows + (r - x - y)
        }
    };
    Ok(equal_after_reindexing(&lhs, rhs.complex(), perm))
}

/// Degree-`m` dimension `Σ_i dim P^i · dim B^{m+i}`, computed from the dimensions alone.
pub fn expected_hom_dim(p: &CochainComplex, b: &CochainComplex, m: i64) -> usize {
    hom_dim(p, b, m)
}
