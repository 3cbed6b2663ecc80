//! Seeded generators for randomized checks.
//!
//! Every generator takes an explicit RNG so that suites are reproducible from a single seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::sync::Arc;

use crate::algebra::{
    ext_group, hom_space, AModule, ExtClass, FinDimAlgebra, ModuleMap, ModuleSes,
};
use crate::complex::{chain_map_space, ChainMap, CochainComplex};
use crate::linalg::{Field, Matrix, Scalar};
use crate::spectral::DoubleComplex;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small entries: integers in `[-2, 2]` over `Q`, uniform residues over `F_p`.
pub fn scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-2..=2)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub fn nonzero_scalar(field: Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn matrix(field: Field, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| scalar(field, rng))
}

/// A random matrix with roughly `density` of its entries nonzero.
pub fn sparse_matrix(
    field: Field,
    rows: usize,
    cols: usize,
    density: f64,
    rng: &mut impl Rng,
) -> Matrix {
    Matrix::from_fn(field, rows, cols, |_, _| {
        if rng.gen_bool(density) {
            nonzero_scalar(field, rng)
        } else {
            field.zero()
        }
    })
}

pub fn invertible(field: Field, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = matrix(field, n, n, rng);
        if m.inverse().is_some() {
            return m;
        }
    }
}

pub fn vector(field: Field, n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..n).map(|_| scalar(field, rng)).collect()
}

/// A random bounded complex with dimensions `<= max_dim` on `len` consecutive degrees from `lo`.
///
/// Each differential is a random combination of the rows annihilating the previous image,
/// so `d∘d = 0` holds by construction.
pub fn complex(
    field: Field,
    lo: i64,
    len: usize,
    max_dim: usize,
    rng: &mut impl Rng,
) -> CochainComplex {
    if len == 0 {
        return CochainComplex::zero(field);
    }
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for i in 0..len - 1 {
        let (src, dst) = (dims[i], dims[i + 1]);
        let d = match diffs.last() {
            None => matrix(field, dst, src, rng),
            Some(prev) => {
                // rows y with y * prev = 0
                let annihilators = prev.transpose().kernel();
                let k = annihilators.dim();
                let coeffs = matrix(field, dst, k, rng);
                if k == 0 {
                    Matrix::zeros(field, dst, src)
                } else {
                    coeffs.mul(annihilators.basis())
                }
            }
        };
        diffs.push(d);
    }
    CochainComplex::new(field, lo, dims, diffs).expect("generated complex satisfies d∘d = 0")
}

/// A random element of the space of chain maps `src -> dst`.
pub fn chain_map(src: &CochainComplex, dst: &CochainComplex, rng: &mut impl Rng) -> ChainMap {
    let basis = chain_map_space(src, dst).expect("same field");
    let mut acc = ChainMap::zero(src, dst);
    for b in &basis {
        acc = acc
            .add(&b.scale(&scalar(src.field(), rng)))
            .expect("same complexes");
    }
    acc
}

/// A tensor product `A ⊗ B` with `d_h = d_A ⊗ 1`, `d_v = (-1)^p 1 ⊗ d_B`.
pub fn tensor_double_complex(a: &CochainComplex, b: &CochainComplex) -> DoubleComplex {
    let field = a.field();
    DoubleComplex::from_fn(
        field,
        (a.lo(), a.hi()),
        (b.lo(), b.hi()),
        |p, q| a.dim(p) * b.dim(q),
        |p, q| a.d(p).kron(&Matrix::identity(field, b.dim(q))),
        |p, q| {
            Matrix::identity(field, a.dim(p))
                .kron(&b.d(q))
                .scale(&field.one().signed(p))
        },
    )
}

/// A staircase of one-dimensional cells `(p,q) → (p+1,q) ← (p+1,q-1) → (p+2,q-1) ← …`, clipped to the
/// rectangle; it carries nonzero higher differentials.
pub fn staircase(
    field: Field,
    p_range: (i64, i64),
    q_range: (i64, i64),
    start: (i64, i64),
    len: usize,
    rng: &mut impl Rng,
) -> DoubleComplex {
    let inside =
        |(p, q): (i64, i64)| p >= p_range.0 && p <= p_range.1 && q >= q_range.0 && q <= q_range.1;
    let mut cells = vec![start];
    while cells.len() < len {
        let (p, q) = *cells.last().unwrap();
        let next = if cells.len() % 2 == 1 {
            (p + 1, q)
        } else {
            (p, q - 1)
        };
        if !inside(next) {
            break;
        }
        cells.push(next);
    }
    if !inside(start) {
        cells.clear();
    }
    // horizontal maps x_{2i} -> x_{2i+1}, vertical maps x_{2i+2} -> x_{2i+1}
    let mut h = Vec::new();
    let mut v = Vec::new();
    for i in 1..cells.len() {
        if i % 2 == 1 {
            h.push((cells[i - 1], nonzero_scalar(field, rng)));
        } else {
            v.push((cells[i], nonzero_scalar(field, rng)));
        }
    }
    let dim = |p: i64, q: i64| usize::from(cells.contains(&(p, q)));
    DoubleComplex::from_fn(
        field,
        p_range,
        q_range,
        dim,
        |p, q| match h.iter().find(|x| x.0 == (p, q)) {
            Some((_, s)) => Matrix::scalar(field, 1, s),
            None => Matrix::zeros(field, dim(p + 1, q), dim(p, q)),
        },
        |p, q| match v.iter().find(|x| x.0 == (p, q)) {
            Some((_, s)) => Matrix::scalar(field, 1, s),
            None => Matrix::zeros(field, dim(p, q + 1), dim(p, q)),
        },
    )
}

/// Replace every `C^{p,q}` basis by a random one: `d ↦ g d g⁻¹`.
pub fn conjugate(dc: &DoubleComplex, rng: &mut impl Rng) -> DoubleComplex {
    let field = dc.field();
    let mut g = std::collections::BTreeMap::new();
    for p in dc.p_range() {
        for q in dc.q_range() {
            let m = invertible(field, dc.dim(p, q), rng);
            let inv = m.inverse().expect("invertible");
            g.insert((p, q), (m, inv));
        }
    }
    let get = |p: i64, q: i64| -> (Matrix, Matrix) {
        g.get(&(p, q))
            .cloned()
            .unwrap_or_else(|| (Matrix::identity(field, 0), Matrix::identity(field, 0)))
    };
    let (pr, qr) = (dc.p_range(), dc.q_range());
    DoubleComplex::from_fn(
        field,
        (*pr.start(), *pr.end()),
        (*qr.start(), *qr.end()),
        |p, q| dc.dim(p, q),
        |p, q| get(p + 1, q).0.mul(&dc.dh(p, q)).mul(&get(p, q).1),
        |p, q| get(p, q + 1).0.mul(&dc.dv(p, q)).mul(&get(p, q).1),
    )
}

/// Tensor piece plus up to two staircases on a rectangle of side at most 3, in a random basis.
pub fn double_complex(field: Field, rng: &mut impl Rng) -> DoubleComplex {
    let (w, h) = (rng.gen_range(1..=3usize), rng.gen_range(1..=3usize));
    let (p_lo, q_lo) = (rng.gen_range(-1..=0i64), rng.gen_range(-1..=0i64));
    let pr = (p_lo, p_lo + w as i64 - 1);
    let qr = (q_lo, q_lo + h as i64 - 1);
    let a = complex(field, p_lo, w, 2, rng);
    let b = complex(field, q_lo, h, 2, rng);
    let mut dc = tensor_double_complex(&a, &b);
    // pad to the full rectangle when a or b came out shorter
    dc = DoubleComplex::from_fn(
        field,
        pr,
        qr,
        |p, q| dc.dim(p, q),
        |p, q| dc.dh(p, q),
        |p, q| dc.dv(p, q),
    );
    for _ in 0..rng.gen_range(0..=2) {
        let start = (rng.gen_range(pr.0..=pr.1), rng.gen_range(qr.0..=qr.1));
        let s = staircase(field, pr, qr, start, rng.gen_range(1..=5), rng);
        dc = dc.direct_sum(&s).expect("same rectangle");
    }
    conjugate(&dc, rng)
}

/// A quotient of `A^r` (`r <= max_rank`) by a random submodule, written in a random basis.
pub fn module(alg: &Arc<FinDimAlgebra>, max_rank: usize, rng: &mut impl Rng) -> AModule {
    let field = alg.field();
    let free = AModule::free(alg, rng.gen_range(1..=max_rank));
    let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(0..=2))
        .map(|_| vector(field, free.dim(), rng))
        .collect();
    let (m, _) = free
        .quotient(&free.generated(&gens))
        .expect("generated subspaces are submodules");
    rebase(&m, rng)
}

/// The same module in a random basis.
pub fn rebase(m: &AModule, rng: &mut impl Rng) -> AModule {
    let p = invertible(m.field(), m.dim(), rng);
    let inv = p.inverse().expect("invertible");
    let action = m.action().iter().map(|a| p.mul(a).mul(&inv)).collect();
    AModule::new(m.algebra().clone(), m.dim(), action).expect("conjugate of a module")
}

/// A random element of `Hom_A(f, g)`.
pub fn module_map(f: &AModule, g: &AModule, rng: &mut impl Rng) -> ModuleMap {
    let (_, basis) = hom_space(f, g).expect("same algebra");
    let mut acc = ModuleMap::zero(f, g);
    for b in &basis {
        acc = acc
            .add(&b.scale(&scalar(f.field(), rng)))
            .expect("same endpoints");
    }
    acc
}

/// `0 -> S -> M -> M/S -> 0` with `M` random and `S` generated by up to two random vectors.
pub fn module_ses(alg: &Arc<FinDimAlgebra>, max_rank: usize, rng: &mut impl Rng) -> ModuleSes {
    let m = module(alg, max_rank, rng);
    let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(0..=2))
        .map(|_| vector(m.field(), m.dim(), rng))
        .collect();
    ModuleSes::from_submodule(&m, &m.generated(&gens)).expect("generated subspaces are submodules")
}

/// A random class in `Ext^k(f, g)`.
pub fn ext_class(f: &AModule, g: &AModule, k: usize, rng: &mut impl Rng) -> ExtClass {
    let group = ext_group(f, g, k, k + 1).expect("same algebra");
    let mut acc = ExtClass::zero(f, g, k);
    for b in group.basis() {
        acc = acc
            .add(&b.scale(&scalar(f.field(), rng)))
            .expect("same group");
    }
    acc
}
