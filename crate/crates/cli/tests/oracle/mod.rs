//! Small mod-p linear algebra written independently of the engine, used as a second route in
//! the acceptance checks. Matrices are row-major `Vec<Vec<u64>>` with entries in `[0, p)`.

#![allow(dead_code)]

use homcat::algebra::{AModule, ModuleMap};
use homcat::linalg::{Field, Matrix};
use homcat::strings::Extension1;

pub type Mat = Vec<Vec<u64>>;

pub fn prime_of(field: Field) -> Option<u64> {
    match field {
        Field::Prime(p) => Some(p),
        _ => None,
    }
}

pub fn from_engine(m: &Matrix) -> Mat {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| m.get(i, j).to_i64().expect("residue") as u64)
                .collect()
        })
        .collect()
}

pub fn to_engine(field: Field, m: &Mat, cols: usize) -> Matrix {
    let flat: Vec<i64> = m.iter().flat_map(|r| r.iter().map(|&x| x as i64)).collect();
    Matrix::from_i64(field, m.len(), cols, &flat)
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

fn inv(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

pub fn mul(a: &Mat, b: &Mat, inner: usize, cols: usize, p: u64) -> Mat {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

pub fn sub(a: &Mat, b: &Mat, p: u64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(u, v)| (u + p - v) % p).collect())
        .collect()
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Row echelon form in place; returns the pivot columns.
fn eliminate(m: &mut Mat, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..m.len()).find(|&k| m[k][c] != 0) else {
            continue;
        };
        m.swap(r, k);
        let s = inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * s % p;
        }
        for k in 0..m.len() {
            if k != r && m[k][c] != 0 {
                let f = m[k][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[k].iter_mut().zip(&pivot_row) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat, cols: usize, p: u64) -> usize {
    let mut m = m.clone();
    eliminate(&mut m, cols, p).len()
}

/// Some `x` with `a x = b`, if the system is consistent.
pub fn solve(a: &Mat, cols: usize, b: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(r, &y)| r.iter().copied().chain([y % p]).collect())
        .collect();
    let pivots = eliminate(&mut aug, cols + 1, p);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![0; cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][cols];
    }
    Some(x)
}

pub fn col(m: &Mat, j: usize) -> Vec<u64> {
    m.iter().map(|r| r[j]).collect()
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    // columns are the spanning vectors
    let a: Mat = (0..v.len())
        .map(|i| vectors.iter().map(|w| w[i]).collect())
        .collect();
    solve(&a, vectors.len(), v, p).is_some()
}

pub fn actions(m: &AModule) -> Vec<Mat> {
    m.action().iter().map(from_engine).collect()
}

/// Every k-linear `rows x cols` matrix over `F_p`, in lexicographic order.
pub fn all_matrices(rows: usize, cols: usize, p: u64) -> impl Iterator<Item = Mat> {
    let n = rows * cols;
    let total = p.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut m = zeros(rows, cols);
        for k in 0..n {
            m[k / cols.max(1)][k % cols.max(1)] = code % p;
            code /= p;
        }
        m
    })
}

/// All module maps `src -> dst`, by exhaustive search over linear maps.
pub fn all_module_maps(src: &AModule, dst: &AModule, p: u64) -> Vec<Mat> {
    let (a, b) = (actions(src), actions(dst));
    let (n, m) = (src.dim(), dst.dim());
    all_matrices(m, n, p)
        .filter(|phi| {
            a.iter()
                .zip(&b)
                .all(|(x, y)| mul(phi, x, n, n, p) == mul(y, phi, m, n, p))
        })
        .collect()
}

pub fn is_module_map(map: &ModuleMap, p: u64) -> bool {
    let phi = from_engine(map.matrix());
    let (n, m) = (map.src().dim(), map.dst().dim());
    actions(map.src())
        .iter()
        .zip(actions(map.dst()).iter())
        .all(|(x, y)| mul(&phi, x, n, n, p) == mul(y, &phi, m, n, p))
}

/// `0 -> G -> H -> F -> 0` is exact with module-map legs.
pub fn is_valid_extension(u: &Extension1, p: u64) -> bool {
    let (g, h, f) = (u.g_module().dim(), u.middle().dim(), u.f_module().dim());
    let (i, q) = (
        from_engine(u.inject().matrix()),
        from_engine(u.project().matrix()),
    );
    is_module_map(u.inject(), p)
        && is_module_map(u.project(), p)
        && h == g + f
        && rank(&i, g, p) == g
        && rank(&q, h, p) == f
        && is_zero(&mul(&q, &i, h, g, p))
}

/// The Hochschild 1-cocycle `(a, x) ↦ ι⁻¹(a·s(x) − s(a·x))` of an extension, for a linear
/// section `s` of the projection; flattened as `[a][x][g]`.
pub fn hochschild_cocycle(u: &Extension1, p: u64) -> Vec<u64> {
    let (g, h, f) = (u.g_module().dim(), u.middle().dim(), u.f_module().dim());
    let (i, q) = (
        from_engine(u.inject().matrix()),
        from_engine(u.project().matrix()),
    );
    let section: Vec<Vec<u64>> = (0..f)
        .map(|t| {
            let e: Vec<u64> = (0..f).map(|k| u64::from(k == t)).collect();
            solve(&q, h, &e, p).expect("projection is onto")
        })
        .collect();
    // s as an h x f matrix
    let s: Mat = (0..h)
        .map(|r| (0..f).map(|t| section[t][r]).collect())
        .collect();
    let mut out = Vec::new();
    for (ah, af) in actions(u.middle()).iter().zip(actions(u.f_module()).iter()) {
        let diff = sub(&mul(ah, &s, h, f, p), &mul(&s, af, f, f, p), p);
        for t in 0..f {
            out.extend(solve(&i, g, &col(&diff, t), p).expect("defect lies in the submodule"));
        }
    }
    out
}

/// Coboundaries `(a, x) ↦ a·φ(x) − φ(a·x)` for `φ` running over a basis of `Hom_k(F, G)`.
pub fn hochschild_coboundaries(f_mod: &AModule, g_mod: &AModule, p: u64) -> Vec<Vec<u64>> {
    let (f, g) = (f_mod.dim(), g_mod.dim());
    let (af, ag) = (actions(f_mod), actions(g_mod));
    let mut out = Vec::new();
    for a in 0..g {
        for b in 0..f {
            let mut phi = zeros(g, f);
            phi[a][b] = 1;
            let mut v = Vec::new();
            for (x, y) in af.iter().zip(&ag) {
                let d = sub(&mul(y, &phi, g, f, p), &mul(&phi, x, f, f, p), p);
                for t in 0..f {
                    v.extend(col(&d, t));
                }
            }
            out.push(v);
        }
    }
    out
}

/// `Σ coeffs[k]·cocycles[k]` is a Hochschild coboundary, i.e. that combination of classes is zero.
pub fn combination_is_trivial(
    f_mod: &AModule,
    g_mod: &AModule,
    cocycles: &[(i64, Vec<u64>)],
    p: u64,
) -> bool {
    let n = cocycles[0].1.len();
    let mut acc = vec![0u64; n];
    for (c, v) in cocycles {
        let c = c.rem_euclid(p as i64) as u64;
        for (x, y) in acc.iter_mut().zip(v) {
            *x = (*x + c * y) % p;
        }
    }
    in_span(&hochschild_coboundaries(f_mod, g_mod, p), &acc, p)
}

/// Total complex of a bigraded family `dh`, `dv` built here, with the sign twist applied only
/// when the squares commute.
pub fn total_cohomology_dims(
    dims: &dyn Fn(i64, i64) -> usize,
    dh: &dyn Fn(i64, i64) -> Mat,
    dv: &dyn Fn(i64, i64) -> Mat,
    ps: std::ops::RangeInclusive<i64>,
    qs: std::ops::RangeInclusive<i64>,
    p: u64,
) -> Option<Vec<(i64, usize)>> {
    let lo = ps.start() + qs.start();
    let hi = ps.end() + qs.end();
    let layout = |k: i64| -> Vec<(i64, i64, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for a in ps.clone() {
            let b = k - a;
            if qs.contains(&b) {
                out.push((a, b, off));
                off += dims(a, b);
            }
        }
        out
    };
    let size = |k: i64| layout(k).iter().map(|&(a, b, _)| dims(a, b)).sum::<usize>();
    // does dh commute with dv?
    let mut commute = true;
    let mut anticommute = true;
    for a in ps.clone() {
        for b in qs.clone() {
            if !ps.contains(&(a + 1)) || !qs.contains(&(b + 1)) {
                continue;
            }
            let (n0, n1, n2) = (dims(a, b), dims(a + 1, b), dims(a, b + 1));
            let x = mul(&dv(a + 1, b), &dh(a, b), n1, n0, p);
            let y = mul(&dh(a, b + 1), &dv(a, b), n2, n0, p);
            commute &= x == y;
            let neg: Mat = y
                .iter()
                .map(|r| r.iter().map(|&v| (p - v) % p).collect())
                .collect();
            anticommute &= x == neg;
        }
    }
    if !commute && !anticommute {
        return None;
    }
    let twist = commute && !anticommute;
    let total_d = |k: i64| -> Mat {
        let (src, dst) = (layout(k), layout(k + 1));
        let mut d = zeros(size(k + 1), size(k));
        for &(a, b, off) in &src {
            let n = dims(a, b);
            for &(a2, b2, off2) in &dst {
                let block = if a2 == a + 1 && b2 == b {
                    dh(a, b)
                } else if a2 == a && b2 == b + 1 {
                    let m = dv(a, b);
                    if twist && a.rem_euclid(2) == 1 {
                        m.iter()
                            .map(|r| r.iter().map(|&v| (p - v) % p).collect())
                            .collect()
                    } else {
                        m
                    }
                } else {
                    continue;
                };
                for r in 0..dims(a2, b2) {
                    for c in 0..n {
                        d[off2 + r][off + c] = block[r][c];
                    }
                }
            }
        }
        d
    };
    let mut out = Vec::new();
    for k in lo..=hi {
        let r_out = if k < hi {
            rank(&total_d(k), size(k), p)
        } else {
            0
        };
        let r_in = if k > lo {
            rank(&total_d(k - 1), size(k - 1), p)
        } else {
            0
        };
        out.push((k, size(k) - r_out - r_in));
    }
    Some(out)
}
