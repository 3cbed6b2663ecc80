//! Named property suites with a fixed seed: `appendix`, `d0`, `les`, `spectral`, `correlation`, `all`.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use homcat::algebra::{ext_group, hom_space, AModule, FinDimAlgebra};
use homcat::cech::{
    cech_complex, d0_cover_split, hyper_double_complex, hypercohomology, Nerve, SignPlacement,
};
use homcat::correlation::{
    correlate, correlate_with, equivalencia_check, equivalencia_check_with_sign, normalized_trace,
    FreeModel, LocalOperator,
};
use homcat::homcx::{cone_hom_commutes, cylinder_hom_commutes};
use homcat::koszul::{d0_ext_dims, koszul_hom, quotient_module, SeparatedSequence};
use homcat::linalg::{add_vectors, scale_vector, zero_vector, Field, Scalar, Vector};
use homcat::random::{self, SeededRng};
use homcat::spectral::{abutment_check, class_map, dies_on_page_two, pages};
use homcat::strings::{dual_numbers_extension, les_report, Extension1, LesSide};
use homcat::{Error, Result};

pub const SUITES: [&str; 6] = ["appendix", "d0", "les", "spectral", "correlation", "all"];

/// Failure descriptions kept per property.
const MAX_FAILURES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub instances: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl PropertyResult {
    fn new(name: &str) -> Self {
        PropertyResult {
            name: name.into(),
            instances: 0,
            passed: 0,
            failures: vec![],
        }
    }

    fn record(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.instances += 1;
        match ok {
            Ok(true) => self.passed += 1,
            Ok(false) if self.failures.len() < MAX_FAILURES => self.failures.push(what()),
            Err(e) if self.failures.len() < MAX_FAILURES => {
                self.failures.push(format!("{}: {e}", what()))
            }
            _ => {}
        }
    }

    pub fn ok(&self) -> bool {
        self.instances > 0 && self.passed == self.instances
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

pub fn run_suite(name: &str, seed: u64) -> Result<SuiteReport> {
    let properties = match name {
        "appendix" => appendix(seed),
        "d0" => d0(seed),
        "les" => les(seed),
        "spectral" => spectral(seed),
        "correlation" => correlation(seed),
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                for mut p in run_suite(s, seed)?.properties {
                    p.name = format!("{s}/{}", p.name);
                    all.push(p);
                }
            }
            all
        }
        other => return Err(Error::UnknownSuite(other.into())),
    };
    let passed = properties.iter().all(PropertyResult::ok);
    Ok(SuiteReport {
        suite: name.into(),
        seed,
        properties,
        passed,
    })
}

const FIELDS: [Field; 4] = [
    Field::Rationals,
    Field::Prime(2),
    Field::Prime(3),
    Field::Prime(5),
];

fn appendix(seed: u64) -> Vec<PropertyResult> {
    let mut rng = random::rng(seed);
    let mut cone = PropertyResult::new("cone_hom");
    let mut cyl = PropertyResult::new("cylinder_hom");
    for i in 0..500 {
        let field = FIELDS[i % FIELDS.len()];
        let lo = |rng: &mut SeededRng| rng.gen_range(-1..=1i64);
        let p = random::complex(field, lo(&mut rng), 3, 2, &mut rng);
        let k = random::complex(field, lo(&mut rng), 3, 2, &mut rng);
        let l = random::complex(field, lo(&mut rng), 3, 2, &mut rng);
        let g = random::chain_map(&k, &l, &mut rng);
        cone.record(cone_hom_commutes(&p, &g), || {
            format!("instance {i} over {field}")
        });
        cyl.record(cylinder_hom_commutes(&p, &g), || {
            format!("instance {i} over {field}")
        });
    }
    vec![cone, cyl]
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `Π (x - r)` over the given roots, coefficients low to high.
fn poly_from_roots(field: Field, roots: &[i64]) -> Vec<Scalar> {
    let mut p = vec![field.one()];
    for &r in roots {
        let r = field.from_i64(r);
        let mut next = vec![field.zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(&r * c);
        }
        p = next;
    }
    p
}

fn random_sequence(rng: &mut SeededRng, max_n: usize) -> SeparatedSequence {
    let field = Field::Rationals;
    let n = rng.gen_range(1..=max_n);
    let polys = (0..n)
        .map(|_| {
            let roots: Vec<i64> = (0..rng.gen_range(1..=2))
                .map(|_| rng.gen_range(-2..=2))
                .collect();
            poly_from_roots(field, &roots)
        })
        .collect();
    SeparatedSequence::new(field, polys).expect("monic polynomials")
}

/// Local-to-global collapse for a D0 cover: `ℍ^k = Ȟ^0(Ext^k)` and `Ȟ^{p>0}(Ext^k) = 0`.
fn d0_collapse(seq: &SeparatedSequence, opens: usize) -> Result<bool> {
    let cover = d0_cover_split(seq, opens)?;
    let dims = d0_ext_dims(seq);
    let h = hypercohomology(&cover.presheaf)?;
    let mut ok = abutment_check(&h.double);
    for (k, &d) in dims.iter().enumerate() {
        let c = cech_complex(&cover.presheaf.cohomology_presheaf(k as i64)?);
        ok &= c.cohomology(0).dim() == d;
        ok &= (1..=cover.presheaf.nerve().max_dim() as i64).all(|p| c.cohomology(p).dim() == 0);
        ok &= h.dims.iter().find(|e| e.0 == k as i64).map_or(0, |e| e.1) == d;
    }
    Ok(ok)
}

fn d0(seed: u64) -> Vec<PropertyResult> {
    let q = Field::Rationals;
    let mut fixtures = PropertyResult::new("fixtures");
    let n2 = SeparatedSequence::from_i64(q, &[&[0, -1, 1], &[0, 1]]).expect("valid");
    let n3 = SeparatedSequence::from_i64(q, &[&[0, 1], &[0, 1], &[0, 1]]).expect("valid");
    fixtures.record(Ok(d0_ext_dims(&n2) == [2, 4, 2]), || {
        "n = 2, f = (x(x-1), y)".into()
    });
    fixtures.record(Ok(d0_ext_dims(&n3) == [1, 3, 3, 1]), || {
        "n = 3, reduced point".into()
    });

    let mut rng = random::rng(seed);
    let mut closed = PropertyResult::new("closed_form");
    let mut zero_d = PropertyResult::new("zero_differential");
    let mut euler = PropertyResult::new("euler_characteristic");
    let mut collapse = PropertyResult::new("local_to_global_collapse");
    collapse.record(d0_collapse(&n2, 2), || {
        "n = 2 fixture over two opens".into()
    });
    for i in 0..60 {
        let seq = random_sequence(&mut rng, 3);
        let n = seq.n();
        let dims = d0_ext_dims(&seq);
        let oz = quotient_module(&seq).dim();
        let what = || format!("instance {i}: {:?}", seq.polys());
        closed.record(
            Ok(dims
                .iter()
                .enumerate()
                .all(|(p, &d)| d == oz * binomial(n, p))),
            what,
        );
        zero_d.record(
            koszul_hom(&seq, &quotient_module(&seq)).map(|k| k.differential_is_zero()),
            what,
        );
        let chi: i64 = dims
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        euler.record(Ok(chi == 0), what);
        if i % 3 == 0 && n <= 2 {
            collapse.record(d0_collapse(&seq, 2), what);
        }
    }
    vec![fixtures, closed, zero_d, euler, collapse]
}

fn algebras() -> Vec<Arc<FinDimAlgebra>> {
    vec![
        Arc::new(FinDimAlgebra::dual_numbers(Field::Rationals)),
        Arc::new(FinDimAlgebra::dual_numbers(Field::Prime(2))),
        Arc::new(FinDimAlgebra::dual_numbers(Field::Prime(3))),
        Arc::new(FinDimAlgebra::truncated_polynomial(Field::Rationals, 3)),
        Arc::new(FinDimAlgebra::truncated_polynomial(Field::Prime(2), 3)),
        Arc::new(FinDimAlgebra::product_of_points(Field::Rationals, 2)),
    ]
}

/// The dual-numbers fixture `0 -> k -> A -> k -> 0` against `Ext(k, -)`: the sequence starts
/// `0 -> k -> k -> k -> k -> 0` and the connecting map is an isomorphism.
pub fn dual_numbers_fixture(field: Field) -> Result<bool> {
    let alg = Arc::new(FinDimAlgebra::dual_numbers(field));
    let u = dual_numbers_extension(&alg)?;
    let k = AModule::residue_field(&alg)?;
    let r = les_report(&u, &k, LesSide::CovariantFromF, 2)?;
    let dims = &r.sequence.sequence.dims;
    let connecting = &r.connecting[0];
    Ok(r.exact
        && dims[..6] == [0, 1, 1, 1, 1, 0]
        && connecting.shape() == (1, 1)
        && connecting.rank() == 1)
}

fn les(seed: u64) -> Vec<PropertyResult> {
    let mut rng = random::rng(seed);
    let algs = algebras();
    let mut fixture = PropertyResult::new("dual_numbers_fixture");
    for field in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
        fixture.record(dual_numbers_fixture(field), || format!("over {field}"));
    }
    let mut covariant = PropertyResult::new("covariant_exact");
    let mut contravariant = PropertyResult::new("contravariant_exact");
    let mut free_ext = PropertyResult::new("free_source_ext");
    for i in 0..200 {
        let alg = &algs[i % algs.len()];
        let u = Extension1::from_ses(random::module_ses(alg, 2, &mut rng));
        let other = random::module(alg, 2, &mut rng);
        let what = || format!("instance {i} over {:?}", alg.name());
        covariant.record(
            les_report(&u, &other, LesSide::CovariantFromF, 2).map(|r| r.exact),
            what,
        );
        contravariant.record(
            les_report(&u, &other, LesSide::ContravariantToG, 2).map(|r| r.exact),
            what,
        );
        let e = random::rebase(&AModule::free(alg, rng.gen_range(1..=2)), &mut rng);
        let g = random::module(alg, 2, &mut rng);
        free_ext.record(free_ext_check(&e, &g), what);
    }
    vec![fixture, covariant, contravariant, free_ext]
}

/// `Ext^{k>0}(E, G) = 0` and `Ext^0(E, G) = Hom(E, G)` for free `E`.
pub fn free_ext_check(e: &AModule, g: &AModule) -> Result<bool> {
    let hom = hom_space(e, g)?.0;
    Ok(ext_group(e, g, 0, 1)?.dim() == hom
        && (1..=2).all(|k| ext_group(e, g, k, k + 1).map(|x| x.dim()) == Ok(0)))
}

fn d0_instance() -> Result<bool> {
    let seq = SeparatedSequence::from_i64(Field::Rationals, &[&[0, -1, 1], &[0, 1]])?;
    let cover = d0_cover_split(&seq, 2)?;
    let dc = hyper_double_complex(&cover.presheaf, SignPlacement::Vertical)?;
    let e2 = pages(&dc, 2).pop().expect("page 2");
    let row: Vec<usize> = (0..=2).map(|k| e2.dim(0, k)).collect();
    let off_row = dc
        .p_range()
        .filter(|&p| p > 0)
        .all(|p| dc.q_range().all(|q| e2.dim(p, q) == 0));
    let tot: Vec<usize> = (0..=2).map(|k| dc.total().cohomology(k).dim()).collect();
    Ok(abutment_check(&dc) && row == [2, 4, 2] && off_row && tot == [2, 4, 2])
}

fn spectral(seed: u64) -> Vec<PropertyResult> {
    let mut rng = random::rng(seed);
    let mut random_dc = PropertyResult::new("random_abutment");
    for i in 0..200 {
        let field = FIELDS[i % FIELDS.len()];
        let dc = random::double_complex(field, &mut rng);
        random_dc.record(Ok(abutment_check(&dc)), || {
            format!("instance {i} over {field}")
        });
    }
    let mut d0 = PropertyResult::new("d0_abutment_and_collapse");
    d0.record(d0_instance(), || "n = 2 fixture over two opens".into());
    vec![random_dc, d0]
}

fn random_cocycle(model: &FreeModel, r: usize, s: usize, q: usize, rng: &mut SeededRng) -> Vector {
    let c = model.hom_cech(r, s);
    let field = model.field();
    let mut v = zero_vector(field, c.dim(q as i64));
    for b in model.operator_basis(r, s, q) {
        v = add_vectors(&v, &scale_vector(&random::scalar(field, rng), &b));
    }
    if q > 0 {
        // a coboundary does not change the class
        let x = random::vector(field, c.dim(q as i64 - 1), rng);
        v = add_vectors(&v, &c.d(q as i64 - 1).mul_vec(&x));
    }
    v
}

/// Random operators `A^{r_0} -> A^{r_1} -> … -> A^{r_0}` with total Čech degree `n`.
pub fn random_operators(
    model: &FreeModel,
    k: usize,
    rng: &mut SeededRng,
) -> Result<Vec<LocalOperator>> {
    let n = model.top_degree();
    let mut ranks: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=2)).collect();
    ranks.push(ranks[0]);
    let mut degrees = vec![0; k];
    for _ in 0..n {
        degrees[rng.gen_range(0..k)] += 1;
    }
    (0..k)
        .map(|j| {
            let cochain = random_cocycle(model, ranks[j], ranks[j + 1], degrees[j], rng);
            LocalOperator::new(model, (0, degrees[j]), ranks[j], ranks[j + 1], cochain)
        })
        .collect()
}

/// The test matrix: point and triangle-boundary nerves, `k ∈ {1, 2, 3}`, three coefficient algebras.
pub fn correlation_matrix() -> Vec<FreeModel> {
    let mut out = Vec::new();
    for nerve in [Nerve::point(), Nerve::triangle_boundary()] {
        let nerve = Arc::new(nerve);
        for alg in [
            FinDimAlgebra::ground_field(Field::Rationals),
            FinDimAlgebra::ground_field(Field::Prime(3)),
            FinDimAlgebra::dual_numbers(Field::Rationals),
        ] {
            out.push(FreeModel::new(Arc::new(alg), nerve.clone()));
        }
    }
    out
}

fn correlation(seed: u64) -> Vec<PropertyResult> {
    let mut rng = random::rng(seed);
    let mut equiv = PropertyResult::new("equivalencia");
    let mut multilinear = PropertyResult::new("multilinear");
    let mut control = PropertyResult::new("wrong_sign_detected");
    for model in correlation_matrix() {
        for k in 1..=3 {
            for t in 0..4 {
                let what = || {
                    format!(
                        "{} faces, dim A = {}, k = {k}, trial {t}",
                        model.nerve().faces().len(),
                        model.algebra().dim()
                    )
                };
                let ops = match random_operators(&model, k, &mut rng) {
                    Ok(ops) => ops,
                    Err(e) => {
                        equiv.record(Err(e), what);
                        continue;
                    }
                };
                let vol = match normalized_trace(&model, ops[0].source_rank) {
                    Ok(v) => v,
                    Err(e) => {
                        equiv.record(Err(e), what);
                        continue;
                    }
                };
                equiv.record(
                    equivalencia_check(&model, &ops, &vol).map(|r| r.agree),
                    what,
                );
                multilinear.record(multilinear_in_slot(&model, &ops, &vol, &mut rng), what);
                if k == 2 && model.top_degree() == 1 {
                    let good = equivalencia_check(&model, &ops, &vol);
                    let bad = equivalencia_check_with_sign(&model, &ops, &vol, -1);
                    if let (Ok(good), Ok(bad)) = (good, bad) {
                        if !good.correlate.is_zero() {
                            control.record(Ok(!bad.agree), what);
                        }
                    }
                }
            }
        }
    }
    let mut dying = PropertyResult::new("dying_class_gives_zero");
    let dc = dies_on_page_two();
    let lift = class_map(&dc, 0, 1, &[Field::Rationals.one()]);
    dying.record(
        lift.and_then(|l| {
            let dies = !l.survives();
            let c = correlate_with(
                Field::Rationals,
                vec![l],
                |_| Ok(vec![]),
                |_| Ok(Field::Rationals.one()),
            )?;
            Ok(dies && c.value.is_zero())
        }),
        || "class supporting d_2".into(),
    );
    vec![equiv, multilinear, control, dying]
}

/// `⟨… a + c·b …⟩ = ⟨… a …⟩ + c·⟨… b …⟩` in a random slot.
pub fn multilinear_in_slot(
    model: &FreeModel,
    ops: &[LocalOperator],
    vol: &homcat::correlation::VolumeFunctional,
    rng: &mut SeededRng,
) -> Result<bool> {
    let slot = rng.gen_range(0..ops.len());
    let op = &ops[slot];
    let (_, q) = op.position;
    let other = random_cocycle(model, op.source_rank, op.target_rank, q, rng);
    let c = random::scalar(model.field(), rng);
    let with = |data: Vector| -> Result<Scalar> {
        let mut v = ops.to_vec();
        v[slot] = LocalOperator::new(model, op.position, op.source_rank, op.target_rank, data)?;
        Ok(correlate(model, &v, vol)?.value)
    };
    let a = with(op.data.cochain.clone())?;
    let b = with(other.clone())?;
    let mixed = with(add_vectors(&op.data.cochain, &scale_vector(&c, &other)))?;
    Ok(mixed == &a + &(&c * &b))
}
