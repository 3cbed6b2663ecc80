//! One handler per command; each returns the `results` object of the report.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use homcat::algebra::{ext_group, hom_space, yoneda_product, AModule, ExtClass, FinDimAlgebra};
use homcat::cech::{
    cech_complex, ext_presheaf_morphism, globaxten_check, globaxten_total_element, hypercohomology,
    skyscraper_presheaf, vertex_les, vertex_space, ComplexPresheaf, D0Cover, Nerve, NervePresheaf,
    PresheafMorphism,
};
use homcat::complex::{cone_with_sign, cylinder, ChainMap, CochainComplex};
use homcat::correlation::{
    correlate, equivalencia_check, locally_free_trace, FreeModel, LocalOperator, VolumeFunctional,
};
use homcat::homcx::{cone_hom_commutes_with, cylinder_hom_commutes, expected_hom_dim, hom_complex};
use homcat::koszul::{d0_ext_dims, koszul_hom, quotient_module, z_points, ZPoint};
use homcat::linalg::{format_vector, unit_vector};
use homcat::spectral::{
    abutment_check, abutment_report, class_map, e_infinity, pages, DoubleComplex,
};
use homcat::strings::{
    baer_sum, equivalence, ext_class_of, extension_from_cocycle, les_report, obstruction_extend,
    obstruction_lift, pullback_ext, pushout_ext, Extension1, ExtensionP,
};

use crate::payload::*;
use crate::verify;
use crate::{CliError, Command, Options, DEFAULT_SEED};

type Outcome = Result<Value, CliError>;

pub fn dispatch(command: Command, payload: &Value, opts: &Options) -> Outcome {
    match command {
        Command::Cohomology => cohomology(decode(payload)?),
        Command::Cone => cone(decode(payload)?),
        Command::Hom => hom(decode(payload)?),
        Command::Koszul => koszul(decode(payload)?),
        Command::D0 => d0(decode(payload)?),
        Command::Cech => cech(decode(payload)?),
        Command::Hyper => hyper(decode(payload)?),
        Command::Spectral => spectral(decode(payload)?),
        Command::Ext => ext(decode(payload)?),
        Command::Yoneda => yoneda(decode(payload)?),
        Command::Extension => extension(decode(payload)?),
        Command::Obstruction => obstruction(decode(payload)?),
        Command::Les => les(decode(payload)?),
        Command::Correlate => correlation(decode(payload)?),
        Command::Verify => {
            let p: VerifyPayload = decode(payload)?;
            let seed = opts.seed.or(p.seed).unwrap_or(DEFAULT_SEED);
            Ok(to_json(&verify::run_suite(&p.suite, seed)?))
        }
    }
}

fn decode<T: DeserializeOwned>(payload: &Value) -> Result<T, CliError> {
    serde_json::from_value(payload.clone()).map_err(|e| CliError::Schema(format!("payload: {e}")))
}

fn to_json<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn dims_of(c: &CochainComplex) -> Value {
    json!(c
        .cohomology_dims()
        .iter()
        .map(|(k, d)| json!({ "degree": k, "dim": d }))
        .collect::<Vec<_>>())
}

fn class_json(c: &ExtClass) -> Value {
    json!({
        "degree": c.degree(),
        "coords": format_vector(&c.coords()),
        "cocycle": format_vector(c.cocycle()),
        "is_zero": c.is_zero(),
    })
}

fn class_of(e: &Extension1) -> Result<ExtClass, CliError> {
    Ok(ext_class_of(&ExtensionP::single(e.clone()))?)
}

fn cohomology(p: CohomologyPayload) -> Outcome {
    let c = &p.complex;
    let degrees: Vec<Value> = c
        .support()
        .map(|n| {
            let h = c.cohomology(n);
            json!({
                "degree": n,
                "cochain_dim": c.dim(n),
                "dim": h.dim(),
                "basis": h.basis().iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "degrees": degrees,
        "acyclic": c.is_acyclic(),
        "euler_characteristic": c.euler_characteristic(),
    }))
}

fn cone(p: ConePayload) -> Outcome {
    if p.sign != 1 && p.sign != -1 {
        return Err(schema("cone sign must be 1 or -1"));
    }
    let f = p.map.build()?;
    let con = cone_with_sign(&f, p.sign);
    let cyl = cylinder(&f);
    let mut out = json!({
        "cone": { "complex": con, "cohomology": dims_of(&con), "acyclic": con.is_acyclic() },
        "cylinder": {
            "complex": cyl.complex,
            "cohomology": dims_of(&cyl.complex),
            "projection_is_chain_map": ChainMap::new(
                cyl.projection.src().clone(), cyl.projection.dst().clone(), cyl.projection.components().to_vec()
            ).is_ok(),
        },
        "quasi_isomorphism": f.is_quasi_isomorphism(),
    });
    if let Some(src) = &p.hom_source {
        let sign = p.sign;
        out["lemmas"] = json!({
            "cone_hom": cone_hom_commutes_with(src, &f, |g| cone_with_sign(g, sign))?,
            "cylinder_hom": cylinder_hom_commutes(src, &f)?,
        });
    }
    Ok(out)
}

fn hom(p: HomPayload) -> Outcome {
    let h = hom_complex(&p.src, &p.dst)?;
    let c = h.complex().clone();
    let blocks_match = c
        .support()
        .all(|m| c.dim(m) == expected_hom_dim(&p.src, &p.dst, m));
    Ok(json!({ "hom": h, "cohomology": dims_of(&c), "dims_match_blocks": blocks_match }))
}

fn koszul(p: KoszulPayload) -> Outcome {
    let seq = p.sequence()?;
    let m = match p.module {
        Some(m) => m,
        None => quotient_module(&seq),
    };
    let k = koszul_hom(&seq, &m)?;
    let c = &k.complex;
    let degrees: Vec<Value> = (0..=seq.n())
        .map(|d| {
            let n = d as i64;
            json!({
                "degree": d,
                "dim": c.dim(n),
                "rank": c.d(n).rank(),
                "differential_zero": c.d(n).is_zero(),
                "cohomology": c.cohomology(n).dim(),
                "blocks": k.blocks[d],
            })
        })
        .collect();
    Ok(json!({
        "n": seq.n(),
        "module_dim": k.module_dim,
        "degrees": degrees,
        "differential_is_zero": k.differential_is_zero(),
        "complex": c,
    }))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn d0(p: D0Payload) -> Outcome {
    let seq = sequence(p.field, p.n, &p.polys)?;
    let dims = d0_ext_dims(&seq);
    let oz = quotient_module(&seq).dim();
    let points = z_points(&seq)?;
    let closed_form: Vec<usize> = (0..=seq.n()).map(|k| oz * binomial(seq.n(), k)).collect();
    let mut out = json!({
        "dims": dims,
        "o_z_dim": oz,
        "closed_form": closed_form,
        "matches_closed_form": dims == closed_form,
        "reduced": points.iter().all(ZPoint::is_reduced),
        "points": points.iter().map(|x| json!({
            "coords": format_vector(&x.coords),
            "multiplicities": x.multiplicities,
        })).collect::<Vec<_>>(),
    });
    if let Some(opens) = p.opens {
        let cover = match p.assignment {
            Some(a) => homcat::cech::d0_cover(&seq, opens, a)?,
            None => homcat::cech::d0_cover_split(&seq, opens)?,
        };
        out["cech"] = local_to_global(&cover)?;
    } else if p.assignment.is_some() {
        return Err(schema("assignment needs opens"));
    }
    Ok(out)
}

/// `E_2^{p,q} = Ȟ^p(Ext^q)` against `ℍ^k` for a D0 cover.
fn local_to_global(cover: &D0Cover) -> Outcome {
    let cp = &cover.presheaf;
    let h = hypercohomology(cp)?;
    let (lo, hi) = cp.degree_range();
    let mut rows = Vec::new();
    let mut collapses = true;
    for q in lo..=hi {
        let ext_q = cp.cohomology_presheaf(q)?;
        let c = cech_complex(&ext_q);
        let cech: Vec<usize> = (0..=cp.nerve().max_dim())
            .map(|p| c.cohomology(p as i64).dim())
            .collect();
        let hyper = h.dims.iter().find(|(k, _)| *k == q).map_or(0, |e| e.1);
        collapses &= cech[1..].iter().all(|&d| d == 0) && cech[0] == hyper;
        rows.push(json!({ "degree": q, "h0_ext": vertex_space(&ext_q, 0).0, "cech": cech, "hyper": hyper }));
    }
    Ok(json!({
        "opens": cp.nerve().vertex_count(),
        "assignment": cover.assignment,
        "rows": rows,
        "collapses": collapses,
        "abutment_holds": abutment_check(&h.double),
        "placements_agree": h.dims == h.alternative_dims,
    }))
}

fn presheaf_json(p: &NervePresheaf) -> Value {
    let c = cech_complex(p);
    json!({ "cochain_dims": c.dims(), "cohomology": dims_of(&c), "vertex_space_dim": vertex_space(p, 0).0 })
}

fn morphism_json(beta: &PresheafMorphism) -> Outcome {
    let les = vertex_les(beta)?;
    Ok(json!({
        "source": presheaf_json(beta.src()),
        "target": presheaf_json(beta.dst()),
        "kernel": presheaf_json(&les.kernel),
        "image": presheaf_json(&les.image),
        "sequence": les.sequence,
        "exact": les.exact,
    }))
}

fn cech(p: CechPayload) -> Outcome {
    match p {
        CechPayload::Presheaf { presheaf } => {
            Ok(presheaf_json(&NervePresheaf::try_from(presheaf)?))
        }
        CechPayload::Skyscraper {
            nerve,
            field,
            points,
            stalk_dim,
        } => Ok(presheaf_json(&skyscraper_presheaf(
            Arc::new(nerve),
            field,
            &points,
            stalk_dim,
        )?)),
        CechPayload::Constant { nerve, field, dim } => Ok(presheaf_json(&NervePresheaf::constant(
            Arc::new(nerve),
            field,
            dim,
        ))),
        CechPayload::ExtPresheaf {
            nerve,
            extension,
            module,
            degree,
        } => {
            let u = extension.build()?;
            let alg = u.middle().algebra().clone();
            let f = module.build(&alg)?;
            let unit = alg.unit().clone();
            morphism_json(&ext_presheaf_morphism(
                Arc::new(nerve),
                u.as_ses(),
                &f,
                degree,
                |_| unit.clone(),
            )?)
        }
        CechPayload::Morphism {
            source,
            target,
            maps,
        } => {
            let (src, dst) = (
                NervePresheaf::try_from(source)?,
                NervePresheaf::try_from(target)?,
            );
            morphism_json(&PresheafMorphism::new(src, dst, maps)?)
        }
    }
}

fn without(face: &[usize], j: usize) -> Vec<usize> {
    face.iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, &v)| v)
        .collect()
}

fn complex_presheaf(nerve: Nerve, p: &HyperPayload) -> Result<ComplexPresheaf, CliError> {
    let nerve = Arc::new(nerve);
    match (&p.complex, &p.complexes) {
        (Some(c), None) if p.restrictions.is_none() => Ok(ComplexPresheaf::constant(nerve, c)),
        (None, Some(cs)) => {
            let faces = nerve.faces().to_vec();
            let rs = p
                .restrictions
                .clone()
                .unwrap_or_else(|| vec![vec![]; faces.len()]);
            if cs.len() != faces.len() || rs.len() != faces.len() {
                return Err(schema("need one complex and one restriction list per face"));
            }
            let mut restrictions = Vec::new();
            for (t, face) in faces.iter().enumerate() {
                let expected = if face.len() > 1 { face.len() } else { 0 };
                if rs[t].len() != expected {
                    return Err(schema(format!(
                        "face {face:?} needs {expected} restrictions"
                    )));
                }
                let row = rs[t]
                    .iter()
                    .enumerate()
                    .map(|(j, comps)| {
                        let s = nerve
                            .face_index(&without(face, j))
                            .expect("nerves are closed under faces");
                        ChainMap::new(cs[s].clone(), cs[t].clone(), comps.clone())
                    })
                    .collect::<homcat::Result<Vec<_>>>()?;
                restrictions.push(row);
            }
            Ok(ComplexPresheaf::new(nerve, cs.clone(), restrictions)?)
        }
        _ => Err(schema(
            "give either `complex` or `complexes` (with `restrictions`)",
        )),
    }
}

fn hyper(p: HyperPayload) -> Outcome {
    let cp = complex_presheaf(p.nerve.clone(), &p)?;
    let h = hypercohomology(&cp)?;
    let e2 = pages(&h.double, 2).pop().expect("page 2");
    let e2_cells: Vec<Value> = h
        .double
        .p_range()
        .flat_map(|a| h.double.q_range().map(move |b| (a, b)))
        .filter(|&(a, b)| e2.dim(a, b) > 0)
        .map(|(a, b)| json!({ "p": a, "q": b, "dim": e2.dim(a, b) }))
        .collect();
    let mut out = json!({
        "dims": h.dims.iter().map(|(k, d)| json!({ "degree": k, "dim": d })).collect::<Vec<_>>(),
        "alternative_dims": h.alternative_dims.iter().map(|(k, d)| json!({ "degree": k, "dim": d })).collect::<Vec<_>>(),
        "placements_agree": h.dims == h.alternative_dims,
        "e2": e2_cells,
        "abutment_holds": abutment_check(&h.double),
    });
    if let Some(g) = &p.globaxten {
        let field = cp.field();
        let (f, hh) = (vector(field, &g.f)?, vector(field, &g.h)?);
        let holds = globaxten_check(&cp, &f, &hh)?;
        let total = globaxten_total_element(&cp, &f, &hh)?;
        let is_cocycle = homcat::linalg::is_zero_vector(&h.double.total().d(1).mul_vec(&total));
        out["globaxten"] = json!({ "holds": holds, "total_element": format_vector(&total), "total_cocycle": is_cocycle });
    }
    Ok(out)
}

fn spectral(p: SpectralPayload) -> Outcome {
    let dc: DoubleComplex = p.double;
    let up_to = p.pages.unwrap_or_else(|| dc.r_max());
    let all = pages(&dc, up_to);
    let degenerate_from = all
        .iter()
        .skip(1)
        .find(|pg| pg.is_degenerate())
        .map(|pg| pg.r);
    let mut out = json!({
        "r_max": dc.r_max(),
        "pages": all,
        "degenerate_from": degenerate_from,
        "e_infinity": e_infinity(&dc),
        "abutment": abutment_report(&dc),
        "abutment_holds": abutment_check(&dc),
    });
    if let Some(c) = &p.class {
        out["class"] = to_json(&class_map(&dc, c.p, c.q, &vector(dc.field(), &c.element)?)?);
    }
    Ok(out)
}

fn is_free(m: &AModule) -> bool {
    let n = m.algebra().dim();
    m.dim().is_multiple_of(n) && m.is_free_of_rank(m.dim() / n)
}

fn ext(p: ExtPayload) -> Outcome {
    let alg = Arc::new(p.algebra);
    let (f, g) = (p.f.build(&alg)?, p.g.build(&alg)?);
    let groups = (0..=p.max_degree)
        .map(|k| ext_group(&f, &g, k, k + 1))
        .collect::<homcat::Result<Vec<_>>>()?;
    let dims: Vec<usize> = groups.iter().map(|e| e.dim()).collect();
    let (hom_dim, _) = hom_space(&f, &g)?;
    let free = is_free(&f);
    let res = f.resolution(p.max_degree + 1);
    Ok(json!({
        "dims": dims,
        "groups": groups,
        "hom_dim": hom_dim,
        "resolution_ranks": res.ranks(),
        "source_free": free,
        "free_check": free.then(|| dims[0] == hom_dim && dims[1..].iter().all(|&d| d == 0)),
    }))
}

fn yoneda(p: YonedaPayload) -> Outcome {
    let alg = Arc::new(p.algebra);
    let (f, g, h) = (p.f.build(&alg)?, p.g.build(&alg)?, p.h.build(&alg)?);
    let a = p.a.build(&f, &g)?;
    let b = p.b.build(&g, &h)?;
    Ok(json!({ "product": class_json(&yoneda_product(&a, &b)?) }))
}

fn extension(p: ExtensionPayload) -> Outcome {
    match p {
        ExtensionPayload::ClassOf { extension } => {
            Ok(json!({ "class": class_json(&ext_class_of(&extension)?) }))
        }
        ExtensionPayload::FromCocycle {
            algebra,
            f,
            g,
            class,
        } => {
            let alg = Arc::new(algebra);
            let c = class.build(&f.build(&alg)?, &g.build(&alg)?)?;
            let e = extension_from_cocycle(&c)?;
            let back = ext_class_of(&e)?;
            Ok(
                json!({ "extension": e, "class": class_json(&back), "round_trip": back.same_class(&c)? }),
            )
        }
        ExtensionPayload::BaerSum { left, right } => {
            let (l, r) = (left.build()?, right.build()?);
            let s = baer_sum(&l, &r)?;
            let sum = class_of(&s)?;
            let additive = sum.same_class(&class_of(&l)?.add(&class_of(&r)?)?)?;
            Ok(json!({ "extension": s, "class": class_json(&sum), "additive": additive }))
        }
        ExtensionPayload::Pullback { extension, gamma } => {
            let u = extension.build()?;
            let gamma = gamma.into_target(u.f_module())?;
            let e = pullback_ext(&u, &gamma)?;
            let pulled = class_of(&e)?;
            let agrees = pulled.same_class(&class_of(&u)?.pullback(&gamma)?)?;
            Ok(
                json!({ "extension": e, "class": class_json(&pulled), "matches_class_pullback": agrees }),
            )
        }
        ExtensionPayload::Pushout { extension, alpha } => {
            let u = extension.build()?;
            let alpha = alpha.out_of(u.g_module())?;
            let e = pushout_ext(&u, &alpha)?;
            let pushed = class_of(&e)?;
            let agrees = pushed.same_class(&class_of(&u)?.pushforward(&alpha)?)?;
            Ok(
                json!({ "extension": e, "class": class_json(&pushed), "matches_class_pushforward": agrees }),
            )
        }
        ExtensionPayload::Equivalent { left, right } => {
            let (l, r) = (left.build()?, right.build()?);
            let map = equivalence(&l, &r);
            Ok(json!({ "equivalent": map.is_some(), "map": map.map(|m| m.matrix().clone()) }))
        }
        ExtensionPayload::Splice { lower, upper } => {
            let e = ExtensionP::splice(&lower, &upper)?;
            let class = ext_class_of(&e)?;
            let product = yoneda_product(&ext_class_of(&lower)?, &ext_class_of(&upper)?)?;
            Ok(
                json!({ "extension": e, "class": class_json(&class), "matches_yoneda": class.same_class(&product)? }),
            )
        }
    }
}

fn obstruction(p: ObstructionPayload) -> Outcome {
    let u = p.extension.build()?;
    let alg = u.middle().algebra().clone();
    let m = p.module.build(&alg)?;
    let o = match p.kind {
        ObstructionKind::Extend => obstruction_extend(&p.class.build(u.g_module(), &m)?, &u)?,
        ObstructionKind::Lift => obstruction_lift(&p.class.build(&m, u.f_module())?, &u)?,
    };
    let consistent = o.vanishes == o.witness.is_some();
    Ok(json!({ "obstruction": o, "consistent": consistent }))
}

fn les(p: LesPayload) -> Outcome {
    let u = p.extension.build()?;
    let m = p.module.build(u.middle().algebra())?;
    Ok(to_json(&les_report(&u, &m, p.side, p.length)?))
}

fn volume(model: &FreeModel, rank: usize, spec: &VolumeSpec) -> Result<VolumeFunctional, CliError> {
    let field = model.field();
    let free = AModule::free(model.algebra(), rank);
    match (&spec.vol_scalar, &spec.coefficients) {
        (Some(v), None) => Ok(locally_free_trace(
            model,
            &free,
            vector(field, v)?,
            spec.nondegenerate,
        )?),
        (None, Some(c)) => Ok(VolumeFunctional::new(
            model,
            rank,
            vector(field, c)?,
            spec.nondegenerate,
        )?),
        (None, None) => {
            let dim = model
                .scalar_cech()
                .cohomology(model.top_degree() as i64)
                .dim();
            if dim == 0 {
                return Err(
                    homcat::Error::Degenerate("the nerve has no top cohomology".into()).into(),
                );
            }
            Ok(locally_free_trace(
                model,
                &free,
                unit_vector(field, dim, 0),
                spec.nondegenerate,
            )?)
        }
        (Some(_), Some(_)) => Err(schema("give at most one of vol_scalar and coefficients")),
    }
}

fn correlation(p: CorrelatePayload) -> Outcome {
    let alg: Arc<FinDimAlgebra> = Arc::new(p.algebra);
    let model = FreeModel::new(alg.clone(), Arc::new(p.nerve));
    let field = alg.field();
    let ops = p
        .operators
        .iter()
        .map(|o| {
            Ok(LocalOperator::new(
                &model,
                o.position,
                o.source_rank,
                o.target_rank,
                vector(field, &o.cochain)?,
            )?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let rank = ops
        .first()
        .map(|o| o.source_rank)
        .ok_or_else(|| schema("no operators"))?;
    let vol = volume(&model, rank, &p.volume)?;
    let c = correlate(&model, &ops, &vol)?;
    let equivalencia = if ops.iter().all(|o| o.position.0 == 0) && vol.vol_scalar().is_some() {
        Some(equivalencia_check(&model, &ops, &vol)?)
    } else {
        None
    };
    Ok(json!({
        "top_degree": model.top_degree(),
        "value": c.value.to_string(),
        "lifts": c.lifts,
        "equivalencia": equivalencia,
    }))
}
