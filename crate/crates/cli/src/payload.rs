//! Payload schemas, one per command. Every struct rejects unknown fields.

use std::sync::Arc;

use serde::Deserialize;

use homcat::algebra::{AModule, ExtClass, FinDimAlgebra, ModuleMap};
use homcat::cech::{Nerve, PresheafRepr};
use homcat::complex::{ChainMap, CochainComplex};
use homcat::koszul::{EvalModule, SeparatedSequence, SequenceRepr};
use homcat::linalg::{parse_vector, Field, Matrix, ScalarText, Vector};
use homcat::spectral::DoubleComplex;
use homcat::strings::{dual_numbers_extension, Extension1, ExtensionP, LesSide};
use homcat::Result;

fn rationals() -> Field {
    Field::Rationals
}

fn default_cone_sign() -> i64 {
    -1
}

pub fn vector(field: Field, v: &[ScalarText]) -> Result<Vector> {
    parse_vector(field, v)
}

/// A module over the payload's algebra.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    Free {
        rank: usize,
    },
    /// The residue field `A / rad A` of a local algebra.
    Residue,
    Explicit {
        dim: usize,
        action: Vec<Matrix>,
    },
}

impl ModuleSpec {
    pub fn build(&self, alg: &Arc<FinDimAlgebra>) -> Result<AModule> {
        match self {
            ModuleSpec::Free { rank } => Ok(AModule::free(alg, *rank)),
            ModuleSpec::Residue => AModule::residue_field(alg),
            ModuleSpec::Explicit { dim, action } => AModule::new(alg.clone(), *dim, action.clone()),
        }
    }
}

/// An Ext class given by a cocycle on the canonical resolution of its source.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub degree: usize,
    pub cocycle: Vec<ScalarText>,
}

impl ClassSpec {
    pub fn build(&self, f: &AModule, g: &AModule) -> Result<ExtClass> {
        ExtClass::new(f, g, self.degree, vector(f.field(), &self.cocycle)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapSpec {
    pub src: CochainComplex,
    pub dst: CochainComplex,
    pub components: Vec<Matrix>,
}

impl ChainMapSpec {
    pub fn build(&self) -> Result<ChainMap> {
        ChainMap::new(self.src.clone(), self.dst.clone(), self.components.clone())
    }
}

/// A length-one extension, explicit or a named fixture.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ExtensionSpec {
    Fixture { fixture: String, field: Field },
    Explicit(Extension1),
}

impl ExtensionSpec {
    pub fn build(&self) -> Result<Extension1> {
        match self {
            ExtensionSpec::Fixture { fixture, field } if fixture == "dual_numbers" => {
                dual_numbers_extension(&Arc::new(FinDimAlgebra::dual_numbers(*field)))
            }
            ExtensionSpec::Fixture { fixture, .. } => Err(homcat::Error::InvalidExtension(
                format!("unknown extension fixture {fixture:?}"),
            )),
            ExtensionSpec::Explicit(e) => Ok(e.clone()),
        }
    }
}

/// A module map out of `source` into a module fixed by context.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub source: ModuleSpec,
    pub matrix: Matrix,
}

impl MapSpec {
    pub fn into_target(&self, target: &AModule) -> Result<ModuleMap> {
        ModuleMap::new(
            self.source.build(target.algebra())?,
            target.clone(),
            self.matrix.clone(),
        )
    }

    /// Read as a map `target -> source`.
    pub fn out_of(&self, domain: &AModule) -> Result<ModuleMap> {
        ModuleMap::new(
            domain.clone(),
            self.source.build(domain.algebra())?,
            self.matrix.clone(),
        )
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyPayload {
    pub complex: CochainComplex,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConePayload {
    pub map: ChainMapSpec,
    #[serde(default = "default_cone_sign")]
    pub sign: i64,
    /// When present, the cone and cylinder lemmas are checked against `Hom(hom_source, -)`.
    pub hom_source: Option<CochainComplex>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomPayload {
    pub src: CochainComplex,
    pub dst: CochainComplex,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulPayload {
    #[serde(default = "rationals")]
    pub field: Field,
    pub n: usize,
    pub polys: Vec<Vec<ScalarText>>,
    /// Defaults to `O_Z` itself.
    pub module: Option<EvalModule>,
}

impl KoszulPayload {
    pub fn sequence(&self) -> Result<SeparatedSequence> {
        sequence(self.field, self.n, &self.polys)
    }
}

pub fn sequence(field: Field, n: usize, polys: &[Vec<ScalarText>]) -> Result<SeparatedSequence> {
    SeparatedSequence::try_from(SequenceRepr {
        field,
        n,
        polys: polys.to_vec(),
    })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct D0Payload {
    #[serde(default = "rationals")]
    pub field: Field,
    pub n: usize,
    pub polys: Vec<Vec<ScalarText>>,
    /// Number of opens of the Čech cover; points are dealt round robin unless `assignment` is given.
    pub opens: Option<usize>,
    pub assignment: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CechPayload {
    Presheaf {
        presheaf: PresheafRepr,
    },
    Skyscraper {
        nerve: Nerve,
        field: Field,
        points: Vec<Vec<usize>>,
        stalk_dim: usize,
    },
    Constant {
        nerve: Nerve,
        field: Field,
        dim: usize,
    },
    /// `Ext^degree(module, -)` applied to an extension, as constant presheaves, and the long
    /// exact sequence of the kernel/image split.
    ExtPresheaf {
        nerve: Nerve,
        extension: ExtensionSpec,
        module: ModuleSpec,
        degree: usize,
    },
    Morphism {
        source: PresheafRepr,
        target: PresheafRepr,
        maps: Vec<Matrix>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobaxtenSpec {
    pub f: Vec<ScalarText>,
    pub h: Vec<ScalarText>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperPayload {
    pub nerve: Nerve,
    /// A constant presheaf of complexes...
    pub complex: Option<CochainComplex>,
    /// ...or one complex per face, with `restrictions[t][j]` the components of the map from the
    /// complex on face `t` minus its `j`-th vertex.
    pub complexes: Option<Vec<CochainComplex>>,
    pub restrictions: Option<Vec<Vec<Vec<Matrix>>>>,
    pub globaxten: Option<GlobaxtenSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftSpec {
    pub p: i64,
    pub q: i64,
    pub element: Vec<ScalarText>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralPayload {
    pub double: DoubleComplex,
    /// Last page to report; defaults to the page where the sequence has stabilized.
    pub pages: Option<usize>,
    pub class: Option<LiftSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtPayload {
    pub algebra: FinDimAlgebra,
    pub f: ModuleSpec,
    pub g: ModuleSpec,
    pub max_degree: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YonedaPayload {
    pub algebra: FinDimAlgebra,
    pub f: ModuleSpec,
    pub g: ModuleSpec,
    pub h: ModuleSpec,
    /// In `Ext^m(f, g)`.
    pub a: ClassSpec,
    /// In `Ext^n(g, h)`.
    pub b: ClassSpec,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum ExtensionPayload {
    ClassOf {
        extension: ExtensionP,
    },
    FromCocycle {
        algebra: FinDimAlgebra,
        f: ModuleSpec,
        g: ModuleSpec,
        class: ClassSpec,
    },
    BaerSum {
        left: ExtensionSpec,
        right: ExtensionSpec,
    },
    /// Pull back along `gamma : source -> F`.
    Pullback {
        extension: ExtensionSpec,
        gamma: MapSpec,
    },
    /// Push out along `alpha : G -> source`.
    Pushout {
        extension: ExtensionSpec,
        alpha: MapSpec,
    },
    Equivalent {
        left: ExtensionSpec,
        right: ExtensionSpec,
    },
    Splice {
        lower: ExtensionP,
        upper: ExtensionP,
    },
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    Extend,
    Lift,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstructionPayload {
    pub kind: ObstructionKind,
    pub extension: ExtensionSpec,
    /// `G` for extending `ρ ∈ Ext^p(B, G)`, `F` for lifting `τ ∈ Ext^p(F, D)`.
    pub module: ModuleSpec,
    pub class: ClassSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LesPayload {
    pub extension: ExtensionSpec,
    pub module: ModuleSpec,
    pub side: LesSide,
    pub length: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSpec {
    pub position: (usize, usize),
    pub source_rank: usize,
    pub target_rank: usize,
    pub cochain: Vec<ScalarText>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VolumeSpec {
    /// Functional on `H^n(N, A)`; `t = vol_scalar ∘ tr`.
    pub vol_scalar: Option<Vec<ScalarText>>,
    /// Functional on `H^n(N, End_A(A^r))` directly.
    pub coefficients: Option<Vec<ScalarText>>,
    #[serde(default)]
    pub nondegenerate: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelatePayload {
    pub algebra: FinDimAlgebra,
    pub nerve: Nerve,
    pub operators: Vec<OperatorSpec>,
    #[serde(default)]
    pub volume: VolumeSpec,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPayload {
    pub suite: String,
    pub seed: Option<u64>,
}
