use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    format_vector, parse_vector, unit_vector, zero_vector, Field, Matrix, Scalar, Vector,
};

/// A finite-dimensional commutative algebra given by structure constants
/// `e_i e_j = Σ_k mult[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    field: Field,
    unit: Vector,
    mult: Vec<Vec<Vector>>,
    // left[i] is multiplication by e_i
    left: Vec<Matrix>,
    name: Option<String>,
}

impl PartialEq for FinDimAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.unit == other.unit && self.mult == other.mult
    }
}

impl Eq for FinDimAlgebra {}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRepr {
    Builtin {
        builtin: String,
        field: Field,
    },
    Explicit {
        field: Field,
        unit: Vec<String>,
        mult: Vec<Vec<Vec<String>>>,
    },
}

impl TryFrom<AlgebraRepr> for FinDimAlgebra {
    type Error = Error;

    fn try_from(r: AlgebraRepr) -> Result<Self> {
        match r {
            AlgebraRepr::Builtin { builtin, field } => FinDimAlgebra::builtin(&builtin, field),
            AlgebraRepr::Explicit { field, unit, mult } => {
                let unit = parse_vector(field, &unit)?;
                let mult = mult
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|v| parse_vector(field, v))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                FinDimAlgebra::new(field, unit, mult)
            }
        }
    }
}

impl From<&FinDimAlgebra> for AlgebraRepr {
    fn from(a: &FinDimAlgebra) -> Self {
        match &a.name {
            Some(name) => AlgebraRepr::Builtin {
                builtin: name.clone(),
                field: a.field,
            },
            None => AlgebraRepr::Explicit {
                field: a.field,
                unit: format_vector(&a.unit),
                mult: a
                    .mult
                    .iter()
                    .map(|row| row.iter().map(|v| format_vector(v)).collect())
                    .collect(),
            },
        }
    }
}

impl Serialize for FinDimAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinDimAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        AlgebraRepr::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

impl FinDimAlgebra {
    /// Validates shapes, associativity, commutativity and the unit.
    pub fn new(field: Field, unit: Vector, mult: Vec<Vec<Vector>>) -> Result<Self> {
        let n = unit.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra(
                "the zero algebra is not allowed".into(),
            ));
        }
        if mult.len() != n
            || mult
                .iter()
                .any(|r| r.len() != n || r.iter().any(|v| v.len() != n))
        {
            return Err(Error::InvalidAlgebra(format!(
                "structure constants must be {n}x{n}x{n}"
            )));
        }
        let all = unit.iter().chain(mult.iter().flatten().flatten());
        if let Some(bad) = all.into_iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        let left: Vec<Matrix> = (0..n)
            .map(|i| Matrix::from_cols(field, n, &mult[i]))
            .collect();
        for i in 0..n {
            for j in 0..n {
                if mult[i][j] != mult[j][i] {
                    return Err(Error::InvalidAlgebra(format!("e{i}e{j} != e{j}e{i}")));
                }
                // L_i L_j = L_{e_i e_j} is associativity on all triples (·, e_i, e_j)
                let lhs = left[i].mul(&left[j]);
                let rhs = combine_matrices(field, n, &mult[i][j], &left);
                if lhs != rhs {
                    return Err(Error::InvalidAlgebra(format!(
                        "associativity fails for e{i}, e{j}"
                    )));
                }
            }
        }
        if combine_matrices(field, n, &unit, &left) != Matrix::identity(field, n) {
            return Err(Error::InvalidAlgebra(
                "unit does not act as the identity".into(),
            ));
        }
        Ok(FinDimAlgebra {
            field,
            unit,
            mult,
            left,
            name: None,
        })
    }

    fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// `k` itself.
    pub fn ground_field(field: Field) -> Self {
        Self::truncated_polynomial(field, 1).named("field")
    }

    /// `k[x]/(x²)`.
    pub fn dual_numbers(field: Field) -> Self {
        Self::truncated_polynomial(field, 2).named("dual_numbers")
    }

    /// `k[x]/(x^m)` on the monomial basis `1, x, …, x^{m-1}`.
    pub fn truncated_polynomial(field: Field, m: usize) -> Self {
        assert!(m >= 1, "k[x]/(x^0) is the zero ring");
        let mult = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i + j < m {
                            unit_vector(field, m, i + j)
                        } else {
                            zero_vector(field, m)
                        }
                    })
                    .collect()
            })
            .collect();
        let name = format!("k[x]/(x^{m})");
        FinDimAlgebra::new(field, unit_vector(field, m, 0), mult)
            .expect("monomial algebra")
            .named(&name)
    }

    /// `k^n` with orthogonal idempotents: the functions on `n` reduced points.
    pub fn product_of_points(field: Field, n: usize) -> Self {
        assert!(n >= 1);
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            unit_vector(field, n, i)
                        } else {
                            zero_vector(field, n)
                        }
                    })
                    .collect()
            })
            .collect();
        let unit = vec![field.one(); n];
        let name = format!("product_of_points({n})");
        FinDimAlgebra::new(field, unit, mult)
            .expect("idempotent algebra")
            .named(&name)
    }

    /// Built-ins by name: `field`, `dual_numbers`, `k[x]/(x^m)`, `product_of_points(n)`.
    pub fn builtin(name: &str, field: Field) -> Result<Self> {
        let bad = || Error::InvalidAlgebra(format!("unknown built-in algebra {name:?}"));
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "field" | "k" => return Ok(Self::ground_field(field)),
            "dual_numbers" => return Ok(Self::dual_numbers(field)),
            _ => {}
        }
        if let Some(m) = compact
            .strip_prefix("k[x]/(x^")
            .and_then(|r| r.strip_suffix(')'))
        {
            let m: usize = m.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            return Ok(Self::truncated_polynomial(field, m));
        }
        let points = compact
            .strip_prefix("product_of_points(")
            .or_else(|| compact.strip_prefix("productofpoints("))
            .and_then(|r| r.strip_suffix(')'));
        if let Some(n) = points {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(Self::product_of_points(field, n));
        }
        Err(bad())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// `e_i e_j` as a coordinate vector.
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i][j]
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        self.left_mult(a).mul_vec(b)
    }

    /// Matrix of multiplication by `e_i`.
    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    /// Matrix of multiplication by `a`.
    pub fn left_mult(&self, a: &[Scalar]) -> Matrix {
        combine_matrices(self.field, self.dim(), a, &self.left)
    }
}

/// `Σ_i coeffs[i] · mats[i]` for square matrices of size `n`.
pub(crate) fn combine_matrices(
    field: Field,
    n: usize,
    coeffs: &[Scalar],
    mats: &[Matrix],
) -> Matrix {
    let rows = mats.first().map_or(n, |m| m.rows());
    let cols = mats.first().map_or(n, |m| m.cols());
    let mut acc = Matrix::zeros(field, rows, cols);
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}
