//! Python bindings: the JSON problem interface of the `homcat` binary, plus a few direct entry
//! points for quick interactive use.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use homcat::koszul::{d0_ext_dims as d0_dims, SeparatedSequence};
use homcat::linalg::Field;
use homcat_cli::{run_bytes, to_json_string, verify, CliError, Command, Options};

create_exception!(
    homcat_py,
    HomcatError,
    PyException,
    "Engine, schema or parse failure; args are (code, message)."
);

fn to_py(e: CliError) -> PyErr {
    HomcatError::new_err((e.code(), e.to_string()))
}

fn engine(e: homcat::Error) -> PyErr {
    to_py(CliError::Engine(e))
}

/// Run a problem document (a JSON string) and return the report as a JSON string.
#[pyfunction]
#[pyo3(signature = (problem, seed=None))]
fn run(problem: &str, seed: Option<u64>) -> PyResult<String> {
    let report = run_bytes(
        problem.as_bytes(),
        None,
        &Options {
            seed,
            timings: false,
        },
    )
    .map_err(to_py)?;
    Ok(to_json_string(&report))
}

/// Names of the commands accepted in problem documents.
#[pyfunction]
fn commands() -> Vec<&'static str> {
    Command::ALL.iter().map(|c| c.name()).collect()
}

/// Run one verify suite; returns the suite report as JSON.
#[pyfunction]
#[pyo3(signature = (suite, seed=homcat_cli::DEFAULT_SEED))]
fn run_suite(suite: &str, seed: u64) -> PyResult<String> {
    let r = verify::run_suite(suite, seed).map_err(engine)?;
    serde_json::to_string(&r).map_err(|e| HomcatError::new_err(("E_INTERNAL", e.to_string())))
}

fn parse_field(name: &str) -> PyResult<Field> {
    let bad = || {
        HomcatError::new_err((
            "E_SCHEMA",
            format!("unknown field {name:?}; use \"Q\" or \"F<p>\""),
        ))
    };
    if name == "Q" {
        return Ok(Field::Rationals);
    }
    let p: u64 = name
        .strip_prefix('F')
        .and_then(|p| p.parse().ok())
        .ok_or_else(bad)?;
    Field::prime(p).map_err(engine)
}

/// `dim Ext^p(O_Z, O_Z)` for the zero set of `f_i(x_i)`; each polynomial is a coefficient list
/// from the constant term up, as integers or strings like `"-1/2"`.
#[pyfunction]
#[pyo3(signature = (polys, field="Q"))]
fn d0_ext_dims(polys: Vec<Vec<Bound<'_, PyAny>>>, field: &str) -> PyResult<Vec<usize>> {
    let field = parse_field(field)?;
    let mut parsed = Vec::new();
    for poly in polys {
        let mut coeffs = Vec::new();
        for c in poly {
            coeffs.push(field.parse(&c.str()?.to_string()).map_err(engine)?);
        }
        parsed.push(coeffs);
    }
    let seq = SeparatedSequence::new(field, parsed).map_err(engine)?;
    Ok(d0_dims(&seq))
}

#[pymodule]
fn homcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", homcat::VERSION)?;
    m.add("HomcatError", m.py().get_type::<HomcatError>())?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(commands, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(d0_ext_dims, m)?)?;
    Ok(())
}
