//! Python bindings. Instances travel as the JSON documents of the command
//! line; results come back as Python lists, dicts and ints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use quasimatroid::bitset::EdgeSet;
use quasimatroid::bracelets::bracelet_graph;
use quasimatroid::constructions::{contract, delete, Minor};
use quasimatroid::error::Error;
use quasimatroid::examples::{generate as generate_example, torus_graph, ExampleSpec};
use quasimatroid::graph::DEFAULT_CYCLE_LIMIT;
use quasimatroid::io::{edge_sets_to_json, load_bundle, BiasJson, Bundle, Rule};
use quasimatroid::matroid::{bases, circuits, circuits_chi, cocircuits, is_independent, CircuitFamily, RankOracle};
use quasimatroid::tripartition::{Side, Tripartition};
use quasimatroid::verify::{
    circuit_axioms, classify_frame_lift, cocircuits_bruteforce, ingleton_search, run_suite, Suite, DEFAULT_TABLE_CAP,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.kind()))
}

fn to_py<'py>(py: Python<'py>, v: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn edge_set(t: &Tripartition, edges: &[usize]) -> PyResult<EdgeSet> {
    let x: EdgeSet = edges.iter().copied().collect();
    t.graph().check_edge_set(&x).map_err(err)?;
    Ok(x)
}

fn parse_side(side: &str) -> PyResult<Side> {
    match side {
        "L" | "l" => Ok(Side::L),
        "F" | "f" => Ok(Side::F),
        _ => Err(PyValueError::new_err(format!("side must be 'L' or 'F', got {side:?}"))),
    }
}

/// A graph with a proper tripartition of its cycles, or a bias with a
/// bracelet function.
#[pyclass(module = "pyquasimatroid")]
struct Instance {
    inner: quasimatroid::io::Instance,
    tripartition: Tripartition,
}

impl Instance {
    fn wrap(inner: quasimatroid::io::Instance) -> PyResult<Self> {
        let tripartition = inner.require_tripartition().map_err(err)?;
        Ok(Self { inner, tripartition })
    }

    fn from_tripartition(t: Tripartition) -> Self {
        Self {
            inner: quasimatroid::io::Instance {
                bias: t.biased_graph(),
                tripartition: Some(t.clone()),
                chi: None,
            },
            tripartition: t,
        }
    }

    fn circuit_family(&self) -> PyResult<CircuitFamily> {
        match (&self.inner.tripartition, &self.inner.chi) {
            (None, Some(chi)) => circuits_chi(&self.inner.bias, chi).map_err(err),
            _ => circuits(&self.tripartition).map_err(err),
        }
    }

    fn minor_pair(m: Minor) -> (Instance, Vec<Option<usize>>) {
        (Instance::from_tripartition(m.tripartition), m.edge_map)
    }
}

#[pymethods]
impl Instance {
    /// Merges one or more JSON documents (bundles or single parts).
    #[new]
    #[pyo3(signature = (*documents))]
    fn new(documents: Vec<String>) -> PyResult<Self> {
        let bundle = load_bundle(documents.iter().map(String::as_str)).map_err(err)?;
        Self::wrap(bundle.resolve(DEFAULT_CYCLE_LIMIT).map_err(err)?)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&Bundle::from_tripartition(&self.tripartition)).expect("serializable")
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.graph().vertex_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.graph().edges().to_vec()
    }

    #[getter]
    fn cycle_count(&self) -> usize {
        self.inner.bias.space().len()
    }

    fn bracelet_count(&self) -> usize {
        bracelet_graph(&self.inner.bias).nodes().len()
    }

    fn bracelet_components(&self) -> usize {
        bracelet_graph(&self.inner.bias).component_count()
    }

    fn is_degenerate(&self, side: &str) -> PyResult<bool> {
        Ok(self.tripartition.is_degenerate(parse_side(side)?))
    }

    /// "frame", "lift", "both" or "neither".
    fn classification<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_frame_lift(&self.tripartition).map_err(err)?)
    }

    /// Rank of `edges`, or of the whole ground set.
    #[pyo3(signature = (edges=None))]
    fn rank(&self, edges: Option<Vec<usize>>) -> PyResult<usize> {
        let x = match edges {
            Some(e) => edge_set(&self.tripartition, &e)?,
            None => self.tripartition.graph().edge_set(),
        };
        Ok(RankOracle::new(&self.tripartition).rank(&x))
    }

    fn is_independent(&self, edges: Vec<usize>) -> PyResult<bool> {
        Ok(is_independent(
            &self.tripartition,
            &edge_set(&self.tripartition, &edges)?,
        ))
    }

    fn circuits(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(edge_sets_to_json(self.circuit_family()?.circuits()))
    }

    fn cocircuits(&self) -> PyResult<Vec<Vec<usize>>> {
        let sets = match cocircuits(&self.tripartition) {
            Err(Error::DegenerateTripartition(_)) => {
                cocircuits_bruteforce(&self.circuit_family()?, DEFAULT_TABLE_CAP).map_err(err)?
            }
            other => other.map_err(err)?,
        };
        Ok(edge_sets_to_json(&sets))
    }

    #[pyo3(signature = (cap=DEFAULT_TABLE_CAP))]
    fn bases(&self, cap: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(edge_sets_to_json(&bases(&self.tripartition, cap).map_err(err)?))
    }

    /// `(minor, edge_map)`; `edge_map[e]` is the new index of `e` or None.
    fn delete(&self, edge: usize) -> PyResult<(Instance, Vec<Option<usize>>)> {
        Ok(Self::minor_pair(delete(&self.tripartition, edge).map_err(err)?))
    }

    fn contract(&self, edge: usize) -> PyResult<(Instance, Vec<Option<usize>>)> {
        Ok(Self::minor_pair(contract(&self.tripartition, edge).map_err(err)?))
    }

    /// An Ingleton-violating quadruple of cycles as a dict, or None.
    fn ingleton<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &ingleton_search(&self.tripartition).map_err(err)?)
    }

    /// Verification reports as dicts.
    #[pyo3(signature = (suite="full", seed=0, cap=DEFAULT_TABLE_CAP))]
    fn verify<'py>(&self, py: Python<'py>, suite: &str, seed: u64, cap: usize) -> PyResult<Bound<'py, PyAny>> {
        let suite = match suite {
            "fast" => Suite::Fast,
            "full" => Suite::Full,
            other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
        };
        to_py(py, &run_suite(&self.inner, suite, seed, cap).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertices={}, edges={}, cycles={})",
            self.vertex_count(),
            self.inner.graph().edge_count(),
            self.cycle_count()
        )
    }
}

/// `generate("complete", n=6, side="F")`, `generate("four_cycle_parity", n=8)`,
/// `generate("kab", a=3, b=3, side="L")`, `generate("doubled_square")`,
/// `generate("random", n=4, m=7, seed=1, signed=True)`.
#[pyfunction]
#[pyo3(signature = (example, **params))]
fn generate(py: Python<'_>, example: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Instance> {
    let mut spec = match params {
        Some(p) => {
            let text: String = py.import("json")?.call_method1("dumps", (p,))?.extract()?;
            serde_json::from_str::<serde_json::Value>(&text).map_err(|e| PyValueError::new_err(e.to_string()))?
        }
        None => serde_json::json!({}),
    };
    spec["example"] = serde_json::Value::String(example.to_owned());
    let spec: ExampleSpec = serde_json::from_value(spec).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(Instance::from_tripartition(generate_example(&spec).map_err(err)?))
}

/// The `2m × 2m` torus grid with its contractible cycles balanced.
#[pyfunction]
fn torus(m: usize) -> PyResult<Instance> {
    let bundle = Bundle {
        graph: Some(torus_graph(m).map_err(err)?),
        bias: Some(BiasJson::Rule(Rule::new("contractible", serde_json::json!({ "m": m })))),
        ..Bundle::default()
    };
    Instance::wrap(bundle.resolve(DEFAULT_CYCLE_LIMIT).map_err(err)?)
}

/// Circuit axioms for an arbitrary family on `0..ground_size`.
#[pyfunction]
#[pyo3(signature = (family, ground_size, cap=DEFAULT_TABLE_CAP))]
fn check_circuit_axioms<'py>(
    py: Python<'py>,
    family: Vec<Vec<usize>>,
    ground_size: usize,
    cap: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let sets = family.into_iter().map(|c| c.into_iter().collect()).collect();
    to_py(
        py,
        &circuit_axioms(&CircuitFamily::new(ground_size, sets), cap).map_err(err)?,
    )
}

#[pymodule]
fn pyquasimatroid(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(torus, m)?)?;
    m.add_function(wrap_pyfunction!(check_circuit_axioms, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4: &str =
        r#"{"graph":{"vertices":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},"bias":{"rule":"all_balanced"}}"#;

    #[test]
    fn graphic_k4() {
        let k4 = Instance::new(vec![K4.to_owned()]).unwrap();
        assert_eq!(k4.rank(None).unwrap(), 3);
        assert_eq!(k4.circuits().unwrap().len(), 7);
        assert_eq!(k4.cocircuits().unwrap().len(), 7);
        assert_eq!(k4.bases(DEFAULT_TABLE_CAP).unwrap().len(), 16);
        let (minor, map) = k4.contract(0).unwrap();
        assert_eq!(map[0], None);
        assert_eq!(minor.rank(None).unwrap(), 2);
        let again = Instance::new(vec![k4.to_json()]).unwrap();
        assert_eq!(again.circuits().unwrap(), k4.circuits().unwrap());
    }

    #[test]
    fn results_cross_into_python() {
        Python::initialize();
        Python::attach(|py| {
            let k4 = Instance::new(vec![K4.to_owned()]).unwrap();
            let class: String = k4.classification(py).unwrap().extract().unwrap();
            assert_eq!(class, "both");
            let reports = k4.verify(py, "fast", 0, DEFAULT_TABLE_CAP).unwrap();
            assert!(reports.len().unwrap() > 0);
            let e = Instance::new(vec![r#"{"vertices":2,"edges":[[0,5]]}"#.to_owned()])
                .err()
                .unwrap();
            assert!(e.to_string().contains("invalid_graph:"));
        });
    }
}
