//! Python bindings. Exact rationals cross the boundary as "p/q" strings;
//! structured reports cross as JSON strings so callers can `json.loads`
//! them without a parallel class hierarchy.

use gcnlab_core::conjecture::{analyze_line, verify_set};
use gcnlab_core::gc::{GcAnalysis, LatticeTag};
use gcnlab_core::geom::{rat_from_str, rat_to_string, Line as CoreLine, Point};
use gcnlab_core::io;
use gcnlab_core::lattices::fixtures;
use gcnlab_core::nodeset::NodeSet as CoreNodeSet;
use gcnlab_core::suites;
use gcnlab_core::svg;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::str::FromStr;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A line with integer coefficients ax + by + c = 0, held in canonical form.
#[pyclass(name = "Line", frozen)]
#[derive(Clone)]
struct PyLine {
    inner: CoreLine,
}

#[pymethods]
impl PyLine {
    #[new]
    fn new(a: &str, b: &str, c: &str) -> PyResult<Self> {
        let parse = |s: &str| num_bigint::BigInt::from_str(s).map_err(err);
        Ok(PyLine {
            inner: CoreLine::from_bigints(parse(a)?, parse(b)?, parse(c)?).map_err(err)?,
        })
    }

    fn coefficients(&self) -> (String, String, String) {
        (
            self.inner.a().to_string(),
            self.inner.b().to_string(),
            self.inner.c().to_string(),
        )
    }

    fn __repr__(&self) -> String {
        let (a, b, c) = self.coefficients();
        format!("Line({a}, {b}, {c})")
    }
}

/// A candidate GC_n node set of (n+2 choose 2) points.
#[pyclass(name = "NodeSet", frozen)]
#[derive(Clone)]
struct PyNodeSet {
    inner: CoreNodeSet,
    annotated_lines: Vec<CoreLine>,
}

#[pymethods]
impl PyNodeSet {
    /// Builds a set from a degree and a list of ("x", "y") rational pairs.
    #[new]
    fn new(degree: usize, nodes: Vec<(String, String)>) -> PyResult<Self> {
        let pts: Vec<Point> = nodes
            .iter()
            .map(|(x, y)| {
                Ok(Point::new(
                    rat_from_str(x).map_err(err)?,
                    rat_from_str(y).map_err(err)?,
                ))
            })
            .collect::<PyResult<_>>()?;
        Ok(PyNodeSet {
            inner: CoreNodeSet::new(degree, pts).map_err(err)?,
            annotated_lines: Vec::new(),
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (set, lines) = io::node_set_from_str(text).map_err(err)?;
        Ok(PyNodeSet {
            inner: set,
            annotated_lines: lines,
        })
    }

    #[staticmethod]
    fn principal(n: usize) -> Self {
        PyNodeSet {
            inner: CoreNodeSet::pl(n),
            annotated_lines: Vec::new(),
        }
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn nodes(&self) -> Vec<(String, String)> {
        self.inner
            .nodes()
            .iter()
            .map(|p| (rat_to_string(&p.x), rat_to_string(&p.y)))
            .collect()
    }

    /// Lines annotated in the source file (e.g. a distinguished unused line).
    fn annotated_lines(&self) -> Vec<PyLine> {
        self.annotated_lines
            .iter()
            .map(|l| PyLine { inner: l.clone() })
            .collect()
    }

    fn maximal_lines(&self) -> Vec<PyLine> {
        self.inner
            .maximal_lines()
            .into_iter()
            .map(|l| PyLine { inner: l })
            .collect()
    }

    fn to_json(&self) -> String {
        io::node_set_to_string(&self.inner, &self.annotated_lines)
    }

    fn to_svg(&self) -> String {
        svg::render_svg(&self.inner, self.annotated_lines.first())
    }

    fn __repr__(&self) -> String {
        format!(
            "NodeSet(degree={}, nodes={})",
            self.inner.degree(),
            self.inner.len()
        )
    }
}

fn tag_str(tag: &LatticeTag) -> &'static str {
    match tag {
        LatticeTag::GeneralizedPrincipal => "generalized-principal",
        LatticeTag::NMinus1Max => "n-minus-1-maximal",
        LatticeTag::NMax => "n-maximal",
        LatticeTag::CarnicerGasca => "carnicer-gasca",
        LatticeTag::ChungYao => "chung-yao",
        LatticeTag::Unclassified => "unclassified",
    }
}

/// Fundamental-polynomial analysis of a poised set; construction fails
/// if the set is not poised.
#[pyclass(name = "Analysis", frozen)]
struct PyAnalysis {
    inner: GcAnalysis,
}

#[pymethods]
impl PyAnalysis {
    #[new]
    fn new(set: &PyNodeSet) -> PyResult<Self> {
        Ok(PyAnalysis {
            inner: GcAnalysis::new(set.inner.clone()).map_err(err)?,
        })
    }

    fn is_gc_set(&self) -> bool {
        self.inner.is_gc_set()
    }

    fn mu(&self) -> usize {
        self.inner.mu()
    }

    fn classification(&self) -> String {
        tag_str(&self.inner.classify().tag).to_string()
    }

    fn sigma(&self, line: &PyLine) -> PyResult<i64> {
        self.inner.sigma(&line.inner).map_err(err)
    }

    fn line_node_count(&self, line: &PyLine) -> PyResult<usize> {
        self.inner.line_node_count(&line.inner).map_err(err)
    }

    /// Indices of the nodes whose fundamental polynomial the line divides.
    fn used_nodes(&self, line: &PyLine) -> Vec<usize> {
        self.inner.used_nodes(&line.inner).users.into_iter().collect()
    }

    fn uses_line(&self, node: usize, line: &PyLine) -> bool {
        self.inner.uses_line(node, &line.inner)
    }

    /// Full clause report for one line, as a JSON string.
    fn analyze_line(&self, line: &PyLine) -> PyResult<String> {
        let report = analyze_line(&self.inner, &line.inner).map_err(err)?;
        serde_json::to_string(&io::line_report_to_json(&report)).map_err(err)
    }

    /// Clause sweep over every node-line; returns (all_pass, json_report).
    fn verify(&self) -> PyResult<(bool, String)> {
        let report = verify_set(&self.inner).map_err(err)?;
        let text = serde_json::to_string(&io::set_report_to_json(&report)).map_err(err)?;
        Ok((report.all_pass, text))
    }
}

/// Constructs a built-in fixture family; `family` is one of
/// chung-yao, carnicer-gasca, principal, gpl, y-star, x-star,
/// y-bar-star, x-bar-star.
#[pyfunction]
#[pyo3(signature = (family, degree=None, m=1, seed=0))]
fn generate(family: &str, degree: Option<usize>, m: usize, seed: u64) -> PyResult<PyNodeSet> {
    let need_degree = || degree.ok_or_else(|| PyValueError::new_err("family requires degree="));
    let (set, lines) = match family {
        "chung-yao" => (fixtures::cy_fixture(need_degree()?).0, Vec::new()),
        "carnicer-gasca" => (fixtures::cg_fixture(need_degree()?).0, Vec::new()),
        "principal" => (CoreNodeSet::pl(need_degree()?), Vec::new()),
        "gpl" => (fixtures::affine_gpl_fixture(need_degree()?).0, Vec::new()),
        "y-star" => {
            let (set, l, _) = fixtures::y_star_fixture_seeded(seed);
            (set, vec![l])
        }
        "x-star" => {
            let (set, l, _) = fixtures::x_star_fixture_seeded(seed);
            (set, vec![l])
        }
        "y-bar-star" => {
            let (set, l, _) = fixtures::modification_search(&fixtures::y_star_fixture(), m, seed);
            (set, vec![l])
        }
        "x-bar-star" => {
            let (set, l, _) = fixtures::modification_search(&fixtures::x_star_fixture(), m, seed);
            (set, vec![l])
        }
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    Ok(PyNodeSet {
        inner: set,
        annotated_lines: lines,
    })
}

/// Runs a named verification suite; returns (all_pass, [(label, pass, detail)]).
#[pyfunction]
fn run_suite(name: &str) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let report = suites::run_suite(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite {name:?}")))?;
    let checks = report
        .checks
        .iter()
        .map(|c| (c.label.clone(), c.pass, c.detail.clone()))
        .collect();
    Ok((report.all_pass(), checks))
}

#[pyfunction]
fn suite_names() -> Vec<&'static str> {
    suites::SUITE_NAMES.to_vec()
}

#[pymodule]
fn gcnlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLine>()?;
    m.add_class::<PyNodeSet>()?;
    m.add_class::<PyAnalysis>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_function(wrap_pyfunction!(suite_names, m)?)?;
    Ok(())
}
