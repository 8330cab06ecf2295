//! Python bindings: permutations, interval morphisms, trees, homology of
//! truncated components and the verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hochop::complexes::models::build_d;
use hochop::complexes::GradedHomology;
use hochop::hochschild::{build_l9_witness, evaluate, generic_args, genericity_check};
use hochop::operad::basis::enumerate_basis;
use hochop::operad::braces::brace_complex;
use hochop::operad::complex::{truncated_complex, Suboperad};
use hochop::operad::{differential, NatTree, SignConvention, TreeType};
use hochop::verify::{run_suite, Params};

fn err(e: hochop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type Groups = Vec<(i64, usize, Vec<String>)>;

fn groups(h: &GradedHomology) -> Groups {
    h.iter().map(|(&t, g)| (t, g.rank, g.torsion.iter().map(ToString::to_string).collect())).collect()
}

#[pyclass(name = "Perm", frozen, from_py_object)]
#[derive(Clone)]
struct PyPerm(hochop::Perm);

#[pymethods]
impl PyPerm {
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        hochop::Perm::new(images).map(PyPerm).map_err(err)
    }

    #[staticmethod]
    fn identity(q: usize) -> Self {
        PyPerm(hochop::Perm::identity(q))
    }

    #[staticmethod]
    fn all(q: usize) -> Vec<PyPerm> {
        hochop::Perm::all(q).into_iter().map(PyPerm).collect()
    }

    fn images(&self) -> Vec<usize> {
        self.0.images().to_vec()
    }

    fn sign(&self) -> i64 {
        self.0.sign()
    }

    fn inverse(&self) -> Self {
        PyPerm(self.0.inverse())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    fn compose(&self, other: &PyPerm) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyPerm).map_err(err)
    }

    fn coface(&self, i: usize) -> PyResult<Self> {
        self.0.coface(i).map(PyPerm).map_err(err)
    }

    fn codegeneracy(&self, i: usize) -> PyResult<Self> {
        self.0.codegeneracy(i).map(PyPerm).map_err(err)
    }

    fn bar_index(&self, i: usize) -> PyResult<usize> {
        self.0.bar_index(i).map_err(err)
    }

    fn is_simple(&self) -> bool {
        self.0.is_simple()
    }

    fn __eq__(&self, other: &PyPerm) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Perm({:?})", self.0.images())
    }
}

#[pyclass(name = "IntervalMorphism", frozen, from_py_object)]
#[derive(Clone)]
struct PyMorphism(hochop::IntervalMorphism);

#[pymethods]
impl PyMorphism {
    /// An order preserving map `<src> → <dst>` from its values on `-1..src+1`.
    #[staticmethod]
    fn from_map(src: i64, dst: i64, map: Vec<i64>) -> PyResult<Self> {
        hochop::IntervalMorphism::from_map(src, dst, map).map(PyMorphism).map_err(err)
    }

    #[staticmethod]
    fn hom_set(m: i64, n: i64) -> Vec<PyMorphism> {
        hochop::IntervalMorphism::hom_set(m, n).into_iter().map(PyMorphism).collect()
    }

    #[staticmethod]
    fn face(n: i64, i: i64) -> PyResult<Self> {
        hochop::IntervalMorphism::face(n, i).map(PyMorphism).map_err(err)
    }

    #[staticmethod]
    fn degeneracy(n: i64, i: i64) -> PyResult<Self> {
        hochop::IntervalMorphism::degeneracy(n, i).map(PyMorphism).map_err(err)
    }

    fn src(&self) -> i64 {
        self.0.src()
    }

    fn dst(&self) -> i64 {
        self.0.dst()
    }

    fn map(&self) -> Vec<i64> {
        self.0.map().to_vec()
    }

    fn fiber(&self, j: i64) -> Vec<i64> {
        self.0.fiber(j).to_vec()
    }

    /// `g.after(f) = g ∘ f`.
    fn after(&self, f: &PyMorphism) -> PyResult<Self> {
        hochop::IntervalMorphism::compose(&self.0, &f.0).map(PyMorphism).map_err(err)
    }

    /// The one-vertex tree of this morphism.
    fn realize(&self) -> PyTree {
        PyTree(hochop::operad::generators::realize_interval(&self.0))
    }

    fn __eq__(&self, other: &PyMorphism) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("IntervalMorphism({} -> {}, {:?})", self.0.src(), self.0.dst(), self.0.map())
    }
}

#[pyclass(name = "Tree", frozen, from_py_object)]
#[derive(Clone)]
struct PyTree(NatTree);

#[pymethods]
impl PyTree {
    /// Parse the notation `m(1,f1(2,e))`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyTree).map_err(err)
    }

    #[staticmethod]
    fn worked_example() -> Self {
        PyTree(NatTree::worked_example())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        NatTree::from_json(&v).map(PyTree).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    #[getter]
    fn l(&self) -> usize {
        self.0.l()
    }

    #[getter]
    fn ks(&self) -> Vec<usize> {
        self.0.ks().to_vec()
    }

    fn degree(&self) -> i64 {
        self.0.degree()
    }

    fn is_planar(&self) -> bool {
        self.0.is_planar()
    }

    fn stub_count(&self) -> usize {
        self.0.stub_count()
    }

    fn insert(&self, i: usize, other: &PyTree) -> PyResult<Self> {
        self.0.insert(i, &other.0).map(PyTree).map_err(err)
    }

    /// Relabel white vertex `j` as `images[j-1]`.
    fn sym_act(&self, images: Vec<usize>) -> PyResult<Self> {
        let p = hochop::Perm::new(images).map_err(err)?;
        self.0.sym_act(&p).map(PyTree).map_err(err)
    }

    /// `d(T)` as a list of `(coefficient, tree)`.
    fn differential(&self) -> Vec<(i64, PyTree)> {
        differential(&self.0, &SignConvention::CHOSEN).iter().map(|(t, c)| (c, PyTree(t.clone()))).collect()
    }

    /// The coefficient at `h^T` of `O_T` evaluated on the witness cochains of `other`.
    fn pairing(&self, other: &PyTree) -> PyResult<i64> {
        let w = build_l9_witness(&other.0);
        let e = evaluate(&self.0, &w.cochains(), &generic_args(self.0.l())).map_err(err)?;
        Ok(e.coefficient(&w.target))
    }

    fn witness_json(&self) -> String {
        build_l9_witness(&self.0).to_json().to_string()
    }

    fn __eq__(&self, other: &PyTree) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tree('{}')", self.0)
    }
}

#[pyfunction]
fn basis(l: usize, ks: Vec<usize>) -> Vec<PyTree> {
    enumerate_basis(&TreeType::new(l, ks)).into_iter().map(PyTree).collect()
}

#[pyfunction]
fn is_generic(l: usize, ks: Vec<usize>) -> bool {
    genericity_check(&TreeType::new(l, ks))
}

/// Windowed homology of a truncated component as `(degree, rank, torsion)`.
#[pyfunction]
#[pyo3(signature = (n, k_max, l_max, suboperad = "B"))]
fn component_homology(n: usize, k_max: usize, l_max: usize, suboperad: &str) -> PyResult<Groups> {
    let sub: Suboperad = suboperad.parse().map_err(err)?;
    let c = truncated_complex(n, k_max, l_max, sub, &SignConvention::CHOSEN).map_err(err)?;
    Ok(groups(&c.windowed_homology()))
}

#[pyfunction]
fn brace_homology(n: usize, k_max: usize, l_max: usize) -> PyResult<Groups> {
    let c = brace_complex(n, k_max, l_max, &SignConvention::CHOSEN).map_err(err)?;
    Ok(groups(&c.homology()))
}

/// Homology of the totalized model D[q] in degrees `0..n_max-1`.
#[pyfunction]
fn model_homology(q: usize, n_max: i64) -> Groups {
    groups(&build_d(q, n_max).nerve().totalize().homology_in(0, n_max - 1))
}

/// Run a verification suite; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (name, seed = 0, q = None, n_max = None, k_max = None, l_max = None))]
fn verify(
    name: &str,
    seed: u64,
    q: Option<usize>,
    n_max: Option<i64>,
    k_max: Option<usize>,
    l_max: Option<usize>,
) -> PyResult<String> {
    let r = run_suite(name, &Params { q, n_max, k_max, l_max, seed }).map_err(err)?;
    Ok(serde_json::to_string(&r).expect("reports serialize"))
}

#[pymodule]
fn hochop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPerm>()?;
    m.add_class::<PyMorphism>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(is_generic, m)?)?;
    m.add_function(wrap_pyfunction!(component_homology, m)?)?;
    m.add_function(wrap_pyfunction!(brace_homology, m)?)?;
    m.add_function(wrap_pyfunction!(model_homology, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
