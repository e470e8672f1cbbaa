//! Python bindings for affvir-core.

use std::sync::Arc;

use affvir_core::affvir::{bracket_gens, Gen};
use affvir_core::cli::{parse_weight, run_preset as core_preset};
use affvir_core::exact::scalar;
use affvir_core::highest_weight::{ann_generators, build_verma, AnnMode, Bounds, HWModule, HwParams};
use affvir_core::irreducibility::{
    doubled, endo_dimension, is_irreducible as core_is_irreducible, iso_params_check, ActionTable, ClosureMoves, IrredOptions, PsiConvention,
    TensorBlocks, TensorParams as CoreParams,
};
use affvir_core::lie::{dual_coxeter, finite_irrep, AlgebraConfig, SimpleLieAlgebra};
use affvir_core::loop_tensor::TensorContext;
use affvir_core::pbw::Monomial;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(affvir, AffvirError, PyException);

fn err(e: affvir_core::Error) -> PyErr {
    AffvirError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

/// A finite-dimensional simple Lie algebra.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Algebra {
    inner: Arc<SimpleLieAlgebra>,
}

#[pymethods]
impl Algebra {
    #[staticmethod]
    fn sl2() -> Self {
        Algebra { inner: Arc::new(SimpleLieAlgebra::sl2()) }
    }

    /// Loads a JSON or TOML structure-constant file.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AffvirError::new_err(format!("{path}: {e}")))?;
        let cfg = if path.ends_with(".toml") { AlgebraConfig::from_toml(&text) } else { AlgebraConfig::from_json(&text) }.map_err(err)?;
        Ok(Algebra { inner: Arc::new(SimpleLieAlgebra::load(&cfg).map_err(err)?) })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        (0..self.inner.dim()).map(|i| self.inner.name_of(i).to_string()).collect()
    }

    fn dual_coxeter(&self) -> PyResult<String> {
        Ok(scalar::fmt(&dual_coxeter(&self.inner).map_err(err)?))
    }

    /// Bracket of two generators written like "e(1)" or "d(-2)".
    fn bracket(&self, x: &str, y: &str) -> PyResult<String> {
        let (gx, gy) = (self.generator(x)?, self.generator(y)?);
        Ok(bracket_gens(&self.inner, gx, gy).display(&self.inner))
    }

    /// Dimension of the irreducible module with the given highest weight.
    fn irrep_dim(&self, weight: &str) -> PyResult<usize> {
        let w = parse_weight(&self.inner, weight).map_err(err)?;
        Ok(finite_irrep(&self.inner, &w).map_err(err)?.dim())
    }

    fn __repr__(&self) -> String {
        format!("Algebra({}, dim={})", self.inner.name, self.inner.dim())
    }
}

impl Algebra {
    fn generator(&self, s: &str) -> PyResult<Gen> {
        let m = Monomial::parse(&self.inner, s).map_err(err)?;
        match m.factors() {
            [(g, 1)] => Ok(*g),
            _ => Err(AffvirError::new_err(format!("{s:?} is not a single generator"))),
        }
    }
}

/// A truncated highest-weight module M(λ,l,k,c) or its irreducible quotient.
#[pyclass(frozen)]
struct Module {
    inner: Arc<HWModule>,
}

fn hw_params(alg: &SimpleLieAlgebra, lam: &str, l: &str, k: &str, c: &str) -> PyResult<HwParams> {
    let p = |s: &str| scalar::parse(s).map_err(err);
    Ok(HwParams::new(parse_weight(alg, lam).map_err(err)?, p(l)?, p(k)?, p(c)?))
}

#[pymethods]
impl Module {
    /// Builds the Verma module truncated at the given depth and charge.
    #[staticmethod]
    #[pyo3(signature = (lam, l, k, c, depth=2, charge=2, algebra=None))]
    fn verma(lam: &str, l: &str, k: &str, c: &str, depth: u32, charge: i64, algebra: Option<Algebra>) -> PyResult<Self> {
        let alg = algebra.unwrap_or_else(Algebra::sl2).inner;
        let p = hw_params(&alg, lam, l, k, c)?;
        Ok(Module { inner: Arc::new(build_verma(alg, p, Bounds::new(depth, charge)).map_err(err)?) })
    }

    fn quotient(&self) -> PyResult<Module> {
        Ok(Module { inner: Arc::new(self.inner.irreducible_quotient().map_err(err)?) })
    }

    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    /// Singular vectors at one depth; the module must extend one level deeper.
    fn singular_vectors(&self, depth: u32) -> PyResult<Vec<String>> {
        let vs = self.inner.singular_vectors(depth, 0..=self.inner.bounds().charge).map_err(err)?;
        Ok(vs.iter().map(|v| v.display(self.inner.alg())).collect())
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("Module({:?}, dim={})", self.inner.kind(), self.inner.total_dim())
    }
}

/// Parameters (λ, l, k, c, μ, a, b) of L(λ,l,k,c) ⊗ L_{a,b}(μ) as rational strings.
#[pyclass(frozen)]
struct TensorParams {
    alg: Arc<SimpleLieAlgebra>,
    inner: CoreParams,
}

#[pymethods]
impl TensorParams {
    #[new]
    #[pyo3(signature = (lam, l, k, c, mu, a, b, algebra=None))]
    #[allow(clippy::too_many_arguments)]
    fn new(lam: &str, l: &str, k: &str, c: &str, mu: &str, a: &str, b: &str, algebra: Option<Algebra>) -> PyResult<Self> {
        let alg = algebra.unwrap_or_else(Algebra::sl2).inner;
        let hw = hw_params(&alg, lam, l, k, c)?;
        let mu = parse_weight(&alg, mu).map_err(err)?;
        let p = |s: &str| scalar::parse(s).map_err(err);
        let inner = CoreParams::new(hw, mu, p(a)?, p(b)?);
        Ok(TensorParams { alg, inner })
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "TensorParams(lam={}, l={}, k={}, c={}, mu={}, a={}, b={})",
            p.hw.lambda,
            scalar::fmt(&p.hw.l),
            scalar::fmt(&p.hw.k),
            scalar::fmt(&p.hw.c),
            p.mu,
            scalar::fmt(&p.a),
            scalar::fmt(&p.b)
        )
    }
}

/// Irreducibility verdict as a dict.
#[pyfunction]
#[pyo3(signature = (params, depth=2, charge=2, window=10, pbound=1, symbolic=true, convention="right"))]
fn is_irreducible(
    py: Python<'_>,
    params: &TensorParams,
    depth: u32,
    charge: i64,
    window: i64,
    pbound: u32,
    symbolic: bool,
    convention: &str,
) -> PyResult<Py<PyAny>> {
    let convention = match convention {
        "right" => PsiConvention::Right,
        "left" => PsiConvention::Left,
        other => return Err(AffvirError::new_err(format!("unknown convention {other:?}"))),
    };
    let opts = IrredOptions { bounds: Bounds::new(depth, charge), window, pbound, symbolic, convention, ..IrredOptions::default() };
    let v = py.detach(|| core_is_irreducible(params.alg.clone(), &params.inner, &opts)).map_err(err)?;
    to_py(py, &serde_json::to_value(v).expect("verdict serializes"))
}

/// Labels of the annihilator generators of the top vector.
#[pyfunction]
#[pyo3(signature = (params, depth=2, charge=2, vir_depth=2))]
fn ann_labels(params: &TensorParams, depth: u32, charge: i64, vir_depth: u32) -> PyResult<Vec<String>> {
    let ann = ann_generators(params.alg.clone(), &params.inner.hw, Bounds::new(depth, charge), vir_depth, AnnMode::Auto).map_err(err)?;
    Ok(ann.labels())
}

/// dim End of the truncated tensor module, and of two copies of it when `with_doubled`.
#[pyfunction]
#[pyo3(signature = (params, depth=1, charge=1, window=3, with_doubled=false))]
fn endo_dim(py: Python<'_>, params: &TensorParams, depth: u32, charge: i64, window: i64, with_doubled: bool) -> PyResult<(usize, Option<usize>)> {
    py.detach(|| {
        let alg = params.alg.clone();
        let q = build_verma(alg.clone(), params.inner.hw.clone(), Bounds::new(depth, charge))?.irreducible_quotient()?;
        let fin = finite_irrep(&alg, &params.inner.mu)?;
        let a = scalar::frac_part(&params.inner.a);
        let ctx = TensorContext::new(Arc::new(q), Arc::new(fin), a, params.inner.b.clone(), window);
        let table = ActionTable::new(&ctx, &ClosureMoves::standard(alg.dim()))?;
        let blocks = TensorBlocks::new(&ctx, &table);
        Ok((endo_dimension(&blocks), with_doubled.then(|| endo_dimension(&doubled(&blocks)))))
    })
    .map_err(err)
}

/// Whether two parameter tuples give isomorphic modules, and the first differing component.
#[pyfunction]
fn iso_check(p1: &TensorParams, p2: &TensorParams) -> (bool, Option<String>) {
    let r = iso_params_check(&p1.inner, &p2.inner);
    (r.isomorphic, r.first_difference)
}

/// Runs a built-in worked example; raises AffvirError on any mismatch.
#[pyfunction]
fn run_preset(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    let v = py.detach(|| core_preset(name)).map_err(err)?;
    to_py(py, &v)
}

#[pymodule]
fn affvir(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("AffvirError", m.py().get_type::<AffvirError>())?;
    m.add_class::<Algebra>()?;
    m.add_class::<Module>()?;
    m.add_class::<TensorParams>()?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(ann_labels, m)?)?;
    m.add_function(wrap_pyfunction!(endo_dim, m)?)?;
    m.add_function(wrap_pyfunction!(iso_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_preset, m)?)?;
    Ok(())
}
