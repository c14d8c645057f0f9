//! Python bindings: permutation groups, modules over `GF(p)G`, scenarios
//! and verification reports.

#![allow(clippy::useless_conversion)]

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use green_core::catalog;
use green_core::green::{verify_scenario, GreenReport, Scenario as CoreScenario, SCHEMA_VERSION};
use green_core::modrep::{self, FpModule, Indecomposable, ModuleJson};
use green_core::perm::PermGroup as CorePermGroup;
use green_core::Error;

create_exception!(green_py, TheoremViolation, PyException);
create_exception!(green_py, Undecided, PyException);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::TheoremViolation(m) => TheoremViolation::new_err(m),
        Error::Undecided(m) => Undecided::new_err(m),
        other => PyValueError::new_err(other.to_string()),
    }
}

#[pyclass(name = "PermGroup", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<CorePermGroup>,
}

#[pymethods]
impl PermGroup {
    #[new]
    fn new(degree: usize, generators: Vec<String>) -> PyResult<Self> {
        let inner = CorePermGroup::from_strings(degree, &generators).map_err(to_py)?;
        Ok(Self { inner: Arc::new(inner) })
    }

    /// One of the named groups C2, C3, C4, V4, C6, S3, D8, A4, S4, A5.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(Self {
            inner: catalog::group(name).map_err(to_py)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| g.to_string()).collect()
    }

    fn trivial_module(&self, p: u32) -> PyResult<Module> {
        check_prime(p)?;
        Ok(FpModule::trivial(self.inner.clone(), p).into())
    }

    fn regular_module(&self, p: u32) -> PyResult<Module> {
        check_prime(p)?;
        Ok(FpModule::regular(self.inner.clone(), p).into())
    }

    fn permutation_module(&self, p: u32) -> PyResult<Module> {
        check_prime(p)?;
        Ok(FpModule::natural_permutation(self.inner.clone(), p).into())
    }

    fn __repr__(&self) -> String {
        format!("PermGroup(order={}, generators={:?})", self.order(), self.generators())
    }
}

fn check_prime(p: u32) -> PyResult<()> {
    if green_core::fp::is_prime(p) {
        Ok(())
    } else {
        Err(PyValueError::new_err(format!("{p} is not prime")))
    }
}

#[pyclass(name = "Module", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Module {
    inner: FpModule,
}

impl From<FpModule> for Module {
    fn from(inner: FpModule) -> Self {
        Self { inner }
    }
}

impl Module {
    fn indecomposable(&self, seed: u64) -> PyResult<Indecomposable> {
        Indecomposable::certify(&self.inner, seed)
            .map_err(to_py)?
            .ok_or_else(|| PyValueError::new_err("module is not indecomposable"))
    }
}

#[pymethods]
impl Module {
    /// Parses the module file format `{p, group_ref, dim, action}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let json: ModuleJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(json.parse(None).map_err(to_py)?.into())
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&ModuleJson::emit(&self.inner)).expect("modules serialize")
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.prime()
    }

    #[getter]
    fn group(&self) -> PermGroup {
        PermGroup {
            inner: self.inner.group().clone(),
        }
    }

    fn dual(&self) -> Module {
        self.inner.dual().into()
    }

    fn direct_sum(&self, other: &Module) -> PyResult<Module> {
        Ok(self.inner.direct_sum(&other.inner).map_err(to_py)?.into())
    }

    fn hom_dim(&self, other: &Module) -> PyResult<usize> {
        modrep::hom_dim(&self.inner, &other.inner).map_err(to_py)
    }

    fn is_isomorphic(&self, other: &Module) -> PyResult<bool> {
        modrep::is_isomorphic(&self.inner, &other.inner).map_err(to_py)
    }

    fn is_projective(&self) -> PyResult<bool> {
        modrep::is_projective(&self.inner).map_err(to_py)
    }

    /// `(dim, multiplicity)` of each isomorphism class of summands.
    #[pyo3(signature = (seed=0))]
    fn decompose(&self, seed: u64) -> PyResult<Vec<(usize, usize)>> {
        let dec = modrep::decompose(&self.inner, seed).map_err(to_py)?;
        Ok(dec
            .summands
            .iter()
            .map(|s| (s.indecomposable.dim(), s.multiplicity))
            .collect())
    }

    /// One representative module per isomorphism class of summands.
    #[pyo3(signature = (seed=0))]
    fn summands(&self, seed: u64) -> PyResult<Vec<Module>> {
        let dec = modrep::decompose(&self.inner, seed).map_err(to_py)?;
        Ok(dec.summands.iter().map(|s| s.module().clone().into()).collect())
    }

    /// `(order, generators)` of a vertex; the module must be indecomposable.
    #[pyo3(signature = (seed=0))]
    fn vertex(&self, seed: u64) -> PyResult<(usize, Vec<String>)> {
        let v = modrep::vertex(&self.indecomposable(seed)?).map_err(to_py)?;
        Ok((v.subgroup.order(), v.subgroup.generator_strings()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Module(p={}, dim={}, group_order={})",
            self.inner.prime(),
            self.inner.dim(),
            self.inner.group().order()
        )
    }
}

#[pyclass(name = "Scenario", frozen)]
pub struct Scenario {
    inner: CoreScenario,
}

#[pymethods]
impl Scenario {
    /// Builds a scenario from its JSON config.
    #[new]
    fn new(config_json: &str) -> PyResult<Self> {
        let config: catalog::ScenarioConfig =
            serde_json::from_str(config_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self {
            inner: CoreScenario::new(&config).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        let config = if name == catalog::degenerate_scenario().name {
            catalog::degenerate_scenario()
        } else {
            catalog::scenario(name).map_err(to_py)?
        };
        Ok(Self {
            inner: CoreScenario::new(&config).map_err(to_py)?,
        })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p
    }

    #[getter]
    fn normalizer_condition(&self) -> bool {
        self.inner.normalizer_condition
    }

    /// `(|G|, |H|, |D|)`.
    #[getter]
    fn orders(&self) -> (usize, usize, usize) {
        (self.inner.g.order(), self.inner.h.order(), self.inner.d.order())
    }

    /// Subgroup orders of the families, keyed `x`, `y`, `u`.
    fn family_orders(&self) -> Vec<(String, Vec<usize>)> {
        let f = &self.inner.families;
        [("x", &f.x), ("y", &f.y), ("u", &f.u)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.iter().map(|m| m.subgroup.order()).collect()))
            .collect()
    }

    fn config_json(&self) -> String {
        serde_json::to_string(&self.inner.config).expect("configs serialize")
    }

    #[pyo3(signature = (seed=0))]
    fn verify(&self, py: Python<'_>, seed: u64) -> PyResult<Report> {
        let inner = py.detach(|| verify_scenario(&self.inner, seed)).map_err(to_py)?;
        Ok(Report { inner })
    }

    fn __repr__(&self) -> String {
        let (g, h, d) = self.orders();
        format!("Scenario({}, |G|={g}, |H|={h}, |D|={d}, p={})", self.name(), self.p())
    }
}

#[pyclass(name = "Report", frozen)]
pub struct Report {
    inner: GreenReport,
}

#[pymethods]
impl Report {
    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn schema_version(&self) -> String {
        self.inner.schema_version.clone()
    }

    /// `(h_id, g_id, dim_h, dim_g)` for each correspondence pair.
    #[getter]
    fn pairs(&self) -> Vec<(String, String, usize, usize)> {
        self.inner
            .correspondence_pairs
            .iter()
            .map(|c| {
                let dim = |e: Option<&green_core::green::ModuleEntry>| e.map_or(0, |e| e.dim);
                (c.h.clone(), c.g.clone(), dim(self.inner.entry_h(&c.h)), dim(self.inner.entry_g(&c.g)))
            })
            .collect()
    }

    /// `(n1, n2, quotient_h, quotient_g)` rows of the fully-faithfulness table.
    #[getter]
    fn ff_table(&self) -> Vec<(String, String, usize, usize)> {
        self.inner
            .ff_table
            .iter()
            .map(|r| (r.n1.clone(), r.n2.clone(), r.quotient_h, r.quotient_g))
            .collect()
    }

    #[getter]
    fn failures(&self) -> Vec<String> {
        self.inner.failures.clone()
    }

    fn is_trivial_pair(&self, index: usize) -> PyResult<bool> {
        let c = self
            .inner
            .correspondence_pairs
            .get(index)
            .ok_or_else(|| PyValueError::new_err("pair index out of range"))?;
        let h = self.inner.entry_h(&c.h).is_some_and(|e| e.trivial);
        let g = self.inner.entry_g(&c.g).is_some_and(|e| e.trivial);
        Ok(h && g)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("reports serialize")
    }

    fn __repr__(&self) -> String {
        format!(
            "Report({}, pairs={}, passed={})",
            self.inner.scenario.name,
            self.inner.correspondence_pairs.len(),
            self.passed()
        )
    }
}

/// Names of the built-in scenarios.
#[pyfunction]
fn catalog_scenarios() -> Vec<String> {
    catalog::scenarios()
        .into_iter()
        .chain([catalog::degenerate_scenario()])
        .map(|s| s.name)
        .collect()
}

#[pymodule]
fn green_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PermGroup>()?;
    m.add_class::<Module>()?;
    m.add_class::<Scenario>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(catalog_scenarios, m)?)?;
    m.add("SCHEMA_VERSION", SCHEMA_VERSION)?;
    m.add("TheoremViolation", m.py().get_type::<TheoremViolation>())?;
    m.add("Undecided", m.py().get_type::<Undecided>())?;
    Ok(())
}
