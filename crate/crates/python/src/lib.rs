//! Python bindings: rings, polynomials, ideals, image closures, group
//! actions and the scenario runner.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyString;

use dcoset::action::GroupActionSpec;
use dcoset::cli::{parse_point, parse_poly};
use dcoset::fforacle::{cross_check, FpConfig};
use dcoset::geometry::ConstructibleSet;
use dcoset::groebner::Ideal;
use dcoset::morphism::PolyMap;
use dcoset::polyring::{MonomialOrder, Polynomial, Rational, RationalPoint, Ring};
use dcoset::scenarios::{run_named, scenario_catalog, Report, ScenarioName, Variant};

create_exception!(dcoset, DcosetError, PyValueError);

fn err(e: dcoset::Error) -> PyErr {
    DcosetError::new_err(e.to_string())
}

fn order_of(name: &str) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        _ => Err(DcosetError::new_err(format!("unknown monomial order `{name}`"))),
    }
}

/// Accepts Polynomial objects or strings in the polynomial syntax.
fn to_poly(obj: &Bound<'_, PyAny>, ring: &Ring) -> PyResult<Polynomial> {
    if let Ok(p) = obj.cast::<PyPolynomial>() {
        return Ok(p.get().0.clone());
    }
    let text: String = obj.extract()?;
    parse_poly(&text, ring).map_err(err)
}

fn to_polys(objs: &[Bound<'_, PyAny>], ring: &Ring) -> PyResult<Vec<Polynomial>> {
    objs.iter().map(|o| to_poly(o, ring)).collect()
}

/// Coordinates may be ints, strings such as "-2/3", or fractions.Fraction.
fn to_point(coords: &[Bound<'_, PyAny>]) -> PyResult<RationalPoint> {
    let parts: Vec<String> = coords
        .iter()
        .map(|c| Ok(c.str()?.to_string()))
        .collect::<PyResult<_>>()?;
    parse_point(&parts.join(",")).map_err(err)
}

fn to_rationals(coords: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    Ok(to_point(coords)?.coords().to_vec())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

#[pyclass(name = "Ring", module = "dcoset", frozen)]
struct PyRing(Ring);

#[pymethods]
impl PyRing {
    #[new]
    #[pyo3(signature = (vars, order = "grevlex"))]
    fn new(vars: Vec<String>, order: &str) -> PyResult<Self> {
        Ring::new(vars, order_of(order)?).map(PyRing).map_err(err)
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.0.vars().to_vec()
    }

    fn var(&self, name: &str) -> PyResult<PyPolynomial> {
        self.0.var(name).map(PyPolynomial).map_err(err)
    }

    fn parse(&self, text: &str) -> PyResult<PyPolynomial> {
        parse_poly(text, &self.0).map(PyPolynomial).map_err(err)
    }

    fn ideal(&self, gens: Vec<Bound<'_, PyAny>>) -> PyResult<PyIdeal> {
        let gens = to_polys(&gens, &self.0)?;
        Ideal::new(&self.0, gens).map(PyIdeal).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.0.vars())
    }
}

#[pyclass(name = "Polynomial", module = "dcoset", frozen)]
struct PyPolynomial(Polynomial);

impl PyPolynomial {
    fn other(&self, obj: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        if let Ok(n) = obj.extract::<i64>() {
            return Ok(self.0.ring().constant(Rational::from_integer(n.into())));
        }
        to_poly(obj, self.0.ring())
    }
}

#[pymethods]
impl PyPolynomial {
    fn __add__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.checked_add(&self.other(o)?).map(PyPolynomial).map_err(err)
    }

    fn __radd__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(o)
    }

    fn __sub__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.checked_sub(&self.other(o)?).map(PyPolynomial).map_err(err)
    }

    fn __rsub__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.other(o)?.checked_sub(&self.0).map(PyPolynomial).map_err(err)
    }

    fn __mul__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.checked_mul(&self.other(o)?).map(PyPolynomial).map_err(err)
    }

    fn __rmul__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(o)
    }

    fn __neg__(&self) -> Self {
        PyPolynomial(-&self.0)
    }

    fn __pow__(&self, e: u32, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        PyPolynomial(self.0.pow(e))
    }

    fn __eq__(&self, o: &Bound<'_, PyAny>) -> bool {
        self.other(o).is_ok_and(|p| p == self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn total_degree(&self) -> Option<u64> {
        self.0.total_degree()
    }

    /// Exact value at a point, as a fractions.Fraction.
    fn eval<'py>(&self, py: Python<'py>, point: Vec<Bound<'py, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
        let v = self.0.eval_at(&to_point(&point)?).map_err(err)?;
        fraction(py, &v)
    }
}

#[pyclass(name = "Ideal", module = "dcoset", frozen)]
struct PyIdeal(Ideal);

#[pymethods]
impl PyIdeal {
    #[getter]
    fn generators(&self) -> Vec<PyPolynomial> {
        self.0.generators().iter().cloned().map(PyPolynomial).collect()
    }

    /// Reduced monic Gröbner basis in the ring's order.
    fn groebner_basis(&self) -> Vec<PyPolynomial> {
        self.0.groebner_basis().iter().cloned().map(PyPolynomial).collect()
    }

    fn contains(&self, f: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.0.member(&to_poly(f, self.0.ring())?).map_err(err)
    }

    fn radical_contains(&self, f: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.0.radical_member(&to_poly(f, self.0.ring())?).map_err(err)
    }

    fn reduce(&self, f: &Bound<'_, PyAny>) -> PyResult<PyPolynomial> {
        self.0
            .reduce(&to_poly(f, self.0.ring())?)
            .map(PyPolynomial)
            .map_err(err)
    }

    fn eliminate(&self, drop: Vec<String>) -> PyResult<PyIdeal> {
        let names: Vec<&str> = drop.iter().map(String::as_str).collect();
        self.0.eliminate(&names).map(PyIdeal).map_err(err)
    }

    fn saturate(&self, g: &Bound<'_, PyAny>) -> PyResult<PyIdeal> {
        self.0.saturate(&to_poly(g, self.0.ring())?).map(PyIdeal).map_err(err)
    }

    fn intersect(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        self.0.intersect(&other.0).map(PyIdeal).map_err(err)
    }

    fn is_unit(&self) -> bool {
        self.0.is_unit()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __eq__(&self, other: &PyIdeal) -> PyResult<bool> {
        self.0.equals(&other.0).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ideal('{}')", self.0)
    }
}

/// Ideal of the Zariski closure of the image of `V(ideal) \ V(exclude)`
/// under the map with the given components.
#[pyfunction]
#[pyo3(signature = (ring, components, target, ideal = Vec::new(), exclude = Vec::new()))]
fn image_closure(
    ring: &PyRing,
    components: Vec<Bound<'_, PyAny>>,
    target: Vec<String>,
    ideal: Vec<Bound<'_, PyAny>>,
    exclude: Vec<Bound<'_, PyAny>>,
) -> PyResult<PyIdeal> {
    let src = &ring.0;
    let tgt = Ring::new(target, src.order().clone()).map_err(err)?;
    let map = PolyMap::new(src, &tgt, to_polys(&components, src)?).map_err(err)?;
    let carrier = Ideal::new(src, to_polys(&ideal, src)?).map_err(err)?;
    let set = if exclude.is_empty() {
        ConstructibleSet::closed(carrier)
    } else {
        let excluded = Ideal::new(src, to_polys(&exclude, src)?).map_err(err)?;
        ConstructibleSet::locally_closed(carrier, excluded).map_err(err)?
    };
    let closure = map.image_closure(&set).map_err(err)?;
    Ok(PyIdeal(closure.ideal().clone()))
}

#[pyclass(name = "GroupAction", module = "dcoset", frozen)]
struct PyGroupAction(GroupActionSpec);

#[pymethods]
impl PyGroupAction {
    /// `action` gives the image coordinates in the space variables and the
    /// parameters; `constraint` cuts the group out of parameter space.
    #[new]
    #[pyo3(signature = (ring, params, action, identity, constraint = Vec::new()))]
    fn new(
        ring: &PyRing,
        params: Vec<String>,
        action: Vec<Bound<'_, PyAny>>,
        identity: Vec<Bound<'_, PyAny>>,
        constraint: Vec<Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let names: Vec<&str> = params.iter().map(String::as_str).collect();
        let joint = GroupActionSpec::joint_ring(&ring.0, &names).map_err(err)?;
        GroupActionSpec::new(
            "python",
            &ring.0,
            &names,
            to_polys(&constraint, &joint)?,
            to_polys(&action, &joint)?,
            to_rationals(&identity)?,
        )
        .map(PyGroupAction)
        .map_err(err)
    }

    fn is_invariant(&self, f: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.0.check_invariant(&to_poly(f, self.0.space())?).map_err(err)
    }

    fn orbit_closure(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<PyIdeal> {
        let c = self.0.orbit_closure(&to_point(&point)?).map_err(err)?;
        Ok(PyIdeal(c.ideal().clone()))
    }

    fn same_orbit(&self, p: Vec<Bound<'_, PyAny>>, q: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
        self.0.same_orbit(&to_point(&p)?, &to_point(&q)?).map_err(err)
    }
}

#[pyclass(name = "Report", module = "dcoset", frozen)]
struct PyReport(Report);

#[pymethods]
impl PyReport {
    #[getter]
    fn scenario(&self) -> String {
        self.0.scenario.clone()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    /// (id, status, detail) for every check, in run order.
    #[getter]
    fn checks(&self) -> Vec<(String, String, String)> {
        self.0
            .checks
            .iter()
            .map(|c| (c.id.clone(), c.status.to_string(), c.detail.clone()))
            .collect()
    }

    fn failed_checks(&self) -> Vec<String> {
        self.0.failed_checks().into_iter().map(String::from).collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

fn variant(mutated: bool) -> Variant {
    if mutated {
        Variant::Mutated
    } else {
        Variant::Faithful
    }
}

#[pyfunction]
#[pyo3(signature = (scenario, mutated = false))]
fn verify(py: Python<'_>, scenario: &str, mutated: bool) -> PyResult<PyReport> {
    py.detach(|| run_named(scenario, variant(mutated)))
        .map(PyReport)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (scenario, prime, mutated = false))]
fn oracle(py: Python<'_>, scenario: &str, prime: u64, mutated: bool) -> PyResult<PyReport> {
    let name: ScenarioName = scenario.parse().map_err(err)?;
    let cfg = FpConfig::new(prime).map_err(err)?;
    py.detach(|| cross_check(name, variant(mutated), cfg))
        .map(PyReport)
        .map_err(err)
}

/// Scenario names with their check ids.
#[pyfunction]
fn catalog<'py>(py: Python<'py>) -> Vec<(Bound<'py, PyString>, Vec<String>)> {
    scenario_catalog()
        .into_iter()
        .map(|s| {
            let ids = s.checks.iter().map(|c| c.id.to_string()).collect();
            (PyString::new(py, s.scenario.as_str()), ids)
        })
        .collect()
}

#[pymodule]
#[pyo3(name = "dcoset")]
fn dcoset_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DcosetError", m.py().get_type::<DcosetError>())?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyGroupAction>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(image_closure, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    Ok(())
}
