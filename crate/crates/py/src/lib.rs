//! Python bindings. Elements are passed around by name.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use quantale_core::json::{self as qjson, Structure};
use quantale_core::{catalog, Elem, Error, HomKind, Limits, SupLattice};
use serde_json::Value;

create_exception!(
    quantale,
    QuantaleError,
    PyException,
    "A structure failed validation or a computation failed."
);
create_exception!(
    quantale,
    SizeCapError,
    QuantaleError,
    "A structure would exceed the element cap."
);
create_exception!(
    quantale,
    ParseError,
    QuantaleError,
    "Input could not be parsed."
);

fn err(e: Error) -> PyErr {
    match e {
        Error::SizeCapExceeded { .. } => SizeCapError::new_err(e.to_string()),
        Error::Parse { .. } | Error::UnknownName(_) => ParseError::new_err(e.to_string()),
        _ => QuantaleError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(xs) => {
            let list = PyList::empty(py);
            for x in xs {
                list.append(to_py(py, x)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn elem(l: &SupLattice, name: &str) -> PyResult<Elem> {
    l.index_of(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown element {name:?}")))
}

fn kind_arg(kind: Option<&str>) -> PyResult<Option<HomKind>> {
    Ok(match kind {
        None => None,
        Some("lattice") => Some(HomKind::Lattice),
        Some("left") => Some(HomKind::Left),
        Some("right") => Some(HomKind::Right),
        Some("both") => Some(HomKind::Both),
        Some(k) => return Err(PyValueError::new_err(format!("unknown hom kind {k:?}"))),
    })
}

/// Reads `catalog:NAME` or a JSON document.
fn read(source: &str, cap: usize) -> Result<Structure, Error> {
    if source.starts_with("catalog:") {
        catalog::load(source)
    } else {
        qjson::parse_structure(source, &catalog::load, &Limits::with_cap(cap))
    }
}

/// A finite unital quantale.
#[pyclass(frozen, module = "quantale")]
pub struct Quantale {
    inner: Arc<quantale_core::Quantale>,
}

#[pymethods]
impl Quantale {
    /// Loads a quantale (or monoid) from `catalog:NAME` or JSON text.
    #[staticmethod]
    #[pyo3(signature = (source, cap = 16))]
    fn load(source: &str, cap: usize) -> PyResult<Self> {
        let inner = read(source, cap)
            .and_then(Structure::into_quantale)
            .map_err(err)?;
        Ok(Quantale { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("<Quantale with {} elements>", self.inner.len())
    }

    fn __eq__(&self, other: &Quantale) -> bool {
        *self.inner == *other.inner
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.lattice().names().to_vec()
    }

    #[getter]
    fn unit(&self) -> String {
        self.inner.lattice().name(self.inner.unit()).to_string()
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let l = self.inner.lattice();
        Ok(l.name(self.inner.mul(elem(l, a)?, elem(l, b)?)).to_string())
    }

    fn join(&self, a: &str, b: &str) -> PyResult<String> {
        let l = self.inner.lattice();
        Ok(l.name(l.join2(elem(l, a)?, elem(l, b)?)).to_string())
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        let l = self.inner.lattice();
        Ok(l.leq(elem(l, a)?, elem(l, b)?))
    }

    /// Largest `x` with `b.x <= a`.
    fn left_residual(&self, b: &str, a: &str) -> PyResult<String> {
        let l = self.inner.lattice();
        Ok(l.name(self.inner.left_residual(elem(l, b)?, elem(l, a)?))
            .to_string())
    }

    /// Largest `x` with `x.b <= a`.
    fn right_residual(&self, a: &str, b: &str) -> PyResult<String> {
        let l = self.inner.lattice();
        Ok(l.name(self.inner.right_residual(elem(l, a)?, elem(l, b)?))
            .to_string())
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }

    fn opposite(&self) -> Quantale {
        Quantale {
            inner: Arc::new(self.inner.opposite()),
        }
    }

    fn isomorphic(&self, other: &Quantale) -> bool {
        quantale_core::quantale_isomorphic(&self.inner, &other.inner).is_some()
    }

    /// The regular bimodule.
    fn regular(&self) -> Module {
        Module {
            inner: quantale_core::Module::regular(&self.inner),
        }
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &qjson::quantale_json(&self.inner))
    }
}

/// A sup-lattice with optional left and right quantale actions.
#[pyclass(frozen, module = "quantale")]
pub struct Module {
    inner: quantale_core::Module,
}

impl Module {
    fn left(&self) -> PyResult<quantale_core::Module> {
        if self.inner.left().is_some() {
            Ok(self.inner.left_view())
        } else if self.inner.right_ring().is_some_and(|q| q.is_commutative()) {
            Ok(self.inner.mirror())
        } else {
            Err(err(Error::MissingAction("no left action".into())))
        }
    }
}

#[pymethods]
impl Module {
    /// Loads a module, bimodule, lattice or quantale (as its regular
    /// bimodule) from `catalog:NAME` or JSON text.
    #[staticmethod]
    #[pyo3(signature = (source, cap = 16))]
    fn load(source: &str, cap: usize) -> PyResult<Self> {
        let inner = read(source, cap)
            .and_then(Structure::into_module)
            .map_err(err)?;
        Ok(Module { inner })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "<Module ({}) with {} elements>",
            self.side(),
            self.inner.len()
        )
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.lattice().names().to_vec()
    }

    /// "left", "right", "bimodule" or "lattice".
    #[getter]
    fn side(&self) -> &'static str {
        match (self.inner.left().is_some(), self.inner.right().is_some()) {
            (true, true) => "bimodule",
            (true, false) => "left",
            (false, true) => "right",
            (false, false) => "lattice",
        }
    }

    #[getter]
    fn left_ring(&self) -> Option<Quantale> {
        self.inner
            .left_ring()
            .map(|q| Quantale { inner: q.clone() })
    }

    #[getter]
    fn right_ring(&self) -> Option<Quantale> {
        self.inner
            .right_ring()
            .map(|q| Quantale { inner: q.clone() })
    }

    fn act_left(&self, a: &str, x: &str) -> PyResult<String> {
        let q = self.inner.require_left("act_left").map_err(err)?;
        let l = self.inner.lattice();
        Ok(
            l.name(self.inner.act_left(elem(q.lattice(), a)?, elem(l, x)?))
                .to_string(),
        )
    }

    fn act_right(&self, x: &str, a: &str) -> PyResult<String> {
        let q = self.inner.require_right("act_right").map_err(err)?;
        let l = self.inner.lattice();
        Ok(
            l.name(self.inner.act_right(elem(l, x)?, elem(q.lattice(), a)?))
                .to_string(),
        )
    }

    /// The same lattice with only the left (or right) action, or none.
    fn view(&self, side: &str) -> PyResult<Module> {
        let inner = match side {
            "left" => self.left()?,
            "right" => {
                self.inner.require_right("view").map_err(err)?;
                self.inner.right_view()
            }
            "lattice" => self.inner.plain(),
            s => return Err(PyValueError::new_err(format!("unknown side {s:?}"))),
        };
        Ok(Module { inner })
    }

    /// Homomorphisms into `other`, each as a list of (element, image) pairs.
    #[pyo3(signature = (other, kind = None, cap = 16))]
    fn homs(
        &self,
        other: &Module,
        kind: Option<&str>,
        cap: usize,
    ) -> PyResult<Vec<Vec<(String, String)>>> {
        let limits = Limits::with_cap(cap);
        let set = match kind_arg(kind)? {
            Some(k) => quantale_core::enumerate_homs_of_kind(&self.inner, &other.inner, k, &limits),
            None => quantale_core::enumerate_homs(&self.inner, &other.inner, &limits),
        }
        .map_err(err)?;
        let (s, d) = (self.inner.lattice(), other.inner.lattice());
        Ok(set
            .homs()
            .map(|h| {
                (0..s.len())
                    .map(|x| (s.name(x).to_string(), d.name(h.apply(x)).to_string()))
                    .collect()
            })
            .collect())
    }

    /// Endomorphism quantale of the left module.
    #[pyo3(signature = (cap = 16))]
    fn end(&self, cap: usize) -> PyResult<Quantale> {
        let e = quantale_core::end_quantale(&self.left()?, &Limits::with_cap(cap)).map_err(err)?;
        Ok(Quantale { inner: e.quantale })
    }

    /// Hom(M, Q) as an End(M)-Q bimodule.
    #[pyo3(signature = (cap = 16))]
    fn dual(&self, cap: usize) -> PyResult<Module> {
        let d = quantale_core::dual_module(&self.left()?, &Limits::with_cap(cap)).map_err(err)?;
        Ok(Module { inner: d.module })
    }

    /// Elements of the trace ideal, named as elements of Q.
    #[pyo3(signature = (cap = 16))]
    fn trace(&self, cap: usize) -> PyResult<Vec<String>> {
        let m = self.left()?;
        let t = quantale_core::trace(&m, &Limits::with_cap(cap)).map_err(err)?;
        let l = m.left_ring().unwrap().lattice();
        Ok(t.elements()
            .into_iter()
            .map(|x| l.name(x).to_string())
            .collect())
    }

    #[pyo3(signature = (cap = 16))]
    fn is_generator(&self, cap: usize) -> PyResult<bool> {
        quantale_core::is_generator(&self.left()?, &Limits::with_cap(cap)).map_err(err)
    }

    #[pyo3(signature = (cap = 16))]
    fn is_projective(&self, cap: usize) -> PyResult<bool> {
        quantale_core::is_projective(&self.left()?, &Limits::with_cap(cap)).map_err(err)
    }

    /// A dict with the generator, projective and alpha/beta findings.
    #[pyo3(signature = (cap = 16))]
    fn progenerator_report<'py>(
        &self,
        py: Python<'py>,
        cap: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let r =
            quantale_core::is_progenerator(&self.left()?, &Limits::with_cap(cap)).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("progenerator", r.progenerator)?;
        d.set_item("generator", r.generator)?;
        d.set_item("projective", r.projective)?;
        d.set_item("alpha_surjective", r.alpha_surjective)?;
        d.set_item("alpha_injective", r.alpha_injective)?;
        d.set_item("beta_surjective", r.beta_surjective)?;
        d.set_item("beta_injective", r.beta_injective)?;
        Ok(d)
    }

    fn isomorphic(&self, other: &Module) -> bool {
        quantale_core::module_isomorphic(&self.inner, &other.inner).is_some()
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &qjson::module_json(&self.inner))
    }
}

/// Tensor product of a right module `m` and a left module `n` over the same
/// quantale; a left module over a commutative quantale is accepted for `m`.
#[pyfunction]
#[pyo3(signature = (m, n, cap = 16))]
fn tensor(m: &Module, n: &Module, cap: usize) -> PyResult<Module> {
    let mm = if m.inner.right().is_some() {
        m.inner.clone()
    } else if m.inner.left_ring().is_some_and(|q| q.is_commutative()) {
        m.inner.mirror()
    } else {
        return Err(err(Error::MissingAction(
            "first factor has no right action".into(),
        )));
    };
    let t = quantale_core::tensor_product(&mm, &n.inner, &Limits::with_cap(cap)).map_err(err)?;
    Ok(Module { inner: t.module })
}

/// Bounded search for a Morita equivalence. Returns the certificate as a
/// dict, or None if nothing was found within `bound`.
#[pyfunction]
#[pyo3(signature = (q, r, bound = 4, cap = 16))]
fn morita<'py>(
    py: Python<'py>,
    q: &Quantale,
    r: &Quantale,
    bound: usize,
    cap: usize,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let s =
        quantale_core::morita_equivalent(&q.inner, &r.inner, bound, &[], &Limits::with_cap(cap))
            .map_err(err)?;
    s.certificate
        .map(|c| to_py(py, &qjson::certificate_json(&c)))
        .transpose()
}

/// Re-checks a certificate given as JSON text. Returns True or raises.
#[pyfunction]
#[pyo3(signature = (text, cap = 16))]
fn verify_certificate(text: &str, cap: usize) -> PyResult<bool> {
    let limits = Limits::with_cap(cap);
    let c = match read(text, cap).map_err(err)? {
        Structure::Certificate(c) => c,
        other => {
            return Err(PyValueError::new_err(format!(
                "expected a certificate, got a {}",
                other.kind()
            )))
        }
    };
    let family = vec![(
        "regular".to_string(),
        quantale_core::Module::right_regular(&c.q),
    )];
    quantale_core::verify_certificate(&c.q, &c.r, &c, &family, &limits).map_err(err)?;
    Ok(true)
}

/// Names of catalog entries, optionally restricted to one kind.
#[pyfunction]
#[pyo3(signature = (kind = None))]
fn catalog_names(kind: Option<&str>) -> Vec<&'static str> {
    catalog::list(kind)
}

/// The stored JSON of a catalog entry.
#[pyfunction]
fn catalog_entry<'py>(py: Python<'py>, name: &str) -> PyResult<Bound<'py, PyAny>> {
    let e = catalog::entry(name).map_err(err)?;
    let v: Value =
        serde_json::from_str(e.payload).map_err(|x| PyValueError::new_err(x.to_string()))?;
    to_py(py, &v)
}

#[pymodule]
fn quantale(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("QuantaleError", m.py().get_type::<QuantaleError>())?;
    m.add("SizeCapError", m.py().get_type::<SizeCapError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("SCHEMA", qjson::SCHEMA)?;
    m.add_class::<Quantale>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(tensor, m)?)?;
    m.add_function(wrap_pyfunction!(morita, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    Ok(())
}
