//! Python bindings. Field elements cross the boundary as lists of `m`
//! coefficient ints (lowest degree first), algebra elements as lists of
//! such lists, one per group element.

use ga_lrpc::{kem, lrpc, Error, FieldElem};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

create_exception!(galrpc, DecodeFailure, PyRuntimeError, "Rank support recovery did not return a support.");
create_exception!(galrpc, FormatError, PyValueError, "Malformed serialized key or ciphertext.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::DecodeFailure | Error::DecapFailure => DecodeFailure::new_err(e.to_string()),
        Error::Format(f) => FormatError::new_err(f.to_string()),
        Error::Param(_) | Error::Structure(_) | Error::Ordering(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn format_err(e: ga_lrpc::FormatError) -> PyErr {
    FormatError::new_err(e.to_string())
}

fn rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_os_rng(),
    }
}

/// `u32` rather than `u8` so Python sees a list of ints, not `bytes`.
fn elem_out(e: &FieldElem) -> Vec<u32> {
    e.coeffs().iter().map(|&c| u32::from(c)).collect()
}

#[pyclass(name = "Field", module = "galrpc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyField(ga_lrpc::Field);

#[pymethods]
impl PyField {
    /// `modulus` is the coefficient list `c_0..c_m`; omitted means the preset.
    #[new]
    #[pyo3(signature = (q, m, modulus=None))]
    fn new(q: u32, m: usize, modulus: Option<Vec<u8>>) -> PyResult<Self> {
        let params = match modulus {
            None => ga_lrpc::FieldParams::preset(q, m),
            Some(c) if c.len() != m + 1 => Err(Error::Param(format!("modulus needs {} coefficients", m + 1))),
            Some(c) => ga_lrpc::FieldParams::new(q, c),
        }
        .map_err(to_py)?;
        Ok(PyField(ga_lrpc::Field::new(params)))
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.m()
    }

    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.0.params().modulus().iter().map(|&c| u32::from(c)).collect()
    }

    fn add(&self, a: Vec<u8>, b: Vec<u8>) -> PyResult<Vec<u32>> {
        let (a, b) = (self.0.elem(&a).map_err(to_py)?, self.0.elem(&b).map_err(to_py)?);
        Ok(elem_out(&self.0.add(&a, &b)))
    }

    fn mul(&self, a: Vec<u8>, b: Vec<u8>) -> PyResult<Vec<u32>> {
        let (a, b) = (self.0.elem(&a).map_err(to_py)?, self.0.elem(&b).map_err(to_py)?);
        Ok(elem_out(&self.0.mul(&a, &b)))
    }

    fn inv(&self, a: Vec<u8>) -> PyResult<Vec<u32>> {
        let a = self.0.elem(&a).map_err(to_py)?;
        Ok(elem_out(&self.0.inv(&a).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.0.params())
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "Group", module = "galrpc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGroup(ga_lrpc::GroupDescriptor);

#[pymethods]
impl PyGroup {
    #[staticmethod]
    fn cyclic(k: usize) -> PyResult<Self> {
        ga_lrpc::GroupDescriptor::cyclic(k).map(PyGroup).map_err(to_py)
    }

    #[staticmethod]
    fn dihedral(k: usize) -> PyResult<Self> {
        ga_lrpc::GroupDescriptor::dihedral(k).map(PyGroup).map_err(to_py)
    }

    /// Parses the `n=..` / names / 1-based rows text form.
    #[staticmethod]
    fn from_cayley_text(text: &str) -> PyResult<Self> {
        ga_lrpc::GroupDescriptor::from_cayley_text(text).map(PyGroup).map_err(to_py)
    }

    fn cayley_text(&self) -> String {
        self.0.to_cayley_text()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.0.names().to_vec()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn is_cyclic(&self) -> bool {
        self.0.is_cyclic()
    }

    fn mul(&self, i: usize, j: usize) -> PyResult<usize> {
        self.check(i)?;
        self.check(j)?;
        Ok(self.0.mul(i, j))
    }

    fn inv(&self, i: usize) -> PyResult<usize> {
        self.check(i)?;
        Ok(self.0.inv(i))
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.0)
    }
}

impl PyGroup {
    fn check(&self, i: usize) -> PyResult<()> {
        if i < self.0.order() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("index {i} out of range for order {}", self.0.order())))
        }
    }
}

#[pyclass(name = "Algebra", module = "galrpc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra(ga_lrpc::GroupAlgebra);

#[pymethods]
impl PyAlgebra {
    #[new]
    fn new(field: PyRef<'_, PyField>, group: PyRef<'_, PyGroup>) -> Self {
        PyAlgebra(ga_lrpc::GroupAlgebra::new(field.0.clone(), group.0.clone()))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField(self.0.field().clone())
    }

    fn zero(&self) -> PyElement {
        PyElement(self.0.zero())
    }

    fn one(&self) -> PyElement {
        PyElement(self.0.one())
    }

    fn basis_element(&self, i: usize) -> PyResult<PyElement> {
        if i >= self.0.n() {
            return Err(PyValueError::new_err("basis index out of range"));
        }
        Ok(PyElement(self.0.basis_element(i)))
    }

    fn element(&self, coords: Vec<Vec<u8>>) -> PyResult<PyElement> {
        let field = self.0.field();
        let coords = coords.iter().map(|c| field.elem(c)).collect::<Result<Vec<_>, _>>().map_err(to_py)?;
        self.0.element(coords).map(PyElement).map_err(to_py)
    }

    #[pyo3(signature = (seed=None))]
    fn sample(&self, seed: Option<u64>) -> PyElement {
        PyElement(self.0.sample(&mut rng(seed)))
    }

    /// A random element with every coordinate in `support`.
    #[pyo3(signature = (support, seed=None))]
    fn sample_in(&self, support: PyRef<'_, PySubspace>, seed: Option<u64>) -> PyResult<PyElement> {
        if support.0.field() != self.0.field() {
            return Err(PyValueError::new_err("support lives in a different field"));
        }
        Ok(PyElement(self.0.sample_in(&support.0, &mut rng(seed))))
    }
}

#[pyclass(name = "AlgebraElement", module = "galrpc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyElement(ga_lrpc::AlgebraElement);

#[pymethods]
impl PyElement {
    fn coords(&self) -> Vec<Vec<u32>> {
        self.0.coords().iter().map(elem_out).collect()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.add(&other.0).map(PyElement).map_err(to_py)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyElement).map_err(to_py)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.mul(&other.0).map(PyElement).map_err(to_py)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Left ideal matrix as nested lists, `lim()[i][j]` a coefficient list.
    fn lim(&self) -> Vec<Vec<Vec<u32>>> {
        self.0.lim().row_iter().map(|row| row.iter().map(elem_out).collect()).collect()
    }

    fn is_invertible(&self) -> bool {
        self.0.is_invertible()
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(PyElement).map_err(to_py)
    }

    fn support(&self) -> PySubspace {
        PySubspace(self.0.support())
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.0.to_bytes())
    }

    fn __repr__(&self) -> String {
        format!("AlgebraElement({:?})", self.coords())
    }
}

#[pyclass(name = "Subspace", module = "galrpc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySubspace(ga_lrpc::Subspace);

#[pymethods]
impl PySubspace {
    #[staticmethod]
    fn span(field: PyRef<'_, PyField>, vectors: Vec<Vec<u8>>) -> PyResult<Self> {
        let v = vectors.iter().map(|c| field.0.elem(c)).collect::<Result<Vec<_>, _>>().map_err(to_py)?;
        Ok(PySubspace(ga_lrpc::Subspace::span(&field.0, &v)))
    }

    #[staticmethod]
    #[pyo3(signature = (field, dim, seed=None))]
    fn sample(field: PyRef<'_, PyField>, dim: usize, seed: Option<u64>) -> PyResult<Self> {
        ga_lrpc::Subspace::sample(&field.0, dim, &mut rng(seed)).map(PySubspace).map_err(to_py)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Canonical (reduced echelon) basis.
    fn basis(&self) -> Vec<Vec<u32>> {
        self.0.basis().iter().map(elem_out).collect()
    }

    fn contains(&self, v: Vec<u8>) -> PyResult<bool> {
        let v = self.0.field().elem(&v).map_err(to_py)?;
        Ok(self.0.contains(&v))
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.sum(&other.0).map(PySubspace).map_err(to_py)
    }

    fn intersect(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.intersect(&other.0).map(PySubspace).map_err(to_py)
    }

    /// Span of all products `e·f`.
    fn product(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.product(&other.0).map(PySubspace).map_err(to_py)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Subspace(dim={}, basis={:?})", self.0.dim(), self.basis())
    }
}

#[pyclass(name = "KemParams", module = "galrpc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyKemParams(ga_lrpc::KemParams);

#[pymethods]
impl PyKemParams {
    #[new]
    fn new(field: PyRef<'_, PyField>, group: PyRef<'_, PyGroup>, lam: usize, r: usize) -> PyResult<Self> {
        ga_lrpc::KemParams::new(field.0.clone(), group.0.clone(), lam, r).map(PyKemParams).map_err(to_py)
    }

    #[getter]
    fn algebra(&self) -> PyAlgebra {
        PyAlgebra(self.0.algebra().clone())
    }

    #[getter]
    fn lam(&self) -> usize {
        self.0.lambda()
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    fn warnings(&self) -> Vec<String> {
        self.0.warnings()
    }
}

#[pyclass(name = "PublicKey", module = "galrpc", frozen)]
struct PyPublicKey(ga_lrpc::PublicKey);

#[pymethods]
impl PyPublicKey {
    #[getter]
    fn h(&self) -> PyElement {
        PyElement(self.0.h().clone())
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.0.to_bytes())
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        ga_lrpc::PublicKey::from_bytes(data).map(PyPublicKey).map_err(format_err)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "SecretKey", module = "galrpc", frozen)]
struct PySecretKey(ga_lrpc::SecretKey);

#[pymethods]
impl PySecretKey {
    #[getter]
    fn x(&self) -> PyElement {
        PyElement(self.0.x().clone())
    }

    #[getter]
    fn y(&self) -> PyElement {
        PyElement(self.0.y().clone())
    }

    #[getter]
    fn support(&self) -> PySubspace {
        PySubspace(self.0.support().clone())
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.0.to_bytes())
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        ga_lrpc::SecretKey::from_bytes(data).map(PySecretKey).map_err(format_err)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "Ciphertext", module = "galrpc", frozen)]
struct PyCiphertext(ga_lrpc::Ciphertext);

#[pymethods]
impl PyCiphertext {
    #[getter]
    fn c(&self) -> PyElement {
        PyElement(self.0.c().clone())
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.0.to_bytes())
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        ga_lrpc::Ciphertext::from_bytes(data).map(PyCiphertext).map_err(format_err)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }
}

#[pyfunction]
#[pyo3(signature = (params, seed=None))]
fn keygen(params: PyRef<'_, PyKemParams>, seed: Option<u64>) -> PyResult<(PyPublicKey, PySecretKey)> {
    let (pk, sk) = kem::keygen(&params.0, &mut rng(seed)).map_err(to_py)?;
    Ok((PyPublicKey(pk), PySecretKey(sk)))
}

/// Returns `(ciphertext, shared_key_bytes)`.
#[pyfunction]
#[pyo3(signature = (pk, seed=None))]
fn encap<'py>(
    py: Python<'py>,
    pk: PyRef<'_, PyPublicKey>,
    seed: Option<u64>,
) -> PyResult<(PyCiphertext, Bound<'py, PyBytes>)> {
    let (ct, key) = kem::encap(&pk.0, &mut rng(seed)).map_err(to_py)?;
    Ok((PyCiphertext(ct), PyBytes::new(py, key.as_bytes())))
}

/// Raises `DecodeFailure` when the error support cannot be recovered.
#[pyfunction]
fn decap<'py>(
    py: Python<'py>,
    sk: PyRef<'_, PySecretKey>,
    ct: PyRef<'_, PyCiphertext>,
) -> PyResult<Bound<'py, PyBytes>> {
    let key = kem::decap(&sk.0, &ct.0).map_err(to_py)?;
    Ok(PyBytes::new(py, key.as_bytes()))
}

#[pyfunction]
fn validate_keypair(pk: PyRef<'_, PyPublicKey>, sk: PyRef<'_, PySecretKey>) -> bool {
    kem::validate_keypair(&pk.0, &sk.0).is_ok()
}

/// `e1·h1 + e2·h2`.
#[pyfunction]
fn syndrome(
    h1: PyRef<'_, PyElement>,
    h2: PyRef<'_, PyElement>,
    e1: PyRef<'_, PyElement>,
    e2: PyRef<'_, PyElement>,
) -> PyResult<PyElement> {
    lrpc::syndrome(&h1.0, &h2.0, &e1.0, &e2.0).map(PyElement).map_err(to_py)
}

/// Rank support recovery; raises `DecodeFailure` on failure.
#[pyfunction]
fn rsr(f: PyRef<'_, PySubspace>, s: PyRef<'_, PyElement>, r: usize) -> PyResult<PySubspace> {
    lrpc::rsr(&f.0, &s.0, r).map(PySubspace).map_err(to_py)
}

#[pymodule]
pub fn galrpc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PySubspace>()?;
    m.add_class::<PyKemParams>()?;
    m.add_class::<PyPublicKey>()?;
    m.add_class::<PySecretKey>()?;
    m.add_class::<PyCiphertext>()?;
    m.add_function(wrap_pyfunction!(keygen, m)?)?;
    m.add_function(wrap_pyfunction!(encap, m)?)?;
    m.add_function(wrap_pyfunction!(decap, m)?)?;
    m.add_function(wrap_pyfunction!(validate_keypair, m)?)?;
    m.add_function(wrap_pyfunction!(syndrome, m)?)?;
    m.add_function(wrap_pyfunction!(rsr, m)?)?;
    m.add("DecodeFailure", m.py().get_type::<DecodeFailure>())?;
    m.add("FormatError", m.py().get_type::<FormatError>())?;
    Ok(())
}
