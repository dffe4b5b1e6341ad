//! Python bindings: ordinals, family ranks, recursive-family membership,
//! lattice components, cover search and partition machinery.
//!
//! Build with `cargo build -p trasdim-py`; the resulting
//! `libtrasdim_py.so` imports as the module `trasdim_py` once renamed
//! (see `python/smoke_test.py`).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::pyclass::CompareOp;
use pyo3::types::PyAny;

use trasdim_core::cover::{
    a2_check, greedy_cover, search_cover, verify_cover, CoverSpec, SearchMode, DEFAULT_NODE_BUDGET,
};
use trasdim_core::finfam::{Family, FinSet};
use trasdim_core::ordinal::Ordinal as CoreOrdinal;
use trasdim_core::partition::{epsilon_partition_chain, skeleton_refute, DiscreteCube, GridFamily};
use trasdim_core::sfamily;
use trasdim_core::space::{self, Label, LatticePoint};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn finset(elements: Vec<u32>) -> PyResult<FinSet> {
    FinSet::from_unsorted(elements).map_err(value_err)
}

fn family(members: Vec<Vec<u32>>) -> PyResult<Family> {
    let sets: Result<Vec<FinSet>, _> = members.into_iter().map(FinSet::from_unsorted).collect();
    Ok(Family::from_members(sets.map_err(value_err)?))
}

fn family_members(fam: &Family) -> Vec<Vec<u32>> {
    fam.members().map(|m| m.elements().to_vec()).collect()
}

fn label(elements: Vec<u32>) -> PyResult<Label> {
    Label::from_elements(&elements).map_err(value_err)
}

fn lattice_points(points: Vec<(Vec<u32>, Vec<i64>)>) -> PyResult<Vec<LatticePoint>> {
    points
        .into_iter()
        .map(|(l, coords)| LatticePoint::new(label(l)?, coords).map_err(value_err))
        .collect()
}

/// A countable ordinal below ε₀ in Cantor normal form.
#[pyclass(frozen, from_py_object, name = "Ordinal")]
#[derive(Clone)]
struct PyOrdinal {
    inner: CoreOrdinal,
}

#[pymethods]
impl PyOrdinal {
    /// Accepts an ordinal string (`"w^2+w*3+1"`) or a nonnegative integer.
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(n) = value.extract::<u64>() {
            return Ok(PyOrdinal {
                inner: CoreOrdinal::from_nat(n),
            });
        }
        let text: String = value.extract()?;
        Ok(PyOrdinal {
            inner: text.parse().map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn omega() -> Self {
        PyOrdinal {
            inner: CoreOrdinal::omega(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Ordinal('{}')", self.inner)
    }

    fn __richcmp__(&self, other: PyRef<'_, PyOrdinal>, op: CompareOp) -> bool {
        op.matches(self.inner.cmp(&other.inner))
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn add(&self, other: PyRef<'_, PyOrdinal>) -> Self {
        PyOrdinal {
            inner: self.inner.add(&other.inner),
        }
    }

    fn add_nat(&self, n: u64) -> Self {
        PyOrdinal {
            inner: self.inner.add_nat(n),
        }
    }

    /// Splits into (limit-or-zero part, finite part).
    fn decompose(&self) -> (Self, u64) {
        let (gamma, n) = self.inner.decompose();
        (PyOrdinal { inner: gamma }, n)
    }

    fn is_limit(&self) -> bool {
        self.inner.is_limit()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The i-th fundamental-sequence stage of a limit ordinal.
    fn zeta(&self, i: u64) -> PyResult<Self> {
        Ok(PyOrdinal {
            inner: self.inner.zeta(i).map_err(value_err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).unwrap()
    }
}

fn ordinal_arg(value: &Bound<'_, PyAny>) -> PyResult<CoreOrdinal> {
    if let Ok(o) = value.extract::<PyOrdinal>() {
        return Ok(o.inner);
    }
    if let Ok(n) = value.extract::<u64>() {
        return Ok(CoreOrdinal::from_nat(n));
    }
    let text: String = value.extract()?;
    text.parse().map_err(value_err)
}

/// Borst rank of an explicit family given as a list of element lists.
#[pyfunction]
fn family_ord(members: Vec<Vec<u32>>) -> PyResult<u32> {
    Ok(family(members)?.ord())
}

/// Derivation by a set: members strictly containing it, minus it.
#[pyfunction]
fn family_derive(members: Vec<Vec<u32>>, sigma: Vec<u32>) -> PyResult<Vec<Vec<u32>>> {
    Ok(family_members(&family(members)?.derive(&finset(sigma)?)))
}

#[pyfunction]
fn family_is_inclusive(members: Vec<Vec<u32>>) -> PyResult<bool> {
    Ok(family(members)?.is_inclusive())
}

#[pyfunction]
fn family_closure(members: Vec<Vec<u32>>) -> PyResult<Vec<Vec<u32>>> {
    Ok(family_members(&family(members)?.inclusive_closure()))
}

#[pyfunction]
fn family_reindex(members: Vec<Vec<u32>>, target: Vec<u32>) -> PyResult<Vec<Vec<u32>>> {
    Ok(family_members(
        &family(members)?.reindex(&target).map_err(value_err)?,
    ))
}

/// Membership of a set in the recursive family at an ordinal level.
#[pyfunction]
fn s_member(sigma: Vec<u32>, xi: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(sfamily::s_member(&finset(sigma)?, &ordinal_arg(xi)?))
}

/// Shifted-alphabet membership (elements ≥ 3, shifted down by 2).
#[pyfunction]
fn s_member_shifted(sigma: Vec<u32>, xi: &Bound<'_, PyAny>) -> PyResult<bool> {
    sfamily::s_member_shifted(&finset(sigma)?, &ordinal_arg(xi)?).map_err(value_err)
}

/// All members of the level over the ground set {1..n}.
#[pyfunction]
fn s_truncate(xi: &Bound<'_, PyAny>, n: u32) -> PyResult<Vec<Vec<u32>>> {
    let t = sfamily::truncate(&ordinal_arg(xi)?, n).map_err(value_err)?;
    Ok(family_members(&t.family))
}

/// Borst rank of the truncated level.
#[pyfunction]
fn s_trunc_ord(xi: &Bound<'_, PyAny>, n: u32) -> PyResult<u32> {
    sfamily::ord_truncated(&ordinal_arg(xi)?, n).map_err(value_err)
}

/// Divisibility-profile membership of a coordinate vector.
#[pyfunction]
fn x_tau_member(tau: Vec<u32>, coords: Vec<i64>) -> PyResult<bool> {
    space::x_tau_member(&label(tau)?, &coords).map_err(value_err)
}

/// Lattice points of the component inside per-axis inclusive intervals.
#[pyfunction]
fn enumerate_x_tau(tau: Vec<u32>, bounds: Vec<(i64, i64)>) -> PyResult<Vec<Vec<i64>>> {
    let pts = space::enumerate_x_tau(&label(tau)?, &bounds).map_err(value_err)?;
    Ok(pts.into_iter().map(|p| p.coords().to_vec()).collect())
}

/// Union-metric distance between two labelled points.
#[pyfunction]
fn d_xi(
    label_a: Vec<u32>,
    coords_a: Vec<i64>,
    label_b: Vec<u32>,
    coords_b: Vec<i64>,
) -> PyResult<u64> {
    let a = LatticePoint::new(label(label_a)?, coords_a).map_err(value_err)?;
    let b = LatticePoint::new(label(label_b)?, coords_b).map_err(value_err)?;
    Ok(space::d_xi(&a, &b))
}

/// Weight 2^{max τ} of a label.
#[pyfunction]
fn label_weight(tau: Vec<u32>) -> PyResult<u64> {
    Ok(label(tau)?.weight())
}

/// Exhaustive or greedy cover search; returns the outcome report as JSON.
#[pyfunction]
#[pyo3(signature = (points, radii, bound, mode="exhaustive", seed=0, node_budget=DEFAULT_NODE_BUDGET))]
fn cover_search(
    points: Vec<(Vec<u32>, Vec<i64>)>,
    radii: Vec<u64>,
    bound: u64,
    mode: &str,
    seed: u64,
    node_budget: u64,
) -> PyResult<String> {
    let pts = lattice_points(points)?;
    let mode = match mode {
        "exhaustive" => SearchMode::Exhaustive,
        "greedy" => SearchMode::Greedy { seed },
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let out = search_cover(&pts, &radii, bound, mode, node_budget).map_err(value_err)?;
    Ok(serde_json::to_string(&out).unwrap())
}

/// Dyadic-radii refutation for one component truncation; JSON verdict.
#[pyfunction]
#[pyo3(signature = (tau, bound, node_budget=DEFAULT_NODE_BUDGET))]
fn a2_check_json(tau: Vec<u32>, bound: u64, node_budget: u64) -> PyResult<String> {
    let out = a2_check(&label(tau)?, bound, node_budget).map_err(value_err)?;
    Ok(serde_json::to_string(&out).unwrap())
}

/// Greedy candidate cover of a component truncation; JSON cover spec.
#[pyfunction]
fn greedy_candidate(tau: Vec<u32>, bound: u64, radii: Vec<u64>, seed: u64) -> PyResult<String> {
    let l = label(tau)?;
    let side = 8 * bound as i64;
    let bounds = vec![(0i64, side); l.dim()];
    let pts = space::enumerate_x_tau(&l, &bounds).map_err(value_err)?;
    let spec = greedy_cover(&pts, &radii, bound, seed);
    Ok(serde_json::to_string(&spec).unwrap())
}

/// Checks a JSON cover spec against explicit points; JSON verdict.
#[pyfunction]
fn cover_verify(cover_json: &str, points: Vec<(Vec<u32>, Vec<i64>)>) -> PyResult<String> {
    let spec: CoverSpec = serde_json::from_str(cover_json).map_err(value_err)?;
    let pts = lattice_points(points)?;
    Ok(serde_json::to_string(&verify_cover(&spec, &pts)).unwrap())
}

/// Runs the ε-partition chain; returns (level sizes, final level) in
/// tripled coordinates.
#[pyfunction]
fn partition_chain(
    dim: usize,
    side: i64,
    step: i64,
    families: Vec<Vec<Vec<Vec<i64>>>>,
    epsilon: i64,
) -> PyResult<(Vec<usize>, Vec<Vec<i64>>)> {
    let cube = DiscreteCube { dim, side, step };
    let fams: Vec<GridFamily> = families
        .into_iter()
        .map(|blocks| GridFamily { blocks })
        .collect();
    let chain = epsilon_partition_chain(&cube, &fams, epsilon).map_err(value_err)?;
    let sizes = chain.levels.iter().map(|l| l.len()).collect();
    let last = chain.final_level().to_vec();
    Ok((sizes, last))
}

/// Uncovered-witness generation against a JSON cover spec; returns the
/// witness coordinates.
#[pyfunction]
#[pyo3(signature = (tau, bound, cover_json, point_budget=50_000_000))]
fn refute_witness(
    tau: Vec<u32>,
    bound: u64,
    cover_json: &str,
    point_budget: u128,
) -> PyResult<Vec<i64>> {
    let spec: CoverSpec = serde_json::from_str(cover_json).map_err(value_err)?;
    let report = skeleton_refute(&label(tau)?, bound, &spec, point_budget).map_err(value_err)?;
    Ok(report.witness.coords().to_vec())
}

#[pymodule]
fn trasdim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyOrdinal>()?;
    m.add_function(wrap_pyfunction!(family_ord, m)?)?;
    m.add_function(wrap_pyfunction!(family_derive, m)?)?;
    m.add_function(wrap_pyfunction!(family_is_inclusive, m)?)?;
    m.add_function(wrap_pyfunction!(family_closure, m)?)?;
    m.add_function(wrap_pyfunction!(family_reindex, m)?)?;
    m.add_function(wrap_pyfunction!(s_member, m)?)?;
    m.add_function(wrap_pyfunction!(s_member_shifted, m)?)?;
    m.add_function(wrap_pyfunction!(s_truncate, m)?)?;
    m.add_function(wrap_pyfunction!(s_trunc_ord, m)?)?;
    m.add_function(wrap_pyfunction!(x_tau_member, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_x_tau, m)?)?;
    m.add_function(wrap_pyfunction!(d_xi, m)?)?;
    m.add_function(wrap_pyfunction!(label_weight, m)?)?;
    m.add_function(wrap_pyfunction!(cover_search, m)?)?;
    m.add_function(wrap_pyfunction!(a2_check_json, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_candidate, m)?)?;
    m.add_function(wrap_pyfunction!(cover_verify, m)?)?;
    m.add_function(wrap_pyfunction!(partition_chain, m)?)?;
    m.add_function(wrap_pyfunction!(refute_witness, m)?)?;
    Ok(())
}
