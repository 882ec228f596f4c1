//! Python bindings: frames, biframes and their maps, resolved by the same
//! references as the command line.

use std::sync::Arc;

use biframe::colimit::coproduct as frame_coproduct;
use biframe::density::{booleanization_frame, least_dense_subbilocale, skeletal_check};
use biframe::subbilocale::{analyze, sublocale_lattice, subbilocale_lattice};
use biframe::verify::{run, Fixtures};
use biframe::workspace::{self, Object, Workspace};
use biframe::{Biframe as CoreBiframe, Frame as CoreFrame, Lattice, Limits};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn labels(l: &Lattice) -> Vec<String> {
    l.labels().to_vec()
}

fn covers(l: &Lattice) -> Vec<(String, String)> {
    l.covers().into_iter().map(|(a, b)| (l.label(a).to_string(), l.label(b).to_string())).collect()
}

fn workspace() -> Workspace {
    Workspace::new(Limits::from_env())
}

#[pyclass(frozen)]
struct Frame(Arc<CoreFrame>);

#[pymethods]
impl Frame {
    /// A builtin (`"frame:3"`, `"frame:B2"`) or a JSON file.
    #[new]
    fn new(reference: &str) -> PyResult<Frame> {
        workspace().frame(reference).map(Frame).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        labels(self.0.lattice())
    }

    #[getter]
    fn covers(&self) -> Vec<(String, String)> {
        covers(self.0.lattice())
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.0.leq(a, b))
    }

    fn meet(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.0.meet(a, b))
    }

    fn join(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.0.join(a, b))
    }

    fn pseudocomplement(&self, a: usize) -> PyResult<usize> {
        self.check(a)?;
        Ok(self.0.pseudocomplement(a))
    }

    fn is_boolean(&self) -> bool {
        self.0.is_boolean()
    }

    /// Labels of the sublocale lattice, coarsest first.
    fn sublocales(&self) -> PyResult<Vec<String>> {
        let sl = sublocale_lattice(&self.0, &Limits::from_env()).map_err(err)?;
        Ok(labels(sl.lattice()))
    }

    /// The Booleanization and the map onto it.
    fn booleanize(&self) -> (Frame, Vec<usize>) {
        let b = booleanization_frame(&self.0);
        (Frame(b.booleanized.clone()), b.beta.map().to_vec())
    }

    fn coproduct(&self, other: &Frame) -> PyResult<Frame> {
        let c = frame_coproduct(&self.0, &other.0, &Limits::from_env()).map_err(err)?;
        Ok(Frame(c.frame().clone()))
    }

    fn __repr__(&self) -> String {
        format!("Frame({} elements)", self.0.len())
    }
}

impl Frame {
    fn check(&self, a: usize) -> PyResult<()> {
        if a < self.0.len() {
            Ok(())
        } else {
            Err(err(format!("element {a} out of range for a frame of {} elements", self.0.len())))
        }
    }
}

#[pyclass(frozen)]
struct Biframe(Arc<CoreBiframe>);

#[pymethods]
impl Biframe {
    /// A builtin (`"biframe:3.3"`), a corpus biframe (`"corpus:3.B2/1"`) or a
    /// JSON file.
    #[new]
    fn new(reference: &str) -> PyResult<Biframe> {
        workspace().biframe(reference).map(Biframe).map_err(err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    #[getter]
    fn ambient(&self) -> Frame {
        Frame(self.0.ambient().clone())
    }

    /// Ambient indices of the first (`i = 0`) or second component.
    fn component(&self, i: usize) -> PyResult<Vec<usize>> {
        if i > 1 {
            return Err(err("a biframe has components 0 and 1"));
        }
        Ok(self.0.component(i).to_vec())
    }

    /// The subbilocale lattice as labels, labelled covers and an analysis.
    fn subbilocales(&self) -> PyResult<Subbilocales> {
        let sl = subbilocale_lattice(&self.0).map_err(err)?;
        let a = analyze(sl.lattice());
        Ok(Subbilocales {
            labels: labels(sl.lattice()),
            covers: covers(sl.lattice()),
            distributive: a.distributive,
            pentagon: a.pentagon.map(|w| w.to_vec()),
        })
    }

    /// The least dense subbilocale: the quotient biframe and the label of
    /// its kernel.
    fn least_dense(&self) -> PyResult<(Biframe, Option<String>)> {
        let bb = least_dense_subbilocale(&self.0).map_err(err)?;
        let label = subbilocale_lattice(&self.0)
            .ok()
            .and_then(|sl| sl.index_of(&bb.least_dense.kernel).map(|k| sl.label(k).to_string()));
        Ok((Biframe(bb.booleanized), label))
    }

    fn __repr__(&self) -> String {
        format!("Biframe({:?}, ambient {} elements)", self.0.name(), self.0.ambient().len())
    }
}

#[pyclass(frozen, get_all)]
struct Subbilocales {
    labels: Vec<String>,
    covers: Vec<(String, String)>,
    distributive: bool,
    /// `[0, a, c, b, 1]` with `a < c` when the lattice contains a pentagon.
    pentagon: Option<Vec<String>>,
}

#[pyclass(frozen)]
struct BiframeMap(biframe::BiframeHom);

#[pymethods]
impl BiframeMap {
    /// `"hom:id:<biframe>"`, `"hom:beta:<biframe>"` or `"file.json#name"`.
    #[new]
    fn new(reference: &str) -> PyResult<BiframeMap> {
        match workspace().hom(reference).map_err(err)? {
            workspace::Hom::Biframe(h) => Ok(BiframeMap(h)),
            workspace::Hom::Frame(_) => Err(err(format!("{reference:?} is a frame map"))),
        }
    }

    #[getter]
    fn map(&self) -> Vec<usize> {
        self.0.ambient_map().map().to_vec()
    }

    fn is_extremal_epi(&self) -> PyResult<bool> {
        self.0.is_extremal_epi().map_err(err)
    }

    fn is_skeletal(&self) -> bool {
        skeletal_check(&self.0)
    }

    /// The image biframe of the extremal epi–mono factorization.
    fn image(&self) -> PyResult<Biframe> {
        Ok(Biframe(self.0.factorize().map_err(err)?.mid))
    }
}

/// Kind of object a reference names: `"frame"`, `"biframe"` or `"map"`.
#[pyfunction]
fn kind(reference: &str) -> PyResult<&'static str> {
    workspace().resolve(reference).map(|o: Object| o.kind()).map_err(err)
}

/// Runs the acceptance criteria selected by `filter`; one
/// `(id, title, passed, detail)` tuple per criterion.
#[pyfunction]
#[pyo3(signature = (filter=None))]
fn verify(py: Python<'_>, filter: Option<&str>) -> Vec<(u8, String, bool, String)> {
    let limits = Limits::from_env();
    let reports = py.detach(|| run(&Fixtures::builtin(), filter, &limits));
    reports.into_iter().map(|r| (r.id, r.title.to_string(), r.passed, r.detail)).collect()
}

#[pymodule]
fn biframe_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Frame>()?;
    m.add_class::<Biframe>()?;
    m.add_class::<BiframeMap>()?;
    m.add_class::<Subbilocales>()?;
    m.add_function(wrap_pyfunction!(kind, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
