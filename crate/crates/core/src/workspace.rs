//! Named object resolution for the command line.
//!
//! A reference is one of
//! - a builtin: `frame:3`, `frame:B2`, `biframe:3.3`, `biframe:2.B2`,
//!   `biframe:diag:<frame>`;
//! - a corpus biframe: `corpus:<name>`, e.g. `corpus:3.B2/1`;
//! - a map: `hom:id:<x>` or `hom:beta:<x>` for a frame or biframe `x` (the
//!   projection onto its Booleanization or least dense subbilocale);
//! - a JSON file `path.json`, or an entry of a document `path.json#name`;
//! - a name already registered.
//!
//! A JSON file holds a poset (`elements`, `leq`), a biframe (`ambient`,
//! `comp1`, `comp2`), a map (`dom`, `cod`, `map`), or a document with any of
//! the maps `frames`, `biframes`, `homs` from names to such objects.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::biframe::{Biframe, BiframeHom};
use crate::builtin;
use crate::density::{booleanization_frame, least_dense_subbilocale};
use crate::error::Error;
use crate::frame::{Frame, FrameHom};
use crate::io::{BiframeJson, FrameRef, HomJson, PosetJson};
use crate::Limits;

#[derive(Debug, thiserror::Error)]
pub enum WorkspaceError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{context}: {source}")]
    Invalid { context: String, source: Error },
    #[error("unknown reference {0:?}")]
    Unknown(String),
    #[error("{name:?} is a {found}, expected a {expected}")]
    WrongKind { name: String, found: &'static str, expected: &'static str },
}

/// A frame homomorphism, or a biframe map when both ends are biframes.
#[derive(Clone, Debug)]
pub enum Hom {
    Frame(FrameHom),
    Biframe(BiframeHom),
}

#[derive(Clone, Debug)]
pub enum Object {
    Frame(Arc<Frame>),
    Biframe(Arc<Biframe>),
    Hom(Hom),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Frame(_) => "frame",
            Object::Biframe(_) => "biframe",
            Object::Hom(_) => "map",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DocumentJson {
    #[serde(default)]
    frames: BTreeMap<String, PosetJson>,
    #[serde(default)]
    biframes: BTreeMap<String, BiframeJson>,
    #[serde(default)]
    homs: BTreeMap<String, HomJson>,
}

/// Registered objects by name.
pub struct Workspace {
    limits: Limits,
    objects: BTreeMap<String, Object>,
    corpus: Option<Vec<Arc<Biframe>>>,
}

fn parse<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, WorkspaceError> {
    serde_json::from_str(text).map_err(|e| WorkspaceError::Parse {
        path: path.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn invalid(context: impl Into<String>) -> impl FnOnce(Error) -> WorkspaceError {
    let context = context.into();
    move |source| WorkspaceError::Invalid { context, source }
}

impl Workspace {
    pub fn new(limits: Limits) -> Workspace {
        Workspace { limits, objects: BTreeMap::new(), corpus: None }
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.objects.keys().map(String::as_str)
    }

    pub fn register(&mut self, name: &str, object: Object) {
        self.objects.insert(name.to_string(), object);
    }

    pub fn resolve(&mut self, reference: &str) -> Result<Object, WorkspaceError> {
        if let Some(o) = self.objects.get(reference) {
            return Ok(o.clone());
        }
        let object = self.build(reference)?;
        self.register(reference, object.clone());
        Ok(object)
    }

    fn build(&mut self, r: &str) -> Result<Object, WorkspaceError> {
        if r.starts_with("frame:") {
            return Ok(Object::Frame(Arc::new(builtin::frame(r).map_err(invalid(r))?)));
        }
        if r.starts_with("biframe:") {
            return Ok(Object::Biframe(Arc::new(builtin::biframe(r, &self.limits).map_err(invalid(r))?)));
        }
        if let Some(name) = r.strip_prefix("corpus:") {
            if self.corpus.is_none() {
                self.corpus = Some(crate::corpus::biframes(&self.limits).map_err(invalid("corpus"))?);
            }
            let found = self.corpus.as_ref().unwrap().iter().find(|b| b.name() == name);
            return found.cloned().map(Object::Biframe).ok_or_else(|| WorkspaceError::Unknown(r.to_string()));
        }
        if let Some(x) = r.strip_prefix("hom:id:") {
            return Ok(Object::Hom(match self.resolve(x)? {
                Object::Frame(f) => Hom::Frame(FrameHom::identity(f)),
                Object::Biframe(b) => Hom::Biframe(BiframeHom::identity(b)),
                o => return Err(WorkspaceError::WrongKind { name: x.to_string(), found: o.kind(), expected: "frame or biframe" }),
            }));
        }
        if let Some(x) = r.strip_prefix("hom:beta:") {
            return Ok(Object::Hom(match self.resolve(x)? {
                Object::Frame(f) => Hom::Frame(booleanization_frame(&f).beta),
                Object::Biframe(b) => Hom::Biframe(least_dense_subbilocale(&b).map_err(invalid(r))?.beta),
                o => return Err(WorkspaceError::WrongKind { name: x.to_string(), found: o.kind(), expected: "frame or biframe" }),
            }));
        }
        if let Some((file, name)) = r.split_once('#') {
            self.load_file(Path::new(file))?;
            return self.objects.get(name).cloned().ok_or_else(|| WorkspaceError::Unknown(r.to_string()));
        }
        if r.ends_with(".json") || Path::new(r).is_file() {
            let names = self.load_file(Path::new(r))?;
            if let [single] = names.as_slice() {
                return Ok(self.objects[single].clone());
            }
            return Err(WorkspaceError::WrongKind { name: r.to_string(), found: "document", expected: "single object" });
        }
        Err(WorkspaceError::Unknown(r.to_string()))
    }

    pub fn frame(&mut self, r: &str) -> Result<Arc<Frame>, WorkspaceError> {
        match self.resolve(r)? {
            Object::Frame(f) => Ok(f),
            o => Err(WorkspaceError::WrongKind { name: r.to_string(), found: o.kind(), expected: "frame" }),
        }
    }

    pub fn biframe(&mut self, r: &str) -> Result<Arc<Biframe>, WorkspaceError> {
        match self.resolve(r)? {
            Object::Biframe(b) => Ok(b),
            o => Err(WorkspaceError::WrongKind { name: r.to_string(), found: o.kind(), expected: "biframe" }),
        }
    }

    pub fn hom(&mut self, r: &str) -> Result<Hom, WorkspaceError> {
        match self.resolve(r)? {
            Object::Hom(h) => Ok(h),
            o => Err(WorkspaceError::WrongKind { name: r.to_string(), found: o.kind(), expected: "map" }),
        }
    }

    /// Loads a JSON file and registers what it defines, returning the names.
    /// A single object is registered under the path and the file stem.
    pub fn load_file(&mut self, path: &Path) -> Result<Vec<String>, WorkspaceError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| WorkspaceError::Io { path: shown.clone(), source })?;
        let value: serde_json::Value = parse(&shown, &text)?;
        let has = |k: &str| value.get(k).is_some();
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| shown.clone());
        let object = if has("frames") || has("biframes") || has("homs") {
            let doc: DocumentJson = parse(&shown, &text)?;
            return self.load_document(&shown, doc);
        } else if has("elements") {
            let p: PosetJson = parse(&shown, &text)?;
            Object::Frame(Arc::new(p.to_frame().map_err(invalid(&shown))?))
        } else if has("ambient") {
            let b: BiframeJson = parse(&shown, &text)?;
            Object::Biframe(self.make_biframe(&stem, &b).map_err(|e| in_file(&shown, e))?)
        } else if has("dom") {
            let h: HomJson = parse(&shown, &text)?;
            Object::Hom(self.make_hom(&h).map_err(|e| in_file(&shown, e))?)
        } else {
            return Err(WorkspaceError::Parse {
                path: shown,
                line: 1,
                column: 1,
                message: "expected a poset, biframe, map or document".into(),
            });
        };
        self.register(&shown, object.clone());
        self.register(&stem, object);
        Ok(vec![shown])
    }

    fn load_document(&mut self, path: &str, doc: DocumentJson) -> Result<Vec<String>, WorkspaceError> {
        let mut names = Vec::new();
        for (name, p) in &doc.frames {
            let f = p.to_frame().map_err(invalid(format!("{path}#{name}")))?;
            self.register(name, Object::Frame(Arc::new(f)));
            names.push(name.clone());
        }
        for (name, b) in &doc.biframes {
            let b = self.make_biframe(name, b).map_err(|e| in_file(&format!("{path}#{name}"), e))?;
            self.register(name, Object::Biframe(b));
            names.push(name.clone());
        }
        for (name, h) in &doc.homs {
            let h = self.make_hom(h).map_err(|e| in_file(&format!("{path}#{name}"), e))?;
            self.register(name, Object::Hom(h));
            names.push(name.clone());
        }
        Ok(names)
    }

    fn make_biframe(&mut self, name: &str, b: &BiframeJson) -> Result<Arc<Biframe>, WorkspaceError> {
        let ambient = match &b.ambient {
            FrameRef::Named(r) => self.frame(r)?,
            FrameRef::Inline(p) => Arc::new(p.to_frame().map_err(invalid("ambient"))?),
        };
        let (mut c1, mut c2) = (b.comp1.clone(), b.comp2.clone());
        c1.sort_unstable();
        c2.sort_unstable();
        let bf = Biframe::with_limits(name, ambient, c1, c2, self.limits).map_err(invalid(name))?;
        Ok(Arc::new(bf))
    }

    fn make_hom(&mut self, h: &HomJson) -> Result<Hom, WorkspaceError> {
        match (self.resolve(&h.dom)?, self.resolve(&h.cod)?) {
            (Object::Frame(d), Object::Frame(c)) => {
                Ok(Hom::Frame(FrameHom::new(d, c, h.map.clone()).map_err(invalid("map"))?))
            }
            (Object::Biframe(d), Object::Biframe(c)) => {
                let f = FrameHom::new(d.ambient().clone(), c.ambient().clone(), h.map.clone()).map_err(invalid("map"))?;
                Ok(Hom::Biframe(BiframeHom::new(d, c, f).map_err(invalid("map"))?))
            }
            (d, c) => Err(WorkspaceError::WrongKind {
                name: format!("{} → {}", h.dom, h.cod),
                found: if d.kind() == c.kind() { d.kind() } else { "mixed pair" },
                expected: "pair of frames or of biframes",
            }),
        }
    }
}

fn in_file(path: &str, e: WorkspaceError) -> WorkspaceError {
    match e {
        WorkspaceError::Invalid { context, source } => {
            WorkspaceError::Invalid { context: format!("{path}: {context}"), source }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ws() -> Workspace {
        Workspace::new(Limits::default())
    }

    #[test]
    fn builtins_resolve_once() {
        let mut w = ws();
        let a = w.biframe("biframe:3.3").unwrap();
        let b = w.biframe("biframe:3.3").unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(w.frame("frame:2").unwrap().len(), 2);
        assert!(matches!(w.frame("biframe:3.3"), Err(WorkspaceError::WrongKind { .. })));
        assert!(matches!(w.resolve("nonsense"), Err(WorkspaceError::Unknown(_))));
        match w.hom("hom:beta:biframe:3.3").unwrap() {
            Hom::Biframe(h) => assert_eq!(h.cod().ambient().len(), 2),
            Hom::Frame(_) => panic!("expected a biframe map"),
        }
    }

    #[test]
    fn documents_and_errors() {
        let dir = std::env::temp_dir().join(format!("biframe-ws-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let doc = dir.join("doc.json");
        std::fs::write(
            &doc,
            r#"{
  "frames": { "T": { "elements": ["0", "a", "1"], "leq": [[0, 1], [1, 2], [0, 2]] } },
  "biframes": { "D": { "ambient": "T", "comp1": [0, 1, 2], "comp2": [0, 2, 1] } },
  "homs": { "id": { "dom": "D", "cod": "D", "map": [0, 1, 2] } }
}"#,
        )
        .unwrap();
        let mut w = ws();
        let r = format!("{}#id", doc.display());
        assert!(matches!(w.hom(&r).unwrap(), Hom::Biframe(_)));
        assert_eq!(w.biframe("D").unwrap().component(1), &[0, 1, 2]);

        let bad = dir.join("bad.json");
        std::fs::write(&bad, "{\n  \"elements\": [\"0\",\n}").unwrap();
        let err = w.resolve(bad.to_str().unwrap()).unwrap_err();
        assert!(matches!(err, WorkspaceError::Parse { line: 3, .. }), "{err}");

        let nondist = dir.join("n5.json");
        std::fs::write(
            &nondist,
            r#"{"elements":["0","a","b","c","1"],"leq":[[0,1],[1,2],[2,4],[0,3],[3,4],[0,2],[0,4],[1,4]]}"#,
        )
        .unwrap();
        let err = w.resolve(nondist.to_str().unwrap()).unwrap_err();
        assert!(matches!(err, WorkspaceError::Invalid { source: Error::NotDistributive(..), .. }), "{err}");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
