//! JSON schemas for posets, frames, homs, congruences, biframes and
//! computed lattices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::congruence::Congruence;
use crate::error::Result;
use crate::frame::{Frame, FrameHom};
use crate::order::{Lattice, Poset};

/// `{ "elements": [...], "leq": [[i, j], ...] }`; reflexive pairs optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> PosetJson {
        let n = p.len();
        let leq = (0..n).flat_map(|i| (0..n).map(move |j| [i, j])).filter(|&[i, j]| i != j && p.leq(i, j)).collect();
        PosetJson { elements: p.labels().to_vec(), leq }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        let pairs: Vec<(usize, usize)> = self.leq.iter().map(|&[i, j]| (i, j)).collect();
        Poset::from_pairs(self.elements.clone(), &pairs)
    }

    pub fn to_frame(&self) -> Result<Frame> {
        Frame::from_poset(self.to_poset()?)
    }
}

/// `{ "dom": id, "cod": id, "map": [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub dom: String,
    pub cod: String,
    pub map: Vec<usize>,
}

/// `{ "frame": id, "blocks": [[...], ...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub frame: String,
    pub blocks: Vec<Vec<usize>>,
}

impl CongruenceJson {
    pub fn from_congruence(frame: &str, c: &Congruence) -> CongruenceJson {
        CongruenceJson { frame: frame.to_string(), blocks: c.blocks() }
    }
}

/// A frame given inline or by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FrameRef {
    Named(String),
    Inline(PosetJson),
}

/// `{ "ambient": frame, "comp1": [...], "comp2": [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiframeJson {
    pub ambient: FrameRef,
    pub comp1: Vec<usize>,
    pub comp2: Vec<usize>,
}

/// A computed lattice: elements, full order as index pairs, covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub order: Vec<[usize; 2]>,
    pub covers: Vec<[usize; 2]>,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice) -> LatticeJson {
        let p = PosetJson::from_poset(l.poset());
        let covers = l.covers().into_iter().map(|(a, b)| [a, b]).collect();
        LatticeJson { elements: p.elements, order: p.leq, covers }
    }
}

/// `{ "name": ..., "elements": [...], "covers": [[lower, upper], ...] }`
/// with covers given by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceLattice {
    pub name: String,
    pub elements: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

impl ReferenceLattice {
    pub fn from_lattice(name: &str, l: &Lattice) -> ReferenceLattice {
        let covers = l.covers().into_iter().map(|(a, b)| [l.label(a).to_string(), l.label(b).to_string()]).collect();
        ReferenceLattice { name: name.to_string(), elements: l.labels().to_vec(), covers }
    }

    /// Labeled-lattice equality: same label set, same labeled covers.
    pub fn matches(&self, l: &Lattice) -> std::result::Result<(), String> {
        let mut want: Vec<&String> = self.elements.iter().collect();
        let mut got: Vec<&String> = l.labels().iter().collect();
        want.sort();
        got.sort();
        if want != got {
            return Err(format!("elements differ: expected {want:?}, got {got:?}"));
        }
        let mut want_c: Vec<[String; 2]> = self.covers.clone();
        let mut got_c = ReferenceLattice::from_lattice(&self.name, l).covers;
        want_c.sort();
        got_c.sort();
        if want_c != got_c {
            return Err(format!("covers differ: expected {want_c:?}, got {got_c:?}"));
        }
        Ok(())
    }
}

/// Output envelope: what was computed, from what, and the result.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResultJson<T> {
    pub kind: String,
    pub inputs: Vec<String>,
    pub provenance: BTreeMap<String, serde_json::Value>,
    pub result: T,
}

pub fn hom_json(dom: &str, cod: &str, f: &FrameHom) -> HomJson {
    HomJson { dom: dom.to_string(), cod: cod.to_string(), map: f.map().to_vec() }
}
