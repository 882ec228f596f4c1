//! Finite frames and frame homomorphisms.
//!
//! In a finite lattice arbitrary joins are finite joins, so a finite frame is
//! exactly a bounded distributive lattice and a frame homomorphism is a map
//! preserving `0`, `1`, binary meets and binary joins.

use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::{Elem, Lattice, Poset};
use crate::Limits;

/// A validated finite frame with its Heyting implication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    lattice: Lattice,
    imp: Vec<Elem>,
}

impl Deref for Frame {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

pub(crate) fn same_frame(a: &Arc<Frame>, b: &Arc<Frame>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Frame {
    pub fn new(lattice: Lattice) -> Result<Frame> {
        if let Some((a, b, c)) = lattice.distributivity_counterexample() {
            return Err(Error::NotDistributive(
                lattice.label(a).to_string(),
                lattice.label(b).to_string(),
                lattice.label(c).to_string(),
            ));
        }
        Ok(Self::from_distributive(lattice))
    }

    pub fn from_poset(poset: Poset) -> Result<Frame> {
        Frame::new(Lattice::from_poset(poset)?)
    }

    /// Skips the distributivity check; callers guarantee it.
    pub(crate) fn from_distributive(lattice: Lattice) -> Frame {
        let n = lattice.len();
        let mut imp = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                imp[a * n + b] = lattice.join_all((0..n).filter(|&x| lattice.leq(lattice.meet(a, x), b)));
            }
        }
        Frame { lattice, imp }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `a → b`, the largest `x` with `a ∧ x ≤ b`.
    #[inline]
    pub fn heyting(&self, a: Elem, b: Elem) -> Elem {
        self.imp[a * self.len() + b]
    }

    /// `a* = a → 0`.
    #[inline]
    pub fn pseudocomplement(&self, a: Elem) -> Elem {
        self.heyting(a, self.bottom())
    }

    #[inline]
    pub fn double_pseudocomplement(&self, a: Elem) -> Elem {
        self.pseudocomplement(self.pseudocomplement(a))
    }

    pub fn is_regular(&self, a: Elem) -> bool {
        self.double_pseudocomplement(a) == a
    }

    pub fn is_boolean(&self) -> bool {
        self.elements().all(|a| self.join(a, self.pseudocomplement(a)) == self.top())
    }

    /// The one-element frame, where `0 = 1`.
    pub fn is_trivial(&self) -> bool {
        self.bottom() == self.top()
    }

    /// Smallest subset containing `seeds`, `0` and `1` that is closed under
    /// binary meet and join. Sorted.
    pub fn subframe_generated(&self, seeds: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
        let mut member = vec![false; self.len()];
        let mut elems = Vec::new();
        for x in seeds.into_iter().chain([self.bottom(), self.top()]) {
            if !member[x] {
                member[x] = true;
                elems.push(x);
            }
        }
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for k in 0..=i {
                let y = elems[k];
                for z in [self.meet(x, y), self.join(x, y)] {
                    if !member[z] {
                        member[z] = true;
                        elems.push(z);
                    }
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Checks closure under `0`, `1`, `∧`, `∨`; on failure returns a witness.
    pub fn subframe_violation(&self, elems: &[Elem]) -> Option<String> {
        let mut member = vec![false; self.len()];
        for &x in elems {
            member[x] = true;
        }
        for (x, name) in [(self.bottom(), "0"), (self.top(), "1")] {
            if !member[x] {
                return Some(format!("missing {name}"));
            }
        }
        for &a in elems {
            for &b in elems {
                if !member[self.meet(a, b)] {
                    return Some(format!("{} ∧ {}", self.label(a), self.label(b)));
                }
                if !member[self.join(a, b)] {
                    return Some(format!("{} ∨ {}", self.label(a), self.label(b)));
                }
            }
        }
        None
    }

    /// The induced subframe on `elems` (sorted, closed). Element `i` of the
    /// result is `elems[i]` here; labels are kept.
    pub fn subframe(&self, elems: &[Elem]) -> Result<Frame> {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        if let Some(w) = self.subframe_violation(elems) {
            return Err(Error::NotSubframe { component: 0, witness: w });
        }
        let poset = self.poset().restrict(elems);
        let pos = |x: Elem| elems.binary_search(&x).expect("closed subset");
        let n = elems.len();
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                meet[i * n + j] = pos(self.meet(elems[i], elems[j]));
                join[i * n + j] = pos(self.join(elems[i], elems[j]));
            }
        }
        let lattice = Lattice::from_parts(poset, meet, join, pos(self.bottom()), pos(self.top()));
        Ok(Frame::from_distributive(lattice))
    }
}

/// A frame homomorphism between finite frames, stored pointwise.
#[derive(Clone, Debug)]
pub struct FrameHom {
    dom: Arc<Frame>,
    cod: Arc<Frame>,
    map: Vec<Elem>,
}

impl PartialEq for FrameHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_frame(&self.dom, &other.dom) && same_frame(&self.cod, &other.cod)
    }
}

impl Eq for FrameHom {}

/// First failure of the homomorphism laws, if any.
fn hom_violation(dom: &Frame, cod: &Frame, map: &[Elem]) -> Option<Error> {
    let lab = |x: Elem| dom.label(x).to_string();
    if map[dom.bottom()] != cod.bottom() {
        return Some(Error::NotAHom { op: "bottom", a: lab(dom.bottom()), b: lab(dom.bottom()) });
    }
    if map[dom.top()] != cod.top() {
        return Some(Error::NotAHom { op: "top", a: lab(dom.top()), b: lab(dom.top()) });
    }
    for a in dom.elements() {
        for b in a + 1..dom.len() {
            if map[dom.meet(a, b)] != cod.meet(map[a], map[b]) {
                return Some(Error::NotAHom { op: "meet", a: lab(a), b: lab(b) });
            }
            if map[dom.join(a, b)] != cod.join(map[a], map[b]) {
                return Some(Error::NotAHom { op: "join", a: lab(a), b: lab(b) });
            }
        }
    }
    None
}

impl FrameHom {
    pub fn new(dom: Arc<Frame>, cod: Arc<Frame>, map: Vec<Elem>) -> Result<FrameHom> {
        if map.len() != dom.len() {
            return Err(Error::IndexOutOfRange { index: map.len(), size: dom.len() });
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= cod.len()) {
            return Err(Error::IndexOutOfRange { index: bad, size: cod.len() });
        }
        if let Some(e) = hom_violation(&dom, &cod, &map) {
            return Err(e);
        }
        Ok(FrameHom { dom, cod, map })
    }

    pub(crate) fn new_unchecked(dom: Arc<Frame>, cod: Arc<Frame>, map: Vec<Elem>) -> FrameHom {
        debug_assert!(hom_violation(&dom, &cod, &map).is_none());
        FrameHom { dom, cod, map }
    }

    pub fn identity(frame: Arc<Frame>) -> FrameHom {
        let map = frame.elements().collect();
        FrameHom { dom: frame.clone(), cod: frame, map }
    }

    /// Inclusion of a subframe built by [`Frame::subframe`] from `elems`.
    pub fn inclusion(sub: Arc<Frame>, parent: Arc<Frame>, elems: &[Elem]) -> FrameHom {
        FrameHom::new_unchecked(sub, parent, elems.to_vec())
    }

    pub fn dom(&self) -> &Arc<Frame> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Frame> {
        &self.cod
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `self ∘ f` (first `f`, then `self`).
    pub fn compose(&self, f: &FrameHom) -> Result<FrameHom> {
        if !same_frame(&f.cod, &self.dom) {
            return Err(Error::FrameMismatch("codomain of the first map is not the domain of the second"));
        }
        let map = f.map.iter().map(|&x| self.map[x]).collect();
        Ok(FrameHom { dom: f.dom.clone(), cod: self.cod.clone(), map })
    }

    /// Corestriction to a subframe of the codomain containing the image.
    pub fn corestrict(&self, sub: Arc<Frame>, elems: &[Elem]) -> Result<FrameHom> {
        let map = self
            .map
            .iter()
            .map(|&y| {
                elems
                    .binary_search(&y)
                    .map_err(|_| Error::FrameMismatch("image not contained in the corestriction"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FrameHom::new_unchecked(self.dom.clone(), sub, map))
    }

    /// Restriction to a subframe of the domain given by sorted `elems`.
    pub fn restrict(&self, sub: Arc<Frame>, elems: &[Elem]) -> FrameHom {
        let map = elems.iter().map(|&x| self.map[x]).collect();
        FrameHom::new_unchecked(sub, self.cod.clone(), map)
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<Elem> {
        let mut img = self.map.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn is_onto(&self) -> bool {
        self.image().len() == self.cod.len()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.len()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_onto() && self.is_injective()
    }

    /// Dense: `f(a) = 0` only for `a = 0`.
    pub fn is_dense(&self) -> bool {
        self.dom.elements().all(|a| self.map[a] != self.cod.bottom() || a == self.dom.bottom())
    }

    /// `f_*(y) = ⋁ {x : f(x) ≤ y}`.
    pub fn right_adjoint(&self) -> Vec<Elem> {
        self.cod
            .elements()
            .map(|y| self.dom.join_all(self.dom.elements().filter(|&x| self.cod.leq(self.map[x], y))))
            .collect()
    }
}

/// All frame homomorphisms `l → m`, in lexicographic order of their values
/// on the join-irreducibles of `l`.
///
/// A homomorphism out of a finite distributive lattice is determined by its
/// values on join-irreducibles; joins are then automatic, and meets reduce to
/// meets of pairs of join-irreducibles, which are checked as soon as both
/// values are assigned.
pub fn enumerate_homs(l: &Arc<Frame>, m: &Arc<Frame>, limits: &Limits) -> Result<Vec<FrameHom>> {
    limits.check_enumeration("hom enumeration domain", l.len())?;
    limits.check_enumeration("hom enumeration codomain", m.len())?;
    if l.is_trivial() {
        return Ok(if m.is_trivial() {
            vec![FrameHom::new_unchecked(l.clone(), m.clone(), vec![m.bottom()])]
        } else {
            Vec::new()
        });
    }
    let order: Vec<Elem> = {
        let js = l.join_irreducibles();
        let mut o = js.clone();
        o.sort_by_key(|&j| (l.poset().down_set(j).count_ones(..), j));
        o
    };
    let below: Vec<Vec<usize>> = l
        .elements()
        .map(|x| (0..order.len()).filter(|&k| l.leq(order[k], x)).collect())
        .collect();
    let mut assigned = vec![usize::MAX; order.len()];
    let mut out = Vec::new();

    fn value(m: &Frame, below: &[usize], assigned: &[Elem]) -> Elem {
        m.join_all(below.iter().map(|&k| assigned[k]))
    }

    fn go(
        t: usize,
        l: &Arc<Frame>,
        m: &Arc<Frame>,
        order: &[Elem],
        below: &[Vec<usize>],
        assigned: &mut [Elem],
        out: &mut Vec<FrameHom>,
    ) {
        if t == order.len() {
            let map: Vec<Elem> = l.elements().map(|x| value(m, &below[x], assigned)).collect();
            if map[l.top()] == m.top() {
                out.push(FrameHom::new_unchecked(l.clone(), m.clone(), map));
            }
            return;
        }
        let j = order[t];
        for y in m.elements() {
            let ok = (0..t).all(|s| {
                let j2 = order[s];
                if l.leq(j2, j) {
                    m.leq(assigned[s], y)
                } else {
                    let target = value(m, &below[l.meet(j, j2)], assigned);
                    m.meet(assigned[s], y) == target
                }
            });
            if ok {
                assigned[t] = y;
                go(t + 1, l, m, order, below, assigned, out);
            }
        }
        assigned[t] = usize::MAX;
    }

    go(0, l, m, &order, &below, &mut assigned, &mut out);
    Ok(out)
}
