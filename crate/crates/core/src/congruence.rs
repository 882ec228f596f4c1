//! Frame congruences, generated congruences and quotient frames.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::frame::{same_frame, Frame, FrameHom};
use crate::order::{Elem, Lattice, Poset};
use crate::Limits;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if already in the same class. The smaller root wins.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A congruence on a finite frame, stored as the least element index of
/// each element's block.
#[derive(Clone, Debug)]
pub struct Congruence {
    frame: Arc<Frame>,
    rep: Vec<Elem>,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && same_frame(&self.frame, &other.frame)
    }
}

impl Eq for Congruence {}

/// Runs the closure worklist on top of `uf`, which must already hold a
/// congruence (or the diagonal).
fn close(frame: &Frame, uf: &mut UnionFind, pairs: impl IntoIterator<Item = (Elem, Elem)>) {
    let mut work: Vec<(Elem, Elem)> = pairs.into_iter().collect();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for c in frame.elements() {
                work.push((frame.meet(a, c), frame.meet(b, c)));
                work.push((frame.join(a, c), frame.join(b, c)));
            }
        }
    }
}

fn canonical(uf: &mut UnionFind, n: usize) -> Vec<Elem> {
    // roots are the least index of their block since union keeps the smaller root
    (0..n).map(|x| uf.find(x)).collect()
}

impl Congruence {
    pub fn diagonal(frame: Arc<Frame>) -> Congruence {
        let rep = frame.elements().collect();
        Congruence { frame, rep }
    }

    /// The congruence identifying everything.
    pub fn total(frame: Arc<Frame>) -> Congruence {
        let rep = vec![0; frame.len()];
        Congruence { frame, rep }
    }

    /// The least congruence containing `pairs`.
    pub fn closure(frame: Arc<Frame>, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Congruence {
        let n = frame.len();
        let mut uf = UnionFind::new(n);
        close(&frame, &mut uf, pairs);
        let rep = canonical(&mut uf, n);
        Congruence { frame, rep }
    }

    /// The least congruence containing this one and `pairs`.
    pub fn extend(&self, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Congruence {
        let n = self.frame.len();
        let mut uf = UnionFind { parent: self.rep.clone() };
        close(&self.frame, &mut uf, pairs);
        let rep = canonical(&mut uf, n);
        Congruence { frame: self.frame.clone(), rep }
    }

    /// Validates an explicit partition into blocks.
    pub fn from_blocks(frame: Arc<Frame>, blocks: &[Vec<Elem>]) -> Result<Congruence> {
        let n = frame.len();
        let mut rep = vec![usize::MAX; n];
        for block in blocks {
            let least = *block.iter().min().ok_or(Error::FrameMismatch("empty block"))?;
            for &x in block {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, size: n });
                }
                if rep[x] != usize::MAX {
                    return Err(Error::FrameMismatch("blocks overlap"));
                }
                rep[x] = least;
            }
        }
        if rep.contains(&usize::MAX) {
            return Err(Error::FrameMismatch("blocks do not cover the frame"));
        }
        let c = Congruence { frame, rep };
        c.check_law()?;
        Ok(c)
    }

    /// Checks `a ~ b ⇒ a∧c ~ b∧c and a∨c ~ b∨c`, which is equivalent to the
    /// full congruence law for lattices.
    pub fn check_law(&self) -> Result<()> {
        let f = &self.frame;
        for a in f.elements() {
            let b = self.rep[a];
            if a == b {
                continue;
            }
            for c in f.elements() {
                if !self.related(f.meet(a, c), f.meet(b, c)) || !self.related(f.join(a, c), f.join(b, c)) {
                    return Err(Error::NotACongruence(
                        f.label(a).to_string(),
                        f.label(b).to_string(),
                        f.label(c).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `𝔠(a)`: `x ~ y` iff `x ∨ a = y ∨ a`.
    pub fn closed(frame: Arc<Frame>, a: Elem) -> Congruence {
        Self::from_key(frame.clone(), |x| frame.join(x, a))
    }

    /// `𝔬(a)`: `x ~ y` iff `x ∧ a = y ∧ a`.
    pub fn open(frame: Arc<Frame>, a: Elem) -> Congruence {
        Self::from_key(frame.clone(), |x| frame.meet(x, a))
    }

    pub(crate) fn from_key<K: std::hash::Hash + Eq>(frame: Arc<Frame>, key: impl Fn(Elem) -> K) -> Congruence {
        let n = frame.len();
        let mut first = std::collections::HashMap::new();
        let rep = (0..n).map(|x| *first.entry(key(x)).or_insert(x)).collect();
        Congruence { frame, rep }
    }

    /// Kernel of a frame homomorphism: its fibres.
    pub fn kernel(f: &FrameHom) -> Congruence {
        Self::from_key(f.dom().clone(), |x| f.apply(x))
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    /// Canonical form: least index of each element's block.
    pub fn reps(&self) -> &[Elem] {
        &self.rep
    }

    #[inline]
    pub fn rep(&self, x: Elem) -> Elem {
        self.rep[x]
    }

    #[inline]
    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out: Vec<Vec<Elem>> = Vec::new();
        let mut slot = vec![usize::MAX; self.rep.len()];
        for x in 0..self.rep.len() {
            let r = self.rep[x];
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    pub fn block_count(&self) -> usize {
        (0..self.rep.len()).filter(|&x| self.rep[x] == x).count()
    }

    /// Largest element of the block of `x` (blocks are intervals).
    pub fn block_top(&self, x: Elem) -> Elem {
        let r = self.rep[x];
        self.frame.join_all((0..self.rep.len()).filter(|&y| self.rep[y] == r))
    }

    pub fn is_diagonal(&self) -> bool {
        self.rep.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_total(&self) -> bool {
        self.rep.iter().all(|&r| r == 0)
    }

    /// The projection is dense iff the block of `0` is `{0}`.
    pub fn is_dense(&self) -> bool {
        let z = self.frame.bottom();
        (0..self.rep.len()).all(|x| x == z || !self.related(x, z))
    }

    /// Inclusion of relations: `self ⊆ other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.rep.len()).all(|x| other.related(x, self.rep[x]))
    }

    /// Least congruence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        self.extend((0..other.rep.len()).map(|x| (x, other.rep[x])))
    }

    /// Intersection.
    pub fn meet(&self, other: &Congruence) -> Congruence {
        Self::from_key(self.frame.clone(), |x| (self.rep[x], other.rep[x]))
    }

    /// Pairs `(x, rep(x))` generating this congruence.
    pub fn generators(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        (0..self.rep.len()).filter(|&x| self.rep[x] != x).map(|x| (x, self.rep[x]))
    }

    /// Restriction to a set of elements, as pairs within it.
    pub fn pairs_within<'a>(&'a self, elems: &'a [Elem]) -> impl Iterator<Item = (Elem, Elem)> + 'a {
        elems
            .iter()
            .flat_map(move |&a| elems.iter().map(move |&b| (a, b)))
            .filter(move |&(a, b)| a < b && self.related(a, b))
    }

    /// Transport along `h: L → M`: the least congruence on `M` containing
    /// `(h(a), h(b))` for all `a ~ b`.
    pub fn push_along(&self, h: &FrameHom) -> Congruence {
        debug_assert!(same_frame(h.dom(), &self.frame));
        Congruence::closure(h.cod().clone(), self.generators().map(|(a, b)| (h.apply(a), h.apply(b))))
    }

    /// Pullback along `h: M → L`: `x ~ y` iff `h(x) ~ h(y)`.
    pub fn pull_back(&self, h: &FrameHom) -> Congruence {
        Self::from_key(h.dom().clone(), |x| self.rep[h.apply(x)])
    }

    /// The quotient frame and its projection. Block `⟨a⟩` is labelled by the
    /// label of its largest element; blocks are indexed in order of their
    /// least elements.
    pub fn quotient(&self) -> (Arc<Frame>, FrameHom) {
        let f = &self.frame;
        let n = f.len();
        let reps: Vec<Elem> = (0..n).filter(|&x| self.rep[x] == x).collect();
        let mut slot = vec![0; n];
        for (i, &r) in reps.iter().enumerate() {
            slot[r] = i;
        }
        let block_of = |x: Elem| slot[self.rep[x]];
        let labels = reps.iter().map(|&r| f.label(self.block_top(r)).to_string()).collect();
        let m = reps.len();
        let poset = Poset::from_matrix_unchecked(labels, |i, j| self.related(f.join(reps[i], reps[j]), reps[j]));
        let mut meet = vec![0; m * m];
        let mut join = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                meet[i * m + j] = block_of(f.meet(reps[i], reps[j]));
                join[i * m + j] = block_of(f.join(reps[i], reps[j]));
            }
        }
        let lattice = Lattice::from_parts(poset, meet, join, block_of(f.bottom()), block_of(f.top()));
        let q = Arc::new(Frame::from_distributive(lattice));
        let map = (0..n).map(block_of).collect();
        let p = FrameHom::new_unchecked(f.clone(), q.clone(), map);
        (q, p)
    }

    /// The unique `h̃` with `h̃ ∘ p = h`, where `p` is the projection returned
    /// by [`Congruence::quotient`] on `quotient_frame`.
    pub fn factor_through(&self, h: &FrameHom, quotient_frame: &Arc<Frame>) -> Result<FrameHom> {
        if !same_frame(h.dom(), &self.frame) {
            return Err(Error::FrameMismatch("map does not start at the congruence's frame"));
        }
        for x in 0..self.rep.len() {
            if h.apply(x) != h.apply(self.rep[x]) {
                return Err(Error::NotConstantOnBlocks(
                    self.frame.label(self.rep[x]).to_string(),
                    self.frame.label(x).to_string(),
                ));
            }
        }
        let map = (0..self.rep.len()).filter(|&x| self.rep[x] == x).map(|r| h.apply(r)).collect();
        Ok(FrameHom::new_unchecked(quotient_frame.clone(), h.cod().clone(), map))
    }
}

/// All congruences of `l`, sorted from finest (diagonal) to coarsest.
///
/// Starts from the diagonal and repeatedly joins principal congruences of
/// covering pairs; every congruence is such a join.
pub fn all_congruences(l: &Arc<Frame>, limits: &Limits) -> Result<Vec<Congruence>> {
    limits.check_enumeration("congruence enumeration", l.len())?;
    let covers = l.covers();
    let diag = Congruence::diagonal(l.clone());
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    seen.insert(diag.rep.clone());
    let mut out = vec![diag.clone()];
    let mut queue = VecDeque::from([diag]);
    while let Some(c) = queue.pop_front() {
        for &(a, b) in &covers {
            if c.related(a, b) {
                continue;
            }
            let d = c.extend([(a, b)]);
            if seen.insert(d.rep.clone()) {
                out.push(d.clone());
                queue.push_back(d);
                if out.len() > limits.lattice_elements {
                    return Err(Error::SizeLimitExceeded {
                        what: "congruence count",
                        size: out.len(),
                        cap: limits.lattice_elements,
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| y.block_count().cmp(&x.block_count()).then_with(|| x.rep.cmp(&y.rep)));
    Ok(out)
}
