//! Finite posets and lattices.
//!
//! Elements are indices `0..n` carrying unique string labels. The order is
//! stored as one bitset per element (its principal up-set and down-set), and a
//! lattice additionally carries full meet and join tables.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::Limits;

pub type Elem = usize;

/// A validated finite partial order.
#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for Poset {}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Poset {
    /// Validates a full relation matrix: `leq[x][y]` means `x ≤ y`.
    pub fn from_matrix(labels: Vec<String>, leq: &[Vec<bool>]) -> Result<Poset> {
        let n = labels.len();
        check_labels(&labels)?;
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::IndexOutOfRange { index: leq.len(), size: n });
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::NotReflexive(labels[x].clone()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::NotAntisymmetric(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !leq[x][y] {
                    continue;
                }
                for z in 0..n {
                    if leq[y][z] && !leq[x][z] {
                        return Err(Error::NotTransitive(
                            labels[x].clone(),
                            labels[y].clone(),
                            labels[z].clone(),
                        ));
                    }
                }
            }
        }
        Ok(Self::from_matrix_unchecked(labels, |x, y| leq[x][y]))
    }

    /// Validates a relation given as index pairs `(x, y)` meaning `x ≤ y`.
    /// Reflexive pairs may be omitted.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Poset> {
        let n = labels.len();
        let mut m = vec![vec![false; n]; n];
        for (x, row) in m.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            m[x][y] = true;
        }
        Self::from_matrix(labels, &m)
    }

    /// Builds the reflexive-transitive closure of the given pairs, then validates.
    pub fn from_generating_pairs(labels: Vec<String>, pairs: &[(Elem, Elem)]) -> Result<Poset> {
        let n = labels.len();
        let mut m = vec![vec![false; n]; n];
        for (x, row) in m.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            m[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        if m[k][j] {
                            m[i][j] = true;
                        }
                    }
                }
            }
        }
        Self::from_matrix(labels, &m)
    }

    pub(crate) fn from_matrix_unchecked(labels: Vec<String>, leq: impl Fn(Elem, Elem) -> bool) -> Poset {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        Poset { labels, up, down }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.up[x].contains(y)
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn up_set(&self, x: Elem) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn down_set(&self, x: Elem) -> &FixedBitSet {
        &self.down[x]
    }

    /// Pairs `(x, y)` with `x < y` and nothing strictly between.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].ones() {
                if y == x {
                    continue;
                }
                let between = self.up[x]
                    .intersection(&self.down[y])
                    .any(|z| z != x && z != y);
                if !between {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements strictly below `x` with nothing strictly between.
    pub fn lower_covers(&self, x: Elem) -> Vec<Elem> {
        self.down[x]
            .ones()
            .filter(|&y| y != x)
            .filter(|&y| !self.up[y].intersection(&self.down[x]).any(|z| z != x && z != y))
            .collect()
    }

    pub fn upper_covers(&self, x: Elem) -> Vec<Elem> {
        self.up[x]
            .ones()
            .filter(|&y| y != x)
            .filter(|&y| !self.up[x].intersection(&self.down[y]).any(|z| z != x && z != y))
            .collect()
    }

    /// Length of the longest chain from a minimal element up to `x`.
    pub fn heights(&self) -> Vec<usize> {
        let mut order: Vec<Elem> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.down[x].count_ones(..));
        let mut h = vec![0usize; self.len()];
        for &x in &order {
            h[x] = self
                .lower_covers(x)
                .into_iter()
                .map(|y| h[y] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// The sub-poset on the given elements, keeping labels.
    pub fn restrict(&self, elems: &[Elem]) -> Poset {
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        Poset::from_matrix_unchecked(labels, |i, j| self.leq(elems[i], elems[j]))
    }

    /// Elements ordered so that `x < y` implies `x` comes first.
    pub fn linear_extension(&self) -> Vec<Elem> {
        let mut order: Vec<Elem> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.down[x].count_ones(..), x));
        order
    }
}

/// Meet and join tables of a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    n: usize,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    pub bottom: Elem,
    pub top: Elem,
}

impl LatticeTables {
    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.n + b]
    }
}

/// A finite lattice: a poset together with its meet/join tables.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    tables: LatticeTables,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Eq for Lattice {}

fn extremum(candidates: &FixedBitSet, sets: &[FixedBitSet]) -> Option<Elem> {
    let count = candidates.count_ones(..);
    candidates.ones().find(|&g| sets[g].count_ones(..) == count)
}

/// Computes meet/join tables, failing on the first pair without a unique
/// glb or lub.
pub fn lattice_tables(p: &Poset) -> Result<LatticeTables> {
    let n = p.len();
    if n == 0 {
        return Err(Error::NotALattice("∅".into(), "∅".into(), "bound"));
    }
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in a..n {
            let mut lower = p.down[a].clone();
            lower.intersect_with(&p.down[b]);
            let g = extremum(&lower, &p.down)
                .ok_or_else(|| Error::NotALattice(p.labels[a].clone(), p.labels[b].clone(), "meet"))?;
            let mut upper = p.up[a].clone();
            upper.intersect_with(&p.up[b]);
            let l = extremum(&upper, &p.up)
                .ok_or_else(|| Error::NotALattice(p.labels[a].clone(), p.labels[b].clone(), "join"))?;
            meet[a * n + b] = g;
            meet[b * n + a] = g;
            join[a * n + b] = l;
            join[b * n + a] = l;
        }
    }
    let all = {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        s
    };
    let bottom = (0..n).find(|&x| p.up[x] == all).ok_or_else(|| {
        Error::NotALattice(p.labels[0].clone(), p.labels[0].clone(), "bottom")
    })?;
    let top = (0..n).find(|&x| p.down[x] == all).ok_or_else(|| {
        Error::NotALattice(p.labels[0].clone(), p.labels[0].clone(), "top")
    })?;
    Ok(LatticeTables { n, meet, join, bottom, top })
}

impl Lattice {
    pub fn from_poset(poset: Poset) -> Result<Lattice> {
        let tables = lattice_tables(&poset)?;
        Ok(Lattice { poset, tables })
    }

    /// Builds a lattice from tables already known to be correct.
    pub(crate) fn from_parts(poset: Poset, meet: Vec<Elem>, join: Vec<Elem>, bottom: Elem, top: Elem) -> Lattice {
        let n = poset.len();
        debug_assert_eq!(meet.len(), n * n);
        Lattice {
            poset,
            tables: LatticeTables { n, meet, join, bottom, top },
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn tables(&self) -> &LatticeTables {
        &self.tables
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.poset.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.tables.meet(a, b)
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.tables.join(a, b)
    }

    pub fn bottom(&self) -> Elem {
        self.tables.bottom
    }

    pub fn top(&self) -> Elem {
        self.tables.top
    }

    pub fn label(&self, a: Elem) -> &str {
        self.poset.label(a)
    }

    pub fn labels(&self) -> &[String] {
        self.poset.labels()
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.poset.index_of(label)
    }

    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        self.poset.covers()
    }

    /// Join-irreducible elements: not the bottom, and exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        self.elements()
            .filter(|&j| j != self.bottom() && self.poset.lower_covers(j).len() == 1)
            .collect()
    }

    /// The poset of join-irreducibles, with the embedding into this lattice.
    pub fn join_irreducible_poset(&self) -> (Poset, Vec<Elem>) {
        let js = self.join_irreducibles();
        (self.poset.restrict(&js), js)
    }

    /// First triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`.
    pub fn distributivity_counterexample(&self) -> Option<(Elem, Elem, Elem)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in b + 1..self.len() {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_counterexample().is_none()
    }

    /// A sublattice isomorphic to N₅, as `[bottom, a, c, b, top]` with
    /// `a < c` and `b` incomparable to both.
    pub fn find_pentagon(&self) -> Option<[Elem; 5]> {
        for a in self.elements() {
            for c in self.poset.up[a].ones() {
                if c == a {
                    continue;
                }
                for b in self.elements() {
                    if self.leq(b, c) || self.leq(a, b) {
                        continue;
                    }
                    let lo = self.meet(c, b);
                    let hi = self.join(a, b);
                    if self.meet(a, b) == lo && self.join(c, b) == hi {
                        return Some([lo, a, c, b, hi]);
                    }
                }
            }
        }
        None
    }

    /// A sublattice isomorphic to M₃, as `[bottom, x, y, z, top]`.
    pub fn find_diamond(&self) -> Option<[Elem; 5]> {
        let n = self.len();
        let incomparable = |x: Elem, y: Elem| !self.leq(x, y) && !self.leq(y, x);
        for x in 0..n {
            for y in x + 1..n {
                if !incomparable(x, y) {
                    continue;
                }
                let lo = self.meet(x, y);
                let hi = self.join(x, y);
                for z in y + 1..n {
                    if incomparable(x, z)
                        && incomparable(y, z)
                        && self.meet(x, z) == lo
                        && self.meet(y, z) == lo
                        && self.join(x, z) == hi
                        && self.join(y, z) == hi
                    {
                        return Some([lo, x, y, z, hi]);
                    }
                }
            }
        }
        None
    }

    /// Some order isomorphism `self → other` respecting the given element
    /// colours, found by backtracking with height and cover-degree pruning.
    pub fn find_isomorphism_colored(&self, other: &Lattice, colors: &[u32], other_colors: &[u32]) -> Option<Vec<Elem>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |l: &Lattice, cs: &[u32]| -> Vec<(usize, usize, usize, usize, u32)> {
            let h = l.poset.heights();
            (0..l.len())
                .map(|x| {
                    (
                        h[x],
                        l.poset.lower_covers(x).len(),
                        l.poset.upper_covers(x).len(),
                        l.poset.down[x].count_ones(..),
                        cs.get(x).copied().unwrap_or(0),
                    )
                })
                .collect()
        };
        let sa = sig(self, colors);
        let sb = sig(other, other_colors);
        let mut ha = sa.clone();
        let mut hb = sb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
        let order = self.poset.linear_extension();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            k: usize,
            order: &[Elem],
            a: &Lattice,
            b: &Lattice,
            sa: &[(usize, usize, usize, usize, u32)],
            sb: &[(usize, usize, usize, usize, u32)],
            map: &mut [Elem],
            used: &mut [bool],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let x = order[k];
            for y in 0..b.len() {
                if used[y] || sa[x] != sb[y] {
                    continue;
                }
                let ok = order[..k].iter().all(|&x2| {
                    let y2 = map[x2];
                    a.leq(x, x2) == b.leq(y, y2) && a.leq(x2, x) == b.leq(y2, y)
                });
                if !ok {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(k + 1, order, a, b, sa, sb, map, used) {
                    return true;
                }
                used[y] = false;
            }
            map[x] = usize::MAX;
            false
        }
        if go(0, &order, self, other, &sa, &sb, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    pub fn find_isomorphism(&self, other: &Lattice) -> Option<Vec<Elem>> {
        self.find_isomorphism_colored(other, &[], &[])
    }

    pub fn is_isomorphic(&self, other: &Lattice) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Same order, new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Lattice> {
        check_labels(&labels)?;
        if labels.len() != self.len() {
            return Err(Error::IndexOutOfRange { index: labels.len(), size: self.len() });
        }
        let mut poset = self.poset.clone();
        poset.labels = labels;
        Ok(Lattice { poset, tables: self.tables.clone() })
    }
}

/// All down-closed subsets of `q` as bitmasks over its elements, sorted by
/// size and then numerically.
pub fn downsets(q: &Poset, limits: &Limits) -> Result<Vec<u64>> {
    let m = q.len();
    if m > limits.downset_points || m > 63 {
        return Err(Error::SizeLimitExceeded {
            what: "downset lattice points",
            size: m,
            cap: limits.downset_points.min(63),
        });
    }
    let order = q.linear_extension();
    let below: Vec<u64> = (0..m)
        .map(|x| q.down[x].ones().filter(|&y| y != x).fold(0u64, |acc, y| acc | (1 << y)))
        .collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, 0u64)];
    while let Some((k, mask)) = stack.pop() {
        if k == m {
            out.push(mask);
            if out.len() > limits.lattice_elements {
                return Err(Error::SizeLimitExceeded {
                    what: "lattice elements",
                    size: out.len(),
                    cap: limits.lattice_elements,
                });
            }
            continue;
        }
        let x = order[k];
        stack.push((k + 1, mask));
        if below[x] & !mask == 0 {
            stack.push((k + 1, mask | (1 << x)));
        }
    }
    out.sort_by_key(|&d| (d.count_ones(), d));
    Ok(out)
}

/// The lattice of the given down-sets under inclusion, with meet = ∩ and
/// join = ∪. `masks` must be closed under both.
pub(crate) fn lattice_from_masks(masks: &[u64], labels: Vec<String>) -> Lattice {
    let n = masks.len();
    let index: HashMap<u64, Elem> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let poset = Poset::from_matrix_unchecked(labels, |x, y| masks[x] & !masks[y] == 0);
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            meet[a * n + b] = index[&(masks[a] & masks[b])];
            join[a * n + b] = index[&(masks[a] | masks[b])];
        }
    }
    let bottom = index[&masks.iter().fold(u64::MAX, |acc, &m| acc & m)];
    let top = index[&masks.iter().fold(0, |acc, &m| acc | m)];
    Lattice::from_parts(poset, meet, join, bottom, top)
}

/// Birkhoff: the lattice of down-sets of `q`. Elements are labelled by
/// their maximal points, e.g. `{x,y}`, with `∅` for the empty down-set.
pub fn downset_lattice(q: &Poset, limits: &Limits) -> Result<Lattice> {
    let masks = downsets(q, limits)?;
    let labels = masks
        .iter()
        .map(|&d| {
            let maxima: Vec<&str> = (0..q.len())
                .filter(|&x| d & (1 << x) != 0)
                .filter(|&x| !q.up[x].ones().any(|y| y != x && d & (1 << y) != 0))
                .map(|x| q.label(x))
                .collect();
            if maxima.is_empty() {
                "∅".to_string()
            } else {
                format!("{{{}}}", maxima.join(","))
            }
        })
        .collect();
    Ok(lattice_from_masks(&masks, labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn chain3() -> Poset {
        Poset::from_pairs(labels(&["0", "a", "1"]), &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn diamond() -> Lattice {
        let p = Poset::from_generating_pairs(labels(&["0", "x", "y", "1"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        Lattice::from_poset(p).unwrap()
    }

    fn n5() -> Lattice {
        let p = Poset::from_generating_pairs(
            labels(&["0", "a", "c", "b", "1"]),
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
        .unwrap();
        Lattice::from_poset(p).unwrap()
    }

    fn m3() -> Lattice {
        let p = Poset::from_generating_pairs(
            labels(&["0", "x", "y", "z", "1"]),
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        Lattice::from_poset(p).unwrap()
    }

    #[test]
    fn validate_chain_and_grid() {
        assert_eq!(chain3().len(), 3);
        let grid = Poset::from_generating_pairs(labels(&["00", "10", "01", "11"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(grid.is_ok());
    }

    #[test]
    fn validation_errors_name_witnesses() {
        let e = Poset::from_pairs(labels(&["x", "y"]), &[(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(e, Error::NotAntisymmetric("x".into(), "y".into()));
        let e = Poset::from_pairs(labels(&["x", "y", "z"]), &[(0, 1), (1, 2)]).unwrap_err();
        assert_eq!(e, Error::NotTransitive("x".into(), "y".into(), "z".into()));
        let e = Poset::from_matrix(labels(&["x"]), &[vec![false]]).unwrap_err();
        assert_eq!(e, Error::NotReflexive("x".into()));
        let e = Poset::from_pairs(labels(&["x", "x"]), &[]).unwrap_err();
        assert_eq!(e, Error::DuplicateLabel("x".into()));
    }

    #[test]
    fn chain_tables() {
        let l = Lattice::from_poset(chain3()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.meet(a, b), a.min(b));
                assert_eq!(l.join(a, b), a.max(b));
            }
        }
        assert_eq!((l.bottom(), l.top()), (0, 2));
    }

    #[test]
    fn antichain_is_not_a_lattice() {
        let p = Poset::from_pairs(labels(&["x", "y"]), &[]).unwrap();
        assert!(matches!(Lattice::from_poset(p), Err(Error::NotALattice(..))));
    }

    #[test]
    fn diamond_tables() {
        let l = diamond();
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
    }

    // brute force: j is join-irreducible iff j ≠ 0 and j = a ∨ b forces j ∈ {a, b}
    fn ji_oracle(l: &Lattice) -> Vec<Elem> {
        l.elements()
            .filter(|&j| j != l.bottom())
            .filter(|&j| {
                l.elements()
                    .all(|a| l.elements().all(|b| l.join(a, b) != j || a == j || b == j))
            })
            .collect()
    }

    #[test]
    fn join_irreducibles_match_oracle() {
        let chain = Lattice::from_poset(chain3()).unwrap();
        assert_eq!(chain.join_irreducibles(), vec![1, 2]);
        assert_eq!(ji_oracle(&chain), vec![1, 2]);
        let d = diamond();
        assert_eq!(d.join_irreducibles(), vec![1, 2]);
        assert_eq!(ji_oracle(&d), vec![1, 2]);
        let (jp, _) = d.join_irreducible_poset();
        assert!(!jp.leq(0, 1) && !jp.leq(1, 0));
        let two = Lattice::from_poset(Poset::from_pairs(labels(&["0", "1"]), &[(0, 1)]).unwrap()).unwrap();
        assert_eq!(two.join_irreducibles(), vec![1]);
        for l in [n5(), m3()] {
            assert_eq!(l.join_irreducibles(), ji_oracle(&l));
        }
    }

    // brute force: every subset, keep the down-closed ones
    fn downset_count_oracle(q: &Poset) -> usize {
        let m = q.len();
        (0u64..1 << m)
            .filter(|&s| (0..m).all(|x| s & (1 << x) == 0 || q.down_set(x).ones().all(|y| s & (1 << y) != 0)))
            .count()
    }

    #[test]
    fn downset_lattices() {
        let limits = Limits::default();
        let two = Poset::from_pairs(labels(&["a", "1"]), &[(0, 1)]).unwrap();
        let l = downset_lattice(&two, &limits).unwrap();
        assert_eq!(l.len(), 3);
        assert!(l.is_isomorphic(&Lattice::from_poset(chain3()).unwrap()));

        let anti = Poset::from_pairs(labels(&["x", "y"]), &[]).unwrap();
        let l = downset_lattice(&anti, &limits).unwrap();
        assert_eq!(l.len(), downset_count_oracle(&anti));
        assert!(l.is_isomorphic(&diamond()));

        let grid = Poset::from_generating_pairs(labels(&["aa", "a1", "1a", "11"]), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let l = downset_lattice(&grid, &limits).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(downset_count_oracle(&grid), 6);
        assert!(l.is_distributive());
        assert_eq!(l.covers().len(), 6);
    }

    #[test]
    fn downset_cap() {
        let limits = Limits { downset_points: 3, ..Limits::default() };
        let anti = Poset::from_pairs(labels(&["p", "q", "r", "s"]), &[]).unwrap();
        assert!(matches!(downsets(&anti, &limits), Err(Error::SizeLimitExceeded { .. })));
    }

    #[test]
    fn distributivity_and_witnesses() {
        let d = diamond();
        assert!(d.is_distributive());
        assert!(d.find_pentagon().is_none());
        assert!(d.find_diamond().is_none());
        let p = n5();
        assert!(!p.is_distributive());
        let [lo, a, c, b, hi] = p.find_pentagon().unwrap();
        assert!(p.leq(a, c) && a != c);
        assert_eq!(p.meet(a, b), lo);
        assert_eq!(p.join(c, b), hi);
        let m = m3();
        assert!(!m.is_distributive());
        assert!(m.find_pentagon().is_none());
        assert!(m.find_diamond().is_some());
        assert!(Lattice::from_poset(chain3()).unwrap().is_distributive());
    }

    #[test]
    fn isomorphism_search() {
        let a = diamond();
        let b = a.relabeled(labels(&["b", "p", "q", "t"])).unwrap();
        let iso = a.find_isomorphism(&b).unwrap();
        assert_eq!(iso[0], 0);
        assert_eq!(iso[3], 3);
        assert!(!a.is_isomorphic(&Lattice::from_poset(chain3()).unwrap()));
        assert!(!n5().is_isomorphic(&m3()));
    }
}
