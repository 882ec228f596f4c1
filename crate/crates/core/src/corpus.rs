//! The exhaustive test corpus: small frames, biframes built over quotients
//! of coproducts, and the biframe maps between the small ones.

use std::sync::Arc;

use crate::biframe::{Biframe, BiframeHom};
use crate::builtin;
use crate::colimit::coproduct;
use crate::congruence::all_congruences;
use crate::error::Result;
use crate::frame::{enumerate_homs, Frame};
use crate::order::{downset_lattice, Poset};
use crate::Limits;

fn is_chain(f: &Frame) -> bool {
    f.elements().all(|a| f.elements().all(|b| f.leq(a, b) || f.leq(b, a)))
}

fn relabel(f: Frame) -> Frame {
    let n = f.len();
    if n == 1 {
        return f;
    }
    let mut next = 0u8;
    let labels = f
        .elements()
        .map(|x| {
            if x == f.bottom() {
                "0".to_string()
            } else if x == f.top() {
                "1".to_string()
            } else {
                let c = (b'a' + next) as char;
                next += 1;
                c.to_string()
            }
        })
        .collect();
    Frame::new(f.lattice().relabeled(labels).expect("distinct")).expect("distributive")
}

/// All frames with at most `n` elements up to isomorphism, ordered by size.
///
/// Every finite frame is the down-set lattice of its join-irreducibles, so
/// it suffices to enumerate posets on at most `n − 1` points; each poset is
/// generated with a natural labelling (`i < j` only for `i < j` as numbers).
pub fn frames_up_to(n: usize) -> Vec<Frame> {
    named_frames_up_to(n).into_iter().map(|(_, f)| f).collect()
}

/// As [`frames_up_to`], with short names: chains by their size, `B2` for the
/// four-element Boolean frame, and `L<size><letter>` otherwise.
pub fn named_frames_up_to(n: usize) -> Vec<(String, Frame)> {
    let limits = Limits::default();
    let mut found: Vec<Frame> = Vec::new();
    for k in 0..n.max(1) {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
        for mask in 0u64..(1u64 << pairs.len()) {
            let rel: Vec<(usize, usize)> =
                (0..pairs.len()).filter(|&b| mask & (1 << b) != 0).map(|b| pairs[b]).collect();
            let holds = |i: usize, j: usize| rel.contains(&(i, j));
            let transitive = rel.iter().all(|&(i, j)| (j + 1..k).all(|l| !holds(j, l) || holds(i, l)));
            if !transitive {
                continue;
            }
            let labels = (0..k).map(|i| format!("p{i}")).collect();
            let Ok(p) = Poset::from_pairs(labels, &rel) else { continue };
            let Ok(l) = downset_lattice(&p, &limits) else { continue };
            if l.len() > n {
                continue;
            }
            if found.iter().any(|f| f.len() == l.len() && f.is_isomorphic(&l)) {
                continue;
            }
            found.push(relabel(Frame::new(l).expect("down-set lattices are distributive")));
        }
    }
    found.sort_by_key(|f| (f.len(), !is_chain(f), f.join_irreducibles().len()));
    let mut counts = std::collections::HashMap::new();
    found
        .into_iter()
        .map(|f| {
            let name = if is_chain(&f) {
                f.len().to_string()
            } else if f.len() == 4 {
                "B2".to_string()
            } else {
                let c = counts.entry(f.len()).or_insert(0u8);
                *c += 1;
                format!("L{}{}", f.len(), (b'a' + *c - 1) as char)
            };
            let f = if is_chain(&f) { builtin::chain(f.len()) } else if name == "B2" { builtin::boolean(2) } else { f };
            (name, f)
        })
        .collect()
}

/// The frames of size at most 4: `1`, `2`, `3`, `4`, `B2`.
pub fn component_frames() -> Vec<(String, Arc<Frame>)> {
    named_frames_up_to(4).into_iter().map(|(n, f)| (n, Arc::new(f))).collect()
}

/// Every biframe `(F₁ ⊕ F₂ / θ, ...)` with components of size at most 4
/// (θ one-one on both components), then `3.3` and the diagonal biframes of
/// frames of size at most 5, deduplicated up to biframe isomorphism.
pub fn biframes(limits: &Limits) -> Result<Vec<Arc<Biframe>>> {
    let comps = component_frames();
    let mut candidates: Vec<Biframe> = Vec::new();
    for (n1, f1) in &comps {
        for (n2, f2) in &comps {
            let cop = coproduct(f1, f2, limits)?;
            let base = format!("{n1}.{n2}");
            let mut k = 0;
            for theta in all_congruences(cop.frame(), limits)? {
                let one_one = |img: &[usize]| {
                    img.iter().enumerate().all(|(a, &x)| img[a + 1..].iter().all(|&y| !theta.related(x, y)))
                };
                if !one_one(cop.inj_left().map()) || !one_one(cop.inj_right().map()) {
                    continue;
                }
                let name = if theta.is_diagonal() {
                    base.clone()
                } else {
                    k += 1;
                    format!("{base}/{k}")
                };
                let (q, p) = theta.quotient();
                let c1 = cop.inj_left().map().iter().map(|&x| p.apply(x)).collect();
                let c2 = cop.inj_right().map().iter().map(|&x| p.apply(x)).collect();
                candidates.push(Biframe::with_limits(&name, q, c1, c2, *limits)?);
            }
        }
    }
    candidates.push(builtin::biframe("biframe:3.3", limits)?);
    for (name, f) in named_frames_up_to(5) {
        candidates.push(builtin::diagonal_biframe(&format!("diag({name})"), f, limits)?);
    }
    let mut kept: Vec<Biframe> = Vec::new();
    for b in candidates {
        let dup = kept.iter().any(|k| {
            k.ambient().len() == b.ambient().len()
                && k.component(0).len() == b.component(0).len()
                && k.component(1).len() == b.component(1).len()
                && k.find_isomorphism(&b).is_some()
        });
        if !dup {
            kept.push(b);
        }
    }
    Ok(kept.into_iter().map(Arc::new).collect())
}

/// All biframe maps between the given biframes, in order of (domain,
/// codomain, map).
pub fn homs_between(biframes: &[Arc<Biframe>], limits: &Limits) -> Result<Vec<BiframeHom>> {
    let mut out = Vec::new();
    for l in biframes {
        for m in biframes {
            for f in enumerate_homs(l.ambient(), m.ambient(), limits)? {
                if let Ok(h) = BiframeHom::new(l.clone(), m.clone(), f) {
                    out.push(h);
                }
            }
        }
    }
    Ok(out)
}

/// The full corpus used by the exhaustive checks.
pub struct Corpus {
    pub frames: Vec<(String, Arc<Frame>)>,
    pub biframes: Vec<Arc<Biframe>>,
    /// The biframes with ambient frame of size at most 6.
    pub small: Vec<Arc<Biframe>>,
    /// All biframe maps between the small biframes.
    pub homs: Vec<BiframeHom>,
}

impl Corpus {
    pub fn build(limits: &Limits) -> Result<Corpus> {
        let frames = named_frames_up_to(6).into_iter().map(|(n, f)| (n, Arc::new(f))).collect();
        let biframes = biframes(limits)?;
        let small: Vec<Arc<Biframe>> = biframes.iter().filter(|b| b.ambient().len() <= 6).cloned().collect();
        let homs = homs_between(&small, limits)?;
        Ok(Corpus { frames, biframes, small, homs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_counts_by_size() {
        // 1, 1, 1, 2, 3, 5 distributive lattices of sizes 1..=6
        let fs = frames_up_to(6);
        let mut counts = [0usize; 7];
        for f in &fs {
            counts[f.len()] += 1;
        }
        assert_eq!(&counts[1..], &[1, 1, 1, 2, 3, 5]);
        let names: Vec<String> = component_frames().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names, ["1", "2", "3", "4", "B2"]);
    }

    #[test]
    fn corpus_biframes_are_distinct() {
        let lim = Limits::default();
        let bs = biframes(&lim).unwrap();
        assert!(bs.iter().any(|b| b.name() == "3.3"));
        for (i, a) in bs.iter().enumerate() {
            for b in &bs[i + 1..] {
                assert!(a.find_isomorphism(b).is_none(), "{} ≅ {}", a.name(), b.name());
            }
        }
    }
}
