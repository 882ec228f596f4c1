//! Exhaustive searches used to cross-check the constructive routes.
//!
//! These never call the factorization or pushout code; they search the
//! defining conditions directly at small scale.

use std::collections::HashMap;
use std::sync::Arc;

use crate::biframe::{Biframe, BiframeHom};
use crate::colimit::{coproduct, hom_coproduct, Coproduct};
use crate::congruence::Congruence;
use crate::error::Result;
use crate::frame::{enumerate_homs, Frame, FrameHom};
use crate::order::Elem;
use crate::Limits;

/// Subsets of `f`'s elements containing `seed` that are subframes, sorted.
pub fn subframes_containing(f: &Frame, seed: &[Elem]) -> Vec<Vec<Elem>> {
    let free: Vec<Elem> = f.elements().filter(|x| seed.binary_search(x).is_err()).collect();
    assert!(free.len() < 24, "subframe search too large");
    let mut out = Vec::new();
    for mask in 0u32..(1 << free.len()) {
        let mut s: Vec<Elem> = seed.to_vec();
        s.extend((0..free.len()).filter(|&k| mask & (1 << k) != 0).map(|k| free[k]));
        s.sort_unstable();
        if f.subframe_violation(&s).is_none() {
            out.push(s);
        }
    }
    out
}

/// Subframes of `f` contained in the sorted subset `universe`.
pub fn subframes_within(f: &Frame, universe: &[Elem]) -> Vec<Vec<Elem>> {
    let seed = m_bounds(f);
    subframes_containing(f, &seed).into_iter().filter(|s| s.iter().all(|x| universe.binary_search(x).is_ok())).collect()
}

fn m_bounds(f: &Frame) -> Vec<Elem> {
    let mut v = vec![f.bottom(), f.top()];
    v.sort_unstable();
    v.dedup();
    v
}

/// The candidate monomorphisms `m : N → M` with components `S_i ⊆ M_i`
/// (as elements of `M₀`): `N₀ = (S₁ ⊕ S₂)/θ` for a congruence `θ` contained
/// in the kernel `K` of `S₁ ⊕ S₂ → M₀`. Such a `θ` is automatically one-one
/// on both injections, and `m` is an isomorphism iff `S_i = M_i` and `θ = K`.
struct MonoFamily {
    subs: [Vec<Elem>; 2],
    sub_frames: [Arc<Frame>; 2],
    cop: Coproduct,
    kernel: Congruence,
    full: bool,
}

fn mono_families(m: &Biframe, limits: &Limits) -> Result<Vec<MonoFamily>> {
    let m0 = m.ambient();
    let mut out = Vec::new();
    let cands: Vec<Vec<Vec<Elem>>> = (0..2).map(|i| subframes_within(m0, m.component(i))).collect();
    for s1 in &cands[0] {
        for s2 in &cands[1] {
            let f1 = Arc::new(m0.subframe(s1)?);
            let f2 = Arc::new(m0.subframe(s2)?);
            let cop = coproduct(&f1, &f2, limits)?;
            let incl = cop.copair(
                &FrameHom::inclusion(f1.clone(), m0.clone(), s1),
                &FrameHom::inclusion(f2.clone(), m0.clone(), s2),
            )?;
            let kernel = Congruence::kernel(&incl);
            let full = s1.len() == m.component(0).len() && s2.len() == m.component(1).len();
            out.push(MonoFamily { subs: [s1.clone(), s2.clone()], sub_frames: [f1, f2], cop, kernel, full });
        }
    }
    Ok(out)
}

/// Caches the candidate monomorphisms into each codomain biframe.
#[derive(Default)]
pub struct ExtremalOracle {
    // keyed by address; the Arc is kept so the address stays unique
    cache: HashMap<usize, (Arc<Biframe>, Arc<Vec<MonoFamily>>)>,
}

impl ExtremalOracle {
    pub fn new() -> Self {
        Self::default()
    }

    /// Definitional test: `f` is an extremal epi iff every monomorphism
    /// `m` with `f = m ∘ h` for some biframe map `h` is an isomorphism.
    ///
    /// Every monomorphism into `M` is, up to isomorphism, one of the
    /// families enumerated here. Given `m`, the map `h` is forced on the
    /// components (`m_i` is one-one), and it extends to `L₀` exactly when
    /// `h₁ ⊕ h₂` followed by the projection to `N₀` is constant on the
    /// kernel of `q_L`, i.e. when `θ` contains the congruence generated by
    /// that image. The admissible `θ` are therefore those between this
    /// least one and `K`, and a non-isomorphism among them exists iff the
    /// least one lies in `K` and differs from it (or `S ≠ M`).
    pub fn is_extremal_epi(&mut self, f: &BiframeHom, limits: &Limits) -> Result<bool> {
        let cod = f.cod();
        let key = Arc::as_ptr(cod) as usize;
        let fams = match self.cache.get(&key) {
            Some((_, v)) => v.clone(),
            None => {
                let v = Arc::new(mono_families(cod, limits)?);
                self.cache.insert(key, (cod.clone(), v.clone()));
                v
            }
        };
        let l = f.dom();
        let k = l.structure_kernel();
        let c = l.coproduct().frame();
        for fam in fams.iter() {
            let mut h = Vec::with_capacity(2);
            let mut fits = true;
            for i in 0..2 {
                let map: Option<Vec<Elem>> = l
                    .component(i)
                    .iter()
                    .map(|&x| fam.subs[i].binary_search(&f.apply(x)).ok())
                    .collect();
                match map {
                    Some(map) => h.push(FrameHom::new_unchecked(l.component_frame(i).clone(), fam.sub_frames[i].clone(), map)),
                    None => fits = false,
                }
            }
            if !fits {
                continue;
            }
            let g = hom_coproduct(&h[0], &h[1], l.coproduct(), &fam.cop)?;
            let least = Congruence::closure(fam.cop.frame().clone(), c.elements().map(|x| (g.apply(x), g.apply(k.rep(x)))));
            if least.refines(&fam.kernel) && !(fam.full && least == fam.kernel) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All biframe maps `g : 𝔅L₀ → 𝔅M₀` (given as the two Booleanized
/// biframes) with `g ∘ β_L = β_M ∘ f`, by exhaustive hom enumeration.
pub fn commuting_induced_maps(
    f: &BiframeHom,
    beta_dom: &BiframeHom,
    beta_cod: &BiframeHom,
    limits: &Limits,
) -> Result<Vec<FrameHom>> {
    let (bl, bm) = (beta_dom.cod(), beta_cod.cod());
    let target = beta_cod.ambient_map().compose(f.ambient_map())?;
    let mut out = Vec::new();
    for g in enumerate_homs(bl.ambient(), bm.ambient(), limits)? {
        if BiframeHom::new(bl.clone(), bm.clone(), g.clone()).is_err() {
            continue;
        }
        if g.compose(beta_dom.ambient_map())? == target {
            out.push(g);
        }
    }
    Ok(out)
}

/// Whether some frame hom `h : L₀/φ → L₀/θ` satisfies `h ∘ p_φ = p_θ`,
/// found by exhaustive search.
pub fn factors_through(theta: &Congruence, phi: &Congruence, limits: &Limits) -> Result<bool> {
    let (qt, pt) = theta.quotient();
    let (qp, pp) = phi.quotient();
    for h in enumerate_homs(&qp, &qt, limits)? {
        if h.compose(&pp)? == pt {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn subframe_search() {
        let t = builtin::chain(3);
        let subs = subframes_containing(&t, &[0, 2]);
        assert_eq!(subs, vec![vec![0, 2], vec![0, 1, 2]]);
        let b = builtin::boolean(2);
        assert_eq!(subframes_containing(&b, &[0, 3]).len(), 4);
    }
}
