//! Booleanization, dense maps, the least dense subbilocale and the skeletal
//! condition.

use std::sync::Arc;

use crate::biframe::{Biframe, BiframeHom};
use crate::colimit::{coproduct, hom_coproduct};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::frame::{Frame, FrameHom};
use crate::order::Elem;
use crate::subbilocale::{closure_bl, closure_bl_restricted, Subbilocale};

/// `β : L → 𝔅L`, `a ↦ a**`.
#[derive(Clone, Debug)]
pub struct Booleanization {
    pub frame: Arc<Frame>,
    pub beta: FrameHom,
    pub booleanized: Arc<Frame>,
    /// The regular elements `a = a**` of `L`, sorted; element `i` of
    /// `booleanized` corresponds to `regular[i]`.
    pub regular: Vec<Elem>,
}

pub fn booleanization_frame(l: &Arc<Frame>) -> Booleanization {
    let kernel = Congruence::closure(l.clone(), l.elements().map(|a| (a, l.double_pseudocomplement(a))));
    let (booleanized, beta) = kernel.quotient();
    let regular = l.elements().filter(|&a| l.is_regular(a)).collect();
    Booleanization { frame: l.clone(), beta, booleanized, regular }
}

/// The least dense subbilocale `𝔅L` and `β_L : L → 𝔅L`.
#[derive(Clone, Debug)]
pub struct BiframeBooleanization {
    pub biframe: Arc<Biframe>,
    /// `I`, generated by `(a, a**)` for `a ∈ L₁ ∪ L₂`; it contains the
    /// kernel of `β` (`least_dense.kernel`).
    pub congruence_i: Congruence,
    pub booleanized: Arc<Biframe>,
    pub beta: BiframeHom,
    pub least_dense: Subbilocale,
    /// `q_*[𝔅L₀]`: the image of the right adjoint of the projection,
    /// sorted, as elements of `L₀`.
    pub embedded: Vec<Elem>,
}

/// Congruence generated by `(a, a**)` for `a` in either component, with
/// pseudocomplements taken in `L₀`.
pub fn congruence_i(l: &Biframe) -> Congruence {
    let l0 = l.ambient();
    Congruence::closure(l0.clone(), l.component_union().into_iter().map(|a| (a, l0.double_pseudocomplement(a))))
}

/// The kernel of `L₀ → P` where `P` is the pushout of
/// `β|L₁ ⊕ β|L₂ : L₁ ⊕ L₂ → β[L₁] ⊕ β[L₂]` along `q_L`.
pub fn booleanization_pushout_kernel(l: &Biframe) -> Result<Congruence> {
    let l0 = l.ambient();
    let b = booleanization_frame(l0);
    let mut images = Vec::new();
    let mut legs = Vec::new();
    for i in 0..2 {
        let mut img: Vec<Elem> = l.component(i).iter().map(|&x| b.beta.apply(x)).collect();
        img.sort_unstable();
        img.dedup();
        let sub = Arc::new(b.booleanized.subframe(&img)?);
        let leg = b.beta.compose(l.inclusion(i))?.corestrict(sub.clone(), &img)?;
        images.push(sub);
        legs.push(leg);
    }
    let d = coproduct(&images[0], &images[1], l.limits())?;
    let g = hom_coproduct(&legs[0], &legs[1], l.coproduct(), &d)?;
    let theta = l.structure_kernel().push_along(&g);
    let (_, p) = theta.quotient();
    let leg: Vec<Elem> = l.section().iter().map(|&y| p.apply(g.apply(y))).collect();
    let leg = FrameHom::new_unchecked(l0.clone(), p.cod().clone(), leg);
    Ok(Congruence::kernel(&leg))
}

/// `𝔅L = ⟨β̄⟩` where `β̄` is the extremal-epi part of the frame
/// Booleanization `β : L₀ → 𝔅L₀` seen as a biframe map, i.e. the kernel is
/// `B_L(ker β)`. This is computed by factorization and checked against the
/// restricted closure and against the Booleanization pushout.
///
/// The kernel is always contained in `I`, and equals it when each
/// component is closed under `a ↦ a**`; in general it may be strictly
/// smaller, and then `L₀/I` is not a subbilocale.
pub fn least_dense_subbilocale(l: &Arc<Biframe>) -> Result<BiframeBooleanization> {
    let l0 = l.ambient();
    let beta0 = Congruence::kernel(&booleanization_frame(l0).beta);
    let kernel = closure_bl(l, &beta0)?;
    if closure_bl_restricted(l, &beta0) != kernel {
        return Err(Error::RouteMismatch("B_L of the frame Booleanization differs between routes".into()));
    }
    if booleanization_pushout_kernel(l)? != kernel {
        return Err(Error::RouteMismatch("B_L of the frame Booleanization differs from the pushout".into()));
    }
    let i = congruence_i(l);
    if !kernel.refines(&i) {
        return Err(Error::RouteMismatch("kernel of β is not contained in I".into()));
    }
    let (booleanized, beta) = l.quotient_named(&kernel, &format!("𝔅({})", l.name()))?;
    let q_star = beta.ambient_map().right_adjoint();
    if kernel == i {
        for a in l.component_union() {
            if q_star[beta.apply(a)] != l0.double_pseudocomplement(a) {
                return Err(Error::RouteMismatch(format!(
                    "q_*(q({})) differs from its double pseudocomplement",
                    l0.label(a)
                )));
            }
        }
    }
    if !beta.is_dense() {
        return Err(Error::RouteMismatch("β is not dense".into()));
    }
    let mut embedded = q_star;
    embedded.sort_unstable();
    Ok(BiframeBooleanization {
        biframe: l.clone(),
        least_dense: Subbilocale { biframe: l.clone(), kernel },
        congruence_i: i,
        booleanized,
        beta,
        embedded,
    })
}

/// Whether density of a frame quotient `L₀ → L₀/θ` agrees with density of
/// the extremal-epi part of its factorization as a biframe map.
pub fn density_factor_check(l: &Arc<Biframe>, theta: &Congruence) -> Result<bool> {
    let (_, p) = l.quotient(theta)?;
    let fact = p.factorize()?;
    Ok(p.is_dense() == fact.fbar.is_dense())
}

pub fn skeletal_witness(f: &BiframeHom) -> Option<Elem> {
    let (l0, m0) = (f.dom().ambient(), f.cod().ambient());
    f.dom()
        .component_union()
        .into_iter()
        .find(|&a| !m0.leq(f.apply(l0.double_pseudocomplement(a)), m0.double_pseudocomplement(f.apply(a))))
}

/// `f(a**) ≤ f(a)**` for every `a ∈ L₁ ∪ L₂`.
pub fn skeletal_check(f: &BiframeHom) -> bool {
    skeletal_witness(f).is_none()
}

/// The unique `f̂ : 𝔅L → 𝔅M` with `f̂ ∘ β_L = β_M ∘ f`, built componentwise
/// by `⟨a⟩ ↦ β_M(f(a))` and glued into a biframe map.
pub fn induced_booleanization_map(
    f: &BiframeHom,
    dom: &BiframeBooleanization,
    cod: &BiframeBooleanization,
) -> Result<BiframeHom> {
    if let Some(a) = skeletal_witness(f) {
        return Err(Error::NotSkeletal(f.dom().ambient().label(a).to_string()));
    }
    let (bl, bm) = (&dom.booleanized, &cod.booleanized);
    let mut parts = Vec::with_capacity(2);
    for i in 0..2 {
        let src = bl.component(i);
        let dst = bm.component(i);
        let mut map = vec![usize::MAX; src.len()];
        for &a in f.dom().component(i) {
            let u = src.binary_search(&dom.beta.apply(a)).expect("β preserves components");
            let v = dst.binary_search(&cod.beta.apply(f.apply(a))).expect("β preserves components");
            if map[u] != usize::MAX && map[u] != v {
                return Err(Error::RouteMismatch("componentwise induced map is not well defined".into()));
            }
            map[u] = v;
        }
        parts.push(FrameHom::new(bl.component_frame(i).clone(), bm.component_frame(i).clone(), map)?);
    }
    let fhat = Biframe::glue(bl, bm, [&parts[0], &parts[1]])?;
    if fhat.compose(&dom.beta)?.ambient_map() != cod.beta.compose(f)?.ambient_map() {
        return Err(Error::RouteMismatch("induced map does not commute with β".into()));
    }
    Ok(fhat)
}
