//! Biframes, biframe homomorphisms, and the extremal epi / mono
//! factorization.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::colimit::{coproduct, hom_coproduct, verify_pushout_square, Coproduct};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::frame::{same_frame, Frame, FrameHom};
use crate::order::Elem;
use crate::Limits;

/// A finite biframe `(L₀, L₁, L₂)`: two subframes of `L₀` whose union
/// generates it.
#[derive(Clone)]
pub struct Biframe {
    name: String,
    ambient: Arc<Frame>,
    comps: [Vec<Elem>; 2],
    comp_frames: [Arc<Frame>; 2],
    inclusions: [FrameHom; 2],
    coproduct: Coproduct,
    /// `q_L : L₁ ⊕ L₂ → L₀`.
    structure: FrameHom,
    structure_kernel: Congruence,
    /// `q_L*`, a section of `q_L`.
    section: Vec<Elem>,
    limits: Limits,
}

impl fmt::Debug for Biframe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Biframe")
            .field("name", &self.name)
            .field("ambient", &self.ambient.labels())
            .field("comp1", &self.comps[0])
            .field("comp2", &self.comps[1])
            .finish()
    }
}

/// Equality of the underlying data; names are ignored.
impl PartialEq for Biframe {
    fn eq(&self, other: &Self) -> bool {
        self.comps == other.comps && same_frame(&self.ambient, &other.ambient)
    }
}

impl Eq for Biframe {}

impl Biframe {
    pub fn new(name: &str, ambient: Arc<Frame>, comp1: Vec<Elem>, comp2: Vec<Elem>) -> Result<Biframe> {
        Self::with_limits(name, ambient, comp1, comp2, Limits::default())
    }

    pub fn with_limits(
        name: &str,
        ambient: Arc<Frame>,
        comp1: Vec<Elem>,
        comp2: Vec<Elem>,
        limits: Limits,
    ) -> Result<Biframe> {
        let n = ambient.len();
        let mut comps = [comp1, comp2];
        for c in comps.iter_mut() {
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&x| x >= n) {
                return Err(Error::IndexOutOfRange { index: bad, size: n });
            }
        }
        for (i, c) in comps.iter().enumerate() {
            if let Some(witness) = ambient.subframe_violation(c) {
                return Err(Error::NotSubframe { component: i + 1, witness });
            }
        }
        let generated = ambient.subframe_generated(comps[0].iter().chain(&comps[1]).copied());
        if generated.len() != n {
            let missing = ambient.elements().find(|x| generated.binary_search(x).is_err()).expect("missing element");
            return Err(Error::NotSubbasis(ambient.label(missing).to_string()));
        }
        let comp_frames = [
            Arc::new(ambient.subframe(&comps[0])?),
            Arc::new(ambient.subframe(&comps[1])?),
        ];
        let inclusions = [
            FrameHom::inclusion(comp_frames[0].clone(), ambient.clone(), &comps[0]),
            FrameHom::inclusion(comp_frames[1].clone(), ambient.clone(), &comps[1]),
        ];
        let coproduct = coproduct(&comp_frames[0], &comp_frames[1], &limits)?;
        let structure = coproduct.copair(&inclusions[0], &inclusions[1])?;
        if !structure.is_onto() {
            return Err(Error::QLNotOnto);
        }
        let structure_kernel = Congruence::kernel(&structure);
        let section = structure.right_adjoint();
        Ok(Biframe {
            name: name.to_string(),
            ambient,
            comps,
            comp_frames,
            inclusions,
            coproduct,
            structure,
            structure_kernel,
            section,
            limits,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: &str) -> Biframe {
        Biframe { name: name.to_string(), ..self.clone() }
    }

    pub fn ambient(&self) -> &Arc<Frame> {
        &self.ambient
    }

    /// Elements of `L₀` forming component `i` (0 or 1), sorted.
    pub fn component(&self, i: usize) -> &[Elem] {
        &self.comps[i]
    }

    pub fn in_component(&self, i: usize, x: Elem) -> bool {
        self.comps[i].binary_search(&x).is_ok()
    }

    /// Elements of `L₁ ∪ L₂`, sorted.
    pub fn component_union(&self) -> Vec<Elem> {
        let mut u: Vec<Elem> = self.comps[0].iter().chain(&self.comps[1]).copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }

    pub fn component_frame(&self, i: usize) -> &Arc<Frame> {
        &self.comp_frames[i]
    }

    /// `e_i : L_i → L₀`.
    pub fn inclusion(&self, i: usize) -> &FrameHom {
        &self.inclusions[i]
    }

    /// `L₁ ⊕ L₂`.
    pub fn coproduct(&self) -> &Coproduct {
        &self.coproduct
    }

    /// `q_L : L₁ ⊕ L₂ → L₀`.
    pub fn structure_map(&self) -> &FrameHom {
        &self.structure
    }

    pub fn structure_kernel(&self) -> &Congruence {
        &self.structure_kernel
    }

    /// The right adjoint of `q_L`, a section of it.
    pub fn section(&self) -> &[Elem] {
        &self.section
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn is_trivial(&self) -> bool {
        self.ambient.is_trivial()
    }

    /// Membership colors (`bit 0`: in `L₁`, `bit 1`: in `L₂`) per element.
    pub fn colors(&self) -> Vec<u32> {
        self.ambient
            .elements()
            .map(|x| u32::from(self.in_component(0, x)) | (u32::from(self.in_component(1, x)) << 1))
            .collect()
    }

    /// An isomorphism of ambient frames carrying components onto components.
    pub fn find_isomorphism(&self, other: &Biframe) -> Option<Vec<Elem>> {
        self.ambient.find_isomorphism_colored(&other.ambient, &self.colors(), &other.colors())
    }

    /// The quotient biframe `(L₀/θ, p[L₁], p[L₂])` and its projection.
    pub fn quotient(self: &Arc<Self>, theta: &Congruence) -> Result<(Arc<Biframe>, BiframeHom)> {
        self.quotient_named(theta, &format!("{}/~", self.name))
    }

    pub fn quotient_named(self: &Arc<Self>, theta: &Congruence, name: &str) -> Result<(Arc<Biframe>, BiframeHom)> {
        if !same_frame(theta.frame(), &self.ambient) {
            return Err(Error::FrameMismatch("congruence is not on the ambient frame"));
        }
        let (q, p) = theta.quotient();
        let image = |i: usize| -> Vec<Elem> { self.comps[i].iter().map(|&x| p.apply(x)).collect() };
        let target = Arc::new(Biframe::with_limits(name, q, image(0), image(1), self.limits)?);
        let hom = BiframeHom::new(self.clone(), target.clone(), p)?;
        Ok((target, hom))
    }

    /// The biframe map with component restrictions `h[0]`, `h[1]`, if one
    /// exists: `q_M ∘ (h₁ ⊕ h₂)` must be constant on the kernel of `q_L`.
    pub fn glue(dom: &Arc<Biframe>, cod: &Arc<Biframe>, h: [&FrameHom; 2]) -> Result<BiframeHom> {
        let g = hom_coproduct(h[0], h[1], &dom.coproduct, &cod.coproduct)?;
        let t = cod.structure.compose(&g)?;
        let k = &dom.structure_kernel;
        let c = dom.coproduct.frame();
        if let Some(x) = c.elements().find(|&x| t.apply(x) != t.apply(k.rep(x))) {
            return Err(Error::NotConstantOnBlocks(c.label(k.rep(x)).to_string(), c.label(x).to_string()));
        }
        let map = dom.section.iter().map(|&y| t.apply(y)).collect();
        BiframeHom::new(dom.clone(), cod.clone(), FrameHom::new_unchecked(dom.ambient.clone(), cod.ambient.clone(), map))
    }
}

/// A biframe homomorphism, stored as its ambient map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiframeHom {
    dom: Arc<Biframe>,
    cod: Arc<Biframe>,
    map: FrameHom,
}

impl BiframeHom {
    pub fn new(dom: Arc<Biframe>, cod: Arc<Biframe>, map: FrameHom) -> Result<BiframeHom> {
        if !same_frame(map.dom(), &dom.ambient) || !same_frame(map.cod(), &cod.ambient) {
            return Err(Error::FrameMismatch("ambient map does not connect the ambient frames"));
        }
        for i in 0..2 {
            if let Some(&x) = dom.comps[i].iter().find(|&&x| !cod.in_component(i, map.apply(x))) {
                return Err(Error::ComponentNotPreserved { component: i + 1, witness: dom.ambient.label(x).to_string() });
            }
        }
        Ok(BiframeHom { dom, cod, map })
    }

    pub fn identity(b: Arc<Biframe>) -> BiframeHom {
        let map = FrameHom::identity(b.ambient.clone());
        BiframeHom { dom: b.clone(), cod: b, map }
    }

    pub fn dom(&self) -> &Arc<Biframe> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Biframe> {
        &self.cod
    }

    /// `f₀ : L₀ → M₀`.
    pub fn ambient_map(&self) -> &FrameHom {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map.apply(x)
    }

    /// `f_i : L_i → M_i` on component indices.
    pub fn restriction(&self, i: usize) -> FrameHom {
        let comp = &self.cod.comps[i];
        let map = self.dom.comps[i]
            .iter()
            .map(|&x| comp.binary_search(&self.map.apply(x)).expect("component preserved"))
            .collect();
        FrameHom::new_unchecked(self.dom.comp_frames[i].clone(), self.cod.comp_frames[i].clone(), map)
    }

    /// Monic in biframes: both restrictions one-one.
    pub fn is_monic(&self) -> bool {
        (0..2).all(|i| self.restriction(i).is_injective())
    }

    pub fn is_iso(&self) -> bool {
        self.map.is_bijective() && (0..2).all(|i| self.restriction(i).is_onto())
    }

    /// Dense when the ambient map is.
    pub fn is_dense(&self) -> bool {
        self.map.is_dense()
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &BiframeHom) -> Result<BiframeHom> {
        if *f.cod != *self.dom {
            return Err(Error::FrameMismatch("codomain of the first biframe map is not the domain of the second"));
        }
        let map = self.map.compose(&f.map)?;
        Ok(BiframeHom { dom: f.dom.clone(), cod: self.cod.clone(), map })
    }

    /// Extremal epi: both restrictions onto, and `L₀` with `f₀` and `q_M`
    /// is the pushout of `f₁ ⊕ f₂` along `q_L`.
    pub fn is_extremal_epi(&self) -> Result<bool> {
        let r = [self.restriction(0), self.restriction(1)];
        if !r.iter().all(FrameHom::is_onto) {
            return Ok(false);
        }
        let g = hom_coproduct(&r[0], &r[1], &self.dom.coproduct, &self.cod.coproduct)?;
        verify_pushout_square(&self.dom.structure, &g, &self.map, &self.cod.structure, &self.dom.limits)
    }

    /// `f = e ∘ f̄` with `f̄` an extremal epi and `e` monic.
    ///
    /// `f(L)` is the pushout of `f₁ ⊕ f₂ : L₁ ⊕ L₂ → f[L₁] ⊕ f[L₂]` along
    /// `q_L`, i.e. `(f[L₁] ⊕ f[L₂])` modulo the transport of `ker q_L`.
    pub fn factorize(&self) -> Result<Factorization> {
        let (dom, cod) = (&self.dom, &self.cod);
        let m0 = &cod.ambient;
        let mut images = Vec::with_capacity(2);
        let mut coreg = Vec::with_capacity(2);
        for i in 0..2 {
            let img: Vec<Elem> = {
                let mut v: Vec<Elem> = dom.comps[i].iter().map(|&x| self.map.apply(x)).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let sub = Arc::new(m0.subframe(&img)?);
            let fi = self.map.compose(&dom.inclusions[i])?.corestrict(sub.clone(), &img)?;
            images.push((sub, img));
            coreg.push(fi);
        }
        let d = coproduct(&images[0].0, &images[1].0, &dom.limits)?;
        let g = hom_coproduct(&coreg[0], &coreg[1], &dom.coproduct, &d)?;
        let theta = dom.structure_kernel.push_along(&g);
        let (p, proj) = theta.quotient();
        let fbar_map: Vec<Elem> = dom.section.iter().map(|&y| proj.apply(g.apply(y))).collect();
        let mid_comp = |i: usize| -> Vec<Elem> {
            let inj = if i == 0 { d.inj_left() } else { d.inj_right() };
            inj.map().iter().map(|&x| proj.apply(x)).collect()
        };
        let mid = Arc::new(Biframe::with_limits(&format!("f({})", dom.name), p.clone(), mid_comp(0), mid_comp(1), dom.limits)?);
        let fbar = BiframeHom::new(dom.clone(), mid.clone(), FrameHom::new_unchecked(dom.ambient.clone(), p.clone(), fbar_map))?;
        let incl = |i: usize| FrameHom::inclusion(images[i].0.clone(), m0.clone(), &images[i].1);
        let e0 = theta.factor_through(&d.copair(&incl(0), &incl(1))?, &p)?;
        let e = BiframeHom::new(mid.clone(), cod.clone(), e0)?;
        Ok(Factorization { fbar, mid, e, presentation: d, congruence: theta })
    }

    /// `f(L)` presented as `f[L₁] ⊕ f[L₂] / R_f`, where `R_f` relates the
    /// `f`-images of any two rectangle families whose joins agree in `L₀`.
    /// Returns the quotient together with an isomorphism onto the ambient of
    /// [`BiframeHom::factorize`]'s middle biframe.
    pub fn image_via_rf(&self) -> Result<(Arc<Frame>, FrameHom)> {
        let fact = self.factorize()?;
        let dom = &self.dom;
        let l0 = &dom.ambient;
        let d = &fact.presentation;
        let images = [fact.image_elems(0), fact.image_elems(1)];
        let pos = |i: usize, x: Elem| -> Elem {
            let y = self.map.apply(dom.comps[i][x]);
            images[i].binary_search(&y).expect("in image")
        };
        let c = dom.coproduct.frame();
        let mut first: HashMap<Elem, Elem> = HashMap::new();
        let mut pairs = Vec::new();
        for x in c.elements() {
            let rects = dom.coproduct.rectangles(x);
            let value = l0.join_all(rects.iter().map(|&(p, q)| l0.meet(dom.comps[0][p], dom.comps[1][q])));
            let image = d.frame().join_all(rects.iter().map(|&(p, q)| d.rect(pos(0, p), pos(1, q))));
            let anchor = *first.entry(value).or_insert(image);
            pairs.push((anchor, image));
        }
        let rf = Congruence::closure(d.frame().clone(), pairs);
        let (q, _) = rf.quotient();
        let (_, p_theta) = fact.congruence.quotient();
        let iso = rf
            .factor_through(&p_theta, &q)
            .map_err(|e| Error::RouteMismatch(format!("R_f is not contained in the pushout congruence: {e}")))?;
        if !iso.is_bijective() {
            return Err(Error::RouteMismatch("R_f quotient differs from the pushout image".into()));
        }
        let iso = FrameHom::new_unchecked(q.clone(), fact.mid.ambient.clone(), iso.map().to_vec());
        Ok((q, iso))
    }
}

/// `f = e ∘ f̄`: `f̄ : L → f(L)` extremal epi, `e : f(L) → M` monic.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub fbar: BiframeHom,
    pub mid: Arc<Biframe>,
    pub e: BiframeHom,
    /// `f[L₁] ⊕ f[L₂]`.
    pub presentation: Coproduct,
    /// The congruence on `f[L₁] ⊕ f[L₂]` presenting `f(L)`.
    pub congruence: Congruence,
}

impl Factorization {
    /// `f[L_i]` as sorted elements of the codomain's ambient frame.
    pub fn image_elems(&self, i: usize) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.mid.component(i).iter().map(|&x| self.e.apply(x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}
