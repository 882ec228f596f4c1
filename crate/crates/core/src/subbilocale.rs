//! Sublocale lattices `S(L₀)`, the closure operator `B_L`, subbilocale
//! lattices `S(L)`, induced subbilocales and the functor `S`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::biframe::{Biframe, BiframeHom};
use crate::congruence::{all_congruences, Congruence};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::label::name_congruences;
use crate::order::{Elem, Lattice, Poset};
use crate::Limits;

/// A sublocale of a frame, represented by the kernel of its projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublocale {
    pub kernel: Congruence,
}

/// `S(L)`, ordered by reverse inclusion of kernels.
#[derive(Clone, Debug)]
pub struct SublocaleLattice {
    frame: Arc<Frame>,
    kernels: Vec<Congruence>,
    index: HashMap<Vec<Elem>, usize>,
    lattice: Lattice,
}

/// `S(L)`: element `i ≤ j` iff the kernel of `j` is contained in the kernel
/// of `i`. Elements are listed coarsest (the one-element quotient) first.
pub fn sublocale_lattice(frame: &Arc<Frame>, limits: &Limits) -> Result<SublocaleLattice> {
    let mut kernels = all_congruences(frame, limits)?;
    kernels.reverse();
    let frame_elems: Vec<Elem> = frame.elements().collect();
    let names = name_congruences(frame, &kernels, "1", "0", &[frame_elems]);
    Ok(SublocaleLattice::from_kernels(frame.clone(), kernels, names))
}

fn order_lattice(kernels: &[Congruence], names: Vec<String>) -> Lattice {
    let poset = Poset::from_matrix_unchecked(names, |i, j| kernels[j].refines(&kernels[i]));
    Lattice::from_poset(poset).expect("congruences form a lattice")
}

impl SublocaleLattice {
    fn from_kernels(frame: Arc<Frame>, kernels: Vec<Congruence>, names: Vec<String>) -> SublocaleLattice {
        let index = kernels.iter().enumerate().map(|(i, k)| (k.reps().to_vec(), i)).collect();
        let lattice = order_lattice(&kernels, names);
        SublocaleLattice { frame, kernels, index, lattice }
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.kernels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kernels.is_empty()
    }

    pub fn kernels(&self) -> &[Congruence] {
        &self.kernels
    }

    pub fn kernel(&self, i: usize) -> &Congruence {
        &self.kernels[i]
    }

    pub fn sublocale(&self, i: usize) -> Sublocale {
        Sublocale { kernel: self.kernels[i].clone() }
    }

    pub fn index_of(&self, kernel: &Congruence) -> Option<usize> {
        self.index.get(kernel.reps()).copied()
    }

    pub fn label(&self, i: usize) -> &str {
        self.lattice.label(i)
    }
}

/// `B_L(θ)`: the class of `f̄` in the factorization of the projection
/// `L → (L₀/θ, p[L₁], p[L₂])`.
pub fn closure_bl(l: &Arc<Biframe>, theta: &Congruence) -> Result<Congruence> {
    let (_, p) = l.quotient(theta)?;
    let fact = p.factorize()?;
    Ok(Congruence::kernel(fact.fbar.ambient_map()))
}

/// `B_L(θ)` computed directly: the congruence on `L₀` generated by the pairs
/// of `θ` lying inside `L₁` or inside `L₂`.
pub fn closure_bl_restricted(l: &Biframe, theta: &Congruence) -> Congruence {
    let pairs: Vec<(Elem, Elem)> =
        (0..2).flat_map(|i| theta.pairs_within(l.component(i)).collect::<Vec<_>>()).collect();
    Congruence::closure(l.ambient().clone(), pairs)
}

/// A subbilocale: a `B_L`-fixed congruence on `L₀`.
#[derive(Clone, Debug)]
pub struct Subbilocale {
    pub biframe: Arc<Biframe>,
    pub kernel: Congruence,
}

impl Subbilocale {
    /// The quotient biframe and its (extremal epi) projection.
    pub fn projection(&self) -> Result<BiframeHom> {
        Ok(self.biframe.quotient(&self.kernel)?.1)
    }

    pub fn quotient_biframe(&self) -> Result<Arc<Biframe>> {
        Ok(self.biframe.quotient(&self.kernel)?.0)
    }
}

/// `S(L)` as a sublattice-by-order of `S(L₀)`.
#[derive(Clone, Debug)]
pub struct SubbilocaleLattice {
    biframe: Arc<Biframe>,
    ambient: SublocaleLattice,
    /// `B_L` as a map on indices of `S(L₀)`.
    closure: Vec<usize>,
    /// Indices into `S(L₀)` of the fixed points, in `S(L₀)` order.
    members: Vec<usize>,
    member_index: HashMap<usize, usize>,
    lattice: Lattice,
}

/// Builds `S(L)` twice — as the fixed points of `B_L` on `S(L₀)` and as the
/// meet-closure of the subbilocales induced from component quotients — and
/// checks that both routes produce the same set.
pub fn subbilocale_lattice(l: &Arc<Biframe>) -> Result<SubbilocaleLattice> {
    let limits = *l.limits();
    let l0 = l.ambient();
    let ambient = sublocale_lattice(l0, &limits)?;
    let mut closure = Vec::with_capacity(ambient.len());
    for theta in ambient.kernels() {
        let b = closure_bl(l, theta)?;
        let fast = closure_bl_restricted(l, theta);
        if b != fast {
            return Err(Error::RouteMismatch("B_L via factorization differs from the restricted closure".into()));
        }
        closure.push(ambient.index_of(&b).expect("closure is a congruence"));
    }
    let members: Vec<usize> = (0..ambient.len()).filter(|&i| closure[i] == i).collect();

    let generated = generated_by_components(l, &ambient, &limits)?;
    let fixed: HashSet<usize> = members.iter().copied().collect();
    if generated != fixed {
        return Err(Error::RouteMismatch(format!(
            "{} fixed points of B_L but {} meets of component-induced subbilocales",
            fixed.len(),
            generated.len()
        )));
    }

    let kernels: Vec<Congruence> = members.iter().map(|&i| ambient.kernel(i).clone()).collect();
    let priority = vec![
        {
            let mut v: Vec<Elem> = l.component(0).to_vec();
            v.extend(l.component(1).iter().filter(|x| !l.in_component(0, **x)));
            v
        },
        l0.elements().collect(),
    ];
    let names = name_congruences(l0, &kernels, l.name(), "1.1", &priority);
    let lattice = order_lattice(&kernels, names);
    let member_index = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    Ok(SubbilocaleLattice { biframe: l.clone(), ambient, closure, members, member_index, lattice })
}

/// Indices in `S(L₀)` of the meets of `S(e₁)⟨f₁⟩` and `S(e₂)⟨f₂⟩` over all
/// quotients `f_i` of the components.
pub fn generated_by_components(l: &Biframe, ambient: &SublocaleLattice, limits: &Limits) -> Result<HashSet<usize>> {
    let mut gens = Vec::new();
    for i in 0..2 {
        for t in all_congruences(l.component_frame(i), limits)? {
            let k = t.push_along(l.inclusion(i));
            gens.push(ambient.index_of(&k).expect("pushed congruence"));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let meet = |a: usize, b: usize| ambient.lattice().meet(a, b);
    let mut set: HashSet<usize> = gens.iter().copied().collect();
    let mut work: Vec<usize> = gens.clone();
    while let Some(x) = work.pop() {
        for &g in &gens {
            let m = meet(x, g);
            if set.insert(m) {
                work.push(m);
            }
        }
    }
    set.insert(ambient.lattice().top());
    Ok(set)
}

impl SubbilocaleLattice {
    pub fn biframe(&self) -> &Arc<Biframe> {
        &self.biframe
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `S(L₀)`.
    pub fn ambient(&self) -> &SublocaleLattice {
        &self.ambient
    }

    /// `B_L` on indices of `S(L₀)`.
    pub fn closure_map(&self) -> &[usize] {
        &self.closure
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn kernel(&self, k: usize) -> &Congruence {
        self.ambient.kernel(self.members[k])
    }

    pub fn kernels(&self) -> Vec<Congruence> {
        self.members.iter().map(|&i| self.ambient.kernel(i).clone()).collect()
    }

    pub fn element(&self, k: usize) -> Subbilocale {
        Subbilocale { biframe: self.biframe.clone(), kernel: self.kernel(k).clone() }
    }

    pub fn label(&self, k: usize) -> &str {
        self.lattice.label(k)
    }

    pub fn index_of(&self, kernel: &Congruence) -> Option<usize> {
        self.ambient.index_of(kernel).and_then(|i| self.member_index.get(&i).copied())
    }

    /// The element of `S(L)` at index `i` of `S(L₀)`, if `i` is fixed.
    pub fn member_of_ambient(&self, i: usize) -> Option<usize> {
        self.member_index.get(&i).copied()
    }
}

/// `S(e₁)⟨t₁⟩ ∧ S(e₂)⟨t₂⟩` for congruences `t_i` on the components; its
/// projection is checked to be an extremal epi.
pub fn induced_from_components(l: &Arc<Biframe>, t1: &Congruence, t2: &Congruence) -> Result<Subbilocale> {
    let kernel = t1.push_along(l.inclusion(0)).join(&t2.push_along(l.inclusion(1)));
    let s = Subbilocale { biframe: l.clone(), kernel };
    if !s.projection()?.is_extremal_epi()? {
        return Err(Error::RouteMismatch("induced subbilocale projection is not an extremal epi".into()));
    }
    Ok(s)
}

/// For an extremal epi `f`, whether `⟨f⟩ = S(e₁)⟨f₁⟩ ∧ S(e₂)⟨f₂⟩`.
pub fn components_identity_check(f: &BiframeHom) -> bool {
    let l = f.dom();
    let k1 = Congruence::kernel(&f.restriction(0)).push_along(l.inclusion(0));
    let k2 = Congruence::kernel(&f.restriction(1)).push_along(l.inclusion(1));
    k1.join(&k2) == Congruence::kernel(f.ambient_map())
}

/// `S(f)`: the pushout of `⟨q⟩` along `f`, i.e. `θ ↦ [f₀[θ]]` on `M₀`,
/// as a map of element indices of `S(dom)` into `S(cod)`.
pub fn functor_s(f: &BiframeHom, dom: &SubbilocaleLattice, cod: &SubbilocaleLattice) -> Result<Vec<usize>> {
    if *dom.biframe != **f.dom() || *cod.biframe != **f.cod() {
        return Err(Error::FrameMismatch("lattices do not belong to the map's biframes"));
    }
    (0..dom.len())
        .map(|k| {
            let pushed = dom.kernel(k).push_along(f.ambient_map());
            cod.index_of(&pushed).ok_or_else(|| {
                Error::RouteMismatch(format!("S(f)({}) is not a subbilocale of the codomain", dom.label(k)))
            })
        })
        .collect()
}

/// Shape of a finite lattice. For finite lattices being a coframe is the
/// same as being distributive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub distributive: bool,
    pub coframe: bool,
    /// `[0, a, c, b, 1]` with `a < c`, as labels.
    pub pentagon: Option<[String; 5]>,
    pub diamond: Option<[String; 5]>,
}

pub fn analyze(lattice: &Lattice) -> Analysis {
    let names = |w: [Elem; 5]| w.map(|x| lattice.label(x).to_string());
    let distributive = lattice.is_distributive();
    Analysis {
        distributive,
        coframe: distributive,
        pentagon: lattice.find_pentagon().map(names),
        diamond: lattice.find_diamond().map(names),
    }
}
