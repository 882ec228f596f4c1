//! Coproducts of finite frames via Birkhoff duality, `f ⊕ g`, and pushouts.

use std::collections::HashMap;
use std::sync::Arc;

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::frame::{same_frame, Frame, FrameHom};
use crate::order::{downsets, lattice_from_masks, Elem, Poset};
use crate::Limits;

/// `A ⊕ B`, realized as the down-sets of `J(A) × J(B)`.
#[derive(Clone, Debug)]
pub struct Coproduct {
    frame: Arc<Frame>,
    left: Arc<Frame>,
    right: Arc<Frame>,
    inj_left: FrameHom,
    inj_right: FrameHom,
    /// `rect[a * |B| + b]` is the element `a ⊕ b`.
    rect: Vec<Elem>,
    /// Points of `J(A) × J(B)` as pairs of elements of `A` and `B`.
    points: Vec<(Elem, Elem)>,
    masks: Vec<u64>,
}

fn operand(label: &str) -> String {
    if label.contains(['⊕', '∨', '∧']) {
        format!("({label})")
    } else {
        label.to_string()
    }
}

/// The coproduct `a ⊕ b`. Elements are labelled by their maximal generating
/// rectangles, e.g. `a⊕1∨1⊕a`; the bounds are `0⊕0` and `1⊕1`.
pub fn coproduct(a: &Arc<Frame>, b: &Arc<Frame>, limits: &Limits) -> Result<Coproduct> {
    let ja = a.join_irreducibles();
    let jb = b.join_irreducibles();
    let points: Vec<(Elem, Elem)> = ja.iter().flat_map(|&p| jb.iter().map(move |&q| (p, q))).collect();
    let m = points.len();
    if m > limits.downset_points {
        return Err(Error::SizeLimitExceeded { what: "coproduct points", size: m, cap: limits.downset_points });
    }
    let labels: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    let product = Poset::from_matrix_unchecked(labels, |i, j| {
        a.leq(points[i].0, points[j].0) && b.leq(points[i].1, points[j].1)
    });
    let masks = downsets(&product, limits)?;
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let labels = masks
        .iter()
        .map(|&d| {
            if d == 0 {
                return format!("{}⊕{}", operand(a.label(a.bottom())), operand(b.label(b.bottom())));
            }
            if d == full {
                return format!("{}⊕{}", operand(a.label(a.top())), operand(b.label(b.top())));
            }
            let maxima: Vec<String> = (0..m)
                .filter(|&x| d & (1 << x) != 0)
                .filter(|&x| !(0..m).any(|y| y != x && d & (1 << y) != 0 && product.leq(x, y)))
                .map(|x| format!("{}⊕{}", operand(a.label(points[x].0)), operand(b.label(points[x].1))))
                .collect();
            maxima.join("∨")
        })
        .collect();
    let frame = Arc::new(Frame::from_distributive(lattice_from_masks(&masks, labels)));
    let index: HashMap<u64, Elem> = masks.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let nb = b.len();
    let mut rect = vec![0; a.len() * nb];
    for x in a.elements() {
        for y in b.elements() {
            let d = (0..m)
                .filter(|&i| a.leq(points[i].0, x) && b.leq(points[i].1, y))
                .fold(0u64, |acc, i| acc | (1 << i));
            rect[x * nb + y] = index[&d];
        }
    }
    let inj_left =
        FrameHom::new_unchecked(a.clone(), frame.clone(), a.elements().map(|x| rect[x * nb + b.top()]).collect());
    let inj_right =
        FrameHom::new_unchecked(b.clone(), frame.clone(), b.elements().map(|y| rect[a.top() * nb + y]).collect());
    Ok(Coproduct { frame, left: a.clone(), right: b.clone(), inj_left, inj_right, rect, points, masks })
}

impl Coproduct {
    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn left(&self) -> &Arc<Frame> {
        &self.left
    }

    pub fn right(&self) -> &Arc<Frame> {
        &self.right
    }

    pub fn inj_left(&self) -> &FrameHom {
        &self.inj_left
    }

    pub fn inj_right(&self) -> &FrameHom {
        &self.inj_right
    }

    /// The element `a ⊕ b = ι(a) ∧ ι(b)`.
    #[inline]
    pub fn rect(&self, a: Elem, b: Elem) -> Elem {
        self.rect[a * self.right.len() + b]
    }

    /// Maximal generating rectangles `(p, q)` (pairs of join-irreducibles)
    /// below `x`; `x` is their join.
    pub fn rectangles(&self, x: Elem) -> Vec<(Elem, Elem)> {
        let d = self.masks[x];
        (0..self.points.len()).filter(|&i| d & (1 << i) != 0).map(|i| self.points[i]).collect()
    }

    /// The unique hom `A ⊕ B → C` restricting to `m` and `n`:
    /// `x ↦ ⋁ { m(p) ∧ n(q) : p ⊕ q ≤ x }`.
    pub fn copair(&self, m: &FrameHom, n: &FrameHom) -> Result<FrameHom> {
        if !same_frame(m.dom(), &self.left) || !same_frame(n.dom(), &self.right) {
            return Err(Error::FrameMismatch("copair legs do not start at the coproduct factors"));
        }
        if !same_frame(m.cod(), n.cod()) {
            return Err(Error::FrameMismatch("copair legs have different codomains"));
        }
        let c = m.cod();
        let map = self
            .frame
            .elements()
            .map(|x| c.join_all(self.rectangles(x).into_iter().map(|(p, q)| c.meet(m.apply(p), n.apply(q)))))
            .collect();
        Ok(FrameHom::new_unchecked(self.frame.clone(), c.clone(), map))
    }
}

/// `f ⊕ g : A ⊕ B → C ⊕ D`, the copairing of `ι_C ∘ f` and `ι_D ∘ g`.
pub fn hom_coproduct(f: &FrameHom, g: &FrameHom, dom: &Coproduct, cod: &Coproduct) -> Result<FrameHom> {
    if !same_frame(f.cod(), cod.left()) || !same_frame(g.cod(), cod.right()) {
        return Err(Error::FrameMismatch("f ⊕ g: codomains are not the target coproduct factors"));
    }
    dom.copair(&cod.inj_left().compose(f)?, &cod.inj_right().compose(g)?)
}

/// A pushout of `f: L → M` and `g: L → N`, with corner `(M ⊕ N)/θ`.
#[derive(Clone, Debug)]
pub struct PushoutSquare {
    pub f: FrameHom,
    pub g: FrameHom,
    pub coproduct: Coproduct,
    pub congruence: Congruence,
    pub corner: Arc<Frame>,
    pub projection: FrameHom,
    /// `M → P`.
    pub leg_m: FrameHom,
    /// `N → P`.
    pub leg_n: FrameHom,
}

impl PushoutSquare {
    /// The mediating hom `P → X` for a cocone `m: M → X`, `n: N → X`.
    pub fn mediate(&self, m: &FrameHom, n: &FrameHom) -> Result<FrameHom> {
        let mf = m.compose(&self.f)?;
        let ng = n.compose(&self.g)?;
        if let Some(a) = self.f.dom().elements().find(|&a| mf.apply(a) != ng.apply(a)) {
            return Err(Error::SquareDoesNotCommute(self.f.dom().label(a).to_string()));
        }
        let c = self.coproduct.copair(m, n)?;
        self.congruence.factor_through(&c, &self.corner)
    }
}

/// General pushout: `(M ⊕ N)/[{(ι f(a), ι g(a))}]`.
pub fn pushout(f: &FrameHom, g: &FrameHom, limits: &Limits) -> Result<PushoutSquare> {
    if !same_frame(f.dom(), g.dom()) {
        return Err(Error::FrameMismatch("pushout legs must share a domain"));
    }
    let cop = coproduct(f.cod(), g.cod(), limits)?;
    let pairs: Vec<(Elem, Elem)> =
        f.dom().elements().map(|a| (cop.inj_left().apply(f.apply(a)), cop.inj_right().apply(g.apply(a)))).collect();
    let congruence = Congruence::closure(cop.frame().clone(), pairs);
    let (corner, projection) = congruence.quotient();
    let leg_m = projection.compose(cop.inj_left())?;
    let leg_n = projection.compose(cop.inj_right())?;
    Ok(PushoutSquare { f: f.clone(), g: g.clone(), coproduct: cop, congruence, corner, projection, leg_m, leg_n })
}

/// The pushout of the projection `L → L/t` along `h: L → M`.
#[derive(Clone, Debug)]
pub struct QuotientPushout {
    /// `[h[t]]` on `M`.
    pub congruence: Congruence,
    pub corner: Arc<Frame>,
    /// `M → M/[h[t]]`.
    pub projection: FrameHom,
    /// `L/t → M/[h[t]]`.
    pub mediating: FrameHom,
    /// `L/t` and its projection.
    pub source_quotient: Arc<Frame>,
    pub source_projection: FrameHom,
}

/// Pushouts preserve onto maps: the pushout of `L → L/t` along `h` is
/// `M → M/[h[t]]`.
pub fn pushout_along_quotient(h: &FrameHom, t: &Congruence) -> Result<QuotientPushout> {
    if !same_frame(h.dom(), t.frame()) {
        return Err(Error::FrameMismatch("congruence is not on the domain of the map"));
    }
    let congruence = t.push_along(h);
    let (corner, projection) = congruence.quotient();
    let (source_quotient, source_projection) = t.quotient();
    let mediating = t.factor_through(&projection.compose(h)?, &source_quotient)?;
    Ok(QuotientPushout { congruence, corner, projection, mediating, source_quotient, source_projection })
}

/// Whether `leg_m ∘ f = leg_n ∘ g` into `leg_m.cod()` is a pushout square:
/// the comparison from the constructed pushout must be an isomorphism.
///
/// When either of `f`, `g` is onto the pushout is built as a quotient of the
/// other codomain; otherwise it is the general coproduct construction.
pub fn verify_pushout_square(
    f: &FrameHom,
    g: &FrameHom,
    leg_m: &FrameHom,
    leg_n: &FrameHom,
    limits: &Limits,
) -> Result<bool> {
    if !same_frame(f.dom(), g.dom()) {
        return Err(Error::FrameMismatch("pushout legs must share a domain"));
    }
    if let Some(a) = f.dom().elements().find(|&a| leg_m.apply(f.apply(a)) != leg_n.apply(g.apply(a))) {
        return Err(Error::SquareDoesNotCommute(f.dom().label(a).to_string()));
    }
    let along_quotient = |onto: &FrameHom, other: &FrameHom, other_leg: &FrameHom| -> Result<bool> {
        let po = pushout_along_quotient(other, &Congruence::kernel(onto))?;
        Ok(po.congruence.factor_through(other_leg, &po.corner)?.is_bijective())
    };
    if f.is_onto() {
        return along_quotient(f, g, leg_n);
    }
    if g.is_onto() {
        return along_quotient(g, f, leg_m);
    }
    let sq = pushout(f, g, limits)?;
    Ok(sq.mediate(leg_m, leg_n)?.is_bijective())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::corpus::frames_up_to;
    use crate::frame::enumerate_homs;

    fn arc(f: Frame) -> Arc<Frame> {
        Arc::new(f)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn hom(dom: &Arc<Frame>, cod: &Arc<Frame>, map: &[Elem]) -> FrameHom {
        FrameHom::new(dom.clone(), cod.clone(), map.to_vec()).unwrap()
    }

    #[test]
    fn three_plus_three_cover_relation() {
        let t = arc(builtin::chain(3));
        let c = coproduct(&t, &t, &lim()).unwrap();
        let f = c.frame();
        assert_eq!(f.labels(), &["0⊕0", "a⊕a", "a⊕1", "1⊕a", "a⊕1∨1⊕a", "1⊕1"]);
        let covers: Vec<(&str, &str)> = f.covers().into_iter().map(|(x, y)| (f.label(x), f.label(y))).collect();
        let mut covers = covers;
        covers.sort();
        let mut expected = vec![
            ("0⊕0", "a⊕a"),
            ("a⊕a", "a⊕1"),
            ("a⊕a", "1⊕a"),
            ("a⊕1", "a⊕1∨1⊕a"),
            ("1⊕a", "a⊕1∨1⊕a"),
            ("a⊕1∨1⊕a", "1⊕1"),
        ];
        expected.sort();
        assert_eq!(covers, expected);
        assert_eq!(c.inj_left().map(), &[0, 2, 5]);
        assert_eq!(c.inj_right().map(), &[0, 3, 5]);
        assert_eq!(c.rect(1, 1), 1);
    }

    #[test]
    fn coproduct_sizes() {
        let t = arc(builtin::chain(3));
        let b2 = arc(builtin::boolean(2));
        assert_eq!(coproduct(&t, &b2, &lim()).unwrap().frame().len(), 9);
        for f in frames_up_to(5) {
            let f = arc(f);
            let two = arc(builtin::chain(2));
            let c = coproduct(&two, &f, &lim()).unwrap();
            assert!(c.frame().is_isomorphic(&f));
            assert!(c.inj_right().is_bijective());
        }
        let one = arc(builtin::chain(1));
        assert_eq!(coproduct(&one, &t, &lim()).unwrap().frame().len(), 1);
    }

    #[test]
    fn coproduct_universal_property_and_symmetry() {
        let frames: Vec<Arc<Frame>> = frames_up_to(4).into_iter().map(arc).collect();
        let targets: Vec<Arc<Frame>> = vec![arc(builtin::chain(2)), arc(builtin::chain(3)), arc(builtin::boolean(2))];
        for a in &frames {
            for b in &frames {
                let c = coproduct(a, b, &lim()).unwrap();
                let swapped = coproduct(b, a, &lim()).unwrap();
                let iso = swapped.copair(c.inj_right(), c.inj_left()).unwrap();
                assert!(iso.is_bijective());
                assert!(c.inj_left().is_injective() || a.is_trivial() || b.is_trivial());
                for x in targets.iter() {
                    let homs = enumerate_homs(c.frame(), x, &lim()).unwrap();
                    for m in enumerate_homs(a, x, &lim()).unwrap() {
                        for n in enumerate_homs(b, x, &lim()).unwrap() {
                            // exactly one mediating hom, and it is the copairing
                            let med: Vec<&FrameHom> = homs
                                .iter()
                                .filter(|h| h.compose(c.inj_left()).unwrap() == m && h.compose(c.inj_right()).unwrap() == n)
                                .collect();
                            assert_eq!(med.len(), 1);
                            assert_eq!(*med[0], c.copair(&m, &n).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hom_coproduct_examples() {
        let t = arc(builtin::chain(3));
        let two = arc(builtin::chain(2));
        let c33 = coproduct(&t, &t, &lim()).unwrap();
        let id = FrameHom::identity(t.clone());
        assert_eq!(hom_coproduct(&id, &id, &c33, &c33).unwrap(), FrameHom::identity(c33.frame().clone()));

        let up = hom(&t, &two, &[0, 1, 1]);
        let c22 = coproduct(&two, &two, &lim()).unwrap();
        assert_eq!(c22.frame().len(), 2);
        let h = hom_coproduct(&up, &up, &c33, &c22).unwrap();
        assert_eq!(h.apply(c33.frame().index_of("a⊕a").unwrap()), c22.frame().top());

        let down = hom(&t, &two, &[0, 0, 1]);
        let c23 = coproduct(&two, &t, &lim()).unwrap();
        let h = hom_coproduct(&down, &id, &c33, &c23).unwrap();
        assert_eq!(h.apply(c33.frame().index_of("a⊕1").unwrap()), c23.frame().bottom());
        assert!(c23.frame().is_isomorphic(&t));
    }

    #[test]
    fn pushout_examples() {
        let t = arc(builtin::chain(3));
        let two = arc(builtin::chain(2));
        let closed = hom(&t, &two, &[0, 0, 1]);
        let open = hom(&t, &two, &[0, 1, 1]);
        let sq = pushout(&closed, &open, &lim()).unwrap();
        assert_eq!(sq.corner.len(), 1);

        let id = FrameHom::identity(t.clone());
        let sq = pushout(&id, &open, &lim()).unwrap();
        assert!(sq.leg_n.is_bijective());
        assert!(verify_pushout_square(&id, &open, &open, &FrameHom::identity(two.clone()), &lim()).unwrap());
    }

    #[test]
    fn verification_shortcut_agrees_with_general_pushout() {
        let frames: Vec<Arc<Frame>> = frames_up_to(4).into_iter().map(arc).collect();
        let mut checked = 0;
        for l in &frames {
            for m in &frames {
                for f in enumerate_homs(l, m, &lim()).unwrap().into_iter().filter(FrameHom::is_onto) {
                    for n in &frames {
                        for g in enumerate_homs(l, n, &lim()).unwrap() {
                            let general = pushout(&f, &g, &lim()).unwrap();
                            // the general pushout's own legs, and a collapse of them
                            let (lm, ln) = (general.leg_m.clone(), general.leg_n.clone());
                            let want = general.mediate(&lm, &ln).unwrap().is_bijective();
                            assert_eq!(verify_pushout_square(&f, &g, &lm, &ln, &lim()).unwrap(), want);
                            let bang = Congruence::total(general.corner.clone());
                            let (_, p) = bang.quotient();
                            let (cm, cn) = (p.compose(&lm).unwrap(), p.compose(&ln).unwrap());
                            let want = general.mediate(&cm, &cn).unwrap().is_bijective();
                            assert_eq!(verify_pushout_square(&f, &g, &cm, &cn, &lim()).unwrap(), want);
                            assert_eq!(verify_pushout_square(&g, &f, &cn, &cm, &lim()).unwrap(), want);
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn verify_rejects_non_pushouts() {
        let t = arc(builtin::chain(3));
        let two = arc(builtin::chain(2));
        let c33 = coproduct(&t, &t, &lim()).unwrap();
        let s = c33.frame().clone();
        // span 3 ← 2 → 3: the pushout is 3 ⊕ 3 itself
        let f = hom(&two, &t, &[0, 2]);
        assert!(verify_pushout_square(&f, &f, c33.inj_left(), c33.inj_right(), &lim()).unwrap());
        // a proper quotient of the corner is not a pushout
        let theta = Congruence::open(s.clone(), s.index_of("a⊕a").unwrap());
        let (_, p) = theta.quotient();
        let ml = p.compose(c33.inj_left()).unwrap();
        let mr = p.compose(c33.inj_right()).unwrap();
        assert!(!verify_pushout_square(&f, &f, &ml, &mr, &lim()).unwrap());
        // collapsing the corner to 3 commutes but identifies too much
        let id = FrameHom::identity(t.clone());
        assert!(!verify_pushout_square(&f, &f, &id, &id, &lim()).unwrap());
        // over 3 ← 3 → 3 the unquotiented 3 ⊕ 3 does not even commute
        assert!(matches!(
            verify_pushout_square(&id, &id, c33.inj_left(), c33.inj_right(), &lim()),
            Err(Error::SquareDoesNotCommute(_))
        ));
        // non-commuting square
        let up = hom(&t, &two, &[0, 1, 1]);
        let down = hom(&t, &two, &[0, 0, 1]);
        assert!(matches!(
            verify_pushout_square(&id, &id, &up, &down, &lim()),
            Err(Error::SquareDoesNotCommute(_))
        ));
    }

    #[test]
    fn closed_quotient_pushes_to_closed_quotient() {
        let t = arc(builtin::chain(3));
        let c33 = coproduct(&t, &t, &lim()).unwrap();
        let s = c33.frame();
        let qp = pushout_along_quotient(c33.inj_left(), &Congruence::closed(t.clone(), 1)).unwrap();
        assert_eq!(qp.congruence, Congruence::closed(s.clone(), s.index_of("a⊕1").unwrap()));
        let two = arc(builtin::chain(2));
        let open = hom(&t, &two, &[0, 1, 1]);
        let qp = pushout_along_quotient(&open, &Congruence::closed(t.clone(), 1)).unwrap();
        assert_eq!(qp.corner.len(), 1);
        let qp = pushout_along_quotient(&open, &Congruence::diagonal(t.clone())).unwrap();
        assert!(qp.projection.is_bijective());
    }

    #[test]
    fn pushout_routes_agree_and_preserve_onto() {
        let frames: Vec<Arc<Frame>> = frames_up_to(4).into_iter().map(arc).collect();
        for l in &frames {
            let congs = crate::congruence::all_congruences(l, &lim()).unwrap();
            for m in &frames {
                for h in enumerate_homs(l, m, &lim()).unwrap() {
                    for t in &congs {
                        let qp = pushout_along_quotient(&h, t).unwrap();
                        assert!(qp.projection.is_onto());
                        let sq = pushout(&qp.source_projection, &h, &lim()).unwrap();
                        assert!(sq.leg_n.is_onto());
                        let cmp = sq.mediate(&qp.mediating, &qp.projection).unwrap();
                        assert!(cmp.is_bijective());
                    }
                }
            }
        }
    }

    #[test]
    fn pushout_universal_property() {
        let frames: Vec<Arc<Frame>> = frames_up_to(4).into_iter().map(arc).collect();
        let tests: Vec<Arc<Frame>> = vec![arc(builtin::chain(2)), arc(builtin::chain(3)), arc(builtin::boolean(2))];
        let l = arc(builtin::chain(3));
        for m in &frames {
            for n in &frames {
                for f in enumerate_homs(&l, m, &lim()).unwrap() {
                    for g in enumerate_homs(&l, n, &lim()).unwrap() {
                        let sq = pushout(&f, &g, &lim()).unwrap();
                        for x in &tests {
                            let from_p = enumerate_homs(&sq.corner, x, &lim()).unwrap();
                            for mm in enumerate_homs(m, x, &lim()).unwrap() {
                                for nn in enumerate_homs(n, x, &lim()).unwrap() {
                                    if mm.compose(&f).unwrap() != nn.compose(&g).unwrap() {
                                        continue;
                                    }
                                    let count = from_p
                                        .iter()
                                        .filter(|h| {
                                            h.compose(&sq.leg_m).unwrap() == mm && h.compose(&sq.leg_n).unwrap() == nn
                                        })
                                        .count();
                                    assert_eq!(count, 1);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
