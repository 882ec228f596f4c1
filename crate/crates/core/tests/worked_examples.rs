use std::sync::Arc;

use biframe::builtin;
use biframe::colimit::coproduct;
use biframe::density::{
    booleanization_frame, booleanization_pushout_kernel, congruence_i, density_factor_check, induced_booleanization_map, least_dense_subbilocale,
    skeletal_check,
};
use biframe::oracle::commuting_induced_maps;
use biframe::subbilocale::{
    analyze, closure_bl, components_identity_check, functor_s, induced_from_components, sublocale_lattice,
    subbilocale_lattice,
};
use biframe::{Biframe, BiframeHom, Congruence, Error, Frame, FrameHom, Limits, Poset};

fn lim() -> Limits {
    Limits::default()
}

fn b33() -> Arc<Biframe> {
    Arc::new(builtin::biframe("biframe:3.3", &lim()).unwrap())
}

fn el(f: &Frame, label: &str) -> usize {
    f.index_of(label).unwrap_or_else(|| panic!("no element {label}"))
}

fn labels_of(c: &Congruence) -> Vec<Vec<String>> {
    c.blocks().iter().map(|b| b.iter().map(|&x| c.frame().label(x).to_string()).collect()).collect()
}

/// `(L₀, L₀, L₀)` over the `n`-chain.
fn diag(n: usize) -> Arc<Biframe> {
    Arc::new(builtin::diagonal_biframe(&format!("diag({n})"), builtin::chain(n), &lim()).unwrap())
}

#[test]
fn three_dot_three_is_valid_and_named_builders_work() {
    let b = b33();
    let s = b.ambient();
    assert_eq!(s.len(), 6);
    assert_eq!(b.component(0), &[0, el(s, "a⊕1"), 5]);
    assert_eq!(b.component(1), &[0, el(s, "1⊕a"), 5]);
    assert_eq!(s.subframe_generated([el(s, "a⊕1"), el(s, "1⊕a")]).len(), 6);
    assert!(b.structure_map().is_bijective());
}

#[test]
fn biframe_validation_errors() {
    let b = b33();
    let s = b.ambient().clone();
    let err = Biframe::new("bad", s.clone(), vec![0, 5], vec![0, el(&s, "1⊕a"), 5]).unwrap_err();
    assert_eq!(err, Error::NotSubbasis("a⊕a".into()));
    let err = Biframe::new("bad", s.clone(), vec![0, el(&s, "a⊕1")], vec![0, 5]).unwrap_err();
    assert!(matches!(err, Error::NotSubframe { component: 1, .. }));
    let t = Arc::new(builtin::chain(3));
    assert!(Biframe::new("d", t, vec![0, 1, 2], vec![0, 1, 2]).is_ok());
}

#[test]
fn biframe_homs_and_monics() {
    let b = b33();
    let s = b.ambient().clone();
    let id = BiframeHom::identity(b.clone());
    assert!(id.is_monic() && id.is_iso() && id.is_extremal_epi().unwrap());

    let swap: Vec<usize> = s.elements().map(|x| {
        let l = s.label(x);
        match l {
            "a⊕1" => el(&s, "1⊕a"),
            "1⊕a" => el(&s, "a⊕1"),
            _ => x,
        }
    }).collect();
    let swap = FrameHom::new(s.clone(), s.clone(), swap).unwrap();
    let err = BiframeHom::new(b.clone(), b.clone(), swap).unwrap_err();
    assert_eq!(err, Error::ComponentNotPreserved { component: 1, witness: "a⊕1".into() });

    // 3.3 → quotient by 𝔬(a⊕1∨1⊕a) is monic but not an isomorphism
    let o = Congruence::open(s.clone(), el(&s, "a⊕1∨1⊕a"));
    let (_, q) = b.quotient(&o).unwrap();
    assert!(q.is_monic());
    assert!(!q.is_iso());
    assert!(!q.is_extremal_epi().unwrap());
    let fact = q.factorize().unwrap();
    assert!(fact.fbar.is_iso());
    assert!(fact.e.is_monic());
    let (img, iso) = q.image_via_rf().unwrap();
    assert_eq!(img.len(), 6);
    assert!(iso.is_bijective());
}

#[test]
fn factorization_onto_two() {
    let b = b33();
    let s = b.ambient().clone();
    let two = Arc::new(builtin::chain(2));
    let target = Arc::new(Biframe::new("2.2", two.clone(), vec![0, 1], vec![0, 1]).unwrap());
    let map: Vec<usize> = s.elements().map(|x| usize::from(x != 0)).collect();
    let f = BiframeHom::new(b.clone(), target, FrameHom::new(s, two, map).unwrap()).unwrap();
    assert!(f.is_extremal_epi().unwrap());
    let fact = f.factorize().unwrap();
    assert_eq!(fact.mid.ambient().len(), 2);
    assert!(fact.e.is_iso());
    assert_eq!(fact.e.compose(&fact.fbar).unwrap(), f);
    assert_eq!(f.image_via_rf().unwrap().0.len(), 2);
    assert!(components_identity_check(&f));
    assert!(f.is_dense() && skeletal_check(&f));
}

#[test]
fn sublocales_of_three() {
    let t = Arc::new(builtin::chain(3));
    let s = sublocale_lattice(&t, &lim()).unwrap();
    assert_eq!(s.len(), 4);
    let mut labels = s.lattice().labels().to_vec();
    labels.sort();
    assert_eq!(labels, ["0", "1", "𝔠(a)", "𝔬(a)"]);
    let l = s.lattice();
    let (c, o) = (el_l(l, "𝔠(a)"), el_l(l, "𝔬(a)"));
    assert!(!l.leq(c, o) && !l.leq(o, c));
    assert_eq!(sublocale_lattice(&Arc::new(builtin::chain(2)), &lim()).unwrap().len(), 2);
    assert_eq!(sublocale_lattice(&Arc::new(builtin::boolean(2)), &lim()).unwrap().len(), 4);
}

fn el_l(l: &biframe::Lattice, label: &str) -> usize {
    l.index_of(label).unwrap_or_else(|| panic!("no element {label}"))
}

#[test]
fn subbilocales_of_three_dot_three() {
    let b = b33();
    let sl = subbilocale_lattice(&b).unwrap();
    assert_eq!(sl.len(), 10);
    let mut labels = sl.lattice().labels().to_vec();
    labels.sort();
    let mut expected = vec![
        "3.3",
        "𝔠(a⊕1)",
        "𝔠(1⊕a)",
        "𝔬(1⊕a)",
        "𝔬(a⊕1)",
        "𝔠(a⊕1∨1⊕a)",
        "𝔠(a⊕1)∧𝔬(1⊕a)",
        "𝔠(1⊕a)∧𝔬(a⊕1)",
        "𝔬(a⊕a)",
        "1.1",
    ];
    expected.sort();
    assert_eq!(labels, expected);
    let a = analyze(sl.lattice());
    assert!(!a.distributive && !a.coframe);
    assert!(a.pentagon.is_some());
}

#[test]
fn no_counterpart_and_fixed_points() {
    let b = b33();
    let s = b.ambient().clone();
    let o = Congruence::open(s.clone(), el(&s, "a⊕1∨1⊕a"));
    let closed = closure_bl(&b, &o).unwrap();
    assert_ne!(closed, o);
    assert!(closed.is_diagonal());
    let oaa = Congruence::open(s.clone(), el(&s, "a⊕a"));
    assert_eq!(closure_bl(&b, &oaa).unwrap(), oaa);
    assert!(closure_bl(&b, &Congruence::diagonal(s.clone())).unwrap().is_diagonal());
}

#[test]
fn induced_subbilocales() {
    let b = b33();
    let s = b.ambient().clone();
    let t = b.component_frame(0).clone();
    let c1 = Congruence::closed(t.clone(), 1);
    let d2 = Congruence::diagonal(b.component_frame(1).clone());
    let got = induced_from_components(&b, &c1, &d2).unwrap();
    assert_eq!(got.kernel, Congruence::closed(s.clone(), el(&s, "a⊕1")));
    let o2 = Congruence::open(b.component_frame(1).clone(), 1);
    let got = induced_from_components(&b, &c1, &o2).unwrap();
    let sl = subbilocale_lattice(&b).unwrap();
    assert_eq!(sl.label(sl.index_of(&got.kernel).unwrap()), "𝔠(a⊕1)∧𝔬(1⊕a)");
    let d1 = Congruence::diagonal(t);
    assert!(induced_from_components(&b, &d1, &d2).unwrap().kernel.is_diagonal());
}

#[test]
fn diagonal_biframe_reduces_to_frame() {
    let d = diag(3);
    let sl = subbilocale_lattice(&d).unwrap();
    let sf = sublocale_lattice(d.ambient(), &lim()).unwrap();
    assert!(sl.lattice().is_isomorphic(sf.lattice()));
    assert!(analyze(sl.lattice()).distributive);
    let one = Arc::new(builtin::diagonal_biframe("1", builtin::chain(1), &lim()).unwrap());
    assert_eq!(subbilocale_lattice(&one).unwrap().len(), 1);
}

#[test]
fn booleanization_values() {
    let b2 = Arc::new(builtin::boolean(2));
    let bb = booleanization_frame(&b2);
    assert!(bb.beta.is_bijective());
    let t = Arc::new(builtin::chain(3));
    let bt = booleanization_frame(&t);
    assert_eq!(bt.booleanized.len(), 2);
    assert_eq!(bt.beta.map(), &[0, 1, 1]);
    let s = coproduct(&t, &t, &lim()).unwrap().frame().clone();
    assert_eq!(booleanization_frame(&s).booleanized.len(), 2);
}

#[test]
fn least_dense_subbilocale_of_three_dot_three() {
    let b = b33();
    let s = b.ambient().clone();
    let i = congruence_i(&b);
    assert_eq!(labels_of(&i), vec![vec!["0⊕0"], vec!["a⊕a", "a⊕1", "1⊕a", "a⊕1∨1⊕a", "1⊕1"]]);
    let bb = least_dense_subbilocale(&b).unwrap();
    assert_eq!(bb.booleanized.ambient().len(), 2);
    assert_eq!(bb.congruence_i, Congruence::open(s.clone(), el(&s, "a⊕a")));
    assert!(bb.beta.is_extremal_epi().unwrap());
    assert_eq!(bb.embedded, vec![0, 5]);
    assert!(components_identity_check(&bb.beta));

    let sl = subbilocale_lattice(&b).unwrap();
    assert_eq!(sl.label(sl.index_of(&bb.congruence_i).unwrap()), "𝔬(a⊕a)");
    // S(β)(𝔬(a⊕a)) is the top of S(𝔅(3.3))
    let target = subbilocale_lattice(&bb.booleanized).unwrap();
    let map = functor_s(&bb.beta, &sl, &target).unwrap();
    let k = sl.index_of(&bb.congruence_i).unwrap();
    assert!(target.kernel(map[k]).is_diagonal());
}

#[test]
fn density_factor_examples() {
    let b = b33();
    let s = b.ambient().clone();
    assert!(density_factor_check(&b, &Congruence::diagonal(s.clone())).unwrap());
    assert!(density_factor_check(&b, &Congruence::open(s.clone(), el(&s, "a⊕a"))).unwrap());
    assert!(density_factor_check(&b, &Congruence::closed(s.clone(), el(&s, "a⊕1"))).unwrap());
}

#[test]
fn skeletal_examples() {
    let d3 = diag(3);
    let two = Arc::new(builtin::chain(2));
    let d2 = Arc::new(Biframe::new("2.2", two.clone(), vec![0, 1], vec![0, 1]).unwrap());
    let down = BiframeHom::new(d3.clone(), d2.clone(), FrameHom::new(d3.ambient().clone(), two.clone(), vec![0, 0, 1]).unwrap()).unwrap();
    let up = BiframeHom::new(d3.clone(), d2.clone(), FrameHom::new(d3.ambient().clone(), two.clone(), vec![0, 1, 1]).unwrap()).unwrap();
    assert!(!skeletal_check(&down));
    assert!(skeletal_check(&up));
    let bd3 = least_dense_subbilocale(&d3).unwrap();
    let bd2 = least_dense_subbilocale(&d2).unwrap();
    assert_eq!(bd3.booleanized.ambient().len(), 2);
    assert!(matches!(induced_booleanization_map(&down, &bd3, &bd2), Err(Error::NotSkeletal(_))));
    assert!(commuting_induced_maps(&down, &bd3.beta, &bd2.beta, &lim()).unwrap().is_empty());
    let fhat = induced_booleanization_map(&up, &bd3, &bd2).unwrap();
    assert!(fhat.is_iso());

    let id = BiframeHom::identity(d3.clone());
    assert!(induced_booleanization_map(&id, &bd3, &bd3).unwrap().ambient_map().is_bijective());
    // β itself induces the identity on 𝔅L up to 𝔅𝔅L ≅ 𝔅L
    let bbd3 = least_dense_subbilocale(&bd3.booleanized).unwrap();
    let hat = induced_booleanization_map(&bd3.beta, &bd3, &bbd3).unwrap();
    assert!(hat.is_iso());
}

/// A biframe on the six-element frame `0 < p, q; p < r, s; q < s; r, s < 1`
/// with components `{0, p, 1}` (a 3-chain) and `{0, q, r, 1}` (Boolean).
/// Here `p** = r` lies outside the first component.
fn regular_escape() -> Arc<Biframe> {
    let labels = ["0", "p", "q", "r", "s", "1"].map(String::from).to_vec();
    let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)];
    let l0 = Arc::new(Frame::from_poset(Poset::from_generating_pairs(labels, &covers).unwrap()).unwrap());
    Arc::new(Biframe::new("E", l0, vec![0, 1, 5], vec![0, 2, 3, 5]).unwrap())
}

#[test]
fn least_dense_subbilocale_when_double_pseudocomplements_leave_a_component() {
    let b = regular_escape();
    let l0 = b.ambient().clone();
    assert_eq!(l0.label(l0.double_pseudocomplement(1)), "r");
    assert!(!b.in_component(0, 3));

    // I identifies p with r, but is not a subbilocale
    let i = congruence_i(&b);
    assert_eq!(labels_of(&i), vec![vec!["0"], vec!["p", "r"], vec!["q"], vec!["s", "1"]]);
    assert!(closure_bl(&b, &i).unwrap().is_diagonal());
    let sl = subbilocale_lattice(&b).unwrap();
    assert!(sl.index_of(&i).is_none());

    // the only dense subbilocale is the whole biframe, and the pushout of
    // β|L₁ ⊕ β|L₂ along q_L agrees with it rather than with I
    let dense: Vec<usize> = (0..sl.len()).filter(|&k| sl.kernel(k).is_dense()).collect();
    assert_eq!(dense.len(), 1);
    assert!(sl.kernel(dense[0]).is_diagonal());
    assert!(booleanization_pushout_kernel(&b).unwrap().is_diagonal());
    let bb = least_dense_subbilocale(&b).unwrap();
    assert!(bb.least_dense.kernel.is_diagonal());
    assert!(bb.beta.is_iso());
}

#[test]
fn skeletal_condition_matches_quotient_by_i_not_least_dense() {
    let b = regular_escape();
    let l0 = b.ambient().clone();
    let two = Arc::new(builtin::chain(2));
    let d2 = Arc::new(Biframe::new("2.2", two.clone(), vec![0, 1], vec![0, 1]).unwrap());
    // r ↦ 1, p ↦ 0: f(p**) = 1 ≰ 0 = f(p)**
    let f = BiframeHom::new(b.clone(), d2.clone(), FrameHom::new(l0, two, vec![0, 0, 0, 1, 0, 1]).unwrap()).unwrap();
    assert!(!skeletal_check(&f));
    let (bl, bm) = (least_dense_subbilocale(&b).unwrap(), least_dense_subbilocale(&d2).unwrap());
    assert!(matches!(induced_booleanization_map(&f, &bl, &bm), Err(Error::NotSkeletal(_))));
    // 𝔅L = L, so β_M ∘ f itself commutes
    assert_eq!(commuting_induced_maps(&f, &bl.beta, &bm.beta, &lim()).unwrap().len(), 1);
    // through L₀/I no map commutes
    let (_, q) = b.quotient(&bl.congruence_i).unwrap();
    assert!(commuting_induced_maps(&f, &q, &bm.beta, &lim()).unwrap().is_empty());
}
