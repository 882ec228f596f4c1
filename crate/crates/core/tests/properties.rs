use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use biframe::colimit::pushout;
use biframe::corpus::{biframes, frames_up_to};
use biframe::frame::enumerate_homs;
use biframe::oracle::factors_through;
use biframe::order::downset_lattice;
use biframe::subbilocale::{closure_bl, subbilocale_lattice};
use biframe::{builtin, Biframe, Congruence, Frame, Limits};

fn lim() -> Limits {
    Limits::default()
}

/// Corpus biframes with ambient frame of size at most 6.
fn small() -> &'static [Arc<Biframe>] {
    static SMALL: OnceLock<Vec<Arc<Biframe>>> = OnceLock::new();
    SMALL.get_or_init(|| biframes(&lim()).unwrap().into_iter().filter(|b| b.ambient().len() <= 6).collect())
}

#[test]
fn birkhoff_round_trip() {
    for f in frames_up_to(6) {
        let (j, _) = f.lattice().join_irreducible_poset();
        let back = downset_lattice(&j, &lim()).unwrap();
        assert!(back.is_isomorphic(f.lattice()));
    }
}

#[test]
fn double_pseudocomplement_is_a_nucleus() {
    let mut frames: Vec<Arc<Frame>> = frames_up_to(6).into_iter().map(Arc::new).collect();
    frames.extend(small().iter().map(|b| b.ambient().clone()));
    for f in &frames {
        let nn = |a| f.double_pseudocomplement(a);
        for a in f.elements() {
            assert!(f.leq(a, nn(a)));
            assert_eq!(nn(nn(a)), nn(a));
            for b in f.elements() {
                assert_eq!(nn(f.meet(a, b)), f.meet(nn(a), nn(b)));
            }
        }
    }
}

#[test]
fn components_are_jointly_epic() {
    let targets: Vec<Arc<Frame>> =
        vec![Arc::new(builtin::chain(2)), Arc::new(builtin::chain(3)), Arc::new(builtin::boolean(2))];
    for b in small() {
        let union = b.component_union();
        for t in &targets {
            let mut seen: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for h in enumerate_homs(b.ambient(), t, &lim()).unwrap() {
                let key: Vec<usize> = union.iter().map(|&x| h.apply(x)).collect();
                if let Some(prev) = seen.insert(key, h.map().to_vec()) {
                    assert_eq!(prev, h.map(), "{}: two maps agree on the components", b.name());
                }
            }
        }
    }
}

#[test]
fn kernel_containment_is_factorization() {
    for b in small().iter().filter(|b| b.ambient().len() <= 5) {
        let sl = subbilocale_lattice(b).unwrap();
        for x in 0..sl.len() {
            for y in 0..sl.len() {
                let (theta, phi) = (sl.kernel(x), sl.kernel(y));
                // ⟨p_θ⟩ ≤ ⟨p_φ⟩ iff p_θ factors through p_φ
                let by_order = sl.lattice().leq(x, y);
                assert_eq!(by_order, phi.refines(theta));
                assert_eq!(by_order, factors_through(theta, phi, &lim()).unwrap(), "{}", b.name());
            }
        }
    }
}

#[test]
fn meets_are_colimits_and_stay_fixed() {
    for b in small() {
        let sl = subbilocale_lattice(b).unwrap();
        let l = sl.lattice();
        for x in 0..sl.len() {
            for y in 0..sl.len() {
                let (tx, ty) = (sl.kernel(x), sl.kernel(y));
                let joined = tx.join(ty);
                let k = sl.index_of(&joined).expect("meet of subbilocales is a subbilocale");
                assert_eq!(k, l.meet(x, y));
                assert_eq!(closure_bl(b, &joined).unwrap(), joined);
                if b.ambient().len() <= 5 {
                    let (_, px) = tx.quotient();
                    let (_, py) = ty.quotient();
                    let sq = pushout(&px, &py, &lim()).unwrap();
                    let diagonal = sq.leg_m.compose(&px).unwrap();
                    assert_eq!(Congruence::kernel(&diagonal), joined);
                }
            }
        }
    }
}

#[test]
fn closure_laws_on_small_biframes() {
    for b in small() {
        let sl = subbilocale_lattice(b).unwrap();
        let amb = sl.ambient();
        let c = sl.closure_map();
        for i in 0..amb.len() {
            // the closure coarsens nothing: its kernel refines the original
            assert!(amb.kernel(c[i]).refines(amb.kernel(i)));
            assert_eq!(c[c[i]], c[i]);
            for j in 0..amb.len() {
                if amb.kernel(j).refines(amb.kernel(i)) {
                    assert!(amb.kernel(c[j]).refines(amb.kernel(c[i])));
                }
            }
        }
    }
}
