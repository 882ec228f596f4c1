//! Named frames and biframes: `frame:2`, `frame:3`, `frame:B2`,
//! `biframe:3.3`, `biframe:diag:<frame>`, ...

use std::sync::Arc;

use crate::biframe::Biframe;
use crate::colimit::coproduct;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::order::{downset_lattice, Lattice, Poset};
use crate::Limits;

/// The `n`-element chain: `0 < a < b < … < 1`. `chain(1)` is the
/// one-element frame.
pub fn chain(n: usize) -> Frame {
    assert!(n >= 1, "a frame has at least one element");
    let labels: Vec<String> = match n {
        1 => vec!["0".into()],
        _ => std::iter::once("0".to_string())
            .chain((0..n - 2).map(|i| ((b'a' + i as u8) as char).to_string()))
            .chain(std::iter::once("1".to_string()))
            .collect(),
    };
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Frame::from_poset(Poset::from_generating_pairs(labels, &pairs).expect("chain")).expect("chains are distributive")
}

/// The Boolean frame with `k` atoms (`x`, `y` for `k = 2`).
pub fn boolean(k: usize) -> Frame {
    let atoms: Vec<String> = match k {
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (0..k).map(|i| ((b'p' + i as u8) as char).to_string()).collect(),
    };
    let anti = Poset::from_pairs(atoms.clone(), &[]).expect("antichain");
    let l = downset_lattice(&anti, &Limits::default()).expect("small");
    let n = l.len();
    let labels = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            _ if i == n - 1 => "1".to_string(),
            _ => l.label(i).trim_matches(['{', '}']).replace(',', ""),
        })
        .collect();
    Frame::new(l.relabeled(labels).expect("unique")).expect("Boolean")
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// N₅ = {0 < a < c < 1, 0 < b < 1}; a lattice but not a frame.
pub fn pentagon_lattice() -> Lattice {
    let p = Poset::from_generating_pairs(labels(&["0", "a", "c", "b", "1"]), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        .expect("poset");
    Lattice::from_poset(p).expect("lattice")
}

/// M₃ = {0 < x, y, z < 1}; a lattice but not a frame.
pub fn diamond_lattice() -> Lattice {
    let p = Poset::from_generating_pairs(
        labels(&["0", "x", "y", "z", "1"]),
        &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
    .expect("poset");
    Lattice::from_poset(p).expect("lattice")
}

/// Parses a frame name: `frame:<n>` (chain), `frame:B<k>` (Boolean), or the
/// bare forms `<n>`, `B<k>`. `N5` and `M3` name the two non-distributive
/// lattices and fail validation.
pub fn frame(name: &str) -> Result<Frame> {
    let key = name.strip_prefix("frame:").unwrap_or(name);
    if key == "N5" {
        return Frame::new(pentagon_lattice());
    }
    if key == "M3" {
        return Frame::new(diamond_lattice());
    }
    if let Some(k) = key.strip_prefix('B').and_then(|k| k.parse::<usize>().ok()) {
        if k <= 5 {
            return Ok(boolean(k));
        }
    }
    if let Ok(n) = key.parse::<usize>() {
        if (1..=26).contains(&n) {
            return Ok(chain(n));
        }
    }
    Err(Error::FrameMismatch("unknown builtin frame name"))
}

/// The coproduct biframe `(L₁ ⊕ L₂, L₁, L₂)`.
pub fn coproduct_biframe(name: &str, l1: Frame, l2: Frame, limits: &Limits) -> Result<Biframe> {
    let c = coproduct(&Arc::new(l1), &Arc::new(l2), limits)?;
    let comp1 = c.inj_left().image();
    let comp2 = c.inj_right().image();
    Biframe::with_limits(name, c.frame().clone(), comp1, comp2, *limits)
}

/// The biframe `(L₀, L₀, L₀)`.
pub fn diagonal_biframe(name: &str, l0: Frame, limits: &Limits) -> Result<Biframe> {
    let all: Vec<usize> = l0.elements().collect();
    Biframe::with_limits(name, Arc::new(l0), all.clone(), all, *limits)
}

/// Parses `biframe:3.3`, `biframe:<A>.<B>` (coproduct biframe of two named
/// frames) or `biframe:diag:<frame>`.
pub fn biframe(name: &str, limits: &Limits) -> Result<Biframe> {
    let key = name.strip_prefix("biframe:").unwrap_or(name);
    if let Some(f) = key.strip_prefix("diag:") {
        let l0 = frame(f)?;
        return diagonal_biframe(&format!("diag({})", f.strip_prefix("frame:").unwrap_or(f)), l0, limits);
    }
    if let Some((a, b)) = key.split_once('.') {
        return coproduct_biframe(key, frame(a)?, frame(b)?, limits);
    }
    Err(Error::FrameMismatch("unknown builtin biframe name"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_frames() {
        assert_eq!(frame("frame:2").unwrap().len(), 2);
        assert_eq!(chain(3).labels(), &["0", "a", "1"]);
        assert_eq!(boolean(2).labels(), &["0", "x", "y", "1"]);
        assert_eq!(frame("B3").unwrap().len(), 8);
        assert!(matches!(frame("N5"), Err(Error::NotDistributive(..))));
        assert!(frame("frame:zz").is_err());
    }

    #[test]
    fn three_dot_three() {
        let b = biframe("biframe:3.3", &Limits::default()).unwrap();
        assert_eq!(b.ambient().len(), 6);
        assert_eq!(b.component(0).len(), 3);
        assert_eq!(b.component(1).len(), 3);
    }
}
