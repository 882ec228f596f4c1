//! Deterministic names for sublocales and subbilocales, and ASCII rendering
//! of labels.

use std::collections::HashMap;

use crate::congruence::Congruence;
use crate::frame::Frame;
use crate::order::Elem;

/// ASCII form of a label: `⊕ → +`, `∨ → |`, `∧ → &`, `𝔠 → c`, `𝔬 → o`,
/// `𝔅 → B`, `∅ → {}`.
pub fn ascii(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for ch in label.chars() {
        match ch {
            '⊕' => out.push('+'),
            '∨' => out.push('|'),
            '∧' => out.push('&'),
            '𝔠' => out.push('c'),
            '𝔬' => out.push('o'),
            '𝔅' => out.push('B'),
            '∅' => out.push_str("{}"),
            '≤' => out.push_str("<="),
            c => out.push(c),
        }
    }
    out
}

pub fn render(label: &str, unicode: bool) -> String {
    if unicode {
        label.to_string()
    } else {
        ascii(label)
    }
}

/// Names each congruence in `kernels` (all on `frame`), trying in order:
/// the given top and bottom names, `𝔠(x)` then `𝔬(x)` for `x` in each of
/// `priority` in turn, then `𝔠(x)∧𝔬(y)` with `x, y` from each priority set,
/// and finally `σk`. The first name found for a congruence wins.
///
/// `meet` combines two kernels into the kernel of their meet (congruence
/// join); candidate meets not present in `kernels` are skipped.
pub fn name_congruences(
    frame: &std::sync::Arc<Frame>,
    kernels: &[Congruence],
    top: &str,
    bottom: &str,
    priority: &[Vec<Elem>],
) -> Vec<String> {
    let index: HashMap<&[Elem], usize> = kernels.iter().enumerate().map(|(i, k)| (k.reps(), i)).collect();
    let mut names: Vec<Option<String>> = vec![None; kernels.len()];
    let assign = |k: &Congruence, name: &dyn Fn() -> String, names: &mut Vec<Option<String>>| {
        if let Some(&i) = index.get(k.reps()) {
            if names[i].is_none() {
                names[i] = Some(name());
            }
        }
    };
    assign(&Congruence::diagonal(frame.clone()), &|| top.to_string(), &mut names);
    assign(&Congruence::total(frame.clone()), &|| bottom.to_string(), &mut names);
    let closed: Vec<Congruence> = frame.elements().map(|x| Congruence::closed(frame.clone(), x)).collect();
    let open: Vec<Congruence> = frame.elements().map(|x| Congruence::open(frame.clone(), x)).collect();
    for set in priority {
        for &x in set {
            assign(&closed[x], &|| format!("𝔠({})", frame.label(x)), &mut names);
        }
        for &x in set {
            assign(&open[x], &|| format!("𝔬({})", frame.label(x)), &mut names);
        }
    }
    for set in priority {
        for &x in set {
            for &y in set {
                if names.iter().all(Option::is_some) {
                    break;
                }
                let m = closed[x].join(&open[y]);
                assign(&m, &|| format!("𝔠({})∧𝔬({})", frame.label(x), frame.label(y)), &mut names);
            }
        }
    }
    let mut k = 0;
    names
        .into_iter()
        .map(|n| {
            n.unwrap_or_else(|| {
                k += 1;
                format!("σ{k}")
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascii_rendering() {
        assert_eq!(ascii("𝔠(a⊕1∨1⊕a)"), "c(a+1|1+a)");
        assert_eq!(ascii("𝔠(a⊕1)∧𝔬(1⊕a)"), "c(a+1)&o(1+a)");
        assert_eq!(ascii("𝔅(3.3)"), "B(3.3)");
        assert_eq!(render("𝔬(a)", true), "𝔬(a)");
    }
}
