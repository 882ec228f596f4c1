//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write;

use crate::label::render;
use crate::order::Poset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Cover relation only, bottom to top, one `rank=same` group per height.
pub fn hasse_dot(name: &str, poset: &Poset, unicode: bool) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(&render(name, unicode))).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    writeln!(out, "  edge [arrowhead=none];").unwrap();
    for x in 0..poset.len() {
        writeln!(out, "  n{x} [label={}];", quote(&render(poset.label(x), unicode))).unwrap();
    }
    let heights = poset.heights();
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let row: Vec<String> = (0..poset.len()).filter(|&x| heights[x] == h).map(|x| format!("n{x};")).collect();
        if !row.is_empty() {
            writeln!(out, "  {{ rank=same; {} }}", row.join(" ")).unwrap();
        }
    }
    for (lo, hi) in poset.covers() {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn chain_diagram() {
        let t = builtin::chain(3);
        let dot = hasse_dot("3", t.poset(), false);
        assert!(dot.contains("rankdir=BT"));
        assert_eq!(dot.matches("->").count(), 2);
        assert_eq!(dot.matches("rank=same").count(), 3);
        assert_eq!(dot, hasse_dot("3", t.poset(), false));
    }

    #[test]
    fn ascii_labels() {
        let t = std::sync::Arc::new(builtin::chain(3));
        let c = crate::colimit::coproduct(&t, &t, &crate::Limits::default()).unwrap();
        let ascii = hasse_dot("3+3", c.frame().poset(), false);
        assert!(ascii.contains("\"a+1|1+a\""));
        let uni = hasse_dot("3⊕3", c.frame().poset(), true);
        assert!(uni.contains("\"a⊕1∨1⊕a\""));
    }
}
