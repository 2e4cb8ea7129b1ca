//! Graphviz export of 1-skeleta. Edges labelled with the silent label are
//! dashed.

use std::fmt::Write;

use crate::hdts::WeakHdts;
use crate::precube::PrecubicalSet;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn edge(out: &mut String, from: u32, to: u32, label: &str, tau: &str) {
    let style = if label == tau { ", style=dashed" } else { "" };
    writeln!(out, "  s{from} -> s{to} [label=\"{}\"{style}];", escape(label)).unwrap();
}

/// Vertices are named by their decoration when they have one; the initial
/// vertex is drawn with a double border.
pub fn precube_to_dot(k: &PrecubicalSet, tau: &str) -> String {
    let mut out = String::from("digraph precube {\n");
    for &v in k.vertices() {
        let name = k.decoration().get(&v).cloned().unwrap_or_else(|| v.0.to_string());
        let shape = if k.initial() == Some(v) { ", shape=doublecircle" } else { "" };
        writeln!(out, "  s{} [label=\"{}\"{shape}];", v.0, escape(&name)).unwrap();
    }
    for &e in k.edges() {
        edge(&mut out, k.face(e, 0, false).0, k.face(e, 0, true).0, k.label(e)[0].as_str(), tau);
    }
    out.push_str("}\n");
    out
}

/// One edge per 1-transition, labelled `label#action`.
pub fn hdts_to_dot(x: &WeakHdts, tau: &str) -> String {
    let mut out = String::from("digraph hdts {\n");
    for s in x.states() {
        writeln!(out, "  s{} [label=\"{}\"];", s.0, s.0).unwrap();
    }
    for t in x.transitions().iter().filter(|t| t.dim() == 1) {
        let l = x.label(t.acts[0]).expect("actions are labelled");
        let style = if l.as_str() == tau { ", style=dashed" } else { "" };
        writeln!(out, "  s{} -> s{} [label=\"{}#{}\"{style}];", t.src.0, t.tgt.0, escape(l.as_str()), t.acts[0].0)
            .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::word;
    use crate::precube::standard_cube;

    #[test]
    fn square_and_empty() {
        let d = precube_to_dot(&standard_cube(&word(&["a", "b"])), "tau");
        assert_eq!(d.matches("[label=").count(), 8);
        assert_eq!(d.matches("->").count(), 4);
        assert!(!d.contains("dashed"));
        assert_eq!(precube_to_dot(&PrecubicalSet::empty(), "tau"), "digraph precube {\n}\n");
    }
}
