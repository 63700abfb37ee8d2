//! Hasse diagrams in Graphviz DOT.

use std::fmt::Write;

use crate::format::{ElementRecord, LatticeFile, Result};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per element (labelled by its canonical serialization) and one
/// edge per cover, drawn bottom to top. `1̂` is boxed and filled.
pub fn to_dot(file: &LatticeFile) -> Result<String> {
    let poset = file.to_poset()?;
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(&file.kind)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=ellipse, fontsize=10];").unwrap();
    for (i, element) in poset.elements().iter().enumerate() {
        let label = escape(&element.label());
        match element {
            ElementRecord::Top => writeln!(out, "  n{i} [label=\"{label}\", shape=box, style=filled, fillcolor=lightgray];"),
            _ => writeln!(out, "  n{i} [label=\"{label}\"];"),
        }
        .unwrap();
    }
    for (a, b) in poset.cover_pairs() {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
