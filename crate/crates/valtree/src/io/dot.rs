use std::fmt::Write;

use crate::dualgraph::DualGraph;

/// Graphviz rendering: one node `E<i> (a,b)` per component, diamonds for branches.
pub fn to_dot(g: &DualGraph) -> String {
    let mut s = String::from("graph dualgraph {\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let (a, b) = v.farey;
        writeln!(s, "  E{i} [label=\"E{i} ({a},{b})\"];").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(s, "  E{a} -- E{b};").unwrap();
    }
    for (br, v) in g.attachments() {
        writeln!(s, "  C{br} [shape=diamond, label=\"C{br}\"];").unwrap();
        writeln!(s, "  C{br} -- E{v} [style=dashed];").unwrap();
    }
    s.push_str("}\n");
    s
}
