//! Graphviz output for star graphs.
//!
//! The text depends only on the triple: vertices come in index order and
//! edges in generation order, so repeated runs produce identical bytes.

use std::fmt::Write as _;

use cycpres_core::stargraph::{StarGraph, Vertex};
use cycpres_core::GroupParams;

pub fn star_graph_dot(p: &GroupParams, g: &StarGraph) -> String {
    let n = g.n();
    let mut s = String::new();
    let _ = writeln!(s, "graph \"star_{}_{}_{}\" {{", p.n(), p.k(), p.l());
    let _ = writeln!(s, "  label=\"star graph of Gamma_{}({},{})\";", p.n(), p.k(), p.l());
    s.push_str("  node [shape=circle, fontsize=10];\n");
    for i in 0..n {
        let _ = writeln!(s, "  \"{}\";", Vertex::Pos(i));
    }
    for i in 0..n {
        let _ = writeln!(s, "  \"{}\" [style=filled, fillcolor=lightgray];", Vertex::Inv(i));
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(s, "  \"{}\" -- \"{}\";", Vertex::Pos(a), Vertex::Inv(b));
    }
    s.push_str("}\n");
    s
}
