//! Graphviz rendering of a dessin as a bipartite multigraph.

use std::fmt::Write;

use crate::dessin::Dessin;

/// Black vertices `b<i>` are the cycles of σ0, white vertices `w<j>` the cycles
/// of σ1; edge `e` joins the black and white vertices containing it. The cyclic
/// order at each vertex is kept as a comment since renderers ignore embeddings.
pub fn export_dot(d: &Dessin) -> String {
    let black = d.sigma0().cycles();
    let white = d.sigma1().cycles();
    let owner = |cycles: &[Vec<usize>]| {
        let mut of = vec![0; d.edge_count()];
        for (v, cycle) in cycles.iter().enumerate() {
            for &e in cycle {
                of[e] = v;
            }
        }
        of
    };
    let (black_of, white_of) = (owner(&black), owner(&white));

    let mut out = String::from("graph dessin {\n");
    for (v, cycle) in black.iter().enumerate() {
        let _ = writeln!(out, "  // b{v} cyclic order: {cycle:?}");
        let _ = writeln!(out, "  b{v} [shape=circle, style=filled, fillcolor=black, label=\"\"];");
    }
    for (v, cycle) in white.iter().enumerate() {
        let _ = writeln!(out, "  // w{v} cyclic order: {cycle:?}");
        let _ = writeln!(out, "  w{v} [shape=circle, style=solid, fillcolor=white, label=\"\"];");
    }
    for e in 0..d.edge_count() {
        let _ = writeln!(out, "  b{} -- w{} [label=\"{e}\"];", black_of[e], white_of[e]);
    }
    out.push_str("}\n");
    out
}
