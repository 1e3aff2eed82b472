use petgraph::dot::{Config, Dot};
use petgraph::graph::DiGraph;

use super::category::FinCategory;

/// Graphviz rendering: one node per object, one edge per non-identity
/// morphism. Edges flagged in `weq` are drawn bold and blue.
pub fn to_dot(c: &FinCategory, weq: Option<&[bool]>) -> String {
    let mut g: DiGraph<String, (String, bool)> = DiGraph::new();
    let nodes: Vec<_> = c.objects().map(|o| g.add_node(c.object_label(o).to_string())).collect();
    for f in c.morphisms().filter(|&f| !c.is_identity(f)) {
        let marked = weq.is_some_and(|w| w[f]);
        g.add_edge(nodes[c.dom(f)], nodes[c.cod(f)], (c.morphism_label(f).to_string(), marked));
    }
    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let edge_attrs = |_, e: petgraph::graph::EdgeReference<'_, (String, bool)>| {
        let (label, marked) = e.weight();
        let style = if *marked { ", style = bold, color = blue" } else { "" };
        format!("label = {}{style}", quote(label))
    };
    let node_attrs = |_, (_, label): (petgraph::graph::NodeIndex, &String)| format!("label = {}", quote(label));
    let dot = Dot::with_attr_getters(&g, &[Config::EdgeNoLabel, Config::NodeNoLabel], &edge_attrs, &node_attrs);
    format!("{dot:?}")
}
