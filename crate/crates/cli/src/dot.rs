//! Graphviz text for a graft and for its component poset.

use std::fmt::Write as _;

use graftdm::decomposition::{AttributeMap, DMPoset, GraftAnalysis};
use graftdm::Multigraph;

/// Colors available in the `set312` scheme.
const PALETTE: usize = 12;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

fn set_label(g: &Multigraph, set: &[usize]) -> String {
    let names: Vec<&str> = set.iter().map(|&v| g.label(v)).collect();
    format!("{{{}}}", names.join(", "))
}

/// Factor-components as clusters, allowed edges solid and the rest dashed.
/// Nodes are filled by KL class; terminals get a double border.
pub fn graft_dot(analysis: &GraftAnalysis<'_>) -> String {
    let graft = analysis.graft();
    let g = graft.graph();
    let mut out = String::new();
    writeln!(out, "graph graft {{").unwrap();
    writeln!(out, "  node [style=filled, colorscheme=set312];").unwrap();
    for c in &analysis.components {
        writeln!(out, "  subgraph cluster_{} {{", c.id).unwrap();
        writeln!(out, "    label=\"C{}\";", c.id).unwrap();
        for &v in &c.vertices {
            let fill = analysis.kl.class_of[v] % PALETTE + 1;
            let border = if graft.is_terminal(v) { ", peripheries=2" } else { "" };
            writeln!(out, "    {} [fillcolor={fill}{border}];", quote(g.label(v))).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let style = if analysis.allowed.contains(e) {
            "solid"
        } else {
            "dashed"
        };
        writeln!(
            out,
            "  {} -- {} [label=\"e{e}\", style={style}];",
            quote(g.label(u)),
            quote(g.label(v))
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// Hasse diagram drawn bottom-up. With `attrs`, covering edges out of its
/// base component carry the KL class labeling the upper end.
pub fn hasse_dot(analysis: &GraftAnalysis<'_>, p: &DMPoset, attrs: Option<&AttributeMap>) -> String {
    let g = analysis.graft().graph();
    let mut out = String::new();
    writeln!(out, "digraph hasse {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for c in &p.components {
        let members = escape(&set_label(g, &c.vertices));
        writeln!(out, "  C{0} [label=\"C{0}\\n{members}\"];", c.id).unwrap();
    }
    for &(lo, hi) in &p.hasse {
        let attr = attrs
            .filter(|m| m.base == lo)
            .and_then(|m| m.label(hi))
            .map(|s| format!(" [label={}]", quote(&set_label(g, &analysis.kl.classes[s]))))
            .unwrap_or_default();
        writeln!(out, "  C{lo} -> C{hi}{attr};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use graftdm::decomposition::{attributes_with, comb_designations, dm_relation_with};
    use graftdm::generators::named_instances;
    use graftdm::EngineOptions;

    fn render(name: &str, c0: Option<usize>) -> (String, String) {
        let graft = named_instances().remove(name).unwrap();
        let opts = EngineOptions::default();
        let analysis = GraftAnalysis::new(&graft, &opts).unwrap();
        let d = comb_designations(&graft, &opts).unwrap().remove(0);
        let p = dm_relation_with(&analysis, &d).unwrap();
        let attrs = c0.map(|c| attributes_with(&analysis, &p, c).unwrap());
        (graft_dot(&analysis), hasse_dot(&analysis, &p, attrs.as_ref()))
    }

    #[test]
    fn p4_and_c4_shapes() {
        let (graft, hasse) = render("P4", None);
        assert_eq!(graft.matches("subgraph cluster_").count(), 2);
        assert_eq!(hasse.matches(" -> ").count(), 1);
        assert_eq!(graft.matches("style=dashed").count(), 1);

        let (graft, hasse) = render("C4", None);
        assert_eq!(graft.matches("subgraph cluster_").count(), 1);
        assert_eq!(hasse.matches(" -> ").count(), 0);
    }

    #[test]
    fn two_pendant_attribute_labels() {
        let (_, hasse) = render("two-pendant", Some(0));
        assert!(hasse.contains("C0 -> C1 [label=\"{b1}\"];"), "{hasse}");
        assert!(hasse.contains("C0 -> C2 [label=\"{b2}\"];"), "{hasse}");
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(quote(r#"a"b\c"#), r#""a\"b\\c""#);
    }
}
