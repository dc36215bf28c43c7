use std::fmt::Write;

use super::{Dag, EndpointMark, MixedGraph, Visibility};
use crate::error::{Error, Result};

fn arrow_style(mark: EndpointMark) -> &'static str {
    match mark {
        EndpointMark::Tail => "none",
        EndpointMark::Arrow => "normal",
        EndpointMark::Circle => "odot",
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of a mixed graph.
///
/// Every edge is drawn `dir=both` from the lower to the higher index, with
/// its marks as `arrowtail`/`arrowhead`. Constraints become
/// `// noncollider A B C` comment lines.
pub fn mixed_to_dot(g: &MixedGraph) -> String {
    let mut out = String::from("digraph pipg {\n");
    for v in g.nodes() {
        let _ = writeln!(out, "  {};", quote(g.name(v)));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [dir=both, arrowtail={}, arrowhead={}];",
            quote(g.name(e.a)),
            quote(g.name(e.b)),
            arrow_style(e.mark_a),
            arrow_style(e.mark_b),
        );
    }
    for (a, b, c) in g.constraints() {
        let _ = writeln!(out, "  // noncollider {} {} {}", g.name(a), g.name(b), g.name(c));
    }
    out.push_str("}\n");
    out
}

/// Graphviz rendering of a DAG; hidden nodes are drawn dashed.
pub fn dag_to_dot(g: &Dag) -> String {
    let mut out = String::from("digraph dag {\n");
    for v in g.nodes() {
        if g.is_hidden(v) {
            let _ = writeln!(out, "  {} [style=dashed];", quote(g.name(v)));
        } else {
            let _ = writeln!(out, "  {};", quote(g.name(v)));
        }
    }
    for (p, c) in g.edges() {
        let _ = writeln!(out, "  {} -> {};", quote(g.name(p)), quote(g.name(c)));
    }
    out.push_str("}\n");
    out
}

/// Reads a quoted identifier at the start of `s`; returns it and the rest.
fn unquote(s: &str) -> Option<(String, &str)> {
    let mut chars = s.strip_prefix('"')?.char_indices();
    let mut out = String::new();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &s[i + 2..])),
            c => out.push(c),
        }
    }
    None
}

/// Parses the output of [`dag_to_dot`].
pub fn dag_from_dot(text: &str) -> Result<Dag> {
    let mut dag = Dag::new();
    let malformed = |line: &str| Error::InvalidData(format!("unrecognised DOT line `{line}`"));
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") || line.starts_with("digraph") || line == "}" {
            continue;
        }
        let (first, rest) = unquote(line).ok_or_else(|| malformed(line))?;
        let rest = rest.trim_start();
        if let Some(rest) = rest.strip_prefix("->") {
            let (second, tail) = unquote(rest.trim_start()).ok_or_else(|| malformed(line))?;
            if tail.trim() != ";" {
                return Err(malformed(line));
            }
            let (p, c) = (dag.require(&first)?, dag.require(&second)?);
            dag.add_edge(p, c)?;
        } else {
            let vis = match rest {
                ";" => Visibility::Visible,
                "[style=dashed];" => Visibility::Hidden,
                _ => return Err(malformed(line)),
            };
            dag.add_node(first, vis)?;
        }
    }
    Ok(dag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{NodeId, Visibility};
    use EndpointMark::*;

    #[test]
    fn mixed_graph_marks_and_constraints() {
        let mut g = MixedGraph::new(["A", "B", "C"]).unwrap();
        g.add_edge_named("A", Circle, "B", Arrow).unwrap();
        g.add_edge_named("B", Tail, "C", Circle).unwrap();
        let mut g2 = MixedGraph::new(["A", "B", "C"]).unwrap();
        g2.add_edge_named("A", Circle, "B", Circle).unwrap();
        g2.add_edge_named("B", Circle, "C", Circle).unwrap();
        g2.add_constraint(NodeId(2), NodeId(1), NodeId(0)).unwrap();

        let dot = mixed_to_dot(&g);
        assert!(dot.contains("\"A\" -> \"B\" [dir=both, arrowtail=odot, arrowhead=normal];"));
        assert!(dot.contains("\"B\" -> \"C\" [dir=both, arrowtail=none, arrowhead=odot];"));
        assert!(mixed_to_dot(&g2).contains("// noncollider A B C"));
    }

    #[test]
    fn dag_marks_hidden_nodes() {
        let g = Dag::from_names(
            [("H", Visibility::Hidden), ("A", Visibility::Visible)],
            [("H", "A")],
        )
        .unwrap();
        let dot = dag_to_dot(&g);
        assert!(dot.contains("\"H\" [style=dashed];"));
        assert!(dot.contains("\"H\" -> \"A\";"));
    }

    #[test]
    fn dag_dot_round_trip() {
        let g = Dag::from_names(
            [("H", Visibility::Hidden), ("A \"x\"", Visibility::Visible), ("B", Visibility::Visible)],
            [("H", "A \"x\""), ("H", "B")],
        )
        .unwrap();
        let back = dag_from_dot(&dag_to_dot(&g)).unwrap();
        assert_eq!(back, g);
        assert!(dag_from_dot("digraph dag {\n  \"A\" -> \"B\";\n}\n").is_err());
        assert!(dag_from_dot("digraph dag {\n  A;\n}\n").is_err());
    }
}
