//! Definite discriminating paths in a partially oriented graph.

use frci::frci::{find_definite_discriminating_path, find_with_limit};
use frci::graph::EndpointMark::{Arrow, Circle, Tail};
use frci::MixedGraph;

fn main() -> frci::Result<()> {
    // W o-> U <-> V <-> M, U -> Y, V -> Y, W o-> M, M o-o Y
    let mut g = MixedGraph::new(["W", "U", "V", "M", "Y"])?;
    g.add_edge_named("W", Circle, "U", Arrow)?;
    g.add_edge_named("U", Arrow, "V", Arrow)?;
    g.add_edge_named("V", Arrow, "M", Arrow)?;
    g.add_edge_named("U", Tail, "Y", Arrow)?;
    g.add_edge_named("V", Tail, "Y", Arrow)?;
    g.add_edge_named("W", Circle, "M", Arrow)?;
    g.add_edge_named("M", Circle, "Y", Circle)?;
    let id = |n: &str| g.require(n);
    let show = |p: Option<Vec<frci::NodeId>>| match p {
        Some(p) => p.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" "),
        None => "none".into(),
    };
    println!("W..Y through M: {}", show(find_definite_discriminating_path(&g, id("W")?, id("Y")?, id("M")?)));
    println!("capped at 4 nodes: {}", show(find_with_limit(&g, id("W")?, id("Y")?, id("M")?, Some(4))));
    Ok(())
}
