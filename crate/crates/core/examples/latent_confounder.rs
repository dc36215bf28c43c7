//! A hidden common cause of two observed variables becomes a hidden node
//! in the learned network.

use frci::{fr_k_ci, Dag, EndpointMark, FrkciConfig, PerfectOracle, Visibility};

fn glyph(mark: EndpointMark, left: bool) -> char {
    match (mark, left) {
        (EndpointMark::Tail, _) => '-',
        (EndpointMark::Circle, _) => 'o',
        (EndpointMark::Arrow, true) => '<',
        (EndpointMark::Arrow, false) => '>',
    }
}

fn main() -> frci::Result<()> {
    let truth = Dag::from_names(
        [
            ("X", Visibility::Visible),
            ("A", Visibility::Visible),
            ("B", Visibility::Visible),
            ("Y", Visibility::Visible),
            ("L", Visibility::Hidden),
        ],
        [("X", "A"), ("L", "A"), ("L", "B"), ("Y", "B")],
    )?;
    let res = fr_k_ci(&PerfectOracle::new(truth), &FrkciConfig::new(1))?;
    println!("pipg edges:");
    for e in res.pipg.edges() {
        println!(
            "  {} {}-{} {}",
            res.pipg.name(e.a),
            glyph(e.mark_a, true),
            glyph(e.mark_b, false),
            res.pipg.name(e.b)
        );
    }
    let dag = &res.dag;
    for h in dag.hidden_nodes() {
        let kids: Vec<&str> = dag.children(h).iter().map(|&c| dag.name(c)).collect();
        println!("hidden {} -> {}", dag.name(h), kids.join(", "));
    }
    println!("queries: {}", res.stats.total);
    print!("{}", res.trace_text());
    Ok(())
}
