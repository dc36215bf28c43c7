//! d-separation queries on a small DAG with a collider and a chain.

use frci::dsep::active_trail_exists_bruteforce;
use frci::{d_separated, ConditioningSet, Dag, Visibility};

fn main() -> frci::Result<()> {
    let g = Dag::from_names(
        ["A", "B", "C", "D", "E"].map(|n| (n, Visibility::Visible)),
        [("A", "C"), ("B", "C"), ("C", "D"), ("D", "E")],
    )?;
    let id = |n: &str| g.require(n);
    let queries: [(&str, &str, &[&str]); 6] = [
        ("A", "B", &[]),
        ("A", "B", &["C"]),
        ("A", "B", &["E"]),
        ("A", "E", &[]),
        ("A", "E", &["D"]),
        ("B", "E", &["C"]),
    ];
    for (x, y, s) in queries {
        let set: ConditioningSet = s.iter().map(|n| id(n)).collect::<frci::Result<_>>()?;
        let sep = d_separated(&g, id(x)?, id(y)?, &set)?;
        let trail = active_trail_exists_bruteforce(&g, id(x)?, id(y)?, &set)?;
        assert_eq!(sep, !trail);
        println!("{x} _||_ {y} | {{{}}}: {sep}", s.join(", "));
    }
    Ok(())
}
