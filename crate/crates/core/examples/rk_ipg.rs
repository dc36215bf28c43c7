//! The r(k) including path graph and its full hiding graph for a latent DAG.
//!
//! `L` confounds `B` and `D`; the chain through `C` keeps `A` and `E`
//! separable only by sets of size 1 or more.

use frci::graph::{dag_to_dot, mixed_to_dot};
use frci::ipg::{build_fhg, build_rk_ipg};
use frci::{Dag, Visibility};

fn main() -> frci::Result<()> {
    let g = Dag::from_names(
        [
            ("A", Visibility::Visible),
            ("B", Visibility::Visible),
            ("C", Visibility::Visible),
            ("D", Visibility::Visible),
            ("E", Visibility::Visible),
            ("L", Visibility::Hidden),
        ],
        [("A", "B"), ("B", "C"), ("C", "E"), ("L", "B"), ("L", "D"), ("D", "E")],
    )?;
    for k in 0..=2 {
        let pi = build_rk_ipg(&g, k)?;
        println!("// r({k})-IPG: {} edges", pi.graph().edge_count());
        print!("{}", mixed_to_dot(pi.graph()));
        let fhg = build_fhg(&pi)?;
        println!("// hiding graph: {} nodes", fhg.node_count());
        print!("{}", dag_to_dot(&fhg));
    }
    Ok(())
}
