//! Checks learned networks against the truth: agreement on every
//! separation with at most k conditioning variables, and soundness for all.

use frci::random::suite_dag;
use frci::verify::{compare_skeletons, independencies_agree_up_to_k, soundness_unrestricted};
use frci::{fr_k_ci, FrkciConfig, PerfectOracle};

fn main() -> frci::Result<()> {
    for seed in 0..10 {
        let truth = suite_dag(seed);
        let names: Vec<String> = truth.visible_nodes().iter().map(|&v| truth.name(v).to_string()).collect();
        let vis: Vec<&str> = names.iter().map(String::as_str).collect();
        for k in 0..=2 {
            let res = fr_k_ci(&PerfectOracle::new(truth.clone()), &FrkciConfig::new(k))?;
            let diff = compare_skeletons(&res.dag, &truth)?;
            let up_to_k = independencies_agree_up_to_k(&res.dag, &truth, &vis, k)?;
            let unsound = soundness_unrestricted(&res.dag, &truth, &vis)?;
            println!(
                "seed {seed} k {k}: {} visible, {} hidden learned, +{} -{} adjacencies, {} disagreements, {} unsound",
                vis.len(),
                res.dag.hidden_nodes().len(),
                diff.superfluous.len(),
                diff.missing.len(),
                up_to_k.len(),
                unsound.len()
            );
        }
    }
    Ok(())
}
