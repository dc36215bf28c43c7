//! Fr(k)CI on the ALARM network with a perfect oracle, for k = 0..=2.
//!
//! Reports recovered edges against the true skeleton, edges missing relative
//! to the pairs no set of at most k variables separates, and query counts.

use std::time::Instant;

use frci::alarm::alarm_dag;
use frci::ipg::{ipg_skeleton, rk_skeleton};
use frci::verify::compare_skeletons;
use frci::{fr_k_ci, FrkciConfig, PerfectOracle};

fn main() -> frci::Result<()> {
    let truth = alarm_dag();
    let skeleton = ipg_skeleton(&truth);
    println!(
        "ALARM: {} nodes, {} edges",
        truth.node_count(),
        truth.edge_count()
    );
    for k in 0..=2 {
        let start = Instant::now();
        let res = fr_k_ci(&PerfectOracle::new(truth.clone()), &FrkciConfig::new(k))?;
        let elapsed = start.elapsed();
        let vs_truth = compare_skeletons(&res.dag, &skeleton)?;
        let vs_rk = compare_skeletons(&res.dag, &rk_skeleton(&truth, k))?;
        println!(
            "k={k}: {} edges, superfluous {}, missing {} (vs r(k) skeleton: {}), queries {}, {:.2?}",
            res.pipg.edge_count(),
            vs_truth.superfluous.len(),
            vs_truth.missing.len(),
            vs_rk.missing.len(),
            res.stats.total,
            elapsed
        );
        for (a, b) in &vs_truth.superfluous {
            println!("    extra {a} - {b}");
        }
    }
    Ok(())
}
