//! Fr(k)CI from sampled data with the G² test on a three-node chain.

use frci::bayesnet::{forward_sample, load_network};
use frci::{fr_k_ci, FrkciConfig, GSquaredTest};

const CHAIN: &str = r#"{"nodes":[
  {"name":"A","states":["0","1"],"cpt":[[0.6,0.4]]},
  {"name":"B","states":["0","1"],"parents":["A"],"cpt":[[0.8,0.2],[0.3,0.7]]},
  {"name":"C","states":["0","1"],"parents":["B"],"cpt":[[0.75,0.25],[0.2,0.8]]}
]}"#;

fn main() -> frci::Result<()> {
    let bn = load_network(CHAIN)?;
    for rows in [200, 2_000, 50_000] {
        let data = forward_sample(&bn, rows, 7)?;
        let test = GSquaredTest::new(data, 0.01)?;
        let res = fr_k_ci(&test, &FrkciConfig::new(1))?;
        let edges: Vec<String> = res
            .pipg
            .edges()
            .iter()
            .map(|e| format!("{}-{}", res.pipg.name(e.a), res.pipg.name(e.b)))
            .collect();
        println!(
            "{rows:>6} rows: {} (queries {}, low power {})",
            edges.join(" "),
            res.stats.total,
            test.low_power_verdicts()
        );
    }
    Ok(())
}
