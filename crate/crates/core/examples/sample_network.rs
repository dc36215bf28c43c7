//! Random parameters for a latent DAG, forward sampling, and CSV output.

use frci::bayesnet::{forward_sample, random_parameters_with_states, save_network};
use frci::random::random_dag;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> frci::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let dag = random_dag(5, 1, 0.4, &mut rng);
    let cards: Vec<usize> = (0..dag.node_count()).map(|i| 2 + i % 2).collect();
    let bn = random_parameters_with_states(&dag, &cards, 3, 1.0)?;
    print!("{}", save_network(&bn)?);

    let data = forward_sample(&bn, 10, 3)?;
    let mut out = Vec::new();
    data.to_csv(&mut out)?;
    print!("{}", String::from_utf8_lossy(&out));
    Ok(())
}
