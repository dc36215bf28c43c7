//! Random latent-variable DAGs for experiments and property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Dag, NodeId, Visibility};

/// Random DAG with `visible + hidden` nodes.
///
/// A random permutation fixes the causal order; each forward pair gets an
/// edge with probability `edge_prob`. Hidden nodes are a random subset of
/// size `hidden`. Visible nodes are named `V1, V2, ..` and hidden ones
/// `L1, L2, ..`, numbered in index order.
pub fn random_dag<R: Rng + ?Sized>(
    visible: usize,
    hidden: usize,
    edge_prob: f64,
    rng: &mut R,
) -> Dag {
    let n = visible + hidden;
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let mut is_hidden = vec![false; n];
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    for &i in idx.iter().take(hidden) {
        is_hidden[i] = true;
    }

    let mut g = Dag::new();
    let (mut nv, mut nh) = (0, 0);
    for &h in &is_hidden {
        let (name, vis) = if h {
            nh += 1;
            (format!("L{nh}"), Visibility::Hidden)
        } else {
            nv += 1;
            (format!("V{nv}"), Visibility::Visible)
        };
        g.add_node(name, vis).expect("generated names are unique");
    }
    for a in 0..n {
        for b in 0..n {
            if rank[a] < rank[b] && rng.random::<f64>() < edge_prob {
                g.add_edge(NodeId(a), NodeId(b))
                    .expect("edges follow a total order");
            }
        }
    }
    g
}

/// The latent DAG used for property suites: 4 to 8 visible nodes, 0 to 3
/// hidden nodes, edge probability 0.25, all drawn from `seed`.
pub fn suite_dag(seed: u64) -> Dag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let visible = rng.random_range(4..=8);
    let hidden = rng.random_range(0..=3);
    random_dag(visible, hidden, 0.25, &mut rng)
}
