#![allow(dead_code)]

use rand::Rng;

use kanon::table::{Clustering, Table};

/// The 4×3 worked example: two row pairs that each share their last two
/// columns, optimally 2-anonymized at cost 4.
pub fn worked_example() -> Table {
    Table::from_tokens(&[
        vec!["x", "a", "b"],
        vec!["z", "c", "d"],
        vec!["y", "a", "b"],
        vec!["z", "c", "e"],
    ])
    .unwrap()
}

pub fn worked_example_anonymized() -> Vec<kanon::AnonPattern> {
    [
        ["*", "a", "b"],
        ["z", "c", "*"],
        ["*", "a", "b"],
        ["z", "c", "*"],
    ]
    .iter()
    .map(|r| kanon::AnonPattern::from_tokens(r).unwrap())
    .collect()
}

/// A uniformly random valid clustering: shuffle the rows, then cut the
/// permutation into chunks of size ≥ k.
pub fn random_clustering(rng: &mut impl Rng, n: usize, k: usize) -> Clustering {
    assert!(n >= k && k >= 1);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    while start < n {
        let remaining = n - start;
        let size = if remaining < 2 * k {
            remaining
        } else {
            let s = rng.random_range(k..=remaining);
            if remaining - s < k {
                remaining
            } else {
                s
            }
        };
        blocks.push(order[start..start + size].to_vec());
        start += size;
    }
    Clustering::new(blocks, k, n).expect("chunked permutation is a valid clustering")
}
