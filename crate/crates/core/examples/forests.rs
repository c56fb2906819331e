//! Rooted forests: counts by degree sequence against brute-force enumeration.

use std::collections::BTreeMap;

use pruned_hurwitz::forest::{count_forests_with_degrees, enumerate_rooted_forests, DEFAULT_FOREST_BOUND};

fn main() -> pruned_hurwitz::error::Result<()> {
    let n = 5;
    let roots = [0, 1];
    let forests = enumerate_rooted_forests(n, &roots, DEFAULT_FOREST_BOUND)?;
    println!("{} forests on {n} vertices rooted at {roots:?}", forests.len());

    let mut by_degrees = BTreeMap::new();
    for forest in &forests {
        *by_degrees.entry(forest.degree_sequence()).or_insert(0u64) += 1;
    }
    for (delta, seen) in &by_degrees {
        let formula = count_forests_with_degrees(delta, &roots)?;
        println!("  {:?}: enumerated {seen}, formula {formula}", delta.0);
    }

    for n in 1..=6 {
        let count = enumerate_rooted_forests(n, &[0], DEFAULT_FOREST_BOUND)?.len();
        println!("rooted trees on {n} labeled vertices with fixed root: {count}");
    }
    Ok(())
}
