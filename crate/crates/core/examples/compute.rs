//! Exact double Hurwitz numbers of all three kinds for a few small types.

use pruned_hurwitz::combinatorics::Partition;
use pruned_hurwitz::hurwitz::{HurwitzEngine, HurwitzQuery, Kind};

fn main() -> pruned_hurwitz::error::Result<()> {
    let engine = HurwitzEngine::default();
    let cases: [(i64, &[u32], &[u32]); 5] = [
        (0, &[2, 3], &[1, 4]),
        (0, &[2, 2], &[2, 1, 1]),
        (1, &[2, 1], &[1, 1, 1]),
        (1, &[4], &[4]),
        (2, &[3], &[3]),
    ];
    println!("{:>2}  {:<10} {:<10} {:>10} {:>10} {:>10}", "g", "mu", "nu", "H", "PH", "PHHAT");
    for (g, mu, nu) in cases {
        let mu = Partition::new(mu.to_vec())?;
        let nu = Partition::new(nu.to_vec())?;
        let mut row = Vec::new();
        for kind in Kind::ALL {
            row.push(engine.value(&HurwitzQuery::new(g, mu.clone(), nu.clone(), kind))?.to_string());
        }
        println!(
            "{g:>2}  {:<10} {:<10} {:>10} {:>10} {:>10}",
            format!("{:?}", mu.parts()),
            format!("{:?}", nu.parts()),
            row[0],
            row[1],
            row[2]
        );
    }
    Ok(())
}
