//! Persists computed values to a JSON-lines file and reloads them.

use pruned_hurwitz::cache::CacheStore;
use pruned_hurwitz::combinatorics::Partition;
use pruned_hurwitz::hurwitz::{HurwitzEngine, HurwitzQuery, Kind};

fn main() -> pruned_hurwitz::error::Result<()> {
    let dir = tempfile::tempdir()?;
    let path = dir.path().join("values.jsonl");
    let query = HurwitzQuery::new(1, Partition::new(vec![3, 1])?, Partition::new(vec![2, 1, 1])?, Kind::Full);

    let first = HurwitzEngine::default().with_store(CacheStore::open(&path));
    let value = first.value(&query)?;
    println!("computed {value}");
    print!("{}", std::fs::read_to_string(&path)?);

    let second = HurwitzEngine::default().with_store(CacheStore::open(&path));
    println!("reloaded {} records; lookup gives {:?}", second.cached_len(), second.cache_lookup(&query).map(|v| v.to_string()));
    Ok(())
}
