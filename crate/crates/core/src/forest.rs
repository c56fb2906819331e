//! Rooted labeled forests counted by ordered out-degree sequence.
//!
//! Edges point away from the roots; `deg(v)` is the number of successors of
//! `v`. For a root set `S` on `n` vertices the generating function is
//! `(x_1 + .. + x_n)^(n-|S|-1) * sum_{i in S} x_i`, so the number of forests
//! with degree sequence `delta` is a sum of multinomials.

use crate::combinatorics::{multinomial, Integer};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`enumerate_rooted_forests`] by default.
pub const DEFAULT_FOREST_BOUND: usize = 8;

/// Ordered out-degree sequence `(deg(1), .., deg(n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    /// Whether this is the degree sequence of some forest on `n` vertices
    /// with `components` trees: length `n` and sum `n - components`.
    pub fn is_of_type(&self, n: usize, components: usize) -> bool {
        self.0.len() == n && components <= n && self.0.iter().sum::<usize>() == n - components
    }
}

/// A rooted forest on `{0, .., n-1}` given by parent pointers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedForest {
    parent: Vec<Option<usize>>,
}

impl RootedForest {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.parent.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut deg = vec![0; self.parent.len()];
        for p in self.parent.iter().flatten() {
            deg[*p] += 1;
        }
        DegreeSequence(deg)
    }

    /// Number of incident edges.
    pub fn valency(&self, v: usize) -> usize {
        let children = self.parent.iter().filter(|p| **p == Some(v)).count();
        children + usize::from(self.parent[v].is_some())
    }
}

/// Number of rooted forests on `delta.len()` vertices, rooted exactly at
/// `roots`, with out-degree sequence `delta`.
pub fn count_forests_with_degrees(delta: &DegreeSequence, roots: &[usize]) -> Result<Integer> {
    let n = delta.0.len();
    validate_roots(n, roots)?;
    if roots.len() == n {
        // only the forest of isolated roots
        return Ok(Integer::from(u8::from(delta.0.iter().all(|&d| d == 0))));
    }
    let top = (n - roots.len() - 1) as i64;
    let mut parts: Vec<i64> = delta.0.iter().map(|&d| d as i64).collect();
    let mut total = Integer::from(0);
    for &r in roots {
        parts[r] -= 1;
        total += multinomial(top, &parts);
        parts[r] += 1;
    }
    Ok(total)
}

/// Calls `visit` on every rooted forest on `{0, .., n-1}` whose root set is
/// exactly `roots`.
pub fn for_each_rooted_forest(
    n: usize,
    roots: &[usize],
    bound: usize,
    mut visit: impl FnMut(&RootedForest),
) -> Result<()> {
    if n > bound {
        return Err(Error::Precondition(format!(
            "forest enumeration bounded to {bound} vertices, asked for {n}"
        )));
    }
    validate_roots(n, roots)?;
    let mut is_root = vec![false; n];
    for &r in roots {
        is_root[r] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !is_root[v]).collect();
    let mut forest = RootedForest {
        parent: vec![None; n],
    };
    // odometer over parent choices; each free vertex picks any other vertex
    let mut choice = vec![0usize; free.len()];
    loop {
        for (&v, &c) in free.iter().zip(&choice) {
            forest.parent[v] = Some(if c >= v { c + 1 } else { c });
        }
        if is_acyclic(&forest) {
            visit(&forest);
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < n - 1 {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Every rooted forest on `{0, .., n-1}` with root set `roots`.
pub fn enumerate_rooted_forests(n: usize, roots: &[usize], bound: usize) -> Result<Vec<RootedForest>> {
    let mut out = Vec::new();
    for_each_rooted_forest(n, roots, bound, |f| out.push(f.clone()))?;
    Ok(out)
}

fn validate_roots(n: usize, roots: &[usize]) -> Result<()> {
    if roots.is_empty() {
        return Err(Error::Precondition("root set must be non-empty".into()));
    }
    let mut seen = vec![false; n];
    for &r in roots {
        if r >= n || std::mem::replace(&mut seen[r], true) {
            return Err(Error::Precondition(format!("invalid root set {roots:?} for {n} vertices")));
        }
    }
    Ok(())
}

fn is_acyclic(forest: &RootedForest) -> bool {
    let n = forest.parent.len();
    (0..n).all(|start| {
        let mut v = start;
        for _ in 0..=n {
            match forest.parent[v] {
                None => return true,
                Some(p) => v = p,
            }
        }
        false
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{subsets, weak_compositions};
    use std::collections::HashMap;

    fn ds(v: &[usize]) -> DegreeSequence {
        DegreeSequence(v.to_vec())
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(count_forests_with_degrees(&ds(&[2, 0, 0]), &[0]).unwrap(), Integer::from(1));
        assert_eq!(count_forests_with_degrees(&ds(&[1, 1, 0]), &[0]).unwrap(), Integer::from(1));
        assert_eq!(count_forests_with_degrees(&ds(&[0, 0]), &[0, 1]).unwrap(), Integer::from(1));
        assert_eq!(count_forests_with_degrees(&ds(&[1, 0]), &[0, 1]).unwrap(), Integer::from(0));
        assert!(count_forests_with_degrees(&ds(&[0, 0]), &[]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_rooted_forests(3, &[0], DEFAULT_FOREST_BOUND).unwrap().len(), 3);
        assert_eq!(enumerate_rooted_forests(2, &[0, 1], DEFAULT_FOREST_BOUND).unwrap().len(), 1);
        assert_eq!(enumerate_rooted_forests(1, &[0], DEFAULT_FOREST_BOUND).unwrap().len(), 1);
        assert!(enumerate_rooted_forests(9, &[0], DEFAULT_FOREST_BOUND).is_err());
        assert!(enumerate_rooted_forests(3, &[], DEFAULT_FOREST_BOUND).is_err());
    }

    #[test]
    fn path_has_expected_degrees() {
        let forests = enumerate_rooted_forests(3, &[0], DEFAULT_FOREST_BOUND).unwrap();
        let path = forests
            .iter()
            .find(|f| f.parent(1) == Some(0) && f.parent(2) == Some(1))
            .unwrap();
        assert_eq!(path.degree_sequence(), ds(&[1, 1, 0]));
        assert_eq!(path.valency(1), 2);
        assert_eq!(path.roots(), vec![0]);
    }

    #[test]
    fn degree_sequence_type() {
        assert!(ds(&[1, 1, 0]).is_of_type(3, 1));
        assert!(!ds(&[1, 1, 0]).is_of_type(3, 2));
        assert!(ds(&[0, 0]).is_of_type(2, 2));
    }

    #[test]
    fn brute_force_agrees_up_to_six_vertices() {
        for n in 1..=6 {
            for roots in subsets(n).filter(|s| !s.is_empty()) {
                let mut by_degree: HashMap<DegreeSequence, u64> = HashMap::new();
                let mut total = 0u64;
                for_each_rooted_forest(n, &roots, DEFAULT_FOREST_BOUND, |f| {
                    *by_degree.entry(f.degree_sequence()).or_default() += 1;
                    total += 1;
                })
                .unwrap();
                for delta in weak_compositions(n - roots.len(), n) {
                    let delta = DegreeSequence(delta);
                    let expected = by_degree.get(&delta).copied().unwrap_or(0);
                    assert_eq!(
                        count_forests_with_degrees(&delta, &roots).unwrap(),
                        Integer::from(expected),
                        "n={n} roots={roots:?} delta={delta:?}"
                    );
                }
                let k = roots.len();
                let expected_total = if n == k { 1 } else { (k * n.pow((n - k - 1) as u32)) as u64 };
                assert_eq!(total, expected_total);
            }
        }
    }
}
