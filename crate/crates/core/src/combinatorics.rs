//! Exact arithmetic and the small combinatorial generators shared by the
//! evaluators: partitions with labeled parts, multinomials, centralizer
//! orders, bounded tuples and ordered set partitions.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// An ordered tuple of positive parts.
///
/// Parts keep their position because the cycles of a monodromy tuple (and the
/// vertices and faces of a branching graph) are labeled. Hurwitz values only
/// depend on the multiset, see [`Partition::sorted`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, rejecting zero parts.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        Ok(Partition(parts))
    }

    /// The degenerate empty partition (degree 0, length 0).
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Sum of the parts.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parts sorted in descending order.
    pub fn sorted(&self) -> Partition {
        let mut parts = self.0.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The sub-tuple `(self_i)_{i in indices}` in the given index order.
    pub fn select(&self, indices: &[usize]) -> Partition {
        Partition(indices.iter().map(|&i| self.0[i]).collect())
    }

    /// Appends parts, keeping the existing order.
    pub fn with_appended(&self, extra: &[u32]) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(extra);
        Partition(parts)
    }

    /// Every part multiplied by `t`.
    pub fn scaled(&self, t: u32) -> Partition {
        Partition(self.0.iter().map(|&p| p * t).collect())
    }

    /// True iff this is the one-part partition `(d)`.
    pub fn is_single_cycle(&self) -> bool {
        self.0.len() == 1
    }

    /// Multiplicity `m_k` of each part size `k`.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.0 {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses a comma separated list such as `2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        let parts = trimmed
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidPartition(format!("bad part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// `n (n-1) ... (n-k+1)`, i.e. `n! / (n-k)!`; zero when `k > n`.
pub fn falling_factorial(n: i64, k: i64) -> Integer {
    if k < 0 || n < 0 || k > n {
        return Integer::zero();
    }
    (0..k).fold(Integer::one(), |acc, i| acc * (n - i))
}

/// `n! / prod parts_i!`, extended by zero: any negative part, or parts not
/// summing to `n`, give 0.
pub fn multinomial(n: i64, parts: &[i64]) -> Integer {
    if n < 0 || parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != n {
        return Integer::zero();
    }
    // product of binomials avoids the big factorial quotient
    let mut acc = Integer::one();
    let mut filled = 0i64;
    for &p in parts {
        for i in 1..=p {
            acc = acc * (filled + i) / i;
        }
        filled += p;
    }
    acc
}

/// Number of labelings of the cycles of a fixed permutation of cycle type
/// `p` that agree with the part order: `prod_k m_k(p)!`.
pub fn automorphism_factor(p: &Partition) -> Integer {
    p.multiplicities()
        .values()
        .fold(Integer::one(), |acc, &m| acc * factorial(m as u64))
}

/// Order of the centralizer of a permutation of cycle type `p`:
/// `prod_k k^{m_k} m_k!`.
pub fn centralizer_order(p: &Partition) -> Integer {
    p.multiplicities().iter().fold(Integer::one(), |acc, (&k, &m)| {
        acc * num::pow(Integer::from(k), m) * factorial(m as u64)
    })
}

/// Iterates every tuple `t` with `1 <= t_i <= bound_i` in lexicographic order.
pub fn bounded_tuples(bound: &Partition) -> BoundedTuples {
    BoundedTuples {
        bound: bound.parts().to_vec(),
        next: if bound.is_empty() {
            None
        } else {
            Some(vec![1; bound.len()])
        },
    }
}

pub struct BoundedTuples {
    bound: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for BoundedTuples {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] < self.bound[pos] {
                succ[pos] += 1;
                self.next = Some(succ);
                break;
            }
            succ[pos] = 1;
        }
        Some(Partition(current))
    }
}

/// Iterates every ordered decomposition of `ground` into `blocks` disjoint,
/// possibly empty sets. Yields `blocks^|ground|` tuples; each block keeps the
/// relative order of `ground`.
pub fn ordered_set_partitions(ground: &[usize], blocks: usize) -> OrderedSetPartitions {
    assert!(blocks >= 1, "need at least one block");
    OrderedSetPartitions {
        ground: ground.to_vec(),
        blocks,
        assignment: Some(vec![0; ground.len()]),
    }
}

pub struct OrderedSetPartitions {
    ground: Vec<usize>,
    blocks: usize,
    assignment: Option<Vec<usize>>,
}

impl Iterator for OrderedSetPartitions {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        let assignment = self.assignment.take()?;
        let mut out = vec![Vec::new(); self.blocks];
        for (&elem, &block) in self.ground.iter().zip(&assignment) {
            out[block].push(elem);
        }
        // base-`blocks` odometer, most significant digit first
        let mut succ = assignment;
        let mut pos = succ.len();
        while pos > 0 {
            pos -= 1;
            if succ[pos] + 1 < self.blocks {
                succ[pos] += 1;
                self.assignment = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(out)
    }
}

/// Iterates all subsets of `{0, .., n-1}` as sorted index vectors.
pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n)).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// All partitions of `d` with parts in non-increasing order, listed in
/// reverse lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            prefix.push(first);
            go(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d > 0 {
        go(d, d, &mut Vec::new(), &mut out);
    }
    out
}

/// Iterates the compositions of `total` into `slots` non-negative parts.
pub fn weak_compositions(total: usize, slots: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            go(total - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if slots == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, slots, &mut Vec::with_capacity(slots), &mut out);
    out
}

pub fn integer_to_rational(n: Integer) -> Rational {
    Rational::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(3, &[1, 1, 1]), Integer::from(6));
        assert_eq!(multinomial(1, &[0, 1, 0]), Integer::from(1));
        assert_eq!(multinomial(2, &[3, -1]), Integer::zero());
        assert_eq!(multinomial(4, &[1, 1]), Integer::zero());
        assert_eq!(multinomial(0, &[]), Integer::one());
        assert_eq!(multinomial(-1, &[]), Integer::zero());
    }

    #[test]
    fn automorphism_and_centralizer() {
        assert_eq!(automorphism_factor(&part(&[2, 3])), Integer::from(1));
        assert_eq!(automorphism_factor(&part(&[1, 1])), Integer::from(2));
        assert_eq!(automorphism_factor(&part(&[2, 2, 2, 1])), Integer::from(6));
        assert_eq!(centralizer_order(&part(&[3])), Integer::from(3));
        assert_eq!(centralizer_order(&part(&[1, 1])), Integer::from(2));
        assert_eq!(centralizer_order(&part(&[2, 2])), Integer::from(8));
    }

    #[test]
    fn centralizer_of_2_2_by_brute_force() {
        // (0 1)(2 3) in S_4
        let sigma = [1usize, 0, 3, 2];
        let mut count = 0;
        let mut perm = [0usize, 1, 2, 3];
        loop {
            let commutes = (0..4).all(|x| perm[sigma[x]] == sigma[perm[x]]);
            if commutes {
                count += 1;
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        assert_eq!(Integer::from(count), centralizer_order(&part(&[2, 2])));
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
        p.swap(i, j);
        p[i + 1..].reverse();
        true
    }

    #[test]
    fn bounded_tuple_examples() {
        let got: Vec<_> = bounded_tuples(&part(&[1, 2])).collect();
        assert_eq!(got, vec![part(&[1, 1]), part(&[1, 2])]);
        assert_eq!(bounded_tuples(&part(&[1])).collect::<Vec<_>>(), vec![part(&[1])]);
        assert_eq!(bounded_tuples(&part(&[2, 2])).count(), 4);
        assert_eq!(bounded_tuples(&Partition::empty()).count(), 0);
    }

    #[test]
    fn ordered_set_partition_examples() {
        let got: Vec<_> = ordered_set_partitions(&[1], 2).collect();
        assert_eq!(got, vec![vec![vec![1], vec![]], vec![vec![], vec![1]]]);
        let empty: Vec<_> = ordered_set_partitions(&[], 3).collect();
        assert_eq!(empty, vec![vec![Vec::<usize>::new(), vec![], vec![]]]);
        assert_eq!(ordered_set_partitions(&[1, 2], 2).count(), 4);
    }

    #[test]
    fn partition_parsing() {
        assert_eq!("2,3".parse::<Partition>().unwrap(), part(&[2, 3]));
        assert_eq!("(1, 4)".parse::<Partition>().unwrap(), part(&[1, 4]));
        assert!("2,0".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(part(&[2, 3]).to_string(), "(2,3)");
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_of(3), vec![part(&[3]), part(&[2, 1]), part(&[1, 1, 1])]);
        assert!(partitions_of(0).is_empty());
    }

    #[test]
    fn weak_compositions_count() {
        // C(total + slots - 1, slots - 1)
        assert_eq!(weak_compositions(3, 3).len(), 10);
        assert_eq!(weak_compositions(0, 2), vec![vec![0, 0]]);
        assert_eq!(weak_compositions(0, 0), vec![Vec::<usize>::new()]);
        assert!(weak_compositions(1, 0).is_empty());
    }

    proptest! {
        #[test]
        fn rational_sum_matches_cross_multiplication(
            a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50,
        ) {
            let x = Rational::new(a.into(), b.into());
            let y = Rational::new(c.into(), d.into());
            let sum = &x + &y;
            // independent integer route: (ad + cb) / bd
            let num = a * d + c * b;
            let den = b * d;
            prop_assert_eq!(sum.numer() * den, sum.denom() * num);
            prop_assert!(sum.denom() > &Integer::zero());
            prop_assert!(num::Integer::gcd(sum.numer(), sum.denom()).is_one());
            let prod = &x * &y;
            prop_assert_eq!(prod.numer() * den, prod.denom() * (a * c));
            if c != 0 {
                let quot = &x / &y;
                prop_assert_eq!(quot.numer() * (b * c), quot.denom() * (a * d));
            }
            let diff = &x - &y;
            prop_assert_eq!(diff.numer() * den, diff.denom() * (a * d - c * b));
        }

        #[test]
        fn multinomial_times_factorials_is_factorial(parts in prop::collection::vec(0i64..5, 0..5)) {
            let n: i64 = parts.iter().sum();
            let lhs = parts.iter().fold(multinomial(n, &parts), |acc, &p| acc * factorial(p as u64));
            prop_assert_eq!(lhs, factorial(n as u64));
        }

        #[test]
        fn ordered_set_partition_count(k in 0usize..6, n in 1usize..4) {
            let ground: Vec<usize> = (0..k).collect();
            let mut seen = std::collections::HashSet::new();
            for blocks in ordered_set_partitions(&ground, n) {
                let mut union: Vec<usize> = blocks.iter().flatten().copied().collect();
                union.sort_unstable();
                prop_assert_eq!(&union, &ground);
                prop_assert!(seen.insert(blocks));
            }
            prop_assert_eq!(seen.len(), n.pow(k as u32));
        }
    }
}
