//! Permutations of `{0, .., d-1}` and monodromy tuples
//! `(sigma1, tau_1, .., tau_m, sigma2)`.
//!
//! Points are 0-based internally; `Display` prints 1-based cycle notation.

use std::fmt;

use crate::combinatorics::Partition;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Precondition(format!(
                    "{images:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree || std::mem::replace(&mut used[x - 1], true) {
                    return Err(Error::Precondition(format!("bad cycle {cycle:?}")));
                }
                images[x - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn transposition(degree: usize, t: Transposition) -> Self {
        let mut p = Permutation::identity(degree);
        p.images.swap(t.0, t.1);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles, each starting at its smallest point, ordered by that
    /// point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths sorted descending.
    pub fn cycle_type(&self) -> Partition {
        cycle_type_of(&self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return f.write_str("id");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Cycle type of an image array, sorted descending.
pub(crate) fn cycle_type_of(images: &[usize]) -> Partition {
    let mut seen = vec![false; images.len()];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = images[x];
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(lengths).expect("cycle lengths are positive")
}

/// `x -> a(b(x))`: `b` is applied first.
///
/// Panics on a degree mismatch.
pub fn compose(a: &Permutation, b: &Permutation) -> Permutation {
    assert_eq!(a.degree(), b.degree(), "compose: degree mismatch");
    Permutation {
        images: b.images.iter().map(|&x| a.images[x]).collect(),
    }
}

/// The permutation whose `i`-th cycle is the `i`-th consecutive block of
/// points: `(1..mu_1)(mu_1+1..mu_1+mu_2)...`.
pub fn canonical_permutation(mu: &Partition) -> Permutation {
    let mut images = Vec::with_capacity(mu.degree() as usize);
    let mut start = 0usize;
    for &part in mu.parts() {
        let len = part as usize;
        for i in 0..len {
            images.push(start + (i + 1) % len);
        }
        start += len;
    }
    Permutation { images }
}

/// A transposition `(a b)` with `a < b`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition(pub usize, pub usize);

impl Transposition {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "a transposition moves two distinct points");
        Transposition(a.min(b), a.max(b))
    }

    /// All transpositions of `S_d` in lexicographic order.
    pub fn all(degree: usize) -> Vec<Transposition> {
        let mut out = Vec::with_capacity(degree * degree.saturating_sub(1) / 2);
        for a in 0..degree {
            for b in a + 1..degree {
                out.push(Transposition(a, b));
            }
        }
        out
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.0 + 1, self.1 + 1)
    }
}

/// `(sigma1, tau_1, .., tau_m, sigma2)` with `sigma2 tau_m ... tau_1 sigma1 = id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationTuple {
    pub sigma1: Permutation,
    pub transpositions: Vec<Transposition>,
    pub sigma2: Permutation,
}

impl FactorizationTuple {
    /// Closes the tuple: `sigma2 = (tau_m ... tau_1 sigma1)^-1`.
    pub fn new(sigma1: Permutation, transpositions: Vec<Transposition>) -> Self {
        let d = sigma1.degree();
        let product = transpositions.iter().fold(sigma1.clone(), |acc, &t| {
            compose(&Permutation::transposition(d, t), &acc)
        });
        FactorizationTuple {
            sigma1,
            transpositions,
            sigma2: product.inverse(),
        }
    }

    pub fn degree(&self) -> usize {
        self.sigma1.degree()
    }

    /// Number of simple branch points.
    pub fn m(&self) -> usize {
        self.transpositions.len()
    }

    /// Re-evaluates `sigma2 tau_m ... tau_1 sigma1` from scratch.
    pub fn product_is_identity(&self) -> bool {
        let d = self.degree();
        let mut acc = self.sigma1.clone();
        for &t in &self.transpositions {
            acc = compose(&Permutation::transposition(d, t), &acc);
        }
        compose(&self.sigma2, &acc).is_identity()
    }

    /// Union-find over the cycles of `sigma1` and the transposition supports.
    pub fn is_transitive(&self) -> bool {
        let d = self.degree();
        if d == 0 {
            return false;
        }
        let mut uf = UnionFind::new(d);
        for x in 0..d {
            uf.union(x, self.sigma1.apply(x));
        }
        for t in &self.transpositions {
            uf.union(t.0, t.1);
        }
        uf.components() == 1
    }

    /// Every cycle of `sigma1` meets the supports of at least two distinct
    /// transpositions (`m > 1`); with `m = 1` only the single-vertex loop
    /// counts as pruned; with `m = 0` the answer is `m0_pruned`.
    pub fn is_pruned(&self, m0_pruned: bool) -> bool {
        match self.m() {
            0 => m0_pruned,
            1 => self.sigma1.cycles().len() == 1,
            _ => {
                let cycle_of = cycle_index(&self.sigma1);
                let cycles = self.sigma1.cycles().len();
                let mut touching = vec![0usize; cycles];
                for t in &self.transpositions {
                    let (ca, cb) = (cycle_of[t.0], cycle_of[t.1]);
                    touching[ca] += 1;
                    if cb != ca {
                        touching[cb] += 1;
                    }
                }
                touching.iter().all(|&n| n >= 2)
            }
        }
    }
}

/// `cycle_index(p)[x]` is the position of the cycle containing `x` in
/// `p.cycles()`.
pub fn cycle_index(p: &Permutation) -> Vec<usize> {
    let mut out = vec![0; p.degree()];
    for (i, cycle) in p.cycles().iter().enumerate() {
        for &x in cycle {
            out[x] = i;
        }
    }
    out
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
