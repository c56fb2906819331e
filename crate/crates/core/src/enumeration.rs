//! Exhaustive enumeration of transposition sequences.
//!
//! `sigma1` is fixed to [`canonical_permutation`] of `mu`; the search runs
//! depth-first over `(tau_1, .., tau_m)` keeping the running product
//! `tau_k ... tau_1 sigma1` and its inverse, so each step is O(1) plus a cycle
//! walk. Branches are cut when the remaining transpositions can no longer
//! reach the target cycle count, connect all orbits, or (pruned mode) give
//! every cycle of `sigma1` two incident transpositions.
//!
//! Work is sharded on `tau_1`; shard totals are exact integers, so the result
//! does not depend on the number of threads.

use std::sync::Arc;

use num::{BigInt, Integer as _, ToPrimitive};
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::combinatorics::{Integer, Partition};
use crate::error::{Error, Result};
use crate::permutation::{canonical_permutation, cycle_index, cycle_type_of, Permutation, Transposition};

/// Worker configuration for the sharded search.
#[derive(Clone, Default)]
pub struct Parallelism {
    pool: Option<Arc<ThreadPool>>,
}

impl Parallelism {
    pub fn sequential() -> Self {
        Parallelism { pool: None }
    }

    /// `threads == 0` means one worker per available core.
    pub fn with_threads(threads: usize) -> Result<Self> {
        let threads = if threads == 0 {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        } else {
            threads
        };
        if threads == 1 {
            return Ok(Parallelism::sequential());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        Ok(Parallelism {
            pool: Some(Arc::new(pool)),
        })
    }

    pub fn threads(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }
}

impl std::fmt::Debug for Parallelism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Parallelism")
            .field("threads", &self.threads())
            .finish()
    }
}

/// `m = 2g - 2 + l(mu) + l(nu)`.
pub fn branch_point_count(genus: i64, mu: &Partition, nu: &Partition) -> i64 {
    2 * genus - 2 + mu.len() as i64 + nu.len() as i64
}

/// A qualifying sequence as seen by a leaf visitor.
pub struct Leaf<'a> {
    pub transpositions: &'a [Transposition],
    /// Images of `tau_m ... tau_1 sigma1`, i.e. of `sigma2^-1`.
    pub product: &'a [usize],
}

/// The set of sequences `(tau_1, .., tau_m)` such that, with `sigma1` fixed,
/// `sigma2 = (tau_m ... tau_1 sigma1)^-1` has cycle type `nu`, the tuple is
/// transitive, and (optionally) pruned.
#[derive(Clone, Debug)]
pub struct FactorizationSearch {
    sigma1: Permutation,
    cycle_of: Vec<usize>,
    cycle_count: usize,
    target: Partition,
    m: usize,
    pruned: bool,
    m0_pruned: bool,
    alphabet: Vec<Transposition>,
}

impl FactorizationSearch {
    /// Returns `None` when `m < 0` (the set is empty).
    pub fn new(
        genus: i64,
        mu: &Partition,
        nu: &Partition,
        pruned: bool,
        m0_pruned: bool,
    ) -> Result<Option<Self>> {
        check_degrees(mu, nu)?;
        let m = branch_point_count(genus, mu, nu);
        if m < 0 {
            return Ok(None);
        }
        let sigma1 = canonical_permutation(mu);
        let cycle_of = cycle_index(&sigma1);
        let d = sigma1.degree();
        Ok(Some(FactorizationSearch {
            cycle_count: mu.len(),
            cycle_of,
            sigma1,
            target: nu.sorted(),
            m: m as usize,
            pruned,
            m0_pruned,
            alphabet: Transposition::all(d),
        }))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn sigma1(&self) -> &Permutation {
        &self.sigma1
    }

    /// `(d(d-1)/2)^m`, the size of the unpruned search space.
    pub fn naive_size(&self) -> f64 {
        (self.alphabet.len() as f64).powi(self.m as i32)
    }

    /// Sum of `weight(leaf)` over all qualifying sequences.
    pub fn sum_over_leaves<W>(&self, par: &Parallelism, weight: W) -> u128
    where
        W: Fn(&Leaf<'_>) -> u64 + Sync,
    {
        if self.m == 0 {
            let mut total = 0u128;
            self.run(None, &mut |leaf| total += u128::from(weight(leaf)));
            return total;
        }
        let shard = |first: usize| {
            let mut total = 0u128;
            self.run(Some(first), &mut |leaf| total += u128::from(weight(leaf)));
            total
        };
        match &par.pool {
            None => (0..self.alphabet.len()).map(shard).sum(),
            Some(pool) => pool.install(|| {
                (0..self.alphabet.len())
                    .into_par_iter()
                    .map(shard)
                    .collect::<Vec<_>>()
                    .into_iter()
                    .sum()
            }),
        }
    }

    pub fn count(&self, par: &Parallelism) -> u128 {
        self.sum_over_leaves(par, |_| 1)
    }

    /// Visits every qualifying sequence sequentially, in lexicographic order.
    pub fn for_each(&self, mut visit: impl FnMut(&Leaf<'_>)) {
        if self.m == 0 {
            self.run(None, &mut visit);
        } else {
            for first in 0..self.alphabet.len() {
                self.run(Some(first), &mut visit);
            }
        }
    }

    fn run(&self, first: Option<usize>, visit: &mut dyn FnMut(&Leaf<'_>)) {
        let d = self.sigma1.degree();
        let mut state = State {
            product: self.sigma1.images().to_vec(),
            inverse: self.sigma1.inverse().images().to_vec(),
            cycles: self.cycle_count,
            components: vec![self.cycle_count; self.m + 1],
            labels: vec![(0..self.cycle_count).collect(); self.m + 1],
            touching: vec![0; self.cycle_count],
            path: Vec::with_capacity(self.m),
        };
        debug_assert_eq!(state.product.len(), d);
        match first {
            None => self.descend(&mut state, visit),
            Some(i) => {
                let t = self.alphabet[i];
                if self.push(&mut state, t) {
                    self.descend(&mut state, visit);
                }
                self.pop(&mut state);
            }
        }
    }

    fn descend(&self, state: &mut State, visit: &mut dyn FnMut(&Leaf<'_>)) {
        if state.path.len() == self.m {
            if self.accepts(state) {
                visit(&Leaf {
                    transpositions: &state.path,
                    product: &state.product,
                });
            }
            return;
        }
        for &t in &self.alphabet {
            if self.push(state, t) {
                self.descend(state, visit);
            }
            self.pop(state);
        }
    }

    /// Applies `t` on the left; returns false when the branch is hopeless.
    fn push(&self, state: &mut State, t: Transposition) -> bool {
        let Transposition(a, b) = t;
        let same_cycle = state.same_cycle(a, b);
        if same_cycle {
            state.cycles += 1;
        } else {
            state.cycles -= 1;
        }
        let (xa, xb) = (state.inverse[a], state.inverse[b]);
        state.product[xa] = b;
        state.product[xb] = a;
        state.inverse[a] = xb;
        state.inverse[b] = xa;

        let depth = state.path.len();
        let (ca, cb) = (self.cycle_of[a], self.cycle_of[b]);
        let (prev, next) = state.labels.split_at_mut(depth + 1);
        next[0].copy_from_slice(&prev[depth]);
        let (la, lb) = (next[0][ca], next[0][cb]);
        state.components[depth + 1] = state.components[depth];
        if la != lb {
            for l in next[0].iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
            state.components[depth + 1] -= 1;
        }
        state.touching[ca] += 1;
        if cb != ca {
            state.touching[cb] += 1;
        }
        state.path.push(t);

        let remaining = self.m - state.path.len();
        if state.cycles.abs_diff(self.target.len()) > remaining {
            return false;
        }
        if state.components[depth + 1] - 1 > remaining {
            return false;
        }
        if self.pruned && self.m > 1 {
            let deficit: usize = state.touching.iter().map(|&n| 2usize.saturating_sub(n)).sum();
            if deficit > 2 * remaining {
                return false;
            }
        }
        true
    }

    fn pop(&self, state: &mut State) {
        let t = state.path.pop().expect("pop on empty path");
        let Transposition(a, b) = t;
        // left multiplication by a transposition is an involution
        let (xa, xb) = (state.inverse[a], state.inverse[b]);
        state.product[xa] = b;
        state.product[xb] = a;
        state.inverse[a] = xb;
        state.inverse[b] = xa;
        // undo the cycle count change made in `push`
        if state.same_cycle(a, b) {
            state.cycles -= 1;
        } else {
            state.cycles += 1;
        }
        let (ca, cb) = (self.cycle_of[a], self.cycle_of[b]);
        state.touching[ca] -= 1;
        if cb != ca {
            state.touching[cb] -= 1;
        }
    }

    fn accepts(&self, state: &State) -> bool {
        if state.cycles != self.target.len() || state.components[self.m] != 1 {
            return false;
        }
        if cycle_type_of(&state.product) != self.target {
            return false;
        }
        if !self.pruned {
            return true;
        }
        match self.m {
            0 => self.m0_pruned,
            1 => self.cycle_count == 1,
            _ => state.touching.iter().all(|&n| n >= 2),
        }
    }
}

struct State {
    product: Vec<usize>,
    inverse: Vec<usize>,
    cycles: usize,
    components: Vec<usize>,
    /// Per depth: connected-component label of each cycle of `sigma1`.
    labels: Vec<Vec<usize>>,
    touching: Vec<usize>,
    path: Vec<Transposition>,
}

impl State {
    fn same_cycle(&self, a: usize, b: usize) -> bool {
        let mut x = self.product[a];
        while x != a {
            if x == b {
                return true;
            }
            x = self.product[x];
        }
        false
    }
}

fn check_degrees(mu: &Partition, nu: &Partition) -> Result<()> {
    if mu.degree() != nu.degree() {
        return Err(Error::DegreeMismatch {
            mu: mu.degree(),
            nu: nu.degree(),
        });
    }
    if mu.degree() == 0 {
        return Err(Error::ZeroDegree);
    }
    Ok(())
}

/// Number `N` of sequences `(tau_1, .., tau_m)` with `sigma1` fixed to the
/// canonical permutation of `mu`, `C(sigma2) = nu`, transitive, and pruned
/// when asked. Zero when `m < 0`.
pub fn count_factorizations(
    genus: i64,
    mu: &Partition,
    nu: &Partition,
    pruned: bool,
    m0_pruned: bool,
    par: &Parallelism,
) -> Result<Integer> {
    Ok(match FactorizationSearch::new(genus, mu, nu, pruned, m0_pruned)? {
        None => Integer::from(0),
        Some(search) => Integer::from(search.count(par)),
    })
}

/// Number of simultaneous-conjugation classes of qualifying tuples with
/// labeled cycles, by Burnside's lemma over the centralizer of `sigma1`.
///
/// A centralizer element that permutes the cycles of `sigma1` fixes no cycle
/// labeling, so only the rotations inside each cycle contribute; such a
/// rotation fixes a labeled tuple iff it commutes with every transposition
/// and maps each cycle of `sigma2` to itself.
pub fn count_isomorphism_classes(
    genus: i64,
    mu: &Partition,
    nu: &Partition,
    pruned: bool,
    m0_pruned: bool,
    par: &Parallelism,
) -> Result<Integer> {
    let Some(search) = FactorizationSearch::new(genus, mu, nu, pruned, m0_pruned)? else {
        return Ok(Integer::from(0));
    };
    let rotations = cycle_rotations(mu);
    let fixed = search.sum_over_leaves(par, |leaf| {
        let face = face_index(leaf.product);
        rotations
            .iter()
            .filter(|z| {
                leaf.transpositions.iter().all(|t| {
                    let (za, zb) = (z[t.0], z[t.1]);
                    (za == t.0 && zb == t.1) || (za == t.1 && zb == t.0)
                })
            })
            .filter(|z| (0..z.len()).all(|x| face[z[x]] == face[x]))
            .count() as u64
    });
    let numerator = BigInt::from(fixed) * crate::combinatorics::automorphism_factor(nu);
    let denominator: BigInt = mu.parts().iter().map(|&p| BigInt::from(p)).product();
    let (classes, rest) = numerator.div_rem(&denominator);
    debug_assert_eq!(rest.to_i64(), Some(0), "Burnside count must be integral");
    Ok(classes)
}

/// Every permutation rotating each canonical cycle of `mu` independently.
fn cycle_rotations(mu: &Partition) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut start = 0usize;
    for &part in mu.parts() {
        let len = part as usize;
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..len).map(move |shift| {
                    let mut z = prefix.clone();
                    z.extend((0..len).map(|i| start + (i + shift) % len));
                    z
                })
            })
            .collect();
        start += len;
    }
    out
}

fn face_index(images: &[usize]) -> Vec<usize> {
    let mut out = vec![usize::MAX; images.len()];
    let mut next = 0;
    for start in 0..images.len() {
        if out[start] != usize::MAX {
            continue;
        }
        let mut x = start;
        while out[x] == usize::MAX {
            out[x] = next;
            x = images[x];
        }
        next += 1;
    }
    out
}
