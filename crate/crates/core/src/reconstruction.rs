//! Full double Hurwitz numbers rebuilt from modified pruned ones.
//!
//! Every branching graph prunes to a unique core of type `(g, mu_I, nu~)`;
//! the removed vertices hang off face `i` as a rooted forest whose roots are
//! the `nu~_i` boundary segments. The sum below counts those decorations.
//! Two evaluators are provided: one through the closed-form forest count by
//! degree sequence, one through explicit enumeration of the forests.

use num::{One, Zero};

use crate::combinatorics::{
    bounded_tuples, factorial, multinomial, ordered_set_partitions, subsets, weak_compositions, Integer, Partition,
    Rational,
};
use crate::error::{Error, Result};
use crate::forest::{count_forests_with_degrees, for_each_rooted_forest, DegreeSequence, DEFAULT_FOREST_BOUND};
use crate::hurwitz::HurwitzEngine;

/// How the per-face forest sums are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ForestSum {
    /// Sum over degree sequences of the closed-form forest count.
    DegreeSequences,
    /// Explicit forests weighted by `mu_v^(val(v) - 1)` per non-root vertex.
    Enumerated,
}

/// One `(nu~, I)` summand with a nonzero combinatorial coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionTerm {
    pub nu_tilde: Partition,
    /// Indices into `mu` kept by the pruned core.
    pub core: Vec<usize>,
    pub phat: Rational,
    pub coefficient: Integer,
}

impl ReconstructionTerm {
    pub fn value(&self) -> Rational {
        &self.phat * Rational::from_integer(self.coefficient.clone())
    }
}

/// Reconstruction through degree sequences. `phat(g, mu', nu')` must return
/// the modified pruned number.
pub fn reconstruct_double_hurwitz<F>(genus: i64, mu: &Partition, nu: &Partition, phat: F) -> Result<Rational>
where
    F: FnMut(i64, &Partition, &Partition) -> Result<Rational>,
{
    total(&reconstruction_terms(genus, mu, nu, ForestSum::DegreeSequences, phat)?)
}

/// Reconstruction through explicit rooted forests.
pub fn reconstruct_via_forests<F>(genus: i64, mu: &Partition, nu: &Partition, phat: F) -> Result<Rational>
where
    F: FnMut(i64, &Partition, &Partition) -> Result<Rational>,
{
    total(&reconstruction_terms(genus, mu, nu, ForestSum::Enumerated, phat)?)
}

fn total(terms: &[ReconstructionTerm]) -> Result<Rational> {
    Ok(terms.iter().fold(Rational::zero(), |acc, t| acc + t.value()))
}

/// Every summand with a nonzero coefficient, in the order `nu~`
/// lexicographic, then `I` by bitmask. `phat` is only queried for those.
pub fn reconstruction_terms<F>(
    genus: i64,
    mu: &Partition,
    nu: &Partition,
    method: ForestSum,
    mut phat: F,
) -> Result<Vec<ReconstructionTerm>>
where
    F: FnMut(i64, &Partition, &Partition) -> Result<Rational>,
{
    if mu.degree() != nu.degree() {
        return Err(Error::DegreeMismatch {
            mu: mu.degree(),
            nu: nu.degree(),
        });
    }
    if nu.is_empty() || mu.is_empty() {
        return Err(Error::ZeroDegree);
    }
    let m = 2 * genus - 2 + mu.len() as i64 + nu.len() as i64;
    let n = nu.len();
    let mut terms = Vec::new();
    if m < 0 {
        return Ok(terms);
    }
    for nu_tilde in bounded_tuples(nu) {
        let missing: Vec<u64> = nu
            .parts()
            .iter()
            .zip(nu_tilde.parts())
            .map(|(&a, &b)| u64::from(a - b))
            .collect();
        for core in subsets(mu.len()) {
            let mu_core = mu.select(&core);
            if mu_core.degree() != nu_tilde.degree() {
                continue;
            }
            let rest: Vec<usize> = (0..mu.len()).filter(|k| !core.contains(k)).collect();
            let core_m = 2 * genus - 2 + core.len() as i64 + n as i64;
            let mut coefficient = Integer::zero();
            for blocks in ordered_set_partitions(&rest, n) {
                if blocks
                    .iter()
                    .zip(&missing)
                    .any(|(b, &want)| mu.select(b).degree() != want)
                {
                    continue;
                }
                let mut parts = vec![core_m];
                parts.extend(blocks.iter().map(|b| b.len() as i64));
                let mut c = multinomial(m, &parts);
                if c.is_zero() {
                    continue;
                }
                for (block, &roots) in blocks.iter().zip(nu_tilde.parts()) {
                    c *= factorial(block.len() as u64);
                    let weights: Vec<u32> = block.iter().map(|&k| mu.parts()[k]).collect();
                    c *= match method {
                        ForestSum::DegreeSequences => face_sum_by_degrees(roots as usize, &weights)?,
                        ForestSum::Enumerated => face_sum_by_forests(roots as usize, &weights)?,
                    };
                }
                coefficient += c;
            }
            if coefficient.is_zero() {
                continue;
            }
            let value = phat(genus, &mu_core, &nu_tilde)?;
            terms.push(ReconstructionTerm {
                nu_tilde: nu_tilde.clone(),
                core,
                phat: value,
                coefficient,
            });
        }
    }
    Ok(terms)
}

/// `sum_Delta F(Delta, roots) prod_k w_k^Delta_k` with the roots occupying the
/// first `roots` positions and one non-root position per weight.
pub fn face_sum_by_degrees(roots: usize, weights: &[u32]) -> Result<Integer> {
    let n = roots + weights.len();
    let root_set: Vec<usize> = (0..roots).collect();
    let mut sum = Integer::zero();
    for delta in weak_compositions(weights.len(), n) {
        let count = count_forests_with_degrees(&DegreeSequence(delta.clone()), &root_set)?;
        if count.is_zero() {
            continue;
        }
        let power = weights
            .iter()
            .zip(&delta[roots..])
            .fold(Integer::one(), |acc, (&w, &e)| acc * num::pow(Integer::from(w), e));
        sum += count * power;
    }
    Ok(sum)
}

/// Same quantity as [`face_sum_by_degrees`], summed over explicit forests.
pub fn face_sum_by_forests(roots: usize, weights: &[u32]) -> Result<Integer> {
    let n = roots + weights.len();
    let root_set: Vec<usize> = (0..roots).collect();
    let mut sum = Integer::zero();
    for_each_rooted_forest(n, &root_set, DEFAULT_FOREST_BOUND, |forest| {
        let weight = (roots..n).fold(Integer::one(), |acc, v| {
            acc * num::pow(Integer::from(weights[v - roots]), forest.valency(v) - 1)
        });
        sum += weight;
    })?;
    Ok(sum)
}

/// Both evaluators against enumeration of the full number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub genus: i64,
    pub mu: Partition,
    pub nu: Partition,
    pub enumerated: Rational,
    pub by_degrees: Rational,
    pub by_forests: Rational,
    pub matches: bool,
    pub terms: Vec<ReconstructionTerm>,
}

pub fn verify_reconstruction(
    engine: &HurwitzEngine,
    genus: i64,
    mu: &Partition,
    nu: &Partition,
) -> Result<ReconstructionReport> {
    let phat = |g: i64, a: &Partition, b: &Partition| engine.modified_pruned_or_zero(g, a, b);
    let terms = reconstruction_terms(genus, mu, nu, ForestSum::DegreeSequences, phat)?;
    let by_degrees = total(&terms)?;
    let by_forests = reconstruct_via_forests(genus, mu, nu, phat)?;
    let enumerated = engine.double_hurwitz(genus, mu, nu)?;
    Ok(ReconstructionReport {
        genus,
        mu: mu.clone(),
        nu: nu.clone(),
        matches: enumerated == by_degrees && by_degrees == by_forests,
        enumerated,
        by_degrees,
        by_forests,
        terms,
    })
}
