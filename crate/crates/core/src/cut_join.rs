//! Three-case cut-and-join recursion for pruned double Hurwitz numbers.
//!
//! Removing the edge with the largest label from a pruned branching graph
//! and re-pruning either lowers the genus (one face splits into two), splits
//! the graph into two pieces, or merges two faces. The right-hand side sums
//! the modified pruned numbers of the results with the matching
//! combinatorial weights; [`verify_recursion`] compares it with direct
//! enumeration of the left-hand side.

use num::{One, Zero};

use crate::combinatorics::{factorial, falling_factorial, ordered_set_partitions, subsets, Partition, Rational};
use crate::conventions::StabilityReading;
use crate::error::{Error, Result};
use crate::hurwitz::HurwitzEngine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RecursionCase {
    GenusDrop,
    Split,
    Join,
}

impl RecursionCase {
    pub const ALL: [RecursionCase; 3] = [RecursionCase::GenusDrop, RecursionCase::Split, RecursionCase::Join];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RecursionCase::GenusDrop => "GENUS_DROP",
            RecursionCase::Split => "SPLIT",
            RecursionCase::Join => "JOIN",
        }
    }
}

/// One nonzero summand. Index sets refer to positions in `mu` and `nu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecursionTerm {
    GenusDrop {
        face: usize,
        core: Vec<usize>,
        alpha: u32,
        beta: u32,
        value: Rational,
    },
    Split {
        face: usize,
        genera: (i64, i64),
        cores: (Vec<usize>, Vec<usize>),
        faces: (Vec<usize>, Vec<usize>),
        alpha: u32,
        beta: u32,
        halved: bool,
        value: Rational,
    },
    Join {
        faces: (usize, usize),
        core: Vec<usize>,
        alpha: u32,
        value: Rational,
    },
}

impl RecursionTerm {
    pub fn case(&self) -> RecursionCase {
        match self {
            RecursionTerm::GenusDrop { .. } => RecursionCase::GenusDrop,
            RecursionTerm::Split { .. } => RecursionCase::Split,
            RecursionTerm::Join { .. } => RecursionCase::Join,
        }
    }

    pub fn value(&self) -> &Rational {
        match self {
            RecursionTerm::GenusDrop { value, .. }
            | RecursionTerm::Split { value, .. }
            | RecursionTerm::Join { value, .. } => value,
        }
    }
}

/// Right-hand side with its per-term breakdown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionRhs {
    pub total: Rational,
    /// Indexed by [`RecursionCase`] order.
    pub per_case: [Rational; 3],
    pub terms: Vec<RecursionTerm>,
}

/// Outcome of comparing both sides; never asserts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionReport {
    pub genus: i64,
    pub mu: Partition,
    pub nu: Partition,
    pub stability: StabilityReading,
    pub lhs: Rational,
    pub rhs: Rational,
    pub matches: bool,
    pub per_case: [Rational; 3],
    pub terms: Vec<RecursionTerm>,
}

/// Evaluates the right-hand side. `phat(g, mu', nu')` is only called with
/// non-negative genus and non-empty partitions of equal degree; every other
/// factor is 0.
pub fn cut_and_join_rhs<F>(
    genus: i64,
    mu: &Partition,
    nu: &Partition,
    stability: StabilityReading,
    mut phat: F,
) -> Result<RecursionRhs>
where
    F: FnMut(i64, &Partition, &Partition) -> Result<Rational>,
{
    let m = check_preconditions(genus, mu, nu)?;
    let mut factor = |g: i64, a: &Partition, b: &Partition| -> Result<Rational> {
        if g < 0 || a.is_empty() || b.is_empty() || a.degree() != b.degree() {
            return Ok(Rational::zero());
        }
        phat(g, a, b)
    };
    let n = nu.len();
    let all_mu: Vec<usize> = (0..mu.len()).collect();
    let mut terms = Vec::new();

    // removed vertices enter through the falling factorial, their own label
    // orderings and their perimeters
    let attach = |removed: &[usize], orderings: Rational| -> Rational {
        let p = removed.len() as i64;
        let product: u64 = removed.iter().map(|&k| u64::from(mu.parts()[k])).product();
        orderings * Rational::from_integer(falling_factorial(m - 1, p) * product)
    };

    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&s| s != i).collect();
        let nu_i = u64::from(nu.parts()[i]);

        for core in subsets(mu.len()) {
            let removed = complement(&all_mu, &core);
            let Some(room) = nu_i.checked_sub(mu.select(&removed).degree()) else {
                continue;
            };
            let weight = attach(&removed, Rational::from_integer(factorial(removed.len() as u64 + 1)));
            if weight.is_zero() {
                continue;
            }
            for alpha in 1..room {
                let beta = room - alpha;
                let target = nu.select(&others).with_appended(&[alpha as u32, beta as u32]);
                let p = factor(genus - 1, &mu.select(&core), &target)?;
                let value = p * Rational::new((alpha * beta).into(), 2.into()) * &weight;
                if !value.is_zero() {
                    terms.push(RecursionTerm::GenusDrop {
                        face: i,
                        core: core.clone(),
                        alpha: alpha as u32,
                        beta: beta as u32,
                        value,
                    });
                }
            }
        }

        for g1 in 0..=genus / 2 {
            let g2 = genus - g1;
            for face_split in ordered_set_partitions(&others, 2) {
                let (j1, j2) = (&face_split[0], &face_split[1]);
                if stability.excludes(g1, j1.len()) || stability.excludes(g2, j2.len()) {
                    continue;
                }
                for vertex_split in ordered_set_partitions(&all_mu, 3) {
                    let (c1, c2, removed) = (&vertex_split[0], &vertex_split[1], &vertex_split[2]);
                    let Some(room) = nu_i.checked_sub(mu.select(removed).degree()) else {
                        continue;
                    };
                    let weight = attach(removed, Rational::from_integer(factorial(removed.len() as u64 + 1)));
                    if weight.is_zero() {
                        continue;
                    }
                    let (mu1, mu2) = (mu.select(c1), mu.select(c2));
                    for alpha in 1..room {
                        let beta = room - alpha;
                        let nu1 = nu.select(j1).with_appended(&[alpha as u32]);
                        let nu2 = nu.select(j2).with_appended(&[beta as u32]);
                        if mu1.degree() != nu1.degree() || mu2.degree() != nu2.degree() {
                            continue;
                        }
                        let p = factor(g1, &mu1, &nu1)? * factor(g2, &mu2, &nu2)?;
                        if p.is_zero() {
                            continue;
                        }
                        let halved = (g1, c1.len(), j1.len(), alpha) == (g2, c2.len(), j2.len(), beta);
                        let delta = if halved {
                            Rational::new(1.into(), 2.into())
                        } else {
                            Rational::one()
                        };
                        let value = p * Rational::from_integer((alpha * beta).into()) * &weight * delta;
                        terms.push(RecursionTerm::Split {
                            face: i,
                            genera: (g1, g2),
                            cores: (c1.clone(), c2.clone()),
                            faces: (j1.clone(), j2.clone()),
                            alpha: alpha as u32,
                            beta: beta as u32,
                            halved,
                            value,
                        });
                    }
                }
            }
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            let rest: Vec<usize> = (0..n).filter(|&s| s != i && s != j).collect();
            let merged = u64::from(nu.parts()[i]) + u64::from(nu.parts()[j]);
            for core in subsets(mu.len()) {
                let removed = complement(&all_mu, &core);
                let Some(alpha) = merged.checked_sub(mu.select(&removed).degree()) else {
                    continue;
                };
                if alpha == 0 {
                    continue;
                }
                let p = removed.len() as u64;
                let weight = attach(&removed, Rational::from_integer(factorial(p) * (p + 1)));
                if weight.is_zero() {
                    continue;
                }
                let target = nu.select(&rest).with_appended(&[alpha as u32]);
                let value = factor(genus, &mu.select(&core), &target)? * Rational::from_integer(alpha.into()) * weight;
                if !value.is_zero() {
                    terms.push(RecursionTerm::Join {
                        faces: (i, j),
                        core,
                        alpha: alpha as u32,
                        value,
                    });
                }
            }
        }
    }

    let mut per_case = [Rational::zero(), Rational::zero(), Rational::zero()];
    for t in &terms {
        per_case[t.case().index()] += t.value();
    }
    let total = per_case.iter().fold(Rational::zero(), |acc, v| acc + v);
    Ok(RecursionRhs { total, per_case, terms })
}

/// Compares enumeration of the pruned number with the recursion fed by
/// enumerated modified pruned numbers, under the engine's stability reading.
pub fn verify_recursion(engine: &HurwitzEngine, genus: i64, mu: &Partition, nu: &Partition) -> Result<RecursionReport> {
    let stability = engine.conventions().stability;
    let rhs = cut_and_join_rhs(genus, mu, nu, stability, |g, a, b| engine.modified_pruned_or_zero(g, a, b))?;
    let lhs = engine.pruned_double_hurwitz(genus, mu, nu)?;
    Ok(RecursionReport {
        genus,
        mu: mu.clone(),
        nu: nu.clone(),
        stability,
        matches: lhs == rhs.total,
        lhs,
        rhs: rhs.total,
        per_case: rhs.per_case,
        terms: rhs.terms,
    })
}

fn check_preconditions(genus: i64, mu: &Partition, nu: &Partition) -> Result<i64> {
    if mu.degree() != nu.degree() {
        return Err(Error::DegreeMismatch {
            mu: mu.degree(),
            nu: nu.degree(),
        });
    }
    if nu.len() < 3 {
        return Err(Error::Precondition(format!("recursion needs at least three faces, got nu = {nu}")));
    }
    let m = 2 * genus - 2 + mu.len() as i64 + nu.len() as i64;
    if genus < 0 || m <= 0 {
        return Err(Error::Precondition(format!("need g >= 0 and m > 0, got g = {genus}, m = {m}")));
    }
    Ok(m)
}

fn complement(all: &[usize], subset: &[usize]) -> Vec<usize> {
    all.iter().copied().filter(|k| !subset.contains(k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::multinomial;
    use crate::conventions::Conventions;
    use crate::hurwitz::rational;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn engine(stability: StabilityReading) -> HurwitzEngine {
        HurwitzEngine::new(Conventions {
            stability,
            ..Conventions::default()
        })
    }

    #[test]
    fn preconditions() {
        let e = engine(StabilityReading::Literal);
        assert!(verify_recursion(&e, 0, &part(&[2]), &part(&[1, 1])).is_err());
        assert!(verify_recursion(&e, 0, &part(&[2, 1]), &part(&[1, 1, 1, 1])).is_err());
    }

    #[test]
    fn single_vertex_three_faces() {
        let e = engine(StabilityReading::Literal);
        let report = verify_recursion(&e, 0, &part(&[3]), &part(&[1, 1, 1])).unwrap();
        assert_eq!(report.lhs, rational(6, 1));
        assert_eq!(report.rhs, report.per_case.iter().fold(Rational::zero(), |a, b| a + b));
    }

    #[test]
    fn small_instances_match_enumeration() {
        let e = engine(StabilityReading::Literal);
        for (g, mu) in [(0, vec![1, 1, 1]), (0, vec![3]), (0, vec![2, 1]), (1, vec![2, 1])] {
            let report = verify_recursion(&e, g, &part(&mu), &part(&[1, 1, 1])).unwrap();
            assert!(report.matches, "{report:?}");
        }
    }

    #[test]
    fn face_count_reading_drops_unstable_split_terms() {
        let (mu, nu) = (part(&[2, 2]), part(&[2, 1, 1]));
        let literal = verify_recursion(&engine(StabilityReading::Literal), 0, &mu, &nu).unwrap();
        let face_count = verify_recursion(&engine(StabilityReading::FaceCount), 0, &mu, &nu).unwrap();
        assert!(literal.terms.iter().any(|t| t.case() == RecursionCase::Split));
        assert!(face_count.terms.iter().all(|t| t.case() != RecursionCase::Split));
        assert_eq!(literal.lhs, face_count.lhs);
    }

    #[test]
    fn per_case_totals_sum_and_terms_are_positive() {
        let e = engine(StabilityReading::Literal);
        for (g, mu, nu) in [(0, vec![1, 1, 1], vec![1, 1, 1]), (1, vec![2, 1], vec![1, 1, 1]), (0, vec![2, 2], vec![2, 1, 1])] {
            let rhs = cut_and_join_rhs(g, &part(&mu), &part(&nu), StabilityReading::Literal, |a, b, c| {
                e.modified_pruned_or_zero(a, b, c)
            })
            .unwrap();
            let sum = rhs.terms.iter().fold(Rational::zero(), |acc, t| acc + t.value());
            assert_eq!(sum, rhs.total);
            assert!(rhs.terms.iter().all(|t| *t.value() > Rational::zero()));
        }
    }

    #[test]
    fn falling_factorial_matches_multinomial_form() {
        // (m-1)!/(m-1-p)! = multinomial(m-1; p, m-1-p) * p!
        for m in 1..8i64 {
            for p in 0..m {
                assert_eq!(
                    falling_factorial(m - 1, p),
                    multinomial(m - 1, &[p, m - 1 - p]) * factorial(p as u64)
                );
            }
            assert!(falling_factorial(m - 1, m).is_zero());
        }
    }

    #[test]
    fn split_case_counts_each_unordered_configuration_once() {
        // summing over all (g1, g2) and halving, with the diagonal g1 = g2
        // added back once, reproduces the g1 <= g2 sum
        let e = engine(StabilityReading::Literal);
        let phat = |g: i64, a: &Partition, b: &Partition| e.modified_pruned_or_zero(g, a, b);
        for (g, mu, nu) in [(2, vec![2, 1], vec![1, 1, 1]), (1, vec![2, 2], vec![2, 1, 1]), (1, vec![1, 1, 1], vec![1, 1, 1])] {
            let (mu, nu) = (part(&mu), part(&nu));
            let rhs = cut_and_join_rhs(g, &mu, &nu, StabilityReading::Literal, phat).unwrap();
            let split = &rhs.per_case[RecursionCase::Split.index()];
            let (full, diagonal) = full_range_split(g, &mu, &nu, &e);
            assert_eq!(*split, (full + diagonal) / Rational::from_integer(2.into()));
        }
    }

    // redundant split-case sum over every ordered genus pair
    fn full_range_split(genus: i64, mu: &Partition, nu: &Partition, e: &HurwitzEngine) -> (Rational, Rational) {
        let m = 2 * genus - 2 + (mu.len() + nu.len()) as i64;
        let all_mu: Vec<usize> = (0..mu.len()).collect();
        let (mut full, mut diagonal) = (Rational::zero(), Rational::zero());
        for i in 0..nu.len() {
            let others: Vec<usize> = (0..nu.len()).filter(|&s| s != i).collect();
            for g1 in 0..=genus {
                let g2 = genus - g1;
                for js in ordered_set_partitions(&others, 2) {
                    if StabilityReading::Literal.excludes(g1, js[0].len())
                        || StabilityReading::Literal.excludes(g2, js[1].len())
                    {
                        continue;
                    }
                    for vs in ordered_set_partitions(&all_mu, 3) {
                        let removed = mu.select(&vs[2]);
                        let Some(room) = u64::from(nu.parts()[i]).checked_sub(removed.degree()) else {
                            continue;
                        };
                        for alpha in 1..room {
                            let beta = room - alpha;
                            let p = e
                                .modified_pruned_or_zero(g1, &mu.select(&vs[0]), &nu.select(&js[0]).with_appended(&[alpha as u32]))
                                .unwrap()
                                * e.modified_pruned_or_zero(g2, &mu.select(&vs[1]), &nu.select(&js[1]).with_appended(&[beta as u32]))
                                    .unwrap();
                            let same = (g1, vs[0].len(), js[0].len(), alpha) == (g2, vs[1].len(), js[1].len(), beta);
                            let delta = if same { rational(1, 2) } else { Rational::one() };
                            let r = vs[2].len() as i64;
                            let weight = Rational::from_integer(
                                falling_factorial(m - 1, r)
                                    * factorial(r as u64 + 1)
                                    * removed.parts().iter().map(|&a| u64::from(a)).product::<u64>()
                                    * alpha
                                    * beta,
                            );
                            let v = p * weight * delta;
                            if g1 == g2 {
                                diagonal += &v;
                            }
                            full += v;
                        }
                    }
                }
            }
        }
        (full, diagonal)
    }
}
