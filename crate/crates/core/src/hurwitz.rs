//! Exact evaluation of `H_g`, `PH_g` and the modified pruned numbers, with an
//! in-memory memo table and an optional persistent record store.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::cache::CacheStore;
use crate::combinatorics::{automorphism_factor, centralizer_order, Integer, Partition, Rational};
use crate::conventions::Conventions;
use crate::enumeration::{
    branch_point_count, count_isomorphism_classes, FactorizationSearch, Parallelism,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// Double Hurwitz number `H_g(mu, nu)`.
    #[serde(rename = "H")]
    Full,
    /// Pruned double Hurwitz number `PH_g(mu, nu)`, automorphism weighted.
    #[serde(rename = "PH")]
    Pruned,
    /// Number of isomorphism classes of pruned branching graphs.
    #[serde(rename = "PHHAT")]
    ModifiedPruned,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Full, Kind::Pruned, Kind::ModifiedPruned];

    /// Tag used in cache records.
    pub fn record_tag(self) -> &'static str {
        match self {
            Kind::Full => "H",
            Kind::Pruned => "PH",
            Kind::ModifiedPruned => "PHHAT",
        }
    }

    /// Name used on the command line and in reports.
    pub fn cli_name(self) -> &'static str {
        match self {
            Kind::Full => "full",
            Kind::Pruned => "pruned",
            Kind::ModifiedPruned => "modified",
        }
    }

    fn is_pruned(self) -> bool {
        !matches!(self, Kind::Full)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "full" | "H" => Ok(Kind::Full),
            "pruned" | "PH" => Ok(Kind::Pruned),
            "modified" | "modified-pruned" | "PHHAT" => Ok(Kind::ModifiedPruned),
            other => Err(format!("unknown kind {other:?} (full|pruned|modified)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HurwitzQuery {
    pub genus: i64,
    pub mu: Partition,
    pub nu: Partition,
    pub kind: Kind,
}

impl HurwitzQuery {
    pub fn new(genus: i64, mu: Partition, nu: Partition, kind: Kind) -> Self {
        HurwitzQuery { genus, mu, nu, kind }
    }

    /// Number of simple branch points, `2g - 2 + l(mu) + l(nu)`.
    pub fn m(&self) -> i64 {
        branch_point_count(self.genus, &self.mu, &self.nu)
    }

    /// Values depend only on the multisets, so keys store sorted parts.
    pub fn key(&self) -> CacheKey {
        CacheKey {
            genus: self.genus,
            mu: self.mu.sorted(),
            nu: self.nu.sorted(),
            kind: self.kind,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.mu.degree() != self.nu.degree() {
            return Err(Error::DegreeMismatch {
                mu: self.mu.degree(),
                nu: self.nu.degree(),
            });
        }
        if self.mu.degree() == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CacheKey {
    pub genus: i64,
    pub mu: Partition,
    pub nu: Partition,
    pub kind: Kind,
}

/// Evaluator for all three kinds. Thread safe; concurrent evaluations of
/// the same key may both compute, and store equal values.
pub struct HurwitzEngine {
    conventions: Conventions,
    parallelism: Parallelism,
    budget: Option<f64>,
    memo: RwLock<HashMap<CacheKey, Rational>>,
    store: Option<CacheStore>,
}

impl Default for HurwitzEngine {
    fn default() -> Self {
        HurwitzEngine::new(Conventions::default())
    }
}

impl HurwitzEngine {
    pub fn new(conventions: Conventions) -> Self {
        HurwitzEngine {
            conventions,
            parallelism: Parallelism::sequential(),
            budget: None,
            memo: RwLock::new(HashMap::new()),
            store: None,
        }
    }

    pub fn with_parallelism(mut self, parallelism: Parallelism) -> Self {
        self.parallelism = parallelism;
        self
    }

    /// Refuse searches whose naive size `(d(d-1)/2)^m` exceeds `limit`.
    pub fn with_budget(mut self, limit: Option<f64>) -> Self {
        self.budget = limit;
        self
    }

    /// Attaches a persistent store and preloads its records.
    pub fn with_store(mut self, store: CacheStore) -> Self {
        {
            let mut memo = self.memo.write().expect("memo lock poisoned");
            for (key, value) in store.load(&self.conventions) {
                memo.insert(key, value);
            }
        }
        self.store = Some(store);
        self
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn parallelism(&self) -> &Parallelism {
        &self.parallelism
    }

    pub fn cache_lookup(&self, query: &HurwitzQuery) -> Option<Rational> {
        self.memo
            .read()
            .expect("memo lock poisoned")
            .get(&query.key())
            .cloned()
    }

    pub fn cache_store(&self, query: &HurwitzQuery, value: Rational) {
        let key = query.key();
        if let Some(store) = &self.store {
            store.append(&key, &value, &self.conventions);
        }
        self.memo
            .write()
            .expect("memo lock poisoned")
            .insert(key, value);
    }

    /// Number of memoized values.
    pub fn cached_len(&self) -> usize {
        self.memo.read().expect("memo lock poisoned").len()
    }

    pub fn value(&self, query: &HurwitzQuery) -> Result<Rational> {
        query.validate()?;
        if query.genus < 0 || query.m() < 0 {
            return Ok(Rational::zero());
        }
        if let Some(v) = self.cache_lookup(query) {
            return Ok(v);
        }
        let value = self.compute(query)?;
        self.cache_store(query, value.clone());
        Ok(value)
    }

    fn compute(&self, query: &HurwitzQuery) -> Result<Rational> {
        let HurwitzQuery { genus, mu, nu, kind } = query;
        if *kind == Kind::ModifiedPruned && !(mu.is_single_cycle() && nu.is_single_cycle()) {
            // no automorphisms unless both ends are fully ramified
            return self.pruned_double_hurwitz(*genus, mu, nu);
        }
        let search = FactorizationSearch::new(*genus, mu, nu, kind.is_pruned(), self.conventions.m0_pruned)?
            .expect("m >= 0 checked by caller");
        if let Some(limit) = self.budget {
            let estimate = search.naive_size();
            if estimate > limit {
                return Err(Error::BudgetExceeded { estimate, limit });
            }
        }
        Ok(match kind {
            Kind::Full | Kind::Pruned => {
                let n = Integer::from(search.count(&self.parallelism));
                labeled_weight(n, mu, nu)
            }
            Kind::ModifiedPruned => Rational::from_integer(count_isomorphism_classes(
                *genus,
                mu,
                nu,
                true,
                self.conventions.m0_pruned,
                &self.parallelism,
            )?),
        })
    }

    pub fn double_hurwitz(&self, genus: i64, mu: &Partition, nu: &Partition) -> Result<Rational> {
        self.value(&HurwitzQuery::new(genus, mu.clone(), nu.clone(), Kind::Full))
    }

    pub fn pruned_double_hurwitz(&self, genus: i64, mu: &Partition, nu: &Partition) -> Result<Rational> {
        self.value(&HurwitzQuery::new(genus, mu.clone(), nu.clone(), Kind::Pruned))
    }

    pub fn modified_pruned_hurwitz(&self, genus: i64, mu: &Partition, nu: &Partition) -> Result<Rational> {
        self.value(&HurwitzQuery::new(genus, mu.clone(), nu.clone(), Kind::ModifiedPruned))
    }

    /// `modified_pruned_hurwitz` extended to the degenerate arguments that
    /// appear inside the reconstruction and recursion sums: an empty first
    /// partition, unequal degrees, or negative genus all give 0.
    pub fn modified_pruned_or_zero(&self, genus: i64, mu: &Partition, nu: &Partition) -> Result<Rational> {
        if genus < 0 || mu.is_empty() || nu.is_empty() || mu.degree() != nu.degree() {
            return Ok(Rational::zero());
        }
        self.modified_pruned_hurwitz(genus, mu, nu)
    }

    /// The sequence count `N` behind a full or pruned value, recovered from
    /// the value itself.
    pub fn tuple_count(&self, query: &HurwitzQuery) -> Result<Integer> {
        let kind = match query.kind {
            Kind::Full => Kind::Full,
            Kind::Pruned | Kind::ModifiedPruned => Kind::Pruned,
        };
        let value = self.value(&HurwitzQuery { kind, ..query.clone() })?;
        let scaled = value * Rational::from_integer(centralizer_order(&query.mu))
            / Rational::from_integer(automorphism_factor(&query.mu) * automorphism_factor(&query.nu));
        debug_assert!(scaled.is_integer());
        Ok(scaled.to_integer())
    }
}

/// `N |Aut-labels(mu)| |Aut-labels(nu)| / |Z(sigma1)|`: the number of labeled
/// tuples over all `sigma1` of type `mu`, divided by `d!`.
pub fn labeled_weight(n: Integer, mu: &Partition, nu: &Partition) -> Rational {
    Rational::new(
        n * automorphism_factor(mu) * automorphism_factor(nu),
        centralizer_order(mu),
    )
}

/// `1/1` helper for tests and callers building exact constants.
pub fn rational(num: i64, den: i64) -> Rational {
    if den == 1 {
        return Rational::from_integer(num.into());
    }
    Rational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn double_hurwitz_examples() {
        let e = HurwitzEngine::default();
        assert_eq!(e.double_hurwitz(0, &part(&[2, 3]), &part(&[1, 4])).unwrap(), rational(8, 1));
        assert_eq!(e.double_hurwitz(0, &part(&[1]), &part(&[1])).unwrap(), rational(1, 1));
        assert_eq!(e.double_hurwitz(0, &part(&[2]), &part(&[2])).unwrap(), rational(1, 2));
        assert!(matches!(
            e.double_hurwitz(0, &part(&[2]), &part(&[1])),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn pruned_examples() {
        let e = HurwitzEngine::default();
        assert_eq!(e.pruned_double_hurwitz(0, &part(&[2]), &part(&[1, 1])).unwrap(), rational(1, 1));
        assert_eq!(e.pruned_double_hurwitz(0, &part(&[1, 1]), &part(&[2])).unwrap(), rational(0, 1));
        assert_eq!(e.pruned_double_hurwitz(0, &part(&[2, 3]), &part(&[1, 4])).unwrap(), rational(2, 1));
    }

    #[test]
    fn modified_pruned_examples() {
        let e = HurwitzEngine::default();
        assert_eq!(e.modified_pruned_hurwitz(0, &part(&[2]), &part(&[1, 1])).unwrap(), rational(1, 1));
        assert_eq!(e.modified_pruned_hurwitz(1, &part(&[2]), &part(&[2])).unwrap(), rational(1, 1));
        assert_eq!(e.pruned_double_hurwitz(1, &part(&[2]), &part(&[2])).unwrap(), rational(1, 2));
        assert_eq!(e.modified_pruned_hurwitz(0, &part(&[1, 1]), &part(&[2])).unwrap(), rational(0, 1));
    }

    #[test]
    fn m0_convention_switch() {
        let strict = HurwitzEngine::default();
        let lax = HurwitzEngine::new(Conventions { m0_pruned: true, ..Conventions::default() });
        let (mu, nu) = (part(&[3]), part(&[3]));
        assert!(strict.pruned_double_hurwitz(0, &mu, &nu).unwrap().is_zero());
        assert!(strict.modified_pruned_hurwitz(0, &mu, &nu).unwrap().is_zero());
        assert_eq!(lax.pruned_double_hurwitz(0, &mu, &nu).unwrap(), rational(1, 3));
        assert_eq!(lax.modified_pruned_hurwitz(0, &mu, &nu).unwrap(), rational(1, 1));
    }

    #[test]
    fn negative_m_and_genus_are_zero() {
        let e = HurwitzEngine::default();
        for kind in Kind::ALL {
            let q = HurwitzQuery::new(-1, part(&[2]), part(&[2]), kind);
            assert!(e.value(&q).unwrap().is_zero());
        }
    }

    #[test]
    fn cache_semantics() {
        let e = HurwitzEngine::default();
        let q = HurwitzQuery::new(0, part(&[2, 3]), part(&[1, 4]), Kind::Full);
        assert!(e.cache_lookup(&q).is_none());
        e.cache_store(&q, rational(8, 1));
        assert_eq!(e.cache_lookup(&q), Some(rational(8, 1)));
        let permuted = HurwitzQuery::new(0, part(&[3, 2]), part(&[4, 1]), Kind::Full);
        assert_eq!(e.cache_lookup(&permuted), Some(rational(8, 1)));
        let other = HurwitzQuery::new(0, part(&[3, 2]), part(&[4, 1]), Kind::Pruned);
        assert!(e.cache_lookup(&other).is_none());
    }

    #[test]
    fn budget_refusal() {
        let e = HurwitzEngine::default().with_budget(Some(10.0));
        let err = e.double_hurwitz(0, &part(&[2, 2]), &part(&[2, 1, 1])).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn tuple_count_recovers_n() {
        let e = HurwitzEngine::default();
        let q = HurwitzQuery::new(0, part(&[2, 3]), part(&[1, 4]), Kind::Full);
        let n = crate::enumeration::count_factorizations(
            0, &q.mu, &q.nu, false, false, &Parallelism::sequential(),
        )
        .unwrap();
        assert_eq!(e.tuple_count(&q).unwrap(), n);
    }
}
