//! Piecewise polynomiality checks: walls, scaling rays and exact fitting.

use std::fmt;

use num::{One, Zero};

use crate::combinatorics::{subsets, Integer, Partition, Rational};
use crate::error::{Error, Result};
use crate::hurwitz::{HurwitzEngine, HurwitzQuery, Kind};

/// A balanced pair `(a_1..a_k | b_1..b_l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub mu: Partition,
    pub nu: Partition,
}

impl LatticePoint {
    pub fn new(mu: Partition, nu: Partition) -> Result<Self> {
        if mu.degree() != nu.degree() {
            return Err(Error::DegreeMismatch {
                mu: mu.degree(),
                nu: nu.degree(),
            });
        }
        Ok(LatticePoint { mu, nu })
    }

    pub fn scaled(&self, t: u32) -> LatticePoint {
        LatticePoint {
            mu: self.mu.scaled(t),
            nu: self.nu.scaled(t),
        }
    }

    /// Moves along the balanced direction `e_i + f_j` by `s`.
    pub fn shifted(&self, mu_index: usize, nu_index: usize, s: u32) -> LatticePoint {
        let bump = |p: &Partition, k: usize| {
            let mut parts = p.parts().to_vec();
            parts[k] += s;
            Partition::new(parts).expect("positive parts stay positive")
        };
        LatticePoint {
            mu: bump(&self.mu, mu_index),
            nu: bump(&self.nu, nu_index),
        }
    }

    /// `4g - 3 + k + l`.
    pub fn degree_bound(&self, genus: i64) -> i64 {
        4 * genus - 3 + self.mu.len() as i64 + self.nu.len() as i64
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &Partition| p.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.mu), join(&self.nu))
    }
}

/// True iff some proper non-empty sub-collections of `mu` and `nu` balance.
pub fn is_wall_point(p: &LatticePoint) -> bool {
    let (k, l) = (p.mu.len(), p.nu.len());
    let sums = |part: &Partition, n: usize| -> Vec<u64> {
        subsets(n)
            .filter(|s| !s.is_empty() && s.len() < n)
            .map(|s| part.select(&s).degree())
            .collect()
    };
    let nu_sums = sums(&p.nu, l);
    sums(&p.mu, k).iter().any(|a| nu_sums.contains(a))
}

/// `[value(g, t mu, t nu) for t = 1..=t_max]`.
pub fn scaling_values(engine: &HurwitzEngine, genus: i64, base: &LatticePoint, kind: Kind, t_max: u32) -> Result<Vec<Rational>> {
    if t_max < 1 {
        return Err(Error::Precondition("t_max must be at least 1".into()));
    }
    (1..=t_max)
        .map(|t| {
            let p = base.scaled(t);
            engine.value(&HurwitzQuery::new(genus, p.mu, p.nu, kind))
        })
        .collect()
}

/// `[value(base + s (e_i + f_j)) for s = 0..steps]`.
pub fn line_values(
    engine: &HurwitzEngine,
    genus: i64,
    base: &LatticePoint,
    kind: Kind,
    (mu_index, nu_index): (usize, usize),
    steps: u32,
) -> Result<Vec<Rational>> {
    (0..steps)
        .map(|s| {
            let p = base.shifted(mu_index, nu_index, s);
            engine.value(&HurwitzQuery::new(genus, p.mu, p.nu, kind))
        })
        .collect()
}

/// Forward differences of every order: row `k` is `Delta^k values`.
pub fn difference_table(values: &[Rational]) -> Vec<Vec<Rational>> {
    let mut table = vec![values.to_vec()];
    while table.last().is_some_and(|row| row.len() > 1) {
        let row = table.last().unwrap();
        let next = row.windows(2).map(|w| &w[1] - &w[0]).collect();
        table.push(next);
    }
    table
}

/// Smallest `D` whose `(D+1)`-th forward difference vanishes on the whole
/// window, or `None` when no `D < len - 1` qualifies.
pub fn finite_difference_degree(values: &[Rational]) -> Option<usize> {
    let table = difference_table(values);
    (0..values.len().saturating_sub(1)).find(|&d| table[d + 1].iter().all(Zero::is_zero))
}

/// Coefficients `c_0, c_1, ..` of the interpolant through `(t, values[t-1])`,
/// trailing zeros removed (at least one coefficient is kept).
pub fn fit_univariate(values: &[Rational]) -> Vec<Rational> {
    let table = difference_table(values);
    let mut coefficients = vec![Rational::zero(); values.len().max(1)];
    // basis[j] holds the power coefficients of binom(t - 1, k)
    let mut basis = vec![Rational::one()];
    for (k, row) in table.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            coefficients[j] += &row[0] * b;
        }
        // binom(t-1, k+1) = binom(t-1, k) (t - 1 - k) / (k + 1)
        let shift = Rational::from_integer(Integer::from(k as i64 + 1));
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (j, b) in basis.iter().enumerate() {
            next[j + 1] += b / &shift;
            next[j] -= b;
        }
        basis = next;
    }
    while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
        coefficients.pop();
    }
    coefficients
}

/// Horner evaluation.
pub fn evaluate(coefficients: &[Rational], t: &Rational) -> Rational {
    coefficients.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
}

/// Scaling-ray fit with the degree bound check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayFit {
    pub genus: i64,
    pub base: LatticePoint,
    pub kind: Kind,
    pub wall: bool,
    pub samples: Vec<Rational>,
    pub degree: Option<usize>,
    pub coefficients: Vec<Rational>,
    pub bound: i64,
    pub bound_met: bool,
}

/// Samples `t = 1..=t_max` along the ray through `base` and fits them.
/// Wall base points are refused unless `allow_wall`.
pub fn fit_scaling_ray(
    engine: &HurwitzEngine,
    genus: i64,
    base: &LatticePoint,
    kind: Kind,
    t_max: u32,
    allow_wall: bool,
) -> Result<RayFit> {
    let wall = is_wall_point(base);
    if wall && !allow_wall {
        return Err(Error::WallPoint(base.to_string()));
    }
    let samples = scaling_values(engine, genus, base, kind, t_max)?;
    let degree = finite_difference_degree(&samples);
    let coefficients = fit_univariate(&samples);
    let bound = base.degree_bound(genus);
    Ok(RayFit {
        genus,
        base: base.clone(),
        kind,
        wall,
        degree,
        coefficients,
        bound,
        bound_met: degree.map(|d| d as i64) == Some(bound),
        samples,
    })
}
