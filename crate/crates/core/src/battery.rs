//! Instance families used by the verification commands and tests.

use crate::combinatorics::{partitions_of, Partition};
use crate::poly::{is_wall_point, LatticePoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub genus: i64,
    pub mu: Partition,
    pub nu: Partition,
}

impl Instance {
    pub fn m(&self) -> i64 {
        2 * self.genus - 2 + self.mu.len() as i64 + self.nu.len() as i64
    }
}

/// Every `(g, mu, nu)` with `1 <= d <= max_d`, `0 <= g <= max_g` and
/// `0 <= m <= max_m`, ordered by degree, genus, then partitions in reverse
/// lexicographic order.
pub fn instances(max_d: u32, max_g: i64, max_m: i64) -> Vec<Instance> {
    let mut out = Vec::new();
    for d in 1..=max_d {
        let parts = partitions_of(d);
        for genus in 0..=max_g {
            for mu in &parts {
                for nu in &parts {
                    let inst = Instance {
                        genus,
                        mu: mu.clone(),
                        nu: nu.clone(),
                    };
                    if (0..=max_m).contains(&inst.m()) {
                        out.push(inst);
                    }
                }
            }
        }
    }
    out
}

/// Chamber-interior points `(a, b | c, d)` with `a <= b`, `c <= d` and
/// `a + b <= max_d`.
pub fn interior_points_2x2(max_d: u32) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for total in 2..=max_d {
        for a in 1..=total / 2 {
            for c in 1..=total / 2 {
                let p = LatticePoint {
                    mu: Partition::new(vec![a, total - a]).expect("positive"),
                    nu: Partition::new(vec![c, total - c]).expect("positive"),
                };
                if !is_wall_point(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_bounds_hold() {
        let all = instances(4, 1, 3);
        assert!(all.iter().all(|i| i.mu.degree() <= 4 && (0..=3).contains(&i.m())));
        assert!(all.contains(&Instance {
            genus: 0,
            mu: Partition::new(vec![2]).unwrap(),
            nu: Partition::new(vec![1, 1]).unwrap(),
        }));
    }

    #[test]
    fn interior_points_avoid_walls() {
        let pts = interior_points_2x2(5);
        assert!(pts.iter().all(|p| !is_wall_point(p)));
        assert!(pts.iter().any(|p| p.to_string() == "(2,3|1,4)"));
        assert!(!pts.iter().any(|p| p.to_string() == "(2,3|2,3)"));
    }
}
