//! Checks the pruned cut-and-join identity under both stability readings and
//! prints the per-case breakdown of one instance.

use pruned_hurwitz::battery::instances;
use pruned_hurwitz::conventions::{Conventions, StabilityReading};
use pruned_hurwitz::cut_join::{verify_recursion, RecursionCase};
use pruned_hurwitz::hurwitz::HurwitzEngine;

fn main() -> pruned_hurwitz::error::Result<()> {
    for reading in StabilityReading::ALL {
        let engine = HurwitzEngine::new(Conventions {
            stability: reading,
            ..Conventions::default()
        });
        let (mut total, mut matched) = (0, 0);
        for inst in instances(5, 1, 5).into_iter().filter(|i| i.nu.len() >= 3 && i.m() > 0) {
            total += 1;
            if verify_recursion(&engine, inst.genus, &inst.mu, &inst.nu)?.matches {
                matched += 1;
            }
        }
        println!("{reading}: {matched}/{total} instances balance");

        let mu = pruned_hurwitz::combinatorics::Partition::new(vec![2, 2])?;
        let nu = pruned_hurwitz::combinatorics::Partition::new(vec![2, 1, 1])?;
        let report = verify_recursion(&engine, 0, &mu, &nu)?;
        print!("  g=0 (2,2),(2,1,1): lhs={} rhs={}", report.lhs, report.rhs);
        for case in RecursionCase::ALL {
            print!(" {}={}", case.as_str(), report.per_case[case.index()]);
        }
        println!();
    }
    Ok(())
}
