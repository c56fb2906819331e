//! Rebuilds H from modified pruned values and compares with direct
//! enumeration, then repeats the single-face cases with PH as core weight.

use pruned_hurwitz::battery::instances;
use pruned_hurwitz::hurwitz::HurwitzEngine;
use pruned_hurwitz::reconstruction::{reconstruct_double_hurwitz, verify_reconstruction};

fn main() -> pruned_hurwitz::error::Result<()> {
    let engine = HurwitzEngine::default();
    let mut mismatches = Vec::new();
    let all = instances(4, 1, 4);
    for inst in &all {
        let report = verify_reconstruction(&engine, inst.genus, &inst.mu, &inst.nu)?;
        if !report.matches {
            mismatches.push(inst.clone());
        }
    }
    println!("{} of {} instances rebuild exactly", all.len() - mismatches.len(), all.len());

    let worked = &all
        .iter()
        .find(|i| i.genus == 0 && i.mu.parts() == [3, 1] && i.nu.parts() == [2, 2])
        .expect("present in the battery");
    let report = verify_reconstruction(&engine, worked.genus, &worked.mu, &worked.nu)?;
    println!("g=0 (3,1),(2,2): H = {}, {} nonzero terms", report.by_degrees, report.terms.len());
    for term in &report.terms {
        println!(
            "  nu~={:?} core={:?} phat={} coeff={} -> {}",
            term.nu_tilde,
            term.core,
            term.phat,
            term.coefficient,
            term.value()
        );
    }

    println!("mismatching instances, with PH as core weight instead:");
    for inst in &mismatches {
        let with_ph = reconstruct_double_hurwitz(inst.genus, &inst.mu, &inst.nu, |g, a, b| {
            engine.pruned_double_hurwitz(g, a, b)
        })?;
        let h = engine.double_hurwitz(inst.genus, &inst.mu, &inst.nu)?;
        println!(
            "  g={} {:?},{:?}: H={} rebuilt={}",
            inst.genus,
            inst.mu.parts(),
            inst.nu.parts(),
            h,
            with_ph
        );
    }
    Ok(())
}
