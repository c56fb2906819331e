//! Fits pruned values along scaling rays off the walls.

use pruned_hurwitz::battery::interior_points_2x2;
use pruned_hurwitz::hurwitz::{HurwitzEngine, Kind};
use pruned_hurwitz::poly::{fit_scaling_ray, is_wall_point, LatticePoint};

fn main() -> pruned_hurwitz::error::Result<()> {
    let engine = HurwitzEngine::default();
    let points = interior_points_2x2(5);
    println!("{} interior base points with |mu| <= 5", points.len());
    for base in points.iter().take(4) {
        let fit = fit_scaling_ray(&engine, 0, base, Kind::Pruned, (base.degree_bound(0) + 2) as u32, false)?;
        let coefficients: Vec<String> = fit.coefficients.iter().map(ToString::to_string).collect();
        println!(
            "{base}: samples {:?} degree {:?} (bound {}) coefficients [{}]",
            fit.samples.iter().map(ToString::to_string).collect::<Vec<_>>(),
            fit.degree,
            fit.bound,
            coefficients.join(", ")
        );
    }

    let wall = LatticePoint::new(
        pruned_hurwitz::combinatorics::Partition::new(vec![2, 3])?,
        pruned_hurwitz::combinatorics::Partition::new(vec![2, 3])?,
    )?;
    println!("{wall} on a wall: {}", is_wall_point(&wall));
    Ok(())
}
