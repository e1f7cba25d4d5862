//! The local Torelli map: transport the Hodge line along a deformation
//! point with a nilpotent connection, then invert.

use k3lift::synthetic::{random_connection, random_period_coordinates};
use k3lift::{divided_power, phi_invert, phi_map, truncation_degree, DeformationPoint, PadicScalar, RingContext};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(3, 5)?;
    println!(
        "series truncated at degree {} for p = 3, n = 5",
        truncation_degree(5, 3)?
    );
    let three = PadicScalar::from_int(&ctx, 3);
    for k in 0..6 {
        println!("gamma_{k}(3) = {}", divided_power(&three, k)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let conn = random_connection(&ctx, 3, &mut rng)?;
    let g = DeformationPoint::new(random_period_coordinates(&ctx, 3, &mut rng))?;
    let target = phi_map(&conn, &g)?;
    println!("g = {:?}\nPhi(g) = {target:?}", g.entries());
    let back = phi_invert(&conn, &target)?;
    println!(
        "recovered {:?} in {} iterations, exact {}",
        back.point.entries(),
        back.iterations,
        back.point == g
    );
    Ok(())
}
