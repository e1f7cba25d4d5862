//! Charts on the space of isotropic lines reducing to the Hodge line:
//! complete coordinates to a line, read them back, and test the
//! conditions on a toy frame and on the K3 frame.

use k3lift::matrix::vector;
use k3lift::synthetic::random_period_coordinates;
use k3lift::{check_conditions, complete_period_line, coordinates_of, Matrix, PeriodFrame, RingContext, WittLattice};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(3, 3)?;
    let frame = PeriodFrame::new(WittLattice::from_ints(
        &ctx,
        4,
        &[0, 0, 0, 1, 0, 2, 0, 0, 0, 0, 2, 0, 1, 0, 0, 0],
    )?)?;
    let line = complete_period_line(&frame, &vector::from_ints(&ctx, &[3, 0]))?;
    println!(
        "toy frame, coordinates (3, 0): top coordinate {}, generator {:?}",
        line.top(),
        line.generator()
    );
    let frob = Matrix::from_ints(&ctx, 4, 4, &[9, 0, 0, 0, 0, 3, 0, 0, 0, 0, 3, 0, 0, 0, 0, 1])?;
    println!("conditions: {:?}", check_conditions(&line, Some(&frob))?);

    let ctx = RingContext::prime_field(5, 4)?;
    let k3 = PeriodFrame::k3(&ctx)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let coords = random_period_coordinates(&ctx, k3.dimension(), &mut rng);
    let line = complete_period_line(&k3, &coords)?;
    println!(
        "K3 frame over W_4(F_5): top {}, isotropic {}, round trip {}",
        line.top(),
        k3.lattice().is_isotropic_vector(&line.generator()),
        coordinates_of(&line) == coords
    );
    Ok(())
}
