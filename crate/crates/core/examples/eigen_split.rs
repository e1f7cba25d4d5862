//! Eigenspace decomposition of a tame isometry: the order-3 rotation of the
//! A2 root lattice over W_2(F_7), then a random order-12 isometry over
//! W_3(F_13).

use k3lift::synthetic::random_tame_isometry;
use k3lift::{eigen_split, Isometry, Matrix, RingContext, WittLattice};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(7, 2)?;
    let a2 = WittLattice::from_ints(&ctx, 2, &[2, -1, -1, 2])?;
    let rot = Matrix::from_ints(&ctx, 2, 2, &[0, -1, 1, -1])?;
    let iso = Isometry::new(a2, rot, Some(3))?;
    println!("char poly {:?}", iso.char_poly().integer_candidates);
    for c in iso.eigen_split(3)?.components {
        println!("eigenvalue {}: basis {:?}", c.eigenvalue, c.basis);
    }

    let ctx = RingContext::prime_field(13, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let iso = random_tame_isometry(&ctx, 8, 12, &mut rng)?;
    let split = eigen_split(iso.matrix(), 12)?;
    let ranks: Vec<(String, usize)> = split
        .components
        .iter()
        .map(|c| (c.eigenvalue.to_string(), c.basis.len()))
        .collect();
    println!(
        "random order-12 isometry of rank 8: {ranks:?}, direct sum {}",
        split.is_direct_sum()
    );
    Ok(())
}
