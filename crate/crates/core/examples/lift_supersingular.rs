//! Supersingular branches: a non-symplectic involution with `zeta = -1`,
//! then the whole regression corpus with a perturbation check.

use k3lift::matrix::vector;
use k3lift::synthetic::{lift_corpus, perturb_certificate};
use k3lift::{lift_ss_nonsymplectic, verify_certificate, Matrix, RingContext, SupersingularInput, WittLattice};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(5, 3)?;
    let l = WittLattice::from_ints(&ctx, 4, &[5, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0])?;
    let a = Matrix::from_ints(&ctx, 4, 4, &[-1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1])?;
    let input = SupersingularInput::new(
        l,
        a,
        vector::from_ints(&ctx, &[1, 0, 0, 0]),
        vector::from_ints(&ctx, &[0, 0, 1, 1]),
        None,
        Some(false),
    )?;
    let cert = lift_ss_nonsymplectic(&input, 2)?;
    println!(
        "involution: generator {:?}, valid {}",
        cert.generator,
        verify_certificate(&cert).valid
    );

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in lift_corpus(&mut rng)? {
        let cert = case.build()?;
        let ok = verify_certificate(&cert).valid;
        let bad = verify_certificate(&perturb_certificate(&cert, &mut rng));
        println!("{:<32} valid {ok:<5}  perturbed fails {:?}", case.name, bad.failures());
    }
    Ok(())
}
