//! Correcting a vector that is isotropic only modulo p: find `a` with
//! `(u + p a v)^2 = 0` in W_n.

use k3lift::matrix::vector;
use k3lift::{isotropic_combination, RingContext, WittLattice};

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(5, 3)?;
    let l = WittLattice::from_ints(&ctx, 2, &[5, 1, 1, 0])?;
    let u = vector::from_ints(&ctx, &[1, 0]);
    let v = vector::from_ints(&ctx, &[0, 1]);
    println!("u.u = {} (isotropic mod 5 only)", l.norm(&u));
    let lift = isotropic_combination(&l, &u, &v)?;
    println!("a = {}, w = {:?}, w.w = {}", lift.a, lift.w, l.norm(&lift.w));
    Ok(())
}
