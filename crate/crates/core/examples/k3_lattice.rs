//! The K3 lattice U^3 + E8^2 and its base change to W_n.

use k3lift::{standard_lattice, IntLattice, PeriodFrame, RingContext, StandardLattice};

fn main() -> k3lift::Result<()> {
    let k3 = standard_lattice(StandardLattice::K3);
    println!(
        "rank {}, even {}, determinant {}",
        k3.rank(),
        k3.is_even(),
        k3.determinant()
    );
    println!("signature {:?}, unimodular {}", k3.signature()?, k3.is_unimodular());

    // a supersingular-style discriminant group (Z/p)^(2 sigma)
    let ns = IntLattice::diagonal(&[5, 5, -1, -1]);
    let disc = ns.discriminant_group()?;
    println!(
        "diag(5,5,-1,-1): discriminant {:?}, Artin invariant {:?}",
        disc.divisors(),
        disc.artin_invariant(5)
    );

    let ctx = RingContext::prime_field(5, 3)?;
    let w = k3.base_change(&ctx);
    println!("over W_3(F_5): perfect pairing {}", w.is_perfect());
    let frame = PeriodFrame::k3(&ctx)?;
    println!(
        "period frame of rank {} with {} chart coordinates",
        frame.rank(),
        frame.dimension()
    );
    Ok(())
}
