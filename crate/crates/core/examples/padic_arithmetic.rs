//! Arithmetic in W_n(F_q): valuations, inverses, Teichmuller lifts and
//! Frobenius, and a Hensel lift of sqrt(2) in Z/7^4.

use k3lift::{hensel_root, nth_roots_of_unity, PadicScalar, Polynomial, RingContext};

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(7, 4)?;
    let x = PadicScalar::from_int(&ctx, 98);
    println!(
        "98 in Z/7^4: valuation {:?}, unit part {}",
        x.valuation(),
        x.div_p_power(2)?
    );
    let y = PadicScalar::from_int(&ctx, 3);
    println!("3^-1 = {}", y.inv()?);

    let root = hensel_root(
        &Polynomial::from_ints(&ctx, &[-2, 0, 1]),
        &PadicScalar::from_int(&ctx, 3),
    )?;
    println!("sqrt(2) lifting 3 mod 7: {root}  (check: {})", &root * &root);

    // cube roots of unity in Z/7^4
    for z in nth_roots_of_unity(&ctx, 3)? {
        println!("cube root of unity {z}, cubed {}", z.pow(3));
    }

    // W_3(F_9): Frobenius acts on the generator, Teichmuller lifts are fixed by x -> x^9
    let w = RingContext::with_degree(3, 3, 2)?;
    let g = PadicScalar::generator(&w);
    let t = g.teichmuller();
    println!(
        "W_3(F_9): generator {g}, Frobenius {}, Teichmuller lift {t}",
        g.frobenius()
    );
    println!("t^9 == t: {}", t.pow(9) == t);
    Ok(())
}
