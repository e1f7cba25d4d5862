//! Finite-height branch: lift the Hodge line as an eigenvector inside the
//! top slope piece, and check which other isometries share it.

use k3lift::matrix::vector;
use k3lift::{universal_line, verify_certificate, Isometry, Matrix, RingContext, SlopeDecomposition, WittLattice};

fn main() -> k3lift::Result<()> {
    let ctx = RingContext::prime_field(7, 2)?;
    let l = WittLattice::from_ints(&ctx, 4, &[0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0])?;
    let e = |i| vector::basis(&ctx, 4, i);
    let sd = SlopeDecomposition::new(l.clone(), vec![e(0)], vec![e(1), e(2)], vec![e(3)], None)?;
    // 18 has order 3 modulo 49 and 30 is its inverse
    let a = Matrix::from_ints(&ctx, 4, 4, &[30, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 18])?;
    let iso = Isometry::new(l, a.clone(), Some(3))?;
    let swap = Matrix::from_ints(&ctx, 4, 4, &[0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0])?;
    let (cert, reports) = universal_line(&sd, &iso, 3, &e(3), &[a.pow(2), swap])?;
    println!("generator {:?}, eigenvalue {}", cert.generator, cert.eigenvalue);
    println!("valid: {}", verify_certificate(&cert).valid);
    for r in reports {
        println!(
            "other isometry {}: stabilises {} (eigenvalue {:?})",
            r.index, r.stabilizes, r.eigenvalue
        );
    }
    Ok(())
}
