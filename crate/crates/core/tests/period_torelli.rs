//! Period-domain charts and the local Torelli map on random inputs.

use std::sync::Arc;

use k3lift::lattice::WittLattice;
use k3lift::matrix::vector;
use k3lift::synthetic::{random_connection, random_period_coordinates, random_unimodular_gram, random_unit};
use k3lift::{
    check_conditions, complete_period_line, coordinates_of, phi_invert, phi_map, transport, DeformationPoint,
    PadicScalar, PeriodFrame, PeriodLine, RingContext,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn frame(ctx: &Arc<RingContext>, r: usize, rng: &mut ChaCha8Rng) -> PeriodFrame {
    if r == 22 {
        return PeriodFrame::k3(ctx).unwrap();
    }
    let middle = WittLattice::new(random_unimodular_gram(ctx, r - 2, rng)).unwrap();
    PeriodFrame::hyperbolic(&middle).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn period_round_trip(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5, 7]), n in 2u32..5, r in prop::sample::select(vec![3usize, 4, 5, 6, 22])) {
        let ctx = RingContext::prime_field(p, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fr = frame(&ctx, r, &mut rng);
        let coords = random_period_coordinates(&ctx, r - 2, &mut rng);
        let line = complete_period_line(&fr, &coords).unwrap();
        let g = line.generator();
        prop_assert!(fr.lattice().is_isotropic_vector(&g));
        prop_assert!(g[0].is_one());
        prop_assert!(line.top().valuation_or_n() >= 1);
        prop_assert_eq!(coordinates_of(&line), coords.clone());
        let report = check_conditions(&line, None).unwrap();
        prop_assert!(report.reduces_to_hodge_line && report.isotropic && report.valuations_ok);

        // any generator of the same line gives the same chart point
        let u = random_unit(&ctx, &mut rng);
        let again = PeriodLine::from_generator(fr.clone(), &vector::scale(&u, &g)).unwrap();
        prop_assert_eq!(coordinates_of(&again), coords);
        prop_assert_eq!(again.top(), line.top());
    }

    #[test]
    fn torelli_round_trip(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), d in 1usize..4, n in 3u32..7) {
        let ctx = RingContext::prime_field(p, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conn = random_connection(&ctx, d, &mut rng).unwrap();
        prop_assert!(conn.is_skew());
        let g = DeformationPoint::new(random_period_coordinates(&ctx, d, &mut rng)).unwrap();
        let t = phi_map(&conn, &g).unwrap();
        // first order: Phi(g) = T g mod p^2
        let lin = conn.transversality_matrix().mul_vec(g.entries());
        prop_assert!(vector::valuation(&vector::sub(&t, &lin)).is_none_or(|v| v >= 2));
        let inv = phi_invert(&conn, &t).unwrap();
        prop_assert_eq!(inv.point.entries(), g.entries());
        prop_assert!(inv.iterations <= ctx.n() as usize);
    }

    #[test]
    fn skew_transport_preserves_the_form(seed in any::<u64>(), d in 1usize..4) {
        let ctx = RingContext::prime_field(5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conn = random_connection(&ctx, d, &mut rng).unwrap();
        let l = conn.frame().lattice();
        let g = DeformationPoint::new(random_period_coordinates(&ctx, d, &mut rng)).unwrap();
        let r = d + 2;
        for i in 0..r {
            for j in 0..r {
                let (x, y) = (vector::basis(&ctx, r, i), vector::basis(&ctx, r, j));
                let (tx, ty) = (transport(&conn, &g, &x).unwrap(), transport(&conn, &g, &y).unwrap());
                prop_assert_eq!(l.pairing(&tx, &ty), l.pairing(&x, &y));
            }
        }
        // so the image of Phi is a period line
        let h = transport(&conn, &g, &conn.frame().hodge_vector()).unwrap();
        prop_assert!(l.is_isotropic_vector(&h));
        let line = PeriodLine::from_generator(conn.frame().clone(), &h).unwrap();
        prop_assert_eq!(coordinates_of(&line), phi_map(&conn, &g).unwrap());
    }
}

/// The completed coordinate is the only one modulo 9 that makes the line
/// isotropic with the required valuations.
#[test]
fn completion_is_unique_mod_nine() {
    let ctx = RingContext::prime_field(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for r in [4usize, 6] {
        let fr = frame(&ctx, r, &mut rng);
        for _ in 0..10 {
            let coords = random_period_coordinates(&ctx, r - 2, &mut rng);
            let line = complete_period_line(&fr, &coords).unwrap();
            let hits: Vec<i64> = (0..9)
                .filter(|&a| {
                    let mut g = vec![PadicScalar::one(&ctx)];
                    g.extend(coords.iter().cloned());
                    g.push(PadicScalar::from_int(&ctx, a));
                    fr.lattice().is_isotropic_vector(&g) && a % 3 == 0
                })
                .collect();
            assert_eq!(hits.len(), 1);
            assert_eq!(PadicScalar::from_int(&ctx, hits[0]), *line.top());
        }
    }
}
