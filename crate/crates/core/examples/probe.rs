use jbstar::engine::*;
use jbstar::factors::FactorKind;
use jbstar::space::*;
use jbstar::Tolerance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn main() {
    let tol = Tolerance::default();
    let kinds = [
        FactorKind::Rectangular(4, 4),
        FactorKind::Symmetric(5),
        FactorKind::Antisymmetric(7),
        FactorKind::Spin(10),
        FactorKind::C5,
        FactorKind::H3O,
    ];
    for kind in kinds {
        let space = kind.build().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7777);
        let t0 = Instant::now();
        for i in 0..60 {
            let u = random_tripotent(&space, TripotentRequest::Any, &mut rng, &tol)
                .unwrap_or_else(|e| panic!("{kind}: trial {i}: {e}"));
            let fr = peirce_frame(&u, &tol).unwrap();
            let (r2, r1, r0) = fr.ranks();
            assert_eq!(r2 + r1 + r0, space.dim());
        }
        let gen = t0.elapsed().as_millis();
        let t1 = Instant::now();
        let mut rng2 = ChaCha8Rng::seed_from_u64(4242);
        let e = random_tripotent(&space, TripotentRequest::Any, &mut rng2, &tol).unwrap();
        let (finite, log) = match is_finite_tripotent_sampled(&e, 25, &mut rng2, &tol) { Ok(v) => v, Err(err) => { println!("{kind}: finiteness error: {err}"); continue; } };
        assert!(finite, "{kind}: {log:?}");
        println!("{kind}: 60 gen+frame {gen}ms, 25 finiteness trials {}ms", t1.elapsed().as_millis());
    }
}
