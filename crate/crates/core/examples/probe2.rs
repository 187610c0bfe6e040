use jbstar::engine::*;
use jbstar::factors::FactorKind;
use jbstar::space::*;
use jbstar::linalg::*;
use jbstar::Tolerance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let space = FactorKind::Symmetric(5).build().unwrap();
    let mut rng2 = ChaCha8Rng::seed_from_u64(4242);
    let e = random_tripotent(&space, TripotentRequest::Any, &mut rng2, &tol).unwrap();
    let l = l_matrix(e.space(), e.coords(), e.coords());
    let p2 = (&l * &l).scale(2.0) - &l;
    let raw = p2.clone().svd(true, true);
    let rec = raw.clone().recompose().unwrap();
    println!("raw recompose err = {:.3e}", fro_norm(&(&rec - &p2)));
    let u = raw.u.as_ref().unwrap();
    println!("‖UᴴU − I‖ = {:.3e}", fro_norm(&(u.adjoint()*u - eye(15))));
    let vt = raw.v_t.as_ref().unwrap();
    println!("‖VVᴴ − I‖ = {:.3e}", fro_norm(&(vt.adjoint()*vt.transpose().conjugate().adjoint() - eye(15))));
    println!("singular values: {:?}", raw.singular_values.as_slice().iter().map(|s| format!("{s:.3e}")).collect::<Vec<_>>());
}
