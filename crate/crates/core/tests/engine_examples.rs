//! Worked examples exercising the engine across factors, each checked
//! against an independent oracle (matrix-unit evaluation, SVD, closed-form
//! classifications, dimension counts).

use std::sync::Arc;

use jbstar::engine::{
    classify_tripotent, extend_to_complete, is_finite_tripotent_sampled, is_tripotent,
    l_operator, peirce_frame, q_operator, range_tripotent_approx, relation, JordanAt,
    RelationKind,
};
use jbstar::factors::matrix::{identity_element, matrix_unit};
use jbstar::factors::spin::{classify_spin_tripotent, SpinTripotentKind};
use jbstar::factors::{FactorKind, MatrixFactor, SpinFactor};
use jbstar::linalg::{cr, eigenvalues_general, rel_vec_resid};
use jbstar::space::{direct_sum, Element, SpaceRef, TripleSpace, TripotentRequest};
use jbstar::{Tolerance, C, CVec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn m2() -> (MatrixFactor, SpaceRef) {
    let f = MatrixFactor::rectangular(2, 2).unwrap();
    (f.clone(), Arc::new(f))
}

fn sorted_real_eigs(m: &jbstar::CMat) -> Vec<f64> {
    let mut v: Vec<f64> = eigenvalues_general(m).unwrap().iter().map(|z| z.re).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn l_operator_of_e11_in_m2() {
    // Oracle: evaluate {E11, E11, E_ij} on the four matrix units by hand:
    // E11 ↦ E11, E12 ↦ E12/2, E21 ↦ E21/2, E22 ↦ 0.
    let (f, s) = m2();
    let u = Element::new(s.clone(), matrix_unit(&f, 0, 0));
    let l = l_operator(&u, &u).unwrap();
    let eigs = sorted_real_eigs(&l);
    let expect = [0.0, 0.5, 0.5, 1.0];
    for (got, want) in eigs.iter().zip(expect.iter()) {
        assert!((got - want).abs() < 1e-12, "eigs {eigs:?}");
    }
    // L(0, b) = 0
    let zero = Element::zero(s.clone());
    let b = Element::random(s, &mut rng(1));
    let l0 = l_operator(&zero, &b).unwrap();
    assert!(l0.iter().all(|z| z.norm() < 1e-15));
}

#[test]
fn q_operator_examples() {
    let (f, s) = m2();
    let tol = Tolerance::default();
    // unitary e: Q(e)x = e x* e; oracle by direct evaluation on matrix units
    let e = Element::new(s.clone(), identity_element(&f));
    let q = q_operator(&e);
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let x = Element::new(s.clone(), matrix_unit(&f, i, j));
        let qx = &q * jbstar::linalg::conj_vec(x.coords());
        let xmat = f.embed(x.coords());
        let emat = f.embed(e.coords());
        let oracle = &emat * xmat.adjoint() * &emat;
        assert!(rel_vec_resid(&qx, &f.extract(&oracle)) < 1e-13);
    }
    // Q(u)u = u for any tripotent
    let u = Element::new(
        s.clone(),
        s.make_tripotent(TripotentRequest::Rank(1), &mut rng(2)).unwrap(),
    );
    let quu = u.triple(&u, &u).unwrap();
    assert!(rel_vec_resid(quu.coords(), u.coords()) < 1e-12);
    let _ = tol;
}

#[test]
fn tripotent_predicate_examples() {
    let (f, s) = m2();
    let tol = Tolerance::default();
    // the identity is a tripotent
    let id = Element::new(s.clone(), identity_element(&f));
    assert!(is_tripotent(&id, &tol).is_tripotent);
    // 2·E11 is not: {x,x,x} = 8·E11, residual exactly 6
    let x = Element::new(s.clone(), matrix_unit(&f, 0, 0).map(|z| z * cr(2.0)));
    let chk = is_tripotent(&x, &tol);
    assert!(!chk.is_tripotent);
    assert!((chk.residual - 6.0).abs() < 1e-12, "residual {}", chk.residual);
    // spin element (1, i)/2
    let spin2: SpaceRef = Arc::new(SpinFactor::new(2).unwrap());
    let u = Element::new(
        spin2,
        CVec::from_vec(vec![C::new(0.5, 0.0), C::new(0.0, 0.5)]),
    );
    assert!(is_tripotent(&u, &tol).is_tripotent);
}

#[test]
fn peirce_frame_ranks_in_matrix_and_spin_factors() {
    let tol = Tolerance::default();
    let (f, s) = m2();
    // oracle: classify the four matrix units against E11
    let u = Element::new(s, matrix_unit(&f, 0, 0));
    let frame = peirce_frame(&u, &tol).unwrap();
    assert_eq!(frame.ranks(), (1, 2, 1));
    assert!(frame.identity_residual() < 1e-12);

    // minimal tripotent of a spin factor: ranks (1, n-2, 1)
    for n in [3usize, 5, 8] {
        let sp: SpaceRef = Arc::new(SpinFactor::new(n).unwrap());
        let u = Element::new(
            sp.clone(),
            sp.make_tripotent(TripotentRequest::Minimal, &mut rng(7)).unwrap(),
        );
        let frame = peirce_frame(&u, &tol).unwrap();
        assert_eq!(frame.ranks(), (1, n - 2, 1), "spin({n})");
    }
}

#[test]
fn peirce_frames_of_the_exceptional_factors() {
    let tol = Tolerance::default();
    // octonion pairs: minimal (u,0) has ranks (1, 10, 5); complete has (8, 8, 0)
    let c5 = FactorKind::C5.build().unwrap();
    let mut r = rng(9);
    let minimal = Element::new(
        c5.clone(),
        c5.make_tripotent(TripotentRequest::Minimal, &mut r).unwrap(),
    );
    assert_eq!(peirce_frame(&minimal, &tol).unwrap().ranks(), (1, 10, 5));
    let complete = Element::new(
        c5.clone(),
        c5.make_tripotent(TripotentRequest::Complete, &mut r).unwrap(),
    );
    assert_eq!(peirce_frame(&complete, &tol).unwrap().ranks(), (8, 8, 0));

    // hermitian 3×3 octonion matrices: unit (27,0,0); E00 (1,16,10);
    // complement of E00 (10,16,1)
    let h3o = FactorKind::H3O.build().unwrap();
    let unit = Element::new(
        h3o.clone(),
        jbstar::exceptional::H3OElement::unit().to_coords(),
    );
    assert_eq!(peirce_frame(&unit, &tol).unwrap().ranks(), (27, 0, 0));
    let e00 = Element::new(
        h3o.clone(),
        jbstar::exceptional::H3OElement::diag_projection(0).to_coords(),
    );
    assert_eq!(peirce_frame(&e00, &tol).unwrap().ranks(), (1, 16, 10));
    let complement = unit.sub(&e00).unwrap();
    assert_eq!(peirce_frame(&complement, &tol).unwrap().ranks(), (10, 16, 1));
}

#[test]
fn relation_examples() {
    let tol = Tolerance::default();
    // one-dimensional factor: -1 and 1 are sim2-related but -1 is not ≤ 1
    let c1: SpaceRef = Arc::new(SpinFactor::new(1).unwrap());
    let plus = Element::new(c1.clone(), CVec::from_vec(vec![cr(1.0)]));
    let minus = Element::new(c1.clone(), CVec::from_vec(vec![cr(-1.0)]));
    assert!(relation(RelationKind::Sim2, &minus, &plus, &tol).unwrap().holds);
    assert!(!relation(RelationKind::Leq, &minus, &plus, &tol).unwrap().holds);

    // 1×2 matrices: (1,0) and (0,1) are both complete, so sim0 holds while
    // leq2 fails in both directions
    let f12 = MatrixFactor::rectangular(1, 2).unwrap();
    let s12: SpaceRef = Arc::new(f12.clone());
    let e = Element::new(s12.clone(), matrix_unit(&f12, 0, 0));
    let u = Element::new(s12.clone(), matrix_unit(&f12, 0, 1));
    assert!(relation(RelationKind::Sim0, &e, &u, &tol).unwrap().holds);
    assert!(!relation(RelationKind::Leq2, &e, &u, &tol).unwrap().holds);
    assert!(!relation(RelationKind::Leq2, &u, &e, &tol).unwrap().holds);

    // E11 ≤ I in M2, hence ≤2 and ≤0 as well
    let (f, s) = m2();
    let e11 = Element::new(s.clone(), matrix_unit(&f, 0, 0));
    let id = Element::new(s, identity_element(&f));
    for kind in [RelationKind::Leq, RelationKind::Leq2, RelationKind::Leq0] {
        assert!(relation(kind, &e11, &id, &tol).unwrap().holds, "{kind}");
    }

    // orthogonality: E11 ⟂ E22 but E11 not ⟂ E12
    let (f, s) = m2();
    let e11 = Element::new(s.clone(), matrix_unit(&f, 0, 0));
    let e22 = Element::new(s.clone(), matrix_unit(&f, 1, 1));
    let e12 = Element::new(s, matrix_unit(&f, 0, 1));
    assert!(relation(RelationKind::Perp, &e11, &e22, &tol).unwrap().holds);
    assert!(!relation(RelationKind::Perp, &e11, &e12, &tol).unwrap().holds);
}

#[test]
fn jordan_algebra_at_a_unitary() {
    let tol = Tolerance::default();
    let f = MatrixFactor::rectangular(3, 3).unwrap();
    let s: SpaceRef = Arc::new(f.clone());
    let e = Element::new(s.clone(), identity_element(&f));
    let jordan = JordanAt::new(e.clone(), &tol).unwrap();
    // oracle: the symmetrized matrix product, checked on random elements
    let mut r = rng(11);
    for _ in 0..10 {
        let x = Element::random(s.clone(), &mut r);
        let y = Element::random(s.clone(), &mut r);
        let got = jordan.product(&x, &y).unwrap();
        let xm = f.embed(x.coords());
        let ym = f.embed(y.coords());
        let want = f.extract(&((&xm * &ym + &ym * &xm).scale(0.5)));
        assert!(rel_vec_resid(got.coords(), &want) < 1e-12);
    }
    // unit law and involution fixed point
    let ee = jordan.product(&e, &e).unwrap();
    assert!(rel_vec_resid(ee.coords(), e.coords()) < 1e-13);
    let estar = jordan.involution(&e).unwrap();
    assert!(rel_vec_resid(estar.coords(), e.coords()) < 1e-13);
    // u ≤ e makes u a projection in the algebra at e
    let u = Element::new(s, matrix_unit(&f, 0, 0));
    let uu = jordan.product(&u, &u).unwrap();
    let ustar = jordan.involution(&u).unwrap();
    assert!(rel_vec_resid(uu.coords(), u.coords()) < 1e-13);
    assert!(rel_vec_resid(ustar.coords(), u.coords()) < 1e-13);
}

#[test]
fn classification_examples() {
    let tol = Tolerance::default();
    let mut r = rng(13);
    // identity of M_n: unitary, complete; abelian iff n = 1
    for n in [1usize, 2, 3] {
        let f = MatrixFactor::rectangular(n, n).unwrap();
        let s: SpaceRef = Arc::new(f.clone());
        let id = Element::new(s, identity_element(&f));
        let class = classify_tripotent(&id, &tol, &mut r).unwrap();
        assert!(class.unitary && class.complete);
        assert_eq!(class.abelian.value, n == 1, "abelian iff n=1 (n={n})");
    }
    // E11 in M2: minimal, abelian, not complete
    let (f, s) = m2();
    let e11 = Element::new(s, matrix_unit(&f, 0, 0));
    let class = classify_tripotent(&e11, &tol, &mut r).unwrap();
    assert!(class.minimal && class.abelian.value && !class.complete);
    // antisymmetric 3×3: the single rotation block is complete but not unitary
    let fa = MatrixFactor::antisymmetric(3).unwrap();
    let sa: SpaceRef = Arc::new(fa.clone());
    let mut block = jbstar::CMat::zeros(3, 3);
    block[(0, 1)] = cr(1.0);
    block[(1, 0)] = cr(-1.0);
    let u = Element::new(sa, fa.extract(&block));
    let class = classify_tripotent(&u, &tol, &mut r).unwrap();
    assert!(class.complete && !class.unitary);
    // zero tripotent: neither complete nor minimal, Peirce-0 is everything
    let (_, s) = m2();
    let zero = Element::zero(s);
    let class = classify_tripotent(&zero, &tol, &mut r).unwrap();
    assert!(!class.complete && !class.minimal);
    assert_eq!(class.ranks, (0, 0, 4));
}

#[test]
fn odd_power_iteration_examples() {
    let tol = Tolerance::default();
    let (f, s) = m2();
    // a tripotent is a fixed point
    let id = Element::new(s.clone(), identity_element(&f));
    let out = range_tripotent_approx(&id, 50, &tol).unwrap();
    assert!(rel_vec_resid(out.coords(), id.coords()) < 1e-12);
    // 3·E11 converges to E11; oracle: the SVD of the input
    let x = Element::new(s.clone(), matrix_unit(&f, 0, 0).map(|z| z * cr(3.0)));
    let out = range_tripotent_approx(&x, 80, &tol).unwrap();
    assert!(rel_vec_resid(out.coords(), &matrix_unit(&f, 0, 0)) < 1e-9);
    // spin element with distinct spectral data converges to the top
    // tripotent; oracle: the closed-form classification
    let sp: SpaceRef = Arc::new(SpinFactor::new(4).unwrap());
    let mut r = rng(17);
    let x = Element::random(sp, &mut r);
    let u = range_tripotent_approx(&x, 120, &tol).unwrap();
    assert!(is_tripotent(&u, &tol).is_tripotent);
    assert_ne!(
        classify_spin_tripotent(u.coords(), &tol),
        SpinTripotentKind::None
    );
}

#[test]
fn extension_to_complete_examples() {
    let tol = Tolerance::default();
    let mut r = rng(19);
    // E11 in M2 extends to E11 + α E22, a unitary
    let (f, s) = m2();
    let e11 = Element::new(s.clone(), matrix_unit(&f, 0, 0));
    let v = extend_to_complete(&e11, &mut r, &tol).unwrap();
    let frame = peirce_frame(&v, &tol).unwrap();
    assert_eq!(frame.ranks(), (4, 0, 0), "unitary in M2");
    let diff = v.sub(&e11).unwrap();
    // the added part lives on E22 with unit modulus
    let w = f.embed(diff.coords());
    assert!(w[(0, 0)].norm() < 1e-9 && w[(0, 1)].norm() < 1e-9 && w[(1, 0)].norm() < 1e-9);
    assert!((w[(1, 1)].norm() - 1.0).abs() < 1e-9);

    // a minimal spin tripotent extends to u + α·conj(u), a unitary
    let sp: SpaceRef = Arc::new(SpinFactor::new(5).unwrap());
    let u = Element::new(
        sp.clone(),
        sp.make_tripotent(TripotentRequest::Minimal, &mut r).unwrap(),
    );
    let v = extend_to_complete(&u, &mut r, &tol).unwrap();
    assert_eq!(
        classify_spin_tripotent(v.coords(), &tol),
        SpinTripotentKind::Unitary
    );
    let added = v.sub(&u).unwrap();
    let conj_u = jbstar::linalg::conj_vec(u.coords());
    // added = α·conj(u): check colinearity
    let alpha = SpinFactor::ip(added.coords(), &conj_u) / cr(SpinFactor::ip(&conj_u, &conj_u).re);
    assert!((alpha.norm() - 1.0).abs() < 1e-8);
    assert!(rel_vec_resid(added.coords(), &conj_u.map(|z| z * alpha)) < 1e-8);

    // an already complete tripotent is returned unchanged
    let (f, s) = m2();
    let id = Element::new(s, identity_element(&f));
    let v = extend_to_complete(&id, &mut r, &tol).unwrap();
    assert!(rel_vec_resid(v.coords(), id.coords()) < 1e-12);
}

#[test]
fn sampled_finiteness_of_small_factors() {
    let tol = Tolerance::default();
    let mut r = rng(23);
    let f = MatrixFactor::rectangular(3, 3).unwrap();
    let s: SpaceRef = Arc::new(f.clone());
    let id = Element::new(s, identity_element(&f));
    let (finite, log) = is_finite_tripotent_sampled(&id, 12, &mut r, &tol).unwrap();
    assert!(finite, "log: {log:?}");
    assert!(log.iter().all(|t| t.unitary && t.completed_rank == t.ambient_rank));
}

#[test]
fn direct_sum_behaves_componentwise() {
    let tol = Tolerance::default();
    let mut r = rng(29);
    let spin3: SpaceRef = Arc::new(SpinFactor::new(3).unwrap());
    let f22 = MatrixFactor::rectangular(2, 2).unwrap();
    let rect: SpaceRef = Arc::new(f22.clone());
    let sum = direct_sum(vec![spin3.clone(), rect.clone()]);

    // a pair is a tripotent iff both components are
    let u1 = spin3.make_tripotent(TripotentRequest::Unitary, &mut r).unwrap();
    let u2 = f22.make_tripotent(TripotentRequest::Rank(1), &mut r).unwrap();
    let mut coords = CVec::zeros(7);
    coords.rows_mut(0, 3).copy_from(&u1);
    coords.rows_mut(3, 4).copy_from(&u2);
    let u = Element::new(sum.clone(), coords.clone());
    assert!(is_tripotent(&u, &tol).is_tripotent);
    // break one component
    let mut bad = coords.clone();
    bad[0] *= cr(2.0);
    assert!(!is_tripotent(&Element::new(sum.clone(), bad), &tol).is_tripotent);

    // a sum of one space is that space
    let single = direct_sum(vec![spin3.clone()]);
    assert_eq!(single.dim(), 3);
    let x = jbstar::linalg::random_cvec(3, &mut r);
    let y = jbstar::linalg::random_cvec(3, &mut r);
    let z = jbstar::linalg::random_cvec(3, &mut r);
    assert!(rel_vec_resid(&single.triple(&x, &y, &z), &spin3.triple(&x, &y, &z)) < 1e-15);

    // relation queries decompose componentwise
    let e1 = spin3.make_tripotent(TripotentRequest::Unitary, &mut r).unwrap();
    let e2 = f22.make_tripotent(TripotentRequest::Rank(2), &mut r).unwrap();
    let mut e_coords = CVec::zeros(7);
    e_coords.rows_mut(0, 3).copy_from(&e1);
    e_coords.rows_mut(3, 4).copy_from(&e2);
    let e = Element::new(sum.clone(), e_coords);
    for kind in [RelationKind::Leq2, RelationKind::Leq0] {
        let whole = relation(kind, &u, &e, &tol).unwrap().holds;
        let part1 = relation(
            kind,
            &Element::new(spin3.clone(), u1.clone()),
            &Element::new(spin3.clone(), e1.clone()),
            &tol,
        )
        .unwrap()
        .holds;
        let part2 = relation(
            kind,
            &Element::new(rect.clone(), u2.clone()),
            &Element::new(rect.clone(), e2.clone()),
            &tol,
        )
        .unwrap()
        .holds;
        assert_eq!(whole, part1 && part2, "{kind} decomposes");
    }

    // the sum norm is the maximum of the component norms
    let x = Element::new(sum, coords);
    let parts_max = SpinFactor::spin_norm(&u1).max(jbstar::linalg::op_norm(&f22.embed(&u2)));
    assert!((x.factor_norm().unwrap() - parts_max).abs() < 1e-12);
}
