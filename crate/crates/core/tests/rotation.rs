use std::f64::consts::PI;

use num_complex::Complex64;
use opineq_core::group_algebra::{
    laplacian, one_minus, sos_identity_sides, z_elem, AlgebraElement, GroupElement, Heisenberg3Elt, HeisenbergElt,
};
use opineq_core::linalg::kron;
use opineq_core::rotation::{almost_mathieu, farey_grid, tensor_operator, RationalAngle, RotationRep, Site, TensorTerm};
use opineq_core::{CMatrix, HermitianOperator};
use proptest::prelude::*;

fn rep(p: u32, q: u32) -> RotationRep {
    RotationRep::new(RationalAngle::new(p, q).unwrap())
}

fn spectrum(op: &HermitianOperator) -> Vec<f64> {
    op.eigenvalues().unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn operators_from_the_definition() {
    for a in farey_grid(12) {
        let r = RotationRep::new(a);
        let q = a.q() as usize;
        let theta = a.p() as f64 / a.q() as f64;
        let x = CMatrix::from_fn(q, |i, j| {
            let v = if i == j { 2.0 - 2.0 * (2.0 * PI * i as f64 * theta).cos() } else { 0.0 };
            Complex64::new(v, 0.0)
        });
        let y = CMatrix::from_fn(q, |i, j| {
            let mut v = if i == j { 2.0 } else { 0.0 };
            if (i + 1) % q == j {
                v -= 1.0;
            }
            if (j + 1) % q == i {
                v -= 1.0;
            }
            Complex64::new(v, 0.0)
        });
        assert!(r.x().to_matrix().max_abs_diff(&x) < 1e-12);
        assert!(r.y().to_matrix().max_abs_diff(&y) < 1e-12);
        assert!((r.z() - 4.0 * (PI * theta).sin().powi(2)).abs() < 1e-12);
        assert!(r.pi_x().is_unitary(1e-12) && r.pi_y().is_unitary(1e-12));
        let lo = spectrum(r.x())[0].min(spectrum(r.y())[0]);
        let hi = r.x().max_eigenvalue().unwrap().max(r.y().max_eigenvalue().unwrap());
        assert!(lo >= -1e-12 && hi <= 4.0 + 1e-12);
    }
}

#[test]
fn half_turn_and_trivial_angle() {
    let r = rep(1, 2);
    let c = |v: f64| Complex64::new(v, 0.0);
    assert!(r.pi_x().max_abs_diff(&CMatrix::diagonal(&[c(1.0), c(-1.0)])) < 1e-15);
    assert_eq!(r.pi_y(), CMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap());
    assert!(r.pi_z().max_abs_diff(&CMatrix::identity(2).scale(c(-1.0))) < 1e-15);
    let t = RotationRep::new(RationalAngle::ZERO);
    for m in [t.pi_x(), t.pi_y(), t.pi_z()] {
        assert_eq!(m, CMatrix::identity(1));
    }
    let h = almost_mathieu(RationalAngle::ZERO, 3.0).unwrap();
    assert!((h.entry(0, 0).re - 5.0).abs() < 1e-15);
}

#[test]
fn commutator_is_central_phase() {
    let r = rep(1, 3);
    let comm = &(&(&r.pi_x() * &r.pi_y()) * &r.pi_x().adjoint()) * &r.pi_y().adjoint();
    let phase = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    assert!(comm.max_abs_diff(&CMatrix::identity(3).scale(phase)) < 1e-12);
}

#[test]
fn evaluation_examples() {
    let r = rep(1, 3);
    let delta = laplacian(&HeisenbergElt::IDENTITY, &[HeisenbergElt::x(), HeisenbergElt::y()]);
    let sum = r.x() + r.y();
    assert!(r.evaluate(&delta).max_abs_diff(&sum.to_matrix()) < 1e-12);
    let z = one_minus(&HeisenbergElt::z()).hermitian_square();
    assert_eq!(z, z_elem());
    let s = (PI / 3.0).sin();
    assert!(r.evaluate(&z).max_abs_diff(&CMatrix::identity(3).scale(Complex64::new(4.0 * s * s, 0.0))) < 1e-12);
    let (lhs, rhs) = sos_identity_sides();
    assert!(r.evaluate(&lhs).max_abs_diff(&r.evaluate(&rhs)) < 1e-12);
    let xi = &one_minus(&HeisenbergElt::x()) * &one_minus(&HeisenbergElt::y());
    assert!(r.evaluate(&xi.star()).max_abs_diff(&r.evaluate(&xi).adjoint()) < 1e-12);
}

#[test]
fn tensor_examples() {
    let r = rep(1, 2);
    let x1 = tensor_operator(&r, &[TensorTerm::new(1.0, &[Site::X, Site::I])]).unwrap();
    assert_eq!(x1, HermitianOperator::real_diagonal(&[0.0, 0.0, 4.0, 4.0]));
    let mixed = tensor_operator(
        &r,
        &[TensorTerm::new(1.0, &[Site::X, Site::Y]), TensorTerm::new(1.0, &[Site::Y, Site::X])],
    )
    .unwrap();
    assert!((mixed.trace() - 32.0).abs() < 1e-12);
    assert!(mixed.to_matrix().is_hermitian(0.0));
}

#[test]
fn three_site_ordering_matches_rank_three_group() {
    for (p, q) in [(1, 2), (1, 3), (2, 5)] {
        let r = rep(p, q);
        let sq = |g: Heisenberg3Elt| one_minus(&g).hermitian_square();
        let x1y2 = sq(Heisenberg3Elt::x(0)).mul(&sq(Heisenberg3Elt::y(1)));
        let y1x3 = sq(Heisenberg3Elt::y(0)).mul(&sq(Heisenberg3Elt::x(2)));
        let via_group = r.evaluate3(&(&x1y2 + &y1x3));
        let via_kron = tensor_operator(
            &r,
            &[TensorTerm::new(1.0, &[Site::X, Site::Y, Site::I]), TensorTerm::new(1.0, &[Site::Y, Site::I, Site::X])],
        )
        .unwrap();
        assert!(via_group.max_abs_diff(&via_kron.to_matrix()) < 1e-12);
        let z3 = sq(Heisenberg3Elt::z());
        let s = (PI * p as f64 / q as f64).sin();
        let expect = CMatrix::identity(q as usize * q as usize * q as usize).scale(Complex64::new(4.0 * s * s, 0.0));
        assert!(r.evaluate3(&z3).max_abs_diff(&expect) < 1e-12);
        let alt = kron(&kron(r.x(), r.y()).unwrap(), &HermitianOperator::identity(q as usize)).unwrap();
        let first = r.evaluate3(&x1y2);
        assert!(first.max_abs_diff(&alt.to_matrix()) < 1e-12);
    }
}

#[test]
fn swap_and_reflection_symmetries() {
    for a in farey_grid(30) {
        let r = RotationRep::new(a);
        let b = RotationRep::new(a.reflect());
        for mu in [1.0, 2.0] {
            let xy = spectrum(&(r.x() + &r.y().scale(mu)));
            let yx = spectrum(&(r.y() + &r.x().scale(mu)));
            let reflected = spectrum(&(b.x() + &b.y().scale(mu)));
            assert!(close(&xy, &yx, 1e-9), "swap at {a}");
            assert!(close(&xy, &reflected, 1e-9), "reflection at {a}");
        }
    }
}

#[test]
fn trace_of_x() {
    for a in farey_grid(40).into_iter().filter(|a| a.p() != 0) {
        let r = RotationRep::new(a);
        assert!((r.x().trace() - 2.0 * a.q() as f64).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn representation_is_multiplicative(
        (p, q) in (1u32..12).prop_flat_map(|q| (0..q, Just(q))),
        g in (-4..=4i64, -4..=4i64, -6..=6i64),
        h in (-4..=4i64, -4..=4i64, -6..=6i64),
    ) {
        prop_assume!(num_integer::gcd(p, q) == 1);
        let r = rep(p, q);
        let (g, h) = (HeisenbergElt::new(g.0, g.1, g.2), HeisenbergElt::new(h.0, h.1, h.2));
        prop_assert!((&r.pi(&g) * &r.pi(&h)).max_abs_diff(&r.pi(&g.op(&h))) < 1e-12);
        let one = AlgebraElement::from_group(g);
        prop_assert!(r.evaluate(&one.star()).max_abs_diff(&r.pi(&g).adjoint()) < 1e-12);
    }
}
