use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::RationalAngle;
use crate::error::{invalid, Result};
use crate::group_algebra::{AlgebraElement, Heisenberg3Elt, HeisenbergElt};
use crate::linalg::{CMatrix, HermitianOperator};

/// The `q`-dimensional irreducible representation `π_θ` of the Heisenberg
/// group at `θ = p/q`, with the images of `X = (1-x)*(1-x)`, `Y` and `Z`.
///
/// `π(x) δ_j = e^{2πijθ} δ_j`, `π(y) δ_j = δ_{j+1}`, `π(z) = e^{2πiθ}`.
#[derive(Clone, Debug)]
pub struct RotationRep {
    angle: RationalAngle,
    x: HermitianOperator,
    y: HermitianOperator,
    z: f64,
}

impl RotationRep {
    pub fn new(angle: RationalAngle) -> Self {
        let q = angle.q() as usize;
        let x = HermitianOperator::real_diagonal(&(0..q).map(|j| 2.0 * angle.b(j as i64)).collect::<Vec<_>>());
        let mut y = vec![0.0; q * q];
        for j in 0..q {
            y[j * q + j] += 2.0;
            let k = (j + 1) % q;
            y[k * q + j] -= 1.0;
            y[j * q + k] -= 1.0;
        }
        let y = HermitianOperator::from_real_symmetric(q, y).expect("shift Laplacian is symmetric");
        RotationRep {
            angle,
            x,
            y,
            z: angle.z_scalar(),
        }
    }

    pub fn angle(&self) -> RationalAngle {
        self.angle
    }

    pub fn dim(&self) -> usize {
        self.angle.q() as usize
    }

    /// `X_θ = diag(2 b_j)`.
    pub fn x(&self) -> &HermitianOperator {
        &self.x
    }

    /// `Y_θ = 2 - S - S*` for the cyclic shift `S`.
    pub fn y(&self) -> &HermitianOperator {
        &self.y
    }

    /// `Z_θ = 4 sin² πθ` (a scalar).
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Diagonal of `X_θ`.
    pub fn x_diagonal(&self) -> Vec<f64> {
        let q = self.dim();
        (0..q).map(|j| self.x.real_part()[j * q + j]).collect()
    }

    /// `X_θ Y_θ + Y_θ X_θ`, entrywise `(x_j + x_k) Y_jk` since `X_θ` is diagonal.
    pub fn xy_anticommutator(&self) -> HermitianOperator {
        let q = self.dim();
        let d = self.x_diagonal();
        let y = self.y.real_part();
        let data = (0..q * q).map(|k| (d[k / q] + d[k % q]) * y[k]).collect();
        HermitianOperator::from_real_symmetric(q, data).expect("anticommutator of symmetric matrices")
    }

    pub fn pi_x(&self) -> CMatrix {
        self.pi(&HeisenbergElt::x())
    }

    pub fn pi_y(&self) -> CMatrix {
        self.pi(&HeisenbergElt::y())
    }

    pub fn pi_z(&self) -> CMatrix {
        self.pi(&HeisenbergElt::z())
    }

    /// `π(a,b,c) = S^b D^a e^{2πicθ}`, using `(a,b,c) = y^b x^a z^c`.
    pub fn pi(&self, g: &HeisenbergElt) -> CMatrix {
        let q = self.dim();
        let phase = Complex64::from_polar(1.0, self.angle.turn(g.c));
        let shift = g.b.rem_euclid(q as i64) as usize;
        let mut m = CMatrix::zeros(q);
        for j in 0..q {
            let v = Complex64::from_polar(1.0, self.angle.turn(g.a * j as i64)) * phase;
            m.set((j + shift) % q, j, v);
        }
        m
    }

    /// `π^{⊗3}` on the rank-three Heisenberg group: `x_i, y_i` act on tensor
    /// site `i`, `z` by the scalar `e^{2πiθ}`.
    pub fn pi3(&self, g: &Heisenberg3Elt) -> CMatrix {
        let site = |i: usize| self.pi(&HeisenbergElt::new(g.a[i], g.b[i], 0));
        let phase = Complex64::from_polar(1.0, self.angle.turn(g.c));
        site(0).kron(&site(1)).kron(&site(2)).scale(phase)
    }

    /// Linear extension of `π` to the group algebra.
    pub fn evaluate(&self, xi: &AlgebraElement<HeisenbergElt>) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim());
        for (g, c) in xi.terms() {
            let c = c.to_f64().expect("finite rational");
            out = &out + &self.pi(g).scale(Complex64::new(c, 0.0));
        }
        out
    }

    pub fn evaluate_hermitian(&self, xi: &AlgebraElement<HeisenbergElt>) -> Result<HermitianOperator> {
        HermitianOperator::from_matrix(&self.evaluate(xi))
    }

    pub fn evaluate3(&self, xi: &AlgebraElement<Heisenberg3Elt>) -> CMatrix {
        let n = self.dim().pow(3);
        let mut out = CMatrix::zeros(n);
        for (g, c) in xi.terms() {
            let c = c.to_f64().expect("finite rational");
            out = &out + &self.pi3(g).scale(Complex64::new(c, 0.0));
        }
        out
    }
}

/// Almost Mathieu operator `H_{θ,λ} = π((λ/2)(x+x*) + y + y*)`: diagonal
/// `λ cos 2mπθ` plus the periodic shift and its adjoint.
pub fn almost_mathieu(angle: RationalAngle, lambda: f64) -> Result<HermitianOperator> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return invalid(format!("coupling λ must be positive, got {lambda}"));
    }
    let q = angle.q() as usize;
    let mut h = vec![0.0; q * q];
    for m in 0..q {
        h[m * q + m] += lambda * angle.c(m as i64);
        let k = (m + 1) % q;
        h[k * q + m] += 1.0;
        h[m * q + k] += 1.0;
    }
    HermitianOperator::from_real_symmetric(q, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_algebra::{laplacian, GroupElement};

    fn angle(p: u32, q: u32) -> RationalAngle {
        RationalAngle::new(p, q).unwrap()
    }

    #[test]
    fn half_turn_generators() {
        let rep = RotationRep::new(angle(1, 2));
        let c = |re: f64| Complex64::new(re, 0.0);
        assert!(rep.pi_x().max_abs_diff(&CMatrix::diagonal(&[c(1.0), c(-1.0)])) < 1e-15);
        assert!(rep.pi_y().max_abs_diff(&CMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()) < 1e-15);
        assert!(rep.pi_z().max_abs_diff(&CMatrix::identity(2).scale(c(-1.0))) < 1e-15);
    }

    #[test]
    fn multiplicative_on_samples() {
        let rep = RotationRep::new(angle(2, 7));
        let gs = [
            HeisenbergElt::new(1, 2, -3),
            HeisenbergElt::new(-4, 1, 5),
            HeisenbergElt::new(3, -5, 2),
        ];
        for g in &gs {
            for h in &gs {
                let lhs = &rep.pi(g) * &rep.pi(h);
                assert!(lhs.max_abs_diff(&rep.pi(&g.op(h))) < 1e-12);
            }
        }
    }

    #[test]
    fn laplacian_maps_to_x_plus_y() {
        let rep = RotationRep::new(angle(2, 5));
        let id = HeisenbergElt::IDENTITY;
        let delta = laplacian(&id, &[HeisenbergElt::x(), HeisenbergElt::y()]);
        let img = rep.evaluate_hermitian(&delta).unwrap();
        let sum = rep.x() + rep.y();
        assert!(img.to_matrix().max_abs_diff(&sum.to_matrix()) < 1e-12);
    }

    #[test]
    fn almost_mathieu_small_cases() {
        let h0 = almost_mathieu(RationalAngle::ZERO, 3.0).unwrap();
        assert_eq!(h0.real_part(), &[5.0]);
        let h = almost_mathieu(angle(1, 2), 2.0).unwrap();
        assert_eq!(h.real_part(), &[2.0, 2.0, 2.0, -2.0]);
        assert!(almost_mathieu(angle(1, 2), 0.0).is_err());
    }
}
