use num_rational::BigRational;
use serde::Serialize;

use super::element::{one_minus, rational, AlgebraElement, GroupElement};

/// Element `[[1,a,c],[0,1,b],[0,0,1]]` of the integral Heisenberg group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HeisenbergElt {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl HeisenbergElt {
    pub const IDENTITY: HeisenbergElt = HeisenbergElt { a: 0, b: 0, c: 0 };

    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        HeisenbergElt { a, b, c }
    }

    pub const fn x() -> Self {
        Self::new(1, 0, 0)
    }

    pub const fn y() -> Self {
        Self::new(0, 1, 0)
    }

    /// Central generator, `z = [x, y]`.
    pub const fn z() -> Self {
        Self::new(0, 0, 1)
    }

    pub fn pow(&self, n: i64) -> Self {
        let g = if n < 0 { self.inverse() } else { *self };
        let k = n.abs();
        HeisenbergElt::new(k * g.a, k * g.b, k * g.c + g.a * g.b * (k * (k - 1) / 2))
    }
}

impl GroupElement for HeisenbergElt {
    fn op(&self, o: &Self) -> Self {
        HeisenbergElt::new(self.a + o.a, self.b + o.b, self.c + o.c + self.a * o.b)
    }

    fn inverse(&self) -> Self {
        HeisenbergElt::new(-self.a, -self.b, self.a * self.b - self.c)
    }

    fn identity_like(&self) -> Self {
        Self::IDENTITY
    }
}

/// Element of the rank-three Heisenberg group: the 5×5 unipotent matrix with
/// top row `(1, a, c)`, right column `(c, b, 1)`. Product
/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Heisenberg3Elt {
    pub a: [i64; 3],
    pub b: [i64; 3],
    pub c: i64,
}

impl Heisenberg3Elt {
    pub const IDENTITY: Heisenberg3Elt = Heisenberg3Elt {
        a: [0; 3],
        b: [0; 3],
        c: 0,
    };

    pub fn x(i: usize) -> Self {
        let mut g = Self::IDENTITY;
        g.a[i] = 1;
        g
    }

    pub fn y(i: usize) -> Self {
        let mut g = Self::IDENTITY;
        g.b[i] = 1;
        g
    }

    pub fn z() -> Self {
        Heisenberg3Elt { c: 1, ..Self::IDENTITY }
    }
}

impl GroupElement for Heisenberg3Elt {
    fn op(&self, o: &Self) -> Self {
        let dot: i64 = (0..3).map(|i| self.a[i] * o.b[i]).sum();
        Heisenberg3Elt {
            a: std::array::from_fn(|i| self.a[i] + o.a[i]),
            b: std::array::from_fn(|i| self.b[i] + o.b[i]),
            c: self.c + o.c + dot,
        }
    }

    fn inverse(&self) -> Self {
        let dot: i64 = (0..3).map(|i| self.a[i] * self.b[i]).sum();
        Heisenberg3Elt {
            a: self.a.map(|v| -v),
            b: self.b.map(|v| -v),
            c: dot - self.c,
        }
    }

    fn identity_like(&self) -> Self {
        Self::IDENTITY
    }
}

pub type HAlg = AlgebraElement<HeisenbergElt>;

/// `(1-g)*(1-g) = 2 - g - g⁻¹`.
pub fn square_of_one_minus<G: GroupElement>(g: &G) -> AlgebraElement<G> {
    one_minus(g).hermitian_square()
}

/// `X = (1-x)*(1-x)`.
pub fn x_elem() -> HAlg {
    square_of_one_minus(&HeisenbergElt::x())
}

pub fn y_elem() -> HAlg {
    square_of_one_minus(&HeisenbergElt::y())
}

pub fn z_elem() -> HAlg {
    square_of_one_minus(&HeisenbergElt::z())
}

/// Both sides of the sum-of-squares decomposition
///
/// `Z + ½(XY+YX) = ¼(X+Y)Z + ⅛ Σ (1-b)^δ (1-a)^ε (1-a)^ε̄ (1-b)^δ̄`
///
/// where the sum runs over `(a,b) ∈ {(x,y),(y,x)}` and the two choices each
/// of `(ε,ε̄), (δ,δ̄) ∈ {(*,·),(·,*)}` (eight terms).
pub fn sos_identity_sides() -> (HAlg, HAlg) {
    let (x, y, z) = (x_elem(), y_elem(), z_elem());
    let half = rational(1, 2);
    let lhs = &z + &(&(&x * &y) + &(&y * &x)).scale(&half);

    let gx = HeisenbergElt::x();
    let gy = HeisenbergElt::y();
    let mut rhs = (&(&x + &y) * &z).scale(&rational(1, 4));
    let eighth: BigRational = rational(1, 8);
    for (a, b) in [(gx, gy), (gy, gx)] {
        let (ua, ub) = (one_minus(&a), one_minus(&b));
        let (ua_s, ub_s) = (ua.star(), ub.star());
        for (e1, e2) in [(&ua_s, &ua), (&ua, &ua_s)] {
            for (d1, d2) in [(&ub_s, &ub), (&ub, &ub_s)] {
                let t = &(&(d1 * e1) * e2) * d2;
                rhs = &rhs + &t.scale(&eighth);
            }
        }
    }
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_law_examples() {
        let (x, y) = (HeisenbergElt::x(), HeisenbergElt::y());
        assert_eq!(x.op(&y), HeisenbergElt::new(1, 1, 1));
        assert_eq!(y.op(&x), HeisenbergElt::new(1, 1, 0));
        assert_eq!(x.commutator(&y), HeisenbergElt::z());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let g = HeisenbergElt::new(2, -3, 5);
        let mut acc = HeisenbergElt::IDENTITY;
        for n in 0..6 {
            assert_eq!(g.pow(n), acc);
            assert_eq!(g.pow(-n), acc.inverse());
            acc = acc.op(&g);
        }
    }

    #[test]
    fn heisenberg3_relations() {
        let z = Heisenberg3Elt::z();
        for i in 0..3 {
            assert_eq!(Heisenberg3Elt::x(i).commutator(&Heisenberg3Elt::y(i)), z);
            for j in 0..3 {
                assert!(Heisenberg3Elt::x(i).commutator(&Heisenberg3Elt::x(j)).is_identity());
                if i != j {
                    assert!(Heisenberg3Elt::x(i).commutator(&Heisenberg3Elt::y(j)).is_identity());
                }
            }
        }
    }

    #[test]
    fn sos_identity_is_exact() {
        let (lhs, rhs) = sos_identity_sides();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_self_adjoint());
    }
}
