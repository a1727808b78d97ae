use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A group whose elements are stored in a canonical normal form, so that
/// equality of values is equality in the group.
pub trait GroupElement: Clone + Ord + Debug {
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Identity of the group this element lives in.
    fn identity_like(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// Group commutator `[a, b] = a b a⁻¹ b⁻¹`.
    fn commutator(&self, other: &Self) -> Self {
        self.op(other).op(&self.inverse()).op(&other.inverse())
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Finite formal sum `Σ c_g g` with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement<G: GroupElement> {
    terms: BTreeMap<G, BigRational>,
}

impl<G: GroupElement> Default for AlgebraElement<G> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<G: GroupElement> AlgebraElement<G> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_group(g: G) -> Self {
        Self::term(g, BigRational::one())
    }

    pub fn term(g: G, coef: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(g, coef);
        out
    }

    /// `c·e` where `e` is the identity of `like`'s group.
    pub fn scalar(like: &G, coef: BigRational) -> Self {
        Self::term(like.identity_like(), coef)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (G, BigRational)>) -> Self {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn add_term(&mut self, g: G, coef: BigRational) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(g);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, g: &G) -> BigRational {
        self.terms.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, &BigRational)> {
        self.terms.iter()
    }

    /// Sum of all coefficients (the augmentation map).
    pub fn augmentation(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), c * s)).collect(),
        }
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(g.op(h), a * b);
            }
        }
        out
    }

    /// The involution `Σ c_g g ↦ Σ c_g g⁻¹`.
    pub fn star(&self) -> Self {
        AlgebraElement {
            terms: self.terms.iter().map(|(g, c)| (g.inverse(), c.clone())).collect(),
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.star() == *self
    }

    /// Hermitian square `ξ* ξ`.
    pub fn hermitian_square(&self) -> Self {
        self.star().mul(self)
    }

    pub fn pow(&self, e: u32, like: &G) -> Self {
        let mut acc = Self::scalar(like, BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl<G: GroupElement> Add for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;

    fn add(self, rhs: Self) -> AlgebraElement<G> {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

impl<G: GroupElement> Sub for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;

    fn sub(self, rhs: Self) -> AlgebraElement<G> {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), -c.clone());
        }
        out
    }
}

impl<G: GroupElement> Neg for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;

    fn neg(self) -> AlgebraElement<G> {
        AlgebraElement {
            terms: self.terms.iter().map(|(g, c)| (g.clone(), -c.clone())).collect(),
        }
    }
}

impl<G: GroupElement> Mul for &AlgebraElement<G> {
    type Output = AlgebraElement<G>;

    fn mul(self, rhs: Self) -> AlgebraElement<G> {
        AlgebraElement::mul(self, rhs)
    }
}

/// `1 - g`.
pub fn one_minus<G: GroupElement>(g: &G) -> AlgebraElement<G> {
    AlgebraElement::from_terms([
        (g.identity_like(), BigRational::one()),
        (g.clone(), -BigRational::one()),
    ])
}

/// Combinatorial Laplacian `|S| - Σ_{s∈S} s` of the symmetrization of
/// `generators` (inverses added, duplicates removed).
pub fn laplacian<G: GroupElement>(identity: &G, generators: &[G]) -> AlgebraElement<G> {
    let set = symmetrize(generators);
    let mut out = AlgebraElement::scalar(identity, rational(set.len() as i64, 1));
    for s in set {
        out.add_term(s, -BigRational::one());
    }
    out
}

/// `½ Σ_{s∈S} (1-s)*(1-s)` over the same symmetrized set; equal to
/// [`laplacian`].
pub fn laplacian_from_squares<G: GroupElement>(generators: &[G]) -> AlgebraElement<G> {
    let half = rational(1, 2);
    symmetrize(generators)
        .iter()
        .fold(AlgebraElement::zero(), |acc, s| &acc + &one_minus(s).hermitian_square().scale(&half))
}

fn symmetrize<G: GroupElement>(generators: &[G]) -> Vec<G> {
    let mut set: Vec<G> = Vec::new();
    for s in generators {
        for t in [s.clone(), s.inverse()] {
            if !set.contains(&t) {
                set.push(t);
            }
        }
    }
    set.sort();
    set
}
