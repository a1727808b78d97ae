use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative monomial `t_a` or `t_a t_b` (`a ≤ b`), variables 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    vars: [u8; 2],
    degree: u8,
}

impl Label {
    pub fn var(a: u8) -> Self {
        Label { vars: [a, 0], degree: 1 }
    }

    pub fn product(a: u8, b: u8) -> Self {
        Label {
            vars: [a.min(b), a.max(b)],
            degree: 2,
        }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            1 => write!(f, "t{}", self.vars[0]),
            _ => write!(f, "t{}t{}", self.vars[0], self.vars[1]),
        }
    }
}

/// The formal symbol `E_{i,j}(label)`, indices 1-based and distinct.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSymbol {
    pub i: u8,
    pub j: u8,
    pub label: Label,
}

impl EdgeSymbol {
    pub fn new(i: u8, j: u8, label: Label) -> Self {
        assert!(i != j && i > 0 && j > 0, "E symbol needs distinct 1-based indices");
        EdgeSymbol { i, j, label }
    }

    fn relabel(&self, sigma: &[u8]) -> Self {
        EdgeSymbol {
            i: sigma[self.i as usize - 1],
            j: sigma[self.j as usize - 1],
            label: self.label,
        }
    }
}

impl fmt::Display for EdgeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{},{}({})", self.i, self.j, self.label)
    }
}

/// Word of length one or two in the `E` symbols (products are not expanded).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<EdgeSymbol>);

impl Word {
    pub fn letter(e: EdgeSymbol) -> Self {
        Word(vec![e])
    }

    pub fn pair(e: EdgeSymbol, f: EdgeSymbol) -> Self {
        Word(vec![e, f])
    }

    pub fn letters(&self) -> &[EdgeSymbol] {
        &self.0
    }

    fn relabel(&self, sigma: &[u8]) -> Self {
        Word(self.0.iter().map(|e| e.relabel(sigma)).collect())
    }

    fn max_index(&self) -> u8 {
        self.0.iter().map(|e| e.i.max(e.j)).max().unwrap_or(0)
    }
}

/// Exact integer combination of words of length at most two.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalQuadratic {
    terms: BTreeMap<Word, BigInt>,
}

impl FormalQuadratic {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_word(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_letter(&mut self, e: EdgeSymbol, c: i64) {
        self.add_word(Word::letter(e), BigInt::from(c));
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (w, c) in &other.terms {
            self.add_word(w.clone(), c.clone());
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_word(w.clone(), c * s);
        }
        out
    }

    /// Concatenation product; both factors must be linear.
    pub fn mul_linear(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                assert!(u.0.len() == 1 && v.0.len() == 1, "product would exceed degree two");
                out.add_word(Word::pair(u.0[0], v.0[0]), a * b);
            }
        }
        out
    }

    /// Image under the index permutation `i ↦ sigma[i-1]`.
    pub fn permute(&self, sigma: &[u8]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_word(w.relabel(sigma), c.clone());
        }
        out
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Largest index occurring in any symbol.
    pub fn max_index(&self) -> u8 {
        self.terms.keys().map(Word::max_index).max().unwrap_or(0)
    }

    /// `Some(c)` when `self = c·other` exactly.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<BigRational> {
        if other.is_zero() {
            return self.is_zero().then(BigRational::one);
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let (w0, c0) = other.terms.iter().next()?;
        let ratio = BigRational::new(self.coefficient(w0), c0.clone());
        for (w, c) in &other.terms {
            if BigRational::from(self.coefficient(w)) != &ratio * BigRational::from(c.clone()) {
                return None;
            }
        }
        Some(ratio)
    }
}
