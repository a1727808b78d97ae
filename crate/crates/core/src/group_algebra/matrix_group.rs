use serde::Serialize;

use super::element::{rational, AlgebraElement, GroupElement};
use crate::error::{invalid, Result};

/// Largest matrix size accepted; keeps cofactor arithmetic in `i128`.
pub const MAX_MATRIX_SIZE: usize = 8;

/// Element of `SL_n(ℤ/qℤ)`, entries stored as residues in `0..q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteMatrixElt {
    n: usize,
    q: u64,
    entries: Vec<u64>,
}

impl FiniteMatrixElt {
    pub fn identity(n: usize, q: u64) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % q;
        }
        FiniteMatrixElt { n, q, entries }
    }

    /// Checked constructor: entries are reduced mod `q` and the determinant
    /// must be 1.
    pub fn from_entries(n: usize, q: u64, entries: &[i64]) -> Result<Self> {
        check_params(n, q)?;
        if entries.len() != n * n {
            return invalid(format!("expected {} entries, got {}", n * n, entries.len()));
        }
        let m = FiniteMatrixElt {
            n,
            q,
            entries: entries.iter().map(|&v| v.rem_euclid(q as i64) as u64).collect(),
        };
        if m.det() != 1 % q {
            return invalid(format!("determinant {} is not 1 mod {q}", m.det()));
        }
        Ok(m)
    }

    /// Elementary matrix `e_{i,j}(r)` with 1-based indices.
    pub fn elementary(n: usize, q: u64, i: usize, j: usize, r: i64) -> Result<Self> {
        check_params(n, q)?;
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return invalid(format!("elementary index ({i}, {j}) invalid for n = {n}"));
        }
        let mut m = Self::identity(n, q);
        m.entries[(i - 1) * n + (j - 1)] = r.rem_euclid(q as i64) as u64;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.n + col]
    }

    pub fn det(&self) -> u64 {
        let a: Vec<i128> = self.entries.iter().map(|&v| v as i128).collect();
        (bareiss_det(self.n, a).rem_euclid(self.q as i128)) as u64
    }

    fn mul_mod(&self, o: &Self) -> Self {
        assert!(self.n == o.n && self.q == o.q, "mismatched matrix groups");
        let (n, q) = (self.n, self.q);
        let mut entries = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = (entries[i * n + j] + a * o.entries[k * n + j]) % q;
                }
            }
        }
        FiniteMatrixElt { n, q, entries }
    }

    /// Adjugate, which is the inverse since the determinant is 1.
    fn adjugate(&self) -> Self {
        let (n, q) = (self.n, self.q as i128);
        let mut entries = vec![0u64; n * n];
        if n == 1 {
            entries[0] = 1 % self.q;
        }
        for i in 0..n {
            for j in 0..n {
                if n == 1 {
                    break;
                }
                // C_{ij} from the minor deleting row i and column j, stored at (j, i).
                let mut minor = Vec::with_capacity((n - 1) * (n - 1));
                for r in (0..n).filter(|&r| r != i) {
                    for c in (0..n).filter(|&c| c != j) {
                        minor.push(self.entries[r * n + c] as i128);
                    }
                }
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                entries[j * n + i] = (sign * bareiss_det(n - 1, minor)).rem_euclid(q) as u64;
            }
        }
        FiniteMatrixElt { n, q: self.q, entries }
    }
}

fn check_params(n: usize, q: u64) -> Result<()> {
    if n == 0 || n > MAX_MATRIX_SIZE {
        return invalid(format!("matrix size {n} outside 1..={MAX_MATRIX_SIZE}"));
    }
    if q == 0 || q > (1 << 20) {
        return invalid(format!("modulus {q} outside 1..=2^20"));
    }
    Ok(())
}

/// Fraction-free Gaussian elimination over the integers.
fn bareiss_det(n: usize, mut a: Vec<i128>) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign * a[(n - 1) * n + n - 1]
}

impl GroupElement for FiniteMatrixElt {
    fn op(&self, other: &Self) -> Self {
        self.mul_mod(other)
    }

    fn inverse(&self) -> Self {
        self.adjugate()
    }

    fn identity_like(&self) -> Self {
        Self::identity(self.n, self.q)
    }
}

/// `E_{i,j}(r) = 2 - e_{i,j}(r) - e_{i,j}(r)*` in `ℝ[SL_n(ℤ/qℤ)]`.
pub fn e_term(n: usize, q: u64, i: usize, j: usize, r: i64) -> Result<AlgebraElement<FiniteMatrixElt>> {
    let e = FiniteMatrixElt::elementary(n, q, i, j, r)?;
    let mut out = AlgebraElement::scalar(&e, rational(2, 1));
    out.add_term(e.inverse(), rational(-1, 1));
    out.add_term(e, rational(-1, 1));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: &'static str,
    pub checked: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteinbergReport {
    pub n: usize,
    pub q: u64,
    pub relations: Vec<RelationCheck>,
}

impl SteinbergReport {
    pub fn pass(&self) -> bool {
        self.relations.iter().all(|r| r.failures == 0)
    }
}

/// Exhaustively checks the Steinberg relations on all index patterns and all
/// residue pairs `(r, s)`:
///
/// * `e_ij(r) e_ij(s) = e_ij(r+s)`
/// * `[e_ij(r), e_jk(s)] = e_ik(rs)` for distinct `i, j, k`
/// * `[e_ij(r), e_kl(s)] = 1` when `j ≠ k` and `i ≠ l`
pub fn steinberg_check(n: usize, q: u64) -> Result<SteinbergReport> {
    check_params(n, q)?;
    let e = |i, j, r: u64| FiniteMatrixElt::elementary(n, q, i, j, r as i64);
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (1..=n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut additive = RelationCheck {
        relation: "e_ij(r) e_ij(s) = e_ij(r+s)",
        checked: 0,
        failures: 0,
    };
    let mut commutator = RelationCheck {
        relation: "[e_ij(r), e_jk(s)] = e_ik(rs)",
        checked: 0,
        failures: 0,
    };
    let mut commuting = RelationCheck {
        relation: "[e_ij(r), e_kl(s)] = 1 for j != k, i != l",
        checked: 0,
        failures: 0,
    };
    for &(i, j) in &pairs {
        for r in 0..q {
            let a = e(i, j, r)?;
            for s in 0..q {
                let b = e(i, j, s)?;
                additive.checked += 1;
                if a.op(&b) != e(i, j, (r + s) % q)? {
                    additive.failures += 1;
                }
                for &(k, l) in &pairs {
                    let c = e(k, l, s)?;
                    if k == j && l != i {
                        commutator.checked += 1;
                        if a.commutator(&c) != e(i, l, (r * s) % q)? {
                            commutator.failures += 1;
                        }
                    } else if j != k && i != l {
                        commuting.checked += 1;
                        if !a.commutator(&c).is_identity() {
                            commuting.failures += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(SteinbergReport {
        n,
        q,
        relations: vec![additive, commutator, commuting],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_determinant() {
        let m = FiniteMatrixElt::from_entries(3, 7, &[2, 1, 0, 1, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(m.op(&m.inverse()), FiniteMatrixElt::identity(3, 7));
        assert_eq!(m.inverse().det(), 1);
        assert!(FiniteMatrixElt::from_entries(2, 5, &[2, 0, 0, 1]).is_err());
    }

    #[test]
    fn commutator_example_mod_seven() {
        let a = FiniteMatrixElt::elementary(3, 7, 1, 2, 1).unwrap();
        let b = FiniteMatrixElt::elementary(3, 7, 2, 3, 1).unwrap();
        assert_eq!(a.commutator(&b), FiniteMatrixElt::elementary(3, 7, 1, 3, 1).unwrap());
    }

    #[test]
    fn e_term_mod_two_is_two_minus_two_e() {
        let t = e_term(3, 2, 1, 2, 1).unwrap();
        let e = FiniteMatrixElt::elementary(3, 2, 1, 2, 1).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.coefficient(&FiniteMatrixElt::identity(3, 2)), rational(2, 1));
        assert_eq!(t.coefficient(&e), rational(-2, 1));
        assert!(e_term(3, 2, 1, 2, 0).unwrap().is_zero());
    }

    #[test]
    fn steinberg_relations_hold_mod_five() {
        let report = steinberg_check(3, 5).unwrap();
        assert!(report.pass(), "{report:?}");
        assert!(report.relations.iter().all(|r| r.checked > 0));
    }
}
