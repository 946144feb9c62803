//! Exact integer-lattice kernel: matrices, Hermite and Smith normal forms,
//! canonical lattices, and `G`-stable ideals of `Z[G]`.
//!
//! Row-style HNF (upper echelon, positive pivots, entries above a pivot
//! reduced into `[0, pivot)`) is the single canonical form used everywhere,
//! so lattice equality is structural equality of bases.

mod ideal;
mod mat;

pub use ideal::GStableIdeal;
pub use mat::{
    determinant, left_kernel, row_hnf_with_transform, smith_normal_form, solve_left, IntMatrix,
    SnfDecomposition,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A full or partial rank sublattice of `Z^n` with basis rows in canonical
/// Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfLattice {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl HnfLattice {
    /// Canonical HNF lattice spanned by the rows of `m`.
    pub fn from_rows(m: &IntMatrix) -> Self {
        let (h, _) = mat::row_hnf_with_transform(m);
        HnfLattice {
            ambient_dim: m.cols(),
            basis: h,
        }
    }

    /// The zero lattice in `Z^n`.
    pub fn zero(ambient_dim: usize) -> Self {
        HnfLattice {
            ambient_dim,
            basis: IntMatrix::zero(0, ambient_dim),
        }
    }

    /// The full lattice `Z^n`.
    pub fn full(ambient_dim: usize) -> Self {
        HnfLattice {
            ambient_dim,
            basis: IntMatrix::identity(ambient_dim),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical basis rows (possibly empty for the zero lattice).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    /// Whether this is all of `Z^n`.
    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim && self.basis == IntMatrix::identity(self.ambient_dim)
    }

    /// Decides membership of `v` by back-substitution along pivot columns.
    /// Returns the coefficient vector over the basis rows when `v` lies in
    /// the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let mut rem: Vec<BigInt> = v.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.basis.rows()];
        for i in 0..self.basis.rows() {
            let p = self.pivot_col(i);
            if rem[p].is_zero() {
                continue;
            }
            let (q, r) = rem[p].div_rem(self.basis.get(i, p));
            if !r.is_zero() {
                return None;
            }
            for c in 0..self.ambient_dim {
                let t = &rem[c] - &q * self.basis.get(i, c);
                rem[c] = t;
            }
            coeffs[i] = q;
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &HnfLattice) -> bool {
        (0..other.basis.rows()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Lattice sum (HNF of the stacked bases).
    pub fn sum(&self, other: &HnfLattice) -> HnfLattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        HnfLattice::from_rows(&self.basis.stack(&other.basis))
    }

    /// Lattice intersection, computed from the left kernel of the stacked
    /// basis matrix.
    pub fn intersect(&self, other: &HnfLattice) -> HnfLattice {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let stacked = self.basis.stack(&other.basis);
        let kernel = mat::left_kernel(&stacked);
        // Each kernel row (x | y) satisfies x*B1 = -y*B2, an element of the
        // intersection.
        let r1 = self.basis.rows();
        let mut gens = IntMatrix::zero(kernel.rows(), self.ambient_dim);
        for i in 0..kernel.rows() {
            for c in 0..self.ambient_dim {
                let mut acc = BigInt::zero();
                for j in 0..r1 {
                    acc += kernel.get(i, j) * self.basis.get(j, c);
                }
                gens.set(i, c, acc);
            }
        }
        HnfLattice::from_rows(&gens)
    }

    /// Index `[Z^n : L]` for a full-rank lattice (product of pivots), `None`
    /// when the rank is deficient.
    pub fn index_in_ambient(&self) -> Option<BigInt> {
        if self.rank() != self.ambient_dim {
            return None;
        }
        let mut idx = BigInt::from(1);
        for i in 0..self.rank() {
            idx *= self.basis.get(i, self.pivot_col(i));
        }
        Some(idx.abs())
    }

    fn pivot_col(&self, row: usize) -> usize {
        (0..self.ambient_dim)
            .find(|&c| !self.basis.get(row, c).is_zero())
            .expect("HNF basis row cannot be zero")
    }
}

/// Invariant factors (> 1) and free rank of the quotient `Z^n / rowspan(m)`.
pub fn quotient_structure(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let snf = mat::smith_normal_form(m);
    let rank = snf.diag.iter().filter(|d| !d.is_zero()).count();
    let torsion: Vec<BigInt> = snf
        .diag
        .iter()
        .filter(|d| !d.is_zero() && **d != BigInt::from(1))
        .cloned()
        .collect();
    (torsion, m.cols() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn hnf_already_canonical() {
        let l = HnfLattice::from_rows(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(l.basis(), &m(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn hnf_euclidean_reduction() {
        // rows (2,4),(1,3) reduce to basis {(1,1),(0,2)}
        let l = HnfLattice::from_rows(&m(&[&[2, 4], &[1, 3]]));
        assert_eq!(l.basis(), &m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_identity() {
        let l = HnfLattice::from_rows(&IntMatrix::identity(3));
        assert!(l.is_full());
    }

    #[test]
    fn hnf_idempotent_and_order_independent() {
        let a = HnfLattice::from_rows(&m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]));
        let b = HnfLattice::from_rows(&m(&[&[2, 6, 5], &[3, 1, 4], &[1, 5, 9]]));
        assert_eq!(a, b);
        let again = HnfLattice::from_rows(a.basis());
        assert_eq!(a, again);
    }

    #[test]
    fn membership_back_substitution() {
        let l = HnfLattice::from_rows(&m(&[&[1, -1], &[0, 2]]));
        assert!(l.contains(&[BigInt::from(1), BigInt::from(1)]));
        assert!(!l.contains(&[BigInt::from(0), BigInt::from(1)]));
    }

    #[test]
    fn membership_matches_bruteforce_small() {
        // lattice of index 4 in Z^2
        let l = HnfLattice::from_rows(&m(&[&[2, 0], &[0, 2]]));
        for x in -4i64..5 {
            for y in -4i64..5 {
                let expect = x % 2 == 0 && y % 2 == 0;
                assert_eq!(l.contains(&[BigInt::from(x), BigInt::from(y)]), expect);
            }
        }
    }

    #[test]
    fn intersection_and_sum() {
        let a = HnfLattice::from_rows(&m(&[&[2, 0], &[0, 1]]));
        let b = HnfLattice::from_rows(&m(&[&[3, 0], &[0, 1]]));
        let i = a.intersect(&b);
        assert!(i.contains(&[BigInt::from(6), BigInt::from(0)]));
        assert!(!i.contains(&[BigInt::from(2), BigInt::from(0)]));
        let s = a.sum(&b);
        assert!(s.contains(&[BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn snf_divisibility_examples() {
        let s = mat::smith_normal_form(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diag, vec![BigInt::from(1), BigInt::from(6)]);
        let s = mat::smith_normal_form(&m(&[&[4, 0], &[0, 6]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(12)]);
        let s = mat::smith_normal_form(&m(&[&[0, 0], &[0, 0]]));
        assert!(s.diag.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn snf_transforms_are_unimodular_and_consistent() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let s = mat::smith_normal_form(&a);
        let prod = s.left.mul(&a).mul(&s.right);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(*prod.get(i, j), expect);
            }
        }
        assert_eq!(mat::determinant(&s.left).abs(), BigInt::from(1));
        assert_eq!(mat::determinant(&s.right).abs(), BigInt::from(1));
        // d_i | d_{i+1}
        for i in 0..2 {
            if !s.diag[i + 1].is_zero() {
                assert!((&s.diag[i + 1] % &s.diag[i]).is_zero());
            }
        }
    }

    #[test]
    fn snf_minor_gcd_oracle() {
        // prod of first k diagonal entries = gcd of all k x k minors
        use num_integer::Integer;
        let a = m(&[&[6, 4, 2], &[2, 8, 4], &[10, 2, 2]]);
        let s = mat::smith_normal_form(&a);
        for k in 1..=3usize {
            let mut g = BigInt::zero();
            let idx: Vec<usize> = (0..3).collect();
            for rows in combinations(&idx, k) {
                for cols in combinations(&idx, k) {
                    let sub = a.submatrix(&rows, &cols);
                    g = g.gcd(&mat::determinant(&sub));
                }
            }
            let mut p = BigInt::from(1);
            for d in s.diag.iter().take(k) {
                p *= d;
            }
            assert_eq!(p.abs(), g);
        }
    }

    fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..items.len() {
                cur.push(items[i]);
                rec(items, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(items, k, 0, &mut cur, &mut out);
        out
    }

    #[test]
    fn quotient_structure_examples() {
        let (tors, free) = quotient_structure(&m(&[&[6]]));
        assert_eq!(tors, vec![BigInt::from(6)]);
        assert_eq!(free, 0);
        let (tors, free) = quotient_structure(&IntMatrix::zero(0, 2));
        assert!(tors.is_empty());
        assert_eq!(free, 2);
    }
}
