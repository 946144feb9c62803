//! Dense arbitrary-precision integer matrices and their normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A rectangular matrix over `Z` with exact entries, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
        }
        let nrows = rows.len();
        IntMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, t);
                }
            }
        }
        out
    }

    /// Vertical stack `[self; other]`.
    pub fn stack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zero(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a -= q * row_b
    fn row_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = self.get(a, j) - q * self.get(b, j);
            self.set(a, j, t);
        }
    }

    fn col_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = self.get(i, a) - q * self.get(i, b);
            self.set(i, a, t);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let t = -self.get(r, j);
            self.set(r, j, t);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let t = -self.get(i, c);
            self.set(i, c, t);
        }
    }
}

/// Row-style Hermite normal form by Euclidean row elimination.
///
/// Returns `(H, U)` with `U` unimodular, `U * M = H`, `H` in canonical form
/// with zero rows removed. The rows of `U` beyond the rank of `M` span the
/// left kernel of `M`.
pub fn row_hnf_with_transform(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut pivot_row = 0usize;
    for col in 0..h.cols() {
        if pivot_row == h.rows() {
            break;
        }
        // eliminate entries below pivot_row in this column
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..h.rows() {
                if !h.get(i, col).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if h.get(i, col).abs() < h.get(b, col).abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for i in (pivot_row + 1)..h.rows() {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = div_round(h.get(i, col), h.get(pivot_row, col));
                h.row_sub_mul(i, pivot_row, &q);
                u.row_sub_mul(i, pivot_row, &q);
                if !h.get(i, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // reduce entries above the pivot into [0, pivot)
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(h.get(pivot_row, col));
            h.row_sub_mul(i, pivot_row, &q);
            u.row_sub_mul(i, pivot_row, &q);
        }
        pivot_row += 1;
    }
    // drop zero rows from H (they are exactly rows pivot_row..)
    let basis = IntMatrix::from_rows(
        (0..pivot_row).map(|i| h.row(i).to_vec()).collect(),
        h.cols(),
    );
    (basis, u)
}

/// Basis of the left kernel `{ x : x * M = 0 }` as rows.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = row_hnf_with_transform(m);
    let rank = h.rows();
    IntMatrix::from_rows(
        (rank..m.rows()).map(|i| u.row(i).to_vec()).collect(),
        m.rows(),
    )
}

/// Solves `x * M = t` over `Z`. Returns one solution when `t` lies in the
/// row lattice of `M`.
pub fn solve_left(m: &IntMatrix, t: &[BigInt]) -> Option<Vec<BigInt>> {
    let (h, u) = row_hnf_with_transform(m);
    let lat = super::HnfLattice {
        ambient_dim: m.cols(),
        basis: h,
    };
    let y = lat.coordinates(t)?;
    let mut x = vec![BigInt::zero(); m.rows()];
    for (i, yi) in y.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        for j in 0..m.rows() {
            let t = &x[j] + yi * u.get(i, j);
            x[j] = t;
        }
    }
    Some(x)
}

/// Smith normal form data: `left * M * right = diag(diag)`.
pub struct SnfDecomposition {
    pub diag: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Smith normal form with unimodular transforms; diagonal entries are
/// non-negative and satisfy the divisibility chain `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &IntMatrix) -> SnfDecomposition {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows());
    let mut right = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());
    let mut t = 0usize;
    while t < n {
        // find a nonzero entry of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..a.rows() {
            for j in t..a.cols() {
                if !a.get(i, j).is_zero() {
                    best = match best {
                        None => Some((i, j)),
                        Some((bi, bj)) => {
                            if a.get(i, j).abs() < a.get(bi, bj).abs() {
                                Some((i, j))
                            } else {
                                Some((bi, bj))
                            }
                        }
                    };
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap_rows(t, bi);
        left.swap_rows(t, bi);
        a.swap_cols(t, bj);
        right.swap_cols(t, bj);
        // clear row and column t
        let mut clean = true;
        for i in (t + 1)..a.rows() {
            if !a.get(i, t).is_zero() {
                let q = div_round(a.get(i, t), a.get(t, t));
                a.row_sub_mul(i, t, &q);
                left.row_sub_mul(i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        for j in (t + 1)..a.cols() {
            if !a.get(t, j).is_zero() {
                let q = div_round(a.get(t, j), a.get(t, t));
                a.col_sub_mul(j, t, &q);
                right.col_sub_mul(j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the remaining block by a[t][t]
        let mut fixed = true;
        'outer: for i in (t + 1)..a.rows() {
            for j in (t + 1)..a.cols() {
                if !(a.get(i, j) % a.get(t, t)).is_zero() {
                    // add row i to row t, then restart elimination at t
                    for c in 0..a.cols() {
                        let v = a.get(t, c) + a.get(i, c);
                        a.set(t, c, v);
                    }
                    for c in 0..left.cols() {
                        let v = left.get(t, c) + left.get(i, c);
                        left.set(t, c, v);
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let mut diag = Vec::with_capacity(n);
    for i in 0..n {
        diag.push(a.get(i, i).clone());
    }
    SnfDecomposition { diag, left, right }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let swap = (k + 1..n).find(|&i| !a.get(i, k).is_zero());
            match swap {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
            a.set(i, k, BigInt::zero());
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1).clone()
}

/// Rounded division (quotient minimizing the remainder's absolute value),
/// used to keep Euclidean elimination entries small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

// External interface: matrices serialize as JSON arrays of arrays of decimal
// strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        let cols = rows.first().map_or(0, |r| r.len());
        let mut parsed = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(D::Error::custom("ragged matrix rows"));
            }
            let mut row = Vec::with_capacity(cols);
            for s in r {
                row.push(
                    s.parse::<BigInt>()
                        .map_err(|e| D::Error::custom(format!("bad integer '{s}': {e}")))?,
                );
            }
            parsed.push(row);
        }
        Ok(IntMatrix::from_rows(parsed, cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_consistency() {
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[1, 3, 5], &[7, 8, 9]]);
        let (h, u) = row_hnf_with_transform(&m);
        // U*M agrees with H on the first rank rows and is zero after
        let um = u.mul(&m);
        for i in 0..h.rows() {
            assert_eq!(um.row(i), h.row(i));
        }
        for i in h.rows()..m.rows() {
            assert!(um.row(i).iter().all(|x| x.is_zero()));
        }
        assert_eq!(determinant(&u).abs(), BigInt::one());
    }

    #[test]
    fn kernel_rows_annihilate() {
        let m = IntMatrix::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]);
        let k = left_kernel(&m);
        assert_eq!(k.rows(), 2);
        let prod = k.mul(&m);
        assert!(prod.is_zero());
    }

    #[test]
    fn solve_left_roundtrip() {
        let m = IntMatrix::from_i64(&[&[2, 1, 0], &[0, 3, 1]]);
        let t = vec![BigInt::from(2), BigInt::from(7), BigInt::from(2)];
        let x = solve_left(&m, &t).unwrap();
        let xm = IntMatrix::from_rows(vec![x], m.rows()).mul(&m);
        assert_eq!(xm.row(0), &t[..]);
        assert!(solve_left(&m, &[BigInt::from(1), BigInt::zero(), BigInt::zero()]).is_none());
    }

    #[test]
    fn json_round_trip() {
        let m = IntMatrix::from_i64(&[&[1, -2], &[30000000000000, 4]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1","-2"],["30000000000000","4"]]"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }
}
