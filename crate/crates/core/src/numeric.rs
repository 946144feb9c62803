//! Small numeric helpers: compensated summation, error-tracked values, and
//! dense linear solves for the regulator systems.
//!
//! All numerics run in `f64` with explicit worst-case error accounting; the
//! verifiers reject any comparison whose certified bound exceeds the
//! requested tolerance instead of silently trusting the floats.

/// A value together with a worst-case absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approx {
    pub value: f64,
    pub abs_err: f64,
}

impl Approx {
    pub fn exact(value: f64) -> Self {
        Approx {
            value,
            abs_err: value.abs() * f64::EPSILON,
        }
    }

    pub fn new(value: f64, abs_err: f64) -> Self {
        Approx { value, abs_err }
    }

    pub fn add(self, other: Approx) -> Approx {
        let v = self.value + other.value;
        Approx {
            value: v,
            abs_err: self.abs_err + other.abs_err + v.abs() * f64::EPSILON,
        }
    }

    pub fn sub(self, other: Approx) -> Approx {
        self.add(Approx {
            value: -other.value,
            abs_err: other.abs_err,
        })
    }

    pub fn mul(self, other: Approx) -> Approx {
        let v = self.value * other.value;
        Approx {
            value: v,
            abs_err: self.abs_err * other.value.abs()
                + other.abs_err * self.value.abs()
                + self.abs_err * other.abs_err
                + v.abs() * f64::EPSILON,
        }
    }

    pub fn scale(self, k: f64) -> Approx {
        Approx {
            value: self.value * k,
            abs_err: self.abs_err * k.abs() + (self.value * k).abs() * f64::EPSILON,
        }
    }

    /// Natural log with a propagated bound; requires a value certainly > 0.
    pub fn ln(self) -> Approx {
        assert!(
            self.value > self.abs_err,
            "ln of a value not certainly positive"
        );
        let v = self.value.ln();
        // |d ln| <= |dx| / (x - err)
        Approx {
            value: v,
            abs_err: self.abs_err / (self.value - self.abs_err) + v.abs() * 2.0 * f64::EPSILON,
        }
    }
}

/// Neumaier compensated sum.
pub fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Sums error-tracked values.
pub fn sum_approx(values: impl IntoIterator<Item = Approx>) -> Approx {
    let mut items = Vec::new();
    let mut err = 0.0;
    for v in values {
        items.push(v.value);
        err += v.abs_err;
    }
    let n = items.len() as f64;
    let mag: f64 = items.iter().map(|x| x.abs()).sum();
    Approx {
        value: kahan_sum(items),
        abs_err: err + mag * n * f64::EPSILON,
    }
}

/// Solves the square system `A x = b` by Gaussian elimination with partial
/// pivoting. Returns `None` when a pivot falls below `tol`.
pub fn solve_square(a: &[Vec<f64>], b: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().cloned().collect();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let (piv, pval) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pval < tol {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = m[r][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    Some((0..n).map(|i| rhs[i] / m[i][i]).collect())
}

/// Rounds to the nearest integer, failing when the distance exceeds `tol`.
pub fn round_to_integer(x: f64, tol: f64) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= tol && r.abs() < 9e15 {
        Some(r as i64)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_reduces_cancellation() {
        let vals = vec![1e16, 1.0, -1e16];
        assert_eq!(kahan_sum(vals), 1.0);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let b = vec![5.0, 10.0];
        let x = solve_square(&a, &b, 1e-12).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn singular_system_rejected() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        let b = vec![1.0, 2.0];
        assert!(solve_square(&a, &b, 1e-12).is_none());
    }

    #[test]
    fn ln_error_propagation() {
        let x = Approx::new(2.0, 1e-12);
        let l = x.ln();
        assert!((l.value - std::f64::consts::LN_2).abs() < 1e-14);
        assert!(l.abs_err < 1e-11);
    }
}
