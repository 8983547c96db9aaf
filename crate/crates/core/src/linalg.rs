//! Exact linear algebra over small fields and the rationals.
//!
//! Provides the [`Field`] abstraction used by the chain-complex code, the
//! two concrete coefficient fields (GF(2) and arbitrary-precision
//! rationals), and exact integer-matrix routines: determinant and the
//! signature of a symmetric matrix via congruence diagonalisation.

use num::{BigInt, BigRational, Signed, Zero};

/// A field of coefficients for exact computation.
///
/// Implementations must be exact (no floating point): all identities hold
/// on the nose, and `inv` of a nonzero element is a true inverse.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics when called on zero.
    fn inv(&self) -> Self;
    fn from_int(n: i64) -> Self;
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct GF2(pub bool);

impl Field for GF2 {
    fn zero() -> Self {
        GF2(false)
    }
    fn one() -> Self {
        GF2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        GF2(self.0 ^ other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        GF2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        GF2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
    fn from_int(n: i64) -> Self {
        GF2(n.rem_euclid(2) == 1)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!num::Zero::is_zero(self), "inverse of zero rational");
        self.recip()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

fn to_rational_matrix(mat: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    mat.iter()
        .map(|row| row.iter().map(|&x| Field::from_int(x)).collect())
        .collect()
}

/// Exact determinant of a square integer matrix.
// Row operations read one row while mutating another; index loops
// keep the borrows disjoint.
#[allow(clippy::needless_range_loop)]
pub fn determinant(mat: &[Vec<i64>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::from(1);
    }
    debug_assert!(mat.iter().all(|r| r.len() == n));
    let mut m = to_rational_matrix(mat);
    let mut det = BigRational::from_integer(BigInt::from(1));
    for col in 0..n {
        let Some(pivot_row) = (col..n).find(|&r| !num::Zero::is_zero(&m[r][col])) else {
            return BigInt::zero();
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if num::Zero::is_zero(&m[r][col]) {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - delta;
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Signature and nullity of a symmetric integer matrix, computed by exact
/// congruence diagonalisation over the rationals.
///
/// Returns `(signature, nullity)` where the signature is the number of
/// positive eigenvalues minus the number of negative ones.
pub fn symmetric_signature(mat: &[Vec<i64>]) -> (i64, usize) {
    let n = mat.len();
    debug_assert!(mat.iter().all(|r| r.len() == n));
    debug_assert!((0..n).all(|i| (0..n).all(|j| mat[i][j] == mat[j][i])));
    let mut m = to_rational_matrix(mat);
    let mut alive: Vec<usize> = (0..n).collect();
    let mut pos = 0i64;
    let mut neg = 0i64;
    while !alive.is_empty() {
        // Prefer a nonzero diagonal pivot.
        if let Some(&k) = alive.iter().find(|&&k| !num::Zero::is_zero(&m[k][k])) {
            let d = m[k][k].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            alive.retain(|&x| x != k);
            for &i in &alive {
                if num::Zero::is_zero(&m[i][k]) {
                    continue;
                }
                let f = &m[i][k] / &d;
                for &j in &alive {
                    let delta = &f * &m[k][j];
                    m[i][j] = &m[i][j] - delta;
                }
            }
            continue;
        }
        // All diagonal entries are zero. Find a nonzero off-diagonal
        // entry and make its diagonal nonzero by the congruence
        // e_i -> e_i + e_j (valid in characteristic zero), then retry.
        let mut found = None;
        'outer: for &i in &alive {
            for &j in &alive {
                if i != j && !num::Zero::is_zero(&m[i][j]) {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = found else {
            // Remaining block is zero: contributes only nullity.
            return (pos - neg, alive.len());
        };
        for &k in &alive {
            let t = m[k][j].clone();
            m[k][i] = &m[k][i] + t;
        }
        for &k in &alive {
            let t = m[j][k].clone();
            m[i][k] = &m[i][k] + t;
        }
    }
    (pos - neg, 0)
}

/// Rank of a matrix over an arbitrary [`Field`]. Consumes the matrix.
// Row operations read one row while mutating another; index loops
// keep the borrows disjoint.
#[allow(clippy::needless_range_loop)]
pub fn rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, r);
        let inv = m[pivot_row][col].inv();
        for c in col..cols {
            m[pivot_row][c] = m[pivot_row][c].mul(&inv);
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    let delta = f.mul(&m[pivot_row][c]);
                    m[r][c] = m[r][c].sub(&delta);
                }
            }
        }
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(&[]), BigInt::from(1));
        assert_eq!(determinant(&[vec![7]]), BigInt::from(7));
        assert_eq!(
            determinant(&[vec![1, 2], vec![3, 4]]),
            BigInt::from(-2)
        );
        assert_eq!(
            determinant(&[vec![2, 0, 1], vec![0, 3, 0], vec![1, 0, 2]]),
            BigInt::from(9)
        );
        assert_eq!(determinant(&[vec![1, 1], vec![1, 1]]), BigInt::zero());
    }

    #[test]
    fn signature_diagonal_and_hyperbolic() {
        assert_eq!(symmetric_signature(&[]), (0, 0));
        assert_eq!(
            symmetric_signature(&[vec![2, 0], vec![0, -3]]),
            (0, 0)
        );
        assert_eq!(
            symmetric_signature(&[vec![1, 0], vec![0, 5]]),
            (2, 0)
        );
        // Hyperbolic plane: zero diagonal, signature zero.
        assert_eq!(
            symmetric_signature(&[vec![0, 1], vec![1, 0]]),
            (0, 0)
        );
        // Degenerate direction contributes to the nullity.
        assert_eq!(
            symmetric_signature(&[vec![1, 1], vec![1, 1]]),
            (1, 1)
        );
        // E8-like positive definite check on a small Cartan matrix (A3).
        let a3 = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(symmetric_signature(&a3), (3, 0));
    }

    #[test]
    fn rank_over_both_fields() {
        let m: Vec<Vec<GF2>> = vec![
            vec![GF2(true), GF2(true), GF2(false)],
            vec![GF2(false), GF2(true), GF2(true)],
            vec![GF2(true), GF2(false), GF2(true)],
        ];
        // Third row is the sum of the first two over GF(2).
        assert_eq!(rank(m), 2);

        let q: Vec<Vec<BigRational>> = vec![
            vec![Field::from_int(1), Field::from_int(2)],
            vec![Field::from_int(2), Field::from_int(4)],
        ];
        assert_eq!(rank(q), 1);
    }
}
