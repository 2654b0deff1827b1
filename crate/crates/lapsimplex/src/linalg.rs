//! Dense exact integer/rational linear algebra.
//!
//! Everything here is arbitrary precision: determinants use fraction-free
//! (Bareiss) elimination so intermediate values stay integral, and linear
//! solves run over `BigRational`. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// A vector of exact rationals (kept in lowest terms by `BigRational`).
pub type RationalVector = Vec<Rational>;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor for tests and small literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigInt) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in mat_vec");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Result<IntMatrix> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let rows = (0..self.rows)
            .filter(|&r| r != i)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| c != j)
                    .map(|c| self.get(r, c).clone())
                    .collect()
            })
            .collect();
        let mut m = IntMatrix::from_rows(rows);
        // from_rows infers cols = 0 from an empty first row; fix up the 0xN case
        if m.rows == 0 {
            m.cols = self.cols - 1;
        }
        Ok(m)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// The empty 0x0 matrix has determinant 1.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| -> BigInt { m[i * n + j].clone() };
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, r * n + j);
                }
                sign = -sign;
            }
            let pivot = at(&m, k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &pivot * at(&m, i, j) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        let det = at(&m, n - 1, n - 1);
        Ok(if sign < 0 { -det } else { det })
    }

    /// Determinant of the matrix with row `i` and column `j` removed.
    pub fn minor_determinant(&self, i: usize, j: usize) -> Result<BigInt> {
        self.minor(i, j)?.determinant()
    }

    /// Rank over the rationals, by Gaussian elimination with full pivoting.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            for r in row + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &m[row][col];
                for c in col..self.cols {
                    let v = &m[r][c] - &f * &m[row][c];
                    m[r][c] = v;
                }
            }
            rank += 1;
            row += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact solve of `A x = b` for square nonsingular `A`.
    pub fn solve_rational(&self, b: &[Rational]) -> Result<RationalVector> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .chain(std::iter::once(b[i].clone()))
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            m.swap(col, p);
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &m[col][col];
                for c in col..=n {
                    let v = &m[r][c] - &f * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
        Ok((0..n).map(|i| &m[i][n] / &m[i][i]).collect())
    }

    /// Exact inverse as a rational matrix (rows of Q entries).
    pub fn inverse_rational(&self) -> Result<Vec<RationalVector>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = self
                    .row(i)
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            m.swap(col, p);
            let pivot = m[col][col].clone();
            for c in col..2 * n {
                let v = &m[col][c] / &pivot;
                m[col][c] = v;
            }
            for r in 0..n {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for c in col..2 * n {
                    let v = &m[r][c] - &f * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
        Ok(m.into_iter().map(|row| row[n..].to_vec()).collect())
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent oracle: Laplace (cofactor) expansion along the first row.
    fn laplace_det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let sub = laplace_det(&m.minor(0, j).unwrap());
            let term = m.get(0, j) * sub;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_2x2_cofactor() {
        let m = IntMatrix::from_i64_rows(&[&[1, -1], &[-1, 2]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn det_identity_5x5() {
        assert_eq!(IntMatrix::identity(5).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn det_laplacian_is_zero() {
        // Laplacian of the digraph D1': rows sum to zero, so it is singular.
        let m = IntMatrix::from_i64_rows(&[
            &[3, -1, -1, -1, 0],
            &[0, 1, 0, 0, -1],
            &[-1, 0, 1, 0, 0],
            &[0, 0, 0, 1, -1],
            &[0, -1, -1, -1, 3],
        ]);
        assert_eq!(m.determinant().unwrap(), BigInt::zero());
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(m.determinant(), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn minor_determinants_of_example_laplacian() {
        let l = IntMatrix::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1], &[-1, -1, 2]]);
        assert_eq!(l.minor_determinant(1, 1).unwrap(), BigInt::from(2));
        assert_eq!(l.minor_determinant(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(l.minor_determinant(2, 2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn minor_to_empty_matrix_has_unit_determinant() {
        let m = IntMatrix::from_i64_rows(&[&[7]]);
        assert_eq!(m.minor_determinant(0, 0).unwrap(), BigInt::one());
    }

    #[test]
    fn minor_rejects_bad_index() {
        let m = IntMatrix::identity(2);
        assert!(matches!(
            m.minor_determinant(2, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn solve_identity_and_diagonal() {
        let b: Vec<Rational> = vec![
            Rational::from_integer(BigInt::from(5)),
            Rational::from_integer(BigInt::from(-3)),
        ];
        let id = IntMatrix::identity(2);
        assert_eq!(id.solve_rational(&b).unwrap(), b);

        let d = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 4]]);
        let ones = vec![Rational::one(), Rational::one()];
        let x = d.solve_rational(&ones).unwrap();
        assert_eq!(x[0], Rational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(x[1], Rational::new(BigInt::one(), BigInt::from(4)));
    }

    #[test]
    fn solve_barycentric_system_of_example() {
        // Columns are the simplex vertices with an appended 1; solving against
        // (0, 0, 0, 1) recovers the tree counts normalized by the complexity.
        let m = IntMatrix::from_i64_rows(&[
            &[1, 0, -1],
            &[-1, 1, -1],
            &[0, -1, 2],
            &[1, 1, 1],
        ]);
        // Overdetermined as written; drop the redundant third coordinate row.
        let square = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[-1, 1, -1], &[1, 1, 1]]);
        let b = vec![Rational::zero(), Rational::zero(), Rational::one()];
        let x = square.solve_rational(&b).unwrap();
        assert_eq!(x[0], Rational::new(BigInt::one(), BigInt::from(4)));
        assert_eq!(x[1], Rational::new(BigInt::from(2), BigInt::from(4)));
        assert_eq!(x[2], Rational::new(BigInt::one(), BigInt::from(4)));
        assert_eq!(m.rows(), 4);
    }

    #[test]
    fn solve_distinguishes_singular_from_mismatch() {
        let m = IntMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        let b = vec![Rational::one(), Rational::one()];
        assert!(matches!(m.solve_rational(&b), Err(Error::SingularMatrix)));
        let short = vec![Rational::one()];
        assert!(matches!(
            m.solve_rational(&short),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1, 0], &[-1, 3, 2], &[0, 0, 1]]);
        let inv = m.inverse_rational().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Rational::zero();
                for k in 0..3 {
                    acc += Rational::from_integer(m.get(i, k).clone()) * &inv[k][j];
                }
                let expect = if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(acc, expect);
            }
        }
    }

    proptest! {
        #[test]
        fn bareiss_matches_laplace_up_to_5x5(
            n in 1usize..=5,
            seed in proptest::collection::vec(-6i64..=6, 25),
        ) {
            let rows: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(seed[i * 5 + j])).collect())
                .collect();
            let m = IntMatrix::from_rows(rows);
            prop_assert_eq!(m.determinant().unwrap(), laplace_det(&m));
        }

        #[test]
        fn determinant_is_alternating(
            seed in proptest::collection::vec(-5i64..=5, 16),
            i in 0usize..4,
            j in 0usize..4,
        ) {
            prop_assume!(i != j);
            let rows: Vec<Vec<BigInt>> = (0..4)
                .map(|r| (0..4).map(|c| BigInt::from(seed[r * 4 + c])).collect())
                .collect();
            let m = IntMatrix::from_rows(rows.clone());
            let mut swapped = rows;
            swapped.swap(i, j);
            let s = IntMatrix::from_rows(swapped);
            prop_assert_eq!(m.determinant().unwrap(), -s.determinant().unwrap());
        }

        #[test]
        fn solve_then_multiply_back(
            seed in proptest::collection::vec(-5i64..=5, 9),
            rhs in proptest::collection::vec(-9i64..=9, 3),
        ) {
            let rows: Vec<Vec<BigInt>> = (0..3)
                .map(|r| (0..3).map(|c| BigInt::from(seed[r * 3 + c])).collect())
                .collect();
            let m = IntMatrix::from_rows(rows);
            prop_assume!(!m.determinant().unwrap().is_zero());
            let b: Vec<Rational> = rhs
                .iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .collect();
            let x = m.solve_rational(&b).unwrap();
            for i in 0..3 {
                let mut acc = Rational::zero();
                for k in 0..3 {
                    acc += Rational::from_integer(m.get(i, k).clone()) * &x[k];
                }
                prop_assert_eq!(acc, b[i].clone());
            }
        }
    }
}
