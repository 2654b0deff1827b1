//! Smith normal form over the integers.
//!
//! The decomposition tracks both transforms and their inverses so callers can
//! enumerate quotient-group representatives (used for fundamental
//! parallelepiped point counting) and tests can recompose the input exactly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::IntMatrix;

/// `u * a * v = diag(d_1, ..., d_r)` padded with zeros, with `u`, `v`
/// unimodular and `d_i | d_{i+1}`, all `d_i > 0`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Invariant factors, positive, each dividing the next.
    pub diag: Vec<BigInt>,
    /// The full diagonalized matrix (same shape as the input).
    pub normal_form: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn new(a: IntMatrix) -> Self {
        let (r, c) = (a.rows(), a.cols());
        Reducer {
            a,
            u: IntMatrix::identity(r),
            u_inv: IntMatrix::identity(r),
            v: IntMatrix::identity(c),
            v_inv: IntMatrix::identity(c),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for col in 0..m.cols() {
                let x = m.get(i, col).clone();
                let y = m.get(j, col).clone();
                m.set(i, col, y);
                m.set(j, col, x);
            }
        }
        // (swap)^-1 = swap, applied on the other side of u_inv
        for row in 0..self.u_inv.rows() {
            let x = self.u_inv.get(row, i).clone();
            let y = self.u_inv.get(row, j).clone();
            self.u_inv.set(row, i, y);
            self.u_inv.set(row, j, x);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in 0..m.rows() {
                let x = m.get(row, i).clone();
                let y = m.get(row, j).clone();
                m.set(row, i, y);
                m.set(row, j, x);
            }
        }
        for col in 0..self.v_inv.cols() {
            let x = self.v_inv.get(i, col).clone();
            let y = self.v_inv.get(j, col).clone();
            self.v_inv.set(i, col, y);
            self.v_inv.set(j, col, x);
        }
    }

    /// row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            for col in 0..m.cols() {
                let v = m.get(i, col) + q * m.get(j, col);
                m.set(i, col, v);
            }
        }
        // u_inv *= (I + q e_ij)^-1, i.e. col_j -= q * col_i
        for row in 0..self.u_inv.rows() {
            let v = self.u_inv.get(row, j) - q * self.u_inv.get(row, i);
            self.u_inv.set(row, j, v);
        }
    }

    /// col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in 0..m.rows() {
                let v = m.get(row, i) + q * m.get(row, j);
                m.set(row, i, v);
            }
        }
        for col in 0..self.v_inv.cols() {
            let v = self.v_inv.get(j, col) - q * self.v_inv.get(i, col);
            self.v_inv.set(j, col, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for col in 0..m.cols() {
                let v = -m.get(i, col);
                m.set(i, col, v);
            }
        }
        for row in 0..self.u_inv.rows() {
            let v = -self.u_inv.get(row, i);
            self.u_inv.set(row, i, v);
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix, ties broken
    /// row-major.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if x.abs() < self.a.get(bi, bj).abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn reduce(mut self) -> SmithDecomposition {
        let steps = self.a.rows().min(self.a.cols());
        let mut t = 0;
        while t < steps {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            // Clear row/column t; restart whenever a smaller remainder shows up.
            'clear: loop {
                for i in t + 1..self.a.rows() {
                    if self.a.get(i, t).is_zero() {
                        continue;
                    }
                    let q = -(self.a.get(i, t) / self.a.get(t, t));
                    self.add_row(i, t, &q);
                    if !self.a.get(i, t).is_zero() {
                        // remainder strictly smaller than the pivot
                        self.swap_rows(t, i);
                        continue 'clear;
                    }
                }
                for j in t + 1..self.a.cols() {
                    if self.a.get(t, j).is_zero() {
                        continue;
                    }
                    let q = -(self.a.get(t, j) / self.a.get(t, t));
                    self.add_col(j, t, &q);
                    if !self.a.get(t, j).is_zero() {
                        self.swap_cols(t, j);
                        continue 'clear;
                    }
                }
                // Divisibility: fold in any row holding an entry the pivot
                // does not divide.
                let pivot = self.a.get(t, t).clone();
                let offender = (t + 1..self.a.rows()).find(|&i| {
                    (t + 1..self.a.cols()).any(|j| !(self.a.get(i, j) % &pivot).is_zero())
                });
                match offender {
                    Some(i) => {
                        let one = BigInt::from(1);
                        self.add_row(t, i, &one);
                        continue 'clear;
                    }
                    None => break 'clear,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        let diag: Vec<BigInt> = (0..steps)
            .map(|i| self.a.get(i, i).clone())
            .take_while(|d| !d.is_zero())
            .collect();
        SmithDecomposition {
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
            diag,
            normal_form: self.a,
        }
    }
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    Reducer::new(a.clone()).reduce()
}
