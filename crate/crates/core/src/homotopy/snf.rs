//! Smith normal form over the integers, generic in the integer type.

use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Integer types usable for exact linear algebra.
pub trait Scalar: Integer + Signed + Clone + From<i32> + std::fmt::Debug + std::fmt::Display {}

impl<T> Scalar for T where T: Integer + Signed + Clone + From<i32> + std::fmt::Debug + std::fmt::Display {}

/// A dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        Self { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn add_to(&mut self, i: usize, j: usize, value: T) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].clone() + value;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= factor · row[source], from column `from` on
    fn sub_row(&mut self, target: usize, source: usize, factor: &T, from: usize) {
        for j in from..self.cols {
            let s = self.get(source, j).clone();
            if !s.is_zero() {
                let k = target * self.cols + j;
                self.data[k] = self.data[k].clone() - factor.clone() * s;
            }
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, factor: &T, from: usize) {
        for i in from..self.rows {
            let s = self.get(i, source).clone();
            if !s.is_zero() {
                let k = i * self.cols + target;
                self.data[k] = self.data[k].clone() - factor.clone() * s;
            }
        }
    }
}


/// The invariant factors `d₁ | d₂ | …` (all positive) of a matrix; their
/// count is the rank.
pub fn smith_normal_form<T: Scalar>(matrix: &Matrix<T>) -> Vec<T> {
    let mut m = matrix.clone();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < m.rows.min(m.cols) {
        // pivot of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m.rows {
            for j in t..m.cols {
                let v = m.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m.get(bi, bj).abs()) {
                    best = Some((i, j));
                    if v.abs().is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| m.get(bi, bj).abs().is_one()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap_rows(t, pi);
        m.swap_cols(t, pj);

        loop {
            let pivot = m.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m.rows {
                let v = m.get(i, t).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                m.sub_row(i, t, &q, t);
                if !m.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m.cols {
                let v = m.get(t, j).clone();
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                m.sub_col(j, t, &q, t);
                if !m.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let stray = (t + 1..m.rows)
                    .flat_map(|i| (t + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m.get(i, j).is_multiple_of(&pivot));
                match stray {
                    None => break,
                    Some((i, _)) => {
                        // row t += row i brings the offending entry into the pivot row
                        let minus_one = T::from(-1);
                        m.sub_row(t, i, &minus_one, t);
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of the pivot row/column into place
            let mut best = (t, t);
            for i in t..m.rows {
                let v = m.get(i, t);
                if !v.is_zero() && v.abs() < m.get(best.0, best.1).abs() {
                    best = (i, t);
                }
            }
            for j in t..m.cols {
                let v = m.get(t, j);
                if !v.is_zero() && v.abs() < m.get(best.0, best.1).abs() {
                    best = (t, j);
                }
            }
            m.swap_rows(t, best.0);
            m.swap_cols(t, best.1);
        }
        factors.push(m.get(t, t).abs());
        t += 1;
    }
    factors
}

pub fn rank<T: Scalar>(matrix: &Matrix<T>) -> usize {
    smith_normal_form(matrix).len()
}
