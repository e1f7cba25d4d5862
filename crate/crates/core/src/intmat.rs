//! Integer matrices with overflow-checked `i128` entries: Smith invariants,
//! saturated kernels, and determinant/signature over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::Overflow)
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i128>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[i128] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<i128> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("integer matrix product".into()));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = ck(acc.checked_add(ck(self.get(i, k).checked_mul(other.get(k, j)))?))?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("integer matrix-vector product".into()));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc: i128 = 0;
                for (j, &x) in v.iter().enumerate() {
                    acc = ck(acc.checked_add(ck(self.get(i, j).checked_mul(x))?))?;
                }
                Ok(acc)
            })
            .collect()
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

    /// row[t] += f * row[s]
    fn row_add(&mut self, t: usize, s: usize, f: i128) -> Result<()> {
        for j in 0..self.cols {
            let v = ck(self.get(t, j).checked_add(ck(f.checked_mul(self.get(s, j)))?))?;
            self.set(t, j, v);
        }
        Ok(())
    }

    /// col[t] += f * col[s]
    fn col_add(&mut self, t: usize, s: usize, f: i128) -> Result<()> {
        for i in 0..self.rows {
            let v = ck(self.get(i, t).checked_add(ck(f.checked_mul(self.get(i, s)))?))?;
            self.set(i, t, v);
        }
        Ok(())
    }

    /// Smith invariants `d_1 | d_2 | ...` (nonnegative, `min(rows, cols)`
    /// of them, trailing zeros for rank deficiency).
    pub fn smith_invariants(&self) -> Result<Vec<i128>> {
        let mut a = self.clone();
        let (k, r) = (self.rows, self.cols);
        let t_max = k.min(r);
        let mut diag = Vec::with_capacity(t_max);
        for t in 0..t_max {
            loop {
                // least nonzero absolute value in the trailing block
                let mut best: Option<(i128, usize, usize)> = None;
                for i in t..k {
                    for j in t..r {
                        let x = a.get(i, j);
                        if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                            best = Some((x.abs(), i, j));
                        }
                    }
                }
                let Some((_, pi, pj)) = best else {
                    diag.resize(t_max, 0);
                    return Ok(diag);
                };
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                let pivot = a.get(t, t);
                let mut clean = true;
                for i in t + 1..k {
                    let q = a.get(i, t).div_euclid(pivot);
                    a.row_add(i, t, -q)?;
                    if a.get(i, t) != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..r {
                    let q = a.get(t, j).div_euclid(pivot);
                    a.col_add(j, t, -q)?;
                    if a.get(t, j) != 0 {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // pivot must divide the whole trailing block
                let bad = (t + 1..k).find(|&i| (t + 1..r).any(|j| a.get(i, j) % pivot != 0));
                match bad {
                    Some(i) => a.row_add(t, i, 1)?,
                    None => {
                        diag.push(pivot.abs());
                        break;
                    }
                }
            }
        }
        Ok(diag)
    }

    /// Basis of the integer kernel `{x in Z^cols : A x = 0}`. The basis is
    /// saturated: it extends to a basis of `Z^cols`.
    pub fn kernel(&self) -> Result<Vec<Vec<i128>>> {
        let mut a = self.clone();
        let r = self.cols;
        let mut v = IntMatrix::identity(r);
        let mut piv = 0;
        for i in 0..self.rows {
            if piv >= r {
                break;
            }
            loop {
                let mut best: Option<(i128, usize)> = None;
                for j in piv..r {
                    let x = a.get(i, j);
                    if x != 0 && best.is_none_or(|(b, _)| x.abs() < b) {
                        best = Some((x.abs(), j));
                    }
                }
                let Some((_, bj)) = best else { break };
                a.swap_cols(piv, bj);
                v.swap_cols(piv, bj);
                let pivot = a.get(i, piv);
                let mut done = true;
                for j in piv + 1..r {
                    let q = a.get(i, j).div_euclid(pivot);
                    if q != 0 {
                        a.col_add(j, piv, -q)?;
                        v.col_add(j, piv, -q)?;
                    }
                    if a.get(i, j) != 0 {
                        done = false;
                    }
                }
                if done {
                    piv += 1;
                    break;
                }
            }
        }
        Ok((piv..r).map(|j| v.column(j)).collect())
    }

    fn to_rational(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from_integer(BigInt::from(self.get(i, j))))
                    .collect()
            })
            .collect()
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.to_rational();
        let mut det = BigRational::from_integer(BigInt::from(1));
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= a[k][k].clone();
            let pivot = a[k].clone();
            for row in a.iter_mut().skip(k + 1) {
                let f = &row[k] / &pivot[k];
                for (x, y) in row.iter_mut().zip(&pivot).skip(k) {
                    *x -= &f * y;
                }
            }
        }
        det.to_integer()
    }

    /// `(positive, negative, zero)` inertia of a symmetric matrix, by
    /// rational congruence diagonalisation.
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric());
        let n = self.rows;
        let mut a = self.to_rational();
        let (mut pos, mut neg, mut zero) = (0, 0, 0);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                    a.swap(k, j);
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // row_k += row_j, col_k += col_j
                    let row_j = a[j].clone();
                    for (x, y) in a[k].iter_mut().zip(&row_j) {
                        *x += y;
                    }
                    for row in a.iter_mut() {
                        let v = row[j].clone();
                        row[k] += v;
                    }
                }
            }
            if a[k][k].is_zero() {
                zero += 1;
                continue;
            }
            if a[k][k].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &a[k][k];
                let row_k = a[k].clone();
                for (x, y) in a[i].iter_mut().zip(&row_k) {
                    *x -= &f * y;
                }
                for row in a.iter_mut() {
                    let s = &f * &row[k];
                    row[i] -= s;
                }
            }
        }
        (pos, neg, zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_diagonal_and_mixed() {
        let a = IntMatrix::new(2, 2, vec![2, 0, 0, 3]).unwrap();
        assert_eq!(a.smith_invariants().unwrap(), vec![1, 6]);
        let b = IntMatrix::new(2, 3, vec![2, 4, 4, -6, 6, 12]).unwrap();
        assert_eq!(b.smith_invariants().unwrap(), vec![2, 6]);
        let z = IntMatrix::new(2, 2, vec![1, 2, 2, 4]).unwrap();
        assert_eq!(z.smith_invariants().unwrap(), vec![1, 0]);
    }

    #[test]
    fn kernel_is_saturated() {
        let a = IntMatrix::new(1, 3, vec![2, 4, 6]).unwrap();
        let k = a.kernel().unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(a.mul_vec(v).unwrap(), vec![0]);
        }
        let basis = IntMatrix::from_rows(&k).unwrap().transpose();
        assert_eq!(basis.smith_invariants().unwrap(), vec![1, 1]);
    }

    #[test]
    fn determinant_and_signature() {
        let u = IntMatrix::new(2, 2, vec![0, 1, 1, 0]).unwrap();
        assert_eq!(u.det(), BigInt::from(-1));
        assert_eq!(u.signature(), (1, 1, 0));
        let d = IntMatrix::new(3, 3, vec![1, 0, 0, 0, -2, 0, 0, 0, 0]).unwrap();
        assert_eq!(d.signature(), (1, 1, 1));
    }
}
