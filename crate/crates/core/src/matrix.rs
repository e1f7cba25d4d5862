//! Dense matrices over `W_n` and the linear algebra the lattice code needs.
//!
//! `W_n` is a chain ring: every element is `p^e * unit`. That makes Smith
//! normal form straightforward (always pivot on an entry of least valuation)
//! and gives a clean test for when a kernel stops being free at finite
//! precision.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{PadicScalar, RingContext};

/// Column vector over `W_n`.
pub type Vector = Vec<PadicScalar>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Arc<RingContext>,
    rows: usize,
    cols: usize,
    data: Vec<PadicScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(ctx: &Arc<RingContext>, rows: usize, cols: usize) -> Self {
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: vec![PadicScalar::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<RingContext>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, PadicScalar::one(ctx));
        }
        m
    }

    pub fn from_fn(
        ctx: &Arc<RingContext>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> PadicScalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Row-major integer entries.
    pub fn from_ints(ctx: &Arc<RingContext>, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self::from_fn(ctx, rows, cols, |i, j| {
            PadicScalar::from_int(ctx, entries[i * cols + j])
        }))
    }

    /// Row-major scalar entries, all in `ctx`.
    pub fn from_entries(ctx: &Arc<RingContext>, rows: usize, cols: usize, entries: Vec<PadicScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| **e.ctx() != **ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Matrix {
            ctx: ctx.clone(),
            rows,
            cols,
            data: entries,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ctx: &Arc<RingContext>, rows: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length".into()));
        }
        Ok(Self::from_fn(ctx, rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
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

    pub fn get(&self, i: usize, j: usize) -> &PadicScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PadicScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[PadicScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if *self.ctx != *other.ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = Matrix::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Panics on shape or context mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn try_mul_vec(&self, v: &[PadicScalar]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = PadicScalar::zero(&self.ctx);
                for (a, x) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                    acc = acc + a * x;
                }
                acc
            })
            .collect())
    }

    pub fn mul_vec(&self, v: &[PadicScalar]) -> Vector {
        self.try_mul_vec(v).expect("matrix-vector product")
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &PadicScalar) -> Matrix {
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(&self.ctx, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn reduce_to(&self, ctx: &Arc<RingContext>) -> Result<Matrix> {
        Ok(Matrix {
            ctx: ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.reduce_to(ctx)).collect::<Result<_>>()?,
        })
    }

    /// Reduction modulo p.
    pub fn residue(&self) -> Matrix {
        self.reduce_to(&self.ctx.residue()).expect("same tower")
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

    /// row[target] -= f * row[src]
    fn row_axpy(&mut self, target: usize, src: usize, f: &PadicScalar) {
        for j in 0..self.cols {
            let v = self.get(target, j) - &(f * self.get(src, j));
            self.set(target, j, v);
        }
    }

    /// col[target] -= f * col[src]
    fn col_axpy(&mut self, target: usize, src: usize, f: &PadicScalar) {
        for i in 0..self.rows {
            let v = self.get(i, target) - &(f * self.get(i, src));
            self.set(i, target, v);
        }
    }

    /// Inverse via Gauss-Jordan with unit pivots.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(&self.ctx, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col).is_unit()).ok_or(Error::Singular)?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j) * &s);
                inv.set(col, j, inv.get(col, j) * &s);
            }
            for r in 0..n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.row_axpy(r, col, &f);
                    inv.row_axpy(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(t I - A)` by Berkowitz's
    /// division-free algorithm; coefficients ascending, monic.
    pub fn char_poly(&self) -> Vec<PadicScalar> {
        assert!(self.is_square());
        let n = self.rows;
        let ctx = &self.ctx;
        let zero = PadicScalar::zero(ctx);
        let one = PadicScalar::one(ctx);
        if n == 0 {
            return vec![one];
        }
        // Coefficients stored highest degree first while iterating.
        let mut c: Vec<PadicScalar> = vec![one.clone(), -self.get(0, 0)];
        for k in 1..n {
            // Leading block A_k is k x k; R = row k (cols < k), S = col k (rows < k).
            let r: Vector = (0..k).map(|j| self.get(k, j).clone()).collect();
            let s: Vector = (0..k).map(|i| self.get(i, k).clone()).collect();
            let a = self.get(k, k).clone();
            // Toeplitz first column: 1, -a, -R S, -R A S, ..., -R A^{k-1} S
            let mut col = vec![one.clone(), -&a];
            let mut v = s.clone();
            for _ in 0..k {
                let rv = r.iter().zip(&v).fold(zero.clone(), |acc, (x, y)| acc + x * y);
                col.push(-rv);
                // v <- A_k v
                v = (0..k)
                    .map(|i| (0..k).fold(zero.clone(), |acc, j| acc + self.get(i, j) * &v[j]))
                    .collect();
            }
            // new c = T c, T is (k+2) x (k+1) lower-triangular Toeplitz.
            let mut next = vec![zero.clone(); k + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, cj) in c.iter().enumerate() {
                    if i >= j && i - j < col.len() {
                        *slot = &*slot + &(&col[i - j] * cj);
                    }
                }
            }
            c = next;
        }
        c.reverse();
        c
    }

    pub fn det(&self) -> PadicScalar {
        let cp = self.char_poly();
        let c0 = cp[0].clone();
        if self.rows % 2 == 1 {
            -c0
        } else {
            c0
        }
    }

    /// Smith normal form `U * A * V = D` with `D` diagonal. Returns
    /// `(U, diag, V)` where `diag` has `min(rows, cols)` entries, each a
    /// power of p up to a unit or zero.
    pub fn smith(&self) -> SmithForm {
        let ctx = &self.ctx;
        let (k, r) = (self.rows, self.cols);
        let mut s = self.clone();
        let mut u = Matrix::identity(ctx, k);
        let mut v = Matrix::identity(ctx, r);
        let t_max = k.min(r);
        for t in 0..t_max {
            let mut best: Option<(u32, usize, usize)> = None;
            for i in t..k {
                for j in t..r {
                    if let Some(e) = s.get(i, j).valuation() {
                        if best.is_none_or(|(b, _, _)| e < b) {
                            best = Some((e, i, j));
                        }
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = s.get(t, t).clone();
            for i in t + 1..k {
                if !s.get(i, t).is_zero() {
                    let f = s.get(i, t).div_exact(&pivot).expect("pivot has least valuation");
                    s.row_axpy(i, t, &f);
                    u.row_axpy(i, t, &f);
                }
            }
            for j in t + 1..r {
                if !s.get(t, j).is_zero() {
                    let f = s.get(t, j).div_exact(&pivot).expect("pivot has least valuation");
                    s.col_axpy(j, t, &f);
                    v.col_axpy(j, t, &f);
                }
            }
        }
        let diag = (0..t_max).map(|t| s.get(t, t).clone()).collect();
        SmithForm { u, diag, v }
    }

    /// Basis of `{x : A x = 0}`. Fails with [`Error::PrecisionLoss`] when the
    /// kernel is not a free module at this precision, i.e. when some Smith
    /// invariant is neither a unit nor zero.
    pub fn kernel(&self) -> Result<Vec<Vector>> {
        let sf = self.smith();
        let mut basis = Vec::new();
        for t in 0..self.cols {
            let free = match sf.diag.get(t) {
                None => true,
                Some(d) => match d.valuation() {
                    None => true,
                    Some(0) => false,
                    Some(_) => return Err(Error::PrecisionLoss),
                },
            };
            if free {
                basis.push(sf.v.column(t));
            }
        }
        Ok(basis)
    }

    /// Some `y` with `A y = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[PadicScalar]) -> Result<Option<Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let sf = self.smith();
        let z = sf.u.mul_vec(b);
        let mut w = vec![PadicScalar::zero(&self.ctx); self.cols];
        for (i, zi) in z.iter().enumerate() {
            match sf.diag.get(i) {
                Some(d) if !d.is_zero() => match zi.div_exact(d) {
                    Ok(q) => w[i] = q,
                    Err(_) => return Ok(None),
                },
                _ => {
                    if !zi.is_zero() {
                        return Ok(None);
                    }
                }
            }
        }
        Ok(Some(sf.v.mul_vec(&w)))
    }

    /// Indices of a maximal set of columns independent modulo p, chosen
    /// greedily left to right. By Nakayama these columns generate the same
    /// module as all columns whenever that module is a direct summand.
    pub fn independent_columns_mod_p(&self) -> Vec<usize> {
        let red = self.residue();
        let mut echelon: Vec<(usize, Vector)> = Vec::new();
        let mut chosen = Vec::new();
        for j in 0..self.cols {
            let mut v = red.column(j);
            for (piv, row) in &echelon {
                if !v[*piv].is_zero() {
                    let f = v[*piv].clone();
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
                let s = v[piv].inv().expect("nonzero residue is a unit");
                let v: Vector = v.iter().map(|x| x * &s).collect();
                echelon.push((piv, v));
                chosen.push(j);
            }
        }
        chosen
    }

    pub fn rank_mod_p(&self) -> usize {
        self.independent_columns_mod_p().len()
    }
}

/// Output of [`Matrix::smith`].
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: Matrix,
    pub diag: Vec<PadicScalar>,
    pub v: Matrix,
}

/// Helpers on plain vectors.
pub mod vector {
    use super::*;

    pub fn zero(ctx: &Arc<RingContext>, n: usize) -> Vector {
        vec![PadicScalar::zero(ctx); n]
    }

    pub fn basis(ctx: &Arc<RingContext>, n: usize, i: usize) -> Vector {
        let mut v = zero(ctx, n);
        v[i] = PadicScalar::one(ctx);
        v
    }

    pub fn from_ints(ctx: &Arc<RingContext>, xs: &[i64]) -> Vector {
        xs.iter().map(|&x| PadicScalar::from_int(ctx, x)).collect()
    }

    pub fn add(a: &[PadicScalar], b: &[PadicScalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[PadicScalar], b: &[PadicScalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(s: &PadicScalar, a: &[PadicScalar]) -> Vector {
        a.iter().map(|x| s * x).collect()
    }

    /// a + s * b
    pub fn axpy(a: &[PadicScalar], s: &PadicScalar, b: &[PadicScalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + &(s * y)).collect()
    }

    pub fn is_zero(a: &[PadicScalar]) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    /// Least valuation among the entries, `None` for the zero vector.
    pub fn valuation(a: &[PadicScalar]) -> Option<u32> {
        a.iter().filter_map(|x| x.valuation()).min()
    }

    pub fn residue(a: &[PadicScalar]) -> Vector {
        a.iter().map(|x| x.residue()).collect()
    }

    pub fn reduce_to(a: &[PadicScalar], ctx: &Arc<RingContext>) -> Result<Vector> {
        a.iter().map(|x| x.reduce_to(ctx)).collect()
    }

    /// True when `a` and `b` are nonzero mod p and span the same line there.
    pub fn same_line_mod_p(a: &[PadicScalar], b: &[PadicScalar]) -> bool {
        if a.len() != b.len() {
            return false;
        }
        let ra = residue(a);
        let rb = residue(b);
        let Some(i) = ra.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if rb[i].is_zero() {
            return false;
        }
        let s = &rb[i] * &ra[i].inv().expect("nonzero residue");
        ra.iter().zip(&rb).all(|(x, y)| &(&s * x) == y)
    }
}
