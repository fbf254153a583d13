//! Dense matrices over any [`Ring`], with exact elimination over fields.

use std::fmt;

use thiserror::Error;

use crate::ring::{Field, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("determinant by expansion is limited to n <= {0}")]
    TooLarge(usize),
}

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    zero: R,
    data: Vec<R>,
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Result of [`Matrix::solve`]: a particular solution (absent when the system is
/// inconsistent) and a basis of the homogeneous solutions.
#[derive(Debug, Clone)]
pub struct LinearSolution<R: Ring> {
    pub particular: Option<Matrix<R>>,
    pub kernel: Vec<Vec<R>>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, zero: &R) -> Self {
        let zero = zero.zero_like();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: &R) -> Self {
        let mut m = Self::zeros(n, n, zero);
        let one = zero.one_like();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>, zero: &R) -> Self {
        assert_eq!(data.len(), rows * cols, "data length");
        Matrix { rows, cols, data, zero: zero.zero_like() }
    }

    pub fn from_rows(rows: Vec<Vec<R>>, zero: &R) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_vec(r, c, rows.into_iter().flatten().collect(), zero)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<R>], rows: usize, zero: &R) -> Self {
        let mut m = Self::zeros(rows, cols.len(), zero);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero(&self) -> &R {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut m = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    m.data[idx] = m.data[idx].add(&a.mul(b));
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.zero.clone(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix sum shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "matrix difference shape");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn scale(&self, c: &R) -> Self {
        let data = self.data.iter().map(|a| a.mul(c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert_eq!(self.rows, self.cols, "square matrix");
        let mut acc = Self::identity(self.rows, &self.zero);
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

    /// Commutator `AB - BA`.
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    /// Determinant by permutation expansion; valid over any commutative ring.
    pub fn det_expansion(&self) -> Result<R, LinalgError> {
        const MAX: usize = 8;
        if self.rows != self.cols {
            return Err(LinalgError::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n > MAX {
            return Err(LinalgError::TooLarge(MAX));
        }
        let mut total = self.zero.clone();
        for (perm, sign) in permutations(n) {
            let mut term = self.zero.one_like();
            for (i, &j) in perm.iter().enumerate() {
                term = term.mul(self.get(i, j));
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            total = if sign > 0 { total.add(&term) } else { total.sub(&term) };
        }
        Ok(total)
    }

    /// Inverse over a commutative ring via the adjugate; `Singular` when the
    /// determinant is not a unit.
    pub fn inverse_over_ring(&self) -> Result<Self, LinalgError> {
        let n = self.rows;
        let det = self.det_expansion()?;
        let det_inv = det.try_inv().ok_or(LinalgError::Singular)?;
        let mut inv = Self::zeros(n, n, &self.zero);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i);
                let c = minor.det_expansion()?;
                let c = if (i + j) % 2 == 0 { c } else { c.neg() };
                inv.set(i, j, c.mul(&det_inv));
            }
        }
        Ok(inv)
    }

    /// Solve `self * X = rhs` by elimination with unit pivots. Exact over fields
    /// and local rings; `None` when no unit pivot is available in some column.
    pub fn solve_unit_pivot(&self, rhs: &Self) -> Option<Self> {
        if self.rows != self.cols || rhs.rows != self.rows {
            return None;
        }
        let n = self.rows;
        let w = n + rhs.cols;
        let mut a = Self::zeros(n, w, &self.zero);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                a.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        for c in 0..n {
            let (pr, inv) = (c..n).find_map(|i| a.get(i, c).try_inv().map(|v| (i, v)))?;
            if pr != c {
                for j in 0..w {
                    a.data.swap(pr * w + j, c * w + j);
                }
            }
            for j in 0..w {
                let v = a.get(c, j).mul(&inv);
                a.set(c, j, v);
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..w {
                    let v = a.get(i, j).sub(&f.mul(a.get(c, j)));
                    a.set(i, j, v);
                }
            }
        }
        let mut x = Self::zeros(n, rhs.cols, &self.zero);
        for i in 0..n {
            for j in 0..rhs.cols {
                x.set(i, j, a.get(i, n + j).clone());
            }
        }
        Some(x)
    }

    fn minor(&self, r: usize, c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            for j in 0..self.cols {
                if j != c {
                    data.push(self.get(i, j).clone());
                }
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data, zero: self.zero.clone() }
    }

    /// Apply `f` entrywise.
    pub fn map<S: Ring>(&self, zero: &S, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
            zero: zero.zero_like(),
        }
    }
}

/// All permutations of `0..n` with their signs, by Heap's algorithm.
fn permutations(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![(a.clone(), 1i8)];
    let mut c = vec![0usize; n];
    let mut sign = 1i8;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

impl<R: Field> Matrix<R> {
    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("non-zero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&f.mul(rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column `f`, with a 1 at `f`,
    /// zeros at the other free columns, and pivot entries read off the RREF.
    pub fn kernel(&self) -> Vec<Vec<R>> {
        let (m, pivots) = self.rref();
        kernel_from_rref(&m, &pivots, self.cols)
    }

    /// Solve `self * X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<LinearSolution<R>, LinalgError> {
        if rhs.rows != self.rows {
            return Err(LinalgError::Shape(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, rhs.rows
            )));
        }
        let n = self.cols;
        let mut aug = Self::zeros(self.rows, n + rhs.cols, &self.zero);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let (m, pivots) = aug.rref();
        let lhs_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < n).collect();
        let kernel = kernel_from_rref(&m, &lhs_pivots, n);
        if pivots.iter().any(|&c| c >= n) {
            return Ok(LinearSolution { particular: None, kernel });
        }
        let mut x = Self::zeros(n, rhs.cols, &self.zero);
        for (r, &pc) in lhs_pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, m.get(r, n + j).clone());
            }
        }
        Ok(LinearSolution { particular: Some(x), kernel })
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let sol = self.solve(&Self::identity(self.rows, &self.zero)).ok()?;
        if !sol.kernel.is_empty() {
            return None;
        }
        sol.particular
    }
}

fn kernel_from_rref<R: Field>(m: &Matrix<R>, pivots: &[usize], n: usize) -> Vec<Vec<R>> {
    let zero = m.zero().clone();
    let one = zero.one_like();
    let mut out = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); n];
        v[f] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = m.get(r, f).neg();
        }
        out.push(v);
    }
    out
}

/// Free-function form of [`Matrix::solve`].
pub fn solve_linear<R: Field>(
    m: &Matrix<R>,
    rhs: &Matrix<R>,
) -> Result<LinearSolution<R>, LinalgError> {
    m.solve(rhs)
}

/// Reduced row-echelon basis of the span of `vectors` (zero rows dropped).
pub fn row_space<R: Field>(vectors: &[Vec<R>], dim: usize, zero: &R) -> Vec<Vec<R>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_vec(
        vectors.len(),
        dim,
        vectors.iter().flat_map(|v| v.iter().cloned()).collect(),
        zero,
    );
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FieldDescriptor, FieldElement};
    use std::sync::Arc;

    fn mat(f: &Arc<FieldDescriptor>, rows: &[&[i64]]) -> Matrix<FieldElement> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect(),
            &f.zero(),
        )
    }

    #[test]
    fn identity_system_returns_rhs() {
        let f = FieldDescriptor::prime(3).unwrap();
        let id = Matrix::identity(3, &f.zero());
        let rhs = mat(&f, &[&[1], &[2], &[0]]);
        let s = id.solve(&rhs).unwrap();
        assert_eq!(s.particular.unwrap(), rhs);
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_row_has_full_kernel() {
        let f = FieldDescriptor::prime(3).unwrap();
        let z = mat(&f, &[&[0, 0]]);
        let s = z.solve(&mat(&f, &[&[0]])).unwrap();
        assert_eq!(s.kernel.len(), 2);
    }

    #[test]
    fn inconsistent_system_detected() {
        let f = FieldDescriptor::prime(5).unwrap();
        let a = mat(&f, &[&[1, 1], &[2, 2]]);
        let s = a.solve(&mat(&f, &[&[1], &[3]])).unwrap();
        assert!(s.particular.is_none());
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn kernel_is_canonical() {
        let f = FieldDescriptor::prime(5).unwrap();
        let a = mat(&f, &[&[1, 2, 3], &[0, 1, 4]]);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        assert!(k[0][2].is_one());
    }

    #[test]
    fn expansion_agrees_with_elimination() {
        let f = FieldDescriptor::prime(7).unwrap();
        let a = mat(&f, &[&[1, 2, 3], &[0, 4, 5], &[6, 1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.inverse_over_ring().unwrap(), inv);
        assert_eq!(a.mul(&inv), Matrix::identity(3, &f.zero()));
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|(_, s)| *s > 0).count(), 3);
    }
}
