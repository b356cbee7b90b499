//! Dense exact linear algebra.
//!
//! Over the rationals, rank and determinant run Bareiss fraction-free
//! elimination on an integer copy of the matrix (each row scaled by the lcm of
//! its denominators). Over `F_p` ordinary elimination is used. Pivoting is
//! always "first nonzero entry in the current column", so results such as
//! kernel bases are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share a length.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Constraint("ragged rows in matrix".into()));
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Copy with row `i` and column `j` removed.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Matrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for r in (0..self.rows).filter(|&r| r != i) {
            for c in (0..self.cols).filter(|&c| c != j) {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.rows - 1,
            cols: self.cols - 1,
            entries,
        }
    }

    /// Copy keeping only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }
}

/// Integer rows plus the product of the row scale factors.
fn integer_rows(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let mut out = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row: Vec<&BigRational> = m.row(i).iter().map(|s| s.as_rational().unwrap()).collect();
        let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        out.push(row.iter().map(|r| r.numer() * (&l / r.denom())).collect());
        scale *= l;
    }
    (out, scale)
}

/// Fraction-free forward elimination in place. Returns the pivot columns and
/// the parity of row swaps.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> (Vec<usize>, bool) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut odd = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd = !odd;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Gauss-Jordan over the field: reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.entries.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = a.get(r, c).inv().unwrap();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let factor = a.get(i, c).clone();
            for j in c..a.cols {
                let v = a.get(i, j) - &factor * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match m.field {
        Field::Rationals => {
            let (mut a, _) = integer_rows(m);
            bareiss(&mut a, m.cols).0.len()
        }
        Field::Prime(_) => rref(m).1.len(),
    }
}

/// Basis of the right kernel. Each vector has a 1 in its free coordinate and
/// zeros in the other free coordinates.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field;
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); m.cols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, free);
        }
        basis.push(v);
    }
    basis
}

pub fn determinant(m: &Matrix) -> Result<Scalar> {
    if m.rows != m.cols {
        return Err(Error::Constraint(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(m.field.one());
    }
    match m.field {
        Field::Rationals => {
            let (mut a, scale) = integer_rows(m);
            let (pivots, odd) = bareiss(&mut a, n);
            if pivots.len() < n {
                return Ok(m.field.zero());
            }
            let det = if odd { -&a[n - 1][n - 1] } else { a[n - 1][n - 1].clone() };
            Ok(Scalar::Rational(BigRational::new(det, scale)))
        }
        Field::Prime(_) => {
            let mut a = m.clone();
            let mut det = m.field.one();
            for c in 0..n {
                let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                    return Ok(m.field.zero());
                };
                if p != c {
                    for j in 0..n {
                        a.entries.swap(p * n + j, c * n + j);
                    }
                    det = -det;
                }
                let piv = a.get(c, c).clone();
                det = det * &piv;
                let inv = piv.inv().unwrap();
                for i in c + 1..n {
                    if a.get(i, c).is_zero() {
                        continue;
                    }
                    let factor = a.get(i, c) * &inv;
                    for j in c..n {
                        let v = a.get(i, j) - &factor * a.get(c, j);
                        a.set(i, j, v);
                    }
                }
            }
            Ok(det)
        }
    }
}

/// Solves `M x = b` for one solution, if any.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(b.len(), m.rows, "dimension mismatch");
    let aug = Matrix::from_fn(m.field, m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![m.field.zero(); m.cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r.get(row, m.cols).clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn int_matrix(f: Field, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    /// Cofactor expansion along the first row; the independent oracle.
    fn cofactor_det(m: &Matrix) -> Scalar {
        let n = m.rows();
        if n == 0 {
            return m.field().one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        (0..n).fold(m.field().zero(), |acc, j| {
            let term = m.get(0, j) * cofactor_det(&m.minor_matrix(0, j));
            if j % 2 == 0 {
                acc + term
            } else {
                acc - term
            }
        })
    }

    fn random_matrix(f: Field, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
        Matrix::from_fn(f, r, c, |_, _| {
            if f.is_rational() && rng.gen_bool(0.3) {
                f.ratio(&rng.gen_range(-9i64..10).into(), &rng.gen_range(1i64..6).into()).unwrap()
            } else {
                f.random(rng, 9)
            }
        })
    }

    #[test]
    fn rank_examples() {
        let q = Field::Rationals;
        assert_eq!(rank(&Matrix::identity(q, 3)), 3);
        assert_eq!(rank(&Matrix::zeros(q, 3, 4)), 0);
        let u = [1i64, -2, 3, 4];
        let v = [2i64, 0, -1, 5, 7];
        let outer = Matrix::from_fn(q, 4, 5, |i, j| q.from_i64(u[i] * v[j]));
        assert_eq!(rank(&outer), 1);
        let f = Field::prime(101).unwrap();
        let outer = Matrix::from_fn(f, 4, 5, |i, j| f.from_i64(u[i] * v[j]));
        assert_eq!(rank(&outer), 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Field::Rationals;
        assert!(kernel_basis(&Matrix::identity(q, 3)).is_empty());
        let m = int_matrix(q, &[&[1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![q.from_i64(-1), q.from_i64(1)]]);
    }

    #[test]
    fn determinant_examples() {
        let q = Field::Rationals;
        assert_eq!(determinant(&Matrix::identity(q, 4)).unwrap(), q.one());
        assert_eq!(determinant(&int_matrix(q, &[&[2, 0], &[0, 3]])).unwrap(), q.from_i64(6));
        assert_eq!(determinant(&Matrix::zeros(q, 2, 3)).unwrap_err().kind(), "constraint");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_matrix(q, &mut rng, 2, 2);
            let ad_bc = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
            assert_eq!(determinant(&m).unwrap(), ad_bc);
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [Field::Rationals, Field::Prime(7), Field::Prime(10007)] {
            for n in 1..=6 {
                for _ in 0..6 {
                    let m = random_matrix(field, &mut rng, n, n);
                    assert_eq!(determinant(&m).unwrap(), cofactor_det(&m), "{field} n={n}");
                }
                // singular: duplicate a row
                let mut m = random_matrix(field, &mut rng, n, n);
                if n > 1 {
                    for j in 0..n {
                        let v = m.get(0, j).clone();
                        m.set(n - 1, j, v);
                    }
                    assert!(determinant(&m).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn rank_nullity_and_kernel_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [Field::Rationals, Field::Prime(11)] {
            for _ in 0..60 {
                let r = rng.gen_range(1..7);
                let c = rng.gen_range(1..8);
                // low-rank products make nontrivial kernels likely
                let inner = rng.gen_range(1..=r.min(c));
                let a = random_matrix(field, &mut rng, r, inner);
                let b = random_matrix(field, &mut rng, inner, c);
                let m = Matrix::from_fn(field, r, c, |i, j| {
                    (0..inner).fold(field.zero(), |acc, t| acc + a.get(i, t) * b.get(t, j))
                });
                let k = kernel_basis(&m);
                assert_eq!(rank(&m) + k.len(), c);
                assert_eq!(rref(&m).1.len(), rank(&m));
                for v in &k {
                    assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
                }
            }
        }
    }

    #[test]
    fn solve_finds_solutions() {
        let q = Field::Rationals;
        let m = int_matrix(q, &[&[1, 2], &[3, 4], &[5, 6]]);
        let x = solve(&m, &[q.from_i64(5), q.from_i64(11), q.from_i64(17)]).unwrap();
        assert_eq!(x, vec![q.from_i64(1), q.from_i64(2)]);
        assert!(solve(&m, &[q.one(), q.zero(), q.zero()]).is_none());
    }
}
