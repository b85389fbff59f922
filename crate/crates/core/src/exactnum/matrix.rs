use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::scalar::{Ring, Scalar};
use super::NumError;

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn diagonal(entries: &[R]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| c.clone() * x.clone()).collect() }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn pow(&self, e: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<'a, R: Ring> Mul<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &'a Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = Matrix::<R>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl<'a, R: Ring> Add<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: &'a Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<'a, R: Ring> Sub<&'a Matrix<R>> for &'a Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: &'a Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> serde::Serialize for Matrix<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Gauss-Jordan inverse. The error names the first column without a pivot.
pub fn mat_inv(m: &Matrix<Scalar>) -> Result<Matrix<Scalar>, NumError> {
    if !m.is_square() {
        return Err(NumError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let mut a = m.to_rows();
    let mut inv = Matrix::<Scalar>::identity(n).to_rows();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(NumError::Singular { stage: col })?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].inv().expect("nonzero pivot");
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let x = &a[r][j] - &(&factor * &a[col][j]);
                a[r][j] = x;
                let y = &inv[r][j] - &(&factor * &inv[col][j]);
                inv[r][j] = y;
            }
        }
    }
    Ok(Matrix::from_rows(inv))
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(a: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].inv().unwrap();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..cols {
                    let v = &a[r][j] - &(&f * &a[row][j]);
                    a[r][j] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix<Scalar>) -> usize {
    let mut a = m.to_rows();
    rref(&mut a, m.cols).len()
}

/// Basis of `{v : m v = 0}`.
pub fn nullspace(m: &Matrix<Scalar>) -> Vec<Vec<Scalar>> {
    let mut a = m.to_rows();
    let pivots = rref(&mut a, m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[f] = Scalar::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&a[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{NumberField, Rational};
    use num_traits::{One, Zero};
    use std::sync::Arc;

    fn ints(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect())
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = Matrix::<Scalar>::identity(3);
        assert_eq!(mat_inv(&id).unwrap(), id);
    }

    #[test]
    fn rank_one_is_singular() {
        assert_eq!(mat_inv(&ints(&[&[1, 1], &[1, 1]])), Err(NumError::Singular { stage: 1 }));
    }

    /// Independent oracle for the 2x2 case: adjugate over determinant.
    fn adjugate_inverse(m: &Matrix<Scalar>) -> Matrix<Scalar> {
        let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        let det = &(a * d) - &(b * c);
        let di = det.inv().unwrap();
        Matrix::from_rows(vec![vec![d * &di, -&(b * &di)], vec![-&(c * &di), a * &di]])
    }

    #[test]
    fn gaussian_vandermonde_inverse() {
        let nf = Arc::new(NumberField::new(vec![Rational::one(), Rational::zero(), Rational::one()]).unwrap());
        let t = Scalar::generator(&nf);
        let v = Matrix::from_rows(vec![vec![Scalar::one(), Scalar::one()], vec![t.clone(), -&t]]);
        let inv = mat_inv(&v).unwrap();
        assert_eq!(inv, adjugate_inverse(&v));
        // frozen: (1/2) [[1, -t], [1, t]]
        let half = Scalar::frac(1, 2);
        let expected = Matrix::from_rows(vec![
            vec![half.clone(), -&(&half * &t)],
            vec![half.clone(), &half * &t],
        ]);
        assert_eq!(inv, expected);
        assert_eq!(&inv * &v, Matrix::identity(2));
        assert_eq!(&v * &inv, Matrix::identity(2));
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(rank(&m), 1);
        assert!(Scalar::zero().is_zero() && Rational::zero().is_zero());
    }
}
