//! Small dense matrices over an exact field.

use std::fmt;

use super::cyclo::Cyclo;
use super::ratfn::RatFn;
use super::ExactError;

/// The field operations needed by [`Matrix`].
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn f_zero() -> Self;
    fn f_one() -> Self;
    fn f_is_zero(&self) -> bool;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_neg(&self) -> Self;
    fn f_inv(&self) -> Result<Self, ExactError>;
}

impl Field for Cyclo {
    fn f_zero() -> Self {
        Cyclo::zero()
    }
    fn f_one() -> Self {
        Cyclo::one()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_inv(&self) -> Result<Self, ExactError> {
        self.inv()
    }
}

impl Field for RatFn {
    fn f_zero() -> Self {
        RatFn::zero()
    }
    fn f_one() -> Self {
        RatFn::one()
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_neg(&self) -> Self {
        -self
    }
    fn f_inv(&self) -> Result<Self, ExactError> {
        self.checked_inv()
    }
}

/// Row-major rows × cols matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::f_zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::f_one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::f_is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.f_add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.f_sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(T::f_neg)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.f_mul(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = T::f_zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.f_is_zero() && !b.f_is_zero() {
                        acc = acc.f_add(&a.f_mul(b));
                    }
                }
                out.data[i * o.cols + j] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_r) {
            for j in (0..self.cols).filter(|&j| j != skip_c) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.rows - 1, cols: self.cols - 1, data }
    }

    /// Determinant: Laplace expansion up to 4 × 4, elimination beyond.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        match self.rows {
            0 => T::f_one(),
            1 => self.data[0].clone(),
            2 => self.data[0].f_mul(&self.data[3]).f_sub(&self.data[1].f_mul(&self.data[2])),
            n if n <= 4 => {
                let mut acc = T::f_zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.f_is_zero() {
                        continue;
                    }
                    let term = a.f_mul(&self.minor(0, j).det());
                    acc = if j % 2 == 0 { acc.f_add(&term) } else { acc.f_sub(&term) };
                }
                acc
            }
            _ => self.det_elimination(),
        }
    }

    fn det_elimination(&self) -> T {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::f_one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.get(r, col).f_is_zero()) else {
                return T::f_zero();
            };
            if piv != col {
                for j in 0..n {
                    m.data.swap(piv * n + j, col * n + j);
                }
                det = det.f_neg();
            }
            let p = m.get(col, col).clone();
            det = det.f_mul(&p);
            let p_inv = p.f_inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = m.get(r, col).f_mul(&p_inv);
                if factor.f_is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j).f_sub(&factor.f_mul(m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Classical adjugate (transpose of the cofactor matrix).
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det();
                let c = if (i + j) % 2 == 0 { c } else { c.f_neg() };
                out.data[j * n + i] = c;
            }
        }
        out
    }

    /// Inverse via adjugate / determinant.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let d = self.det();
        if d.f_is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let d_inv = d.f_inv()?;
        Ok(self.adjugate().scale(&d_inv))
    }

    /// Assembles [[a, b], [c, d]] from equally sized square blocks.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        let mut out = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, a.get(i, j).clone());
                out.set(i, j + n, b.get(i, j).clone());
                out.set(i + n, j, c.get(i, j).clone());
                out.set(i + n, j + n, d.get(i, j).clone());
            }
        }
        out
    }
}

impl<T: Field + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl<T: Field> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix").field("rows", &self.rows).field("cols", &self.cols).field("data", &self.data).finish()
    }
}
