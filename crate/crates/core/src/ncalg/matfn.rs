//! Matrix-valued rational functions of one variable and block Möbius maps.

use std::fmt;

use super::NcError;
use crate::exact::{Cyclo, Matrix, RatFn};
use crate::moebius::Moebius;

/// An n×n matrix of rational functions in z.
#[derive(Clone, PartialEq)]
pub struct MatFn(Matrix<RatFn>);

impl MatFn {
    pub fn new(m: Matrix<RatFn>) -> Self {
        assert!(m.is_square(), "MatFn must be square");
        MatFn(m)
    }

    pub fn from_rows(rows: Vec<Vec<RatFn>>) -> Self {
        Self::new(Matrix::from_rows(rows))
    }

    pub fn identity(n: usize) -> Self {
        MatFn(Matrix::identity(n))
    }

    pub fn scalar(n: usize, r: &RatFn) -> Self {
        MatFn(Matrix::identity(n).scale(r))
    }

    pub fn diagonal(entries: Vec<RatFn>) -> Self {
        MatFn(Matrix::diagonal(entries))
    }

    pub fn constant(m: &Matrix<Cyclo>) -> Self {
        MatFn(m.map(|c| RatFn::constant(c.clone())))
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<RatFn> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        self.0.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn derivative(&self) -> Self {
        MatFn(self.0.map(RatFn::derivative))
    }

    pub fn add(&self, o: &Self) -> Self {
        MatFn(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        MatFn(self.0.sub(&o.0))
    }

    pub fn mul(&self, o: &Self) -> Self {
        MatFn(self.0.mul(&o.0))
    }

    pub fn neg(&self) -> Self {
        MatFn(self.0.neg())
    }

    pub fn scale(&self, r: &RatFn) -> Self {
        MatFn(self.0.scale(r))
    }

    pub fn det(&self) -> RatFn {
        self.0.det()
    }

    /// Adjugate over determinant; fails when det ≡ 0.
    pub fn inverse(&self) -> Result<Self, NcError> {
        self.0.inverse().map(MatFn).map_err(|_| NcError::Singular)
    }

    /// The n = 1 entry.
    pub fn as_scalar(&self) -> Option<&RatFn> {
        (self.size() == 1).then(|| self.0.get(0, 0))
    }
}

impl fmt::Display for MatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let rows: Vec<String> = (0..n)
            .map(|i| format!("[{}]", (0..n).map(|j| self.get(i, j).to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for MatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// z ↦ (az + b)(cz + d)⁻¹ with n×n constant blocks.
#[derive(Clone, PartialEq, Debug)]
pub struct GenMoebius {
    a: Matrix<Cyclo>,
    b: Matrix<Cyclo>,
    c: Matrix<Cyclo>,
    d: Matrix<Cyclo>,
}

impl GenMoebius {
    pub fn new(a: Matrix<Cyclo>, b: Matrix<Cyclo>, c: Matrix<Cyclo>, d: Matrix<Cyclo>) -> Result<Self, NcError> {
        let n = a.rows();
        if [&a, &b, &c, &d].iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(NcError::SizeMismatch);
        }
        if Matrix::block2(&a, &b, &c, &d).det().is_zero() {
            return Err(NcError::Singular);
        }
        Ok(GenMoebius { a, b, c, d })
    }

    pub fn identity(n: usize) -> Self {
        GenMoebius { a: Matrix::identity(n), b: Matrix::zeros(n, n), c: Matrix::zeros(n, n), d: Matrix::identity(n) }
    }

    /// (0, I; I, 0), i.e. z ↦ z⁻¹.
    pub fn inversion(n: usize) -> Self {
        GenMoebius { a: Matrix::zeros(n, n), b: Matrix::identity(n), c: Matrix::identity(n), d: Matrix::zeros(n, n) }
    }

    pub fn from_moebius(m: &Moebius) -> Self {
        let [a, b, c, d] = m.entries();
        let one = |x: &Cyclo| Matrix::from_rows(vec![vec![x.clone()]]);
        GenMoebius { a: one(a), b: one(b), c: one(c), d: one(d) }
    }

    pub fn size(&self) -> usize {
        self.a.rows()
    }

    pub fn blocks(&self) -> [&Matrix<Cyclo>; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// cf + d.
    pub fn denominator(&self, f: &MatFn) -> MatFn {
        MatFn::constant(&self.c).mul(f).add(&MatFn::constant(&self.d))
    }

    pub fn apply(&self, f: &MatFn) -> Result<MatFn, NcError> {
        if f.size() != self.size() {
            return Err(NcError::SizeMismatch);
        }
        let num = MatFn::constant(&self.a).mul(f).add(&MatFn::constant(&self.b));
        Ok(num.mul(&self.denominator(f).inverse()?))
    }
}

pub fn gen_moebius_apply(t: &GenMoebius, f: &MatFn) -> Result<MatFn, NcError> {
    t.apply(f)
}
