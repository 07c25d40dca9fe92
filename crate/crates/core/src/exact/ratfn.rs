//! Reduced rational functions on the Riemann sphere.
//!
//! Arithmetic follows Henrici's scheme so that gcds are taken between the
//! smallest possible operands. The point ∞ is reached through the chart
//! w = 1/z: a quotient P/Q of degree d becomes P̃/Q̃ with P̃(w) = w^d P(1/w).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::cyclo::{Cyclo, Q};
use super::poly::Poly;
use super::ExactError;

/// num/den with gcd(num, den) = 1 and den monic; the constant ∞ is (1, 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

/// Value of a rational function at a point of ℂP¹.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointValue {
    Finite(Cyclo),
    Infinity,
}

impl RatFn {
    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    /// The identity function z.
    pub fn z() -> Self {
        RatFn { num: Poly::x(), den: Poly::one() }
    }

    /// The constant ∞.
    pub fn infinity() -> Self {
        RatFn { num: Poly::one(), den: Poly::zero() }
    }

    pub fn constant(c: Cyclo) -> Self {
        RatFn { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Cyclo::from_int(n))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    /// Reduces num/den; (0, 0) is rejected and (c, 0) with c a nonzero constant gives ∞.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ExactError> {
        if den.is_zero() {
            if num.is_zero() {
                return Err(ExactError::ZeroOverZero);
            }
            if !num.is_constant() {
                return Err(ExactError::DivisionByZero);
            }
            return Ok(Self::infinity());
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        Ok(Self::from_coprime(num, den))
    }

    /// Builds from a coprime pair, only normalizing the denominator to be monic.
    fn from_coprime(num: Poly, den: Poly) -> Self {
        let lc = den.lc();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RatFn { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    /// Shorthand for `new(..).unwrap()` on pairs known to be valid.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        Self::new(num, den).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_infinity(&self) -> bool {
        self.den.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for constants, including ∞.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The constant value, if constant and finite.
    pub fn as_constant(&self) -> Option<Cyclo> {
        if self.is_constant() && !self.is_infinity() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Degree as a map of the sphere: max(deg num, deg den).
    pub fn degree(&self) -> usize {
        if self.is_infinity() {
            return 0;
        }
        self.num.deg().max(self.den.deg())
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }

    pub fn order(&self) -> u32 {
        self.num.order().max(self.den.order())
    }

    fn assert_finite(&self) {
        assert!(!self.is_infinity(), "arithmetic with the constant ∞");
    }

    pub fn checked_inv(&self) -> Result<Self, ExactError> {
        if self.is_infinity() {
            return Ok(Self::zero());
        }
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self * &other.checked_inv()?)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        self.assert_finite();
        if c.is_zero() {
            return Self::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        RatFn { num: base.num.pow(e), den: base.den.pow(e) }
    }

    /// d/dz by the quotient rule, reduced.
    pub fn derivative(&self) -> Self {
        self.assert_finite();
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        // With den = ∏ D_i^i, (P/Q)' = (P'Q - PQ')/Q² has denominator Q·∏ D_i
        let w = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::from_parts(w, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// Value at a finite point.
    pub fn eval(&self, x: &Cyclo) -> PointValue {
        if self.is_infinity() {
            return PointValue::Infinity;
        }
        let d = self.den.eval(x);
        if d.is_zero() {
            return PointValue::Infinity;
        }
        PointValue::Finite(&self.num.eval(x) / &d)
    }

    /// Value at ∞ via the chart w = 1/z.
    pub fn eval_at_infinity(&self) -> PointValue {
        if self.is_infinity() {
            return PointValue::Infinity;
        }
        let (dn, dd) = (self.num.deg(), self.den.deg());
        if self.num.is_zero() {
            PointValue::Finite(Cyclo::zero())
        } else if dn > dd {
            PointValue::Infinity
        } else if dn < dd {
            PointValue::Finite(Cyclo::zero())
        } else {
            PointValue::Finite(&self.num.lc() / &self.den.lc())
        }
    }

    pub fn eval_point(&self, p: &PointValue) -> PointValue {
        match p {
            PointValue::Finite(x) => self.eval(x),
            PointValue::Infinity => self.eval_at_infinity(),
        }
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.num.eval_complex(x) / self.den.eval_complex(x)
    }

    /// Composition self ∘ g via homogeneous evaluation.
    pub fn compose(&self, g: &RatFn) -> Self {
        if self.is_infinity() {
            return Self::infinity();
        }
        if g.is_infinity() {
            return match self.eval_at_infinity() {
                PointValue::Finite(c) => Self::constant(c),
                PointValue::Infinity => Self::infinity(),
            };
        }
        let d = self.degree();
        let num = self.num.homogeneous_compose(&g.num, &g.den, d);
        let den = self.den.homogeneous_compose(&g.num, &g.den, d);
        Self::new(num, den).expect("composition of nonconstant data")
    }

    /// The pair (P̃, Q̃) describing self near ∞ in the chart w = 1/z.
    pub fn chart_at_infinity(&self) -> (Poly, Poly) {
        let d = self.degree();
        (self.num.reverse_padded(d), self.den.reverse_padded(d))
    }

    /// Numerator of the difference self − other, without reduction.
    ///
    /// Zero iff the two functions are equal; used for cheap exact comparisons.
    pub fn difference_numerator(&self, other: &RatFn) -> Poly {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    /// Laurent/Taylor coefficients of self at a finite point p, as a power
    /// series in t = z − p truncated to `len` terms (requires den(p) ≠ 0).
    pub fn taylor_at(&self, p: &Cyclo, len: usize) -> Result<Vec<Cyclo>, ExactError> {
        let shift = Poly::from_coeffs(vec![p.clone(), Cyclo::one()]);
        let n = self.num.compose(&shift);
        let d = self.den.compose(&shift);
        let d0 = d.coeff(0);
        if d0.is_zero() {
            return Err(ExactError::PoleAt(p.to_string()));
        }
        let d0_inv = d0.inv()?;
        let mut out: Vec<Cyclo> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = n.coeff(k);
            for j in 1..=k.min(d.deg()) {
                acc -= &(&d.coeff(j) * &out[k - j]);
            }
            out.push(&acc * &d0_inv);
        }
        Ok(out)
    }

    /// Rational constant if the function is a rational number.
    pub fn as_rational(&self) -> Option<Q> {
        self.as_constant().and_then(|c| c.as_rational())
    }
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Cyclo> for RatFn {
    fn from(c: Cyclo) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RatFn {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.assert_finite();
        rhs.assert_finite();
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::from_poly(&self.num + &rhs.num);
        }
        if self.den.is_one() {
            return RatFn { num: &(&self.num * &rhs.den) + &rhs.num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            return RatFn { num: &(&rhs.num * &self.den) + &self.num, den: self.den.clone() };
        }
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RatFn::zero();
            }
            return RatFn::from_coprime(num, &self.den * &rhs.den);
        }
        let b1 = self.den.exact_div(&g);
        let d1 = rhs.den.exact_div(&g);
        let t = &(&self.num * &d1) + &(&rhs.num * &b1);
        if t.is_zero() {
            return RatFn::zero();
        }
        let g2 = Poly::gcd(&t, &g);
        if g2.is_one() {
            RatFn::from_coprime(t, &b1 * &rhs.den)
        } else {
            RatFn::from_coprime(t.exact_div(&g2), &b1 * &rhs.den.exact_div(&g2))
        }
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        self.assert_finite();
        rhs.assert_finite();
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.is_constant() {
            return rhs.scale(&self.num.coeff(0));
        }
        if rhs.is_constant() {
            return self.scale(&rhs.num.coeff(0));
        }
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (self.num.exact_div(&g1), rhs.den.exact_div(&g1))
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (rhs.num.exact_div(&g2), self.den.exact_div(&g2))
        };
        RatFn::from_coprime(&a * &c, &b * &d)
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Div<&RatFn> for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        self.assert_finite();
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFn> for RatFn {
            type Output = RatFn;
            fn $method(self, rhs: &RatFn) -> RatFn {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFn> for &RatFn {
            type Output = RatFn;
            fn $method(self, rhs: RatFn) -> RatFn {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFn {
    fn one() -> Self {
        RatFn::one()
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            return f.write_str("inf");
        }
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
