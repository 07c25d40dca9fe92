//! Elements of the cyclotomic field ℚ(ζ_N).
//!
//! An element is stored as the coefficient vector of its reduced
//! representative modulo the N-th cyclotomic polynomial Φ_N. Rational
//! elements are always stored with order 1, so a rational number has the
//! same representation in every field and mixes freely with elements of
//! any order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational number.
pub type Q = BigRational;

/// Builds a rational from a pair of machine integers.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integral rational.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (ascending) of the N-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = exact_int_div(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    phi_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

fn exact_int_div(a: &[i64], b: &[i64]) -> Vec<i64> {
    // b is monic
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let dq = rem.len() - 1 - db;
    let mut quot = vec![0i64; dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db];
        quot[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[k + j] -= c * bj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An exact element of ℚ(ζ_N).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<Q>,
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { order: 1, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Q::one())
    }

    pub fn from_rational(r: Q) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Cyclo { order: 1, coeffs: vec![r] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(qi(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::from_rational(q(n, d))
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let n = order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = Q::one();
        Self::from_coeffs(order, coeffs)
    }

    /// The primitive root ζ_N.
    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Element Σ c_j ζ_N^j; the coefficient vector may have any length.
    pub fn from_coeffs(order: u32, coeffs: Vec<Q>) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let mut c = Cyclo { order, coeffs };
        c.reduce();
        c
    }

    fn reduce(&mut self) {
        let phi = cyclotomic_polynomial(self.order);
        let d = phi.len() - 1;
        while self.coeffs.len() > d {
            let top = self.coeffs.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = self.coeffs.len() - d;
            for (j, &pj) in phi.iter().take(d).enumerate() {
                if pj != 0 {
                    self.coeffs[shift + j] -= &top * BigInt::from(pj);
                }
            }
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.len() <= 1 {
            self.order = 1;
        }
    }

    /// The cyclotomic order of the representation (1 for rationals).
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the reduced representative in powers of ζ_N.
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<Q> {
        match self.coeffs.len() {
            0 => Some(Q::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer())
    }

    fn common_order(&self, other: &Self) -> Result<u32, ExactError> {
        match (self.order, other.order) {
            (1, n) | (n, 1) => Ok(n),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ExactError::OrderMismatch(a, b)),
        }
    }

    fn lift_to(&self, order: u32) -> Self {
        if self.order == order {
            self.clone()
        } else {
            // only rationals are lifted
            Cyclo { order, coeffs: self.coeffs.clone() }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        let n = self.common_order(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for j in 0..len {
            let c = match (self.coeffs.get(j), other.coeffs.get(j)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            coeffs.push(c);
        }
        let mut r = Cyclo { order: n, coeffs };
        r.normalize();
        Ok(r)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let n = self.common_order(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        if self.is_rational() {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.is_rational() {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_coeffs(n, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Q) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    fn neg_ref(&self) -> Self {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let phi: Vec<Q> = cyclotomic_polynomial(self.order).iter().map(|&c| qi(c)).collect();
        // invariant: s * self ≡ r (mod Φ)
        let (mut r0, mut r1) = (phi, self.coeffs.clone());
        let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
        while r1.len() > 1 {
            let (quot, rem) = qpoly_divrem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_N is irreducible
        let c = r1[0].recip();
        let coeffs = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_coeffs(self.order, coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Complex conjugate (ζ ↦ ζ⁻¹).
    pub fn conj(&self) -> Self {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.order as usize;
        let mut coeffs = vec![Q::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(n - j) % n] += c;
        }
        Self::from_coeffs(self.order, coeffs)
    }

    /// Numeric value under the embedding ζ_N ↦ exp(2πi/N).
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
                Complex64::from_polar(q_to_f64(c), angle)
            })
            .sum()
    }

    /// Same element viewed in ℚ(ζ_M) where N | M.
    pub fn embed(&self, m: u32) -> Result<Self, ExactError> {
        if self.is_rational() || self.order == m {
            return Ok(self.lift_to(m));
        }
        if !m.is_multiple_of(self.order) {
            return Err(ExactError::OrderMismatch(self.order, m));
        }
        let step = (m / self.order) as usize;
        let mut coeffs = vec![Q::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c.clone();
        }
        Ok(Self::from_coeffs(m, coeffs))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

pub(crate) fn q_to_f64(c: &Q) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // fall back on scaled conversion for huge numerators/denominators
        let n = c.numer();
        let d = c.denom();
        let shift = (n.bits().max(d.bits()) as i64 - 1000).max(0) as usize;
        let nf = (n >> shift).to_f64().unwrap_or(f64::NAN);
        let df = (d >> shift).to_f64().unwrap_or(f64::NAN);
        nf / df
    })
}

// Dense polynomial helpers over ℚ used by the inverse.

fn qpoly_trim(mut a: Vec<Q>) -> Vec<Q> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn qpoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qpoly_trim(out)
}

fn qpoly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|j| {
            let x = a.get(j).cloned().unwrap_or_else(Q::zero);
            let y = b.get(j).cloned().unwrap_or_else(Q::zero);
            x - y
        })
        .collect();
    qpoly_trim(out)
}

fn qpoly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), qpoly_trim(rem));
    }
    let lc_inv = b[db].recip();
    let mut quot = vec![Q::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] * &lc_inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (qpoly_trim(quot), qpoly_trim(rem))
}

impl Default for Cyclo {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Q> for Cyclo {
    fn from(r: Q) -> Self {
        Self::from_rational(r)
    }
}

impl PartialOrd for Cyclo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A total order on representations, used only for canonical sorting.
impl Ord for Cyclo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order.cmp(&other.order).then_with(|| self.coeffs.len().cmp(&other.coeffs.len())).then_with(|| {
            for (a, b) in self.coeffs.iter().zip(&other.coeffs).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

// Operator impls panic on mismatched orders; the checked_* methods report it.

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        *self = &*self * rhs;
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl Zero for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclo {
    fn one() -> Self {
        Cyclo::one()
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::cyclo_to_literal(self))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{self}")
        } else {
            write!(f, "[N={}] {self}", self.order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(120).len() as u32 - 1, totient(120));
        assert_eq!(totient(120), 32);
    }

    #[test]
    fn sqrt_two_squared() {
        let s = Cyclo::zeta(8) + Cyclo::zeta_pow(8, -1);
        assert_eq!(&s * &s, Cyclo::from_int(2));
    }

    #[test]
    fn i_squared() {
        let i = Cyclo::zeta(4);
        assert_eq!(&i * &i, Cyclo::from_int(-1));
    }

    #[test]
    fn golden_product() {
        let a = Cyclo::zeta(5) + Cyclo::zeta_pow(5, 4);
        let b = Cyclo::zeta_pow(5, 2) + Cyclo::zeta_pow(5, 3);
        let oracle = 2.0 * (72f64).to_radians().cos() * 2.0 * (144f64).to_radians().cos();
        let prod = &a * &b;
        assert!((prod.to_complex().re - oracle).abs() < 1e-12);
        assert_eq!(prod, Cyclo::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Cyclo::from_coeffs(120, vec![qi(3), q(-1, 2), qi(0), qi(7)]);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn order_mismatch_is_reported() {
        let a = Cyclo::zeta(5);
        let b = Cyclo::zeta(8);
        assert!(matches!(a.checked_add(&b), Err(ExactError::OrderMismatch(5, 8))));
        assert!(Cyclo::zero().inv().is_err());
    }

    #[test]
    fn rationals_mix_with_any_order() {
        let a = Cyclo::zeta(5) + Cyclo::from_int(2);
        assert_eq!(a.order(), 5);
        assert_eq!(&a - &Cyclo::zeta(5), Cyclo::from_int(2));
        assert_eq!((&a - &Cyclo::zeta(5)).order(), 1);
    }

    #[test]
    fn embedding_preserves_value() {
        let a = Cyclo::zeta(8) + Cyclo::zeta_pow(8, 7);
        let b = a.embed(120).unwrap();
        assert!((a.to_complex() - b.to_complex()).norm() < 1e-12);
        let sqrt2 = Cyclo::zeta_pow(120, 15) + Cyclo::zeta_pow(120, 105);
        assert_eq!(b, sqrt2);
    }

    #[test]
    fn conjugation() {
        let z = Cyclo::zeta(5);
        assert!((&z * &z.conj()).is_one());
    }
}
