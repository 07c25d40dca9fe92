//! Dense univariate polynomials with Cyclo coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::cyclo::{Cyclo, Q};
use super::modular;
use super::ExactError;

/// A polynomial Σ c_k z^k; the coefficient vector never ends in zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Cyclo>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Cyclo::one())
    }

    /// The variable z.
    pub fn x() -> Self {
        Poly { coeffs: vec![Cyclo::zero(), Cyclo::one()] }
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c·z^k.
    pub fn monomial(c: Cyclo, k: usize) -> Self {
        let mut coeffs = vec![Cyclo::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// Ascending coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Cyclo>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Cyclo::from_int(c)).collect())
    }

    /// Ascending rational coefficients.
    pub fn from_rationals(coeffs: &[Q]) -> Self {
        Self::from_coeffs(coeffs.iter().cloned().map(Cyclo::from_rational).collect())
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyclo {
        self.coeffs.get(k).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with deg 0 = 0 convention for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lc(&self) -> Cyclo {
        self.coeffs.last().cloned().unwrap_or_else(Cyclo::zero)
    }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(Cyclo::is_rational)
    }

    /// The cyclotomic order shared by the non-rational coefficients (1 if none).
    pub fn order(&self) -> u32 {
        self.coeffs.iter().map(Cyclo::order).max().unwrap_or(1)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplies by z^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Cyclo::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.lc();
        if lc.is_one() {
            return self.clone();
        }
        self.scale(&lc.inv().expect("nonzero leading coefficient"))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Q::from_integer(BigInt::from(k)))).collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex();
        }
        acc
    }

    /// Numeric coefficients under ζ_N ↦ exp(2πi/N).
    pub fn to_complex_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(Cyclo::to_complex).collect()
    }

    /// Composition self(g(z)).
    pub fn compose(&self, g: &Poly) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    /// Homogeneous evaluation Σ c_i U^i V^{d−i} for a given formal degree d ≥ deg.
    pub fn homogeneous_compose(&self, u: &Poly, v: &Poly, d: usize) -> Self {
        debug_assert!(self.is_zero() || self.deg() <= d);
        let mut u_pows = vec![Poly::one()];
        for _ in 0..d {
            let next = u_pows.last().unwrap() * u;
            u_pows.push(next);
        }
        let mut v_pows = vec![Poly::one()];
        for _ in 0..d {
            let next = v_pows.last().unwrap() * v;
            v_pows.push(next);
        }
        let mut acc = Self::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&u_pows[i] * &v_pows[d - i]).scale(c);
        }
        acc
    }

    /// z^d · p(1/z), i.e. the coefficient vector reversed after padding to length d + 1.
    pub fn reverse_padded(&self, d: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(d + 1, Cyclo::zero());
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    /// Multiplicity of z as a factor.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, b: &Poly) -> (Poly, Poly) {
        self.checked_div_rem(b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn checked_div_rem(&self, b: &Poly) -> Result<(Poly, Poly), ExactError> {
        let db = b.degree().ok_or(ExactError::DivisionByZero)?;
        if self.coeffs.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let lc_inv = b.coeffs[db].inv()?;
        let monic_divisor = lc_inv.is_one();
        let mut quot = vec![Cyclo::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let c = if monic_divisor { top.clone() } else { top * &lc_inv };
            for (j, bj) in b.coeffs.iter().enumerate() {
                if !bj.is_zero() {
                    rem[k + j] -= &(&c * bj);
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, b: &Poly) -> Poly {
        let (q, r) = self.div_rem(b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, a: &Poly) -> bool {
        a.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a.is_rational() && b.is_rational() {
            return rational_gcd(a, b);
        }
        let order = a.order().max(b.order());
        if modular::certainly_coprime(&a.coeffs, &b.coeffs, order) {
            return Poly::one();
        }
        euclid_gcd(a, b)
    }

    /// Inverse of self modulo m via the extended Euclidean algorithm.
    pub fn inv_mod(&self, m: &Poly) -> Result<Poly, ExactError> {
        let (_, r0) = self.checked_div_rem(m)?;
        let (mut r_prev, mut r) = (m.clone(), r0);
        let (mut s_prev, mut s) = (Poly::zero(), Poly::one());
        while !r.is_zero() {
            let (q, rem) = r_prev.div_rem(&r);
            let s_next = &s_prev - &(&q * &s);
            r_prev = std::mem::replace(&mut r, rem);
            s_prev = std::mem::replace(&mut s, s_next);
        }
        if !r_prev.is_constant() {
            return Err(ExactError::DivisionByZero);
        }
        let c = r_prev.lc().inv()?;
        Ok(s_prev.scale(&c).div_rem(m).1)
    }

    /// Yun's square-free decomposition of a nonzero polynomial.
    ///
    /// Returns pairs (P_i, i) with P_i monic, square-free, pairwise coprime and
    /// non-constant, such that the input equals lc · ∏ P_i^i.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let f = self.monic();
        if f.is_constant() {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = Poly::gcd(&f, &df);
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = &c - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while !b.is_constant() {
            let a = Poly::gcd(&b, &d);
            let b_next = b.exact_div(&a);
            let c_next = d.exact_div(&a);
            d = &c_next - &b_next.derivative();
            b = b_next;
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    /// Monic square-free part.
    pub fn squarefree_part(&self) -> Poly {
        self.squarefree_decomposition().into_iter().fold(Poly::one(), |acc, (p, _)| &acc * &p)
    }

    /// Rational roots of a rational-coefficient polynomial, when the leading and
    /// trailing integer coefficients are small enough to factor by trial division.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        if !self.is_rational() || self.is_zero() {
            return None;
        }
        let v = self.valuation();
        let mut roots = Vec::new();
        if v > 0 {
            roots.push(Q::zero());
        }
        let rest: Vec<Q> = self.coeffs[v..].iter().map(|c| c.as_rational().unwrap()).collect();
        if rest.len() <= 1 {
            return Some(roots);
        }
        let ints = modular::primitive_int_poly(&rest);
        let lead = ints.last().unwrap().clone();
        let trail = ints[0].clone();
        let limit = BigInt::from(1_000_000_000_000i64);
        if num_traits::Signed::abs(&lead) > limit || num_traits::Signed::abs(&trail) > limit {
            return None;
        }
        let divisors = |n: &BigInt| -> Vec<i64> {
            let n: i64 = num_traits::ToPrimitive::to_i64(&num_traits::Signed::abs(n)).unwrap();
            let mut ds = Vec::new();
            let mut k = 1i64;
            while k * k <= n {
                if n % k == 0 {
                    ds.push(k);
                    if k * k != n {
                        ds.push(n / k);
                    }
                }
                k += 1;
            }
            ds
        };
        let num_divs = divisors(&trail);
        let den_divs = divisors(&lead);
        let poly = Poly::from_rationals(&rest);
        let mut found: Vec<Q> = Vec::new();
        for &p in &num_divs {
            for &q in &den_divs {
                for sign in [1i64, -1] {
                    let r = Q::new(BigInt::from(sign * p), BigInt::from(q));
                    if !found.contains(&r) && poly.eval(&Cyclo::from_rational(r.clone())).is_zero() {
                        found.push(r);
                    }
                }
            }
        }
        found.sort();
        roots.extend(found);
        Some(roots)
    }
}

fn rational_gcd(a: &Poly, b: &Poly) -> Poly {
    let qa: Vec<Q> = a.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let qb: Vec<Q> = b.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let ia = modular::primitive_int_poly(&qa);
    let ib = modular::primitive_int_poly(&qb);
    let g = modular::int_poly_gcd(&ia, &ib);
    let coeffs: Vec<Q> = g.into_iter().map(Q::from_integer).collect();
    Poly::from_rationals(&coeffs).monic()
}

fn euclid_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut r0, mut r1) = if a.deg() >= b.deg() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
    while !r1.is_zero() {
        let r = r0.div_rem(&r1).1.monic();
        r0 = std::mem::replace(&mut r1, r);
    }
    r0
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top; used for canonical sorting.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            if !s.is_zero() {
                *c += s;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut coeffs = vec![Cyclo::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl From<Cyclo> for Poly {
    fn from(c: Cyclo) -> Self {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::literal::poly_to_literal(self))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basic() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]);
        assert_eq!(Poly::gcd(&a, &b), b);
        let c = Poly::from_ints(&[1, 0, 1]);
        assert!(Poly::gcd(&a, &c).is_one());
    }

    #[test]
    fn gcd_cyclotomic_coefficients() {
        // (z - i)(z + 2) and (z - i)(z - 3) over ℚ(i)
        let i = Cyclo::zeta(4);
        let zi = Poly::from_coeffs(vec![-&i, Cyclo::one()]);
        let a = &zi * &Poly::from_ints(&[2, 1]);
        let b = &zi * &Poly::from_ints(&[-3, 1]);
        assert_eq!(Poly::gcd(&a, &b), zi);
    }

    #[test]
    fn squarefree() {
        // (z-1)^3 (z+2) z^2
        let p = Poly::from_ints(&[-1, 1]).pow(3) * Poly::from_ints(&[2, 1]) * Poly::x().pow(2);
        let d = p.squarefree_decomposition();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], (Poly::from_ints(&[2, 1]), 1));
        assert_eq!(d[1], (Poly::x(), 2));
        assert_eq!(d[2], (Poly::from_ints(&[-1, 1]), 3));
    }

    #[test]
    fn rational_roots() {
        let p = Poly::from_ints(&[-1, 1]) * Poly::from_ints(&[3, 2]) * Poly::from_ints(&[1, 0, 1]);
        let r = p.rational_roots().unwrap();
        assert_eq!(r, vec![crate::exact::q(-3, 2), crate::exact::qi(1)]);
    }

    #[test]
    fn homogeneous_composition() {
        // p = z^2 + 1 evaluated at U/V with d = 2
        let p = Poly::from_ints(&[1, 0, 1]);
        let u = Poly::from_ints(&[1, 1]);
        let v = Poly::from_ints(&[0, 1]);
        let h = p.homogeneous_compose(&u, &v, 2);
        assert_eq!(h, Poly::from_ints(&[1, 2, 2]));
    }
}
