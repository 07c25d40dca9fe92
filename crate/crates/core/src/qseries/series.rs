//! Truncated Puiseux series in q with Cyclo coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QSeriesError;
use crate::exact::literal::cyclo_to_literal;
use crate::exact::{Cyclo, Poly, Q};

/// Σ c_k q^(k/den), known exactly for exponents below `prec/den`.
///
/// `prec = None` means the series is exact (finitely many terms). The
/// representation is kept normalized: no zero coefficients, no terms at or
/// above the truncation, and `den` as small as the exponents allow.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    den: i64,
    terms: BTreeMap<i64, Cyclo>,
    prec: Option<i64>,
}

fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

fn to_frac(k: i64, den: i64) -> Q {
    Q::new(BigInt::from(k), BigInt::from(den))
}

/// (numerator, denominator) of a rational that must fit in i64.
fn split(e: &Q) -> (i64, i64) {
    (
        e.numer().to_i64().expect("exponent numerator overflow"),
        e.denom().to_i64().expect("exponent denominator overflow"),
    )
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Series {
    fn raw(den: i64, terms: BTreeMap<i64, Cyclo>, prec: Option<i64>) -> Self {
        let mut s = Series { den, terms, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            self.terms.retain(|k, c| *k < p && !c.is_zero());
        } else {
            self.terms.retain(|_, c| !c.is_zero());
        }
        let mut g = self.den;
        for k in self.terms.keys() {
            g = g.gcd(k);
        }
        if let Some(p) = self.prec {
            g = g.gcd(&p);
        }
        if g > 1 {
            self.den /= g;
            self.terms = std::mem::take(&mut self.terms).into_iter().map(|(k, c)| (k / g, c)).collect();
            self.prec = self.prec.map(|p| p / g);
        }
    }

    pub fn zero() -> Self {
        Series { den: 1, terms: BTreeMap::new(), prec: None }
    }

    pub fn one() -> Self {
        Self::constant(Cyclo::one())
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::monomial(c, &Q::zero())
    }

    /// c·q^e, exact.
    pub fn monomial(c: Cyclo, e: &Q) -> Self {
        let (n, d) = split(e);
        Self::raw(d, BTreeMap::from([(n, c)]), None)
    }

    pub fn from_terms<I: IntoIterator<Item = (Q, Cyclo)>>(terms: I, prec: Option<&Q>) -> Self {
        let items: Vec<(Q, Cyclo)> = terms.into_iter().collect();
        let den = items
            .iter()
            .map(|(e, _)| e.denom().to_i64().expect("exponent denominator overflow"))
            .chain(prec.map(|p| p.denom().to_i64().expect("exponent denominator overflow")))
            .fold(1, lcm);
        let mut map = BTreeMap::new();
        for (e, c) in items {
            let k = (e * Q::from_integer(den.into())).to_integer().to_i64().expect("exponent overflow");
            let slot: &mut Cyclo = map.entry(k).or_insert_with(Cyclo::zero);
            *slot += &c;
        }
        let prec = prec.map(|p| (p * Q::from_integer(den.into())).to_integer().to_i64().expect("exponent overflow"));
        Self::raw(den, map, prec)
    }

    /// Same series known only below q^p (the truncation never increases).
    pub fn with_prec(&self, p: &Q) -> Self {
        let (n, d) = split(p);
        let den = lcm(self.den, d);
        let (terms, prec) = self.rescaled(den);
        Self::raw(den, terms, min_prec(prec, Some(n * (den / d))))
    }

    fn rescaled(&self, den: i64) -> (BTreeMap<i64, Cyclo>, Option<i64>) {
        let f = den / self.den;
        (self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(), self.prec.map(|p| p * f))
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn prec(&self) -> Option<Q> {
        self.prec.map(|p| to_frac(p, self.den))
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// True when every coefficient is known to be zero: exact zero only.
    pub fn is_exact_zero(&self) -> bool {
        self.prec.is_none() && self.terms.is_empty()
    }

    pub fn valuation(&self) -> Option<Q> {
        self.terms.keys().next().map(|k| to_frac(*k, self.den))
    }

    pub fn leading(&self) -> Option<(Q, Cyclo)> {
        self.terms.iter().next().map(|(k, c)| (to_frac(*k, self.den), c.clone()))
    }

    pub fn coeff(&self, e: &Q) -> Cyclo {
        let scaled = e * Q::from_integer(self.den.into());
        if !scaled.is_integer() {
            return Cyclo::zero();
        }
        scaled.to_integer().to_i64().and_then(|k| self.terms.get(&k).cloned()).unwrap_or_else(Cyclo::zero)
    }

    pub fn terms(&self) -> Vec<(Q, Cyclo)> {
        self.terms.iter().map(|(k, c)| (to_frac(*k, self.den), c.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The first term with exponent below `order`.
    pub fn first_nonzero_below(&self, order: &Q) -> Option<(Q, Cyclo)> {
        self.leading().filter(|(e, _)| e < order)
    }

    /// All coefficients below `order` are known and vanish.
    pub fn is_zero_below(&self, order: &Q) -> bool {
        self.first_nonzero_below(order).is_none() && self.prec().is_none_or(|p| &p >= order)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Self::raw(self.den, self.terms.iter().map(|(k, a)| (*k, a * c)).collect(), self.prec)
    }

    /// Multiplication by q^e.
    pub fn shift(&self, e: &Q) -> Self {
        let (n, d) = split(e);
        let den = lcm(self.den, d);
        let (terms, prec) = self.rescaled(den);
        let s = n * (den / d);
        Self::raw(den, terms.into_iter().map(|(k, c)| (k + s, c)).collect(), prec.map(|p| p + s))
    }

    /// The substitution q ↦ q^s for s > 0.
    pub fn substitute_power(&self, s: &Q) -> Self {
        assert!(s.is_positive(), "substitution exponent must be positive");
        let (n, d) = split(s);
        let den = self.den * d;
        Self::raw(den, self.terms.iter().map(|(k, c)| (k * n, c.clone())).collect(), self.prec.map(|p| p * n))
    }

    /// q·d/dq.
    pub fn q_derivative(&self) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, c.scale(&to_frac(*k, self.den)))).collect();
        Self::raw(self.den, terms, self.prec)
    }

    fn add_impl(&self, other: &Series, sign: bool) -> Series {
        let den = lcm(self.den, other.den);
        let (mut terms, pa) = self.rescaled(den);
        let (tb, pb) = other.rescaled(den);
        for (k, c) in tb {
            let slot = terms.entry(k).or_insert_with(Cyclo::zero);
            if sign {
                *slot += &c;
            } else {
                *slot = &*slot - &c;
            }
        }
        Self::raw(den, terms, min_prec(pa, pb))
    }

    fn mul_impl(&self, other: &Series) -> Series {
        if self.is_exact_zero() || other.is_exact_zero() {
            return Series::zero();
        }
        let den = lcm(self.den, other.den);
        let (ta, pa) = self.rescaled(den);
        let (tb, pb) = other.rescaled(den);
        // valuation of a truncated zero is its truncation
        let va = ta.keys().next().copied().or(pa).unwrap();
        let vb = tb.keys().next().copied().or(pb).unwrap();
        let prec = min_prec(pa.map(|p| p + vb), pb.map(|p| p + va));
        let mut out: BTreeMap<i64, Cyclo> = BTreeMap::new();
        for (ka, ca) in &ta {
            for (kb, cb) in &tb {
                let k = ka + kb;
                if prec.is_some_and(|p| k >= p) {
                    break;
                }
                let slot = out.entry(k).or_insert_with(Cyclo::zero);
                *slot += &(ca * cb);
            }
        }
        Self::raw(den, out, prec)
    }

    /// Multiplicative inverse; needs a known, nonzero leading term.
    pub fn inv(&self) -> Result<Series, QSeriesError> {
        let (&v, c0) = self.terms.iter().next().ok_or(QSeriesError::UnknownLeading)?;
        if self.terms.len() == 1 && self.prec.is_none() {
            return Ok(Self::raw(self.den, BTreeMap::from([(-v, c0.inv()?)]), None));
        }
        let p = self.prec.ok_or(QSeriesError::InsufficientTruncation)?;
        let c0_inv = c0.inv()?;
        let rel: Vec<(i64, Cyclo)> = self.terms.iter().skip(1).map(|(k, c)| (k - v, c * &c0_inv)).collect();
        let g = rel.iter().fold(0, |g, (k, _)| g.gcd(k)).max(1);
        let span = p - v;
        let count = ((span + g - 1) / g) as usize;
        let mut r: Vec<Cyclo> = Vec::with_capacity(count);
        for n in 0..count {
            if n == 0 {
                r.push(Cyclo::one());
                continue;
            }
            let mut acc = Cyclo::zero();
            for (k, b) in &rel {
                let j = (k / g) as usize;
                if j > n {
                    break;
                }
                if !r[n - j].is_zero() {
                    acc -= &(b * &r[n - j]);
                }
            }
            r.push(acc);
        }
        let terms = r.into_iter().enumerate().map(|(n, c)| (n as i64 * g - v, c * &c0_inv)).collect();
        Ok(Self::raw(self.den, terms, Some(p - 2 * v)))
    }

    pub fn div(&self, other: &Series) -> Result<Series, QSeriesError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Series, QSeriesError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Series::one();
        let mut e = e as u64;
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

    /// p(s) by Horner's rule.
    pub fn compose_poly(&self, p: &Poly) -> Series {
        let mut acc = Series::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &Series::constant(c.clone());
        }
        acc
    }

    /// Σ c·q^e at q^e = exp(2πiτe), without any tail.
    pub fn partial_sum(&self, tau: Complex64) -> Complex64 {
        let two_pi_i = Complex64::new(0.0, std::f64::consts::TAU);
        self.terms.iter().map(|(k, c)| c.to_complex() * (two_pi_i * tau * (*k as f64 / self.den as f64)).exp()).sum()
    }

    /// |c|·|q|^e for each retained term, in exponent order.
    pub(crate) fn term_magnitudes(&self, q_abs: f64) -> Vec<(f64, f64)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let e = *k as f64 / self.den as f64;
                (e, c.to_complex().norm() * q_abs.powf(e))
            })
            .collect()
    }

    /// One line per term, `num/den coefficient`, ascending exponents.
    pub fn to_export(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.terms {
            let e = to_frac(*k, self.den);
            out.push_str(&format!("{}/{} {}\n", e.numer(), e.denom(), cyclo_to_literal(c)));
        }
        out
    }
}

fn exponent_text(e: &Q) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms()
            .iter()
            .map(|(e, c)| {
                let coeff = cyclo_to_literal(c);
                if e.is_zero() {
                    return coeff;
                }
                let power = if e.is_one() { "q".to_string() } else { format!("q^{}", exponent_text(e)) };
                if c.is_one() {
                    power
                } else if (-c).is_one() {
                    format!("-{power}")
                } else if c.is_rational() {
                    format!("{coeff}*{power}")
                } else {
                    format!("({coeff})*{power}")
                }
            })
            .collect();
        if let Some(p) = self.prec() {
            parts.push(format!("O(q^{})", exponent_text(&p)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.add_impl(rhs, true)
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.add_impl(rhs, false)
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        self.mul_impl(rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&Cyclo::from_int(-1))
    }
}

impl From<Cyclo> for Series {
    fn from(c: Cyclo) -> Self {
        Series::constant(c)
    }
}
