//! Divisors on ℂP¹.
//!
//! The finite part of a divisor is kept as a pair of coprime monic
//! polynomials (effective part, polar part), which makes equality,
//! addition and restriction exact without factoring. [`Divisor::places`]
//! expands this into points: rational roots become `Finite` points and
//! whatever stays unsplit is reported as a square-free `Place`, one per
//! multiplicity class.

use std::collections::BTreeMap;
use std::fmt;

use super::cyclo::Cyclo;
use super::poly::Poly;
use super::ratfn::RatFn;
use super::ExactError;

/// A point of the sphere or a finite place carrying several conjugate points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(Cyclo),
    /// Monic square-free polynomial; stands for each of its roots.
    Place(Poly),
    Infinity,
}

impl Point {
    /// Number of points of ℂP¹ represented.
    pub fn weight(&self) -> usize {
        match self {
            Point::Place(p) => p.deg(),
            _ => 1,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Place(p) => write!(f, "[{p}]"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

/// An integral divisor: pos/neg are coprime monic polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Divisor {
    pos: Poly,
    neg: Poly,
    infinity: i64,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor { pos: Poly::one(), neg: Poly::one(), infinity: 0 }
    }

    /// Divisor of zeros of a nonzero polynomial, finite part only.
    pub fn of_poly(p: &Poly) -> Self {
        assert!(!p.is_zero());
        Divisor { pos: p.monic(), neg: Poly::one(), infinity: 0 }
    }

    pub fn from_parts(pos: &Poly, neg: &Poly, infinity: i64) -> Self {
        let g = Poly::gcd(pos, neg);
        let (pos, neg) = if g.is_one() {
            (pos.monic(), neg.monic())
        } else {
            (pos.exact_div(&g).monic(), neg.exact_div(&g).monic())
        };
        Divisor { pos, neg, infinity }
    }

    /// A single point with multiplicity.
    pub fn point(p: &Point, mult: i64) -> Self {
        match p {
            Point::Infinity => Divisor { infinity: mult, ..Self::zero() },
            Point::Finite(c) => {
                let lin = Poly::from_coeffs(vec![-c, Cyclo::one()]);
                Self::from_poly_power(&lin, mult)
            }
            Point::Place(q) => Self::from_poly_power(q, mult),
        }
    }

    fn from_poly_power(p: &Poly, mult: i64) -> Self {
        let pw = p.monic().pow(mult.unsigned_abs() as u32);
        if mult >= 0 {
            Divisor { pos: pw, neg: Poly::one(), infinity: 0 }
        } else {
            Divisor { pos: Poly::one(), neg: pw, infinity: 0 }
        }
    }

    pub fn effective_part(&self) -> &Poly {
        &self.pos
    }

    pub fn polar_part(&self) -> &Poly {
        &self.neg
    }

    pub fn infinity_mult(&self) -> i64 {
        self.infinity
    }

    pub fn is_zero(&self) -> bool {
        self.pos.is_one() && self.neg.is_one() && self.infinity == 0
    }

    pub fn is_effective(&self) -> bool {
        self.neg.is_one() && self.infinity >= 0
    }

    pub fn degree(&self) -> i64 {
        self.pos.deg() as i64 - self.neg.deg() as i64 + self.infinity
    }

    /// The same divisor with its multiplicity at ∞ dropped.
    pub fn finite(&self) -> Self {
        Divisor { infinity: 0, ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_parts(&(&self.pos * &other.pos), &(&self.neg * &other.neg), self.infinity + other.infinity)
    }

    pub fn neg(&self) -> Self {
        Divisor { pos: self.neg.clone(), neg: self.pos.clone(), infinity: -self.infinity }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        let k_abs = k.unsigned_abs() as u32;
        let (pos, neg) = (self.pos.pow(k_abs), self.neg.pow(k_abs));
        if k >= 0 {
            Divisor { pos, neg, infinity: self.infinity * k }
        } else {
            Divisor { pos: neg, neg: pos, infinity: self.infinity * k }
        }
    }

    /// Support as a reduced divisor: every point with multiplicity 1.
    pub fn support(&self) -> Self {
        Divisor {
            pos: (&self.pos * &self.neg).squarefree_part(),
            neg: Poly::one(),
            infinity: (self.infinity != 0) as i64,
        }
    }

    /// The part of self located on the support of `other`.
    pub fn restrict_to_support_of(&self, other: &Self) -> Self {
        let s = other.support();
        let restrict = |p: &Poly| -> Poly {
            let mut rest = p.clone();
            let mut out = Poly::one();
            let mut g = Poly::gcd(&rest, &s.pos);
            while !g.is_one() {
                out = &out * &g;
                rest = rest.exact_div(&g);
                g = Poly::gcd(&rest, &g);
            }
            out
        };
        Divisor {
            pos: restrict(&self.pos),
            neg: restrict(&self.neg),
            infinity: if s.infinity != 0 { self.infinity } else { 0 },
        }
    }

    /// Expansion into points and places with multiplicities.
    pub fn places(&self) -> BTreeMap<Point, i64> {
        let mut out = BTreeMap::new();
        for (poly, sign) in [(&self.pos, 1i64), (&self.neg, -1i64)] {
            if poly.is_constant() {
                continue;
            }
            for (factor, mult) in poly.squarefree_decomposition() {
                for pt in split_place(&factor) {
                    *out.entry(pt).or_insert(0) += sign * mult as i64;
                }
            }
        }
        if self.infinity != 0 {
            out.insert(Point::Infinity, self.infinity);
        }
        out.retain(|_, m| *m != 0);
        out
    }
}

/// Splits off rational roots of a monic square-free polynomial.
pub fn split_place(p: &Poly) -> Vec<Point> {
    let mut out = Vec::new();
    let mut rest = p.clone();
    let roots = if p.is_rational() {
        p.rational_roots().unwrap_or_default()
    } else if p.coeff(0).is_zero() {
        vec![num_traits::Zero::zero()]
    } else {
        Vec::new()
    };
    for r in roots {
        let c = Cyclo::from_rational(r);
        rest = rest.exact_div(&Poly::from_coeffs(vec![-&c, Cyclo::one()]));
        out.push(Point::Finite(c));
    }
    if !rest.is_constant() {
        if rest.deg() == 1 {
            out.push(Point::Finite(-&rest.monic().coeff(0)));
        } else {
            out.push(Point::Place(rest.monic()));
        }
    }
    out
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = self.places();
        if places.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = places.iter().map(|(p, m)| format!("{p}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Zero, pole and ramification divisors of a rational map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnDivisors {
    pub zeros: Divisor,
    pub poles: Divisor,
    pub ram: Divisor,
}

/// Zero, pole and ramification divisors of a nonconstant rational function.
pub fn divisors(f: &RatFn) -> Result<FnDivisors, ExactError> {
    if f.is_constant() {
        return Err(ExactError::ConstantInput);
    }
    let (num, den) = (f.num(), f.den());
    let (dn, dd) = (num.deg() as i64, den.deg() as i64);
    let zeros = Divisor { pos: num.monic(), neg: Poly::one(), infinity: (dd - dn).max(0) };
    let poles = Divisor { pos: den.monic(), neg: Poly::one(), infinity: (dn - dd).max(0) };
    let d = f.degree();
    // finite points, poles included: Wronskian P'Q - PQ'
    let w = &(&num.derivative() * den) - &(num * &den.derivative());
    let finite = Divisor::of_poly(&w);
    // ∞ through the chart w = 1/z
    let (pt, qt) = f.chart_at_infinity();
    let wt = &(&pt.derivative() * &qt) - &(&pt * &qt.derivative());
    let at_inf = wt.valuation() as i64;
    let ram = Divisor { infinity: at_inf, ..finite };
    let expected = 2 * d as i64 - 2;
    assert_eq!(ram.degree(), expected, "Riemann-Hurwitz count failed for {f}");
    Ok(FnDivisors { zeros, poles, ram })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn square_map() {
        let d = divisors(&RatFn::from_poly(p(&[0, 0, 1]))).unwrap();
        let places = d.ram.places();
        assert_eq!(places.len(), 2);
        assert_eq!(places[&Point::Finite(Cyclo::zero())], 1);
        assert_eq!(places[&Point::Infinity], 1);
        assert_eq!(d.zeros.degree(), 2);
        assert_eq!(d.poles.places()[&Point::Infinity], 2);
    }

    #[test]
    fn moebius_unramified() {
        let f = RatFn::from_parts(p(&[1, 2]), p(&[3, 1]));
        assert!(divisors(&f).unwrap().ram.is_zero());
    }

    #[test]
    fn klein_map_has_twenty() {
        let k =
            RatFn::from_parts(p(&[0, -11, 0, 0, 0, 0, 66, 0, 0, 0, 0, 1]), p(&[1, 0, 0, 0, 0, -66, 0, 0, 0, 0, -11]));
        assert_eq!(divisors(&k).unwrap().ram.degree(), 20);
    }

    #[test]
    fn constant_rejected() {
        assert!(divisors(&RatFn::from_int(3)).is_err());
    }

    #[test]
    fn restriction() {
        let a = Divisor::of_poly(&(p(&[-1, 1]).pow(2) * p(&[2, 1])));
        let b = Divisor::of_poly(&p(&[-1, 1]));
        assert_eq!(a.restrict_to_support_of(&b), Divisor::of_poly(&p(&[-1, 1]).pow(2)));
    }

    #[test]
    fn places_split_rational_roots() {
        let d = Divisor::of_poly(&(p(&[-1, 1]) * p(&[1, 0, 1]).pow(2)));
        let places = d.places();
        assert_eq!(places[&Point::Finite(Cyclo::one())], 1);
        assert_eq!(places[&Point::Place(p(&[1, 0, 1]))], 2);
    }
}
