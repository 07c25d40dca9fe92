//! Non-commutative polynomials in φ₁, φ₂, … and the Sₙ hierarchy.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::RatFn;

/// A monomial φ_{k₁}φ_{k₂}⋯ stored by its indices (all ≥ 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn gen(k: u32) -> Self {
        assert!(k >= 1, "generators start at φ₁");
        Word(vec![k])
    }

    /// Σ kᵢ.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    fn partition(&self) -> Vec<u32> {
        let mut p = self.0.clone();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

/// Weight, then number of factors, then the index partition (larger first),
/// then the word itself (larger first).
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.0.len().cmp(&other.0.len()))
            .then_with(|| other.partition().cmp(&self.partition()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let k = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == k).count();
            parts.push(if run == 1 { format!("p{k}") } else { format!("p{k}^{run}") });
            i += run;
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Finite sum of words with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, RatFn>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(RatFn::one(), Word::one())
    }

    pub fn gen(k: u32) -> Self {
        Self::monomial(RatFn::one(), Word::gen(k))
    }

    pub fn monomial(c: RatFn, w: Word) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, &c);
        p
    }

    /// Σ c·φ_word from integer coefficients.
    pub fn from_int_terms(terms: &[(i64, &[u32])]) -> Self {
        let mut p = NcPoly::zero();
        for (c, w) in terms {
            p.add_term(Word(w.to_vec()), &RatFn::from_int(*c));
        }
        p
    }

    fn add_term(&mut self, w: Word, c: &RatFn) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &[u32]) -> RatFn {
        self.terms.get(&Word(w.to_vec())).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest generator index that occurs.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max().unwrap_or(0)
    }

    /// The common weight of every monomial, if there is one.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(Word::weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        let mut p = NcPoly::zero();
        for (w, a) in &self.terms {
            p.add_term(w.clone(), &(a * c));
        }
        p
    }

    /// Sum of coefficients: the value at φ_k ≡ 1.
    pub fn coefficient_sum(&self) -> RatFn {
        self.terms.values().fold(RatFn::zero(), |acc, c| &acc + c)
    }

    /// Image in the commutative quotient; each word is sorted to its partition.
    pub fn classical_limit(&self) -> NcPoly {
        let mut p = NcPoly::zero();
        for (w, c) in &self.terms {
            p.add_term(Word(w.partition()), c);
        }
        p
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut p = self.clone();
        for (w, c) in &rhs.terms {
            p.add_term(w.clone(), c);
        }
        p
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self + &(-rhs)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&RatFn::from_int(-1))
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut p = NcPoly::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                p.add_term(wa.concat(wb), &(ca * cb));
            }
        }
        p
    }
}

fn coeff_text(c: &RatFn) -> String {
    match c.as_constant() {
        Some(k) if k.is_rational() => k.to_string(),
        _ => format!("({c})"),
    }
}

/// `p3 + 4 p2 p1 + 4 p1 p2 + 12 p1^3`
impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_constant().and_then(|k| k.as_rational()) {
                Some(r) if r < num_traits::Zero::zero() => (true, RatFn::constant((-r).into())),
                _ => (false, c.clone()),
            };
            let sep = match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let body = if w.0.is_empty() {
                coeff_text(&mag)
            } else if mag.is_one() {
                w.to_string()
            } else {
                format!("{} {w}", coeff_text(&mag))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// ∂ with ∂φ_k = φ_{k+1} + 2φ₁φ_k, extended by Leibniz; coefficients are
/// differentiated in z.
pub fn nc_derive(p: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    let two = RatFn::from_int(2);
    for (w, c) in &p.terms {
        out.add_term(w.clone(), &c.derivative());
        for (i, &k) in w.0.iter().enumerate() {
            let (head, tail) = (&w.0[..i], &w.0[i + 1..]);
            let mut next = head.to_vec();
            next.push(k + 1);
            next.extend_from_slice(tail);
            out.add_term(Word(next), c);
            let mut lead = head.to_vec();
            lead.extend_from_slice(&[1, k]);
            lead.extend_from_slice(tail);
            out.add_term(Word(lead), &(c * &two));
        }
    }
    out
}

/// ∂H − (φ₁H − Hφ₁).
pub fn q_compose_step(h: &NcPoly) -> NcPoly {
    let phi1 = NcPoly::gen(1);
    let bracket = &(&phi1 * h) - &(h * &phi1);
    &nc_derive(h) - &bracket
}

/// S₁ = φ₂ + 3φ₁².
pub fn s1() -> NcPoly {
    NcPoly::from_int_terms(&[(1, &[2]), (3, &[1, 1])])
}

/// S₀ = 1, S₁ = φ₂ + 3φ₁², Sₙ₊₁ = X∘_q Sₙ.
pub fn s_poly(n: u32) -> NcPoly {
    if n == 0 {
        return NcPoly::one();
    }
    let mut s = s1();
    for _ in 1..n {
        s = q_compose_step(&s);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivation_examples() {
        assert!(nc_derive(&NcPoly::one()).is_zero());
        assert_eq!(nc_derive(&NcPoly::gen(1)), NcPoly::from_int_terms(&[(1, &[2]), (2, &[1, 1])]));
        let expected = NcPoly::from_int_terms(&[(1, &[3]), (5, &[1, 2]), (3, &[2, 1]), (12, &[1, 1, 1])]);
        assert_eq!(nc_derive(&s1()), expected);
    }

    #[test]
    fn q_composition() {
        assert!(q_compose_step(&NcPoly::one()).is_zero());
        assert_eq!(q_compose_step(&NcPoly::gen(1)), nc_derive(&NcPoly::gen(1)));
        assert_eq!(s_poly(2).to_string(), "p3 + 4 p2 p1 + 4 p1 p2 + 12 p1^3");
    }

    #[test]
    fn s3_and_weights() {
        assert_eq!(
            s_poly(3).to_string(),
            "p4 + 5 p3 p1 + 5 p1 p3 + 8 p2^2 + 24 p2 p1^2 + 20 p1 p2 p1 + 24 p1^2 p2 + 72 p1^4"
        );
        for n in 1..6 {
            assert_eq!(s_poly(n).homogeneous_weight(), Some(n + 1));
        }
        assert_eq!(s_poly(0).to_string(), "1");
    }

    #[test]
    fn classical_limit_of_s2() {
        assert_eq!(s_poly(2).classical_limit().to_string(), "p3 + 8 p2 p1 + 12 p1^3");
    }

    #[test]
    fn negative_and_function_coefficients() {
        let p = &NcPoly::gen(2) - &NcPoly::monomial(RatFn::z(), Word(vec![1, 1]));
        assert_eq!(p.to_string(), "p2 + (-z) p1^2");
        assert_eq!((-&NcPoly::gen(1)).to_string(), "-p1");
    }
}
