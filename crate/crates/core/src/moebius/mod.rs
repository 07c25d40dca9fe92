//! Möbius transformations, their action on rational functions, and exact
//! checks for automorphic forms and equivariant maps.

mod config;

pub use config::{load_group_config, load_group_config_file, GroupConfig, InvariantForm, Syzygy, BUILTIN_GROUPS};

use std::fmt;

use thiserror::Error;

use crate::exact::{Cyclo, ExactError, Matrix, Poly, RatFn};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoebiusError {
    #[error("degenerate Möbius matrix (ad - bc = 0)")]
    Degenerate,
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("config validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// z ↦ (az + b)/(cz + d), kept with the given representative entries.
///
/// Equality is projective: two matrices are equal when proportional.
#[derive(Clone)]
pub struct Moebius {
    a: Cyclo,
    b: Cyclo,
    c: Cyclo,
    d: Cyclo,
}

impl Moebius {
    pub fn new(a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo) -> Result<Self, MoebiusError> {
        let m = Moebius { a, b, c, d };
        if m.det().is_zero() {
            return Err(MoebiusError::Degenerate);
        }
        Ok(m)
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self, MoebiusError> {
        Self::new(Cyclo::from_int(a), Cyclo::from_int(b), Cyclo::from_int(c), Cyclo::from_int(d))
    }

    pub fn identity() -> Self {
        Moebius { a: Cyclo::one(), b: Cyclo::zero(), c: Cyclo::zero(), d: Cyclo::one() }
    }

    pub fn entries(&self) -> [&Cyclo; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn matrix(&self) -> Matrix<Cyclo> {
        Matrix::from_rows(vec![vec![self.a.clone(), self.b.clone()], vec![self.c.clone(), self.d.clone()]])
    }

    pub fn det(&self) -> Cyclo {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Representative whose first nonzero entry is 1.
    pub fn canonical(&self) -> Self {
        let lead = if self.a.is_zero() { &self.b } else { &self.a };
        let inv = lead.inv().expect("nonzero entry");
        Moebius { a: &self.a * &inv, b: &self.b * &inv, c: &self.c * &inv, d: &self.d * &inv }
    }

    /// Matrix product: (self ∘ other)(z) = self(other(z)).
    pub fn compose(&self, other: &Self) -> Self {
        let m = self.matrix().mul(&other.matrix());
        Moebius { a: m.get(0, 0).clone(), b: m.get(0, 1).clone(), c: m.get(1, 0).clone(), d: m.get(1, 1).clone() }
    }

    /// Adjugate representative of the inverse.
    pub fn inverse(&self) -> Self {
        Moebius { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    /// The map as a rational function of z.
    pub fn as_ratfn(&self) -> RatFn {
        RatFn::from_parts(
            Poly::from_coeffs(vec![self.b.clone(), self.a.clone()]),
            Poly::from_coeffs(vec![self.d.clone(), self.c.clone()]),
        )
    }

    /// The factor cz + d of the stored representative.
    pub fn automorphy_factor(&self) -> RatFn {
        RatFn::from_poly(Poly::from_coeffs(vec![self.d.clone(), self.c.clone()]))
    }

    /// T ∘ f = (af + b)/(cf + d); at f = ∞ this is a/c.
    pub fn apply(&self, f: &RatFn) -> RatFn {
        if f.is_infinity() {
            return if self.c.is_zero() { RatFn::infinity() } else { RatFn::constant(&self.a / &self.c) };
        }
        let (p, q) = (f.num(), f.den());
        let num = &p.scale(&self.a) + &q.scale(&self.b);
        let den = &p.scale(&self.c) + &q.scale(&self.d);
        if den.is_zero() {
            return RatFn::infinity();
        }
        RatFn::from_parts(num, den)
    }

    /// Numeric action on the Riemann sphere (None stands for ∞).
    pub fn apply_complex(&self, z: Option<num_complex::Complex64>) -> Option<num_complex::Complex64> {
        let [a, b, c, d] = self.entries().map(Cyclo::to_complex);
        match z {
            None => (c.norm() > 0.0).then(|| a / c),
            Some(z) => {
                let den = c * z + d;
                (den.norm() > 0.0).then(|| (a * z + b) / den)
            }
        }
    }
}

impl PartialEq for Moebius {
    fn eq(&self, other: &Self) -> bool {
        let (x, y) = (self.canonical(), other.canonical());
        x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d
    }
}

impl Eq for Moebius {}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Outcome of an exact identity check; `residual` is zero exactly when it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub holds: bool,
    pub residual: RatFn,
}

/// Cross-ratio value; `degenerate` marks coincident arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossRatio {
    pub value: RatFn,
    pub degenerate: bool,
}

fn projective_det(x: &RatFn, y: &RatFn) -> Poly {
    // x = P/Q, y = R/S in homogeneous form; ∞ = (1, 0)
    &(x.num() * y.den()) - &(y.num() * x.den())
}

/// (a − c)(b − d) / ((a − d)(b − c)), computed projectively so ∞ is allowed.
pub fn cross_ratio(a: &RatFn, b: &RatFn, c: &RatFn, d: &RatFn) -> CrossRatio {
    let num = &projective_det(a, c) * &projective_det(b, d);
    let den = &projective_det(a, d) * &projective_det(b, c);
    let degenerate = num.is_zero() || den.is_zero() || projective_det(a, b).is_zero() || projective_det(c, d).is_zero();
    if den.is_zero() {
        return CrossRatio { value: RatFn::infinity(), degenerate };
    }
    CrossRatio { value: RatFn::from_parts(num, den), degenerate }
}

/// Checks α(A∘z) = χ·(cz + d)^k·α(z) exactly, using the stored representative of A.
pub fn form_invariance_check(alpha: &RatFn, k: i64, chi: &Cyclo, a: &Moebius) -> CheckResult {
    // polynomial of degree ≤ −k: compare (cz + d)^(−k)·α(A∘z) with χα, no gcds needed
    if alpha.is_polynomial() && k <= -(alpha.num().deg() as i64) {
        let e = (-k) as usize;
        let u = Poly::from_coeffs(vec![a.b.clone(), a.a.clone()]);
        let v = Poly::from_coeffs(vec![a.d.clone(), a.c.clone()]);
        let diff = &alpha.num().homogeneous_compose(&u, &v, e) - &alpha.num().scale(chi);
        let residual = if diff.is_zero() { RatFn::zero() } else { RatFn::from_parts(diff, v.pow(e as u32)) };
        return CheckResult { holds: residual.is_zero(), residual };
    }
    let lhs = alpha.compose(&a.as_ratfn());
    let rhs = &a.automorphy_factor().pow(k) * &alpha.scale(chi);
    let residual = &lhs - &rhs;
    CheckResult { holds: residual.is_zero(), residual }
}

/// The constant χ with α(A∘z) = χ·(cz + d)^k·α(z), if there is one.
pub fn discover_character(alpha: &RatFn, k: i64, a: &Moebius) -> Option<Cyclo> {
    let lhs = alpha.compose(&a.as_ratfn());
    let rhs = &a.automorphy_factor().pow(k) * alpha;
    (&lhs / &rhs).as_constant()
}

/// Result of an equivariance check; `failing` names the first failing pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceResult {
    pub holds: bool,
    pub failing: Option<(usize, RatFn)>,
}

/// Checks f ∘ A = ρ(A) ∘ f for every pair.
pub fn equivariance_check(f: &RatFn, pairs: &[(Moebius, Moebius)]) -> EquivarianceResult {
    for (i, (a, rho)) in pairs.iter().enumerate() {
        let lhs = f.compose(&a.as_ratfn());
        let rhs = rho.apply(f);
        if lhs != rhs {
            let residual = if lhs.is_infinity() || rhs.is_infinity() { RatFn::infinity() } else { &lhs - &rhs };
            return EquivarianceResult { holds: false, failing: Some((i, residual)) };
        }
    }
    EquivarianceResult { holds: true, failing: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn rf(s: &str) -> RatFn {
        RatFn::from_poly(parse_poly(s, 1).unwrap())
    }

    #[test]
    fn apply_examples() {
        let f = rf("z^3 - 2*z + 5");
        assert_eq!(Moebius::identity().apply(&f), f);
        let swap = Moebius::from_ints(0, 1, 1, 0).unwrap();
        assert_eq!(swap.apply(&RatFn::z()), RatFn::z().inv());
        let tr = Moebius::from_ints(1, 1, 0, 1).unwrap();
        assert_eq!(tr.apply(&rf("z^2")), rf("z^2 + 1"));
        assert!(Moebius::from_ints(1, 2, 2, 4).is_err());
    }

    #[test]
    fn cross_ratio_normalization() {
        let w = RatFn::from_parts(parse_poly("z^2 + 1", 1).unwrap(), parse_poly("z - 3", 1).unwrap());
        let cr = cross_ratio(&RatFn::infinity(), &RatFn::zero(), &RatFn::one(), &w);
        assert_eq!(cr.value, w);
        assert!(!cr.degenerate);
        let (a, b, c, d) = (rf("z"), rf("z^2"), rf("2*z + 1"), rf("z^3 - 1"));
        assert_eq!(cross_ratio(&a, &b, &c, &d).value, cross_ratio(&b, &a, &d, &c).value);
        assert!(cross_ratio(&a, &a, &c, &d).degenerate);
    }

    #[test]
    fn invariance_examples() {
        // z(1/z) = z^{-2}·z, so z does pass for the inversion at weight −2
        let inv = Moebius::from_ints(0, 1, 1, 0).unwrap();
        assert!(form_invariance_check(&RatFn::z(), -2, &Cyclo::one(), &inv).holds);
        let tr = Moebius::from_ints(1, 1, 0, 1).unwrap();
        let r = form_invariance_check(&RatFn::z(), -2, &Cyclo::one(), &tr);
        assert!(!r.holds);
        assert_eq!(r.residual, RatFn::one());
        // v4(iz) = i v4(z) and (ζ8^{-1})^{-6} = -i
        let rot = Moebius::new(Cyclo::zeta(8), Cyclo::zero(), Cyclo::zero(), Cyclo::zeta_pow(8, -1)).unwrap();
        let v4 = rf("z^5 - z");
        assert!(form_invariance_check(&v4, -6, &Cyclo::from_int(-1), &rot).holds);
        assert_eq!(discover_character(&v4, -6, &rot), Some(Cyclo::from_int(-1)));
    }

    #[test]
    fn equivariance_examples() {
        let pairs = vec![(Moebius::from_ints(1, 1, 0, 1).unwrap(), Moebius::identity())];
        let r = equivariance_check(&rf("z^2"), &pairs);
        assert!(!r.holds);
        assert_eq!(r.failing.unwrap().1, rf("2*z + 1"));
        let m = Moebius::from_ints(2, 1, 1, 1).unwrap();
        assert!(equivariance_check(&RatFn::z(), &[(m.clone(), m)]).holds);
    }

    #[test]
    fn projective_equality() {
        let a = Moebius::from_ints(2, 4, 6, 10).unwrap();
        let b = Moebius::from_ints(1, 2, 3, 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.compose(&a.inverse()), Moebius::identity());
    }
}
