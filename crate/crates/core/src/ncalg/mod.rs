//! Non-commutative calculus: the free algebra in φ₁, φ₂, …, its evaluation
//! on matrix-valued functions, and the matrix D operator and deformations.
//!
//! The vector field is X = d/dz throughout, so φ_k(f) = −½·ḟ⁻¹·f^(k+1).

mod matfn;
mod poly;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exact::{Cyclo, ExactError, RatFn};

pub use matfn::{gen_moebius_apply, GenMoebius, MatFn};
pub use poly::{nc_derive, q_compose_step, s1, s_poly, NcPoly, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("matrix is not invertible over the function field")]
    Singular,
    #[error("ḟ is not invertible; f is not regular")]
    NotRegular,
    #[error("f̈ vanishes identically or is singular; affine-type input")]
    Degenerate,
    #[error("matrix sizes differ")]
    SizeMismatch,
    #[error("expression still contains X{0}")]
    Unsubstituted(u32),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// ḟ, f̈, … and ḟ⁻¹ with the φ_k built on demand.
pub struct Jet {
    derivs: Vec<MatFn>,
    fdot_inv: MatFn,
    phis: BTreeMap<u32, MatFn>,
}

impl Jet {
    pub fn new(f: &MatFn) -> Result<Self, NcError> {
        let fdot = f.derivative();
        let fdot_inv = fdot.inverse().map_err(|_| NcError::NotRegular)?;
        Ok(Jet { derivs: vec![f.clone(), fdot], fdot_inv, phis: BTreeMap::new() })
    }

    /// f^(k).
    pub fn deriv(&mut self, k: usize) -> &MatFn {
        while self.derivs.len() <= k {
            let next = self.derivs.last().unwrap().derivative();
            self.derivs.push(next);
        }
        &self.derivs[k]
    }

    pub fn phi(&mut self, k: u32) -> MatFn {
        if let Some(p) = self.phis.get(&k) {
            return p.clone();
        }
        let fk = self.deriv(k as usize + 1).clone();
        let p = self.fdot_inv.mul(&fk).scale(&RatFn::constant(Cyclo::from_frac(-1, 2)));
        self.phis.insert(k, p.clone());
        p
    }

    pub fn size(&self) -> usize {
        self.derivs[0].size()
    }

    pub fn eval(&mut self, p: &NcPoly) -> MatFn {
        let n = self.size();
        let mut acc = MatFn::scalar(n, &RatFn::zero());
        for (w, c) in p.terms() {
            let mut m = MatFn::scalar(n, c);
            for &k in &w.0 {
                m = m.mul(&self.phi(k));
            }
            acc = acc.add(&m);
        }
        acc
    }
}

/// P(f) with φ_k ↦ −½·ḟ⁻¹·f^(k+1).
pub fn nc_eval(p: &NcPoly, f: &MatFn) -> Result<MatFn, NcError> {
    Ok(Jet::new(f)?.eval(p))
}

/// Rational expressions over X₀, X₁, … and φ-polynomials.
#[derive(Clone, PartialEq, Debug)]
pub enum NcExpr {
    X(u32),
    Poly(NcPoly),
    Scalar(RatFn),
    Add(Box<NcExpr>, Box<NcExpr>),
    Mul(Box<NcExpr>, Box<NcExpr>),
    Neg(Box<NcExpr>),
    Inv(Box<NcExpr>),
}

impl NcExpr {
    pub fn x(n: u32) -> Self {
        NcExpr::X(n)
    }

    pub fn add(self, o: NcExpr) -> Self {
        NcExpr::Add(Box::new(self), Box::new(o))
    }

    pub fn mul(self, o: NcExpr) -> Self {
        NcExpr::Mul(Box::new(self), Box::new(o))
    }

    pub fn neg(self) -> Self {
        NcExpr::Neg(Box::new(self))
    }

    pub fn inv(self) -> Self {
        NcExpr::Inv(Box::new(self))
    }

    /// Xₙ ↦ Sₙ₊₁, extended multiplicatively and through inverses.
    pub fn substitute(&self) -> NcExpr {
        match self {
            NcExpr::X(n) => NcExpr::Poly(s_poly(n + 1)),
            NcExpr::Poly(_) | NcExpr::Scalar(_) => self.clone(),
            NcExpr::Add(a, b) => a.substitute().add(b.substitute()),
            NcExpr::Mul(a, b) => a.substitute().mul(b.substitute()),
            NcExpr::Neg(a) => a.substitute().neg(),
            NcExpr::Inv(a) => a.substitute().inv(),
        }
    }

    pub fn eval(&self, jet: &mut Jet) -> Result<MatFn, NcError> {
        let n = jet.size();
        Ok(match self {
            NcExpr::X(k) => return Err(NcError::Unsubstituted(*k)),
            NcExpr::Poly(p) => jet.eval(p),
            NcExpr::Scalar(r) => MatFn::scalar(n, r),
            NcExpr::Add(a, b) => a.eval(jet)?.add(&b.eval(jet)?),
            NcExpr::Mul(a, b) => a.eval(jet)?.mul(&b.eval(jet)?),
            NcExpr::Neg(a) => a.eval(jet)?.neg(),
            NcExpr::Inv(a) => a.eval(jet)?.inverse()?,
        })
    }
}

impl fmt::Display for NcExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcExpr::X(n) => write!(f, "X{n}"),
            NcExpr::Poly(p) => write!(f, "({p})"),
            NcExpr::Scalar(r) => write!(f, "({r})"),
            NcExpr::Add(a, b) => write!(f, "{a} + {b}"),
            NcExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            NcExpr::Neg(a) => write!(f, "-{a}"),
            NcExpr::Inv(a) => write!(f, "[{a}]^-1"),
        }
    }
}

/// The operator f ↦ f + ḟ·[E∘_q S₁ + φ₁]⁻¹.
#[derive(Clone, PartialEq, Debug)]
pub struct SubstitutionImage {
    pub inner: NcExpr,
}

impl SubstitutionImage {
    pub fn apply(&self, f: &MatFn) -> Result<MatFn, NcError> {
        let mut jet = Jet::new(f)?;
        let bracket = self.inner.eval(&mut jet)?.add(&jet.phi(1));
        let fdot = jet.deriv(1).clone();
        Ok(f.add(&fdot.mul(&bracket.inverse()?)))
    }
}

impl fmt::Display for SubstitutionImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Id + X[{} + (p1)]^-1", self.inner)
    }
}

pub fn theorem2_substitute(e: &NcExpr) -> SubstitutionImage {
    SubstitutionImage { inner: e.substitute() }
}

/// f − 2ḟf̈⁻¹ḟ.
pub fn nc_d_operator(f: &MatFn) -> Result<MatFn, NcError> {
    let fdot = f.derivative();
    let fddot = fdot.derivative();
    let inv = fddot.inverse().map_err(|_| NcError::Degenerate)?;
    let two = RatFn::from_int(2);
    Ok(f.sub(&fdot.mul(&inv).mul(&fdot).scale(&two)))
}

/// f + ḟ·[H(f) + φ₁(f)]⁻¹.
pub fn nc_phi_deform(f: &MatFn, h: &NcPoly) -> Result<MatFn, NcError> {
    let mut jet = Jet::new(f)?;
    let bracket = jet.eval(h).add(&jet.phi(1));
    let fdot = jet.deriv(1).clone();
    Ok(f.add(&fdot.mul(&bracket.inverse()?)))
}

/// f + t·ḟ·[1 − (t/2)·ḟ⁻¹f̈]⁻¹.
pub fn deform_family(f: &MatFn, t: &RatFn) -> Result<MatFn, NcError> {
    let n = f.size();
    let fdot = f.derivative();
    let fdot_inv = fdot.inverse().map_err(|_| NcError::NotRegular)?;
    let half_t = t.scale(&Cyclo::from_frac(1, 2));
    let bracket = MatFn::identity(n).sub(&fdot_inv.mul(&fdot.derivative()).scale(&half_t));
    Ok(f.add(&fdot.mul(&bracket.inverse()?).scale(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn rf(s: &str) -> RatFn {
        RatFn::from_poly(parse_poly(s, 1).unwrap())
    }

    #[test]
    fn scalar_values() {
        let f = MatFn::diagonal(vec![rf("z^3")]);
        let s = nc_eval(&s1(), &f).unwrap();
        assert_eq!(
            s.as_scalar().unwrap(),
            &RatFn::from_parts(parse_poly("2", 1).unwrap(), parse_poly("z^2", 1).unwrap())
        );
        let g = MatFn::diagonal(vec![rf("z^2")]);
        assert_eq!(nc_d_operator(&g).unwrap().as_scalar().unwrap(), &rf("-3*z^2"));
        assert_eq!(nc_eval(&NcPoly::one(), &g).unwrap(), MatFn::identity(1));
    }

    #[test]
    fn phi1_of_diagonal() {
        let f = MatFn::diagonal(vec![rf("z^2"), rf("z^3")]);
        let p = nc_eval(&NcPoly::gen(1), &f).unwrap();
        let expected = MatFn::diagonal(vec![&rf("-1").scale(&Cyclo::from_frac(1, 2)) / &rf("z"), &rf("-1") / &rf("z")]);
        assert_eq!(p, expected);
    }

    #[test]
    fn affine_input_is_degenerate() {
        let f = MatFn::from_rows(vec![vec![rf("z"), rf("1")], vec![rf("2"), rf("3*z")]]);
        assert_eq!(nc_d_operator(&f), Err(NcError::Degenerate));
    }

    #[test]
    fn deformation_family_scalar() {
        let f = MatFn::diagonal(vec![rf("z^2")]);
        assert_eq!(deform_family(&f, &RatFn::zero()).unwrap(), f);
        let t = RatFn::from_int(3);
        // z² + 4tz²/(2z − t)
        let expected = &rf("z^2") + &(&rf("12*z^2") / &rf("2*z - 3"));
        assert_eq!(deform_family(&f, &t).unwrap().as_scalar().unwrap(), &expected);
        assert_eq!(nc_phi_deform(&f, &NcPoly::zero()).unwrap(), nc_d_operator(&f).unwrap());
    }

    #[test]
    fn substitution_image_of_x0() {
        let f = MatFn::diagonal(vec![rf("z^3 + z")]);
        let op = theorem2_substitute(&NcExpr::x(0));
        assert_eq!(op.apply(&f).unwrap(), nc_phi_deform(&f, &s1()).unwrap());
        assert!(matches!(NcExpr::x(0).eval(&mut Jet::new(&f).unwrap()), Err(NcError::Unsubstituted(0))));
    }
}
