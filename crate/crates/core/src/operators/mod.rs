//! Commutative operator calculus relative to a meromorphic 1-form θ = α dz.
//!
//! Dots denote derivatives along the dual field X = (1/α) d/dz, so
//! ḟ = f′/α. The pre-Schwarzian is φ = −f̈/(2ḟ), the Schwarzian is
//! S = φ̇ + φ² (the θ-coefficient, so the invariant object is S·θ²),
//! and the D operator is D f = f − 2ḟ²/f̈.

pub mod identities;
mod lift;
mod periods;

pub use lift::{legendrian_lift_series, LiftSeries};
pub use periods::{period_residues, PeriodEntry, PeriodValue};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{Cyclo, ExactError, Poly, RatFn, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("operation needs a nonconstant function")]
    ConstantInput,
    #[error("the 1-form must be finite and nonzero")]
    ZeroForm,
    #[error("denominator vanishes identically")]
    DegenerateDenominator,
    #[error("weight {weight} is smaller than deg α = {degree}")]
    WeightTooSmall { weight: i64, degree: usize },
    #[error("singular base point: {0}")]
    Singular(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Coefficient α of θ = α dz; the dual field is X = (1/α) d/dz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCoeff {
    alpha: RatFn,
}

impl FormCoeff {
    pub fn new(alpha: RatFn) -> Result<Self, OperatorError> {
        if alpha.is_zero() || alpha.is_infinity() {
            return Err(OperatorError::ZeroForm);
        }
        Ok(FormCoeff { alpha })
    }

    pub fn dz() -> Self {
        FormCoeff { alpha: RatFn::one() }
    }

    /// θ = dg.
    pub fn differential(g: &RatFn) -> Result<Self, OperatorError> {
        if g.is_constant() {
            return Err(OperatorError::ConstantInput);
        }
        Self::new(g.derivative())
    }

    pub fn alpha(&self) -> &RatFn {
        &self.alpha
    }

    /// X(f) = f′/α.
    pub fn dot(&self, f: &RatFn) -> RatFn {
        if self.alpha.is_one() {
            f.derivative()
        } else {
            &f.derivative() / &self.alpha
        }
    }

    /// The form s·θ.
    pub fn times(&self, s: &RatFn) -> Result<Self, OperatorError> {
        Self::new(s * &self.alpha)
    }
}

/// A value that may be flagged as degenerate (constant output of the 𝔑 set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flagged {
    pub value: RatFn,
    pub degenerate: bool,
}

fn first_two(f: &RatFn, theta: &FormCoeff) -> Result<(RatFn, RatFn), OperatorError> {
    if f.is_constant() {
        return Err(OperatorError::ConstantInput);
    }
    let fd = theta.dot(f);
    let fdd = theta.dot(&fd);
    Ok((fd, fdd))
}

/// φ = −f̈/(2ḟ).
pub fn pre_schwarzian(f: &RatFn, theta: &FormCoeff) -> Result<RatFn, OperatorError> {
    let (fd, fdd) = first_two(f, theta)?;
    Ok((&fdd / &fd).scale(&Cyclo::from_frac(-1, 2)))
}

/// S = X(φ) + φ², the θ-coefficient of the Schwarzian.
pub fn schwarzian(f: &RatFn, theta: &FormCoeff) -> Result<RatFn, OperatorError> {
    let phi = pre_schwarzian(f, theta)?;
    Ok(&theta.dot(&phi) + &(&phi * &phi))
}

/// D f = f − 2ḟ²/f̈; flagged constant on the degenerate set 𝔑.
///
/// (f, θ) lies in 𝔑 exactly when f̈ ≡ 0 (output ∞) or f − 2ḟ²/f̈ is constant.
pub fn d_operator(f: &RatFn, theta: &FormCoeff) -> Result<Flagged, OperatorError> {
    let (fd, fdd) = first_two(f, theta)?;
    if fdd.is_zero() {
        return Ok(Flagged { value: RatFn::infinity(), degenerate: true });
    }
    let value = f - &(&(&fd * &fd) / &fdd).scale(&Cyclo::from_int(2));
    let degenerate = value.is_constant();
    Ok(Flagged { value, degenerate })
}

/// φ_α = z + kα/α′.
pub fn phi_operator(alpha: &RatFn, k: i64) -> Result<RatFn, OperatorError> {
    phi_biweight(alpha, &RatFn::zero(), k)
}

/// φ_{α,β} = z + kα/(α′ + β).
pub fn phi_biweight(alpha: &RatFn, beta: &RatFn, k: i64) -> Result<RatFn, OperatorError> {
    let den = &alpha.derivative() + beta;
    if den.is_zero() {
        return Err(OperatorError::DegenerateDenominator);
    }
    Ok(&RatFn::z() + &(alpha / &den).scale(&Cyclo::from_int(k)))
}

/// Generalized binomial x(x−1)⋯(x−j+1)/j! for any integer x.
pub fn gen_binomial(x: i64, j: u32) -> Q {
    let mut acc = Q::one();
    for i in 0..j as i64 {
        acc *= Q::from_integer((x - i).into());
        acc /= Q::from_integer((i + 1).into());
    }
    acc
}

/// Rankin–Cohen bracket [α, β]_n for weights k and l.
pub fn rankin_cohen(alpha: &RatFn, k: i64, beta: &RatFn, l: i64, n: u32) -> RatFn {
    let mut da = vec![alpha.clone()];
    let mut db = vec![beta.clone()];
    for _ in 0..n {
        da.push(da.last().unwrap().derivative());
        db.push(db.last().unwrap().derivative());
    }
    let n_i = n as i64;
    let mut acc = RatFn::zero();
    for m in 0..=n {
        let mut c = gen_binomial(n_i + k - 1, n - m) * gen_binomial(n_i + l - 1, m);
        if m.is_odd() {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        let term = (&da[m as usize] * &db[(n - m) as usize]).scale(&Cyclo::from_rational(c));
        acc = &acc + &term;
    }
    acc
}

/// Dehomogenized Klein field [∇_ω A − B·E] for A = z₂^a α(z₁/z₂) and
/// B = z₂^(a−2) β(z₁/z₂):
/// (∂_{z₂}A − B z₁)/(−∂_{z₁}A − B z₂) at z₂ = 1.
pub fn klein_vector_field(alpha: &Poly, a: i64, beta: &Poly) -> Result<Flagged, OperatorError> {
    if alpha.is_zero() || a < alpha.deg() as i64 {
        return Err(OperatorError::WeightTooSmall { weight: a, degree: alpha.deg() });
    }
    if !beta.is_zero() && (beta.deg() as i64) > a - 2 {
        return Err(OperatorError::WeightTooSmall { weight: a - 2, degree: beta.deg() });
    }
    // A = Σ α_i z₁^i z₂^(a−i)
    let d2a = Poly::from_coeffs(
        alpha.coeffs().iter().enumerate().map(|(i, c)| c.scale(&Q::from_integer((a - i as i64).into()))).collect(),
    );
    let d1a = alpha.derivative();
    let num = &d2a - &beta.shift_up(1);
    let den = -&(&d1a + beta);
    if den.is_zero() {
        return Err(OperatorError::DegenerateDenominator);
    }
    let value = RatFn::from_parts(num, den);
    let degenerate = value.is_constant();
    Ok(Flagged { value, degenerate })
}

/// f + ḟ·(h − f̈/(2ḟ))⁻¹ with dots along X = (1/g′) d/dz.
pub fn deform_corollary(f: &RatFn, g: &RatFn, h: &RatFn) -> Result<RatFn, OperatorError> {
    let theta = FormCoeff::differential(g)?;
    let (fd, fdd) = first_two(f, &theta)?;
    let bracket = h - &(&fdd / &fd).scale(&Cyclo::from_frac(1, 2));
    if bracket.is_zero() {
        return Err(OperatorError::DegenerateDenominator);
    }
    Ok(f + &(&fd / &bracket))
}
