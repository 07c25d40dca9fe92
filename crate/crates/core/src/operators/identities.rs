//! Exact checks of the operator identities on individual samples.
//!
//! Each function returns `Ok(true)` when the identity holds exactly. Inputs
//! on the degenerate set are rejected with an error so that callers can
//! resample instead of counting them.

use super::{
    d_operator, deform_corollary, phi_operator, pre_schwarzian, rankin_cohen, schwarzian, FormCoeff, OperatorError,
};
use crate::exact::{divisors, Cyclo, Divisor, Poly, RatFn};
use crate::moebius::{cross_ratio, Moebius};

fn nondegenerate_d(f: &RatFn, theta: &FormCoeff) -> Result<RatFn, OperatorError> {
    let d = d_operator(f, theta)?;
    if d.degenerate {
        return Err(OperatorError::DegenerateDenominator);
    }
    Ok(d.value)
}

/// D_{θ̂} f̂ = f and S_{θ̂}(f̂)·θ̂ = θ, where f̂ = D_θ f and θ̂ = S_θ(f)·θ.
pub fn duality(f: &RatFn, theta: &FormCoeff) -> Result<bool, OperatorError> {
    let fhat = nondegenerate_d(f, theta)?;
    let theta_hat = theta.times(&schwarzian(f, theta)?)?;
    let back = d_operator(&fhat, &theta_hat)?;
    let s_back = schwarzian(&fhat, &theta_hat)?;
    Ok(!back.degenerate && back.value == *f && &s_back * theta_hat.alpha() == *theta.alpha())
}

/// (φ_w f)·w′ = φ_z f − φ_z w.
pub fn cocycle(f: &RatFn, w: &RatFn) -> Result<bool, OperatorError> {
    let dw = FormCoeff::differential(w)?;
    let dz = FormCoeff::dz();
    let lhs = &pre_schwarzian(f, &dw)? * dw.alpha();
    let rhs = &pre_schwarzian(f, &dz)? - &pre_schwarzian(w, &dz)?;
    Ok(lhs == rhs)
}

/// D(T∘f) = T∘D(f) and S(T∘f) = S(f).
pub fn moebius_covariance(f: &RatFn, t: &Moebius, theta: &FormCoeff) -> Result<bool, OperatorError> {
    let tf = t.apply(f);
    let d_eq = d_operator(&tf, theta)?.value == t.apply(&d_operator(f, theta)?.value);
    let s_eq = schwarzian(&tf, theta)? == schwarzian(f, theta)?;
    Ok(d_eq && s_eq)
}

/// The two sides of D(D f) = f + ḟ/(c·H + φ) with H = (X(1/S))⁻¹.
fn d_squared_sides(f: &RatFn, theta: &FormCoeff, c: i64) -> Result<(RatFn, RatFn), OperatorError> {
    let fhat = nondegenerate_d(f, theta)?;
    let lhs = d_operator(&fhat, theta)?.value;
    let s = schwarzian(f, theta)?;
    let x_inv_s = theta.dot(&s.inv());
    if x_inv_s.is_zero() {
        return Err(OperatorError::DegenerateDenominator);
    }
    let h = x_inv_s.inv().scale(&Cyclo::from_int(c));
    let den = &h + &pre_schwarzian(f, theta)?;
    if den.is_zero() {
        return Err(OperatorError::DegenerateDenominator);
    }
    let rhs = f + &(&theta.dot(f) / &den);
    Ok((lhs, rhs))
}

/// D(D f) − f − ḟ/(c·H + φ); zero for c = 2.
pub fn d_squared_residual(f: &RatFn, theta: &FormCoeff, c: i64) -> Result<RatFn, OperatorError> {
    let (lhs, rhs) = d_squared_sides(f, theta, c)?;
    Ok(&lhs - &rhs)
}

/// D∘D = Id + X/(H + φ) in its literal form, H = (X∘S⁻¹)⁻¹.
pub fn d_squared_literal(f: &RatFn, theta: &FormCoeff) -> Result<bool, OperatorError> {
    let (lhs, rhs) = d_squared_sides(f, theta, 1)?;
    Ok(lhs == rhs)
}

/// D∘D = Id + X/(2H + φ), the form that holds identically.
pub fn d_squared_corrected(f: &RatFn, theta: &FormCoeff) -> Result<bool, OperatorError> {
    let (lhs, rhs) = d_squared_sides(f, theta, 2)?;
    Ok(lhs == rhs)
}

/// Φ_h f = f + ḟ·(h − f̈/(2ḟ))⁻¹ relative to dz.
pub fn phi_deform(f: &RatFn, h: &RatFn) -> Result<RatFn, OperatorError> {
    deform_corollary(f, &RatFn::z(), h)
}

/// [f, Φ₀f, Φ₁f, Φ_h f] = h.
pub fn cross_ratio_inversion(f: &RatFn, h: &RatFn) -> Result<bool, OperatorError> {
    let a = phi_deform(f, &RatFn::zero())?;
    let b = phi_deform(f, &RatFn::one())?;
    let c = phi_deform(f, h)?;
    let cr = cross_ratio(f, &a, &b, &c);
    Ok(!cr.degenerate && cr.value == *h)
}

/// The ramification comparisons for f relative to dz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationCheck {
    /// Ram(Df) = Ram(f) as divisors on ℂP¹.
    pub global_equality: bool,
    /// Ram(Df) restricted to the finite support of Ram(f) equals Ram_fin(f).
    pub local_equality: bool,
    /// Ram_fin(Df) = Ram_fin(f) + Zeros_fin(S); needs f̈ to have only simple
    /// zeros off the critical set, since (Df)′ = −4ḟ³S/f̈².
    pub finite_identity: bool,
    /// The polar divisor of S·dz² is 2·Supp Ram(f), ∞ included.
    pub schwarzian_poles: bool,
}

impl RamificationCheck {
    /// Every reading that holds identically.
    pub fn local_holds(&self) -> bool {
        self.local_equality && self.finite_identity && self.schwarzian_poles
    }
}

/// Divisor of poles of S·dz², where near ∞ the coefficient is S(1/w)/w⁴.
fn schwarzian_polar_divisor(s: &RatFn) -> Divisor {
    let (num, den) = (s.num(), s.den());
    let finite = Divisor::of_poly(den);
    // S(1/w)w⁻⁴ has order deg den − deg num − 4 at w = 0
    let ord_inf = den.deg() as i64 - num.deg() as i64 - 4;
    let at_inf = if ord_inf < 0 { -ord_inf } else { 0 };
    Divisor::from_parts(finite.effective_part(), &Poly::one(), at_inf)
}

pub fn ramification(f: &RatFn) -> Result<RamificationCheck, OperatorError> {
    let dz = FormCoeff::dz();
    let fhat = nondegenerate_d(f, &dz)?;
    let ram_f = divisors(f)?.ram;
    let ram_d = divisors(&fhat)?.ram;
    let s = schwarzian(f, &dz)?;
    let zeros_s = Divisor::of_poly(s.num());
    let global_equality = ram_d == ram_f;
    let local_equality = ram_d.finite().restrict_to_support_of(&ram_f.finite()) == ram_f.finite();
    let finite_identity = ram_d.finite() == ram_f.finite().add(&zeros_s);
    let schwarzian_poles = schwarzian_polar_divisor(&s) == ram_f.support().scale(2);
    Ok(RamificationCheck { global_equality, local_equality, finite_identity, schwarzian_poles })
}

/// −(k+1)·φ_α′·(α′)² = [α, α]₂.
pub fn critical_identity(alpha: &RatFn, k: i64) -> Result<bool, OperatorError> {
    let phi = phi_operator(alpha, k)?;
    let a1 = alpha.derivative();
    let lhs = (&phi.derivative() * &(&a1 * &a1)).scale(&Cyclo::from_int(-(k + 1)));
    Ok(lhs == rankin_cohen(alpha, k, alpha, k, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn frac(n: &str, d: &str) -> RatFn {
        RatFn::from_parts(parse_poly(n, 1).unwrap(), parse_poly(d, 1).unwrap())
    }

    #[test]
    fn samples() {
        let f = frac("z^3 - z + 2", "z^2 + 3");
        let dz = FormCoeff::dz();
        assert!(duality(&f, &dz).unwrap());
        assert!(cocycle(&f, &frac("z^2 + 1", "z - 1")).unwrap());
        assert!(moebius_covariance(&f, &Moebius::from_ints(1, 2, -1, 3).unwrap(), &dz).unwrap());
        assert!(!d_squared_literal(&f, &dz).unwrap());
        assert!(d_squared_corrected(&f, &dz).unwrap());
        assert!(cross_ratio_inversion(&f, &frac("z", "z^2 - 5")).unwrap());
        assert!(critical_identity(&frac("z^4 + 1", "z - 7"), -3).unwrap());
    }

    #[test]
    fn ramification_readings() {
        let f = frac("z^3 - 3*z", "1");
        let r = ramification(&f).unwrap();
        assert!(r.local_holds());
        assert!(!r.global_equality);
        let g = frac("z^4 + 2*z", "z^2 - 3");
        assert!(ramification(&g).unwrap().local_holds());
    }
}
