//! Truncated power-series form of the Legendrian lift L = [ψ, ψ̇].
//!
//! ψ = ψ₂·(f, 1) with ψ₂ = (ḟ(p)/ḟ)^(1/2), the branch with ψ₂(p) = 1, so
//! ψ(p) = (f(p), 1) exactly. Then ψ̈ = S·ψ, hence the potential is
//! Q = −S and L⁻¹ dL(X) = [[0, S], [1, 0]]. The Wronskian det L = −ḟ(p) is
//! constant but not normalized to 1: that would need √(−ḟ(p)), which is
//! generally not in the coefficient field.

use super::{schwarzian, FormCoeff, OperatorError};
use crate::exact::{Cyclo, PointValue, Poly, RatFn, Q};
use crate::moebius::Moebius;

type Series = Vec<Cyclo>;

fn mul(a: &[Cyclo], b: &[Cyclo], n: usize) -> Series {
    let mut out = vec![Cyclo::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if !bj.is_zero() {
                out[i + j] += &(ai * bj);
            }
        }
    }
    out
}

fn sub(a: &[Cyclo], b: &[Cyclo]) -> Series {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn inverse(a: &[Cyclo], n: usize) -> Result<Series, OperatorError> {
    let a0 = a[0].inv()?;
    let mut out: Series = Vec::with_capacity(n);
    out.push(a0.clone());
    for k in 1..n {
        let mut acc = Cyclo::zero();
        for j in 1..=k.min(a.len() - 1) {
            acc += &(&a[j] * &out[k - j]);
        }
        out.push(-&(&acc * &a0));
    }
    Ok(out)
}

/// u^e for u with u₀ = 1, from u·v′ = e·u′·v.
fn power(u: &[Cyclo], e: &Q, n: usize) -> Series {
    debug_assert!(u[0].is_one());
    let mut v: Series = vec![Cyclo::one()];
    for k in 1..n {
        let mut acc = Cyclo::zero();
        for j in 1..=k.min(u.len() - 1) {
            let c = e * Q::from_integer((j as i64).into()) - Q::from_integer(((k - j) as i64).into());
            acc += &(&u[j] * &v[k - j]).scale(&c);
        }
        v.push(acc.scale(&Q::new(1.into(), (k as i64).into())));
    }
    v
}

fn derivative(a: &[Cyclo]) -> Series {
    a.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Q::from_integer((k as i64).into()))).collect()
}

fn taylor_poly(p: &Poly, at: &Cyclo, n: usize) -> Series {
    RatFn::from_poly(p.clone()).taylor_at(at, n).expect("polynomials are finite")
}

fn is_zero_below(a: &[Cyclo], n: usize) -> bool {
    a.iter().take(n).all(Cyclo::is_zero)
}

/// Series lift at base point p in t = z − p. Entries carry `order + 1`
/// coefficients (one guard term); every check compares terms below t^order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftSeries {
    pub p: Cyclo,
    pub order: usize,
    /// Row-major entries [[ψ₁, ψ̇₁], [ψ₂, ψ̇₂]].
    pub entries: [[Series; 2]; 2],
    /// Potential Q with ψ̈ + Qψ = 0.
    pub potential: RatFn,
    theta: FormCoeff,
}

fn finite_at(f: &RatFn, p: &Cyclo) -> Option<Cyclo> {
    match f.eval(p) {
        PointValue::Finite(c) => Some(c),
        PointValue::Infinity => None,
    }
}

/// Builds the lift of (f, θ) around p.
pub fn legendrian_lift_series(
    f: &RatFn,
    theta: &FormCoeff,
    p: &Cyclo,
    order: usize,
) -> Result<LiftSeries, OperatorError> {
    if f.is_constant() {
        return Err(OperatorError::ConstantInput);
    }
    if finite_at(f, p).is_none() {
        // work with N∘f, N = [[0,1],[1,0]], and swap rows back
        let mut l = legendrian_lift_series(&f.inv(), theta, p, order)?;
        l.entries.swap(0, 1);
        return Ok(l);
    }
    let alpha = theta.alpha();
    match finite_at(alpha, p) {
        Some(a) if !a.is_zero() => {}
        _ => return Err(OperatorError::Singular(format!("θ is singular at {p}"))),
    }
    let fd = theta.dot(f);
    let fd_p = match finite_at(&fd, p) {
        Some(c) if !c.is_zero() => c,
        _ => return Err(OperatorError::Singular(format!("ḟ({p}) is 0 or ∞"))),
    };
    let s = schwarzian(f, theta)?;
    if finite_at(&s, p).is_none() {
        return Err(OperatorError::Singular(format!("Q has a pole at {p}")));
    }
    let n = order + 1;
    let m = n + 1;
    let fser = f.taylor_at(p, m)?;
    let u: Series = fd.taylor_at(p, m)?.iter().map(|c| c / &fd_p).collect();
    let psi2 = power(&u, &Q::new((-1).into(), 2.into()), m);
    let psi1 = mul(&fser, &psi2, m);
    let xinv = alpha.inv().taylor_at(p, m)?;
    let dot = |a: &[Cyclo]| mul(&derivative(a), &xinv, n);
    let entries = [[psi1[..n].to_vec(), dot(&psi1)], [psi2[..n].to_vec(), dot(&psi2)]];
    Ok(LiftSeries { p: p.clone(), order, entries, potential: -&s, theta: theta.clone() })
}

impl LiftSeries {
    fn x_derivative(&self, a: &[Cyclo]) -> Series {
        let xinv = self.theta.alpha().inv().taylor_at(&self.p, self.order + 1).expect("regular point");
        mul(&derivative(a), &xinv, self.order)
    }

    /// det L as a series.
    pub fn wronskian(&self) -> Series {
        let [[a, b], [c, d]] = &self.entries;
        let n = self.order + 1;
        sub(&mul(a, d, n), &mul(b, c, n))
    }

    /// Entries of L⁻¹·X(L), i.e. L*ω evaluated on X, below t^order.
    pub fn maurer_cartan(&self) -> [[Series; 2]; 2] {
        let n = self.order;
        let [[a, b], [c, d]] = &self.entries;
        let [da, db, dc, dd] = [a, b, c, d].map(|e| self.x_derivative(e));
        let det_inv = inverse(&self.wronskian(), n).expect("L is invertible at a regular point");
        let neg = |s: &Series| s.iter().map(|x| -x).collect::<Series>();
        // adj(L) = [[d, −b], [−c, a]]
        let adj = [[d.clone(), neg(b)], [neg(c), a.clone()]];
        let dl = [[da, db], [dc, dd]];
        let entry = |i: usize, j: usize| {
            let x = mul(&adj[i][0], &dl[0][j], n);
            let y = mul(&adj[i][1], &dl[1][j], n);
            let s: Series = x.iter().zip(&y).map(|(u, v)| u + v).collect();
            mul(&s, &det_inv, n)
        };
        [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
    }

    /// Vanishing diagonal of the pulled-back Maurer–Cartan form.
    pub fn contact_holds(&self) -> bool {
        let mc = self.maurer_cartan();
        is_zero_below(&mc[0][0], self.order) && is_zero_below(&mc[1][1], self.order)
    }

    /// Lower-left entry equals θ(X) = 1.
    pub fn canonical_form_is_theta(&self) -> bool {
        let mc = self.maurer_cartan();
        mc[1][0][0].is_one() && is_zero_below(&mc[1][0][1..], self.order - 1)
    }

    /// Upper-right entry equals s (for the lift, s should be the Schwarzian).
    pub fn upper_right_equals(&self, s: &RatFn) -> bool {
        let Ok(ser) = s.taylor_at(&self.p, self.order) else { return false };
        let mc = self.maurer_cartan();
        is_zero_below(&sub(&mc[0][1], &ser), self.order)
    }

    /// ψ̈ + Qψ = 0 for both components.
    pub fn schrodinger_holds(&self) -> bool {
        let n = self.order;
        let q = self.potential.taylor_at(&self.p, n).expect("Q is finite at p");
        (0..2).all(|i| {
            let dd = self.x_derivative(&self.entries[i][1]);
            let qpsi = mul(&q, &self.entries[i][0], n);
            is_zero_below(&dd.iter().zip(&qpsi).map(|(a, b)| a + b).collect::<Series>(), n)
        })
    }

    /// π₂∘L = ψ̇₁/ψ̇₂ equals g, compared by cross-multiplication.
    pub fn projection_equals(&self, g: &RatFn) -> bool {
        let n = self.order;
        let (num, den) = if g.is_infinity() { (Poly::one(), Poly::zero()) } else { (g.num().clone(), g.den().clone()) };
        let lhs = mul(&self.entries[0][1], &taylor_poly(&den, &self.p, n), n);
        let rhs = mul(&self.entries[1][1], &taylor_poly(&num, &self.p, n), n);
        is_zero_below(&sub(&lhs, &rhs), n)
    }

    /// T·L entrywise.
    pub fn left_multiply(&self, t: &Moebius) -> LiftSeries {
        let [a, b, c, d] = t.entries();
        let n = self.order + 1;
        let comb = |x: &Cyclo, y: &Cyclo, j: usize| -> Series {
            (0..n).map(|k| &(x * &self.entries[0][j][k]) + &(y * &self.entries[1][j][k])).collect()
        };
        let entries = [[comb(a, b, 0), comb(a, b, 1)], [comb(c, d, 0), comb(c, d, 1)]];
        LiftSeries { entries, ..self.clone() }
    }

    /// Entries agree with `other` up to one constant factor, below t^order.
    pub fn is_proportional_to(&self, other: &LiftSeries) -> bool {
        let n = self.order.min(other.order);
        let mut ratio: Option<Cyclo> = None;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..n {
                    let (x, y) = (&self.entries[i][j][k], &other.entries[i][j][k]);
                    match (&ratio, x.is_zero(), y.is_zero()) {
                        (_, true, true) => {}
                        (_, true, false) | (_, false, true) => return false,
                        (None, false, false) => ratio = Some(x / y),
                        (Some(r), false, false) => {
                            if &(r * y) != x {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}
