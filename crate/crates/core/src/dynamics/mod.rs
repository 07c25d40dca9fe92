//! Floating-point dynamics of rational maps: Newton and Halley maps,
//! simultaneous root finding, and cycle classification.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::exact::{Cyclo, Poly, RatFn};
use crate::random;

type C = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("operation needs a nonconstant function")]
    ConstantInput,
    #[error("root finder did not converge in {iterations} iterations")]
    NoConvergence { iterations: usize, partial: Vec<C> },
    #[error("orbit of {0} reaches a pole")]
    PoleChain(C),
}

/// Double-precision shadow of a RatFn with ζ_N ↦ exp(2πi/N).
#[derive(Clone, Debug, PartialEq)]
pub struct CxMap {
    num: Vec<C>,
    den: Vec<C>,
}

fn horner(c: &[C], z: C) -> C {
    c.iter().rev().fold(C::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// Coefficients of p(z₀ + t) in t.
fn shift(c: &[C], z0: C) -> Vec<C> {
    let mut a = c.to_vec();
    let n = a.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = a[j + 1] * z0;
            a[j] += t;
        }
    }
    a
}

impl CxMap {
    pub fn from_ratfn(f: &RatFn) -> Self {
        CxMap { num: f.num().to_complex_coeffs(), den: f.den().to_complex_coeffs() }
    }

    pub fn from_poly(p: &Poly) -> Self {
        CxMap { num: p.to_complex_coeffs(), den: vec![C::new(1.0, 0.0)] }
    }

    fn degree(&self) -> usize {
        self.num.len().max(self.den.len()).saturating_sub(1)
    }

    /// Homogeneous value (N, D) at z, with the chart w = 1/z used for |z| > 1
    /// so that large arguments do not overflow.
    fn pair(&self, z: C) -> (C, C) {
        if z.norm() <= 1.0 {
            return (horner(&self.num, z), horner(&self.den, z));
        }
        let w = z.inv();
        let d = self.degree();
        let rev = |c: &[C]| {
            let mut r = vec![C::new(0.0, 0.0); d + 1];
            for (i, a) in c.iter().enumerate() {
                r[d - i] = *a;
            }
            horner(&r, w)
        };
        (rev(&self.num), rev(&self.den))
    }

    /// R(z); `None` stands for ∞.
    pub fn eval(&self, z: C) -> Option<C> {
        let (n, d) = self.pair(z);
        if d.norm() <= f64::MIN_POSITIVE * n.norm().max(1.0) || d == C::new(0.0, 0.0) {
            return None;
        }
        let v = n / d;
        v.is_finite().then_some(v)
    }

    /// Taylor coefficients of R at a finite non-pole z₀.
    pub fn taylor(&self, z0: C, len: usize) -> Vec<C> {
        let n = shift(&self.num, z0);
        let d = shift(&self.den, z0);
        let d0 = d[0];
        let mut out: Vec<C> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = n.get(k).copied().unwrap_or_default();
            for j in 1..=k.min(d.len() - 1) {
                acc -= d[j] * out[k - j];
            }
            out.push(acc / d0);
        }
        out
    }

    /// The derivatives R^(j)(z₀) for j = 0..len.
    pub fn derivatives(&self, z0: C, len: usize) -> Vec<C> {
        let mut fact = 1.0;
        self.taylor(z0, len)
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= k as f64;
                }
                c * fact
            })
            .collect()
    }

    pub fn derivative(&self, z: C) -> C {
        let nd: Vec<C> = self.num.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        let dd: Vec<C> = self.den.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
        let (n, d) = (horner(&self.num, z), horner(&self.den, z));
        (horner(&nd, z) * d - n * horner(&dd, z)) / (d * d)
    }

    /// Orbit point after n steps, or the pole error.
    pub fn iterate(&self, z: C, n: usize) -> Result<C, DynamicsError> {
        let mut w = z;
        for _ in 0..n {
            w = self.eval(w).ok_or(DynamicsError::PoleChain(z))?;
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Newton,
    Halley,
}

/// N_f = z − f/f′ or H_f = z + 2ff′/(ff″ − 2f′²), exactly.
pub fn iteration_map(f: &RatFn, method: Method) -> Result<RatFn, DynamicsError> {
    if f.is_constant() {
        return Err(DynamicsError::ConstantInput);
    }
    let f1 = f.derivative();
    let z = RatFn::z();
    Ok(match method {
        Method::Newton => &z - &(f / &f1),
        Method::Halley => {
            let f2 = f1.derivative();
            let two = Cyclo::from_int(2);
            let den = &(f * &f2) - &(&f1 * &f1).scale(&two);
            &z + &(&(f * &f1).scale(&two) / &den)
        }
    })
}

const ABERTH_CAP: usize = 200;

/// All deg P roots by Aberth–Ehrlich iteration followed by Newton polishing.
///
/// Acceptance is the backward error |P(r)| / Σ|aᵢ||r|ⁱ < tol. Initial points
/// lie on a circle of radius from the coefficient bound, with angles
/// perturbed by a fixed seed.
pub fn poly_roots(p: &Poly, tol: f64) -> Result<Vec<C>, DynamicsError> {
    if p.is_constant() {
        return Err(DynamicsError::ConstantInput);
    }
    let v = p.valuation();
    let mut roots = vec![C::new(0.0, 0.0); v];
    let c: Vec<C> = p.to_complex_coeffs()[v..].to_vec();
    let n = c.len() - 1;
    if n == 0 {
        return Ok(roots);
    }
    let lead = c[n];
    let monic: Vec<C> = c.iter().map(|a| a / lead).collect();
    let dcoef: Vec<C> = monic.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    let radius = (0..n).map(|i| monic[i].norm().powf(1.0 / (n - i) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut rng = random::rng(0x5eed);
    let mut z: Vec<C> = (0..n)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + rng.random_range(0.0..0.1);
            C::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..ABERTH_CAP {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let pk = horner(&monic, z[k]);
            let dk = horner(&dcoef, z[k]);
            if pk.norm() == 0.0 {
                continue;
            }
            let ratio = pk / dk;
            let s: C = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (C::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..3 {
            let d = horner(&dcoef, *zk);
            if d.norm() == 0.0 {
                break;
            }
            let step = horner(&monic, *zk) / d;
            if step.is_finite() {
                *zk -= step;
            }
        }
    }
    let backward = |r: C| {
        let scale: f64 = c.iter().enumerate().map(|(i, a)| a.norm() * r.norm().powi(i as i32)).sum();
        horner(&c, r).norm() / scale
    };
    let ok = z.iter().all(|&r| backward(r) < tol);
    roots.extend(z);
    if ok {
        return Ok(roots);
    }
    Err(DynamicsError::NoConvergence { iterations: ABERTH_CAP, partial: roots })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    Superattracting,
    Attracting,
    Indifferent,
    Repelling,
}

impl CycleClass {
    pub fn of_multiplier(m: f64) -> Self {
        if m < 1e-6 {
            CycleClass::Superattracting
        } else if m < 1.0 - 1e-6 {
            CycleClass::Attracting
        } else if m <= 1.0 + 1e-6 {
            CycleClass::Indifferent
        } else {
            CycleClass::Repelling
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CycleClass::Superattracting => "superattracting",
            CycleClass::Attracting => "attracting",
            CycleClass::Indifferent => "indifferent",
            CycleClass::Repelling => "repelling",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleRecord {
    pub point: C,
    /// |R^period(c) − c|
    pub residual: f64,
    /// |(R^period)′(c)|
    pub multiplier: f64,
    pub class: CycleClass,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CycleReport {
    pub period: usize,
    pub tol: f64,
    pub records: Vec<CycleRecord>,
}

impl CycleReport {
    /// Every point returns within tol and is superattracting.
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.residual < self.tol && r.class == CycleClass::Superattracting)
    }

    pub fn max_residual(&self) -> f64 {
        self.records.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    pub fn max_multiplier(&self) -> f64 {
        self.records.iter().map(|r| r.multiplier).fold(0.0, f64::max)
    }
}

impl fmt::Display for CycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            writeln!(
                f,
                "point={:+.12e}{:+.12e}i residual={:.3e} multiplier={:.3e} class={}",
                r.point.re,
                r.point.im,
                r.residual,
                r.multiplier,
                r.class.as_str()
            )?;
        }
        write!(f, "period={} tol={:e} status={}", self.period, self.tol, if self.pass() { "pass" } else { "fail" })
    }
}

/// Residual and multiplier of the period-n return map at each point.
pub fn cycle_report(r: &RatFn, points: &[C], period: usize, tol: f64) -> Result<CycleReport, DynamicsError> {
    let map = CxMap::from_ratfn(r);
    let records = points
        .iter()
        .map(|&c| {
            let mut z = c;
            let mut mult = C::new(1.0, 0.0);
            for _ in 0..period {
                mult *= map.derivative(z);
                z = map.eval(z).ok_or(DynamicsError::PoleChain(c))?;
            }
            if !mult.is_finite() {
                return Err(DynamicsError::PoleChain(c));
            }
            let multiplier = mult.norm();
            Ok(CycleRecord {
                point: c,
                residual: (z - c).norm(),
                multiplier,
                class: CycleClass::of_multiplier(multiplier),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CycleReport { period, tol, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 1).unwrap()
    }

    #[test]
    fn newton_and_halley_maps() {
        let f = RatFn::from_poly(p("z^2 - 1"));
        assert_eq!(iteration_map(&f, Method::Newton).unwrap(), RatFn::from_parts(p("z^2 + 1"), p("2*z")));
        assert_eq!(iteration_map(&f, Method::Halley).unwrap(), RatFn::from_parts(p("z^3 + 3*z"), p("3*z^2 + 1")));
        assert!(iteration_map(&RatFn::from_int(2), Method::Newton).is_err());
    }

    #[test]
    fn roots_of_small_polys() {
        let mut r = poly_roots(&p("z^2 + 1"), 1e-12).unwrap();
        r.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((r[0] - C::new(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - C::new(0.0, 1.0)).norm() < 1e-12);
        let v5 = poly_roots(&p("z^11 + 11*z^6 - z"), 1e-12).unwrap();
        assert_eq!(v5.len(), 11);
        let mags: [f64; 2] =
            [((-11.0 + 125f64.sqrt()) / 2.0).abs().powf(0.2), ((-11.0 - 125f64.sqrt()) / 2.0).abs().powf(0.2)];
        assert_eq!(v5.iter().filter(|z| z.norm() < 1e-12).count(), 1);
        for z in v5.iter().filter(|z| z.norm() > 1e-12) {
            assert!(mags.iter().any(|m| (z.norm() - m).abs() < 1e-10), "{z}");
        }
    }

    #[test]
    fn newton_multipliers() {
        let f = RatFn::from_poly(p("z^2 - 1"));
        let n = iteration_map(&f, Method::Newton).unwrap();
        let rep = cycle_report(&n, &[C::new(1.0, 0.0), C::new(-1.0, 0.0)], 1, 1e-12).unwrap();
        assert!(rep.pass());
        let g = RatFn::from_poly(p("(z - 1)^2"));
        let n = iteration_map(&g, Method::Newton).unwrap();
        let rep = cycle_report(&n, &[C::new(1.0, 0.0)], 1, 1e-12).unwrap();
        assert!((rep.records[0].multiplier - 0.5).abs() < 1e-12);
        assert_eq!(rep.records[0].class, CycleClass::Attracting);
        assert!(!rep.pass());
    }

    #[test]
    fn pole_chain_reported() {
        let r = RatFn::z().inv();
        assert!(matches!(cycle_report(&r, &[C::new(0.0, 0.0)], 1, 1e-9), Err(DynamicsError::PoleChain(_))));
    }

    #[test]
    fn projective_eval_large_arguments() {
        let m = CxMap::from_ratfn(&RatFn::from_parts(p("z^30 + 1"), p("z^29 - 2")));
        let z = C::new(1e12, 3e11);
        let v = m.eval(z).unwrap();
        assert!((v / z - 1.0).norm() < 1e-12);
    }
}
