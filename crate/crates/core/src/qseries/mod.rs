//! Truncated q-expansions: eta quotients, Eisenstein series, Hauptmoduln of
//! the principal congruence subgroups, and the identities tying them to j.

mod named;
mod series;

use num_complex::Complex64;
use thiserror::Error;

use crate::exact::{parse_poly, qi, Cyclo, ExactError, Poly, Q};
use crate::moebius::GroupConfig;

pub use named::{bernoulli, euler_product, kronecker5, named_series, named_series_to, rogers_ramanujan, SeriesName};
pub use series::Series;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QSeriesError {
    #[error("unknown series name {0:?}")]
    UnknownName(String),
    #[error("truncation too low for the requested order")]
    InsufficientTruncation,
    #[error("leading coefficient is not known")]
    UnknownLeading,
    #[error("continued fraction depth {0} did not stabilize")]
    InsufficientDepth(u32),
    #[error("tail estimate {estimate:e} exceeds bound {bound:e}")]
    TailBound { estimate: f64, bound: f64 },
    #[error("{0}")]
    BadArgument(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// The data of j = k·f(jₙ)³/v(jₙ)ⁿ for one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JRelation {
    pub n: u32,
    pub k: Cyclo,
    pub f: Poly,
    pub v: Poly,
}

fn config_poly(group: &str, label: &str) -> Poly {
    let cfg = GroupConfig::builtin(group).expect("builtin config");
    cfg.invariant(label).expect("builtin invariant").poly.clone()
}

impl JRelation {
    /// Constants and invariants as tabulated; n = 2 uses the S₃ invariants
    /// z² − z + 1 and z² − z.
    pub fn table(n: u32) -> Result<Self, QSeriesError> {
        let s2 = named::sqrt2();
        let (k, f, v) = match n {
            2 => (Cyclo::from_int(256), parse_poly("z^2 - z + 1", 1)?, parse_poly("z^2 - z", 1)?),
            3 => (s2.scale(&qi(-54)), config_poly("A4", "f3"), config_poly("A4", "v3")),
            4 => (Cyclo::from_int(16), config_poly("S4", "f4"), config_poly("S4", "v4")),
            5 => (Cyclo::from_int(-1), config_poly("A5", "f5"), config_poly("A5", "v5")),
            _ => return Err(QSeriesError::BadArgument(format!("level {n} is not in 2..=5"))),
        };
        Ok(JRelation { n, k, f, v })
    }

    /// j − k·f(x)³/v(x)ⁿ.
    pub fn residual(&self, j: &Series, x: &Series) -> Result<Series, QSeriesError> {
        let num = x.compose_poly(&self.f).pow(3)?;
        let den = x.compose_poly(&self.v).pow(self.n as i64)?;
        Ok(j - &num.div(&den)?.scale(&self.k))
    }
}

fn hauptmodul(n: u32) -> Result<SeriesName, QSeriesError> {
    Ok(match n {
        2 => SeriesName::J2,
        3 => SeriesName::J3,
        4 => SeriesName::J4,
        5 => SeriesName::J5,
        _ => return Err(QSeriesError::BadArgument(format!("level {n} is not in 2..=5"))),
    })
}

/// Residual of j = rₙ∘jₙ below q^order for a given Hauptmodul builder.
pub fn j_relation_residual<F>(rel: &JRelation, order: &Q, jn: F) -> Result<Series, QSeriesError>
where
    F: Fn(&Q) -> Result<Series, QSeriesError>,
{
    named::to_precision(order, |t| {
        let t_q = qi(t);
        let j = named_series_to(&SeriesName::J, &t_q)?;
        rel.residual(&j, &jn(&t_q)?)
    })
}

/// j − kₙ·fₙ(jₙ)³/vₙ(jₙ)ⁿ with the tabulated constants and Hauptmoduln.
pub fn verify_j_relation(n: u32, order: &Q) -> Result<Series, QSeriesError> {
    let rel = JRelation::table(n)?;
    let name = hauptmodul(n)?;
    j_relation_residual(&rel, order, |t| named_series_to(&name, t))
}

/// The additive constant b in j₃ = −(√2/6)·η³(τ/3)/η³(3τ) + b fixed by the
/// first coefficient of the residual, which is affine in b.
pub fn solve_j3_constant() -> Result<Cyclo, QSeriesError> {
    let rel = JRelation::table(3)?;
    let at = |b: Cyclo| {
        j_relation_residual(&rel, &qi(0), move |t| named::to_precision(t, |u| named::j3_with_constant(u, &b)))
    };
    let r0 = at(Cyclo::zero())?;
    let r1 = at(Cyclo::one())?;
    let e = match (r0.valuation(), r1.valuation()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => return Ok(Cyclo::zero()),
    };
    let (c0, c1) = (r0.coeff(&e), r1.coeff(&e));
    let slope = &c1 - &c0;
    if slope.is_zero() {
        return Err(QSeriesError::BadArgument("leading residual does not depend on the constant".into()));
    }
    Ok(-&(&c0 / &slope))
}

/// j₃ with a given additive constant, below q^order.
pub fn j3_with_constant(b: &Cyclo, order: &Q) -> Result<Series, QSeriesError> {
    named::to_precision(order, |t| named::j3_with_constant(t, b))
}

/// The j-relation with the normalizations under which it holds:
/// λ = 16·j₂ at level 2 and the solved constant at level 3.
pub fn verify_j_relation_corrected(n: u32, order: &Q) -> Result<Series, QSeriesError> {
    let rel = JRelation::table(n)?;
    match n {
        2 => j_relation_residual(&rel, order, |t| Ok(named_series_to(&SeriesName::J2, t)?.scale(&Cyclo::from_int(16)))),
        3 => {
            let b = solve_j3_constant()?;
            j_relation_residual(&rel, order, |t| j3_with_constant(&b, t))
        }
        _ => verify_j_relation(n, order),
    }
}

/// Residuals of the three Ramanujan identities for given E₂, E₄, E₆.
pub fn ramanujan_residuals(e2: &Series, e4: &Series, e6: &Series) -> [Series; 3] {
    let r2 = &e2.q_derivative() - &(&(e2 * e2) - e4).scale(&Cyclo::from_frac(1, 12));
    let r4 = &e4.q_derivative() - &(&(e2 * e4) - e6).scale(&Cyclo::from_frac(1, 3));
    let r6 = &e6.q_derivative() - &(&(e2 * e6) - &(e4 * e4)).scale(&Cyclo::from_frac(1, 2));
    [r2, r4, r6]
}

/// q·dE₂/dq − (E₂² − E₄)/12 and its E₄, E₆ companions below q^order.
pub fn ramanujan_check(order: u32) -> Result<[Series; 3], QSeriesError> {
    let order = order.max(1);
    let e = |w| named_series(&SeriesName::Eisenstein(w), order);
    Ok(ramanujan_residuals(&e(2)?, &e(4)?, &e(6)?))
}

/// RR − j₅ below q^order at a fixed continued-fraction depth.
pub fn rr_residual(order: &Q, depth: u32) -> Result<Series, QSeriesError> {
    let j5 = named_series_to(&SeriesName::J5, order)?;
    let rr = named::to_precision(order, |t| rogers_ramanujan(depth, t))?;
    Ok(&rr - &j5)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RrOutcome {
    pub residual: Series,
    pub depth: u32,
}

const RR_DEPTH_CAP: u32 = 1 << 12;

/// RR − j₅ below q^order. The depth starts at 5·order and doubles until the
/// residual is zero at two consecutive depths.
pub fn rr_equals_j5(order: &Q) -> Result<RrOutcome, QSeriesError> {
    let start = (order * qi(5)).ceil().to_integer();
    let mut depth: u32 = start.try_into().unwrap_or(1).max(1);
    let mut zero_runs = 0;
    let mut last = None;
    while depth <= RR_DEPTH_CAP {
        let residual = rr_residual(order, depth)?;
        if residual.is_zero_below(order) {
            zero_runs += 1;
            if zero_runs == 2 {
                return Ok(RrOutcome { residual, depth });
            }
        } else {
            zero_runs = 0;
        }
        last = Some(residual);
        depth *= 2;
    }
    match last {
        Some(residual) if !residual.is_zero_below(order) => Ok(RrOutcome { residual, depth: depth / 2 }),
        _ => Err(QSeriesError::InsufficientDepth(depth / 2)),
    }
}

/// Value of the partial sum at q = e^(2πiτ), after checking a geometric
/// tail estimate from the last unit of retained exponents.
pub fn series_eval(s: &Series, tau: Complex64, tail_bound: f64) -> Result<Complex64, QSeriesError> {
    if tau.im <= 0.0 {
        return Err(QSeriesError::BadArgument("Im tau must be positive".into()));
    }
    let q_abs = (-std::f64::consts::TAU * tau.im).exp();
    if let Some(p) = s.prec() {
        let p = num_traits::ToPrimitive::to_f64(&p).unwrap_or(f64::INFINITY);
        let last =
            s.term_magnitudes(q_abs).into_iter().filter(|(e, _)| *e >= p - 1.0).map(|(_, m)| m).fold(0.0, f64::max);
        let estimate = last * q_abs / (1.0 - q_abs);
        if estimate > tail_bound {
            return Err(QSeriesError::TailBound { estimate, bound: tail_bound });
        }
    }
    Ok(s.partial_sum(tau))
}

const HEINS_TAIL: f64 = 1e-13;

/// τ + (6/(πi))/E₂(τ).
pub fn heins_value(tau: Complex64, terms: u32) -> Result<Complex64, QSeriesError> {
    let e2 = named_series(&SeriesName::Eisenstein(2), terms)?;
    let v = series_eval(&e2, tau, HEINS_TAIL)?;
    if v.norm() < 1e-12 {
        return Err(QSeriesError::BadArgument("E2 vanishes numerically".into()));
    }
    let six_over_pi_i = Complex64::new(0.0, -6.0 / std::f64::consts::PI);
    Ok(tau + six_over_pi_i / v)
}
