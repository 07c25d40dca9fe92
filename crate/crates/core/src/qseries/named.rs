//! The catalog of named q-expansions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::series::Series;
use super::QSeriesError;
use crate::exact::{q, qi, Cyclo, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesName {
    Eta,
    /// η(s·τ)
    EtaScaled(Q),
    /// E_{2k}, stored by its weight 2k.
    Eisenstein(u32),
    Delta,
    J,
    J2,
    J3,
    J4,
    J5,
    RogersRamanujan,
}

impl FromStr for SeriesName {
    type Err = QSeriesError;

    /// Accepts `eta`, `eta(1/2)`, `E2`, `E(4)`, `delta`, `j`, `j2`..`j5`, `RR`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let unknown = || QSeriesError::UnknownName(s.to_string());
        let inner =
            |prefix: &str| t.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
        Ok(match t {
            "eta" => SeriesName::Eta,
            "delta" | "Delta" => SeriesName::Delta,
            "j" => SeriesName::J,
            "j2" => SeriesName::J2,
            "j3" => SeriesName::J3,
            "j4" => SeriesName::J4,
            "j5" => SeriesName::J5,
            "RR" | "rr" => SeriesName::RogersRamanujan,
            _ => {
                if let Some(arg) = inner("eta").or_else(|| inner("eta_scaled")) {
                    let s: Q = arg.trim().parse().map_err(|_| unknown())?;
                    if !s.is_positive() {
                        return Err(unknown());
                    }
                    SeriesName::EtaScaled(s)
                } else if let Some(w) = inner("E").or_else(|| t.strip_prefix('E')) {
                    let w: u32 = w.trim().parse().map_err(|_| unknown())?;
                    if w == 0 || w % 2 == 1 {
                        return Err(unknown());
                    }
                    SeriesName::Eisenstein(w)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}

impl fmt::Display for SeriesName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesName::Eta => write!(f, "eta"),
            SeriesName::EtaScaled(s) => write!(f, "eta({s})"),
            SeriesName::Eisenstein(w) => write!(f, "E{w}"),
            SeriesName::Delta => write!(f, "delta"),
            SeriesName::J => write!(f, "j"),
            SeriesName::J2 => write!(f, "j2"),
            SeriesName::J3 => write!(f, "j3"),
            SeriesName::J4 => write!(f, "j4"),
            SeriesName::J5 => write!(f, "j5"),
            SeriesName::RogersRamanujan => write!(f, "RR"),
        }
    }
}

/// Bernoulli numbers B_0..=B_n with B_1 = −1/2.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        if m == 0 {
            b.push(Q::one());
            continue;
        }
        // Σ_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Q::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            acc += Q::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / Q::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn sigma(n: u64, power: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(power);
            if d * d != n {
                s += BigInt::from(n / d).pow(power);
            }
        }
        d += 1;
    }
    s
}

/// The Kronecker symbol (5/n) for n ≥ 1, which equals (n/5) since 5 ≡ 1 mod 4.
pub fn kronecker5(n: u64) -> i64 {
    match n % 5 {
        0 => 0,
        1 | 4 => 1,
        _ => -1,
    }
}

/// ∏_{n≥1}(1 − qⁿ) known below q^t.
pub fn euler_product(t: i64) -> Series {
    let t = t.max(1) as usize;
    let mut c = vec![0i64; t];
    c[0] = 1;
    for n in 1..t {
        for k in (n..t).rev() {
            c[k] -= c[k - n];
        }
    }
    Series::from_terms(c.into_iter().enumerate().map(|(k, a)| (qi(k as i64), Cyclo::from_int(a))), Some(&qi(t as i64)))
}

/// η(sτ) = q^(s/24)·∏(1 − q^(sn)), known below roughly q^t.
fn eta_scaled(s: &Q, t: i64) -> Series {
    let base_t = (Q::from_integer(t.into()) / s).ceil().to_integer().to_i64().unwrap_or(t) + 1;
    euler_product(base_t).substitute_power(s).shift(&(s / qi(24)))
}

/// 1 − (4k/B_{2k})·Σσ_{2k−1}(n)qⁿ, known below q^t.
fn eisenstein(weight: u32, t: i64) -> Series {
    let k = (weight / 2) as i64;
    let b = bernoulli(weight as usize)[weight as usize].clone();
    let factor = -Q::from_integer((4 * k).into()) / b;
    let mut terms = vec![(qi(0), Cyclo::one())];
    for n in 1..t.max(1) {
        let c = Q::from_integer(sigma(n as u64, weight - 1)) * &factor;
        terms.push((qi(n), Cyclo::from_rational(c)));
    }
    Series::from_terms(terms, Some(&qi(t.max(1))))
}

pub(crate) fn sqrt2() -> Cyclo {
    &Cyclo::zeta_pow(24, 3) + &Cyclo::zeta_pow(24, -3)
}

fn delta(t: i64) -> Series {
    euler_product(t).pow(24).expect("positive power").shift(&qi(1))
}

fn j_invariant(t: i64) -> Result<Series, QSeriesError> {
    let e4 = eisenstein(4, t + 2);
    let e6 = eisenstein(6, t + 2);
    let e43 = e4.pow(3)?;
    let disc = &e43 - &e6.pow(2)?;
    Ok((&e43 * &disc.inv()?).scale(&Cyclo::from_int(1728)))
}

fn j2(t: i64) -> Result<Series, QSeriesError> {
    let a = eta_scaled(&q(1, 2), t + 2).pow(8)?;
    let b = eta_scaled(&qi(2), t + 2).pow(16)?;
    let c = eta_scaled(&qi(1), t + 2).pow(24)?;
    (&a * &b).div(&c)
}

/// The cube ratio η³(τ/3)/η³(3τ) that carries j₃.
pub(crate) fn j3_ratio(t: i64) -> Result<Series, QSeriesError> {
    let a = eta_scaled(&q(1, 3), t + 2).pow(3)?;
    let b = eta_scaled(&qi(3), t + 2).pow(3)?;
    a.div(&b)
}

/// A·η³(τ/3)/η³(3τ) + b.
pub(crate) fn j3_with_constant(t: i64, b: &Cyclo) -> Result<Series, QSeriesError> {
    let a = (-&sqrt2()).scale(&q(1, 6));
    Ok(&j3_ratio(t)?.scale(&a) + &Series::constant(b.clone()))
}

fn j3(t: i64) -> Result<Series, QSeriesError> {
    j3_with_constant(t, &sqrt2().scale(&qi(-2)))
}

fn j4(t: i64) -> Result<Series, QSeriesError> {
    let a = eta_scaled(&qi(1), t + 2).pow(2)?;
    let b = eta_scaled(&qi(4), t + 2).pow(4)?;
    let c = eta_scaled(&qi(2), t + 2).pow(6)?;
    Ok((&a * &b).div(&c)?.scale(&Cyclo::from_int(2)))
}

/// 1 − qⁿ truncated below q^t.
fn one_minus_power(n: i64, t: i64) -> Series {
    Series::from_terms([(qi(0), Cyclo::one()), (qi(n), Cyclo::from_int(-1))], Some(&qi(t)))
}

fn j5(t: i64) -> Result<Series, QSeriesError> {
    let t = t.max(1);
    let mut num = Series::one().with_prec(&qi(t));
    let mut den = Series::one().with_prec(&qi(t));
    for n in 1..t {
        match kronecker5(n as u64) {
            1 => num = &num * &one_minus_power(n, t),
            -1 => den = &den * &one_minus_power(n, t),
            _ => {}
        }
    }
    Ok(num.div(&den)?.shift(&q(1, 5)))
}

/// q^(1/5)/(1 + q/(1 + q²/(… 1 + q^depth))) expanded below q^t.
pub fn rogers_ramanujan(depth: u32, t: i64) -> Result<Series, QSeriesError> {
    let t = t.max(1);
    let mut x = Series::one().with_prec(&qi(t));
    for k in (1..=depth as i64).rev() {
        x = (&Series::one() + &Series::monomial(Cyclo::one(), &qi(k)).div(&x)?).with_prec(&qi(t));
    }
    Ok(x.inv()?.shift(&q(1, 5)))
}

/// Builds with increasing internal truncation until the result is known
/// below `target`, then truncates it there.
pub(crate) fn to_precision<F>(target: &Q, build: F) -> Result<Series, QSeriesError>
where
    F: Fn(i64) -> Result<Series, QSeriesError>,
{
    let mut t = target.ceil().to_integer().to_i64().unwrap_or(1).max(1);
    for _ in 0..12 {
        let s = build(t)?;
        match s.prec() {
            None => return Ok(s.with_prec(target)),
            Some(p) if &p >= target => return Ok(s.with_prec(target)),
            Some(p) => {
                let deficit = (target - p).ceil().to_integer().to_i64().unwrap_or(1);
                t += deficit.max(1);
            }
        }
    }
    Err(QSeriesError::InsufficientTruncation)
}

fn build(name: &SeriesName, t: i64) -> Result<Series, QSeriesError> {
    match name {
        SeriesName::Eta => Ok(eta_scaled(&qi(1), t)),
        SeriesName::EtaScaled(s) => Ok(eta_scaled(s, t)),
        SeriesName::Eisenstein(w) => Ok(eisenstein(*w, t)),
        SeriesName::Delta => Ok(delta(t)),
        SeriesName::J => j_invariant(t),
        SeriesName::J2 => j2(t),
        SeriesName::J3 => j3(t),
        SeriesName::J4 => j4(t),
        SeriesName::J5 => j5(t),
        SeriesName::RogersRamanujan => rogers_ramanujan(5 * t.max(1) as u32, t),
    }
}

/// The named expansion with every coefficient below q^terms.
pub fn named_series(name: &SeriesName, terms: u32) -> Result<Series, QSeriesError> {
    if terms == 0 {
        return Err(QSeriesError::BadArgument("terms must be at least 1".into()));
    }
    to_precision(&qi(terms as i64), |t| build(name, t))
}

/// Same, with a rational truncation.
pub fn named_series_to(name: &SeriesName, order: &Q) -> Result<Series, QSeriesError> {
    to_precision(order, |t| build(name, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(6);
        assert_eq!(b[1], q(-1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[6], q(1, 42));
    }

    #[test]
    fn eisenstein_coefficients() {
        let e4 = named_series(&SeriesName::Eisenstein(4), 3).unwrap();
        assert_eq!(e4.coeff(&qi(1)), Cyclo::from_int(240));
        assert_eq!(e4.coeff(&qi(2)), Cyclo::from_int(2160));
        let e2 = named_series(&SeriesName::Eisenstein(2), 4).unwrap();
        let c: Vec<Cyclo> = (0..4).map(|k| e2.coeff(&qi(k))).collect();
        assert_eq!(c, [1, -24, -72, -96].map(Cyclo::from_int));
    }

    #[test]
    fn names_parse() {
        assert_eq!("E(4)".parse::<SeriesName>().unwrap(), SeriesName::Eisenstein(4));
        assert_eq!("E6".parse::<SeriesName>().unwrap(), SeriesName::Eisenstein(6));
        assert_eq!("eta(1/3)".parse::<SeriesName>().unwrap(), SeriesName::EtaScaled(q(1, 3)));
        assert!("E3".parse::<SeriesName>().is_err());
        assert!("theta".parse::<SeriesName>().is_err());
    }

    #[test]
    fn truncation_is_met() {
        for name in ["eta", "j", "j2", "j3", "j4", "j5", "delta"] {
            let s = named_series(&name.parse().unwrap(), 4).unwrap();
            assert_eq!(s.prec(), Some(qi(4)), "{name}");
        }
    }
}
