//! Period values 2·Res f′/(f − f̂) at the finite poles.
//!
//! Residues are computed without root extraction: partial fractions over
//! the square-free factors, Hermite reduction down to simple poles, and
//! then the residue class R/P′ mod P, which evaluates to the residue at
//! every root of P. When that class is not constant, the characteristic
//! polynomial of multiplication by it separates the distinct values.

use super::OperatorError;
use crate::exact::divisor::split_place;
use crate::exact::{Cyclo, Matrix, Point, Poly, RatFn, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodValue {
    /// The same value at every point of the place.
    Exact(Cyclo),
    /// Values are the roots of `char_poly`; `class` evaluates to them at the roots of the place.
    Conjugates { class: Poly, char_poly: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodEntry {
    pub place: Point,
    pub value: PeriodValue,
}

impl PeriodEntry {
    pub fn is_integral(&self) -> bool {
        match &self.value {
            PeriodValue::Exact(c) => c.is_integer(),
            PeriodValue::Conjugates { .. } => false,
        }
    }
}

/// Characteristic polynomial det(x − M) by Faddeev–LeVerrier.
fn char_poly(m: &Matrix<Cyclo>) -> Poly {
    let n = m.rows();
    let mut coeffs = vec![Cyclo::zero(); n + 1];
    coeffs[n] = Cyclo::one();
    let mut mk = Matrix::<Cyclo>::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, v);
        }
        mk = next;
        let am = m.mul(&mk);
        let tr = (0..n).fold(Cyclo::zero(), |acc, i| &acc + am.get(i, i));
        coeffs[n - k] = -&tr.scale(&Q::new(1.into(), (k as i64).into()));
    }
    Poly::from_coeffs(coeffs)
}

/// Matrix of multiplication by w on K[z]/(p), in the monomial basis.
fn multiplication_matrix(w: &Poly, p: &Poly) -> Matrix<Cyclo> {
    let d = p.deg();
    let mut m = Matrix::zeros(d, d);
    for j in 0..d {
        let col = (w * &Poly::monomial(Cyclo::one(), j)).div_rem(p).1;
        for i in 0..d {
            m.set(i, j, col.coeff(i));
        }
    }
    m
}

fn entries_for_place(p: &Poly, w: &Poly, out: &mut Vec<PeriodEntry>) {
    let w = w.div_rem(p).1;
    if w.is_constant() {
        let c = w.coeff(0);
        out.extend(split_place(p).into_iter().map(|place| PeriodEntry { place, value: PeriodValue::Exact(c.clone()) }));
        return;
    }
    let cp = char_poly(&multiplication_matrix(&w, p));
    let mut rest = p.clone();
    if let Some(roots) = cp.rational_roots() {
        let mut distinct = roots;
        distinct.sort();
        distinct.dedup();
        for r in distinct {
            let shifted = &w - &Poly::constant(Cyclo::from_rational(r.clone()));
            let g = Poly::gcd(&rest, &shifted);
            if g.is_constant() {
                continue;
            }
            rest = rest.exact_div(&g);
            let v = Cyclo::from_rational(r);
            out.extend(
                split_place(&g).into_iter().map(|place| PeriodEntry { place, value: PeriodValue::Exact(v.clone()) }),
            );
        }
    }
    if !rest.is_constant() {
        let rest = rest.monic();
        let class = w.div_rem(&rest).1;
        let char_poly = char_poly(&multiplication_matrix(&class, &rest));
        out.push(PeriodEntry { place: Point::Place(rest), value: PeriodValue::Conjugates { class, char_poly } });
    }
}

/// Period values 2·Res f′/(f − f̂) at each finite pole, grouped by place.
pub fn period_residues(f: &RatFn, fhat: &RatFn) -> Result<Vec<PeriodEntry>, OperatorError> {
    if f == fhat {
        return Err(OperatorError::DegenerateDenominator);
    }
    if f.is_infinity() || fhat.is_infinity() || f.is_constant() {
        return Ok(Vec::new());
    }
    let r = &f.derivative() / &(f - fhat);
    let (num, den) = (r.num(), r.den());
    let mut out = Vec::new();
    for (pj, j) in den.squarefree_decomposition() {
        let pj_pow = pj.pow(j as u32);
        let cofactor = den.exact_div(&pj_pow);
        let mut a = if cofactor.is_constant() {
            num.scale(&cofactor.coeff(0).inv()?).div_rem(&pj_pow).1
        } else {
            (num * &cofactor.inv_mod(&pj_pow)?).div_rem(&pj_pow).1
        };
        let dp = pj.derivative();
        let dp_inv = dp.inv_mod(&pj)?;
        // A/P^e ≡ (U + V′/(e−1))/P^(e−1) modulo exact derivatives
        for e in (2..=j).rev() {
            let v = (&a * &dp_inv).div_rem(&pj).1;
            let u = (&a - &(&v * &dp)).exact_div(&pj);
            a = &u + &v.derivative().scale(&Cyclo::from_frac(1, e as i64 - 1));
        }
        let class = (&a * &dp_inv).div_rem(&pj).1.scale(&Cyclo::from_int(2));
        entries_for_place(&pj, &class, &mut out);
    }
    out.sort_by(|x, y| x.place.cmp(&y.place));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn rf(s: &str) -> RatFn {
        RatFn::from_poly(parse_poly(s, 1).unwrap())
    }

    fn exact(p: Point, v: i64) -> PeriodEntry {
        PeriodEntry { place: p, value: PeriodValue::Exact(Cyclo::from_int(v)) }
    }

    #[test]
    fn examples() {
        let zero = Point::Finite(Cyclo::zero());
        assert_eq!(period_residues(&rf("z^2"), &rf("-3*z^2")).unwrap(), vec![exact(zero.clone(), 1)]);
        assert_eq!(period_residues(&rf("z^3"), &rf("-2*z^3")).unwrap(), vec![exact(zero, 2)]);
        assert!(period_residues(&rf("z^2"), &rf("z^2 + 1")).unwrap().is_empty());
        assert!(period_residues(&rf("z"), &rf("z")).is_err());
    }

    #[test]
    fn higher_order_pole() {
        // f′/(f − f̂) = 1/z³ + 2/z: residue 2 after reduction
        let g = RatFn::from_parts(parse_poly("2*z^2 + 1", 1).unwrap(), parse_poly("z^3", 1).unwrap());
        let f = rf("z");
        let fhat = &f - &g.inv();
        let r = period_residues(&f, &fhat).unwrap();
        assert_eq!(r, vec![exact(Point::Finite(Cyclo::zero()), 4)]);
    }

    #[test]
    fn conjugate_values_separate() {
        // 1/(z^2+1) + 3z/(z^2-2) residues: ±i/2 … and 3/2 at ±√2
        let g = &RatFn::from_parts(Poly::one(), parse_poly("z^2 + 1", 1).unwrap())
            + &RatFn::from_parts(parse_poly("3*z", 1).unwrap(), parse_poly("z^2 - 2", 1).unwrap());
        let f = rf("z");
        let fhat = &f - &g.inv();
        let r = period_residues(&f, &fhat).unwrap();
        assert!(r.contains(&PeriodEntry {
            place: Point::Place(parse_poly("z^2 - 2", 1).unwrap()),
            value: PeriodValue::Exact(Cyclo::from_int(3))
        }));
        assert!(r.iter().any(|e| matches!(e.value, PeriodValue::Conjugates { .. })));
        assert!(!r.iter().all(PeriodEntry::is_integral));
    }
}
