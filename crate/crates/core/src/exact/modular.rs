//! Word-size prime arithmetic backing the polynomial gcd.
//!
//! Rational-coefficient gcds run the classical small-primes algorithm
//! (reduce, gcd mod p, Chinese remaindering, trial division). For
//! non-rational coefficients a single prime p ≡ 1 (mod N) gives a fast
//! coprimality certificate before falling back to Euclid over ℚ(ζ_N).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclo::{Cyclo, Q};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_CEILING: u64 = 1 << 62;

fn prime_list() -> &'static Mutex<Vec<u64>> {
    static PRIMES: OnceLock<Mutex<Vec<u64>>> = OnceLock::new();
    PRIMES.get_or_init(|| Mutex::new(Vec::new()))
}

/// The i-th prime below 2^62, counting downwards.
fn nth_prime(i: usize) -> u64 {
    let mut list = prime_list().lock().unwrap();
    while list.len() <= i {
        let mut c = list.last().copied().unwrap_or(PRIME_CEILING + 1) - 2;
        while !is_prime(c) {
            c -= 2;
        }
        list.push(c);
    }
    list[i]
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn reduce_q(x: &Q, p: u64) -> Option<u64> {
    let d = reduce_int(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(reduce_int(x.numer(), p), inv_mod(d, p), p))
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd of two polynomials over F_p (ascending coefficients).
fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let db = b.len() - 1;
        let inv = inv_mod(b[db], p);
        while a.len() > db {
            let top = *a.last().unwrap();
            if top != 0 {
                let c = mul_mod(top, inv, p);
                let shift = a.len() - 1 - db;
                for (j, &bj) in b.iter().enumerate() {
                    let t = mul_mod(c, bj, p);
                    a[shift + j] = (a[shift + j] + p - t) % p;
                }
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lc) = a.last() {
        let inv = inv_mod(lc, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
    a
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Converts rational coefficients to a primitive integer vector.
pub(crate) fn primitive_int_poly(coeffs: &[Q]) -> Vec<BigInt> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &l).to_integer()).collect();
    let g = content(&ints);
    if g.is_zero() {
        return ints;
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|c| c / &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

/// Exact quotient a / b over ℤ[x] if b divides a.
fn int_exact_div(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    let lc = &b[db];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, r) = top.div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &qk * bj;
        }
        quot[k] = qk;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

/// Primitive gcd of two nonzero primitive integer polynomials, positive leading coefficient.
pub(crate) fn int_poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let lc_a = a.last().unwrap();
    let lc_b = b.last().unwrap();
    let gamma = lc_a.gcd(lc_b);
    let bound_deg = a.len().min(b.len()) - 1;
    let mut current_deg = bound_deg + 1;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<Vec<BigInt>> = None;
    let mut i = 0;
    loop {
        let p = nth_prime(i);
        i += 1;
        let pb = BigInt::from(p);
        if (lc_a % &pb).is_zero() || (lc_b % &pb).is_zero() {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce_int(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce_int(c, p)).collect();
        let gp = gcd_mod(&ap, &bp, p);
        let d = gp.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > current_deg {
            continue;
        }
        let gam = reduce_int(&gamma, p);
        let gp: Vec<u64> = gp.iter().map(|&c| mul_mod(c, gam, p)).collect();
        if d < current_deg {
            current_deg = d;
            residues = gp.iter().map(|&c| BigInt::from(c)).collect();
            let half = &pb >> 1;
            last_candidate = Some(residues.iter().map(|r| if r > &half { r - &pb } else { r.clone() }).collect());
            modulus = pb;
            continue;
        }
        // Chinese remaindering
        let m_mod_p = reduce_int(&modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (r, &g) in residues.iter_mut().zip(&gp) {
            let r_mod = reduce_int(r, p);
            let t = mul_mod((g + p - r_mod) % p, m_inv, p);
            *r += &modulus * BigInt::from(t);
        }
        modulus *= &pb;
        let half = &modulus >> 1;
        let symmetric: Vec<BigInt> =
            residues.iter().map(|r| if r > &half { r - &modulus } else { r.clone() }).collect();
        if last_candidate.as_ref() == Some(&symmetric) {
            let g = content(&symmetric);
            let mut cand: Vec<BigInt> = symmetric.iter().map(|c| c / &g).collect();
            if cand.last().unwrap().is_negative() {
                for c in cand.iter_mut() {
                    *c = -&*c;
                }
            }
            if int_exact_div(a, &cand).is_some() && int_exact_div(b, &cand).is_some() {
                return cand;
            }
        }
        last_candidate = Some(symmetric);
    }
}

/// A prime p ≡ 1 (mod n) together with a primitive n-th root of unity in F_p.
fn split_prime(n: u32) -> (u64, u64) {
    static CACHE: OnceLock<Mutex<HashMap<u32, (u64, u64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&v) = cache.lock().unwrap().get(&n) {
        return v;
    }
    let n64 = n as u64;
    let mut k = (PRIME_CEILING - 1) / n64;
    let p = loop {
        let c = k * n64 + 1;
        if is_prime(c) {
            break c;
        }
        k -= 1;
    };
    let prime_factors: Vec<u64> = {
        let mut fs = Vec::new();
        let mut m = n64;
        let mut f = 2;
        while f * f <= m {
            if m.is_multiple_of(f) {
                fs.push(f);
                while m.is_multiple_of(f) {
                    m /= f;
                }
            }
            f += 1;
        }
        if m > 1 {
            fs.push(m);
        }
        fs
    };
    let mut g = 2u64;
    let omega = loop {
        let w = pow_mod(g, (p - 1) / n64, p);
        if prime_factors.iter().all(|&q| pow_mod(w, n64 / q, p) != 1) {
            break w;
        }
        g += 1;
    };
    cache.lock().unwrap().insert(n, (p, omega));
    (p, omega)
}

fn reduce_cyclo(c: &Cyclo, order: u32, p: u64, omega: u64) -> Option<u64> {
    let _ = order;
    let mut acc = 0u64;
    let mut w = 1u64;
    for coeff in c.coeffs() {
        let v = reduce_q(coeff, p)?;
        acc = (acc + mul_mod(v, w, p)) % p;
        w = mul_mod(w, omega, p);
    }
    Some(acc)
}

/// Returns true when the two polynomials are certainly coprime.
///
/// A `false` answer is inconclusive.
pub(crate) fn certainly_coprime(a: &[Cyclo], b: &[Cyclo], order: u32) -> bool {
    let (p, omega) = split_prime(order);
    let red = |v: &[Cyclo]| -> Option<Vec<u64>> { v.iter().map(|c| reduce_cyclo(c, order, p, omega)).collect() };
    let (Some(ap), Some(bp)) = (red(a), red(b)) else {
        return false;
    };
    if ap.last() == Some(&0) || bp.last() == Some(&0) {
        return false;
    }
    gcd_mod(&ap, &bp, p).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime(nth_prime(0)));
        assert!(nth_prime(3) < nth_prime(2));
        assert!(!is_prime(561));
    }

    #[test]
    fn integer_gcd() {
        // (x - 1)(x + 2) and (x - 1)(3x + 5)
        let a = ints(&[-2, 1, 1]);
        let b = ints(&[-5, 2, 3]);
        assert_eq!(int_poly_gcd(&a, &b), ints(&[-1, 1]));
        let c = ints(&[1, 0, 1]);
        assert_eq!(int_poly_gcd(&a, &c), ints(&[1]));
    }

    #[test]
    fn split_prime_has_root() {
        let (p, w) = split_prime(120);
        assert_eq!((p - 1) % 120, 0);
        assert_eq!(pow_mod(w, 120, p), 1);
        assert_ne!(pow_mod(w, 60, p), 1);
    }
}
