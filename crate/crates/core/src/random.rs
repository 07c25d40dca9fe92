//! Seeded samplers for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{Cyclo, Matrix, Poly, RatFn};
use crate::moebius::Moebius;

/// Deterministic generator used by every randomized check.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in [-bound, bound].
pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.random_range(-bound..=bound)
}

/// Polynomial of exact degree `deg` with small integer coefficients.
pub fn poly<R: Rng>(rng: &mut R, deg: usize, bound: i64) -> Poly {
    let mut c: Vec<i64> = (0..=deg).map(|_| small_int(rng, bound)).collect();
    while c[deg] == 0 {
        c[deg] = small_int(rng, bound);
    }
    Poly::from_ints(&c)
}

/// Nonconstant rational function of degree between 1 and `max_deg`.
pub fn ratfn<R: Rng>(rng: &mut R, max_deg: usize) -> RatFn {
    loop {
        let dn = rng.random_range(0..=max_deg);
        let dd = rng.random_range(0..=max_deg);
        let num = poly(rng, dn, 5);
        let den = poly(rng, dd, 5);
        let f = RatFn::from_parts(num, den);
        if !f.is_constant() {
            return f;
        }
    }
}

/// Nonconstant polynomial of degree between 1 and `max_deg`.
pub fn poly_fn<R: Rng>(rng: &mut R, max_deg: usize) -> RatFn {
    let d = rng.random_range(1..=max_deg);
    RatFn::from_poly(poly(rng, d, 5))
}

/// Möbius transformation with small integer entries.
pub fn moebius<R: Rng>(rng: &mut R) -> Moebius {
    loop {
        let e: Vec<Cyclo> = (0..4).map(|_| Cyclo::from_int(small_int(rng, 4))).collect();
        if let Ok(m) = Moebius::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()) {
            return m;
        }
    }
}

/// Square integer matrix with nonzero determinant.
pub fn invertible_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Cyclo> {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| Cyclo::from_int(small_int(rng, bound))).collect()).collect();
        let m = Matrix::from_rows(rows);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// n×n polynomial matrix function with ḟ and f̈ invertible.
pub fn mat_fn<R: Rng>(rng: &mut R, n: usize, max_deg: usize) -> crate::ncalg::MatFn {
    use crate::ncalg::MatFn;
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let d = rng.random_range(0..=max_deg);
                        RatFn::from_poly(poly(rng, d, 3))
                    })
                    .collect()
            })
            .collect();
        let f = MatFn::from_rows(rows);
        let fdot = f.derivative();
        if !fdot.det().is_zero() && !fdot.derivative().det().is_zero() {
            return f;
        }
    }
}

/// Block Möbius map with small integer n×n blocks.
pub fn gen_moebius<R: Rng>(rng: &mut R, n: usize) -> crate::ncalg::GenMoebius {
    use crate::ncalg::GenMoebius;
    loop {
        let mut block = || {
            Matrix::from_rows((0..n).map(|_| (0..n).map(|_| Cyclo::from_int(small_int(rng, 2))).collect()).collect())
        };
        let (a, b, c, d) = (block(), block(), block(), block());
        if let Ok(t) = GenMoebius::new(a, b, c, d) {
            return t;
        }
    }
}
