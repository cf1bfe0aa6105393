//! Helpers shared by the integration targets.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wbloch::AmplitudeProfile;

/// Fixed-point fraction bits of the oracle.
const PRECISION: u32 = 320;

fn to_fixed(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    // x = mantissa * 2^exp exactly.
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    };
    let m = BigInt::from(mantissa);
    let shift = PRECISION as i32 + exp;
    let v = if shift >= 0 {
        m << shift as u32
    } else {
        m >> (-shift) as u32
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

fn from_fixed(v: &BigInt) -> f64 {
    // Keep 80 significant bits before the float conversion.
    let drop = PRECISION - 80;
    let head = (v >> drop).to_f64().expect("finite");
    head * 2f64.powi(-(80))
}

/// `J_n(x)` from the ascending series
/// `sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!)` in 320-bit fixed point.
pub fn bessel_oracle(n: i64, x: f64) -> f64 {
    if n < 0 {
        let v = bessel_oracle(-n, x);
        return if n % 2 == 0 { v } else { -v };
    }
    let n = n as u64;
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let one = BigInt::from(1) << PRECISION;
    let half = to_fixed(x) >> 1u32;
    let y = (&half * &half) >> PRECISION;

    let mut term = one;
    for j in 1..=n {
        term = ((term * &half) >> PRECISION) / BigInt::from(j);
    }
    let mut sum = term.clone();
    let mut k: u64 = 1;
    loop {
        term = -((term * &y) >> PRECISION) / BigInt::from(k * (k + n));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    from_fixed(&sum)
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Random unit-norm complex profile of length `n`.
pub fn random_profile(rng: &mut StdRng, n: usize) -> AmplitudeProfile {
    let raw: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    AmplitudeProfile::w_state_normalized(raw).expect("non-zero profile")
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
