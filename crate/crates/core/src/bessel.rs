//! Integer-order Bessel functions of the first kind.
//!
//! Small arguments use the ascending power series. Everything else uses
//! Miller's backward recurrence started well above both the requested order
//! and the argument. The recurrence fixes the sequence only up to a scale
//! factor; its magnitude comes from `J_0^2 + 2 sum_{n>=1} J_n^2 = 1` (no
//! cancellation) and its sign from `J_0 + 2 sum_{k>=1} J_{2k} = 1`.

use crate::error::{Error, Result};

/// Largest |order| accepted by [`bessel_j`].
pub const MAX_ORDER: i64 = 500;
/// Largest |x| accepted by [`bessel_j`].
pub const MAX_ARGUMENT: f64 = 1000.0;

const SERIES_LIMIT: f64 = 1.0;
const RESCALE_AT: f64 = 1e100;
const RESCALE_BY: f64 = 1e-100;

/// `J_n(x)` for `|n| <= 500`, `|x| <= 1000`.
pub fn bessel_j(order: i64, x: f64) -> Result<f64> {
    if !x.is_finite() || order.abs() > MAX_ORDER || x.abs() > MAX_ARGUMENT {
        return Err(Error::BesselOutOfRange { order, x });
    }
    let n = order.unsigned_abs() as usize;
    let value = bessel_j_upto(n, x)[n];
    Ok(if order < 0 && n % 2 == 1 {
        -value
    } else {
        value
    })
}

/// `[J_0(x), J_1(x), ..., J_max_order(x)]` from a single recurrence sweep.
///
/// No range check: the cost grows like `max(max_order, |x|)`. `x` must be
/// finite.
pub fn bessel_j_upto(max_order: usize, x: f64) -> Vec<f64> {
    debug_assert!(x.is_finite());
    let ax = x.abs();
    let mut values = if ax == 0.0 {
        let mut v = vec![0.0; max_order + 1];
        v[0] = 1.0;
        v
    } else if ax <= SERIES_LIMIT {
        (0..=max_order).map(|n| series(n, ax)).collect()
    } else {
        backward_recurrence(max_order, ax)
    };
    if x < 0.0 {
        for v in values.iter_mut().skip(1).step_by(2) {
            *v = -*v;
        }
    }
    values
}

/// `J_n(x)` for `n >= 0` and `0 < x <= SERIES_LIMIT`.
fn series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    // (x/2)^n / n!, built as a product so large n underflows gracefully.
    let mut lead = 1.0;
    for j in 1..=n {
        lead *= half / j as f64;
    }
    if lead == 0.0 {
        return 0.0;
    }
    let y = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..100 {
        term *= -y / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

fn start_order(max_order: usize, x: f64) -> usize {
    let top = (max_order as f64).max(x.ceil());
    let start = (top + 20.0 + (60.0 * top).sqrt()) as usize;
    // Even start keeps the parity bookkeeping of the sign sum simple.
    start + start % 2
}

/// Miller's algorithm for `x > 0`.
fn backward_recurrence(max_order: usize, x: f64) -> Vec<f64> {
    let start = start_order(max_order, x);
    let mut values = vec![0.0; max_order + 1];
    let mut above = 0.0;
    let mut current = 1e-30;
    let mut sum_sq = 0.0;
    let mut even_sum = 0.0;
    for k in (1..=start).rev() {
        if k <= max_order {
            values[k] = current;
        }
        sum_sq += 2.0 * current * current;
        if k % 2 == 0 {
            even_sum += 2.0 * current;
        }
        let below = (2.0 * k as f64 / x) * current - above;
        above = current;
        current = below;
        if current.abs() > RESCALE_AT {
            current *= RESCALE_BY;
            above *= RESCALE_BY;
            sum_sq *= RESCALE_BY * RESCALE_BY;
            even_sum *= RESCALE_BY;
            for v in &mut values[k.min(max_order + 1)..] {
                *v *= RESCALE_BY;
            }
        }
    }
    // `current` now holds the unnormalised J_0.
    values[0] = current;
    sum_sq += current * current;
    even_sum += current;
    let scale = sum_sq.sqrt().copysign(even_sum);
    for v in &mut values {
        *v /= scale;
    }
    values
}
