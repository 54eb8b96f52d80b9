//! Bessel functions `J₀`, `J₁` and modified Bessel functions `K₀`, `K₁` of
//! real argument, with their first derivatives.
//!
//! Evaluation regions:
//!
//! | function | region            | method                                   |
//! |----------|-------------------|------------------------------------------|
//! | `J`      | `x < 8`           | power series                             |
//! | `J`      | `8 <= x < 30`     | Miller backward recurrence, normalised   |
//! | `J`      | `30 <= x <= 1e4`  | Hankel asymptotic expansion              |
//! | `K`      | `x <= 2`          | logarithmic power series                 |
//! | `K`      | `2 < x <= 700`    | Steed/Temme continued fraction           |
//!
//! Every value carries a conservative estimate of its absolute error.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest argument accepted by [`bessel_j`].
pub const J_MAX_ARG: f64 = 1.0e4;
/// Largest argument accepted by [`bessel_k`] before `e^{-x}` underflows.
pub const K_MAX_ARG: f64 = 700.0;

/// First positive zero of `J₀`.
pub const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;
/// First positive zero of `J₁`.
pub const J1_FIRST_ZERO: f64 = 3.831_705_970_207_512;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 8.0;
const HANKEL_LIMIT: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecFunResult {
    pub value: f64,
    pub est_abs_error: f64,
}

impl SpecFunResult {
    fn new(value: f64, est_abs_error: f64) -> Self {
        SpecFunResult {
            value,
            est_abs_error: est_abs_error.abs(),
        }
    }
}

/// Order of the supported Bessel functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Zero,
    One,
}

impl Order {
    fn as_f64(self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
        }
    }
}

fn check_j_arg(x: f64) -> Result<()> {
    if x.is_nan() || !(0.0..=J_MAX_ARG).contains(&x) {
        return Err(Error::domain("x", x, "J requires 0 <= x <= 1e4"));
    }
    Ok(())
}

fn check_k_arg(function: &'static str, x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain("x", x, "K requires x > 0"));
    }
    if x > K_MAX_ARG {
        return Err(Error::Underflow {
            function,
            x,
            limit: K_MAX_ARG,
        });
    }
    Ok(())
}

/// `J_order(x)` for `0 <= x <= 1e4`.
pub fn bessel_j(order: Order, x: f64) -> Result<SpecFunResult> {
    check_j_arg(x)?;
    let (j0, j1) = j01(x);
    Ok(match order {
        Order::Zero => j0,
        Order::One => j1,
    })
}

/// `J₀` and `J₁` together; the solvers always need both.
pub(crate) fn j01(x: f64) -> (SpecFunResult, SpecFunResult) {
    if x < SERIES_LIMIT {
        (j_series(0, x), j_series(1, x))
    } else if x < HANKEL_LIMIT {
        j_miller(x)
    } else {
        (j_hankel(Order::Zero, x), j_hankel(Order::One, x))
    }
}

fn j_series(n: u32, x: f64) -> SpecFunResult {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = if n == 0 { 1.0 } else { half };
    let mut sum = term;
    let mut abs_sum = term.abs();
    let mut k = 1.0;
    let nf = n as f64;
    while term.abs() > 1e-18 * abs_sum.max(1e-300) {
        term *= q / (k * (k + nf));
        sum += term;
        abs_sum += term.abs();
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    SpecFunResult::new(sum, 4.0 * f64::EPSILON * abs_sum)
}

/// Backward recurrence `J_{k-1} = (2k/x)·J_k − J_{k+1}` normalised with
/// `1 = J₀ + 2·Σ J_{2k}`.
fn j_miller(x: f64) -> (SpecFunResult, SpecFunResult) {
    let mut start = (1.5 * x + 40.0).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut next = 0.0_f64; // J_{k+1}
    let mut cur = 1.0e-30_f64; // J_k
    let mut norm = 0.0_f64;
    let mut j1 = 0.0_f64;
    for k in (1..=start).rev() {
        let prev = (2.0 * k as f64 / x) * cur - next;
        next = cur;
        cur = prev;
        // cur is now J_{k-1}
        if k - 1 == 1 {
            j1 = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += cur;
    let err = 20.0 * f64::EPSILON;
    (
        SpecFunResult::new(cur / norm, err),
        SpecFunResult::new(j1 / norm, err),
    )
}

/// `J_n(x) = √(2/πx)·(P cos χ − Q sin χ)`, `χ = x − (n/2 + 1/4)π`.
fn j_hankel(order: Order, x: f64) -> SpecFunResult {
    let mu = 4.0 * order.as_f64().powi(2);
    let mut term = 1.0_f64;
    let mut p = 1.0_f64;
    let mut q = 0.0_f64;
    let mut k = 1.0_f64;
    let mut last = 1.0_f64;
    loop {
        let odd = 2.0 * k - 1.0;
        let next = term * (mu - odd * odd) / (k * 8.0 * x);
        if next.abs() >= term.abs() || next.abs() < 1e-17 {
            last = next.abs().max(1e-17);
            break;
        }
        term = next;
        // Signs cycle + (P), + (Q), − (P), − (Q) over k mod 4.
        match k as u64 % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        k += 1.0;
        if k > 60.0 {
            break;
        }
    }
    let (s, c) = x.sin_cos();
    // cos χ and sin χ without reducing x − phase in floating point.
    let (cos_chi, sin_chi) = match order {
        Order::Zero => ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2),
        Order::One => ((s - c) * FRAC_1_SQRT_2, -(s + c) * FRAC_1_SQRT_2),
    };
    let amp = (2.0 / (PI * x)).sqrt();
    let value = amp * (p * cos_chi - q * sin_chi);
    SpecFunResult::new(value, amp * (last + 8.0 * f64::EPSILON))
}

/// `J'_order(x)`: `J₀' = −J₁`, `J₁' = J₀ − J₁/x` with `J₁'(0) = 1/2`.
pub fn bessel_j_prime(order: Order, x: f64) -> Result<SpecFunResult> {
    check_j_arg(x)?;
    let (j0, j1) = j01(x);
    Ok(match order {
        Order::Zero => SpecFunResult::new(-j1.value, j1.est_abs_error),
        Order::One => {
            if x == 0.0 {
                SpecFunResult::new(0.5, 0.0)
            } else if x < 1e-4 {
                // J₀ − J₁/x cancels; use the series 1/2 − 3x²/16.
                SpecFunResult::new(0.5 - 3.0 * x * x / 16.0, f64::EPSILON)
            } else {
                SpecFunResult::new(
                    j0.value - j1.value / x,
                    j0.est_abs_error + j1.est_abs_error / x,
                )
            }
        }
    })
}

/// `K_order(x)` for `0 < x <= 700`.
pub fn bessel_k(order: Order, x: f64) -> Result<SpecFunResult> {
    check_k_arg("K", x)?;
    let (k0, k1) = k01_scaled(x);
    let scale = (-x).exp();
    let r = match order {
        Order::Zero => k0,
        Order::One => k1,
    };
    Ok(SpecFunResult::new(r.value * scale, r.est_abs_error * scale))
}

/// `K'_order(x)`: `K₀' = −K₁`, `K₁' = −K₀ − K₁/x`.
pub fn bessel_k_prime(order: Order, x: f64) -> Result<SpecFunResult> {
    check_k_arg("K'", x)?;
    let (k0, k1) = k01_scaled(x);
    let scale = (-x).exp();
    Ok(match order {
        Order::Zero => SpecFunResult::new(-k1.value * scale, k1.est_abs_error * scale),
        Order::One => SpecFunResult::new(
            (-k0.value - k1.value / x) * scale,
            (k0.est_abs_error + k1.est_abs_error / x) * scale,
        ),
    })
}

/// `eˣ·K₀(x)` and `eˣ·K₁(x)`.
pub(crate) fn k01_scaled(x: f64) -> (SpecFunResult, SpecFunResult) {
    if x <= 2.0 {
        let (k0, k1) = k_series(x);
        let e = x.exp();
        (
            SpecFunResult::new(k0.value * e, k0.est_abs_error * e),
            SpecFunResult::new(k1.value * e, k1.est_abs_error * e),
        )
    } else {
        k_continued_fraction(x)
    }
}

/// Small-argument series.
///
/// `K₀ = −(ln(x/2)+γ)·I₀ + Σ H_k·t_k`, `t_k = (x²/4)^k/(k!)²`, and
/// `K₁ = 1/x + ln(x/2)·I₁ − (x/4)·Σ (ψ(k+1)+ψ(k+2))·(x²/4)^k/(k!(k+1)!)`.
fn k_series(x: f64) -> (SpecFunResult, SpecFunResult) {
    let y = 0.25 * x * x;
    let log_half = (0.5 * x).ln();

    let mut t0 = 1.0_f64; // (x²/4)^k/(k!)²
    let mut t1 = 1.0_f64; // (x²/4)^k/(k!(k+1)!)
    let mut i0 = 1.0_f64;
    let mut i1_over_half_x = 1.0_f64;
    let mut harmonic = 0.0_f64; // H_k
    let mut sum0 = 0.0_f64;
    // ψ(k+1) + ψ(k+2) = 2H_k + 1/(k+1) − 2γ
    let mut sum1 = 1.0 - 2.0 * EULER_GAMMA;
    let mut abs0 = 0.0_f64;
    let mut abs1 = sum1.abs();
    let mut k = 1.0_f64;
    loop {
        t0 *= y / (k * k);
        t1 *= y / (k * (k + 1.0));
        harmonic += 1.0 / k;
        i0 += t0;
        i1_over_half_x += t1;
        let a0 = harmonic * t0;
        let a1 = (2.0 * harmonic + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA) * t1;
        sum0 += a0;
        sum1 += a1;
        abs0 += a0.abs();
        abs1 += a1.abs();
        if t0 < 1e-18 * i0 && t1 < 1e-18 * i1_over_half_x {
            break;
        }
        k += 1.0;
    }
    let i1 = 0.5 * x * i1_over_half_x;
    let lead0 = -(log_half + EULER_GAMMA) * i0;
    let k0 = lead0 + sum0;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * sum1;
    let e0 = 4.0 * f64::EPSILON * (lead0.abs() + abs0);
    let e1 = 4.0 * f64::EPSILON * (1.0 / x + (log_half * i1).abs() + 0.25 * x * abs1);
    (SpecFunResult::new(k0, e0), SpecFunResult::new(k1, e1))
}

/// Steed's continued fraction CF2 in Temme's normalisation, valid for x >= 2.
fn k_continued_fraction(x: f64) -> (SpecFunResult, SpecFunResult) {
    const A1: f64 = 0.25; // 1/4 − μ² with μ = 0
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0_f64;
    let mut q2 = 1.0_f64;
    let mut q = A1;
    let mut c = A1;
    let mut a = -A1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    let h = A1 * h;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    let rel = 16.0 * f64::EPSILON;
    (
        SpecFunResult::new(k0, rel * k0),
        SpecFunResult::new(k1, rel * k1),
    )
}
