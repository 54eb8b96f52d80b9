//! Reference implementations used only by the tests.
//!
//! None of these share code with the library: Bessel values come from a
//! double-double power series and from trapezoid quadrature of integral
//! representations, and slab modes come from a dense sign scan of a
//! pole-free form of the dispersion relation in `n_eff`.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy)]
pub struct DD {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DD {
    pub fn from(x: f64) -> Self {
        DD { hi: x, lo: 0.0 }
    }

    pub fn add(self, o: DD) -> DD {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = two_sum(s, e);
        DD { hi, lo }
    }

    pub fn mul(self, o: DD) -> DD {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = two_sum(p, e);
        DD { hi, lo }
    }

    pub fn div_f64(self, d: f64) -> DD {
        let q1 = self.hi / d;
        let (p, e) = two_prod(q1, d);
        let r = (self.hi - p - e + self.lo) / d;
        let (hi, lo) = two_sum(q1, r);
        DD { hi, lo }
    }

    pub fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn abs_hi(self) -> f64 {
        self.hi.abs()
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }
}

/// `J_n(x)` from its power series in double-double; accurate to ~1e-15
/// absolute for `x <= 20`.
pub fn j_series_dd(n: u32, x: f64) -> f64 {
    let half = DD::from(0.5 * x);
    let q = half.mul(half).neg();
    let mut term = if n == 0 { DD::from(1.0) } else { half };
    let mut sum = term;
    let mut k = 1u32;
    loop {
        term = term.mul(q).div_f64((k * (k + n)) as f64);
        sum = sum.add(term);
        if term.abs_hi() < 1e-34 * sum.abs_hi().max(1e-300) || k > 400 {
            break;
        }
        k += 1;
    }
    sum.value()
}

/// `J_n(x) = (1/2π)∫₀^{2π} cos(nτ − x·sin τ) dτ` by the trapezoid rule,
/// which converges geometrically for this periodic integrand.
pub fn j_quadrature(n: u32, x: f64) -> f64 {
    let points = (2.0 * (x + 20.0 * x.cbrt() + 60.0)).ceil() as usize;
    let h = 2.0 * PI / points as f64;
    let nf = n as f64;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for i in 0..points {
        let t = i as f64 * h;
        let y = (nf * t - x * t.sin()).cos() - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum / points as f64
}

pub fn j_oracle(n: u32, x: f64) -> f64 {
    if x <= 20.0 {
        j_series_dd(n, x)
    } else {
        j_quadrature(n, x)
    }
}

/// `e^x·K_ν(x) = ∫₀^∞ exp(−x·(cosh t − 1))·cosh(νt) dt` by the trapezoid rule
/// on the even extension of the integrand.
pub fn k_scaled_oracle(nu: u32, x: f64) -> f64 {
    let h = (0.3 / x.sqrt()).min(0.05);
    let nf = nu as f64;
    let f = |t: f64| {
        let s = (0.5 * t).sinh();
        (-x * 2.0 * s * s).exp() * (nf * t).cosh()
    };
    let mut sum = 0.5 * f(0.0);
    let mut i = 1usize;
    loop {
        let t = i as f64 * h;
        let v = f(t);
        sum += v;
        if v < 1e-20 * sum && t > 1.0 {
            break;
        }
        i += 1;
    }
    sum * h
}

pub fn k_oracle(nu: u32, x: f64) -> f64 {
    k_scaled_oracle(nu, x) * (-x).exp()
}

/// First zero of `J₀` by bisection on the double-double series.
pub fn j0_first_zero_oracle() -> f64 {
    let (mut a, mut b) = (2.3_f64, 2.5_f64);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if j_series_dd(0, a).signum() == j_series_dd(0, m).signum() {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Slab description for the oracle, independent of the library type.
#[derive(Debug, Clone, Copy)]
pub struct SlabCase {
    pub d: f64,
    pub n_core: f64,
    pub n_sub: f64,
    pub n_cover: f64,
    pub lambda0: f64,
    pub tm: bool,
}

impl SlabCase {
    /// `D(n) = sin(κd)(κ² − ρ_sρ_cγ_sγ_c) − κ(ρ_sγ_s + ρ_cγ_c)cos(κd)`,
    /// normalised by `k₀²`. Its interior zeros are exactly the guided modes.
    pub fn pole_free(&self, n: f64) -> f64 {
        let k0 = 2.0 * PI / self.lambda0;
        let kap = (self.n_core * self.n_core - n * n).max(0.0).sqrt();
        let gs = (n * n - self.n_sub * self.n_sub).max(0.0).sqrt();
        let gc = (n * n - self.n_cover * self.n_cover).max(0.0).sqrt();
        let (rs, rc) = if self.tm {
            (
                (self.n_core / self.n_sub).powi(2),
                (self.n_core / self.n_cover).powi(2),
            )
        } else {
            (1.0, 1.0)
        };
        let phi = k0 * kap * self.d;
        phi.sin() * (kap * kap - rs * rc * gs * gc) - kap * (rs * gs + rc * gc) * phi.cos()
    }

    /// Guided-mode indices in decreasing order.
    pub fn brute_force_modes(&self, samples: usize) -> Vec<f64> {
        let lo = self.n_sub.max(self.n_cover);
        let hi = self.n_core;
        let span = hi - lo;
        let mut grid = Vec::with_capacity(samples + 2);
        grid.push(lo + 1e-13 * span);
        for i in 1..samples {
            grid.push(lo + span * i as f64 / samples as f64);
        }
        grid.push(hi - 1e-13 * span);
        let mut roots = Vec::new();
        let mut prev = (grid[0], self.pole_free(grid[0]));
        for &n in &grid[1..] {
            let fv = self.pole_free(n);
            if fv == 0.0 {
                roots.push(n);
            } else if prev.1 != 0.0 && fv.signum() != prev.1.signum() {
                roots.push(self.bisect(prev.0, n));
            }
            prev = (n, fv);
        }
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        roots
    }

    fn bisect(&self, mut a: f64, mut b: f64) -> f64 {
        let mut fa = self.pole_free(a);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let fm = self.pole_free(m);
            if fm == 0.0 {
                return m;
            }
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }
}

/// Logarithmically spaced points, endpoints included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ => (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp(),
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

/// The unscaled exact `ν = 1` hybrid determinant at trial index `n`, from
/// the oracle Bessel values; `None` at a `J₁` sign change (a pole).
pub fn he11_determinant_oracle(a: f64, n_core: f64, n_clad: f64, lambda0: f64, n: f64) -> f64 {
    let k0 = 2.0 * PI / lambda0;
    let u = k0 * a * (n_core * n_core - n * n).sqrt();
    let w = k0 * a * (n * n - n_clad * n_clad).sqrt();
    let (j0, j1) = (j_oracle(0, u), j_oracle(1, u));
    let (kk0, kk1) = (k_oracle(0, w), k_oracle(1, w));
    let jp = j0 - j1 / u;
    let kp = -kk0 - kk1 / w;
    let aa = jp / (u * j1);
    let bb = kp / (w * kk1);
    let r = (n_clad / n_core).powi(2);
    (aa + bb) * (aa + r * bb) - (1.0 / (u * u) + 1.0 / (w * w)) * (1.0 / (u * u) + r / (w * w))
}

/// Largest-index root of the hybrid determinant by a dense scan from
/// `n_core` downwards, discarding sign changes that straddle a `J₁` zero.
pub fn he11_brute_force(
    a: f64,
    n_core: f64,
    n_clad: f64,
    lambda0: f64,
    samples: usize,
) -> Option<f64> {
    let k0 = 2.0 * PI / lambda0;
    let span = n_core - n_clad;
    let at = |i: usize| n_core - span * (1e-9 + (1.0 - 2e-9) * i as f64 / samples as f64);
    let u_of = |n: f64| k0 * a * (n_core * n_core - n * n).sqrt();
    let f = |n: f64| he11_determinant_oracle(a, n_core, n_clad, lambda0, n);
    let mut prev_n = at(0);
    let mut prev_f = f(prev_n);
    for i in 1..=samples {
        let n = at(i);
        let fv = f(n);
        let pole = j_oracle(1, u_of(n)).signum() != j_oracle(1, u_of(prev_n)).signum();
        if !pole && fv.signum() != prev_f.signum() {
            let (mut hi, mut lo) = (prev_n, n);
            let f_hi = prev_f;
            for _ in 0..100 {
                let m = 0.5 * (hi + lo);
                if m <= lo || m >= hi {
                    break;
                }
                if f(m).signum() == f_hi.signum() {
                    hi = m;
                } else {
                    lo = m;
                }
            }
            return Some(0.5 * (hi + lo));
        }
        prev_n = n;
        prev_f = fv;
    }
    None
}
