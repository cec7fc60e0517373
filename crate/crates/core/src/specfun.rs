//! Gamma, Bessel J/Y of real order and complex argument, and the ₂F₃ series.
//!
//! Everything is evaluated from power series. Complex powers use the
//! principal branch, `(z/2)^ν = exp(ν Log(z/2))`; the purely imaginary
//! arguments `2iJ/F` used elsewhere lie on the positive imaginary axis, away
//! from the cut.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{C64, ONE, ZERO};

/// Truncation rule for power series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { max_terms: 200, rel_tol: 1e-14 }
    }
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::InvalidArgument("max_terms must be at least 1"));
        }
        if !(rel_tol > 0.0) {
            return Err(Error::InvalidArgument("rel_tol must be positive"));
        }
        Ok(Self { max_terms, rel_tol })
    }
}

/// `sin(πx)`, exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// `cos(πx)`, exact zeros at half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    if r.abs() == 0.5 {
        return 0.0;
    }
    let c = (PI * r).cos();
    if (n as i64) % 2 == 0 {
        c
    } else {
        -c
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument with a finite `Γ(x)`.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// `Γ(x)` by the Lanczos approximation (g = 7, nine terms), reflected for `x < 1/2`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::NonFinite("gamma argument"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::GammaPole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(Error::GammaOverflow(x));
    }
    if x < 0.5 {
        let g = gamma_fn(1.0 - x)?;
        return Ok(PI / (sin_pi(x) * g));
    }
    let y = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (y + i as f64);
    }
    let t = y + LANCZOS_G + 0.5;
    // t^(y+1/2) is split in two so that Γ(170) does not overflow midway.
    let half = t.powf(0.5 * (y + 0.5));
    Ok((2.0 * PI).sqrt() * half * (half * (-t).exp()) * acc)
}

/// `1/Γ(x)`, zero at the poles.
pub fn recip_gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        return Ok(0.0);
    }
    if x > GAMMA_MAX_ARG {
        return Ok(0.0);
    }
    Ok(1.0 / gamma_fn(x)?)
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Sums `Σ_k sign^k (z/2)^{2k+ν} / (k! Γ(ν+k+1))`; `sign = -1` gives J, `+1` gives I.
fn bessel_series(nu: f64, z: C64, sign: f64, ctrl: SeriesControl) -> Result<C64> {
    if z == ZERO {
        if nu == 0.0 {
            return Ok(ONE);
        }
        if nu > 0.0 || nu == nu.round() {
            return Ok(ZERO);
        }
        return Err(Error::NonFinite("negative non-integer order at z = 0"));
    }
    let half = z * 0.5;
    let q = half * half * sign;
    // Terms with ν+k+1 a non-positive integer vanish; start after them.
    let k0 = if is_nonpositive_integer(nu) { (-nu) as usize } else { 0 };
    let pow_nu = (half.ln() * nu).exp();
    let mut term = pow_nu * half.powi(2 * k0 as i32) * sign.powi(k0 as i32) * recip_gamma(nu + k0 as f64 + 1.0)?
        / factorial(k0);
    let mut sum = term;
    let k_min = (z.norm() * 0.5 + nu.abs()).ceil() as usize + k0;
    for k in k0 + 1..k0 + ctrl.max_terms {
        term = term * q / (k as f64 * (nu + k as f64));
        sum += term;
        if k >= k_min && term.norm() <= ctrl.rel_tol * sum.norm() {
            return Ok(sum);
        }
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonFinite("Bessel series"));
        }
    }
    Err(Error::SeriesNonConvergence { terms: ctrl.max_terms })
}

/// Bessel function of the first kind `J_ν(z)`.
pub fn bessel_j(nu: f64, z: C64, ctrl: SeriesControl) -> Result<C64> {
    bessel_series(nu, z, -1.0, ctrl)
}

/// Modified Bessel function of the first kind `I_ν(z)`.
pub fn bessel_i(nu: f64, z: C64, ctrl: SeriesControl) -> Result<C64> {
    bessel_series(nu, z, 1.0, ctrl)
}

/// Distance below which an order counts as integer for `Y_ν`.
pub const INTEGER_ORDER_GUARD: f64 = 1e-6;

/// Bessel function of the second kind, `(cos νπ J_ν − J_{−ν}) / sin νπ`.
pub fn bessel_y(nu: f64, z: C64, ctrl: SeriesControl) -> Result<C64> {
    if (nu - nu.round()).abs() < INTEGER_ORDER_GUARD {
        return Err(Error::NearIntegerOrder(nu));
    }
    let jp = bessel_j(nu, z, ctrl)?;
    let jm = bessel_j(-nu, z, ctrl)?;
    Ok((jp * cos_pi(nu) - jm) / sin_pi(nu))
}

/// Integer-order `J_n(z)`, via `J_{−n} = (−1)^n J_n`.
pub fn bessel_j_int(n: i64, z: C64) -> Result<C64> {
    let j = bessel_j(n.unsigned_abs() as f64, z, SeriesControl::default())?;
    Ok(if n < 0 && n % 2 != 0 { -j } else { j })
}

/// Generalized hypergeometric `₂F₃(a1, a2; b1, b2, b3; z)`.
pub fn hyp2f3(a1: f64, a2: f64, b1: f64, b2: f64, b3: f64, z: C64, ctrl: SeriesControl) -> Result<C64> {
    // A non-positive integer upper parameter terminates the series at k = −a.
    let stop = [a1, a2]
        .iter()
        .filter(|&&a| is_nonpositive_integer(a))
        .map(|&a| (-a) as usize)
        .min();
    for &b in &[b1, b2, b3] {
        if is_nonpositive_integer(b) {
            let reached = (-b) as usize;
            if stop.map_or(true, |s| s > reached) {
                return Err(Error::ParameterPole(b));
            }
        }
    }
    let mut term = ONE;
    let mut sum = ONE;
    let scale = [a1, a2, b1, b2, b3].iter().fold(z.norm().cbrt(), |m, p| m.max(p.abs()));
    let k_min = scale.ceil() as usize + 1;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        let num = (a1 + kf) * (a2 + kf);
        if num == 0.0 {
            return Ok(sum);
        }
        let den = (b1 + kf) * (b2 + kf) * (b3 + kf) * (kf + 1.0);
        term = term * z * (num / den);
        sum += term;
        if k + 1 >= k_min && term.norm() <= ctrl.rel_tol * sum.norm() {
            return Ok(sum);
        }
        if !(sum.re.is_finite() && sum.im.is_finite()) {
            return Err(Error::NonFinite("hypergeometric series"));
        }
    }
    Err(Error::SeriesNonConvergence { terms: ctrl.max_terms })
}

fn check_asymptotic_regime(nu: f64, x: f64) -> Result<()> {
    if !(x > 0.0 && x <= 0.2) {
        return Err(Error::Regime("requires 0 < x <= 0.2"));
    }
    if !(nu >= 5.0) {
        return Err(Error::Regime("requires order >= 5"));
    }
    Ok(())
}

/// Leading small-argument, large-order form `(2πν)^{−1/2} (e x / 2ν)^ν`.
pub fn bessel_j_asymptotic(nu: f64, x: f64) -> Result<f64> {
    check_asymptotic_regime(nu, x)?;
    Ok((2.0 * PI * nu).powf(-0.5) * (core::f64::consts::E * x / (2.0 * nu)).powf(nu))
}

/// Leading form `(2/(πν))^{1/2} (e x / 2ν)^{−ν}`.
///
/// This is the magnitude of `Y_ν(x)`, which is negative in this regime.
pub fn bessel_y_asymptotic(nu: f64, x: f64) -> Result<f64> {
    check_asymptotic_regime(nu, x)?;
    Ok((2.0 / (PI * nu)).sqrt() * (core::f64::consts::E * x / (2.0 * nu)).powf(-nu))
}
