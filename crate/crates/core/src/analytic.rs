//! Closed-form five-site spectrum and the Bessel secular equations of the
//! tilted chain.
//!
//! With `α = iJ/F` the amplitudes of an eigenstate of energy `e` obey a Bessel
//! recurrence of order `j − ξ`, `ξ = e/(iF) + (N+1)/2`; the open boundaries turn
//! this into a secular equation in `ξ`, whose real roots are the purely
//! imaginary ladder eigenvalues.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{C64, I, ONE, ZERO};
use crate::specfun::{bessel_j, bessel_y, cos_pi, hyp2f3, sin_pi, SeriesControl};

/// One of the five eigen-branches `e_ρσ` of the five-site ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    PlusPlus,
    PlusMinus,
    Zero,
    MinusPlus,
    MinusMinus,
}

impl Branch {
    pub const ALL: [Branch; 5] = [Branch::PlusPlus, Branch::PlusMinus, Branch::Zero, Branch::MinusPlus, Branch::MinusMinus];

    /// `(ρ, σ)` as signs; the zero branch is `(0, 0)`.
    pub fn signs(self) -> (f64, f64) {
        match self {
            Branch::PlusPlus => (1.0, 1.0),
            Branch::PlusMinus => (1.0, -1.0),
            Branch::Zero => (0.0, 0.0),
            Branch::MinusPlus => (-1.0, 1.0),
            Branch::MinusMinus => (-1.0, -1.0),
        }
    }

    fn index(self) -> usize {
        match self {
            Branch::PlusPlus => 0,
            Branch::PlusMinus => 1,
            Branch::Zero => 2,
            Branch::MinusPlus => 3,
            Branch::MinusMinus => 4,
        }
    }
}

/// Closed-form spectrum of the five-site ladder with hopping `J` and tilt `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm5 {
    pub j: f64,
    pub f: f64,
    /// `Δ = [(2J² − 3F²)² − 12J²F²]^{1/2}` (principal root).
    pub delta: C64,
    /// `e_{++}, e_{+−}, e_{00}, e_{−+}, e_{−−}`.
    pub values: [C64; 5],
}

impl ClosedForm5 {
    pub fn value(&self, branch: Branch) -> C64 {
        self.values[branch.index()]
    }
}

/// `e_ρσ = ρ [(−5F² + 4J² + σΔ)/2]^{1/2}` and `e_00 = 0`.
pub fn eigenvalues_n5(j: f64, f: f64) -> ClosedForm5 {
    let delta = delta_n5(j, f);
    let mut values = [ZERO; 5];
    for b in Branch::ALL {
        let (rho, sigma) = b.signs();
        values[b.index()] = if b == Branch::Zero {
            ZERO
        } else {
            ((C64::new(-5.0 * f * f + 4.0 * j * j, 0.0) + delta * sigma) / 2.0).sqrt() * rho
        };
    }
    ClosedForm5 { j, f, delta, values }
}

fn delta_n5(j: f64, f: f64) -> C64 {
    let a = 2.0 * j * j - 3.0 * f * f;
    C64::new(a * a - 12.0 * j * j * f * f, 0.0).sqrt()
}

/// Eigenvector of one branch, in raw and unit-normalized form.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaVector {
    pub branch: Branch,
    pub value: C64,
    /// `(Θ_1, …, Θ_5)` with `Θ_1 = J³`.
    pub raw: [C64; 5],
    /// `raw / ‖raw‖₂`.
    pub normalized: [C64; 5],
    /// The printed normalization `Λ_ρσ`.
    pub printed_lambda: f64,
    /// `|Λ_ρσ − ‖raw‖²| / ‖raw‖²`.
    pub lambda_discrepancy: f64,
}

/// `|Δ|/J²` below which the closed-form vectors are refused.
///
/// Rounding of the ratio alone leaves `|Δ|` between 3e-8 and 1e-7 (in units of J²) at
/// the nearest double to a critical ratio, so the guard sits just above that floor.
pub const EP_PROXIMITY: f64 = 2e-7;

pub fn eigenvector_n5(j: f64, f: f64, branch: Branch) -> Result<ThetaVector> {
    let form = eigenvalues_n5(j, f);
    if form.delta.norm() <= EP_PROXIMITY * j * j {
        return Err(Error::NearExceptionalPoint(form.delta.norm()));
    }
    let e = form.value(branch);
    let xi = e + I * (2.0 * f);
    let xm = xi - I * f;
    let pole = xi - I * (4.0 * f);
    if pole.norm() <= EP_PROXIMITY * j {
        return Err(Error::InvalidArgument("branch sits on the pole Ξ = 4iF"));
    }
    let j2 = j * j;
    let j3 = j2 * j;
    let tail = e * xi - j2 * 2.0;
    let raw = [ONE * j3, xi * j2, xi * xm * j - j3, xm * tail, xm * tail * j / pole];
    let n2: f64 = raw.iter().map(|z| z.norm_sqr()).sum();
    let n = n2.sqrt();
    let normalized = raw.map(|z| z / n);

    let ax = xi.norm();
    let ax2 = ax * ax;
    let printed_lambda = j3 * j3
        + ax2 * j2 * j2
        + (xi * xm * j - j3).norm_sqr()
        + (ax2 - 3.0 * f * f) * (ax2 - 2.0 * j2).powi(2) * (1.0 + j2 / ax2);
    Ok(ThetaVector { branch, value: e, raw, normalized, printed_lambda, lambda_discrepancy: (printed_lambda - n2).abs() / n2 })
}

/// `(F/J)_{c1} = [(6+3√3)/2]^{−1/2}` and `(F/J)_{c2} = [(6−3√3)/2]^{−1/2}`.
pub fn critical_ratios() -> (f64, f64) {
    let s3 = 3.0f64.sqrt();
    (((6.0 + 3.0 * s3) / 2.0).powf(-0.5), ((6.0 - 3.0 * s3) / 2.0).powf(-0.5))
}

/// Coefficients (ascending) of `det(λ − H)` for the `n`-site ladder.
fn ladder_char_poly(n: usize, j: f64, f: f64) -> Vec<C64> {
    let mut prev = vec![ONE];
    let mut cur = vec![ONE];
    for k in 0..n {
        let d = I * (f * (k as f64 + 1.0 - (n as f64 + 1.0) / 2.0));
        let mut next = vec![ZERO; cur.len() + 1];
        for (p, &c) in cur.iter().enumerate() {
            next[p + 1] += c;
            next[p] -= c * d;
        }
        if k > 0 {
            for (p, &c) in prev.iter().enumerate() {
                next[p] -= c * (j * j);
            }
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// Tilt ratio of the third-order EP of the seven-site ladder near `F/J = 0.732`.
///
/// The characteristic polynomial is odd with real coefficients; the EP3 at zero
/// energy is where its linear coefficient vanishes.
pub fn ep3_ratio() -> f64 {
    let lin = |r: f64| ladder_char_poly(7, 1.0, r)[1].re;
    let (mut a, mut b) = (0.70, 0.76);
    let fa = lin(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if (lin(m) > 0.0) == (fa > 0.0) {
            a = m;
        } else {
            b = m;
        }
        if b - a <= 4.0 * f64::EPSILON {
            break;
        }
    }
    0.5 * (a + b)
}

fn two_alpha(j: f64, f: f64) -> Result<C64> {
    if !(j > 0.0 && f > 0.0 && j.is_finite() && f.is_finite()) {
        return Err(Error::InvalidArgument("J and F must be positive"));
    }
    Ok(C64::new(0.0, 2.0 * j / f))
}

/// `J_{−ξ}(2α) Y_{N+1−ξ}(2α) − J_{N+1−ξ}(2α) Y_{−ξ}(2α)`.
pub fn secular_f(xi: f64, j: f64, f: f64, n: usize) -> Result<C64> {
    let z = two_alpha(j, f)?;
    let c = SeriesControl::default();
    let top = n as f64 + 1.0 - xi;
    Ok(bessel_j(-xi, z, c)? * bessel_y(top, z, c)? - bessel_j(top, z, c)? * bessel_y(-xi, z, c)?)
}

/// Finite-difference step of [`secular_df`].
pub const DERIVATIVE_STEP: f64 = 1e-5;

/// `∂ secular_f / ∂ξ`: central difference with one Richardson level.
pub fn secular_df(xi: f64, j: f64, f: f64, n: usize) -> Result<C64> {
    secular_df_step(xi, j, f, n, DERIVATIVE_STEP)
}

pub fn secular_df_step(xi: f64, j: f64, f: f64, n: usize, h: f64) -> Result<C64> {
    let d = |h: f64| -> Result<C64> { Ok((secular_f(xi + h, j, f, n)? - secular_f(xi - h, j, f, n)?) / (2.0 * h)) };
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    Ok((fine * 4.0 - coarse) / 3.0)
}

/// Largest `|α|` accepted by the reduced equations.
pub const REDUCED_ALPHA_MAX: f64 = 0.7;

/// `J_{−ξ}(2α)`, the secular function once `|Y_{N+1−ξ}|` dominates.
pub fn reduced_secular(xi: f64, j: f64, f: f64) -> Result<C64> {
    let z = two_alpha(j, f)?;
    if j / f > REDUCED_ALPHA_MAX {
        return Err(Error::Regime("reduced secular equation requires |α| <= 0.7"));
    }
    bessel_j(-xi, z, SeriesControl::default())
}

/// `₂F₃(−ξ, −ξ+½; −ξ+1, −ξ+1, −2ξ+1; −4α²)`.
pub fn reduced_ep_condition(xi: f64, j: f64, f: f64) -> Result<C64> {
    let z = two_alpha(j, f)?;
    hyp2f3(-xi, 0.5 - xi, 1.0 - xi, 1.0 - xi, 1.0 - 2.0 * xi, -(z * z), SeriesControl::default())
}

/// Sampling step of the `ξ` root scanner.
pub const XI_STEP: f64 = 0.02;
/// Distance kept from integer `ξ`, where `Y` has to be avoided.
pub const INTEGER_OFFSET: f64 = 1e-5;

#[derive(Clone, Copy, Debug)]
struct Sample {
    xi: f64,
    value: C64,
    /// Set when this sample and the next one straddle an integer.
    straddles: bool,
}

fn xi_grid(lo: f64, hi: f64) -> Vec<(f64, bool)> {
    let near_int = |x: f64| (x - x.round()).abs() < 2.0 * INTEGER_OFFSET;
    let mut pts: Vec<(f64, bool)> = Vec::new();
    let count = ((hi - lo) / XI_STEP).ceil() as usize;
    for k in 0..=count {
        let x = (lo + k as f64 * XI_STEP).min(hi);
        if !near_int(x) {
            pts.push((x, false));
        }
    }
    let mut m = lo.ceil();
    while m <= hi {
        if m - INTEGER_OFFSET > lo {
            pts.push((m - INTEGER_OFFSET, m + INTEGER_OFFSET < hi));
        }
        if m + INTEGER_OFFSET < hi {
            pts.push((m + INTEGER_OFFSET, false));
        }
        m += 1.0;
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-12);
    pts
}

/// `Re(z e^{−iθ})` where `θ` is the phase of `z` taken modulo π nearest `reference`.
fn rotate(z: C64, reference: f64) -> (f64, f64) {
    let arg = z.arg();
    let theta = arg + ((reference - arg) / PI).round() * PI;
    (theta, (z * C64::from_polar(1.0, -theta)).re)
}

fn signed(z: C64, theta: f64) -> f64 {
    (z * C64::from_polar(1.0, -theta)).re
}

fn bisect(g: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, ga: f64) -> Result<f64> {
    let pos = ga > 0.0;
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
            break;
        }
        let m = 0.5 * (a + b);
        let gm = g(m)?;
        if gm == 0.0 {
            return Ok(m);
        }
        if (gm > 0.0) == pos {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

fn golden_min(g: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let r = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut gc = g(c)?;
    let mut gd = g(d)?;
    for _ in 0..80 {
        if gc < 0.0 || gd < 0.0 {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d)?;
        }
    }
    Ok(if gc < gd { (c, gc) } else { (d, gd) })
}

/// Real roots of a complex function of constant (or slowly varying) phase on `(lo, hi)`.
///
/// Samples are rotated onto the real axis with their own phase taken modulo π
/// and tracked continuously, so sign changes mark roots. Two roots closer than
/// the step show up as a dip of the rotated samples toward zero and are split by
/// a golden-section search. A sign change across an integer is reported as the
/// integer itself.
pub fn real_roots(g: impl Fn(f64) -> Result<C64>, lo: f64, hi: f64) -> Result<Vec<f64>> {
    if !(lo < hi) {
        return Err(Error::InvalidArgument("empty root window"));
    }
    let grid = xi_grid(lo, hi);
    let mut samples = Vec::with_capacity(grid.len());
    for &(xi, straddles) in &grid {
        samples.push(Sample { xi, value: g(xi)?, straddles });
    }
    let mut theta = samples.first().map_or(0.0, |s| s.value.arg());
    let mut s = Vec::with_capacity(samples.len());
    let mut th = Vec::with_capacity(samples.len());
    for smp in &samples {
        let (t, v) = rotate(smp.value, theta);
        theta = t;
        th.push(t);
        s.push(v);
    }

    let mut roots = Vec::new();
    for k in 0..samples.len().saturating_sub(1) {
        let (a, b) = (&samples[k], &samples[k + 1]);
        if s[k] == 0.0 {
            roots.push(a.xi);
            continue;
        }
        if s[k] * s[k + 1] < 0.0 {
            if a.straddles {
                roots.push(0.5 * (a.xi + b.xi));
            } else {
                let t = th[k];
                let h = |x: f64| -> Result<f64> { Ok(signed(g(x)?, t)) };
                roots.push(bisect(&h, a.xi, b.xi, s[k])?);
            }
        } else if k >= 1 && !samples[k - 1].straddles && !a.straddles {
            let (o0, o1, o2) = (s[k - 1] * s[k].signum(), s[k].abs(), s[k + 1] * s[k].signum());
            if o0 > o1 && o2 > o1 {
                let t = th[k];
                let sign = s[k].signum();
                let h = |x: f64| -> Result<f64> { Ok(signed(g(x)?, t) * sign) };
                let (xm, gm) = golden_min(&h, samples[k - 1].xi, b.xi)?;
                if gm < 0.0 {
                    roots.push(bisect(&h, samples[k - 1].xi, xm, o0)?);
                    roots.push(bisect(&h, xm, b.xi, gm)?);
                }
            }
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok(roots)
}

/// Real roots `ξ ∈ (0, N+1)` of the secular function.
pub fn secular_roots(n: usize, j: f64, f: f64) -> Result<Vec<f64>> {
    real_roots(|xi| secular_f(xi, j, f, n), 0.0, n as f64 + 1.0)
}

/// Ladder eigenvalue `iF(ξ − (N+1)/2)` belonging to a root `ξ`.
pub fn root_to_energy(xi: f64, f: f64, n: usize) -> C64 {
    C64::new(0.0, f * (xi - (n as f64 + 1.0) / 2.0))
}

/// Real secular roots over a grid of tilt ratios (`J = 1`).
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleFreeScan {
    pub n_sites: usize,
    pub ratio_grid: Vec<f64>,
    pub roots: Vec<Vec<f64>>,
    /// Ratios between grid samples at which the real-root count drops.
    pub merge_points: Vec<f64>,
}

impl ScaleFreeScan {
    /// Whether the root count changes between ratio samples `k` and `k + 1`.
    pub fn merged_between(&self, k: usize) -> bool {
        k + 1 < self.roots.len() && self.roots[k].len() != self.roots[k + 1].len()
    }
}

fn root_count(n: usize, ratio: f64) -> Result<usize> {
    Ok(secular_roots(n, 1.0, ratio)?.len())
}

/// Narrows a bracket in ratio across which the root count changes.
fn refine_count_change(n: usize, mut lo: f64, mut hi: f64, count_hi: usize, tol: f64) -> Result<(f64, f64)> {
    while hi - lo > tol {
        let m = 0.5 * (lo + hi);
        if root_count(n, m)? == count_hi {
            hi = m;
        } else {
            lo = m;
        }
    }
    Ok((lo, hi))
}

pub fn scale_free_scan(n: usize, ratios: &[f64]) -> Result<ScaleFreeScan> {
    if n < 2 {
        return Err(Error::InvalidArgument("the ladder needs at least two sites"));
    }
    let roots: Vec<Vec<f64>> = ratios.iter().map(|&r| secular_roots(n, 1.0, r)).collect::<Result<_>>()?;
    let mut merge_points = Vec::new();
    for k in 0..ratios.len().saturating_sub(1) {
        if roots[k].len() != roots[k + 1].len() {
            let (lo, hi, c_hi) = if ratios[k] < ratios[k + 1] {
                (ratios[k], ratios[k + 1], roots[k + 1].len())
            } else {
                (ratios[k + 1], ratios[k], roots[k].len())
            };
            let (a, b) = refine_count_change(n, lo, hi, c_hi, 1e-9)?;
            merge_points.push(0.5 * (a + b));
        }
    }
    Ok(ScaleFreeScan { n_sites: n, ratio_grid: ratios.to_vec(), roots, merge_points })
}

/// Ratio step of the descending scan in [`find_scale_free_ep`].
pub const RATIO_STEP: f64 = 0.01;
/// Largest root separation accepted as a double root.
pub const MERGE_GAP: f64 = 1e-4;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    if v.is_empty() {
        0.0
    } else {
        v[v.len() / 2]
    }
}

/// Largest `F/J` in `[ratio_lo, ratio_hi]` at which two real secular roots merge.
pub fn find_scale_free_ep(n: usize, ratio_lo: f64, ratio_hi: f64) -> Result<f64> {
    if !(ratio_lo > 0.0 && ratio_hi > ratio_lo) {
        return Err(Error::InvalidArgument("ratio window must satisfy 0 < lo < hi"));
    }
    let none = Error::NoMergeFound { lo: ratio_lo, hi: ratio_hi };
    let mut upper = ratio_hi;
    let mut count = root_count(n, upper)?;
    let (lo, hi) = loop {
        if upper <= ratio_lo {
            return Err(none);
        }
        let next = (upper - RATIO_STEP).max(ratio_lo);
        let c = root_count(n, next)?;
        if c < count {
            break refine_count_change(n, next, upper, count, 1e-12)?;
        }
        count = c;
        upper = next;
    };
    let ratio = 0.5 * (lo + hi);
    let roots = secular_roots(n, 1.0, hi)?;
    let (k, gap) = roots
        .windows(2)
        .enumerate()
        .map(|(k, w)| (k, w[1] - w[0]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(none)?;
    if gap >= MERGE_GAP {
        return Err(Error::NotDoubleRoot { gap });
    }
    let mid = 0.5 * (roots[k] + roots[k + 1]);
    let scale: Vec<f64> = xi_grid(0.0, n as f64 + 1.0)
        .iter()
        .step_by(5)
        .filter(|&&(x, _)| x > 2.0 * DERIVATIVE_STEP && x < n as f64 + 1.0 - 2.0 * DERIVATIVE_STEP)
        .filter(|&&(x, _)| (x - x.round()).abs() > 2.0 * DERIVATIVE_STEP)
        .map(|&(x, _)| secular_df(x, 1.0, hi, n).map(|d| d.norm()))
        .collect::<Result<_>>()?;
    let slope = secular_df(mid, 1.0, hi, n)?.norm();
    if slope >= 1e-3 * median(scale) {
        return Err(Error::NotDoubleRoot { gap });
    }
    Ok(ratio)
}

/// `J_{−ξ}(2α)` with the phase `e^{−iπξ/2}` of a purely imaginary `α` removed.
fn reduced_real(xi: f64, ratio: f64) -> Result<f64> {
    let v = reduced_secular(xi, 1.0, ratio)?;
    Ok((v * C64::new(cos_pi(xi / 2.0), sin_pi(xi / 2.0))).re)
}

fn hyper_real(xi: f64, ratio: f64) -> Result<f64> {
    Ok(reduced_ep_condition(xi, 1.0, ratio)?.re)
}

/// `ξ` window searched by [`reduced_scale_free_ep`].
pub const REDUCED_XI_WINDOW: (f64, f64) = (0.0, 3.0);

fn reduced_count(ratio: f64) -> Result<usize> {
    Ok(real_roots(|x| reduced_secular(x, 1.0, ratio), REDUCED_XI_WINDOW.0, REDUCED_XI_WINDOW.1)?.len())
}

/// Common root `(ξ, F/J)` of the reduced secular and reduced EP conditions.
///
/// The seed is the ratio where the first pair of reduced zeros merges on a
/// descending scan from `ratio_hi`; Newton's method on both conditions refines it.
pub fn reduced_scale_free_ep(ratio_lo: f64, ratio_hi: f64) -> Result<(f64, f64)> {
    if !(ratio_lo >= 1.0 / REDUCED_ALPHA_MAX && ratio_hi > ratio_lo) {
        return Err(Error::InvalidArgument("ratio window must lie inside the reduced regime"));
    }
    let none = Error::NoMergeFound { lo: ratio_lo, hi: ratio_hi };
    let mut upper = ratio_hi;
    let mut count = reduced_count(upper)?;
    let (mut lo, mut hi) = loop {
        if upper <= ratio_lo {
            return Err(none);
        }
        let next = (upper - RATIO_STEP).max(ratio_lo);
        let c = reduced_count(next)?;
        if c < count {
            break (next, upper);
        }
        count = c;
        upper = next;
    };
    while hi - lo > 1e-6 {
        let m = 0.5 * (lo + hi);
        if reduced_count(m)? == count {
            hi = m;
        } else {
            lo = m;
        }
    }
    let zeros = real_roots(|x| reduced_secular(x, 1.0, hi), REDUCED_XI_WINDOW.0, REDUCED_XI_WINDOW.1)?;
    let (k, _) = zeros
        .windows(2)
        .enumerate()
        .map(|(k, w)| (k, w[1] - w[0]))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(none)?;
    let mut x = [0.5 * (zeros[k] + zeros[k + 1]), hi];
    let h = 1e-7;
    for _ in 0..50 {
        let u = reduced_real(x[0], x[1])?;
        let w = hyper_real(x[0], x[1])?;
        let ux = (reduced_real(x[0] + h, x[1])? - reduced_real(x[0] - h, x[1])?) / (2.0 * h);
        let ur = (reduced_real(x[0], x[1] + h)? - reduced_real(x[0], x[1] - h)?) / (2.0 * h);
        let wx = (hyper_real(x[0] + h, x[1])? - hyper_real(x[0] - h, x[1])?) / (2.0 * h);
        let wr = (hyper_real(x[0], x[1] + h)? - hyper_real(x[0], x[1] - h)?) / (2.0 * h);
        let det = ux * wr - ur * wx;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Singular);
        }
        let dx = (u * wr - w * ur) / det;
        let dr = (ux * w - wx * u) / det;
        x[0] -= dx;
        x[1] -= dr;
        if dx.abs() + dr.abs() < 1e-13 {
            return Ok((x[0], x[1]));
        }
    }
    Err(Error::OptimizerNonConvergence)
}
