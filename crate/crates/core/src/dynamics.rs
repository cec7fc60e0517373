//! Time evolution `i∂ψ/∂t = hψ` of ladder states: RK4 integration, closed-form
//! evolution through a Jordan decomposition, and the Bessel propagator of the
//! tilted chain.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{eig, lu, svd};
use crate::matrix::{dot_h, norm2, ComplexMatrix, C64, I, ONE, ZERO};
use crate::specfun::bessel_j_int;

/// Sampled trajectory of an evolution.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<Vec<C64>>,
    /// `P(t) = Σ_n |ψ_n(t)|²` at every sample.
    pub dirac_p: Vec<f64>,
}

impl EvolutionResult {
    fn from_states(times: Vec<f64>, states: Vec<Vec<C64>>) -> Self {
        let dirac_p = states.iter().map(|s| dirac_probability(s)).collect();
        Self { times, states, dirac_p }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

pub fn dirac_probability(state: &[C64]) -> f64 {
    state.iter().map(|z| z.norm_sqr()).sum()
}

/// Largest RK4 step.
pub const MAX_STEP: f64 = 1e-3;

fn check_times(times: &[f64]) -> Result<()> {
    if times.first() != Some(&0.0) {
        return Err(Error::InvalidArgument("times must start at 0"));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) || !times.iter().all(|t| t.is_finite()) {
        return Err(Error::InvalidArgument("times must be finite and strictly increasing"));
    }
    Ok(())
}

fn check_square(h: &ComplexMatrix, v: &[C64]) -> Result<()> {
    if !h.is_square() {
        return Err(Error::InvalidArgument("generator must be square"));
    }
    if v.len() != h.rows() {
        return Err(Error::Dimension { expected: h.rows(), found: v.len() });
    }
    Ok(())
}

fn axpy(y: &[C64], a: C64, x: &[C64]) -> Vec<C64> {
    y.iter().zip(x).map(|(y, x)| y + a * x).collect()
}

/// Classic fourth-order Runge–Kutta for `i∂ψ/∂t = hψ`, with step
/// `≤ min(1e-3, 0.1/‖h‖_F)`, sampled at `times`.
pub fn evolve_ode(h: &ComplexMatrix, psi0: &[C64], times: &[f64]) -> Result<EvolutionResult> {
    check_square(h, psi0)?;
    check_times(times)?;
    let norm = h.frobenius_norm();
    if !norm.is_finite() {
        return Err(Error::NonFinite("generator"));
    }
    let hmax = if norm > 0.0 { MAX_STEP.min(0.1 / norm) } else { MAX_STEP };
    let rhs = |psi: &[C64]| -> Vec<C64> { h.mul_vec(psi).into_iter().map(|z| -I * z).collect() };

    let mut psi = psi0.to_vec();
    let mut states = Vec::with_capacity(times.len());
    states.push(psi.clone());
    for w in times.windows(2) {
        let span = w[1] - w[0];
        let steps = (span / hmax).ceil().max(1.0);
        let dt = span / steps;
        if !(dt > 1e-14 * w[1].abs().max(1.0)) || steps > 1e10 {
            return Err(Error::StepUnderflow(w[0]));
        }
        for _ in 0..steps as u64 {
            let k1 = rhs(&psi);
            let k2 = rhs(&axpy(&psi, C64::new(dt / 2.0, 0.0), &k1));
            let k3 = rhs(&axpy(&psi, C64::new(dt / 2.0, 0.0), &k2));
            let k4 = rhs(&axpy(&psi, C64::new(dt, 0.0), &k3));
            for i in 0..psi.len() {
                psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
            }
        }
        if !psi.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("state"));
        }
        states.push(psi.clone());
    }
    Ok(EvolutionResult::from_states(times.to_vec(), states))
}

/// Similarity transform to Jordan form, `S⁻¹ h S = ⊕ J_r(e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanDecomposition {
    /// Columns are chains `φ, Φ_1, …` with `(h − e)Φ_{k+1} = Φ_k`.
    pub transform: ComplexMatrix,
    /// `(eigenvalue, block size)` in column order.
    pub blocks: Vec<(C64, usize)>,
    /// Absolute clustering distance actually used.
    pub tolerance_used: f64,
}

impl JordanDecomposition {
    pub fn dim(&self) -> usize {
        self.transform.rows()
    }

    pub fn jordan_form(&self) -> ComplexMatrix {
        jordan_matrix(&self.blocks)
    }
}

/// Default clustering tolerance, relative to `‖h‖_F`.
pub const DEFAULT_DEGENERACY: f64 = 1e-6;
/// Relative singular-value cutoff for null spaces and chain solves.
pub const RANK_CUTOFF: f64 = 1e-8;
/// Relative residual accepted when extending a chain.
pub const CHAIN_TOL: f64 = 1e-6;
/// Largest matrix handled by [`jordan_decompose`].
pub const JORDAN_MAX_DIM: usize = 20;

/// Upper bidiagonal Jordan matrix for blocks given in order.
pub fn jordan_matrix(blocks: &[(C64, usize)]) -> ComplexMatrix {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut m = ComplexMatrix::zeros(n, n);
    let mut k = 0;
    for &(e, r) in blocks {
        for i in 0..r {
            m[(k + i, k + i)] = e;
            if i + 1 < r {
                m[(k + i, k + i + 1)] = ONE;
            }
        }
        k += r;
    }
    m
}

fn clusters(values: &[C64], tol: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for a in 0..n {
        for b in a + 1..n {
            if (values[a] - values[b]).norm() <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if root_of[r] == usize::MAX {
            root_of[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_of[r]].push(i);
    }
    groups
}

fn chain_error(e: C64, found: usize, expected: usize) -> Error {
    Error::JordanChain { re: e.re, im: e.im, found, expected }
}

/// Jordan chains of `h` at the eigenvalue `e` of algebraic multiplicity `m`.
fn cluster_chains(h: &ComplexMatrix, e: C64, m: usize) -> Result<Vec<Vec<Vec<C64>>>> {
    let n = h.rows();
    let a = h.shift_diagonal(e);
    let dec = svd(&a)?;
    let rank = dec.rank(RANK_CUTOFF);
    let g = n - rank;
    if g == 0 || g > m {
        return Err(chain_error(e, g, m));
    }
    let null: Vec<Vec<C64>> = dec.null_space(RANK_CUTOFF);
    if g == m {
        return Ok(null.into_iter().map(|v| vec![v]).collect());
    }
    // Combinations of null vectors lying in range(h − e) start the longest chains:
    // rotate the null basis by the SVD of its overlap with the left null space.
    let left: Vec<Vec<C64>> = (rank..n).map(|j| dec.u.column(j)).collect();
    let overlap = ComplexMatrix::from_fn(g, g, |i, j| dot_h(&left[i], &null[j]));
    let rot = svd(&overlap)?;
    let mut starts = Vec::with_capacity(g);
    for k in (0..g).rev() {
        let c = rot.v.column(k);
        let mut v = vec![ZERO; n];
        for (j, nj) in null.iter().enumerate() {
            for i in 0..n {
                v[i] += nj[i] * c[j];
            }
        }
        let s = norm2(&v);
        starts.push(v.into_iter().map(|z| z / s).collect::<Vec<_>>());
    }

    let mut chains: Vec<Vec<Vec<C64>>> = Vec::with_capacity(g);
    let mut used = 0;
    for (k, start) in starts.into_iter().enumerate() {
        let reserve = g - k - 1;
        let mut chain = vec![start];
        while used + chain.len() + reserve < m {
            let last = chain.last().unwrap();
            let x = dec.solve_min_norm(last, RANK_CUTOFF);
            let ax = a.mul_vec(&x);
            let res: f64 = ax.iter().zip(last).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>().sqrt();
            if res > CHAIN_TOL * norm2(last) {
                break;
            }
            chain.push(x);
        }
        used += chain.len();
        chains.push(chain);
    }
    if used != m {
        return Err(chain_error(e, used, m));
    }
    Ok(chains)
}

/// Jordan decomposition of a small matrix known to sit at (or away from) an EP.
///
/// Eigenvalues closer than `degeneracy_tol · ‖h‖_F` form one cluster; its chains
/// come from minimum-norm least-squares solves of `(h − e)Φ_{k+1} = Φ_k`.
pub fn jordan_decompose(h: &ComplexMatrix, degeneracy_tol: f64) -> Result<JordanDecomposition> {
    if !h.is_square() {
        return Err(Error::InvalidArgument("matrix must be square"));
    }
    let n = h.rows();
    if n == 0 || n > JORDAN_MAX_DIM {
        return Err(Error::InvalidArgument("jordan_decompose handles 1..=20 dimensions"));
    }
    if !(degeneracy_tol >= 0.0) {
        return Err(Error::InvalidArgument("degeneracy tolerance must be non-negative"));
    }
    let (values, _) = eig(h)?;
    let tol = degeneracy_tol * h.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut groups: Vec<(C64, usize)> = clusters(&values, tol)
        .into_iter()
        .map(|g| (g.iter().map(|&i| values[i]).sum::<C64>() / g.len() as f64, g.len()))
        .collect();
    groups.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    let mut columns = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for (e, m) in groups {
        for chain in cluster_chains(h, e, m)? {
            blocks.push((e, chain.len()));
            columns.extend(chain);
        }
    }
    Ok(JordanDecomposition { transform: ComplexMatrix::from_columns(&columns)?, blocks, tolerance_used: tol })
}

/// `exp(−iJt) c` for a Jordan matrix with the given blocks.
pub fn evolve_jordan_basis(blocks: &[(C64, usize)], c0: &[C64], t: f64) -> Result<Vec<C64>> {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    if c0.len() != n {
        return Err(Error::Dimension { expected: n, found: c0.len() });
    }
    let mut out = vec![ZERO; n];
    let mut start = 0;
    for &(e, r) in blocks {
        let phase = (-I * e * t).exp();
        let mut coef = vec![ONE; r];
        for m in 1..r {
            coef[m] = coef[m - 1] * (-I * t) / m as f64;
        }
        for k in 0..r {
            let s: C64 = (0..r - k).map(|m| coef[m] * c0[start + k + m]).sum();
            out[start + k] = phase * s;
        }
        start += r;
    }
    Ok(out)
}

/// `ψ(t) = S exp(−iJt) S⁻¹ ψ0`.
pub fn evolve_jordan(dec: &JordanDecomposition, psi0: &[C64], t: f64) -> Result<Vec<C64>> {
    check_square(&dec.transform, psi0)?;
    if t == 0.0 {
        return Ok(psi0.to_vec());
    }
    let c0 = lu(&dec.transform)?.solve(psi0);
    let c = evolve_jordan_basis(&dec.blocks, &c0, t)?;
    Ok(dec.transform.mul_vec(&c))
}

/// Trajectory of [`evolve_jordan`] over a list of times.
pub fn evolve_jordan_series(dec: &JordanDecomposition, psi0: &[C64], times: &[f64]) -> Result<EvolutionResult> {
    check_times(times)?;
    check_square(&dec.transform, psi0)?;
    let f = lu(&dec.transform)?;
    let c0 = f.solve(psi0);
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let c = evolve_jordan_basis(&dec.blocks, &c0, t)?;
        states.push(if t == 0.0 { psi0.to_vec() } else { dec.transform.mul_vec(&c) });
    }
    Ok(EvolutionResult::from_states(times.to_vec(), states))
}

/// Matrix element `U_{n′n}(t)` of `exp(−iH_ξ t)`, `H_ξ = −iH_eff`, on the infinite
/// tilted chain; `n′, n` are tilt coordinates.
///
/// `U = J_{n′−n}[−(4iJ/F) sin(−Ft/2)] · e^{i(n′−n)(π+Ft)/2 − i n′Ft}`.
pub fn propagator_element(j: f64, f: f64, t: f64, n_to: i64, n_from: i64) -> Result<C64> {
    if f == 0.0 || !f.is_finite() {
        return Err(Error::InvalidArgument("propagator needs a finite non-zero tilt"));
    }
    let m = n_to - n_from;
    let z = C64::new(0.0, -4.0 * j / f) * (-f * t / 2.0).sin();
    let phase = m as f64 * (core::f64::consts::PI + f * t) / 2.0 - n_to as f64 * f * t;
    Ok(bessel_j_int(m, z)? * C64::from_polar(1.0, phase))
}

/// Least-squares slope of `log P` against `log t` on `[t_lo, t_hi]`.
///
/// Fails when the local slope varies by more than 20% across the window.
pub fn power_law_exponent(result: &EvolutionResult, t_lo: f64, t_hi: f64) -> Result<f64> {
    let pts: Vec<(f64, f64)> = result
        .times
        .iter()
        .zip(&result.dirac_p)
        .filter(|(t, _)| **t >= t_lo && **t <= t_hi && **t > 0.0)
        .map(|(&t, &p)| (t, p))
        .collect();
    power_law_fit(&pts)
}

/// [`power_law_exponent`] on raw `(t, P)` pairs.
pub fn power_law_fit(pts: &[(f64, f64)]) -> Result<f64> {
    if pts.len() < 3 {
        return Err(Error::InvalidArgument("power-law window needs at least three samples"));
    }
    if pts.iter().any(|&(t, p)| !(t > 0.0 && p > 0.0)) {
        return Err(Error::InvalidArgument("power-law fit needs positive t and P"));
    }
    let xs: Vec<f64> = pts.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;

    let local: Vec<f64> = xs
        .windows(2)
        .zip(ys.windows(2))
        .filter(|(x, _)| x[1] > x[0])
        .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
        .collect();
    let lo = local.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = local.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = (hi - lo) / slope.abs().max(f64::MIN_POSITIVE);
    if spread > 0.2 {
        return Err(Error::PowerLawWindow(100.0 * spread));
    }
    Ok(slope)
}

/// Axis along which a spectrum is laid out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Real,
    Imaginary,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spacing {
    pub mean_gap: f64,
    pub max_gap_dev: f64,
    pub axis: Axis,
}

impl Spacing {
    pub fn relative_deviation(&self) -> f64 {
        self.max_gap_dev / self.mean_gap
    }
}

/// Consecutive-gap statistics along the dominant axis of `values`.
pub fn spacing_analysis(values: &[C64]) -> Result<Spacing> {
    if values.len() < 3 {
        return Err(Error::InvalidArgument("spacing analysis needs at least three values"));
    }
    let re: f64 = values.iter().map(|z| z.re.abs()).sum();
    let im: f64 = values.iter().map(|z| z.im.abs()).sum();
    let axis = if im > re { Axis::Imaginary } else { Axis::Real };
    let mut xs: Vec<f64> = values.iter().map(|z| if axis == Axis::Imaginary { z.im } else { z.re }).collect();
    xs.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let max_gap_dev = gaps.iter().map(|g| (g - mean_gap).abs()).fold(0.0, f64::max);
    Ok(Spacing { mean_gap, max_gap_dev, axis })
}

/// First return of the state to its initial value.
///
/// Looks at `d(t) = ‖ψ(t) − ψ(0)‖/‖ψ(0)‖` and returns the first local minimum
/// below `tol` reached after `d` has exceeded half its maximum, refined by a
/// parabola through the neighbouring samples.
pub fn revival_time(result: &EvolutionResult, tol: f64) -> Option<f64> {
    let psi0 = result.states.first()?;
    let n0 = norm2(psi0);
    if n0 == 0.0 {
        return None;
    }
    let d: Vec<f64> = result
        .states
        .iter()
        .map(|s| s.iter().zip(psi0).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt() / n0)
        .collect();
    let top = d.iter().copied().fold(0.0, f64::max);
    let mut armed = false;
    for k in 1..d.len().saturating_sub(1) {
        if d[k] > 0.5 * top {
            armed = true;
        }
        if armed && d[k] <= d[k - 1] && d[k] <= d[k + 1] && d[k] <= tol {
            let (t0, t1, t2) = (result.times[k - 1], result.times[k], result.times[k + 1]);
            let (a, b, c) = (d[k - 1], d[k], d[k + 1]);
            let den = (t0 - t1) * (t0 - t2) * (t1 - t2);
            let p = (t2 * (b - a) + t1 * (a - c) + t0 * (c - b)) / den;
            let q = (t2 * t2 * (a - b) + t1 * t1 * (c - a) + t0 * t0 * (b - c)) / den;
            return Some(if p > 0.0 { -q / (2.0 * p) } else { t1 });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{critical_ratios, ep3_ratio};
    use crate::effective::{build_stark_ladder, StarkLadder};

    fn grid(t_end: f64, n: usize) -> Vec<f64> {
        (0..=n).map(|k| t_end * k as f64 / n as f64).collect()
    }

    #[test]
    fn zero_generator_keeps_the_state() {
        let h = ComplexMatrix::zeros(3, 3);
        let psi = vec![ONE, I, C64::new(0.5, -2.0)];
        let r = evolve_ode(&h, &psi, &grid(2.0, 4)).unwrap();
        assert!(r.states.iter().all(|s| s == &psi));
        assert_eq!(r.times[0], 0.0);
    }

    #[test]
    fn hermitian_evolution_conserves_probability() {
        let h = build_stark_ladder(&StarkLadder::new(5, 1.0, 0.0)).add(&ComplexMatrix::from_diagonal(&[ONE, -ONE, ZERO, ONE * 0.3, ONE * 2.0]));
        let psi = vec![ONE, ZERO, ZERO, ZERO, ZERO];
        let r = evolve_ode(&h, &psi, &grid(5.0, 10)).unwrap();
        for p in &r.dirac_p {
            assert!((p - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_bad_times() {
        let h = ComplexMatrix::identity(2);
        assert!(evolve_ode(&h, &[ONE, ZERO], &[0.1, 0.2]).is_err());
        assert!(evolve_ode(&h, &[ONE, ZERO], &[0.0, 0.2, 0.2]).is_err());
        assert!(matches!(evolve_ode(&h, &[ONE], &[0.0, 1.0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn jordan_block_exponential() {
        let blocks = [(C64::new(0.0, -0.5), 3)];
        let c = evolve_jordan_basis(&blocks, &[ZERO, ZERO, ONE], 2.0).unwrap();
        let ph = (-I * blocks[0].0 * 2.0).exp();
        assert!((c[0] - ph * (-2.0)).norm() < 1e-14);
        assert!((c[1] - ph * (-I * 2.0)).norm() < 1e-14);
        assert!((c[2] - ph).norm() < 1e-14);
    }

    #[test]
    fn diagonalizable_matrix_has_unit_blocks() {
        let h = build_stark_ladder(&StarkLadder::new(5, 1.0, 0.2));
        let d = jordan_decompose(&h, DEFAULT_DEGENERACY).unwrap();
        assert!(d.blocks.iter().all(|b| b.1 == 1));
        let s_inv = crate::linalg::inverse(&d.transform).unwrap();
        assert!(s_inv.mul(&h).mul(&d.transform).max_abs_diff(&d.jordan_form()) < 1e-9);
    }

    #[test]
    fn ep1_blocks() {
        let (c1, _) = critical_ratios();
        let h = build_stark_ladder(&StarkLadder::new(5, 1.0, c1));
        let d = jordan_decompose(&h, DEFAULT_DEGENERACY).unwrap();
        let mut sizes: Vec<(i64, usize)> = d.blocks.iter().map(|b| ((b.0.re * 1000.0).round() as i64, b.1)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(-1246, 2), (0, 1), (1246, 2)]);
        let s_inv = crate::linalg::inverse(&d.transform).unwrap();
        assert!(s_inv.mul(&h).mul(&d.transform).max_abs_diff(&d.jordan_form()) < 1e-6);
    }

    #[test]
    fn ep3_block() {
        let h = build_stark_ladder(&StarkLadder::new(7, 1.0, ep3_ratio()));
        let d = jordan_decompose(&h, 1e-4).unwrap();
        let three: Vec<_> = d.blocks.iter().filter(|b| b.1 == 3).collect();
        assert_eq!(three.len(), 1);
        assert!(three[0].0.norm() < 1e-4);
        assert_eq!(d.blocks.len(), 5);
        let s_inv = crate::linalg::inverse(&d.transform).unwrap();
        assert!(s_inv.mul(&h).mul(&d.transform).max_abs_diff(&d.jordan_form()) < 1e-6);
    }

    #[test]
    fn propagator_identity_at_zero_and_period() {
        let f = 4.3;
        let period = 2.0 * core::f64::consts::PI / f;
        for a in -3..=3 {
            for b in -3..=3 {
                let d = if a == b { ONE } else { ZERO };
                assert!((propagator_element(1.0, f, 0.0, a, b).unwrap() - d).norm() < 1e-15);
                assert!((propagator_element(1.0, f, period, a, b).unwrap() - d).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn probability_examples() {
        assert_eq!(dirac_probability(&[ZERO, ONE, ZERO]), 1.0);
        let v = [-0.606, 0.620, 1.293, -0.606, -0.620].map(|x| C64::new(x, 0.0));
        assert!((dirac_probability(&v) - 3.175).abs() < 1e-3);
        let w = v.map(|z| z * 2.0);
        assert!((dirac_probability(&w) - 4.0 * dirac_probability(&v)).abs() < 1e-12);
    }

    #[test]
    fn synthetic_power_law() {
        let pts: Vec<(f64, f64)> = (1..=50).map(|k| (k as f64 * 0.1, 3.0 * (k as f64 * 0.1).powi(4))).collect();
        assert!((power_law_fit(&pts).unwrap() - 4.0).abs() < 1e-10);
        let bent: Vec<(f64, f64)> = (1..=50).map(|k| (k as f64 * 0.1, 1.0 + (k as f64 * 0.1).powi(4))).collect();
        assert!(matches!(power_law_fit(&bent), Err(Error::PowerLawWindow(_))));
    }

    #[test]
    fn equidistant_imaginary_spacing() {
        let f = 0.7;
        let v = [-2.0, -1.0, 0.0, 1.0, 2.0].map(|k| C64::new(0.0, k * f));
        let s = spacing_analysis(&v).unwrap();
        assert_eq!(s.axis, Axis::Imaginary);
        assert!((s.mean_gap - f).abs() < 1e-15 && s.max_gap_dev < 1e-15);
        assert!(spacing_analysis(&v[..2]).is_err());
    }
}
