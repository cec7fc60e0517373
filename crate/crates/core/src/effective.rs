//! Tight-binding reduction: Wannier basis from single-well ground states,
//! projected couplings `J_eff`, `F_eff`, and the lossy Stark ladder.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fgh::{self, ContinuousModel, GridSpec};
use crate::linalg;
use crate::matrix::{dot_h, ComplexMatrix, C64, I, ZERO};
use crate::spectral::{self, LowLyingBand};
use crate::specfun::sin_pi;

/// Tilted chain `h_eff` with hopping `J` and imaginary tilt `iF`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarkLadder {
    pub size: usize,
    pub hopping: C64,
    pub tilt: C64,
}

impl StarkLadder {
    pub fn new(size: usize, hopping: f64, tilt: f64) -> Self {
        Self { size, hopping: C64::new(hopping, 0.0), tilt: C64::new(tilt, 0.0) }
    }
}

/// Tilt coordinate `j − (N+1)/2` of the 0-based site `j`.
pub fn site_coordinate(size: usize, j: usize) -> f64 {
    j as f64 + 1.0 - (size as f64 + 1.0) / 2.0
}

/// Tridiagonal matrix with off-diagonal `J` and diagonal `iF(j − (N+1)/2)`.
pub fn build_stark_ladder(ladder: &StarkLadder) -> ComplexMatrix {
    let n = ladder.size;
    let mut h = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        h[(j, j)] = I * ladder.tilt * site_coordinate(n, j);
        if j + 1 < n {
            h[(j, j + 1)] = ladder.hopping;
            h[(j + 1, j)] = ladder.hopping;
        }
    }
    h
}

/// Wall height of the auxiliary single well, in units of the well depth.
pub const WALL_CAP: f64 = 10.0;

/// Ground state of one sin² period closed by hard walls.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleWell {
    /// Real, unit-norm and positive at the center.
    pub state: Vec<f64>,
    pub energy: f64,
    pub first_excited: f64,
}

impl SingleWell {
    pub fn gap(&self) -> f64 {
        self.first_excited - self.energy
    }
}

/// Potential of the auxiliary model: `γ sin²(ωπx) + min(|2ωx|^a, 10γ)`.
///
/// The confinement has the same power form as the full model, rescaled so
/// that it reaches 1 at the period edges `±1/(2ω)`. The cap keeps the
/// matrix well scaled; above it the state has already decayed.
pub fn single_well_potential(model: &ContinuousModel, x: f64) -> f64 {
    let w = model.omega as f64;
    let s = sin_pi(w * x);
    let u = (2.0 * w * x).abs();
    let wall = if u == 0.0 { 0.0 } else { (model.a as f64 * u.ln()).exp() };
    model.gamma * s * s + wall.min(WALL_CAP * model.gamma.max(1.0))
}

pub fn single_well_ground(model: &ContinuousModel) -> Result<SingleWell> {
    if model.omega == 0 {
        return Err(Error::InvalidModel("omega must be at least 1".into()));
    }
    let m = model.with_kappa(0.0);
    let h = fgh::build_hamiltonian_with(&m, |x| C64::new(single_well_potential(&m, x), 0.0))?;
    let (values, vectors) = linalg::eig(&h)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].re.total_cmp(&values[b].re));
    let g = vectors.column(order[0]);
    // Remove the arbitrary global phase, then keep the real part.
    let big = g.iter().copied().fold(ZERO, |acc, z| if z.norm() > acc.norm() { z } else { acc });
    let phase = big.conj() / big.norm();
    let mut state: Vec<f64> = g.iter().map(|z| (z * phase).re).collect();
    let nrm = state.iter().map(|x| x * x).sum::<f64>().sqrt();
    let center = state.len() / 2;
    let sign = if state[center] < 0.0 { -1.0 } else { 1.0 };
    for x in state.iter_mut() {
        *x *= sign / nrm;
    }
    Ok(SingleWell {
        state,
        energy: values[order[0]].re,
        first_excited: values[order.get(1).copied().unwrap_or(order[0])].re,
    })
}

/// Linear interpolation of grid samples `f` at `x`, zero outside the grid.
fn interpolate(points: &[f64], dx: f64, f: &[f64], x: f64) -> f64 {
    let p = (x - points[0]) / dx;
    if p < 0.0 || p > (f.len() - 1) as f64 {
        return 0.0;
    }
    let i = (p.floor() as usize).min(f.len() - 2);
    let t = p - i as f64;
    f[i] * (1.0 - t) + f[i + 1] * t
}

#[derive(Clone, Debug, PartialEq)]
pub struct WannierBasis {
    /// Unit-norm single-well states, one per center.
    pub states: Vec<Vec<f64>>,
    /// Well centers `k/ω`, `k = −ω…ω`.
    pub centers: Vec<f64>,
    pub source_model: ContinuousModel,
    /// `E1 − E0` of the auxiliary single well.
    pub single_well_gap: f64,
    /// Set when the grid spacing exceeds a tenth of the well width.
    pub interpolation_warning: bool,
}

impl WannierBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Overlap matrix `⟨χ_l|χ_l′⟩`.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        self.states
            .iter()
            .map(|a| self.states.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
            .collect()
    }
}

pub fn wannier_basis(model: &ContinuousModel) -> Result<WannierBasis> {
    model.validate()?;
    let well = single_well_ground(model)?;
    let grid = GridSpec::new(model);
    let w = model.omega as i64;
    let centers: Vec<f64> = (-w..=w).map(|k| k as f64 / w as f64).collect();
    let states = centers
        .iter()
        .map(|&c| {
            let mut s: Vec<f64> =
                grid.points.iter().map(|&x| interpolate(&grid.points, grid.dx, &well.state, x - c)).collect();
            let nrm = s.iter().map(|x| x * x).sum::<f64>().sqrt();
            s.iter_mut().for_each(|x| *x /= nrm);
            s
        })
        .collect();
    Ok(WannierBasis {
        states,
        centers,
        source_model: *model,
        single_well_gap: well.gap(),
        interpolation_warning: grid.dx > 0.1 / model.omega as f64,
    })
}

/// Projected tight-binding couplings.
#[derive(Clone, Debug)]
pub struct Couplings {
    pub hopping: C64,
    pub tilt: C64,
    /// Largest relative deviation of a single-site estimate from the mean.
    pub per_l_spread: f64,
    /// Band-centered effective matrix in the orthonormalized Wannier basis.
    pub matrix: ComplexMatrix,
}

impl Couplings {
    /// Gauge-invariant `|F/J|`.
    pub fn ratio(&self) -> f64 {
        self.tilt.norm() / self.hopping.norm()
    }
}

/// Upper limit on `per_l_spread` before the projection is rejected.
pub const MAX_PROJECTION_SPREAD: f64 = 0.2;

/// Projects the band onto the Wannier basis.
///
/// The overlapping `χ_l` are Löwdin-orthonormalized first, which is the
/// pseudo-inverse reading of the `P⁻¹` in the projection formula. Energies
/// are measured from the band mean; the ladder is traceless.
pub fn project_couplings(band: &LowLyingBand, basis: &WannierBasis, left: &ComplexMatrix) -> Result<Couplings> {
    let n = band.size;
    if basis.len() != n {
        return Err(Error::Dimension { expected: n, found: basis.len() });
    }
    if left.cols() != n || left.rows() != band.vectors.rows() {
        return Err(Error::Dimension { expected: n, found: left.cols() });
    }
    let mean: C64 = band.values.iter().sum::<C64>() / n as f64;
    let width = band
        .values
        .iter()
        .flat_map(|a| band.values.iter().map(move |b| (a - b).norm()))
        .fold(0.0, f64::max);
    if basis.single_well_gap < 10.0 * width {
        return Err(Error::SingleWellGap { gap: basis.single_well_gap, band_width: width });
    }

    let rows = band.vectors.rows();
    let c = ComplexMatrix::from_fn(rows, n, |i, l| C64::new(basis.states[l][i], 0.0));
    let gram = c.adjoint().mul(&c);
    let linalg::Schur { t, z } = linalg::schur(&gram)?;
    let mut inv_sqrt = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lam = t[(k, k)].re;
        if !(lam > 0.0) {
            return Err(Error::Singular);
        }
        inv_sqrt[(k, k)] = C64::new(1.0 / lam.sqrt(), 0.0);
    }
    let x = c.mul(&z.mul(&inv_sqrt).mul(&z.adjoint()));

    let mut m = ComplexMatrix::zeros(n, n);
    for q in 0..n {
        let psi = band.vectors.column(q);
        let bar = left.column(q);
        let norm = dot_h(&bar, &psi);
        let e = (band.values[q] - mean) / norm;
        let a: Vec<C64> = (0..n).map(|l| dot_h(&x.column(l), &psi)).collect();
        let b: Vec<C64> = (0..n).map(|l| dot_h(&bar, &x.column(l))).collect();
        for l in 0..n {
            for lp in 0..n {
                m[(l, lp)] += e * a[l] * b[lp];
            }
        }
    }

    let j_l: Vec<C64> = (0..n - 1).map(|l| m[(l, l + 1)]).collect();
    let f_l: Vec<C64> = (0..n)
        .filter(|&l| site_coordinate(n, l) != 0.0)
        .map(|l| -I * m[(l, l)] / site_coordinate(n, l))
        .collect();
    let hopping = j_l.iter().sum::<C64>() / j_l.len() as f64;
    let tilt = if f_l.is_empty() { ZERO } else { f_l.iter().sum::<C64>() / f_l.len() as f64 };
    let jn = hopping.norm();
    let j_dev = j_l.iter().map(|v| (v - hopping).norm() / jn).fold(0.0, f64::max);
    let f_dev = f_l.iter().map(|v| (v - tilt).norm() / jn.max(tilt.norm())).fold(0.0, f64::max);
    let per_l_spread = j_dev.max(f_dev);
    if !(per_l_spread <= MAX_PROJECTION_SPREAD) {
        return Err(Error::InconsistentProjection(per_l_spread));
    }
    Ok(Couplings { hopping, tilt, per_l_spread, matrix: m })
}

/// Result of fitting a band to a ladder spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderFit {
    pub hopping: f64,
    pub tilt: f64,
    /// Root-mean-square distance per level between fitted and target spectra.
    pub residual: f64,
}

impl LadderFit {
    pub fn ratio(&self) -> f64 {
        self.tilt / self.hopping
    }
}

/// Symmetric nearest-match distance between two point sets, squared and per level.
fn chamfer(a: &[C64], b: &[C64]) -> f64 {
    let near = |p: &C64, set: &[C64]| set.iter().map(|q| (p - q).norm_sqr()).fold(f64::INFINITY, f64::min);
    let s: f64 = a.iter().map(|p| near(p, b)).sum::<f64>() + b.iter().map(|p| near(p, a)).sum::<f64>();
    s / (a.len() + b.len()) as f64
}

fn ladder_spectrum(n: usize, j: f64, f: f64) -> Result<Vec<C64>> {
    linalg::eigenvalues(&build_stark_ladder(&StarkLadder::new(n, j.abs(), f.abs())))
}

/// Two-parameter Nelder–Mead minimisation.
fn nelder_mead(f: &dyn Fn([f64; 2]) -> Result<f64>, start: [f64; 2], step: f64, tol: f64) -> Result<([f64; 2], f64)> {
    let mut simplex = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut vals = [f(simplex[0])?, f(simplex[1])?, f(simplex[2])?];
    for _ in 0..4000 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        simplex = [simplex[idx[0]], simplex[idx[1]], simplex[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
        let size = (1..3)
            .map(|k| (simplex[k][0] - simplex[0][0]).abs().max((simplex[k][1] - simplex[0][1]).abs()))
            .fold(0.0, f64::max);
        if size < tol || (vals[2] - vals[0]).abs() <= 1e-30 {
            return Ok((simplex[0], vals[0]));
        }
        let c = [(simplex[0][0] + simplex[1][0]) / 2.0, (simplex[0][1] + simplex[1][1]) / 2.0];
        let at = |t: f64| [c[0] + t * (simplex[2][0] - c[0]), c[1] + t * (simplex[2][1] - c[1])];
        let r = at(-1.0);
        let fr = f(r)?;
        if fr < vals[0] {
            let e = at(-2.0);
            let fe = f(e)?;
            if fe < fr {
                simplex[2] = e;
                vals[2] = fe;
            } else {
                simplex[2] = r;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            simplex[2] = r;
            vals[2] = fr;
        } else {
            let (k, fk) = if fr < vals[2] {
                let k = at(-0.5);
                (k, f(k)?)
            } else {
                let k = at(0.5);
                (k, f(k)?)
            };
            if fk < vals[2].min(fr) {
                simplex[2] = k;
                vals[2] = fk;
            } else {
                for i in 1..3 {
                    simplex[i] = [
                        simplex[0][0] + 0.5 * (simplex[i][0] - simplex[0][0]),
                        simplex[0][1] + 0.5 * (simplex[i][1] - simplex[0][1]),
                    ];
                    vals[i] = f(simplex[i])?;
                }
            }
        }
    }
    Err(Error::OptimizerNonConvergence)
}

/// Least-squares fit of `(J, F)` so that the ladder spectrum matches the band
/// up to a global energy shift.
pub fn fit_stark_ladder(band: &LowLyingBand) -> Result<LadderFit> {
    let n = band.size;
    if n < 3 {
        return Err(Error::InvalidArgument("ladder fit needs at least three levels"));
    }
    let mean: C64 = band.values.iter().sum::<C64>() / n as f64;
    let scale = band.values.iter().map(|e| (e - mean).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(LadderFit { hopping: 0.0, tilt: 0.0, residual: 0.0 });
    }
    // Work in units of the band half-width.
    let target: Vec<C64> = band.values.iter().map(|e| (e - mean) / scale).collect();
    let objective = |p: [f64; 2]| -> Result<f64> { Ok(chamfer(&target, &ladder_spectrum(n, p[0], p[1])?)) };
    let edge = 2.0 / (n as f64 - 1.0);
    let starts = [[0.5, 0.01], [0.5, 0.5 * edge], [0.25, edge], [0.05, edge], [0.5, edge], [0.35, 0.7 * edge]];
    let mut best: Option<([f64; 2], f64)> = None;
    for s in starts {
        let coarse = nelder_mead(&objective, s, 0.1, 1e-6)?;
        let fine = nelder_mead(&objective, coarse.0, 1e-4, 1e-13)?;
        if best.map_or(true, |b| fine.1 < b.1) {
            best = Some(fine);
        }
    }
    let (p, v) = best.ok_or(Error::OptimizerNonConvergence)?;
    Ok(LadderFit { hopping: p[0].abs() * scale, tilt: p[1].abs() * scale, residual: v.sqrt() * scale })
}

/// Convenience pipeline: band of the continuum model projected and fitted.
#[derive(Clone, Debug)]
pub struct EffectiveModel {
    pub band: LowLyingBand,
    pub couplings: Couplings,
    pub fit: LadderFit,
}

pub fn effective_model(model: &ContinuousModel, basis: &WannierBasis) -> Result<EffectiveModel> {
    let h = fgh::build_hamiltonian(model)?;
    let sys = spectral::biorthonormalize(spectral::eig_general(&h)?, spectral::EP_THRESHOLD);
    let band = spectral::low_lying(&sys, model.n_wells())?;
    let couplings = project_couplings(&band, basis, &band.left)?;
    let fit = fit_stark_ladder(&band)?;
    Ok(EffectiveModel { band, couplings, fit })
}
