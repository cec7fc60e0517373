//! Continuum model `V(x) = γ sin²(ωπx) + (bx)^a − iκx` and its Fourier grid
//! Hamiltonian.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64};
use crate::specfun::{cos_pi, sin_pi};

/// Physical and grid parameters of the periodic lossy potential.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuousModel {
    /// Box length `L`.
    pub length: f64,
    /// Odd number of grid points `N′`.
    pub n_grid: usize,
    /// Well depth `γ`.
    pub gamma: f64,
    /// Well-width control; the model has `2ω+1` wells in `[−1, 1]`.
    pub omega: u32,
    /// Confinement scale, in `(0, 1]`.
    pub b: f64,
    /// Even confinement exponent.
    pub a: u32,
    /// Loss gradient `κ`.
    pub kappa: f64,
    pub hbar: f64,
    pub mass: f64,
}

impl ContinuousModel {
    /// Five wells: `N′ = 201, L = 3, ω = 2, γ = 800, b = 0.76, a = 80`.
    pub fn fig1a() -> Self {
        Self::new(3.0, 201, 800.0, 2, 0.76, 80, 0.0)
    }

    /// Seven wells: `N′ = 201, L = 3, ω = 3, γ = 1500, b = 0.83, a = 100`.
    pub fn fig1b() -> Self {
        Self::new(3.0, 201, 1500.0, 3, 0.83, 100, 0.0)
    }

    /// Fifteen wells: `N′ = 401, L = 2.3, ω = 7, γ = 7000, b = 0.935, a = 200`.
    pub fn fig1c() -> Self {
        Self::new(2.3, 401, 7000.0, 7, 0.935, 200, 0.0)
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "fig1a" => Some(Self::fig1a()),
            "fig1b" => Some(Self::fig1b()),
            "fig1c" => Some(Self::fig1c()),
            _ => None,
        }
    }

    pub fn new(length: f64, n_grid: usize, gamma: f64, omega: u32, b: f64, a: u32, kappa: f64) -> Self {
        Self { length, n_grid, gamma, omega, b, a, kappa, hbar: 1.0, mass: 1.0 }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }

    /// Number of wells `2ω+1`.
    pub fn n_wells(&self) -> usize {
        2 * self.omega as usize + 1
    }

    /// All violated constraints, empty when the model is valid.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.length > 0.0 && self.length.is_finite()) {
            v.push(format!("length must be positive, got {}", self.length));
        }
        if self.n_grid < 3 || self.n_grid % 2 == 0 {
            v.push(format!("n_grid must be odd and at least 3, got {}", self.n_grid));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            v.push(format!("gamma must be non-negative, got {}", self.gamma));
        }
        if self.omega == 0 {
            v.push(String::from("omega must be a positive integer"));
        }
        if !(self.b > 0.0 && self.b <= 1.0) {
            v.push(format!("b must lie in (0, 1], got {}", self.b));
        }
        if self.a == 0 || self.a % 2 != 0 {
            v.push(format!("a must be a positive even integer, got {}", self.a));
        }
        if !(self.kappa >= 0.0 && self.kappa.is_finite()) {
            v.push(format!("kappa must be non-negative, got {}", self.kappa));
        }
        if !(self.hbar > 0.0 && self.mass > 0.0) {
            v.push(String::from("hbar and mass must be positive"));
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel(v.join("; ")))
        }
    }
}

/// Uniform grid centered at the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub dx: f64,
    pub dk: f64,
    pub points: Vec<f64>,
    pub tau: usize,
}

impl GridSpec {
    pub fn new(model: &ContinuousModel) -> Self {
        let n = model.n_grid;
        let tau = (n - 1) / 2;
        let dx = model.length / (n - 1) as f64;
        // (n − τ)Δx equals −L/2 + nΔx and is exactly antisymmetric.
        let points = (0..n).map(|i| (i as f64 - tau as f64) * dx).collect();
        Self { dx, dk: 2.0 * PI / model.length, points, tau }
    }
}

/// Confinement `|bx|^a`, evaluated as `exp(a ln|bx|)`.
fn confinement(b: f64, a: u32, x: f64) -> f64 {
    let bx = (b * x).abs();
    if bx == 0.0 {
        0.0
    } else {
        (a as f64 * bx.ln()).exp()
    }
}

/// `γ sin²(ωπx) + |bx|^a`.
pub fn potential_real(model: &ContinuousModel, x: f64) -> f64 {
    let s = sin_pi(model.omega as f64 * x);
    model.gamma * s * s + confinement(model.b, model.a, x)
}

/// `potential_real(x) − iκx`.
pub fn potential_complex(model: &ContinuousModel, x: f64) -> C64 {
    C64::new(potential_real(model, x), -model.kappa * x)
}

/// `T_l = 2 (ħπl / ((N′−1)Δx))² / m` for `1 ≤ l ≤ τ`.
pub fn kinetic_coefficient(model: &ContinuousModel, l: i64) -> Result<f64> {
    let tau = ((model.n_grid.max(1) - 1) / 2) as i64;
    if l < 1 || l > tau {
        return Err(Error::Index { index: l, lo: 1, hi: tau });
    }
    let w = model.hbar * PI * l as f64 / model.length;
    Ok(2.0 * w * w / model.mass)
}

/// Kinetic kernel `K(d) = (2/(N′−1)) Σ_l cos(2πld/(N′−1)) T_l` for `d = 0..N′`.
fn kinetic_kernel(model: &ContinuousModel) -> Result<Vec<f64>> {
    let n = model.n_grid;
    let period = (n - 1) as f64;
    let tau = (n - 1) / 2;
    let t: Vec<f64> = (1..=tau as i64).map(|l| kinetic_coefficient(model, l)).collect::<Result<_>>()?;
    Ok((0..n)
        .map(|d| {
            let s: f64 = t
                .iter()
                .enumerate()
                .map(|(i, tl)| {
                    // ld is reduced modulo the period exactly before taking the cosine.
                    let r = ((i + 1) * d) % (n - 1);
                    cos_pi(2.0 * r as f64 / period) * tl
                })
                .sum();
            2.0 * s / period
        })
        .collect())
}

/// Assembles `H_{nn′} = K(n − n′) + V(x_n) δ_{nn′}`.
pub fn build_hamiltonian(model: &ContinuousModel) -> Result<ComplexMatrix> {
    build_hamiltonian_with(model, |x| potential_complex(model, x))
}

/// Hamiltonian with the potential replaced by `v(x)` on the same grid (kinetic part unchanged).
pub fn build_hamiltonian_with(model: &ContinuousModel, v: impl Fn(f64) -> C64) -> Result<ComplexMatrix> {
    model.validate()?;
    let grid = GridSpec::new(model);
    let kernel = kinetic_kernel(model)?;
    let n = model.n_grid;
    let mut h = ComplexMatrix::from_fn(n, n, |i, j| C64::new(kernel[i.abs_diff(j)], 0.0));
    for (i, &x) in grid.points.iter().enumerate() {
        h[(i, i)] += v(x);
    }
    if !h.is_finite() {
        return Err(Error::NonFinite("Hamiltonian entries"));
    }
    Ok(h)
}
