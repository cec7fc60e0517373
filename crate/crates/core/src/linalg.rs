//! Dense complex linear algebra: LU solves, Schur/eigen decomposition and SVD.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{dot_h, ComplexMatrix, C64, ONE, ZERO};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
}

pub fn lu(a: &ComplexMatrix) -> Result<Lu> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Dimension { expected: n, found: a.cols() });
    }
    let mut m = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (p, best) = (k..n)
            .map(|i| (i, m[(i, k)].norm()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 || !best.is_finite() {
            return Err(Error::Singular);
        }
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            perm.swap(k, p);
        }
        let pivot = m[(k, k)];
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            m[(i, k)] = f;
            if f != ZERO {
                for j in k + 1..n {
                    let u = m[(k, j)];
                    m[(i, j)] -= f * u;
                }
            }
        }
    }
    Ok(Lu { lu: m, perm })
}

impl Lu {
    pub fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.perm.len();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= self.lu[(i, j)] * x[j];
            }
            x[i] = s / self.lu[(i, i)];
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        let n = self.perm.len();
        let mut inv = ComplexMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for j in 0..n {
            e[j] = ONE;
            let col = self.solve(&e);
            inv.set_column(j, &col);
            e[j] = ZERO;
        }
        inv
    }
}

pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(lu(a)?.inverse())
}

/// Complex Schur form `A = Z T Z^H` with `T` upper triangular.
#[derive(Clone, Debug)]
pub struct Schur {
    pub t: ComplexMatrix,
    pub z: ComplexMatrix,
}

fn hessenberg(h: &mut ComplexMatrix, z: &mut ComplexMatrix) {
    let n = h.rows();
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let xnorm = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        for i in 0..n {
            v[i] = if i > k { h[(i, k)] } else { ZERO };
        }
        v[k + 1] -= alpha;
        let vn2: f64 = v[k + 1..].iter().map(|c| c.norm_sqr()).sum();
        if vn2 == 0.0 {
            continue;
        }
        let tau = 2.0 / vn2;
        for j in k..n {
            let w: C64 = (k + 1..n).map(|i| v[i].conj() * h[(i, j)]).sum::<C64>() * tau;
            for i in k + 1..n {
                h[(i, j)] -= v[i] * w;
            }
        }
        for m in [&mut *h, &mut *z] {
            for i in 0..n {
                let w: C64 = (k + 1..n).map(|j| m[(i, j)] * v[j]).sum::<C64>() * tau;
                for j in k + 1..n {
                    m[(i, j)] -= w * v[j].conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G [x, y]^T = [r, 0]^T`.
fn givens(x: C64, y: C64) -> (f64, C64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO, x);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay, C64::new(ay, 0.0));
    }
    let r = ax.hypot(ay);
    let phase = x / ax;
    (ax / r, phase * y.conj() / r, phase * r)
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let p = (a - d) * 0.5;
    let bc = b * c;
    let disc = (p * p + bc).sqrt();
    let plus = p + disc;
    let minus = p - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    if big == ZERO {
        d
    } else {
        d - bc / big
    }
}

pub fn schur(a: &ComplexMatrix) -> Result<Schur> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::Dimension { expected: n, found: a.cols() });
    }
    if !a.is_finite() {
        return Err(Error::NonFinite("matrix entries"));
    }
    let mut h = a.clone();
    let mut z = ComplexMatrix::identity(n);
    if n == 0 {
        return Ok(Schur { t: h, z });
    }
    hessenberg(&mut h, &mut z);

    let eps = f64::EPSILON;
    let tiny = f64::MIN_POSITIVE / eps;
    let hnorm = h.frobenius_norm().max(tiny);
    let max_its = 60 * n.max(10);
    let mut hi = n - 1;
    let mut its = 0usize;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if s == 0.0 {
                s = hnorm;
            }
            if sub <= eps * s || sub < tiny {
                h[(l, l - 1)] = ZERO;
                break;
            }
            l -= 1;
        }
        if l == hi {
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        if its > max_its {
            return Err(Error::EigenNonConvergence { index: hi });
        }
        let mu = if its % 11 == 0 {
            h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].re.abs()
        } else if its % 17 == 0 {
            h[(l, l)] + 0.75 * h[(l + 1, l)].norm()
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let mut x = h[(l, l)] - mu;
        let mut y = h[(l + 1, l)];
        for k in l..hi {
            if k > l {
                x = h[(k, k - 1)];
                y = h[(k + 1, k - 1)];
            }
            let (c, s, r) = givens(x, y);
            let start = if k > l { k - 1 } else { l };
            for j in start..n {
                let p = h[(k, j)];
                let q = h[(k + 1, j)];
                h[(k, j)] = p * c + s * q;
                h[(k + 1, j)] = q * c - s.conj() * p;
            }
            if k > l {
                h[(k, k - 1)] = r;
                h[(k + 1, k - 1)] = ZERO;
            }
            let end = (k + 2).min(hi);
            for i in 0..=end {
                let p = h[(i, k)];
                let q = h[(i, k + 1)];
                h[(i, k)] = p * c + q * s.conj();
                h[(i, k + 1)] = q * c - p * s;
            }
            for i in 0..n {
                let p = z[(i, k)];
                let q = z[(i, k + 1)];
                z[(i, k)] = p * c + q * s.conj();
                z[(i, k + 1)] = q * c - p * s;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { t: h, z })
}

/// Right eigenvectors of an upper triangular matrix, unit-normalized columns.
pub fn triangular_eigenvectors(t: &ComplexMatrix) -> ComplexMatrix {
    let n = t.rows();
    let smin = (f64::EPSILON * t.max_abs()).max(f64::MIN_POSITIVE);
    let mut out = ComplexMatrix::zeros(n, n);
    let mut v = vec![ZERO; n];
    for k in 0..n {
        let lam = t[(k, k)];
        v[..=k].iter_mut().for_each(|x| *x = ZERO);
        v[k] = ONE;
        for i in (0..k).rev() {
            let mut s = ZERO;
            for j in i + 1..=k {
                s += t[(i, j)] * v[j];
            }
            let mut d = t[(i, i)] - lam;
            if d.norm() < smin {
                d = C64::new(smin, 0.0);
            }
            v[i] = -s / d;
            if v[i].norm() > 1e150 {
                for x in v[i..=k].iter_mut() {
                    *x *= 1e-150;
                }
            }
        }
        let nrm = v[..=k].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..=k {
            out[(i, k)] = v[i] / nrm;
        }
    }
    out
}

/// Eigenvalues and unit right eigenvectors (columns) of a square matrix.
pub fn eig(a: &ComplexMatrix) -> Result<(Vec<C64>, ComplexMatrix)> {
    let Schur { t, z } = schur(a)?;
    let y = triangular_eigenvectors(&t);
    let mut v = z.mul(&y);
    let n = a.rows();
    for j in 0..n {
        let nrm = (0..n).map(|i| v[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            v[(i, j)] /= nrm;
        }
    }
    Ok((t.diagonal(), v))
}

/// Eigenvalues only.
pub fn eigenvalues(a: &ComplexMatrix) -> Result<Vec<C64>> {
    Ok(schur(a)?.t.diagonal())
}

/// Thin singular value decomposition `A = U diag(sigma) V^H`, sigma descending.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

/// One-sided Jacobi SVD for `rows >= cols`.
pub fn svd(a: &ComplexMatrix) -> Result<Svd> {
    let m = a.rows();
    let n = a.cols();
    if m < n {
        return Err(Error::Dimension { expected: n, found: m });
    }
    let mut u: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![ZERO; n];
            e[j] = ONE;
            e
        })
        .collect();
    let eps = f64::EPSILON;
    let mut converged = false;
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = u[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = u[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = dot_h(&u[p], &u[q]);
                let g = gamma.norm();
                if g == 0.0 || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for cols in [&mut u, &mut v] {
                    let (lo, hi) = cols.split_at_mut(q);
                    for (xp, xq) in lo[p].iter_mut().zip(hi[0].iter_mut()) {
                        let a = *xp;
                        let b = *xq * phase;
                        *xp = a * c - b * s;
                        *xq = a * s + b * c;
                    }
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::EigenNonConvergence { index: 0 });
    }
    let mut order: Vec<(usize, f64)> =
        u.iter().enumerate().map(|(j, c)| (j, c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())).collect();
    order.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut um = ComplexMatrix::zeros(m, n);
    let mut vm = ComplexMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (k, &(j, s)) in order.iter().enumerate() {
        sigma.push(s);
        if s > 0.0 {
            let col: Vec<C64> = u[j].iter().map(|z| z / s).collect();
            um.set_column(k, &col);
        }
        vm.set_column(k, &v[j]);
    }
    Ok(Svd { u: um, sigma, v: vm })
}

impl Svd {
    /// Number of singular values above `cutoff * sigma_max`.
    pub fn rank(&self, cutoff: f64) -> usize {
        let smax = self.sigma.first().copied().unwrap_or(0.0);
        self.sigma.iter().filter(|&&s| s > cutoff * smax).count()
    }

    /// Right singular vectors spanning the numerical null space.
    pub fn null_space(&self, cutoff: f64) -> Vec<Vec<C64>> {
        (self.rank(cutoff)..self.sigma.len()).map(|j| self.v.column(j)).collect()
    }

    /// Minimum-norm least-squares solution of `A x = b`.
    pub fn solve_min_norm(&self, b: &[C64], cutoff: f64) -> Vec<C64> {
        let n = self.v.rows();
        let mut x = vec![ZERO; n];
        for j in 0..self.rank(cutoff) {
            let uj = self.u.column(j);
            let coef = dot_h(&uj, b) / self.sigma[j];
            for i in 0..n {
                x[i] += self.v[(i, j)] * coef;
            }
        }
        x
    }
}
