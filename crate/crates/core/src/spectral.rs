//! Biorthogonal eigen-decomposition, low-lying band selection, state fidelity
//! and coalescence detection.
//!
//! Left eigenvectors are stored as kets `ψ̄_n`, so that the pairing is the
//! sesquilinear product `⟨ψ̄_m|ψ_n⟩ = ψ̄_m^H ψ_n`. For a complex symmetric
//! matrix `ψ̄_n = conj(ψ_n)` and the pairing reduces to `ψ_m^T ψ_n`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{dot_h, dot_t, norm2, ComplexMatrix, RealMatrix, C64};

/// Default threshold on `|⟨ψ̄|ψ⟩|` below which a pair counts as self-orthogonal.
pub const EP_THRESHOLD: f64 = 1e-6;
/// Default fidelity threshold for coalescence.
pub const COALESCENCE_THRESHOLD: f64 = 0.99;

const SYMMETRY_TOL: f64 = 1e-14;

#[derive(Clone, Debug)]
pub struct BiorthogonalEigenSystem {
    pub values: Vec<C64>,
    /// Right eigenvectors as columns.
    pub right: ComplexMatrix,
    /// Left eigenvectors as columns (kets).
    pub left: ComplexMatrix,
    /// `‖M ψ_n − E_n ψ_n‖` for unit `ψ_n`.
    pub residuals: Vec<f64>,
    /// `|⟨ψ̄_n|ψ_n⟩|` with both vectors at unit norm.
    pub bi_condition: Vec<f64>,
    /// Pairs left unnormalized by [`biorthonormalize`].
    pub flagged: Vec<usize>,
    pub complex_symmetric: bool,
}

impl BiorthogonalEigenSystem {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `⟨ψ̄_m|ψ_n⟩`.
    pub fn pairing(&self, m: usize, n: usize) -> C64 {
        dot_h(&self.left.column(m), &self.right.column(n))
    }
}

/// Full eigendecomposition with left/right pairs.
pub fn eig_general(m: &ComplexMatrix) -> Result<BiorthogonalEigenSystem> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::Dimension { expected: n, found: m.cols() });
    }
    if n > 1000 {
        return Err(Error::InvalidArgument("dimension above 1000"));
    }
    let (values, mut right) = linalg::eig(m)?;
    let symmetric = m.is_complex_symmetric(SYMMETRY_TOL);
    if symmetric {
        orthogonalize_degenerate(&values, &mut right);
    }
    let left = if symmetric {
        right.map(|z| z.conj())
    } else {
        let inv = linalg::inverse(&right)?;
        let mut l = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let row: Vec<C64> = inv.row(k).iter().map(|z| z.conj()).collect();
            let nrm = norm2(&row);
            let unit: Vec<C64> = row.iter().map(|z| z / nrm).collect();
            l.set_column(k, &unit);
        }
        l
    };
    let mut residuals = Vec::with_capacity(n);
    let mut bi_condition = Vec::with_capacity(n);
    for k in 0..n {
        let x = right.column(k);
        let mx = m.mul_vec(&x);
        let r: Vec<C64> = mx.iter().zip(&x).map(|(a, b)| a - values[k] * b).collect();
        residuals.push(norm2(&r));
        bi_condition.push(dot_h(&left.column(k), &x).norm());
    }
    Ok(BiorthogonalEigenSystem {
        values,
        right,
        left,
        residuals,
        bi_condition,
        flagged: Vec::new(),
        complex_symmetric: symmetric,
    })
}

/// Makes exactly degenerate eigenvectors of a complex symmetric matrix
/// biorthogonal under the bilinear form.
fn orthogonalize_degenerate(values: &[C64], right: &mut ComplexMatrix) {
    let n = values.len();
    let scale = values.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tol = 1e-13 * scale;
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let group: Vec<usize> = (i..n).filter(|&j| !done[j] && (values[j] - values[i]).norm() <= tol).collect();
        for &j in &group {
            done[j] = true;
        }
        if group.len() < 2 {
            continue;
        }
        let mut vecs: Vec<Vec<C64>> = group.iter().map(|&j| right.column(j)).collect();
        // Distinct eigenvalues are paired correctly already; only a genuinely
        // degenerate subspace can come out non-biorthogonal.
        let broken = (0..vecs.len()).any(|a| (a + 1..vecs.len()).any(|b| dot_t(&vecs[a], &vecs[b]).norm() > 1e-6));
        if !broken {
            continue;
        }
        for a in 0..vecs.len() {
            // Pivot on the largest bilinear self-pairing among the remaining vectors.
            let (p, best) = (a..vecs.len())
                .map(|k| (k, dot_t(&vecs[k], &vecs[k]).norm()))
                .fold((a, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            vecs.swap(a, p);
            if best < 1e-6 {
                if let Some(k) = (a + 1..vecs.len()).find(|&k| dot_t(&vecs[a], &vecs[k]).norm() > 1e-3) {
                    let other = vecs[k].clone();
                    for (x, y) in vecs[a].iter_mut().zip(&other) {
                        *x += y;
                    }
                }
            }
            let s = dot_t(&vecs[a], &vecs[a]).sqrt();
            if s.norm() < 1e-12 {
                continue;
            }
            for x in vecs[a].iter_mut() {
                *x /= s;
            }
            let pivot = vecs[a].clone();
            for v in vecs.iter_mut().skip(a + 1) {
                let c = dot_t(&pivot, v);
                for (x, y) in v.iter_mut().zip(&pivot) {
                    *x -= c * y;
                }
            }
        }
        for (v, &j) in vecs.iter().zip(&group) {
            let nrm = norm2(v);
            let unit: Vec<C64> = v.iter().map(|z| z / nrm).collect();
            right.set_column(j, &unit);
        }
    }
}

/// Scales pairs to `⟨ψ̄_n|ψ_n⟩ = 1`; pairs with `bi_condition < ep_threshold`
/// are flagged and left as they are.
pub fn biorthonormalize(mut sys: BiorthogonalEigenSystem, ep_threshold: f64) -> BiorthogonalEigenSystem {
    let n = sys.len();
    sys.flagged.clear();
    for k in 0..n {
        if sys.bi_condition[k] < ep_threshold {
            sys.flagged.push(k);
            continue;
        }
        let r = sys.right.column(k);
        if sys.complex_symmetric {
            let s = dot_t(&r, &r).sqrt();
            let nr: Vec<C64> = r.iter().map(|z| z / s).collect();
            let nl: Vec<C64> = nr.iter().map(|z| z.conj()).collect();
            sys.right.set_column(k, &nr);
            sys.left.set_column(k, &nl);
        } else {
            let l = sys.left.column(k);
            let p = dot_h(&l, &r);
            let nl: Vec<C64> = l.iter().map(|z| z / p.conj()).collect();
            sys.left.set_column(k, &nl);
        }
    }
    sys
}

/// Total order on complex numbers: imaginary part (quantized to `quantum`),
/// then real part.
pub fn cmp_im_then_re(a: C64, b: C64, quantum: f64) -> Ordering {
    let qa = (a.im / quantum).round();
    let qb = (b.im / quantum).round();
    qa.total_cmp(&qb).then(a.re.total_cmp(&b.re))
}

#[derive(Clone, Debug)]
pub struct LowLyingBand {
    pub size: usize,
    pub values: Vec<C64>,
    /// Right eigenvectors as columns, in band order.
    pub vectors: ComplexMatrix,
    /// Matching left eigenvectors (kets).
    pub left: ComplexMatrix,
    /// Index into the source system of each band member.
    pub ordering: Vec<usize>,
    /// `min Re(rest) − max Re(band)`; infinite when nothing is excluded.
    pub gap: f64,
    /// `max Re(band) − min Re(band)`.
    pub spread: f64,
    /// Set when the gap is below ten times the spread.
    pub gap_warning: bool,
}

/// Takes the `n_band` eigenvalues of smallest real part and orders them by
/// imaginary part, ties by real part.
pub fn low_lying(sys: &BiorthogonalEigenSystem, n_band: usize) -> Result<LowLyingBand> {
    let n = sys.len();
    if n_band == 0 || n_band > n {
        return Err(Error::Index { index: n_band as i64, lo: 1, hi: n as i64 });
    }
    let mut by_re: Vec<usize> = (0..n).collect();
    by_re.sort_by(|&i, &j| sys.values[i].re.total_cmp(&sys.values[j].re).then(i.cmp(&j)));
    let mut chosen: Vec<usize> = by_re[..n_band].to_vec();
    let scale = chosen.iter().map(|&i| sys.values[i].norm()).fold(1.0, f64::max);
    let quantum = 1e-10 * scale;
    chosen.sort_by(|&i, &j| cmp_im_then_re(sys.values[i], sys.values[j], quantum).then(i.cmp(&j)));
    let values: Vec<C64> = chosen.iter().map(|&i| sys.values[i]).collect();
    let max_re = values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let min_re = values.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
    let gap = by_re[n_band..].first().map_or(f64::INFINITY, |&i| sys.values[i].re - max_re);
    let spread = max_re - min_re;
    let rows = sys.right.rows();
    let mut vectors = ComplexMatrix::zeros(rows, n_band);
    let mut left = ComplexMatrix::zeros(rows, n_band);
    for (k, &i) in chosen.iter().enumerate() {
        vectors.set_column(k, &sys.right.column(i));
        left.set_column(k, &sys.left.column(i));
    }
    Ok(LowLyingBand {
        size: n_band,
        values,
        vectors,
        left,
        ordering: chosen,
        gap,
        spread,
        gap_warning: gap < 10.0 * spread,
    })
}

/// `f_{qq′} = Σ_n |d_q(n)||d_{q′}(n)| / (Ω_q Ω_{q′})`.
pub fn fidelity_matrix(band: &LowLyingBand) -> Result<RealMatrix> {
    let n = band.size;
    let moduli: Vec<Vec<f64>> = (0..n).map(|q| band.vectors.column(q).iter().map(|z| z.norm()).collect()).collect();
    let omegas: Vec<f64> = moduli.iter().map(|m| m.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    if let Some(q) = omegas.iter().position(|&o| o == 0.0) {
        return Err(Error::ZeroVector(q));
    }
    let mut f = RealMatrix::zeros(n, n);
    for q in 0..n {
        f[(q, q)] = 1.0;
        for p in q + 1..n {
            let s: f64 = moduli[q].iter().zip(&moduli[p]).map(|(a, b)| a * b).sum();
            let v = (s / (omegas[q] * omegas[p])).min(1.0);
            f[(q, p)] = v;
            f[(p, q)] = v;
        }
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpReport {
    /// Connected components (size ≥ 2) of the graph with edges `f ≥ threshold`.
    pub clusters: Vec<Vec<usize>>,
    /// Size of the largest cluster, absent when there are none.
    pub order_estimate: Option<usize>,
    pub max_offdiag_fidelity: f64,
    pub parameter_tag: f64,
}

pub fn detect_coalescence(f: &RealMatrix, threshold: f64, parameter_tag: f64) -> EpReport {
    let n = f.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut max_off = 0.0f64;
    for q in 0..n {
        for p in q + 1..n {
            let v = f[(q, p)];
            max_off = max_off.max(v);
            if v >= threshold {
                let a = find(&mut parent, q);
                let b = find(&mut parent, p);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for q in 0..n {
        let root = find(&mut parent, q);
        if let Some(c) = clusters.iter_mut().find(|c| find(&mut parent, c[0]) == root) {
            c.push(q);
        } else {
            clusters.push(vec![q]);
        }
    }
    clusters.retain(|c| c.len() >= 2);
    let order_estimate = clusters.iter().map(Vec::len).max();
    EpReport { clusters, order_estimate, max_offdiag_fidelity: max_off, parameter_tag }
}

/// Counts of eigenvalues on the real and on the imaginary axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectrumClass {
    pub real: usize,
    pub imaginary: usize,
}

/// `tol` is absolute: an eigenvalue is real when `|Im| <= tol`.
pub fn classify_spectrum(values: &[C64], tol: f64) -> SpectrumClass {
    SpectrumClass {
        real: values.iter().filter(|z| z.im.abs() <= tol).count(),
        imaginary: values.iter().filter(|z| z.re.abs() <= tol).count(),
    }
}

/// A parameter interval across which the spectrum class changes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    pub lo: f64,
    pub hi: f64,
    pub below: SpectrumClass,
    pub above: SpectrumClass,
}

impl Transition {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// Relative distance from an axis below which an eigenvalue counts as on it.
/// Chosen above the `~ε^{1/2}` splitting of a numerically computed EP2.
pub const AXIS_TOL: f64 = 1e-7;

/// Scans a one-parameter family for eigenvalue collisions, i.e. changes in
/// how many eigenvalues are real or imaginary, and bisects each to `width`.
pub fn collision_scan(
    build: impl Fn(f64) -> Result<ComplexMatrix>,
    lo: f64,
    hi: f64,
    steps: usize,
    width: f64,
) -> Result<Vec<Transition>> {
    if steps < 2 || !(hi > lo) {
        return Err(Error::InvalidArgument("scan needs lo < hi and at least two steps"));
    }
    let class_at = |p: f64| -> Result<SpectrumClass> {
        let m = build(p)?;
        Ok(classify_spectrum(&linalg::eigenvalues(&m)?, AXIS_TOL * m.frobenius_norm()))
    };
    let mut out: Vec<Transition> = Vec::new();
    let mut prev_p = lo;
    let mut prev_c = class_at(lo)?;
    for k in 1..=steps {
        let p = lo + (hi - lo) * k as f64 / steps as f64;
        let c = class_at(p)?;
        if c != prev_c {
            let (mut a, mut b) = (prev_p, p);
            let mut ca = prev_c;
            while b - a > width {
                let mid = 0.5 * (a + b);
                let cm = class_at(mid)?;
                if cm == ca {
                    a = mid;
                    ca = cm;
                } else {
                    b = mid;
                }
            }
            let cb = class_at(b)?;
            // A grid sample sitting on the collision yields two abutting brackets.
            match out.last_mut() {
                Some(last) if a - last.hi <= 10.0 * width => {
                    last.hi = b;
                    last.above = cb;
                }
                _ => out.push(Transition { lo: a, hi: b, below: ca, above: cb }),
            }
        }
        prev_p = p;
        prev_c = c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{ONE, ZERO};

    #[test]
    fn diagonal_input() {
        let m = ComplexMatrix::from_diagonal(&[ONE, C64::new(0.0, 2.0), C64::new(-3.0, 0.0)]);
        let sys = eig_general(&m).unwrap();
        for (k, v) in sys.values.iter().enumerate() {
            assert!((v - m[(k, k)]).norm() < 1e-15);
            assert!((sys.right[(k, k)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_x() {
        let m = ComplexMatrix::from_row_major(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        let mut v: Vec<f64> = eig_general(&m).unwrap().values.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_symmetric_input_is_biorthonormal() {
        let m = ComplexMatrix::from_diagonal(&[ONE, ONE, C64::new(2.0, 0.0)]);
        let sys = biorthonormalize(eig_general(&m).unwrap(), EP_THRESHOLD);
        assert!(sys.flagged.is_empty());
        for a in 0..3 {
            for b in 0..3 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((sys.pairing(a, b) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn general_matrix_pairs() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new((i * 3 + j) as f64 % 5.0, (i as f64 - j as f64).sin()));
        assert!(!m.is_complex_symmetric(1e-12));
        let sys = biorthonormalize(eig_general(&m).unwrap(), EP_THRESHOLD);
        for a in 0..4 {
            for b in 0..4 {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((sys.pairing(a, b) - want).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn band_of_diagonal() {
        let d: Vec<C64> = (1..=10).rev().map(|k| C64::new(k as f64, 0.0)).collect();
        let sys = eig_general(&ComplexMatrix::from_diagonal(&d)).unwrap();
        let band = low_lying(&sys, 3).unwrap();
        let re: Vec<f64> = band.values.iter().map(|z| z.re).collect();
        assert_eq!(re.len(), 3);
        for (got, want) in re.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        assert!((band.gap - 1.0).abs() < 1e-14);
        assert!(low_lying(&sys, 11).is_err());
    }

    fn band_from(columns: &[Vec<C64>]) -> LowLyingBand {
        let n = columns.len();
        let m = ComplexMatrix::from_columns(columns).unwrap();
        LowLyingBand {
            size: n,
            values: vec![ZERO; n],
            vectors: m.clone(),
            left: m,
            ordering: (0..n).collect(),
            gap: f64::INFINITY,
            spread: 0.0,
            gap_warning: false,
        }
    }

    #[test]
    fn fidelity_edge_cases() {
        let a = vec![ONE, ZERO, C64::new(0.0, 2.0)];
        let b = vec![ZERO, C64::new(3.0, 0.0), ZERO];
        let c = vec![C64::new(0.0, -2.0), ZERO, C64::new(4.0, 0.0)];
        let f = fidelity_matrix(&band_from(&[a.clone(), b, c])).unwrap();
        assert_eq!(f[(0, 0)], 1.0);
        assert_eq!(f[(0, 1)], 0.0);
        assert!((f[(0, 2)] - 1.0).abs() < 1e-15);
        let rep = detect_coalescence(&f, 0.99, 0.5);
        assert_eq!(rep.clusters, vec![vec![0, 2]]);
        assert_eq!(rep.order_estimate, Some(2));
        assert!(fidelity_matrix(&band_from(&[a, vec![ZERO; 3]])).is_err());
    }

    #[test]
    fn identity_fidelity_has_no_clusters() {
        let f = RealMatrix::from_fn(4, 4, |i, j| if i == j { 1.0 } else { 0.5 });
        let rep = detect_coalescence(&f, 0.99, 0.0);
        assert!(rep.clusters.is_empty());
        assert_eq!(rep.order_estimate, None);
        assert_eq!(rep.max_offdiag_fidelity, 0.5);
    }

    #[test]
    fn transitive_clusters() {
        let mut f = RealMatrix::from_fn(5, 5, |i, j| if i == j { 1.0 } else { 0.1 });
        for (i, j) in [(0, 3), (3, 4)] {
            f[(i, j)] = 0.995;
            f[(j, i)] = 0.995;
        }
        let rep = detect_coalescence(&f, 0.99, 0.0);
        assert_eq!(rep.clusters, vec![vec![0, 3, 4]]);
        assert_eq!(rep.order_estimate, Some(3));
    }

    #[test]
    fn collision_scan_finds_two_level_ep() {
        // [[ i g, 1 ], [ 1, −i g ]] has eigenvalues ±sqrt(1 − g²): collision at g = 1.
        let build = |g: f64| {
            ComplexMatrix::from_row_major(2, 2, vec![C64::new(0.0, g), ONE, ONE, C64::new(0.0, -g)])
        };
        let t = collision_scan(build, 0.5, 1.5, 10, 1e-10).unwrap();
        assert_eq!(t.len(), 1);
        assert!((t[0].midpoint() - 1.0).abs() < 1e-6);
        assert_eq!(t[0].below, SpectrumClass { real: 2, imaginary: 0 });
        assert_eq!(t[0].above, SpectrumClass { real: 0, imaginary: 2 });
    }
}
