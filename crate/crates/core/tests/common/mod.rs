#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stark_ep_core::matrix::{ComplexMatrix, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_complex_symmetric(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let z = random_complex(rng);
            m[(i, j)] = z;
            m[(j, i)] = z;
        }
    }
    m
}

/// `exp(A)` by scaling and squaring of a Taylor polynomial.
pub fn expm(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.one_norm();
    let mut s = 0u32;
    while norm / f64::powi(2.0, s as i32) > 0.25 {
        s += 1;
    }
    let x = a.scale(c(f64::powi(0.5, s as i32), 0.0));
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=24 {
        term = term.mul(&x).scale(c(1.0 / k as f64, 0.0));
        sum = sum.add(&term);
    }
    for _ in 0..s {
        sum = sum.mul(&sum);
    }
    sum
}

/// `exp(−i h t)`.
pub fn propagator(h: &ComplexMatrix, t: f64) -> ComplexMatrix {
    expm(&h.scale(c(0.0, -t)))
}

/// Monic characteristic polynomial by Faddeev–LeVerrier, coefficients in
/// ascending order (`p[n] = 1`).
pub fn char_poly(a: &ComplexMatrix) -> Vec<C64> {
    let n = a.rows();
    let mut p = vec![c(0.0, 0.0); n + 1];
    p[n] = c(1.0, 0.0);
    let mut m = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&m);
        for i in 0..n {
            next[(i, i)] += p[n - k + 1];
        }
        m = next;
        let am = a.mul(&m);
        let tr: C64 = (0..n).map(|i| am[(i, i)]).sum();
        p[n - k] = -tr / k as f64;
    }
    p
}

fn horner(p: &[C64], z: C64) -> (C64, C64) {
    let mut v = c(0.0, 0.0);
    let mut d = c(0.0, 0.0);
    for &a in p.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// Simultaneous Aberth iteration for all roots of an ascending polynomial,
/// with Newton polishing at the end.
pub fn poly_roots(p: &[C64]) -> Vec<C64> {
    let n = p.len() - 1;
    let lead = p[n];
    let p: Vec<C64> = p.iter().map(|a| a / lead).collect();
    let radius = 1.0 + p[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> =
        (0..n).map(|k| C64::from_polar(0.5 * radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = horner(&p, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulsion: C64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * repulsion);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, d) = horner(&p, *zi);
            if d.norm() > 0.0 {
                *zi -= v / d;
            }
        }
    }
    z
}

/// Largest distance in a greedy nearest-neighbour pairing of two multisets.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "multisets differ in size");
    let mut pool: Vec<C64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = pool
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        worst = worst.max(d);
        pool.swap_remove(k);
    }
    worst
}

pub fn max_abs_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
