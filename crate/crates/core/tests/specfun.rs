mod common;

use std::f64::consts::PI;

use common::c;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use stark_ep_core::matrix::C64;
use stark_ep_core::specfun::*;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact complex rational, `(re, im)`.
#[derive(Clone)]
struct Q(BigRational, BigRational);

impl Q {
    fn mul(&self, o: &Q) -> Q {
        Q(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn scale(&self, r: &BigRational) -> Q {
        Q(&self.0 * r, &self.1 * r)
    }
    fn add(&self, o: &Q) -> Q {
        Q(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn to_c64(&self) -> C64 {
        c(self.0.to_f64().unwrap(), self.1.to_f64().unwrap())
    }
}

#[test]
fn gamma_matches_big_integer_factorial() {
    let mut f = BigInt::one();
    for k in 1..=20u32 {
        f *= BigInt::from(k);
    }
    let exact = f.to_f64().unwrap();
    assert!((gamma_fn(21.0).unwrap() - exact).abs() / exact < 1e-13);

    let mut g = BigInt::one();
    for n in 1..=169u32 {
        g *= BigInt::from(n);
        let want = g.to_f64().unwrap();
        let got = gamma_fn(n as f64 + 1.0).unwrap();
        assert!((got - want).abs() / want < 1e-12, "Γ({})", n + 1);
    }
}

#[test]
fn gamma_reflection_region() {
    // Γ(x)Γ(1−x) = π / sin(πx).
    for k in 0..200 {
        let x = -49.7 + 0.25 * k as f64;
        if (x - x.round()).abs() < 1e-9 {
            continue;
        }
        let v = gamma_fn(x).unwrap() * gamma_fn(1.0 - x).unwrap();
        let want = PI / sin_pi(x);
        assert!((v - want).abs() / want.abs() < 1e-11, "x = {x}");
    }
}

#[test]
fn bessel_matches_exact_rational_series() {
    // J_{2.5}(z) = (z/2)^{2.5} / Γ(3.5) · Σ_k (−z²/4)^k / (k! (7/2)_k), z = 9/5 + 2i/5.
    let z = Q(ratio(9, 5), ratio(2, 5));
    let w = z.mul(&z).scale(&ratio(-1, 4));
    let mut term = Q(BigRational::one(), BigRational::zero());
    let mut sum = term.clone();
    for k in 1..=60i64 {
        let den = ratio(k, 1) * ratio(2 * k + 5, 2);
        term = term.mul(&w).scale(&(BigRational::one() / den));
        sum = sum.add(&term);
    }
    let zf = c(1.8, 0.4);
    let gamma_35 = 15.0 / 8.0 * PI.sqrt();
    let oracle = (zf / 2.0).powf(2.5) / gamma_35 * sum.to_c64();
    let got = bessel_j(2.5, zf, SeriesControl::default()).unwrap();
    assert!(rel(got, oracle) < 1e-12, "{got} vs {oracle}");
}

#[test]
fn hyp2f3_matches_exact_rational_series() {
    // ξ = 0.4, α = 0.3i: parameters (−2/5, 1/10; 3/5, 3/5, 1/5) and z = −4α² = 9/25.
    let (a1, a2, b1, b2, b3) = (ratio(-2, 5), ratio(1, 10), ratio(3, 5), ratio(3, 5), ratio(1, 5));
    let z = ratio(9, 25);
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    for k in 0..60i64 {
        let kq = ratio(k, 1);
        let num = (&a1 + &kq) * (&a2 + &kq);
        let den = (&b1 + &kq) * (&b2 + &kq) * (&b3 + &kq) * ratio(k + 1, 1);
        term = term * num / den * &z;
        sum += &term;
    }
    let oracle = sum.to_f64().unwrap();
    let alpha = c(0.0, 0.3);
    let arg = -(alpha * alpha) * 4.0;
    let got = hyp2f3(-0.4, 0.1, 0.6, 0.6, 0.2, arg, SeriesControl::default()).unwrap();
    assert!((got.re - oracle).abs() / oracle.abs() < 1e-11 && got.im.abs() < 1e-15);
}

#[test]
fn origin_and_closed_form_examples() {
    let ctrl = SeriesControl::default();
    assert_eq!(bessel_j(0.0, c(0.0, 0.0), ctrl).unwrap(), c(1.0, 0.0));
    assert_eq!(bessel_j_int(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    for x in [0.1, 0.7, 2.0, 4.5, 9.0] {
        let y = bessel_y(0.5, c(x, 0.0), ctrl).unwrap();
        assert!((y.re + (2.0 / (PI * x)).sqrt() * x.cos()).abs() < 1e-10);
    }
    assert_eq!(bessel_y(3.0, c(1.0, 0.0), ctrl), Err(stark_ep_core::error::Error::NearIntegerOrder(3.0)));
    let z = c(1.1, -0.6);
    assert!(rel(bessel_j_int(-3, z).unwrap(), -bessel_j_int(3, z).unwrap()) < 1e-15);
}

#[test]
fn integer_order_trapezoid_oracle() {
    // J_1(2) = (1/2π) ∫ cos(θ − 2 sin θ) dθ over one period.
    let nodes = 10_000;
    let h = 2.0 * PI / nodes as f64;
    let quad: f64 = (0..nodes).map(|k| (k as f64 * h - 2.0 * (k as f64 * h).sin()).cos()).sum::<f64>() * h / (2.0 * PI);
    let got = bessel_j_int(1, c(2.0, 0.0)).unwrap();
    assert!((got.re - quad).abs() < 1e-10 && got.im.abs() < 1e-16);
}

#[test]
fn y_recurrence_at_paper_argument() {
    let ctrl = SeriesControl::default();
    let nu = -0.3;
    let z = c(0.0, 1.0);
    let y = |n: f64| bessel_y(n, z, ctrl).unwrap();
    let resid = y(nu + 1.0) + y(nu - 1.0) - y(nu) * (2.0 * nu) / z;
    assert!(resid.norm() < 1e-9 * y(nu).norm().max(1.0));
}

#[test]
fn imaginary_argument_is_the_modified_function() {
    let ctrl = SeriesControl::default();
    let (nu, x) = (0.7, 1.3);
    let lhs = bessel_j(nu, c(0.0, x), ctrl).unwrap();
    let phase = C64::from_polar(1.0, nu * PI / 2.0);
    assert!(rel(lhs, phase * bessel_i(nu, c(x, 0.0), ctrl).unwrap()) < 1e-13);
    assert!(rel(lhs, phase * bessel_j(nu, c(x, 0.0), ctrl).unwrap()) > 0.5);
}

#[test]
fn asymptotic_forms_against_series() {
    let ctrl = SeriesControl::default();
    let series = bessel_j(20.0, c(0.1, 0.0), ctrl).unwrap().re;
    let asym = bessel_j_asymptotic(20.0, 0.1).unwrap();
    assert!((asym / series - 1.0).abs() < 0.02);
    let j5 = bessel_j_asymptotic(5.0, 0.2).unwrap();
    assert!(j5 > 0.0 && j5 < 1e-7);
    let product = asym * bessel_y_asymptotic(20.0, 0.1).unwrap();
    assert!((product - 1.0 / (PI * 20.0)).abs() < 1e-15);
    assert!(bessel_y_asymptotic(5.0, 0.3).is_err());
}

fn order() -> impl Strategy<Value = f64> {
    (0.1f64..10.0).prop_filter("order away from integers", |nu| (nu - nu.round()).abs() > 1e-3)
}

fn argument() -> impl Strategy<Value = C64> {
    (0.1f64..5.0, -PI..PI).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn j_recurrence(nu in 0.1f64..10.0, z in argument()) {
        let ctrl = SeriesControl::default();
        let j = |n: f64| bessel_j(n, z, ctrl).unwrap();
        let resid = j(nu + 1.0) + j(nu - 1.0) - j(nu) * (2.0 * nu) / z;
        prop_assert!(resid.norm() <= 1e-9 * j(nu).norm().max(1.0));
    }

    #[test]
    fn y_recurrence(nu in order(), z in argument()) {
        let ctrl = SeriesControl::default();
        let y = |n: f64| bessel_y(n, z, ctrl).unwrap();
        let resid = y(nu + 1.0) + y(nu - 1.0) - y(nu) * (2.0 * nu) / z;
        prop_assert!(resid.norm() <= 1e-9 * y(nu).norm().max(1.0), "residual {}", resid.norm());
    }

    #[test]
    fn modified_function_relation(nu in 0.0f64..10.0, x in 0.05f64..5.0) {
        let ctrl = SeriesControl::default();
        let lhs = bessel_j(nu, c(0.0, x), ctrl).unwrap();
        let rhs = C64::from_polar(1.0, nu * PI / 2.0) * bessel_i(nu, c(x, 0.0), ctrl).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10);
    }

    #[test]
    fn wronskian(nu in order(), z in argument()) {
        let ctrl = SeriesControl::default();
        let h = 1e-5 * z.norm();
        let j = |w: C64| bessel_j(nu, w, ctrl).unwrap();
        let y = |w: C64| bessel_y(nu, w, ctrl).unwrap();
        let dj = (j(z + h) - j(z - h)) / (2.0 * h);
        let dy = (y(z + h) - y(z - h)) / (2.0 * h);
        let w = j(z) * dy - dj * y(z);
        let want = 2.0 / (PI * z);
        prop_assert!(rel(w, want) < 1e-6, "relative error {}", rel(w, want));
    }

    #[test]
    fn hyp2f3_term_doubling(xi in 0.02f64..2.98, alpha in 0.05f64..0.7) {
        prop_assume!((2.0 * xi - (2.0 * xi).round()).abs() > 1e-3);
        let ctrl = SeriesControl::new(60, 1e-14).unwrap();
        let wide = SeriesControl::new(120, 1e-14).unwrap();
        let z = c(4.0 * alpha * alpha, 0.0);
        let a = hyp2f3(-xi, 0.5 - xi, 1.0 - xi, 1.0 - xi, 1.0 - 2.0 * xi, z, ctrl).unwrap();
        let b = hyp2f3(-xi, 0.5 - xi, 1.0 - xi, 1.0 - xi, 1.0 - 2.0 * xi, z, wide).unwrap();
        prop_assert!((a - b).norm() <= 1e-14 * b.norm());
    }
}
