mod common;

use common::c;
use proptest::prelude::*;
use stark_ep_core::fgh::*;
use stark_ep_core::linalg;
use stark_ep_core::matrix::C64;

fn lowest_real(model: &ContinuousModel, k: usize) -> Vec<f64> {
    let h = build_hamiltonian(model).unwrap();
    let mut e: Vec<f64> = linalg::eigenvalues(&h).unwrap().iter().map(|z| z.re).collect();
    e.sort_by(f64::total_cmp);
    e.truncate(k);
    e
}

#[test]
fn harmonic_oscillator_levels() {
    // (bx)² = ½ω²x² with ω = b√2; levels (n + ½)ω.
    let model = ContinuousModel::new(12.0, 121, 0.0, 1, 1.0, 2, 0.0);
    let omega = 2f64.sqrt();
    for (n, e) in lowest_real(&model, 6).iter().enumerate() {
        let want = (n as f64 + 0.5) * omega;
        assert!((e - want).abs() / want < 1e-8, "level {n}: {e} vs {want}");
    }
}

#[test]
fn band_converges_with_grid_size() {
    let coarse = lowest_real(&ContinuousModel::fig1a(), 5);
    let mut finer = ContinuousModel::fig1a();
    finer.n_grid = 301;
    let fine = lowest_real(&finer, 5);
    for (a, b) in coarse.iter().zip(&fine) {
        assert!((a - b).abs() / b.abs() < 1e-4, "{a} vs {b}");
    }
}

#[test]
fn presets_and_lookups() {
    let a = ContinuousModel::preset("fig1a").unwrap();
    assert_eq!((a.n_grid, a.length, a.omega, a.gamma, a.b, a.a), (201, 3.0, 2, 800.0, 0.76, 80));
    assert_eq!(ContinuousModel::preset("fig1c").unwrap().n_grid, 401);
    assert_eq!(ContinuousModel::fig1b().n_wells(), 7);
    assert!(ContinuousModel::preset("fig2").is_none());
}

#[test]
fn printed_loss_example() {
    let m = ContinuousModel::fig1a().with_kappa(0.0062);
    let v = potential_complex(&m, 1.0);
    assert_eq!(v, c(potential_real(&m, 1.0), -0.0062));
    assert_eq!(potential_complex(&m, 0.0), c(0.0, 0.0));
    assert!((kinetic_coefficient(&m, 1).unwrap() - 2.1932454224).abs() < 1e-9);
}

#[test]
fn well_minima_are_zeros_of_the_periodic_part() {
    let m = ContinuousModel::fig1b();
    let grid = GridSpec::new(&m);
    let minima: Vec<f64> = (1..m.n_grid - 1)
        .filter(|&i| grid.points[i].abs() < 1.0 + 0.5 / m.omega as f64)
        .filter(|&i| {
            let v = |k: usize| potential_real(&m, grid.points[k]);
            v(i) < v(i - 1) && v(i) < v(i + 1)
        })
        .map(|i| grid.points[i])
        .collect();
    assert_eq!(minima.len(), m.n_wells());
    for (x, k) in minima.iter().zip(-3..=3) {
        assert!((x - k as f64 / 3.0).abs() < 1e-1 / 3.0);
    }
}

fn small_model() -> impl Strategy<Value = ContinuousModel> {
    (1usize..30, 0.5f64..4.0, 0.0f64..2000.0, 1u32..4, 0.3f64..1.0, 1u32..40, 0.0f64..1.0).prop_map(
        |(half, length, gamma, omega, b, a2, kappa)| ContinuousModel::new(length, 2 * half + 1, gamma, omega, b, 2 * a2, kappa),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complex_symmetric_and_toeplitz(model in small_model()) {
        let h = build_hamiltonian(&model).unwrap();
        prop_assert!(h.is_complex_symmetric(0.0));
        let g = GridSpec::new(&model);
        let n = model.n_grid;
        for i in 0..n {
            for j in 0..n {
                let mut k = h[(i, j)];
                if i == j {
                    k -= potential_complex(&model, g.points[i]);
                }
                let reference = h[(i.abs_diff(j), 0)] - if i == j { potential_complex(&model, g.points[0]) } else { C64::new(0.0, 0.0) };
                prop_assert!((k - reference).norm() <= 1e-12 * h.max_abs());
            }
        }
    }

    #[test]
    fn loss_is_linear(model in small_model(), k1 in 0.0f64..1.0, k2 in 0.0f64..1.0) {
        let h1 = build_hamiltonian(&model.with_kappa(k1)).unwrap();
        let h2 = build_hamiltonian(&model.with_kappa(k2)).unwrap();
        let g = GridSpec::new(&model);
        for i in 0..model.n_grid {
            for j in 0..model.n_grid {
                let d = h1[(i, j)] - h2[(i, j)];
                let want = if i == j { c(0.0, -(k1 - k2) * g.points[i]) } else { c(0.0, 0.0) };
                prop_assert!((d - want).norm() <= 1e-15 * h1[(i, i)].norm().max(1.0));
            }
        }
    }

    #[test]
    fn grid_is_centered(model in small_model()) {
        let g = GridSpec::new(&model);
        let n = model.n_grid;
        for i in 0..n {
            prop_assert_eq!(g.points[i] + g.points[n - 1 - i], 0.0);
        }
        prop_assert!((g.dk * (n - 1) as f64 * g.dx - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}
