use rand::Rng;
use smcbench_core::hbc::{self, HbcFamily, HbcHyper};
use smcbench_core::numcore::{Kernel, Mat};
use smcbench_core::rng;

fn two_clusters(n_per: usize, d: usize, gap: f64, seed: u64) -> (Mat, Vec<f64>) {
    let mut r = rng::stream(seed, 7);
    let n = 2 * n_per;
    let y: Vec<f64> = (0..n).map(|i| if i < n_per { 1.0 } else { -1.0 }).collect();
    let x = Mat::from_fn(n, d, |i, j| {
        let centre = if j == 0 { y[i] * gap } else { 0.0 };
        centre + r.random_range(-1.0..1.0)
    });
    (x, y)
}

/// Each positive point `p` has the negative twin `−p`.
fn mirrored(n_per: usize, d: usize, seed: u64) -> (Mat, Vec<f64>) {
    let (half, _) = two_clusters(n_per, d, 2.0, seed);
    let pos = half.rows(0, n_per).into_owned();
    let mut x = Mat::zeros(2 * n_per, d);
    x.rows_mut(0, n_per).copy_from(&pos);
    x.rows_mut(n_per, n_per).copy_from(&(-pos));
    let y = (0..2 * n_per).map(|i| if i < n_per { 1.0 } else { -1.0 }).collect();
    (x, y)
}

fn accuracy(labels: &[f64], y: &[f64]) -> f64 {
    labels.iter().zip(y).filter(|(a, b)| a == b).count() as f64 / y.len() as f64
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn svm_duplicate_points_leave_hard_margin_unchanged() {
    let (x, y) = two_clusters(10, 2, 3.0, 1);
    let h = HbcHyper { c: 1e3, ..Default::default() };
    let m1 = hbc::fit(HbcFamily::Svm, &x, &y, &h, 0).unwrap();
    let mut x2 = Mat::zeros(40, 2);
    x2.rows_mut(0, 20).copy_from(&x);
    x2.rows_mut(20, 20).copy_from(&x);
    let y2: Vec<f64> = y.iter().chain(y.iter()).cloned().collect();
    let m2 = hbc::fit(HbcFamily::Svm, &x2, &y2, &h, 0).unwrap();
    let (_, s1) = m1.predict(&x).unwrap();
    let (_, s2) = m2.predict(&x).unwrap();
    assert!(max_abs_diff(&s1, &s2) < 1e-6);
}

#[test]
fn kernel_svm_separates_xor() {
    let x = Mat::from_row_slice(4, 2, &[1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0]);
    let y = [1.0, 1.0, -1.0, -1.0];
    let h = HbcHyper { c: 100.0, kernel: Some(Kernel::Gaussian { sigma: 0.5 }), ..Default::default() };
    let m = hbc::fit(HbcFamily::Svm, &x, &y, &h, 0).unwrap();
    let (labels, _) = m.predict(&x).unwrap();
    assert_eq!(accuracy(&labels, &y), 1.0);
}

#[test]
fn svm_support_vectors_are_margin_points() {
    let x = Mat::from_row_slice(4, 1, &[1.0, 3.0, -1.0, -3.0]);
    let y = [1.0, 1.0, -1.0, -1.0];
    let h = HbcHyper { c: 1e3, kernel: Some(Kernel::Linear), ..Default::default() };
    let m = hbc::fit(HbcFamily::Svm, &x, &y, &h, 0).unwrap();
    let sv = m.support.as_ref().unwrap();
    let mut kept: Vec<f64> = sv.iter().cloned().collect();
    kept.sort_by(f64::total_cmp);
    assert_eq!(kept, vec![-1.0, 1.0]);
}

#[test]
fn pin_svm_with_zero_tau_is_svm() {
    for kernel in [None, Some(Kernel::Gaussian { sigma: 2.0 })] {
        let (x, y) = two_clusters(15, 3, 0.5, 2);
        let h = HbcHyper { c: 2.0, tau: 0.0, kernel, ..Default::default() };
        let a = hbc::fit(HbcFamily::Svm, &x, &y, &h, 0).unwrap();
        let b = hbc::fit(HbcFamily::PinSvm, &x, &y, &h, 0).unwrap();
        let (_, sa) = a.predict(&x).unwrap();
        let (_, sb) = b.predict(&x).unwrap();
        assert!(max_abs_diff(&sa, &sb) < 1e-6);
    }
}

#[test]
fn pin_svm_full_tau_antipodal_toy() {
    let x = Mat::from_row_slice(2, 1, &[1.0, -1.0]);
    let h = HbcHyper { c: 1e3, tau: 1.0, ..Default::default() };
    let m = hbc::fit(HbcFamily::PinSvm, &x, &[1.0, -1.0], &h, 0).unwrap();
    assert!((m.planes[0].coef[0] - 1.0).abs() < 1e-8);
    assert!(m.planes[0].bias.abs() < 1e-8);
}

#[test]
fn pin_svm_is_no_worse_under_label_noise() {
    let mut wins = 0.0;
    for seed in 0..20 {
        let (x, mut y) = two_clusters(40, 2, 1.0, 100 + seed);
        let mut r = rng::stream(seed, 3);
        for v in y.iter_mut() {
            if r.random_range(0.0..1.0) < 0.15 {
                *v = -*v;
            }
        }
        let (xt, yt) = two_clusters(100, 2, 1.0, 500 + seed);
        let acc = |tau: f64| {
            let h = HbcHyper { c: 1.0, tau, ..Default::default() };
            let m = hbc::fit(HbcFamily::PinSvm, &x, &y, &h, 0).unwrap();
            accuracy(&m.predict(&xt).unwrap().0, &yt)
        };
        wins += acc(0.5) - acc(0.0);
    }
    assert!(wins / 20.0 >= -0.01, "mean gain {}", wins / 20.0);
}

#[test]
fn lssvm_agrees_with_svm_on_separable_toys() {
    let mut agree = 0;
    let mut total = 0;
    for seed in 0..10 {
        let (x, y) = two_clusters(20, 2, 3.0, seed);
        let (xt, _) = two_clusters(50, 2, 3.0, 1000 + seed);
        let h = HbcHyper { c: 32.0, ..Default::default() };
        let a = hbc::fit(HbcFamily::Svm, &x, &y, &h, 0).unwrap().predict(&xt).unwrap().0;
        let b = hbc::fit(HbcFamily::Lssvm, &x, &y, &h, 0).unwrap().predict(&xt).unwrap().0;
        agree += a.iter().zip(&b).filter(|(p, q)| p == q).count();
        total += a.len();
    }
    assert!(agree as f64 / total as f64 >= 0.95);
}

#[test]
fn twin_planes_mirror_on_mirrored_data() {
    let (x, y) = mirrored(15, 2, 3);
    for family in [HbcFamily::Tsvm, HbcFamily::Lstsvm, HbcFamily::PinGtsvm] {
        let h = HbcHyper { c1: 1.0, c2: 1.0, tau1: 0.3, tau2: 0.3, ..Default::default() };
        let m = hbc::fit(family, &x, &y, &h, 0).unwrap();
        let (p, q) = (&m.planes[0], &m.planes[1]);
        // the negative plane is the positive plane reflected through the origin
        let w_diff = (&p.coef - &q.coef).norm().min((&p.coef + &q.coef).norm());
        assert!(w_diff < 1e-6, "{family}: {w_diff}");
        assert!((p.bias.abs() - q.bias.abs()).abs() < 1e-6);
        // and the decision function is odd
        let (_, s) = m.predict(&x).unwrap();
        for i in 0..15 {
            assert!((s[i] + s[i + 15]).abs() < 1e-6);
        }
    }
}

#[test]
fn twin_matches_svm_on_mirrored_separable_toys() {
    let mut agree = 0;
    let mut total = 0;
    for seed in 0..10 {
        let (x, y) = mirrored(15, 2, 40 + seed);
        let (xt, _) = two_clusters(50, 2, 2.0, 900 + seed);
        let t = hbc::fit(HbcFamily::Tsvm, &x, &y, &HbcHyper::default(), 0).unwrap();
        let s = hbc::fit(HbcFamily::Svm, &x, &y, &HbcHyper::default(), 0).unwrap();
        let a = t.predict(&xt).unwrap().0;
        let b = s.predict(&xt).unwrap().0;
        agree += a.iter().zip(&b).filter(|(p, q)| p == q).count();
        total += a.len();
    }
    assert!(agree as f64 / total as f64 >= 0.95, "{agree}/{total}");
}

#[test]
fn lstsvm_close_to_tsvm_on_symmetric_toys() {
    for seed in 0..5 {
        let (x, y) = mirrored(15, 2, 70 + seed);
        let h = HbcHyper { c1: 1.0, c2: 1.0, ..Default::default() };
        let a = hbc::fit(HbcFamily::Tsvm, &x, &y, &h, 0).unwrap().predict(&x).unwrap().0;
        let b = hbc::fit(HbcFamily::Lstsvm, &x, &y, &h, 0).unwrap().predict(&x).unwrap().0;
        let disagree = a.iter().zip(&b).filter(|(p, q)| p != q).count();
        assert!(disagree <= 1, "seed {seed}: {disagree}");
    }
}

#[test]
fn reductions_of_twin_family() {
    for kernel in [None, Some(Kernel::Gaussian { sigma: 2.0 })] {
        let (x, y) = two_clusters(12, 3, 0.8, 5);
        let h = HbcHyper { c1: 2.0, c2: 0.5, kernel, ..Default::default() };
        let (_, base) = hbc::fit(HbcFamily::Tsvm, &x, &y, &h, 0).unwrap().predict(&x).unwrap();
        let (_, pin) = hbc::fit(HbcFamily::PinGtsvm, &x, &y, &h, 0).unwrap().predict(&x).unwrap();
        let (_, fz) = hbc::fit_iftsvm_with_scores(&x, &y, &h, &vec![1.0; y.len()])
            .unwrap()
            .predict(&x)
            .unwrap();
        assert!(max_abs_diff(&base, &pin) < 1e-6);
        assert!(max_abs_diff(&base, &fz) < 1e-6);
    }
}

#[test]
fn iftsvm_downweights_an_outlier() {
    let mut better = 0;
    for seed in 0..10 {
        let (mut x, y) = two_clusters(20, 2, 2.0, 300 + seed);
        let (clean_x, clean_y) = (x.clone(), y.clone());
        // push one positive deep into the negative cluster
        x[(0, 0)] = -6.0;
        x[(0, 1)] = 4.0;
        let h = HbcHyper { c1: 8.0, c2: 8.0, mu: 2.0, ..Default::default() };
        let clean = hbc::fit(HbcFamily::Tsvm, &clean_x, &clean_y, &h, 0).unwrap();
        let plain = hbc::fit(HbcFamily::Tsvm, &x, &y, &h, 0).unwrap();
        let fuzzy = hbc::fit(HbcFamily::IfTsvm, &x, &y, &h, 0).unwrap();
        let angle = |a: &hbc::TrainedHbc| {
            let (u, v) = (&a.planes[1].coef, &clean.planes[1].coef);
            (u.dot(v) / (u.norm() * v.norm())).clamp(-1.0, 1.0).acos()
        };
        if angle(&fuzzy) <= angle(&plain) {
            better += 1;
        }
    }
    assert!(better >= 7, "{better}/10");
}

#[test]
fn kernel_path_with_inner_product_matches_linear_form() {
    for family in [HbcFamily::Svm, HbcFamily::PinSvm, HbcFamily::Lssvm, HbcFamily::Tsvm, HbcFamily::Lstsvm] {
        let (x, y) = two_clusters(12, 3, 1.0, 11);
        // whiten the toy
        let mean = x.row_mean();
        let mut z = x.clone();
        for mut r in z.row_iter_mut() {
            r -= &mean;
        }
        let sd = z.row_variance().map(f64::sqrt);
        for mut r in z.row_iter_mut() {
            r.component_div_assign(&sd);
        }
        let base = HbcHyper { c: 1.0, tau: 0.2, ..Default::default() };
        let lin = hbc::fit(family, &z, &y, &base, 0).unwrap();
        let ker = hbc::fit(family, &z, &y, &HbcHyper { kernel: Some(Kernel::Linear), ..base }, 0).unwrap();
        let (_, a) = lin.predict(&z).unwrap();
        let (_, b) = ker.predict(&z).unwrap();
        assert!(max_abs_diff(&a, &b) < 1e-5, "{family}: {}", max_abs_diff(&a, &b));
    }
}

#[test]
fn linex_separable_toy_is_fit_perfectly() {
    for seed in 0..20 {
        let (x, y) = two_clusters(20, 2, 3.0, 200 + seed);
        let h = HbcHyper { c: 8.0, a: -1.0, ..Default::default() };
        let m = hbc::fit(HbcFamily::LinexSvm, &x, &y, &h, seed).unwrap();
        assert_eq!(accuracy(&m.predict(&x).unwrap().0, &y), 1.0, "seed {seed}");
    }
}

#[test]
fn linex_kernel_form_fits_xor() {
    let x = Mat::from_row_slice(4, 2, &[1.0, 1.0, -1.0, -1.0, 1.0, -1.0, -1.0, 1.0]);
    let y = [1.0, 1.0, -1.0, -1.0];
    let h = HbcHyper { c: 8.0, a: -1.0, kernel: Some(Kernel::Gaussian { sigma: 0.5 }), ..Default::default() };
    let m = hbc::fit(HbcFamily::LinexSvm, &x, &y, &h, 0).unwrap();
    assert_eq!(accuracy(&m.predict(&x).unwrap().0, &y), 1.0);
}

#[test]
fn linex_full_batch_descent_is_monotone() {
    let (x, y) = two_clusters(20, 2, 1.0, 9);
    let (c, a) = (1.0, -2.0);
    let mut prev = f64::INFINITY;
    for epochs in 1..=10 {
        let mut h = HbcHyper { c, a, ..Default::default() };
        h.sgd.batch_size = 40;
        h.sgd.momentum = 0.0;
        h.sgd.max_it = epochs;
        let m = hbc::fit(HbcFamily::LinexSvm, &x, &y, &h, 0).unwrap();
        let obj = hbc::linex_objective(&m.planes[0].coef, m.planes[0].bias, &x, &y, c, a);
        assert!(obj <= prev + 1e-12, "epoch {epochs}: {obj} > {prev}");
        prev = obj;
    }
}

#[test]
fn boundary_point_is_labelled_positive() {
    let x = Mat::from_row_slice(2, 1, &[1.0, -1.0]);
    let m = hbc::fit(HbcFamily::Svm, &x, &[1.0, -1.0], &HbcHyper { c: 1e3, ..Default::default() }, 0).unwrap();
    let (l, s) = m.predict(&Mat::from_element(1, 1, 0.0)).unwrap();
    assert!(s[0].abs() < 1e-9);
    assert_eq!(l[0], 1.0);
}

#[test]
fn twin_equidistant_point_is_labelled_positive() {
    let (x, y) = mirrored(10, 2, 4);
    let m = hbc::fit(HbcFamily::Tsvm, &x, &y, &HbcHyper::default(), 0).unwrap();
    let (l, s) = m.predict(&Mat::zeros(1, 2)).unwrap();
    assert!(s[0].abs() < 1e-9);
    assert_eq!(l[0], 1.0);
}

#[test]
fn positive_rescaling_keeps_labels() {
    let (x, y) = two_clusters(15, 2, 1.0, 12);
    let m = hbc::fit(HbcFamily::Svm, &x, &y, &HbcHyper::default(), 0).unwrap();
    let (l1, _) = m.predict(&x).unwrap();
    let mut scaled = m.clone();
    scaled.planes[0].coef /= 3.0;
    scaled.planes[0].bias /= 3.0;
    let (l2, _) = scaled.predict(&(x.clone())).unwrap();
    assert_eq!(l1, l2);
}

#[test]
fn empty_input_and_dimension_checks() {
    let (x, y) = two_clusters(5, 2, 1.0, 0);
    for family in HbcFamily::ALL {
        let h = HbcHyper { c: 1.0, ..Default::default() };
        let m = hbc::fit(family, &x, &y, &h, 0).unwrap();
        let (l, s) = m.predict(&Mat::zeros(0, 2)).unwrap();
        assert!(l.is_empty() && s.is_empty());
        assert!(m.predict(&Mat::zeros(2, 3)).is_err());
        assert_eq!(m.planes.len(), if family.is_twin() { 2 } else { 1 });
    }
}

#[test]
fn invalid_hyper_parameters_are_rejected() {
    let (x, y) = two_clusters(5, 2, 1.0, 0);
    let bad = [
        (HbcFamily::Svm, HbcHyper { c: 0.0, ..Default::default() }),
        (HbcFamily::PinSvm, HbcHyper { tau: 1.5, ..Default::default() }),
        (HbcFamily::LinexSvm, HbcHyper { a: 1.0, ..Default::default() }),
        (HbcFamily::Tsvm, HbcHyper { c2: -1.0, ..Default::default() }),
        (HbcFamily::Svm, HbcHyper { kernel: Some(Kernel::Gaussian { sigma: 0.0 }), ..Default::default() }),
    ];
    for (f, h) in bad {
        assert!(hbc::fit(f, &x, &y, &h, 0).is_err(), "{f}");
    }
    assert!(hbc::fit(HbcFamily::Svm, &x, &vec![1.0; 10], &HbcHyper::default(), 0).is_err());
}

#[test]
fn twin_duals_converge_with_more_features_than_class_samples() {
    let (x, y) = two_clusters(60, 70, 0.5, 11);
    for family in [HbcFamily::Tsvm, HbcFamily::PinGtsvm] {
        for c in [0.5, 8.0] {
            let h = HbcHyper { c1: c, c2: c, tau1: 0.5, tau2: 0.5, ..Default::default() };
            let m = hbc::fit(family, &x, &y, &h, 0);
            assert!(m.is_ok(), "{family:?} C={c}: {:?}", m.err());
            let (labels, _) = m.unwrap().predict(&x).unwrap();
            assert!(accuracy(&labels, &y) > 0.75, "{family:?} C={c}: {}", accuracy(&labels, &y));
        }
    }
}
