use nalgebra::DMatrix;
use petweave::graph::UGraph;
use petweave::spectral::{
    cheeger_bounds, distinct_count, eigenvalues, ramanujan_verdict, second_largest, Tolerances,
};
use petweave::weave::{build, petersen, WeaveSpec};

fn woven(n: usize) -> UGraph {
    build(&WeaveSpec::cycle(n).unwrap())
}

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier in exact
/// integer arithmetic. Returns coefficients from `x^n` down to `x^0`.
fn char_poly(g: &UGraph) -> Vec<i128> {
    let n = g.vertex_count();
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| i128::from(g.has_edge(i, j))).collect())
        .collect();
    let matmul = |x: &Vec<Vec<i128>>, y: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![1i128];
    let mut m: Vec<Vec<i128>> = vec![vec![0; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let c_prev = *coeffs.last().unwrap();
        let mut next = matmul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c_prev;
        }
        m = next;
        let am = matmul(&a, &m);
        let trace: i128 = (0..n).map(|i| am[i][i]).sum();
        assert_eq!(trace % k as i128, 0);
        coeffs.push(-trace / k as i128);
    }
    coeffs
}

fn poly_from_roots(roots: &[(i128, usize)]) -> Vec<i128> {
    let mut p = vec![1i128];
    for &(r, mult) in roots {
        for _ in 0..mult {
            let mut q = vec![0i128; p.len() + 1];
            for (i, &c) in p.iter().enumerate() {
                q[i] += c;
                q[i + 1] -= r * c;
            }
            p = q;
        }
    }
    p
}

#[test]
fn petersen_characteristic_polynomial_is_exact() {
    let expected = poly_from_roots(&[(3, 1), (1, 5), (-2, 4)]);
    assert_eq!(char_poly(&petersen()), expected);
    let s = eigenvalues(&petersen(), &Tolerances::default()).unwrap();
    let mut want = vec![3.0, 1.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0];
    want.sort_by(|a: &f64, b| b.total_cmp(a));
    for (got, want) in s.eigenvalues.iter().zip(&want) {
        assert!((got - want).abs() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn characteristic_polynomial_of_cycle() {
    // C_4 has spectrum {2, 0, 0, -2}
    let c4 = petweave::graph::named::cycle(4);
    assert_eq!(char_poly(&c4), poly_from_roots(&[(2, 1), (0, 2), (-2, 1)]));
}

#[test]
fn family_spectra_match_independent_solver() {
    for n in 3..=7 {
        let g = woven(n);
        let ours = eigenvalues(&g, &Tolerances::default()).unwrap();
        let dim = g.vertex_count();
        let m = DMatrix::from_row_slice(dim, dim, &g.adjacency_matrix());
        let mut theirs: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        theirs.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in ours.eigenvalues.iter().zip(&theirs) {
            assert!((a - b).abs() < 1e-9, "n={n}: {a} vs {b}");
        }
        ours.check_trace_identities(g.edge_count()).unwrap();
        assert!((ours.sum()).abs() <= 1e-7 * dim as f64);
        assert!(
            (ours.sum_of_squares() - 2.0 * g.edge_count() as f64).abs()
                <= 1e-6 * g.edge_count() as f64
        );
    }
}

#[test]
fn family_is_connected_non_bipartite_and_six_regular_spectrally() {
    for n in 3..=7 {
        let s = eigenvalues(&woven(n), &Tolerances::default()).unwrap();
        assert!((s.largest() - 6.0).abs() < 1e-9);
        assert_eq!(s.top_multiplicity(1e-6), 1, "n={n}");
        // odd cycles exist, so -6 is not an eigenvalue
        assert!(s.smallest() > -6.0 + 1e-6);
    }
}

#[test]
fn smallest_eigenvalue_is_minus_four() {
    for n in 3..=7 {
        let s = eigenvalues(&woven(n), &Tolerances::default()).unwrap();
        assert!((s.smallest() + 4.0).abs() < 1e-9, "n={n}: {}", s.smallest());
    }
}

#[test]
fn absolute_and_signed_second_eigenvalue_agree_from_four() {
    for n in 4..=7 {
        let s = eigenvalues(&woven(n), &Tolerances::default()).unwrap();
        let v = ramanujan_verdict(&s, 6, 1e-6).unwrap();
        let signed = second_largest(&s, 6, 1e-6).unwrap();
        assert!((v.nontrivial_abs_max - signed).abs() < 1e-9, "n={n}");
    }
}

#[test]
fn g3_extreme_nontrivial_eigenvalue_is_the_negative_one() {
    // |-4| exceeds the signed second eigenvalue 2.801366 but stays below 2 sqrt 5
    let s = eigenvalues(&woven(3), &Tolerances::default()).unwrap();
    let v = ramanujan_verdict(&s, 6, 1e-6).unwrap();
    assert!((v.lambda2_abs - 2.801366).abs() < 1e-5);
    assert!((v.nontrivial_abs_max - 4.0).abs() < 1e-9);
    assert!(v.is_ramanujan);
}

#[test]
fn cheeger_bounds_follow_from_signed_gap() {
    for n in 3..=7 {
        let s = eigenvalues(&woven(n), &Tolerances::default()).unwrap();
        let b = cheeger_bounds(&s, 6, 1e-6).unwrap();
        let l2 = second_largest(&s, 6, 1e-6).unwrap();
        assert!((b.spectral_gap - (6.0 - l2)).abs() < 1e-12);
        assert!((b.lower - b.spectral_gap / 2.0).abs() < 1e-12);
        assert!((b.upper - (12.0 * b.spectral_gap).sqrt()).abs() < 1e-12);
        assert!(b.lower <= b.upper);
    }
}

#[test]
fn distinct_counts_are_stable_around_default_tolerance() {
    let expected = [(3, 13), (4, 12), (5, 23), (6, 24), (7, 33)];
    for (n, count) in expected {
        let s = eigenvalues(&woven(n), &Tolerances::default()).unwrap();
        for tol in [1e-8, 1e-6, 1e-4] {
            assert_eq!(distinct_count(&s, tol).unwrap(), count, "n={n} tol={tol}");
        }
    }
}
