//! Property suites: exact-vs-quadrature agreement, lattice equivariance,
//! weight-family identities, and branch continuity.

use proptest::prelude::*;

use conekit_core::polytope::polynomial::Polynomial;
use conekit_core::rational::{rat, to_f64};
use conekit_core::{
    affine_range, corpus, f_k, integrate_boundary, integrate_boundary_exact, integrate_interior,
    integrate_interior_exact, AffineFunction, Functionals, QuadratureSpec,
};

fn poly_from_terms(dim: usize, terms: &[(i64, Vec<u32>)]) -> Polynomial {
    let mut p = Polynomial::zero(dim);
    for (coeff, exps) in terms {
        let mut e = exps.clone();
        e.resize(dim, 0);
        p = p.add(&Polynomial::monomial(e, rat(*coeff)));
    }
    p
}

fn term_strategy(dim: usize, max_exp: u32) -> impl Strategy<Value = (i64, Vec<u32>)> {
    (-9i64..=9, prop::collection::vec(0..=max_exp, dim..=dim))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Degree <= 6 polynomials: exact rational integration and simplex Gauss
    /// quadrature agree to relative 1e-12, interior and boundary.
    #[test]
    fn exact_and_gauss_agree_on_polynomials(
        which in 0usize..3,
        terms in prop::collection::vec(term_strategy(2, 3), 1..5),
    ) {
        let p = match which {
            0 => corpus::simplex(2),
            1 => corpus::square(),
            _ => corpus::trapezoid(),
        };
        let poly = poly_from_terms(2, &terms);
        let spec = QuadratureSpec::default();
        let exact = to_f64(&integrate_interior_exact(&p, &poly).unwrap());
        let gauss = integrate_interior(&p, |x| poly.eval_f64(x), &spec).unwrap();
        prop_assert!((exact - gauss).abs() <= 1e-12 * (1.0 + exact.abs()),
            "interior: {exact} vs {gauss}");
        let exact_b = to_f64(&integrate_boundary_exact(&p, &poly).unwrap());
        let gauss_b = integrate_boundary(&p, |x| poly.eval_f64(x), &spec).unwrap();
        prop_assert!((exact_b - gauss_b).abs() <= 1e-12 * (1.0 + exact_b.abs()),
            "boundary: {exact_b} vs {gauss_b}");
    }

    /// Integration is equivariant under unimodular lattice maps plus integer
    /// shifts, with normals mapped by the inverse transpose.
    #[test]
    fn unimodular_equivariance(
        ops in prop::collection::vec(0usize..4, 0..5),
        shift in prop::collection::vec(-3i64..=3, 2..=2),
        terms in prop::collection::vec(term_strategy(2, 3), 1..4),
    ) {
        // Compose elementary GL(2, Z) generators.
        let mut a = [[1i64, 0], [0, 1]];
        for op in ops {
            let g = match op {
                0 => [[1, 1], [0, 1]],
                1 => [[1, 0], [1, 1]],
                2 => [[0, 1], [1, 0]],
                _ => [[1, 0], [0, -1]],
            };
            a = [
                [
                    g[0][0] * a[0][0] + g[0][1] * a[1][0],
                    g[0][0] * a[0][1] + g[0][1] * a[1][1],
                ],
                [
                    g[1][0] * a[0][0] + g[1][1] * a[1][0],
                    g[1][0] * a[0][1] + g[1][1] * a[1][1],
                ],
            ];
        }
        let p = corpus::trapezoid();
        let a_vec: Vec<Vec<i64>> = a.iter().map(|row| row.to_vec()).collect();
        let q = p.transform_unimodular(&a_vec, &shift).unwrap();
        let poly = poly_from_terms(2, &terms);
        // pullback polynomial: substitute x = A^-1 (y - b)
        let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) as f64; // +-1
        let inv = [
            [a[1][1] as f64 / det, -a[0][1] as f64 / det],
            [-a[1][0] as f64 / det, a[0][0] as f64 / det],
        ];
        let pulled = |y: &[f64]| {
            let s = [y[0] - shift[0] as f64, y[1] - shift[1] as f64];
            let x = [
                inv[0][0] * s[0] + inv[0][1] * s[1],
                inv[1][0] * s[0] + inv[1][1] * s[1],
            ];
            poly.eval_f64(&x)
        };
        let spec = QuadratureSpec::default();
        let li = integrate_interior(&p, |x| poly.eval_f64(x), &spec).unwrap();
        let ri = integrate_interior(&q, pulled, &spec).unwrap();
        prop_assert!((li - ri).abs() <= 1e-10 * (1.0 + li.abs()), "interior {li} vs {ri}");
        let lb = integrate_boundary(&p, |x| poly.eval_f64(x), &spec).unwrap();
        let rb = integrate_boundary(&q, pulled, &spec).unwrap();
        prop_assert!((lb - rb).abs() <= 1e-10 * (1.0 + lb.abs()), "boundary {lb} vs {rb}");
    }

    /// F_0 = F_1 (1 + a t) and F_1 - F_2 = a t F_2 across the domain.
    #[test]
    fn weight_family_identities(
        a in -0.95f64..0.95,
        t in -3.0f64..3.0,
    ) {
        prop_assume!(1.0 + a * t > 1e-3);
        let f0 = f_k(0, a, t).unwrap();
        let f1 = f_k(1, a, t).unwrap();
        let f2 = f_k(2, a, t).unwrap();
        prop_assert!((f0 - f1 * (1.0 + a * t)).abs() <= 1e-12 * (1.0 + f0.abs()));
        prop_assert!(((f1 - f2) - a * t * f2).abs() <= 1e-12 * (1.0 + f1.abs()));
    }

    /// The affine range is attained exactly at vertices.
    #[test]
    fn affine_range_is_vertex_exact(
        g in prop::collection::vec(-5.0f64..5.0, 2..=2),
        c in -5.0f64..5.0,
        which in 0usize..3,
    ) {
        let p = match which {
            0 => corpus::simplex(2),
            1 => corpus::square(),
            _ => corpus::trapezoid(),
        };
        let ell = AffineFunction::new(g, c);
        let (lo, hi) = affine_range(&p, &ell);
        let values: Vec<f64> = p.vertex_points_f64().iter().map(|v| ell.eval(v)).collect();
        let direct_lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let direct_hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(lo, direct_lo);
        prop_assert_eq!(hi, direct_hi);
        // interior points never beat the vertex range
        let bary = p.barycenter();
        let at_bary = ell.eval(&bary);
        prop_assert!(at_bary >= lo - 1e-12 && at_bary <= hi + 1e-12);
    }
}

#[test]
fn rescaled_functional_is_continuous_across_branches() {
    // On a unit-volume polytope the a != 0 formula meets the a = 0 branch
    // and the explicit limit without the l-independent value offset
    // -(a/eps) sbar ln(vol) that the normalization carries otherwise.
    let p = corpus::interval();
    let f = Functionals::new(&p).unwrap();
    let ell = f.coords().affine(&[0.1]);
    let base = f.einstein_hilbert_rescaled(1e-4, 0.0, 0.3, &ell).unwrap();
    for &a in &[1e-4, -1e-4] {
        let v = f.einstein_hilbert_rescaled(1e-4, a, 0.3, &ell).unwrap();
        assert!(
            (v - base).abs() <= 1e-6 * (1.0 + base.abs()),
            "a = {a}: {v} vs {base}"
        );
    }
    // eps seam at the explicit limit
    let limit = f.rescaled_limit(&ell);
    for &eps in &[1e-4, -1e-4] {
        let v = f.einstein_hilbert_rescaled(eps, 0.0, 0.0, &ell).unwrap();
        assert!(
            (v - limit).abs() <= 1e-6 * (1.0 + limit.abs()),
            "eps = {eps}: {v} vs limit {limit}"
        );
    }
    // On general polytopes the offset is value-only: the gradient family
    // stays continuous across the seam, so critical points are unaffected.
    let t = corpus::trapezoid();
    let ft = Functionals::new(&t).unwrap();
    let ell_t = ft.coords().affine(&[0.21, -0.13]);
    let g0 = ft.gradient(1e-4, 0.0, 0.3, &ell_t).unwrap();
    for &a in &[1e-4, -1e-4] {
        let g = ft.gradient(1e-4, a, 0.3, &ell_t).unwrap();
        for (ga, gb) in g.iter().zip(&g0) {
            // the gradient family has a genuine O(a) drift in a
            assert!(
                (ga - gb).abs() <= 1e-5 * (1.0 + gb.abs()),
                "gradient seam at a = {a}: {ga} vs {gb}"
            );
        }
    }
}

#[test]
fn orbifold_labels_scale_boundary_integrals() {
    // Same geometry, label 2 on one facet: the boundary integral of any
    // integrand loses exactly half of that facet's contribution.
    let plain = corpus::interval();
    let labelled = corpus::labelled_interval();
    let spec = QuadratureSpec::default();
    let f = |x: &[f64]| (1.3 * x[0]).exp();
    let full = integrate_boundary(&plain, f, &spec).unwrap();
    let scaled = integrate_boundary(&labelled, f, &spec).unwrap();
    let right_endpoint = (1.3f64).exp();
    assert!((full - scaled - 0.5 * right_endpoint).abs() < 1e-12);
}
