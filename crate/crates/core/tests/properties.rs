use proptest::prelude::*;

use octogauss::algebra::matrix::{left_mul_matrix_oct, Matrix8};
use octogauss::algebra::number::HypercomplexNumber;
use octogauss::algebra::octonion::{self, Octonion};
use octogauss::algebra::table::{generate_mult_table, table_from_csv, table_to_csv};
use octogauss::cp3::hopf::{hopf_act, hopf_invariance_defect, hopf_symmetrize, w_gram, w_value, QuadratureSpec};
use octogauss::cp3::lift::{cp3_gauss_map, HopfRotated};
use octogauss::geometry::catalog::{ChartId, GeodesicSphere, ProductTorusLift};
use octogauss::geometry::chart::Chart;
use octogauss::geometry::sampling::halton_points;
use octogauss::geometry::stencil::StencilSpec;
use octogauss::report::ConfigMap;
use octogauss::s7::fields::VectorFieldSpec;
use octogauss::s7::gauss::gauss_map;
use octogauss::s7::topology::SimplicialComplex;

fn coeffs() -> impl Strategy<Value = [f64; 8]> {
    prop::array::uniform8(-1.0f64..1.0)
}

fn unit() -> impl Strategy<Value = Octonion> {
    coeffs()
        .prop_filter("away from zero", |v| octonion::norm(v) > 0.1)
        .prop_map(|v| octonion::normalize(&v))
}

fn imaginary() -> impl Strategy<Value = Octonion> {
    prop::array::uniform7(-1.0f64..1.0)
        .prop_filter("away from zero", |v| v.iter().map(|c| c * c).sum::<f64>() > 0.01)
        .prop_map(|v| octonion::normalize(&octonion::from_im7(&v)))
}

fn close(a: &Octonion, b: &Octonion, tol: f64) -> bool {
    a.iter().zip(b).all(|(p, q)| (p - q).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn octonion_norm_is_multiplicative(x in coeffs(), y in coeffs()) {
        let p = octonion::norm(&octonion::mul(&x, &y));
        prop_assert!((p - octonion::norm(&x) * octonion::norm(&y)).abs() <= 1e-12);
    }

    #[test]
    fn octonions_are_alternative(x in coeffs(), y in coeffs()) {
        let left = octonion::mul(&octonion::mul(&x, &x), &y);
        let right = octonion::mul(&x, &octonion::mul(&x, &y));
        prop_assert!(close(&left, &right, 1e-12));
    }

    #[test]
    fn conjugation_reverses_products(x in coeffs(), y in coeffs()) {
        let a = octonion::conj(&octonion::mul(&x, &y));
        let b = octonion::mul(&octonion::conj(&y), &octonion::conj(&x));
        prop_assert!(close(&a, &b, 1e-14));
    }

    #[test]
    fn recursive_product_matches_table(x in coeffs(), y in coeffs()) {
        let a = HypercomplexNumber::new(3, x.to_vec()).unwrap();
        let b = HypercomplexNumber::new(3, y.to_vec()).unwrap();
        let p = a.mul(&b).unwrap();
        let q = octonion::mul(&x, &y);
        prop_assert!(p.coeffs().iter().zip(&q).all(|(u, v)| (u - v).abs() < 1e-14));
    }

    #[test]
    fn left_matrix_acts_by_multiplication(x in coeffs(), y in coeffs()) {
        prop_assert!(close(&left_mul_matrix_oct(&x).apply(&y), &octonion::mul(&x, &y), 1e-13));
    }

    #[test]
    fn hopf_action_is_an_isometric_circle_action(x in unit(), s in 0.0f64..7.0, t in 0.0f64..7.0) {
        prop_assert!((octonion::norm(&hopf_act(s, &x)) - 1.0).abs() <= 1e-12);
        prop_assert!(close(&hopf_act(s, &hopf_act(t, &x)), &hopf_act(s + t, &x), 1e-12));
    }

    #[test]
    fn w_fields_are_tangent_and_invariant(v in imaginary(), x in unit(), t in 0.0f64..7.0) {
        let w = VectorFieldSpec::w_field(v);
        prop_assert!(w.tangency_defect(&x) <= 1e-14);
        prop_assert!(hopf_invariance_defect(&w, &x, &[t]) <= 1e-13);
        prop_assert!(close(&w_value(&v, &octonion::ONE), &v, 1e-15));
    }

    #[test]
    fn gram_determinant_identity(x in unit()) {
        let g = w_gram(&x).unwrap();
        prop_assert!(g.rel_err <= 1e-10 || g.predicted < 1e-12 && g.det.abs() < 1e-12);
        prop_assert!(g.x0_orthogonality <= 1e-12);
    }

    #[test]
    fn symmetrized_translational_fields_are_invariant(x0 in unit(), w in coeffs(), x in unit(), t in 0.0f64..7.0) {
        let v = octonion::axpy(&w, -octonion::dot(&w, &x0), &x0);
        let f = VectorFieldSpec::translational(v, x0).unwrap();
        let h = hopf_symmetrize(&f, QuadratureSpec::default());
        prop_assert!(hopf_invariance_defect(&h, &x, &[t]) <= 1e-10);
        let m = f.matrix().unwrap();
        prop_assert!(m.skew_defect() <= 1e-13);
    }

    #[test]
    fn s7_gauss_map_is_unit_imaginary(t0 in 0.3f64..2.8, seed in 0u64..1000) {
        let c = GeodesicSphere::new(t0);
        let u = &halton_points(&c.sample_box(), 1, seed).unwrap()[0];
        let g = gauss_map(&c, u, &StencilSpec::default()).unwrap();
        prop_assert!(g[0].abs() <= 1e-12);
        prop_assert!((octonion::norm(&g) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn halton_points_stay_in_the_box(seed in any::<u64>(), n in 1usize..64) {
        let c = ProductTorusLift::new(0.6, 0.1).unwrap();
        let b = c.sample_box();
        for p in halton_points(&b, n, seed).unwrap() {
            prop_assert!(p.iter().zip(&b).all(|(v, r)| *v >= r.lo && *v <= r.hi));
        }
    }

    #[test]
    fn config_parser_never_panics(text in "\\PC{0,200}") {
        let _ = ConfigMap::parse(&text);
    }

    #[test]
    fn chart_ids_round_trip(t0 in 0.1f64..3.0, a in 0.05f64..0.95, p in 1usize..6, q in 1usize..6) {
        for id in [
            ChartId::GeodesicSphere { t0 },
            ChartId::ProductTorus { p, q, a },
            ChartId::PerturbedSphere { t0, eps: a / 10.0, mode: p as u32 },
        ] {
            prop_assert_eq!(id.to_string().parse::<ChartId>().unwrap(), id);
        }
    }

    #[test]
    fn complex_text_round_trip(facets in prop::collection::vec(prop::collection::btree_set(0usize..12, 1..5), 1..12)) {
        let facets: Vec<Vec<usize>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
        let c = SimplicialComplex::from_facets(&facets).unwrap();
        prop_assert_eq!(SimplicialComplex::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn matrix_csv_round_trip(rows in prop::array::uniform8(coeffs())) {
        let m = Matrix8 { entries: rows };
        prop_assert_eq!(Matrix8::from_csv(&m.to_csv()).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn product_characteristics_multiply(k in 0usize..3) {
        let pieces = [SimplicialComplex::circle(), SimplicialComplex::octahedron(), SimplicialComplex::seven_vertex_torus()];
        let a = &pieces[k];
        let b = &pieces[(k + 1) % 3];
        let p = a.product(b).unwrap();
        prop_assert_eq!(p.euler_characteristic(), a.euler_characteristic() * b.euler_characteristic());
    }

    #[test]
    fn cp3_gauss_map_is_gauge_invariant(seed in 0u64..1000, theta in 0.1f64..6.2) {
        let c = ProductTorusLift::new(0.6, 0.1).unwrap();
        let u = &halton_points(&c.sample_box(), 1, seed).unwrap()[0];
        let spec = StencilSpec::default();
        let g0 = cp3_gauss_map(&c, u, &spec, 0.1).unwrap();
        let rotated = HopfRotated { inner: &c, theta };
        let g1 = cp3_gauss_map(&rotated, u, &spec, 0.1).unwrap();
        prop_assert!(g0.raw.iter().zip(&g1.raw).all(|(a, b)| (a - b).abs() <= 1e-10));
    }
}

#[test]
fn table_csv_round_trip() {
    for level in 0..=4 {
        let t = generate_mult_table(level).unwrap();
        assert_eq!(table_from_csv(&table_to_csv(&t)).unwrap(), t);
    }
}
