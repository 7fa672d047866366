//! The five verification suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::{Aggregates, Bound, Check, ResidualReport, ScenarioConfig, Suite};
use crate::algebra::matrix::{displayed_left_matrix, left_mul_matrix_oct, Matrix8};
use crate::algebra::number::HypercomplexNumber;
use crate::algebra::octonion::{self, Octonion};
use crate::algebra::properties::{
    check_property, complex_associativity_check, find_zero_divisor, AlgebraProperty, Counterexample,
    ZeroDivisorSearch,
};
use crate::algebra::table::{generate_mult_table, reference_table_mismatches};
use crate::cp3::hopf::{hopf_act, hopf_invariance_defect, hopf_symmetrize, left_i_is_conjugate_rotation, w_gram, w_value, QuadratureSpec};
use crate::cp3::lift::{
    check_lift_invariance, cp3_laplacian_terms, lift_gauge_defect, residual_gauge_defect, z_gram,
};
use crate::error::Result;
use crate::geometry::catalog::ChartId;
use crate::geometry::chart::Chart;
use crate::geometry::sampling::halton_points;
use crate::s7::fields::{is_hopf_multiple, VectorFieldSpec};
use crate::s7::gauss::{gauss_map, s7_laplacian_terms, LaplacianTerms, SignVariant};
use crate::s7::orthant::hemisphere_checks;
use crate::s7::topology::SimplicialComplex;

/// Largest `S^7` residual accepted at the working step.
pub const S7_RESIDUAL_TOL: f64 = 1e-3;
/// Largest harmonicity defect of a CMC chart.
pub const HARMONIC_TOL: f64 = 1e-3;
/// Largest `CP^3` residual of the converging variant.
pub const CP3_RESIDUAL_TOL: f64 = 1e-2;
/// Dependence of `CP^3` quantities on the representative.
pub const GAUGE_TOL: f64 = 1e-10;
/// Gauss-map samples for the hemisphere test.
pub const HEMISPHERE_SAMPLES: usize = 4096;

const NORMED_PAIRS: usize = 10_000;
const MATRIX_PAIRS: usize = 1000;
const GRAM_POINTS: usize = 1000;
const HOPF_POINTS: usize = 16;
const GAUGE_POINTS: usize = 3;
const RANDOM_DIRECTIONS: usize = 64;
/// Step at which the residual's dependence on the representative is checked.
/// Both representatives give the same `gamma` as a function of the chart
/// parameters, so truncation errors agree and only roundoff differs; the
/// Laplacian amplifies it by about `1/h^2`.
pub const RESIDUAL_GAUGE_STEP: f64 = 2e-2;

pub(crate) fn random_unit(rng: &mut ChaCha8Rng) -> Octonion {
    octonion::normalize(&std::array::from_fn(|_| rng.sample(StandardNormal)))
}

pub(crate) fn random_imaginary(rng: &mut ChaCha8Rng) -> Octonion {
    let mut v = random_unit(rng);
    v[0] = 0.0;
    octonion::normalize(&v)
}

fn random_tangent(rng: &mut ChaCha8Rng, x: &Octonion) -> Octonion {
    let w: Octonion = std::array::from_fn(|_| rng.sample(StandardNormal));
    octonion::axpy(&w, -octonion::dot(&w, x), x)
}

/// Runs the suite named in `cfg`. Per-point work runs in parallel; records
/// keep the sample order.
pub fn run_suite(cfg: &ScenarioConfig) -> Result<ResidualReport> {
    cfg.validate()?;
    let mut r = ResidualReport::new(cfg.clone());
    match cfg.suite {
        Suite::Algebra => algebra(cfg, &mut r)?,
        Suite::S7 => s7(cfg, &mut r)?,
        Suite::Cp3 => cp3(cfg, &mut r)?,
        Suite::Hopf => hopf(cfg, &mut r)?,
        Suite::Topology => topology(&mut r)?,
    }
    Ok(r)
}

fn algebra(cfg: &ScenarioConfig, r: &mut ResidualReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let table = generate_mult_table(3)?;
    r.check(Check::new(
        "table_mismatches",
        reference_table_mismatches(&table).len() as f64,
        Bound::Equals(0.0),
    ));

    for level in 0..=3u8 {
        let n = 1usize << level;
        let mut worst = 0.0f64;
        for _ in 0..NORMED_PAIRS {
            let mut draw = || HypercomplexNumber::new(level, (0..n).map(|_| rng.random_range(-1.0..1.0)).collect());
            let (x, y) = (draw()?, draw()?);
            let p = x.mul(&y)?.norm();
            let q = x.norm() * y.norm();
            worst = worst.max((p - q).abs() / q.max(f64::MIN_POSITIVE));
        }
        r.check(Check::at_most(format!("normed_level_{level}"), worst, 1e-12));
    }
    let zd = find_zero_divisor(4)?;
    let (found, product) = match &zd {
        ZeroDivisorSearch::Found { x, y, product_norm } => {
            let unit = (x.norm() - 1.0).abs() < 1e-15 && (y.norm() - 1.0).abs() < 1e-15;
            (unit, *product_norm)
        }
        ZeroDivisorSearch::NotFound { .. } => (false, f64::INFINITY),
    };
    r.check(Check::holds("zero_divisor_found_level_4", found));
    r.check(Check::at_most("zero_divisor_product_norm", product, 1e-12));
    r.check(Check::holds(
        "no_zero_divisor_level_3",
        matches!(find_zero_divisor(3)?, ZeroDivisorSearch::NotFound { .. }),
    ));

    r.check(Check::holds(
        "associative_level_2",
        check_property(2, AlgebraProperty::Associative)?.holds,
    ));
    let assoc3 = check_property(3, AlgebraProperty::Associative)?;
    let basis_witness = match &assoc3.counterexample {
        Some(Counterexample::Triple(a, b, c)) => [a, b, c]
            .iter()
            .all(|e| e.coeffs().iter().filter(|v| **v != 0.0).count() == 1),
        _ => false,
    };
    r.check(Check::holds("non_associative_level_3_basis_witness", !assoc3.holds && basis_witness));
    r.check(Check::holds(
        "non_commutative_level_2",
        !check_property(2, AlgebraProperty::Commutative)?.holds,
    ));

    let mut mat = 0.0f64;
    let mut displayed = 0.0f64;
    let mut lemma = true;
    for _ in 0..MATRIX_PAIRS {
        let x = random_unit(&mut rng);
        let y = random_unit(&mut rng);
        let m = left_mul_matrix_oct(&x);
        let d = octonion::sub(&m.apply(&y), &octonion::mul(&x, &y));
        mat = mat.max(d.iter().fold(0.0, |a, v| a.max(v.abs())));
        displayed = displayed.max(m.add(&displayed_left_matrix(&x).scale(-1.0)).max_abs());
        let to_num = |o: &Octonion| HypercomplexNumber::new(3, o.to_vec());
        let a = HypercomplexNumber::new(1, vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])?;
        let b = HypercomplexNumber::new(1, vec![rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])?;
        lemma &= complex_associativity_check(&a, &b, &to_num(&x)?)?;
    }
    r.check(Check::at_most("left_matrix_action", mat, 1e-13));
    r.check(Check::at_most("displayed_matrix_agreement", displayed, 0.0));
    r.check(Check::holds("left_i_conjugate_to_block_rotation", left_i_is_conjugate_rotation()));
    r.check(Check::holds("complex_associativity", lemma));
    Ok(())
}

fn par_terms<F>(samples: &[Vec<f64>], f: F) -> Result<Vec<LaplacianTerms>>
where
    F: Fn(&[f64]) -> Result<LaplacianTerms> + Sync,
{
    samples.par_iter().map(|u| f(u)).collect()
}

fn samples(chart: &dyn Chart, cfg: &ScenarioConfig, count: usize) -> Result<Vec<Vec<f64>>> {
    halton_points(&chart.sample_box(), count, cfg.seed)
}

/// Skew and square defects of normalized translational-field matrices at
/// seeded random base points.
fn translational_checks(cfg: &ScenarioConfig, r: &mut ResidualReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let (mut skew, mut square) = (0.0f64, 0.0f64);
    for _ in 0..32 {
        let x0 = random_unit(&mut rng);
        let v = random_tangent(&mut rng, &x0);
        let field = VectorFieldSpec::translational(v, x0)?;
        let m = field.matrix().expect("translational fields are linear");
        skew = skew.max(m.skew_defect());
        let verdict = is_hopf_multiple(&m)?;
        square = square.max(verdict.square_defect);
    }
    r.check(Check::at_most("translational_skew", skew, 1e-13));
    r.check(Check::at_most("translational_square", square, 1e-10));
    Ok(())
}

fn s7(cfg: &ScenarioConfig, r: &mut ResidualReport) -> Result<()> {
    translational_checks(cfg, r)?;
    let chart = cfg.chart.build()?;
    let chart = chart.as_ref();
    let pts = samples(chart, cfg, cfg.points)?;
    let terms = par_terms(&pts, |u| s7_laplacian_terms(chart, u, &cfg.stencil))?;
    let variant = SignVariant::Negative;
    r.points = terms.iter().map(|t| t.record(variant)).collect();
    r.aggregates = Aggregates::from_records(&r.points, Some(variant));
    let max_res = r.aggregates.max_residual.unwrap_or(f64::NAN);
    let max_pos = terms
        .iter()
        .map(|t| t.residual_norm(SignVariant::Positive))
        .fold(0.0, f64::max);
    r.observe("max_residual_positive_variant", max_pos);
    r.check(Check::at_most("s7_residual", max_res, S7_RESIDUAL_TOL));

    let defect = r.points.iter().map(|p| p.defect).fold(0.0, f64::max);
    r.observe("max_harmonicity_defect", defect);
    if cfg.chart.is_cmc() {
        r.check(Check::at_most("harmonic_defect", defect, HARMONIC_TOL));
    } else {
        r.check(Check::new(
            "non_harmonic_defect_ratio",
            defect / max_res,
            Bound::Above(10.0),
        ));
    }
    if cfg.chart == ChartId::Equator {
        let anchor = terms
            .iter()
            .flat_map(|t| t.laplacian.iter().zip(&t.gamma).map(|(l, g)| (l + 6.0 * g).abs()))
            .fold(0.0, f64::max);
        r.check(Check::at_most("equator_anchor", anchor, S7_RESIDUAL_TOL));
    }
    if cfg.chart.is_cmc() {
        hemisphere(chart, cfg, r)?;
    }
    Ok(())
}

/// Hemisphere-to-equator implication on `HEMISPHERE_SAMPLES` Gauss-map
/// values, for the coordinate directions `+-e_k` and seeded random ones.
fn hemisphere(chart: &dyn Chart, cfg: &ScenarioConfig, r: &mut ResidualReport) -> Result<()> {
    let pts = samples(chart, cfg, HEMISPHERE_SAMPLES)?;
    let gammas: Vec<Octonion> = pts
        .par_iter()
        .map(|u| gauss_map(chart, u, &cfg.stencil))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xd1ec);
    let mut dirs: Vec<Octonion> = (1..8)
        .flat_map(|k| [octonion::basis(k), octonion::scale(&octonion::basis(k), -1.0)])
        .collect();
    dirs.extend((0..RANDOM_DIRECTIONS).map(|_| random_imaginary(&mut rng)));
    let checks = hemisphere_checks(&gammas, &dirs)?;
    let violations = checks.iter().filter(|c| !c.holds()).count();
    let in_hemisphere = checks.iter().filter(|c| c.in_hemisphere).count();
    r.observe("hemisphere_directions_tested", dirs.len() as f64);
    r.observe("hemisphere_directions_containing", in_hemisphere as f64);
    r.check(Check::new(
        "hemisphere_implies_equator_violations",
        violations as f64,
        Bound::Equals(0.0),
    ));
    Ok(())
}

/// Which variants stay below `tol`; the records follow the single converging
/// one, or `Negative` if there is none or both.
pub(crate) fn pick_variant(max: [f64; 2], tol: f64) -> (usize, Option<SignVariant>) {
    let ok: Vec<SignVariant> = SignVariant::BOTH
        .iter()
        .zip(max)
        .filter(|(_, m)| *m <= tol)
        .map(|(v, _)| *v)
        .collect();
    (ok.len(), if ok.len() == 1 { Some(ok[0]) } else { None })
}

pub(crate) fn variant_maxima(terms: &[LaplacianTerms]) -> [f64; 2] {
    let mut m = [0.0f64; 2];
    for t in terms {
        for (k, v) in SignVariant::BOTH.iter().enumerate() {
            m[k] = m[k].max(t.residual_norm(*v));
        }
    }
    m
}

fn cp3(cfg: &ScenarioConfig, r: &mut ResidualReport) -> Result<()> {
    let chart = cfg.chart.build()?;
    let chart = chart.as_ref();
    let pts = samples(chart, cfg, cfg.points)?;
    let few = &pts[..pts.len().min(GAUGE_POINTS)];
    check_lift_invariance(chart, few, &cfg.stencil, GAUGE_TOL)?;
    let terms = par_terms(&pts, |u| cp3_laplacian_terms(chart, u, &cfg.stencil, cfg.delta))?;
    let max = variant_maxima(&terms);
    r.observe("max_residual_negative_variant", max[0]);
    r.observe("max_residual_positive_variant", max[1]);
    let (count, chosen) = pick_variant(max, CP3_RESIDUAL_TOL);
    r.check(Check::new("cp3_variants_converging", count as f64, Bound::Equals(1.0)));
    let variant = chosen.unwrap_or(SignVariant::Negative);
    r.points = terms.iter().map(|t| t.record(variant)).collect();
    r.aggregates = Aggregates::from_records(&r.points, Some(variant));

    let angles = [0.7, 2.1, 4.4];
    let gauge = lift_gauge_defect(chart, few, &angles, &cfg.stencil)?;
    r.check(Check::at_most("gauge_gamma", gauge.gamma, GAUGE_TOL));
    r.check(Check::at_most("gauge_shape", gauge.mean_curvature.max(gauge.a_norm_sq), GAUGE_TOL));
    let coarse = cfg.stencil.with_step(RESIDUAL_GAUGE_STEP);
    let res_gauge = residual_gauge_defect(chart, few, &angles, &coarse, cfg.delta)?;
    r.check(Check::at_most("gauge_residual", res_gauge, GAUGE_TOL));

    // |gamma| <= |nu| sqrt(lambda_max) with |nu| = 1
    let mut bound_ok = true;
    let (mut min_w, mut min_z, mut fibre) = (f64::INFINITY, f64::INFINITY, 0.0f64);
    for (t, u) in terms.iter().zip(&pts) {
        let x = chart.point(u);
        let g = z_gram(&x)?;
        let lmax = g.symmetric_eigenvalues().max();
        let gn = t.gamma.iter().map(|v| v * v).sum::<f64>().sqrt();
        bound_ok &= gn <= lmax.sqrt() * (1.0 + 1e-12);
        let w = w_gram(&x)?;
        min_w = min_w.min(w.det);
        min_z = min_z.min(g.determinant());
        fibre = fibre.max(w.fibre_component);
    }
    r.check(Check::holds("gamma_gram_bound", bound_ok));
    r.observe("min_gram_det_w", min_w);
    r.observe("min_gram_det_z", min_z);
    r.observe("max_fibre_component_w", fibre);
    Ok(())
}

fn max_diff(a: &Octonion, b: &Octonion) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

fn random_skew(rng: &mut ChaCha8Rng) -> Matrix8 {
    let mut m = Matrix8::zeros();
    for i in 0..8 {
        for j in i + 1..8 {
            let v: f64 = rng.random_range(-1.0..1.0);
            m.entries[i][j] = v;
            m.entries[j][i] = -v;
        }
    }
    m
}

fn hopf(cfg: &ScenarioConfig, r: &mut ResidualReport) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let quad = cfg.quadrature;
    let fine = QuadratureSpec::new(2 * quad.node_count)?;
    let xs: Vec<Octonion> = (0..HOPF_POINTS).map(|_| random_unit(&mut rng)).collect();

    let (mut iso, mut group) = (0.0f64, 0.0f64);
    for x in &xs {
        let (s, t) = (rng.random_range(0.0..6.3), rng.random_range(0.0..6.3));
        iso = iso.max((octonion::norm(&hopf_act(s, x)) - 1.0).abs());
        group = group.max(max_diff(&hopf_act(s, &hopf_act(t, x)), &hopf_act(s + t, x)));
    }
    r.check(Check::at_most("action_isometry", iso, 1e-12));
    r.check(Check::at_most("action_group_law", group, 1e-12));

    let mut vs: Vec<Octonion> = (2..8).map(octonion::basis).collect();
    vs.extend((0..3).map(|_| random_imaginary(&mut rng)));
    let (mut fixed, mut spectral, mut integral, mut not_fixed) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    for v in &vs {
        let w = VectorFieldSpec::w_field(*v);
        let wh = hopf_symmetrize(&w, quad);
        let wh2 = hopf_symmetrize(&w, fine);
        let v = *v;
        let right = VectorFieldSpec::custom("x v", move |x| octonion::mul(x, &v));
        let rh = hopf_symmetrize(&right, quad);
        for x in &xs {
            fixed = fixed.max(max_diff(&wh.eval(x), &w.eval(x)));
            spectral = spectral.max(max_diff(&wh.eval(x), &wh2.eval(x)));
            integral = integral.max(max_diff(&rh.eval(x), &w_value(&v, x)));
            not_fixed = not_fixed.min(octonion::norm(&octonion::sub(&rh.eval(x), &right.eval(x))));
        }
    }
    r.check(Check::at_most("w_fixed_point", fixed, 1e-10));
    r.check(Check::at_most("quadrature_n_vs_2n", spectral, 1e-12));
    r.check(Check::at_most("right_multiplication_average_is_w", integral, 1e-10));
    r.check(Check::new("right_multiplication_not_fixed", not_fixed, Bound::Above(1e-3)));

    let mut fields = Vec::new();
    for _ in 0..3 {
        let x0 = random_unit(&mut rng);
        fields.push(VectorFieldSpec::translational(random_tangent(&mut rng, &x0), x0)?);
        fields.push(VectorFieldSpec::hopf(random_skew(&mut rng))?);
    }
    let angles = [0.4, 1.9, 3.3, 5.1];
    let (mut idem, mut invariant) = (0.0f64, 0.0f64);
    for f in &fields {
        let h = hopf_symmetrize(f, quad);
        let hh = hopf_symmetrize(&h, quad);
        for x in xs.iter().take(4) {
            idem = idem.max(max_diff(&h.eval(x), &hh.eval(x)));
            invariant = invariant.max(hopf_invariance_defect(&h, x, &angles));
        }
    }
    r.check(Check::at_most("symmetrization_idempotent", idem, 1e-10));
    r.check(Check::at_most("symmetrization_invariant", invariant, 1e-10));

    let (mut rel, mut x0_orth, mut fibre) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..GRAM_POINTS {
        let g = w_gram(&random_unit(&mut rng))?;
        rel = rel.max(g.rel_err);
        x0_orth = x0_orth.max(g.x0_orthogonality);
        fibre = fibre.max(g.fibre_component);
    }
    r.check(Check::at_most("gram_determinant_rel_err", rel, 1e-10));
    r.check(Check::at_most("w_e1_orthogonal_to_w_en", x0_orth, 1e-12));
    r.observe("max_fibre_component_w", fibre);
    r.check(Check::holds("left_i_conjugate_to_block_rotation", left_i_is_conjugate_rotation()));
    Ok(())
}

fn topology(r: &mut ResidualReport) -> Result<()> {
    let octa = SimplicialComplex::octahedron();
    let torus = SimplicialComplex::seven_vertex_torus();
    let c = SimplicialComplex::circle();
    let t3 = c.product(&c)?.product(&c)?;
    r.check(Check::new("chi_octahedron", octa.euler_characteristic() as f64, Bound::Equals(2.0)));
    r.check(Check::new("chi_seven_vertex_torus", torus.euler_characteristic() as f64, Bound::Equals(0.0)));
    r.check(Check::new("chi_triple_torus_product", t3.euler_characteristic() as f64, Bound::Equals(0.0)));
    r.observe("triple_torus_facets", t3.f_vector().last().copied().unwrap_or(0) as f64);
    let s2s2 = octa.product(&octa)?;
    r.check(Check::new("chi_sphere_product", s2s2.euler_characteristic() as f64, Bound::Equals(4.0)));
    Ok(())
}
