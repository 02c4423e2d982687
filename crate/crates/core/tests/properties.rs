mod common;

use common::*;
use parasol_core::classify::{fit_einstein_like, is_para_sasaki_like, EinsteinKind};
use parasol_core::curvature::{basis, riemann_operator, sectional};
use parasol_core::golden::golden_instance;
use parasol_core::lie::{validate_lie_algebra, ChartFrame, StructureConstants};
use parasol_core::linalg::Matrix;
use parasol_core::pipeline::{analysis_report, analyze};
use parasol_core::report::Report;
use parasol_core::scalar::{rat, ratio, HypExpr, Rational, SymbolContext};
use parasol_core::soliton::{
    lie_derivative_metric, nabla_vector_field, solve_soliton_constants, PotentialData, SolitonForm,
    VectorField,
};
use parasol_core::structure::{verify_axioms, PiStructure};
use proptest::prelude::*;
use std::collections::BTreeMap;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn vec3() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational_strategy(), 3)
}

// Ring

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn normalize_is_idempotent(e in expr_strategy()) {
        let once = normal(&e);
        let again = context().parse(&once.to_string()).unwrap();
        prop_assert_eq!(once, again);
    }

    #[test]
    fn addition_commutes(a in expr_strategy(), b in expr_strategy()) {
        let (a, b) = (normal(&a), normal(&b));
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_distributes(a in expr_strategy(), b in expr_strategy(), c in expr_strategy()) {
        let (a, b, c) = (normal(&a), normal(&b), normal(&c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn mixed_partials_commute(e in expr_strategy(), i in 1u32..=3, j in 1u32..=3) {
        let e = normal(&e);
        prop_assert_eq!(e.partial(i).partial(j), e.partial(j).partial(i));
    }

    #[test]
    fn normal_form_keeps_cosh_degree_at_most_one(e in expr_strategy()) {
        let e = normal(&e);
        for (mono, _) in e.terms() {
            for i in 1..=3 {
                prop_assert!(mono.degree_in(&parasol_core::scalar::Symbol::Cosh(i)) <= 1);
            }
        }
    }
}

// Frames

fn parse_frame(rows: &[[&str; 3]]) -> ChartFrame {
    let ctx = SymbolContext::new(3, Vec::<String>::new());
    ChartFrame::new(
        rows.iter()
            .map(|r| r.iter().map(|s| ctx.parse(s).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

fn hand_built_frames() -> Vec<ChartFrame> {
    vec![
        parse_frame(&[
            ["cosh(x3)", "-sinh(x3)", "0"],
            ["-sinh(x3)", "cosh(x3)", "0"],
            ["0", "0", "1"],
        ]),
        parse_frame(&[["1", "0", "0"], ["0", "1", "x1"], ["0", "0", "1"]]),
        parse_frame(&[
            ["1", "0", "0"],
            ["0", "cosh(x1)", "sinh(x1)"],
            ["0", "sinh(x1)", "cosh(x1)"],
        ]),
    ]
}

#[test]
fn frame_commutators_are_antisymmetric_and_satisfy_jacobi() {
    for frame in hand_built_frames() {
        let sc = frame.commutators().unwrap();
        let report = validate_lie_algebra(&sc);
        assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn hand_built_frames_have_expected_brackets() {
    let frames = hand_built_frames();
    let heis = frames[1].commutators().unwrap();
    assert_eq!(heis.nonzero_entries(), vec![(1, 2, 3, rat(1)), (2, 1, 3, rat(-1))]);
    let boost = frames[2].commutators().unwrap();
    assert_eq!(boost.get(0, 1, 2), &rat(1));
    assert_eq!(boost.get(0, 2, 1), &rat(1));
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn directional_derivative_is_linear_and_leibniz(
        f in expr_strategy(), h in expr_strategy(), a in rational_strategy(), frame in 0usize..3, i in 0usize..3
    ) {
        let frame = &hand_built_frames()[frame];
        let ctx = SymbolContext::new(3, Vec::<String>::new());
        // the frames only know coordinates, so evaluate c1 away
        let strip = |e: &HypExpr| ctx.parse(&e.substitute_params(&BTreeMap::from([("c1".to_string(), rat(2)), ("c2".to_string(), rat(-1))])).to_string()).unwrap();
        let (f, h) = (strip(&normal(&f)), strip(&normal(&h)));
        let d = |e: &HypExpr| frame.directional_derivative(i, e).unwrap();
        prop_assert_eq!(d(&(&f.scale(&a) + &h)), &d(&f).scale(&a) + &d(&h));
        prop_assert_eq!(d(&(&f * &h)), &(&d(&f) * &h) + &(&f * &d(&h)));
    }
}

// Structures

/// Orthonormal bases with the reference ξ last: rotations in the plane of
/// e1, e2 by rational Pythagorean angles, optionally reflected.
fn orthonormal_rebase(p: i64, q: i64, flip: bool) -> Matrix {
    let r = p * p + q * q;
    let (c, s) = (ratio(p * p - q * q, r), ratio(2 * p * q, r));
    let sign = if flip { rat(-1) } else { rat(1) };
    Matrix::from_rows(vec![
        vec![c.clone(), -s.clone() * &sign, rat(0)],
        vec![s, c * &sign, rat(0)],
        vec![rat(0), rat(0), rat(1)],
    ])
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn associated_metric_squares_to_identity_in_orthonormal_frames(p in 1i64..12, q in 0i64..12, flip: bool) {
        let ps = reference_structure().rebase(&orthonormal_rebase(p, q, flip)).unwrap();
        prop_assert_eq!(ps.g(), &Matrix::identity(3));
        prop_assert!(verify_axioms(&ps).passed());
        let ga = ps.g_assoc();
        prop_assert_eq!(ga.mul(&ga), Matrix::identity(3));
    }

    #[test]
    fn associated_metric_is_compatible(x in vec3(), y in vec3()) {
        let ps = reference_structure();
        let ga = ps.g_assoc();
        let lhs = ga.bilinear(&ps.apply_phi(&x), &ps.apply_phi(&y));
        let rhs = ga.bilinear(&x, &y) - ps.eta_of(&x) * ps.eta_of(&y);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ga.mul_vec(ps.xi()), ps.eta().to_vec());
    }

    #[test]
    fn derived_axioms_never_fail_alone(entries in proptest::collection::vec(-2i64..=2, 9), g_diag in proptest::collection::vec(1i64..=3, 3)) {
        let phi = Matrix::from_fn(3, 3, |i, j| rat(entries[i * 3 + j]));
        let g = Matrix::from_fn(3, 3, |i, j| if i == j { rat(g_diag[i]) } else { rat(0) });
        let xi = vec![rat(0), rat(0), rat(1)];
        let eta = vec![rat(0), rat(0), rat(1)];
        let ps = PiStructure::new(g, phi, xi, Some(eta)).unwrap();
        let report = verify_axioms(&ps);
        let derived = ["g_phi_symmetric", "g_xi_eta", "g_xi_xi_one"];
        let defining_pass = report.checks.iter().filter(|c| !derived.contains(&c.name.as_str())).all(|c| c.passed);
        if defining_pass {
            prop_assert!(report.passed(), "{report:?}");
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    /// Rebasing by any invertible matrix keeps every axiom, so the derived
    /// identities are exercised on non-orthonormal data too.
    #[test]
    fn rebased_structures_pass_every_axiom(entries in proptest::collection::vec(-3i64..=3, 9)) {
        let p = Matrix::from_fn(3, 3, |i, j| rat(entries[i * 3 + j]));
        prop_assume!(p.determinant() != rat(0));
        let ps = reference_structure().rebase(&p).unwrap();
        let report = verify_axioms(&ps);
        prop_assert!(report.passed(), "{report:?}");
    }
}

#[test]
fn derived_axiom_names_exist() {
    let report = verify_axioms(&reference_structure());
    for name in ["g_phi_symmetric", "g_xi_eta", "g_xi_xi_one"] {
        assert!(report.get(name).is_some(), "missing {name}");
    }
}

// Curvature

fn golden_constants() -> StructureConstants {
    scaled_family(&rat(1))
}

#[test]
fn connection_and_curvature_agree_with_operator_oracle() {
    let ps = reference_structure();
    for t in [rat(1), ratio(1, 2), rat(2), rat(3), rat(-5)] {
        let sc = scaled_family(&t);
        let cd = curvature(&sc, &ps);
        let nab = oracle_nabla(&sc, ps.g());
        for (i, nab_i) in nab.iter().enumerate() {
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(cd.connection.gamma(i, j, k), &nab_i[(k, j)], "t = {t}, Γ at {i}{j}{k}");
                }
            }
        }
        assert_eq!(cd.riemann.down, oracle_riemann(&sc, ps.g()), "t = {t}");
    }
}

#[test]
fn oracle_agrees_with_non_orthonormal_metric() {
    // a solvable algebra: [e3, e1] = e1, [e3, e2] = -2 e2
    let sc = StructureConstants::from_triples(3, &[(3, 1, 1, rat(1)), (3, 2, 2, rat(-2))]).unwrap();
    assert!(validate_lie_algebra(&sc).passed());
    let g = Matrix::from_i64(&[&[2, 1, 0], &[1, 3, 0], &[0, 0, 1]]);
    let phi = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
    let ps = PiStructure::new(g.clone(), phi, vec![rat(0), rat(0), rat(1)], None).unwrap();
    let cd = curvature(&sc, &ps);
    assert_eq!(cd.riemann.down, oracle_riemann(&sc, &g));
    assert!(cd.riemann.symmetry_violations().is_empty());
    assert_eq!(cd.riemann.second_bianchi_violation(&cd.connection), None);
}

#[test]
fn scaled_family_connection_has_minus_t() {
    let ps = reference_structure();
    for t in [ratio(1, 2), rat(2), rat(3)] {
        let cd = curvature(&scaled_family(&t), &ps);
        assert_eq!(cd.connection.gamma(0, 1, 2), &-t.clone());
    }
}

#[test]
fn second_bianchi_on_reference_and_scaled_family() {
    let ps = reference_structure();
    for t in [rat(1), ratio(1, 2), rat(2), rat(3)] {
        let cd = curvature(&scaled_family(&t), &ps);
        assert_eq!(cd.riemann.second_bianchi_violation(&cd.connection), None, "t = {t}");
    }
}

/// Heisenberg with the reference structure separates the two g̃-traces:
/// ρ = diag(−½, −½, ½) gives τ = −½ and Σ g̃^ij ρ_ij = ρ12 + ρ21 + ρ33 = ½,
/// while the sectional curvatures −¾, ¼, ¼ give the full trace
/// 2·R1212 = 3/2.
#[test]
fn associated_trace_is_pinned_on_heisenberg() {
    let sc = StructureConstants::from_triples(3, &[(1, 2, 3, rat(1))]).unwrap();
    let ps = reference_structure();
    let cd = curvature(&sc, &ps);
    let r = oracle_riemann(&sc, ps.g());
    let ga_inv = ps.g_assoc().inverse().unwrap();
    let rho = ricci_of(&r, &Matrix::identity(3));
    assert_eq!(rho, Matrix::from_rows(vec![
        vec![ratio(-1, 2), rat(0), rat(0)],
        vec![rat(0), ratio(-1, 2), rat(0)],
        vec![rat(0), rat(0), ratio(1, 2)],
    ]));
    assert_eq!(cd.ricci.tau, ratio(-1, 2));
    assert_eq!(cd.ricci.tau_assoc, ratio(1, 2));
    assert_eq!(cd.ricci.tau_assoc, trace_with(&rho, &ga_inv));
    assert_eq!(cd.ricci.tau_assoc_full, ratio(3, 2));
    assert_eq!(cd.ricci.tau_assoc_full, double_trace(&r, &ga_inv));
}

#[test]
fn associated_traces_coincide_on_scaled_family() {
    let ps = reference_structure();
    for t in [ratio(1, 2), rat(1), rat(2), rat(3)] {
        let cd = curvature(&scaled_family(&t), &ps);
        assert_eq!(cd.ricci.tau_assoc, cd.ricci.tau_assoc_full, "t = {t}");
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn sectional_curvature_is_basis_independent(
        t in prop_oneof![Just(rat(1)), Just(ratio(1, 2)), Just(rat(2)), Just(rat(3))],
        x in vec3(), y in vec3(),
        a in rational_strategy(), b in rational_strategy(), c in rational_strategy(), d in rational_strategy()
    ) {
        let ps = reference_structure();
        let cd = curvature(&scaled_family(&t), &ps);
        let det = &a * &d - &b * &c;
        prop_assume!(det != rat(0));
        let Ok(k) = sectional(&cd.riemann, ps.g(), &x, &y) else { return Ok(()); };
        let comb = |p: &Rational, q: &Rational| -> Vec<Rational> {
            (0..3).map(|i| p * &x[i] + q * &y[i]).collect()
        };
        let k2 = sectional(&cd.riemann, ps.g(), &comb(&a, &b), &comb(&c, &d)).unwrap();
        prop_assert_eq!(k, k2);
    }

    #[test]
    fn para_sasaki_like_curvature_identities(x in vec3(), y in vec3(), z in vec3(), w in vec3()) {
        let ps = reference_structure();
        let cd = curvature(&golden_constants(), &ps);
        prop_assert!(is_para_sasaki_like(&ps, &cd).passed());
        let g = ps.g();
        let xi = ps.xi();
        let eta = |v: &[Rational]| ps.eta_of(v);
        let lin = |a: &Rational, u: &[Rational], b: &Rational, v: &[Rational]| -> Vec<Rational> {
            (0..3).map(|i| a * &u[i] + b * &v[i]).collect()
        };
        // R(x,y)ξ = −η(y)x + η(x)y
        prop_assert_eq!(riemann_operator(&cd.riemann, &x, &y, xi), lin(&-eta(&y), &x, &eta(&x), &y));
        // R(ξ,y)ξ = φ²y
        prop_assert_eq!(riemann_operator(&cd.riemann, xi, &y, xi), ps.apply_phi(&ps.apply_phi(&y)));
        // ρ(x, ξ) = −2n η(x)
        prop_assert_eq!(cd.ricci.ricci.bilinear(&x, xi), -rat(2) * eta(&x));
        let r = |a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]| cd.riemann.eval(a, b, c, d);
        let lhs = r(&x, &y, &ps.apply_phi(&z), &w) - r(&x, &y, &z, &ps.apply_phi(&w));
        prop_assert_eq!(lhs, phi_commutator_rhs(&ps, &x, &y, &z, &w));
        let gp = |a: &[Rational], b: &[Rational]| g.bilinear(a, &ps.apply_phi(b));
        // ρ*(y,z) = ρ(y,φz) − (2n−1) g(y,φz)
        let rho_star = cd.ricci.ricci_star.bilinear(&y, &z);
        prop_assert_eq!(rho_star, cd.ricci.ricci.bilinear(&y, &ps.apply_phi(&z)) - gp(&y, &z));
    }
}

/// `R(x,y,φz,w) − R(x,y,z,φw)` on a para-Sasaki-like structure, written with
/// `h(a,b) = g(a,b) − 2η(a)η(b)`:
/// `−h(y,z)g(x,φw) − h(y,w)g(x,φz) + h(x,z)g(y,φw) + h(x,w)g(y,φz)`.
fn phi_commutator_rhs(ps: &PiStructure, x: &[Rational], y: &[Rational], z: &[Rational], w: &[Rational]) -> Rational {
    let g = ps.g();
    let gp = |a: &[Rational], b: &[Rational]| g.bilinear(a, &ps.apply_phi(b));
    let h = |a: &[Rational], b: &[Rational]| g.bilinear(a, b) - rat(2) * ps.eta_of(a) * ps.eta_of(b);
    -h(y, z) * gp(x, w) - h(y, w) * gp(x, z) + h(x, z) * gp(y, w) + h(x, w) * gp(y, z)
}

#[test]
fn phi_commutator_identity_is_not_vacuous() {
    // On a flat instance the left side vanishes and the right side does not.
    let ps = reference_structure();
    let cd = curvature(&StructureConstants::zero(3), &ps);
    let e = |i| basis(3, i);
    let (x, y, z, w) = (e(0), e(1), e(1), e(1));
    let lhs = cd.riemann.eval(&x, &y, &ps.apply_phi(&z), &w) - cd.riemann.eval(&x, &y, &z, &ps.apply_phi(&w));
    assert_eq!(lhs, rat(0));
    assert_ne!(phi_commutator_rhs(&ps, &x, &y, &z, &w), rat(0));
}

// Classification

proptest! {
    #![proptest_config(config(50))]

    #[test]
    fn einstein_like_fit_round_trips(a in rational_strategy(), b in rational_strategy(), c in rational_strategy()) {
        let ps = reference_structure();
        let ga = ps.g_assoc();
        let rho = ps.g().scale(&a).add(&ga.scale(&b)).add(&ps.eta_eta().scale(&c));
        let fit = fit_einstein_like(&rho, ps.g(), &ga, ps.eta()).unwrap();
        prop_assert_eq!((&fit.a, &fit.b, &fit.c), (&a, &b, &c));
        prop_assert!(fit.kind != EinsteinKind::None);
        prop_assert!(fit.residual.is_zero());
    }
}

// Solitons

fn golden_potential_data(v: &VectorField) -> (parasol_core::curvature::CurvatureData, PotentialData) {
    let inst = golden_instance();
    let cd = curvature(&inst.structure_constants, &inst.pi);
    let data = PotentialData::compute(&inst.pi, &cd, inst.chart.as_ref(), v).unwrap();
    (cd, data)
}

fn chart_potential() -> impl Strategy<Value = VectorField> {
    let ctx = golden_instance().symbols;
    proptest::collection::vec(expr_strategy(), 3).prop_map(move |es| {
        VectorField::new(
            es.iter()
                .map(|e| {
                    let text = normal(e).to_string();
                    ctx.parse(&text).unwrap()
                })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn lie_xi_equals_phi_v_minus_nabla_xi_v(v in chart_potential()) {
        let inst = golden_instance();
        let (_, data) = golden_potential_data(&v);
        for k in 0..3 {
            let nabla_xi_v = &data.nabla_v[2][k];
            let phi_v = (0..3).fold(HypExpr::zero(), |acc, j| acc + v.coeffs[j].scale(&inst.pi.phi()[(k, j)]));
            prop_assert_eq!(&data.lie_xi[k], &(&phi_v - nabla_xi_v));
        }
        let lie_xi_zero = data.lie_xi.iter().all(HypExpr::is_zero);
        let nabla_eq_phi = (0..3).all(|k| {
            let phi_v = (0..3).fold(HypExpr::zero(), |acc, j| acc + v.coeffs[j].scale(&inst.pi.phi()[(k, j)]));
            data.nabla_v[2][k] == phi_v
        });
        prop_assert_eq!(lie_xi_zero, nabla_eq_phi);
    }

    #[test]
    fn lie_derivative_of_metric_is_linear(v in chart_potential(), w in chart_potential(), a in rational_strategy(), b in rational_strategy()) {
        let inst = golden_instance();
        let cd = curvature(&inst.structure_constants, &inst.pi);
        let chart = inst.chart.as_ref();
        let lvg = |u: &VectorField| lie_derivative_metric(&nabla_vector_field(&cd.connection, chart, u).unwrap(), inst.pi.g());
        let combined = lvg(&VectorField::linear_combination(&a, &v, &b, &w));
        let (lv, lw) = (lvg(&v), lvg(&w));
        for i in 0..3 {
            for j in 0..3 {
                prop_assert_eq!(&combined[i][j], &(&lv[i][j].scale(&a) + &lw[i][j].scale(&b)));
            }
        }
    }

    #[test]
    fn soliton_residual_vanishes_iff_reconstruction_matches(v in chart_potential()) {
        let inst = golden_instance();
        let (cd, data) = golden_potential_data(&v);
        let ps = &inst.pi;
        let fit = solve_soliton_constants(&cd.ricci.ricci, &data.lie_metric, ps.g(), &ps.g_assoc(), ps.eta(), SolitonForm::ParaRicciLike).unwrap();
        prop_assert_eq!(fit.consistent, reconstruction_matches(&cd.ricci.ricci, &data.lie_metric, ps, &fit));
    }
}

/// `−½ L_v g − λ g − μ g̃ − ν η⊗η` against ρ, entrywise.
fn reconstruction_matches(
    rho: &Matrix,
    lvg: &[Vec<HypExpr>],
    ps: &PiStructure,
    fit: &parasol_core::soliton::SolitonFit,
) -> bool {
    if fit.failure.is_some() {
        return false;
    }
    let ga = ps.g_assoc();
    let ee = ps.eta_eta();
    (0..3).all(|i| {
        (0..3).all(|j| {
            let rebuilt = lvg[i][j].scale(&ratio(-1, 2))
                - fit.lambda.scale(&ps.g()[(i, j)])
                - fit.mu.scale(&ga[(i, j)])
                - fit.nu.scale(&ee[(i, j)]);
            rebuilt == HypExpr::constant(rho[(i, j)].clone())
        })
    })
}

#[test]
fn golden_potential_reconstructs_ricci() {
    let inst = golden_instance();
    let v = inst.potential.clone().unwrap();
    let (cd, data) = golden_potential_data(&v);
    let ps = &inst.pi;
    let fit = solve_soliton_constants(&cd.ricci.ricci, &data.lie_metric, ps.g(), &ps.g_assoc(), ps.eta(), SolitonForm::ParaRicciLike).unwrap();
    assert!(fit.consistent);
    assert!(reconstruction_matches(&cd.ricci.ricci, &data.lie_metric, ps, &fit));
}

fn golden_fit_at(params: &[(&str, Rational)], form: SolitonForm) -> parasol_core::soliton::SolitonFit {
    let inst = golden_instance();
    let values: BTreeMap<String, Rational> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    let v = VectorField::new(inst.potential.unwrap().coeffs.iter().map(|c| c.substitute_params(&values)).collect());
    let (cd, data) = golden_potential_data(&v);
    let ps = &inst.pi;
    solve_soliton_constants(&cd.ricci.ricci, &data.lie_metric, ps.g(), &ps.g_assoc(), ps.eta(), form).unwrap()
}

proptest! {
    #![proptest_config(config(24))]

    /// `c3 = −c2` kills μ, leaving an η-Ricci soliton with λ = c1, ν = 2 − c1.
    #[test]
    fn eta_ricci_form_matches_general_fit(c1 in rational_strategy(), c2 in rational_strategy()) {
        let params = [("c1", c1.clone()), ("c2", c2.clone()), ("c3", -c2.clone())];
        let general = golden_fit_at(&params, SolitonForm::ParaRicciLike);
        prop_assert!(general.consistent);
        prop_assert!(general.mu.is_zero());
        let eta = golden_fit_at(&params, SolitonForm::EtaRicci);
        prop_assert!(eta.consistent);
        prop_assert_eq!(&eta.lambda, &HypExpr::constant(c1.clone()));
        prop_assert_eq!(&eta.nu, &HypExpr::constant(rat(2) - &c1));
        prop_assert_eq!((&eta.lambda, &eta.nu), (&general.lambda, &general.nu));
    }

    /// Additionally `c1 = 2` kills ν, leaving a Ricci soliton with λ = 2.
    #[test]
    fn ricci_form_matches_general_fit(c2 in rational_strategy()) {
        let params = [("c1", rat(2)), ("c2", c2.clone()), ("c3", -c2.clone())];
        let fit = golden_fit_at(&params, SolitonForm::Ricci);
        prop_assert!(fit.consistent);
        prop_assert_eq!(&fit.lambda, &HypExpr::int(2));
    }
}

#[test]
fn eta_ricci_form_rejects_nonzero_mu() {
    let params = [("c1", rat(1)), ("c2", rat(1)), ("c3", rat(1))];
    let fit = golden_fit_at(&params, SolitonForm::EtaRicci);
    assert!(!fit.consistent);
    assert!(golden_fit_at(&params, SolitonForm::ParaRicciLike).consistent);
}

// Reports

#[test]
fn reports_are_deterministic_and_round_trip() {
    let inst = golden_instance();
    for seed in [0, 7, 12345] {
        let a = analysis_report(&analyze(&inst, seed), "analyze").to_json();
        let b = analysis_report(&analyze(&inst, seed), "analyze").to_json();
        assert_eq!(a, b);
        let parsed = Report::from_json(&a).unwrap();
        assert_eq!(parsed.to_json(), a);
        assert_eq!(parsed.seed, Some(seed));
    }
}
