//! The built-in reference instance: a solvable three-dimensional Lie group
//! given by a chart frame, with a three-parameter family of potentials. Its
//! table of exact reference values backs `paper-check`.

use crate::curvature::{basis, sectional};
use crate::manifest::{Instance, Manifest};
use crate::pipeline::{analysis_report, analyze, Analysis};
use crate::report::{GoldenRow, Note, Report};
use crate::scalar::{rat, HypExpr, SymbolContext};
use crate::tensor::{index_label, multi_indices, Slot, Tensor};

pub const GOLDEN_MANIFEST: &str = include_str!("../../../manifests/golden.json");

pub fn golden_manifest() -> Manifest {
    Manifest::from_json(GOLDEN_MANIFEST).expect("built-in manifest parses")
}

pub fn golden_instance() -> Instance {
    Instance::from_manifest(&golden_manifest()).expect("built-in manifest is valid")
}

/// The same instance without a potential.
pub fn golden_instance_without_potential() -> Instance {
    let mut m = golden_manifest();
    m.potential = None;
    if let Some(e) = m.expected.as_mut() {
        e.soliton = None;
    }
    Instance::from_manifest(&m).expect("built-in manifest is valid")
}

fn row(name: impl Into<String>, expected: impl ToString, actual: impl ToString, passed: bool) -> GoldenRow {
    GoldenRow {
        name: name.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        passed,
    }
}

fn exact<T: PartialEq + ToString>(name: impl Into<String>, expected: T, actual: Option<T>) -> GoldenRow {
    match actual {
        Some(a) => {
            let passed = a == expected;
            row(name, expected.to_string(), a.to_string(), passed)
        }
        None => row(name, expected.to_string(), "unavailable", false),
    }
}

/// One row per listed component and one row requiring every other
/// component to vanish.
fn tensor_rows(prefix: &str, listed: &[(&[usize], i64)], actual: Option<&Tensor>) -> Vec<GoldenRow> {
    let label = |idx: &[usize]| index_label(&idx.iter().map(|i| i - 1).collect::<Vec<_>>());
    let mut rows: Vec<GoldenRow> = listed
        .iter()
        .map(|(idx, v)| {
            let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            exact(
                format!("{prefix}_{}", label(idx)),
                rat(*v),
                actual.map(|t| t.get(&zero_based).clone()),
            )
        })
        .collect();
    let others = actual.map(|t| {
        t.nonzero()
            .into_iter()
            .filter(|(idx, _)| !listed.iter().any(|(l, _)| l.iter().map(|i| i - 1).eq(idx.iter().copied())))
            .map(|(idx, v)| format!("{}={v}", index_label(&idx)))
            .collect::<Vec<_>>()
    });
    rows.push(match others {
        None => row(format!("{prefix} other components"), "0", "unavailable", false),
        Some(o) if o.is_empty() => row(format!("{prefix} other components"), "0", "0", true),
        Some(o) => row(format!("{prefix} other components"), "0", o.join(", "), false),
    });
    rows
}

/// Fills in every component forced by the curvature symmetries.
fn riemann_closure(listed: &[(&[usize], i64)]) -> Vec<(Vec<usize>, i64)> {
    let mut out: Vec<(Vec<usize>, i64)> = Vec::new();
    for (idx, v) in listed {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        for (t, s) in [
            ([i, j, k, l], 1),
            ([j, i, k, l], -1),
            ([i, j, l, k], -1),
            ([j, i, l, k], 1),
            ([k, l, i, j], 1),
            ([l, k, i, j], -1),
            ([k, l, j, i], -1),
            ([l, k, j, i], 1),
        ] {
            if !out.iter().any(|(e, _)| e[..] == t[..]) {
                out.push((t.to_vec(), s * v));
            }
        }
    }
    out
}

fn check_row(a: &Analysis, name: &str) -> GoldenRow {
    let actual = a
        .check(name)
        .map_or("missing".to_string(), |c| format!("{:?}", c.status).to_lowercase());
    let passed = actual == "pass";
    row(format!("check {name}"), "pass", actual, passed)
}

/// Exact comparison of an analysis of the built-in instance against its
/// reference values.
pub fn golden_rows(a: &Analysis) -> Vec<GoldenRow> {
    let cd = a.curvature.as_ref();
    let mut rows = Vec::new();

    let sc = &a.instance.structure_constants;
    let sc_tensor = Tensor::from_fn(sc.dim(), &[Slot::Down, Slot::Down, Slot::Up], |i| {
        sc.get(i[0], i[1], i[2]).clone()
    });
    // [e3, e1] = -e2, [e3, e2] = -e1, [e1, e2] = 0
    rows.extend(tensor_rows(
        "c",
        &[(&[3, 1, 2], -1), (&[1, 3, 2], 1), (&[3, 2, 1], -1), (&[2, 3, 1], 1)],
        Some(&sc_tensor),
    ));
    rows.extend(tensor_rows(
        "Gamma",
        &[(&[1, 2, 3], -1), (&[2, 1, 3], -1), (&[1, 3, 2], 1), (&[2, 3, 1], 1)],
        cd.map(|c| c.connection.as_tensor()),
    ));

    let independent: [(&[usize], i64); 3] = [(&[1, 2, 2, 1], 1), (&[1, 3, 3, 1], -1), (&[2, 3, 3, 2], -1)];
    let closure = riemann_closure(&independent);
    let mut listed: Vec<(&[usize], i64)> = independent.to_vec();
    listed.extend(
        closure
            .iter()
            .filter(|(idx, _)| !independent.iter().any(|(l, _)| *l == &idx[..]))
            .map(|(idx, v)| (&idx[..], *v)),
    );
    let mut r_rows = tensor_rows("R", &listed, cd.map(|c| &c.riemann.down));
    // Components implied by symmetry are folded into the final row.
    let implied_ok = r_rows[independent.len()..r_rows.len() - 1].iter().all(|r| r.passed);
    let last = r_rows.pop().expect("other-components row");
    r_rows.truncate(independent.len());
    r_rows.push(row(
        "R other independent components",
        "0",
        if implied_ok { last.actual.clone() } else { "symmetric images differ".into() },
        implied_ok && last.passed,
    ));
    rows.extend(r_rows);

    let ricci = cd.map(|c| Tensor::from_matrix(&c.ricci.ricci, [Slot::Down, Slot::Down]));
    rows.extend(tensor_rows("rho", &[(&[3, 3], -2)], ricci.as_ref()));
    rows.push(exact("tau", rat(-2), cd.map(|c| c.ricci.tau.clone())));
    rows.push(exact("tau_assoc", rat(-2), cd.map(|c| c.ricci.tau_assoc.clone())));

    for (i, j, k) in [(1, 2, 1), (1, 3, -1), (2, 3, -1)] {
        let actual = cd.and_then(|c| {
            sectional(&c.riemann, a.instance.pi.g(), &basis(3, i - 1), &basis(3, j - 1)).ok()
        });
        rows.push(exact(format!("k_{i}{j}"), rat(k), actual));
    }

    let fit = a.einstein.as_ref();
    rows.push(exact("einstein a", rat(0), fit.map(|f| f.a.clone())));
    rows.push(exact("einstein b", rat(0), fit.map(|f| f.b.clone())));
    rows.push(exact("einstein c", rat(-2), fit.map(|f| f.c.clone())));

    rows.push(check_row(a, "para_sasaki_like"));
    if a.instance.potential.is_some() {
        rows.extend(soliton_rows(a));
    }
    rows
}

fn soliton_rows(a: &Analysis) -> Vec<GoldenRow> {
    let ctx: &SymbolContext = &a.instance.symbols;
    let p = |s: &str| ctx.parse(s).expect("reference expression parses");
    let v = &a.instance.potential.as_ref().expect("potential present").coeffs;
    let (v1, v2) = (v[0].clone(), v[1].clone());
    let data = a.potential.as_ref();
    let mut rows = Vec::new();

    let nabla_expected = [
        [p("-c1"), p("c2 + c3"), -v2.clone()],
        [p("c2 + c3"), p("-c1"), -v1.clone()],
        [v2, v1, HypExpr::zero()],
    ];
    for (i, expected_row) in nabla_expected.iter().enumerate() {
        for (k, e) in expected_row.iter().enumerate() {
            rows.push(exact(
                format!("nabla_e{} v component {}", i + 1, k + 1),
                e.clone(),
                data.map(|d| d.nabla_v[i][k].clone()),
            ));
        }
    }

    let lvg_expected = [
        [p("-2*c1"), p("2*(c2 + c3)"), HypExpr::zero()],
        [p("2*(c2 + c3)"), p("-2*c1"), HypExpr::zero()],
        [HypExpr::zero(), HypExpr::zero(), HypExpr::zero()],
    ];
    for (i, expected_row) in lvg_expected.iter().enumerate() {
        for (j, e) in expected_row.iter().enumerate() {
            rows.push(exact(
                format!("L_v g {}{}", i + 1, j + 1),
                e.clone(),
                data.map(|d| d.lie_metric[i][j].clone()),
            ));
        }
    }
    // L_v g = -2c1 g + 2(c2+c3) g_assoc + 2(c1-c2-c3) eta⊗eta
    let ps = &a.instance.pi;
    let (g, ga, ee) = (ps.g(), ps.g_assoc(), ps.eta_eta());
    let (x, y, z) = (p("-2*c1"), p("2*(c2 + c3)"), p("2*(c1 - c2 - c3)"));
    let decomposition_ok = data.map(|d| {
        multi_indices(3, 2).all(|idx| {
            let (i, j) = (idx[0], idx[1]);
            d.lie_metric[i][j] == x.scale(&g[(i, j)]) + y.scale(&ga[(i, j)]) + z.scale(&ee[(i, j)])
        })
    });
    rows.push(exact("L_v g decomposition", true, decomposition_ok));

    let fit = a.soliton.as_ref();
    rows.push(exact("lambda", p("c1"), fit.map(|f| f.lambda.clone())));
    rows.push(exact("mu", p("-(c2 + c3)"), fit.map(|f| f.mu.clone())));
    rows.push(exact("nu", p("-(c1 - c2 - c3 - 2)"), fit.map(|f| f.nu.clone())));
    rows.push(exact("soliton consistent", true, fit.map(|f| f.consistent)));
    rows.push(exact(
        "lambda + mu + nu",
        HypExpr::int(2),
        fit.map(|f| &(&f.lambda + &f.mu) + &f.nu),
    ));
    for name in [
        "nabla_xi_v_eq_phi_v",
        "lie_xi_vanishes",
        "lie_ricci_xi_vanishes",
        "ricci_eq_minus_2n_eta_eta",
        "tau_eq_minus_2n_soliton",
        "tau_assoc_eq_minus_2n_soliton",
        "phi_holomorphic_sections_eq_1",
        "xi_sections_eq_minus_1",
    ] {
        rows.push(check_row(a, name));
    }
    rows
}

/// Analyzes the built-in instance and attaches the reference table.
pub fn paper_check(seed: u64) -> Report {
    let analysis = analyze(&golden_instance(), seed);
    paper_check_report(&analysis)
}

pub fn paper_check_report(analysis: &Analysis) -> Report {
    let mut report = analysis_report(analysis, "paper-check");
    report.golden = golden_rows(analysis);
    report.notes.insert(
        0,
        Note {
            key: "frame_labels".into(),
            text: "frame vectors are e1, e2, e3 with xi = e3; a bracket written with e0 refers to e3".into(),
        },
    );
    report
}
