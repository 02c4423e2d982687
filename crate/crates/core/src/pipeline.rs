//! The `validate` and `analyze` pipelines. Stages run in a fixed order and
//! every downstream check is gated on the verdicts it depends on, so a
//! report lists the same checks in the same order for a given manifest.

use crate::classify::{
    check_einstein_constants, check_ricci_operator, fit_einstein_like, is_para_sasaki_like, EinsteinKind,
    EinsteinLikeFit, ParaSasakiReport,
};
use crate::curvature::{reconstruct_3dim, CurvatureData};
use crate::lie::validate_lie_algebra;
use crate::manifest::Instance;
use crate::report::{dense, dense_expr, sparse, Data, EinsteinData, Entry, Note, Report, SolitonData};
use crate::scalar::{rat, HypExpr};
use crate::soliton::{
    lie_derivative_covariant2, solve_soliton_constants, verify_lie_ricci, verify_potential_theorem,
    verify_ricci_form_and_sections, Gates, PotentialData, SolitonFit, SolitonForm,
};
use crate::structure::{associated_metric, verify_axioms, AssociatedMetric};
use crate::tensor::index_label;
use crate::verdict::Check;

/// Everything computed for one instance.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub instance: Instance,
    pub seed: u64,
    pub associated: Option<AssociatedMetric>,
    pub curvature: Option<CurvatureData>,
    pub para_sasaki: Option<ParaSasakiReport>,
    pub einstein: Option<EinsteinLikeFit>,
    pub potential: Option<PotentialData>,
    pub soliton: Option<SolitonFit>,
    pub checks: Vec<Check>,
    pub notes: Vec<Note>,
    pub sweep_log: Vec<String>,
}

impl Analysis {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn lie_checks(inst: &Instance) -> Vec<Check> {
    let lie = validate_lie_algebra(&inst.structure_constants);
    let label = |v: &[usize]| v.iter().map(ToString::to_string).collect::<String>();
    vec![
        Check::from_mismatch(
            "lie_antisymmetry",
            lie.antisymmetry_violations
                .first()
                .map(|v| format!("c_ij^k + c_ji^k != 0 at {}", label(v))),
        ),
        Check::from_mismatch(
            "lie_jacobi",
            lie.jacobi_violations.first().map(|v| format!("Jacobi sum nonzero at {}", label(v))),
        ),
    ]
}

/// Lie algebra and structure checks; the associated metric is returned
/// when its signature is correct.
pub fn validation(inst: &Instance) -> (Vec<Check>, Option<AssociatedMetric>) {
    let mut checks = lie_checks(inst);
    for a in verify_axioms(&inst.pi).checks {
        checks.push(Check::from_mismatch(a.name, if a.passed { None } else { a.detail }));
    }
    let assoc = associated_metric(&inst.pi);
    checks.push(Check::from_mismatch(
        "associated_metric_signature",
        assoc.as_ref().err().map(ToString::to_string),
    ));
    (checks, assoc.ok())
}

pub fn validate(inst: &Instance) -> Report {
    let (checks, _) = validation(inst);
    Report {
        command: "validate".into(),
        instance: inst.name.clone(),
        seed: None,
        checks,
        golden: Vec::new(),
        data: None,
        notes: Vec::new(),
        sweep_log: Vec::new(),
    }
}

fn structural_checks(inst: &Instance, cd: &CurvatureData) -> Vec<Check> {
    let conn = &cd.connection;
    let label3 = |v: &[usize; 3]| index_label(&[v[0], v[1], v[2]]);
    let mut checks = vec![
        Check::from_mismatch(
            "connection_torsion_free",
            conn.torsion_violations(&inst.structure_constants).first().map(|v| format!("at {}", label3(v))),
        ),
        Check::from_mismatch(
            "connection_metric_compatible",
            conn.metric_violations(inst.pi.g()).first().map(|v| format!("at {}", label3(v))),
        ),
    ];
    let sym = cd.riemann.symmetry_violations();
    checks.push(Check::from_mismatch(
        "curvature_symmetries",
        (!sym.is_empty()).then(|| sym.join("; ")),
    ));
    checks.push(Check::from_mismatch(
        "second_bianchi",
        cd.riemann.second_bianchi_violation(conn).map(|l| format!("at {l}")),
    ));
    checks.push(match reconstruct_3dim(&cd.ricci.ricci, &cd.ricci.tau, inst.pi.g()) {
        Err(_) => Check::skipped("three_dim_reconstruction", "dimension is not 3"),
        Ok(t) => Check::from_mismatch(
            "three_dim_reconstruction",
            t.first_difference(&cd.riemann.down)
                .map(|(idx, a, b)| format!("at {}: reconstructed {a}, actual {b}", index_label(&idx))),
        ),
    });
    checks
}

fn variant_notes(variants: &[Check]) -> Vec<Note> {
    variants
        .iter()
        .map(|v| Note {
            key: v.name.clone(),
            text: match &v.detail {
                Some(d) => format!("alternative sign does not hold: {d}"),
                None => "alternative sign also holds".into(),
            },
        })
        .collect()
}

fn expected_checks(a: &Analysis) -> Vec<Check> {
    let Some(exp) = &a.instance.expected else {
        return Vec::new();
    };
    let cmp = |name: &str, expected: String, actual: String| {
        Check::from_mismatch(
            name,
            (expected != actual).then(|| format!("expected {expected}, got {actual}")),
        )
    };
    let mut out = Vec::new();
    if let Some(want) = exp.para_sasaki_like {
        let got = a.para_sasaki.as_ref().is_some_and(ParaSasakiReport::passed);
        out.push(cmp("expected_para_sasaki_like", want.to_string(), got.to_string()));
    }
    let ricci = a.curvature.as_ref().map(|cd| &cd.ricci);
    let show = |r: Option<&crate::scalar::Rational>| r.map_or("unavailable".into(), ToString::to_string);
    if let Some(t) = &exp.tau {
        out.push(cmp("expected_tau", t.to_string(), show(ricci.map(|r| &r.tau))));
    }
    if let Some(t) = &exp.tau_assoc {
        out.push(cmp("expected_tau_assoc", t.to_string(), show(ricci.map(|r| &r.tau_assoc))));
    }
    if let Some([ea, eb, ec]) = &exp.einstein_like {
        let got = match &a.einstein {
            Some(f) if f.kind != EinsteinKind::None => format!("({}, {}, {})", f.a, f.b, f.c),
            _ => "no fit".into(),
        };
        out.push(cmp("expected_einstein_like", format!("({ea}, {eb}, {ec})"), got));
    }
    if let Some([l, m, n]) = &exp.soliton {
        let got = match &a.soliton {
            Some(f) if f.consistent => format!("({}, {}, {})", f.lambda, f.mu, f.nu),
            _ => "no soliton".into(),
        };
        out.push(cmp("expected_soliton", format!("({l}, {m}, {n})"), got));
    }
    out
}

/// Runs the full pipeline. Validation failures stop it after validation.
pub fn analyze(inst: &Instance, seed: u64) -> Analysis {
    let (mut checks, associated) = validation(inst);
    let mut a = Analysis {
        instance: inst.clone(),
        seed,
        associated: None,
        curvature: None,
        para_sasaki: None,
        einstein: None,
        potential: None,
        soliton: None,
        checks: Vec::new(),
        notes: Vec::new(),
        sweep_log: Vec::new(),
    };
    let Some(assoc) = associated.filter(|_| checks.iter().all(Check::passed)) else {
        a.checks = checks;
        return a;
    };
    let ps = &inst.pi;
    let cd = match CurvatureData::compute(&inst.structure_constants, ps, &assoc.matrix) {
        Ok(cd) => cd,
        Err(e) => {
            checks.push(Check::fail("curvature", e.to_string()));
            a.checks = checks;
            return a;
        }
    };
    checks.extend(structural_checks(inst, &cd));

    let psl = is_para_sasaki_like(ps, &cd);
    checks.push(psl.defining.clone());
    checks.extend(psl.consequences.iter().cloned());
    a.notes.extend(variant_notes(&psl.variants));
    let (q_checks, q_variants) = check_ricci_operator(ps, &cd.connection, &cd.ricci.q, psl.passed());
    checks.extend(q_checks);
    a.notes.extend(variant_notes(&q_variants));

    let einstein = match fit_einstein_like(&cd.ricci.ricci, ps.g(), &assoc.matrix, ps.eta()) {
        Ok(fit) => {
            checks.extend(check_einstein_constants(
                &fit,
                &cd.ricci.tau,
                &cd.ricci.tau_assoc,
                ps.n(),
                psl.passed(),
            ));
            Some(fit)
        }
        Err(e) => {
            checks.push(Check::fail("einstein_like_fit", e.to_string()));
            None
        }
    };
    a.notes.push(Note {
        key: "associated_trace".into(),
        text: format!(
            "tau_assoc is the g_assoc-trace of the Ricci tensor, sum g_assoc^ij rho_ij = {}; \
             the double trace sum g_assoc^il g_assoc^jk R_ijkl = {} is reported as tau_assoc_full",
            cd.ricci.tau_assoc, cd.ricci.tau_assoc_full
        ),
    });

    if let Some(v) = &inst.potential {
        match PotentialData::compute(ps, &cd, inst.chart.as_ref(), v) {
            Err(e) => checks.push(Check::fail("potential", e.to_string())),
            Ok(data) => {
                // L_v g again from the brackets [v, e_i], with g constant.
                let via_brackets = lie_derivative_covariant2(&data.brackets, ps.g());
                let mismatch = (0..ps.dim())
                    .flat_map(|i| (0..ps.dim()).map(move |j| (i, j)))
                    .find(|&(i, j)| via_brackets[i][j] != data.lie_metric[i][j])
                    .map(|(i, j)| format!("at {}", index_label(&[i, j])));
                checks.push(Check::from_mismatch("lie_derivative_metric_via_brackets", mismatch));
                match solve_soliton_constants(
                    &cd.ricci.ricci,
                    &data.lie_metric,
                    ps.g(),
                    &assoc.matrix,
                    ps.eta(),
                    SolitonForm::ParaRicciLike,
                ) {
                    Err(e) => checks.push(Check::fail("soliton_fit", e.to_string())),
                    Ok(fit) => {
                        let gates = Gates {
                            para_sasaki_like: psl.passed(),
                            einstein_like: einstein.as_ref().is_some_and(|f| f.kind != EinsteinKind::None),
                            soliton: fit.consistent,
                        };
                        checks.extend(verify_potential_theorem(&fit, ps, &data, v, gates));
                        let lie_ricci = verify_lie_ricci(ps, &cd, &data, gates);
                        if lie_ricci.iter().any(|c| c.status != crate::verdict::Status::Skipped) {
                            a.notes.push(Note {
                                key: "tau_under_soliton".into(),
                                text: format!(
                                    "with a soliton on a para-Sasaki-like instance tau must equal -2n = {}, not +2n; here tau = {}",
                                    -rat(2 * ps.n() as i64),
                                    cd.ricci.tau
                                ),
                            });
                        }
                        checks.extend(lie_ricci);
                        let sweep = verify_ricci_form_and_sections(ps, &cd, gates, seed);
                        checks.extend(sweep.checks);
                        a.sweep_log = sweep.log;
                        a.soliton = Some(fit);
                    }
                }
                a.potential = Some(data);
            }
        }
    }

    a.associated = Some(assoc);
    a.curvature = Some(cd);
    a.para_sasaki = Some(psl);
    a.einstein = einstein;
    checks.extend(expected_checks(&a));
    a.checks = checks;
    a
}

fn data_of(a: &Analysis) -> Option<Data> {
    let cd = a.curvature.as_ref()?;
    let assoc = a.associated.as_ref()?;
    let sc = a
        .instance
        .structure_constants
        .nonzero_entries()
        .into_iter()
        .map(|(i, j, k, v)| Entry {
            index: index_label(&[i - 1, j - 1, k - 1]),
            value: v.to_string(),
        })
        .collect();
    let soliton = match (&a.instance.potential, &a.potential, &a.soliton) {
        (Some(v), Some(p), Some(f)) => Some(SolitonData {
            potential: v.coeffs.iter().map(HypExpr::to_string).collect(),
            nabla_v: dense_expr(&p.nabla_v),
            lie_derivative_metric: dense_expr(&p.lie_metric),
            form: serde_json::to_value(f.form)
                .ok()
                .and_then(|s| s.as_str().map(String::from))
                .unwrap_or_default(),
            lambda: f.lambda.to_string(),
            mu: f.mu.to_string(),
            nu: f.nu.to_string(),
            consistent: f.consistent,
            failure: f.failure.clone(),
        }),
        _ => None,
    };
    Some(Data {
        structure_constants: sc,
        associated_metric: dense(&assoc.matrix),
        associated_signature: assoc.signature,
        connection: sparse(cd.connection.as_tensor()),
        riemann: sparse(&cd.riemann.down),
        ricci: dense(&cd.ricci.ricci),
        ricci_star: dense(&cd.ricci.ricci_star),
        ricci_operator: dense(&cd.ricci.q),
        tau: cd.ricci.tau.to_string(),
        tau_assoc: cd.ricci.tau_assoc.to_string(),
        tau_assoc_full: cd.ricci.tau_assoc_full.to_string(),
        einstein_like: a.einstein.as_ref().map(|f| EinsteinData {
            kind: serde_json::to_value(f.kind)
                .ok()
                .and_then(|s| s.as_str().map(String::from))
                .unwrap_or_default(),
            a: f.a.to_string(),
            b: f.b.to_string(),
            c: f.c.to_string(),
        }),
        soliton,
    })
}

pub fn analysis_report(a: &Analysis, command: &str) -> Report {
    Report {
        command: command.into(),
        instance: a.instance.name.clone(),
        seed: Some(a.seed),
        checks: a.checks.clone(),
        golden: Vec::new(),
        data: data_of(a),
        notes: a.notes.clone(),
        sweep_log: a.sweep_log.clone(),
    }
}

/// Floating-point values of the potential data under `assignment`. For
/// inspection only; verdicts never depend on it.
pub fn debug_evaluation(
    a: &Analysis,
    assignment: &std::collections::BTreeMap<String, crate::scalar::Rational>,
) -> Vec<String> {
    let mut out = Vec::new();
    let mut show = |label: String, e: &HypExpr| {
        out.push(match e.evaluate(assignment) {
            Ok(x) => format!("{label} ~ {x:.12e}"),
            Err(err) => format!("{label}: {err}"),
        });
    };
    if let Some(v) = &a.instance.potential {
        for (i, c) in v.coeffs.iter().enumerate() {
            show(format!("v^{}", i + 1), c);
        }
    }
    if let Some(p) = &a.potential {
        for (i, row) in p.nabla_v.iter().enumerate() {
            for (k, e) in row.iter().enumerate() {
                show(format!("(nabla_e{} v)^{}", i + 1, k + 1), e);
            }
        }
        for (i, row) in p.lie_metric.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                show(format!("(L_v g)_{}{}", i + 1, j + 1), e);
            }
        }
    }
    if let Some(f) = &a.soliton {
        show("lambda".into(), &f.lambda);
        show("mu".into(), &f.mu);
        show("nu".into(), &f.nu);
    }
    out
}
