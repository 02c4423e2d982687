//! Potential vector fields, their Lie derivatives, the exact `(λ, μ, ν)`
//! solver for `ρ = −½ L_v g − λ g − μ g̃ − ν η⊗η`, and the theorem checks
//! that apply once a soliton is found on a para-Sasaki-like instance.

use crate::classify::stacked_columns;
use crate::curvature::{sectional, Connection, CurvatureData};
use crate::lie::{ChartFrame, LieError};
use crate::linalg::{solve_exact, Matrix, SolveError};
use crate::sampling::{format_vector, RationalSampler};
use crate::scalar::{rat, ratio, HypExpr, Rational};
use crate::structure::PiStructure;
use crate::tensor::index_label;
use crate::verdict::Check;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Square matrix of ring elements, row-major.
pub type ExprMatrix = Vec<Vec<HypExpr>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolitonError {
    #[error("potential has non-constant coefficients but no chart frame is given")]
    MissingChart,
    #[error("potential has {got} coefficients, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("soliton basis tensors are linearly dependent (rank {rank} of {unknowns})")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error(transparent)]
    Frame(#[from] LieError),
}

/// `v = Σ v^i e_i` with ring coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    pub coeffs: Vec<HypExpr>,
}

impl VectorField {
    pub fn new(coeffs: Vec<HypExpr>) -> Self {
        VectorField { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        VectorField::new(vec![HypExpr::zero(); dim])
    }

    pub fn constant(v: &[Rational]) -> Self {
        VectorField::new(v.iter().cloned().map(HypExpr::constant).collect())
    }

    /// `k ξ` for a ring element `k`.
    pub fn collinear(k: &HypExpr, xi: &[Rational]) -> Self {
        VectorField::new(xi.iter().map(|c| k.scale(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// True when no coefficient depends on coordinates.
    pub fn is_chart_free(&self) -> bool {
        self.coeffs.iter().all(HypExpr::is_parameter_only)
    }

    pub fn linear_combination(a: &Rational, v: &VectorField, b: &Rational, w: &VectorField) -> Self {
        VectorField::new(
            v.coeffs
                .iter()
                .zip(&w.coeffs)
                .map(|(x, y)| x.scale(a) + y.scale(b))
                .collect(),
        )
    }
}

fn constant_expr(r: &Rational) -> HypExpr {
    HypExpr::constant(r.clone())
}

fn apply_constant(m: &Matrix, v: &[HypExpr]) -> Vec<HypExpr> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(HypExpr::zero(), |acc, j| acc + v[j].scale(&m[(i, j)]))
        })
        .collect()
}

/// Row `i` holds the components of `∇_{e_i} v`:
/// `(∇_{e_i} v)^k = e_i(v^k) + Σ_j v^j Γ_ij^k`.
pub fn nabla_vector_field(
    conn: &Connection,
    chart: Option<&ChartFrame>,
    v: &VectorField,
) -> Result<ExprMatrix, SolitonError> {
    let n = conn.dim();
    if v.dim() != n {
        return Err(SolitonError::DimensionMismatch {
            expected: n,
            got: v.dim(),
        });
    }
    if chart.is_none() && !v.is_chart_free() {
        return Err(SolitonError::MissingChart);
    }
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let mut entry = match chart {
                Some(cf) => cf.directional_derivative(i, &v.coeffs[k])?,
                None => HypExpr::zero(),
            };
            for j in 0..n {
                let gamma = conn.gamma(i, j, k);
                if !num_traits::Zero::is_zero(gamma) {
                    entry = entry + v.coeffs[j].scale(gamma);
                }
            }
            row.push(entry);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// `(L_v g)_ij = g(∇_i v, e_j) + g(e_i, ∇_j v)`.
pub fn lie_derivative_metric(nabla_v: &[Vec<HypExpr>], g: &Matrix) -> ExprMatrix {
    let n = g.rows();
    let lowered: Vec<Vec<HypExpr>> = nabla_v.iter().map(|row| apply_constant(g, row)).collect();
    (0..n)
        .map(|i| (0..n).map(|j| &lowered[i][j] + &lowered[j][i]).collect())
        .collect()
}

/// `[v, e_i] = ∇_v e_i − ∇_{e_i} v`.
pub fn lie_bracket_with_frame(
    conn: &Connection,
    nabla_v: &[Vec<HypExpr>],
    v: &VectorField,
    i: usize,
) -> Vec<HypExpr> {
    let n = conn.dim();
    (0..n)
        .map(|k| {
            let along_v = (0..n).fold(HypExpr::zero(), |acc, j| {
                acc + v.coeffs[j].scale(conn.gamma(j, i, k))
            });
            along_v - nabla_v[i][k].clone()
        })
        .collect()
}

/// All brackets `[v, e_i]`, indexed by `i`.
pub fn frame_brackets(conn: &Connection, nabla_v: &[Vec<HypExpr>], v: &VectorField) -> ExprMatrix {
    (0..conn.dim())
        .map(|i| lie_bracket_with_frame(conn, nabla_v, v, i))
        .collect()
}

/// `L_v u = [v, u]` for a vector with constant frame components.
pub fn lie_derivative_vector(brackets: &[Vec<HypExpr>], u: &[Rational]) -> Vec<HypExpr> {
    let n = u.len();
    (0..n)
        .map(|k| (0..n).fold(HypExpr::zero(), |acc, i| acc + brackets[i][k].scale(&u[i])))
        .collect()
}

/// `(L_v θ)_i = −θ([v, e_i])` for a constant covector `θ`.
pub fn lie_derivative_covector(brackets: &[Vec<HypExpr>], theta: &[Rational]) -> Vec<HypExpr> {
    brackets
        .iter()
        .map(|b| -(0..theta.len()).fold(HypExpr::zero(), |acc, k| acc + b[k].scale(&theta[k])))
        .collect()
}

/// `(L_v T)_ij = −T([v,e_i], e_j) − T(e_i, [v,e_j])` for a constant `(0,2)` tensor.
pub fn lie_derivative_covariant2(brackets: &[Vec<HypExpr>], t: &Matrix) -> ExprMatrix {
    let n = t.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = HypExpr::zero();
                    for k in 0..n {
                        acc = acc - brackets[i][k].scale(&t[(k, j)]) - brackets[j][k].scale(&t[(i, k)]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Which constants are free in the solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolitonForm {
    /// `(λ, μ, ν)` all free.
    ParaRicciLike,
    /// `μ = 0`.
    EtaRicci,
    /// `μ = ν = 0`.
    Ricci,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolitonFit {
    pub form: SolitonForm,
    pub lambda: HypExpr,
    pub mu: HypExpr,
    pub nu: HypExpr,
    pub consistent: bool,
    /// `ρ + ½ L_v g + λ g + μ g̃ + ν η⊗η`.
    pub residual: ExprMatrix,
    /// Why no constant soliton exists, when `consistent` is false.
    pub failure: Option<String>,
}

fn residual(
    rho: &Matrix,
    lvg: &[Vec<HypExpr>],
    basis: [&Matrix; 3],
    consts: [&HypExpr; 3],
) -> ExprMatrix {
    let n = rho.rows();
    let half = ratio(1, 2);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = constant_expr(&rho[(i, j)]) + lvg[i][j].scale(&half);
                    for (m, c) in basis.iter().zip(consts) {
                        acc = acc + c.scale(&m[(i, j)]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Solves `ρ + ½ L_v g + λ g + μ g̃ + ν η⊗η = 0` exactly. The coefficient
/// matrix is rational and the right-hand sides are ring elements, so the
/// constants come out as ring elements; they count as a soliton only when
/// they depend on parameters alone.
pub fn solve_soliton_constants(
    rho: &Matrix,
    lvg: &[Vec<HypExpr>],
    g: &Matrix,
    g_assoc: &Matrix,
    eta: &[Rational],
    form: SolitonForm,
) -> Result<SolitonFit, SolitonError> {
    let n = g.rows();
    let eta_eta = Matrix::outer(eta, eta);
    let all = [g, g_assoc, &eta_eta];
    let free: &[usize] = match form {
        SolitonForm::ParaRicciLike => &[0, 1, 2],
        SolitonForm::EtaRicci => &[0, 2],
        SolitonForm::Ricci => &[0],
    };
    let columns: Vec<&Matrix> = free.iter().map(|&c| all[c]).collect();
    let system = stacked_columns(&columns);
    let half = ratio(1, 2);
    let rhs: Vec<HypExpr> = (0..n * n)
        .map(|r| {
            let (i, j) = (r / n, r % n);
            -(constant_expr(&rho[(i, j)]) + lvg[i][j].scale(&half))
        })
        .collect();
    let zero = HypExpr::zero();
    let zero_fit = |failure: String| SolitonFit {
        form,
        lambda: HypExpr::zero(),
        mu: HypExpr::zero(),
        nu: HypExpr::zero(),
        consistent: false,
        residual: residual(rho, lvg, all, [&zero, &zero, &zero]),
        failure: Some(failure),
    };
    match solve_exact(&system, &rhs) {
        Ok(solution) => {
            let mut consts = [HypExpr::zero(), HypExpr::zero(), HypExpr::zero()];
            for (slot, value) in free.iter().zip(solution) {
                consts[*slot] = value;
            }
            if let Some(bad) = consts.iter().find(|c| !c.is_parameter_only()) {
                return Ok(zero_fit(format!(
                    "no constant soliton: solution component {bad} depends on coordinates"
                )));
            }
            let [lambda, mu, nu] = consts;
            let res = residual(rho, lvg, all, [&lambda, &mu, &nu]);
            let consistent = res.iter().flatten().all(HypExpr::is_zero);
            Ok(SolitonFit {
                form,
                lambda,
                mu,
                nu,
                consistent,
                residual: res,
                failure: None,
            })
        }
        Err(SolveError::Inconsistent) => {
            Ok(zero_fit("no constant soliton: the linear system is inconsistent".into()))
        }
        Err(SolveError::RankDeficient { rank, unknowns }) => {
            Err(SolitonError::RankDeficient { rank, unknowns })
        }
    }
}

fn first_nonzero(entries: impl IntoIterator<Item = (Vec<usize>, HypExpr)>) -> Option<String> {
    entries
        .into_iter()
        .find(|(_, e)| !e.is_zero())
        .map(|(idx, e)| format!("at {}: {e} is not zero", index_label(&idx)))
}

/// Everything derived from one potential on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialData {
    pub nabla_v: ExprMatrix,
    pub lie_metric: ExprMatrix,
    pub brackets: ExprMatrix,
    pub lie_xi: Vec<HypExpr>,
    pub lie_eta: Vec<HypExpr>,
    pub lie_ricci: ExprMatrix,
}

impl PotentialData {
    pub fn compute(
        ps: &PiStructure,
        cd: &CurvatureData,
        chart: Option<&ChartFrame>,
        v: &VectorField,
    ) -> Result<Self, SolitonError> {
        let nabla_v = nabla_vector_field(&cd.connection, chart, v)?;
        let lie_metric = lie_derivative_metric(&nabla_v, ps.g());
        let brackets = frame_brackets(&cd.connection, &nabla_v, v);
        Ok(PotentialData {
            lie_xi: lie_derivative_vector(&brackets, ps.xi()),
            lie_eta: lie_derivative_covector(&brackets, ps.eta()),
            lie_ricci: lie_derivative_covariant2(&brackets, &cd.ricci.ricci),
            nabla_v,
            lie_metric,
            brackets,
        })
    }
}

/// Preconditions shared by the soliton theorem checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gates {
    pub para_sasaki_like: bool,
    pub einstein_like: bool,
    pub soliton: bool,
}

impl Gates {
    fn soliton_reason(&self) -> Option<&'static str> {
        if !self.para_sasaki_like {
            Some("requires a para-Sasaki-like structure")
        } else if !self.soliton {
            Some("requires a consistent soliton fit")
        } else {
            None
        }
    }

    fn einstein_reason(&self) -> Option<&'static str> {
        self.soliton_reason().or((!self.einstein_like).then_some("requires an Einstein-like fit"))
    }
}

fn skip_all(names: &[&str], reason: &str) -> Vec<Check> {
    names.iter().map(|n| Check::skipped(*n, reason)).collect()
}

/// `λ + μ + ν = 2n`, `∇_ξ v = φ v`, `L_v ξ = 0`, and the identity
/// `L_v ξ = φ v − ∇_ξ v` that ties the last two together.
pub fn verify_potential_theorem(
    fit: &SolitonFit,
    ps: &PiStructure,
    data: &PotentialData,
    v: &VectorField,
    gates: Gates,
) -> Vec<Check> {
    const NAMES: [&str; 4] = [
        "soliton_constants_sum",
        "nabla_xi_v_eq_phi_v",
        "lie_xi_vanishes",
        "lie_xi_eq_phi_v_minus_nabla_xi_v",
    ];
    if let Some(reason) = gates.soliton_reason() {
        return skip_all(&NAMES, reason);
    }
    let n = ps.dim();
    let two_n = constant_expr(&rat(2 * ps.n() as i64));
    let sum = &(&fit.lambda + &fit.mu) + &fit.nu;
    let excess = &sum - &two_n;
    let sum_check = Check::from_mismatch(
        NAMES[0],
        (!excess.is_zero()).then(|| format!("λ + μ + ν = {sum}, expected {two_n}")),
    );
    let nabla_xi_v: Vec<HypExpr> = (0..n)
        .map(|k| (0..n).fold(HypExpr::zero(), |acc, i| acc + data.nabla_v[i][k].scale(&ps.xi()[i])))
        .collect();
    let phi_v = apply_constant(ps.phi(), &v.coeffs);
    let diff = (0..n).map(|k| (vec![k], &nabla_xi_v[k] - &phi_v[k]));
    let lie_xi = (0..n).map(|k| (vec![k], data.lie_xi[k].clone()));
    let equivalence = (0..n).map(|k| (vec![k], &data.lie_xi[k] - &(&phi_v[k] - &nabla_xi_v[k])));
    vec![
        sum_check,
        Check::from_mismatch(NAMES[1], first_nonzero(diff)),
        Check::from_mismatch(NAMES[2], first_nonzero(lie_xi)),
        Check::from_mismatch(NAMES[3], first_nonzero(equivalence)),
    ]
}

/// `(L_v ρ)(e_i, ξ) = 0` on frame arguments and `τ = −2n`.
pub fn verify_lie_ricci(ps: &PiStructure, cd: &CurvatureData, data: &PotentialData, gates: Gates) -> Vec<Check> {
    const NAMES: [&str; 2] = ["lie_ricci_xi_vanishes", "tau_eq_minus_2n"];
    if let Some(reason) = gates.soliton_reason() {
        return skip_all(&NAMES, reason);
    }
    let n = ps.dim();
    let entries = (0..n).map(|i| {
        let e = (0..n).fold(HypExpr::zero(), |acc, j| acc + data.lie_ricci[i][j].scale(&ps.xi()[j]));
        (vec![i], e)
    });
    let expected = -rat(2 * ps.n() as i64);
    vec![
        Check::from_mismatch(NAMES[0], first_nonzero(entries)),
        Check::from_mismatch(
            NAMES[1],
            (cd.ricci.tau != expected).then(|| format!("τ = {}, expected {expected}", cd.ricci.tau)),
        ),
    ]
}

/// Outcome of the Ricci-form and sectional-curvature checks, with a log of
/// redrawn degenerate planes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub checks: Vec<Check>,
    pub log: Vec<String>,
}

pub const SWEEP_SAMPLES: usize = 20;
const MAX_DRAWS: usize = 1000;

/// `ρ = −2n η⊗η`, `τ = τ̃ = −2n`, and for `dim = 3` a seeded sweep asserting
/// `k(φx, φ²x) = 1` and `k(x, ξ) = −1`.
pub fn verify_ricci_form_and_sections(
    ps: &PiStructure,
    cd: &CurvatureData,
    gates: Gates,
    seed: u64,
) -> SweepOutcome {
    const NAMES: [&str; 5] = [
        "ricci_eq_minus_2n_eta_eta",
        "tau_eq_minus_2n_soliton",
        "tau_assoc_eq_minus_2n_soliton",
        "phi_holomorphic_sections_eq_1",
        "xi_sections_eq_minus_1",
    ];
    if let Some(reason) = gates.einstein_reason() {
        return SweepOutcome {
            checks: skip_all(&NAMES, reason),
            log: Vec::new(),
        };
    }
    let two_n = rat(2 * ps.n() as i64);
    let target = ps.eta_eta().scale(&-two_n.clone());
    let rho = &cd.ricci.ricci;
    let ricci_mismatch = crate::classify::first_mismatch(
        ps.dim(),
        2,
        |i| rho[(i[0], i[1])].clone(),
        |i| target[(i[0], i[1])].clone(),
    );
    let scalar_check = |name: &str, actual: &Rational| {
        Check::from_mismatch(
            name,
            (*actual != -two_n.clone()).then(|| format!("{actual}, expected {}", -two_n.clone())),
        )
    };
    let mut checks = vec![
        Check::from_mismatch(NAMES[0], ricci_mismatch),
        scalar_check(NAMES[1], &cd.ricci.tau),
        scalar_check(NAMES[2], &cd.ricci.tau_assoc),
    ];
    let mut log = Vec::new();
    if ps.dim() != 3 {
        checks.extend(skip_all(&NAMES[3..], "sectional sweep applies to dimension 3"));
        return SweepOutcome { checks, log };
    }
    let mut sampler = RationalSampler::new(seed);
    let phi_plane = |x: &[Rational]| {
        let px = ps.apply_phi(x);
        let ppx = ps.apply_phi(&px);
        (px, ppx)
    };
    checks.push(sweep(
        NAMES[3],
        "phi-holomorphic",
        &mut sampler,
        &mut log,
        |x| {
            let (a, b) = phi_plane(x);
            sectional(&cd.riemann, ps.g(), &a, &b).ok()
        },
        &rat(1),
    ));
    checks.push(sweep(
        NAMES[4],
        "xi",
        &mut sampler,
        &mut log,
        |x| sectional(&cd.riemann, ps.g(), x, ps.xi()).ok(),
        &rat(-1),
    ));
    SweepOutcome { checks, log }
}

fn sweep(
    name: &str,
    label: &str,
    sampler: &mut RationalSampler,
    log: &mut Vec<String>,
    curvature: impl Fn(&[Rational]) -> Option<Rational>,
    expected: &Rational,
) -> Check {
    let mut accepted = 0;
    for draw in 1..=MAX_DRAWS {
        let x = sampler.vector(3);
        match curvature(&x) {
            None => log.push(format!(
                "{label} draw {draw}: x = {} spans a degenerate plane, redrawn",
                format_vector(&x)
            )),
            Some(k) if k != *expected => {
                return Check::fail(
                    name,
                    format!("x = {}: k = {k}, expected {expected}", format_vector(&x)),
                )
            }
            Some(_) => {
                accepted += 1;
                if accepted == SWEEP_SAMPLES {
                    return Check::pass(name);
                }
            }
        }
    }
    Check::fail(
        name,
        format!("only {accepted} nondegenerate planes in {MAX_DRAWS} draws"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::StructureConstants;
    use crate::scalar::SymbolContext;

    fn golden() -> (PiStructure, CurvatureData, ChartFrame) {
        let ctx = SymbolContext::new(3, Vec::<String>::new());
        let rows = [
            ["cosh(x3)", "-sinh(x3)", "0"],
            ["-sinh(x3)", "cosh(x3)", "0"],
            ["0", "0", "1"],
        ];
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| ctx.parse(s).unwrap()).collect())
            .collect();
        let chart = ChartFrame::new(entries).unwrap();
        let sc = chart.commutators().unwrap();
        let ps = PiStructure::new(
            Matrix::identity(3),
            Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
            vec![rat(0), rat(0), rat(1)],
            None,
        )
        .unwrap();
        let cd = CurvatureData::compute(&sc, &ps, &ps.g_assoc()).unwrap();
        (ps, cd, chart)
    }

    fn all_gates() -> Gates {
        Gates {
            para_sasaki_like: true,
            einstein_like: true,
            soliton: true,
        }
    }

    #[test]
    fn xi_potential() {
        let (ps, cd, _) = golden();
        let v = VectorField::constant(ps.xi());
        let data = PotentialData::compute(&ps, &cd, None, &v).unwrap();
        // ∇_{e_i} ξ = φ e_i
        for i in 0..3 {
            for k in 0..3 {
                assert_eq!(data.nabla_v[i][k], HypExpr::constant(ps.phi()[(k, i)].clone()));
            }
        }
        // L_ξ g = 2(g̃ − η⊗η)
        let expected = ps.g_assoc().sub(&ps.eta_eta()).scale(&rat(2));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(data.lie_metric[i][j], HypExpr::constant(expected[(i, j)].clone()));
            }
        }
        assert!(data.lie_xi.iter().all(HypExpr::is_zero));
        let fit = solve_soliton_constants(
            &cd.ricci.ricci,
            &data.lie_metric,
            ps.g(),
            &ps.g_assoc(),
            ps.eta(),
            SolitonForm::ParaRicciLike,
        )
        .unwrap();
        assert!(fit.consistent);
        assert_eq!(
            (fit.lambda.clone(), fit.mu.clone(), fit.nu.clone()),
            (HypExpr::int(0), HypExpr::int(-1), HypExpr::int(3))
        );
        let checks = verify_potential_theorem(&fit, &ps, &data, &v, all_gates());
        assert!(checks.iter().all(Check::passed), "{checks:?}");
    }

    #[test]
    fn zero_potential_in_each_form() {
        let (ps, cd, _) = golden();
        let v = VectorField::zero(3);
        let data = PotentialData::compute(&ps, &cd, None, &v).unwrap();
        assert!(data.lie_metric.iter().flatten().all(HypExpr::is_zero));
        let solve = |form| {
            solve_soliton_constants(&cd.ricci.ricci, &data.lie_metric, ps.g(), &ps.g_assoc(), ps.eta(), form)
                .unwrap()
        };
        let full = solve(SolitonForm::ParaRicciLike);
        assert!(full.consistent);
        assert_eq!((full.lambda, full.mu, full.nu), (HypExpr::int(0), HypExpr::int(0), HypExpr::int(2)));
        let eta_ricci = solve(SolitonForm::EtaRicci);
        assert!(eta_ricci.consistent);
        assert_eq!(eta_ricci.nu, HypExpr::int(2));
        let ricci = solve(SolitonForm::Ricci);
        assert!(!ricci.consistent);
        assert!(ricci.residual.iter().flatten().any(|e| !e.is_zero()));
    }

    #[test]
    fn constant_field_on_flat_instance() {
        let sc = StructureConstants::zero(3);
        let (ps, _, _) = golden();
        let cd = CurvatureData::compute(&sc, &ps, &ps.g_assoc()).unwrap();
        let v = VectorField::constant(&[rat(1), rat(0), rat(0)]);
        let nv = nabla_vector_field(&cd.connection, None, &v).unwrap();
        assert!(nv.iter().flatten().all(HypExpr::is_zero));
    }

    #[test]
    fn coordinate_potential_needs_chart() {
        let (_, cd, _) = golden();
        let v = VectorField::new(vec![HypExpr::coord(1), HypExpr::zero(), HypExpr::zero()]);
        assert_eq!(nabla_vector_field(&cd.connection, None, &v), Err(SolitonError::MissingChart));
        let p = VectorField::new(vec![HypExpr::param("k"), HypExpr::zero(), HypExpr::zero()]);
        assert!(nabla_vector_field(&cd.connection, None, &p).is_ok());
    }

    #[test]
    fn coordinate_dependent_solution_is_not_a_soliton() {
        let (ps, cd, chart) = golden();
        // v = x1 e3 gives a ½ L_v g with a non-constant η⊗η coefficient
        let v = VectorField::new(vec![HypExpr::zero(), HypExpr::zero(), HypExpr::coord(3)]);
        let data = PotentialData::compute(&ps, &cd, Some(&chart), &v).unwrap();
        let fit = solve_soliton_constants(
            &cd.ricci.ricci,
            &data.lie_metric,
            ps.g(),
            &ps.g_assoc(),
            ps.eta(),
            SolitonForm::ParaRicciLike,
        )
        .unwrap();
        assert!(!fit.consistent);
        assert!(fit.failure.unwrap().starts_with("no constant soliton"));
    }

    #[test]
    fn sections_on_golden() {
        let (ps, cd, _) = golden();
        let out = verify_ricci_form_and_sections(&ps, &cd, all_gates(), 0);
        assert!(out.checks.iter().all(Check::passed), "{:?}", out.checks);
        assert_eq!(out, verify_ricci_form_and_sections(&ps, &cd, all_gates(), 0));
    }

    #[test]
    fn gates_skip() {
        let (ps, cd, _) = golden();
        let gates = Gates {
            para_sasaki_like: true,
            einstein_like: false,
            soliton: true,
        };
        let out = verify_ricci_form_and_sections(&ps, &cd, gates, 0);
        assert!(out.checks.iter().all(|c| c.status == crate::verdict::Status::Skipped));
    }
}
