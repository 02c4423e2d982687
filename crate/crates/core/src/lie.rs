//! Lie algebra data in a fixed frame and coordinate realizations of frames.

use crate::scalar::{HypExpr, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("frame index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("structure constant index ({i}, {j}, {k}) out of range for dimension {dim}")]
    TripleOutOfRange { i: usize, j: usize, k: usize, dim: usize },
    #[error("frame matrix must be {dim}x{dim}")]
    DimensionMismatch { dim: usize },
    #[error("frame matrix is not invertible (determinant is zero)")]
    NonInvertibleFrame,
    #[error("[e{i}, e{j}] has non-constant component along e{k}: ({numerator}) / ({determinant})")]
    NonConstantCommutator {
        i: usize,
        j: usize,
        k: usize,
        numerator: String,
        determinant: String,
    },
}

/// `c[i][j][k]` with `[e_i, e_j] = Σ_k c_ij^k e_k`. Indices are 0-based here
/// and 1-based in manifests and reports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    dim: usize,
    data: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            data: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds constants from 1-based sparse triples `(i, j, k, value)`.
    /// Each listed entry is set literally. A mirrored entry `(j, i, k)` that
    /// is not listed is filled with `-value`.
    pub fn from_triples(
        dim: usize,
        triples: &[(usize, usize, usize, Rational)],
    ) -> Result<Self, LieError> {
        let mut sc = StructureConstants::zero(dim);
        let mut explicit = std::collections::BTreeSet::new();
        for (i, j, k, _) in triples {
            if !(1..=dim).contains(i) || !(1..=dim).contains(j) || !(1..=dim).contains(k) {
                return Err(LieError::TripleOutOfRange { i: *i, j: *j, k: *k, dim });
            }
            explicit.insert((*i, *j, *k));
        }
        for (i, j, k, v) in triples {
            sc.set(i - 1, j - 1, k - 1, v.clone());
            if !explicit.contains(&(*j, *i, *k)) {
                sc.set(j - 1, i - 1, k - 1, -v.clone());
            }
        }
        Ok(sc)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.data[self.offset(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let o = self.offset(i, j, k);
        self.data[o] = value;
    }

    /// Bracket of two constant-coefficient vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for (i, ui) in u.iter().enumerate().take(n) {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate().take(n) {
                if vj.is_zero() {
                    continue;
                }
                let uv = ui * vj;
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot += &uv * self.get(i, j, k);
                }
            }
        }
        out
    }

    /// Nonzero entries as 1-based `(i, j, k, value)`, in index order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k);
                    if !v.is_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn scaled(&self, t: &Rational) -> Self {
        StructureConstants {
            dim: self.dim,
            data: self.data.iter().map(|v| v * t).collect(),
        }
    }
}

/// Outcome of [`validate_lie_algebra`]; violations use 1-based indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraReport {
    pub antisymmetry_violations: Vec<[usize; 3]>,
    pub jacobi_violations: Vec<[usize; 4]>,
}

impl LieAlgebraReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_violations.is_empty()
    }
}

/// Checks antisymmetry and the Jacobi identity exactly.
pub fn validate_lie_algebra(sc: &StructureConstants) -> LieAlgebraReport {
    let n = sc.dim();
    let mut report = LieAlgebraReport::default();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                if sc.get(i, j, k) != &-sc.get(j, i, k).clone() {
                    report.antisymmetry_violations.push([i + 1, j + 1, k + 1]);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut total = Rational::zero();
                    for m in 0..n {
                        total += sc.get(i, j, m) * sc.get(m, k, l)
                            + sc.get(j, k, m) * sc.get(m, i, l)
                            + sc.get(k, i, m) * sc.get(m, j, l);
                    }
                    if !total.is_zero() {
                        report.jacobi_violations.push([i + 1, j + 1, k + 1, l + 1]);
                    }
                }
            }
        }
    }
    report
}

/// Frame `e_i = Σ_a E[i][a] ∂_a` on a chart with coordinates `x1..xm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartFrame {
    entries: Vec<Vec<HypExpr>>,
}

impl ChartFrame {
    pub fn new(entries: Vec<Vec<HypExpr>>) -> Result<Self, LieError> {
        let dim = entries.len();
        if dim == 0 || entries.iter().any(|r| r.len() != dim) {
            return Err(LieError::DimensionMismatch { dim });
        }
        Ok(ChartFrame { entries })
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|a| if i == a { HypExpr::one() } else { HypExpr::zero() })
                    .collect()
            })
            .collect();
        ChartFrame { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn component(&self, i: usize, a: usize) -> &HypExpr {
        &self.entries[i][a]
    }

    /// `e_i(f) = Σ_a E_i^a ∂f/∂x^a` (0-based frame index).
    pub fn directional_derivative(&self, i: usize, f: &HypExpr) -> Result<HypExpr, LieError> {
        let row = self.entries.get(i).ok_or(LieError::IndexOutOfRange {
            index: i + 1,
            dim: self.dim(),
        })?;
        let mut out = HypExpr::zero();
        for (a, coef) in row.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            out = out + coef * &f.partial(a as u32 + 1);
        }
        Ok(out)
    }

    pub fn determinant(&self) -> HypExpr {
        determinant(&self.entries)
    }

    /// Coordinate components of `[e_i, e_j]`.
    pub fn coordinate_bracket(&self, i: usize, j: usize) -> Result<Vec<HypExpr>, LieError> {
        let m = self.dim();
        let mut w = Vec::with_capacity(m);
        for a in 0..m {
            let lhs = self.directional_derivative(i, &self.entries[j][a])?;
            let rhs = self.directional_derivative(j, &self.entries[i][a])?;
            w.push(lhs - rhs);
        }
        Ok(w)
    }

    /// Structure constants of the frame, when they are constant.
    ///
    /// Solves `Eᵀ c = w` by the adjugate. Each numerator must be a rational
    /// multiple of the determinant; otherwise the frame is not left-invariant.
    pub fn commutators(&self) -> Result<StructureConstants, LieError> {
        let m = self.dim();
        let det = self.determinant();
        if det.is_zero() {
            return Err(LieError::NonInvertibleFrame);
        }
        // adj(Eᵀ)[k][a] = (-1)^(k+a) · minor of Eᵀ without row a, col k
        //               = (-1)^(k+a) · minor of E without row k, col a
        let mut adj = vec![vec![HypExpr::zero(); m]; m];
        for (k, adj_row) in adj.iter_mut().enumerate() {
            for (a, slot) in adj_row.iter_mut().enumerate() {
                let minor: Vec<Vec<HypExpr>> = (0..m)
                    .filter(|&r| r != k)
                    .map(|r| {
                        (0..m)
                            .filter(|&c| c != a)
                            .map(|c| self.entries[r][c].clone())
                            .collect()
                    })
                    .collect();
                let d = determinant(&minor);
                *slot = if (k + a) % 2 == 0 { d } else { -d };
            }
        }
        let (lead_mono, lead_coef) = det.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut sc = StructureConstants::zero(m);
        for i in 0..m {
            for j in i + 1..m {
                let w = self.coordinate_bracket(i, j)?;
                for (k, adj_row) in adj.iter().enumerate() {
                    let mut numerator = HypExpr::zero();
                    for (a, wa) in w.iter().enumerate() {
                        numerator = numerator + &adj_row[a] * wa;
                    }
                    let ratio = numerator
                        .terms()
                        .find(|(mono, _)| **mono == lead_mono)
                        .map_or_else(Rational::zero, |(_, c)| c / &lead_coef);
                    if numerator != det.scale(&ratio) {
                        return Err(LieError::NonConstantCommutator {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            numerator: numerator.to_string(),
                            determinant: det.to_string(),
                        });
                    }
                    sc.set(j, i, k, -ratio.clone());
                    sc.set(i, j, k, ratio);
                }
            }
        }
        Ok(sc)
    }
}

/// Laplace expansion along the first row.
fn determinant(m: &[Vec<HypExpr>]) -> HypExpr {
    match m.len() {
        0 => HypExpr::one(),
        1 => m[0][0].clone(),
        n => {
            let mut total = HypExpr::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<HypExpr>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(cc, _)| cc != c)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &determinant(&minor);
                total = if c % 2 == 0 { total + term } else { total - term };
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, SymbolContext};

    fn golden_frame() -> ChartFrame {
        let ctx = SymbolContext::new(3, Vec::<String>::new());
        let p = |s: &str| ctx.parse(s).unwrap();
        ChartFrame::new(vec![
            vec![p("cosh(x3)"), p("-sinh(x3)"), p("0")],
            vec![p("-sinh(x3)"), p("cosh(x3)"), p("0")],
            vec![p("0"), p("0"), p("1")],
        ])
        .unwrap()
    }

    #[test]
    fn golden_constants_pass_validation() {
        let sc = StructureConstants::from_triples(
            3,
            &[(3, 1, 2, rat(-1)), (3, 2, 1, rat(-1))],
        )
        .unwrap();
        assert_eq!(sc.get(0, 2, 1), &rat(1));
        assert!(validate_lie_algebra(&sc).passed());
        assert!(validate_lie_algebra(&StructureConstants::zero(3)).passed());
    }

    #[test]
    fn antisymmetry_violation_is_located() {
        let sc = StructureConstants::from_triples(3, &[(1, 2, 3, rat(1)), (2, 1, 3, rat(1))]).unwrap();
        let report = validate_lie_algebra(&sc);
        assert_eq!(report.antisymmetry_violations, vec![[1, 2, 3]]);
    }

    #[test]
    fn jacobi_violation_is_reported() {
        // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e1 is antisymmetric but not Lie.
        let sc = StructureConstants::from_triples(
            3,
            &[(1, 2, 3, rat(1)), (2, 3, 1, rat(1)), (3, 1, 1, rat(1))],
        )
        .unwrap();
        let report = validate_lie_algebra(&sc);
        assert!(report.antisymmetry_violations.is_empty());
        assert!(!report.jacobi_violations.is_empty());
    }

    #[test]
    fn out_of_range_triple() {
        assert!(matches!(
            StructureConstants::from_triples(3, &[(4, 1, 1, rat(1))]),
            Err(LieError::TripleOutOfRange { .. })
        ));
    }

    #[test]
    fn golden_frame_commutators() {
        let f = golden_frame();
        assert_eq!(f.determinant(), HypExpr::one());
        let sc = f.commutators().unwrap();
        let expected =
            StructureConstants::from_triples(3, &[(3, 1, 2, rat(-1)), (3, 2, 1, rat(-1))]).unwrap();
        assert_eq!(sc, expected);
    }

    #[test]
    fn identity_frame_is_abelian() {
        assert_eq!(ChartFrame::identity(3).commutators().unwrap(), StructureConstants::zero(3));
    }

    #[test]
    fn non_unit_determinant_with_commuting_fields() {
        // e1 = x1 ∂1, e2 = ∂2
        let f = ChartFrame::new(vec![
            vec![HypExpr::coord(1), HypExpr::zero()],
            vec![HypExpr::zero(), HypExpr::one()],
        ])
        .unwrap();
        assert_eq!(f.commutators().unwrap(), StructureConstants::zero(2));
    }

    #[test]
    fn non_left_invariant_frame_is_rejected() {
        // e1 = ∂1, e2 = x1 ∂2: [e1,e2] = ∂2 = e2 / x1
        let f = ChartFrame::new(vec![
            vec![HypExpr::one(), HypExpr::zero()],
            vec![HypExpr::zero(), HypExpr::coord(1)],
        ])
        .unwrap();
        assert!(matches!(f.commutators(), Err(LieError::NonConstantCommutator { i: 1, j: 2, k: 2, .. })));
    }

    #[test]
    fn singular_frame_is_rejected() {
        let f = ChartFrame::new(vec![
            vec![HypExpr::one(), HypExpr::one()],
            vec![HypExpr::int(2), HypExpr::int(2)],
        ])
        .unwrap();
        assert_eq!(f.commutators(), Err(LieError::NonInvertibleFrame));
    }

    #[test]
    fn directional_derivatives() {
        let f = golden_frame();
        assert_eq!(f.directional_derivative(2, &HypExpr::sinh(3)).unwrap(), HypExpr::cosh(3));
        assert_eq!(f.directional_derivative(0, &HypExpr::coord(1)).unwrap(), HypExpr::cosh(3));
        for i in 0..3 {
            assert!(f.directional_derivative(i, &HypExpr::param("c1")).unwrap().is_zero());
        }
        assert!(matches!(
            f.directional_derivative(3, &HypExpr::one()),
            Err(LieError::IndexOutOfRange { index: 4, dim: 3 })
        ));
    }

    #[test]
    fn bracket_of_vectors() {
        let sc = golden_frame().commutators().unwrap();
        let e1 = vec![rat(1), rat(0), rat(0)];
        let e3 = vec![rat(0), rat(0), rat(1)];
        assert_eq!(sc.bracket(&e3, &e1), vec![rat(0), rat(-1), rat(0)]);
    }
}
