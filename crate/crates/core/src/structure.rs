//! Almost paracontact almost paracomplex Riemannian structures `(φ, ξ, η, g)`
//! with constant frame components, and the associated metric
//! `g̃(x, y) = g(x, φy) + η(x)η(y)`.

use crate::linalg::{Matrix, Signature};
use crate::scalar::Rational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("dimension must be odd (2n+1 with n >= 1), got {0}")]
    EvenDimension(usize),
    #[error("field `{field}` has dimension {got}, expected {expected}")]
    DimensionMismatch {
        field: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("associated metric has signature ({positive}, {negative}, zero {zero}), expected ({}, {})", .expected.0, .expected.1)]
    SignatureMismatch {
        positive: usize,
        negative: usize,
        zero: usize,
        expected: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiStructure {
    g: Matrix,
    phi: Matrix,
    xi: Vec<Rational>,
    eta: Vec<Rational>,
}

impl PiStructure {
    /// `phi[(i, j)]` is `φ^i_j`, i.e. `φ e_j = Σ_i φ^i_j e_i`. When `eta` is
    /// omitted it defaults to `g·ξ`.
    pub fn new(
        g: Matrix,
        phi: Matrix,
        xi: Vec<Rational>,
        eta: Option<Vec<Rational>>,
    ) -> Result<Self, StructureError> {
        let dim = xi.len();
        if dim < 3 || dim.is_multiple_of(2) {
            return Err(StructureError::EvenDimension(dim));
        }
        let check = |field, m: &Matrix| {
            if m.rows() != dim || m.cols() != dim {
                Err(StructureError::DimensionMismatch {
                    field,
                    expected: dim,
                    got: m.rows().max(m.cols()),
                })
            } else {
                Ok(())
            }
        };
        check("g", &g)?;
        check("phi", &phi)?;
        let eta = eta.unwrap_or_else(|| g.mul_vec(&xi));
        if eta.len() != dim {
            return Err(StructureError::DimensionMismatch {
                field: "eta",
                expected: dim,
                got: eta.len(),
            });
        }
        Ok(PiStructure { g, phi, xi, eta })
    }

    pub fn dim(&self) -> usize {
        self.xi.len()
    }

    /// `n` in `dim = 2n + 1`.
    pub fn n(&self) -> usize {
        (self.dim() - 1) / 2
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn xi(&self) -> &[Rational] {
        &self.xi
    }

    pub fn eta(&self) -> &[Rational] {
        &self.eta
    }

    pub fn eta_eta(&self) -> Matrix {
        Matrix::outer(&self.eta, &self.eta)
    }

    /// `g̃_ij = Σ_k g_ik φ^k_j + η_i η_j`.
    pub fn g_assoc(&self) -> Matrix {
        self.g.mul(&self.phi).add(&self.eta_eta())
    }

    pub fn apply_phi(&self, v: &[Rational]) -> Vec<Rational> {
        self.phi.mul_vec(v)
    }

    pub fn eta_of(&self, v: &[Rational]) -> Rational {
        self.eta
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Expresses the structure in the basis `f_a = Σ_i P^i_a e_i`.
    pub fn rebase(&self, p: &Matrix) -> Option<PiStructure> {
        let p_inv = p.inverse()?;
        Some(PiStructure {
            g: p.transpose().mul(&self.g).mul(p),
            phi: p_inv.mul(&self.phi).mul(p),
            xi: p_inv.mul_vec(&self.xi),
            eta: p.transpose().mul_vec(&self.eta),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// First offending entry (1-based) when failed.
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push_matrix(&mut self, name: &str, actual: &Matrix, expected: &Matrix) {
        let detail = first_mismatch(actual, expected);
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed: detail.is_none(),
            detail,
        });
    }

    fn push_scalar(&mut self, name: &str, actual: &Rational, expected: &Rational) {
        let passed = actual == expected;
        self.checks.push(AxiomCheck {
            name: name.to_string(),
            passed,
            detail: (!passed).then(|| format!("expected {expected}, got {actual}")),
        });
    }
}

fn first_mismatch(actual: &Matrix, expected: &Matrix) -> Option<String> {
    for i in 0..actual.rows() {
        for j in 0..actual.cols() {
            if actual[(i, j)] != expected[(i, j)] {
                return Some(format!(
                    "entry ({}, {}): expected {}, got {}",
                    i + 1,
                    j + 1,
                    expected[(i, j)],
                    actual[(i, j)]
                ));
            }
        }
    }
    None
}

fn column(v: &[Rational]) -> Matrix {
    Matrix::from_fn(v.len(), 1, |i, _| v[i].clone())
}

/// Checks every structure axiom and the derived identities exactly.
pub fn verify_axioms(ps: &PiStructure) -> AxiomReport {
    let dim = ps.dim();
    let g = ps.g();
    let phi = ps.phi();
    let xi = ps.xi();
    let eta = ps.eta();
    let mut r = AxiomReport::default();

    let positive = g.is_positive_definite();
    r.checks.push(AxiomCheck {
        name: "g_positive_definite".into(),
        passed: positive,
        detail: (!positive).then(|| "g is not symmetric positive definite".into()),
    });
    r.push_matrix("phi_xi_zero", &column(&phi.mul_vec(xi)), &Matrix::zeros(dim, 1));
    r.push_matrix(
        "phi_squared",
        &phi.mul(phi),
        &Matrix::identity(dim).sub(&Matrix::outer(xi, eta)),
    );
    r.push_matrix(
        "eta_phi_zero",
        &column(&phi.transpose().mul_vec(eta)),
        &Matrix::zeros(dim, 1),
    );
    r.push_scalar("eta_xi_one", &ps.eta_of(xi), &Rational::one());
    r.push_scalar("trace_phi_zero", &phi.trace(), &Rational::zero());
    r.push_matrix(
        "metric_compatibility",
        &phi.transpose().mul(g).mul(phi),
        &g.sub(&ps.eta_eta()),
    );
    let g_phi = g.mul(phi);
    r.push_matrix("g_phi_symmetric", &g_phi, &g_phi.transpose());
    r.push_matrix("g_xi_eta", &column(&g.mul_vec(xi)), &column(eta));
    r.push_scalar("g_xi_xi_one", &g.bilinear(xi, xi), &Rational::one());
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociatedMetric {
    pub matrix: Matrix,
    pub signature: Signature,
}

/// `g̃` together with its exact signature, which must be `(n+1, n)`.
pub fn associated_metric(ps: &PiStructure) -> Result<AssociatedMetric, StructureError> {
    let matrix = ps.g_assoc();
    let n = ps.n();
    let sig = if matrix.is_symmetric() {
        matrix.signature()
    } else {
        Signature::default()
    };
    if !matrix.is_symmetric() || sig.positive != n + 1 || sig.negative != n || sig.zero != 0 {
        return Err(StructureError::SignatureMismatch {
            positive: sig.positive,
            negative: sig.negative,
            zero: sig.zero,
            expected: (n + 1, n),
        });
    }
    Ok(AssociatedMetric {
        matrix,
        signature: sig,
    })
}
