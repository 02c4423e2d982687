//! Levi-Civita connection of a left-invariant metric and its curvature.
//!
//! Conventions, fixed throughout the crate:
//!
//! * `∇_{e_i} e_j = Σ_k Γ_ij^k e_k`
//! * `R(x, y)z = ∇_x∇_y z − ∇_y∇_x z − ∇_[x,y] z`
//! * `R(x, y, z, w) = g(R(x, y)z, w)`
//! * `ρ(y, z) = Σ g^ij R(e_i, y, z, e_j)`, `ρ*(y, z) = Σ g^ij R(e_i, y, z, φe_j)`
//! * `τ = Σ g^ij ρ_ij`, `τ̃ = Σ g̃^ij ρ_ij` (g̃ is the associated metric)

use crate::lie::StructureConstants;
use crate::linalg::Matrix;
use crate::scalar::{rat, Rational};
use crate::structure::PiStructure;
use crate::tensor::{multi_indices, Slot, Tensor};
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("metric is singular")]
    SingularMetric,
    #[error("associated metric is singular")]
    SingularAssociatedMetric,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate plane: g(x,x)g(y,y) - g(x,y)^2 = 0")]
    DegeneratePlane,
    #[error("three-dimensional reconstruction needs dim 3, got {0}")]
    NotThreeDimensional(usize),
}

/// `Γ_ij^k`, stored as a `(0,2)+(1,0)` tensor with slots `[Down, Down, Up]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma: Tensor,
}

impl Connection {
    pub fn from_tensor(gamma: Tensor) -> Self {
        assert_eq!(gamma.slots(), &[Slot::Down, Slot::Down, Slot::Up]);
        Connection { gamma }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &Rational {
        self.gamma.get(&[i, j, k])
    }

    pub fn as_tensor(&self) -> &Tensor {
        &self.gamma
    }

    /// `∇_u v` for constant-coefficient vectors.
    pub fn nabla_vectors(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
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
                    *slot += &uv * self.gamma(i, j, k);
                }
            }
        }
        out
    }

    /// Violations of `Γ_ij^k − Γ_ji^k = c_ij^k` (1-based).
    pub fn torsion_violations(&self, sc: &StructureConstants) -> Vec<[usize; 3]> {
        let n = self.dim();
        multi_indices(n, 3)
            .filter(|i| self.gamma(i[0], i[1], i[2]) - self.gamma(i[1], i[0], i[2]) != *sc.get(i[0], i[1], i[2]))
            .map(|i| [i[0] + 1, i[1] + 1, i[2] + 1])
            .collect()
    }

    /// Violations of `Σ_l Γ_ij^l g_lk + Γ_ik^l g_jl = 0` (1-based).
    pub fn metric_violations(&self, g: &Matrix) -> Vec<[usize; 3]> {
        let n = self.dim();
        multi_indices(n, 3)
            .filter(|idx| {
                let (i, j, k) = (idx[0], idx[1], idx[2]);
                let total = (0..n).fold(Rational::zero(), |acc, l| {
                    acc + self.gamma(i, j, l) * &g[(l, k)] + self.gamma(i, k, l) * &g[(j, l)]
                });
                !total.is_zero()
            })
            .map(|i| [i[0] + 1, i[1] + 1, i[2] + 1])
            .collect()
    }
}

/// Koszul formula for left-invariant fields:
/// `2 g(∇_{e_i} e_j, e_k) = g([e_i,e_j],e_k) − g([e_j,e_k],e_i) + g([e_k,e_i],e_j)`.
pub fn levi_civita(sc: &StructureConstants, g: &Matrix) -> Result<Connection, CurvatureError> {
    let n = sc.dim();
    if g.rows() != n || g.cols() != n {
        return Err(CurvatureError::DimensionMismatch { expected: n, got: g.rows() });
    }
    let g_inv = g.inverse().ok_or(CurvatureError::SingularMetric)?;
    // bracket_g(i, j, k) = g([e_i, e_j], e_k)
    let bracket_g = |i: usize, j: usize, k: usize| {
        (0..n).fold(Rational::zero(), |acc, m| acc + sc.get(i, j, m) * &g[(m, k)])
    };
    let half = Rational::new(1.into(), 2.into());
    let mut lowered = Tensor::zeros(n, &[Slot::Down, Slot::Down, Slot::Down]);
    for idx in multi_indices(n, 3) {
        let (i, j, k) = (idx[0], idx[1], idx[2]);
        let v = (bracket_g(i, j, k) - bracket_g(j, k, i) + bracket_g(k, i, j)) * &half;
        lowered.set(&idx, v);
    }
    let gamma = Tensor::from_fn(n, &[Slot::Down, Slot::Down, Slot::Up], |idx| {
        let (i, j, l) = (idx[0], idx[1], idx[2]);
        (0..n).fold(Rational::zero(), |acc, k| acc + &g_inv[(l, k)] * lowered.get(&[i, j, k]))
    });
    Ok(Connection { gamma })
}

/// Covariant derivative of a frame-constant tensor: only Γ-terms survive.
/// The result gains a leading covariant slot for the derivative direction.
pub fn nabla_tensor(conn: &Connection, t: &Tensor) -> Result<Tensor, CurvatureError> {
    let n = conn.dim();
    if t.dim() != n {
        return Err(CurvatureError::DimensionMismatch { expected: n, got: t.dim() });
    }
    let mut slots = vec![Slot::Down];
    slots.extend_from_slice(t.slots());
    Ok(Tensor::from_fn(n, &slots, |idx| {
        let i = idx[0];
        let rest = &idx[1..];
        let mut total = Rational::zero();
        let mut probe = rest.to_vec();
        for (s, slot) in t.slots().iter().enumerate() {
            let a = rest[s];
            for m in 0..n {
                probe[s] = m;
                let comp = t.get(&probe);
                if comp.is_zero() {
                    continue;
                }
                match slot {
                    Slot::Up => total += conn.gamma(i, m, a) * comp,
                    Slot::Down => total -= conn.gamma(i, a, m) * comp,
                }
            }
            probe[s] = a;
        }
        total
    }))
}

/// Curvature tensor in both `(1,3)` and `(0,4)` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Riemann {
    /// `R_ijk^l`: `R(e_i, e_j) e_k = Σ_l R_ijk^l e_l`.
    pub up: Tensor,
    /// `R_ijkl = g(R(e_i, e_j) e_k, e_l)`.
    pub down: Tensor,
}

pub fn riemann(conn: &Connection, sc: &StructureConstants, g: &Matrix) -> Riemann {
    let n = conn.dim();
    let up = Tensor::from_fn(n, &[Slot::Down, Slot::Down, Slot::Down, Slot::Up], |idx| {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let mut total = Rational::zero();
        for m in 0..n {
            total += conn.gamma(j, k, m) * conn.gamma(i, m, l);
            total -= conn.gamma(i, k, m) * conn.gamma(j, m, l);
            total -= sc.get(i, j, m) * conn.gamma(m, k, l);
        }
        total
    });
    let down = Tensor::from_fn(n, &[Slot::Down; 4], |idx| {
        (0..n).fold(Rational::zero(), |acc, p| {
            acc + up.get(&[idx[0], idx[1], idx[2], p]) * &g[(p, idx[3])]
        })
    });
    Riemann { up, down }
}

impl Riemann {
    pub fn dim(&self) -> usize {
        self.down.dim()
    }

    /// `R(x, y, z, w)` for constant vectors.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational], w: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (idx, v) in self.down.nonzero() {
            total += v * &x[idx[0]] * &y[idx[1]] * &z[idx[2]] * &w[idx[3]];
        }
        total
    }

    /// Named symmetry identities that fail (empty when all hold).
    pub fn symmetry_violations(&self) -> Vec<String> {
        let n = self.dim();
        let r = |i: usize, j: usize, k: usize, l: usize| self.down.get(&[i, j, k, l]).clone();
        let mut out = Vec::new();
        let mut check = |name: &str, ok: &dyn Fn(&[usize]) -> bool| {
            if let Some(idx) = multi_indices(n, 4).find(|idx| !ok(idx)) {
                out.push(format!("{name} at {}", crate::tensor::index_label(&idx)));
            }
        };
        check("R_ijkl = -R_jikl", &|i| r(i[0], i[1], i[2], i[3]) == -r(i[1], i[0], i[2], i[3]));
        check("R_ijkl = -R_ijlk", &|i| r(i[0], i[1], i[2], i[3]) == -r(i[0], i[1], i[3], i[2]));
        check("R_ijkl = R_klij", &|i| r(i[0], i[1], i[2], i[3]) == r(i[2], i[3], i[0], i[1]));
        check("first Bianchi", &|i| {
            (r(i[0], i[1], i[2], i[3]) + r(i[1], i[2], i[0], i[3]) + r(i[2], i[0], i[1], i[3])).is_zero()
        });
        out
    }

    /// Second Bianchi identity `Σ_cyc(i,j,k) (∇_{e_i} R)(e_j, e_k, e_l, e_m) = 0`;
    /// returns the first failing 1-based index label.
    pub fn second_bianchi_violation(&self, conn: &Connection) -> Option<String> {
        let nabla = nabla_tensor(conn, &self.down).expect("dimensions agree");
        let n = self.dim();
        multi_indices(n, 5)
            .find(|idx| {
                let (i, j, k, l, m) = (idx[0], idx[1], idx[2], idx[3], idx[4]);
                let total = nabla.get(&[i, j, k, l, m]).clone()
                    + nabla.get(&[j, k, i, l, m])
                    + nabla.get(&[k, i, j, l, m]);
                !total.is_zero()
            })
            .map(|idx| crate::tensor::index_label(&idx))
    }
}

/// Ricci-type contractions and scalar curvatures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RicciData {
    pub ricci: Matrix,
    pub ricci_star: Matrix,
    /// Ricci operator `Q = g⁻¹ρ`, `Q^i_j`.
    pub q: Matrix,
    pub tau: Rational,
    /// `Σ g̃^ij ρ_ij`.
    pub tau_assoc: Rational,
    /// `Σ g̃^il g̃^jk R_ijkl`, reported next to `tau_assoc`.
    pub tau_assoc_full: Rational,
}

pub fn ricci_and_scalars(
    r: &Riemann,
    ps: &PiStructure,
    g_assoc: &Matrix,
) -> Result<RicciData, CurvatureError> {
    let n = r.dim();
    let g_inv = ps.g().inverse().ok_or(CurvatureError::SingularMetric)?;
    let ga_inv = g_assoc
        .inverse()
        .ok_or(CurvatureError::SingularAssociatedMetric)?;
    let phi = ps.phi();
    let rd = |i: usize, j: usize, k: usize, l: usize| r.down.get(&[i, j, k, l]);
    let ricci = Matrix::from_fn(n, n, |j, k| {
        let mut total = Rational::zero();
        for a in 0..n {
            for b in 0..n {
                total += &g_inv[(a, b)] * rd(a, j, k, b);
            }
        }
        total
    });
    let ricci_star = Matrix::from_fn(n, n, |y, z| {
        let mut total = Rational::zero();
        for a in 0..n {
            for b in 0..n {
                if g_inv[(a, b)].is_zero() {
                    continue;
                }
                for m in 0..n {
                    total += &g_inv[(a, b)] * &phi[(m, b)] * rd(a, y, z, m);
                }
            }
        }
        total
    });
    let q = g_inv.mul(&ricci);
    let contract = |inv: &Matrix| {
        let mut total = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                total += &inv[(i, j)] * &ricci[(i, j)];
            }
        }
        total
    };
    let tau = contract(&g_inv);
    let tau_assoc = contract(&ga_inv);
    let mut tau_assoc_full = Rational::zero();
    for (idx, v) in r.down.nonzero() {
        tau_assoc_full += &ga_inv[(idx[0], idx[3])] * &ga_inv[(idx[1], idx[2])] * v;
    }
    Ok(RicciData {
        ricci,
        ricci_star,
        q,
        tau,
        tau_assoc,
        tau_assoc_full,
    })
}

/// `k(x, y) = R(x, y, y, x) / (g(x,x) g(y,y) − g(x,y)²)`.
pub fn sectional(
    r: &Riemann,
    g: &Matrix,
    x: &[Rational],
    y: &[Rational],
) -> Result<Rational, CurvatureError> {
    let gxy = g.bilinear(x, y);
    let denom = g.bilinear(x, x) * g.bilinear(y, y) - &gxy * &gxy;
    if denom.is_zero() {
        return Err(CurvatureError::DegeneratePlane);
    }
    Ok(r.eval(x, y, y, x) / denom)
}

/// Curvature of a three-dimensional metric from its Ricci tensor:
/// `R(x,y,z,w) = g(y,z)ρ(x,w) − g(x,z)ρ(y,w) + ρ(y,z)g(x,w) − ρ(x,z)g(y,w)
///   − τ/2 {g(y,z)g(x,w) − g(x,z)g(y,w)}`.
pub fn reconstruct_3dim(
    ricci: &Matrix,
    tau: &Rational,
    g: &Matrix,
) -> Result<Tensor, CurvatureError> {
    let n = g.rows();
    if n != 3 {
        return Err(CurvatureError::NotThreeDimensional(n));
    }
    let half_tau = tau / rat(2);
    Ok(Tensor::from_fn(3, &[Slot::Down; 4], |idx| {
        let (x, y, z, w) = (idx[0], idx[1], idx[2], idx[3]);
        &g[(y, z)] * &ricci[(x, w)] - &g[(x, z)] * &ricci[(y, w)] + &ricci[(y, z)] * &g[(x, w)]
            - &ricci[(x, z)] * &g[(y, w)]
            - &half_tau * (&g[(y, z)] * &g[(x, w)] - &g[(x, z)] * &g[(y, w)])
    }))
}

/// Everything derived from `(c, g, φ, ξ, η)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureData {
    pub connection: Connection,
    pub riemann: Riemann,
    pub ricci: RicciData,
}

impl CurvatureData {
    pub fn compute(
        sc: &StructureConstants,
        ps: &PiStructure,
        g_assoc: &Matrix,
    ) -> Result<Self, CurvatureError> {
        let connection = levi_civita(sc, ps.g())?;
        let riemann = riemann(&connection, sc, ps.g());
        let ricci = ricci_and_scalars(&riemann, ps, g_assoc)?;
        Ok(CurvatureData {
            connection,
            riemann,
            ricci,
        })
    }
}

/// `R(x, y)z` for constant vectors.
pub fn riemann_operator(r: &Riemann, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
    let n = r.dim();
    let mut out = vec![Rational::zero(); n];
    for (idx, v) in r.up.nonzero() {
        out[idx[3]] += v * &x[idx[0]] * &y[idx[1]] * &z[idx[2]];
    }
    out
}

/// Unit basis vector `e_i` (0-based).
pub fn basis(n: usize, i: usize) -> Vec<Rational> {
    (0..n)
        .map(|k| if k == i { Rational::one() } else { Rational::zero() })
        .collect()
}
