#![allow(dead_code)]

use parasol_core::curvature::CurvatureData;
use parasol_core::lie::StructureConstants;
use parasol_core::linalg::Matrix;
use parasol_core::scalar::{rat, ratio, Expr, HypExpr, Rational, SymbolContext};
use parasol_core::structure::PiStructure;
use parasol_core::tensor::{Slot, Tensor};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// g = I, φ swaps e1 and e2, ξ = e3.
pub fn reference_structure() -> PiStructure {
    PiStructure::new(
        Matrix::identity(3),
        Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
        vec![rat(0), rat(0), rat(1)],
        None,
    )
    .unwrap()
}

/// `[e3, e1] = -t e2`, `[e3, e2] = -t e1`.
pub fn scaled_family(t: &Rational) -> StructureConstants {
    StructureConstants::from_triples(3, &[(3, 1, 2, -t.clone()), (3, 2, 1, -t.clone())]).unwrap()
}

pub fn curvature(sc: &StructureConstants, ps: &PiStructure) -> CurvatureData {
    CurvatureData::compute(sc, ps, &ps.g_assoc()).unwrap()
}

// Independent curvature oracle: the connection comes from the operator form
// ∇_x y = ½([x,y] − ad_x^* y − ad_y^* x), with ad^* the g-adjoint, and the
// curvature from R(e_i,e_j) = N_i N_j − N_j N_i − Σ_m c_ij^m N_m.

fn ad(sc: &StructureConstants, i: usize) -> Matrix {
    let n = sc.dim();
    // column j is [e_i, e_j]
    Matrix::from_fn(n, n, |k, j| sc.get(i, j, k).clone())
}

/// `N_i` with column `j` equal to `∇_{e_i} e_j`.
pub fn oracle_nabla(sc: &StructureConstants, g: &Matrix) -> Vec<Matrix> {
    let n = sc.dim();
    let g_inv = g.inverse().unwrap();
    let adjoint = |i: usize| g_inv.mul(&ad(sc, i).transpose()).mul(g);
    let half = ratio(1, 2);
    (0..n)
        .map(|i| {
            let ad_i = ad(sc, i);
            let ad_i_star = adjoint(i);
            Matrix::from_fn(n, n, |k, j| {
                let ad_j_star = adjoint(j);
                (&ad_i[(k, j)] - &ad_i_star[(k, j)] - &ad_j_star[(k, i)]) * &half
            })
        })
        .collect()
}

/// `R_ijkl = g(R(e_i, e_j) e_k, e_l)`.
pub fn oracle_riemann(sc: &StructureConstants, g: &Matrix) -> Tensor {
    let n = sc.dim();
    let nab = oracle_nabla(sc, g);
    let mut ops = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let mut op = nab[i].mul(&nab[j]).sub(&nab[j].mul(&nab[i]));
            for (m, nab_m) in nab.iter().enumerate() {
                op = op.sub(&nab_m.scale(sc.get(i, j, m)));
            }
            ops.push(op);
        }
    }
    Tensor::from_fn(n, &[Slot::Down; 4], |idx| {
        let op = &ops[idx[0] * n + idx[1]];
        (0..n).fold(rat(0), |acc, a| acc + &op[(a, idx[2])] * &g[(a, idx[3])])
    })
}

/// Full contraction `Σ h^il h^jk R_ijkl` for an inverse metric `h`.
pub fn double_trace(r: &Tensor, h: &Matrix) -> Rational {
    let mut total = rat(0);
    for (idx, v) in r.nonzero() {
        total += &h[(idx[0], idx[3])] * &h[(idx[1], idx[2])] * v;
    }
    total
}

/// `ρ_jk = Σ g^ab R_ajkb`.
pub fn ricci_of(r: &Tensor, g_inv: &Matrix) -> Matrix {
    let n = g_inv.rows();
    Matrix::from_fn(n, n, |j, k| {
        let mut t = rat(0);
        for a in 0..n {
            for b in 0..n {
                t += &g_inv[(a, b)] * r.get(&[a, j, k, b]);
            }
        }
        t
    })
}

pub fn trace_with(m: &Matrix, h: &Matrix) -> Rational {
    let n = m.rows();
    let mut t = rat(0);
    for i in 0..n {
        for j in 0..n {
            t += &h[(i, j)] * &m[(i, j)];
        }
    }
    t
}

// Expressions over three coordinates and parameters c1, c2.

pub fn context() -> SymbolContext {
    SymbolContext::new(3, ["c1", "c2"])
}

const LEAVES: [&str; 4] = ["x1", "x2", "x3", "c1"];

/// Raw trees over at most four symbols (three coordinates and `c1`) and the
/// hyperbolic functions of the coordinates.
pub fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-5i64..=5, 1i64..=3).prop_map(|(p, q)| Expr::Num(ratio(p, q))),
        (0usize..4).prop_map(|i| Expr::Sym(LEAVES[i].to_string())),
        (1usize..=3).prop_map(|i| Expr::Sinh(format!("x{i}"))),
        (1usize..=3).prop_map(|i| Expr::Cosh(format!("x{i}"))),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..=3).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
        ]
    })
}

/// Seeded counterpart of [`expr_strategy`] with bounded size.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => Expr::Num(ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))),
            1 => Expr::Sym(LEAVES[rng.gen_range(0..4)].to_string()),
            2 => Expr::Sinh(format!("x{}", rng.gen_range(1..=3))),
            _ => Expr::Cosh(format!("x{}", rng.gen_range(1..=3))),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..5) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        _ => Expr::Pow(sub(rng), rng.gen_range(0..=2)),
    }
}

pub fn normal(e: &Expr) -> HypExpr {
    parasol_core::scalar::normalize(e, &context()).unwrap()
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(p, q)| ratio(p, q))
}
