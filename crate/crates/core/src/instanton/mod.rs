//! Instanton tests for the family `∇^λ`, adapted bases, the `S`-matrix, the
//! classifier and the built-in families.

mod adapted;
mod classify;
mod criteria;
mod families;

pub use adapted::{
    as0_adapted_basis, diagonalize_s, dim1_adapted_basis, s_matrix, unit_vector_in, As0Basis,
    Dim1Adapted, SDiagonal, SMatrix,
};
pub use classify::{classify, Case, CaseParams, ClassificationResult, Witness};
pub use criteria::{check_caracg2, Caracg2Verdict};
pub use families::{builtin_family, family_names, FamilySpec};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connection::{covariant_derivative, curvature, nabla_lambda, CurvatureTensor, Tensor};
use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::g2::{characteristic_torsion, G2Structure, TorsionForms};
use crate::liealg::LieAlgebra;
use crate::scalar::Field;

/// Index groups of the residual components, 1-based.
pub const GROUP_57: &str = "57";
pub const GROUP_14: &str = "14";
pub const GROUP_1457: &str = "1457";

/// Environment variable capping the sweep thread pool.
pub const THREADS_ENV: &str = "NILG2_THREADS";

/// The real root `∛4 - 1` of `λ³ + 3λ² + 3λ - 3`.
pub fn cbrt4_minus_one() -> f64 {
    4f64.cbrt() - 1.0
}

/// The scalar `μ` from `τ0`. For `dim g' = 1` it is `a + b + c` with
/// `⋆(dφ ∧ φ) = 2μ`; otherwise it is `tr S` with `⋆(φ ∧ dφ) = 4μ`.
pub fn mu_from_tau0<F: Field>(tau0: &F, dim_commutator: usize) -> F {
    let k = if dim_commutator == 1 {
        F::from_ratio(7, 2)
    } else {
        F::from_ratio(7, 4)
    };
    tau0.clone() * &k
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupResidual<F> {
    pub name: &'static str,
    pub max_norm: F,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstantonReport<F> {
    pub lambda: Option<F>,
    pub is_instanton: bool,
    /// `residuals[α-1][β-1] = (R)^α_β ∧ ψ`.
    pub residuals: Vec<Vec<KForm<F>>>,
    pub max_residual_norm: F,
    pub groups: Vec<GroupResidual<F>>,
}

impl<F: Field> InstantonReport<F> {
    pub fn residual(&self, alpha: usize, beta: usize) -> &KForm<F> {
        &self.residuals[alpha - 1][beta - 1]
    }

    pub fn group(&self, name: &str) -> Option<&GroupResidual<F>> {
        self.groups.iter().find(|g| g.name == name)
    }
}

fn vanishes<F: Field>(x: &F, tol: f64) -> bool {
    x.near_zero(tol)
}

fn max_of<F: Field>(xs: impl Iterator<Item = F>) -> F {
    xs.fold(F::zero(), |m, x| {
        if (x.clone() - &m).is_positive() {
            x
        } else {
            m
        }
    })
}

/// Wedges every curvature component with `ψ`. The norm of a residual is the
/// sum of absolute values of its coefficients.
pub fn instanton_check<F: Field>(
    r: &CurvatureTensor<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> InstantonReport<F> {
    let comps = r.components();
    let n = comps.len();
    let residuals: Vec<Vec<KForm<F>>> = comps
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.wedge(&s.psi).expect("same dimension"))
                .collect()
        })
        .collect();
    let norm = |a: usize, b: usize| residuals[a][b].l1_norm();
    let all: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let max_residual_norm = max_of(all.iter().map(|&(a, b)| norm(a, b)));
    let in_q = |i: usize| i < 4;
    let group = |name: &'static str, pred: &dyn Fn(usize, usize) -> bool| {
        let m = max_of(
            all.iter()
                .filter(|&&(a, b)| pred(a, b))
                .map(|&(a, b)| norm(a, b)),
        );
        GroupResidual {
            name,
            vanishes: vanishes(&m, tol),
            max_norm: m,
        }
    };
    let groups = if n == 7 {
        vec![
            group(GROUP_57, &|a, b| !in_q(a) && !in_q(b)),
            group(GROUP_14, &|a, b| in_q(a) && in_q(b)),
            group(GROUP_1457, &|a, b| in_q(a) != in_q(b)),
        ]
    } else {
        Vec::new()
    };
    InstantonReport {
        lambda: None,
        is_instanton: vanishes(&max_residual_norm, tol),
        residuals,
        max_residual_norm,
        groups,
    }
}

/// Builds `∇^λ` from `s`, its curvature, and runs [`instanton_check`].
pub fn instanton_at<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    lambda: &F,
    tol: f64,
) -> Result<InstantonReport<F>> {
    let c = nabla_lambda(l, s, lambda)?;
    let mut rep = instanton_check(&curvature(&c, l), s, tol);
    rep.lambda = Some(lambda.clone());
    Ok(rep)
}

/// `{-2, -1, -1/2, -1/3, 0, 1/3, 1/2, 1, 2}`.
pub fn default_grid<F: Field>() -> Vec<F> {
    [
        (-2, 1),
        (-1, 1),
        (-1, 2),
        (-1, 3),
        (0, 1),
        (1, 3),
        (1, 2),
        (1, 1),
        (2, 1),
    ]
    .iter()
    .map(|&(n, d)| F::from_ratio(n, d))
    .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRow<F> {
    pub lambda: F,
    pub max_residual: F,
    pub is_instanton: bool,
}

fn sweep_threads() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(0)
}

/// Runs the instanton test at every grid value in parallel. The result is
/// sorted by `λ` with duplicates removed.
pub fn lambda_sweep<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    grid: &[F],
    tol: f64,
) -> Result<Vec<SweepRow<F>>> {
    let mut grid = grid.to_vec();
    grid.sort_by(|a, b| {
        a.to_f64()
            .partial_cmp(&b.to_f64())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    grid.dedup();
    // the connection data do not depend on λ, so fail early on a bad input
    let tf = TorsionForms::compute(l, s)?;
    characteristic_torsion(s, &tf, tol)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(sweep_threads())
        .build()
        .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?;
    pool.install(|| {
        grid.par_iter()
            .map(|lam| {
                instanton_at(l, s, lam, tol).map(|r| SweepRow {
                    lambda: lam.clone(),
                    max_residual: r.max_residual_norm,
                    is_instanton: r.is_instanton,
                })
            })
            .collect()
    })
}

/// Left-hand side of the diagonal system
/// `(λ+1)² C + 2(λ/3 + 1) λ μ S - (2/3)(λ+1) λ μ² Id` with
/// `C = diag(d6 d7, d7 d5, d5 d6)`, returned as its three diagonal entries.
pub fn diagonal_residual<F: Field>(d: &[F; 3], lambda: &F) -> [F; 3] {
    let mu = d[0].clone() + &d[1] + &d[2];
    let one = F::one();
    let lp1 = lambda.clone() + &one;
    let c = [
        d[1].clone() * &d[2],
        d[2].clone() * &d[0],
        d[0].clone() * &d[1],
    ];
    let k1 = lp1.square();
    let k2 = (lambda.clone() * &F::from_ratio(1, 3) + &one) * &F::from_i64(2) * lambda * &mu;
    let k3 = F::from_ratio(2, 3) * &lp1 * lambda * &mu.square();
    std::array::from_fn(|i| k1.clone() * &c[i] + &(k2.clone() * &d[i]) - k3.clone())
}

/// Whether the `57` group of instanton equations holds for a diagonal `S`.
pub fn eigenvalue_cases_57<F: Field>(d: &[F; 3], lambda: &F, tol: f64) -> bool {
    diagonal_residual(d, lambda).iter().all(|x| x.near_zero(tol))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NaturallyReductive {
    pub torsion_parallel: bool,
    pub curvature_parallel: bool,
    pub naturally_reductive: bool,
}

/// Whether `∇¹T = 0` and `∇¹R¹ = 0`.
pub fn naturally_reductive_check<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<NaturallyReductive> {
    let tf = TorsionForms::compute(l, s)?;
    let t = characteristic_torsion(s, &tf, tol)?;
    let c = nabla_lambda(l, s, &F::one())?;
    let torsion_parallel = covariant_derivative(&c, &Tensor::from_form(&t)).near_zero(tol);
    let curvature_parallel = covariant_derivative(&c, &curvature(&c, l).as_tensor()).near_zero(tol);
    Ok(NaturallyReductive {
        torsion_parallel,
        curvature_parallel,
        naturally_reductive: torsion_parallel && curvature_parallel,
    })
}
