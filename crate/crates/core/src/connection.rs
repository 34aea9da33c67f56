//! Invariant metric connections stored as the endomorphisms `Ψ(e_i) = ∇_{e_i}`.
//!
//! Index conventions: `∇_{e_i} e_β = Σ_α N_i[α][β] e_α`, so the connection
//! 1-forms are `(Ψ)^α_β = Σ_i g(∇_{e_i} e_β, e_α) e^i` and the curvature
//! 2-forms are `(R)^α_β = Σ_{j<k} g(R_{e_j, e_k} e_β, e_α) e^{jk}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Metric};
use crate::g2::{characteristic_torsion, derivation_action, G2Structure, TorsionForms};
use crate::liealg::LieAlgebra;
use crate::linalg::{unit_vector, vec_is_zero, Mat};
use crate::scalar::{Field, DEFAULT_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    LeviCivita,
    NablaLambda,
    Custom,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Connection<F> {
    psi: Vec<Mat<F>>,
    lambda: Option<F>,
    provenance: Provenance,
    metric: Metric<F>,
}

impl<F: Field> Connection<F> {
    /// A connection from its endomorphisms; each must be skew for `m`.
    pub fn custom(psi: Vec<Mat<F>>, m: Metric<F>) -> Result<Self> {
        for (i, n) in psi.iter().enumerate() {
            let gn = m.matrix().mul(n);
            if !gn.add(&gn.transpose()).is_zero() {
                return Err(Error::Inconsistent(format!("Ψ(e_{}) is not skew", i + 1)));
            }
        }
        Ok(Connection {
            psi,
            lambda: None,
            provenance: Provenance::Custom,
            metric: m,
        })
    }

    pub fn dim(&self) -> usize {
        self.psi.len()
    }

    pub fn endos(&self) -> &[Mat<F>] {
        &self.psi
    }

    /// `Ψ(e_i)` for 1-based `i`.
    pub fn endo(&self, i: usize) -> &Mat<F> {
        &self.psi[i - 1]
    }

    pub fn lambda(&self) -> Option<&F> {
        self.lambda.as_ref()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn metric(&self) -> &Metric<F> {
        &self.metric
    }

    /// `Ψ(x) = Σ x_i Ψ(e_i)`.
    pub fn endo_at(&self, x: &[F]) -> Mat<F> {
        let n = self.dim();
        let mut acc = Mat::zeros(n, n);
        for (xi, m) in x.iter().zip(&self.psi) {
            if !xi.is_zero() {
                acc = acc.add(&m.scale(xi));
            }
        }
        acc
    }

    pub fn nabla(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.endo_at(x).mul_vec(y)
    }

    /// `∇_x y - ∇_y x - [x, y]`.
    pub fn torsion(&self, l: &LieAlgebra<F>, x: &[F], y: &[F]) -> Vec<F> {
        let a = self.nabla(x, y);
        let b = self.nabla(y, x);
        let c = l.bracket(x, y);
        (0..self.dim())
            .map(|k| a[k].clone() - &b[k] - &c[k])
            .collect()
    }

    /// The connection 1-form `(Ψ)^α_β` (1-based).
    pub fn form(&self, alpha: usize, beta: usize) -> KForm<F> {
        let n = self.dim();
        let g = self.metric.matrix();
        let mut out = KForm::zero(n, 1);
        for (i, m) in self.psi.iter().enumerate() {
            let mut v = F::zero();
            for a in 0..n {
                v = v + g[(alpha - 1, a)].clone() * &m[(a, beta - 1)];
            }
            if !v.is_zero() {
                out = &out + &KForm::monomial(n, &[i + 1], v).expect("valid");
            }
        }
        out
    }

    /// Whether `g(∇_x y, z) + g(y, ∇_x z) = 0` on all basis triples.
    pub fn is_metric(&self, tol: f64) -> bool {
        self.psi.iter().all(|m| {
            let gm = self.metric.matrix().mul(m);
            gm.add(&gm.transpose()).near_zero(tol)
        })
    }

    pub fn to_f64(&self) -> Connection<f64> {
        Connection {
            psi: self.psi.iter().map(|m| m.to_f64()).collect(),
            lambda: self.lambda.as_ref().map(|l| l.to_f64()),
            provenance: self.provenance,
            metric: self.metric.to_f64(),
        }
    }
}

/// Koszul formula for an invariant metric:
/// `2 g(∇_x y, z) = g([x, y], z) - g([y, z], x) + g([z, x], y)`.
pub fn levi_civita<F: Field>(l: &LieAlgebra<F>, m: &Metric<F>) -> Connection<F> {
    let psi = lowered_koszul(l, m)
        .into_iter()
        .map(|low| m.inverse().mul(&low))
        .collect();
    Connection {
        psi,
        lambda: Some(F::zero()),
        provenance: Provenance::LeviCivita,
        metric: m.clone(),
    }
}

/// `low[i][(k, j)] = g(∇_{e_i} e_j, e_k)`.
fn lowered_koszul<F: Field>(l: &LieAlgebra<F>, m: &Metric<F>) -> Vec<Mat<F>> {
    let n = l.dim();
    let g = m.matrix();
    let gb = |a: usize, b: usize, c: usize| {
        // g([e_a, e_b], e_c)
        let v = l.bracket_basis(a, b);
        let mut acc = F::zero();
        for (t, x) in v.iter().enumerate() {
            if !x.is_zero() {
                acc = acc + x.clone() * &g[(t, c)];
            }
        }
        acc
    };
    let half = F::from_ratio(1, 2);
    (0..n)
        .map(|i| {
            Mat::from_fn(n, n, |k, j| {
                (gb(i, j, k) - gb(j, k, i) + gb(k, i, j)) * &half
            })
        })
        .collect()
}

/// `g(∇^λ_x y, z) = g(∇^g_x y, z) + (λ/2) T(x, y, z)` for a 3-form `t`.
pub fn nabla_with_torsion<F: Field>(
    l: &LieAlgebra<F>,
    m: &Metric<F>,
    t: &KForm<F>,
    lambda: &F,
) -> Result<Connection<F>> {
    let n = l.dim();
    if t.degree() != 3 || t.dim() != n {
        return Err(Error::DegreeMismatch("torsion must be a 3-form".into()));
    }
    let h = lambda.half();
    let mut psi = Vec::with_capacity(n);
    for (i, low) in lowered_koszul(l, m).into_iter().enumerate() {
        let ti = t.contract_basis(i + 1)?;
        let mut tm = ti.two_form_matrix()?; // tm[(j, k)] = T(e_i, e_j, e_k)
        tm = tm.transpose().scale(&h);
        psi.push(m.inverse().mul(&low.add(&tm)));
    }
    Ok(Connection {
        psi,
        lambda: Some(lambda.clone()),
        provenance: Provenance::NablaLambda,
        metric: m.clone(),
    })
}

/// `∇^λ` built from the characteristic torsion of `s`; fails when `τ2 ≠ 0`.
pub fn nabla_lambda<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    lambda: &F,
) -> Result<Connection<F>> {
    let tf = TorsionForms::compute(l, s)?;
    let t = characteristic_torsion(s, &tf, DEFAULT_TOL)?;
    nabla_with_torsion(l, &s.metric, &t, lambda)
}

/// Curvature endomorphisms `R_{e_j, e_k}` for all ordered pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor<F> {
    dim: usize,
    endos: Vec<Mat<F>>,
    metric: Metric<F>,
}

impl<F: Field> CurvatureTensor<F> {
    /// `R_{e_j, e_k}` for 1-based `j, k`.
    pub fn endo(&self, j: usize, k: usize) -> &Mat<F> {
        &self.endos[(j - 1) * self.dim + (k - 1)]
    }

    /// `(R)^α_β` (1-based).
    pub fn component(&self, alpha: usize, beta: usize) -> KForm<F> {
        let n = self.dim;
        let g = self.metric.matrix();
        let mut out = KForm::zero(n, 2);
        for j in 1..=n {
            for k in j + 1..=n {
                let e = self.endo(j, k);
                let mut v = F::zero();
                for a in 0..n {
                    v = v + g[(alpha - 1, a)].clone() * &e[(a, beta - 1)];
                }
                if !v.is_zero() {
                    out = &out + &KForm::monomial(n, &[j, k], v).expect("valid");
                }
            }
        }
        out
    }

    /// All components, `[α-1][β-1]`.
    pub fn components(&self) -> Vec<Vec<KForm<F>>> {
        (1..=self.dim)
            .map(|a| (1..=self.dim).map(|b| self.component(a, b)).collect())
            .collect()
    }

    /// `R(x, y, z, w) = g(R_{x,y} z, w)` on basis vectors (1-based).
    pub fn value(&self, x: usize, y: usize, z: usize, w: usize) -> F {
        let e = self.endo(x, y);
        let g = self.metric.matrix();
        (0..self.dim).fold(F::zero(), |acc, a| {
            acc + g[(w - 1, a)].clone() * &e[(a, z - 1)]
        })
    }

    pub fn as_tensor(&self) -> Tensor<F> {
        Tensor::from_fn(self.dim, 4, |ix| {
            self.value(ix[0] + 1, ix[1] + 1, ix[2] + 1, ix[3] + 1)
        })
    }

    /// Whether `R(x, y, z, w) = R(z, w, x, y)` on all basis quadruples.
    pub fn pair_symmetric(&self, tol: f64) -> bool {
        let n = self.dim;
        for x in 1..=n {
            for y in x + 1..=n {
                for z in 1..=n {
                    for w in z + 1..=n {
                        if !(self.value(x, y, z, w) - self.value(z, w, x, y)).near_zero(tol) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.endos.iter().all(|e| e.is_zero())
    }
}

/// `R_{x,y} = ∇_x ∇_y - ∇_y ∇_x - ∇_{[x,y]}`.
pub fn curvature<F: Field>(c: &Connection<F>, l: &LieAlgebra<F>) -> CurvatureTensor<F> {
    let n = c.dim();
    let mut endos = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let r = if j == k {
                Mat::zeros(n, n)
            } else {
                c.psi[j]
                    .commutator(&c.psi[k])
                    .sub(&c.endo_at(&l.bracket_basis(j, k)))
            };
            endos.push(r);
        }
    }
    CurvatureTensor {
        dim: n,
        endos,
        metric: c.metric.clone(),
    }
}

/// Curvature components from `dΨ + Ψ ∧ Ψ`, lowered with the metric; an
/// independent route to [`CurvatureTensor::components`].
pub fn curvature_forms<F: Field>(c: &Connection<F>, l: &LieAlgebra<F>) -> Vec<Vec<KForm<F>>> {
    let n = c.dim();
    // mixed forms ω^α_β(e_i) = N_i[α][β]
    let omega: Vec<Vec<KForm<F>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut f = KForm::zero(n, 1);
                    for (i, m) in c.psi.iter().enumerate() {
                        if !m[(a, b)].is_zero() {
                            f = &f
                                + &KForm::monomial(n, &[i + 1], m[(a, b)].clone()).expect("valid");
                        }
                    }
                    f
                })
                .collect()
        })
        .collect();
    let mixed: Vec<Vec<KForm<F>>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut f = l.differential(&omega[a][b]);
                    for g in 0..n {
                        if omega[a][g].is_zero() || omega[g][b].is_zero() {
                            continue;
                        }
                        f = &f + &omega[a][g].wedge(&omega[g][b]).expect("1-forms");
                    }
                    f
                })
                .collect()
        })
        .collect();
    let g = c.metric.matrix();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut f = KForm::zero(n, 2);
                    for t in 0..n {
                        if !g[(a, t)].is_zero() {
                            f = &f + &mixed[t][b].scale(&g[(a, t)]);
                        }
                    }
                    f
                })
                .collect()
        })
        .collect()
}

/// A covariant tensor with all indices lowered, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<F> {
    dim: usize,
    rank: usize,
    data: Vec<F>,
}

impl<F: Field> Tensor<F> {
    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> F) -> Self {
        let len = dim.pow(rank as u32);
        let mut data = Vec::with_capacity(len);
        let mut ix = vec![0; rank];
        for flat in 0..len {
            let mut r = flat;
            for m in (0..rank).rev() {
                ix[m] = r % dim;
                r /= dim;
            }
            data.push(f(&ix));
        }
        Tensor { dim, rank, data }
    }

    pub fn from_form(a: &KForm<F>) -> Self {
        let n = a.dim();
        let basis: Vec<Vec<F>> = (0..n).map(|i| unit_vector(n, i)).collect();
        Tensor::from_fn(n, a.degree(), |ix| {
            let vs: Vec<&[F]> = ix.iter().map(|&i| basis[i].as_slice()).collect();
            a.evaluate(&vs).expect("matching degree")
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Component at 0-based indices.
    pub fn get(&self, ix: &[usize]) -> &F {
        let flat = ix.iter().fold(0, |acc, &i| acc * self.dim + i);
        &self.data[flat]
    }

    pub fn near_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.near_zero(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// `(∇S)(x, i_1, ..., i_k) = -Σ_m S(..., ∇_x e_{i_m}, ...)` for an invariant
/// tensor `S`.
pub fn covariant_derivative<F: Field>(c: &Connection<F>, s: &Tensor<F>) -> Tensor<F> {
    let n = s.dim;
    Tensor::from_fn(n, s.rank + 1, |ix| {
        let nx = &c.psi[ix[0]];
        let rest = &ix[1..];
        let mut acc = F::zero();
        let mut tmp = rest.to_vec();
        for m in 0..rest.len() {
            for j in 0..n {
                let coef = &nx[(j, rest[m])];
                if coef.is_zero() {
                    continue;
                }
                tmp[m] = j;
                acc = acc - coef.clone() * s.get(&tmp);
            }
            tmp[m] = rest[m];
        }
        acc
    })
}

/// `∇_{e_i} α` for an invariant form, as forms (0-based list over `i`).
pub fn covariant_derivative_form<F: Field>(c: &Connection<F>, a: &KForm<F>) -> Vec<KForm<F>> {
    c.psi.iter().map(|nx| derivation_action(nx, a)).collect()
}

pub fn form_is_parallel<F: Field>(c: &Connection<F>, a: &KForm<F>, tol: f64) -> bool {
    covariant_derivative_form(c, a)
        .iter()
        .all(|f| f.near_zero(tol))
}

pub fn tensor_is_parallel<F: Field>(c: &Connection<F>, s: &Tensor<F>, tol: f64) -> bool {
    covariant_derivative(c, s).near_zero(tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Holonomy<F> {
    /// Basis of the holonomy algebra as endomorphisms.
    pub basis: Vec<Mat<F>>,
    /// `[X_a, X_b] = Σ_c table[a][b][c] X_c`.
    pub bracket_table: Vec<Vec<Vec<F>>>,
    /// Dimension of the Lie algebra generated by curvature alone.
    pub bracket_only_dim: usize,
    /// `(positive, negative, zero)` for the Killing form.
    pub killing_signature: (usize, usize, usize),
    /// Dimension of the common kernel of the holonomy algebra.
    pub fixed_dim: usize,
    pub iterations: usize,
}

impl<F: Field> Holonomy<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn killing_negative_definite(&self) -> bool {
        let (p, n, z) = self.killing_signature;
        p == 0 && z == 0 && n == self.dim()
    }
}

struct MatSpan<F> {
    n: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> MatSpan<F> {
    fn new(n: usize, mats: &[Mat<F>]) -> Self {
        let vecs: Vec<Vec<F>> = mats
            .iter()
            .map(|m| m.as_slice().to_vec())
            .filter(|v| !vec_is_zero(v))
            .collect();
        if vecs.is_empty() {
            return MatSpan {
                n,
                rows: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let (r, pivots) = Mat::from_rows(vecs).rref();
        MatSpan {
            n,
            rows: (0..pivots.len()).map(|i| r.row(i)).collect(),
            pivots,
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn mats(&self) -> Vec<Mat<F>> {
        self.rows
            .iter()
            .map(|r| Mat::from_fn(self.n, self.n, |i, j| r[i * self.n + j].clone()))
            .collect()
    }

    fn coords(&self, m: &Mat<F>) -> Vec<F> {
        self.pivots
            .iter()
            .map(|&p| m.as_slice()[p].clone())
            .collect()
    }
}

fn closure<F: Field>(n: usize, gens: &[Mat<F>], adjoint: &[Mat<F>]) -> (MatSpan<F>, usize) {
    let mut span = MatSpan::new(n, gens);
    let max_iter = n * (n - 1) / 2;
    let mut it = 0;
    while it < max_iter.max(1) {
        it += 1;
        let cur = span.mats();
        let mut all = cur.clone();
        for a in 0..cur.len() {
            for b in a + 1..cur.len() {
                all.push(cur[a].commutator(&cur[b]));
            }
            for p in adjoint {
                all.push(p.commutator(&cur[a]));
            }
        }
        let next = MatSpan::new(n, &all);
        if next.dim() == span.dim() {
            break;
        }
        span = next;
    }
    (span, it)
}

/// Holonomy algebra of an invariant connection: curvature endomorphisms
/// closed under brackets and under `A ↦ [Ψ(e_i), A]`.
pub fn holonomy_algebra<F: Field>(c: &Connection<F>, l: &LieAlgebra<F>) -> Holonomy<F> {
    let n = c.dim();
    let r = curvature(c, l);
    let gens: Vec<Mat<F>> = (1..=n)
        .flat_map(|j| (j + 1..=n).map(move |k| (j, k)))
        .map(|(j, k)| r.endo(j, k).clone())
        .collect();
    let (span, iterations) = closure(n, &gens, &c.psi);
    let (only, _) = closure(n, &gens, &[]);
    let basis = span.mats();
    let d = basis.len();
    let bracket_table: Vec<Vec<Vec<F>>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| span.coords(&basis[a].commutator(&basis[b])))
                .collect()
        })
        .collect();
    // ad_a[c][b] = table[a][b][c]
    let ad: Vec<Mat<F>> = (0..d)
        .map(|a| Mat::from_fn(d, d, |cc, b| bracket_table[a][b][cc].clone()))
        .collect();
    let killing = Mat::from_fn(d, d, |a, b| ad[a].mul(&ad[b]).trace());
    let killing_signature = if d == 0 {
        (0, 0, 0)
    } else {
        let (neg, zero, pos) = killing.signature();
        (pos, neg, zero)
    };
    let fixed_dim = if d == 0 {
        n
    } else {
        let stacked = Mat::from_fn(n * d, n, |r, col| basis[r / n][(r % n, col)].clone());
        n - stacked.rank()
    };
    Holonomy {
        basis,
        bracket_table,
        bracket_only_dim: only.dim(),
        killing_signature,
        fixed_dim,
        iterations,
    }
}
