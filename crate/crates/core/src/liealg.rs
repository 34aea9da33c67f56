//! Structure constants, the Chevalley–Eilenberg differential and the
//! structural subspaces of a nilpotent metric Lie algebra.
//!
//! Conventions: `[e_i, e_j] = Σ_k c^k_{ij} e_k` and
//! `d e^k = -Σ_{i<j} c^k_{ij} e^{ij}`, so that `dα(x, y) = -α([x, y])`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Metric, SkewEndo};
use crate::linalg::{unit_vector, vec_is_zero, Mat};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<F> {
    dim: usize,
    c: Vec<F>,
    de: Vec<KForm<F>>,
}

impl<F: Field> LieAlgebra<F> {
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        k * self.dim * self.dim + i * self.dim + j
    }

    fn build(dim: usize, c: Vec<F>) -> Self {
        let mut l = LieAlgebra {
            dim,
            c,
            de: Vec::new(),
        };
        l.de = (0..dim)
            .map(|k| {
                let mut f = KForm::zero(dim, 2);
                for i in 0..dim {
                    for j in i + 1..dim {
                        let v = &l.c[l.idx(i, j, k)];
                        if !v.is_zero() {
                            f = &f
                                + &KForm::monomial(dim, &[i + 1, j + 1], -v.clone())
                                    .expect("valid");
                        }
                    }
                }
                f
            })
            .collect();
        l
    }

    pub fn abelian(dim: usize) -> Self {
        Self::build(dim, vec![F::zero(); dim * dim * dim])
    }

    /// Raw constants `c[k][i][j]` (0-based); no antisymmetry is imposed.
    pub fn from_raw(dim: usize, c: Vec<Vec<Vec<F>>>) -> Result<Self> {
        if c.len() != dim
            || c.iter()
                .any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(Error::InvalidAlgebra(
                "structure constant array has the wrong shape".into(),
            ));
        }
        Ok(Self::build(
            dim,
            c.into_iter().flatten().flatten().collect(),
        ))
    }

    /// Bracket entries `(i, j, k, coeff)` meaning `[e_i, e_j] ∋ coeff e_k`
    /// (1-based). An entry fixes `c^k_{ji} = -coeff` unless `(j, i, k)` is
    /// also listed, in which case the two are kept as given.
    pub fn from_brackets(dim: usize, entries: &[(usize, usize, usize, F)]) -> Result<Self> {
        let mut c = vec![F::zero(); dim * dim * dim];
        let at = |i: usize, j: usize, k: usize| k * dim * dim + i * dim + j;
        let mut given = HashSet::new();
        for (i, j, k, v) in entries {
            for &x in [i, j, k] {
                if x == 0 || x > dim {
                    return Err(Error::IndexOutOfRange { index: x, dim });
                }
            }
            let (i, j, k) = (i - 1, j - 1, k - 1);
            let p = at(i, j, k);
            c[p] = c[p].clone() + v;
            given.insert((i, j, k));
        }
        for &(i, j, k) in &given {
            if i != j && !given.contains(&(j, i, k)) {
                c[at(j, i, k)] = -c[at(i, j, k)].clone();
            }
        }
        Ok(Self::build(dim, c))
    }

    /// The algebra whose differentials on the dual basis are `de`.
    pub fn from_differentials(de: &[KForm<F>]) -> Result<Self> {
        let dim = de.len();
        let mut c = vec![F::zero(); dim * dim * dim];
        for (k, f) in de.iter().enumerate() {
            if f.dim() != dim || f.degree() != 2 {
                return Err(Error::InvalidAlgebra(format!(
                    "d e^{} must be a 2-form in dimension {dim}",
                    k + 1
                )));
            }
            for (idx, v) in f.terms() {
                let (i, j) = (idx[0] - 1, idx[1] - 1);
                c[k * dim * dim + i * dim + j] = -v.clone();
                c[k * dim * dim + j * dim + i] = v;
            }
        }
        Ok(Self::build(dim, c))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}` with 1-based indices.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> F {
        self.c[self.idx(i - 1, j - 1, k - 1)].clone()
    }

    /// `[e_i, e_j]` for 0-based indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<F> {
        (0..self.dim)
            .map(|k| self.c[self.idx(i, j, k)].clone())
            .collect()
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.dim;
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[self.idx(i, j, k)];
                    if !c.is_zero() {
                        *o = o.clone() + xy.clone() * c;
                    }
                }
            }
        }
        out
    }

    /// `d e^k` for 1-based `k`.
    pub fn d_generator(&self, k: usize) -> &KForm<F> {
        &self.de[k - 1]
    }

    pub fn differentials(&self) -> &[KForm<F>] {
        &self.de
    }

    /// Chevalley–Eilenberg differential, extended from generators as a
    /// graded derivation.
    pub fn differential(&self, a: &KForm<F>) -> KForm<F> {
        assert_eq!(a.dim(), self.dim, "form and algebra dimensions differ");
        let n = self.dim;
        let p = a.degree();
        let mut out = KForm::zero(n, (p + 1).min(n));
        if p >= n {
            return out;
        }
        for (idx, c) in a.terms() {
            for m in 0..p {
                let dk = &self.de[idx[m] - 1];
                if dk.is_zero() {
                    continue;
                }
                let prefix = KForm::monomial(n, &idx[..m], F::one()).expect("valid");
                let suffix = KForm::monomial(n, &idx[m + 1..], F::one()).expect("valid");
                let term = prefix
                    .wedge(dk)
                    .and_then(|t| t.wedge(&suffix))
                    .expect("degrees fit");
                let term = if m % 2 == 1 { -term } else { term };
                out = &out + &term.scale(&c);
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim;
        let mut violations = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let s = self.c[self.idx(i, j, k)].clone() + &self.c[self.idx(j, i, k)];
                    if !s.is_zero() {
                        violations.push([i + 1, j + 1, k + 1]);
                    }
                }
            }
        }
        let jacobi_failures: Vec<usize> = (0..n)
            .filter(|&k| !self.differential(&self.de[k]).is_zero())
            .map(|k| k + 1)
            .collect();
        let comm = self.commutator();
        let center = self.center();
        let step = self.nilpotency_step();
        let comm_in_center = center.contains_subspace(&comm);
        let antisymmetric = violations.is_empty();
        let jacobi = jacobi_failures.is_empty();
        let mut messages = Vec::new();
        for [i, j, k] in &violations {
            messages.push(format!(
                "antisymmetry violated at (i, j, k) = ({i}, {j}, {k}): c^{k}_{{{i}{j}}} = {}, c^{k}_{{{j}{i}}} = {}",
                self.structure_constant(*i, *j, *k),
                self.structure_constant(*j, *i, *k)
            ));
        }
        for k in &jacobi_failures {
            messages.push(format!("d² ≠ 0 at e^{k} (Jacobi identity fails)"));
        }
        ValidationReport {
            antisymmetric,
            antisymmetry_violations: violations,
            jacobi,
            jacobi_failures,
            nilpotency_step: step,
            two_step: antisymmetric && jacobi && step == Some(2) && comm_in_center,
            dim_commutator: comm.dim(),
            dim_center: center.dim(),
            valid: antisymmetric && jacobi,
            messages,
        }
    }

    /// Length of the lower central series, `None` when not nilpotent.
    pub fn nilpotency_step(&self) -> Option<usize> {
        let n = self.dim;
        let mut cur = Subspace::full(n);
        let mut step = 0;
        loop {
            if cur.dim() == 0 {
                return Some(step);
            }
            let mut gens = Vec::new();
            for i in 0..n {
                for v in cur.basis() {
                    gens.push(self.bracket(&unit_vector(n, i), v));
                }
            }
            let next = Subspace::span(n, &gens);
            if next.dim() == cur.dim() {
                return None;
            }
            cur = next;
            step += 1;
        }
    }

    /// `g' = [g, g]`.
    pub fn commutator(&self) -> Subspace<F> {
        let n = self.dim;
        let gens: Vec<Vec<F>> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.bracket_basis(i, j))
            .collect();
        Subspace::span(n, &gens)
    }

    pub fn center(&self) -> Subspace<F> {
        let n = self.dim;
        // rows (j, k): Σ_i x_i c^k_{ij}
        let m = Mat::from_fn(n * n, n, |r, i| {
            let (j, k) = (r / n, r % n);
            self.c[self.idx(i, j, k)].clone()
        });
        Subspace::from_independent(n, m.kernel())
    }

    /// `a = z ∩ (g')^⊥`.
    pub fn abelian_factor(&self, m: &Metric<F>) -> Subspace<F> {
        self.center()
            .intersection(&self.commutator().orthogonal_complement(m))
    }

    /// `j(z)` with `g(j(z) x, y) = g(z, [x, y])`, as an ambient matrix that
    /// vanishes on `c` and preserves `q = c^⊥`.
    pub fn j_map(&self, m: &Metric<F>, c: &Subspace<F>, z: &[F]) -> Result<SkewEndo<F>> {
        if !c.contains_subspace(&self.commutator()) {
            return Err(Error::NotAdapted("c does not contain g'".into()));
        }
        if !self.center().contains_subspace(c) {
            return Err(Error::NotAdapted("c is not central".into()));
        }
        if !c.contains(z) {
            return Err(Error::NotAdapted("z is not in c".into()));
        }
        Ok(self.j_unchecked(m, z))
    }

    /// `j(z)` without the subspace checks; meaningful for central `z`.
    pub fn j_unchecked(&self, m: &Metric<F>, z: &[F]) -> SkewEndo<F> {
        let n = self.dim;
        let gz = m.matrix().mul_vec(z);
        let bhat = Mat::from_fn(n, n, |x, y| {
            let mut acc = F::zero();
            for (k, w) in gz.iter().enumerate() {
                if !w.is_zero() {
                    acc = acc + w.clone() * &self.c[self.idx(x, y, k)];
                }
            }
            acc
        });
        SkewEndo::new_unchecked(m.inverse().mul(&bhat).neg())
    }

    /// The same algebra in the basis given by the columns of `w`.
    pub fn change_basis(&self, w: &Mat<F>) -> Result<Self> {
        let n = self.dim;
        let winv = w
            .inverse()
            .ok_or_else(|| Error::InvalidParams("change of basis is singular".into()))?;
        let cols = w.col_vectors();
        let mut c = vec![F::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let v = winv.mul_vec(&self.bracket(&cols[a], &cols[b]));
                for (k, x) in v.into_iter().enumerate() {
                    c[k * n * n + a * n + b] = x;
                }
            }
        }
        Ok(Self::build(n, c))
    }

    pub fn map_kind<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        LieAlgebra::build(self.dim, self.c.iter().map(f).collect())
    }

    pub fn to_f64(&self) -> LieAlgebra<f64> {
        self.map_kind(|x| x.to_f64())
    }

    /// Nonzero bracket entries `(i, j, k, c^k_{ij})` with `i < j`, 1-based.
    pub fn bracket_entries(&self) -> Vec<(usize, usize, usize, F)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let v = &self.c[self.idx(i, j, k)];
                    if !v.is_zero() {
                        out.push((i + 1, j + 1, k + 1, v.clone()));
                    }
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for LieAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (k, d) in self.de.iter().enumerate() {
            if !d.is_zero() {
                writeln!(f, "de^{} = {}", k + 1, d)?;
                any = true;
            }
        }
        if !any {
            writeln!(f, "abelian")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationReport {
    pub antisymmetric: bool,
    pub antisymmetry_violations: Vec<[usize; 3]>,
    pub jacobi: bool,
    pub jacobi_failures: Vec<usize>,
    pub nilpotency_step: Option<usize>,
    pub two_step: bool,
    pub dim_commutator: usize,
    pub dim_center: usize,
    pub valid: bool,
    pub messages: Vec<String>,
}

/// A linear subspace given by an independent spanning set.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
        }
    }

    /// Coordinate subspace on 1-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Subspace {
            ambient,
            basis: indices
                .iter()
                .map(|&i| unit_vector(ambient, i - 1))
                .collect(),
        }
    }

    /// Span of arbitrary vectors; the stored basis is the reduced row echelon
    /// form of the spanning set.
    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        let nonzero: Vec<Vec<F>> = vectors
            .iter()
            .filter(|v| !vec_is_zero(v))
            .cloned()
            .collect();
        if nonzero.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = Mat::from_rows(nonzero).rref();
        Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i)).collect(),
        }
    }

    fn from_independent(ambient: usize, basis: Vec<Vec<F>>) -> Self {
        Self::span(ambient, &basis)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// Basis vectors as matrix columns.
    pub fn matrix(&self) -> Mat<F> {
        if self.basis.is_empty() {
            return Mat::zeros(self.ambient, 0);
        }
        Mat::from_cols(&self.basis)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if vec_is_zero(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Mat::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn equals(&self, other: &Subspace<F>) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn intersection(&self, other: &Subspace<F>) -> Subspace<F> {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        let a = self.dim();
        let m = Mat::from_fn(self.ambient, a + other.dim(), |i, j| {
            if j < a {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - a][i].clone()
            }
        });
        let vecs: Vec<Vec<F>> = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![F::zero(); self.ambient];
                for (j, b) in self.basis.iter().enumerate() {
                    for i in 0..self.ambient {
                        v[i] = v[i].clone() + k[j].clone() * &b[i];
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vecs)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &all)
    }

    pub fn orthogonal_complement(&self, m: &Metric<F>) -> Subspace<F> {
        if self.dim() == 0 {
            return Self::full(self.ambient);
        }
        let rows: Vec<Vec<F>> = self.basis.iter().map(|b| m.matrix().mul_vec(b)).collect();
        Self::from_independent(self.ambient, Mat::from_rows(rows).kernel())
    }

    /// Orthogonal projector `B (Bᵀ g B)^{-1} Bᵀ g`.
    pub fn projector(&self, m: &Metric<F>) -> Mat<F> {
        if self.dim() == 0 {
            return Mat::zeros(self.ambient, self.ambient);
        }
        let b = self.matrix();
        let bt_g = b.transpose().mul(m.matrix());
        let gram = bt_g.mul(&b);
        let inv = gram
            .inverse()
            .expect("independent basis has invertible Gram matrix");
        b.mul(&inv).mul(&bt_g)
    }

    pub fn gram(&self, m: &Metric<F>) -> Mat<F> {
        let b = self.matrix();
        b.transpose().mul(m.matrix()).mul(&b)
    }

    pub fn to_f64(&self) -> Subspace<f64> {
        Subspace {
            ambient: self.ambient,
            basis: self
                .basis
                .iter()
                .map(|v| v.iter().map(|x| x.to_f64()).collect())
                .collect(),
        }
    }
}

/// The data of an adapted basis: `c = ⟨e5, e6, e7⟩` central and
/// `d e^i ∈ Λ²⟨e1..e4⟩*` for `i = 5, 6, 7`, all other `d e^i = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct As0Split<F> {
    pub alpha: [KForm<F>; 3],
    pub plus: [KForm<F>; 3],
    pub minus: [KForm<F>; 3],
}

/// The self-dual basis `σ_1^+ = e^{13} - e^{24}`, `σ_2^+ = -e^{14} - e^{23}`,
/// `σ_3^+ = e^{12} + e^{34}` (`l` is 1-based).
pub fn sigma_plus<F: Field>(l: usize) -> KForm<F> {
    match l {
        1 => KForm::from_int_terms(7, 2, &[(&[1, 3], 1), (&[2, 4], -1)]),
        2 => KForm::from_int_terms(7, 2, &[(&[1, 4], -1), (&[2, 3], -1)]),
        3 => KForm::from_int_terms(7, 2, &[(&[1, 2], 1), (&[3, 4], 1)]),
        _ => panic!("sigma index must be 1, 2 or 3"),
    }
}

/// `σ_1^- = e^{13} + e^{24}`, `σ_2^- = e^{14} - e^{23}`, `σ_3^- = e^{12} - e^{34}`.
pub fn sigma_minus<F: Field>(l: usize) -> KForm<F> {
    match l {
        1 => KForm::from_int_terms(7, 2, &[(&[1, 3], 1), (&[2, 4], 1)]),
        2 => KForm::from_int_terms(7, 2, &[(&[1, 4], 1), (&[2, 3], -1)]),
        3 => KForm::from_int_terms(7, 2, &[(&[1, 2], 1), (&[3, 4], -1)]),
        _ => panic!("sigma index must be 1, 2 or 3"),
    }
}

impl<F: Field> As0Split<F> {
    pub fn new(l: &LieAlgebra<F>) -> Result<Self> {
        if l.dim() != 7 {
            return Err(Error::NotAdapted("dimension must be 7".into()));
        }
        for k in 1..=4 {
            if !l.d_generator(k).is_zero() {
                return Err(Error::NotAdapted(format!("d e^{k} ≠ 0")));
            }
        }
        let mut alpha = Vec::new();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for k in 5..=7 {
            let a = l.d_generator(k).clone();
            let (p, m) = crate::exterior::sd_asd_split(&a)
                .map_err(|_| Error::NotAdapted(format!("d e^{k} is not in Λ²⟨e1..e4⟩*")))?;
            alpha.push(a);
            plus.push(p);
            minus.push(m);
        }
        let arr = |v: Vec<KForm<F>>| -> [KForm<F>; 3] { v.try_into().expect("three forms") };
        Ok(As0Split {
            alpha: arr(alpha),
            plus: arr(plus),
            minus: arr(minus),
        })
    }

    /// The auxiliary algebras `[·,·]_+`, `[·,·]_-`, `[·,·]_0` on `q`.
    pub fn brackets_pm0(&self) -> (LieAlgebra<F>, LieAlgebra<F>, LieAlgebra<F>) {
        let build = |forms: [KForm<F>; 3]| {
            let mut de: Vec<KForm<F>> = (0..4).map(|_| KForm::zero(7, 2)).collect();
            de.extend(forms);
            LieAlgebra::from_differentials(&de).expect("valid shape")
        };
        let zero = [
            -sigma_plus::<F>(1),
            -sigma_plus::<F>(2),
            -sigma_plus::<F>(3),
        ];
        (
            build(self.plus.clone()),
            build(self.minus.clone()),
            build(zero),
        )
    }

    /// `(j(z)^+, j(z)^-, j(z)^0)` for `z ∈ c` given by its coordinates on
    /// `(e5, e6, e7)`.
    pub fn j_pm0(&self, z: &[F; 3]) -> (SkewEndo<F>, SkewEndo<F>, SkewEndo<F>) {
        let combo = |forms: &[KForm<F>; 3], sign: i64| {
            let mut acc = Mat::<F>::zeros(7, 7);
            for (l, f) in forms.iter().enumerate() {
                if z[l].is_zero() {
                    continue;
                }
                let m = f
                    .two_form_matrix()
                    .expect("2-form")
                    .scale(&(z[l].clone() * &F::from_i64(sign)));
                acc = acc.add(&m);
            }
            SkewEndo::new_unchecked(acc)
        };
        let sig = [sigma_plus::<F>(1), sigma_plus::<F>(2), sigma_plus::<F>(3)];
        (combo(&self.plus, 1), combo(&self.minus, 1), combo(&sig, -1))
    }
}

/// `τ(z)` on `c` with `g(τ(z) z', z'') = φ(z, z', z'')`, extended by zero on
/// `c^⊥`.
pub fn tau<F: Field>(
    z: &[F],
    phi: &KForm<F>,
    c: &Subspace<F>,
    m: &Metric<F>,
) -> Result<SkewEndo<F>> {
    if c.dim() != 3 {
        return Err(Error::InvalidParams(format!(
            "tau needs a 3-dimensional subspace, got {}",
            c.dim()
        )));
    }
    if !c.contains(z) {
        return Err(Error::NotAdapted("z is not in c".into()));
    }
    let b = c.basis();
    let val = phi.evaluate(&[&b[0], &b[1], &b[2]])?;
    if val.clone() * &val != c.gram(m).det() {
        return Err(Error::NotCalibrated("phi does not calibrate c".into()));
    }
    let n = m.dim();
    let p = c.projector(m);
    let zphi = phi.contract(z)?;
    let cols = p.col_vectors();
    let bhat = Mat::from_fn(n, n, |x, y| {
        zphi.evaluate(&[&cols[x], &cols[y]]).expect("2-form")
    });
    Ok(SkewEndo::new_unchecked(m.inverse().mul(&bhat).neg()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Rational};

    type K = KForm<Rational>;

    fn heis12() -> LieAlgebra<Rational> {
        // de7 = e12 + 2 e34 - 3 e56
        let mut de: Vec<K> = (0..6).map(|_| K::zero(7, 2)).collect();
        de.push(K::from_int_terms(
            7,
            2,
            &[(&[1, 2], 1), (&[3, 4], 2), (&[5, 6], -3)],
        ));
        LieAlgebra::from_differentials(&de).unwrap()
    }

    #[test]
    fn differential_of_generator_and_bracket_sign() {
        let l = heis12();
        let d7 = l.differential(&K::basis(7, &[7]));
        assert_eq!(
            d7,
            K::from_int_terms(7, 2, &[(&[1, 2], 1), (&[3, 4], 2), (&[5, 6], -3)])
        );
        assert_eq!(l.structure_constant(1, 2, 7), qi(-1));
        let r = l.validate();
        assert!(r.valid && r.two_step);
        assert_eq!(r.dim_commutator, 1);
    }

    #[test]
    fn from_brackets_fills_antisymmetric_partner() {
        let l = LieAlgebra::from_brackets(7, &[(1, 2, 7, qi(1))]).unwrap();
        assert_eq!(l.structure_constant(2, 1, 7), qi(-1));
        let bad = LieAlgebra::from_brackets(7, &[(1, 2, 7, qi(1)), (2, 1, 7, qi(1))]).unwrap();
        let r = bad.validate();
        assert!(!r.antisymmetric);
        assert_eq!(r.antisymmetry_violations, vec![[1, 2, 7]]);
    }

    #[test]
    fn jacobi_failure_detected() {
        let l = LieAlgebra::from_brackets(
            7,
            &[
                (1, 2, 3, qi(1)),
                (1, 3, 4, qi(1)),
                (2, 3, 5, qi(1)),
                (1, 5, 6, qi(1)),
            ],
        )
        .unwrap();
        let r = l.validate();
        assert!(!r.jacobi);
        assert!(r.messages.iter().any(|m| m.contains("d² ≠ 0 at e^")));
    }

    #[test]
    fn subspaces_of_abelian() {
        let l = LieAlgebra::<Rational>::abelian(7);
        assert_eq!(l.center().dim(), 7);
        assert_eq!(l.commutator().dim(), 0);
        assert_eq!(l.validate().nilpotency_step, Some(1));
    }

    #[test]
    fn tau_on_standard_c() {
        let phi = crate::g2::phi0::<Rational>();
        let m = Metric::identity(7);
        let c = Subspace::coordinate(7, &[5, 6, 7]);
        let t5 = tau(&unit_vector(7, 4), &phi, &c, &m).unwrap();
        assert_eq!(t5.apply(&unit_vector(7, 5)), unit_vector(7, 6));
    }
}
