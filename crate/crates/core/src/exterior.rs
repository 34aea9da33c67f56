//! Constant-coefficient exterior algebra on an oriented inner-product space
//! of dimension at most 8.
//!
//! A basis monomial `e^{i1 ... ik}` with `i1 < ... < ik` is a [`Blade`], stored
//! as a bitmask. Indices are 1-based at the API surface.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{bilinear, Mat};
use crate::scalar::Field;

pub const MAX_DIM: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Blade(u8);

impl Blade {
    pub fn from_bits(bits: u8) -> Blade {
        Blade(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 0-based indices in increasing order.
    pub fn indices0(self) -> Vec<usize> {
        (0..8).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        self.indices0().into_iter().map(|i| i + 1).collect()
    }

    pub fn contains0(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Sign of `e^A ∧ e^B` relative to `e^{A ∪ B}`, or `None` when they overlap.
    pub fn wedge_sign(a: Blade, b: Blade) -> Option<bool> {
        if a.0 & b.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in b.indices0() {
            swaps += (a.0 as u32 >> (j + 1)).count_ones();
        }
        Some(swaps % 2 == 1)
    }

    /// Complement within `{0..dim}`.
    pub fn complement(self, dim: usize) -> Blade {
        let full: u16 = (1u16 << dim) - 1;
        Blade((full as u8) & !self.0)
    }

    fn lex_key(self) -> Vec<usize> {
        self.indices0()
    }
}

/// All blades of a given degree, in lexicographic order of their index tuples.
pub fn blades(dim: usize, degree: usize) -> Vec<Blade> {
    let mut out: Vec<Blade> = (0u16..(1u16 << dim))
        .filter(|b| b.count_ones() as usize == degree)
        .map(|b| Blade(b as u8))
        .collect();
    out.sort_by_key(|b| b.lex_key());
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct KForm<F> {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Blade, F>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionMismatch {
            expected: MAX_DIM,
            found: dim,
        });
    }
    Ok(())
}

impl<F: Field> KForm<F> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim, "invalid form shape");
        KForm {
            dim,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: F) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(Blade(0), c);
        f
    }

    /// `coeff · e^{i1} ∧ ... ∧ e^{ik}` for arbitrary (1-based) index order.
    pub fn monomial(dim: usize, indices: &[usize], coeff: F) -> Result<Self> {
        check_dim(dim)?;
        let mut idx = Vec::with_capacity(indices.len());
        for &i in indices {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            idx.push(i - 1);
        }
        let mut f = Self::zero(dim, idx.len());
        let mut bits = 0u8;
        let mut odd = false;
        for &i in &idx {
            if bits & (1 << i) != 0 {
                return Ok(f);
            }
            odd ^= (bits >> (i + 1)).count_ones() % 2 == 1;
            bits |= 1 << i;
        }
        f.add_term(Blade(bits), if odd { -coeff } else { coeff });
        Ok(f)
    }

    /// The basis form `e^{i1 ... ik}`; panics on bad indices.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        Self::monomial(dim, indices, F::one()).expect("valid basis indices")
    }

    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, F)>,
    {
        check_dim(dim)?;
        if degree > dim {
            return Err(Error::DegreeMismatch(format!(
                "degree {degree} exceeds dimension {dim}"
            )));
        }
        let mut f = Self::zero(dim, degree);
        for (idx, c) in terms {
            if idx.len() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "term {:?} in a form of degree {degree}",
                    idx
                )));
            }
            let m = Self::monomial(dim, &idx, c)?;
            f = f.try_add(&m)?;
        }
        Ok(f)
    }

    /// Convenience for integer-coefficient forms in tests and families.
    pub fn from_int_terms(dim: usize, degree: usize, terms: &[(&[usize], i64)]) -> Self {
        Self::from_terms(
            dim,
            degree,
            terms.iter().map(|(i, c)| (i.to_vec(), F::from_i64(*c))),
        )
        .expect("valid terms")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn near_zero(&self, tol: f64) -> bool {
        self.coeffs.values().all(|c| c.near_zero(tol))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, b: Blade, c: F) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.remove(&b) {
            Some(old) => {
                let s = old + &c;
                if !s.is_zero() {
                    self.coeffs.insert(b, s);
                }
            }
            None => {
                self.coeffs.insert(b, c);
            }
        }
    }

    pub fn blade_coeff(&self, b: Blade) -> F {
        self.coeffs.get(&b).cloned().unwrap_or_else(F::zero)
    }

    /// Coefficient of `e^{indices}` (any order; sign applied).
    pub fn coeff(&self, indices: &[usize]) -> F {
        match Self::monomial(self.dim, indices, F::one()) {
            Ok(m) => match m.coeffs.iter().next() {
                Some((b, s)) => self.blade_coeff(*b) * s,
                None => F::zero(),
            },
            Err(_) => F::zero(),
        }
    }

    /// Coefficient of the top-degree monomial.
    pub fn top_coeff(&self) -> F {
        if self.degree != self.dim {
            return F::zero();
        }
        self.blade_coeff(Blade(((1u16 << self.dim) - 1) as u8))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Blade, &F)> {
        self.coeffs.iter().map(|(b, c)| (*b, c))
    }

    /// Terms as `(1-based indices, coefficient)` in lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, F)> {
        let mut t: Vec<(Vec<usize>, F)> = self
            .coeffs
            .iter()
            .map(|(b, c)| (b.indices(), c.clone()))
            .collect();
        t.sort_by(|a, b| a.0.cmp(&b.0));
        t
    }

    pub fn support_within(&self, indices: &[usize]) -> bool {
        let mask: u8 = indices.iter().fold(0, |m, &i| m | (1 << (i - 1)));
        self.coeffs.keys().all(|b| b.0 & !mask == 0)
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(b, c)| (*b, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, c) in &self.coeffs {
            out.add_term(*b, c.clone() * s);
        }
        out
    }

    pub fn scale_i(&self, n: i64) -> Self {
        self.scale(&F::from_i64(n))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(Error::DegreeMismatch(format!(
                "wedge of degrees {} and {} exceeds dimension {}",
                self.degree, other.degree, self.dim
            )));
        }
        let mut out = Self::zero(self.dim, degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some(neg) = Blade::wedge_sign(*a, *b) {
                    let v = ca.clone() * cb;
                    out.add_term(Blade(a.0 | b.0), if neg { -v } else { v });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the basis vector `e_i` (1-based).
    pub fn contract_basis(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.dim, 0));
        }
        let i0 = i - 1;
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (b, c) in &self.coeffs {
            if b.contains0(i0) {
                let before = (b.0 & ((1u8 << i0) - 1)).count_ones();
                let v = c.clone();
                out.add_term(
                    Blade(b.0 & !(1 << i0)),
                    if before % 2 == 1 { -v } else { v },
                );
            }
        }
        Ok(out)
    }

    /// Interior product `x ⌟ self`.
    pub fn contract(&self, x: &[F]) -> Result<Self> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.dim, 0));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let part = self.contract_basis(i + 1)?;
            for (b, c) in &part.coeffs {
                out.add_term(*b, c.clone() * xi);
            }
        }
        Ok(out)
    }

    /// `self(v1, ..., vk)`.
    pub fn evaluate(&self, vectors: &[&[F]]) -> Result<F> {
        if vectors.len() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "evaluating a {}-form on {} vectors",
                self.degree,
                vectors.len()
            )));
        }
        let mut cur = self.clone();
        for v in vectors {
            cur = cur.contract(v)?;
        }
        Ok(cur.blade_coeff(Blade(0)))
    }

    pub fn hodge_star(&self, m: &Metric<F>) -> Result<Self> {
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.dim(),
            });
        }
        let n = self.dim;
        let k = self.degree;
        let mut out = Self::zero(n, n - k);
        if m.is_identity() {
            for (b, c) in &self.coeffs {
                let comp = b.complement(n);
                let neg = Blade::wedge_sign(*b, comp).expect("disjoint");
                let neg = neg ^ (m.orientation() < 0);
                out.add_term(comp, if neg { -c.clone() } else { c.clone() });
            }
            return Ok(out);
        }
        let sqrt_det = m.sqrt_det().ok_or(Error::ExactMetricNotIdentity)?;
        let vol = if m.orientation() < 0 {
            -sqrt_det
        } else {
            sqrt_det
        };
        for kb in blades(n, k) {
            let mut coef = F::zero();
            for (ib, c) in &self.coeffs {
                coef = coef + m.blade_inner(kb, *ib) * c;
            }
            if coef.is_zero() {
                continue;
            }
            let comp = kb.complement(n);
            let neg = Blade::wedge_sign(kb, comp).expect("disjoint");
            let v = coef * &vol;
            out.add_term(comp, if neg { -v } else { v });
        }
        Ok(out)
    }

    /// Induced inner product on k-forms.
    pub fn inner(&self, other: &Self, m: &Metric<F>) -> Result<F> {
        self.check_same_shape(other)?;
        if m.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: m.dim(),
            });
        }
        if m.is_identity() {
            return Ok(self
                .coeffs
                .iter()
                .filter_map(|(b, c)| other.coeffs.get(b).map(|d| c.clone() * d))
                .fold(F::zero(), |a, x| a + x));
        }
        let mut acc = F::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                acc = acc + m.blade_inner(*a, *b) * ca * cb;
            }
        }
        Ok(acc)
    }

    /// Pull back along the change of basis whose columns are the new basis
    /// vectors in old coordinates: `e^i ↦ Σ_a W[i][a] f^a`.
    pub fn pullback(&self, w: &Mat<F>) -> Self {
        assert_eq!(w.rows(), self.dim);
        assert_eq!(w.cols(), self.dim);
        let mut out = Self::zero(self.dim, self.degree);
        let targets = blades(self.dim, self.degree);
        for (b, c) in &self.coeffs {
            let rows = b.indices0();
            for t in &targets {
                let minor = w.submatrix(&rows, &t.indices0()).det();
                if !minor.is_zero() {
                    out.add_term(*t, minor * c);
                }
            }
        }
        out
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> F {
        self.coeffs.values().fold(F::zero(), |a, c| a + c.abs())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn map_kind<G: Field>(&self, f: impl Fn(&F) -> G) -> KForm<G> {
        let mut out = KForm::<G>::zero(self.dim, self.degree);
        for (b, c) in &self.coeffs {
            out.add_term(*b, f(c));
        }
        out
    }

    pub fn to_f64(&self) -> KForm<f64> {
        self.map_kind(|c| c.to_f64())
    }

    /// Components `(i, j) ↦ a(e_i, e_j)` of a 2-form as a skew matrix.
    pub fn two_form_matrix(&self) -> Result<Mat<F>> {
        if self.degree != 2 {
            return Err(Error::DegreeMismatch(format!(
                "expected a 2-form, got degree {}",
                self.degree
            )));
        }
        let mut m = Mat::zeros(self.dim, self.dim);
        for (b, c) in &self.coeffs {
            let idx = b.indices0();
            m[(idx[0], idx[1])] = c.clone();
            m[(idx[1], idx[0])] = -c.clone();
        }
        Ok(m)
    }

    pub fn from_two_form_matrix(a: &Mat<F>) -> Self {
        let n = a.rows();
        let mut out = Self::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                out.add_term(Blade((1 << i) | (1 << j)), a[(i, j)].clone());
            }
        }
        out
    }
}

impl<F: Field> Add for &KForm<F> {
    type Output = KForm<F>;
    fn add(self, rhs: &KForm<F>) -> KForm<F> {
        self.try_add(rhs).expect("form shapes must match")
    }
}

impl<F: Field> Sub for &KForm<F> {
    type Output = KForm<F>;
    fn sub(self, rhs: &KForm<F>) -> KForm<F> {
        self.try_sub(rhs).expect("form shapes must match")
    }
}

impl<F: Field> Add for KForm<F> {
    type Output = KForm<F>;
    fn add(self, rhs: KForm<F>) -> KForm<F> {
        &self + &rhs
    }
}

impl<F: Field> Sub for KForm<F> {
    type Output = KForm<F>;
    fn sub(self, rhs: KForm<F>) -> KForm<F> {
        &self - &rhs
    }
}

impl<F: Field> Neg for &KForm<F> {
    type Output = KForm<F>;
    fn neg(self) -> KForm<F> {
        self.neg_ref()
    }
}

impl<F: Field> Neg for KForm<F> {
    type Output = KForm<F>;
    fn neg(self) -> KForm<F> {
        self.neg_ref()
    }
}

impl<F: Field> fmt::Display for KForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (idx, c) in self.terms() {
            let name: String = if idx.is_empty() {
                String::new()
            } else {
                let digits: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                format!("e^{{{}}}", digits.join(""))
            };
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if name.is_empty() {
                f.write_str(&mag)?;
            } else if mag == "1" || mag == "1.0" {
                f.write_str(&name)?;
            } else {
                write!(f, "{mag} {name}")?;
            }
        }
        Ok(())
    }
}

/// Positive definite inner product with an orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric<F> {
    g: Mat<F>,
    ginv: Mat<F>,
    orientation: i8,
    identity: bool,
    sqrt_det: Option<F>,
}

impl<F: Field> Metric<F> {
    pub fn identity(dim: usize) -> Self {
        Metric {
            g: Mat::identity(dim),
            ginv: Mat::identity(dim),
            orientation: 1,
            identity: true,
            sqrt_det: Some(F::one()),
        }
    }

    pub fn new(g: Mat<F>, orientation: i8) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DegenerateMetric("not square".into()));
        }
        if !g.is_symmetric() {
            return Err(Error::DegenerateMetric("not symmetric".into()));
        }
        let n = g.rows();
        if F::KIND == crate::scalar::ScalarKind::Exact {
            for k in 1..=n {
                let idx: Vec<usize> = (0..k).collect();
                if !g.submatrix(&idx, &idx).det().is_positive() {
                    return Err(Error::DegenerateMetric(format!(
                        "leading minor {k} not positive"
                    )));
                }
            }
        } else if !cholesky_ok(&g.to_f64()) {
            return Err(Error::DegenerateMetric(
                "Cholesky factorization failed".into(),
            ));
        }
        let ginv = g
            .inverse()
            .ok_or_else(|| Error::DegenerateMetric("singular".into()))?;
        let identity = g == Mat::identity(n);
        let sqrt_det = g.det().sqrt();
        Ok(Metric {
            g,
            ginv,
            orientation: if orientation < 0 { -1 } else { 1 },
            identity,
            sqrt_det,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.g
    }

    pub fn inverse(&self) -> &Mat<F> {
        &self.ginv
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn is_identity(&self) -> bool {
        self.identity
    }

    pub fn sqrt_det(&self) -> Option<F> {
        self.sqrt_det.clone()
    }

    pub fn inner(&self, a: &[F], b: &[F]) -> F {
        if self.identity {
            crate::linalg::dot(a, b)
        } else {
            bilinear(&self.g, a, b)
        }
    }

    /// `v^♭` as a 1-form.
    pub fn flat(&self, v: &[F]) -> KForm<F> {
        let w = if self.identity {
            v.to_vec()
        } else {
            self.g.mul_vec(v)
        };
        let n = self.dim();
        let mut out = KForm::zero(n, 1);
        for (i, c) in w.into_iter().enumerate() {
            out.add_term(Blade(1 << i), c);
        }
        out
    }

    /// `α^♯` for a 1-form α.
    pub fn sharp(&self, a: &KForm<F>) -> Vec<F> {
        assert_eq!(a.degree(), 1);
        let n = self.dim();
        let v: Vec<F> = (0..n).map(|i| a.blade_coeff(Blade(1 << i))).collect();
        if self.identity {
            v
        } else {
            self.ginv.mul_vec(&v)
        }
    }

    /// `⟨e^A, e^B⟩ = det(g^{-1}[A, B])`.
    pub fn blade_inner(&self, a: Blade, b: Blade) -> F {
        if a.degree() != b.degree() {
            return F::zero();
        }
        if self.identity {
            return if a == b { F::one() } else { F::zero() };
        }
        self.ginv.submatrix(&a.indices0(), &b.indices0()).det()
    }

    pub fn to_f64(&self) -> Metric<f64> {
        Metric {
            g: self.g.to_f64(),
            ginv: self.ginv.to_f64(),
            orientation: self.orientation,
            identity: self.identity,
            sqrt_det: self
                .sqrt_det
                .as_ref()
                .map(|s| s.to_f64())
                .or_else(|| Some(f64::sqrt(self.g.to_f64().det()))),
        }
    }
}

fn cholesky_ok(g: &Mat<f64>) -> bool {
    let n = g.rows();
    let mut l = Mat::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = g[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            if i == j {
                if s <= 0.0 {
                    return false;
                }
                l[(i, i)] = s.sqrt();
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    true
}

/// A metric-skew endomorphism, stored as an ambient matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewEndo<F> {
    matrix: Mat<F>,
}

impl<F: Field> SkewEndo<F> {
    pub fn new(matrix: Mat<F>, m: &Metric<F>) -> Result<Self> {
        let gm = m.matrix().mul(&matrix);
        let skew = gm.add(&gm.transpose());
        if !skew.is_zero() {
            return Err(Error::Inconsistent(
                "endomorphism is not skew for the metric".into(),
            ));
        }
        Ok(SkewEndo { matrix })
    }

    pub fn new_unchecked(matrix: Mat<F>) -> Self {
        SkewEndo { matrix }
    }

    pub fn matrix(&self) -> &Mat<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat<F> {
        self.matrix
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.matrix.mul_vec(v)
    }

    pub fn bracket(&self, other: &Self) -> Self {
        SkewEndo {
            matrix: self.matrix.commutator(&other.matrix),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// `a ↦ E` with `g(E x, y) = a(x, y)`; under this convention `d z^♭ ↦ -j(z)`.
pub fn two_form_to_endo<F: Field>(a: &KForm<F>, m: &Metric<F>) -> Result<SkewEndo<F>> {
    let ahat = a.two_form_matrix()?;
    if ahat.rows() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: ahat.rows(),
        });
    }
    Ok(SkewEndo {
        matrix: m.inverse().mul(&ahat).neg(),
    })
}

/// Inverse of [`two_form_to_endo`]: `a(x, y) = g(E x, y)`.
pub fn endo_to_two_form<F: Field>(e: &SkewEndo<F>, m: &Metric<F>) -> KForm<F> {
    // a_ij = g(E e_i, e_j) = (E^T g)_ij
    let ahat = e.matrix().transpose().mul(m.matrix());
    KForm::from_two_form_matrix(&ahat)
}

/// Self-dual / anti-self-dual split of a 2-form supported on the oriented
/// coordinate 4-plane `plane` (1-based, orientation `e^{plane}`).
pub fn sd_asd_split_on<F: Field>(a: &KForm<F>, plane: [usize; 4]) -> Result<(KForm<F>, KForm<F>)> {
    if a.degree() != 2 {
        return Err(Error::DegreeMismatch(format!(
            "expected a 2-form, got degree {}",
            a.degree()
        )));
    }
    if !a.support_within(&plane) {
        return Err(Error::OutsideSubspace(plane.to_vec()));
    }
    let star = star4(a, plane)?;
    let half = F::from_ratio(1, 2);
    let plus = (a + &star).scale(&half);
    let minus = (a - &star).scale(&half);
    Ok((plus, minus))
}

/// Split on `⟨e1, e2, e3, e4⟩` with orientation `e^{1234}`.
pub fn sd_asd_split<F: Field>(a: &KForm<F>) -> Result<(KForm<F>, KForm<F>)> {
    sd_asd_split_on(a, [1, 2, 3, 4])
}

/// Hodge star of a 2-form within an oriented coordinate 4-plane.
pub fn star4<F: Field>(a: &KForm<F>, plane: [usize; 4]) -> Result<KForm<F>> {
    let mut out = KForm::zero(a.dim(), 2);
    for (idx, c) in a.terms() {
        let pos: Vec<usize> = idx
            .iter()
            .map(|i| {
                plane
                    .iter()
                    .position(|p| p == i)
                    .ok_or(Error::OutsideSubspace(plane.to_vec()))
            })
            .collect::<Result<_>>()?;
        let rest: Vec<usize> = (0..4).filter(|p| !pos.contains(p)).collect();
        let perm = [pos[0], pos[1], rest[0], rest[1]];
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        let v = if inv % 2 == 1 { -c } else { c };
        out = &out + &KForm::monomial(a.dim(), &[plane[rest[0]], plane[rest[1]]], v)?;
    }
    Ok(out)
}
