//! The TOML input document and its conversion to an algebra with a G2-structure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::g2::{phi0, G2Structure};
use crate::instanton::builtin_family;
use crate::liealg::LieAlgebra;
use crate::scalar::{Field, Scalar, ScalarKind};

pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormTerm {
    pub indices: Vec<usize>,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhiSpec {
    Named(String),
    Terms(Vec<FormTerm>),
}

impl Default for PhiSpec {
    fn default() -> Self {
        PhiSpec::Named("standard".into())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRef {
    pub name: String,
    #[serde(default)]
    pub params: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_mode: Option<ScalarKind>,
    #[serde(default = "default_dim")]
    pub basis_dim: usize,
    #[serde(default)]
    pub phi: PhiSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRef>,
}

fn default_dim() -> usize {
    7
}

/// A syntax or schema failure.
#[derive(Debug)]
pub enum DocError {
    Parse(String),
}

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DocError::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl InputDocument {
    pub fn parse(text: &str) -> std::result::Result<Self, DocError> {
        let doc: InputDocument =
            toml::from_str(text).map_err(|e| DocError::Parse(e.message().to_string()))?;
        doc.check()?;
        Ok(doc)
    }

    fn literals(&self) -> Vec<&Scalar> {
        let mut out: Vec<&Scalar> = self.brackets.iter().map(|b| &b.coeff).collect();
        if let PhiSpec::Terms(ts) = &self.phi {
            out.extend(ts.iter().map(|t| &t.coeff));
        }
        if let Some(f) = &self.family {
            out.extend(f.params.iter());
        }
        out
    }

    /// Exact unless the document asks for float or contains a decimal literal.
    pub fn mode(&self) -> ScalarKind {
        match self.scalar_mode {
            Some(m) => m,
            None if self
                .literals()
                .iter()
                .any(|s| s.kind() == ScalarKind::Float) =>
            {
                ScalarKind::Float
            }
            None => ScalarKind::Exact,
        }
    }

    fn check(&self) -> std::result::Result<(), DocError> {
        let p = |m: String| Err(DocError::Parse(m));
        if self.version != DOCUMENT_VERSION {
            return p(format!("unsupported version {}", self.version));
        }
        if self.basis_dim != 7 {
            return p(format!("basis_dim must be 7, got {}", self.basis_dim));
        }
        if self.family.is_some() && !self.brackets.is_empty() {
            return p("a named family and explicit brackets are mutually exclusive".into());
        }
        if self.family.is_some() && self.phi != PhiSpec::default() {
            return p("a named family fixes phi; remove the phi entry".into());
        }
        if self.scalar_mode == Some(ScalarKind::Exact) {
            if let Some(s) = self
                .literals()
                .iter()
                .find(|s| s.kind() == ScalarKind::Float)
            {
                return p(format!("decimal literal {s} in an exact document"));
            }
        }
        for b in &self.brackets {
            for x in [b.i, b.j, b.k] {
                if x == 0 || x > 7 {
                    return p(format!("bracket index {x} out of range 1..=7"));
                }
            }
        }
        match &self.phi {
            PhiSpec::Named(n) if n != "standard" => {
                return p(format!(
                    "unknown phi '{n}', expected \"standard\" or a list of terms"
                ))
            }
            PhiSpec::Terms(ts) => {
                for t in ts {
                    if t.indices.len() != 3
                        || t.indices.windows(2).any(|w| w[0] >= w[1])
                        || t.indices.iter().any(|&x| x == 0 || x > 7)
                    {
                        return p(format!("phi term indices {:?} must be three strictly increasing values in 1..=7", t.indices));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn lift<F: Field>(s: &Scalar) -> Result<F> {
        match (F::KIND, s) {
            (ScalarKind::Float, Scalar::Exact(q)) => {
                F::from_scalar(&Scalar::Float(Field::to_f64(q)))
            }
            _ => F::from_scalar(s),
        }
    }

    /// The algebra and G2-structure described by the document. Errors are
    /// input errors (non-positive φ, bad family parameters).
    pub fn build<F: Field>(&self) -> Result<(LieAlgebra<F>, G2Structure<F>)> {
        if let Some(f) = &self.family {
            let params = f
                .params
                .iter()
                .map(Self::lift)
                .collect::<Result<Vec<F>>>()?;
            return builtin_family(&f.name, &params);
        }
        let entries = self
            .brackets
            .iter()
            .map(|b| Ok((b.i, b.j, b.k, Self::lift(&b.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        let l = LieAlgebra::from_brackets(7, &entries)?;
        let s = match &self.phi {
            PhiSpec::Named(_) => G2Structure::standard(),
            PhiSpec::Terms(ts) => {
                let mut phi = KForm::zero(7, 3);
                for t in ts {
                    phi = phi + KForm::monomial(7, &t.indices, Self::lift(&t.coeff)?)?;
                }
                G2Structure::new(phi)?
            }
        };
        Ok((l, s))
    }

    /// An explicit document (brackets and φ written out) for an algebra.
    pub fn from_structure<F: Field>(l: &LieAlgebra<F>, s: &G2Structure<F>) -> Self {
        let brackets = l
            .bracket_entries()
            .into_iter()
            .filter(|(i, j, _, _)| i < j)
            .map(|(i, j, k, c)| BracketEntry {
                i,
                j,
                k,
                coeff: c.to_scalar(),
            })
            .collect();
        let phi = if s.phi == phi0() {
            PhiSpec::default()
        } else {
            PhiSpec::Terms(
                s.phi
                    .terms()
                    .into_iter()
                    .map(|(indices, c)| FormTerm {
                        indices,
                        coeff: c.to_scalar(),
                    })
                    .collect(),
            )
        };
        InputDocument {
            version: DOCUMENT_VERSION,
            scalar_mode: Some(F::KIND),
            basis_dim: 7,
            phi,
            brackets,
            family: None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("document serializes")
    }
}

/// Writes the explicit document for a built-in family, with a comment line
/// naming it.
pub fn example_document(name: &str, params: &[Scalar]) -> Result<String> {
    let exact = params.iter().all(|p| p.kind() == ScalarKind::Exact);
    let body = if exact {
        let ps = params
            .iter()
            .map(InputDocument::lift)
            .collect::<Result<Vec<crate::scalar::Rational>>>()?;
        let (l, s) = builtin_family(name, &ps)?;
        InputDocument::from_structure(&l, &s)
    } else {
        let ps = params
            .iter()
            .map(InputDocument::lift)
            .collect::<Result<Vec<f64>>>()?;
        let (l, s) = builtin_family(name, &ps)?;
        InputDocument::from_structure(&l, &s)
    };
    let shown: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    Ok(format!(
        "# {name}({})\n{}",
        shown.join(", "),
        body.to_toml()
    ))
}

pub(crate) fn form_terms<F: Field>(f: &KForm<F>) -> Vec<FormTerm> {
    f.terms()
        .into_iter()
        .map(|(indices, c)| FormTerm {
            indices,
            coeff: c.to_scalar(),
        })
        .collect()
}

impl From<DocError> for Error {
    fn from(e: DocError) -> Self {
        match e {
            DocError::Parse(m) => Error::Parse(m),
        }
    }
}
