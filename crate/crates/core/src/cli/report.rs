//! The JSON report document and its human rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::document::{FormTerm, InputDocument};
use crate::g2::TorsionClass;
use crate::instanton::{Caracg2Verdict, CaseParams, ClassificationResult, NaturallyReductive};
use crate::liealg::ValidationReport;
use crate::scalar::{Scalar, ScalarKind};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationSection {
    pub lie: ValidationReport,
    pub phi_positive: bool,
    pub metric_is_identity: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionSection {
    pub class: TorsionClass,
    pub tau0: Scalar,
    /// `¼ ⋆(φ ∧ dφ)`.
    pub mu: Scalar,
    pub purely_coclosed: bool,
    pub tau1: Vec<FormTerm>,
    pub tau2: Vec<FormTerm>,
    pub tau3: Vec<FormTerm>,
    pub characteristic_torsion: Option<Vec<FormTerm>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupVerdict {
    pub name: String,
    pub max_norm: Scalar,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResidualEntry {
    pub alpha: usize,
    pub beta: usize,
    pub group: String,
    pub norm: Scalar,
    pub form: Vec<FormTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaVerdict {
    pub lambda: Scalar,
    pub is_instanton: bool,
    pub max_residual: Scalar,
    pub groups: Vec<GroupVerdict>,
    /// Nonzero components `(R)^α_β ∧ ψ`; empty in sweeps.
    pub residuals: Vec<ResidualEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstantonSection {
    pub sweep: bool,
    pub tol: f64,
    pub evaluations: Vec<LambdaVerdict>,
    pub instanton_lambdas: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolonomySection {
    pub lambda: Scalar,
    pub dim: usize,
    pub bracket_only_dim: usize,
    pub killing_signature: [usize; 3],
    pub killing_negative_definite: bool,
    pub fixed_dim: usize,
    /// `[X_a, X_b] = Σ_c bracket_table[a][b][c] X_c`.
    pub bracket_table: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub version: u32,
    pub command: String,
    pub scalar_mode: ScalarKind,
    pub banner: String,
    pub echo: InputDocument,
    pub validation: ValidationSection,
    pub torsion: Option<TorsionSection>,
    pub instanton: Option<InstantonSection>,
    pub classification: Option<ClassificationResult>,
    pub criterion: Option<Caracg2Verdict>,
    pub holonomy: Option<HolonomySection>,
    pub naturally_reductive: Option<NaturallyReductive>,
    pub errors: Vec<String>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn format_terms(ts: &[FormTerm]) -> String {
    if ts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, t) in ts.iter().enumerate() {
        let c = t.coeff.to_string();
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        let idx: String = t.indices.iter().map(|i| i.to_string()).collect();
        let sign = match (n, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        };
        let coeff = if mag == "1" {
            String::new()
        } else {
            format!("{mag} ")
        };
        let _ = write!(out, "{sign}{coeff}e{idx}");
    }
    out
}

fn render_validation(out: &mut String, v: &ValidationSection) {
    let l = &v.lie;
    let _ = writeln!(
        out,
        "Lie algebra: {}",
        if l.valid { "valid" } else { "INVALID" }
    );
    let _ = writeln!(out, "  antisymmetric: {}", yn(l.antisymmetric));
    let _ = writeln!(out, "  Jacobi (d² = 0): {}", yn(l.jacobi));
    let step = l
        .nilpotency_step
        .map(|s| s.to_string())
        .unwrap_or_else(|| "not nilpotent".into());
    let _ = writeln!(out, "  nilpotency step: {step}, 2-step: {}", yn(l.two_step));
    let _ = writeln!(
        out,
        "  dim g' = {}, dim center = {}",
        l.dim_commutator, l.dim_center
    );
    for m in &l.messages {
        let _ = writeln!(out, "  {m}");
    }
    let _ = writeln!(
        out,
        "phi: {}, metric is identity: {}",
        if v.phi_positive {
            "positive"
        } else {
            "not positive"
        },
        yn(v.metric_is_identity)
    );
}

fn render_torsion(out: &mut String, t: &TorsionSection) {
    let _ = writeln!(out, "torsion class: {}", t.class.label);
    let _ = writeln!(
        out,
        "coclosed: {}, purely coclosed: {}",
        yn(t.class.coclosed),
        yn(t.purely_coclosed)
    );
    let _ = writeln!(out, "closed: {}", yn(t.class.closed));
    let _ = writeln!(out, "tau0 = {}, mu = {}", t.tau0, t.mu);
    let _ = writeln!(out, "tau1 = {}", format_terms(&t.tau1));
    let _ = writeln!(out, "tau2 = {}", format_terms(&t.tau2));
    let _ = writeln!(out, "tau3 = {}", format_terms(&t.tau3));
    match &t.characteristic_torsion {
        Some(ts) => {
            let _ = writeln!(out, "characteristic torsion T = {}", format_terms(ts));
        }
        None => {
            let _ = writeln!(out, "no characteristic connection (tau2 != 0)");
        }
    }
}

fn render_instanton(out: &mut String, s: &InstantonSection) {
    if s.sweep {
        let _ = writeln!(out, "{:<12} {:<24} instanton", "lambda", "max residual");
        for e in &s.evaluations {
            let _ = writeln!(
                out,
                "{:<12} {:<24} {}",
                e.lambda.to_string(),
                e.max_residual.to_string(),
                yn(e.is_instanton)
            );
        }
        if s.instanton_lambdas.is_empty() {
            let _ = writeln!(out, "INSTANTON: no (no lambda in the grid)");
        } else {
            let ls: Vec<String> = s.instanton_lambdas.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(out, "INSTANTON: yes at lambda = {}", ls.join(", "));
        }
        return;
    }
    for e in &s.evaluations {
        let _ = writeln!(out, "lambda = {}", e.lambda);
        let _ = writeln!(out, "INSTANTON: {}", yn(e.is_instanton));
        let _ = writeln!(out, "max residual: {}", e.max_residual);
        for g in &e.groups {
            let _ = writeln!(
                out,
                "  group {:<5} max {:<20} {}",
                g.name,
                g.max_norm.to_string(),
                if g.vanishes { "vanishes" } else { "nonzero" }
            );
        }
        if !e.residuals.is_empty() {
            let _ = writeln!(out, "residuals (R)^a_b ∧ psi:");
            for r in &e.residuals {
                let _ = writeln!(
                    out,
                    "  a={} b={} group {:<5} norm {:<16} {}",
                    r.alpha,
                    r.beta,
                    r.group,
                    r.norm.to_string(),
                    format_terms(&r.form)
                );
            }
        }
    }
}

fn render_classification(out: &mut String, c: &ClassificationResult) {
    let _ = writeln!(out, "classification: {}", c.case.label());
    let _ = writeln!(out, "  dim g' = {}, mu = {}", c.dim_commutator, c.mu);
    let _ = writeln!(
        out,
        "  instanton at lambda = 1: {} (max residual {})",
        yn(c.instanton_at_one),
        c.max_residual_at_one
    );
    match &c.params {
        Some(CaseParams::Heis { a, b }) => {
            let _ = writeln!(
                out,
                "  normal form: de7 = a(e12 - e56) + b(e34 - e56) with a = {a}, b = {b}"
            );
        }
        Some(CaseParams::Quaternionic { nu }) => {
            let _ = writeln!(
                out,
                "  normal form: quaternionic Heisenberg, de(i+4) = nu sigma_i^+ with nu = {nu}"
            );
        }
        Some(CaseParams::N32 { nu }) => {
            let _ = writeln!(
                out,
                "  normal form: de5 = -2nu e24, de6 = -2nu e23, de7 = 2nu e34 with nu = {nu}"
            );
        }
        None => {}
    }
    if let Some(w) = &c.witness {
        let _ = writeln!(
            out,
            "  witness basis ({} mode, columns are the new basis vectors):",
            w.mode.name()
        );
        for row in &w.matrix {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "    [{}]", cells.join(", "));
        }
    }
    if c.downgraded {
        let _ = writeln!(out, "  note: witness computed in float mode");
    }
    for n in &c.notes {
        let _ = writeln!(out, "  {n}");
    }
}

fn render_criterion(out: &mut String, v: &Caracg2Verdict) {
    if !v.applicable {
        let _ = writeln!(
            out,
            "basis-free criterion: not applicable (dim g' = {})",
            v.dim_commutator
        );
        return;
    }
    let _ = writeln!(
        out,
        "basis-free criterion: {}",
        if v.holds { "holds" } else { "fails" }
    );
    let mu =
        v.mu.as_ref()
            .map(|m| m.to_string())
            .unwrap_or_else(|| "-".into());
    let _ = writeln!(
        out,
        "  calibrated: {}, S = (mu/3) Id: {}, j-condition: {}, mu = {mu}",
        yn(v.calibrated),
        yn(v.sigma_mu),
        yn(v.jcond)
    );
    let ls: Vec<String> = v.admissible_lambda.iter().map(|l| l.to_string()).collect();
    let _ = writeln!(out, "  admissible lambda: {{{}}}", ls.join(", "));
    for f in &v.failures {
        let _ = writeln!(out, "  {f}");
    }
}

fn render_holonomy(out: &mut String, h: &HolonomySection) {
    let _ = writeln!(out, "holonomy of nabla^{}: dim {}", h.lambda, h.dim);
    let _ = writeln!(
        out,
        "  generated by curvature alone: dim {}",
        h.bracket_only_dim
    );
    let [p, n, z] = h.killing_signature;
    let _ = writeln!(
        out,
        "  Killing form signature (+{p}, -{n}, 0:{z}), negative definite: {}",
        yn(h.killing_negative_definite)
    );
    let _ = writeln!(out, "  common kernel: dim {}", h.fixed_dim);
    for (a, row) in h.bracket_table.iter().enumerate() {
        for (b, coords) in row.iter().enumerate().skip(a + 1) {
            if coords.iter().any(|c| !c.is_zero()) {
                let cells: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "  [X{}, X{}] = ({})", a + 1, b + 1, cells.join(", "));
            }
        }
    }
}

pub fn render_human(r: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.banner);
    render_validation(&mut out, &r.validation);
    if let Some(t) = &r.torsion {
        render_torsion(&mut out, t);
    }
    if let Some(i) = &r.instanton {
        render_instanton(&mut out, i);
    }
    if let Some(c) = &r.classification {
        render_classification(&mut out, c);
    }
    if let Some(v) = &r.criterion {
        render_criterion(&mut out, v);
    }
    if let Some(h) = &r.holonomy {
        render_holonomy(&mut out, h);
    }
    if let Some(n) = &r.naturally_reductive {
        let _ = writeln!(
            out,
            "nabla^1 T = 0: {}, nabla^1 R = 0: {}, naturally reductive: {}",
            yn(n.torsion_parallel),
            yn(n.curvature_parallel),
            yn(n.naturally_reductive)
        );
    }
    for e in &r.errors {
        let _ = writeln!(out, "error: {e}");
    }
    out
}
