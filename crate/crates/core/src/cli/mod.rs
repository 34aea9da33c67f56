//! Command implementations behind the `nilg2` binary.
//!
//! Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 parse
//! error, 4 no characteristic connection, 5 not an instanton under `--strict`.

mod document;
mod report;

pub use document::{
    example_document, BracketEntry, DocError, FamilyRef, FormTerm, InputDocument, PhiSpec,
    DOCUMENT_VERSION,
};
pub use report::{
    format_terms, render_human, GroupVerdict, HolonomySection, InstantonSection, LambdaVerdict,
    ReportDocument, ResidualEntry, TorsionSection, ValidationSection, REPORT_VERSION,
};

use std::path::PathBuf;

use crate::connection::{holonomy_algebra, nabla_lambda};
use crate::error::Error;
use crate::g2::{characteristic_torsion, G2Structure, TorsionForms};
use crate::instanton::{
    check_caracg2, classify, default_grid, family_names, instanton_at, lambda_sweep,
    naturally_reductive_check, InstantonReport, GROUP_14, GROUP_1457, GROUP_57,
};
use crate::liealg::LieAlgebra;
use crate::scalar::{Field, Rational, Scalar, ScalarKind, DEFAULT_TOL};
use document::form_terms;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_NO_CHARACTERISTIC: i32 = 4;
pub const EXIT_NOT_INSTANTON: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Machine,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LambdaArg {
    Value(String),
    Sweep,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub lambda: LambdaArg,
    /// Extra sweep values on top of the default grid.
    pub grid: Vec<String>,
    pub tol: Option<f64>,
    pub strict: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub mode: Option<ScalarKind>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            lambda: LambdaArg::Value("1".into()),
            grid: Vec::new(),
            tol: None,
            strict: false,
            out: None,
            format: OutputFormat::Human,
            mode: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Validate(PathBuf),
    Torsion(PathBuf),
    Instanton(PathBuf),
    Classify(PathBuf),
    Holonomy(PathBuf),
    /// Without a name, lists the built-in families.
    Example {
        name: Option<String>,
        params: Vec<String>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Torsion(_) => "torsion",
            Command::Instanton(_) => "instanton",
            Command::Classify(_) => "classify",
            Command::Holonomy(_) => "holonomy",
            Command::Example { .. } => "example",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<ReportDocument>,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            code,
            stderr: format!("{}\n", msg.into()),
            ..Default::default()
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::NoCharacteristicConnection => EXIT_NO_CHARACTERISTIC,
        Error::Inconsistent(_) => EXIT_INTERNAL,
        _ => EXIT_INVALID,
    }
}

pub fn execute(cmd: &Command, opts: &Options) -> Outcome {
    let mut outcome = match cmd {
        Command::Example { name, params } => run_example(name.as_deref(), params),
        Command::Validate(p)
        | Command::Torsion(p)
        | Command::Instanton(p)
        | Command::Classify(p)
        | Command::Holonomy(p) => run_file(cmd, p, opts),
    };
    if let Some(path) = &opts.out {
        if outcome.stdout.is_empty() {
            return outcome;
        }
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return Outcome::fail(
                EXIT_INTERNAL,
                format!("cannot write {}: {e}", path.display()),
            );
        }
        outcome
            .stderr
            .push_str(&format!("wrote {}\n", path.display()));
        outcome.stdout.clear();
    }
    outcome
}

fn run_example(name: Option<&str>, params: &[String]) -> Outcome {
    let Some(name) = name else {
        let mut s = String::new();
        for f in family_names() {
            s.push_str(&format!(
                "{:<11} [{}]  {}\n",
                f.name,
                f.params.join(", "),
                f.about
            ));
        }
        return Outcome {
            stdout: s,
            ..Default::default()
        };
    };
    let parsed = match params
        .iter()
        .map(|p| Scalar::parse(p))
        .collect::<crate::error::Result<Vec<_>>>()
    {
        Ok(p) => p,
        Err(e) => return Outcome::fail(EXIT_PARSE, e.to_string()),
    };
    match example_document(name, &parsed) {
        Ok(text) => Outcome {
            stdout: text,
            ..Default::default()
        },
        Err(e) => Outcome::fail(error_code(&e), e.to_string()),
    }
}

fn run_file(cmd: &Command, path: &PathBuf, opts: &Options) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())),
    };
    let doc = match InputDocument::parse(&text) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(EXIT_PARSE, e.to_string()),
    };
    let mode = opts.mode.unwrap_or_else(|| doc.mode());
    if mode == ScalarKind::Exact && doc.mode() == ScalarKind::Float && doc.scalar_mode.is_none() {
        return Outcome::fail(
            EXIT_PARSE,
            "exact mode requested but the document contains decimal literals",
        );
    }
    let result = match mode {
        ScalarKind::Exact => run_typed::<Rational>(cmd, doc, opts),
        ScalarKind::Float => run_typed::<f64>(cmd, doc, opts),
    };
    let (report, code, mut stderr) = match result {
        Ok(r) => r,
        Err((code, msg)) => return Outcome::fail(code, msg),
    };
    let stdout = match opts.format {
        OutputFormat::Human => render_human(&report),
        OutputFormat::Machine => report.to_json() + "\n",
    };
    if code != EXIT_OK {
        for e in &report.errors {
            stderr.push_str(&format!("{e}\n"));
        }
    }
    Outcome {
        code,
        stdout,
        stderr,
        report: Some(report),
    }
}

type Failure = (i32, String);

fn fail(e: Error) -> Failure {
    (error_code(&e), e.to_string())
}

fn parse_lambda<F: Field>(text: &str) -> Result<F, Failure> {
    Scalar::parse_as(text, F::KIND)
        .and_then(|s| F::from_scalar(&s))
        .map_err(|e| (EXIT_PARSE, format!("bad lambda '{text}': {e}")))
}

fn verdict<F: Field>(rep: &InstantonReport<F>, details: bool) -> LambdaVerdict {
    let group_of = |a: usize, b: usize| {
        let (qa, qb) = (a <= 4, b <= 4);
        match (qa, qb) {
            (false, false) => GROUP_57,
            (true, true) => GROUP_14,
            _ => GROUP_1457,
        }
    };
    let mut residuals = Vec::new();
    if details {
        for a in 1..=rep.residuals.len() {
            for b in 1..=rep.residuals.len() {
                let f = rep.residual(a, b);
                if !f.is_zero() {
                    residuals.push(ResidualEntry {
                        alpha: a,
                        beta: b,
                        group: group_of(a, b).to_string(),
                        norm: f.l1_norm().to_scalar(),
                        form: form_terms(f),
                    });
                }
            }
        }
    }
    LambdaVerdict {
        lambda: rep.lambda.clone().unwrap_or_else(F::one).to_scalar(),
        is_instanton: rep.is_instanton,
        max_residual: rep.max_residual_norm.to_scalar(),
        groups: rep
            .groups
            .iter()
            .map(|g| GroupVerdict {
                name: g.name.to_string(),
                max_norm: g.max_norm.to_scalar(),
                vanishes: g.vanishes,
            })
            .collect(),
        residuals,
    }
}

fn torsion_section<F: Field>(
    l: &LieAlgebra<F>,
    s: &G2Structure<F>,
    tol: f64,
) -> Result<TorsionSection, Failure> {
    let tf = TorsionForms::compute(l, s).map_err(fail)?;
    let class = tf.class(tol);
    let t = characteristic_torsion(s, &tf, tol).ok();
    Ok(TorsionSection {
        purely_coclosed: class.coclosed && tf.tau0.near_zero(tol),
        class,
        mu: crate::instanton::mu_from_tau0(&tf.tau0, l.commutator().dim()).to_scalar(),
        tau0: tf.tau0.to_scalar(),
        tau1: form_terms(&tf.tau1),
        tau2: form_terms(&tf.tau2),
        tau3: form_terms(&tf.tau3),
        characteristic_torsion: t.as_ref().map(form_terms),
    })
}

fn run_typed<F: Field>(
    cmd: &Command,
    doc: InputDocument,
    opts: &Options,
) -> Result<(ReportDocument, i32, String), Failure> {
    let tol = opts.tol.unwrap_or(if F::KIND == ScalarKind::Exact {
        0.0
    } else {
        DEFAULT_TOL
    });
    let (l, s) = doc.build::<F>().map_err(fail)?;
    let lie = l.validate();
    let valid = lie.valid;
    let mut report = ReportDocument {
        version: REPORT_VERSION,
        command: cmd.name().to_string(),
        scalar_mode: F::KIND,
        banner: format!("nilg2 {} [scalar mode: {}]", cmd.name(), F::KIND.name()),
        echo: doc,
        validation: ValidationSection {
            lie,
            phi_positive: true,
            metric_is_identity: s.metric.is_identity(),
        },
        torsion: None,
        instanton: None,
        classification: None,
        criterion: None,
        holonomy: None,
        naturally_reductive: None,
        errors: Vec::new(),
    };
    if !valid {
        report.errors.extend(report.validation.lie.messages.clone());
        return Ok((report, EXIT_INVALID, String::new()));
    }
    let mut code = EXIT_OK;
    let stderr = String::new();
    match cmd {
        Command::Validate(_) | Command::Example { .. } => {}
        Command::Torsion(_) => report.torsion = Some(torsion_section(&l, &s, tol)?),
        Command::Instanton(_) => {
            let ts = torsion_section(&l, &s, tol)?;
            let has_char = ts.characteristic_torsion.is_some();
            report.torsion = Some(ts);
            if !has_char {
                report
                    .errors
                    .push(Error::NoCharacteristicConnection.to_string());
                return Ok((report, EXIT_NO_CHARACTERISTIC, stderr));
            }
            let section = match &opts.lambda {
                LambdaArg::Value(v) => {
                    let lam: F = parse_lambda(v)?;
                    let rep = instanton_at(&l, &s, &lam, tol).map_err(fail)?;
                    let v = verdict(&rep, true);
                    InstantonSection {
                        sweep: false,
                        tol,
                        instanton_lambdas: if v.is_instanton {
                            vec![v.lambda.clone()]
                        } else {
                            Vec::new()
                        },
                        evaluations: vec![v],
                    }
                }
                LambdaArg::Sweep => {
                    let mut grid: Vec<F> = default_grid();
                    for g in &opts.grid {
                        grid.push(parse_lambda(g)?);
                    }
                    let rows = lambda_sweep(&l, &s, &grid, tol).map_err(fail)?;
                    let evaluations: Vec<LambdaVerdict> = rows
                        .iter()
                        .map(|r| LambdaVerdict {
                            lambda: r.lambda.to_scalar(),
                            is_instanton: r.is_instanton,
                            max_residual: r.max_residual.to_scalar(),
                            groups: Vec::new(),
                            residuals: Vec::new(),
                        })
                        .collect();
                    InstantonSection {
                        sweep: true,
                        tol,
                        instanton_lambdas: evaluations
                            .iter()
                            .filter(|e| e.is_instanton)
                            .map(|e| e.lambda.clone())
                            .collect(),
                        evaluations,
                    }
                }
            };
            if opts.strict && section.instanton_lambdas.is_empty() {
                code = EXIT_NOT_INSTANTON;
                report.errors.push("not an instanton".into());
            }
            report.instanton = Some(section);
        }
        Command::Classify(_) => {
            report.torsion = Some(torsion_section(&l, &s, tol)?);
            let c = classify(&l, &s, tol).map_err(fail)?;
            if opts.strict && !c.instanton_at_one {
                code = EXIT_NOT_INSTANTON;
                report.errors.push("not an instanton".into());
            }
            report.classification = Some(c);
            report.criterion = Some(check_caracg2(&l, &s, tol).map_err(fail)?);
        }
        Command::Holonomy(_) => {
            let lam: F = match &opts.lambda {
                LambdaArg::Value(v) => parse_lambda(v)?,
                LambdaArg::Sweep => {
                    return Err((EXIT_PARSE, "holonomy takes a single lambda".into()))
                }
            };
            let c = nabla_lambda(&l, &s, &lam).map_err(fail)?;
            let h = holonomy_algebra(&c, &l);
            let (p, n, z) = h.killing_signature;
            report.holonomy = Some(HolonomySection {
                lambda: lam.to_scalar(),
                dim: h.dim(),
                bracket_only_dim: h.bracket_only_dim,
                killing_signature: [p, n, z],
                killing_negative_definite: h.killing_negative_definite(),
                fixed_dim: h.fixed_dim,
                bracket_table: h
                    .bracket_table
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|c| c.iter().map(|x| x.to_scalar()).collect())
                            .collect()
                    })
                    .collect(),
            });
            report.naturally_reductive =
                Some(naturally_reductive_check(&l, &s, tol).map_err(fail)?);
        }
    }
    Ok((report, code, stderr))
}
