//! Command-line front end: argument parsing, dispatch and output documents.

pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use flipchow::{
    coeff_c, final_sequence, resolution, star_sequence, summed_sequence, sym_power_betti,
    theorem_sequence, verify, AtomSpace, CheckResult, Error, ExactSequenceSpec, FlipTower,
    ModuliParams, SequenceKind,
};
use serde_json::{json, Map, Value};

pub use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "flipchow",
    version,
    about = "Chow-group decompositions and Poincaré polynomials for rank-2 odd-degree moduli"
)]
pub struct Cli {
    /// Genus g of the curve (g >= 2)
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub genus: Option<i64>,

    /// Odd degree d = 2w+1 of the determinant, w >= 2g-2
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub degree: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincaré polynomial of N, some M_k, or a symmetric power S^k X
    Poincare {
        /// N, M0..Mw or S1..Sw
        #[arg(long, default_value = "N")]
        space: String,
    },
    /// Finite resolution of A^l(N) by Chow groups of M0 and symmetric powers
    Resolution {
        #[arg(long, allow_negative_numbers = true)]
        codim: i64,
    },
    /// Terms of one of the split exact sequences
    Sequence {
        #[arg(long, value_enum, default_value_t = SequenceChoice::Theorem)]
        kind: SequenceChoice,
        /// Flip step k, required for --kind star
        #[arg(long)]
        step: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        codim: i64,
    },
    /// Symbolic coefficient C_r^s at flip step k
    Coeffs {
        #[arg(long)]
        step: usize,
        #[arg(long = "r", allow_negative_numbers = true)]
        r: i64,
        #[arg(long = "s", allow_negative_numbers = true)]
        s: i64,
    },
    /// Run every consistency check
    Verify {
        /// Second degree for the d-independence comparison
        #[arg(long, allow_negative_numbers = true)]
        also_degree: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SequenceChoice {
    /// one flip M_{k-1} ~> M_k
    Star,
    /// all flips spliced, M_0 to M_w
    Summed,
    /// M_w as a projective bundle over N
    Final,
    /// the composed sequence ending in A^l(N)
    Theorem,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Poincare { .. } => "poincare",
            Command::Resolution { .. } => "resolution",
            Command::Sequence { .. } => "sequence",
            Command::Coeffs { .. } => "coeffs",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Why a command did not produce a document.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Params(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Params(e)
    }
}

/// A rendered command result plus the checks that decide the exit status.
#[derive(Debug, Clone)]
pub struct OutputDocument {
    pub format: Format,
    pub payload: String,
    pub checks: Vec<CheckResult>,
}

impl OutputDocument {
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().all(|c| c.passed) {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

/// Per-command rendering in the three formats; `result` feeds the JSON envelope.
struct Rendered {
    result: Value,
    text: String,
    latex: String,
    checks: Vec<CheckResult>,
}

pub fn execute(cli: &Cli) -> Result<OutputDocument, Failure> {
    let g = cli
        .genus
        .ok_or_else(|| Failure::Usage("missing required flag --genus".into()))?;
    let d = cli
        .degree
        .ok_or_else(|| Failure::Usage("missing required flag --degree".into()))?;
    let p = ModuliParams::new(g, d)?;

    let rendered = match &cli.command {
        Command::Poincare { space } => cmd_poincare(&p, space)?,
        Command::Resolution { codim } => cmd_resolution(&p, *codim)?,
        Command::Sequence { kind, step, codim } => cmd_sequence(&p, *kind, *step, *codim)?,
        Command::Coeffs { step, r, s } => cmd_coeffs(&p, *step, *r, *s)?,
        Command::Verify { also_degree } => cmd_verify(&p, *also_degree)?,
    };

    let payload = match cli.format {
        Format::Text => rendered.text,
        Format::Latex => rendered.latex,
        Format::Json => {
            let mut doc = Map::new();
            doc.insert("params".into(), render::params_json(&p));
            doc.insert("command".into(), json!(cli.command.name()));
            doc.insert("result".into(), rendered.result);
            doc.insert("checks".into(), render::checks_json(&rendered.checks));
            serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize")
        }
    };
    Ok(OutputDocument {
        format: cli.format,
        payload,
        checks: rendered.checks,
    })
}

fn cmd_poincare(p: &ModuliParams, space: &str) -> Result<Rendered, Failure> {
    let parsed = render::parse_space_name(space).ok_or_else(|| {
        Failure::Usage(format!(
            "unknown space '{space}', expected N, M0..Mw or S1..Sw"
        ))
    })?;
    let trace = verify(p, None);
    let poly = match parsed {
        AtomSpace::N => flipchow::poincare_n(p)?,
        AtomSpace::M(k) => {
            p.dim_of(parsed.into())?;
            flipchow::poincare_m(p, k)?
        }
        AtomSpace::SymX(k) => {
            if k < 1 || k as i64 > p.w() {
                return Err(Error::IndexOutOfRange {
                    what: "k",
                    value: k as i64,
                    lo: 1,
                    hi: p.w(),
                }
                .into());
            }
            sym_power_betti(p.g(), k)
        }
    };
    Ok(Rendered {
        result: json!({ "space": render::space_name(parsed), "poincare": render::poly_json(&poly) }),
        text: poly.to_string(),
        latex: render::poly_latex(&poly),
        checks: trace.checks,
    })
}

fn cmd_resolution(p: &ModuliParams, l: i64) -> Result<Rendered, Failure> {
    let res = resolution(p, l)?;
    let tower = FlipTower::new(p);
    let p_n = tower.poincare_n()?;
    let mismatch = tower.resolution_mismatch(&p_n, l);
    let checks = vec![CheckResult {
        name: "resolution_euler",
        passed: mismatch.is_none(),
        detail: mismatch.unwrap_or_else(|| match res.depth() {
            Some(t) => format!("l={l}, depth {t}"),
            None => format!("l={l}, empty"),
        }),
    }];

    let text = res
        .terms
        .iter()
        .enumerate()
        .map(|(i, omega)| format!("Omega_{i} = {omega}"))
        .collect::<Vec<_>>()
        .join("\n");
    let mut latex = String::from("\\begin{aligned}\n");
    for (i, omega) in res.terms.iter().enumerate() {
        latex.push_str(&format!(
            "\\Omega_{{{i}}} &= {} \\\\\n",
            render::decomposition_latex(omega)
        ));
    }
    latex.push_str("\\end{aligned}");

    Ok(Rendered {
        result: json!({
            "codim": l,
            "depth": res.depth(),
            "terms": res.terms.iter().map(render::decomposition_json).collect::<Vec<_>>(),
        }),
        text,
        latex,
        checks,
    })
}

fn cmd_sequence(
    p: &ModuliParams,
    kind: SequenceChoice,
    step: Option<usize>,
    l: i64,
) -> Result<Rendered, Failure> {
    let seq = match kind {
        SequenceChoice::Star => {
            let k = step.ok_or_else(|| Failure::Usage("--kind star needs --step K".into()))?;
            star_sequence(p, k, l)?
        }
        SequenceChoice::Summed => summed_sequence(p, l)?,
        SequenceChoice::Final => final_sequence(p, l)?,
        SequenceChoice::Theorem => theorem_sequence(p, l)?,
    };
    let tower = FlipTower::new(p);
    let p_n = tower.poincare_n().ok();
    let mismatch = tower.additivity_mismatch(p_n.as_ref(), &seq);
    let checks = vec![CheckResult {
        name: "rank_additivity",
        passed: mismatch.is_none(),
        detail: mismatch.unwrap_or_else(|| format!("{} at l={l}", seq.kind)),
    }];
    Ok(Rendered {
        result: sequence_json(&seq),
        text: format!(
            "kernel: {}\nmiddle: {}\nquotient: {}",
            seq.kernel, seq.middle, seq.quotient
        ),
        latex: format!(
            "0 \\to {} \\to {} \\to {} \\to 0",
            render::decomposition_latex(&seq.kernel),
            render::decomposition_latex(&seq.middle),
            render::decomposition_latex(&seq.quotient)
        ),
        checks,
    })
}

fn sequence_json(seq: &ExactSequenceSpec) -> Value {
    let (kind, step) = match seq.kind {
        SequenceKind::Flip { k } => ("star", Some(k)),
        SequenceKind::Summed => ("summed", None),
        SequenceKind::ProjectiveBundle => ("final", None),
        SequenceKind::Theorem => ("theorem", None),
    };
    json!({
        "kind": kind,
        "step": step,
        "codim": seq.codim,
        "split": seq.split,
        "kernel": render::decomposition_json(&seq.kernel),
        "middle": render::decomposition_json(&seq.middle),
        "quotient": render::decomposition_json(&seq.quotient),
    })
}

fn cmd_coeffs(p: &ModuliParams, k: usize, r: i64, s: i64) -> Result<Rendered, Failure> {
    let expr = coeff_c(p, k, r, s)?;
    let top = p.m() - 3 * k as i64 - s + r;
    let homogeneous = expr
        .terms()
        .all(|(mono, _)| mono.total_degree() as i64 == top);
    let checks = vec![CheckResult {
        name: "homogeneity",
        passed: homogeneous,
        detail: format!("total degree {top}"),
    }];
    Ok(Rendered {
        result: json!({
            "step": k,
            "r": r,
            "s": s,
            "degree": top,
            "terms": render::coeff_json(&expr),
        }),
        text: expr.to_string(),
        latex: render::coeff_latex(&expr),
        checks,
    })
}

fn cmd_verify(p: &ModuliParams, also: Option<i64>) -> Result<Rendered, Failure> {
    let sibling = also.map(|d| ModuliParams::new(p.g(), d)).transpose()?;
    let trace = verify(p, sibling.as_ref());
    let steps: Vec<Value> = trace
        .per_step
        .iter()
        .enumerate()
        .map(|(k, s)| {
            json!({
                "space": format!("M{k}"),
                "poincare": render::poly_json(&s.poincare),
                "delta": render::poly_json(&s.delta),
            })
        })
        .collect();
    Ok(Rendered {
        result: json!({
            "poincare_N": trace.final_poincare.as_ref().map(render::poly_json),
            "steps": steps,
        }),
        text: render::checks_text(&trace.checks),
        latex: render::checks_latex(&trace.checks),
        checks: trace.checks,
    })
}

/// Parses `args`, runs the command and writes the document. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(doc) => {
            let _ = writeln!(out, "{}", doc.payload);
            doc.exit_code()
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Params(e @ (Error::InexactDivision | Error::NegativeBettiNumber { .. }))) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CHECK_FAILED
        }
        Err(Failure::Params(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
