//! Text, LaTeX and JSON renderings of the library's values.

use flipchow::{
    Atom, AtomSpace, CheckResult, CoeffExpression, FormalDecomposition, IntPolynomial, ModuliParams,
};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

pub fn poly_latex(p: &IntPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (deg, c)) in p.terms().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = c.abs();
        if deg == 0 || mag != BigInt::from(1) {
            out.push_str(&mag.to_string());
        }
        match deg {
            0 => {}
            1 => out.push('t'),
            _ => out.push_str(&format!("t^{{{deg}}}")),
        }
    }
    out
}

fn bigint_json(c: &BigInt) -> Value {
    // arbitrary_precision keeps every digit
    serde_json::from_str(&c.to_string()).expect("integer literal is valid JSON")
}

/// `[[degree, coefficient], ...]`, ascending, no zero coefficients.
pub fn poly_json(p: &IntPolynomial) -> Value {
    Value::Array(
        p.terms()
            .map(|(d, c)| Value::Array(vec![json!(d), bigint_json(c)]))
            .collect(),
    )
}

pub fn poly_from_json(v: &Value) -> Option<IntPolynomial> {
    let mut out = IntPolynomial::zero();
    for pair in v.as_array()? {
        let pair = pair.as_array()?;
        if pair.len() != 2 {
            return None;
        }
        let deg = pair[0].as_u64()? as usize;
        let coeff: BigInt = match &pair[1] {
            Value::Number(n) => n.to_string().parse().ok()?,
            _ => return None,
        };
        out.add_term(deg, coeff);
    }
    Some(out)
}

pub fn space_name(s: AtomSpace) -> String {
    s.to_string()
}

pub fn parse_space_name(name: &str) -> Option<AtomSpace> {
    if name == "N" {
        return Some(AtomSpace::N);
    }
    let (head, idx) = name.split_at(1.min(name.len()));
    let k: usize = idx.parse().ok()?;
    match head {
        "M" => Some(AtomSpace::M(k)),
        "S" => Some(AtomSpace::SymX(k)),
        _ => None,
    }
}

fn space_latex(s: AtomSpace) -> String {
    match s {
        AtomSpace::M(k) => format!("M_{{{k}}}"),
        AtomSpace::SymX(k) => format!("S^{{{k}}}X"),
        AtomSpace::N => "N".into(),
    }
}

pub fn atom_latex(a: &Atom) -> String {
    format!("A^{{{}}}({})", a.codim(), space_latex(a.space()))
}

pub fn decomposition_latex(fd: &FormalDecomposition) -> String {
    if fd.is_empty() {
        return "0".into();
    }
    fd.iter()
        .map(|(a, n)| match n {
            1 => atom_latex(&a),
            _ => format!("{}^{{\\oplus {n}}}", atom_latex(&a)),
        })
        .collect::<Vec<_>>()
        .join(" \\oplus ")
}

pub fn decomposition_json(fd: &FormalDecomposition) -> Value {
    Value::Array(
        fd.iter()
            .map(|(a, n)| {
                json!({
                    "space": space_name(a.space()),
                    "codim": a.codim(),
                    "multiplicity": n,
                })
            })
            .collect(),
    )
}

/// Decodes a decomposition, re-validating every atom against `p`.
pub fn decomposition_from_json(p: &ModuliParams, v: &Value) -> Option<FormalDecomposition> {
    let mut out = FormalDecomposition::new();
    for item in v.as_array()? {
        let space = parse_space_name(item.get("space")?.as_str()?)?;
        let codim = item.get("codim")?.as_i64()?;
        let n = item.get("multiplicity")?.as_u64()? as usize;
        let atom = Atom::new(p, space, codim).ok()??;
        out.insert(atom, n);
    }
    Some(out)
}

pub fn coeff_latex(e: &CoeffExpression) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let k = e.step;
    let mut out = String::new();
    for (i, (mono, c)) in e.terms().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut factors = Vec::new();
        let mag = c.abs();
        if mono.total_degree() == 0 || mag != BigInt::from(1) {
            factors.push(mag.to_string());
        }
        if mono.segre > 0 {
            factors.push(format!("s_{{{}}}(W_{{{k}}}^{{-}})", mono.segre));
        }
        if mono.chern > 0 {
            factors.push(format!("c_{{{}}}(W_{{{k}}}^{{+}})", mono.chern));
        }
        out.push_str(&factors.join("\\,"));
    }
    out
}

pub fn coeff_json(e: &CoeffExpression) -> Value {
    Value::Array(
        e.terms()
            .map(|(mono, c)| {
                json!({
                    "segre": mono.segre,
                    "chern": mono.chern,
                    "coefficient": bigint_json(c),
                })
            })
            .collect(),
    )
}

pub fn params_json(p: &ModuliParams) -> Value {
    json!({ "g": p.g(), "d": p.d(), "w": p.w(), "m": p.m(), "n": p.n() })
}

pub fn checks_json(checks: &[CheckResult]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect(),
    )
}

pub fn checks_text(checks: &[CheckResult]) -> String {
    let mut out = String::new();
    for c in checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        out.push_str(&format!("{}: {verdict} ({})\n", c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        out.push_str("all checks passed");
    } else {
        out.push_str(&format!("{failed} check(s) failed"));
    }
    out
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}")
        .replace('_', "\\_")
        .replace('^', "\\^{}")
        .replace('{', "\\{")
        .replace('}', "\\}")
        .replace('&', "\\&")
        .replace('#', "\\#")
        .replace('%', "\\%")
        .replace('$', "\\$")
}

pub fn checks_latex(checks: &[CheckResult]) -> String {
    let mut out = String::from("\\begin{tabular}{ll}\n");
    for c in checks {
        let verdict = if c.passed { "pass" } else { "fail" };
        out.push_str(&format!(
            "\\texttt{{{}}} & {verdict} \\\\\n",
            latex_escape(c.name)
        ));
    }
    out.push_str("\\end{tabular}");
    out
}
