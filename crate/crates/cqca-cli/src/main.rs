//! Command-line front end: parses the text file formats, dispatches library
//! operations, and emits human-readable or `--json` reports.
//!
//! Exit codes: 0 on success, 2 on input problems (bad flags, malformed files,
//! violated preconditions — with line/column diagnostics where applicable),
//! 1 on internal assertion failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use cqca::ascent::{ascend_form, ascend_unitary_quadratic};
use cqca::classify::{classify, representative};
use cqca::descent::{boundary_form, descend_form};
use cqca::ring::RingCtx;
use cqca::textio;
use cqca::unitary::{
    check_eta, check_lambda, decompose_1d, normalize_real, pauli_to_unitary, Circuit, Gate,
    Unitary,
};
use cqca::{Form, FormKind};

#[derive(Parser)]
#[command(
    name = "cqca",
    about = "Exact toolkit for Clifford quantum cellular automata: \
             Laurent-polynomial unitaries over F_p, quadratic/hermitian forms, \
             Witt classes, descent/ascent and classification",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of text (matrices stay in the
    /// polynomial grammar).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report which flavor identities (lambda and eta, at the file's sign) a
    /// unitary file satisfies.
    Check {
        input: PathBuf,
    },
    /// The Witt class of a nonsingular form file (at most one variable).
    Witt {
        input: PathBuf,
    },
    /// The boundary form of a unitary along one variable (quadratic for
    /// eta-flavored inputs, hermitian otherwise); prints a form file.
    Boundary {
        input: PathBuf,
        /// Name of the variable to eliminate.
        #[arg(long)]
        var: String,
    },
    /// Descend an even nonsingular hermitian form along one variable to an
    /// eta-unitary of the opposite sign; prints a unitary file.
    Descend {
        input: PathBuf,
        /// Name of the variable to eliminate.
        #[arg(long)]
        var: String,
    },
    /// Ascend into one more variable: a form file lifts to a unitary, an
    /// eta-flavored unitary file lifts to a quadratic form.
    Ascend {
        input: PathBuf,
        /// Name of the new variable (appended last).
        #[arg(long)]
        newvar: String,
    },
    /// Decompose a one-variable lambda(-)-unitary into elementary generators.
    Decompose1d {
        input: PathBuf,
    },
    /// The complete classification of a unitary in at most two variables.
    Classify {
        input: PathBuf,
    },
    /// A certified representative unitary of a given class in `dim` variables.
    Representative {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: usize,
        /// Class value: a single residue (e.g. `1`) or a pair `a,b` for the
        /// Klein four-group.
        #[arg(long)]
        class: String,
    },
    /// Normalize a qubit lambda(-)-unitary to a real (eta) one, with the
    /// corrective pre/post circuits.
    NormalizeReal {
        input: PathBuf,
    },
    /// Coarse-grain a form or unitary file by blocking `b` sites into one
    /// along a variable.
    Coarse {
        input: PathBuf,
        #[arg(long)]
        var: String,
        #[arg(long)]
        b: u32,
    },
    /// Build and verify the unitary of a Pauli-image specification file.
    Pauli {
        input: PathBuf,
    },
    /// Run the deterministic self-test suite (twelve end-to-end checks).
    Selftest {
        /// Base seed for all sampled inputs.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

// ---------------------------------------------------------------------------
// Error plumbing
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<cqca::Error> for CliError {
    fn from(e: cqca::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

type CliResult = Result<(), CliError>;

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

/// A matrix on one line: `a, b; c, d` (bare polynomial when 1x1).
fn mat_inline(ctx: &RingCtx, m: &cqca::Mat) -> String {
    if m.rows() == 1 && m.cols() == 1 {
        textio::print_poly(ctx, m.at(0, 0))
    } else {
        format!("[{}]", textio::print_matrix(ctx, m).replace('\n', "; "))
    }
}

fn gate_string(ctx: &RingCtx, g: &Gate) -> String {
    match g {
        Gate::H(slot) => format!("H@{}", slot + 1),
        Gate::X(a) => format!("X({})", mat_inline(ctx, a)),
        Gate::Z(t) => format!("Z({})", mat_inline(ctx, t)),
        Gate::Ztilde(t) => format!("Zt({})", mat_inline(ctx, t)),
        Gate::Zdag(t) => format!("Zdag({})", mat_inline(ctx, t)),
        Gate::Stabilize(n) => format!("stab({n})"),
    }
}

fn circuit_string(ctx: &RingCtx, c: &Circuit) -> String {
    if c.gates.is_empty() {
        return "I".to_string();
    }
    c.gates.iter().map(|g| gate_string(ctx, g)).collect::<Vec<_>>().join(" ")
}

/// Whether a headered file declares `kind=unitary` (as opposed to a form).
fn is_unitary_file(text: &str) -> bool {
    text.lines().any(|l| l.trim() == "kind=unitary")
}

fn default_ctx(p: u64, d: usize) -> Result<RingCtx, CliError> {
    let vars = (1..=d).map(|i| format!("x{i}")).collect();
    Ok(RingCtx::new(p, vars)?)
}

fn emit(json_mode: bool, value: serde_json::Value, text: String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable report"));
    } else {
        print!("{text}");
        if !text.ends_with('\n') {
            println!();
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_check(json: bool, input: &PathBuf) -> CliResult {
    let (_, u) = textio::parse_unitary(&read_input(input)?)?;
    let sign = u.flavor().sign;
    let s = if sign == 1 { "+" } else { "-" };
    let lam = check_lambda(u.mat(), sign);
    let eta = check_eta(u.mat(), sign);
    let yn = |b: bool| if b { "yes" } else { "no" };
    emit(
        json,
        json!({
            "command": "check",
            "flavor": u.flavor().to_string(),
            "q": u.q(),
            "variables": u.nvars(),
            format!("lambda{s}"): lam,
            format!("eta{s}"): eta,
        }),
        format!("lambda{s}: {}, eta{s}: {}\n", yn(lam), yn(eta)),
    );
    Ok(())
}

fn cmd_witt(json: bool, input: &PathBuf) -> CliResult {
    let (_, form) = textio::parse_form(&read_input(input)?)?;
    let class = cqca::forms::witt_class(&form)?;
    emit(
        json,
        json!({
            "command": "witt",
            "group": class.group.to_string(),
            "value": [class.value.0, class.value.1],
        }),
        format!("class {class}\n"),
    );
    Ok(())
}

fn cmd_boundary(json: bool, input: &PathBuf, var: &str) -> CliResult {
    let (ctx, u) = textio::parse_unitary(&read_input(input)?)?;
    let v = ctx.var_index(var)?;
    let quadratic = u.flavor().eta;
    let b = boundary_form(&u, v, quadratic)?;
    let out_ctx = ctx.without_var(v);
    let text = textio::print_form(&out_ctx, &b);
    emit(
        json,
        json!({
            "command": "boundary",
            "eliminated": var,
            "kind": if quadratic { "quadratic" } else { "hermitian" },
            "dim": b.dim(),
            "form": text,
        }),
        text,
    );
    Ok(())
}

fn cmd_descend(json: bool, input: &PathBuf, var: &str) -> CliResult {
    let (ctx, form) = textio::parse_form(&read_input(input)?)?;
    let v = ctx.var_index(var)?;
    let u = descend_form(&form, v)?;
    let out_ctx = ctx.without_var(v);
    let text = textio::print_unitary(&out_ctx, &u);
    emit(
        json,
        json!({
            "command": "descend",
            "eliminated": var,
            "flavor": u.flavor().to_string(),
            "q": u.q(),
            "unitary": text,
        }),
        text,
    );
    Ok(())
}

fn cmd_ascend(json: bool, input: &PathBuf, newvar: &str) -> CliResult {
    let text = read_input(input)?;
    if is_unitary_file(&text) {
        let (ctx, u) = textio::parse_unitary(&text)?;
        let form = ascend_unitary_quadratic(&u, u.nvars())?;
        let out_ctx = ctx.with_var(newvar)?;
        let out = textio::print_form(&out_ctx, &form);
        emit(
            json,
            json!({
                "command": "ascend",
                "new_variable": newvar,
                "kind": "quadratic",
                "dim": form.dim(),
                "form": out,
            }),
            out,
        );
    } else {
        let (ctx, form) = textio::parse_form(&text)?;
        let u = ascend_form(&form, form.nvars())?;
        let out_ctx = ctx.with_var(newvar)?;
        let out = textio::print_unitary(&out_ctx, &u);
        emit(
            json,
            json!({
                "command": "ascend",
                "new_variable": newvar,
                "flavor": u.flavor().to_string(),
                "q": u.q(),
                "unitary": out,
            }),
            out,
        );
    }
    Ok(())
}

fn cmd_decompose1d(json: bool, input: &PathBuf) -> CliResult {
    let (ctx, u) = textio::parse_unitary(&read_input(input)?)?;
    let circuit = decompose_1d(&u)?;
    let rendered = circuit_string(&ctx, &circuit);
    emit(
        json,
        json!({
            "command": "decompose1d",
            "tokens": circuit.gates.iter().map(|g| gate_string(&ctx, g)).collect::<Vec<_>>(),
        }),
        format!("{rendered}\n"),
    );
    Ok(())
}

fn cmd_classify(json: bool, input: &PathBuf) -> CliResult {
    let (ctx, u) = textio::parse_unitary(&read_input(input)?)?;
    let desc = classify(&u)?;
    let witness = desc.witness.as_ref().map(|c| circuit_string(&ctx, c));
    let mut text = format!("{desc}");
    if let Some(w) = &witness {
        text.push_str(&format!("; witness circuit: {w}"));
    }
    text.push('\n');
    emit(
        json,
        json!({
            "command": "classify",
            "variables": desc.d,
            "p": desc.p,
            "group": desc.group.to_string(),
            "value": [desc.value.0, desc.value.1],
            "witness": witness,
        }),
        text,
    );
    Ok(())
}

fn parse_class_value(s: &str) -> Result<(u8, u8), CliError> {
    let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    let parse1 = |t: &str| {
        t.parse::<u8>()
            .map_err(|_| CliError::Input(format!("invalid class value `{s}`")))
    };
    match parts.as_slice() {
        [a] => Ok((parse1(a)?, 0)),
        [a, b] => Ok((parse1(a)?, parse1(b)?)),
        _ => Err(CliError::Input(format!("invalid class value `{s}`"))),
    }
}

fn cmd_representative(json: bool, p: u64, dim: usize, class: &str) -> CliResult {
    let value = parse_class_value(class)?;
    let cert = representative(p, dim, value)?;
    let ctx = default_ctx(p, dim)?;
    let text = textio::print_unitary(&ctx, &cert.unitary);
    emit(
        json,
        json!({
            "command": "representative",
            "p": p,
            "dim": dim,
            "class": [value.0, value.1],
            "seed_class": cert.seed_class.to_string(),
            "unitary": text,
        }),
        text,
    );
    Ok(())
}

fn cmd_normalize_real(json: bool, input: &PathBuf) -> CliResult {
    let (ctx, u) = textio::parse_unitary(&read_input(input)?)?;
    let norm = normalize_real(u.mat())?;
    let core = textio::print_unitary(&ctx, &norm.u);
    let pre = circuit_string(&ctx, &norm.pre);
    let post = circuit_string(&ctx, &norm.post);
    emit(
        json,
        json!({
            "command": "normalize-real",
            "unitary": core,
            "pre": pre,
            "post": post,
        }),
        format!("{core}pre: {pre}\npost: {post}\n"),
    );
    Ok(())
}

fn cmd_coarse(json: bool, input: &PathBuf, var: &str, b: u32) -> CliResult {
    let text = read_input(input)?;
    if is_unitary_file(&text) {
        let (ctx, u) = textio::parse_unitary(&text)?;
        let v = ctx.var_index(var)?;
        let cg = Unitary::new(u.mat().coarse_grain(v, b)?, u.flavor())?;
        let out = textio::print_unitary(&ctx, &cg);
        emit(
            json,
            json!({ "command": "coarse", "b": b, "variable": var, "unitary": out }),
            out,
        );
    } else {
        let (ctx, form) = textio::parse_form(&text)?;
        let v = ctx.var_index(var)?;
        let mat = form.mat.coarse_grain(v, b)?;
        let cg = match form.kind {
            FormKind::Quadratic => Form::quadratic(form.sign, mat)?,
            FormKind::Hermitian => Form::hermitian(form.sign, mat)?,
        };
        let out = textio::print_form(&ctx, &cg);
        emit(
            json,
            json!({ "command": "coarse", "b": b, "variable": var, "form": out }),
            out,
        );
    }
    Ok(())
}

fn cmd_pauli(json: bool, input: &PathBuf) -> CliResult {
    let spec = textio::parse_pauli(&read_input(input)?)?;
    let u = pauli_to_unitary(&spec)?;
    let ctx = default_ctx(spec.p, spec.dims)?;
    let text = textio::print_unitary(&ctx, &u);
    emit(
        json,
        json!({
            "command": "pauli",
            "flavor": u.flavor().to_string(),
            "q": u.q(),
            "unitary": text,
        }),
        text,
    );
    Ok(())
}

fn cmd_selftest(json: bool, seed: u64) -> CliResult {
    let outcomes = cqca::selftest::run(seed);
    let mut failures = Vec::new();
    let mut lines = String::new();
    let mut report = Vec::new();
    for (name, outcome) in outcomes {
        match outcome {
            Ok(()) => {
                lines.push_str(&format!("criterion {name}: PASS\n"));
                report.push(json!({ "name": name, "pass": true }));
            }
            Err(msg) => {
                lines.push_str(&format!("criterion {name}: FAIL — {msg}\n"));
                report.push(json!({ "name": name, "pass": false, "message": msg }));
                failures.push(format!("{name}: {msg}"));
            }
        }
    }
    emit(json, json!({ "command": "selftest", "seed": seed, "criteria": report }), lines);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Internal(format!("selftest failures:\n{}", failures.join("\n"))))
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn run(cli: &Cli) -> CliResult {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Check { input } => cmd_check(json, input),
        Cmd::Witt { input } => cmd_witt(json, input),
        Cmd::Boundary { input, var } => cmd_boundary(json, input, var),
        Cmd::Descend { input, var } => cmd_descend(json, input, var),
        Cmd::Ascend { input, newvar } => cmd_ascend(json, input, newvar),
        Cmd::Decompose1d { input } => cmd_decompose1d(json, input),
        Cmd::Classify { input } => cmd_classify(json, input),
        Cmd::Representative { p, dim, class } => cmd_representative(json, *p, *dim, class),
        Cmd::NormalizeReal { input } => cmd_normalize_real(json, input),
        Cmd::Coarse { input, var, b } => cmd_coarse(json, input, var, *b),
        Cmd::Pauli { input } => cmd_pauli(json, input),
        Cmd::Selftest { seed } => cmd_selftest(json, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_values() {
        assert_eq!(parse_class_value("1").unwrap(), (1, 0));
        assert_eq!(parse_class_value("3").unwrap(), (3, 0));
        assert_eq!(parse_class_value("1,1").unwrap(), (1, 1));
        assert_eq!(parse_class_value("(0, 1)").unwrap(), (0, 1));
        assert!(parse_class_value("x").is_err());
        assert!(parse_class_value("1,2,3").is_err());
    }

    #[test]
    fn file_kind_sniffing() {
        assert!(is_unitary_file("p=2\nvars=z\nkind=unitary\nflavor=eta-\nq=1\n"));
        assert!(!is_unitary_file("p=2\nvars=\nkind=quadratic\nsign=-\ndim=1\n1\n"));
    }

    #[test]
    fn circuit_rendering() {
        let ctx = RingCtx::new(2, vec!["z".into()]).unwrap();
        let z = cqca::Poly::var(2, 1, 0);
        let alpha = cqca::Mat::from_rows(2, 1, vec![vec![z]]);
        let mut c = Circuit::new(2, 1, 1, -1);
        assert_eq!(circuit_string(&ctx, &c), "I");
        c.gates.push(Gate::X(alpha));
        c.gates.push(Gate::H(0));
        c.gates.push(Gate::Stabilize(2));
        assert_eq!(circuit_string(&ctx, &c), "X(z) H@1 stab(2)");
        let theta = cqca::Mat::from_ints(2, 1, &[&[1, 0], &[1, 1]]);
        assert_eq!(gate_string(&ctx, &Gate::Z(theta)), "Z([1, 0; 1, 1])");
    }
}
