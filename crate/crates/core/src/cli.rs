//! The `stabkit` command line. [`run`] takes argv and two sinks so the whole
//! front end can be driven from tests without spawning a process.
//!
//! Exit codes: 0 on success, 1 for usage and I/O errors, 2 when the input
//! is well formed but fails validation (the witness is printed).

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::bits::BitVec;
use crate::bounds::BoundReport;
use crate::css::{css_build, ClassicalCode, CssError};
use crate::decoder::{DecodeError, SyndromeTable};
use crate::gf4::{format_vector, from_stabilizer, pauli_to_gf4};
use crate::noise::{
    coherent_statistics, coherent_trial, exact_analysis, first_order_residual, monte_carlo,
    predicted_error_branch, NoiseChannel, NoiseError,
};
use crate::pauli::{PauliError, PauliOperator};
use crate::stabilizer::{builtin, Builtin, Distance, StabilizerError, StabilizerGroup};
use crate::statevector::{codeword_basis, logical_basis, StateError, StateVector};

/// Environment variable holding the default `--format`.
pub const FORMAT_ENV: &str = "STABKIT_FORMAT";

#[derive(Parser, Debug)]
#[command(name = "stabkit", version, about = "Stabilizer quantum error-correction toolkit")]
struct Cli {
    /// Output format (default from STABKIT_FORMAT, else text).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Mc,
    Coherent,
    FirstOrder,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a code and print its parameters.
    Check {
        /// `.stab` file or built-in name (shor9, steane7, five_qubit).
        code: String,
        /// Print the full code report.
        #[arg(long)]
        report: bool,
    },
    /// Exhaustive minimum distance.
    Distance {
        code: String,
        #[arg(long = "weight-cap")]
        weight_cap: Option<usize>,
    },
    /// Nonzero amplitudes of the code basis states.
    Codewords {
        code: String,
        /// Orthonormalized projections of basis states instead of |0̄⟩, |1̄⟩.
        #[arg(long)]
        raw: bool,
    },
    /// Syndrome of a Pauli error.
    Syndrome {
        code: String,
        #[arg(allow_hyphen_values = true)]
        error: String,
    },
    /// Look up the correction for a syndrome, or export the whole table.
    Decode {
        code: String,
        syndrome: Option<String>,
        #[arg(long = "t", default_value_t = 1)]
        t: usize,
        #[arg(long)]
        table: bool,
    },
    /// Noise experiments.
    Simulate {
        code: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// bit_flip, phase_flip or depolarizing.
        #[arg(long, default_value = "depolarizing")]
        channel: String,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, default_value_t = 0)]
        qubit: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<f64>,
        /// Single-qubit Pauli applied on every qubit in first-order mode.
        #[arg(long, default_value = "Z")]
        error: String,
        #[arg(long, default_value_t = 0.6, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.8, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long = "t", default_value_t = 1)]
        t: usize,
    },
    /// Hamming, Gilbert-Varshamov and Singleton bounds for [[n,k,d]].
    Bounds { n: usize, k: usize, d: usize },
    /// CSS construction from classical codes.
    #[command(subcommand)]
    Css(CssCommand),
    /// GF(4) image of a stabilizer code.
    Gf4 { code: String },
}

#[derive(Subcommand, Debug)]
enum CssCommand {
    /// Build the CSS code of C1 (Z checks) and C2 (X checks); prints a `.stab` file.
    Build {
        /// Classical code file, or `hamming7` / `repetition<n>`.
        c1: String,
        c2: String,
    },
}

/// One output record: ordered fields, plus an optional text rendering for
/// records whose natural text form is not `key=value`.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub fields: Map<String, Value>,
    pub text: Option<String>,
}

impl Record {
    fn new(value: Value) -> Self {
        match value {
            Value::Object(fields) => Self { fields, text: None },
            other => panic!("record must be an object, got {other}"),
        }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = Some(text);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Jsonl => Value::Object(self.fields.clone()).to_string(),
            Format::Text => self.text.clone().unwrap_or_else(|| {
                self.fields
                    .iter()
                    .map(|(k, v)| format!("{k}={}", text_value(v)))
                    .collect::<Vec<_>>()
                    .join(" ")
            }),
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) if s.is_empty() || s.chars().any(char::is_whitespace) => {
            Value::String(s.clone()).to_string()
        }
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invalid(Record),
}

impl From<NoiseError> for CliError {
    fn from(e: NoiseError) -> Self {
        match e {
            NoiseError::BadParameter(m) => CliError::Usage(m),
            NoiseError::NotPauliChannel(m) => CliError::Usage(format!("{m} is not a Pauli channel")),
            NoiseError::Decode(d) => decode_invalid(d),
            other => invalid("noise", &other.to_string(), json!(null)),
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        invalid("state", &e.to_string(), json!(null))
    }
}

fn invalid(kind: &str, message: &str, witness: Value) -> CliError {
    CliError::Invalid(Record::new(json!({
        "status": "invalid",
        "error": kind,
        "witness": witness,
        "message": message,
    })))
}

fn decode_invalid(e: DecodeError) -> CliError {
    match &e {
        DecodeError::UnknownSyndrome { syndrome, .. } => {
            invalid("unknown_syndrome", &e.to_string(), json!(syndrome.to_string()))
        }
        DecodeError::SyndromeLength { expected, found } => {
            invalid("syndrome_length", &e.to_string(), json!([expected, found]))
        }
        _ => invalid("decode", &e.to_string(), json!(null)),
    }
}

/// Non-comment, non-header lines of a `.stab` file, for quoting witnesses.
fn stab_rows(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .skip(1)
        .map(str::to_string)
        .collect()
}

fn stabilizer_invalid(e: StabilizerError, rows: &[String]) -> CliError {
    let row = |i: usize| rows.get(i).cloned().map(Value::String).unwrap_or(Value::Null);
    let msg = e.to_string();
    match e {
        StabilizerError::NotAbelian(i, j) => invalid(
            "not_abelian",
            &msg,
            json!({"generators": [i, j], "rows": [row(i), row(j)]}),
        ),
        StabilizerError::ImaginaryPhase(i) => {
            invalid("imaginary_phase", &msg, json!({"generator": i, "row": row(i)}))
        }
        StabilizerError::DependentGenerators(i) => {
            invalid("dependent_generators", &msg, json!({"generator": i, "row": row(i)}))
        }
        StabilizerError::MinusOneInGroup(i) => {
            invalid("minus_one_in_group", &msg, json!({"generator": i, "row": row(i)}))
        }
        StabilizerError::QubitCountMismatch { index, .. } => {
            invalid("qubit_count_mismatch", &msg, json!({"generator": index, "row": row(index)}))
        }
        StabilizerError::Parse { line, .. } => invalid("parse", &msg, json!({"line": line})),
        StabilizerError::Empty => invalid("empty", &msg, json!(null)),
        StabilizerError::NotSingleLogical(k) => invalid("not_single_logical", &msg, json!({"k": k})),
        StabilizerError::UnknownBuiltin(_) | StabilizerError::Pauli(_) => CliError::Usage(msg),
    }
}

/// Reads a code from a path, or falls back to a built-in name. The label is
/// the built-in name or the file stem.
fn load_code(arg: &str) -> Result<(String, StabilizerGroup), CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string());
        let group =
            StabilizerGroup::parse_stab(&text).map_err(|e| stabilizer_invalid(e, &stab_rows(&text)))?;
        return Ok((label, group));
    }
    match builtin(arg) {
        Ok(g) => Ok((arg.to_string(), g)),
        Err(_) => Err(CliError::Usage(format!(
            "{arg:?} is neither a readable file nor a built-in code ({})",
            Builtin::ALL.map(Builtin::name).join(", ")
        ))),
    }
}

fn load_classical(arg: &str) -> Result<ClassicalCode, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
        return ClassicalCode::parse(&text).map_err(css_invalid);
    }
    if arg == "hamming7" {
        return Ok(ClassicalCode::hamming7());
    }
    if let Some(n) = arg.strip_prefix("repetition").and_then(|n| n.parse().ok()) {
        return Ok(ClassicalCode::repetition(n));
    }
    Err(CliError::Usage(format!(
        "{arg:?} is neither a readable file nor hamming7 / repetition<n>"
    )))
}

fn css_invalid(e: CssError) -> CliError {
    let msg = e.to_string();
    match e {
        CssError::ContainmentViolated { row, witness } => invalid(
            "containment_violated",
            &msg,
            json!({"row": row, "check": witness.to_string()}),
        ),
        CssError::LengthMismatch(a, b) => invalid("length_mismatch", &msg, json!([a, b])),
        CssError::Parse { line, .. } => invalid("parse", &msg, json!({"line": line})),
        _ => invalid("css", &msg, json!(null)),
    }
}

fn parse_pauli(s: &str) -> Result<PauliOperator, CliError> {
    s.parse()
        .map_err(|e: PauliError| CliError::Usage(format!("invalid Pauli {s:?}: {e}")))
}

fn distance_value(d: Distance) -> Value {
    match d {
        Distance::Exact(d) => json!(d),
        Distance::AboveCap(cap) => json!(format!(">{cap}")),
    }
}

/// Structured summary of a code: parameters, degeneracy, binary and GF(4)
/// forms, and bound verdicts.
pub fn report_code(label: &str, s: &StabilizerGroup) -> Record {
    let n = s.num_qubits();
    let k = s.num_logical();
    let d = s.distance(n).exact();
    let gf4 = from_stabilizer(s);
    let bounds = d.map(|d| BoundReport::new(n, k, d));
    let verdict = |f: &dyn Fn(&BoundReport) -> String| bounds.as_ref().map(f).map(Value::String);
    Record::new(json!({
        "code": label,
        "n": n,
        "k": k,
        "d": d,
        "params": s.params(d).to_string(),
        "degenerate_at_t1": s.is_degenerate(1),
        "min_stabilizer_weight": s.min_stabilizer_weight(),
        "generators": s.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "binary_matrix": s.generators().iter().map(|g| {
            format!("{}|{}", g.x_bits(), g.z_bits())
        }).collect::<Vec<_>>(),
        "gf4_image": gf4.generators().iter().map(|v| format_vector(v)).collect::<Vec<_>>(),
        "gf4_self_orthogonal": gf4.is_self_orthogonal(),
        "gf4_linear": gf4.is_linear(),
        "hamming": verdict(&|b| b.hamming_verdict().to_string()),
        "gv": verdict(&|b| b.gv_verdict().to_string()),
        "singleton": verdict(&|b| b.singleton_verdict().to_string()),
    }))
}

fn state_record(index: usize, basis: &str, state: &StateVector) -> Record {
    let entries: Vec<Value> = state
        .nonzero_entries()
        .into_iter()
        .map(|(i, a)| json!([i, a.re, a.im]))
        .collect();
    let header = format!("codeword={index} basis={basis} nonzero={}", entries.len());
    let text = format!("{header}\n{}", state.dump().trim_end());
    Record::new(json!({
        "codeword": index,
        "basis": basis,
        "nonzero": entries.len(),
        "entries": entries,
    }))
    .with_text(text)
}

fn require_seed(seed: Option<u64>, mode: &str) -> Result<u64, CliError> {
    seed.ok_or_else(|| CliError::Usage(format!("--seed is required for --mode {mode}")))
}

fn require<T>(v: Option<T>, flag: &str, mode: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --mode {mode}")))
}

fn execute(command: Command) -> Result<Vec<Record>, CliError> {
    match command {
        Command::Check { code, report } => {
            let (label, s) = load_code(&code)?;
            if report {
                return Ok(vec![report_code(&label, &s)]);
            }
            let params = s.params(None).to_string();
            let rec = Record::new(json!({
                "code": label,
                "params": params,
                "status": "valid",
                "n": s.num_qubits(),
                "k": s.num_logical(),
                "generators": s.num_generators(),
            }));
            let text = format!(
                "{params} valid code={label} n={} k={} generators={}",
                s.num_qubits(),
                s.num_logical(),
                s.num_generators()
            );
            Ok(vec![rec.with_text(text)])
        }
        Command::Distance { code, weight_cap } => {
            let (label, s) = load_code(&code)?;
            let cap = weight_cap.unwrap_or(s.num_qubits());
            let dist = s.distance(cap);
            Ok(vec![Record::new(json!({
                "d": distance_value(dist),
                "code": label,
                "params": s.params(dist.exact()).to_string(),
                "weight_cap": cap,
            }))])
        }
        Command::Codewords { code, raw } => {
            let (_, s) = load_code(&code)?;
            if raw || s.num_logical() != 1 {
                let basis = codeword_basis(&s)?;
                Ok(basis.iter().enumerate().map(|(i, st)| state_record(i, "raw", st)).collect())
            } else {
                let (zero, one) = logical_basis(&s)?;
                Ok(vec![state_record(0, "logical", &zero), state_record(1, "logical", &one)])
            }
        }
        Command::Syndrome { code, error } => {
            let (label, s) = load_code(&code)?;
            let e = parse_pauli(&error)?;
            let syn = s
                .syndrome(&e)
                .map_err(|err| invalid("qubit_count_mismatch", &err.to_string(), json!(e.num_qubits())))?;
            Ok(vec![Record::new(json!({
                "code": label,
                "error": e.to_string(),
                "syndrome": syn.to_string(),
            }))])
        }
        Command::Decode { code, syndrome, t, table } => {
            let (label, s) = load_code(&code)?;
            let tab = SyndromeTable::build(&s, t);
            if table {
                return Ok(tab
                    .sorted_entries()
                    .into_iter()
                    .map(|(syn, c)| {
                        Record::new(json!({"syndrome": syn.to_string(), "correction": c.to_string()}))
                            .with_text(format!("{syn} {c}"))
                    })
                    .collect());
            }
            let raw = syndrome
                .ok_or_else(|| CliError::Usage("give a syndrome or --table".into()))?;
            let syn = BitVec::parse(&raw)
                .map_err(|e| CliError::Usage(format!("invalid syndrome {raw:?}: {e}")))?;
            let c = tab.decode(&syn).map_err(decode_invalid)?;
            Ok(vec![Record::new(json!({
                "code": label,
                "t": t,
                "syndrome": syn.to_string(),
                "correction": c.to_string(),
            }))])
        }
        Command::Simulate {
            code,
            mode,
            channel,
            p,
            trials,
            seed,
            theta,
            qubit,
            eps,
            error,
            alpha,
            beta,
            t,
        } => {
            let (label, s) = load_code(&code)?;
            let table = SyndromeTable::build(&s, t);
            let (a, b) = (Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0));
            if qubit >= s.num_qubits() {
                return Err(CliError::Usage(format!("--qubit {qubit} out of range")));
            }
            let rec = match mode {
                Mode::Exact => {
                    let p = require(p, "p", "exact")?;
                    let ch = NoiseChannel::pauli_channel(&channel, p)?;
                    let an = exact_analysis(&s, &table, &ch)?;
                    json!({
                        "code": label,
                        "channel": ch.name(),
                        "parameter": p,
                        "success": an.success,
                        "failure": an.failure,
                        "residual": an.residual,
                        "exact": true,
                        "weight1_failure": an.by_weight.get(1).map_or(0.0, |w| w.failure + w.residual),
                    })
                }
                Mode::Mc => {
                    let seed = require_seed(seed, "mc")?;
                    let p = require(p, "p", "mc")?;
                    let trials = require(trials, "trials", "mc")?;
                    let ch = NoiseChannel::pauli_channel(&channel, p)?;
                    let est = monte_carlo(&s, &table, &ch, trials, seed)?;
                    json!({
                        "code": label,
                        "channel": ch.name(),
                        "parameter": p,
                        "success": est.successes as f64 / trials as f64,
                        "failure": est.failure_rate(),
                        "residual": est.residual_rate(),
                        "trials": trials,
                        "seed": seed,
                        "error_rate": est.error_rate(),
                        "std_error": est.error_rate_std_error(),
                    })
                }
                Mode::Coherent => {
                    let seed = require_seed(seed, "coherent")?;
                    let theta = require(theta, "theta", "coherent")?;
                    match trials {
                        None => {
                            let o = coherent_trial(&s, &table, theta, qubit, a, b, seed)?;
                            json!({
                                "code": label,
                                "channel": "rotation",
                                "parameter": theta,
                                "qubit": qubit,
                                "seed": seed,
                                "syndrome": o.syndrome.to_string(),
                                "correction": o.correction.to_string(),
                                "error_branch": o.error_branch(),
                                "fidelity": o.fidelity,
                            })
                        }
                        Some(trials) => {
                            let st = coherent_statistics(&s, &table, theta, qubit, a, b, trials, seed)?;
                            let pred = predicted_error_branch(theta);
                            json!({
                                "code": label,
                                "channel": "rotation",
                                "parameter": theta,
                                "qubit": qubit,
                                "trials": trials,
                                "seed": seed,
                                "error_branches": st.error_branches,
                                "error_fraction": st.error_fraction(),
                                "predicted": pred,
                                "std_error": st.std_error(pred),
                                "min_fidelity": st.min_fidelity,
                            })
                        }
                    }
                }
                Mode::FirstOrder => {
                    let eps = require(eps, "eps", "first-order")?;
                    let letter = parse_pauli(&error)?;
                    if letter.num_qubits() != 1 {
                        return Err(CliError::Usage("--error must be a single-qubit Pauli".into()));
                    }
                    let letters = vec![letter.letter(0); s.num_qubits()];
                    let r = first_order_residual(&s, &table, eps, &letters, a, b)?;
                    json!({
                        "code": label,
                        "channel": "perturbation",
                        "parameter": eps,
                        "error": letter.without_phase().to_string(),
                        "before": r.before,
                        "after": r.after,
                        "exact": true,
                    })
                }
            };
            Ok(vec![Record::new(rec)])
        }
        Command::Bounds { n, k, d } => {
            let r = BoundReport::new(n, k, d);
            Ok(vec![Record::new(json!({
                "n": n,
                "k": k,
                "d": d,
                "t": r.t,
                "hamming": r.hamming_verdict().to_string(),
                "hamming_lhs": r.hamming.lhs.to_string(),
                "hamming_rhs": r.hamming.rhs.to_string(),
                "hamming_slack": r.hamming.slack().to_string(),
                "gv": r.gv_verdict().to_string(),
                "gv_lhs": r.gv.lhs.to_string(),
                "gv_rhs": r.gv.rhs.to_string(),
                "gv_slack": r.gv.slack().to_string(),
                "singleton": r.singleton_verdict().to_string(),
                "singleton_slack": r.singleton_slack().to_string(),
            }))])
        }
        Command::Css(CssCommand::Build { c1, c2 }) => {
            let (c1, c2) = (load_classical(&c1)?, load_classical(&c2)?);
            let s = css_build(&c1, &c2).map_err(css_invalid)?;
            let rec = Record::new(json!({
                "n": s.num_qubits(),
                "k": s.num_logical(),
                "generators": s.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            }));
            Ok(vec![rec.with_text(s.to_stab_string().trim_end().to_string())])
        }
        Command::Gf4 { code } => {
            let (label, s) = load_code(&code)?;
            let image = from_stabilizer(&s);
            let vectors: Vec<String> = s.generators().iter().map(|g| format_vector(&pauli_to_gf4(g))).collect();
            Ok(vec![Record::new(json!({
                "code": label,
                "n": s.num_qubits(),
                "image": vectors,
                "rank": image.rank(),
                "self_orthogonal": image.is_self_orthogonal(),
                "linear": image.is_linear(),
            }))])
        }
    }
}

fn resolve_format(flag: Option<Format>) -> Result<Format, String> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match std::env::var(FORMAT_ENV) {
        Ok(v) if v.is_empty() => Ok(Format::Text),
        Ok(v) => Format::from_str(&v, true).map_err(|_| format!("{FORMAT_ENV}={v:?} is not text or jsonl")),
        Err(_) => Ok(Format::Text),
    }
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let format = match resolve_format(cli.format) {
        Ok(f) => f,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            return 1;
        }
    };
    match execute(cli.command) {
        Ok(records) => {
            for r in records {
                let _ = writeln!(out, "{}", r.render(format));
            }
            0
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(CliError::Invalid(rec)) => {
            let _ = writeln!(out, "{}", rec.render(format));
            if let Some(Value::String(m)) = rec.fields.get("message") {
                let _ = writeln!(err, "error: {m}");
            }
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("stabkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn text_values() {
        assert_eq!(text_value(&json!("a b")), "\"a b\"");
        assert_eq!(text_value(&json!(["x", 1])), "x,1");
        assert_eq!(text_value(&json!(null)), "-");
        assert_eq!(text_value(&json!(true)), "true");
    }

    #[test]
    fn check_builtin() {
        let (code, out, _) = call(&["check", "five_qubit"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("[[5,1,?]] valid"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["check"]).0, 1);
        assert_eq!(call(&["check", "no_such_code"]).0, 1);
        assert_eq!(call(&["simulate", "five_qubit", "--mode", "mc", "--p", "0.1", "--trials", "5"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn decode_unknown_syndrome_is_validation_failure() {
        let (code, out, _) = call(&["decode", "shor9", "11111111"]);
        assert_eq!(code, 2);
        assert!(out.contains("unknown_syndrome"));
    }
}
