use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use kernseq::decision::{
    analyze, bounded_kernel_mismatch, decide_kerseq_ll, decide_kerseq_lp, LpOptions, Outcome, Verdict,
    DEFAULT_CLOSURE_CAP, DEFAULT_ORACLE_BOUND,
};
use kernseq::format::{self, TransducerFile};
use kernseq::machine::Machine;
use kernseq::oracle::{generate_suite, seed_from_env};
use kernseq::relation::{prefix_closure, transitive_closure, validate_relation};
use kernseq::synthesis::kernel_transducer;
use kernseq::{Error, LetterTransducer};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kernseq",
    version,
    about = "Decide whether a synchronous equivalence relation is the kernel of a Mealy machine or of a sequential function"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the equivalence-relation axioms.
    Validate { file: PathBuf },
    /// Report every condition the decision procedures look at.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Decide membership and synthesize a witness.
    #[command(subcommand)]
    Decide(Decide),
    /// Transitive closure of the prefix closure.
    Closure {
        file: PathBuf,
        #[arg(long)]
        cap: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare the kernel of a machine with a relation.
    Verify {
        relation: PathBuf,
        machine: PathBuf,
        /// Word length for the bounded check used when no exact one applies.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        max_len: usize,
    },
    /// Run the decision procedures on seeded random relations.
    Suite {
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Defaults to KERNSEQ_ORACLE_SEED, then to a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Decide {
    /// Kernel of a Mealy machine.
    Ll {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Kernel of a sequential function.
    Lp {
        file: PathBuf,
        #[command(flatten)]
        closure: ClosureArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit a sequential witness instead of a subsequential one.
        #[arg(long)]
        eliminate_final_output: bool,
    },
}

#[derive(Args)]
struct ClosureArgs {
    /// File holding the transitive closure of the prefix closure.
    #[arg(long, conflicts_with = "closure_cap")]
    pplus: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; exit code 2 means UNKNOWN.
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_YES });
        }
    };
    let json = cli.json;
    let (code, mut report) = match run(cli.command) {
        Ok(pair) => pair,
        Err(Failure::Input(m)) => (EXIT_INPUT, json!({ "command": "error", "error": m })),
        Err(Failure::Internal(m)) => (
            EXIT_INTERNAL,
            json!({ "command": "error", "error": m, "internal": true }),
        ),
    };
    let fields = report.as_object_mut().expect("reports are objects");
    fields.insert("exitCode".into(), json!(code));
    let mut text = String::new();
    if json {
        let mut with_schema = Map::new();
        with_schema.insert("schema".into(), json!(1));
        with_schema.append(fields);
        text = serde_json::to_string_pretty(&Value::Object(with_schema)).expect("serializable");
        text.push('\n');
    } else {
        render_text(&mut text, "", &report);
    }
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(code)
}

/// One `dotted.key: value` line per leaf, in the same order as the JSON.
fn render_text(out: &mut String, prefix: &str, value: &Value) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                render_text(out, &key, v);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn run(command: Command) -> CliResult<(u8, Value)> {
    match command {
        Command::Validate { file } => {
            let r = read_relation(&file)?;
            let v = validate_relation(&r);
            let code = if v.is_equivalence() { EXIT_YES } else { EXIT_NO };
            Ok((
                code,
                json!({ "command": "validate", "equivalence": v.is_equivalence(), "validation": v }),
            ))
        }
        Command::Analyze { file, closure } => {
            let r = read_relation(&file)?;
            let pplus = closure.pplus.as_deref().map(read_relation).transpose()?;
            let report = analyze(&r, pplus.as_ref(), closure.closure_cap)?;
            Ok((EXIT_YES, json!({ "command": "analyze", "report": report })))
        }
        Command::Decide(Decide::Ll { file, output }) => {
            let r = read_relation(&file)?;
            let verdict = decide_kerseq_ll(&r)?;
            verdict_report("decide ll", &verdict, output.as_deref())
        }
        Command::Decide(Decide::Lp {
            file,
            closure,
            output,
            eliminate_final_output,
        }) => {
            let r = read_relation(&file)?;
            let pplus = closure.pplus.as_deref().map(read_relation).transpose()?;
            let options = LpOptions {
                cap: closure.closure_cap,
                eliminate_final_output,
                ..LpOptions::default()
            };
            let verdict = decide_kerseq_lp(&r, pplus.as_ref(), options)?;
            verdict_report("decide lp", &verdict, output.as_deref())
        }
        Command::Closure { file, cap, output } => {
            let r = read_relation(&file)?;
            let result = transitive_closure(&prefix_closure(&r), cap);
            write_machine(&output, &Machine::Letter(result.closure.clone()))?;
            let code = if result.converged { EXIT_YES } else { EXIT_UNKNOWN };
            Ok((
                code,
                json!({
                    "command": "closure",
                    "converged": result.converged,
                    "exponent": result.exponent,
                    "budgetExceeded": result.budget_exceeded,
                    "states": result.closure.num_states(),
                    "output": output.display().to_string(),
                }),
            ))
        }
        Command::Verify {
            relation,
            machine,
            max_len,
        } => verify(&relation, &machine, max_len),
        Command::Suite { count, seed } => suite(count, seed.unwrap_or_else(seed_from_env)),
    }
}

fn read_file(path: &Path) -> CliResult<TransducerFile> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    format::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_relation(path: &Path) -> CliResult<LetterTransducer> {
    match read_file(path)?.machine {
        Machine::Letter(t) => Ok(t),
        other => Err(Failure::Input(format!(
            "{}: expected a letter-transducer, found a {} machine",
            path.display(),
            other.kind()
        ))),
    }
}

fn write_machine(path: &Path, machine: &Machine) -> CliResult<()> {
    fs::write(path, format::print(machine)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn verdict_report(command: &str, verdict: &Verdict, output: Option<&Path>) -> CliResult<(u8, Value)> {
    let code = match verdict.outcome {
        Outcome::Yes => EXIT_YES,
        Outcome::No => EXIT_NO,
        Outcome::Unknown => EXIT_UNKNOWN,
    };
    let witness = match &verdict.witness {
        None => Value::Null,
        Some(w) => {
            if let Some(path) = output {
                write_machine(path, &w.machine)?;
            }
            json!({
                "kind": w.machine.kind(),
                "states": w.machine.num_states(),
                "maxDimension": w.max_dimension,
                "kernelCheck": w.check,
                "file": output.map(|p| p.display().to_string()),
            })
        }
    };
    Ok((
        code,
        json!({
            "command": command,
            "outcome": verdict.outcome.to_string(),
            "reason": verdict.reason.map(|r| r.code()),
            "closureExponent": verdict.closure_exponent,
            "witness": witness,
        }),
    ))
}

fn verify(relation: &Path, machine: &Path, max_len: usize) -> CliResult<(u8, Value)> {
    let r = read_relation(relation)?;
    let m = read_file(machine)?.machine;
    if m.input_alphabet() != r.input_alphabet() {
        return Err(Failure::Input("machine and relation read different alphabets".into()));
    }
    let render =
        |(u, v): (Vec<usize>, Vec<usize>)| json!([r.input_alphabet().render(&u), r.input_alphabet().render(&v)]);
    let (check, mismatch) = match kernel_transducer(&m) {
        Ok(ker) => {
            let split = |w: Vec<usize>| -> (Vec<usize>, Vec<usize>) { w.into_iter().map(|l| r.split(l)).unzip() };
            let missing = ker.automaton().inclusion_counterexample(r.automaton())?;
            let extra = r.automaton().inclusion_counterexample(ker.automaton())?;
            (json!({ "kind": "exact" }), missing.or(extra).map(split))
        }
        Err(Error::NotLetterToLetter) => (
            json!({ "kind": "bounded", "maxLen": max_len }),
            bounded_kernel_mismatch(&r, &m, max_len)?,
        ),
        Err(e) => return Err(e.into()),
    };
    let code = if mismatch.is_none() { EXIT_YES } else { EXIT_NO };
    Ok((
        code,
        json!({
            "command": "verify",
            "kernelEqual": mismatch.is_none(),
            "kernelCheck": check,
            "counterexample": mismatch.map(render),
        }),
    ))
}

fn suite(count: usize, seed: u64) -> CliResult<(u8, Value)> {
    let mut tally: Map<String, Value> = Map::new();
    let mut bump = |key: String| {
        let n = tally.get(&key).and_then(Value::as_u64).unwrap_or(0);
        tally.insert(key, json!(n + 1));
    };
    let options = LpOptions {
        eliminate_final_output: true,
        ..LpOptions::default()
    };
    for inst in generate_suite(seed, count) {
        let ll = decide_kerseq_ll(&inst.relation)?;
        let lp = decide_kerseq_lp(&inst.relation, None, options)?;
        if ll.outcome == Outcome::Yes && lp.outcome != Outcome::Yes {
            return Err(Failure::Internal(format!(
                "instance {}: ll YES but lp {}",
                inst.index, lp.outcome
            )));
        }
        for (name, v) in [("ll", &ll), ("lp", &lp)] {
            let reason = v.reason.map_or(String::new(), |r| format!(" {}", r.code()));
            bump(format!("{name} {}{reason}", v.outcome));
        }
    }
    Ok((
        EXIT_YES,
        json!({ "command": "suite", "seed": seed, "count": count, "verdicts": tally }),
    ))
}
