//! Command-line front end: `prove`, `eval`, `translate`, `solve`, `parse`.
//!
//! Exit codes: `0` success (VALID / SAT / evaluation done), `1` a negative
//! verdict (INVALID / UNSAT), `2` usage, syntax, or format errors, `3` a
//! resource limit was hit.
//!
//! The entry point [`run`] takes the argument list and output sinks, so the
//! whole front end is testable in-process; the `godel-modal` binary is a thin
//! wrapper around it.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use crate::constraints::{parse_constraint_file, solve_with, Solution, SolveError, SolveLimits};
use crate::formula::{desugar, parse, print, Formula, LogicId};
use crate::kripke::{eval_fmodel, eval_standard, load_model, save_model, AnyModel};
use crate::rational::{fmt_rat, Rat};
use crate::tableau::{prove, ProveReport, SearchLimits, TableauError, Verdict};
use crate::translate::{embed_bl_to_inv, embed_inv_to_bl, join, ominus, oplus, StarMap};

/// Environment variable overriding the default `--max-branches` limit.
pub const MAX_BRANCHES_ENV: &str = "GODEL_MODAL_MAX_BRANCHES";

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_LIMIT: i32 = 3;

#[derive(Parser)]
#[command(
    name = "godel-modal",
    version,
    about = "Decision procedures for Gödel modal logics with involutive negation and bi-lattice semantics",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LogicArg {
    Kginv,
    Kginv2,
    Kgbl,
}

impl From<LogicArg> for LogicId {
    fn from(l: LogicArg) -> LogicId {
        match l {
            LogicArg::Kginv => LogicId::KgInv,
            LogicArg::Kginv2 => LogicId::KgInv2,
            LogicArg::Kgbl => LogicId::KgBl,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    /// Truth-coordinate translation (bi-lattice → bi-modal involutive).
    Oplus,
    /// Falsity-coordinate translation (bi-lattice → bi-modal involutive).
    Ominus,
    /// Indexed-modality elimination (bi-modal involutive → bi-lattice).
    Join,
    /// Validity-preserving embedding of the bi-lattice logic.
    EmbedBl,
    /// Validity-preserving embedding of the bi-modal involutive logic.
    EmbedInv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide validity; on INVALID, print a re-verified countermodel.
    Prove {
        /// The formula to prove.
        formula: String,
        /// Logic to prove in (default: the smallest language of the formula).
        #[arg(long)]
        logic: Option<LogicArg>,
        /// Maximum number of tableau rule applications
        /// (default: $GODEL_MODAL_MAX_BRANCHES or 100000).
        #[arg(long)]
        max_branches: Option<usize>,
        /// Use a weak (≤) root constraint instead of the strict default.
        #[arg(long)]
        weak_root: bool,
        /// Write the countermodel to this file instead of stdout.
        #[arg(long)]
        countermodel: Option<PathBuf>,
        /// Print the proof trace to stderr.
        #[arg(long)]
        trace: bool,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate a formula in a model file.
    Eval {
        /// The formula to evaluate.
        formula: String,
        /// Path to the JSON model file.
        #[arg(short, long)]
        model: PathBuf,
        /// Evaluate at this world only (default: all worlds).
        #[arg(long, conflicts_with = "all")]
        world: Option<String>,
        /// Evaluate at every world (the default).
        #[arg(long)]
        all: bool,
        /// Force F-model semantics even without T sets in the file
        /// (modal values are then snapped into {0,1}).
        #[arg(long)]
        fmodel: bool,
        /// Logic to evaluate in (default: the smallest language of the formula).
        #[arg(long)]
        logic: Option<LogicArg>,
        /// Display values as decimals (display only; all arithmetic is exact).
        #[arg(long)]
        decimal: bool,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
    /// Translate a formula between the two languages.
    Translate {
        /// The formula to translate.
        formula: String,
        /// Which translation to apply.
        #[arg(long, value_enum)]
        dir: Direction,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
    /// Decide feasibility of an order-constraint file.
    Solve {
        /// Path to the constraint file (`-` for stdin).
        file: PathBuf,
        /// Print the translated linear system before solving.
        #[arg(long)]
        explain: bool,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
    /// Parse a formula and print its canonical form.
    Parse {
        /// The formula to parse.
        formula: String,
        /// Check membership in this language.
        #[arg(long)]
        logic: Option<LogicArg>,
        /// Also print the desugared core form.
        #[arg(long)]
        core: bool,
        /// Machine-readable JSON output.
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI on `args` (including the program name), writing to the given
/// sinks. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // usage error.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match cli.cmd {
        Cmd::Prove {
            formula,
            logic,
            max_branches,
            weak_root,
            countermodel,
            trace,
            json,
        } => cmd_prove(
            &formula,
            logic,
            max_branches,
            weak_root,
            countermodel,
            trace,
            json,
            out,
            err,
        ),
        Cmd::Eval {
            formula,
            model,
            world,
            all: _,
            fmodel,
            logic,
            decimal,
            json,
        } => cmd_eval(&formula, &model, world, fmodel, logic, decimal, json, out),
        Cmd::Translate { formula, dir, json } => cmd_translate(&formula, dir, json, out),
        Cmd::Solve { file, explain, json } => cmd_solve(&file, explain, json, out),
        Cmd::Parse {
            formula,
            logic,
            core,
            json,
        } => cmd_parse(&formula, logic, core, json, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

/// A CLI failure: message plus exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<i32, Failure>;

fn parse_formula(text: &str) -> Result<Formula, Failure> {
    parse(text).map_err(|e| usage_error(e.to_string()))
}

fn pick_logic(f: &Formula, logic: Option<LogicArg>) -> Result<LogicId, Failure> {
    match logic {
        Some(l) => {
            let l: LogicId = l.into();
            f.check_language(l).map_err(|e| usage_error(e.to_string()))?;
            Ok(l)
        }
        None => f
            .minimal_logic()
            .ok_or_else(|| usage_error("formula mixes connectives of incompatible languages")),
    }
}

fn show_rat(r: &Rat, decimal: bool) -> String {
    if decimal {
        match r.to_f64() {
            Some(x) => format!("{x}"),
            None => fmt_rat(r),
        }
    } else {
        fmt_rat(r)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_prove(
    formula: &str,
    logic: Option<LogicArg>,
    max_branches: Option<usize>,
    weak_root: bool,
    countermodel_path: Option<PathBuf>,
    trace: bool,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let f = parse_formula(formula)?;
    let logic = pick_logic(&f, logic)?;
    let default_max = std::env::var(MAX_BRANCHES_ENV)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(100_000);
    let limits = SearchLimits {
        max_expansions: max_branches.unwrap_or(default_max),
        weak_root,
        collect_trace: trace,
        ..SearchLimits::default()
    };
    let report = match prove(&f, logic, &limits) {
        Ok(r) => r,
        Err(TableauError::ResourceLimit(m)) => {
            return Err(Failure {
                code: EXIT_LIMIT,
                message: format!("LIMIT: {m}"),
            })
        }
        Err(TableauError::Formula(e)) => return Err(usage_error(e.to_string())),
        Err(e) => {
            return Err(Failure {
                code: EXIT_USAGE,
                message: e.to_string(),
            })
        }
    };
    if trace {
        for t in &report.trace {
            let _ = writeln!(
                err,
                "tableau {} | {} on {} -> {} branch(es)",
                t.tableau, t.rule, t.principal, t.children
            );
        }
    }
    emit_prove(&report, countermodel_path, json, out)
}

fn emit_prove(
    report: &ProveReport,
    countermodel_path: Option<PathBuf>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let invalid = report.verdict == Verdict::Invalid;
    let cm_json_text = report
        .countermodel
        .as_ref()
        .map(|cm| save_model(&AnyModel::F(cm.model.clone())));
    if let (Some(path), Some(text)) = (&countermodel_path, &cm_json_text) {
        std::fs::write(path, text).map_err(|e| usage_error(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        let mut obj = serde_json::json!({
            "verdict": if invalid { "invalid" } else { "valid" },
            "logic": report.logic.name(),
            "query": print(&report.query),
            "expansions": report.expansions,
        });
        if let Some(cm) = &report.countermodel {
            obj["root"] = serde_json::json!(cm.root);
            obj["achieved"] = serde_json::json!({
                "pos": fmt_rat(&cm.achieved.pos),
                "negv": fmt_rat(&cm.achieved.negv),
            });
            obj["tableau"] = serde_json::json!(cm.tableau_index);
            let text = cm_json_text.as_ref().expect("countermodel serialized");
            match &countermodel_path {
                Some(path) => obj["countermodel_file"] = serde_json::json!(path.display().to_string()),
                None => {
                    obj["countermodel"] = serde_json::from_str(text)
                        .expect("saved model is valid JSON")
                }
            }
        }
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        let _ = writeln!(out, "{}", if invalid { "INVALID" } else { "VALID" });
        if let Some(cm) = &report.countermodel {
            let _ = writeln!(
                out,
                "query value at {}: ({}, {})",
                cm.root,
                fmt_rat(&cm.achieved.pos),
                fmt_rat(&cm.achieved.negv)
            );
            match &countermodel_path {
                Some(path) => {
                    let _ = writeln!(out, "countermodel written to {}", path.display());
                }
                None => {
                    let _ = writeln!(out, "{}", cm_json_text.as_ref().unwrap());
                }
            }
        }
    }
    Ok(if invalid { EXIT_NEGATIVE } else { EXIT_OK })
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(
    formula: &str,
    model_path: &PathBuf,
    world: Option<String>,
    force_fmodel: bool,
    logic: Option<LogicArg>,
    decimal: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let f = parse_formula(formula)?;
    let logic = pick_logic(&f, logic)?;
    let text = std::fs::read_to_string(model_path)
        .map_err(|e| usage_error(format!("cannot read {}: {e}", model_path.display())))?;
    let model = load_model(&text).map_err(|e| usage_error(e.to_string()))?;
    let worlds: Vec<String> = match &world {
        Some(w) => {
            if !model.base().has_world(w) {
                return Err(usage_error(format!("model has no world `{w}`")));
            }
            vec![w.clone()]
        }
        None => model.base().worlds.clone(),
    };
    let use_f = force_fmodel || matches!(model, AnyModel::F(_));
    let mut results = Vec::new();
    for w in &worlds {
        let v = if use_f {
            eval_fmodel(&model.to_fmodel(), &f, w, logic)
        } else {
            eval_standard(model.base(), &f, w, logic)
        }
        .map_err(|e| usage_error(e.to_string()))?;
        results.push((w.clone(), v));
    }
    if json {
        let obj: serde_json::Value = results
            .iter()
            .map(|(w, v)| {
                (
                    w.clone(),
                    serde_json::json!({
                        "pos": show_rat(&v.pos, decimal),
                        "negv": show_rat(&v.negv, decimal),
                    }),
                )
            })
            .collect::<serde_json::Map<String, serde_json::Value>>()
            .into();
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        for (w, v) in &results {
            let _ = writeln!(
                out,
                "{w}: ({}, {})",
                show_rat(&v.pos, decimal),
                show_rat(&v.negv, decimal)
            );
        }
    }
    Ok(EXIT_OK)
}

fn cmd_translate(formula: &str, dir: Direction, json: bool, out: &mut dyn Write) -> CmdResult {
    let f = parse_formula(formula)?;
    let map_err = |e: crate::formula::FormulaError| usage_error(e.to_string());
    let result = match dir {
        Direction::Oplus => oplus(&f, &StarMap::for_formula(&f)).map_err(map_err)?,
        Direction::Ominus => ominus(&f, &StarMap::for_formula(&f)).map_err(map_err)?,
        Direction::Join => join(&f).map_err(map_err)?,
        Direction::EmbedBl => embed_bl_to_inv(&f).map_err(map_err)?,
        Direction::EmbedInv => embed_inv_to_bl(&f).map_err(map_err)?,
    };
    if json {
        let obj = serde_json::json!({
            "input": print(&f),
            "output": print(&result),
        });
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        let _ = writeln!(out, "{}", print(&result));
    }
    Ok(EXIT_OK)
}

fn cmd_solve(file: &PathBuf, explain: bool, json: bool, out: &mut dyn Write) -> CmdResult {
    let text = if file.as_os_str() == "-" {
        use std::io::Read;
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage_error(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(file)
            .map_err(|e| usage_error(format!("cannot read {}: {e}", file.display())))?
    };
    let constraints = parse_constraint_file(&text).map_err(|e| usage_error(e.to_string()))?;
    let sys = crate::constraints::translate_branch(&constraints);
    if explain && !json {
        let _ = write!(out, "{}", sys.explain());
    }
    let solution = solve_with(&sys, &SolveLimits::default()).map_err(|e| match e {
        SolveError::ResourceLimit(m) => Failure {
            code: EXIT_LIMIT,
            message: format!("LIMIT: {m}"),
        },
        SolveError::Internal(m) => Failure {
            code: EXIT_USAGE,
            message: m,
        },
    })?;
    match solution {
        Solution::Sat(w) => {
            if json {
                let obj = serde_json::json!({
                    "status": "sat",
                    "witness": w
                        .values
                        .iter()
                        .map(|(k, v)| (k.clone(), serde_json::json!(fmt_rat(v))))
                        .collect::<serde_json::Map<String, serde_json::Value>>(),
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&obj).unwrap());
            } else {
                let _ = writeln!(out, "SAT");
                for (name, value) in &w.values {
                    let _ = writeln!(out, "  {name} = {}", fmt_rat(value));
                }
            }
            Ok(EXIT_OK)
        }
        Solution::Unsat => {
            if json {
                let _ = writeln!(out, "{}", serde_json::json!({ "status": "unsat" }));
            } else {
                let _ = writeln!(out, "UNSAT");
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_parse(
    formula: &str,
    logic: Option<LogicArg>,
    core: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let f = parse_formula(formula)?;
    let logic = pick_logic(&f, logic)?;
    let core_form = if core {
        Some(desugar(&f, logic).map_err(|e| usage_error(e.to_string()))?)
    } else {
        None
    };
    if json {
        let mut obj = serde_json::json!({
            "canonical": print(&f),
            "logic": logic.name(),
            "size": f.size(),
            "modal_depth": f.modal_depth(),
            "variables": f.props().into_iter().collect::<Vec<_>>(),
        });
        if let Some(c) = &core_form {
            obj["core"] = serde_json::json!(print(c.formula()));
        }
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&obj).unwrap());
    } else {
        let _ = writeln!(out, "{}", print(&f));
        let _ = writeln!(out, "logic: {}", logic.name());
        if let Some(c) = &core_form {
            let _ = writeln!(out, "core: {}", print(c.formula()));
        }
    }
    Ok(EXIT_OK)
}
