//! Command-line front end for the dcal proof kernel.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage, I/O or parse errors.

mod latex;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use dcal::checker::{check_proof, parse_script, print_script, render_path, CheckOptions, Script};
use dcal::conservativity::conservativity_report;
use dcal::cutelim::{eliminate_cuts_traced, StepKind, DEFAULT_FUEL};
use dcal::display::{display_search, DEFAULT_DEPTH};
use dcal::metatheory::{lint_catalog, DEFERRED};
use dcal::rules::{catalog, Base};
use dcal::syntax::{parse_sequent, Decls, Pos};
use dcal::translate::{from_deak, parse_deak};

#[derive(Parser)]
#[command(name = "dcal", version, about = "Proof kernel for the multi-type dynamic calculus of epistemic actions and knowledge")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a proof script.
    Check {
        file: PathBuf,
        /// Use the classical base (adds the Grishin rules).
        #[arg(long)]
        classical: bool,
        /// Accept Cut nodes.
        #[arg(long)]
        allow_cut: bool,
    },
    /// Eliminate the cuts of a proof script.
    Cutfree {
        file: PathBuf,
        /// Bound on the number of reduction steps.
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        /// Write the cut-free script here instead of to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Translate a single-type formula, e.g. 'dia(alpha, p)'.
    Translate {
        expr: String,
        /// Declarations fixing the kind of each name, e.g. 'agent a. fnc alpha.'.
        #[arg(long)]
        decls: Option<String>,
    },
    /// Find display-postulate steps isolating a substructure.
    Display {
        /// Script supplying the declarations (and the default sequent).
        file: PathBuf,
        /// Sequent to work on; defaults to the script's endsequent.
        #[arg(long)]
        seq: Option<String>,
        /// Position of the substructure, e.g. 'L.0.1' or 'R'.
        #[arg(long)]
        path: String,
        /// Maximum number of postulate applications.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Report the conservativity preconditions of a proof.
    Conserve { file: PathBuf },
    /// Check the rule catalog against the well-formedness conditions.
    LintRules,
    /// List the rule names of the catalog.
    Rules {
        /// Include the Grishin rules of the classical base.
        #[arg(long)]
        classical: bool,
        /// Print each schema, not just its name.
        #[arg(long)]
        verbose: bool,
    },
    /// Render a proof script as bussproofs LaTeX.
    Latex { file: PathBuf },
    /// Check every .dcp file of a directory and print a table.
    Corpus {
        /// Directory to scan; defaults to the bundled corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Why a command did not succeed.
enum Failure {
    /// A check ran and failed; its report is already in the output.
    Check,
    /// Bad input: usage, I/O or parse error.
    Input(String),
}

type Outcome = Result<(), Failure>;

fn base(classical: bool) -> Base {
    if classical {
        Base::Classical
    } else {
        Base::Intuitionistic
    }
}

fn load(file: &Path) -> Result<Script, Failure> {
    let text =
        std::fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    parse_script(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))
}

fn check(out: &mut String, file: &Path, classical: bool, allow_cut: bool) -> Outcome {
    let script = load(file)?;
    let opts = CheckOptions { base: base(classical), allow_cut, ..CheckOptions::default() };
    let report = check_proof(&script.proof, &opts);
    let _ = writeln!(out, "endsequent: {}", script.proof.conclusion);
    let stats = &report.stats;
    let rank = stats.max_cut_rank.map_or("-".to_string(), |r| r.to_string());
    let _ = writeln!(out, "nodes: {}, cuts: {}, max cut rank: {rank}", stats.nodes, stats.cuts);
    for f in &report.failures {
        let _ = writeln!(out, "failure {f}");
    }
    let _ = writeln!(out, "{}", if report.ok { "ok" } else { "FAILED" });
    if report.ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cutfree(out: &mut String, file: &Path, fuel: usize, dest: Option<&Path>) -> Outcome {
    let script = load(file)?;
    let with_cut = CheckOptions { base: Base::Classical, allow_cut: true, ..CheckOptions::default() };
    let input = check_proof(&script.proof, &with_cut);
    if !input.ok {
        for f in &input.failures {
            let _ = writeln!(out, "failure {f}");
        }
        let _ = writeln!(out, "input proof is invalid");
        return Err(Failure::Check);
    }
    let elim = match eliminate_cuts_traced(&script.proof, fuel) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(out, "cut elimination failed: {e}");
            return Err(Failure::Check);
        }
    };
    let principal = elim.steps.iter().filter(|s| s.kind == StepKind::Principal).count();
    let _ = writeln!(
        out,
        "steps: {} ({principal} principal, {} parametric)",
        elim.steps.len(),
        elim.steps.len() - principal
    );
    let cut_free = CheckOptions { base: Base::Classical, ..CheckOptions::default() };
    let result = check_proof(&elim.proof, &cut_free);
    let _ = writeln!(out, "cut-free proof: {} nodes, {}", result.stats.nodes, if result.ok { "valid" } else { "INVALID" });
    if !result.ok {
        for f in &result.failures {
            let _ = writeln!(out, "failure {f}");
        }
        return Err(Failure::Check);
    }
    let mut comments = script.comments.clone();
    comments.push("Cut-free form.".to_string());
    let text = print_script(&script.decls, &elim.proof, &comments);
    match dest {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => out.push_str(&text),
    }
    Ok(())
}

fn translate(out: &mut String, expr: &str, decls: Option<&str>) -> Outcome {
    let d = match decls {
        Some(t) => dcal::syntax::parse_decls(t).map_err(|e| Failure::Input(format!("declarations: {e}")))?,
        None => Decls::new(),
    };
    let f = parse_deak(expr, &d).map_err(|e| Failure::Input(e.to_string()))?;
    let _ = writeln!(out, "{}", from_deak(&f));
    Ok(())
}

fn display(out: &mut String, file: &Path, seq: Option<&str>, path: &str, depth: usize) -> Outcome {
    let script = load(file)?;
    let s = match seq {
        Some(t) => parse_sequent(t, &script.decls).map_err(|e| Failure::Input(format!("--seq: {e}")))?,
        None => script.proof.conclusion.clone(),
    };
    let pos = Pos::parse(path).ok_or_else(|| Failure::Input(format!("--path: cannot read `{path}`")))?;
    let place = s.place(&pos).ok_or_else(|| Failure::Input(format!("--path: no substructure at {pos}")))?;
    let _ = writeln!(out, "target: {} ({place})", s.at(&pos).expect("position exists"));
    let _ = writeln!(out, "start: {s}");
    match display_search(&s, &pos, depth) {
        Ok(steps) => {
            for st in &steps {
                let _ = writeln!(out, "{} {}: {}", st.rule, st.dir, st.result);
            }
            let _ = writeln!(out, "displayed in {} steps", steps.len());
            Ok(())
        }
        Err(e) => {
            let _ = writeln!(out, "not displayed: {e}");
            Err(Failure::Check)
        }
    }
}

fn conserve(out: &mut String, file: &Path) -> Outcome {
    let script = load(file)?;
    let report = conservativity_report(&script.proof);
    let _ = writeln!(out, "{report}");
    if report.verdict.is_witness() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn lint_rules(out: &mut String) -> Outcome {
    let mut clean = true;
    for (label, b) in [("intuitionistic", Base::Intuitionistic), ("classical", Base::Classical)] {
        let violations = lint_catalog(&catalog(b).rules);
        let _ = writeln!(out, "{label} catalog ({} rules): {} violations", catalog(b).len(), violations.len());
        for v in &violations {
            let _ = writeln!(out, "  {v}");
        }
        clean &= violations.is_empty();
    }
    let _ = writeln!(out, "deferred conditions:");
    for (cond, why) in DEFERRED {
        let _ = writeln!(out, "  {cond}: {why}");
    }
    if clean {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn rules(out: &mut String, classical: bool, verbose: bool) -> Outcome {
    for r in &catalog(base(classical)).rules {
        if verbose {
            let _ = writeln!(out, "{r}");
        } else {
            let _ = writeln!(out, "{}", r.name);
        }
    }
    Ok(())
}

fn latex(out: &mut String, file: &Path) -> Outcome {
    let script = load(file)?;
    out.push_str(&latex::proof_tree(&script.proof));
    Ok(())
}

fn bundled_corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus(out: &mut String, dir: Option<&Path>) -> Outcome {
    let dir = dir.map_or_else(bundled_corpus, Path::to_path_buf);
    let entries = std::fs::read_dir(&dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "dcp"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::Input(format!("{}: no .dcp files", dir.display())));
    }
    let rows: Vec<(String, Result<usize, String>)> = files
        .par_iter()
        .map(|p| {
            let name = p.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
            let row = match load(p) {
                Err(Failure::Input(e)) => Err(e),
                Err(Failure::Check) => unreachable!("loading never runs a check"),
                Ok(s) => {
                    let r = check_proof(&s.proof, &CheckOptions::default());
                    match r.failures.first() {
                        None => Ok(r.stats.nodes),
                        Some(f) => Err(format!("at {} ({}): {}", render_path(&f.path), f.rule, f.reason)),
                    }
                }
            };
            (name, row)
        })
        .collect();
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    let mut failed = 0;
    for (name, row) in &rows {
        match row {
            Ok(nodes) => {
                let _ = writeln!(out, "{name:width$}  pass  {nodes} nodes");
            }
            Err(e) => {
                failed += 1;
                let _ = writeln!(out, "{name:width$}  FAIL  {e}");
            }
        }
    }
    let _ = writeln!(out, "{} passed, {failed} failed", rows.len() - failed);
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: Cli, out: &mut String) -> Outcome {
    match cli.command {
        Command::Check { file, classical, allow_cut } => check(out, &file, classical, allow_cut),
        Command::Cutfree { file, fuel, out: dest } => cutfree(out, &file, fuel, dest.as_deref()),
        Command::Translate { expr, decls } => translate(out, &expr, decls.as_deref()),
        Command::Display { file, seq, path, depth } => display(out, &file, seq.as_deref(), &path, depth),
        Command::Conserve { file } => conserve(out, &file),
        Command::LintRules => lint_rules(out),
        Command::Rules { classical, verbose } => rules(out, classical, verbose),
        Command::Latex { file } => latex(out, &file),
        Command::Corpus { dir } => corpus(out, dir.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
