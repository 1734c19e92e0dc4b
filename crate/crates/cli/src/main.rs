use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use onerel::adian::adian_run;
use onerel::collatz::{build_system, run_trace, CollatzSystem, Numeric};
use onerel::compress::{reduce_to_canonical, PipelineStep};
use onerel::corpus::{adian_verdict, collatz_verdict, outcome_name, run_corpus, CorpusSummary};
use onerel::{
    classify, dispatch_solve, parse_presentation, parse_word, Certificate, Letter, Outcome, Presentation, Query,
    SolveOptions, SolveReport, SolveRequest, Word,
};
use serde_json::json;

/// Decision procedures for the word problem in one-relation monoids.
///
/// Presentations are written `a,b | baaa = aaa`; `1` denotes the empty word.
#[derive(Parser, Debug)]
#[command(name = "onerel", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Report heuristic verdicts as unknown.
    #[arg(long, global = true)]
    strict: bool,
    /// Maximum head replacements of algorithm 𝔄 and steps of a Collatz trace.
    #[arg(long, global = true, value_name = "N")]
    budget_steps: Option<usize>,
    /// Maximum number of words visited by bounded search.
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<usize>,
    /// Print derivations and pipelines in text mode.
    #[arg(long, global = true)]
    trace: bool,
    /// Exit with status 3 when nothing was decided.
    #[arg(long, global = true)]
    require_decision: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the structural properties of a presentation.
    Classify { presentation: String },
    /// Reduce a presentation by compression, reversal and collapse.
    Reduce { presentation: String },
    /// Decide whether two words are equal.
    Solve { presentation: String, u: String, v: String },
    /// Decide whether a word is left divisible by a letter.
    Divides { presentation: String, word: String, letter: String },
    /// Run algorithm 𝔄 and print every prefix decomposition.
    AdianTrace { presentation: String, word: String, letter: String },
    /// Iterate the word-pair dynamics of a presentation `a·u·b = a`.
    CollatzTrace { presentation: String, x: String, y: String },
    /// Run a corpus file of queries.
    Corpus { path: PathBuf },
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

impl GlobalOpts {
    fn solve_options(&self) -> SolveOptions {
        let mut o = SolveOptions { strict: self.strict, ..SolveOptions::default() };
        if let Some(n) = self.budget_steps {
            o.adian.max_replacements = n;
        }
        if let Some(n) = self.budget_nodes {
            o.search.max_nodes = n;
        }
        o
    }

    fn decided(&self, decided: bool) -> u8 {
        if self.require_decision && !decided {
            EXIT_UNDECIDED
        } else {
            0
        }
    }
}

fn presentation(text: &str) -> Result<Presentation> {
    parse_presentation(text).with_context(|| format!("presentation `{text}`"))
}

fn word(text: &str, p: &Presentation) -> Result<Word> {
    parse_word(text, p.alphabet()).with_context(|| format!("word `{text}`"))
}

fn letter(text: &str, p: &Presentation) -> Result<Letter> {
    match p.alphabet().iter().find(|l| l.name() == text) {
        Some(l) => Ok(*l),
        None => bail!("`{text}` is not a letter of {p}"),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    let opts = g.solve_options();
    match &cli.command {
        Command::Classify { presentation: text } => {
            let p = presentation(text)?;
            let c = classify(&p);
            if g.json {
                print_json(&c)?;
            } else {
                println!("presentation: {p}");
                let value = serde_json::to_value(&c)?;
                for (key, v) in value.as_object().into_iter().flatten() {
                    println!("{key}: {}", flat(v));
                }
            }
            Ok(0)
        }
        Command::Reduce { presentation: text } => {
            let p = presentation(text)?;
            let pipeline = reduce_to_canonical(&p);
            if g.json {
                print_json(&pipeline)?;
            } else {
                println!("{}", pipeline.source);
                for step in &pipeline.steps {
                    println!("  {:<9} {}", step.name(), step.output());
                    if g.trace {
                        print_step_detail(step);
                    }
                }
                println!("result: {}", pipeline.result);
            }
            Ok(0)
        }
        Command::Solve { presentation: text, u, v } => {
            let p = presentation(text)?;
            let query = Query::Equality { u: word(u, &p)?, v: word(v, &p)? };
            report(g, SolveRequest { presentation: p, query, options: opts }, false)
        }
        Command::Divides { presentation: text, word: w, letter: x } => {
            let p = presentation(text)?;
            let query = Query::Divides { word: word(w, &p)?, letter: letter(x, &p)? };
            report(g, SolveRequest { presentation: p, query, options: opts }, true)
        }
        Command::AdianTrace { presentation: text, word: w, letter: x } => {
            let p = presentation(text)?;
            let run = adian_run(&word(w, &p)?, letter(x, &p)?, &p, opts.adian)?;
            let verdict = adian_verdict(&run.outcome, g.strict);
            if g.json {
                print_json(&json!({ "presentation": p, "run": run, "verdict": verdict }))?;
            } else {
                for line in run.trace_lines() {
                    println!("{line}");
                }
                println!("verdict: {verdict}");
            }
            Ok(g.decided(verdict != "unknown"))
        }
        Command::CollatzTrace { presentation: text, x, y } => {
            let p = presentation(text)?;
            let s = build_system(&p).with_context(|| p.to_string())?;
            let run = run_trace(&s, &word(x, &s.presentation)?, &word(y, &s.presentation)?, opts.adian.max_replacements);
            let verdict = collatz_verdict(&run.outcome, g.strict);
            if g.json {
                let states: Vec<_> = run
                    .states
                    .iter()
                    .map(|st| {
                        json!({
                            "x": st.x_word,
                            "y": st.y_word,
                            "numeric": [numeric(&s, &st.x_word), numeric(&s, &st.y_word)],
                        })
                    })
                    .collect();
                print_json(&json!({
                    "presentation": s.presentation,
                    "reversed": s.reversed,
                    "k": s.k.to_string(),
                    "l": s.l,
                    "states": states,
                    "steps": run.kinds,
                    "outcome": run.outcome,
                    "verdict": verdict,
                }))?;
            } else {
                if s.reversed {
                    println!("reversed: {}", s.presentation);
                }
                for line in run.lines(&s) {
                    println!("{line}");
                }
                println!("verdict: {verdict}");
            }
            Ok(g.decided(verdict != "unknown"))
        }
        Command::Corpus { path } => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let summary = run_corpus(&text, &opts).with_context(|| path.display().to_string())?;
            if g.json {
                print_json(&summary)?;
            } else {
                print_summary(&summary);
            }
            Ok(if summary.has_mismatch() {
                EXIT_MISMATCH
            } else {
                g.decided(!summary.all_unknown())
            })
        }
    }
}

fn numeric(s: &CollatzSystem, w: &Word) -> serde_json::Value {
    match s.numeric(w) {
        Numeric::Value(n) => json!(n.to_string()),
        other => json!(other.to_string()),
    }
}

fn flat(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => "-".into(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn print_step_detail(step: &PipelineStep) {
    match step {
        PipelineStep::Weak(w) => {
            println!("            alpha = {}", w.alpha);
            for (block, l) in &w.letter_map {
                println!("            {l} = {block}");
            }
        }
        PipelineStep::Strong(s) => {
            println!("            k = {}, C = {}, D = {}", s.k, s.common_prefix, s.common_suffix);
        }
        PipelineStep::Collapse { map, .. } => {
            for (c, rep) in map.components.iter().zip(&map.representatives) {
                let names: Vec<&str> = c.iter().map(|l| l.name()).collect();
                println!("            {rep} -> {}  (component {{{}}})", map.target, names.join(","));
            }
        }
        PipelineStep::Reverse { .. } => {}
    }
}

fn report(g: &GlobalOpts, req: SolveRequest, divisibility: bool) -> Result<u8> {
    let r = dispatch_solve(&req)?;
    if g.json {
        print_json(&r)?;
    } else {
        print_report(&r, divisibility, g.trace);
    }
    Ok(g.decided(r.verdict != Outcome::Unknown))
}

fn print_report(r: &SolveReport, divisibility: bool, trace: bool) {
    println!("verdict: {}", outcome_name(r.verdict, divisibility));
    println!("confidence: {}", format!("{:?}", r.confidence).to_lowercase());
    let route: Vec<&str> = r.route.iter().map(|x| x.name()).collect();
    println!("route: {}", route.join(" -> "));
    println!("certificate: {}", certificate_summary(&r.certificate));
    if let Some(n) = r.steps {
        println!("steps: {n}");
    }
    if let (true, Query::Divides { letter, .. }, Certificate::Derivation { trace }) =
        (divisibility, &r.query, &r.certificate)
    {
        if trace.end.first() == Some(*letter) {
            println!("witness: {}", trace.end.suffix(trace.end.len() - 1));
        }
    }
    if !trace {
        return;
    }
    if let Some(pipeline) = &r.pipeline {
        println!("pipeline: {}", pipeline.step_names().join(" -> "));
    }
    print_certificate(&r.certificate, &r.presentation, 0);
}

fn certificate_summary(c: &Certificate) -> String {
    match c {
        Certificate::Identical => "identical".into(),
        Certificate::Derivation { trace } => format!("derivation of {} steps", trace.len()),
        Certificate::Invariant { description } => format!("invariant: {description}"),
        Certificate::Headless { word, letter } => format!("headless decomposition of {word} for {letter}"),
        Certificate::Loop { loop_kind, detail } => format!("{loop_kind:?} loop: {detail}"),
        Certificate::NormalForms { left, right } => format!("normal forms {left} and {right}"),
        Certificate::ClosedClass { word, size } => format!("class of {word} closed at {size} words"),
        Certificate::Budget { detail } => format!("budget exhausted: {detail}"),
        Certificate::Reduction { step, left, right, inner, .. } => {
            format!("{step} reduction to {left} ? {right}, then {}", certificate_summary(&inner.certificate))
        }
        Certificate::Unsupported { detail } => format!("unsupported: {detail}"),
    }
}

fn print_certificate(c: &Certificate, p: &Presentation, depth: usize) {
    let pad = "  ".repeat(depth);
    match c {
        Certificate::Derivation { trace } => match trace.replay(p) {
            Ok(words) => {
                for (i, w) in words.iter().enumerate() {
                    println!("{pad}{}{w}", if i == 0 { "  " } else { "= " });
                }
            }
            Err(e) => println!("{pad}derivation does not replay: {e}"),
        },
        Certificate::Reduction { step, presentation, left, right, inner } => {
            println!("{pad}{step}: {presentation}");
            println!("{pad}  {left} ? {right}: {inner}");
            print_certificate(&inner.certificate, presentation, depth + 1);
        }
        _ => {}
    }
}

fn print_summary(s: &CorpusSummary) {
    for r in &s.results {
        let mark = match r.matched {
            Some(true) => "ok",
            Some(false) => "MISMATCH",
            None => "-",
        };
        print!("{:>5}  {mark:<8} {}", r.line, r.verdict);
        match (&r.expect, r.matched) {
            (Some(e), Some(false)) => println!("  (expected {e})"),
            _ => println!(),
        }
    }
    let counts: Vec<String> = s.counts.iter().map(|(k, n)| format!("{k} {n}")).collect();
    println!("{} entries: {}", s.results.len(), counts.join(", "));
    if s.has_mismatch() {
        let lines: Vec<String> = s.mismatches.iter().map(ToString::to_string).collect();
        println!("mismatches on lines {}", lines.join(", "));
    }
}
