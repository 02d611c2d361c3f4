//! Command-line front end. [`run`] parses arguments, dispatches and returns
//! the process exit code: 0 success or YES, 1 NO or invalid input, 2
//! UNKNOWN or budget exhausted, 64 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::decider::{
    all_simple_schemes, certify_bounds, classify, compute_fdl, decide_membership, delete_word, Budget, DeciderError,
    Member, SimpleScheme,
};
use crate::engine::{
    delete_at, insert_at, normalize_ins_first, read_scheme_file, read_script_file, render_script, replay,
    step_all, Rule, RuleKind, Scheme, System, Trace,
};
use crate::format::{parse_word_literal, read_word_file, render_dot, render_matrix, render_matrix_window};
use crate::language::{count_language, enumerate_language, CountMethod};
use crate::measure::characteristics;
use crate::universality::{
    broken_insertion, compare_languages, encode, repair_probe, CodeMorphism, StringInsDelSystem,
};
use crate::word::RelationalWord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "relword", version, about = "Relational words and their insertion-deletion systems")]
pub struct Cli {
    /// Print reports as JSON
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// A word: a matrix file, `@file`, `word:<letters>`, bare letters, or `eps`.
#[derive(Debug, Clone, Args)]
pub struct WordArg {
    pub word: String,
}

#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    /// Scheme file (`ins <id> <word>` / `del <id> <word>` / `axiom <word>`)
    #[arg(long, conflicts_with_all = ["ins", "del"])]
    pub scheme: Option<PathBuf>,
    /// Insertion rule letters, e.g. `aba`
    #[arg(long, requires = "del")]
    pub ins: Option<String>,
    /// Deletion rule letters, e.g. `ab`
    #[arg(long, requires = "ins")]
    pub del: Option<String>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArgs {
    /// Longest intermediate word kept by searches
    #[arg(long, default_value_t = Budget::default().max_len)]
    pub max_len: usize,
    /// Search depth
    #[arg(long, env = "RELWORD_BUDGET_DEPTH", default_value_t = Budget::default().max_depth)]
    pub max_depth: usize,
}

impl BudgetArgs {
    fn budget(self) -> Budget {
        Budget {
            max_len: self.max_len,
            max_depth: self.max_depth,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SysArgs {
    /// String system file (`alpha:`, `term:`, `ins:`, `del:`, `axiom:`)
    #[arg(long)]
    pub sys: PathBuf,
    /// Codeword parameter; defaults to the alphabet size plus 3
    #[arg(short = 'k', long = "k")]
    pub k: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a word satisfies the axioms and echo its matrix
    Validate(WordArg),
    /// Print a word as a matrix or DOT graph
    Show {
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        dot: bool,
        /// Mark positions k..k+m-1, written `k:m`
        #[arg(long, value_parser = parse_window)]
        window: Option<(usize, usize)>,
    },
    /// List the strings of a word's language
    Lang {
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        alphabet: String,
    },
    /// Length, classes and the maxFD / maxE / maxN characteristics
    Stats {
        #[command(flatten)]
        word: WordArg,
        /// Also count the language over this many letters
        #[arg(long)]
        alphabet_size: Option<usize>,
    },
    /// Insert a rule body after the first k positions
    Insert {
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        at: usize,
    },
    /// Delete a rule body at the 1-based window k
    Delete {
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        at: usize,
    },
    /// List every one-step successor
    Step {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Run a script and print every intermediate word
    Replay {
        script: PathBuf,
        #[arg(long)]
        start: String,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Mark the block each step touches
        #[arg(long)]
        highlight: bool,
    },
    /// Reorder a derivation so that all insertions come first
    Normalize {
        /// A script (needs `--start`) or a JSON trace
        input: PathBuf,
        #[arg(long)]
        start: Option<String>,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Decide whether a fully defined word is derivable from ε
    Decide {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// The fully defined words derivable from ε
    Fdl {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Check the maxFD / maxE bounds on every word up to a depth
    Certify {
        #[command(flatten)]
        scheme: SchemeArgs,
        /// Certify every simple scheme with an inequality
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// A derivation from a word to ε
    DeleteToEmpty {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Print codewords, or the code of a string
    Encode {
        #[command(flatten)]
        sys: SysArgs,
        string: Option<String>,
    },
    /// The string whose code a word is
    Decode {
        #[command(flatten)]
        word: WordArg,
        #[command(flatten)]
        sys: SysArgs,
    },
    /// Compare the string system's language with its encoding's
    Compare {
        #[command(flatten)]
        sys: SysArgs,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Search for a canonical repair of a word broken by an insertion
    Probe {
        #[command(flatten)]
        sys: SysArgs,
        /// String whose code gets broken
        #[arg(long)]
        source: String,
        /// 1-based insertion rule of the string system
        #[arg(long, default_value_t = 1)]
        rule: usize,
        /// Gap of the inserted code
        #[arg(long)]
        at: usize,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        /// Defaults to the broken word's length plus the longest insertion
        #[arg(long)]
        max_len: Option<usize>,
    },
}

fn parse_window(s: &str) -> Result<(usize, usize), String> {
    let (k, m) = s.split_once(':').ok_or("expected k:m")?;
    let k: usize = k.parse().map_err(|_| format!("bad start {k:?}"))?;
    let m: usize = m.parse().map_err(|_| format!("bad length {m:?}"))?;
    if k == 0 {
        return Err("positions are 1-based".into());
    }
    Ok((k, m))
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

fn load_word(arg: &str) -> Result<RelationalWord, Failure> {
    let literal = arg.starts_with('@') || arg.starts_with("word:") || arg == "eps" || arg == "ε";
    if !literal && Path::new(arg).is_file() {
        return Ok(read_word_file(Path::new(arg))?);
    }
    Ok(parse_word_literal(arg, None)?)
}

fn load_rule(arg: &str, kind: RuleKind) -> Result<Rule, Failure> {
    let id = if kind == RuleKind::Insert { "I" } else { "D" };
    Ok(Rule::new(id, kind, load_word(arg)?)?)
}

fn load_system(args: &SchemeArgs) -> Result<System, Failure> {
    match (&args.scheme, &args.ins, &args.del) {
        (Some(path), _, _) => Ok(read_scheme_file(path)?),
        (None, Some(i), Some(d)) => Ok(System {
            scheme: Scheme::new(vec![load_rule(i, RuleKind::Insert)?], vec![load_rule(d, RuleKind::Delete)?])?,
            axioms: Vec::new(),
        }),
        _ => Err(Failure::Usage("give --scheme <file> or both --ins and --del".into())),
    }
}

fn load_simple(args: &SchemeArgs) -> Result<SimpleScheme, Failure> {
    match (&args.ins, &args.del) {
        (Some(i), Some(d)) if args.scheme.is_none() => Ok(SimpleScheme::new(i, d)?),
        _ => Ok(SimpleScheme::from_scheme(&load_system(args)?.scheme)?),
    }
}

fn load_sys(args: &SysArgs) -> Result<(StringInsDelSystem, System, CodeMorphism), Failure> {
    let sys = StringInsDelSystem::read_file(&args.sys)?;
    let (rs, m) = encode(&sys, args.k)?;
    Ok((sys, rs, m))
}

fn matrices_json(w: &RelationalWord) -> Value {
    json!(w.to_matrix())
}

fn verdict_word(m: Member) -> &'static str {
    match m {
        Member::Yes => "YES",
        Member::No => "NO",
        Member::Unknown => "UNKNOWN",
    }
}

// Trace as matrix blocks with `#` headers; the blocks parse back as words.
fn render_trace(t: &Trace, highlight: bool) -> String {
    let words: Vec<&RelationalWord> = t.words().collect();
    let mut out = String::new();
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match i {
            0 => out.push_str("# start\n"),
            _ => {
                let s = &t.steps[i - 1];
                let _ = writeln!(out, "# {} {} {}", s.kind, s.site, s.rule_id);
            }
        }
        let next_del = t.steps.get(i).filter(|s| s.kind == RuleKind::Delete);
        let window = if !highlight || w.is_empty() {
            None
        } else if let Some(s) = next_del {
            Some((s.site, w.len() - s.result.len()))
        } else if i > 0 && t.steps[i - 1].kind == RuleKind::Insert {
            let s = &t.steps[i - 1];
            Some((s.site + 1, w.len() - words[i - 1].len()))
        } else {
            None
        };
        match window {
            Some((k, m)) => out.push_str(&render_matrix_window(w, k, m)),
            None => out.push_str(&render_matrix(w)),
        }
    }
    out
}

fn emit_trace(out: &mut dyn Write, json: bool, t: &Trace, highlight: bool) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", t.to_json())
    } else {
        write!(out, "{}", render_trace(t, highlight))
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Validate(w) => {
            let w = load_word(&w.word)?;
            if json {
                writeln!(out, "{}", json!({"valid": true, "len": w.len(), "matrix": matrices_json(&w)}))?;
            } else {
                write!(out, "{}", render_matrix(&w))?;
            }
            Ok(EXIT_OK)
        }
        Command::Show { word, dot, window } => {
            let w = load_word(&word.word)?;
            if dot {
                write!(out, "{}", render_dot(&w))?;
            } else if json {
                writeln!(out, "{}", json!({"matrix": matrices_json(&w), "letters": w.to_letters()}))?;
            } else if let Some((k, m)) = window {
                if k + m > w.len() + 1 {
                    return Err(Failure::Invalid(format!("window {k}:{m} does not fit a word of length {}", w.len())));
                }
                write!(out, "{}", render_matrix_window(&w, k, m))?;
            } else {
                write!(out, "{}", render_matrix(&w))?;
            }
            Ok(EXIT_OK)
        }
        Command::Lang { word, alphabet } => {
            let w = load_word(&word.word)?;
            let letters: Vec<char> = alphabet.chars().collect();
            let strings = enumerate_language(&w, &letters)?;
            if json {
                writeln!(out, "{}", json!({"alphabet": alphabet, "count": strings.len(), "strings": strings}))?;
            } else {
                for s in &strings {
                    writeln!(out, "{}", if s.is_empty() { "ε" } else { s })?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Stats { word, alphabet_size } => {
            let w = load_word(&word.word)?;
            let c = characteristics(&w);
            let view = w.class_view();
            let count = alphabet_size.map(|n| count_language(&w, n, CountMethod::Auto)).transpose()?;
            if json {
                let mut v = json!({
                    "len": w.len(),
                    "fully_defined": w.is_fully_defined(),
                    "classes": view.num_classes,
                    "letters": w.to_letters(),
                    "max_fd": c.max_fd, "max_e": c.max_e, "max_n": c.max_n,
                });
                if let (Some(n), Some(k)) = (alphabet_size, count) {
                    v["language_size"] = json!({"alphabet_size": n, "count": k.to_string()});
                }
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "length         {}", w.len())?;
                writeln!(out, "fully defined  {}", if w.is_fully_defined() { "yes" } else { "no" })?;
                if let Some(l) = w.to_letters() {
                    writeln!(out, "letters        {}", if l.is_empty() { "ε".into() } else { l })?;
                }
                writeln!(out, "classes        {}", view.num_classes)?;
                writeln!(out, "maxFD          {}", c.max_fd)?;
                writeln!(out, "maxE           {}", c.max_e)?;
                writeln!(out, "maxN           {}", c.max_n)?;
                if let (Some(n), Some(k)) = (alphabet_size, count) {
                    writeln!(out, "language({n})    {k}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Insert { word, rule, at } => {
            let w = load_word(&word.word)?;
            let r = insert_at(&w, &load_rule(&rule, RuleKind::Insert)?, at)?;
            write_word(out, json, &r)?;
            Ok(EXIT_OK)
        }
        Command::Delete { word, rule, at } => {
            let w = load_word(&word.word)?;
            let r = delete_at(&w, &load_rule(&rule, RuleKind::Delete)?, at)?;
            write_word(out, json, &r)?;
            Ok(EXIT_OK)
        }
        Command::Step { word, scheme } => {
            let w = load_word(&word.word)?;
            let sys = load_system(&scheme)?;
            let steps = step_all(&w, &sys.scheme);
            if json {
                let list: Vec<Value> = steps
                    .iter()
                    .map(|s| json!({"kind": s.kind, "rule_id": s.rule_id, "site": s.site, "result": matrices_json(&s.result)}))
                    .collect();
                writeln!(out, "{}", Value::Array(list))?;
            } else {
                for (i, s) in steps.iter().enumerate() {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "# {} {} {}", s.kind, s.site, s.rule_id)?;
                    write!(out, "{}", render_matrix(&s.result))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Replay {
            script,
            start,
            scheme,
            highlight,
        } => {
            let steps = read_script_file(&script)?;
            let sys = load_system(&scheme)?;
            let t = replay(&steps, &load_word(&start)?, &sys.scheme)?;
            emit_trace(out, json, &t, highlight)?;
            Ok(EXIT_OK)
        }
        Command::Normalize { input, start, scheme } => {
            let sys = load_system(&scheme)?;
            let text = std::fs::read_to_string(&input).map_err(|e| format!("{}: {e}", input.display()))?;
            let trace = if text.trim_start().starts_with('{') {
                let t = Trace::from_json(&text)?;
                t.verify(&sys.scheme)?;
                t
            } else {
                let start = start.ok_or_else(|| Failure::Usage("a script needs --start".into()))?;
                replay(&crate::engine::parse_script(&text)?, &load_word(&start)?, &sys.scheme)?
            };
            let n = normalize_ins_first(&trace, &sys.scheme)?;
            if json {
                writeln!(out, "{}", n.to_json())?;
            } else {
                write!(out, "{}", render_script(&n.script()))?;
            }
            Ok(EXIT_OK)
        }
        Command::Decide { word, scheme, budget } => {
            let s = load_simple(&scheme)?;
            let v = decide_membership(&s, &load_word(&word.word)?, budget.budget())?;
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "scheme": s.to_string(),
                        "class": v.class,
                        "verdict": verdict_word(v.member),
                        "reason": v.reason,
                        "budget": v.budget,
                        "states": v.states,
                        "depth_reached": v.depth_reached,
                        "witness": v.witness.as_ref().map(Trace::to_json),
                    })
                )?;
            } else {
                writeln!(out, "{} ({})", verdict_word(v.member), v.reason)?;
                writeln!(out, "scheme {s}, {} states, depth {}", v.states, v.depth_reached)?;
                if let Some(t) = &v.witness {
                    writeln!(out, "witness, {} steps from ε:", t.len())?;
                    write!(out, "{}", render_script(&t.script()))?;
                }
            }
            Ok(match v.member {
                Member::Yes => EXIT_OK,
                Member::No => EXIT_NO,
                Member::Unknown => EXIT_UNKNOWN,
            })
        }
        Command::Fdl { scheme, budget } => {
            let s = load_simple(&scheme)?;
            let r = compute_fdl(&s, budget.budget());
            let letters = |ws: &[RelationalWord]| -> Vec<String> {
                ws.iter().map(|w| w.to_letters().unwrap_or_default()).map(|l| if l.is_empty() { "ε".into() } else { l }).collect()
            };
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({
                        "scheme": s.to_string(),
                        "class": r.class,
                        "all_equal": r.all_equal,
                        "members": letters(&r.members),
                        "excluded": letters(&r.excluded),
                        "unknown": letters(&r.unknown),
                        "states": r.states,
                        "complete": r.complete,
                    })
                )?;
            } else if r.all_equal {
                writeln!(out, "scheme {s}: the derivable fully defined words are exactly the all-equal words")?;
            } else {
                writeln!(out, "scheme {s}, bound {}, {} states", r.class.bound_k.unwrap_or(0), r.states)?;
                writeln!(out, "members  {}", letters(&r.members).join(" "))?;
                writeln!(out, "excluded {}", letters(&r.excluded).len())?;
                if !r.unknown.is_empty() {
                    writeln!(out, "unknown  {}", letters(&r.unknown).join(" "))?;
                }
            }
            Ok(if r.complete { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Command::Certify { scheme, all, depth } => {
            let schemes = if all {
                all_simple_schemes()
                    .into_iter()
                    .filter(|s| classify(s).bound_k.is_some())
                    .collect()
            } else {
                vec![load_simple(&scheme)?]
            };
            let mut code = EXIT_OK;
            let mut reports = Vec::new();
            for s in &schemes {
                let report = match certify_bounds(s, depth) {
                    Ok(r) => r,
                    Err(DeciderError::BoundViolated(_, r)) => {
                        code = EXIT_NO;
                        *r
                    }
                    Err(e) => return Err(e.into()),
                };
                if !json {
                    writeln!(
                        out,
                        "{} {}: bound {} maxE bound {}, {} words, {} steps, maxFD {} maxE {}",
                        if report.holds() { "OK  " } else { "FAIL" },
                        report.scheme,
                        report.class.bound_k.unwrap_or(0),
                        report.class.max_e_bound.unwrap_or(0),
                        report.words,
                        report.steps_checked,
                        report.max_fd_observed,
                        report.max_e_observed
                    )?;
                    for v in &report.violations {
                        writeln!(out, "  {v}")?;
                    }
                }
                reports.push(report);
            }
            if json {
                writeln!(out, "{}", serde_json::to_value(&reports)?)?;
            }
            Ok(code)
        }
        Command::DeleteToEmpty { word, scheme } => {
            let s = load_simple(&scheme)?;
            let t = delete_word(&s, &load_word(&word.word)?)?;
            emit_trace(out, json, &t, false)?;
            Ok(EXIT_OK)
        }
        Command::Encode { sys, string } => {
            let (_, rs, m) = load_sys(&sys)?;
            match string {
                Some(s) => {
                    let s = if s == "eps" || s == "ε" { String::new() } else { s };
                    write_word(out, json, &m.encode_string(&s)?)?;
                }
                None if json => {
                    let code: serde_json::Map<String, Value> =
                        m.alphabet().iter().map(|&c| (c.to_string(), json!(m.codeword(c).unwrap()))).collect();
                    let rules: Vec<Value> = rs
                        .scheme
                        .ins_rules()
                        .iter()
                        .chain(rs.scheme.del_rules())
                        .map(|r| json!({"id": r.id, "kind": r.kind, "len": r.len()}))
                        .collect();
                    writeln!(out, "{}", json!({"k": m.k(), "codewords": code, "rules": rules}))?;
                }
                None => {
                    writeln!(out, "K = {}", m.k())?;
                    for &c in m.alphabet() {
                        writeln!(out, "{c} -> {}", m.codeword(c)?)?;
                    }
                    for r in rs.scheme.ins_rules().iter().chain(rs.scheme.del_rules()) {
                        writeln!(out, "{} {}: length {}", r.kind, r.id, r.len())?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Decode { word, sys } => {
            let (s, _, m) = load_sys(&sys)?;
            let w = load_word(&word.word)?;
            let d = m.decode(&w);
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({"canonical": d.is_some(), "decoded": d, "terminal": d.as_deref().map(|x| s.is_terminal(x))})
                )?;
            } else {
                match &d {
                    Some(x) if x.is_empty() => writeln!(out, "ε")?,
                    Some(x) => writeln!(out, "{x}")?,
                    None => writeln!(out, "not canonical")?,
                }
            }
            Ok(if d.is_some() { EXIT_OK } else { EXIT_NO })
        }
        Command::Compare { sys, depth } => {
            let s = StringInsDelSystem::read_file(&sys.sys)?;
            let c = compare_languages(&s, sys.k, depth)?;
            if json {
                writeln!(out, "{}", serde_json::to_value(&c)?)?;
            } else {
                writeln!(out, "K = {}", c.k)?;
                writeln!(out, "depth  strings  relational  canonical  agree")?;
                for l in &c.levels {
                    writeln!(
                        out,
                        "{:>5}  {:>7}  {:>10}  {:>9}  {}",
                        l.depth,
                        l.strings,
                        l.relational_words,
                        l.canonical_words,
                        if l.holds() { "yes" } else { "NO" }
                    )?;
                    for x in &l.missing {
                        writeln!(out, "  missing {x}")?;
                    }
                    for x in l.extra.iter().chain(&l.unreachable_decoded) {
                        writeln!(out, "  extra {x}")?;
                    }
                }
            }
            Ok(if c.holds() { EXIT_OK } else { EXIT_NO })
        }
        Command::Probe {
            sys,
            source,
            rule,
            at,
            max_depth,
            max_len,
        } => {
            let (s, rs, m) = load_sys(&sys)?;
            if rule == 0 {
                return Err(Failure::Usage("rules are numbered from 1".into()));
            }
            let (w, broken) = broken_insertion(&s, &m, &source, rule - 1, at)?;
            let longest = rs.scheme.ins_rules().iter().map(Rule::len).max().unwrap_or(0);
            let budget = Budget {
                max_len: max_len.unwrap_or(broken.len() + longest),
                max_depth,
            };
            let r = repair_probe(&broken, &[w], &rs, &m, budget);
            if json {
                writeln!(out, "{}", serde_json::to_value(&r)?)?;
            } else {
                writeln!(out, "broken word of length {}, budget depth {} length {}", r.broken_len, max_depth, budget.max_len)?;
                writeln!(out, "{} states, depth reached {}", r.states, r.depth_reached)?;
                writeln!(
                    out,
                    "incorrect patterns: {} at start, at least {} on every non-ancestor word, {} decreasing steps",
                    r.incorrect_at_start, r.min_incorrect, r.decreasing_steps
                )?;
                writeln!(out, "ancestor reached again {} time(s)", r.ancestors_reached)?;
                if r.repairs.is_empty() {
                    writeln!(out, "no canonical repair found")?;
                }
                for x in &r.repairs {
                    writeln!(out, "repair at depth {}: {}", x.depth, x.decoded)?;
                }
            }
            Ok(if r.repairs.is_empty() { EXIT_OK } else { EXIT_NO })
        }
    }
}

fn write_word(out: &mut dyn Write, json: bool, w: &RelationalWord) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", json!({"matrix": matrices_json(w), "letters": w.to_letters()}))
    } else {
        write!(out, "{}", render_matrix(w))
    }
}

/// Run with `args` (program name first), writing reports to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "relword: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(err, "relword: {msg}");
            EXIT_NO
        }
    }
}
