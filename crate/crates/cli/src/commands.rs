use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use shkit_core::builtin::{builtin, BUILTIN_NAMES};
use shkit_core::catalog::{self, resolve, LabelledOutcome};
use shkit_core::claims::{verify_claims, ClaimConfig, ClaimReport, ClaimStatus};
use shkit_core::classify::{classify_with_bound, level, level_alt};
use shkit_core::enumerate::{
    search, ArrowScope, EnumError, SearchLimits, SearchSpec, MAX_NODES_ENV,
};
use shkit_core::format::{algebra_to_json_pretty, corpus_line, parse_algebra, read_corpus};
use shkit_core::term::{self, Identity};
use shkit_core::FiniteAlgebra;

use crate::Command;

pub fn run(cmd: &Command, json: bool) -> Result<ExitCode> {
    match cmd {
        Command::Check { algebra, identity } => check(algebra, identity, json),
        Command::Classify {
            algebras,
            max_level,
        } => classify(algebras, *max_level, json),
        Command::Level { algebra, max, alt } => level_cmd(algebra, *max, *alt, json),
        Command::Eval {
            algebra,
            term,
            assignment,
        } => eval(algebra, term, assignment, json),
        Command::Enumerate {
            max_size,
            satisfy,
            falsify,
            max_results,
            heyting_only,
            no_classify,
            out,
        } => {
            let spec = SearchSpec {
                satisfy: identities(satisfy)?,
                falsify: identities(falsify)?,
                max_lattice_size: *max_size,
                max_results: *max_results,
                arrows: if *heyting_only {
                    ArrowScope::Heyting
                } else {
                    ArrowScope::All
                },
            };
            enumerate(&spec, !*no_classify, out.as_deref(), json)
        }
        Command::VerifyPaper {
            max_size,
            arrow_size,
        } => verify(*max_size, *arrow_size, json),
        Command::Show { name } => {
            let a = builtin(name).ok_or_else(|| unknown_builtin(name))?;
            println!("{}", algebra_to_json_pretty(&a));
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog => {
            let all = catalog::catalog();
            if json {
                let entries: Vec<_> = all
                    .iter()
                    .map(|i| json!({"name": i.name, "identity": i.to_string()}))
                    .collect();
                println!("{}", serde_json::to_string(&entries)?);
            } else {
                for i in &all {
                    println!("{:<14} {i}", i.name);
                }
                println!("{:<14} level identities L0, L1, ... and L'0, L'1, ...", "");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn unknown_builtin(name: &str) -> anyhow::Error {
    anyhow!(
        "unknown builtin {name:?} (known: {})",
        BUILTIN_NAMES.join(", ")
    )
}

/// Reads an algebra file or NDJSON corpus; a builtin name is accepted when
/// no file of that name exists.
fn load(source: &str) -> Result<Vec<FiniteAlgebra>> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(a) = builtin(source) {
            return Ok(vec![a]);
        }
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
    let trimmed = text.trim_start();
    let parsed = match parse_algebra(trimmed) {
        Ok(a) => vec![a],
        Err(single) => {
            let many = read_corpus(text.as_bytes());
            match many {
                Ok(v) if !v.is_empty() => v,
                Ok(_) => bail!("{source}: no algebras found"),
                // Report the single-document error for files that hold one object.
                Err(e) if trimmed.lines().filter(|l| !l.trim().is_empty()).count() > 1 => {
                    return Err(anyhow!(e).context(source.to_string()))
                }
                Err(_) => return Err(anyhow!(single).context(source.to_string())),
            }
        }
    };
    Ok(parsed)
}

fn load_one(source: &str) -> Result<FiniteAlgebra> {
    let mut v = load(source)?;
    if v.len() != 1 {
        bail!("{source}: expected one algebra, found {}", v.len());
    }
    Ok(v.remove(0))
}

fn identities(items: &[String]) -> Result<Vec<Identity>> {
    items
        .iter()
        .map(|s| resolve(s).map_err(|e| anyhow!("identity {s:?}: {e}")))
        .collect()
}

fn prefix(i: usize, total: usize) -> String {
    if total > 1 {
        format!("#{i} ")
    } else {
        String::new()
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    identity: &'a str,
    statement: String,
    #[serde(flatten)]
    outcome: LabelledOutcome,
}

fn check(source: &str, identity: &str, json: bool) -> Result<ExitCode> {
    let algebras = load(source)?;
    let id = resolve(identity).map_err(|e| anyhow!("identity {identity:?}: {e}"))?;
    let compiled = catalog::CompiledIdentity::new(&id);
    let outcomes: Vec<LabelledOutcome> = algebras
        .par_iter()
        .map(|a| compiled.check(a).labelled(a))
        .collect();
    let mut all_pass = true;
    let total = outcomes.len();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        all_pass &= outcome.verdict == catalog::Verdict::Pass;
        if json {
            let line = CheckJson {
                identity: &id.name,
                statement: id.to_string(),
                outcome,
            };
            println!("{}", serde_json::to_string(&line)?);
        } else {
            println!("{}{outcome}", prefix(i, total));
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn classify(sources: &[String], max_level: usize, json: bool) -> Result<ExitCode> {
    if sources.is_empty() {
        bail!("no algebra files given");
    }
    let mut algebras = Vec::new();
    for s in sources {
        algebras.extend(load(s)?);
    }
    let reports: Vec<_> = algebras
        .par_iter()
        .map(|a| classify_with_bound(a, max_level))
        .collect();
    let total = reports.len();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for (i, r) in reports.iter().enumerate() {
        if json {
            writeln!(out, "{}", serde_json::to_string(r)?)?;
            continue;
        }
        if i > 0 {
            writeln!(out)?;
        }
        if total > 1 {
            writeln!(out, "# algebra {i} ({} elements)", algebras[i].size())?;
        }
        let members: Vec<&str> = r
            .memberships
            .iter()
            .filter(|(_, &m)| m)
            .map(|(v, _)| v.as_str())
            .collect();
        writeln!(out, "varieties: {}", members.join(" "))?;
        writeln!(out, "level: {}", r.level)?;
        if let Some(alt) = r.level_alt {
            writeln!(out, "level (alternate): {alt}")?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn level_cmd(source: &str, max: usize, alt: bool, json: bool) -> Result<ExitCode> {
    let algebras = load(source)?;
    let total = algebras.len();
    for (i, a) in algebras.iter().enumerate() {
        let l = if alt {
            level_alt(a, max)
        } else {
            level(a, max)
        };
        if json {
            println!("{}", serde_json::to_string(&json!({ "level": l }))?);
        } else {
            println!("{}{l}", prefix(i, total));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn eval(source: &str, text: &str, assignment: &[String], json: bool) -> Result<ExitCode> {
    let a = load_one(source)?;
    let t = term::parse(text).map_err(|e| anyhow!("term {text:?}: {e}"))?;
    let mut env = HashMap::new();
    for item in assignment {
        let (var, label) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("assignment {item:?} is not of the form var=element"))?;
        let e = a
            .index_of(label.trim())
            .ok_or_else(|| anyhow!("unknown element {:?}", label.trim()))?;
        env.insert(var.trim().to_string(), e);
    }
    let value = term::eval(&t, &a, &env)?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&json!({ "value": a.label(value) }))?
        );
    } else {
        println!("{}", a.label(value));
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate(
    spec: &SearchSpec,
    with_class: bool,
    out: Option<&Path>,
    json: bool,
) -> Result<ExitCode> {
    let found = search(spec, &SearchLimits::from_env()).map_err(|e| match e {
        EnumError::SearchSpaceExceeded { .. } => {
            anyhow!("{e}; raise {MAX_NODES_ENV}, lower --max-size, or pass --heyting-only")
        }
        e => anyhow!(e),
    })?;
    let lines: Vec<String> = found
        .par_iter()
        .map(|a| corpus_line(a, with_class.then(|| shkit_core::classify(a))))
        .collect();
    match out {
        Some(path) => {
            let file =
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            for l in &lines {
                writeln!(w, "{l}")?;
            }
            w.flush()?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string(
                        &json!({"count": lines.len(), "out": path.display().to_string()})
                    )?
                );
            } else {
                println!("wrote {} algebras to {}", lines.len(), path.display());
            }
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            for l in &lines {
                writeln!(w, "{l}")?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(max_size: usize, arrow_size: usize, json: bool) -> Result<ExitCode> {
    let report = verify_claims(&ClaimConfig {
        max_size,
        arrow_size,
        limits: SearchLimits::from_env(),
    });
    if json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_table(&report);
    }
    Ok(if report.all_match() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn print_table(report: &ClaimReport) {
    let w = report
        .claims
        .iter()
        .map(|c| c.id.len())
        .max()
        .unwrap_or(2)
        .max(5);
    println!(
        "model space: (lattice, negation) pairs up to size {}, full triples up to size {}",
        report.max_size, report.arrow_size
    );
    println!();
    println!("{:<w$}  {:<8}  actual", "claim", "status");
    for c in &report.claims {
        println!("{:<w$}  {:<8}  {}", c.id, c.status.to_string(), c.actual);
        if c.status == ClaimStatus::Mismatch {
            println!("{:<w$}  {:<8}  expected: {}", "", "", c.expected);
        }
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for c in &report.claims {
        *counts.entry(c.status.to_string()).or_default() += 1;
    }
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{v} {k}")).collect();
    println!();
    println!("{}", summary.join(", "));
}
