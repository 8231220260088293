use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use sha2::{Digest, Sha256};
use sts_core::catalog::{verify_pairwise_nonisomorphic, Catalog};
use sts_core::coloring::{Color, PartialColoring};
use sts_core::defining::{
    classify_strength, is_minimal_defining, search, search_both, unique_extension, SearchOptions,
    DEFAULT_BUDGET,
};
use sts_core::designs::{bose, builtin, cyclic_sts, skolem, Block, TripleSystem};
use sts_core::golden::{parse_fixture, verify_rows, EMBEDDED_ROWS};
use sts_core::{DefiningSetRecord, Error, Result};

use crate::result::*;
use crate::{
    CatalogCheckArgs, ClassifyArgs, Cli, Command, ConstructArgs, GlobalArgs, Output, SearchArgs,
    SpectraArgs, VerifyArgs, CATALOG_ENV, EXIT_BUDGET, EXIT_DOMAIN, EXIT_OK,
};

pub(crate) fn dispatch(cli: Cli) -> Output {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.jobs)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => return failure(&Error::PreconditionViolated(format!("thread pool: {e}"))),
    };
    let jobs = pool.current_num_threads();
    let started = Instant::now();
    let g = &cli.global;
    let outcome = pool.install(|| match &cli.command {
        Command::Construct(a) => construct(g, a),
        Command::Search(a) => search_cmd(g, a),
        Command::Verify(a) => verify(g, a),
        Command::Spectra(a) => spectra(g, a),
        Command::CatalogCheck(a) => catalog_check(g, a),
        Command::Classify(a) => classify(g, a),
    });
    match outcome {
        Ok(Done::Text(out)) => out,
        Ok(Done::Run {
            mut result,
            code,
            text,
        }) => {
            result.timings = Some(Timings {
                jobs,
                wall_ms: started.elapsed().as_millis() as u64,
            });
            emit(g, result, code, text)
        }
        Err(e) => failure(&e),
    }
}

enum Done {
    /// Plain output (construct).
    Text(Output),
    /// A RunResult, the exit code, and optional human-readable text for stdout.
    Run {
        result: RunResult,
        code: i32,
        text: Option<String>,
    },
}

fn failure(e: &Error) -> Output {
    let code = match e {
        Error::BudgetExhausted(_) | Error::NodeLimit { .. } => EXIT_BUDGET,
        _ => EXIT_DOMAIN,
    };
    Output {
        code,
        stderr: format!("error: {e}\n"),
        ..Output::default()
    }
}

/// Writes the JSON to `--out` or stdout; `text`, if any, goes to stdout.
fn emit(g: &GlobalArgs, result: RunResult, code: i32, text: Option<String>) -> Output {
    let json = result.to_json();
    let mut out = Output {
        code,
        result: Some(result),
        ..Output::default()
    };
    match &g.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                return failure(&Error::Io(e));
            }
            out.stdout = text.unwrap_or_else(|| format!("wrote {}\n", path.display()));
        }
        None => out.stdout = text.unwrap_or(json + "\n"),
    }
    out
}

fn digest(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

fn load_catalog(g: &GlobalArgs) -> Result<Catalog> {
    match g
        .catalog
        .clone()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(Into::into))
    {
        Some(path) => Catalog::load(path),
        None => Catalog::embedded(),
    }
}

/// Resolves a system reference: an existing file in the text format, a
/// built-in name, `cat:N` (catalog entry), `bose:N` or `skolem:N`.
pub fn resolve_system(
    reference: &str,
    catalog: impl FnOnce() -> Result<Catalog>,
) -> Result<TripleSystem> {
    let path = Path::new(reference);
    if path.is_file() {
        return std::fs::read_to_string(path)?.parse();
    }
    let family = |prefix: &str| -> Option<Result<usize>> {
        reference
            .strip_prefix(prefix)
            .map(|n| match n.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(Error::UnknownName(reference.to_string())),
            })
    };
    if let Some(n) = family("bose:") {
        return Ok(bose(n?));
    }
    if let Some(n) = family("skolem:") {
        return Ok(skolem(n?));
    }
    if let Some(n) = family("cat:") {
        let n = n?;
        return catalog()?
            .get(n)
            .cloned()
            .ok_or_else(|| Error::UnknownName(reference.to_string()));
    }
    builtin(reference)
}

fn construct(g: &GlobalArgs, a: &ConstructArgs) -> Result<Done> {
    let sys = if let Some(args) = &a.cyclic {
        let v: usize = args[0]
            .parse()
            .map_err(|_| Error::Parse(format!("order `{}`", args[0])))?;
        let bases = args[1..]
            .iter()
            .map(|s| parse_block(s))
            .collect::<Result<Vec<Block>>>()?;
        cyclic_sts(v, &bases)?
    } else if let Some(n) = a.bose {
        nonzero(n, "--bose")?;
        bose(n)
    } else if let Some(n) = a.skolem {
        nonzero(n, "--skolem")?;
        skolem(n)
    } else {
        builtin(
            a.builtin
                .as_deref()
                .expect("clap requires one construction"),
        )?
    };
    let info = format!("v={} b={} r={}\n", sys.v(), sys.b(), sys.r());
    let text = sys.to_text();
    Ok(Done::Text(match &g.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Output {
                code: EXIT_OK,
                stdout: info,
                ..Output::default()
            }
        }
        None => Output {
            code: EXIT_OK,
            stdout: text,
            stderr: info,
            result: None,
        },
    }))
}

fn nonzero(n: usize, flag: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::PreconditionViolated(format!("{flag} needs n >= 1")));
    }
    Ok(())
}

fn parse_block(s: &str) -> Result<Block> {
    let pts: Vec<usize> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("base block `{s}`")))
        })
        .collect::<Result<_>>()?;
    pts.try_into()
        .map_err(|_| Error::Parse(format!("base block `{s}` needs three points")))
}

fn search_cmd(g: &GlobalArgs, a: &SearchArgs) -> Result<Done> {
    let sys = resolve_system(&a.system, || load_catalog(g))?;
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    let pattern = a.pattern.map(|p| p.to_string()).unwrap_or_default();
    let command = match &a.pattern {
        Some(p) => format!(
            "search {} --mode {} --pattern {} --budget {budget}",
            a.system,
            a.mode.as_str(),
            p
        ),
        None => format!(
            "search {} --mode {} --budget {budget}",
            a.system,
            a.mode.as_str()
        ),
    };
    let inputs_digest = digest(&[
        "search",
        a.mode.as_str(),
        &pattern,
        &budget.to_string(),
        &sys.to_text(),
    ]);
    let options = SearchOptions::new(a.system.clone())
        .with_pattern(a.pattern)
        .with_budget(Some(budget));
    let mut summary = SearchSummary {
        system_id: a.system.clone(),
        kind: a.mode.as_str(),
        pattern: a.pattern,
        bounds: None,
    };
    let (status, records, nodes_used, code) = match search(&sys, a.mode, &options) {
        Ok(report) => (Status::Ok, vec![report.record], report.nodes_used, EXIT_OK),
        Err(Error::BudgetExhausted(report)) => {
            summary.bounds = Some([report.lower, report.upper]);
            (
                Status::BudgetExhausted,
                report.best.into_iter().collect(),
                report.nodes_used,
                EXIT_BUDGET,
            )
        }
        Err(e) => return Err(e),
    };
    let result = RunResult {
        command,
        inputs_digest,
        status,
        records,
        summary: Some(Summary::Search(summary)),
        budget: BudgetUsage {
            limit: Some(budget),
            nodes_used,
        },
        timings: None,
    };
    Ok(Done::Run {
        result,
        code,
        text: None,
    })
}

fn spectra(g: &GlobalArgs, a: &SpectraArgs) -> Result<Done> {
    let systems: Vec<(String, TripleSystem)> = match a.v {
        7 => vec![("sts7".into(), builtin("sts7")?)],
        9 => vec![("sts9".into(), builtin("sts9")?)],
        13 => vec![
            ("sts13-1".into(), builtin("sts13-1")?),
            ("sts13-2".into(), builtin("sts13-2")?),
        ],
        15 => load_catalog(g)?
            .iter()
            .map(|(id, s)| (format!("cat:{id}"), s.clone()))
            .collect(),
        v => {
            return Err(Error::PreconditionViolated(format!(
                "spectra support v in {{7, 9, 13, 15}}, got {v}"
            )))
        }
    };
    let budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    let texts: Vec<String> = systems.iter().map(|(_, s)| s.to_text()).collect();
    let mut parts = vec!["spectra".to_string(), a.v.to_string(), budget.to_string()];
    parts.extend(texts);
    let inputs_digest = digest(&parts.iter().map(String::as_str).collect::<Vec<_>>());

    let mut records: Vec<DefiningSetRecord> = Vec::new();
    let mut sizes = Vec::new();
    let mut incomplete = Vec::new();
    let mut nodes_used = 0;
    for (id, sys) in &systems {
        let options = SearchOptions::new(id.clone()).with_budget(Some(budget));
        match search_both(sys, &options) {
            Ok((min, max)) => {
                sizes.push((min.record.size, max.record.size));
                nodes_used += min.nodes_used;
                records.push(min.record);
                records.push(max.record);
            }
            Err(Error::BudgetExhausted(report)) => {
                nodes_used += report.nodes_used;
                records.extend(report.best);
                incomplete.push(id.clone());
            }
            Err(e) => return Err(e),
        }
    }
    let spec_d: std::collections::BTreeSet<usize> = sizes.iter().map(|s| s.0).collect();
    let spec_big_d: std::collections::BTreeSet<usize> = sizes.iter().map(|s| s.1).collect();
    let complete = incomplete.is_empty();
    let summary = SpectraSummary {
        v: a.v,
        systems: systems.len(),
        d: spec_d.first().copied().filter(|_| complete),
        big_d: spec_big_d.last().copied().filter(|_| complete),
        spec_d: spec_d.into_iter().collect(),
        spec_big_d: spec_big_d.into_iter().collect(),
        incomplete,
    };
    let (status, code) = if complete {
        (Status::Ok, EXIT_OK)
    } else {
        (Status::BudgetExhausted, EXIT_BUDGET)
    };
    let result = RunResult {
        command: format!("spectra --v {} --budget {budget}", a.v),
        inputs_digest,
        status,
        records,
        summary: Some(Summary::Spectra(summary)),
        budget: BudgetUsage {
            limit: Some(budget),
            nodes_used,
        },
        timings: None,
    };
    Ok(Done::Run {
        result,
        code,
        text: None,
    })
}

fn verify(g: &GlobalArgs, a: &VerifyArgs) -> Result<Done> {
    let (source, text) = match &a.tables {
        Some(path) => (path.display().to_string(), std::fs::read_to_string(path)?),
        None => ("embedded".to_string(), EMBEDDED_ROWS.to_string()),
    };
    let rows = parse_fixture(&text)?;
    let catalog = if rows.iter().any(|r| r.system_id.starts_with("cat:")) {
        Some(load_catalog(g)?)
    } else {
        None
    };
    let verdicts = verify_rows(&rows, catalog.as_ref())?;
    let passed = verdicts.iter().filter(|v| v.passed()).count();

    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    let mut matrix = format!(
        "{:<26} {:>10} {:>6} {:>8} {:>7} {:>7} {:>8}  result\n",
        "row", "consistent", "proper", "defining", "minimal", "witness", "strength"
    );
    for (row, v) in rows.iter().zip(&verdicts) {
        let strength = match v.strength_matches {
            None => "-",
            Some(ok) => mark(ok),
        };
        let _ = writeln!(
            matrix,
            "{:<26} {:>10} {:>6} {:>8} {:>7} {:>7} {:>8}  {}",
            format!("{} ({})", v.label, row.size),
            mark(v.consistent),
            mark(v.proper),
            mark(v.defining),
            mark(v.minimal),
            mark(v.witness_matches),
            strength,
            if v.passed() { "PASS" } else { "FAIL" },
        );
    }
    let _ = writeln!(matrix, "{passed} of {} rows pass", rows.len());

    let all = passed == rows.len();
    let mut digest_parts = vec!["verify", text.as_str()];
    let cat_digest = catalog.as_ref().map(|c| c.source_digest().to_string());
    if let Some(d) = &cat_digest {
        digest_parts.push(d);
    }
    let result = RunResult {
        command: format!("verify {source}"),
        inputs_digest: digest(&digest_parts),
        status: if all { Status::Ok } else { Status::Failed },
        records: Vec::new(),
        summary: Some(Summary::Verify(VerifySummary {
            rows: rows.len(),
            passed,
            failed: rows.len() - passed,
            verdicts,
        })),
        budget: BudgetUsage {
            limit: None,
            nodes_used: 0,
        },
        timings: None,
    };
    Ok(Done::Run {
        result,
        code: if all { EXIT_OK } else { EXIT_DOMAIN },
        text: Some(matrix),
    })
}

fn catalog_check(g: &GlobalArgs, a: &CatalogCheckArgs) -> Result<Done> {
    let cat = load_catalog(g)?;
    let nonisomorphic = if a.skip_isomorphism {
        None
    } else {
        Some(verify_pairwise_nonisomorphic(&cat, g.budget)?)
    };
    let ok = nonisomorphic != Some(false);
    let summary = CatalogSummary {
        entries: cat.len(),
        source_digest: cat.source_digest().to_string(),
        pairwise_nonisomorphic: nonisomorphic,
        pasch_distribution: cat.pasch_distribution(),
    };
    let result = RunResult {
        command: if a.skip_isomorphism {
            "catalog-check --skip-isomorphism".into()
        } else {
            "catalog-check".into()
        },
        inputs_digest: digest(&["catalog-check", cat.source_digest()]),
        status: if ok { Status::Ok } else { Status::Failed },
        records: Vec::new(),
        summary: Some(Summary::Catalog(summary)),
        budget: BudgetUsage {
            limit: g.budget,
            nodes_used: 0,
        },
        timings: None,
    };
    Ok(Done::Run {
        result,
        code: if ok { EXIT_OK } else { EXIT_DOMAIN },
        text: None,
    })
}

fn parse_partial(s: &str, v: usize) -> Result<PartialColoring> {
    if s.chars().count() != v {
        return Err(Error::Parse(format!(
            "partial colouring has {} characters, v = {v}",
            s.chars().count()
        )));
    }
    let mut set = PartialColoring::new();
    for (p, ch) in s.chars().enumerate() {
        match ch {
            '.' | '-' => {}
            c if c.is_ascii_lowercase() && Color::from_char(c).is_some() => {}
            c => {
                let color =
                    Color::from_char(c).ok_or_else(|| Error::Parse(format!("`{c}` in `{s}`")))?;
                set.insert(p, color);
            }
        }
    }
    Ok(set)
}

fn classify(g: &GlobalArgs, a: &ClassifyArgs) -> Result<Done> {
    let sys = resolve_system(&a.system, || load_catalog(g))?;
    let set = parse_partial(&a.partial, sys.v())?;
    let extension = unique_extension(&sys, &set).ok();
    let defining = extension.is_some();
    let summary = ClassifySummary {
        system_id: a.system.clone(),
        size: set.len(),
        defining,
        minimal: defining && is_minimal_defining(&sys, &set),
        strength: classify_strength(&sys, &set).ok(),
        extension: extension.map(|c| c.to_string()),
    };
    let result = RunResult {
        command: format!("classify {} {}", a.system, a.partial),
        inputs_digest: digest(&["classify", &a.partial, &sys.to_text()]),
        status: if defining { Status::Ok } else { Status::Failed },
        records: Vec::new(),
        summary: Some(Summary::Classify(summary)),
        budget: BudgetUsage {
            limit: None,
            nodes_used: 0,
        },
        timings: None,
    };
    Ok(Done::Run {
        result,
        code: if defining { EXIT_OK } else { EXIT_DOMAIN },
        text: None,
    })
}
