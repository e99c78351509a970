use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use indperm::bijection;
use indperm::brute_force::check_structure_lemma;
use indperm::closed_forms::{self, Form1234, PatternClassId};
use indperm::identities::{self, Identity};
use indperm::{Oracle, Permutation, Restrict, VincularPattern};

use crate::oeis::{self, ManifestEntry, Provenance, SequenceRecord, Source};
use crate::report::{big, csv, Report, Status};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "indperm", version, about = "Pattern-avoiding indecomposable permutations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Avoider counts for one pattern.
    Seq(SeqArgs),
    /// Check identities, lemmas, or the whole suite.
    Verify(VerifyArgs),
    /// The 1-32 bijection at one length.
    Bij(BijArgs),
    /// Compare a computed sequence with an OEIS b-file.
    OeisCheck(OeisArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SourceKind {
    #[default]
    Brute,
    Formula,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    #[default]
    Standard,
    Alternate,
}

#[derive(Debug, clap::Args)]
pub struct SeqArgs {
    /// Pattern in dash notation, e.g. 1-32.
    #[arg(long)]
    pub pattern: String,
    #[arg(long)]
    pub indecomposable: bool,
    #[arg(long)]
    pub by_descents: bool,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub source: SourceKind,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Identity id, or a prefix such as IND_FACTOR.
    #[arg(long, conflicts_with = "all")]
    pub identity: Option<String>,
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub lemma: Option<String>,
    #[arg(long)]
    pub max_n: usize,
    /// Constant term used by the 1234 closed-form checks.
    #[arg(long, value_enum, default_value_t)]
    pub form_1234: FormArg,
}

#[derive(Debug, clap::Args)]
pub struct BijArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, clap::Args)]
pub struct OeisArgs {
    #[arg(long, required_unless_present = "manifest")]
    pub pattern: Option<String>,
    #[arg(long)]
    pub indecomposable: bool,
    #[arg(long, required_unless_present = "manifest")]
    pub oeis: Option<String>,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub offline: bool,
    /// Our n is compared with OEIS index n + shift.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<i64>,
    #[arg(long)]
    pub first_n: Option<usize>,
    /// Check every built-in sequence instead of one pattern.
    #[arg(long, conflicts_with_all = ["pattern", "oeis"])]
    pub manifest: bool,
}

/// A finished command: the report and its rendering for stdout.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub rendered: String,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Seq(a) => seq(&a),
        Command::Verify(a) => verify(&a),
        Command::Bij(a) => bij(&a),
        Command::OeisCheck(a) => oeis_check(&a),
    }
}

fn parse_pattern(text: &str) -> Result<VincularPattern, CliError> {
    text.parse()
        .map_err(|e: indperm::Error| CliError::Usage(e.to_string()))
}

fn restrict(indecomposable: bool) -> Restrict {
    if indecomposable {
        Restrict::IndecomposableOnly
    } else {
        Restrict::All
    }
}

fn check_max_n(max_n: usize) -> Result<(), CliError> {
    let cap = Oracle::default().max_n();
    if max_n > cap {
        return Err(indperm::Error::ResourceLimit {
            requested: max_n,
            max: cap,
        }
        .into());
    }
    Ok(())
}

fn formula_count(p: &VincularPattern, indecomposable: bool, n: usize) -> Result<BigInt, CliError> {
    if !indecomposable {
        return Ok(closed_forms::avoider_count(p, n)?);
    }
    let no_formula = || CliError::Usage(format!("no closed form for the indecomposable avoiders of {p}"));
    match PatternClassId::classify(p) {
        None | Some(PatternClassId::P4231) => Err(no_formula()),
        Some(PatternClassId::P1234) => Ok(closed_forms::i1234(n, Form1234::Standard)?),
        Some(id) => Ok(closed_forms::indecomposable_count(id, n)?),
    }
}

fn seq(a: &SeqArgs) -> Result<Outcome, CliError> {
    let p = parse_pattern(&a.pattern)?;
    check_max_n(a.max_n)?;
    let parameters = json!({
        "pattern": p.to_string(),
        "indecomposable": a.indecomposable,
        "by_descents": a.by_descents,
        "max_n": a.max_n,
        "source": format!("{:?}", a.source).to_lowercase(),
    });
    let oracle = Oracle::default();
    let rows: Vec<(usize, Option<usize>, BigInt)> = if a.by_descents {
        if a.source == SourceKind::Formula {
            return Err(CliError::Usage("--by-descents needs --source brute".into()));
        }
        let table = oracle.descent_table(&p, restrict(a.indecomposable), a.max_n)?;
        (1..=a.max_n)
            .flat_map(|n| {
                let table = &table;
                (0..n).map(move |i| (n, Some(i), table.count(n, i)))
            })
            .collect()
    } else {
        let counts = match a.source {
            SourceKind::Brute => oracle.counts(&p, restrict(a.indecomposable), a.max_n)?,
            SourceKind::Formula => std::iter::once(Ok(BigInt::from(1)))
                .chain((1..=a.max_n).map(|n| formula_count(&p, a.indecomposable, n)))
                .collect::<Result<_, _>>()?,
        };
        (1..=a.max_n).map(|n| (n, None, counts[n].clone())).collect()
    };
    let results: Vec<Value> = rows
        .iter()
        .map(|(n, i, c)| match i {
            Some(i) => json!({"n": n, "i": i, "count": big(c)}),
            None => json!({"n": n, "count": big(c)}),
        })
        .collect();
    let report = Report {
        command: "seq".into(),
        parameters,
        results: Value::Array(results),
        status: Status::Pass,
    };
    let rendered = match a.format {
        Format::Json => report.to_json(),
        Format::Csv if a.by_descents => csv(
            &["n", "descents", "count"],
            rows.iter()
                .map(|(n, i, c)| vec![n.to_string(), i.unwrap_or(0).to_string(), c.to_string()]),
        ),
        Format::Csv => csv(
            &["n", "count"],
            rows.iter().map(|(n, _, c)| vec![n.to_string(), c.to_string()]),
        ),
    };
    Ok(Outcome { report, rendered })
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    if a.identity.is_none() && !a.all && a.lemma.is_none() {
        return Err(CliError::Usage("give --identity, --all or --lemma".into()));
    }
    check_max_n(a.max_n)?;
    let form = match a.form_1234 {
        FormArg::Standard => Form1234::Standard,
        FormArg::Alternate => Form1234::Alternate,
    };
    let mut results = Vec::new();
    if a.all {
        let summary = identities::run_all_with(a.max_n, form)?;
        for e in &summary.entries {
            results.push(json!({
                "id": e.id,
                "passed": e.passed,
                "detail": e.detail,
                "elapsed_ms": e.elapsed.as_millis() as u64,
            }));
        }
    }
    if let Some(sel) = &a.identity {
        let oracle = Oracle::default();
        for identity in Identity::select(sel)? {
            let r = identities::check(&identity, a.max_n, true, &oracle)?;
            results.push(json!({
                "id": r.id,
                "passed": r.passed(),
                "detail": format!("{:?}", r.status),
                "equation": r.equation,
                "bivariate": r.bivariate,
            }));
        }
    }
    if let Some(id) = &a.lemma {
        let top = a.max_n.min(Oracle::default().max_n() - 1);
        if top < 2 {
            return Err(CliError::Usage("lemma checks need --max-n >= 2".into()));
        }
        for n in 2..=top {
            let r = check_structure_lemma(id, n)?;
            results.push(json!({
                "id": format!("{id}@{n}"),
                "passed": r.passed(),
                "detail": format!(
                    "{} decomposable avoiders, {} characterized, missed {:?}, spurious {:?}",
                    r.decomposable_avoiders,
                    r.characterized,
                    r.missed.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    r.spurious.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                ),
            }));
        }
    }
    let ok = results.iter().all(|r| r["passed"] == Value::Bool(true));
    let report = Report {
        command: "verify".into(),
        parameters: json!({
            "identity": a.identity,
            "all": a.all,
            "lemma": a.lemma,
            "max_n": a.max_n,
            "form_1234": format!("{:?}", a.form_1234).to_lowercase(),
        }),
        results: Value::Array(results),
        status: ok.into(),
    };
    let rendered = report.to_json();
    Ok(Outcome { report, rendered })
}

fn bij(a: &BijArgs) -> Result<Outcome, CliError> {
    let pairs = bijection::table(a.n)?;
    let check = bijection::verify(a.n)?;
    let report = Report {
        command: "bij".into(),
        parameters: json!({"n": a.n}),
        results: json!({
            "pairs": pairs
                .iter()
                .map(|(p, f)| json!({"pi": p.to_string(), "image": f.to_string()}))
                .collect::<Vec<_>>(),
            "domain_size": check.domain_size,
            "codomain_size": check.codomain_size,
            "injective": check.injective,
            "onto": check.onto,
            "round_trip": check.round_trip,
        }),
        status: check.passed().into(),
    };
    let rendered = match a.format {
        Format::Json => report.to_json(),
        Format::Csv => csv(
            &["pi", "image"],
            pairs.iter().map(|(p, f)| vec![p.to_string(), f.to_string()]),
        ),
    };
    Ok(Outcome { report, rendered })
}

/// Our side of a manifest entry for `first_n..=max_n`.
pub fn compute(entry: &ManifestEntry, max_n: usize) -> Result<SequenceRecord, CliError> {
    check_max_n(max_n)?;
    let first = entry.first_n.min(max_n + 1);
    let counts: Vec<BigInt> = match &entry.source {
        Source::Pattern {
            pattern,
            indecomposable,
        } => {
            let p = parse_pattern(pattern)?;
            let all = Oracle::default().counts(&p, restrict(*indecomposable), max_n)?;
            all.into_iter().skip(first).collect()
        }
        Source::Indecomposable => (first..=max_n)
            .map(|n| {
                let c = Permutation::all(n)
                    .filter(|p| p.is_indecomposable() == Ok(true))
                    .count();
                BigInt::from(c)
            })
            .collect(),
    };
    Ok(SequenceRecord::from_counts(
        entry.name.clone(),
        first as i64,
        counts,
        Provenance::BruteForce,
    ))
}

fn check_entry(entry: &ManifestEntry, a: &OeisArgs, cache: &std::path::Path) -> Result<Value, CliError> {
    let theirs = oeis::fetch_bfile(&entry.oeis_id, cache, a.offline)?;
    let ours = compute(entry, a.max_n)?;
    let c = oeis::compare(&ours, &theirs, entry.shift)?;
    Ok(json!({
        "name": entry.name,
        "oeis": entry.oeis_id,
        "shift": c.shift,
        "first_n": entry.first_n,
        "overlap": [c.overlap.0, c.overlap.1],
        "matched": c.matched,
        "first_mismatch": c.first_mismatch.as_ref().map(|(n, ours, theirs)| {
            json!({"n": n, "ours": big(ours), "oeis": big(theirs)})
        }),
        "passed": c.passed(),
    }))
}

fn oeis_check(a: &OeisArgs) -> Result<Outcome, CliError> {
    let cache = a.cache_dir.clone().unwrap_or_else(oeis::default_cache_dir);
    let entries: Vec<ManifestEntry> = if a.manifest {
        oeis::MANIFEST.to_vec()
    } else {
        let (Some(pattern), Some(id)) = (&a.pattern, &a.oeis) else {
            return Err(CliError::Usage("--pattern and --oeis are required".into()));
        };
        oeis::validate_id(id)?;
        let p = parse_pattern(pattern)?;
        let known = oeis::lookup(id, pattern, a.indecomposable);
        vec![ManifestEntry {
            name: known.map_or_else(|| p.to_string().into(), |e| e.name.clone()),
            oeis_id: id.clone().into(),
            source: Source::Pattern {
                pattern: p.to_string().into(),
                indecomposable: a.indecomposable,
            },
            shift: a.shift.or(known.map(|e| e.shift)).unwrap_or(0),
            first_n: a.first_n.or(known.map(|e| e.first_n)).unwrap_or(1),
        }]
    };
    let results = entries
        .iter()
        .map(|e| check_entry(e, a, &cache))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = results.iter().all(|r| r["passed"] == Value::Bool(true));
    let report = Report {
        command: "oeis-check".into(),
        parameters: json!({
            "pattern": a.pattern,
            "indecomposable": a.indecomposable,
            "oeis": a.oeis,
            "max_n": a.max_n,
            "cache_dir": cache.display().to_string(),
            "offline": a.offline,
            "manifest": a.manifest,
        }),
        results: Value::Array(results),
        status: ok.into(),
    };
    let rendered = report.to_json();
    Ok(Outcome { report, rendered })
}
