use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cayley_spectra::cheeger::DEFAULT_EXACT_CAP;
use cayley_spectra::experiments::{
    analyze, default_corpus, gen, parse_manifest, scan, ExperimentError, GenRequest, GroupSource,
    InstanceSpec, Options, Requirements, ScanItem, ScanRow, SetSource, SetSpec, CSV_HEADER,
};
use cayley_spectra::graph::GraphKind;
use cayley_spectra::rational::Rational;
use cayley_spectra::spectra::DEFAULT_TOL;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cayley-spectra", version, about = "Spectra and Cheeger constants of Cayley graphs and Cayley sum graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one instance.
    Analyze(AnalyzeArgs),
    /// One CSV row per instance over a family range or the default corpus.
    Scan(ScanArgs),
    /// Sample a random symmetric generating set.
    Gen(GenArgs),
    /// Run every check over a manifest of instances.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Built-in group, e.g. `cyclic:5`, `dihedral:4`, `cyclic:2*cyclic:4`.
    #[arg(long, conflicts_with = "group_file")]
    family: Option<String>,
    /// Multiplication-table file.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Args)]
struct SetArgs {
    /// Comma-separated element indices; `-k` is the inverse of `k`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "set_file")]
    set: Option<String>,
    #[arg(long)]
    set_file: Option<PathBuf>,
}

#[derive(Args)]
struct NumericArgs {
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    max_exact_n: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

impl NumericArgs {
    fn options(&self) -> Options {
        Options {
            max_exact_n: self.max_exact_n,
            tol: self.tol,
            epsilon_override: None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cayley,
    CayleySum,
    Both,
}

impl KindArg {
    fn kinds(self) -> Vec<GraphKind> {
        match self {
            KindArg::Cayley => vec![GraphKind::Cayley],
            KindArg::CayleySum => vec![GraphKind::CayleySum],
            KindArg::Both => vec![GraphKind::Cayley, GraphKind::CayleySum],
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    set: SetArgs,
    #[arg(long, value_parser = ["cayley", "cayley_sum"], default_value = "cayley_sum")]
    kind: String,
    #[command(flatten)]
    numeric: NumericArgs,
    /// Expansion constant for the conditional checks (at most h), e.g. `1/4`.
    #[arg(long)]
    epsilon: Option<String>,
    /// Accepted for interface uniformity; analysis uses no randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ScanArgs {
    /// Family with an optional integer range, e.g. `cyclic:3..15`. Without
    /// `--family` or `--group-file` the default corpus is scanned.
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    set: SetArgs,
    #[arg(long, value_enum, default_value_t = KindArg::CayleySum)]
    kind: KindArg,
    /// Size of sampled sets when no set is given.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Sampled sets per group when no set is given.
    #[arg(long, default_value_t = 1)]
    samples: usize,
    /// Requirements for sampled sets: conjugation_closed, non_bipartite, minimal.
    #[arg(long, default_value = "")]
    require: String,
    #[arg(long, default_value_t = 100)]
    attempts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    numeric: NumericArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Target size of the set.
    #[arg(long)]
    d: usize,
    #[arg(long, default_value = "")]
    require: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    attempts: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Manifest file; `@default` inside it expands to the shipped corpus.
    manifest: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    numeric: NumericArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Scan(a) => run_scan(a),
        Command::Gen(a) => run_gen(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var("CAYLEY_SPECTRA_THREADS") else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring CAYLEY_SPECTRA_THREADS={value}"),
    }
}

fn read_text(path: &Path) -> Result<String, ExperimentError> {
    std::fs::read_to_string(path).map_err(|e| ExperimentError::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), ExperimentError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| ExperimentError::Parse(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            Ok(())
        }
    }
}

fn group_source(args: &GroupArgs) -> Result<Option<GroupSource>, ExperimentError> {
    match (&args.family, &args.group_file) {
        (Some(f), _) => f.parse().map(Some),
        (None, Some(p)) => Ok(Some(GroupSource::File(p.clone()))),
        (None, None) => Ok(None),
    }
}

fn set_spec(args: &SetArgs) -> Result<Option<SetSpec>, ExperimentError> {
    match (&args.set, &args.set_file) {
        (Some(s), _) => s.parse().map(Some),
        (None, Some(p)) => read_text(p)?.parse().map(Some),
        (None, None) => Ok(None),
    }
}

fn run_analyze(args: AnalyzeArgs) -> Result<u8, ExperimentError> {
    let group = group_source(&args.group)?
        .ok_or_else(|| ExperimentError::Parse("one of --family or --group-file is required".into()))?;
    let set = set_spec(&args.set)?
        .ok_or_else(|| ExperimentError::Parse("one of --set or --set-file is required".into()))?;
    let kind = cayley_spectra::experiments::parse_kind(&args.kind)?;
    let mut opts = args.numeric.options();
    if let Some(e) = &args.epsilon {
        let eps: Rational = e
            .parse()
            .map_err(|_| ExperimentError::Parse(format!("bad epsilon `{e}`")))?;
        opts.epsilon_override = Some(eps);
    }
    let report = analyze(&InstanceSpec::new(group, set, kind), &opts)?;
    let text = match args.format {
        Format::Json => {
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Csv => {
            let row = ScanRow::from_report(&report);
            format!("{CSV_HEADER}\n{}\n", row.to_csv())
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(u8::from(report.failed()))
}

/// Expands the first `a..b` in a family name, e.g. `cyclic:3..15`.
fn expand_range(family: &str) -> Result<Vec<String>, ExperimentError> {
    let Some(dots) = family.find("..") else {
        return Ok(vec![family.to_string()]);
    };
    let head = &family[..dots];
    let tail = &family[dots + 2..];
    let lo_start = head.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let hi_len = tail.len() - tail.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    let bad = || ExperimentError::Parse(format!("bad range in `{family}`"));
    let lo: usize = head[lo_start..].parse().map_err(|_| bad())?;
    let hi: usize = tail[..hi_len].parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi)
        .map(|k| format!("{}{k}{}", &head[..lo_start], &tail[hi_len..]))
        .collect())
}

fn scan_items(args: &ScanArgs) -> Result<Vec<ScanItem>, ExperimentError> {
    let groups: Vec<GroupSource> = match (&args.group.family, &args.group.group_file) {
        (Some(f), _) => expand_range(f)?
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?,
        (None, Some(p)) => vec![GroupSource::File(p.clone())],
        (None, None) => {
            return Ok(default_corpus(args.seed)
                .into_iter()
                .map(|e| ScanItem {
                    group: GroupSource::Family(e.family),
                    set: SetSource::Explicit((&e.set).into()),
                    kind: e.kind,
                })
                .collect())
        }
    };
    let explicit = set_spec(&args.set)?;
    let requirements: Requirements = args.require.parse()?;
    let mut items = Vec::new();
    for (gi, group) in groups.iter().enumerate() {
        let sets: Vec<SetSource> = match &explicit {
            Some(s) => vec![SetSource::Explicit(s.clone())],
            None => (0..args.samples)
                .map(|i| {
                    SetSource::Sampled(GenRequest {
                        d_target: args.d,
                        requirements,
                        seed: args.seed.wrapping_add(((gi as u64) << 16) + i as u64),
                        attempts: args.attempts,
                    })
                })
                .collect(),
        };
        for set in sets {
            for kind in args.kind.kinds() {
                items.push(ScanItem {
                    group: group.clone(),
                    set: set.clone(),
                    kind,
                });
            }
        }
    }
    Ok(items)
}

fn run_scan(args: ScanArgs) -> Result<u8, ExperimentError> {
    let items = scan_items(&args)?;
    let rows = scan(&items, &args.numeric.options());
    let text = match args.format {
        Format::Csv => {
            let mut text = String::from(CSV_HEADER);
            text.push('\n');
            for row in &rows {
                text.push_str(&row.to_csv());
                text.push('\n');
            }
            text
        }
        Format::Json => serde_json::to_string_pretty(&rows).expect("rows serialize") + "\n",
    };
    emit(args.out.as_deref(), &text)?;
    Ok(u8::from(rows.iter().any(|r| r.failed)))
}

fn run_gen(args: GenArgs) -> Result<u8, ExperimentError> {
    let source = group_source(&args.group)?
        .ok_or_else(|| ExperimentError::Parse("one of --family or --group-file is required".into()))?;
    let (group, _) = source.load()?;
    let request = GenRequest {
        d_target: args.d,
        requirements: args.require.parse()?,
        seed: args.seed,
        attempts: args.attempts,
    };
    let set = gen(&group, &request)?;
    let members: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    emit(args.out.as_deref(), &format!("{}\n", members.join(",")))?;
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8, ExperimentError> {
    let text = read_text(&args.manifest)?;
    let manifest = parse_manifest(&text, args.manifest.parent())?;
    let summary = cayley_spectra::experiments::verify(&manifest, &args.numeric.options(), args.seed);
    emit(args.out.as_deref(), &summary.render())?;
    Ok(summary.exit_code() as u8)
}
