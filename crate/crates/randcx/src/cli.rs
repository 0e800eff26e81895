//! The `randcx` command-line tool.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use randcx_core::density::{
    balance, density_profile, induced_density_domain, polygon_2d, reduced_density_domain, Balance, DensityDomain,
    DensityProfile, DEFAULT_VERTEX_CAP,
};
use randcx_core::measure::{log_probability, probability, ProbVector};
use randcx_core::prediction::{
    containment_verdict, dimension_regions_2d, predict_dimension, BoundingBox, DimensionVerdict, ExponentVector,
};
use randcx_core::rational::{parse_rational, parse_rational_list, to_f64};
use randcx_core::sampler::{preset, sample_trial, SamplerConfig};
use randcx_core::{AmbientContext, Rational, Vertex};

use crate::corpus;
use crate::error::{exit, Error, Result};
use crate::experiment::{
    monotone_trend_violations, prediction_agreement, run_spec, write_jsonl, CsvSink, ExperimentRecord,
    ExperimentSpec, Kind,
};
use crate::format::{complex_to_json, domain_json, points_json, rational_string, read_complex, write_facet_text, LoadedComplex};
use crate::DEFAULT_SEED;

#[derive(Debug, Parser)]
#[command(name = "randcx", version, about = "Multi-parameter random simplicial complexes")]
pub struct Cli {
    /// Worker threads for Monte Carlo trials (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Vertex limit for the 2^|V| subset enumerations.
    #[arg(long, global = true, env = "RANDCX_MAX_VERTICES", default_value_t = DEFAULT_VERTEX_CAP)]
    pub max_vertices: usize,

    /// Write machine output to this file instead of standard output.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw one sample of Y_r(n, p).
    Sample(SampleArgs),
    /// Exact probability of a complex.
    Prob(ProbArgs),
    /// Density invariants, reduced density domain and balancedness.
    Density(DensityArgs),
    /// Balancedness with a witness vertex set.
    Balance(BalanceArgs),
    /// Containment verdict for an exponent vector.
    Predict(PredictArgs),
    /// Predicted dimension for an exponent vector.
    Dim(DimArgs),
    /// Run an experiment file and emit one record per grid cell.
    Experiment(ExperimentArgs),
    /// List the bundled complexes or print one of them.
    Corpus { name: Option<String> },
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Number of potential vertices, labelled 1..=n.
    #[arg(long)]
    pub n: u32,
    /// Dimension cap; inferred from the parameter vector when omitted.
    #[arg(long)]
    pub r: Option<usize>,
    /// Probabilities p_0,...,p_r, or the single parameter of --preset.
    #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
    pub p: Option<String>,
    /// Exponents alpha_0,...,alpha_r with p_i = n^(-alpha_i).
    #[arg(long)]
    pub alpha: Option<String>,
    /// erdos-renyi, linial-meshulam, meshulam-wallach or clique.
    #[arg(long, requires = "p")]
    pub preset: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Stream index; trial t of seed s is the t-th sample of an experiment run with seed s.
    #[arg(long, default_value_t = 0)]
    pub trial: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    /// Complex file, `-` for standard input, or `corpus:<name>`.
    pub complex: String,
    #[arg(long)]
    pub n: u32,
    /// Exact probabilities p_0,...,p_r (fractions or decimals).
    #[arg(long)]
    pub p: String,
    /// Also print the natural logarithm.
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    pub complex: String,
    /// Number of density invariants; defaults to the recorded r or the dimension.
    #[arg(long)]
    pub r: Option<usize>,
    /// Keep one constraint per vertex subset instead of pruning.
    #[arg(long)]
    pub unreduced: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BalanceArgs {
    pub complex: String,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    pub complex: String,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DimArgs {
    #[arg(long)]
    pub alpha: String,
    /// Pad alpha with zeros up to this r.
    #[arg(long)]
    pub r: Option<usize>,
    /// Also emit the dimension regions of the (alpha_1, alpha_2) plane.
    #[arg(long)]
    pub regions: bool,
    /// Clipping box `a1,a2` for the regions.
    #[arg(long, default_value = "3,4")]
    pub bbox: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Experiment file (TOML).
    pub spec: PathBuf,
    /// Override the seed of the file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the embedding search budget per trial.
    #[arg(long, env = "RANDCX_NODE_BUDGET")]
    pub node_budget: Option<u64>,
    /// Print prediction agreement and trend checks to standard error.
    #[arg(long)]
    pub summary: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Parses `args` (program name first) and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut out: Box<dyn Write + '_> = match &cli.output {
        Some(path) => Box::new(fs::File::create(path).map_err(|e| Error::io(path, e))?),
        None => Box::new(stdout),
    };
    dispatch(cli, &mut out, stderr)?;
    out.flush()?;
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Sample(a) => cmd_sample(a, out),
        Command::Prob(a) => cmd_prob(a, out),
        Command::Density(a) => cmd_density(a, cli.max_vertices, out),
        Command::Balance(a) => cmd_balance(a, cli.max_vertices, out),
        Command::Predict(a) => cmd_predict(a, cli.max_vertices, out),
        Command::Dim(a) => cmd_dim(a, out),
        Command::Experiment(a) => cmd_experiment(a, cli.threads, out, stderr),
        Command::Corpus { name } => cmd_corpus(name.as_deref(), out),
    }
}

fn allow(format: Format, allowed: &[Format]) -> Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::Usage(format!("format {format:?} is not available for this command").to_lowercase()))
    }
}

/// Reads `corpus:<name>`, `-` (standard input) or a file path, relative paths against `base`.
pub fn load_complex(arg: &str, base: Option<&Path>) -> Result<LoadedComplex> {
    if let Some(name) = arg.strip_prefix(corpus::PREFIX) {
        let text = corpus::text(name).ok_or_else(|| {
            Error::Input(format!("no bundled complex `{name}` (available: {})", corpus::names().collect::<Vec<_>>().join(", ")))
        })?;
        return read_complex(text);
    }
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        let path = match base {
            Some(dir) if Path::new(arg).is_relative() => dir.join(arg),
            _ => PathBuf::from(arg),
        };
        fs::read_to_string(&path).map_err(|e| Error::io(path, e))?
    };
    read_complex(&text)
}

fn vertex_set(w: &[Vertex]) -> String {
    let labels: Vec<String> = w.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", labels.join(","))
}

fn rationals_text(values: &[Rational]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn mu_strings(profile: &DensityProfile, plain: bool) -> Vec<String> {
    profile
        .mu_vector()
        .iter()
        .map(|m| match m {
            Some(v) if plain => v.to_string(),
            Some(v) => rational_string(v),
            None => "inf".into(),
        })
        .collect()
}

fn cmd_sample(a: &SampleArgs, out: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Text, Format::Json])?;
    let p = match (&a.preset, &a.p, &a.alpha) {
        (Some(name), Some(p), _) => preset(name, to_f64(&parse_rational(p)?), a.r)?,
        (None, Some(p), _) => ProbVector::new(parse_rational_list(p)?.iter().map(to_f64).collect())?,
        (None, None, Some(alpha)) => ExponentVector::parse(alpha)?.probabilities(a.n)?,
        _ => return Err(Error::Usage("give --p or --alpha".into())),
    };
    if let Some(r) = a.r.filter(|&r| r != p.r()) {
        return Err(Error::Usage(format!("--r {r} does not match {} parameters", p.r() + 1)));
    }
    let cfg = SamplerConfig::new(AmbientContext::new(a.n, p.r())?, p, a.seed)?;
    let y = sample_trial(&cfg, a.trial);
    let text = match a.format {
        Format::Json => complex_to_json(&y, Some(a.n), Some(cfg.ctx.r), Some(a.seed)),
        _ => {
            let header = [format!("n = {}, r = {}, seed = {}, trial = {}", a.n, cfg.ctx.r, a.seed, a.trial)];
            write_facet_text(&y, &header)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_prob(a: &ProbArgs, out: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Text, Format::Json])?;
    let loaded = load_complex(&a.complex, None)?;
    let exact = ProbVector::new(parse_rational_list(&a.p)?)?;
    let ctx = AmbientContext::new(a.n, exact.r())?;
    let value = probability(&loaded.complex, &ctx, &exact)?;
    let log = a
        .log
        .then(|| {
            let floats = ProbVector::new(exact.as_slice().iter().map(to_f64).collect())?;
            log_probability(&loaded.complex, &ctx, &floats)
        })
        .transpose()?;
    match a.format {
        Format::Json => {
            let mut v = json!({ "probability": rational_string(&value), "n": a.n, "r": ctx.r });
            if let Some(l) = log {
                v["log_probability"] = json!(l);
            }
            writeln!(out, "{v}")?;
        }
        _ => {
            writeln!(out, "{value}")?;
            if let Some(l) = log {
                writeln!(out, "log = {l}")?;
            }
        }
    }
    Ok(())
}

fn default_r(loaded: &LoadedComplex, r: Option<usize>) -> usize {
    r.or(loaded.r).unwrap_or(loaded.complex.dim().max(0) as usize)
}

fn balance_json(b: &Balance) -> Value {
    let status = match b {
        Balance::StrictlyBalanced => "strictly_balanced",
        Balance::Balanced { .. } => "balanced",
        Balance::Unbalanced { .. } => "unbalanced",
    };
    json!({
        "status": status,
        "balanced": b.is_balanced(),
        "strictly_balanced": b.is_strictly_balanced(),
        "witness": b.witness(),
    })
}

fn cmd_density(a: &DensityArgs, cap: usize, out: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Text, Format::Json])?;
    let loaded = load_complex(&a.complex, None)?;
    let s = &loaded.complex;
    let r = default_r(&loaded, a.r);
    let profile = density_profile(s, r)?;
    let domain: DensityDomain =
        if a.unreduced { induced_density_domain(s, r, cap)? } else { reduced_density_domain(s, r, cap)? };
    let polygon = if r == 2 { Some(polygon_2d(&domain)?) } else { None };
    let b = balance(s, r, cap)?;
    let f = s.f_vector(r)?;

    match a.format {
        Format::Json => {
            let v = json!({
                "r": r,
                "f_vector": f.counts(),
                "mu": mu_strings(&profile, false),
                "nu": profile.nu().iter().map(rational_string).collect::<Vec<_>>(),
                "balance": balance_json(&b),
                "domain": domain_json(&domain, polygon.as_ref()),
            });
            writeln!(out, "{v}")?;
        }
        _ => {
            let mut text = String::new();
            let counts: Vec<String> = f.counts().iter().map(|c| c.to_string()).collect();
            writeln!(text, "f = ({})", counts.join(", ")).unwrap();
            writeln!(text, "mu = [{}]", mu_strings(&profile, true).join(", ")).unwrap();
            writeln!(text, "balanced = {}", b.is_balanced()).unwrap();
            writeln!(text, "strictly_balanced = {}", b.is_strictly_balanced()).unwrap();
            if let Some(w) = b.witness() {
                writeln!(text, "witness = {}", vertex_set(w)).unwrap();
            }
            let kind = if domain.reduced { "reduced" } else { "unreduced" };
            writeln!(text, "{kind} domain: {} constraint(s) sum_i nu_i alpha_i < 1", domain.constraints.len()).unwrap();
            for c in &domain.constraints {
                writeln!(text, "  W = {}  nu = ({})", vertex_set(&c.label), rationals_text(&c.nu)).unwrap();
            }
            if let Some(poly) = &polygon {
                let corners: Vec<String> = poly.vertices.iter().map(|p| format!("({}, {})", p[0], p[1])).collect();
                writeln!(text, "polygon = {}", corners.join(" ")).unwrap();
                for ray in &poly.rays {
                    writeln!(text, "ray = ({}, {})", ray[0], ray[1]).unwrap();
                }
            }
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_balance(a: &BalanceArgs, cap: usize, out: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Text, Format::Json])?;
    let loaded = load_complex(&a.complex, None)?;
    let r = default_r(&loaded, a.r);
    let b = balance(&loaded.complex, r, cap)?;
    match a.format {
        Format::Json => writeln!(out, "{}", balance_json(&b))?,
        _ => match &b {
            Balance::StrictlyBalanced => writeln!(out, "strictly balanced")?,
            Balance::Balanced { witness } => {
                writeln!(out, "balanced, not strictly: W = {} has the same densities", vertex_set(witness))?
            }
            Balance::Unbalanced { witness } => {
                writeln!(out, "unbalanced: W = {} induces a denser subcomplex", vertex_set(witness))?
            }
        },
    }
    Ok(())
}

fn cmd_predict(a: &PredictArgs, cap: usize, out: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Text, Format::Json])?;
    let loaded = load_complex(&a.complex, None)?;
    let alpha = ExponentVector::parse(&a.alpha)?;
    let v = containment_verdict(&loaded.complex, &alpha, cap)?;
    match a.format {
        Format::Json => {
            let value = json!({
                "verdict": v.value.as_str(),
                "exponent": v.exponent,
                "exponent_exact": rational_string(&v.exponent_exact),
                "binding": v.binding,
                "binding_value": rational_string(&v.binding_value),
            });
            writeln!(out, "{value}")?;
        }
        _ => {
            writeln!(out, "{}", v.value)?;
            writeln!(out, "expected copies ~ n^({}) ≈ n^{:.4}", v.exponent_exact, v.exponent)?;
            writeln!(out, "binding W = {} with value {}", vertex_set(&v.binding), v.binding_value)?;
        }
    }
    Ok(())
}

fn parse_bbox(text: &str) -> Result<BoundingBox> {
    let values = parse_rational_list(text)?;
    match <[Rational; 2]>::try_from(values) {
        Ok([max_a1, max_a2]) if max_a1 > Rational::from_integer(0.into()) && max_a2 > Rational::from_integer(0.into()) => {
            Ok(BoundingBox { max_a1, max_a2 })
        }
        _ => Err(Error::Usage(format!("--bbox needs two positive numbers, got `{text}`"))),
    }
}

fn cmd_dim(a: &DimArgs, out: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Text, Format::Json])?;
    let mut values = parse_rational_list(&a.alpha)?;
    if let Some(r) = a.r {
        if values.len() > r + 1 {
            return Err(Error::Usage(format!("--alpha has {} entries but r = {r}", values.len())));
        }
        values.resize(r + 1, Rational::from_integer(0.into()));
    }
    let alpha = ExponentVector::new(values)?;
    let prediction = predict_dimension(&alpha);
    let regions = if a.regions { Some(dimension_regions_2d(alpha.r(), &parse_bbox(&a.bbox)?)) } else { None };
    let verdict_name = |v: &DimensionVerdict| match v {
        DimensionVerdict::AtLeast => "at_least",
        DimensionVerdict::Below => "below",
        DimensionVerdict::Indeterminate => "indeterminate",
    };
    match a.format {
        Format::Json => {
            let mut v = json!({
                "prediction": prediction.to_string(),
                "degenerate": prediction.degenerate,
                "lower": prediction.lower,
                "exact": prediction.exact,
                "functionals": prediction.functionals.iter().map(rational_string).collect::<Vec<_>>(),
                "per_s": prediction.per_s.iter().map(verdict_name).collect::<Vec<_>>(),
            });
            if let Some(regions) = &regions {
                v["regions"] = regions.iter().map(|reg| json!({ "s": reg.s, "vertices": points_json(&reg.vertices) })).collect();
            }
            writeln!(out, "{v}")?;
        }
        _ => {
            writeln!(out, "{prediction}")?;
            for (s, d) in prediction.functionals.iter().enumerate() {
                writeln!(out, "D_{s} = {d}")?;
            }
            for reg in regions.iter().flatten() {
                let corners: Vec<String> = reg.vertices.iter().map(|p| format!("({}, {})", p[0], p[1])).collect();
                writeln!(out, "region {}: {}", reg.label, corners.join(" "))?;
            }
        }
    }
    Ok(())
}

fn cmd_experiment(a: &ExperimentArgs, threads: Option<usize>, out: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    allow(a.format, &[Format::Csv, Format::Jsonl])?;
    let text = fs::read_to_string(&a.spec).map_err(|e| Error::io(&a.spec, e))?;
    let mut spec = ExperimentSpec::parse(&text)?;
    if let Some(seed) = a.seed {
        spec.seed = seed;
    }
    if let Some(budget) = a.node_budget {
        spec.node_budget = budget;
    }
    let complex = match (&spec.kind, &spec.complex) {
        (Kind::Containment, Some(arg)) => Some(load_complex(arg, a.spec.parent())?.complex),
        _ => None,
    };
    let r = spec.grid()?.first().map_or(0, ExponentVector::r);
    let pool = threads
        .map(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build())
        .transpose()
        .map_err(|e| Error::Usage(format!("cannot start the thread pool: {e}")))?;

    // The sweep runs on a worker thread inside the pool; records come back in order and are
    // written here as they arrive.
    let (tx, rx) = mpsc::channel::<ExperimentRecord>();
    let mut records: Vec<ExperimentRecord> = Vec::new();
    let mut writer = match a.format {
        Format::Csv => RecordWriter::Csv(Box::new(CsvSink::new(out, r)?)),
        _ => RecordWriter::Jsonl(out),
    };
    let (written, finished) = thread::scope(|scope| {
        let (spec, complex, pool) = (&spec, complex.as_ref(), pool.as_ref());
        let worker = scope.spawn(move || {
            let job = move || {
                run_spec(spec, complex, |rec| tx.send(rec).map_err(|_| Error::Input("output closed".into())))
            };
            match pool {
                Some(p) => p.install(job),
                None => job(),
            }
        });
        let mut written: Result<()> = Ok(());
        for rec in rx {
            written = writer.write(&rec);
            if written.is_err() {
                break;
            }
            records.push(rec);
        }
        (written, worker.join().expect("experiment worker panicked"))
    });
    written?;
    finished?;
    writer.finish()?;

    if a.summary {
        if let Some(s) = &complex {
            let agreement = prediction_agreement(s, &records, &spec.tolerances)?;
            writeln!(
                stderr,
                "prediction agreement: {}/{} strong cells (n >= {}), {}",
                agreement.agreeing,
                agreement.cells,
                spec.tolerances.min_n,
                if agreement.passes { "ok" } else { "below the required rate" }
            )?;
            for v in monotone_trend_violations(&records, &spec.tolerances) {
                writeln!(
                    stderr,
                    "trend violation at alpha = {}: n = {} to n = {} (p = {:.3e})",
                    v.alpha, v.n_small, v.n_large, v.p_value
                )?;
            }
        }
        let failed = records.iter().filter(|r| r.error.is_some()).count();
        let inconclusive: u64 = records.iter().map(|r| r.inconclusive).sum();
        writeln!(stderr, "{} cell(s), {failed} failed, {inconclusive} inconclusive trial(s)", records.len())?;
    }
    Ok(())
}

enum RecordWriter<'a> {
    Csv(Box<CsvSink<&'a mut dyn Write>>),
    Jsonl(&'a mut dyn Write),
}

impl RecordWriter<'_> {
    fn write(&mut self, record: &ExperimentRecord) -> Result<()> {
        match self {
            RecordWriter::Csv(sink) => sink.write(record),
            RecordWriter::Jsonl(out) => {
                write_jsonl(*out, record)?;
                out.flush()?;
                Ok(())
            }
        }
    }

    fn finish(self) -> Result<()> {
        match self {
            RecordWriter::Csv(sink) => sink.finish().map(drop),
            RecordWriter::Jsonl(_) => Ok(()),
        }
    }
}

fn cmd_corpus(name: Option<&str>, out: &mut dyn Write) -> Result<()> {
    match name {
        None => {
            for n in corpus::names() {
                writeln!(out, "{n}")?;
            }
        }
        Some(n) => {
            let text = corpus::text(n).ok_or_else(|| Error::Input(format!("no bundled complex `{n}`")))?;
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
