//! Command-line interface. Exit status is 0 on success, 1 on a runtime
//! failure and 2 on a usage or configuration error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;
use crate::corpus::{generate_synthetic_with, load_dataset, write_celebrities, write_users, Dataset};
use crate::error::Error;
use crate::eval::cross_validate;
use crate::features::{CtDenominator, FamilyToggles};
use crate::model::{LinearModel, ModelFile};
use crate::normalizer::NormalizeStats;
use crate::pipeline::{extract_dataset, extract_labeled};
use crate::resources::Resources;

#[derive(Debug, Parser)]
#[command(name = "twgender", version, about = "Gender inference for Twitter users")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalize tweets, one per line.
    Normalize {
        /// Input text file, one tweet per line.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        resources: ResourceArgs,
    },
    /// Write the feature matrix as CSV.
    Features {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        resources: ResourceArgs,
        #[command(flatten)]
        features: FeatureArgs,
    },
    /// Train on every labeled user and save the model as JSON.
    Train {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        resources: ResourceArgs,
        #[command(flatten)]
        features: FeatureArgs,
        #[command(flatten)]
        train: TrainArgs,
    },
    /// Stratified k-fold cross-validation.
    Evaluate {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        resources: ResourceArgs,
        #[command(flatten)]
        features: FeatureArgs,
        #[command(flatten)]
        train: TrainArgs,
        /// Number of folds.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Predict labels with a saved model.
    Predict {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        resources: ResourceArgs,
        #[command(flatten)]
        features: FeatureArgs,
    },
    /// Generate a synthetic corpus (users.jsonl and celebrities.tsv).
    Synth {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        users_per_class: Option<usize>,
        /// Set every planted effect size at once.
        #[arg(long)]
        effect: Option<f64>,
        #[arg(long)]
        reference_date: Option<NaiveDate>,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file or directory; `-` or absent means stdout where allowed.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DataArgs {
    #[arg(long)]
    users: Option<PathBuf>,
    #[arg(long)]
    celebrities: Option<PathBuf>,
    #[arg(long)]
    reference_date: Option<NaiveDate>,
}

#[derive(Debug, Args)]
struct ResourceArgs {
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long)]
    words: Option<PathBuf>,
    #[arg(long)]
    shorthand: Option<PathBuf>,
    #[arg(long)]
    emoticons: Option<PathBuf>,
    #[arg(long)]
    famous_for: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FeatureArgs {
    /// Comma list of behavior, linguistic, neighborhood, age, gender, famous, all.
    #[arg(long)]
    families: Option<String>,
    #[arg(long)]
    cap_n: Option<usize>,
    #[arg(long, value_enum)]
    ct_denominator: Option<CtArg>,
}

impl FeatureArgs {
    fn any(&self) -> bool {
        self.families.is_some() || self.cap_n.is_some() || self.ct_denominator.is_some()
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CtArg {
    TotalFollowed,
    DaySpan,
}

#[derive(Debug, Args)]
struct TrainArgs {
    /// Soft-margin penalty.
    #[arg(long = "c")]
    c: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

type CliResult<T = ()> = std::result::Result<T, CliError>;

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn base_config(common: &CommonArgs) -> CliResult<RunConfig> {
    let mut cfg = match &common.config {
        Some(p) => RunConfig::load(p).map_err(usage)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &common.out {
        cfg.out_dir = Some(out.clone());
    }
    Ok(cfg)
}

fn apply_data(cfg: &mut RunConfig, a: &DataArgs) {
    if let Some(p) = &a.users {
        cfg.data.users = Some(p.clone());
    }
    if let Some(p) = &a.celebrities {
        cfg.data.celebrities = Some(p.clone());
    }
    if let Some(d) = a.reference_date {
        cfg.data.reference_date = Some(d);
    }
}

fn apply_resources(cfg: &mut RunConfig, a: &ResourceArgs) {
    let r = &mut cfg.resources;
    for (slot, flag) in [
        (&mut r.lexicon, &a.lexicon),
        (&mut r.words, &a.words),
        (&mut r.shorthand, &a.shorthand),
        (&mut r.emoticons, &a.emoticons),
        (&mut r.famous_for, &a.famous_for),
    ] {
        if let Some(p) = flag {
            *slot = Some(p.clone());
        }
    }
}

fn apply_features(cfg: &mut RunConfig, a: &FeatureArgs) -> CliResult {
    if let Some(list) = &a.families {
        cfg.features.families = FamilyToggles::from_list(list).map_err(usage)?;
    }
    if let Some(n) = a.cap_n {
        cfg.features.cap_n = n;
    }
    if let Some(ct) = a.ct_denominator {
        cfg.features.ct_denominator = match ct {
            CtArg::TotalFollowed => CtDenominator::TotalFollowed,
            CtArg::DaySpan => CtDenominator::DaySpan,
        };
    }
    Ok(())
}

fn apply_train(cfg: &mut RunConfig, a: &TrainArgs) {
    if let Some(c) = a.c {
        cfg.train.c = c;
    }
    if let Some(t) = a.tol {
        cfg.train.tol = t;
    }
    if let Some(m) = a.max_iter {
        cfg.train.max_iter = m;
    }
}

fn load_resources(cfg: &RunConfig) -> CliResult<Resources> {
    Resources::load(&cfg.resources).map_err(usage)
}

fn load_data(cfg: &RunConfig) -> CliResult<Dataset> {
    let users = cfg.data.users.as_deref().ok_or_else(|| usage("--users is required"))?;
    let celebs = cfg
        .data
        .celebrities
        .as_deref()
        .ok_or_else(|| usage("--celebrities is required"))?;
    let date = cfg
        .data
        .reference_date
        .ok_or_else(|| usage("--reference-date is required"))?;
    Ok(load_dataset(users, celebs, date)?)
}

fn open_out(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) if p == Path::new("-") => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let f = File::create(p).map_err(|e| Error::io(p, e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn flush(mut w: Box<dyn Write>) -> CliResult {
    w.flush().map_err(|e| Error::io("<output>", e))?;
    Ok(())
}

fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn create_dir(path: &Path) -> CliResult {
    std::fs::create_dir_all(path).map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn dispatch(cmd: Command) -> CliResult {
    match cmd {
        Command::Normalize {
            input,
            common,
            resources,
        } => {
            let mut cfg = base_config(&common)?;
            apply_resources(&mut cfg, &resources);
            cmd_normalize(&input, &cfg, common.out.as_deref())
        }
        Command::Features {
            common,
            data,
            resources,
            features,
        } => {
            let mut cfg = base_config(&common)?;
            apply_data(&mut cfg, &data);
            apply_resources(&mut cfg, &resources);
            apply_features(&mut cfg, &features)?;
            cfg.validate().map_err(usage)?;
            let res = load_resources(&cfg)?;
            let ds = load_data(&cfg)?;
            let m = extract_dataset(&ds, &res, &cfg.features)?;
            let mut out = open_out(common.out.as_deref())?;
            m.write_csv(&mut out)?;
            flush(out)
        }
        Command::Train {
            common,
            data,
            resources,
            features,
            train,
        } => {
            let mut cfg = base_config(&common)?;
            apply_data(&mut cfg, &data);
            apply_resources(&mut cfg, &resources);
            apply_features(&mut cfg, &features)?;
            apply_train(&mut cfg, &train);
            cfg.validate().map_err(usage)?;
            let out = common
                .out
                .clone()
                .or_else(|| cfg.out_dir.as_ref().map(|d| d.join("model.json")))
                .ok_or_else(|| usage("--out is required"))?;
            let res = load_resources(&cfg)?;
            let ds = load_data(&cfg)?;
            let (schema, rows, labels) = extract_labeled(&ds, &res, &cfg.features)?;
            let params = cfg.train_params();
            let model = LinearModel::fit(&rows, &labels, &params)?;
            eprintln!(
                "trained on {} users, {} features, {} epochs",
                rows.len(),
                schema.len(),
                model.training_meta.iterations
            );
            ModelFile::new(&schema, cfg.features, params, model).save(&out)?;
            Ok(())
        }
        Command::Evaluate {
            common,
            data,
            resources,
            features,
            train,
            k,
        } => {
            let mut cfg = base_config(&common)?;
            apply_data(&mut cfg, &data);
            apply_resources(&mut cfg, &resources);
            apply_features(&mut cfg, &features)?;
            apply_train(&mut cfg, &train);
            if let Some(k) = k {
                cfg.k = k;
            }
            cfg.validate().map_err(usage)?;
            cmd_evaluate(&cfg)
        }
        Command::Predict {
            model,
            common,
            data,
            resources,
            features,
        } => {
            let mut cfg = base_config(&common)?;
            apply_data(&mut cfg, &data);
            apply_resources(&mut cfg, &resources);
            let file = ModelFile::load(&model)?;
            if features.any() {
                cfg.features = file.features;
                apply_features(&mut cfg, &features)?;
            } else {
                cfg.features = file.features;
            }
            cfg.features.validate().map_err(usage)?;
            cmd_predict(&file, &cfg, common.out.as_deref())
        }
        Command::Synth {
            common,
            users_per_class,
            effect,
            reference_date,
        } => {
            let mut cfg = base_config(&common)?;
            if let Some(n) = users_per_class {
                cfg.synth.users_per_class = n;
            }
            if let Some(e) = effect {
                cfg.synth = cfg.synth.with_effects(e);
            }
            if let Some(d) = reference_date {
                cfg.synth.reference_date = d;
            }
            cfg.synth.validate().map_err(usage)?;
            let dir = cfg.out_dir.clone().ok_or_else(|| usage("--out directory is required"))?;
            let res = load_resources(&cfg)?;
            let ds = generate_synthetic_with(&cfg.synth, cfg.seed, &res.lexicon, &res.famous_for)?;
            create_dir(&dir)?;
            let users = dir.join("users.jsonl");
            let mut w = open_out(Some(&users))?;
            write_users(&mut w, &ds.users)?;
            flush(w)?;
            let mut w = open_out(Some(&dir.join("celebrities.tsv")))?;
            write_celebrities(&mut w, ds.celebrities.values())?;
            flush(w)?;
            eprintln!(
                "wrote {} users and {} celebrities to {} (reference date {})",
                ds.users.len(),
                ds.celebrities.len(),
                dir.display(),
                ds.reference_date
            );
            Ok(())
        }
    }
}

fn cmd_normalize(input: &Path, cfg: &RunConfig, out: Option<&Path>) -> CliResult {
    let res = load_resources(cfg)?;
    let text = std::fs::read_to_string(input).map_err(|e| Error::io(input, e))?;
    let mut w = open_out(out)?;
    let mut total = NormalizeStats::default();
    for line in text.lines() {
        let (clean, stats) = res.normalizer.normalize_with_stats(line);
        total += stats;
        writeln!(w, "{clean}").map_err(|e| Error::io("<output>", e))?;
    }
    flush(w)?;
    eprintln!(
        "corrected {} words, expanded {} shorthands, split {} hashtags",
        total.corrected, total.expanded, total.split_hashtags
    );
    Ok(())
}

fn cmd_evaluate(cfg: &RunConfig) -> CliResult {
    let res = load_resources(cfg)?;
    let ds = load_data(cfg)?;
    let (schema, rows, labels) = extract_labeled(&ds, &res, &cfg.features)?;
    let mut report = cross_validate(&rows, &labels, &cfg.cv_config())?;
    report.families = cfg.features.families.label();
    report.schema_fingerprint = schema.fingerprint();
    let table = report.to_table();
    if let Some(dir) = &cfg.out_dir {
        create_dir(dir)?;
        write_file(&dir.join("report.json"), &report.to_json()?)?;
        write_file(&dir.join("report.txt"), &table)?;
    }
    print!("{table}");
    Ok(())
}

fn cmd_predict(file: &ModelFile, cfg: &RunConfig, out: Option<&Path>) -> CliResult {
    let res = load_resources(cfg)?;
    let ds = load_data(cfg)?;
    let m = extract_dataset(&ds, &res, &cfg.features)?;
    file.check_schema(&m.schema)?;
    let mut w = csv::Writer::from_writer(open_out(out)?);
    let err = |e: csv::Error| Error::Invalid(format!("writing predictions: {e}"));
    w.write_record(["id", "predicted", "decision_value"]).map_err(err)?;
    for (id, row) in m.user_ids.iter().zip(&m.rows) {
        let d = file.model.decision_value(row)?;
        let label = crate::corpus::Label::from_sign(d);
        w.write_record([id.as_str(), label.as_str(), &d.to_string()]).map_err(err)?;
    }
    let inner = w.into_inner().map_err(|e| Error::Invalid(format!("writing predictions: {e}")))?;
    flush(inner)
}
