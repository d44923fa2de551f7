use std::fs;
use std::io::{self as stdio, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mdl_bmf::cli::{self, Algorithm, FactorizeOptions};
use mdl_bmf::fca::DEFAULT_CONCEPT_LIMIT;
use mdl_bmf::io::{self, Dataset, Format};
use mdl_bmf::metrics::FactorFilter;
use mdl_bmf::report;
use mdl_bmf::synth::{self, Noise, PlantedSpec};

#[derive(Parser)]
#[command(
    name = "bmf",
    version,
    about = "From-below Boolean matrix factorization"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dense,
    Fimi,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Dense => Format::Dense,
            FormatArg::Fimi => Format::Fimi,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    MdlGrecond,
    Grecond,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::MdlGrecond => Algorithm::MdlGreConD,
            AlgoArg::Grecond => Algorithm::GreConD,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Trivial,
    Nontrivial,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize a dataset and write a factor file and a JSON report.
    Factorize {
        dataset: PathBuf,
        #[arg(long, value_enum, default_value = "mdl-grecond")]
        algo: AlgoArg,
        /// Input format; guessed from the extension when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// GreConD: stop once at most this many ones are uncovered.
        #[arg(long, default_value_t = 0)]
        epsilon: usize,
        /// GreConD: maximum number of factors.
        #[arg(long)]
        max_factors: Option<usize>,
        /// Evaluate candidate attributes in parallel.
        #[arg(long)]
        parallel: bool,
        /// Factor file path [default: <dataset stem>.<algo>.factors]
        #[arg(long)]
        factors: Option<PathBuf>,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Recompute the metrics of an existing factor file.
    Evaluate {
        dataset: PathBuf,
        factors: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, value_enum, default_value = "all")]
        filter: FilterArg,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Enumerate the formal concepts of a dataset.
    Concepts {
        dataset: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Print only the number of concepts.
        #[arg(long)]
        count_only: bool,
    },
    /// Factorize every dataset listed in a TOML file.
    Batch {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, value_enum, default_value = "mdl-grecond")]
        algo: AlgoArg,
        #[arg(long, default_value_t = 0)]
        epsilon: usize,
        #[arg(long)]
        max_factors: Option<usize>,
    },
    /// Write a synthetic matrix with planted rectangles.
    Generate {
        #[arg(long, default_value_t = 200)]
        rows: usize,
        #[arg(long, default_value_t = 50)]
        cols: usize,
        #[arg(long, default_value_t = 3)]
        rectangles: usize,
        #[arg(long, default_value = "40-80")]
        extent_size: String,
        #[arg(long, default_value = "5-10")]
        intent_size: String,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        /// Flip cells instead of only adding ones.
        #[arg(long)]
        flip: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "dense")]
        format: FormatArg,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn load(path: &Path, format: Option<FormatArg>) -> Result<Dataset> {
    let format = format.map_or_else(|| Format::from_path(path), Format::from);
    io::load_matrix(path, format).with_context(|| format!("reading {}", path.display()))
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned())
}

fn write_report(path: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    let text = report::render(value);
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(stdio::stdout().write_all(text.as_bytes())?),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (lo, hi) = s.split_once('-').unwrap_or((s, s));
    let (lo, hi) = (lo.trim().parse()?, hi.trim().parse()?);
    if lo > hi {
        bail!("empty range {s:?}");
    }
    Ok((lo, hi))
}

fn concept_limit() -> Result<usize> {
    match std::env::var("BMF_CONCEPT_LIMIT") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("BMF_CONCEPT_LIMIT={v:?} is not a cell count")),
        Err(_) => Ok(DEFAULT_CONCEPT_LIMIT),
    }
}

fn run(args: Args) -> Result<()> {
    match args.command {
        Command::Factorize {
            dataset,
            algo,
            format,
            epsilon,
            max_factors,
            parallel,
            factors,
            report,
        } => {
            let data = load(&dataset, format)?;
            let algo = Algorithm::from(algo);
            let name = dataset_name(&dataset);
            let options = FactorizeOptions {
                epsilon,
                max_factors,
                parallel,
            };
            let out = cli::factorize(&data, &name, algo, &options)?;
            let factors =
                factors.unwrap_or_else(|| PathBuf::from(format!("{name}.{algo}.factors")));
            fs::write(&factors, &out.factor_file)
                .with_context(|| format!("writing {}", factors.display()))?;
            write_report(report.as_deref(), &out.report)
        }
        Command::Evaluate {
            dataset,
            factors,
            format,
            filter,
            report,
        } => {
            let data = load(&dataset, format)?;
            let text = fs::read_to_string(&factors)
                .with_context(|| format!("reading {}", factors.display()))?;
            let filter = match filter {
                FilterArg::All => FactorFilter::All,
                FilterArg::Trivial => FactorFilter::Trivial,
                FilterArg::Nontrivial => FactorFilter::Nontrivial,
            };
            let out = cli::evaluate(&data, &dataset_name(&dataset), &text, filter)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            write_report(report.as_deref(), &out.report)
        }
        Command::Concepts {
            dataset,
            format,
            count_only,
        } => {
            let data = load(&dataset, format)?;
            let stdout = stdio::stdout();
            let mut lock = stdio::BufWriter::new(stdout.lock());
            let mut failed = None;
            let count = cli::concepts(&data, concept_limit()?, count_only, |line| {
                if failed.is_none() {
                    failed = lock.write_all(line.as_bytes()).err();
                }
            })?;
            if let Some(e) = failed {
                return Err(e.into());
            }
            if count_only {
                writeln!(lock, "{count}")?;
            }
            Ok(lock.flush()?)
        }
        Command::Batch {
            config,
            out_dir,
            algo,
            epsilon,
            max_factors,
        } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let parsed = cli::BatchConfig::parse(&text)?;
            let base = config.parent().unwrap_or(Path::new("."));
            let options = FactorizeOptions {
                epsilon,
                max_factors,
                parallel: false,
            };
            for path in cli::batch(&parsed, base, &out_dir, algo.into(), &options)? {
                println!("{}", path.display());
            }
            Ok(())
        }
        Command::Generate {
            rows,
            cols,
            rectangles,
            extent_size,
            intent_size,
            noise,
            flip,
            seed,
            format,
            output,
        } => {
            let spec = PlantedSpec {
                rows,
                cols,
                rectangles,
                extent_size: parse_range(&extent_size)?,
                intent_size: parse_range(&intent_size)?,
                noise,
                noise_kind: if flip { Noise::Flip } else { Noise::Additive },
            };
            if spec.extent_size.1 > rows
                || spec.intent_size.1 > cols
                || !(0.0..=1.0).contains(&noise)
            {
                bail!("rectangle sizes must fit the matrix and noise must be in [0, 1]");
            }
            let planted = synth::planted(&spec, seed);
            let dataset = Dataset {
                labels: io::default_labels(cols),
                matrix: planted.matrix,
            };
            let text = match Format::from(format) {
                Format::Dense => io::write_dense(&dataset.matrix),
                Format::Fimi => io::write_fimi(&dataset.matrix),
                Format::Csv => io::write_csv(&dataset),
            };
            fs::write(&output, text).with_context(|| format!("writing {}", output.display()))
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
