use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qhk_ops::CoefficientId;
use qhk_verify::runner::{run_all, CheckKind, RunConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Lemma1,
    Lemma2,
    Lemma3,
    Corollary,
    Traces,
    Kernel,
    All,
}

impl From<CheckArg> for CheckKind {
    fn from(value: CheckArg) -> Self {
        match value {
            CheckArg::Lemma1 => CheckKind::Lemma1,
            CheckArg::Lemma2 => CheckKind::Lemma2,
            CheckArg::Lemma3 => CheckKind::Lemma3,
            CheckArg::Corollary => CheckKind::Corollary,
            CheckArg::Traces => CheckKind::Traces,
            CheckArg::Kernel => CheckKind::Kernel,
            CheckArg::All => CheckKind::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

// variant names mirror the operator's three coefficient slots
#[allow(clippy::enum_variant_names)]
#[derive(Debug, Clone, Copy, ValueEnum)]
enum PerturbArg {
    ValuePart,
    WedgePart,
    DualPart,
}

impl From<PerturbArg> for CoefficientId {
    fn from(value: PerturbArg) -> Self {
        match value {
            PerturbArg::ValuePart => CoefficientId::ValuePart,
            PerturbArg::WedgePart => CoefficientId::WedgePart,
            PerturbArg::DualPart => CoefficientId::DualPart,
        }
    }
}

fn parse_model_size(raw: &str) -> Result<u32, String> {
    let n: u32 = raw
        .trim()
        .parse()
        .map_err(|_| format!("invalid model size {raw:?}"))?;
    if n < 2 {
        return Err(format!("model size must be at least 2, got {n}"));
    }
    Ok(n)
}

/// Exact verification of the pointwise conformal-Killing computations.
#[derive(Debug, Parser)]
#[command(name = "qhk-verify", version)]
struct Cli {
    /// Comma-separated list of model sizes, each at least 2
    #[arg(long = "n", value_delimiter = ',', value_parser = parse_model_size, default_value = "2")]
    ns: Vec<u32>,

    /// Which check to run
    #[arg(long, value_enum, default_value = "all")]
    check: CheckArg,

    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,

    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed for the deterministic sampling of random domain elements
    #[arg(long, default_value_t = 12345)]
    seed: u64,

    /// Number of random domain elements for the trace checks at n >= 3
    #[arg(long, default_value_t = 50)]
    samples: usize,

    /// Allow the kernel computation beyond its size guard
    #[arg(long, default_value_t = false)]
    force_large_n: bool,

    /// Mutation knob: flip the sign convention of the H-side symplectic form
    #[arg(long, default_value_t = false)]
    flip_omega_h: bool,

    /// Mutation knob: replace one operator coefficient by a perturbed value
    #[arg(long, value_enum)]
    perturb_coeff: Option<PerturbArg>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        ns: cli.ns.clone(),
        check: cli.check.into(),
        seed: cli.seed,
        samples: cli.samples,
        flip_omega_h: cli.flip_omega_h,
        perturb: cli.perturb_coeff.map(Into::into),
        force_large_n: cli.force_large_n,
    };
    let output = match run_all(&config) {
        Ok(output) => output,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        FormatArg::Json => output.to_json(),
        FormatArg::Text => output.to_text(),
    };
    match &cli.out {
        None => print!("{rendered}"),
        Some(path) => {
            if let Err(err) = fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {err}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    if output.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
