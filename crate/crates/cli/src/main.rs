mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Ctx;
use input::{Stop, Usage};
use report::{Check, Report};

/// Finite categories, profunctors and multicategories: constructions and law checks.
#[derive(Parser)]
#[command(name = "mt", version)]
struct Cli {
    /// word-length budget for saturating presentations (overrides the files)
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// print the report as JSON
    #[arg(long, global = true)]
    json: bool,
    /// seed for sampled checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// cap on candidates visited by exhaustive enumerations
    #[arg(long, global = true, default_value_t = mt_core::finkit::DEFAULT_CAP)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tensor of two categories, commuting (default) or funny
    Tensor {
        #[arg(long, conflicts_with = "funny")]
        commuting: bool,
        #[arg(long)]
        funny: bool,
        files: Vec<String>,
    },
    /// Funny tensor of two categories
    FunnyTensor { files: Vec<String> },
    /// Composite of the profunctors (or multiprofunctors) p and q in a file
    Compose { files: Vec<String> },
    /// Funny and commuting functor categories [B, C]; with A B C also the adjunction counts
    Hom { files: Vec<String> },
    /// Functors out of A (x) B against commuting sesquifunctors A, B -> C
    Classify { files: Vec<String> },
    /// Hexagon test on every sesquifunctor A, B -> C
    Hexagon { files: Vec<String> },
    /// Interchange map for q1, p1, q2, p2 (or id, p, q, id) in a file
    Interchange { files: Vec<String> },
    /// Boardman-Vogt tensor of two presented multicategories in a file
    BvTensor { files: Vec<String> },
    /// Interchange on the operadic corpus and the profunctor control
    ProbeNormality { files: Vec<String> },
    /// Axiom and unit-law checks on the given files, or the whole corpus
    Laws { files: Vec<String> },
}

fn run(cli: &Cli) -> Result<Report, Stop> {
    let ctx = Ctx { budget: cli.budget, cap: cli.cap, seed: cli.seed };
    let name = match &cli.command {
        Command::Tensor { funny: true, .. } | Command::FunnyTensor { .. } => "funny-tensor",
        Command::Tensor { .. } => "tensor",
        Command::Compose { .. } => "compose",
        Command::Hom { .. } => "hom",
        Command::Classify { .. } => "classify",
        Command::Hexagon { .. } => "hexagon",
        Command::Interchange { .. } => "interchange",
        Command::BvTensor { .. } => "bv-tensor",
        Command::ProbeNormality { .. } => "probe-normality",
        Command::Laws { .. } => "laws",
    };
    let mut report = Report { command: name.into(), budget: cli.budget, cap: cli.cap, seed: cli.seed, checks: Vec::new(), result: None };
    match &cli.command {
        Command::Tensor { funny, files, .. } => commands::tensor(files, *funny, &ctx, &mut report)?,
        Command::FunnyTensor { files } => commands::tensor(files, true, &ctx, &mut report)?,
        Command::Compose { files } => commands::compose(files, &ctx, &mut report)?,
        Command::Hom { files } => commands::hom(files, &ctx, &mut report)?,
        Command::Classify { files } => commands::classify_cmd(files, &ctx, &mut report)?,
        Command::Hexagon { files } => commands::hexagon(files, &ctx, &mut report)?,
        Command::Interchange { files } => commands::interchange_cmd(files, &ctx, &mut report)?,
        Command::BvTensor { files } => commands::bv(files, &ctx, &mut report)?,
        Command::ProbeNormality { files } => commands::probe(files, &ctx, &mut report)?,
        Command::Laws { files } => commands::laws(files, &ctx, &mut report)?,
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(Stop::Usage(Usage(msg))) => {
            eprintln!("mt: {msg}");
            return ExitCode::from(3);
        }
        Err(Stop::Truncated { file, budget, reason }) => {
            let check = Check::truncated(format!("load/{file}"), serde_json::json!({ "reason": reason }), budget as u128);
            Report { command: "load".into(), budget: cli.budget, cap: cli.cap, seed: cli.seed, checks: vec![check], result: None }
        }
    };
    if cli.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code() as u8)
}
