use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kmv_core::data::{resolve_data_dir, DataSet};
use kmv_core::harness::{self, CheckManifest, CheckSpec, Format};

#[derive(Parser)]
#[command(name = "kmv", version, about = "Exact verification suite for affine sl(4) and sl(5) at level -5/2")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: OutFormat,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Directory with the golden data files and SHA256SUMS.
    #[arg(long, global = true)]
    data_dir: Option<PathBuf>,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    VacuumSl4,
    WnuOmega1,
    WnuOmega3,
    USl5,
    Sl5Families,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Singular-vector checks.
    VerifySingular {
        #[arg(long, value_enum, default_value = "all")]
        case: Case,
        /// Level, e.g. -5/2.
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Zhu-algebra polynomials, families and factorizations.
    ZhuClassify,
    /// C2 images and their reductions.
    C2Reduce,
    /// Collapse conditions of the W-algebra OPE table.
    OpeCollapse {
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
    },
    /// Tensor decompositions and the degree and weight tables.
    FusionCheck {
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Weyl-algebra checks.
    WeylCheck {
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Runs a manifest, by default every registered check.
    Report {
        /// JSON manifest; `checks`, `format` and `jobs` as in the report schema.
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Lists the registered check ids.
    List,
}

fn spec(id: &str, k: &Option<String>, n_max: Option<u32>) -> CheckSpec {
    CheckSpec { k: k.clone(), n_max, ..CheckSpec::new(id) }
}

fn checks_for(cmd: &Command) -> Result<Vec<CheckSpec>, String> {
    let none = None;
    Ok(match cmd {
        Command::VerifySingular { case, k, n_max } => {
            let vac = || {
                vec![spec("vacuum-singular", k, None), CheckSpec::new("vacuum-mutations"), CheckSpec::new("sigma")]
            };
            let wnu = |id: &str| vec![spec(id, &none, *n_max), CheckSpec::new("wnu-uniqueness")];
            let sl5 = || vec![spec("sl5-families", &none, *n_max), spec("sl5-decomposition", &none, *n_max)];
            match case {
                Case::VacuumSl4 => vac(),
                Case::WnuOmega1 => wnu("wnu-omega1"),
                Case::WnuOmega3 => wnu("wnu-omega3"),
                Case::USl5 => vec![spec("sl5-u", k, None)],
                Case::Sl5Families => sl5(),
                Case::All => {
                    let mut v = vac();
                    v.push(spec("wnu-omega1", &none, *n_max));
                    v.push(spec("wnu-omega3", &none, *n_max));
                    v.push(CheckSpec::new("wnu-uniqueness"));
                    v.push(spec("sl5-u", k, None));
                    v.extend(sl5());
                    v
                }
            }
        }
        Command::ZhuClassify => ["zhu-vprime", "zhu-p0", "zhu-families", "zhu-box-scan", "zhu-factorizations", "zhu-dominant"]
            .iter()
            .map(|id| CheckSpec::new(id))
            .collect(),
        Command::C2Reduce => {
            ["c2-vacuum", "c2-wnu-omega1", "c2-wnu-omega3"].iter().map(|id| CheckSpec::new(id)).collect()
        }
        Command::OpeCollapse { k } => match k {
            Some(_) => vec![spec("ope-collapse", k, None)],
            None => vec![CheckSpec::new("ope-collapse"), CheckSpec::new("ope-generic")],
        },
        Command::FusionCheck { n_max } => vec![
            spec("fusion", &none, *n_max),
            CheckSpec::new("degree-table"),
            CheckSpec::new("reduced-weights"),
        ],
        Command::WeylCheck { rank } => {
            let hom = CheckSpec { rank: *rank, ..CheckSpec::new("weyl-hom") };
            match rank {
                None => vec![hom, CheckSpec::new("weyl-vprime"), CheckSpec::new("weyl-relations"), CheckSpec::new("weyl-ma")],
                Some(4) => vec![hom, CheckSpec::new("weyl-vprime"), CheckSpec::new("weyl-relations")],
                Some(5) => vec![hom, CheckSpec::new("weyl-ma")],
                Some(n) => return Err(format!("--rank {n}: expected 4 or 5")),
            }
        }
        Command::Report { .. } | Command::List => Vec::new(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("kmv: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    if let Command::List = cli.command {
        for (id, what) in harness::CHECKS {
            println!("{id:20} {what}");
        }
        return Ok(true);
    }
    let format = match cli.global.format {
        OutFormat::Json => Format::Json,
        OutFormat::Md => Format::Md,
    };
    let manifest = match &cli.command {
        Command::Report { manifest: Some(p) } => {
            let src = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            CheckManifest::from_json(&src).map_err(|e| e.to_string())?
        }
        Command::Report { manifest: None } => CheckManifest::default(),
        cmd => CheckManifest { checks: checks_for(cmd)?, ..CheckManifest::default() },
    };
    let manifest = CheckManifest { format, jobs: cli.global.jobs, ..manifest };
    manifest.validate().map_err(|e| e.to_string())?;
    let dir = resolve_data_dir(cli.global.data_dir.as_deref());
    let data = DataSet::load(&dir).map_err(|e| e.to_string())?;
    let report = harness::run(&manifest, &data).map_err(|e| e.to_string())?;
    let text = harness::render(&report, manifest.format);
    match &cli.global.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(report.all_pass)
}
