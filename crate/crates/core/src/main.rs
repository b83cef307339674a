use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stplus::cli::{
    cmd_census, cmd_omega, cmd_tori, cmd_verify, cmd_weyl, Format, RunConfig, Suite,
};
use stplus::quadspace::FormType;
use stplus::weyl::WeylType;

#[derive(Parser)]
#[command(
    name = "stplus",
    version,
    about = "Restricted Steinberg characters of small orthogonal groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Field size (a prime power).
    #[arg(long)]
    q: Option<u32>,
    /// Characteristic, used with --k when --q is absent.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Dimension of the quadratic space.
    #[arg(long, default_value_t = 3)]
    dim: usize,
    /// Form type: +, - or odd.
    #[arg(long = "type", allow_hyphen_values = true, value_parser = parse_type)]
    ty: Option<FormType>,
    #[arg(long, env = "STB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest group order to enumerate.
    #[arg(long)]
    max_order: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal tori of SO(V) by decomposition.
    Tori {
        #[command(flatten)]
        common: Common,
    },
    /// Classes of W(B_n) or W(D_n), optionally with double-coset norms.
    Weyl {
        /// B or D.
        #[arg(long = "type", value_parser = parse_weyl, default_value = "B")]
        weyl_type: WeylType,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        doublecosets: bool,
    },
    /// Steinberg, omega and restricted Steinberg values per class.
    Omega {
        #[command(flatten)]
        common: Common,
    },
    /// Series census of the restricted Steinberg character.
    Census {
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites; exits nonzero on any failure.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(value_enum)]
        suites: Vec<Suite>,
        #[arg(long = "suite", value_enum)]
        suite_flag: Vec<Suite>,
    },
}

fn parse_type(s: &str) -> Result<FormType, String> {
    s.parse().map_err(|e: stplus::Error| e.to_string())
}

fn parse_weyl(s: &str) -> Result<WeylType, String> {
    s.parse().map_err(|e: stplus::Error| e.to_string())
}

fn config(name: &str, c: &Common) -> stplus::Result<RunConfig> {
    RunConfig::new(
        name,
        c.q,
        c.p,
        c.k,
        c.dim,
        c.ty,
        c.max_order,
        c.cache_dir.clone(),
        c.format,
    )
}

fn run(cli: Cli) -> stplus::Result<(String, bool)> {
    match cli.command {
        Command::Tori { common } => Ok((cmd_tori(&config("tori", &common)?)?, true)),
        Command::Weyl {
            weyl_type,
            format,
            n,
            doublecosets,
        } => {
            let cfg = RunConfig::new(
                &format!("weyl {weyl_type:?}{n}"),
                None,
                None,
                None,
                2 * n + 1,
                None,
                None,
                None,
                format,
            )?;
            Ok((cmd_weyl(&cfg, weyl_type, n, doublecosets)?, true))
        }
        Command::Omega { common } => Ok((cmd_omega(&config("omega", &common)?)?, true)),
        Command::Census { common } => Ok((cmd_census(&config("census", &common)?)?, true)),
        Command::Verify {
            common,
            mut suites,
            suite_flag,
        } => {
            suites.extend(suite_flag);
            if suites.is_empty() {
                suites.push(Suite::All);
            }
            cmd_verify(&config("verify", &common)?, &suites)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok((out, pass)) => {
            print!("{out}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
