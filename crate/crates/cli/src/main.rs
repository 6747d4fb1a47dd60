use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hochschild_cli::commands::{self, BimoduleArg, Complex, ExtensionMode, Failure, FiniteKoszulArgs, HhArgs, Outcome};
use hochschild_core::linalg::set_size_guard;
use hochschild_core::Error;

#[derive(Parser)]
#[command(name = "hochschild", version, about = "Hochschild cohomology of finite algebras over Z, Q and F_p")]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest matrix (in entries) any step may build.
    #[arg(long, global = true)]
    guard: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// HH^n(A, M), or HH_n(A, M) with --homology. M defaults to A.
    Hh {
        algebra: PathBuf,
        /// Bimodule file, or one of: regular, enveloping, hom, zero, Omega^1, Omega^2.
        bimodule: Option<String>,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long, conflicts_with = "unnormalized")]
        normalized: bool,
        #[arg(long)]
        unnormalized: bool,
        #[arg(long)]
        homology: bool,
        /// Include cocycles representing the generators.
        #[arg(long)]
        representatives: bool,
    },
    /// Center, derivations, separability, quasi-freeness and HCdim bounds.
    Analyze {
        algebra: PathBuf,
        #[arg(long, default_value_t = 3)]
        cap: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Square-zero extensions of A by M.
    Extensions {
        algebra: PathBuf,
        bimodule: Option<String>,
        #[command(flatten)]
        mode: ExtensionFlags,
    },
    /// Koszul complexes: graded Tor over k[x_1..x_v], or a sequence in a finite algebra.
    Koszul {
        /// Algebra file for the finite mode.
        algebra: Option<PathBuf>,
        #[arg(long, conflicts_with = "algebra")]
        vars: Option<usize>,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long)]
        cap: Option<usize>,
        /// Elements separated by ';', coordinates by ','.
        #[arg(long, alias = "element", requires = "algebra")]
        sequence: Option<String>,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        quotient: Option<String>,
    },
    /// HCdim >= fd - D(k) - fd_k.
    Bound {
        #[arg(long)]
        fd: usize,
        #[arg(long = "Dk")]
        dk: Option<usize>,
        #[arg(long, default_value_t = 0)]
        fdk: usize,
        /// Base ring, used for D(k) when --Dk is absent.
        #[arg(long)]
        ring: Option<String>,
    },
    /// Write the bundled fixture corpus to DIR, or compare with --check.
    Fixtures {
        dir: PathBuf,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExtensionFlags {
    #[arg(long)]
    enumerate: bool,
    /// Cochain file: is it a coboundary?
    #[arg(long)]
    class: Option<PathBuf>,
    /// Extension file: does the projection have a multiplicative section?
    #[arg(long)]
    lift: Option<PathBuf>,
}

fn parse_failure(e: Error) -> Failure {
    Failure::new("parse", e)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Hh { algebra, bimodule, degree, normalized, unnormalized, homology, representatives } => {
            let complex = match (normalized, unnormalized) {
                (true, _) => Complex::Normalized,
                (_, true) => Complex::Unnormalized,
                _ => Complex::Auto,
            };
            let args = HhArgs {
                bimodule: bimodule.as_deref().map(BimoduleArg::parse),
                degree,
                complex,
                homology,
                representatives,
            };
            commands::hh(&commands::load_algebra(&algebra)?, &args)
        }
        Command::Analyze { algebra, cap, seed } => commands::analyze(&commands::load_algebra(&algebra)?, cap, seed),
        Command::Extensions { algebra, bimodule, mode } => {
            let mode = match (mode.enumerate, mode.class, mode.lift) {
                (_, Some(c), _) => ExtensionMode::Class(c),
                (_, _, Some(l)) => ExtensionMode::Lift(l),
                _ => ExtensionMode::Enumerate,
            };
            let bimodule = bimodule.as_deref().map(BimoduleArg::parse);
            commands::extensions(&commands::load_algebra(&algebra)?, bimodule.as_ref(), &mode)
        }
        Command::Koszul { algebra, vars, ring, cap, sequence, module, quotient } => match (algebra, vars) {
            (Some(path), _) => {
                let sequence = sequence.ok_or_else(|| parse_failure(Error::Parse("--sequence is required".into())))?;
                let args = FiniteKoszulArgs { sequence, module, quotient };
                commands::koszul_finite(&commands::load_algebra(&path)?, &args)
            }
            (None, Some(v)) => {
                let ring = commands::parse_ring(&ring).map_err(parse_failure)?;
                commands::koszul_graded(ring, v, cap.unwrap_or(v))
            }
            (None, None) => Err(parse_failure(Error::Parse("give an algebra file or --vars".into()))),
        },
        Command::Bound { fd, dk, fdk, ring } => {
            let ring = ring.as_deref().map(commands::parse_ring).transpose().map_err(parse_failure)?;
            commands::bound(fd, dk, fdk, ring)
        }
        Command::Fixtures { dir, check } => commands::fixtures(&dir, check),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(g) = cli.guard {
        set_size_guard(g);
    }
    let outcome = run(cli.command).and_then(|report| {
        let mut text = serde_json::to_string_pretty(&report).expect("serializable");
        text.push('\n');
        match &cli.output {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| parse_failure(Error::Parse(format!("{}: {e}", path.display()))))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.code as u8)
        }
    }
}
