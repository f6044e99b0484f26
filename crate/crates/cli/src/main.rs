use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use mha_core::algebra::Side;
use mha_core::catalog::{by_name, standard_catalog};
use mha_core::kg::DEFAULT_PAIRS;
use mha_core::report::{self, Command, Format, KgGroup, Route, EXIT_INVALID_INPUT};
use mha_core::specfile::export;

#[derive(Parser)]
#[command(name = "mha")]
#[command(about = "Exact verification of Hopf structure from integrals and cointegrals")]
#[command(version)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: OutputFormat,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Validate the algebra and comultiplication, report legs and Galois ranks
    Check { file: PathBuf },
    /// Solve for integrals (invariant functionals)
    Integrals {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Solve for cointegrals
    Cointegrals {
        file: PathBuf,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
    },
    /// Construct counit and antipode from a faithful left integral
    Construct { file: PathBuf },
    /// Decide whether the input is a Hopf algebra
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        route: RouteArg,
    },
    /// Run the sliced identity suite on finitely supported functions on an infinite group
    Kg {
        #[arg(long, value_enum, default_value = "z")]
        group: GroupArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PAIRS)]
        pairs: usize,
    },
    /// Print a built-in example as a spec file, or list the examples
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Integral,
    Cointegral,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Z,
    Z2,
    Dihedral,
}

fn side(s: Option<SideArg>) -> Option<Side> {
    s.map(|s| match s {
        SideArg::Left => Side::Left,
        SideArg::Right => Side::Right,
    })
}

/// `-` reads stdin; `catalog:NAME` uses a built-in example.
fn read_input(path: &PathBuf) -> anyhow::Result<(String, String)> {
    let shown = path.display().to_string();
    if shown == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(("<stdin>".into(), s));
    }
    if let Some(name) = shown.strip_prefix("catalog:") {
        let entry = by_name(name).with_context(|| format!("no built-in example named `{name}`"))?;
        return Ok((shown.clone(), export(&entry.comult, Some(&entry.name))));
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading {shown}"))?;
    Ok((shown, text))
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let (file, command) = match cli.command {
        Commands::Check { file } => (file, Command::Check),
        Commands::Integrals { file, side: s } => (file, Command::Integrals(side(s))),
        Commands::Cointegrals { file, side: s } => (file, Command::Cointegrals(side(s))),
        Commands::Construct { file } => (file, Command::Construct),
        Commands::Classify { file, route } => {
            let route = match route {
                RouteArg::Integral => Route::Integral,
                RouteArg::Cointegral => Route::Cointegral,
                RouteArg::Both => Route::Both,
            };
            (file, Command::Classify(route))
        }
        Commands::Kg { group, seed, pairs } => {
            let group = match group {
                GroupArg::Z => KgGroup::Integers,
                GroupArg::Z2 => KgGroup::IntegerLattice,
                GroupArg::Dihedral => KgGroup::InfiniteDihedral,
            };
            let r = report::run_kg(group, seed, pairs);
            io::stdout().write_all(report::render(&r, format).as_bytes())?;
            return Ok(r.exit_code() as u8);
        }
        Commands::Catalog { name: None } => {
            for e in standard_catalog() {
                println!("{}", e.name);
            }
            return Ok(0);
        }
        Commands::Catalog { name: Some(name) } => {
            let entry = by_name(&name).with_context(|| format!("no built-in example named `{name}`"))?;
            print!("{}", export(&entry.comult, Some(&entry.name)));
            return Ok(0);
        }
    };

    let (source, text) = match read_input(&file) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return Ok(EXIT_INVALID_INPUT as u8);
        }
    };
    match report::run(&source, &text, command) {
        Ok(r) => {
            io::stdout().write_all(report::render(&r, format).as_bytes())?;
            Ok(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {source}: {e}");
            Ok(e.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
