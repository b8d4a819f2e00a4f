use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lulu::report::{self, ArrangementView, Command, Format};
use lulu::{Error, Family, RootSystemType};

#[derive(Parser)]
#[command(name = "lulu", version, about = "Coxeter arrangements, nerve complexes and LULU fiber ideals")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    /// Write the rendered report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Also write the JSON report to this path
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Run past the rank caps
    #[arg(long, global = true)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Table1,
    Lattice,
    Nonfaces,
}

#[derive(Args)]
struct TypeArgs {
    /// Root system family: A, B, C or D
    #[arg(long = "type", short = 't')]
    family: Family,
    #[arg(long, short = 'r')]
    rank: usize,
}

impl TypeArgs {
    fn ty(&self) -> Result<RootSystemType, Error> {
        RootSystemType::new(self.family, self.rank)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Monomial ideal generated by the supports of the maximal minors
    Ib(TypeArgs),
    /// Stanley-Reisner ideal of the nerve complex
    Sr(TypeArgs),
    /// Check that the Stanley-Reisner ideal lies in the minor ideal
    Inclusion(TypeArgs),
    /// Compare the two ideals (asserted in type A only)
    Equality(TypeArgs),
    /// Dimensions and codimensions for every type up to a rank
    Table1 {
        #[arg(long, default_value_t = 5)]
        max_rank: usize,
    },
    /// Fiber ideals of the LULU map for SL(n+1)
    Fiber {
        #[arg(long = "type", short = 't', default_value = "A")]
        family: Family,
        #[arg(long, short = 'r')]
        rank: usize,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fix the base point, as preset:identity|coxeter|longest|torus
        #[arg(long)]
        g0: Option<String>,
    },
    /// Signed-graph description of the intersection lattice
    Audit(TypeArgs),
    /// Arrangement data
    Arrangement {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value_t = ViewArg::Table1)]
        report: ViewArg,
    },
}

fn build(cmd: &Cmd) -> Result<Command, Error> {
    Ok(match cmd {
        Cmd::Ib(t) => Command::Ib { ty: t.ty()? },
        Cmd::Sr(t) => Command::Sr { ty: t.ty()? },
        Cmd::Inclusion(t) => Command::Inclusion { ty: t.ty()? },
        Cmd::Equality(t) => Command::Equality { ty: t.ty()? },
        Cmd::Table1 { max_rank } => Command::Table1 { max_rank: *max_rank },
        Cmd::Fiber {
            family,
            rank,
            samples,
            seed,
            g0,
        } => {
            if *family != Family::A {
                return Err(Error::Usage(format!(
                    "fibers are implemented for type A only; for type {family} it is open whether \
                     the fibers are global complete intersections (open question Q2 in the README)"
                )));
            }
            Command::Fiber {
                rank: *rank,
                samples: *samples,
                seed: *seed,
                g0: g0.clone(),
            }
        }
        Cmd::Audit(t) => Command::Audit { ty: t.ty()? },
        Cmd::Arrangement { ty, report } => Command::Arrangement {
            ty: ty.ty()?,
            view: match report {
                ViewArg::Table1 => ArrangementView::Table1,
                ViewArg::Lattice => ArrangementView::Lattice,
                ViewArg::Nonfaces => ArrangementView::NonFaces,
            },
        },
    })
}

fn execute(cli: &Cli) -> Result<bool, Error> {
    report::configure_threads()?;
    let command = build(&cli.command)?;
    let rep = report::run(&command, cli.force)?;
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let rendered = rep.render(format);
    match &cli.output {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    if let Some(path) = &cli.json {
        std::fs::write(path, rep.to_json())?;
    }
    Ok(rep.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Usage(_) | Error::Configuration(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
