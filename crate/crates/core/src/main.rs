use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use glueco::error::{Error, Result};
use glueco::example::paper_example;
use glueco::ffld::Field;
use glueco::io::{Context, InstanceFile};
use glueco::limits::Limits;
use glueco::report::CheckReport;
use glueco::scenario::{load_scenario, run_scenario, ClassRef, InstanceRef, ModuleRef, Op, PairSide, Resolver};

/// Cotorsion pairs, recollements and tilting modules over finite-dimensional
/// quiver algebras.
///
/// Exit codes: 0 every check passed, 1 a check failed (witnesses are
/// printed), 2 bad input, 3 a search guard was exceeded.
#[derive(Parser)]
#[command(name = "glueco", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Characteristic of the ground field.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u64,
    /// Per-vertex dimension bound for enumerated universes.
    #[arg(long, global = true)]
    dim_bound: Option<usize>,
    /// Multiplicity bound for the exhaustive epimorphism search.
    #[arg(long, global = true)]
    mult_bound: Option<usize>,
    /// Maximum resolution depth.
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Candidate budget for exhaustive searches.
    #[arg(long, global = true)]
    guard: Option<u64>,
    /// Write the machine-readable report here.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
}

impl Global {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(d) = self.dim_bound {
            l.dim_bound = d;
        }
        if self.mult_bound.is_some() {
            l.mult_bound = self.mult_bound;
        }
        if let Some(d) = self.depth {
            l.depth = d;
        }
        if let Some(g) = self.guard {
            l.guard = g;
        }
        l
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra presentations.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Listing and splitting modules.
    #[command(subcommand)]
    Modules(ModulesCmd),
    /// Dimensions of Ext groups.
    Ext {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Algebra for standard module names such as `P(1)`.
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Fail unless Ext^i vanishes for 1 <= i <= max degree.
        #[arg(long)]
        vanish: bool,
    },
    /// n-cotorsion and (m,n)-cotorsion pairs.
    #[command(subcommand)]
    Cotorsion(CotorsionCmd),
    /// Recollements of triangular matrix algebras.
    #[command(subcommand)]
    Recollement(RecollementCmd),
    /// Glue a pair over the closed category with a pair over the open one.
    Glue {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        closed_a: String,
        #[arg(long)]
        closed_b: String,
        #[arg(long)]
        open_a: String,
        #[arg(long)]
        open_b: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
    },
    /// Restrict a pair over the middle category to both sides.
    Restrict {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        class_a: String,
        #[arg(long)]
        class_b: String,
        #[arg(short = 'n', default_value_t = 1)]
        n: usize,
        /// Restrict an (m,n)-cotorsion pair instead.
        #[arg(short = 'm')]
        m: Option<usize>,
        /// full, left or right.
        #[arg(long, default_value = "full")]
        side: String,
    },
    /// Tilting and cotilting modules.
    #[command(subcommand)]
    Tilting(TiltingCmd),
    /// Run the built-in worked example over A2.
    PaperExample,
    /// Run a scenario file.
    Scenario { file: PathBuf },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Check that a presentation is admissible and report its dimension.
    Validate {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Subcommand)]
enum ModulesCmd {
    /// All indecomposables up to the dimension bound.
    Enumerate {
        #[arg(long)]
        algebra: String,
    },
    /// Krull-Schmidt decomposition of a module.
    Decompose {
        /// Module file, or a standard name with --algebra.
        #[arg(long)]
        module: String,
        #[arg(long)]
        algebra: Option<String>,
    },
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    class_a: String,
    #[arg(long)]
    class_b: String,
    /// `all` (default) or a class file.
    #[arg(long)]
    universe: Option<String>,
}

#[derive(Subcommand)]
enum CotorsionCmd {
    /// Check an n-cotorsion pair (both halves unless --left or --right).
    Check {
        #[arg(long, conflicts_with = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        hereditary: bool,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Check an (m,n)-cotorsion pair.
    MnCheck {
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        #[command(flatten)]
        pair: PairArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file `{"base": .., "mode": ..}`.
    #[arg(long, conflicts_with = "base")]
    instance: Option<String>,
    /// Base algebra, as an alternative to --instance.
    #[arg(long)]
    base: Option<String>,
    #[arg(long, default_value = "regular")]
    mode: String,
}

impl InstanceArgs {
    fn to_ref(&self) -> Result<InstanceRef> {
        match (&self.instance, &self.base) {
            (Some(i), _) => Ok(InstanceRef::Name(i.clone())),
            (None, Some(b)) => Ok(InstanceRef::Inline(InstanceFile {
                base: b.clone(),
                mode: self.mode.clone(),
            })),
            (None, None) => Err(Error::input("give --instance FILE or --base ALGEBRA")),
        }
    }
}

#[derive(Subcommand)]
enum RecollementCmd {
    /// Build the instance and list the indecomposables of the middle category.
    Build {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Check the recollement axioms and classify the functors.
    Audit {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Also compare Ext groups across the adjunctions up to this degree.
        #[arg(long)]
        families: Option<usize>,
    },
}

#[derive(Subcommand)]
enum TiltingCmd {
    /// Check the n-tilting (or n-cotilting) conditions.
    Check {
        #[arg(long)]
        module: String,
        #[arg(long)]
        algebra: Option<String>,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        cotilting: bool,
    },
    /// Glue tilting (or cotilting) modules from both sides.
    Glue {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        closed: String,
        #[arg(long)]
        open: String,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        cotilting: bool,
    },
}

fn class(s: &str) -> ClassRef {
    ClassRef::Tag(s.to_string())
}

fn module(s: &str, algebra: &Option<String>) -> ModuleRef {
    match algebra {
        Some(a) if !Path::new(s).is_file() => ModuleRef::Named {
            algebra: a.clone(),
            name: s.to_string(),
        },
        _ => ModuleRef::Plain(s.to_string()),
    }
}

fn op(cmd: &Cmd) -> Result<Op> {
    Ok(match cmd {
        Cmd::Algebra(AlgebraCmd::Validate { algebra }) => Op::ValidateAlgebra {
            algebra: algebra.clone(),
        },
        Cmd::Modules(ModulesCmd::Enumerate { algebra }) => Op::Enumerate {
            algebra: algebra.clone(),
            dim_bound: None,
        },
        Cmd::Modules(ModulesCmd::Decompose { module: m, algebra }) => Op::Decompose {
            module: module(m, algebra),
        },
        Cmd::Ext {
            left,
            right,
            algebra,
            max_degree,
            vanish,
        } => Op::Ext {
            left: ModuleRef::Plain(left.clone()),
            right: ModuleRef::Plain(right.clone()),
            algebra: algebra.clone(),
            max_degree: *max_degree,
            vanish: *vanish,
        },
        Cmd::Cotorsion(CotorsionCmd::Check {
            left,
            right,
            n,
            hereditary,
            pair,
        }) => Op::Cotorsion {
            a: class(&pair.class_a),
            b: class(&pair.class_b),
            n: *n,
            side: match (left, right) {
                (true, _) => PairSide::Left,
                (_, true) => PairSide::Right,
                _ => PairSide::Both,
            },
            hereditary: *hereditary,
            universe: pair.universe.as_deref().map(class),
        },
        Cmd::Cotorsion(CotorsionCmd::MnCheck { m, n, pair }) => Op::MnCotorsion {
            a: class(&pair.class_a),
            b: class(&pair.class_b),
            m: *m,
            n: *n,
            universe: pair.universe.as_deref().map(class),
        },
        Cmd::Recollement(RecollementCmd::Build { instance }) => Op::Recollement {
            instance: instance.to_ref()?,
        },
        Cmd::Recollement(RecollementCmd::Audit { instance, families }) => Op::Audit {
            instance: instance.to_ref()?,
            families: *families,
        },
        Cmd::Glue {
            instance,
            closed_a,
            closed_b,
            open_a,
            open_b,
            n,
        } => Op::Glue {
            instance: instance.to_ref()?,
            closed_a: class(closed_a),
            closed_b: class(closed_b),
            open_a: class(open_a),
            open_b: class(open_b),
            n: *n,
        },
        Cmd::Restrict {
            instance,
            class_a,
            class_b,
            n,
            m: Some(m),
            ..
        } => Op::RestrictMn {
            instance: instance.to_ref()?,
            a: class(class_a),
            b: class(class_b),
            m: *m,
            n: *n,
        },
        Cmd::Restrict {
            instance,
            class_a,
            class_b,
            n,
            m: None,
            side,
        } => Op::Restrict {
            instance: instance.to_ref()?,
            a: class(class_a),
            b: class(class_b),
            n: *n,
            mode: side.clone(),
        },
        Cmd::Tilting(TiltingCmd::Check {
            module: m,
            algebra,
            n,
            cotilting,
        }) => Op::Tilting {
            module: module(m, algebra),
            algebra: None,
            n: *n,
            cotilting: *cotilting,
        },
        Cmd::Tilting(TiltingCmd::Glue {
            instance,
            closed,
            open,
            n,
            cotilting,
        }) => Op::GlueTilting {
            instance: instance.to_ref()?,
            closed: ModuleRef::Plain(closed.clone()),
            open: ModuleRef::Plain(open.clone()),
            n: *n,
            cotilting: *cotilting,
        },
        Cmd::PaperExample | Cmd::Scenario { .. } => unreachable!("handled before"),
    })
}

fn write_json(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        })?;
    }
    Ok(())
}

/// A guard hit anywhere still produces an (inconclusive) report.
fn run(cli: &Cli) -> Result<i32> {
    match dispatch(cli) {
        Err(e @ Error::Resource { .. }) => {
            let mut report = CheckReport::new("guard exceeded");
            report.inconclusive("computation finished", &e);
            let report = report.finish();
            print!("{}", report.render());
            write_json(&cli.global.json, &report.to_json())?;
            Ok(report.exit_code())
        }
        other => other,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let g = &cli.global;
    let limits = g.limits();
    let field = Field::new(g.prime)?;
    match &cli.cmd {
        Cmd::PaperExample => {
            let run = paper_example(g.prime, &limits)?;
            print!("{}", run.render());
            write_json(&g.json, &run.to_json())?;
            if let Some(s) = run.first_unexpected() {
                eprintln!("stage failed: {}", s.name);
                for line in s.report.render().lines() {
                    eprintln!("  {line}");
                }
            }
            Ok(run.exit_code())
        }
        Cmd::Scenario { file } => {
            let sc = load_scenario(file)?;
            let dir = file.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
            let run = run_scenario(&sc, Context::new(field, limits), &dir)?;
            print!("{}", run.render());
            write_json(&g.json, &run.to_json())?;
            Ok(run.exit_code())
        }
        other => {
            let op = op(other)?;
            let mut resolver = Resolver::new(Context::new(field, limits.clone()), ".");
            let job = resolver.resolve(&op)?;
            let report = job.run(&limits)?;
            print!("{}", report.render());
            write_json(&g.json, &report.to_json())?;
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_work_after_the_subcommand() {
        let cli = Cli::try_parse_from(["glueco", "modules", "enumerate", "--algebra", "A2", "--prime", "3"]).unwrap();
        assert_eq!(cli.global.prime, 3);
    }
}
