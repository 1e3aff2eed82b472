use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use factperm::factop::FactTower;
use factperm::fincat::{to_dot, twisted_arrow, CategoryJson, FinCategory};
use factperm::permcat::{parse_permcat, PermCategoryJson};
use factperm::permconstr::{perm_build, PermBounds, TruncatedSegalFunctor, TwTruncation};
use factperm::relcat::RelCategoryJson;
use factperm::suite::{all_passed, run_suite, Check, Fixture, Report, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "factperm", version, about = "Law checks for Fact operads and the Perm construction on finite permutative categories")]
struct Cli {
    /// Truncation bound.
    #[arg(long, alias = "n", global = true, env = "FACTPERM_MAX_N", default_value_t = RunConfig::DEFAULT_MAX_N)]
    max_n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the check suite on fixture files.
    Check {
        #[arg(required = true)]
        fixtures: Vec<PathBuf>,
        /// Restrict to these checks (comma separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<Check>,
    },
    /// Phi/Psi witnesses, lax squares and pullback functoriality of Fact_n(C).
    Fact { fixture: PathBuf },
    /// Laws of Perm_N(Fact(C)) and its pi_0.
    Perm { fixture: PathBuf },
    /// The counit Perm(Fact(C)) -> C.
    Roundtrip { fixture: PathBuf },
    /// eta, Path(eta) and the alpha/beta comparison.
    EtaCheck { fixture: PathBuf },
    /// Segal witnesses for n |-> Fact_n(C).
    Segal { fixture: PathBuf },
    /// Connectivity and H_1 of the comma categories of the fixture category.
    ProbeInitial { fixture: PathBuf },
    /// Factorization in Fin_* and the nabla isomorphism.
    Finstar,
    /// epsilon on the nerve of the fixture category and its marking.
    Sset { fixture: PathBuf },
    /// Export a construction as JSON or DOT.
    Export {
        #[arg(value_enum)]
        entity: Entity,
        /// Needed for every entity except `tw`.
        fixture: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Entity {
    /// The fixture category with its weak equivalences.
    Category,
    /// Tw of the fixture category.
    TwistedArrow,
    /// Fact_n(C) at n = max-n (at most 3).
    Fact,
    /// Perm_N(Fact(C)) at N = max-n (at most 2).
    Perm,
    /// Tw of the active maps with n, m <= max-n.
    Tw,
}

/// Input problems: exit status 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn load(path: &Path) -> Result<Fixture> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let perm = parse_permcat(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(Fixture { name, perm: Arc::new(perm) })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn render_reports(cli: &Cli, reports: &[Report]) -> Result<String> {
    match cli.format {
        Format::Text => {
            let mut s: String = reports.iter().map(Report::to_text).collect();
            let passed = reports.iter().filter(|r| r.passed).count();
            s.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
            Ok(s)
        }
        Format::Json => {
            let doc = serde_json::json!({ "max_n": cli.max_n, "passed": all_passed(reports), "reports": reports });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        Format::Dot => Err(InputError("reports support --format text or json; dot is for export".into()).into()),
    }
}

fn suite(cli: &Cli, fixtures: &[PathBuf], checks: &[Check]) -> Result<bool> {
    let fixtures = fixtures.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    let config = RunConfig { max_n: cli.max_n, fixtures, checks: checks.iter().copied().collect::<BTreeSet<_>>() };
    let reports = run_suite(&config);
    emit(&cli.out, &render_reports(cli, &reports)?)?;
    Ok(all_passed(&reports))
}

fn category_output(format: Format, c: &FinCategory, weq: Option<&[bool]>, json: impl FnOnce() -> Result<String>) -> Result<String> {
    match format {
        Format::Dot => Ok(to_dot(c, weq)),
        Format::Json => json(),
        Format::Text => Err(InputError("export supports --format json or dot".into()).into()),
    }
}

macro_rules! json {
    ($value:expr) => {
        Ok(serde_json::to_string_pretty($value)? + "\n")
    };
}

fn export(cli: &Cli, entity: Entity, fixture: Option<&Path>) -> Result<()> {
    let text = if entity == Entity::Tw {
        let tw = TwTruncation::new(cli.max_n, cli.max_n);
        category_output(cli.format, &tw.category, None, || json!(&CategoryJson::from_category(&tw.category)))?
    } else {
        let path = fixture.ok_or_else(|| InputError(format!("export {entity:?} needs a fixture file").to_lowercase()))?;
        let fx = load(path)?;
        let bounds = factperm::suite::Bounds::from_max_n(cli.max_n);
        match entity {
            Entity::Category => {
                let rel = &fx.perm.rel;
                category_output(cli.format, &rel.base, Some(&rel.weq), || json!(&PermCategoryJson::from_perm(&fx.perm)))?
            }
            Entity::TwistedArrow => {
                let tw = twisted_arrow(fx.perm.base());
                category_output(cli.format, &tw.category, None, || json!(&CategoryJson::from_category(&tw.category)))?
            }
            Entity::Fact => {
                let tower = FactTower::sample(fx.perm.clone(), bounds.fact);
                let level = tower.level(bounds.fact);
                category_output(cli.format, level.category(), Some(&level.rel.weq), || json!(&RelCategoryJson::from_rel(&level.rel)))?
            }
            Entity::Perm => {
                let tower = FactTower::sample(fx.perm.clone(), bounds.perm);
                let f = Arc::new(TruncatedSegalFunctor::from_fact_tower(&tower));
                let b = perm_build(&f, PermBounds::square(bounds.perm))?;
                category_output(cli.format, b.base(), Some(&b.perm.rel.weq), || json!(&PermCategoryJson::from_perm(&b.perm)))?
            }
            Entity::Tw => unreachable!("handled above"),
        }
    };
    emit(&cli.out, &text)
}

fn run(cli: &Cli) -> Result<bool> {
    let one = |path: &PathBuf, checks: &[Check]| suite(cli, std::slice::from_ref(path), checks);
    match &cli.command {
        Command::Check { fixtures, only } => suite(cli, fixtures, only),
        Command::Fact { fixture } => one(fixture, &[Check::FactWitness, Check::LaxSquares]),
        Command::Perm { fixture } => one(fixture, &[Check::PermLaws, Check::Pi0]),
        Command::Roundtrip { fixture } => one(fixture, &[Check::Counit]),
        Command::EtaCheck { fixture } => one(fixture, &[Check::AlphaBeta]),
        Command::Segal { fixture } => one(fixture, &[Check::Segal]),
        Command::ProbeInitial { fixture } => one(fixture, &[Check::CommaProbe]),
        Command::Finstar => suite(cli, &[], &[Check::Factorization, Check::Nabla]),
        Command::Sset { fixture } => one(fixture, &[Check::Epsilon]),
        Command::Export { entity, fixture } => export(cli, *entity, fixture.as_deref()).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
