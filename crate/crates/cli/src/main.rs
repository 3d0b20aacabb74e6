use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rmx_cli::{
    ar_quiver_graph, gamma_graph, gamma_j_graph, graph_to_dot, to_json, CTildeDoc, DenominatorDoc, Graph,
};
use rmx_core::ar_quiver::{DeltaVertex, DynkinQuiver, Happel, HeightFunction};
use rmx_core::denominators::{
    denominator_from_table, is_tensor_irreducible, pole_order, Convention, DoreySolver,
};
use rmx_core::quantum_cartan::{ctilde_table, default_table};
use rmx_core::root_system::{build_cartan_with_parity, CartanData, Family, LieType, ParityChoice};
use rmx_core::schur_weyl::{gamma_j, gamma_window, TypeAConfig};
use rmx_core::selfcheck::{check_table, run, run_criterion, Report, Scope};
use rmx_core::Error;

#[derive(Parser)]
#[command(name = "rmx", version, about = "R-matrix denominators for quantum loop algebras of type ADE")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    MarkdownTable,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table c~_ij(l), 1 <= l <= order.
    Ctilde {
        #[arg(long = "type")]
        family: Family,
        #[arg(long)]
        rank: usize,
        /// Truncation order (default 2h).
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print the denominator d_ij(u) as a factor list.
    Denominator {
        #[arg(long = "type")]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value = "q")]
        convention: Convention,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Order of the pole at the pair: the zero order of d_ij at q^(r-p).
    PoleOrder(Query),
    /// Whether V(x) tensor V(y) is simple.
    Irreducible(Query),
    /// Middle term of the Dorey triangle at a simple pole.
    Dorey(Query),
    /// Export a finite graph.
    Export {
        #[command(subcommand)]
        what: Export,
    },
    /// Run the acceptance suite, or the c~ identities on a table in JSON.
    Selfcheck {
        #[arg(long, value_enum, default_value = "fast")]
        scope: ScopeArg,
        /// A single criterion, 1 to 10.
        #[arg(long, conflicts_with = "table")]
        criterion: Option<u8>,
        /// Check a table written by `ctilde --format json` ("-" for stdin).
        #[arg(long)]
        table: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScopeArg {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ParityArg {
    Standard,
    Flipped,
}

impl From<ParityArg> for ParityChoice {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Standard => ParityChoice::Standard,
            ParityArg::Flipped => ParityChoice::Flipped,
        }
    }
}

#[derive(Args)]
struct TypeArgs {
    #[arg(value_name = "TYPE")]
    family: Family,
    rank: usize,
    #[arg(long, value_enum, default_value = "standard")]
    parity: ParityArg,
}

#[derive(Args)]
struct Query {
    #[command(flatten)]
    ty: TypeArgs,
    /// First vertex as "i,p".
    #[arg(long)]
    x: DeltaVertex,
    /// Second vertex as "j,r".
    #[arg(long)]
    y: DeltaVertex,
    /// Orientation as comma-separated arrows, e.g. "2>1,2>3" (default monotone).
    #[arg(long)]
    quiver: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Export {
    /// The repetition quiver with the objects of the Happel bijection.
    ArQuiver {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// The quiver Gamma on a window of p values.
    Gamma {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Gamma restricted to the family x(j), j in [from, to].
    GammaJ {
        #[command(flatten)]
        ty: TypeArgs,
        /// The parameter N.
        #[arg(long)]
        cap: usize,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

/// How a command failed, and with which exit code.
enum Failure {
    /// exit 1
    ChecksFailed,
    /// exit 2
    Invalid(anyhow::Error),
    /// exit 3
    Precondition(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Invalid(e)) => {
            eprintln!("rmx: error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(e)) => {
            eprintln!("rmx: precondition failed: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn cartan(family: Family, rank: usize, parity: ParityArg) -> Result<CartanData, Failure> {
    Ok(build_cartan_with_parity(LieType::new(family, rank)?, parity.into()))
}

fn quiver(cd: &CartanData, arrows: Option<&str>) -> Result<DynkinQuiver, Failure> {
    match arrows {
        Some(s) => Ok(DynkinQuiver::parse(cd, s)?),
        None => Ok(DynkinQuiver::monotone(cd)),
    }
}

fn graph_output(name: &str, g: &Graph, format: Format) -> Result<String, Failure> {
    match format {
        Format::Dot => Ok(graph_to_dot(name, g)),
        Format::Json => Ok(to_json(g)),
        other => Err(anyhow!("graphs are exported as dot or json, not {other:?}").into()),
    }
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Ctilde { family, rank, order, format } => {
            let cd = cartan(family, rank, ParityArg::Standard)?;
            let t = match order {
                Some(l) => ctilde_table(&cd, l)?,
                None => default_table(&cd),
            };
            let doc = CTildeDoc::from_table(&t);
            match format {
                Format::Json => Ok(to_json(&doc)),
                Format::Csv => Ok(doc.to_csv()),
                Format::MarkdownTable => Ok(doc.to_markdown()),
                other => Err(anyhow!("the c~ table is not available as {other:?}").into()),
            }
        }
        Command::Denominator { family, rank, i, j, convention, format } => {
            let cd = cartan(family, rank, ParityArg::Standard)?;
            let d = denominator_from_table(&default_table(&cd), i, j, convention)?;
            let doc = DenominatorDoc::new(cd.lie_type(), i, j, &d);
            match format {
                Format::Text => Ok(format!("{}\n", doc.polynomial)),
                Format::Json => Ok(to_json(&doc)),
                Format::Csv => Ok(doc.to_csv()),
                Format::MarkdownTable => Ok(doc.to_markdown()),
                Format::Dot => Err(anyhow!("dot output is only available for graphs").into()),
            }
        }
        Command::PoleOrder(q) => {
            let cd = cartan(q.ty.family, q.ty.rank, q.ty.parity)?;
            let order = pole_order(&default_table(&cd), q.x, q.y)?;
            scalar(&q, "pole_order", json!(order), order.to_string())
        }
        Command::Irreducible(q) => {
            let cd = cartan(q.ty.family, q.ty.rank, q.ty.parity)?;
            let simple = is_tensor_irreducible(&default_table(&cd), q.x, q.y)?;
            scalar(&q, "irreducible", json!(simple), simple.to_string())
        }
        Command::Dorey(q) => {
            let cd = cartan(q.ty.family, q.ty.rank, q.ty.parity)?;
            q.x.validate(&cd)?;
            q.y.validate(&cd)?;
            let dq = quiver(&cd, q.quiver.as_deref())?;
            let xi = HeightFunction::standard(&dq);
            let m = DoreySolver::new(&dq, &xi)?.middle_term(q.x, q.y).map_err(|e| match e {
                Error::NotSimplePole(_) | Error::NoCommonHeart | Error::ExtNotOneDimensional(_) => {
                    Failure::Precondition(e.into())
                }
                other => other.into(),
            })?;
            scalar(&q, "monomial", json!(m.to_string()), m.to_string())
        }
        Command::Export { what } => export(what),
        Command::Selfcheck { scope, criterion, table } => selfcheck(scope, criterion, table),
    }
}

fn scalar(q: &Query, key: &str, value: serde_json::Value, text: String) -> Result<String, Failure> {
    match q.format {
        Format::Text => Ok(format!("{text}\n")),
        Format::Json => Ok(to_json(&json!({ "x": q.x.to_string(), "y": q.y.to_string(), key: value }))),
        other => Err(anyhow!("this query prints text or json, not {other:?}").into()),
    }
}

fn export(what: Export) -> Result<String, Failure> {
    match what {
        Export::ArQuiver { ty, from, to, quiver: arrows, format } => {
            let cd = cartan(ty.family, ty.rank, ty.parity)?;
            let q = quiver(&cd, arrows.as_deref())?;
            let frame = Happel::standard(q);
            graph_output("ar_quiver", &ar_quiver_graph(&frame, from, to)?, format)
        }
        Export::Gamma { ty, from, to, format } => {
            let cd = cartan(ty.family, ty.rank, ty.parity)?;
            graph_output("gamma", &gamma_graph(&gamma_window(&default_table(&cd), from, to)), format)
        }
        Export::GammaJ { ty, cap, from, to, format } => {
            let cd = cartan(ty.family, ty.rank, ty.parity)?;
            let cfg = TypeAConfig::standard(&cd, cap)?;
            let g = if from > to {
                Graph::default()
            } else {
                gamma_j_graph(&gamma_j(&default_table(&cd), &cfg.family(from, to)?))
            };
            graph_output("gamma_j", &g, format)
        }
    }
}

fn selfcheck(scope: ScopeArg, criterion: Option<u8>, table: Option<PathBuf>) -> Result<String, Failure> {
    let scope = match scope {
        ScopeArg::Fast => Scope::Fast,
        ScopeArg::Full => Scope::Full,
    };
    let criteria = if let Some(path) = table {
        let mut text = String::new();
        if path.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut text).context("reading stdin")?;
        } else {
            text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        }
        let doc: CTildeDoc = serde_json::from_str(&text).context("parsing the table")?;
        vec![check_table(&doc.to_table()?)]
    } else if let Some(id) = criterion {
        vec![run_criterion(id, scope)?]
    } else {
        run(scope).criteria
    };
    for c in &criteria {
        eprintln!("{}", c.summary_line());
    }
    let passed = criteria.iter().all(|c| c.passed);
    let report = Report { scope, passed, elapsed_ms: criteria.iter().map(|c| c.elapsed_ms).sum(), criteria };
    print!("{}", to_json(&report));
    if passed {
        Ok(String::new())
    } else {
        Err(Failure::ChecksFailed)
    }
}
