use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use linsat::geometry::ProjectiveSpace;
use linsat::gf::{Tower, TowerSpec};
use linsat::io::{CodeFile, SubspaceFile};
use linsat::linset::LinearSet;
use linsat::rankmetric::{gabidulin, LinearizedPoly};
use linsat::verify;

#[derive(Parser)]
#[command(
    name = "linsat",
    version,
    about = "Linear sets, saturation and rank-metric codes over finite fields"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print a key/value table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Field tower as JSON `{p, h, m, irr_q, irr_qm}`; overrides --p/--h/--m.
    #[arg(long, global = true)]
    field: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    #[arg(long, global = true, default_value_t = 1)]
    h: usize,
    #[arg(long, global = true, default_value_t = 4)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Field towers.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Linear sets.
    #[command(subcommand)]
    Linset(LinsetCmd),
    /// Rank-metric codes.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Linearized polynomials.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Verification runs.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Print the tower spec with its default irreducibles.
    Make,
}

#[derive(Subcommand)]
enum LinsetCmd {
    /// Size, spectrum, scatteredness and secant coverage of L_U.
    Analyze { subspace: PathBuf },
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Minimum distance, MRD status and rank-weight histogram.
    Analyze { code: PathBuf },
    /// Generalized Gabidulin code on the first n powers of the generator of F_{q^m} over F_q.
    Gabidulin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// Build the code even when gcd(s, m) != 1.
        #[arg(long)]
        allow_any_sigma: bool,
    },
}

#[derive(Subcommand)]
enum PolyCmd {
    /// Whether sum_i c_i x^{q^i} is scattered.
    Scattered {
        #[arg(long, value_delimiter = ',', required = true)]
        coeffs: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Lower bounds for (m, k) = (4, 3).
    Bounds,
    /// Both rank-4 families and the rank-5 example in PG(2, q^4).
    Main {
        #[arg(long)]
        q: u32,
    },
    /// Sizes and saturation of random rank-5 linear sets in PG(2, q^4).
    Rank5 {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Counting identities on random linear sets in PG(k-1, q^4).
    Identities {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Random rank-4 subspaces of F_{q^4}^3; none should be saturating.
    Rank4 {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<linsat::Error> for Failure {
    fn from(e: linsat::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let g = &cli.global;
    rayon::ThreadPoolBuilder::new()
        .num_threads(g.threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let (value, ok) = match &cli.command {
        Command::Field(FieldCmd::Make) => (json(&tower(g)?.spec()), true),
        Command::Linset(LinsetCmd::Analyze { subspace }) => {
            let t = tower(g)?;
            let file: SubspaceFile = read_json(subspace)?;
            let u = file.to_subspace(&t)?;
            let space = ProjectiveSpace::new(&t, file.k)?;
            (json(&LinearSet::new(&space, &u)?.report(&space)?), true)
        }
        Command::Code(CodeCmd::Analyze { code }) => {
            let t = tower(g)?;
            let file: CodeFile = read_json(code)?;
            (json(&file.to_code(&t)?.report(&t)?), true)
        }
        Command::Code(CodeCmd::Gabidulin {
            n,
            k,
            s,
            allow_any_sigma,
        }) => {
            let t = tower(g)?;
            let v: Vec<_> = t.fq_basis().into_iter().take(*n).collect();
            if v.len() < *n {
                return Err(Failure::Usage(format!("n = {n} exceeds m = {}", t.m())));
            }
            (
                json(&CodeFile::from_code(&gabidulin(&t, &v, *k, *s, *allow_any_sigma)?.code)),
                true,
            )
        }
        Command::Poly(PolyCmd::Scattered { coeffs }) => {
            let t = tower(g)?;
            let elems = coeffs.iter().map(|&c| t.fqm().elem(c)).collect::<Result<Vec<_>, _>>()?;
            let scattered = LinearizedPoly::new(&t, elems)?.is_scattered(&t);
            (serde_json::json!({ "coeffs": coeffs, "scattered": scattered }), true)
        }
        Command::Verify(cmd) => verify_cmd(cmd, g.seed)?,
    };
    emit(g, &value)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify_cmd(cmd: &VerifyCmd, seed: u64) -> Result<(Value, bool), Failure> {
    Ok(match *cmd {
        VerifyCmd::Bounds => {
            let rows = verify::bound_table()?;
            let ok = rows.iter().all(|r| r.lower_bound == r.expected);
            (json(&rows), ok)
        }
        VerifyCmd::Main { q } => {
            let r = verify::verify_theorem_main(q)?;
            (json(&r), r.conclusion)
        }
        VerifyCmd::Rank5 { q, trials } => {
            let r = verify::rank5_size_census(q, trials, seed)?;
            (json(&r), r.sizes_ok && r.coverage_ok)
        }
        VerifyCmd::Identities { q, k, trials } => {
            let r = verify::identities_scan(q, k, trials, seed)?;
            (json(&r), r.failures == 0)
        }
        VerifyCmd::Rank4 { q, trials } => {
            let r = verify::random_rank4_never_saturating(q, trials, seed)?;
            (json(&r), r.saturating == 0)
        }
    })
}

fn tower(g: &Global) -> Result<Tower, Failure> {
    match &g.field {
        Some(path) => Ok(Tower::from_spec(&read_json::<TowerSpec>(path)?)?),
        None => Ok(Tower::new(g.p, g.h, g.m)?),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn emit(g: &Global, value: &Value) -> Result<(), Failure> {
    let mut text = if g.pretty {
        let mut rows = Vec::new();
        flatten("", value, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    } else {
        serde_json::to_string_pretty(value).expect("values serialize")
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &g.output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

/// Dotted key paths for objects and arrays of objects; scalar arrays stay inline.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) && !xs.iter().all(is_scalar_array) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        _ => out.push((prefix.to_string(), v.to_string())),
    }
}

fn is_scalar_array(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if !xs.iter().any(|x| x.is_object() || x.is_array()))
}
