use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use haar_units::error::Error;
use haar_units::group_algebra::{unit_basis, AlgebraElement};
use haar_units::haar::{moment, moment_symbolic, MomentQuery, PiecewiseMoment};
use haar_units::limits::{set_degree_cap, set_oracle_cap, DEFAULT_DEGREE_CAP, DEFAULT_ORACLE_CAP};
use haar_units::monte_carlo::{mc_moment, MomentEstimate};
use haar_units::rational::Rational;
use haar_units::schur_weyl::{gram_pairing_poly, IndexTuple};
use haar_units::tableaux::{partitions, standard_tableaux, YoungDiagram};
use haar_units::verify::{self, Level};
use haar_units::weingarten::wg_moment;

/// Exact Haar-unitary moments through matrix units of the symmetric group algebra.
#[derive(Parser)]
#[command(name = "haar-units", version)]
struct Cli {
    /// Largest degree d accepted by any command.
    #[arg(long, env = "HAAR_DEGREE_CAP", default_value_t = DEFAULT_DEGREE_CAP, global = true)]
    degree_cap: usize,

    /// Largest degree for the dense Weingarten oracle.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP, global = true)]
    oracle_cap: usize,

    /// Human-readable text or one JSON document on stdout.
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    output: Output,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// ∫ u_{i₁j₁}⋯u_{i_d j_d} ū_{k₁l₁}⋯ū_{k_d l_d} dU over the unitary group U(n).
    Moment(MomentArgs),
    /// List Young diagrams and standard tableaux.
    Tableaux(TableauxArgs),
    /// Show one unnormalized matrix unit.
    Unit(UnitArgs),
    /// Run the invariant suites at one degree.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MomentArgs {
    /// Row indices of the u factors, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    i: Vec<usize>,
    /// Column indices of the u factors.
    #[arg(long, value_delimiter = ',', required = true)]
    j: Vec<usize>,
    /// Row indices of the conjugated factors.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    /// Column indices of the conjugated factors.
    #[arg(long, value_delimiter = ',', required = true)]
    l: Vec<usize>,
    /// Matrix size.
    #[arg(long, required_unless_present = "symbolic", conflicts_with = "symbolic")]
    n: Option<usize>,
    /// Report the moment as a piecewise rational function of n.
    #[arg(long)]
    symbolic: bool,
    /// Exact matrix units, the Weingarten oracle, the sampler, or all three.
    #[arg(long, value_enum, default_value_t = Method::Units)]
    method: Method,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Monte Carlo seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Units,
    Weingarten,
    Mc,
    All,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TableauxArgs {
    /// Every shape of this size.
    #[arg(long)]
    d: Option<usize>,
    /// One shape, as comma-separated row lengths.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
}

#[derive(Args)]
struct UnitArgs {
    /// The shape, as comma-separated row lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<usize>,
    /// One-based position of T in the tableau listing of the shape.
    #[arg(long)]
    row: usize,
    /// One-based position of S in the tableau listing of the shape.
    #[arg(long)]
    col: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value_t = VerifyLevel::Fast)]
    level: VerifyLevel,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Fast,
    Full,
}

/// Deviation, in standard errors, beyond which a Monte Carlo estimate is flagged.
const MC_TOLERANCE: f64 = 5.0;

enum Failure {
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.output {
                Output::Text => print!("{}", report.text),
                Output::Json => println!("{}", serde_json::to_string(&report.json).expect("valid json")),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    set_degree_cap(cli.degree_cap)?;
    set_oracle_cap(cli.oracle_cap)?;
    match &cli.command {
        Command::Moment(a) => cmd_moment(a),
        Command::Tableaux(a) => cmd_tableaux(a),
        Command::Unit(a) => cmd_unit(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn tuple(v: &[usize]) -> Result<IndexTuple, Failure> {
    Ok(IndexTuple::new(v.to_vec())?)
}

fn cmd_moment(a: &MomentArgs) -> Result<Report, Failure> {
    let q = MomentQuery::new(tuple(&a.i)?, tuple(&a.j)?, tuple(&a.k)?, tuple(&a.l)?)?;
    if a.symbolic {
        if a.method != Method::Units {
            return Err(Failure::Usage("--symbolic is only available with --method units".into()));
        }
        let s = moment_symbolic(&q)?;
        return Ok(Report {
            text: branch_table(&s),
            json: serde_json::to_value(&s).expect("serializable"),
            ok: true,
        });
    }
    let n = a.n.expect("clap enforces --n without --symbolic");
    q.check_dimension(n)?;
    match a.method {
        Method::Units => {
            let v = moment(&q, n)?;
            Ok(Report {
                text: format!("{v}\n"),
                json: json!({ "moment": v.to_string() }),
                ok: true,
            })
        }
        Method::Weingarten => {
            let v = wg_moment(&q, n)?;
            Ok(Report {
                text: format!("{v}\n"),
                json: json!({ "moment": v.to_string() }),
                ok: true,
            })
        }
        Method::Mc => {
            let est = mc_moment(&q, n, a.samples, a.seed)?;
            Ok(Report {
                text: format!("{}\n", estimate_text(&est)),
                json: serde_json::to_value(&est).expect("serializable"),
                ok: true,
            })
        }
        Method::All => all_methods(&q, n, a),
    }
}

fn all_methods(q: &MomentQuery, n: usize, a: &MomentArgs) -> Result<Report, Failure> {
    let units = moment(q, n)?;
    let wg = match wg_moment(q, n) {
        Ok(v) => Some(v),
        Err(Error::GramPossiblySingular { .. } | Error::DegreeCap { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let est = mc_moment(q, n, a.samples, a.seed)?;
    let exact_agree = wg.as_ref().is_none_or(|w| *w == units);
    let exact_f64 = rational_to_f64(&units);
    let mc_agree = est.agrees_with(exact_f64, MC_TOLERANCE);

    let mut text = String::new();
    writeln!(text, "units:      {units}").unwrap();
    match &wg {
        Some(w) => writeln!(text, "weingarten: {w}").unwrap(),
        None => writeln!(text, "weingarten: abstains (n < d or degree above the oracle cap)").unwrap(),
    }
    writeln!(text, "mc:         {}", estimate_text(&est)).unwrap();
    writeln!(
        text,
        "verdict:    {}",
        match (exact_agree, mc_agree) {
            (true, true) => "agree".to_string(),
            (true, false) => format!("exact methods agree; mc deviates by {:.2} standard errors", est.deviation(exact_f64)),
            (false, _) => "DISAGREE".to_string(),
        }
    )
    .unwrap();
    let json = json!({
        "units": units.to_string(),
        "weingarten": wg.as_ref().map(|w| w.to_string()),
        "mc": serde_json::to_value(&est).expect("serializable"),
        "exact_agree": exact_agree,
        "mc_within_tolerance": mc_agree,
    });
    Ok(Report {
        text,
        json,
        ok: exact_agree,
    })
}

fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn estimate_text(est: &MomentEstimate) -> String {
    format!(
        "{:.6} {:+.6}i ± {:.6} ({} samples, seed {})",
        est.mean.re, est.mean.im, est.std_error, est.samples, est.seed
    )
}

fn branch_table(s: &PiecewiseMoment) -> String {
    let mut out = String::new();
    for (idx, b) in s.branches.iter().enumerate() {
        let range = match s.branches.get(idx + 1) {
            None => format!("n >= {}", b.min_n),
            Some(next) if next.min_n == b.min_n + 1 => format!("n = {}", b.min_n),
            Some(next) => format!("{} <= n <= {}", b.min_n, next.min_n - 1),
        };
        writeln!(out, "{range}: {}", b.value).unwrap();
    }
    out
}

fn shape_listing(shape: &YoungDiagram, text: &mut String) -> Result<Value, Failure> {
    let ts = standard_tableaux(shape)?;
    writeln!(text, "shape {}  f = {}", fmt_list(shape.rows()), ts.len()).unwrap();
    let mut rows = Vec::new();
    for t in &ts {
        let content = t.content_vector();
        writeln!(text, "  {t}  content {}", fmt_list(content.values())).unwrap();
        rows.push(json!({ "rows": t.rows(), "content": content.values() }));
    }
    Ok(json!({ "shape": shape.rows(), "dimension": ts.len(), "tableaux": rows }))
}

fn fmt_list<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cmd_tableaux(a: &TableauxArgs) -> Result<Report, Failure> {
    let mut text = String::new();
    let json = match (&a.d, &a.lambda) {
        (Some(d), _) => {
            let shapes = partitions(*d)?;
            let mut listed = Vec::new();
            let mut squares = 0usize;
            for shape in &shapes {
                let entry = shape_listing(shape, &mut text)?;
                let f = entry["dimension"].as_u64().expect("count") as usize;
                squares += f * f;
                listed.push(entry);
            }
            writeln!(text, "{} shapes, sum of f^2 = {squares}", shapes.len()).unwrap();
            json!({ "degree": d, "shapes": listed, "sum_of_squares": squares })
        }
        (None, Some(rows)) => {
            let shape = YoungDiagram::new(rows.clone())?;
            if shape.size() == 0 {
                return Err(Failure::Usage("partition must have at least one box".into()));
            }
            shape_listing(&shape, &mut text)?
        }
        (None, None) => unreachable!("clap requires one of --d, --lambda"),
    };
    Ok(Report { text, json, ok: true })
}

fn cmd_unit(a: &UnitArgs) -> Result<Report, Failure> {
    let shape = YoungDiagram::new(a.lambda.clone())?;
    if shape.size() == 0 {
        return Err(Failure::Usage("partition must have at least one box".into()));
    }
    let basis = unit_basis(shape.size())?;
    let k = basis.shapes().iter().position(|s| *s == shape).expect("every partition is listed");
    let f = basis.tableaux(k).len();
    for (name, v) in [("row", a.row), ("col", a.col)] {
        if v == 0 || v > f {
            return Err(Failure::Usage(format!("--{name} must lie in 1..={f}, got {v}")));
        }
    }
    let unit = basis.unit(k, a.row - 1, a.col - 1)?;
    let element: &AlgebraElement = &unit.element;
    let norm = gram_pairing_poly(element, element)?;
    let text = format!(
        "shape:   {}\nrow:     {}\ncol:     {}\nelement: {}\nc^2:     {}\nnorm:    {}\n",
        fmt_list(shape.rows()),
        unit.row,
        unit.col,
        element,
        unit.c_squared,
        norm
    );
    let json = json!({
        "shape": shape.rows(),
        "row": unit.row,
        "col": unit.col,
        "element": element,
        "c_squared": unit.c_squared.to_string(),
        "norm": norm,
    });
    Ok(Report { text, json, ok: true })
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, Failure> {
    let level = match a.level {
        VerifyLevel::Fast => Level::Fast,
        VerifyLevel::Full => Level::Full,
    };
    let report = verify::run(a.d, level)?;
    let mut text = String::new();
    for p in &report.properties {
        let mark = if p.passed { "PASS" } else { "FAIL" };
        write!(text, "{mark} {} ({} cases)", p.name, p.cases).unwrap();
        if let Some(detail) = &p.detail {
            write!(text, ": {detail}").unwrap();
        }
        text.push('\n');
    }
    let ok = report.all_passed();
    writeln!(text, "{}", if ok { "all properties pass" } else { "some properties FAIL" }).unwrap();
    Ok(Report {
        text,
        json: serde_json::to_value(&report).expect("serializable"),
        ok,
    })
}
