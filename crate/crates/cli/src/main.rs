//! `patcount`: count, enumerate, tabulate and verify pattern-constrained
//! permutations and lattice paths, and apply the bijections between them.
//!
//! Exit codes: 0 success, 2 usage, 3 resource limit, 4 domain violation,
//! 5 verification failure or formula/oracle mismatch.

mod filter;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Number, Value};

use patcount::bijections::{self as bij, Decomposition};
use patcount::formulas::{self, CountFamily};
use patcount::oracle::{self, PermPredicate, PERM_CAP};
use patcount::verify::{run_suite, Suite};
use patcount::{BallotValue, Error, LatticePath, Permutation};

#[derive(Parser)]
#[command(name = "patcount", version, about = "Exact counts, bijections and brute-force checks for pattern-constrained permutations")]
struct Cli {
    /// Write data to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Objects {
    Perms,
    Dyck,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// Last two entries increasing.
    Last2up,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Kratt,
    KrattInv,
    One321,
    #[value(name = "two321-b")]
    Two321B,
    #[value(name = "two321-k")]
    Two321K,
    #[value(name = "one132-split", alias = "prop14")]
    One132Split,
    #[value(name = "one132-consecutive", alias = "lemma11")]
    One132Consecutive,
    #[value(name = "one132-ends", alias = "lemma12")]
    One132Ends,
    Phi,
    Returns,
    Nonfinal,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed form, the oracle, or both.
    Count {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value = "formula")]
        mode: Mode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Stream the permutations or Dyck paths of size n passing a filter.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long, value_enum)]
        filter_preset: Option<Preset>,
        #[arg(long, value_enum, default_value = "perms")]
        objects: Objects,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Apply a bijection (or its inverse) to one input.
    Biject {
        #[arg(long, value_enum)]
        name: MapName,
        /// A permutation ("2 1 3"), a path ("UUDD"), or for inverse
        /// decompositions the JSON object {"rho":[..],"sigma":[..],"param":k}.
        #[arg(long)]
        input: String,
        /// Extra parameter: i for phi and nonfinal, j for the inverse of returns.
        #[arg(long)]
        param: Option<usize>,
        #[arg(long)]
        inverse: bool,
        /// Apply the inverse to the image and require the input back.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Tabulate a family for n = 1..=nmax.
    Table {
        #[arg(long)]
        family: String,
        #[arg(long)]
        nmax: i64,
        #[arg(long, value_enum, default_value = "formula")]
        mode: Mode,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Run a named invariant suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 9)]
        nmax: usize,
    },
}

#[derive(Args)]
struct CapArg {
    /// Raise the permutation enumeration cap.
    #[arg(long = "cap", default_value_t = PERM_CAP)]
    value: usize,
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }

    fn mismatch(msg: impl Into<String>) -> Self {
        Failure { code: 5, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Unsupported(_) => 2,
            Error::ResourceLimit { .. } => 3,
            Error::Domain { .. } => 4,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: 1, msg: e.to_string() }
    }
}

type Out = Box<dyn Write>;
type CliResult = Result<(), Failure>;

fn number(v: &BallotValue) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integers are valid JSON numbers"))
}

fn json_line<T: Serialize>(out: &mut Out, v: &T) -> CliResult {
    serde_json::to_writer(&mut *out, v).map_err(|e| Failure { code: 1, msg: e.to_string() })?;
    writeln!(out)?;
    Ok(())
}

fn parse_family(s: &str) -> Result<CountFamily, Failure> {
    s.parse().map_err(|_| {
        let known: Vec<String> = CountFamily::named().iter().map(|f| f.to_string()).collect();
        Failure::usage(format!("unknown family `{s}`; known families: {}", known.join(", ")))
    })
}

fn oracle_value(family: CountFamily, n: i64, cap: usize) -> Result<BallotValue, Failure> {
    let n = usize::try_from(n).map_err(|_| Failure::usage("n must be nonnegative"))?;
    let f = oracle::family_filter(family, n);
    Ok(BallotValue::from(oracle::count_perms_with_cap(n, &f, cap)?))
}

struct Row {
    n: i64,
    formula: Option<BallotValue>,
    oracle: Option<BallotValue>,
}

impl Row {
    fn compute(family: CountFamily, n: i64, mode: Mode, cap: usize) -> Result<Row, Failure> {
        let formula = match mode {
            Mode::Oracle => None,
            _ => Some(formulas::count(family, n)?),
        };
        let oracle = match mode {
            Mode::Formula => None,
            _ => Some(oracle_value(family, n, cap)?),
        };
        Ok(Row { n, formula, oracle })
    }

    fn matches(&self) -> Option<bool> {
        match (&self.formula, &self.oracle) {
            (Some(f), Some(o)) => Some(f == o),
            _ => None,
        }
    }

    fn json(&self, family: CountFamily) -> Value {
        json!({
            "n": self.n,
            "family": family.to_string(),
            "formula": self.formula.as_ref().map(number),
            "oracle": self.oracle.as_ref().map(number),
            "match": self.matches(),
        })
    }
}

fn cmd_count(out: &mut Out, format: Format, family: &str, n: i64, mode: Mode, cap: usize) -> CliResult {
    let family = parse_family(family)?;
    if n < 1 {
        return Err(Failure::usage("n must be at least 1"));
    }
    let row = Row::compute(family, n, mode, cap)?;
    match format {
        Format::Json => json_line(out, &row.json(family))?,
        _ => {
            let parts: Vec<String> = [&row.formula, &row.oracle]
                .into_iter()
                .flatten()
                .map(|v| v.to_string())
                .chain(row.matches().map(|m| if m { "match" } else { "mismatch" }.to_string()))
                .collect();
            writeln!(out, "{}", parts.join(" / "))?;
        }
    }
    if row.matches() == Some(false) {
        return Err(Failure::mismatch(format!("{family} at n = {n}: formula and oracle differ")));
    }
    Ok(())
}

fn cmd_table(out: &mut Out, format: Format, family: &str, nmax: i64, mode: Mode, cap: usize) -> CliResult {
    let family = parse_family(family)?;
    if nmax < 1 {
        return Err(Failure::usage("nmax must be at least 1"));
    }
    let rows = (1..=nmax)
        .map(|n| Row::compute(family, n, mode, cap))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => {
            let v: Vec<Value> = rows.iter().map(|r| r.json(family)).collect();
            json_line(out, &v)?;
        }
        _ => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "family", "formula", "oracle", "match"])?;
            let show = |v: &Option<BallotValue>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
            for r in &rows {
                w.write_record([
                    r.n.to_string(),
                    family.to_string(),
                    show(&r.formula),
                    show(&r.oracle),
                    r.matches().map(|m| m.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    if let Some(r) = rows.iter().find(|r| r.matches() == Some(false)) {
        return Err(Failure::mismatch(format!("{family} at n = {}: formula and oracle differ", r.n)));
    }
    Ok(())
}

fn cmd_enumerate(
    out: &mut Out,
    format: Format,
    n: usize,
    expr: &str,
    preset: Option<Preset>,
    objects: Objects,
    cap: usize,
) -> CliResult {
    let usage = |e: filter::ParseError| Failure::usage(e.to_string());
    match objects {
        Objects::Perms => {
            let mut f = filter::parse_perm_filter(expr).map_err(usage)?;
            if preset == Some(Preset::Last2up) {
                f = f.and(PermPredicate::LastInc(2));
            }
            for p in oracle::enumerate_perms_with_cap(n, &f, cap)? {
                match format {
                    Format::Json => json_line(out, &p)?,
                    _ => writeln!(out, "{p}")?,
                }
            }
        }
        Objects::Dyck => {
            if preset.is_some() {
                return Err(Failure::usage("filter presets apply to permutations only"));
            }
            let f = filter::parse_path_filter(expr).map_err(usage)?;
            for d in oracle::enumerate_dyck(n, &f)? {
                match format {
                    Format::Json => json_line(out, &d)?,
                    _ => writeln!(out, "{d}")?,
                }
            }
        }
    }
    Ok(())
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    Ok(s.parse::<Permutation>()?)
}

fn parse_path(s: &str) -> Result<LatticePath, Failure> {
    Ok(s.parse::<LatticePath>()?)
}

fn parse_decomposition(s: &str) -> Result<Decomposition, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::usage(format!("bad decomposition JSON: {e}")))
}

/// A decomposition as JSON, or a bare permutation standing for `rho`.
fn read_decomposition(s: &str) -> Result<Decomposition, Failure> {
    if s.trim_start().starts_with('{') {
        parse_decomposition(s)
    } else {
        Ok(Decomposition { rho: parse_perm(s)?, sigma: None, param: -1 })
    }
}

fn need_param(param: Option<usize>, what: &str) -> Result<usize, Failure> {
    param.ok_or_else(|| Failure::usage(format!("--param {what} is required for this map")))
}

/// The image of one application, ready for printing and for feeding back
/// into the opposite direction.
enum Image {
    Perm(Permutation),
    Path(LatticePath),
    PathWithCount(LatticePath, usize),
    Decomp(Decomposition),
}

impl Image {
    fn write(&self, out: &mut Out, format: Format) -> CliResult {
        match (self, format) {
            (Image::Perm(p), Format::Json) => json_line(out, p),
            (Image::Perm(p), _) => Ok(writeln!(out, "{p}")?),
            (Image::Path(d), Format::Json) => {
                let st = d.stats();
                json_line(
                    out,
                    &json!({"path": d, "ascents": st.ascent_seq, "descents": st.descent_seq}),
                )
            }
            (Image::Path(d), _) => Ok(writeln!(out, "{d}")?),
            (Image::PathWithCount(d, j), Format::Json) => json_line(out, &json!({"path": d, "j": j})),
            (Image::PathWithCount(d, j), _) => Ok(writeln!(out, "{d} {j}")?),
            (Image::Decomp(d), _) => json_line(out, d),
        }
    }

    /// The same object rendered as an `--input` string.
    fn as_input(&self) -> String {
        match self {
            Image::Perm(p) => p.to_string(),
            Image::Path(d) | Image::PathWithCount(d, _) => d.to_string(),
            Image::Decomp(d) => serde_json::to_string(d).unwrap(),
        }
    }

    fn count(&self) -> Option<usize> {
        match self {
            Image::PathWithCount(_, j) => Some(*j),
            _ => None,
        }
    }
}

fn apply(name: MapName, input: &str, param: Option<usize>, inverse: bool) -> Result<Image, Failure> {
    use MapName::*;
    let (name, inverse) = match (name, inverse) {
        (KrattInv, inv) => (Kratt, !inv),
        other => other,
    };
    Ok(match (name, inverse) {
        (Kratt, false) => Image::Path(bij::kratt_forward(&parse_perm(input)?)?),
        (Kratt, true) => Image::Perm(bij::kratt_inverse(&parse_path(input)?)?),
        (One321, false) => Image::Decomp(bij::one321_decompose(&parse_perm(input)?)?),
        (One321, true) => Image::Perm(bij::one321_compose(&parse_decomposition(input)?)?),
        (Two321B, false) => Image::Decomp(bij::two321_common_b_decompose(&parse_perm(input)?)?),
        (Two321B, true) => Image::Perm(bij::two321_common_b_compose(&parse_decomposition(input)?)?),
        (Two321K, false) => Image::Decomp(bij::two321_distinct_b_decompose(&parse_perm(input)?)?),
        (Two321K, true) => Image::Perm(bij::two321_distinct_b_compose(&parse_decomposition(input)?)?),
        (One132Split, false) => Image::Decomp(bij::one132_split(&parse_perm(input)?)?),
        (One132Split, true) => Image::Perm(bij::one132_join(&parse_decomposition(input)?)?),
        (One132Consecutive, false) => {
            Image::Decomp(bij::one132_consecutive_decompose(&parse_perm(input)?)?)
        }
        (One132Consecutive, true) => {
            Image::Perm(bij::one132_consecutive_compose(&parse_decomposition(input)?)?)
        }
        (One132Ends, false) => {
            let p = parse_perm(input)?;
            let w2 = bij::one132_first_second_last_decompose(&p)?;
            Image::Decomp(Decomposition { rho: w2, sigma: None, param: p.len() as i64 })
        }
        (One132Ends, true) => {
            Image::Perm(bij::one132_first_second_last_compose(&read_decomposition(input)?.rho)?)
        }
        (Phi, false) => {
            Image::Perm(bij::phi_last_increasing(&parse_perm(input)?, need_param(param, "i")?)?)
        }
        (Phi, true) => Image::Perm(bij::phi_last_increasing_inverse(
            &parse_perm(input)?,
            need_param(param, "i")?,
        )?),
        (Returns, false) => {
            let (d, j) = bij::returns_deletion(&parse_path(input)?)?;
            Image::PathWithCount(d, j)
        }
        (Returns, true) => {
            Image::Path(bij::returns_insertion(&parse_path(input)?, need_param(param, "j")?)?)
        }
        (Nonfinal, false) => {
            Image::Path(bij::nonfinal_transfer(&parse_path(input)?, need_param(param, "i")?)?)
        }
        (Nonfinal, true) => Image::Path(bij::nonfinal_transfer_inverse(
            &parse_path(input)?,
            need_param(param, "i")?,
        )?),
        (KrattInv, _) => unreachable!(),
    })
}

fn cmd_biject(
    out: &mut Out,
    format: Format,
    name: MapName,
    input: &str,
    param: Option<usize>,
    inverse: bool,
    roundtrip: bool,
) -> CliResult {
    let image = apply(name, input, param, inverse)?;
    image.write(out, format)?;
    if roundtrip {
        let back_param = image.count().or(param);
        let back = apply(name, &image.as_input(), back_param, !inverse)?;
        let same = match &back {
            Image::Decomp(d) => {
                let orig = read_decomposition(input)?;
                d.rho == orig.rho && d.sigma == orig.sigma
            }
            _ => {
                back.as_input() == normalize(name, input, inverse)?
                    && (back.count().is_none() || back.count() == param)
            }
        };
        if !same {
            return Err(Failure::mismatch(format!(
                "round trip failed: {} came back as {}",
                input.trim(),
                back.as_input()
            )));
        }
        eprintln!("roundtrip ok");
    }
    Ok(())
}

/// Canonical rendering of an `--input` so that round trips compare text.
fn normalize(name: MapName, input: &str, inverse: bool) -> Result<String, Failure> {
    use MapName::*;
    let path_input = match name {
        Kratt => inverse,
        KrattInv => !inverse,
        Returns | Nonfinal => true,
        _ => false,
    };
    Ok(if path_input {
        parse_path(input)?.to_string()
    } else if input.trim_start().starts_with('{') {
        let d = parse_decomposition(input)?;
        serde_json::to_string(&d).unwrap()
    } else {
        parse_perm(input)?.to_string()
    })
}

fn cmd_verify(out: &mut Out, format: Format, suite: &str, nmax: usize) -> CliResult {
    let suite: Suite = suite
        .parse()
        .map_err(|_| Failure::usage(format!("unknown suite `{suite}`; use formulas, bijections, identities or all")))?;
    let report = run_suite(suite, nmax)?;
    match format {
        Format::Json => json_line(out, &report)?,
        _ => {
            for c in &report.checks {
                if c.passed {
                    writeln!(out, "PASS {}", c.name)?;
                } else {
                    writeln!(out, "FAIL {}: {}", c.name, c.detail)?;
                }
            }
            writeln!(out, "{} passed, {} failed", report.passed(), report.failed())?;
        }
    }
    if !report.all_passed() {
        return Err(Failure::mismatch(format!("{} checks failed", report.failed())));
    }
    Ok(())
}

fn configure_threads() -> CliResult {
    let Ok(v) = std::env::var("PATCOUNT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::usage(format!("PATCOUNT_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure { code: 1, msg: e.to_string() })
}

fn run(cli: Cli) -> CliResult {
    configure_threads()?;
    let mut out: Out = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let fmt = |default: Format| cli.format.unwrap_or(default);
    let result = match cli.command {
        Command::Count { ref family, n, mode, ref cap } => {
            cmd_count(&mut out, fmt(Format::Text), family, n, mode, cap.value)
        }
        Command::Enumerate { n, ref filter, filter_preset, objects, ref cap } => {
            cmd_enumerate(&mut out, fmt(Format::Text), n, filter, filter_preset, objects, cap.value)
        }
        Command::Biject { name, ref input, param, inverse, roundtrip } => {
            cmd_biject(&mut out, fmt(Format::Text), name, input, param, inverse, roundtrip)
        }
        Command::Table { ref family, nmax, mode, ref cap } => {
            cmd_table(&mut out, fmt(Format::Csv), family, nmax, mode, cap.value)
        }
        Command::Verify { ref suite, nmax } => cmd_verify(&mut out, fmt(Format::Text), suite, nmax),
    };
    out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
