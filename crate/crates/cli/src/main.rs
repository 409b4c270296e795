//! `resolvd` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure,
//! 3 enumeration budget exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use resolvd::classify::classify_full;
use resolvd::constructions::{
    bibd_complement, construct_t25, construct_t26, construct_t27, construct_t28, construct_t29,
    construct_t30, design_to_array, parse_array, verify_ba, verify_gba, ArrayFile, Constructed,
};
use resolvd::design::{format_design, parse_design, DesignSetting, ResolvableDesign};
use resolvd::fixtures;
use resolvd::hadamard::HadamardMatrix;
use resolvd::optimality::theta_params;
use resolvd::report::{self, Report};
use resolvd::search::{
    budget_from_env, enumerate, interchange_search, verify_theorem, EnumerationSpec,
    InterchangeSpec, SearchCriterion,
};
use resolvd::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "resolvd", version, about = "Resolvable two-block designs: analysis, construction and optimality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Kv,
}

#[derive(Args)]
struct Output {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a design (or array) file and report spectra, criteria and verdicts.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Build a design from a Hadamard-matrix recipe or a BIBD.
    Construct(ConstructArgs),
    /// Convert between the design and array file formats.
    Convert {
        file: PathBuf,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustively enumerate a setting (or run the interchange heuristic).
    Enumerate(EnumerateArgs),
    /// Check a theorem against enumeration, or verify the bundled arrays.
    Verify(VerifyArgs),
    /// Compare two designs of the same setting.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// 25, 26, 27, 28, 29, 30 or bibd-complement.
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    v: usize,
    /// Replicates (not used by bibd-complement).
    #[arg(long)]
    r: Option<usize>,
    /// Hadamard matrix file to use instead of the built-in one.
    #[arg(long)]
    hadamard: Option<PathBuf>,
    /// BIBD blocks, one per line (bibd-complement only).
    #[arg(long)]
    blocks: Option<PathBuf>,
    /// Writes PREFIX.design and PREFIX.array (PREFIX.array only for arrays).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct EnumerateArgs {
    /// v,r,k1,k2
    #[arg(long)]
    setting: String,
    #[arg(long, default_value = "E")]
    criterion: String,
    /// Run even when the candidate count exceeds the budget.
    #[arg(long)]
    force: bool,
    /// Stop after this many candidates.
    #[arg(long)]
    limit: Option<u128>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Let replicate 1 vary too (no symmetry reduction).
    #[arg(long)]
    all_first: bool,
    /// Interchange hill-climbing instead of enumeration.
    #[arg(long)]
    interchange: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "fixtures", requires = "setting")]
    theorem: Option<String>,
    /// v,r,k1,k2
    #[arg(long)]
    setting: Option<String>,
    /// Verify the bundled grouped arrays.
    #[arg(long)]
    fixtures: bool,
    #[arg(long)]
    force: bool,
    #[arg(long)]
    jobs: Option<usize>,
}

/// Command failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::NotHadamard(_)
            | Error::NoHadamard(_)
            | Error::NoPaleyConstruction(_)
            | Error::NotPowerOfTwo(_)
            | Error::NoSubmatrixFound { .. }
            | Error::BadColumnCounts { .. }
            | Error::NotABibd(_)
            | Error::NotEOptimal(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Array files have a `v r theta [groups=..]` header; design files `v r k1 k2`.
fn is_array_text(text: &str) -> bool {
    let header = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let fields: Vec<&str> = header.split_whitespace().collect();
    fields.len() == 3 || fields.iter().any(|f| f.starts_with("groups="))
}

fn load_design(path: &Path) -> Result<ResolvableDesign, Failure> {
    let text = read(path)?;
    let d = if is_array_text(&text) {
        parse_array(&text)?.to_design()?
    } else {
        parse_design(&text)?
    };
    Ok(d)
}

fn parse_setting(s: &str) -> Result<DesignSetting, Failure> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("setting {s:?} must be v,r,k1,k2")))?;
    let [v, r, k1, k2] = parts[..] else {
        return Err(usage(format!("setting {s:?} must be v,r,k1,k2")));
    };
    Ok(DesignSetting::new(v, r, k1, k2)?)
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Kv => print!("{}", report.to_kv()),
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| usage(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn analyze(file: &Path, out: &Output) -> CmdResult {
    let d = load_design(file)?;
    emit(&report::analyze(&d)?, out.format);
    Ok(ExitCode::SUCCESS)
}

fn parse_blocks(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(n, l)| {
            l.split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| usage(format!("blocks line {n}: expected treatment numbers")))
        })
        .collect()
}

/// Re-verifies a construction independently of the recipe.
fn verify_constructed(c: &Constructed) -> Result<(), Failure> {
    let (ok, theta) = match c.groups() {
        Some(g) => {
            let chk = verify_gba(c.array(), g);
            (chk.is_gba, chk.theta)
        }
        None => {
            let chk = verify_ba(c.array());
            (chk.is_ba, chk.theta)
        }
    };
    if !ok || theta != Some(c.theta()) {
        return Err(Failure {
            code: EXIT_VERIFY,
            message: format!("constructed array failed verification (theta {theta:?})"),
        });
    }
    Ok(())
}

fn construct(args: &ConstructArgs) -> CmdResult {
    let given = match &args.hadamard {
        Some(p) => Some(HadamardMatrix::parse(&read(p)?)?),
        None => None,
    };
    let h = given.as_ref();
    let (v, theorem) = (args.v, args.theorem.trim().to_ascii_lowercase());
    if theorem == "bibd-complement" {
        let path = args
            .blocks
            .as_ref()
            .ok_or_else(|| usage("bibd-complement needs --blocks FILE"))?;
        let d = bibd_complement(v, &parse_blocks(&read(path)?)?)?;
        let text = format_design(&d);
        match &args.out {
            Some(prefix) => write(&prefix.with_extension("design"), &text)?,
            None => print!("{text}"),
        }
        let c = classify_full(&d);
        println!("# {} {}", d.setting(), c.class);
        return Ok(ExitCode::SUCCESS);
    }
    let r = args
        .r
        .ok_or_else(|| usage(format!("--theorem {theorem} needs --r")))?;
    let built: Constructed = with_jobs(args.jobs, || -> resolvd::Result<Constructed> {
        Ok(match theorem.as_str() {
            "25" => construct_t25(v, r, h)?.into(),
            "26" => construct_t26(v, r, h)?.into(),
            "27" => construct_t27(v, r, h)?.into(),
            "28" => construct_t28(v, r, h)?,
            "29" => construct_t29(v, r, h)?.into(),
            "30" => construct_t30(v, r, h)?.into(),
            other => {
                return Err(Error::BadParams(format!(
                    "unknown construction {other:?} (expected 25..30 or bibd-complement)"
                )))
            }
        })
    })??;
    verify_constructed(&built)?;
    let d = built.to_design()?;
    let array_text = built.to_file().to_string();
    let design_text = format_design(&d);
    match &args.out {
        Some(prefix) => {
            write(&prefix.with_extension("array"), &array_text)?;
            write(&prefix.with_extension("design"), &design_text)?;
        }
        None => {
            print!("{array_text}");
            print!("{design_text}");
        }
    }
    let name = match built.groups() {
        Some(g) => {
            let t: Vec<String> = g.iter().map(usize::to_string).collect();
            format!("GBA({v},({}),2;{})", t.join(","), built.theta())
        }
        None => format!("BA({v},{r},2;{})", built.theta()),
    };
    let analysis = report::analyze(&d)?;
    println!(
        "# {name} {} {}",
        d.setting(),
        analysis.scalar("headline").unwrap_or("")
    );
    Ok(ExitCode::SUCCESS)
}

/// Design to array needs a BA, or a group-affine design whose groups are
/// made contiguous first.
fn design_to_array_file(d: &ResolvableDesign) -> Result<ArrayFile, Failure> {
    let a = design_to_array(d);
    let chk = verify_ba(&a);
    if let (true, Some(theta)) = (chk.is_ba, chk.theta) {
        return Ok(ArrayFile {
            array: a,
            theta,
            groups: None,
        });
    }
    let c = classify_full(d);
    let not_array = || Failure {
        code: EXIT_VERIFY,
        message: format!("{} design is neither a balanced nor a grouped balanced array", c.class),
    };
    let g = c.group.as_ref().ok_or_else(not_array)?;
    let order: Vec<usize> = g.groups.iter().flatten().copied().collect();
    let mut switched = d.clone();
    // Classification may have exchanged blocks (k1 = k2); mirror that first.
    if !c.switched.is_empty() {
        let blocks = d
            .replicates()
            .iter()
            .enumerate()
            .map(|(i, rep)| {
                if c.switched.contains(&(i + 1)) {
                    rep.block2().to_vec()
                } else {
                    rep.block1().to_vec()
                }
            })
            .collect();
        switched = ResolvableDesign::from_block1(d.setting(), blocks)?;
    }
    let a = design_to_array(&switched.permute_replicates(&order));
    let chk = verify_gba(&a, &g.t);
    match (chk.is_gba, chk.theta) {
        (true, Some(theta)) => Ok(ArrayFile {
            array: a,
            theta,
            groups: Some(g.t.clone()),
        }),
        _ => Err(not_array()),
    }
}

fn convert(file: &Path, output: Option<&Path>) -> CmdResult {
    let text = read(file)?;
    let converted = if is_array_text(&text) {
        format_design(&parse_array(&text)?.to_design()?)
    } else {
        design_to_array_file(&parse_design(&text)?)?.to_string()
    };
    match output {
        Some(p) => write(p, &converted)?,
        None => print!("{converted}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn enumerate_cmd(args: &EnumerateArgs) -> CmdResult {
    let setting = parse_setting(&args.setting)?;
    let criterion: SearchCriterion = args.criterion.parse()?;
    let res = if args.interchange {
        let mut spec = InterchangeSpec::new(setting, criterion, args.seed);
        if let Some(n) = args.iterations {
            spec.iterations = n;
        }
        if let Some(n) = args.restarts {
            spec.restarts = n;
        }
        with_jobs(args.jobs, || interchange_search(&spec))??
    } else {
        let mut spec = EnumerationSpec::new(setting, criterion);
        spec.force = args.force;
        spec.limit = args.limit;
        spec.jobs = args.jobs;
        spec.fix_first_replicate = !args.all_first;
        spec.budget = budget_from_env();
        enumerate(&spec)?
    };
    emit(&report::search_summary(&res), args.out.format);
    Ok(ExitCode::SUCCESS)
}

fn verify(args: &VerifyArgs) -> CmdResult {
    if args.fixtures {
        let mut all = true;
        for (name, file) in fixtures::grouped_arrays() {
            let groups = file.groups.clone().unwrap_or_default();
            let chk = verify_gba(&file.array, &groups);
            let setting = file.setting()?;
            let theta_bar = theta_params(&setting).theta_bar;
            let ok = chk.is_gba && chk.theta == Some(file.theta) && file.theta == theta_bar;
            all &= ok;
            println!(
                "{} fixture={name} setting={setting} gba={} theta={} theta_bar={theta_bar}",
                if ok { "PASS" } else { "FAIL" },
                chk.is_gba,
                chk.theta.map_or_else(|| "none".to_string(), |t| t.to_string()),
            );
        }
        return Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY) });
    }
    let (Some(id), Some(setting)) = (&args.theorem, &args.setting) else {
        return Err(usage("verify needs --fixtures or --theorem ID --setting v,r,k1,k2"));
    };
    let mut spec = EnumerationSpec::new(parse_setting(setting)?, SearchCriterion::E);
    spec.force = args.force;
    spec.jobs = args.jobs;
    let rep = verify_theorem(id, &spec)?;
    print!("{}", report::theorem_lines(&rep));
    Ok(if rep.pass() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY) })
}

fn compare(first: &Path, second: &Path, out: &Output) -> CmdResult {
    let (a, b) = (load_design(first)?, load_design(second)?);
    emit(&report::compare(&a, &b)?, out.format);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Analyze { file, out } => analyze(file, out),
        Command::Construct(args) => construct(args),
        Command::Convert { file, output } => convert(file, output.as_deref()),
        Command::Enumerate(args) => enumerate_cmd(args),
        Command::Verify(args) => verify(args),
        Command::Compare { first, second, out } => compare(first, second, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
