//! `symspace`: exact computations on sequence spaces from the command line.
//!
//! Every command prints one JSON document. Failures print
//! `{"error": {"kind": ..., "message": ...}}` instead and exit nonzero.

mod check;
mod input;

use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use symspace::coding::{self, CodingMap};
use symspace::dynamics::{self, validate_op_table, TermwiseStructure};
use symspace::integration::{self, approximate_integral, integrate_step, ModulusFunction};
use symspace::json::{
    encode_word, BiDescriptorJson, DescriptorJson, MeasureJson, OpTableJson, StepFunctionJson,
};
use symspace::measure::{self, CylinderMeasure, Measure};
use symspace::metric::{self, UltrametricParams};
use symspace::rational::format_rational;
use symspace::{Alphabet, Cylinder, LevelSystem, Rational, DEFAULT_BUDGET};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Library(#[from] symspace::Error),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Json(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn kind(&self) -> String {
        match self {
            CliError::Library(e) => {
                let debug = format!("{e:?}");
                let end = debug.find(|c: char| !c.is_alphanumeric()).unwrap_or(debug.len());
                debug[..end].to_string()
            }
            CliError::Io(_) => "Io".into(),
            CliError::Json(_) => "Json".into(),
            CliError::Usage(_) => "Usage".into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "symspace", version, about = "Exact computations on sequence spaces")]
struct Cli {
    /// Contraction ratio of the ultrametric, `p/q` strictly between 0 and 1.
    #[arg(long, global = true, default_value = "1/2")]
    ratio: String,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Single-character symbol labels shared by every level.
    #[arg(long, global = true, default_value = "01")]
    alphabet: String,

    /// Level system as JSON (inline or file); overrides `--alphabet`.
    #[arg(long, global = true)]
    system: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapArg {
    Tau,
    Beta,
}

impl From<MapArg> for CodingMap {
    fn from(m: MapArg) -> Self {
        match m {
            MapArg::Tau => CodingMap::Tau,
            MapArg::Beta => CodingMap::Beta,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intervals of the j-th stage of the middle-thirds construction.
    Stage { j: usize },
    /// Encode binary points as rationals or decode rationals.
    Code(CodeArgs),
    /// Distance between two points.
    Dist(DistArgs),
    /// Shift maps, preimages and orbits.
    Shift(ShiftArgs),
    /// Validate an operation table or apply it termwise.
    Algebra(AlgebraArgs),
    /// Query a measure.
    Measure(MeasureArgs),
    /// Integrate a step function, or approximate the integral of a coding map.
    Integrate(IntegrateArgs),
    /// Run the built-in invariant suite.
    Check {
        /// Run every check (the default).
        #[arg(long)]
        all: bool,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("op").required(true).args(["encode", "decode", "cylinder"])))]
struct CodeArgs {
    #[arg(long, value_enum)]
    map: MapArg,
    /// Binary point `{"pre": [...], "per": [...]}`.
    #[arg(long)]
    encode: Option<String>,
    /// Rational `p/q` in [0, 1].
    #[arg(long, allow_hyphen_values = true)]
    decode: Option<String>,
    /// Image interval of the cylinder of a binary word.
    #[arg(long)]
    cylinder: Option<String>,
}

#[derive(Args, Debug)]
struct DistArgs {
    x: String,
    y: String,
    /// Points are two-sided: `{"left", "center", "right", "origin"}`.
    #[arg(long)]
    two_sided: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").args(["preimages", "orbit", "inverse"])))]
struct ShiftArgs {
    x: String,
    #[arg(long)]
    two_sided: bool,
    /// Two-sided only: apply the inverse shift.
    #[arg(long, requires = "two_sided")]
    inverse: bool,
    /// One-sided only: all points shifting onto `x`.
    #[arg(long, conflicts_with = "two_sided")]
    preimages: bool,
    /// One-sided only: the first N iterates and the cycle structure.
    #[arg(long, value_name = "N", conflicts_with = "two_sided")]
    orbit: Option<usize>,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    /// Operation table `{"symbols", "table", "identity"?, "inverse"?}`.
    table: String,
    /// Multiply two one-sided points termwise.
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    apply: Option<Vec<String>>,
    /// Termwise inverse of a one-sided point.
    #[arg(long, conflicts_with = "apply")]
    invert: Option<String>,
    /// Whether the depth-M prefix of a product depends only on depth-M prefixes.
    #[arg(long, value_name = "M", conflicts_with_all = ["apply", "invert"])]
    locality: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("query").required(true)
    .args(["cylinder", "clopen", "consistency", "tree", "pushforward", "total"])))]
struct MeasureArgs {
    /// Measure JSON (product, tree or point).
    #[arg(long)]
    file: String,
    /// Mass of one cylinder, e.g. `01`.
    #[arg(long)]
    cylinder: Option<String>,
    /// Mass of a union of cylinders, counted once.
    #[arg(long, num_args = 1..)]
    clopen: Option<Vec<String>>,
    /// Check that every mass equals the sum of its children's.
    #[arg(long)]
    consistency: bool,
    /// Materialize all masses down to this depth.
    #[arg(long, value_name = "DEPTH")]
    tree: Option<usize>,
    /// Images of the depth-`--depth` cylinders under a coding map.
    #[arg(long, value_enum, requires = "depth")]
    pushforward: Option<MapArg>,
    #[arg(long)]
    depth: Option<usize>,
    /// Total mass.
    #[arg(long)]
    total: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("integrand").required(true).args(["step", "approximate"])))]
struct IntegrateArgs {
    /// Step function `{"depth": m, "values": {...}}`.
    #[arg(long)]
    step: Option<String>,
    #[arg(long)]
    measure: String,
    /// Riemann sum of a coding map sampled at `w 0 0 ...`.
    #[arg(long, value_enum, requires = "depth")]
    approximate: Option<MapArg>,
    #[arg(long)]
    depth: Option<usize>,
    /// Lipschitz constant `c` of the modulus `omega(r) = c r`.
    #[arg(long, default_value = "1")]
    lipschitz: String,
}

fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn descriptor_json(x: &symspace::SequenceDescriptor, system: &LevelSystem) -> Result<Value, CliError> {
    Ok(serde_json::to_value(DescriptorJson::from_descriptor(x, system)?).expect("serializable"))
}

fn two_sided_alphabet(system: &LevelSystem) -> Result<Alphabet, CliError> {
    system.uniform_alphabet().cloned().ok_or(CliError::Library(symspace::Error::NotHomogeneous))
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let system = input::system(&cli.alphabet, cli.system.as_deref())?;
    let params = UltrametricParams::new(input::rational(&cli.ratio)?)?;
    match &cli.command {
        Command::Stage { j } => Ok(serde_json::to_value(coding::stage_intervals(*j)?).expect("serializable")),
        Command::Code(args) => code(args),
        Command::Dist(args) => {
            let d = if args.two_sided {
                let alphabet = two_sided_alphabet(&system)?;
                let x = input::read_json::<BiDescriptorJson>(&args.x)?.to_descriptor(&alphabet)?;
                let y = input::read_json::<BiDescriptorJson>(&args.y)?.to_descriptor(&alphabet)?;
                metric::two_sided_distance(&x, &y, &params)
            } else {
                let x = input::read_json::<DescriptorJson>(&args.x)?.to_descriptor(&system)?;
                let y = input::read_json::<DescriptorJson>(&args.y)?.to_descriptor(&system)?;
                metric::distance(&x, &y, &params)
            };
            Ok(rational_json(&d))
        }
        Command::Shift(args) => shift(args, &system),
        Command::Algebra(args) => algebra(args),
        Command::Measure(args) => measure(args, &system),
        Command::Integrate(args) => integrate(args, &system, &params),
        Command::Check { .. } => {
            let report = check::run_all();
            Ok(serde_json::to_value(report).expect("serializable"))
        }
    }
}

fn code(args: &CodeArgs) -> Result<Value, CliError> {
    let map = CodingMap::from(args.map);
    if let Some(x) = &args.encode {
        let x = input::read_json::<DescriptorJson>(x)?.to_binary_point()?;
        return Ok(rational_json(&coding::encode(map, &x)));
    }
    if let Some(w) = &args.cylinder {
        let w = input::word(w, &LevelSystem::binary())?;
        return Ok(serde_json::to_value(coding::image_interval(map, &w)?).expect("serializable"));
    }
    let q = input::rational(args.decode.as_deref().expect("clap requires one operation"))?;
    let bin = LevelSystem::binary();
    match map {
        CodingMap::Beta => descriptor_json(coding::beta_decode(&q)?.descriptor(), &bin),
        CodingMap::Tau => match coding::tau_decode(&q)? {
            Some(x) => descriptor_json(x.descriptor(), &bin),
            None => Ok(json!({ "member": false })),
        },
    }
}

fn shift(args: &ShiftArgs, system: &LevelSystem) -> Result<Value, CliError> {
    if args.two_sided {
        let alphabet = two_sided_alphabet(system)?;
        let x = input::read_json::<BiDescriptorJson>(&args.x)?.to_descriptor(&alphabet)?;
        let y = if args.inverse { dynamics::unshift_two_sided(&x) } else { dynamics::shift_two_sided(&x) };
        return Ok(serde_json::to_value(BiDescriptorJson::from_descriptor(&y, &alphabet)?).expect("serializable"));
    }
    let x = input::read_json::<DescriptorJson>(&args.x)?.to_descriptor(system)?;
    if args.preimages {
        let points = dynamics::shift_preimages(&x, system)?;
        let out = points.iter().map(|p| descriptor_json(p, system)).collect::<Result<Vec<_>, _>>()?;
        return Ok(Value::Array(out));
    }
    if let Some(n) = args.orbit {
        let o = dynamics::orbit(&x, n, system)?;
        let points = o.points.iter().map(|p| descriptor_json(p, system)).collect::<Result<Vec<_>, _>>()?;
        return Ok(json!({ "points": points, "preperiod": o.preperiod, "cycle": o.cycle }));
    }
    descriptor_json(&dynamics::shift_one_sided(&x, system)?, system)
}

fn algebra(args: &AlgebraArgs) -> Result<Value, CliError> {
    let table = input::read_json::<OpTableJson>(&args.table)?.to_table()?;
    let point = |arg: &str, s: &TermwiseStructure| -> Result<_, CliError> {
        Ok(input::read_json::<DescriptorJson>(arg)?.to_descriptor(&s.level_system())?)
    };
    if let Some(pair) = &args.apply {
        let s = TermwiseStructure::homogeneous(table)?;
        let z = dynamics::termwise_op(&point(&pair[0], &s)?, &point(&pair[1], &s)?, &s)?;
        return descriptor_json(&z, &s.level_system());
    }
    if let Some(x) = &args.invert {
        let table = if table.inverses().is_some() { table } else { table.into_group()? };
        let s = TermwiseStructure::homogeneous(table)?;
        let z = dynamics::termwise_inverse(&point(x, &s)?, &s)?;
        return descriptor_json(&z, &s.level_system());
    }
    if let Some(m) = args.locality {
        let s = TermwiseStructure::homogeneous(table)?;
        return Ok(json!({ "local": dynamics::locality_check(&s, m)? }));
    }
    let r = validate_op_table(&table);
    let label = |s| table.alphabet().label(s).cloned();
    Ok(json!({
        "associative": r.associative,
        "has_identity": r.has_identity,
        "is_group": r.is_group,
        "identity": r.identity.and_then(label),
        "counterexample": r.counterexample.map(|(a, b, c)| [label(a), label(b), label(c)]),
    }))
}

fn measure(args: &MeasureArgs, system: &LevelSystem) -> Result<Value, CliError> {
    let mu: Measure = input::read_json::<MeasureJson>(&args.file)?.to_measure(system)?;
    let sys = mu.system().clone();
    if let Some(w) = &args.cylinder {
        return Ok(rational_json(&mu.cylinder_mass(&input::word(w, &sys)?)?));
    }
    if let Some(words) = &args.clopen {
        let cylinders = words
            .iter()
            .map(|w| Ok(Cylinder::new(input::word(w, &sys)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        return Ok(rational_json(&measure::clopen_mass(&mu, &cylinders)?));
    }
    if args.total {
        return Ok(rational_json(&mu.total_mass()));
    }
    if let Some(depth) = args.tree {
        let tree = measure::measure_to_tree(&mu, depth, DEFAULT_BUDGET)?;
        return Ok(serde_json::to_value(MeasureJson::from_tree(&tree)?).expect("serializable"));
    }
    if let Some(map) = args.pushforward {
        let depth = args.depth.expect("clap requires --depth");
        let pushed = measure::pushforward_intervals(&mu, map.into(), depth, DEFAULT_BUDGET)?;
        let out: Vec<Value> = pushed
            .iter()
            .map(|(iv, m)| json!({ "lo": format_rational(&iv.lo), "hi": format_rational(&iv.hi), "mass": format_rational(m) }))
            .collect();
        return Ok(Value::Array(out));
    }
    // consistency: trees are checked as stored, other measures down to --depth
    let tree = match &mu {
        Measure::Tree(t) => t.clone(),
        other => measure::measure_to_tree(other, args.depth.or(other.defined_depth()).unwrap_or(4), DEFAULT_BUDGET)?,
    };
    let violations = measure::check_consistency(&tree)
        .into_iter()
        .map(|v| {
            Ok(json!({
                "word": encode_word(&v.word, &sys)?,
                "mass": format_rational(&v.mass),
                "children": format_rational(&v.children_total),
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(json!({ "consistent": violations.is_empty(), "violations": violations }))
}

fn integrate(args: &IntegrateArgs, system: &LevelSystem, params: &UltrametricParams) -> Result<Value, CliError> {
    let mu = input::read_json::<MeasureJson>(&args.measure)?.to_measure(system)?;
    if let Some(step) = &args.step {
        let f = input::read_json::<StepFunctionJson>(step)?.to_step(mu.system())?;
        return Ok(rational_json(&integrate_step(&f, &mu)?));
    }
    let map = CodingMap::from(args.approximate.expect("clap requires an integrand"));
    let depth = args.depth.expect("clap requires --depth");
    let c = input::rational(&args.lipschitz)?;
    let omega = ModulusFunction::lipschitz(c);
    let sample = |w: &[symspace::Symbol]| {
        let x = coding::BinaryPoint::new(integration::zero_extension(w)).expect("binary words");
        coding::encode(map, &x)
    };
    if let Some(l) = (1..=depth).find(|&l| mu.system().size_at(l) != 2) {
        let found = mu.system().size_at(l);
        return Err(symspace::Error::AlphabetSize { expected: "2".into(), found }.into());
    }
    let a = approximate_integral(sample, &omega, &mu, depth, params)?;
    Ok(json!({ "value": format_rational(&a.value), "error_bound": format_rational(&a.error_bound) }))
}

fn emit_error(kind: &str, message: &str) {
    println!("{}", json!({ "error": { "kind": kind, "message": message } }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let message = e.render().to_string();
            emit_error("Usage", message.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(value) => {
            let failed = matches!(&cli.command, Command::Check { .. })
                && value.get("failed").and_then(Value::as_u64).is_some_and(|n| n > 0);
            println!("{value}");
            if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            emit_error(&e.kind(), &e.to_string());
            ExitCode::FAILURE
        }
    }
}
