//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use exph_core::persistence::{complex_barcode, filtered_jordan, jordan_unfiltered};
use exph_core::sparse::lu_exchange;
use exph_core::{
    morse, oracle, rips, Barcode, BarcodeOptions, Error, FilteredComplex, GradedMatrix, Modulus,
    PivotRule,
};

use crate::formats;

#[derive(Debug, Parser)]
#[command(
    name = "exph",
    version,
    about = "Exact persistent homology over prime fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Persistence barcode of a point cloud, distance matrix or complex.
    Barcode(BarcodeArgs),
    /// L·D·U factorization of a matrix fixture.
    Lu(LuArgs),
    /// Apparent-pair Morse reduction of a complex.
    Morse(MorseArgs),
    /// Jordan basis of a square-zero matrix fixture.
    Jordan(JordanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Points,
    Distances,
    Complex,
    Fixture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ComplexInput {
    /// Input file.
    pub input: PathBuf,
    /// Input kind; inferred from the extension when omitted (.json is a
    /// complex, anything else a point cloud).
    #[arg(long, value_enum)]
    pub kind: Option<InputKind>,
    /// Prime field characteristic.
    #[arg(long, default_value_t = 2)]
    pub field: u64,
    /// Largest simplex dimension of the Rips complex.
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Largest edge length of the Rips complex.
    #[arg(long)]
    pub max_scale: Option<f64>,
    /// Shuffle ties in the filtration with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Augment with the empty simplex (reduced homology).
    #[arg(long)]
    pub reduced: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BarcodeArgs {
    #[command(flatten)]
    pub input: ComplexInput,
    /// Skip the Morse pre-reduction.
    #[arg(long)]
    pub no_reduce: bool,
    /// Keep zero-length intervals.
    #[arg(long)]
    pub keep_zero: bool,
    /// Write the change-of-basis matrix as a fixture to this path.
    #[arg(long)]
    pub dump_basis: Option<PathBuf>,
    /// Recompute with the reference algorithm and fail on any difference.
    #[arg(long)]
    pub oracle_check: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Output path; standard output when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LuArgs {
    pub input: PathBuf,
    /// Use the lexicographic pivot rule instead of Markowitz.
    #[arg(long)]
    pub lexicographic: bool,
    /// Directory receiving L.txt, D.txt and U.txt.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct MorseArgs {
    #[command(flatten)]
    pub input: ComplexInput,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct JordanArgs {
    pub input: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub enum Failure {
    Usage(String),
    Input(anyhow::Error),
    Invariant(anyhow::Error),
    OracleMismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Input(_) => 2,
            Failure::Invariant(_) => 3,
            Failure::OracleMismatch(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::OracleMismatch(m) => write!(f, "{m}"),
            Failure::Input(e) | Failure::Invariant(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        let invariant = matches!(
            e.downcast_ref::<Error>(),
            Some(
                Error::NonZeroSquare
                    | Error::NonMonotone(..)
                    | Error::NotTwoNilpotent
                    | Error::NotNilpotent
                    | Error::CyclicSupport
            )
        );
        if invariant {
            Failure::Invariant(e)
        } else {
            Failure::Input(e)
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn modulus(p: u64) -> Outcome<Modulus> {
    Modulus::new(p).map_err(|_| Failure::Input(anyhow!("modulus must be prime, got {p}")))
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Input)
}

fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write output"),
    }
    .map_err(Failure::Input)
}

pub fn load_complex(input: &ComplexInput) -> Outcome<FilteredComplex> {
    if input.max_scale.is_some_and(|s| s.is_nan() || s <= 0.0) {
        return Err(Failure::Usage("--max-scale must be positive".into()));
    }
    let kind =
        input
            .kind
            .unwrap_or_else(|| match input.input.extension().and_then(|e| e.to_str()) {
                Some("json") => InputKind::Complex,
                _ => InputKind::Points,
            });
    let text = read(&input.input)?;
    let k = match kind {
        InputKind::Complex => formats::read_complex_json(&text)?,
        InputKind::Points => rips(
            &formats::read_points_csv(&text)?,
            input.max_dim,
            input.max_scale,
        )?,
        InputKind::Distances => rips(
            &formats::read_distance_csv(&text)?,
            input.max_dim,
            input.max_scale,
        )?,
        InputKind::Fixture => {
            return Err(Failure::Usage("a matrix fixture is not a complex".into()));
        }
    };
    Ok(k)
}

fn positive_part(b: &Barcode) -> Barcode {
    let mut out = Barcode::new(b.max_dim());
    for (d, ints) in b.dims() {
        for &i in ints.iter().filter(|i| i.birth < i.death) {
            out.push(d, i);
        }
    }
    out
}

pub fn cmd_barcode(args: &BarcodeArgs) -> Outcome {
    let p = modulus(args.input.field)?;
    let k = load_complex(&args.input)?;
    let opts = BarcodeOptions {
        reduce: !args.no_reduce,
        reduced_homology: args.input.reduced,
        keep_zero: args.keep_zero,
        seed: args.input.seed,
    };
    let b = complex_barcode(&k, p, &opts)?;

    if let Some(path) = &args.dump_basis {
        let mut d = GradedMatrix::from_complex(&k, p, opts.reduced_homology)?;
        if let Some(s) = opts.seed {
            d = d.shuffle_ties(s);
        }
        if opts.reduce {
            d = morse::reduce_graded(&d, k.max_dim())?;
        }
        let basis = filtered_jordan(&d)?;
        let mut text = String::from("# columns follow the cells below, in filtration order\n");
        for c in d.cells() {
            text.push_str(&format!(
                "# cell {} dim {} grade {}\n",
                c.label, c.dim, c.grade
            ));
        }
        let pos = d.positions();
        let relabelled = exph_core::IndexedMatrix::from_entries(
            0..d.len(),
            0..d.len(),
            p,
            basis
                .change_of_basis
                .entries()
                .map(|(r, c, v)| (pos[&r], pos[&c], v as i64)),
        )?;
        text.push_str(&formats::write_matrix_fixture(&relabelled));
        emit(Some(path), &text)?;
    }

    if args.oracle_check {
        let top = k.max_dim().max(0) as usize;
        let reference = if opts.reduced_homology {
            oracle::standard_reduction_barcode_reduced(&k, p.get() as u64, top)
        } else {
            oracle::standard_reduction_barcode(&k, p.get() as u64, top)
        };
        if positive_part(&b) != reference {
            return Err(Failure::OracleMismatch(format!(
                "barcode differs from the reference reduction:\n  engine    {}  reference {}",
                formats::barcode_json(&positive_part(&b), p),
                formats::barcode_json(&reference, p)
            )));
        }
    }

    let text = match args.format {
        OutputFormat::Json => formats::barcode_json(&b, p),
        OutputFormat::Csv => formats::barcode_csv(&b),
    };
    emit(args.output.as_deref(), &text)
}

pub fn cmd_lu(args: &LuArgs) -> Outcome {
    let a = formats::read_matrix_fixture(&read(&args.input)?)?;
    let rule = if args.lexicographic {
        PivotRule::Lexicographic
    } else {
        PivotRule::Markowitz
    };
    let f = lu_exchange(&a, rule);
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("cannot create {}", args.out_dir.display()))
        .map_err(Failure::Input)?;
    for (name, m) in [("L.txt", &f.l), ("D.txt", &f.d), ("U.txt", &f.u)] {
        emit(
            Some(&args.out_dir.join(name)),
            &formats::write_matrix_fixture(m),
        )?;
    }
    println!("rank {}", f.rank());
    Ok(())
}

pub fn cmd_morse(args: &MorseArgs) -> Outcome {
    let p = modulus(args.input.field)?;
    let k = load_complex(&args.input)?;
    let mut d = GradedMatrix::from_complex(&k, p, args.input.reduced)?;
    if let Some(s) = args.input.seed {
        d = d.shuffle_ties(s);
    }
    let r = morse::reduce_graded(&d, k.max_dim())?;
    emit(args.output.as_deref(), &formats::graded_matrix_json(&r))
}

pub fn cmd_jordan(args: &JordanArgs) -> Outcome {
    let t = formats::read_matrix_fixture(&read(&args.input)?)?;
    let b = jordan_unfiltered(&t)?;
    let mut text = String::new();
    for (s, t) in &b.pairs {
        text.push_str(&format!("# pair {s} {t}\n"));
    }
    for e in &b.essentials {
        text.push_str(&format!("# essential {e}\n"));
    }
    text.push_str(&formats::write_matrix_fixture(&b.change_of_basis));
    emit(args.output.as_deref(), &text)?;
    eprintln!("{} pairs, {} essential", b.pairs.len(), b.essentials.len());
    Ok(())
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Barcode(a) => cmd_barcode(a),
        Command::Lu(a) => cmd_lu(a),
        Command::Morse(a) => cmd_morse(a),
        Command::Jordan(a) => cmd_jordan(a),
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
