//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or empty input, 3 decoding failure,
//! 4 no threshold crossing, 5 fixture mismatch.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    channel_capacities, estimate_threshold, group_curves, hashing_bound,
    point_seed, read_points_csv, simulate, standard_css_rate, write_points_csv, CurvePoint,
    Sector, SimulationConfig,
};
use crate::decoders::Decoder;
use crate::error::Error;
use crate::fixture::{parse_fixture, run_demo, FIG2};
use crate::noise::{DepolarizingParams, PauliErrorPair};
use crate::plot::render_svg;
use crate::syndrome::{residual_class, syndrome, HomologyClass};
use crate::tiling::{Family, SurfaceCode};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DECODE: u8 = 3;
pub const EXIT_NO_CROSSING: u8 = 4;
pub const EXIT_FIXTURE: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "xzdecode", version, about = "Correlated perfect-matching decoding of surface codes on the torus")]
pub struct Cli {
    /// Worker threads; 0 picks one per core.
    #[arg(long, global = true, env = "XZDECODE_THREADS", default_value_t = 0)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo sweep over sizes and error rates, written as CSV.
    Simulate(SimulateArgs),
    /// Threshold estimate per decoder and sector from a sweep CSV.
    Threshold {
        input: PathBuf,
    },
    /// Channel capacities and the hashing bound.
    Capacity(PGrid),
    /// Decode the worked example on the 5x5 torus with both decoders.
    DemoFig2 {
        /// Fixture file to use instead of the built-in one.
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
    /// Render a sweep CSV as SVG.
    Plot {
        input: PathBuf,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Decode one error read from an `edge_id,pauli` CSV.
    Decode {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        error: PathBuf,
        #[arg(long, value_enum, default_value = "correlated")]
        decoder: Decoder,
        /// Where to write the estimate; stdout when absent.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Write the edge list of a tiling or its dual.
    DumpTiling {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        dual: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DecoderArg {
    Standard,
    Correlated,
    /// Plain matching of the Z component only.
    ZOnly,
}

impl clap::ValueEnum for Family {
    fn value_variants<'a>() -> &'a [Self] {
        &[Family::Square, Family::Triangular]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.as_str()))
    }
}

impl clap::ValueEnum for Decoder {
    fn value_variants<'a>() -> &'a [Self] {
        &[Decoder::Standard, Decoder::Correlated]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.as_str()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SectorArg {
    Both,
    Z,
    X,
}

impl From<SectorArg> for Sector {
    fn from(s: SectorArg) -> Sector {
        match s {
            SectorArg::Both => Sector::Both,
            SectorArg::Z => Sector::Z,
            SectorArg::X => Sector::X,
        }
    }
}

#[derive(Debug, Args)]
pub struct PGrid {
    /// Comma-separated error rates.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["p_min", "p_max", "p_steps"])]
    pub p_list: Option<Vec<f64>>,
    #[arg(long, requires_all = ["p_max", "p_steps"])]
    pub p_min: Option<f64>,
    #[arg(long, requires_all = ["p_min", "p_steps"])]
    pub p_max: Option<f64>,
    /// Number of evenly spaced rates from p-min to p-max inclusive.
    #[arg(long, requires_all = ["p_min", "p_max"])]
    pub p_steps: Option<usize>,
}

impl PGrid {
    pub fn values(&self) -> Result<Vec<f64>, String> {
        if let Some(list) = &self.p_list {
            return Ok(list.clone());
        }
        match (self.p_min, self.p_max, self.p_steps) {
            (Some(lo), Some(hi), Some(n)) => {
                if n == 0 || (n == 1 && lo != hi) || hi < lo {
                    return Err(format!("bad p range {lo}..{hi} with {n} steps"));
                }
                let round = |x: f64| (x * 1e10).round() / 1e10;
                Ok((0..n)
                    .map(|i| {
                        if n == 1 {
                            lo
                        } else {
                            round(lo + (hi - lo) * i as f64 / (n - 1) as f64)
                        }
                    })
                    .collect())
            }
            _ => Err("give either --p-list or --p-min, --p-max and --p-steps".into()),
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Comma-separated lattice sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub grid: PGrid,
    #[arg(long, value_enum, default_value = "correlated")]
    pub decoder: DecoderArg,
    /// Which residual bits count as failure. `z-only` implies `z`.
    #[arg(long, value_enum)]
    pub sector: Option<SectorArg>,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output CSV; a manifest is written next to it.
    #[arg(long, short)]
    pub out: PathBuf,
}

/// Everything needed to replay a sweep.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: SimulationConfig,
    pub seed: u64,
    pub point_seeds: Vec<(usize, u64)>,
    pub threads: usize,
    pub started_unix: u64,
    pub wall_clock_seconds: f64,
    pub csv: PathBuf,
    pub manifest: PathBuf,
}

/// `sweep.csv` -> `sweep.manifest.json`.
pub fn manifest_path(csv: &Path) -> PathBuf {
    csv.with_extension("manifest.json")
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoCrossing { .. } => EXIT_NO_CROSSING,
            Error::Trial { .. }
            | Error::InvalidSyndrome { .. }
            | Error::NoPerfectMatching { .. }
            | Error::PreconditionViolation(_) => EXIT_DECODE,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn open(path: &Path) -> std::result::Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> std::result::Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn output(path: Option<&Path>) -> std::result::Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn read_points(path: &Path) -> std::result::Result<Vec<CurvePoint>, Failure> {
    let points = read_points_csv(open(path)?)?;
    if points.is_empty() {
        return Err(Failure::new(EXIT_USAGE, format!("{}: no rows", path.display())));
    }
    Ok(points)
}

fn cmd_simulate(args: &SimulateArgs) -> CmdResult {
    let ps = args.grid.values().map_err(|m| Failure::new(EXIT_USAGE, m))?;
    let (decoder, sector) = match (args.decoder, args.sector) {
        (DecoderArg::ZOnly, None | Some(SectorArg::Z)) => (Decoder::Standard, Sector::Z),
        (DecoderArg::ZOnly, Some(s)) => {
            return Err(Failure::new(
                EXIT_USAGE,
                format!("--decoder z-only cannot be combined with --sector {:?}", s).to_lowercase(),
            ))
        }
        (DecoderArg::Standard, s) => (Decoder::Standard, s.map_or(Sector::Both, Sector::from)),
        (DecoderArg::Correlated, s) => (Decoder::Correlated, s.map_or(Sector::Both, Sector::from)),
    };
    let config = SimulationConfig {
        family: args.family,
        sizes: args.sizes.clone(),
        ps,
        decoder,
        sector,
        trials: args.trials,
        seed: args.seed,
    };
    config.validate()?;
    let started_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    let clock = Instant::now();
    let points = simulate(&config)?;
    let wall_clock_seconds = clock.elapsed().as_secs_f64();

    let mut w = create(&args.out)?;
    write_points_csv(&points, &mut w)?;
    w.flush()?;
    let manifest = RunManifest {
        tool: "xzdecode",
        version: env!("CARGO_PKG_VERSION"),
        point_seeds: config
            .sizes
            .iter()
            .map(|&s| (s, point_seed(config.seed, s)))
            .collect(),
        seed: config.seed,
        config,
        threads: rayon::current_num_threads(),
        started_unix,
        wall_clock_seconds,
        csv: args.out.clone(),
        manifest: manifest_path(&args.out),
    };
    let mut m = create(&manifest.manifest)?;
    serde_json::to_writer_pretty(&mut m, &manifest).map_err(Error::from)?;
    writeln!(m)?;
    m.flush()?;
    eprintln!(
        "wrote {} rows to {} in {:.1}s",
        points.len(),
        args.out.display(),
        wall_clock_seconds
    );
    Ok(())
}

fn cmd_threshold(input: &Path) -> CmdResult {
    let points = read_points(input)?;
    let mut first_failure = None;
    let mut out = io::stdout().lock();
    for ((family, decoder, sector), curves) in group_curves(&points) {
        match estimate_threshold(&curves) {
            Ok(est) => {
                writeln!(
                    out,
                    "{family} {decoder} sector={sector}: p_th = {:.4} +/- {:.4}",
                    est.p_th, est.uncertainty
                )?;
                for (a, b, p) in est.crossings {
                    writeln!(out, "  sizes {a} and {b} cross at p = {p:.4}")?;
                }
            }
            Err(e) => {
                writeln!(out, "{family} {decoder} sector={sector}: {e}")?;
                first_failure.get_or_insert(Failure::from(e));
            }
        }
    }
    first_failure.map_or(Ok(()), Err)
}

fn cmd_capacity(grid: &PGrid) -> CmdResult {
    let ps = grid.values().map_err(|m| Failure::new(EXIT_USAGE, m))?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:>8} {:>8} {:>8} {:>8} {:>8} {:>9} {:>9}",
        "p", "p'", "p''", "c_X", "c_Z", "hashing", "1-2h(p')"
    )?;
    for p in ps {
        let params = DepolarizingParams::new(p)?;
        let c = channel_capacities(p)?;
        writeln!(
            out,
            "{:>8.4} {:>8.4} {:>8.4} {:>8.5} {:>8.5} {:>9.5} {:>9.5}",
            p,
            params.p_prime(),
            params.p_dprime(),
            c.c_x,
            c.c_z,
            hashing_bound(p)?,
            standard_css_rate(p)?
        )?;
    }
    Ok(())
}

fn describe(label: &str, e: &PauliErrorPair, class: &HomologyClass, out: &mut dyn Write) -> io::Result<()> {
    let support: Vec<String> = e.support().iter().map(|(i, p)| format!("{p}{i}")).collect();
    writeln!(out, "{label} estimate: [{}]", support.join(" "))?;
    writeln!(
        out,
        "{label} residual class: z = {:?}, x = {:?} -> {}",
        class.z_bits.map(u8::from),
        class.x_bits.map(u8::from),
        if class.is_trivial() { "corrected" } else { "logical error" }
    )
}

fn cmd_demo_fig2(fixture: Option<&Path>) -> CmdResult {
    let text = match fixture {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", p.display())))?,
        None => FIG2.to_string(),
    };
    let as_fixture = |e: Error| Failure::new(EXIT_FIXTURE, format!("fixture mismatch: {e}"));
    let fx = parse_fixture(&text).map_err(as_fixture)?;
    let outcome = run_demo(&fx).map_err(|e| match e {
        Error::PreconditionViolation(_) | Error::Parse(_) | Error::InvalidParameter(_) => as_fixture(e),
        other => Failure::from(other),
    })?;
    let mut out = io::stdout().lock();
    let support: Vec<String> = fx.error.support().iter().map(|(i, p)| format!("{p}{i}")).collect();
    writeln!(out, "{0}x{0} square torus, error: [{1}]", fx.size, support.join(" "))?;
    writeln!(out, "site syndrome s_x: {:?}", outcome.syndrome.s_x)?;
    writeln!(out, "plaquette syndrome s_z: {:?}", outcome.syndrome.s_z)?;
    describe("standard", &outcome.standard.estimate, &outcome.standard_class, &mut out)?;
    describe("correlated", &outcome.correlated.estimate, &outcome.correlated_class, &mut out)?;
    writeln!(
        out,
        "correlated erasure: {:?}, non-erased Z weight {}",
        outcome.correlated.erasure_used.erased.ones().collect::<Vec<_>>(),
        outcome.correlated.matched_weight_z
    )?;
    if outcome.correlated_class.is_trivial() {
        writeln!(out, "verdict: corrected by the correlated decoder")?;
        Ok(())
    } else {
        Err(Failure::new(EXIT_DECODE, "correlated decoder left a logical error"))
    }
}

fn cmd_plot(input: &Path, out: &Path) -> CmdResult {
    let points = read_points(input)?;
    let svg = render_svg(&points)?;
    let mut w = create(out)?;
    w.write_all(svg.as_bytes())?;
    w.flush()?;
    Ok(())
}

fn cmd_decode(
    family: Family,
    size: usize,
    error: &Path,
    decoder: Decoder,
    out: Option<&Path>,
) -> CmdResult {
    let code = SurfaceCode::new(family, size)?;
    let truth = PauliErrorPair::read_csv(code.qubit_count(), open(error)?)?;
    let s = syndrome(&code, &truth);
    let estimate = decoder.decode(&code, &s)?.estimate;
    let class = residual_class(&code, &truth, &estimate)?;
    estimate.write_csv(output(out)?)?;
    eprintln!(
        "syndrome sizes {}/{}, residual z = {:?}, x = {:?}: {}",
        s.s_x.len(),
        s.s_z.len(),
        class.z_bits.map(u8::from),
        class.x_bits.map(u8::from),
        if class.is_trivial() { "corrected" } else { "logical error" }
    );
    Ok(())
}

fn cmd_dump_tiling(family: Family, size: usize, dual: bool, out: Option<&Path>) -> CmdResult {
    let code = SurfaceCode::new(family, size)?;
    let t = if dual { code.dual_tiling() } else { &code.primal };
    t.write_edges_csv(output(out)?)?;
    Ok(())
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Threshold { input } => cmd_threshold(input),
        Command::Capacity(grid) => cmd_capacity(grid),
        Command::DemoFig2 { fixture } => cmd_demo_fig2(fixture.as_deref()),
        Command::Plot { input, out } => cmd_plot(input, out),
        Command::Decode {
            family,
            size,
            error,
            decoder,
            out,
        } => cmd_decode(*family, *size, error, *decoder, out.as_deref()),
        Command::DumpTiling {
            family,
            size,
            dual,
            out,
        } => cmd_dump_tiling(*family, *size, *dual, out.as_deref()),
    }
}

/// Parses `std::env::args` and runs the chosen command.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
