//! `lagrange`: Lagrange spectrum values, Rauzy classes and origami Hall rays
//! from the command line. Every report embeds the run configuration, the
//! tool version and hashes of the inputs.
//!
//! Exit codes: 0 success, 2 a checked inequality or identity failed,
//! 3 degenerate input (a connection), 4 parse or input error.

mod commands;
mod config;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::origami::Alpha;
use commands::spectrum::Source;
use commands::Ctx;
use config::{parse_precision, parse_tolerance, parse_window, RunConfig, Tolerance, Window};
use report::{Failure, Format, Outcome};

#[derive(Parser)]
#[command(
    name = "lagrange",
    version,
    about = "Lagrange spectra of translation surfaces"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, env = "TL_PRECISION", default_value = "256", value_parser = parse_precision)]
    precision: usize,
    /// `N:R`: breakpoint bound and renormalization steps (also Hall blocks).
    #[arg(long, global = true, env = "TL_WINDOW", default_value = "5000:300", value_parser = parse_window)]
    window: Window,
    /// Longest loop for `spectrum enum`.
    #[arg(long, global = true, env = "TL_MAX_LEN", default_value = "12")]
    max_len: usize,
    /// Overrides such as `exact=1e-6,statistical=0.05,hall=1e-4`.
    #[arg(long, global = true, env = "TL_TOLERANCE", default_value = "", value_parser = parse_tolerance)]
    tolerance: Tolerance,
    /// Directory holding cached Rauzy classes.
    #[arg(
        long,
        global = true,
        env = "TL_CACHE_DIR",
        default_value = ".lagrange-cache"
    )]
    cache_dir: PathBuf,
    /// Seed for randomly drawn data.
    #[arg(long, global = true, env = "TL_SEED", default_value = "0")]
    seed: u64,
    #[arg(
        long,
        global = true,
        env = "TL_FORMAT",
        value_enum,
        default_value = "json"
    )]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Members and arrows of the Rauzy class of a permutation pair.
    RauzyClass {
        /// Permutation pair such as "A B C D/D C B A".
        pi: String,
    },
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    #[command(subcommand)]
    Origami(OrigamiCmd),
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// Estimate 1/a(X) along the Rauzy-Veech orbit of a zippered datum.
    Value {
        /// JSON `{"pi", "lambda", "tau"}` inline or in a file.
        #[arg(long)]
        datum: String,
    },
    /// Exact value of the periodic orbit of a closed loop.
    Periodic {
        #[arg(long)]
        class: String,
        /// Arrow kinds, e.g. `tb`.
        #[arg(long = "loop")]
        kinds: String,
    },
    /// Values of all primitive loops up to `--max-len`, sorted.
    Enum {
        #[arg(long, default_value = "A B/B A")]
        class: String,
        /// JSON-lines file receiving one orbit per line.
        #[arg(long)]
        out: Option<String>,
    },
    /// Compare E(T) with a(X); fails above the statistical tolerance.
    Crosscheck(SourceArgs),
    /// Check the finite-time inequalities; fails on any violation.
    Bounds(SourceArgs),
}

#[derive(Args)]
struct SourceArgs {
    #[arg(long, conflicts_with_all = ["class", "kinds", "samples"])]
    datum: Option<String>,
    #[arg(long, default_value = "A B/B A")]
    class: String,
    #[arg(long = "loop", default_value = "tb", conflicts_with = "samples")]
    kinds: String,
    /// Random data drawn from the class with `--seed`.
    #[arg(long)]
    samples: Option<usize>,
}

impl SourceArgs {
    fn source(self) -> Source {
        match (self.datum, self.samples) {
            (Some(d), _) => Source::Datum(d),
            (None, Some(samples)) => Source::Random {
                class: self.class,
                samples,
            },
            (None, None) => Source::Periodic {
                class: self.class,
                kinds: self.kinds,
            },
        }
    }
}

#[derive(Subcommand)]
enum OrigamiCmd {
    /// Stratum, reduction and multiplicities.
    Info(OrigamiArg),
    /// SL(2,Z)-orbit with cusps and multiplicity profile.
    Orbit(OrigamiArg),
    /// Multiplicity of the direction p/q.
    Multiplicity {
        #[command(flatten)]
        origami: OrigamiArg,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    /// Skew-product spectrum value at a continued fraction.
    Skew {
        #[command(flatten)]
        origami: OrigamiArg,
        /// Decimal in (0, 1).
        #[arg(long, required_unless_present = "digits", conflicts_with = "digits")]
        alpha: Option<String>,
        /// Digits c_1, c_2, … of [0; c_1, c_2, …].
        #[arg(long)]
        digits: Option<String>,
    },
    /// Hall ray construction at x with its certificate.
    Hall {
        #[command(flatten)]
        origami: OrigamiArg,
        #[arg(long)]
        x: String,
        /// File receiving the digits, one per line.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Args)]
struct OrigamiArg {
    /// `torus`, JSON `{"n", "right", "up"}`, `n;(cycles);(cycles)` or a file.
    #[arg(long, default_value = "torus")]
    origami: String,
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let g = cli.global;
    let ctx = Ctx {
        cfg: RunConfig {
            precision_bits: g.precision,
            tolerance: g.tolerance,
            window: g.window,
            max_len: g.max_len,
            cache_dir: g.cache_dir,
            seed: g.seed,
        },
    };
    use commands::{origami, rauzy, spectrum};
    match cli.command {
        Command::RauzyClass { pi } => rauzy::class(&ctx, &pi),
        Command::Spectrum(cmd) => match cmd {
            SpectrumCmd::Value { datum } => spectrum::value(&ctx, &datum),
            SpectrumCmd::Periodic { class, kinds } => spectrum::periodic(&ctx, &class, &kinds),
            SpectrumCmd::Enum { class, out } => spectrum::enumerate(&ctx, &class, out.as_deref()),
            SpectrumCmd::Crosscheck(s) => spectrum::crosscheck(&ctx, &s.source()),
            SpectrumCmd::Bounds(s) => spectrum::bounds(&ctx, &s.source()),
        },
        Command::Origami(cmd) => match cmd {
            OrigamiCmd::Info(o) => origami::info(&ctx, &o.origami),
            OrigamiCmd::Orbit(o) => origami::orbit(&ctx, &o.origami),
            OrigamiCmd::Multiplicity { origami: o, slope } => {
                origami::multiplicity(&ctx, &o.origami, &slope)
            }
            OrigamiCmd::Skew {
                origami: o,
                alpha,
                digits,
            } => {
                let a = match (alpha, digits) {
                    (Some(a), _) => Alpha::Decimal(a),
                    (None, Some(d)) => Alpha::Digits(d),
                    (None, None) => unreachable!("clap requires one of them"),
                };
                origami::skew(&ctx, &o.origami, &a)
            }
            OrigamiCmd::Hall { origami: o, x, out } => {
                origami::hall(&ctx, &o.origami, &x, out.as_deref())
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // help and version are not errors; clap's own usage code would clash with 2
            return if e.use_stderr() {
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let format = cli.global.format;
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = outcome.report.render(format, &mut stdout) {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            match outcome.violation {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("assertion failed: {msg}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
