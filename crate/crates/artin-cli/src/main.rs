use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use artin_cli::plot::PlotKind;
use artin_cli::run::{self, CliError, Format, Method};

/// Scattering data of the quantized Artin billiard: zeta zeros, the
/// resonance spectrum, the S-matrix phase shift, and Maass wave
/// functions on the modular surface.
#[derive(Parser)]
#[command(name = "artin", version, arg_required_else_help = true)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Write the artifact to this path instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Tolerance override: zero-refinement tolerance for `zeros` and
    /// `resonances`, mode-sum tail tolerance for `wave`; ignored elsewhere
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Approx,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Locate the first critical-line zeros of zeta
    Zeros {
        /// How many zeros (1..=50)
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Resonance energies and widths derived from the zeros
    Resonances {
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// How many resonances (1..=50)
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Also write a gnuplot script for the pole plot (needs --output)
        #[arg(long)]
        plot_script: Option<PathBuf>,
    },
    /// Scan the unwrapped phase shift delta(E) over an energy window
    Phase {
        #[arg(long, default_value_t = 1.0)]
        e_min: f64,
        #[arg(long, default_value_t = 700.0)]
        e_max: f64,
        /// Base grid size before adaptive refinement
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Also write a gnuplot script for delta(E) (needs --output)
        #[arg(long)]
        plot_script: Option<PathBuf>,
    },
    /// Evaluate the Maass wave function on an (x, y~) grid
    Wave {
        /// Momentum p > 0 of the incoming wave
        #[arg(long)]
        momentum: f64,
        #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 0.5)]
        x_max: f64,
        #[arg(long, default_value_t = 41)]
        nx: usize,
        #[arg(long, default_value_t = -0.14, allow_hyphen_values = true)]
        y_tilde_min: f64,
        #[arg(long, default_value_t = 2.0)]
        y_tilde_max: f64,
        #[arg(long, default_value_t = 41)]
        ny: usize,
        /// Also write a gnuplot heatmap script (needs --output)
        #[arg(long)]
        plot_script: Option<PathBuf>,
    },
    /// Run every module invariant suite and report pass/fail counts
    Verify,
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let output = cli.output.as_deref();
    match cli.command {
        Command::Zeros { count } => {
            let text = run::run_zeros(count, cli.tol, format)?;
            run::deliver(&text, output, None)?;
            Ok(true)
        }
        Command::Resonances { method, count, plot_script } => {
            let method = match method {
                MethodArg::Exact => Method::Exact,
                MethodArg::Approx => Method::Approx,
                MethodArg::Both => Method::Both,
            };
            let text = run::run_resonances(method, count, cli.tol, format)?;
            let plot = plot_script.as_ref().map(|p| (p, PlotKind::Resonances, format));
            run::deliver(&text, output, plot)?;
            Ok(true)
        }
        Command::Phase { e_min, e_max, samples, plot_script } => {
            let text = run::run_phase(e_min, e_max, samples, format)?;
            let plot = plot_script.as_ref().map(|p| (p, PlotKind::Phase, format));
            run::deliver(&text, output, plot)?;
            Ok(true)
        }
        Command::Wave {
            momentum,
            x_min,
            x_max,
            nx,
            y_tilde_min,
            y_tilde_max,
            ny,
            plot_script,
        } => {
            let text = run::run_wave(
                momentum, x_min, x_max, nx, y_tilde_min, y_tilde_max, ny, cli.tol, format,
            )?;
            let plot = plot_script.as_ref().map(|p| (p, PlotKind::Wave, format));
            run::deliver(&text, output, plot)?;
            Ok(true)
        }
        Command::Verify => {
            let (report, all_passed) = run::run_verify();
            run::deliver(&report, output, None)?;
            Ok(all_passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
