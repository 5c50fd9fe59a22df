use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qtele::battery::{Battery, Fault};
use qtele::sweep::DEFAULT_GRID;
use qtele::{Axis, CliError, FigurePreset, Param, Point, Quantity, Result, SweepSpec};
use qtele_core::QuadratureSpec;

#[derive(Parser)]
#[command(
    name = "qtele",
    version,
    about = "Teleportation through a thermal spin channel with an accelerated input"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity at one parameter point.
    Eval(EvalArgs),
    /// Evaluate a quantity over a 2-D grid and write CSV.
    Sweep(SweepArgs),
    /// Cross-check every closed form against its numerical oracle.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct PointArgs {
    /// Spin coupling.
    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<f64>,
    /// Dzyaloshinski-Moriya strength.
    #[arg(long = "D", allow_negative_numbers = true)]
    d: Option<f64>,
    /// Temperature.
    #[arg(long = "T", allow_negative_numbers = true)]
    t: Option<f64>,
    /// Input amplitude angle, in [0, pi].
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Input phase, in [0, 2 pi].
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Acceleration parameter, in [0, pi/4].
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Read theta, phi and r (flags and axes) in degrees.
    #[arg(long)]
    deg: bool,
}

impl PointArgs {
    fn overrides(&self) -> Vec<(Param, f64)> {
        let given = [
            (Param::J, self.j),
            (Param::D, self.d),
            (Param::T, self.t),
            (Param::Theta, self.theta),
            (Param::Phi, self.phi),
            (Param::R, self.r),
        ];
        given
            .into_iter()
            .filter_map(|(p, v)| v.map(|v| (p, self.to_radians(p, v))))
            .collect()
    }

    fn to_radians(&self, p: Param, v: f64) -> f64 {
        if self.deg && p.is_angle() {
            v.to_radians()
        } else {
            v
        }
    }

    fn apply(&self, base: Point) -> Point {
        self.overrides()
            .into_iter()
            .fold(base, |pt, (p, v)| pt.with(p, v))
    }
}

#[derive(Args)]
struct QuadArgs {
    /// Gauss-Legendre nodes in theta for averages.
    #[arg(long, default_value_t = 64)]
    quad_theta: usize,
    /// Uniform nodes in phi for averages.
    #[arg(long, default_value_t = 64)]
    quad_phi: usize,
}

impl QuadArgs {
    fn spec(&self) -> Result<QuadratureSpec> {
        Ok(QuadratureSpec::new(self.quad_theta, self.quad_phi)?)
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    quantity: Option<Quantity>,
    #[arg(long, value_enum)]
    figure: Option<FigurePreset>,
    /// Points per axis for a figure preset.
    #[arg(long)]
    grid: Option<usize>,
    /// x axis as name:lo:hi:count.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// y axis as name:lo:hi:count.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    point: PointArgs,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    quad: QuadArgs,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<Fault>,
}

fn eval(args: &EvalArgs) -> Result<()> {
    let point = args.point.apply(Point::default());
    point.validate()?;
    let value = args.quantity.evaluate(&point, &args.quad.spec()?)?;
    println!("{value:.12}");
    Ok(())
}

fn parse_axis(s: &str, point: &PointArgs) -> Result<Axis> {
    let axis: Axis = s.parse()?;
    Ok(if point.deg { axis.to_radians() } else { axis })
}

fn build_sweep(args: &SweepArgs) -> Result<SweepSpec> {
    let mut spec = match args.figure {
        Some(fig) => fig.spec(args.grid.unwrap_or(DEFAULT_GRID)),
        None => {
            if args.grid.is_some() {
                return Err(CliError::Usage("--grid applies only with --figure".into()));
            }
            let missing =
                |what: &str| CliError::Usage(format!("{what} is required without --figure"));
            SweepSpec {
                quantity: args.quantity.ok_or_else(|| missing("--quantity"))?,
                x: parse_axis(
                    args.x.as_deref().ok_or_else(|| missing("--x"))?,
                    &args.point,
                )?,
                y: parse_axis(
                    args.y.as_deref().ok_or_else(|| missing("--y"))?,
                    &args.point,
                )?,
                fixed: Point::default(),
                quad: QuadratureSpec::default(),
            }
        }
    };
    if let Some(q) = args.quantity {
        spec.quantity = q;
    }
    if let Some(x) = &args.x {
        spec.x = parse_axis(x, &args.point)?;
    }
    if let Some(y) = &args.y {
        spec.y = parse_axis(y, &args.point)?;
    }
    spec.fixed = args.point.apply(spec.fixed);
    spec.quad = args.quad.spec()?;
    spec.validate()?;
    Ok(spec)
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let spec = build_sweep(args)?;
    let rows = spec.run()?;
    match &args.out {
        Some(path) => {
            let io_err = |source| CliError::Io {
                path: path.clone(),
                source,
            };
            let file = File::create(path).map_err(io_err)?;
            spec.write_csv(&rows, BufWriter::new(file)).map_err(io_err)
        }
        None => spec
            .write_csv(&rows, BufWriter::new(io::stdout().lock()))
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn validate(args: &ValidateArgs) -> Result<bool> {
    let report = Battery::new(args.quad.spec()?, args.inject_fault).run();
    let mut out = io::stdout().lock();
    writeln!(out, "{report}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Eval(a) => eval(a).map(|()| true),
        Command::Sweep(a) => sweep(a).map(|()| true),
        Command::Validate(a) => validate(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qtele: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
