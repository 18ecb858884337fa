//! Command-line front end for `merosin`.

pub mod cache;
pub mod format;
pub mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use merosin::orbitlab::{bifurcation_scan, chaos_certificate, Axis, Classifier, OrbitOptions, ScanRequest};
use merosin::paramlab::{imag_fixed_points, imag_two_cycles, real_fixed_points, regime, BifurcationConstants};
use merosin::render::{basin_fractions, grid_csv, render_grid, write_ppm, Palette, RenderOptions, Window};
use merosin::{Complex64, Error, ParamPoint};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NON_CONVERGENCE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "merosin", version, about = "Dynamics of f(z) = sin z / (z^2 + lambda)")]
pub struct Cli {
    /// Worker threads for rendering and verification [default: available parallelism]
    #[arg(long, global = true, env = "MEROSIN_THREADS")]
    threads: Option<usize>,

    /// Directory of the constants cache
    #[arg(long, global = true, env = "MEROSIN_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Recompute the constants instead of reading the cache
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the bifurcation constants as JSON
    Params,
    /// Fixed points, imaginary 2-cycles and the regime at lambda
    FixedPoints(LambdaArg),
    /// Classify the orbit of one seed
    Orbit {
        #[command(flatten)]
        lambda: LambdaArg,
        /// Seed as RE,IM
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        z: Complex64,
        /// Iteration cap
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Turbulence certificate for the real map
    ChaosCert(LambdaArg),
    /// Sample a bifurcation diagram to CSV
    Bifurcation {
        #[arg(long, value_enum)]
        axis: AxisArg,
        /// Parameter range as LO:HI
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (f64, f64),
        /// Number of parameter values
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1000)]
        transient: usize,
        #[arg(long, default_value_t = 64)]
        keep: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a basin image (PPM)
    Render {
        #[command(flatten)]
        lambda: LambdaArg,
        /// Window as X0:X1:Y0:Y1
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: [f64; 4],
        /// Image size as WxH
        #[arg(long, value_parser = parse_size, default_value = "900x600")]
        size: (usize, usize),
        #[arg(long)]
        out: PathBuf,
        /// Iteration cap
        #[arg(long)]
        max_iter: Option<usize>,
        /// Also write the per-pixel labels as CSV
        #[arg(long)]
        grid_csv: Option<PathBuf>,
    },
    /// Run the verification suite
    Verify {
        /// Reduced sample sizes and grids
        #[arg(long)]
        fast: bool,
    },
}

#[derive(Debug, Args)]
struct LambdaArg {
    /// Parameter lambda > 0
    #[arg(long, allow_negative_numbers = true)]
    lambda: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    Real,
    Imag,
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or("expected RE,IM")?;
    Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?))
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected LO:HI")?;
    Ok((parse_f64(lo)?, parse_f64(hi)?))
}

fn parse_window(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err("expected X0:X1:Y0:Y1".into());
    }
    let mut out = [0.0; 4];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = parse_f64(p)?;
    }
    Ok(out)
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once('x').ok_or("expected WxH")?;
    let w: usize = w.parse().map_err(|_| format!("bad width `{w}`"))?;
    let h: usize = h.parse().map_err(|_| format!("bad height `{h}`"))?;
    Ok((w, h))
}

/// The `params` document.
pub fn params_json(c: &BifurcationConstants) -> String {
    format::to_json(&json!({
        "lambda_2star": c.lambda_2star,
        "lambda_star": c.lambda_star,
        "lambda_hat": c.lambda_hat,
        "lambda_1": c.lambda_1,
        "lambda_2": c.lambda_2,
        "witnesses": {
            "x_star": c.witness_x_star,
            "p_2star": c.witness_p_2star,
            "t_hat": c.witness_t_hat,
            "y1": c.witness_y1,
            "y2": c.witness_y2,
        },
    }))
}

pub fn parse_params_json(text: &str) -> Result<BifurcationConstants, String> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let get = |ptr: &str| v.pointer(ptr).and_then(|x| x.as_f64()).ok_or(format!("missing {ptr}"));
    Ok(BifurcationConstants {
        lambda_2star: get("/lambda_2star")?,
        lambda_star: get("/lambda_star")?,
        lambda_hat: get("/lambda_hat")?,
        lambda_1: get("/lambda_1")?,
        lambda_2: get("/lambda_2")?,
        witness_x_star: get("/witnesses/x_star")?,
        witness_p_2star: get("/witnesses/p_2star")?,
        witness_t_hat: get("/witnesses/t_hat")?,
        witness_y1: get("/witnesses/y1")?,
        witness_y2: get("/witnesses/y2")?,
    })
}

fn exit_code(e: &Error) -> i32 {
    if e.is_non_convergence() {
        EXIT_NON_CONVERGENCE
    } else {
        EXIT_INVALID
    }
}

fn io_err(path: &std::path::Path) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io { path: path.to_path_buf(), message: e.to_string() }
}

impl Cli {
    fn constants(&self) -> merosin::Result<BifurcationConstants> {
        if self.no_cache {
            return cache::load_or_compute(None);
        }
        let dir = self.cache_dir.clone().unwrap_or_else(cache::default_dir);
        cache::load_or_compute(Some(&dir))
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> merosin::Result<i32> {
    let emit = |out: &mut dyn Write, s: String| -> merosin::Result<()> {
        writeln!(out, "{s}").map_err(|e| Error::Io { path: "<stdout>".into(), message: e.to_string() })
    };
    match &cli.command {
        Command::Params => emit(out, params_json(&cli.constants()?))?,
        Command::FixedPoints(LambdaArg { lambda }) => {
            let p = ParamPoint::new(*lambda)?;
            let c = cli.constants()?;
            let r = regime(&p, &c)?;
            emit(
                out,
                format::to_json(&json!({
                    "lambda": p.lambda(),
                    "regime": r.regime_id,
                    "notes": r.notes,
                    "real": real_fixed_points(&p)?,
                    "imag": imag_fixed_points(&p)?,
                    "imag_two_cycles": imag_two_cycles(&p)?,
                })),
            )?;
        }
        Command::Orbit { lambda, z, max_iter } => {
            let p = ParamPoint::new(lambda.lambda)?;
            let mut opts = OrbitOptions::for_param(&p)?;
            if let Some(m) = *max_iter {
                if m == 0 {
                    return Err(Error::InvalidInput("max-iter must be positive".into()));
                }
                opts.max_iter = m;
            }
            let o = Classifier::with_options(&p, opts)?.classify(*z);
            emit(
                out,
                format::to_json(&json!({
                    "lambda": p.lambda(),
                    "z0": [z.re, z.im],
                    "status": o.status,
                    "iterations": o.iterations,
                    "final_value": [o.final_value.re, o.final_value.im],
                })),
            )?;
        }
        Command::ChaosCert(LambdaArg { lambda }) => {
            emit(out, format::to_json(&chaos_certificate(&ParamPoint::new(*lambda)?)?))?;
        }
        Command::Bifurcation { axis, range, steps, transient, keep, out: path } => {
            let req = ScanRequest {
                axis: match axis {
                    AxisArg::Real => Axis::Real,
                    AxisArg::Imag => Axis::Imag,
                },
                lambda_lo: range.0,
                lambda_hi: range.1,
                n_lambda: *steps,
                n_transient: *transient,
                n_keep: *keep,
            };
            let table = merosin::render::run_with_threads(cli.threads, || bifurcation_scan(&req))??;
            std::fs::write(path, table.to_csv(format::fmt15)).map_err(io_err(path))?;
            let samples = table.samples().count();
            emit(out, format::to_json(&json!({ "out": path, "rows": table.rows.len(), "samples": samples })))?;
        }
        Command::Render { lambda, window, size, out: path, max_iter, grid_csv: csv_path } => {
            let p = ParamPoint::new(lambda.lambda)?;
            let [x0, x1, y0, y1] = *window;
            let w = Window::new(x0, x1, y0, y1, size.0, size.1)?;
            let g = render_grid(&p, &w, &RenderOptions { threads: cli.threads, max_iter: *max_iter })?;
            write_ppm(&g, &Palette::default(), path)?;
            if let Some(cp) = csv_path {
                std::fs::write(cp, grid_csv(&g)).map_err(io_err(cp))?;
            }
            let fractions: serde_json::Map<String, serde_json::Value> =
                basin_fractions(&g).into_iter().map(|(l, f)| (l.name().to_string(), json!(f))).collect();
            emit(out, format::to_json(&json!({ "out": path, "lambda": p.lambda(), "fractions": fractions })))?;
        }
        Command::Verify { fast } => {
            let c = cli.constants()?;
            let fast = *fast;
            let threads = cli.threads;
            let report = merosin::render::run_with_threads(threads, || verify::run(&c, fast, threads))?;
            emit(out, format::to_json(&report))?;
            if !report.ok() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_INVALID
                }
            };
        }
    };
    if cli.threads == Some(0) {
        let _ = writeln!(err, "error: --threads must be positive");
        return EXIT_INVALID;
    }
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// [`run`] on the process's standard streams.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(argv, &mut stdout.lock(), &mut stderr.lock())
}
