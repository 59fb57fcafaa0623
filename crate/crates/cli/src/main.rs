//! `sincbound`: constants, suite verification, bound evaluation and
//! application integrals from the command line.
//!
//! Exit codes: 0 when every expectation is met, 1 when a verified claim
//! does not match its expected outcome, 2 on usage or domain errors.

mod render;

use std::f64::consts::FRAC_PI_2;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sincbound_core::constants::{catalogue, solve_p0, solve_p0_in, Catalogue};
use sincbound_core::quadrature::{application_enclosures, catalan_reference, closed_form_integrals, si, DEFAULT_TOL};
use sincbound_core::report::{build_report, Suite};
use sincbound_core::verifier::DEFAULT_GRID;
use sincbound_core::{BoundExpr, DoubleDouble, Kernel, Mode, PrecisionConfig, Real};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
/// Digits shown for double-double constants.
const ORACLE_DISPLAY_DIGITS: usize = 31;

#[derive(Parser, Debug)]
#[command(
    name = "sincbound",
    version,
    about = "Sharp cos-power bounds for sin(x)/x: constants, verification, evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Arithmetic used for margins and constants
    #[arg(long, value_enum, default_value_t = Precision::Working, global = true)]
    precision: Precision,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the sharp constants and the integral enclosure endpoints
    Constants {
        /// Root-solver tolerance for p0 [default: 1e-13, or 1e-28 with --precision oracle]
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the verification suite and emit a report
    Verify {
        /// Which group of rows to run
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Uniform grid size per case (at least 64)
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Quadrature tolerance for the application rows
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Evaluate one bound next to sin(x)/x
    Eval {
        #[arg(value_enum)]
        bound: BoundArg,
        /// Exponent parameter for the parametric bounds
        #[arg(long)]
        p: Option<f64>,
        /// Evaluation point; must lie in the bound's domain
        #[arg(long)]
        x: f64,
    },
    /// Print Si(pi/2), Catalan's constant and the closed-form integrals
    Integrals {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Precision {
    Working,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Core,
    Applications,
    Sharpness,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Core => Suite::Core,
            SuiteArg::Applications => Suite::Applications,
            SuiteArg::Sharpness => Suite::Sharpness,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    /// (cos px)^(1/p); needs --p
    CosPower,
    /// beta_p(pi/2) (cos px)^(1/p); needs --p
    ScaledCosPower,
    /// cos^2(x/2)
    Qi,
    /// cos^3(x/3)
    CosCubedThird,
    /// (2 + cos x)/3
    TwoPlusCos,
    /// (3/4)(cos x + 1)^2/(2 cos x + 1)
    Rational,
    /// 2/pi
    Jordan,
    /// cos(x/3)^p; needs --p
    CosThirdPower,
}

/// Whether a bound sits below or above sin(x)/x.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Lower,
    Upper,
}

impl Side {
    fn as_str(self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

fn bound_for(arg: BoundArg, p: Option<f64>) -> Result<(BoundExpr, Side), String> {
    let need_p = || p.ok_or_else(|| "this bound needs --p".to_string());
    Ok(match arg {
        BoundArg::CosPower => {
            let p = need_p()?;
            (BoundExpr::CosPower { p }, if p <= 1.0 / 3.0 { Side::Upper } else { Side::Lower })
        }
        BoundArg::ScaledCosPower => {
            let p = need_p()?;
            (BoundExpr::ScaledCosPower { p, c: FRAC_PI_2 }, if p <= 1.0 / 3.0 { Side::Lower } else { Side::Upper })
        }
        BoundArg::Qi => (BoundExpr::QiLower, Side::Lower),
        BoundArg::CosCubedThird => (BoundExpr::KlenUpper3, Side::Upper),
        BoundArg::TwoPlusCos => (BoundExpr::TwoPlusCosOver3, Side::Upper),
        BoundArg::Rational => (BoundExpr::Mb4Rational, Side::Upper),
        BoundArg::Jordan => (BoundExpr::ConstantTwoOverPi, Side::Lower),
        BoundArg::CosThirdPower => {
            let alpha = need_p()?;
            (BoundExpr::CosPowerAlpha { alpha }, if alpha <= 3.0 { Side::Upper } else { Side::Lower })
        }
    })
}

fn config(precision: Precision) -> PrecisionConfig {
    match precision {
        Precision::Working => PrecisionConfig::default(),
        Precision::Oracle => PrecisionConfig::oracle(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let cfg = config(cli.precision);
    let machine = cli.format == Format::Machine;
    match cli.command {
        Command::Constants { tol } => cmd_constants(&cfg, tol, machine),
        Command::Verify { suite, grid, tol } => cmd_verify(suite.into(), grid, tol, &cfg, machine),
        Command::Eval { bound, p, x } => cmd_eval(bound, p, x, &cfg, machine),
        Command::Integrals { tol } => cmd_integrals(tol, machine),
    }
}

fn cmd_constants(cfg: &PrecisionConfig, tol: Option<f64>, machine: bool) -> Result<ExitCode, String> {
    let tol = tol.unwrap_or(cfg.root_tol());
    // (name, binary64 value, decimal rendering)
    let rows: Vec<(&str, f64, String)> = match cfg.mode {
        Mode::Working => {
            let p0 = solve_p0(tol).map_err(|e| e.to_string())?.value;
            let cat = Catalogue::closed_forms(p0);
            cat.named().iter().map(|&(n, v)| (n, v, format!("{v:.15}"))).collect()
        }
        Mode::Oracle => {
            if !(tol > 0.0 && tol <= 1e-6) {
                return Err(format!("tol = {tol} not in (0, 1e-6]"));
            }
            let p0 = solve_p0_in::<DoubleDouble>(tol).map_err(|e| e.to_string())?.value;
            let cat = Catalogue::closed_forms(p0);
            cat.named().iter().map(|&(n, v)| (n, v.to_f64(), v.to_decimal(ORACLE_DISPLAY_DIGITS))).collect()
        }
    };
    if machine {
        let constants: Vec<_> = rows.iter().map(|(n, v, d)| json!({ "name": n, "value": v, "decimal": d })).collect();
        let doc = json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "precision_mode": cfg.mode.as_str(),
            "constants": constants,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("finite values"));
    } else {
        println!("constants ({} precision)", cfg.mode.as_str());
        for (n, _, d) in &rows {
            println!("  {n:<16} {d}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: Suite, grid: usize, tol: f64, cfg: &PrecisionConfig, machine: bool) -> Result<ExitCode, String> {
    let started = Instant::now();
    let doc = build_report(suite, grid, tol, cfg).map_err(|e| e.to_string())?;
    if machine {
        println!("{}", doc.to_json());
    } else {
        print!("{}", render::report_text(&doc));
        eprintln!("elapsed: {} ms", started.elapsed().as_millis());
    }
    Ok(if doc.all_expected { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}

fn cmd_eval(arg: BoundArg, p: Option<f64>, x: f64, cfg: &PrecisionConfig, machine: bool) -> Result<ExitCode, String> {
    let (bound, side) = bound_for(arg, p)?;
    let kernel = Kernel::from_config(cfg);
    let (value, sinc) = match cfg.mode {
        Mode::Working => {
            let v: f64 = bound.eval(&kernel, x).map_err(|e| e.to_string())?;
            (v, kernel.sinc(x))
        }
        Mode::Oracle => {
            let xd = DoubleDouble::from_f64(x);
            let v = bound.eval(&kernel, xd).map_err(|e| e.to_string())?;
            (v.to_f64(), kernel.sinc(xd).to_f64())
        }
    };
    let margin = match side {
        Side::Lower => sinc - value,
        Side::Upper => value - sinc,
    };
    if machine {
        let doc = json!({
            "bound": bound.label(),
            "side": side.as_str(),
            "x": x,
            "value": value,
            "sinc": sinc,
            "margin": margin,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("finite values"));
    } else {
        println!("bound   {} ({} bound)", bound.label(), side.as_str());
        println!("x       {x}");
        println!("value   {value:.17}");
        println!("sinc    {sinc:.17}");
        println!("margin  {margin:+.6e}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_integrals(tol: f64, machine: bool) -> Result<ExitCode, String> {
    if !(tol > 0.0 && tol < 1e-6) {
        return Err(format!("tol = {tol} not in (0, 1e-6)"));
    }
    let si_half_pi = si(FRAC_PI_2).map_err(|e| e.to_string())?;
    let k = catalan_reference();
    let app = application_enclosures().map_err(|e| e.to_string())?;
    let integrals = closed_form_integrals(tol).map_err(|e| e.to_string())?;
    let cat = catalogue();
    let ok = app.all_hold() && integrals.iter().all(|c| c.relative_residual <= 1e-10);
    if machine {
        let rows: Vec<_> = integrals
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "description": c.description,
                    "closed_form": c.closed_form,
                    "quadrature": c.quadrature.value,
                    "error_estimate": c.quadrature.error_estimate,
                    "relative_residual": c.relative_residual,
                })
            })
            .collect();
        let doc = json!({
            "si_half_pi": si_half_pi,
            "si_enclosure": [cat.a2_lower, cat.a2_upper],
            "catalan": k,
            "catalan_enclosures": [[cat.a31_lower, cat.a31_upper], [cat.a32_lower, cat.a32_upper]],
            "enclosures_hold": app.all_hold(),
            "integrals": rows,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("finite values"));
    } else {
        println!("Si(pi/2)   {si_half_pi:.16}  in ({:.16}, {:.16})", cat.a2_lower, cat.a2_upper);
        println!("Catalan K  {k:.16}  in ({:.16}, {:.16})", cat.a31_lower, cat.a31_upper);
        println!("{:<11}{k:.16}  in ({:.16}, {:.16})", "", cat.a32_lower, cat.a32_upper);
        for c in &integrals {
            println!("{}", c.description);
            println!("  closed form  {:.16}", c.closed_form);
            println!("  quadrature   {:.16}  (residual {:.2e})", c.quadrature.value, c.relative_residual);
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_MISMATCH) })
}
