use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use sphfn_core::algebra::check_axioms;
use sphfn_core::expansions::{
    error_order_check, halving_sequence, ErrorOrder, Normalization, StExpansion,
};
use sphfn_core::routes::{evaluate, evaluate_grid, Route, RouteConfig, RouteValue};
use sphfn_core::{BesselMode, Catalog, Error, ErrorKind, GroupRank1, Model, SpectralParam};

mod output;

use output::{csv_field, fmt_f64, CsvRow, COMPARE_HEADER};

#[derive(Parser, Debug)]
#[command(
    name = "sphfn",
    version,
    about = "Spherical functions on real rank-1 groups"
)]
struct Cli {
    /// Group catalog (TOML, [[group]] tables with name, p, q).
    #[arg(long, global = true, env = "SPHFN_CATALOG")]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate φ_λ(t) by one route.
    Eval(EvalArgs),
    /// Evaluate several routes on a (λ, t) grid and report differences.
    Compare(CompareArgs),
    /// Randomized check of the Δ-algebra axioms.
    Axioms(AxiomArgs),
    /// Fit the small-t exponent of the leading Bessel-expansion error.
    ErrorOrder(ErrorOrderArgs),
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Catalog name of the group or model.
    #[arg(long, default_value = "sl2r-sec4")]
    group: String,
    /// Root multiplicity p (with --q, overrides the catalog entry).
    #[arg(long, requires = "q")]
    p: Option<u32>,
    /// Root multiplicity q.
    #[arg(long, requires = "p")]
    q: Option<u32>,
}

impl GroupArgs {
    fn model(&self, catalog: &Catalog) -> Result<Model, Error> {
        match (self.p, self.q) {
            (Some(p), Some(q)) => Ok(Model::Group(GroupRank1::new(self.group.clone(), p, q)?)),
            _ => catalog.get(&self.group),
        }
    }
}

#[derive(Args, Debug)]
struct ExpansionArgs {
    /// Value of the modified Bessel function at 0.
    #[arg(long, value_enum, default_value_t = ModeArg::Continuous)]
    mode: ModeArg,
    /// Leading constant of the Bessel expansion.
    #[arg(long, value_enum, default_value_t = NormalizationArg::UnitAtOrigin)]
    normalization: NormalizationArg,
}

impl ExpansionArgs {
    fn config(&self) -> RouteConfig {
        RouteConfig {
            mode: self.mode.into(),
            normalization: self.normalization.into(),
            ..RouteConfig::default()
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    PaperLiteral,
    Continuous,
}

impl From<ModeArg> for BesselMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PaperLiteral => BesselMode::PaperLiteral,
            ModeArg::Continuous => BesselMode::Continuous,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum NormalizationArg {
    UnitAtOrigin,
    PaperConstant,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::UnitAtOrigin => Normalization::UnitAtOrigin,
            NormalizationArg::PaperConstant => Normalization::PaperConstant,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Pretty,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Spectral parameter, `a`, `bi` or `a+bi`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: SpectralParam,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, default_value = "hyp")]
    route: Route,
    #[command(flatten)]
    expansion: ExpansionArgs,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated spectral parameters.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    lambda: Vec<SpectralParam>,
    /// Comma-separated t values (alternative to --t-min/--t-max/--t-steps).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["t_min", "t_max"], allow_hyphen_values = true)]
    t: Vec<f64>,
    #[arg(long, requires = "t_max")]
    t_min: Option<f64>,
    #[arg(long, requires = "t_min")]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 20)]
    t_steps: usize,
    /// Comma-separated routes; differences are taken against the first.
    #[arg(long, value_delimiter = ',', default_value = "hyp,ode")]
    routes: Vec<Route>,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[command(flatten)]
    expansion: ExpansionArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct AxiomArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ErrorOrderArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    lambda: SpectralParam,
    /// Truncation order; only the leading term is available.
    #[arg(long = "m", default_value_t = 0)]
    m: usize,
    #[arg(long, default_value_t = 1e-2)]
    t_start: f64,
    #[arg(long, default_value_t = 4)]
    points: usize,
    #[command(flatten)]
    expansion: ExpansionArgs,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

/// Process outcome of a command that ran to completion.
enum Outcome {
    Ok,
    ToleranceExceeded,
    RouteFailures,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ToleranceExceeded) => ExitCode::from(1),
        Ok(Outcome::RouteFailures) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            match e.kind() {
                ErrorKind::Domain => ExitCode::from(2),
                ErrorKind::Convergence => ExitCode::from(3),
            }
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let catalog = match &cli.catalog {
        Some(path) => Catalog::load(path)?,
        None => Catalog::builtin(),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = match cli.command {
        Command::Eval(args) => cmd_eval(&catalog, &args, &mut out),
        Command::Compare(args) => cmd_compare(&catalog, &args, &mut out),
        Command::Axioms(args) => cmd_axioms(&args, &mut out),
        Command::ErrorOrder(args) => cmd_error_order(&catalog, &args, &mut out),
    };
    // a closed pipe is not an evaluation failure
    let _ = out.flush();
    outcome
}

fn write_err(e: io::Error) -> Error {
    Error::Domain(format!("writing output: {e}"))
}

fn cmd_eval(catalog: &Catalog, args: &EvalArgs, out: &mut impl Write) -> Result<Outcome, Error> {
    let model = args.group.model(catalog)?;
    let cfg = args.expansion.config();
    let RouteValue { value, diagnostics } =
        evaluate(&model, args.route, args.lambda, args.t, &cfg)?;
    match args.format {
        Format::Pretty => {
            writeln!(out, "group        {}", model.name()).map_err(write_err)?;
            writeln!(out, "route        {}", args.route).map_err(write_err)?;
            writeln!(out, "lambda       {}", args.lambda).map_err(write_err)?;
            writeln!(out, "t            {}", fmt_f64(args.t)).map_err(write_err)?;
            writeln!(out, "value        {}", SpectralParam(value)).map_err(write_err)?;
            writeln!(out, "diagnostics  {diagnostics}").map_err(write_err)?;
        }
        Format::Csv => {
            writeln!(
                out,
                "group,lambda_re,lambda_im,t,route,value_re,value_im,diagnostics"
            )
            .map_err(write_err)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                csv_field(model.name()),
                fmt_f64(args.lambda.0.re),
                fmt_f64(args.lambda.0.im),
                fmt_f64(args.t),
                args.route,
                fmt_f64(value.re),
                fmt_f64(value.im),
                csv_field(&diagnostics.to_string()),
            )
            .map_err(write_err)?;
        }
    }
    Ok(Outcome::Ok)
}

fn t_grid(args: &CompareArgs) -> Result<Vec<f64>, Error> {
    let grid = match (args.t_min, args.t_max) {
        (Some(lo), Some(hi)) => {
            if lo.is_nan() || hi.is_nan() || lo > hi || args.t_steps == 0 {
                return Err(Error::Domain(format!(
                    "need t-min <= t-max and t-steps >= 1, got [{lo}, {hi}] with {} steps",
                    args.t_steps
                )));
            }
            if args.t_steps == 1 {
                vec![lo]
            } else {
                let h = (hi - lo) / (args.t_steps - 1) as f64;
                (0..args.t_steps)
                    .map(|k| {
                        if k + 1 == args.t_steps {
                            hi
                        } else {
                            lo + h * k as f64
                        }
                    })
                    .collect()
            }
        }
        _ => args.t.clone(),
    };
    if grid.is_empty() {
        return Err(Error::Domain(
            "no t values: pass --t or --t-min/--t-max".into(),
        ));
    }
    if let Some(t) = grid.iter().find(|t| !t.is_finite()) {
        return Err(Error::Domain(format!("t must be finite, got {t}")));
    }
    Ok(grid)
}

fn cmd_compare(
    catalog: &Catalog,
    args: &CompareArgs,
    out: &mut impl Write,
) -> Result<Outcome, Error> {
    if args.routes.len() < 2 {
        return Err(Error::Domain(format!(
            "compare needs at least 2 routes, got {}",
            args.routes.len()
        )));
    }
    if args.tol.is_nan() || args.tol < 0.0 {
        return Err(Error::Domain(format!(
            "tol must be nonnegative, got {}",
            args.tol
        )));
    }
    let model = args.group.model(catalog)?;
    if let Some(r) = args.routes.iter().find(|r| !r.supports(&model)) {
        return Err(Error::Domain(format!(
            "route {r} does not apply to {}",
            model.name()
        )));
    }
    let ts = t_grid(args)?;
    let cfg = args.expansion.config();

    // one task per (λ, route); each evaluates the whole t grid
    let tasks: Vec<(usize, usize)> = (0..args.lambda.len())
        .flat_map(|i| (0..args.routes.len()).map(move |j| (i, j)))
        .collect();
    let columns: Vec<Vec<Result<RouteValue, Error>>> = tasks
        .par_iter()
        .map(|&(i, j)| evaluate_grid(&model, args.routes[j], args.lambda[i], &ts, &cfg))
        .collect();

    let mut rows = Vec::with_capacity(columns.len() * ts.len());
    for (i, &lam) in args.lambda.iter().enumerate() {
        for (k, &t) in ts.iter().enumerate() {
            let first = columns[i * args.routes.len()][k]
                .as_ref()
                .ok()
                .map(|v| v.value);
            for (j, &route) in args.routes.iter().enumerate() {
                let result = &columns[i * args.routes.len() + j][k];
                let value = result.as_ref().ok().map(|v| v.value);
                rows.push(CsvRow {
                    group: model.name().to_string(),
                    lambda: lam,
                    t,
                    route,
                    value,
                    diff: first.zip(value).map(|(a, b)| (b - a).norm()),
                    error: result.as_ref().err().cloned(),
                });
            }
        }
    }

    let failures = rows.iter().filter(|r| r.error.is_some()).count();
    let max_diff = rows.iter().filter_map(|r| r.diff).fold(0.0f64, f64::max);
    let exceeded = rows
        .iter()
        .filter_map(|r| r.diff)
        .filter(|d| d.is_nan() || *d > args.tol)
        .count();

    match args.format {
        Format::Csv => {
            writeln!(out, "{COMPARE_HEADER}").map_err(write_err)?;
            for row in &rows {
                writeln!(out, "{}", row.csv()).map_err(write_err)?;
            }
        }
        Format::Pretty => {
            writeln!(
                out,
                "{:<12} {:<24} {:<10} {:<17} {:<46} diff",
                "group", "lambda", "t", "route", "value"
            )
            .map_err(write_err)?;
            for row in &rows {
                writeln!(out, "{}", row.pretty()).map_err(write_err)?;
            }
        }
    }
    eprintln!(
        "{} rows, {failures} route failures, max abs diff {max_diff:e}, {exceeded} above tol {:e}",
        rows.len(),
        args.tol
    );
    for row in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!(
            "  {} at lambda={}, t={}: {}",
            row.route,
            row.lambda,
            fmt_f64(row.t),
            row.error.as_ref().expect("filtered")
        );
    }

    Ok(if failures > 0 {
        Outcome::RouteFailures
    } else if exceeded > 0 {
        Outcome::ToleranceExceeded
    } else {
        Outcome::Ok
    })
}

fn cmd_axioms(args: &AxiomArgs, out: &mut impl Write) -> Result<Outcome, Error> {
    let report = check_axioms(args.trials, args.seed)?;
    for r in &report.results {
        writeln!(out, "{r}").map_err(write_err)?;
    }
    let failed = report.results.iter().filter(|r| !r.ok()).count();
    writeln!(
        out,
        "seed {}: {} of {} axioms pass",
        report.seed,
        report.results.len() - failed,
        report.results.len()
    )
    .map_err(write_err)?;
    Ok(if report.all_passed() {
        Outcome::Ok
    } else {
        Outcome::ToleranceExceeded
    })
}

fn cmd_error_order(
    catalog: &Catalog,
    args: &ErrorOrderArgs,
    out: &mut impl Write,
) -> Result<Outcome, Error> {
    if args.m != 0 {
        return Err(Error::Domain(format!(
            "only M = 0 is supported, got {}",
            args.m
        )));
    }
    let model = args.group.model(catalog)?;
    let group = model.group().cloned().ok_or_else(|| {
        Error::Domain(format!(
            "{} has no (p, q) structure for the Bessel expansion",
            model.name()
        ))
    })?;
    let e = StExpansion::new(group)
        .with_mode(args.expansion.mode.into())
        .with_normalization(args.expansion.normalization.into());
    let ts = halving_sequence(args.t_start, args.points);
    let fit = match error_order_check(&e, args.lambda, &ts)? {
        ErrorOrder::Fitted(fit) => fit,
        ErrorOrder::Skipped { reason } => {
            writeln!(out, "skipped: {reason}").map_err(write_err)?;
            return Ok(Outcome::Ok);
        }
    };
    let verdict = if fit.passed() { "pass" } else { "fail" };
    match args.format {
        Format::Pretty => {
            writeln!(out, "group      {}", model.name()).map_err(write_err)?;
            writeln!(out, "lambda     {}", args.lambda).map_err(write_err)?;
            for (t, err) in &fit.samples {
                writeln!(out, "  t={:<12} |error|={err:e}", fmt_f64(*t)).map_err(write_err)?;
            }
            writeln!(out, "slope      {:.6}", fit.slope).map_err(write_err)?;
            writeln!(out, "residual   {:e}", fit.residual).map_err(write_err)?;
            writeln!(out, "threshold  {}", fmt_f64(fit.threshold)).map_err(write_err)?;
            writeln!(out, "result     {verdict}").map_err(write_err)?;
        }
        Format::Csv => {
            writeln!(
                out,
                "group,lambda_re,lambda_im,m,points,slope,residual,threshold,result"
            )
            .map_err(write_err)?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{verdict}",
                csv_field(model.name()),
                fmt_f64(args.lambda.0.re),
                fmt_f64(args.lambda.0.im),
                args.m,
                fit.samples.len(),
                fmt_f64(fit.slope),
                fmt_f64(fit.residual),
                fmt_f64(fit.threshold),
            )
            .map_err(write_err)?;
        }
    }
    Ok(if fit.passed() {
        Outcome::Ok
    } else {
        Outcome::ToleranceExceeded
    })
}
