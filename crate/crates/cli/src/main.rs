use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lommel_core::asymptotics::{asymptotic_scaled, order_check, ExpansionKind, GapKind};
use lommel_core::bounds::{check_domain, evaluate_bound, registry, sweep, Side, SweepConfig};
use lommel_core::identities::{run_suite, SuiteConfig};
use lommel_core::reproduction::{compare_reference, run_table, table_spec};
use lommel_core::{ConditionKind, Error, EvalContext, EvalOptions, Fault, OrderPair};

/// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

fn out_raw(s: &str) {
    use std::io::Write as _;
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_CONVERGENCE: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(
    name = "lommel",
    version,
    about = "Modified Lommel functions, bound catalog and table reproduction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at (mu, nu, x).
    Eval(EvalArgs),
    /// Evaluate a catalog inequality, or list the catalog.
    Bound(BoundArgs),
    /// Regenerate a relative-error table and compare it with the reference.
    Table(TableArgs),
    /// Random sweep of the catalog plus the identity residual suite.
    Verify(VerifyArgs),
    /// Truncated expansions and decay-order fits of bracket gaps.
    Asym(AsymArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FnName {
    #[value(name = "t")]
    T,
    #[value(name = "t_tilde")]
    TTilde,
    #[value(name = "T_tilde")]
    BigTTilde,
    /// Modified Bessel function I_nu (mu is ignored).
    #[value(name = "i")]
    I,
    /// Modified Struve function L_nu (mu is ignored).
    #[value(name = "l")]
    L,
    #[value(name = "a")]
    A,
    #[value(name = "b")]
    B,
    /// Condition number x f'(x)/f(x); see --kind.
    #[value(name = "cond")]
    Cond,
    #[value(name = "h")]
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum CondKind {
    Lommel,
    Bessel,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    func: FnName,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Print value,log_scale with the e^{-x} scaling applied above the threshold.
    #[arg(long)]
    scaled: bool,
    /// Relative truncation tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Function whose condition number --fn cond reports.
    #[arg(long, value_enum, default_value = "lommel")]
    kind: CondKind,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, required_unless_present = "list")]
    id: Option<String>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "list")]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "list")]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "list")]
    x: Option<f64>,
    /// Second argument for entries comparing two arguments x < y.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<f64>,
    #[arg(long, conflicts_with = "id")]
    list: bool,
    /// With --list, print the full manifest as JSON.
    #[arg(long, requires = "list")]
    json: bool,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    id: u8,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    NegateCoeffA,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweep samples per catalog entry.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, value_enum, hide = true)]
    fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GapArg {
    SqrtBracket,
    BesselBracket,
}

#[derive(Args)]
struct AsymArgs {
    /// Expansion name, e.g. T_LARGE or h_small.
    #[arg(long, required_unless_present = "gap", conflicts_with = "gap")]
    kind: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long, allow_hyphen_values = true)]
    nu: f64,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "gap")]
    x: Option<f64>,
    #[arg(long, value_enum, requires = "grid")]
    gap: Option<GapArg>,
    /// Comma-separated increasing x values for the order fit.
    #[arg(long, value_delimiter = ',')]
    grid: Vec<f64>,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonConvergence { .. } | Error::CrossCheck { .. } => EXIT_CONVERGENCE,
            Error::Domain(_)
            | Error::NormalizationPole(_)
            | Error::UnknownBoundId(_)
            | Error::InvalidOptions(_) => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DOMAIN,
        message: message.into(),
    }
}

fn base_options() -> Result<EvalOptions, Failure> {
    let mut opts = EvalOptions::default();
    if let Ok(v) = std::env::var("LOMMEL_MAX_TERMS") {
        let n = v.trim().parse::<usize>().map_err(|_| {
            usage(format!(
                "LOMMEL_MAX_TERMS must be a positive integer, got {v:?}"
            ))
        })?;
        opts = opts.with_max_terms(n);
    }
    opts.validate()?;
    Ok(opts)
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_num(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), num)
}

fn cmd_eval(a: &EvalArgs) -> CmdResult {
    let mut opts = base_options()?;
    if let Some(tol) = a.tol {
        opts = opts.with_rel_tol(tol);
    }
    let ctx = EvalContext::new(opts);
    let p = OrderPair::new(a.mu, a.nu)?;
    let ev = match a.func {
        FnName::T => ctx.lommel_t(p, a.x)?,
        FnName::TTilde => ctx.lommel_t_tilde(p, a.x)?,
        FnName::BigTTilde => ctx.lommel_T_tilde(p, a.x)?,
        FnName::I => ctx.bessel_i(a.nu, a.x)?,
        FnName::L => ctx.struve_l(a.nu, a.x)?,
        FnName::A => {
            opts.validate()?;
            return print_plain(ctx.coeff_a(p, a.x));
        }
        FnName::B => return print_plain(ctx.ratio_b(p, a.x)?),
        FnName::Cond => {
            let kind = match a.kind {
                CondKind::Lommel => ConditionKind::LommelTTilde,
                CondKind::Bessel => ConditionKind::BesselI,
            };
            return print_plain(ctx.condition_number(kind, p, a.x)?);
        }
        FnName::H => return print_plain(ctx.ratio_h(p, a.x)?),
    };
    let plain = ev.unscaled();
    if a.scaled || !plain.is_finite() {
        out!("{},{}", num(ev.value), ev.log_scale);
    } else {
        out!("{}", num(plain));
    }
    Ok(0)
}

fn print_plain(v: f64) -> CmdResult {
    out!("{}", num(v));
    Ok(0)
}

fn kv(key: &str, value: impl Display) {
    out!("{key}={value}");
}

fn cmd_bound(a: &BoundArgs) -> CmdResult {
    let reg = registry();
    if a.list {
        if a.json {
            out!("{}", reg.manifest_json());
        } else {
            for b in reg.iter() {
                out!("{}\t{}", b.id(), b.target().describe());
            }
        }
        return Ok(0);
    }
    let id = a.id.as_deref().unwrap_or_default();
    let (mu, nu, x) = (
        a.mu.unwrap_or_default(),
        a.nu.unwrap_or_default(),
        a.x.unwrap_or_default(),
    );
    let ctx = EvalContext::new(base_options()?);
    let p = OrderPair::new(mu, nu)?;
    let verdict = check_domain(id, p)?;
    let ev = evaluate_bound(&ctx, id, p, x, a.y)?;
    kv("id", &ev.id);
    kv("target", num(ev.target_value));
    kv("log_scale", ev.log_scale);
    kv("lower", opt_num(ev.lower));
    kv("upper", opt_num(ev.upper));
    kv("margin_lower", opt_num(ev.margin_lower));
    kv("margin_upper", opt_num(ev.margin_upper));
    kv("rel_margin_lower", opt_num(ev.rel_margin_lower));
    kv("rel_margin_upper", opt_num(ev.rel_margin_upper));
    for side in Side::BOTH {
        let Some(s) = verdict.side(side) else {
            continue;
        };
        let state = match (s.valid, s.via_equality) {
            (true, true) => "valid (equality case)",
            (true, false) => "valid",
            (false, _) => "invalid",
        };
        kv(
            &format!("domain_{}", side.name()),
            format!("{state}; {}", s.description),
        );
    }
    kv("equality_hit", ev.equality_hit);
    kv("near_boundary", ev.near_boundary);
    kv("violated", ev.violated);
    if ev.violated {
        let sides: Vec<&str> = ev.violated_sides.iter().map(|s| s.name()).collect();
        return Err(Failure {
            code: EXIT_VIOLATION,
            message: format!(
                "{id} violated on {} side(s) beyond the guard band",
                sides.join(",")
            ),
        });
    }
    Ok(0)
}

fn cmd_table(a: &TableArgs) -> CmdResult {
    let spec = table_spec(a.id)?;
    let report = run_table(&spec);
    let diff = compare_reference(&report);
    let csv = diff.to_csv();
    let summary = |w: &mut dyn std::io::Write| -> std::io::Result<()> {
        let failed: Vec<_> = diff.failures().collect();
        writeln!(
            w,
            "table {}: {}/{} cells pass, max |diff| {:.4}",
            diff.table_id,
            diff.cells.len() - failed.len(),
            diff.cells.len(),
            diff.max_abs_diff
        )?;
        for c in &failed {
            let computed = c.computed.map_or("NaN".to_string(), |v| format!("{v:.4}"));
            writeln!(
                w,
                "FAIL {} x={}: computed {computed}, reference {:.4}",
                c.param, c.x, c.reference
            )?;
        }
        for e in &report.cell_errors {
            writeln!(w, "ERROR {e}")?;
        }
        Ok(())
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| Failure {
                code: EXIT_MISMATCH,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            summary(&mut std::io::stdout()).ok();
        }
        None => {
            out_raw(&csv);
            summary(&mut std::io::stderr()).ok();
        }
    }
    Ok(if diff.all_pass() { 0 } else { EXIT_MISMATCH })
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let mut ctx = EvalContext::new(base_options()?);
    if let Some(FaultArg::NegateCoeffA) = a.fault {
        ctx = ctx.with_fault(Fault::NegateCoeffA);
    }
    let cfg = SweepConfig {
        samples: a.samples as usize,
        seed: a.seed,
        ..SweepConfig::default()
    };
    let sw = sweep(&ctx, &cfg)?;
    let suite = run_suite(
        &ctx,
        &SuiteConfig {
            seed: a.seed,
            ..SuiteConfig::default()
        },
    );
    kv("sweep_evaluated", sw.evaluated);
    kv("sweep_violations", sw.violations.len());
    kv("sweep_failures", sw.failures.len());
    kv("sweep_unsampled", sw.unsampled.len());
    kv("equality_hits", sw.equality_hits);
    kv("near_boundary", sw.near_boundary);
    let worst = sw
        .min_rel_margin
        .values()
        .copied()
        .fold(f64::INFINITY, f64::min);
    kv("min_rel_margin", num(worst));
    kv("identity_checked", suite.checked);
    kv("identity_skipped", suite.skipped);
    kv("identity_failures", suite.failures.len());
    for (name, r) in &suite.max_residual {
        kv(&format!("max_residual.{name}"), num(*r));
    }
    for v in sw.violations.iter().take(20) {
        let pt = v.point;
        out!(
            "VIOLATION {} {} mu={} nu={} x={} y={} rel_margin={}",
            v.id,
            v.side.name(),
            pt.mu,
            pt.nu,
            pt.x,
            pt.y.map_or("none".to_string(), |y| y.to_string()),
            num(v.rel_margin)
        );
    }
    for f in sw.failures.iter().take(20) {
        out!(
            "FAILURE {} mu={} nu={} x={}: {}",
            f.id,
            f.point.mu,
            f.point.nu,
            f.point.x,
            f.error
        );
    }
    for id in &sw.unsampled {
        out!("UNSAMPLED {id}");
    }
    for f in suite.failures.iter().take(20) {
        let what = f
            .error
            .clone()
            .unwrap_or_else(|| format!("residual={}", num(f.residual)));
        out!(
            "IDENTITY {} mu={} nu={} x={}: {what}",
            f.name,
            f.mu,
            f.nu,
            f.x
        );
    }
    let clean = sw.is_clean() && suite.is_clean();
    kv("result", if clean { "pass" } else { "fail" });
    Ok(if clean { 0 } else { EXIT_VIOLATION })
}

fn cmd_asym(a: &AsymArgs) -> CmdResult {
    let p = OrderPair::new(a.mu, a.nu)?;
    if let Some(gap) = a.gap {
        let gap = match gap {
            GapArg::SqrtBracket => GapKind::SqrtBracket,
            GapArg::BesselBracket => GapKind::BesselBracket,
        };
        let ctx = EvalContext::new(base_options()?);
        let fit = order_check(&ctx, gap, p, &a.grid)?;
        kv("gap", fit.gap.name());
        kv("order", num(fit.order));
        kv("constant", num(fit.constant));
        for (x, v) in fit.x_grid.iter().zip(&fit.values) {
            out!("x={x} gap={}", num(*v));
        }
        for (i, o) in fit.local_orders.iter().enumerate() {
            kv(&format!("local_order.{i}"), num(*o));
        }
        return Ok(0);
    }
    let name = a.kind.as_deref().unwrap_or_default();
    let kind = ExpansionKind::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = ExpansionKind::ALL.iter().map(|k| k.name()).collect();
        usage(format!(
            "unknown expansion {name:?}; expected one of {}",
            names.join(", ")
        ))
    })?;
    let x = a.x.unwrap_or_default();
    let v = asymptotic_scaled(kind, p, x, 0.0)?;
    if v.is_finite() {
        out!("{}", num(v));
    } else {
        out!("{},{}", num(asymptotic_scaled(kind, p, x, x)?), x);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Bound(a) => cmd_bound(a),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Asym(a) => cmd_asym(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
