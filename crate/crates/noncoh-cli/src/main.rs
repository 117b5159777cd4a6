//! Command-line drivers for the noncoh library.
//!
//! Every command is deterministic in `(seed, flags)`: rerunning with the
//! same arguments produces byte-identical output. Exit status encodes the
//! verification outcome: 0 = all asserted bounds hold, 1 = a bound was
//! violated, 2 = usage or input error.

mod specs;

use clap::{Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use noncoh::channels::{is_nio, is_nomio, phase_flip_demo, KrausChannel};
use noncoh::comeasure::{
    c_rel, c_trace, max_coherent_state, mixedness_report, CoherenceConvention,
};
use noncoh::duality::sweep_duality;
use noncoh::multibasis::{
    cyclic_bases, mutually_orthogonal_pair, verify_family_bounds, BlochFrame,
};
use noncoh::qstate::{random_mixed_qubit, SeededRng};
use noncoh::thermo::{coherence_basis, linearity_check, TwoLevelSystem};
use noncoh::PureQubit;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "noncoh",
    version,
    about = "Coherence over non-orthogonal qubit bases: measures, duality sweeps, bound checks",
    after_help = "State specs: 'x,y,z' (Bloch) or 're,im,re,im' (amplitudes).\n\
                  Basis specs: 're,im,re,im;re,im,re,im' or 'sym:alpha[,phi]' \
                  (symmetric family, half-angle alpha).\n\
                  NONCOH_THREADS caps the worker count; results do not depend on it."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// RNG seed; identical seeds give byte-identical output.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,

    /// Sample count (command-specific default when omitted).
    #[arg(long, global = true)]
    samples: Option<u64>,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format: tabular commands default to csv, bounds to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Trace-coherence normalization (closed-form values use euclidean).
    #[arg(long, global = true, value_enum, default_value_t = Convention::Euclidean)]
    convention: Convention,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    Euclidean,
    Half,
}

impl Convention {
    fn to_lib(self) -> CoherenceConvention {
        match self {
            Convention::Euclidean => CoherenceConvention::Euclidean,
            Convention::Half => CoherenceConvention::Half,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Convention::Euclidean => "euclidean",
            Convention::Half => "half",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Coherence report for one state in one basis.
    Coherence {
        /// State spec: Bloch triple or amplitude quadruple.
        #[arg(long)]
        state: String,
        /// Basis spec: two amplitude pairs or `sym:alpha[,phi]`.
        #[arg(long)]
        basis: String,
    },
    /// Relative-entropy coherence vs. entropy scatter rows for random states.
    Scatter {
        /// Basis half-angle in radians, in (0, pi/2].
        #[arg(long)]
        alpha: f64,
        /// Basis azimuth in radians.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
    },
    /// Haar Monte Carlo sweep of the wave-particle bound C + D <= 3/2.
    DualitySweep {
        /// Leak pass-probability grid, lo:hi:step.
        #[arg(long, default_value = "0.05:1.0:0.05")]
        grid: String,
    },
    /// Monte Carlo verification of multi-basis coherence bounds.
    Bounds {
        /// `triangle | square | cyclic:n | mutually-orthogonal:theta0[,phi0]`
        #[arg(long)]
        family: String,
    },
    /// Energy cost of basis change over a (T, alpha) grid.
    EnergyCost {
        /// Temperature grid, lo:hi:count or a single value.
        #[arg(long, default_value = "0.1:10:50")]
        t_grid: String,
        /// Half-angle grid (radians), lo:hi:count or a single value.
        #[arg(long, default_value = "0.05:1.5707963267948966:50")]
        alpha_grid: String,
        /// Excited-level energies, comma-separated.
        #[arg(long, default_value = "0.5,1,2")]
        e1: String,
        /// Basis phase (radians); has no effect on the cost.
        #[arg(long, default_value_t = 0.0)]
        phi: f64,
        /// Report delta in units of e1 instead of absolute energy.
        #[arg(long)]
        delta_in_e1: bool,
    },
    /// NOMIO/NIO verdicts for a Kraus channel file, or a built-in demo.
    ChannelCheck {
        /// JSON channel file: `{"kraus": [[[re,im] x4 row-major], ...]}`.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Basis spec to check against.
        #[arg(long)]
        basis: String,
        /// Membership tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Built-in demonstration; only 'phase-flip' is defined.
        #[arg(long)]
        demo: Option<String>,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("NONCOH_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n > 0 {
                // A failure here means a pool already exists, which is fine.
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let conv = cli.convention;
    let seed = cli.seed;
    let (output, violated) = match &cli.command {
        Command::Coherence { state, basis } => (cmd_coherence(state, basis)?, false),
        Command::Scatter { alpha, phi } => {
            let samples = cli.samples.unwrap_or(10_000);
            let format = cli.format.unwrap_or(Format::Csv);
            (
                cmd_scatter(*alpha, *phi, samples, seed, conv, format)?,
                false,
            )
        }
        Command::DualitySweep { grid } => {
            let samples = cli.samples.unwrap_or(1_000_000);
            cmd_duality_sweep(grid, samples, seed, conv, cli.format.unwrap_or(Format::Csv))?
        }
        Command::Bounds { family } => {
            let samples = cli.samples.unwrap_or(100_000);
            cmd_bounds(
                family,
                samples,
                seed,
                conv,
                cli.format.unwrap_or(Format::Json),
            )?
        }
        Command::EnergyCost {
            t_grid,
            alpha_grid,
            e1,
            phi,
            delta_in_e1,
        } => {
            let format = cli.format.unwrap_or(Format::Csv);
            cmd_energy_cost(t_grid, alpha_grid, e1, *phi, *delta_in_e1, seed, format)?
        }
        Command::ChannelCheck {
            file,
            basis,
            tol,
            demo,
        } => (
            cmd_channel_check(file.as_deref(), basis, *tol, demo.as_deref())?,
            false,
        ),
    };

    match &cli.out {
        Some(path) => std::fs::write(path, &output)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{output}"),
    }
    Ok(if violated {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn fmt7(x: f64) -> String {
    format!("{x:.7}")
}

fn meta_line(
    command: &str,
    seed: u64,
    samples: u64,
    convention: Convention,
    extra: &str,
) -> String {
    let mut line = format!(
        "# noncoh v{VERSION} command={command} seed={seed} samples={samples} convention={}",
        convention.name()
    );
    if !extra.is_empty() {
        line.push(' ');
        line.push_str(extra);
    }
    line.push('\n');
    line
}

// ---------------------------------------------------------------------------
// coherence
// ---------------------------------------------------------------------------

fn cmd_coherence(state_spec: &str, basis_spec: &str) -> Result<String, String> {
    let rho = specs::parse_state(state_spec)?;
    let basis = specs::parse_basis(basis_spec)?;

    let v = rho.bloch();
    let (nearest, _) = basis.nearest_nois(&rho);
    let rep = mixedness_report(&rho);
    let mut out = String::new();
    let _ = writeln!(out, "# noncoh v{VERSION} command=coherence");
    let _ = writeln!(
        out,
        "state: bloch = ({}, {}, {})",
        fmt7(v.x),
        fmt7(v.y),
        fmt7(v.z)
    );
    let _ = writeln!(
        out,
        "basis: overlap = {}  half_angle = {} rad",
        fmt7(basis.overlap()),
        fmt7(basis.half_angle())
    );
    let _ = writeln!(
        out,
        "c_trace_euclidean     = {}",
        fmt7(c_trace(&rho, &basis, CoherenceConvention::Euclidean))
    );
    let _ = writeln!(
        out,
        "c_trace_half          = {}",
        fmt7(c_trace(&rho, &basis, CoherenceConvention::Half))
    );
    let _ = writeln!(out, "c_rel_bits            = {}", fmt7(c_rel(&rho, &basis)));
    let _ = writeln!(out, "nearest_nois_weight   = {}", fmt7(nearest.weight));
    if let Ok(m) = max_coherent_state(&basis) {
        let mv = m.bloch();
        let _ = writeln!(
            out,
            "max_coherent_bloch    = ({}, {}, {})",
            fmt7(mv.x),
            fmt7(mv.y),
            fmt7(mv.z)
        );
    }
    let _ = writeln!(
        out,
        "mixedness: r = {}  m_linear = {}  entropy_bits = {}  purity = {}",
        fmt7(rep.bloch_radius),
        fmt7(rep.linear_mixedness),
        fmt7(rep.entropy_bits),
        fmt7(rep.purity)
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// scatter
// ---------------------------------------------------------------------------

fn cmd_scatter(
    alpha: f64,
    phi: f64,
    samples: u64,
    seed: u64,
    convention: Convention,
    format: Format,
) -> Result<String, String> {
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let basis = coherence_basis(alpha, phi)
        .map_err(|e| e.to_string())?
        .basis;
    let mut rng = SeededRng::new(seed);
    let states: Vec<_> = (0..samples).map(|_| random_mixed_qubit(&mut rng)).collect();

    use rayon::prelude::*;
    let rows: Vec<(f64, f64, f64, f64)> = states
        .par_iter()
        .map(|rho| {
            (
                rho.von_neumann_entropy(),
                c_rel(rho, &basis),
                c_trace(rho, &basis, convention.to_lib()),
                rho.purity(),
            )
        })
        .collect();

    let mut out = meta_line(
        "scatter",
        seed,
        samples,
        convention,
        &format!("alpha={alpha} phi={phi}"),
    );
    match format {
        Format::Csv => {
            out.push_str("s_bits,c_rel_bits,c_trace,purity\n");
            for (s, cr, ct, p) in &rows {
                let _ = writeln!(out, "{s},{cr},{ct},{p}");
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(s, cr, ct, p)| {
                    serde_json::json!({
                        "s_bits": s, "c_rel_bits": cr, "c_trace": ct, "purity": p
                    })
                })
                .collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// duality-sweep
// ---------------------------------------------------------------------------

fn cmd_duality_sweep(
    grid: &str,
    samples: u64,
    seed: u64,
    convention: Convention,
    format: Format,
) -> Result<(String, bool), String> {
    let r_grid = specs::parse_step_grid(grid)?;
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let result = sweep_duality(&r_grid, samples, seed).map_err(|e| e.to_string())?;

    let mut out = meta_line(
        "duality-sweep",
        seed,
        samples,
        convention,
        &format!("grid={grid}"),
    );
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            result.write_csv(&mut buf).map_err(|e| e.to_string())?;
            out.push_str(&String::from_utf8(buf).expect("csv is utf-8"));
        }
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&result.rows).unwrap()
            );
        }
    }
    let violated = result.worst_sum() > 1.5 + 1e-9;
    if violated {
        let _ = writeln!(out, "# BOUND VIOLATION: max(C+D) = {}", result.worst_sum());
    }
    Ok((out, violated))
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

fn cmd_bounds(
    family_spec: &str,
    samples: u64,
    seed: u64,
    convention: Convention,
    format: Format,
) -> Result<(String, bool), String> {
    let family = parse_family(family_spec)?;
    if format == Format::Csv {
        return Err("bounds emits a JSON report; use --format json or omit --format".into());
    }
    if samples == 0 {
        return Err("samples must be positive".into());
    }
    let mut rng = SeededRng::new(seed);
    let report = verify_family_bounds(&family, samples, &mut rng);

    let asserted = report.bounds_checked && !report.informational;
    let violated = asserted && (report.violations_lower + report.violations_upper) > 0;

    let mut value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("version".into(), serde_json::json!(VERSION));
        map.insert("convention".into(), serde_json::json!(convention.name()));
    }
    let mut out = serde_json::to_string_pretty(&value).unwrap();
    out.push('\n');
    Ok((out, violated))
}

fn parse_family(spec: &str) -> Result<noncoh::multibasis::BasisFamily, String> {
    if spec == "triangle" {
        return cyclic_bases(3, &BlochFrame::xz(), 0.0).map_err(|e| e.to_string());
    }
    if spec == "square" {
        return cyclic_bases(4, &BlochFrame::xz(), 0.0).map_err(|e| e.to_string());
    }
    if let Some(body) = spec.strip_prefix("cyclic:") {
        let n: usize = body
            .parse()
            .map_err(|_| format!("cyclic family: bad vertex count '{body}'"))?;
        return cyclic_bases(n, &BlochFrame::xz(), 0.0).map_err(|e| e.to_string());
    }
    if let Some(body) = spec.strip_prefix("mutually-orthogonal:") {
        let nums = specs::parse_numbers(body)?;
        let (theta0, phi0) = match nums.len() {
            1 => (nums[0], 0.0),
            2 => (nums[0], nums[1]),
            _ => return Err("mutually-orthogonal: want theta0[,phi0]".into()),
        };
        let psi = PureQubit::from_bloch_angles(theta0, phi0);
        return mutually_orthogonal_pair(&psi).map_err(|e| e.to_string());
    }
    Err(format!(
        "unknown family '{spec}': want triangle | square | cyclic:n | mutually-orthogonal:theta0[,phi0]"
    ))
}

// ---------------------------------------------------------------------------
// energy-cost
// ---------------------------------------------------------------------------

fn cmd_energy_cost(
    t_grid: &str,
    alpha_grid: &str,
    e1_list: &str,
    phi: f64,
    delta_in_e1: bool,
    seed: u64,
    format: Format,
) -> Result<(String, bool), String> {
    let temps = specs::parse_count_grid(t_grid)?;
    let alphas = specs::parse_count_grid(alpha_grid)?;
    let energies = specs::parse_numbers(e1_list)?;
    for &t in &temps {
        if t <= 0.0 {
            return Err(format!("temperature must be positive, got {t}"));
        }
    }

    let mut rows = Vec::new();
    let mut violated = false;
    for &e1 in &energies {
        let sys = TwoLevelSystem::new(e1).map_err(|e| e.to_string())?;
        for &t in &temps {
            for &alpha in &alphas {
                let fam = coherence_basis(alpha, phi).map_err(|e| e.to_string())?;
                let check = linearity_check(&sys, t, &fam).map_err(|e| e.to_string())?;
                if (check.ratio - 0.5 * e1).abs() > 1e-8 {
                    violated = true;
                }
                let delta = if delta_in_e1 {
                    check.delta / e1
                } else {
                    check.delta
                };
                rows.push((t, alpha, phi, e1, delta, check.coherence, check.ratio));
            }
        }
    }

    let samples = rows.len() as u64;
    let mut out = meta_line(
        "energy-cost",
        seed,
        samples,
        Convention::Euclidean,
        &format!(
            "t_grid={t_grid} alpha_grid={alpha_grid} e1={e1_list} phi={phi} delta_units={}",
            if delta_in_e1 { "e1" } else { "absolute" }
        ),
    );
    match format {
        Format::Csv => {
            out.push_str("T,alpha,phi,e1,delta,c_trace,ratio\n");
            for (t, a, p, e, d, c, r) in &rows {
                let _ = writeln!(out, "{t},{a},{p},{e},{d},{c},{r}");
            }
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|(t, a, p, e, d, c, r)| {
                    serde_json::json!({
                        "T": t, "alpha": a, "phi": p, "e1": e,
                        "delta": d, "c_trace": c, "ratio": r
                    })
                })
                .collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap());
        }
    }
    if violated {
        out.push_str("# LINEAR LAW VIOLATION: some ratio differs from e1/2 by more than 1e-8\n");
    }
    Ok((out, violated))
}

// ---------------------------------------------------------------------------
// channel-check
// ---------------------------------------------------------------------------

fn cmd_channel_check(
    file: Option<&std::path::Path>,
    basis_spec: &str,
    tol: f64,
    demo: Option<&str>,
) -> Result<String, String> {
    let basis = specs::parse_basis(basis_spec)?;

    if let Some(demo_name) = demo {
        if demo_name != "phase-flip" {
            return Err(format!("unknown demo '{demo_name}'; available: phase-flip"));
        }
        let demo = phase_flip_demo(&basis).map_err(|e| e.to_string())?;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# noncoh v{VERSION} command=channel-check demo=phase-flip"
        );
        let iv = demo.input.bloch();
        let fv = demo.flipped.bloch();
        let _ = writeln!(
            out,
            "input   (|b1>+|b2> direction): bloch = ({}, {}, {})  c_trace = {}",
            fmt7(iv.x),
            fmt7(iv.y),
            fmt7(iv.z),
            fmt7(demo.input_coherence)
        );
        let _ = writeln!(
            out,
            "flipped (|b1>-|b2> direction): bloch = ({}, {}, {})  c_trace = {}",
            fmt7(fv.x),
            fmt7(fv.y),
            fmt7(fv.z),
            fmt7(demo.flipped_coherence)
        );
        let _ = writeln!(
            out,
            "coherence increase = {}: the flip lands on the maximally coherent state, so \
             it takes a less resourceful state to a more resourceful one; monotonicity \
             (P2)/(P3) fails and the phase flip is not an NIO",
            fmt7(demo.flipped_coherence - demo.input_coherence)
        );
        return Ok(out);
    }

    let path = file.ok_or("channel-check needs --file <channel.json> or --demo phase-flip")?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let channel = KrausChannel::from_json_str(&text).map_err(|e| e.to_string())?;

    let nomio = is_nomio(&channel, &basis, tol);
    let nio = is_nio(&channel, &basis, tol);
    let mut out = String::new();
    let _ = writeln!(out, "# noncoh v{VERSION} command=channel-check tol={tol}");
    let _ = writeln!(out, "kraus_operators = {}", channel.kraus_ops().len());
    let _ = writeln!(
        out,
        "basis: overlap = {}  half_angle = {} rad",
        fmt7(basis.overlap()),
        fmt7(basis.half_angle())
    );
    for (name, verdict) in [("NOMIO", &nomio), ("NIO", &nio)] {
        let _ = writeln!(out, "{name} = {}", verdict.is_member);
        if let Some(w) = &verdict.witness {
            let iv = w.input.bloch();
            let ov = w.output.bloch();
            let _ = writeln!(
                out,
                "  witness: input bloch = ({}, {}, {}) -> output bloch = ({}, {}, {}), \
                 distance to segment = {}",
                fmt7(iv.x),
                fmt7(iv.y),
                fmt7(iv.z),
                fmt7(ov.x),
                fmt7(ov.y),
                fmt7(ov.z),
                fmt7(w.distance)
            );
        }
    }
    Ok(out)
}
