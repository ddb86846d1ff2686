use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use df_spectra::fd_oracle::{compare_with_closed_form, GridSpec};
use df_spectra::molecule::serialize_molecules;
use df_spectra::nu::{energy, potential_eval};
use df_spectra::reference::{self, VerifyOptions};
use df_spectra::wavefunction::{self, RadialWavefunction};
use df_spectra::{make_config, MoleculeDb, MoleculeParams, PotentialSpec, QuantumState, SpectraError};

mod fmt;

use fmt::sig12;

const EXIT_DATA: u8 = 2;
const EXIT_UNBOUND: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "df-spectra", version, about = "Deng-Fan ro-vibrational spectra in N dimensions and fractional order")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-state energy.
    Energy(EnergyArgs),
    /// Energy table over molecules, states, dimensions and orders.
    Table(TableArgs),
    /// Recompute the embedded reference tables.
    Verify(VerifyArgs),
    /// Fit the auxiliary order γ to a fractional column.
    Calibrate(CalibrateArgs),
    /// Sample a radial wavefunction.
    Wavefunction(WavefunctionArgs),
    /// Sample the potential curve.
    Potential(PotentialArgs),
    /// Compare closed-form energies with the finite-difference solver.
    Oracle(OracleArgs),
    /// List known molecules in molecule-file format.
    Molecules,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Potential {
    Df,
    Sdf,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct PotentialFlags {
    #[arg(long, value_enum, default_value = "df")]
    potential: Potential,
    /// Constant shift in eV (general potential only).
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<f64>,
}

#[derive(Args)]
struct OrderFlags {
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

#[derive(Args)]
struct EnergyArgs {
    #[arg(long)]
    molecule: String,
    #[command(flatten)]
    pot: PotentialFlags,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    #[arg(long, default_value_t = 3)]
    dim: u32,
    #[command(flatten)]
    order: OrderFlags,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated names, or `all`.
    #[arg(long, default_value = "all")]
    molecules: String,
    #[command(flatten)]
    pot: PotentialFlags,
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    #[arg(long, default_value_t = 3)]
    l_max: u32,
    /// Include l > n (by default l runs up to min(n, l-max)).
    #[arg(long)]
    all_l: bool,
    #[arg(long, default_value = "3")]
    dims: String,
    #[arg(long, default_value = "1")]
    deltas: String,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated table ids, or `all`.
    #[arg(long, default_value = "all")]
    tables: String,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    delta_one_only: bool,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    strict: bool,
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long, required_unless_present = "all")]
    table: Option<String>,
    #[arg(long, required_unless_present = "all")]
    delta: Option<f64>,
    /// Every fractional column of every table, as CSV.
    #[arg(long, conflicts_with_all = ["table", "delta"])]
    all: bool,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[arg(long)]
    molecule: String,
    #[command(flatten)]
    pot: PotentialFlags,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 3)]
    dim: u32,
    #[command(flatten)]
    order: OrderFlags,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = wavefunction::DEFAULT_QUADRATURE_POINTS)]
    quadrature_points: usize,
}

#[derive(Args)]
struct PotentialArgs {
    /// Comma-separated names, or `all`.
    #[arg(long)]
    molecules: String,
    #[command(flatten)]
    pot: PotentialFlags,
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    molecule: String,
    #[command(flatten)]
    pot: PotentialFlags,
    /// Comma-separated l values.
    #[arg(long, default_value = "0")]
    l: String,
    #[arg(long, default_value_t = 3)]
    dim: u32,
    #[arg(long, default_value_t = 3)]
    n_max: u32,
    #[arg(long, default_value_t = df_spectra::fd_oracle::DEFAULT_POINTS)]
    points: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
    Unbound(String),
    Failed(String),
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        let msg = e.to_string();
        match e {
            SpectraError::UnknownMolecule(_) | SpectraError::Io { .. } | SpectraError::Parse { .. } => {
                CliError::Data(msg)
            }
            SpectraError::NoBoundState(_) => CliError::Unbound(msg),
            SpectraError::InvalidInput(_) | SpectraError::Pole(_) => CliError::Usage(msg),
            SpectraError::Convergence { .. } | SpectraError::Numerical(_) => CliError::Failed(msg),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (code, msg) = match e {
                CliError::Usage(m) => (EXIT_USAGE, m),
                CliError::Data(m) => (EXIT_DATA, m),
                CliError::Unbound(m) => (EXIT_UNBOUND, m),
                CliError::Failed(m) => (1, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command, out: &mut String) -> CliResult<u8> {
    match cmd {
        Command::Energy(a) => cmd_energy(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Calibrate(a) => cmd_calibrate(a, out),
        Command::Wavefunction(a) => cmd_wavefunction(a, out),
        Command::Potential(a) => cmd_potential(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Molecules => {
            let db = MoleculeDb::from_env()?;
            out.push_str(&serialize_molecules(db.molecules()));
            Ok(0)
        }
    }
}

fn database() -> CliResult<MoleculeDb> {
    Ok(MoleculeDb::from_env()?)
}

fn build_spec(m: &MoleculeParams, flags: &PotentialFlags) -> CliResult<PotentialSpec> {
    let spec = match (flags.potential, flags.v0) {
        (Potential::Df, None) => PotentialSpec::deng_fan(m)?,
        (Potential::Sdf, None) => PotentialSpec::shifted_deng_fan(m)?,
        (Potential::General, Some(v0)) => PotentialSpec::general(m, v0)?,
        (Potential::General, None) => {
            return Err(CliError::Usage("--potential general requires --v0".into()))
        }
        (_, Some(_)) => {
            return Err(CliError::Usage("--v0 is only valid with --potential general".into()))
        }
    };
    Ok(spec)
}

fn potential_name(p: Potential) -> &'static str {
    match p {
        Potential::Df => "df",
        Potential::Sdf => "sdf",
        Potential::General => "general",
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    let items: Vec<&str> = s.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
    if items.is_empty() {
        return Err(CliError::Usage(format!("{what} list is empty")));
    }
    items
        .into_iter()
        .map(|x| {
            x.parse()
                .map_err(|_| CliError::Usage(format!("invalid {what} `{x}`")))
        })
        .collect()
}

fn select_molecules(db: &MoleculeDb, list: &str) -> CliResult<Vec<MoleculeParams>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(db.molecules().to_vec());
    }
    let names: Vec<String> = parse_list(list, "molecule")?;
    names.iter().map(|n| Ok(db.get(n)?.clone())).collect()
}

fn cmd_energy(a: EnergyArgs, out: &mut String) -> CliResult<u8> {
    let db = database()?;
    let cfg = make_config(a.order.delta, a.order.gamma)?;
    let m = db.get(&a.molecule)?;
    let spec = build_spec(m, &a.pot)?;
    let state = QuantumState::new(a.n, a.l, a.dim)?;
    let e = energy(&spec, &state, &cfg)?;
    match a.format {
        Format::Text => writeln!(out, "{:.8}", e.e_ev).unwrap(),
        Format::Json => {
            let v = serde_json::json!({
                "molecule": m.name,
                "potential": potential_name(a.pot.potential),
                "v0_ev": spec.v0,
                "n": a.n,
                "l": a.l,
                "dim": a.dim,
                "delta": cfg.delta,
                "gamma": cfg.gamma_param,
                "q": cfg.q,
                "e_ev": e.e_ev,
                "epsilon": e.epsilon,
                "sqrt_s": e.sqrt_s,
                "root": e.root,
                "numerator": e.numerator,
                "denominator": e.denominator,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        Format::Csv => {
            out.push_str("molecule,potential,v0_ev,n,l,dim,delta,gamma,e_ev,epsilon,sqrt_s,root\n");
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                m.name,
                potential_name(a.pot.potential),
                sig12(spec.v0),
                a.n,
                a.l,
                a.dim,
                cfg.delta,
                cfg.gamma_param,
                sig12(e.e_ev),
                sig12(e.epsilon),
                sig12(e.sqrt_s),
                sig12(e.root)
            )
            .unwrap();
        }
    }
    Ok(0)
}

fn cmd_table(a: TableArgs, out: &mut String) -> CliResult<u8> {
    let db = database()?;
    let mols = select_molecules(&db, &a.molecules)?;
    let dims: Vec<u32> = parse_list(&a.dims, "dimension")?;
    let deltas: Vec<f64> = parse_list(&a.deltas, "delta")?;
    let cfgs = deltas
        .iter()
        .map(|&d| make_config(d, a.gamma))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::from("molecule,potential,n,l,dim,delta,gamma,e_ev,status\n");
    for m in &mols {
        let spec = build_spec(m, &a.pot)?;
        for n in 0..=a.n_max {
            let l_top = if a.all_l { a.l_max } else { a.l_max.min(n) };
            for l in 0..=l_top {
                for &dim in &dims {
                    let state = QuantumState::new(n, l, dim)?;
                    for cfg in &cfgs {
                        let (e, status) = match energy(&spec, &state, cfg) {
                            Ok(r) => (format!("{:.8}", r.e_ev), "ok"),
                            Err(SpectraError::NoBoundState(_)) => (String::new(), "unbound"),
                            Err(e) => return Err(e.into()),
                        };
                        writeln!(
                            text,
                            "{},{},{n},{l},{dim},{},{},{e},{status}",
                            m.name,
                            potential_name(a.pot.potential),
                            cfg.delta,
                            cfg.gamma_param
                        )
                        .unwrap();
                    }
                }
            }
        }
    }
    match a.output {
        Some(path) => std::fs::write(&path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))?,
        None => out.push_str(&text),
    }
    Ok(0)
}

fn cmd_verify(a: VerifyArgs, out: &mut String) -> CliResult<u8> {
    let ids: Vec<String> = parse_list(&a.tables, "table")?;
    let tables = reference::select_tables(&ids).map_err(|e| CliError::Data(e.to_string()))?;
    let opts = VerifyOptions {
        tol: a.tol,
        delta_one_only: a.delta_one_only,
        strict: a.strict,
        gamma: a.gamma,
    };
    let report = reference::verify(&tables, &opts);
    for t in &report.tables {
        let ok = t.max_dev_classical <= a.tol;
        write!(
            out,
            "{:<14} delta=1 rows {:>3}  max dev {:.3e}  {}",
            t.id,
            t.classical_rows,
            t.max_dev_classical,
            if ok { "PASS" } else { "FAIL" }
        )
        .unwrap();
        if t.fractional_rows > 0 {
            let frac_ok = t.max_dev_fractional <= a.tol;
            let label = match (frac_ok, a.strict) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "WARN",
            };
            write!(
                out,
                " | fractional rows {:>3}  max dev {:.3e}  {label}",
                t.fractional_rows, t.max_dev_fractional
            )
            .unwrap();
        }
        out.push('\n');
        for e in &t.errors {
            writeln!(out, "  error: {e}").unwrap();
        }
    }
    writeln!(
        out,
        "rigid shift max dev {:.3e}  {}",
        report.rigid_shift_max,
        if report.rigid_shift_max <= reference::RIGID_SHIFT_TOL { "PASS" } else { "FAIL" }
    )
    .unwrap();
    writeln!(out, "{}", if report.passed { "verify: PASS" } else { "verify: FAIL" }).unwrap();
    Ok(if report.passed { 0 } else { 1 })
}

fn cmd_calibrate(a: CalibrateArgs, out: &mut String) -> CliResult<u8> {
    if a.all {
        out.push_str(&reference::calibration_csv()?);
        return Ok(0);
    }
    let id = a.table.unwrap_or_default();
    let delta = a.delta.unwrap_or(1.0);
    let tables = reference::select_tables(std::slice::from_ref(&id))
        .map_err(|e| CliError::Data(e.to_string()))?;
    let r = reference::calibrate(&tables[0], delta).map_err(|e| match e {
        SpectraError::InvalidInput(m) => CliError::Data(m),
        other => other.into(),
    })?;
    writeln!(out, "{}", reference::CalibrationReport::CSV_HEADER).unwrap();
    writeln!(out, "{}", r.to_csv_record()).unwrap();
    Ok(0)
}

fn cmd_wavefunction(a: WavefunctionArgs, out: &mut String) -> CliResult<u8> {
    let db = database()?;
    let cfg = make_config(a.order.delta, a.order.gamma)?;
    let m = db.get(&a.molecule)?;
    let spec = build_spec(m, &a.pot)?;
    let state = QuantumState::new(a.n, a.l, a.dim)?;
    let wf = RadialWavefunction::new(&spec, &state, &cfg)?;
    let wf = wavefunction::normalize(&wf, a.quadrature_points)?;
    let r_min = a.r_min.unwrap_or(1e-3 / m.alpha);
    let r_max = a.r_max.unwrap_or(m.r_e + 10.0 / m.alpha);
    if !(r_min > 0.0 && r_min < r_max) || a.samples < 2 {
        return Err(CliError::Usage("need 0 < r-min < r-max and at least 2 samples".into()));
    }
    writeln!(out, "# molecule={} potential={}", m.name, potential_name(a.pot.potential)).unwrap();
    writeln!(
        out,
        "# n={} l={} dim={} delta={} gamma={}",
        a.n, a.l, a.dim, cfg.delta, cfg.gamma_param
    )
    .unwrap();
    writeln!(out, "# e_ev={} g_n={}", sig12(wf.e_ev), sig12(wf.g_n)).unwrap();
    writeln!(out, "# experimental={}", wf.is_experimental()).unwrap();
    out.push_str("r_angstrom,phi,F,rho\n");
    let h = (r_max - r_min) / (a.samples - 1) as f64;
    for i in 0..a.samples {
        let r = r_min + i as f64 * h;
        writeln!(
            out,
            "{},{},{},{}",
            sig12(r),
            sig12(wavefunction::evaluate(&wf, r)),
            sig12(wf.f_of_r(r)),
            sig12(wf.rho(r))
        )
        .unwrap();
    }
    Ok(0)
}

fn cmd_potential(a: PotentialArgs, out: &mut String) -> CliResult<u8> {
    let db = database()?;
    let mols = select_molecules(&db, &a.molecules)?;
    if a.samples < 2 {
        return Err(CliError::Usage("need at least 2 samples".into()));
    }
    out.push_str("molecule,potential,r_angstrom,v_ev\n");
    for m in &mols {
        let spec = build_spec(m, &a.pot)?;
        let r_min = a.r_min.unwrap_or(0.5 * m.r_e);
        let r_max = a.r_max.unwrap_or(m.r_e + 10.0 / m.alpha);
        if !(r_min > 0.0 && r_min < r_max) {
            return Err(CliError::Usage("need 0 < r-min < r-max".into()));
        }
        let h = (r_max - r_min) / (a.samples - 1) as f64;
        let mut rs: Vec<f64> = (0..a.samples).map(|i| r_min + i as f64 * h).collect();
        if !rs.contains(&m.r_e) {
            rs.push(m.r_e);
            rs.sort_by(f64::total_cmp);
        }
        for r in rs {
            writeln!(
                out,
                "{},{},{},{}",
                m.name,
                potential_name(a.pot.potential),
                sig12(r),
                sig12(potential_eval(&spec, r)?)
            )
            .unwrap();
        }
    }
    Ok(0)
}

fn cmd_oracle(a: OracleArgs, out: &mut String) -> CliResult<u8> {
    let db = database()?;
    let m = db.get(&a.molecule)?;
    let spec = build_spec(m, &a.pot)?;
    let ls: Vec<u32> = parse_list(&a.l, "l")?;
    let mut grid = GridSpec::default_for(&spec);
    grid.points = a.points;
    let rows = compare_with_closed_form(&spec, &ls, a.dim, 0..=a.n_max, &grid)?;
    out.push_str("molecule,n,l,closed_form_ev,fd_pekeris_ev,fd_exact_ev,delta_pekeris_ev,delta_exact_ev,estimated_error_ev\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            m.name,
            r.n,
            r.l,
            sig12(r.closed_form),
            sig12(r.fd_pekeris),
            sig12(r.fd_exact),
            sig12(r.delta_pekeris()),
            sig12(r.delta_exact()),
            sig12(r.estimated_error)
        )
        .unwrap();
    }
    Ok(0)
}
