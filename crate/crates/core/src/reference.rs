//! Embedded reference energy tables, verification and γ calibration.
//!
//! Each row carries the molecular constants it was computed with, in the
//! molecule-file layout, followed by the state and the printed value.
//! Shifted-potential tables list `−E`; [`ReferenceRow::expected_e_ev`] undoes
//! the sign.

use std::collections::BTreeMap;

use crate::error::{Result, SpectraError};
use crate::gfd::{make_config, FractionalConfig};
use crate::molecule::MoleculeParams;
use crate::nu::{energy, PotentialSpec, QuantumState, Variant};

pub const REFERENCE_CSV: &str = include_str!("../data/reference_tables.csv");
pub const CALIBRATION_CSV: &str = include_str!("../data/calibration.csv");

const HEADER: &str =
    "table,name,re_angstrom,alpha_per_angstrom,mu_amu,De_per_cm,potential,n,l,dim,delta,printed_ev";

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRow {
    pub table: String,
    pub molecule: MoleculeParams,
    pub variant: Variant,
    pub n: u32,
    pub l: u32,
    pub dim: u32,
    pub delta: f64,
    /// As printed; `−E` for shifted tables.
    pub printed: f64,
}

impl ReferenceRow {
    pub fn expected_e_ev(&self) -> f64 {
        match self.variant {
            Variant::ShiftedDengFan => -self.printed,
            _ => self.printed,
        }
    }

    pub fn spec(&self) -> Result<PotentialSpec> {
        match self.variant {
            Variant::ShiftedDengFan => PotentialSpec::shifted_deng_fan(&self.molecule),
            _ => PotentialSpec::deng_fan(&self.molecule),
        }
    }

    pub fn state(&self) -> Result<QuantumState> {
        QuantumState::new(self.n, self.l, self.dim)
    }

    pub fn is_classical(&self) -> bool {
        self.delta == 1.0
    }

    /// Closed-form energy for this row at auxiliary order `gamma`.
    pub fn compute(&self, gamma: f64) -> Result<f64> {
        let cfg = make_config(self.delta, gamma)?;
        Ok(energy(&self.spec()?, &self.state()?, &cfg)?.e_ev)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceTable {
    pub id: String,
    pub caption: String,
    pub rows: Vec<ReferenceRow>,
}

fn caption(id: &str) -> String {
    let (kind, rest) = id.split_once('-').unwrap_or((id, ""));
    let names: Vec<String> = rest
        .split('-')
        .map(|m| match m {
            "co" => "CO".into(),
            "no" => "NO".into(),
            "n2" => "N2".into(),
            "i2" => "I2".into(),
            "o2" => "O2".into(),
            "h2" => "H2".into(),
            "hf" => "HF".into(),
            "lih" => "LiH".into(),
            "sch" => "ScH".into(),
            "hcl" => "HCl".into(),
            other => other.to_uppercase(),
        })
        .collect();
    let list = match names.len() {
        0 | 1 => names.join(""),
        _ => format!(
            "{} and {}",
            names[..names.len() - 1].join(", "),
            names[names.len() - 1]
        ),
    };
    match kind {
        "sdfp" => format!("-E_nl (eV) of SDFP for {list}"),
        _ => format!("E_nl (eV) of DFP for {list}"),
    }
}

fn parse_rows(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == HEADER => {}
        _ => {
            return Err(SpectraError::Parse {
                line: 1,
                message: "missing reference table header".into(),
            })
        }
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = |message: String| SpectraError::Parse { line: line_no, message };
        if f.len() != 12 {
            return Err(bad(format!("expected 12 fields, got {}", f.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number")));
        let int = |s: &str| s.parse::<u32>().map_err(|_| bad(format!("`{s}` is not an integer")));
        let molecule = MoleculeParams::new(f[1], num(f[2])?, num(f[3])?, num(f[4])?, num(f[5])?)
            .map_err(|e| bad(e.to_string()))?;
        let variant = match f[6] {
            "df" => Variant::DengFan,
            "sdf" => Variant::ShiftedDengFan,
            other => return Err(bad(format!("unknown potential `{other}`"))),
        };
        rows.push(ReferenceRow {
            table: f[0].to_string(),
            molecule,
            variant,
            n: int(f[7])?,
            l: int(f[8])?,
            dim: int(f[9])?,
            delta: num(f[10])?,
            printed: f[11].parse().map_err(|_| bad(format!("`{}` is not a number", f[11])))?,
        });
    }
    Ok(rows)
}

/// All embedded tables, in file order.
pub fn reference_tables() -> Vec<ReferenceTable> {
    let rows = parse_rows(REFERENCE_CSV).expect("embedded reference data is well formed");
    let mut tables: Vec<ReferenceTable> = Vec::new();
    for row in rows {
        match tables.iter_mut().find(|t| t.id == row.table) {
            Some(t) => t.rows.push(row),
            None => tables.push(ReferenceTable {
                id: row.table.clone(),
                caption: caption(&row.table),
                rows: vec![row],
            }),
        }
    }
    tables
}

/// Tables selected by id; `["all"]` or an empty list selects everything.
pub fn select_tables(ids: &[String]) -> Result<Vec<ReferenceTable>> {
    let all = reference_tables();
    if ids.is_empty() || ids.iter().any(|i| i == "all") {
        return Ok(all);
    }
    ids.iter()
        .map(|id| {
            all.iter()
                .find(|t| &t.id == id)
                .cloned()
                .ok_or_else(|| SpectraError::InvalidInput(format!("unknown table `{id}`")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub id: String,
    pub caption: String,
    pub classical_rows: usize,
    pub fractional_rows: usize,
    pub max_dev_classical: f64,
    pub max_dev_fractional: f64,
    /// Rows whose computation failed, with the error message.
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    pub delta_one_only: bool,
    pub strict: bool,
    pub gamma: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            delta_one_only: true,
            strict: false,
            gamma: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub tables: Vec<TableReport>,
    /// Largest `|E_sdf − (E_df − D_e)|` over the shifted rows checked.
    pub rigid_shift_max: f64,
    pub passed: bool,
}

pub const RIGID_SHIFT_TOL: f64 = 1e-9;

pub fn verify(tables: &[ReferenceTable], opts: &VerifyOptions) -> VerifyReport {
    let mut reports = Vec::new();
    let mut rigid: f64 = 0.0;
    let mut passed = true;
    for t in tables {
        let mut rep = TableReport {
            id: t.id.clone(),
            caption: t.caption.clone(),
            classical_rows: 0,
            fractional_rows: 0,
            max_dev_classical: 0.0,
            max_dev_fractional: 0.0,
            errors: Vec::new(),
        };
        for row in &t.rows {
            let classical = row.is_classical();
            if !classical && opts.delta_one_only {
                continue;
            }
            let dev = match row.compute(opts.gamma) {
                Ok(e) => (e - row.expected_e_ev()).abs(),
                Err(e) => {
                    rep.errors.push(format!("{} n={} l={} N={} δ={}: {e}", row.molecule.name, row.n, row.l, row.dim, row.delta));
                    f64::INFINITY
                }
            };
            if classical {
                rep.classical_rows += 1;
                rep.max_dev_classical = rep.max_dev_classical.max(dev);
            } else {
                rep.fractional_rows += 1;
                rep.max_dev_fractional = rep.max_dev_fractional.max(dev);
            }
            if row.variant == Variant::ShiftedDengFan {
                if let Ok(d) = rigid_shift_deviation(row, opts.gamma) {
                    rigid = rigid.max(d);
                }
            }
        }
        if rep.max_dev_classical > opts.tol || (opts.strict && rep.max_dev_fractional > opts.tol) {
            passed = false;
        }
        reports.push(rep);
    }
    if rigid > RIGID_SHIFT_TOL {
        passed = false;
    }
    VerifyReport {
        tables: reports,
        rigid_shift_max: rigid,
        passed,
    }
}

fn rigid_shift_deviation(row: &ReferenceRow, gamma: f64) -> Result<f64> {
    let cfg = make_config(row.delta, gamma)?;
    let state = row.state()?;
    let df = PotentialSpec::deng_fan(&row.molecule)?;
    let sdf = PotentialSpec::shifted_deng_fan(&row.molecule)?;
    let a = energy(&df, &state, &cfg)?.e_ev;
    let b = energy(&sdf, &state, &cfg)?.e_ev;
    Ok((b - (a - df.d_e_ev)).abs())
}

pub const GAMMA_MIN: f64 = 0.05;
pub const GAMMA_MAX: f64 = 5.0;
pub const GAMMA_STEP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationReport {
    pub table: String,
    pub delta: f64,
    pub rows: usize,
    pub gamma_star: f64,
    pub rms_star: f64,
    pub rms_gamma_one: f64,
    /// `rms(γ=1) ≤ 2·rms*`
    pub gamma_one_within_2x: bool,
}

impl CalibrationReport {
    pub const CSV_HEADER: &'static str =
        "table,delta,rows,gamma_star,rms_star_ev,rms_gamma1_ev,gamma1_within_2x";

    pub fn to_csv_record(&self) -> String {
        format!(
            "{},{},{},{:.9},{:.6e},{:.6e},{}",
            self.table,
            self.delta,
            self.rows,
            self.gamma_star,
            self.rms_star,
            self.rms_gamma_one,
            self.gamma_one_within_2x
        )
    }
}

fn rms_at(rows: &[&ReferenceRow], gamma: f64) -> f64 {
    let mut sum = 0.0;
    for r in rows {
        match r.compute(gamma) {
            Ok(e) => sum += (e - r.expected_e_ev()).powi(2),
            Err(_) => return f64::INFINITY,
        }
    }
    (sum / rows.len() as f64).sqrt()
}

/// Scans γ over `[0.05, 5]` in steps of 10⁻³, then refines the best grid
/// point by golden-section search on the neighbouring interval.
pub fn calibrate(table: &ReferenceTable, delta: f64) -> Result<CalibrationReport> {
    let rows: Vec<&ReferenceRow> = table.rows.iter().filter(|r| r.delta == delta).collect();
    if rows.is_empty() {
        return Err(SpectraError::InvalidInput(format!(
            "table `{}` has no rows at delta = {delta}",
            table.id
        )));
    }
    let steps = ((GAMMA_MAX - GAMMA_MIN) / GAMMA_STEP).round() as usize;
    let mut best = (f64::INFINITY, GAMMA_MIN);
    for i in 0..=steps {
        let g = GAMMA_MIN + i as f64 * GAMMA_STEP;
        let rms = rms_at(&rows, g);
        if rms < best.0 {
            best = (rms, g);
        }
    }
    if !best.0.is_finite() {
        return Err(SpectraError::NoBoundState("no γ on the grid yields every row"));
    }
    let (mut a, mut b) = (
        (best.1 - GAMMA_STEP).max(GAMMA_MIN),
        (best.1 + GAMMA_STEP).min(GAMMA_MAX),
    );
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut fc, mut fd) = (rms_at(&rows, c), rms_at(&rows, d));
    for _ in 0..60 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = rms_at(&rows, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = rms_at(&rows, d);
        }
    }
    let refined = 0.5 * (a + b);
    let refined_rms = rms_at(&rows, refined);
    let (rms_star, gamma_star) = if refined_rms < best.0 {
        (refined_rms, refined)
    } else {
        best
    };
    let rms_gamma_one = rms_at(&rows, 1.0);
    Ok(CalibrationReport {
        table: table.id.clone(),
        delta,
        rows: rows.len(),
        gamma_star,
        rms_star,
        rms_gamma_one,
        gamma_one_within_2x: rms_gamma_one <= 2.0 * rms_star,
    })
}

/// Distinct fractional orders (δ < 1) present in a table, ascending.
pub fn fractional_deltas(table: &ReferenceTable) -> Vec<f64> {
    let mut ds: Vec<f64> = table
        .rows
        .iter()
        .filter(|r| !r.is_classical())
        .map(|r| r.delta)
        .collect();
    ds.sort_by(f64::total_cmp);
    ds.dedup();
    ds
}

/// Calibration of every fractional column of every table, as CSV.
pub fn calibration_csv() -> Result<String> {
    let mut out = String::from(CalibrationReport::CSV_HEADER);
    out.push('\n');
    for t in reference_tables() {
        for d in fractional_deltas(&t) {
            out.push_str(&calibrate(&t, d)?.to_csv_record());
            out.push('\n');
        }
    }
    Ok(out)
}

/// Archived γ* per (table, δ), parsed from the embedded calibration report.
pub fn archived_gamma_star() -> BTreeMap<(String, String), f64> {
    CALIBRATION_CSV
        .lines()
        .skip(1)
        .filter_map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Some(((f[0].to_string(), f[1].to_string()), f.get(3)?.parse().ok()?))
        })
        .collect()
}

/// For each (n, l) at N = 3, computed energies across the fractional columns
/// (each at its own γ) and δ = 1; returns the rows where they fail to
/// increase strictly with δ.
pub fn delta_monotonicity_violations(
    table: &ReferenceTable,
    gamma_for: impl Fn(f64) -> f64,
) -> Result<Vec<(u32, u32)>> {
    let mut deltas = fractional_deltas(table);
    deltas.push(1.0);
    let mut keys: Vec<(u32, u32)> = table
        .rows
        .iter()
        .filter(|r| r.dim == 3 && !r.is_classical())
        .map(|r| (r.n, r.l))
        .collect();
    keys.dedup();
    let template = &table.rows[0];
    let spec = template.spec()?;
    let mut bad = Vec::new();
    for (n, l) in keys {
        let state = QuantumState::new(n, l, 3)?;
        let mut prev = f64::NEG_INFINITY;
        for &d in &deltas {
            let cfg = if d == 1.0 {
                FractionalConfig::classical()
            } else {
                make_config(d, gamma_for(d))?
            };
            let e = energy(&spec, &state, &cfg)?.e_ev;
            if !(e > prev) {
                bad.push((n, l));
                break;
            }
            prev = e;
        }
    }
    Ok(bad)
}
