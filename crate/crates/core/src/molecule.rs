//! Spectroscopic constants for diatomic molecules.
//!
//! Ten molecules are built in. Extra records can be read from a small
//! comma-separated file:
//!
//! ```text
//! name,re_angstrom,alpha_per_angstrom,mu_amu,De_per_cm
//! # comment lines start with '#'
//! CO,1.1282,2.2994,6.860586,87471.42567
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Result, SpectraError};
use crate::units;

pub const MOLECULE_HEADER: &str = "name,re_angstrom,alpha_per_angstrom,mu_amu,De_per_cm";

/// Spectroscopic constants of one diatomic molecule.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeParams {
    pub name: String,
    /// Equilibrium bond length in Å.
    pub r_e: f64,
    /// Screening parameter in Å⁻¹.
    pub alpha: f64,
    /// Reduced mass in amu.
    pub mu: f64,
    /// Dissociation energy in cm⁻¹.
    pub d_e: f64,
}

impl MoleculeParams {
    pub fn new(name: &str, r_e: f64, alpha: f64, mu: f64, d_e: f64) -> Result<Self> {
        let m = Self {
            name: name.trim().to_string(),
            r_e,
            alpha,
            mu,
            d_e,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(SpectraError::InvalidInput("molecule name is empty".into()));
        }
        for (label, v) in [
            ("r_e", self.r_e),
            ("alpha", self.alpha),
            ("mu", self.mu),
            ("D_e", self.d_e),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(SpectraError::InvalidInput(format!(
                    "{}: {label} must be positive and finite, got {v}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Dissociation energy in eV.
    pub fn d_e_ev(&self) -> f64 {
        units::cm_inv_to_ev(self.d_e)
    }

    /// One CSV record in the molecule-file layout.
    pub fn to_csv_record(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.name, self.r_e, self.alpha, self.mu, self.d_e
        )
    }
}

/// Canonical lookup key: case-folded, Unicode subscript digits mapped to ASCII.
pub fn normalize_name(name: &str) -> String {
    name.trim()
        .chars()
        .map(|c| match c {
            '₀'..='₉' => char::from_digit(c as u32 - '₀' as u32, 10).unwrap(),
            _ => c,
        })
        .flat_map(char::to_lowercase)
        .collect()
}

/// The ten molecules of the reference parameter table.
pub fn builtin_molecules() -> Vec<MoleculeParams> {
    const ROWS: [(&str, f64, f64, f64, f64); 10] = [
        ("NO", 1.1508, 2.7534, 7.468441, 64877.06229),
        ("CO", 1.1282, 2.2994, 6.860586, 87471.42567),
        ("I2", 2.6620, 1.8643, 63.452235, 12758.0129),
        ("N2", 1.0940, 2.6989, 7.00335, 96288.03528),
        ("O2", 1.2070, 2.6636, 7.997457504, 41591.26201),
        ("H2", 0.7416, 1.9426, 0.50391, 38267.78314),
        ("HF", 0.9170, 2.2266, 0.96367, 49382.0),
        ("LiH", 1.5956, 1.1280, 0.8801221, 20287.13295),
        ("ScH", 1.7080, 1.5068, 10.682771, 36778.8836),
        ("HCl", 1.2746, 1.8677, 0.9801045, 37255.24414),
    ];
    ROWS.iter()
        .map(|&(name, r_e, alpha, mu, d_e)| MoleculeParams {
            name: name.to_string(),
            r_e,
            alpha,
            mu,
            d_e,
        })
        .collect()
}

fn parse_field(field: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = field.trim().parse().map_err(|_| SpectraError::Parse {
        line,
        message: format!("{what}: `{}` is not a number", field.trim()),
    })?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(SpectraError::Parse {
            line,
            message: format!("{what} must be positive, got {v}"),
        });
    }
    Ok(v)
}

/// Parses molecule records from text in the molecule-file layout.
pub fn parse_molecules(text: &str) -> Result<Vec<MoleculeParams>> {
    let mut out: Vec<MoleculeParams> = Vec::new();
    let mut seen_header = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !seen_header {
            let header: Vec<&str> = line.split(',').map(str::trim).collect();
            let expected: Vec<&str> = MOLECULE_HEADER.split(',').collect();
            if header != expected {
                return Err(SpectraError::Parse {
                    line: line_no,
                    message: format!("expected header `{MOLECULE_HEADER}`"),
                });
            }
            seen_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(SpectraError::Parse {
                line: line_no,
                message: format!("expected 5 fields, found {}", fields.len()),
            });
        }
        let name = fields[0].trim();
        if name.is_empty() {
            return Err(SpectraError::Parse {
                line: line_no,
                message: "empty molecule name".into(),
            });
        }
        let key = normalize_name(name);
        if out.iter().any(|m| normalize_name(&m.name) == key) {
            return Err(SpectraError::Parse {
                line: line_no,
                message: format!("duplicate molecule `{name}`"),
            });
        }
        out.push(MoleculeParams {
            name: name.to_string(),
            r_e: parse_field(fields[1], line_no, "re_angstrom")?,
            alpha: parse_field(fields[2], line_no, "alpha_per_angstrom")?,
            mu: parse_field(fields[3], line_no, "mu_amu")?,
            d_e: parse_field(fields[4], line_no, "De_per_cm")?,
        });
    }
    if !seen_header {
        return Err(SpectraError::Parse {
            line: 1,
            message: format!("missing header `{MOLECULE_HEADER}`"),
        });
    }
    Ok(out)
}

/// Reads a molecule file.
pub fn load_molecules(path: &Path) -> Result<Vec<MoleculeParams>> {
    let text = std::fs::read_to_string(path).map_err(|e| SpectraError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_molecules(&text)
}

/// Writes records in the molecule-file layout, header included.
pub fn serialize_molecules(molecules: &[MoleculeParams]) -> String {
    let mut s = String::new();
    writeln!(s, "{MOLECULE_HEADER}").unwrap();
    for m in molecules {
        writeln!(s, "{}", m.to_csv_record()).unwrap();
    }
    s
}

/// An immutable, name-indexed set of molecules.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeDb {
    entries: Vec<MoleculeParams>,
}

impl MoleculeDb {
    pub fn builtin() -> Self {
        Self {
            entries: builtin_molecules(),
        }
    }

    /// Returns a copy with `extra` merged in; records with a matching name replace
    /// the existing ones in place, new names are appended.
    pub fn merged(&self, extra: Vec<MoleculeParams>) -> Self {
        let mut entries = self.entries.clone();
        for m in extra {
            let key = normalize_name(&m.name);
            match entries.iter_mut().find(|e| normalize_name(&e.name) == key) {
                Some(slot) => *slot = m,
                None => entries.push(m),
            }
        }
        Self { entries }
    }

    /// Builtins, overridden by the file named in `DF_SPECTRA_MOLECULES` if set.
    pub fn from_env() -> Result<Self> {
        let db = Self::builtin();
        match std::env::var_os("DF_SPECTRA_MOLECULES") {
            Some(p) if !p.is_empty() => Ok(db.merged(load_molecules(Path::new(&p))?)),
            _ => Ok(db),
        }
    }

    pub fn get(&self, name: &str) -> Result<&MoleculeParams> {
        let key = normalize_name(name);
        self.entries
            .iter()
            .find(|m| normalize_name(&m.name) == key)
            .ok_or_else(|| SpectraError::UnknownMolecule(name.to_string()))
    }

    pub fn molecules(&self) -> &[MoleculeParams] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builtin_table() {
        let db = MoleculeDb::builtin();
        assert_eq!(db.len(), 10);
        let co = db.get("CO").unwrap();
        assert_eq!((co.r_e, co.alpha, co.mu, co.d_e), (1.1282, 2.2994, 6.860586, 87471.42567));
        let i2 = db.get("I2").unwrap();
        assert_eq!((i2.r_e, i2.alpha, i2.mu, i2.d_e), (2.6620, 1.8643, 63.452235, 12758.0129));
        for m in db.molecules() {
            m.validate().unwrap();
        }
        let names: Vec<_> = db.molecules().iter().map(|m| normalize_name(&m.name)).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(!names[i + 1..].contains(n), "duplicate {n}");
        }
    }

    #[test]
    fn case_and_subscript_insensitive_lookup() {
        let db = MoleculeDb::builtin();
        assert_eq!(db.get("i2").unwrap().name, "I2");
        assert_eq!(db.get("I₂").unwrap().name, "I2");
        assert_eq!(db.get("lih").unwrap().name, "LiH");
        assert!(matches!(db.get("XeF"), Err(SpectraError::UnknownMolecule(_))));
    }

    #[test]
    fn co_row_round_trip() {
        let text = format!("{MOLECULE_HEADER}\nCO,1.1282,2.2994,6.860586,87471.42567\n");
        let parsed = parse_molecules(&text).unwrap();
        assert_eq!(parsed, vec![MoleculeDb::builtin().get("CO").unwrap().clone()]);
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_molecules(&format!("# nothing here\n{MOLECULE_HEADER}\n")).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_rows() {
        let neg = format!("{MOLECULE_HEADER}\nX,1.0,-1,1.0,100\n");
        assert!(matches!(parse_molecules(&neg), Err(SpectraError::Parse { line: 2, .. })));
        let dup = format!("{MOLECULE_HEADER}\n#c\nX,1,1,1,1\nx,1,1,1,1\n");
        assert!(matches!(parse_molecules(&dup), Err(SpectraError::Parse { line: 4, .. })));
        let short = format!("{MOLECULE_HEADER}\nX,1,1,1\n");
        assert!(matches!(parse_molecules(&short), Err(SpectraError::Parse { line: 2, .. })));
        let junk = format!("{MOLECULE_HEADER}\nX,1,abc,1,1\n");
        assert!(matches!(parse_molecules(&junk), Err(SpectraError::Parse { line: 2, .. })));
        assert!(matches!(parse_molecules("X,1,1,1,1\n"), Err(SpectraError::Parse { line: 1, .. })));
    }

    #[test]
    fn missing_file() {
        let err = load_molecules(Path::new("/definitely/not/here.csv")).unwrap_err();
        assert!(matches!(err, SpectraError::Io { .. }));
    }

    #[test]
    fn merge_overrides_by_name() {
        let db = MoleculeDb::builtin();
        let custom = MoleculeParams::new("co", 1.0, 2.0, 3.0, 4.0).unwrap();
        let extra = MoleculeParams::new("K2", 3.9051, 0.7, 19.48, 4440.0).unwrap();
        let merged = db.merged(vec![custom.clone(), extra]);
        assert_eq!(merged.len(), 11);
        assert_eq!(merged.get("CO").unwrap(), &custom);
        assert_eq!(merged.get("k2").unwrap().mu, 19.48);
        // The original is untouched.
        assert_eq!(db.get("CO").unwrap().r_e, 1.1282);
    }

    #[test]
    fn builtin_serialization_is_stable() {
        let text = serialize_molecules(&builtin_molecules());
        let again = serialize_molecules(&parse_molecules(&text).unwrap());
        assert_eq!(text, again);
    }

    fn positive() -> impl Strategy<Value = f64> {
        (1e-6f64..1e6).prop_map(|x| x)
    }

    proptest! {
        #[test]
        fn round_trip_is_stable(rows in proptest::collection::vec((positive(), positive(), positive(), positive()), 0..8)) {
            let mols: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(i, &(a, b, c, d))| MoleculeParams::new(&format!("M{i}"), a, b, c, d).unwrap())
                .collect();
            let text = serialize_molecules(&mols);
            let parsed = parse_molecules(&text).unwrap();
            prop_assert_eq!(&parsed, &mols);
            prop_assert_eq!(serialize_molecules(&parsed), text);
        }
    }
}
