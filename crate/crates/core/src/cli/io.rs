//! CSV and checksum helpers shared by the scenarios.

use std::io::{Read, Write};

use sha2::{Digest, Sha256};

use crate::error::{invalid, Result};
use crate::qcore::C64;
use crate::spectra::{DecoherenceTrajectory, SpectralProfile};

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-5, 1e16)` so tiny and huge values stay compact.
pub fn format_f64(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// An in-memory CSV document with a fixed header.
#[derive(Debug, Clone)]
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn push_f64(&mut self, row: &[f64]) {
        self.push(row.iter().map(|x| format_f64(*x)).collect());
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.into_inner()
            .map_err(|e| invalid(format!("csv buffer: {e}")))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_columns<R: Read>(reader: R, names: [&str; 3]) -> Result<[Vec<f64>; 3]> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut idx = [0usize; 3];
    for (slot, name) in idx.iter_mut().zip(names) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| invalid(format!("missing column {name}")))?;
    }
    let mut cols: [Vec<f64>; 3] = Default::default();
    for (line, record) in rdr.records().enumerate() {
        let record = record?;
        for (col, i) in cols.iter_mut().zip(idx) {
            let field = record.get(i).unwrap_or("");
            let v: f64 = field.parse().map_err(|_| {
                invalid(format!(
                    "row {}: cannot parse {field:?} as a number",
                    line + 1
                ))
            })?;
            col.push(v);
        }
    }
    Ok(cols)
}

/// Reads `(t, re_kappa, im_kappa)` rows.
pub fn read_trajectory<R: Read>(reader: R) -> Result<DecoherenceTrajectory> {
    let [t, re, im] = read_columns(reader, ["t", "re_kappa", "im_kappa"])?;
    let kappa = re.iter().zip(&im).map(|(a, b)| C64::new(*a, *b)).collect();
    DecoherenceTrajectory::new(t, kappa)
}

pub fn trajectory_table(traj: &DecoherenceTrajectory) -> Table {
    let mut table = Table::new(&["t", "re_kappa", "im_kappa"]);
    for (t, k) in traj.times().iter().zip(traj.kappa()) {
        table.push_f64(&[*t, k.re, k.im]);
    }
    table
}

pub fn write_trajectory<W: Write>(traj: &DecoherenceTrajectory, mut out: W) -> Result<()> {
    out.write_all(&trajectory_table(traj).to_bytes()?)?;
    Ok(())
}

/// Reads `(omega, density, phase)` rows.
pub fn read_profile<R: Read>(reader: R) -> Result<SpectralProfile> {
    let [omega, density, phase] = read_columns(reader, ["omega", "density", "phase"])?;
    SpectralProfile::new(omega, density, phase)
}

pub fn profile_table(profile: &SpectralProfile) -> Table {
    let mut table = Table::new(&["omega", "density", "phase"]);
    for ((w, d), p) in profile
        .omega()
        .iter()
        .zip(profile.density())
        .zip(profile.phase())
    {
        table.push_f64(&[*w, *d, *p]);
    }
    table
}

pub fn write_profile<W: Write>(profile: &SpectralProfile, mut out: W) -> Result<()> {
    out.write_all(&profile_table(profile).to_bytes()?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::linspace;

    #[test]
    fn float_format() {
        assert_eq!(format_f64(0.0), "0");
        assert_eq!(format_f64(0.25), "0.25");
        assert_eq!(format_f64(-3.0), "-3");
        assert_eq!(format_f64(1e-7), "1e-7");
        assert_eq!(format_f64(f64::INFINITY), "inf");
        for x in [0.1 + 0.2, 1.0 / 3.0, 2.5e-9, 6.02e23] {
            assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn table_uses_lf() {
        let mut t = Table::new(&["a", "b"]);
        t.push_f64(&[1.0, 2.5]);
        assert_eq!(t.to_bytes().unwrap(), b"a,b\n1,2.5\n");
    }

    #[test]
    fn trajectory_round_trip() {
        let traj = DecoherenceTrajectory::from_fn(linspace(0.0, 2.0, 21), |t| {
            C64::from_polar((-t).exp(), 0.3 * t)
        })
        .unwrap();
        let mut buf = Vec::new();
        write_trajectory(&traj, &mut buf).unwrap();
        let back = read_trajectory(buf.as_slice()).unwrap();
        assert_eq!(back, traj);
    }

    #[test]
    fn profile_round_trip() {
        let p = SpectralProfile::gaussian(0.5, 1.0, 101).unwrap();
        let mut buf = Vec::new();
        write_profile(&p, &mut buf).unwrap();
        let back = read_profile(buf.as_slice()).unwrap();
        assert_eq!(back.density(), p.density());
        assert_eq!(back.omega(), p.omega());
    }

    #[test]
    fn missing_column_is_rejected() {
        let csv = "t,re\n0,1\n";
        assert!(read_trajectory(csv.as_bytes()).is_err());
        let csv = "t,re_kappa,im_kappa\n0,1,x\n";
        assert!(read_trajectory(csv.as_bytes()).is_err());
    }

    #[test]
    fn checksum() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
