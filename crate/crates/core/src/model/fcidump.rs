//! FCIDUMP export and import (chemist notation, hartree).

use std::io::{BufRead, Write};
use std::path::Path;

use nalgebra::DMatrix;

use super::hamiltonian::{BasisTag, SpinOrbitalHamiltonian, TwoBodyTensor};
use crate::error::{Error, Result};
use crate::units::{ev_to_hartree, hartree_to_ev};

/// Integrals smaller than this (hartree) are not written.
pub const FCIDUMP_ZERO_THRESHOLD: f64 = 1e-12;

/// Parsed FCIDUMP contents converted back to eV.
#[derive(Debug, Clone)]
pub struct Fcidump {
    pub n_electrons: usize,
    pub ms2: i64,
    pub hamiltonian: SpinOrbitalHamiltonian,
}

/// Fortran-style `%23.16E`.
fn fmt_value(v: f64) -> String {
    let s = format!("{:.16E}", v);
    let (mantissa, exp) = s.split_once('E').expect("E in scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{:>23}", format!("{mantissa}E{sign}{:02}", exp.abs()))
}

fn line<W: Write>(out: &mut W, v: f64, idx: [usize; 4]) -> std::io::Result<()> {
    writeln!(out, "{}{:4}{:4}{:4}{:4}", fmt_value(v), idx[0], idx[1], idx[2], idx[3])
}

/// Writes `ham` as FCIDUMP text with `NELEC = n_electrons`, `MS2 = 0`.
///
/// Two-body lines come first (one per symmetry class, 1-based indices),
/// then the lower triangle of the one-body matrix, then the core energy.
pub fn write_fcidump<W: Write>(ham: &SpinOrbitalHamiltonian, n_electrons: usize, out: &mut W) -> std::io::Result<()> {
    let k = ham.n_orbitals();
    writeln!(out, " &FCI NORB={k},NELEC={n_electrons},MS2=0,")?;
    writeln!(out, "  ORBSYM={}", "1,".repeat(k))?;
    writeln!(out, "  ISYM=1,")?;
    writeln!(out, " &END")?;
    for ([p, q, r, s], v) in ham.two_body.unique_entries() {
        let v = ev_to_hartree(v);
        if v.abs() >= FCIDUMP_ZERO_THRESHOLD {
            // canonical keys are p<=q, r<=s; FCIDUMP convention lists i>=j, k>=l
            line(out, v, [q + 1, p + 1, s + 1, r + 1])?;
        }
    }
    for i in 0..k {
        for j in 0..=i {
            let v = ev_to_hartree(ham.one_body[(i, j)]);
            if v.abs() >= FCIDUMP_ZERO_THRESHOLD {
                line(out, v, [i + 1, j + 1, 0, 0])?;
            }
        }
    }
    line(out, ev_to_hartree(ham.constant), [0, 0, 0, 0])
}

pub fn export_fcidump(ham: &SpinOrbitalHamiltonian, n_electrons: usize, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_fcidump(ham, n_electrons, &mut buf).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

fn header_int(header: &str, key: &str) -> Option<i64> {
    let upper = header.to_ascii_uppercase();
    let start = upper.find(&format!("{key}="))? + key.len() + 1;
    let digits: String = upper[start..]
        .trim_start()
        .chars()
        .take_while(|c| c.is_ascii_digit() || *c == '-')
        .collect();
    digits.parse().ok()
}

/// Reads FCIDUMP text (any reader). Integrals are converted to eV and the
/// basis is tagged canonical, since the file carries no orbital provenance.
pub fn read_fcidump<R: BufRead>(reader: R) -> Result<Fcidump> {
    let mut header = String::new();
    let mut in_header = true;
    let mut k = 0usize;
    let mut one_body = DMatrix::zeros(0, 0);
    let mut two_body = TwoBodyTensor::new(0);
    let mut constant = 0.0;
    let mut n_electrons = 0usize;
    let mut ms2 = 0i64;

    for (idx, l) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let l = l.map_err(|e| Error::io("<fcidump>", e))?;
        if in_header {
            header.push_str(&l);
            header.push(' ');
            let up = l.trim().to_ascii_uppercase();
            if up.starts_with("&END") || up.starts_with('/') || up.ends_with("&END") {
                in_header = false;
                k = header_int(&header, "NORB").ok_or_else(|| Error::parse(lineno, "NORB missing from header"))?
                    as usize;
                n_electrons = header_int(&header, "NELEC").unwrap_or(0).max(0) as usize;
                ms2 = header_int(&header, "MS2").unwrap_or(0);
                one_body = DMatrix::zeros(k, k);
                two_body = TwoBodyTensor::new(k);
            }
            continue;
        }
        let fields: Vec<&str> = l.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 5 {
            return Err(Error::parse(lineno, "expected `value i j k l`"));
        }
        let v: f64 = fields[0]
            .replace(['D', 'd'], "E")
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad value {:?}", fields[0])))?;
        let mut ix = [0usize; 4];
        for (slot, f) in ix.iter_mut().zip(&fields[1..]) {
            *slot = f
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad index {f:?}")))?;
            if *slot > k {
                return Err(Error::parse(lineno, format!("index {slot} exceeds NORB={k}")));
            }
        }
        let v = hartree_to_ev(v);
        match ix {
            [0, 0, 0, 0] => constant = v,
            [i, j, 0, 0] if i > 0 && j > 0 => {
                one_body[(i - 1, j - 1)] = v;
                one_body[(j - 1, i - 1)] = v;
            }
            [i, j, a, b] if i > 0 && j > 0 && a > 0 && b > 0 => two_body.set(i - 1, j - 1, a - 1, b - 1, v),
            // orbital energies (i 0 0 0) are informational only
            [_, 0, 0, 0] => {}
            _ => return Err(Error::parse(lineno, "unsupported index pattern")),
        }
    }
    if in_header {
        return Err(Error::parse(0, "unterminated &FCI header"));
    }
    Ok(Fcidump {
        n_electrons,
        ms2,
        hamiltonian: SpinOrbitalHamiltonian {
            one_body,
            two_body,
            constant,
            basis: BasisTag::Canonical,
        },
    })
}
