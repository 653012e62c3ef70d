//! Versioned JSON reports (schema version 1).
//!
//! Every JSON document the command line emits is wrapped in a
//! [`JsonReport`] envelope:
//!
//! ```json
//! {
//!   "version": 1,
//!   "command": "...",
//!   "input": ["..."],
//!   ... one or more payload sections ...
//!   "flags": []
//! }
//! ```
//!
//! Payload sections: `lfactor` (atom/multiplicity list), `poles` (all real
//! rational poles with -10 ≤ s ≤ 10), `pole_report` (one point with its
//! contributing atoms), `certificate`, `reducible`, `sweeps`, `numeric`.
//! Rationals are serialized as strings `"p/q"`, roots of unity as
//! `"j/k"` meaning e^{2πi j/k}, and floating-point values as strings with
//! 15 significant digits. Reports round-trip losslessly.

use serde::{Deserialize, Serialize};

use crate::lfactor::{Atom, LFactor};
use crate::predicates::{PoleReport, ThetaCertificate};
use crate::rational::QQ;
use crate::sweeps::SweepReport;

pub const SCHEMA_VERSION: u32 = 1;

/// Window for the `poles` listing: all real rational poles with |s| ≤ 10.
pub fn pole_window() -> (QQ, QQ) {
    (QQ::from_int(-10), QQ::from_int(10))
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct AtomEntry {
    pub atom: Atom,
    pub mult: u64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PoleEntry {
    pub s: QQ,
    pub order: u64,
}

/// Atom list of an L-factor in canonical order.
pub fn atom_entries(lf: &LFactor) -> Vec<AtomEntry> {
    lf.atoms()
        .map(|(atom, mult)| AtomEntry {
            atom: atom.clone(),
            mult,
        })
        .collect()
}

/// All real rational poles of an L-factor inside the report window.
pub fn pole_entries(lf: &LFactor) -> Vec<PoleEntry> {
    let (lo, hi) = pole_window();
    lf.poles_in_window(&lo, &hi)
        .into_iter()
        .map(|(s, order)| PoleEntry { s, order })
        .collect()
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum NumericReport {
    Duplication {
        samples: usize,
        max_rel_err: String,
        tolerance: String,
        pass: bool,
    },
    Tate {
        m: i64,
        s: String,
        quadrature: String,
        closed_form: String,
        rel_err: String,
        tolerance: String,
        pass: bool,
    },
}

/// The envelope around every JSON document the CLI prints.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct JsonReport {
    pub version: u32,
    pub command: String,
    pub input: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lfactor: Option<Vec<AtomEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub poles: Option<Vec<PoleEntry>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pole_report: Option<PoleReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<ThetaCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sweeps: Option<Vec<SweepReport>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub numeric: Option<NumericReport>,
    pub flags: Vec<String>,
}

impl JsonReport {
    pub fn new(command: &str, input: Vec<String>) -> Self {
        JsonReport {
            version: SCHEMA_VERSION,
            command: command.to_string(),
            input,
            lfactor: None,
            poles: None,
            pole_report: None,
            certificate: None,
            reducible: None,
            output: None,
            sweeps: None,
            numeric: None,
            flags: Vec::new(),
        }
    }
}

/// Fixed-width float formatting: 15 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.14e}")
}

/// Complex formatting with 15 significant digits per component.
pub fn fmt_c64(z: num_complex::Complex64) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", fmt_f64(z.re), fmt_f64(-z.im))
    } else {
        format!("{}+{}i", fmt_f64(z.re), fmt_f64(z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfactor::gj_lfactor;
    use crate::parse::parse;
    use crate::predicates::theta_certificate;

    #[test]
    fn envelope_roundtrips() {
        let rep = parse("st(unram(-1/2),2)").unwrap();
        let lf = gj_lfactor(&rep);
        let mut report = JsonReport::new("lfactor", vec![rep.to_string()]);
        report.lfactor = Some(atom_entries(&lf));
        report.poles = Some(pole_entries(&lf));
        report.certificate = Some(theta_certificate(&rep));
        let json = serde_json::to_string_pretty(&report).unwrap();
        let back: JsonReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn pole_entries_in_window() {
        let rep = parse("chiR(0,-1/2)").unwrap();
        let entries = pole_entries(&gj_lfactor(&rep));
        // poles of Gamma_R(s - 1/2) at 1/2, -3/2, ..., bounded below by -10
        assert_eq!(entries.len(), 6);
        assert_eq!(entries.last().unwrap().s, QQ::new(1, 2));
        assert!(entries.iter().all(|e| e.order == 1));
    }

    #[test]
    fn float_formatting_is_fifteen_digits() {
        assert_eq!(fmt_f64(1.0), "1.00000000000000e0");
        assert_eq!(
            fmt_c64(num_complex::Complex64::new(0.5, -0.25)),
            "5.00000000000000e-1-2.50000000000000e-1i"
        );
    }
}
