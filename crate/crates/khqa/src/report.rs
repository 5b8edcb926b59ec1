//! Machine-readable reports with deterministic serialization.
//!
//! Floats are emitted as JSON numbers with exactly 17 significant digits
//! (`{:.16e}`), so identical runs produce byte-identical reports and every
//! value round-trips to the same f64. Complex values use the `"a+bi"` /
//! `"a-bi"` wire form with the same float formatting. Exact integers
//! (values of D^2) are decimal strings.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::algebra::{Kind, Realization};
use crate::diophantine::OracleVerdict;
use crate::error::{Error, Result};
use crate::evolve::RunResult;

/// Report schema identifier; bump on breaking shape changes.
pub const SCHEMA_VERSION: &str = "khqa-su11/1";

/// f64 serialized as a JSON number with 17 significant digits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct F64(pub f64);

impl Serialize for F64 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(serde::ser::Error::custom("non-finite float in report"));
        }
        let raw = serde_json::value::RawValue::from_string(format_f64(self.0))
            .map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn format_complex(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { "-" } else { "+" };
    format!("{}{}{}i", format_f64(c.re), sign, format_f64(c.im.abs()))
}

/// Parse `"a"`, `"a+bi"`, `"a-bi"`, or `"bi"`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    let bad = |msg: &str| Error::Config(format!("bad complex number {text:?}: {msg}"));
    if s.is_empty() {
        return Err(bad("empty"));
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // split at the last '+'/'-' that is not an exponent sign and not
        // the leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let b = bytes[i];
            if (b == b'+' || b == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i]
                    .trim()
                    .parse()
                    .map_err(|_| bad("unparsable real part"))?;
                let im_str = body[i..].trim();
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().map_err(|_| bad("unparsable imaginary part"))?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() {
                    1.0
                } else if body == "-" {
                    -1.0
                } else {
                    body.trim().parse().map_err(|_| bad("unparsable imaginary part"))?
                };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(|_| bad("unparsable real number"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

#[derive(Serialize)]
pub struct RealizationInfo {
    pub kind: String,
    pub params: BTreeMap<&'static str, F64>,
    pub perelomov: bool,
    pub omega: F64,
}

impl RealizationInfo {
    pub fn of(r: &Realization) -> Self {
        let mut params = BTreeMap::new();
        let kind = match r.kind() {
            Kind::Sho => "sho",
            Kind::Isw => "isw",
            Kind::Icw => "icw",
            Kind::Pcw => "pcw",
            Kind::Ptp { lambda, kappa } => {
                params.insert("lambda", F64(lambda));
                params.insert("kappa", F64(kappa));
                "ptp"
            }
            Kind::Hp { bargmann_k } => {
                params.insert("bargmann_k", F64(bargmann_k));
                "hp"
            }
            Kind::Laguerre { alpha } => {
                params.insert("alpha", F64(alpha));
                "laguerre"
            }
            Kind::GenericSu11 { bargmann_k, .. } => {
                params.insert("bargmann_k", F64(bargmann_k));
                "su11"
            }
        };
        RealizationInfo {
            kind: kind.to_string(),
            params,
            perelomov: r.is_perelomov(),
            omega: F64(r.omega()),
        }
    }
}

#[derive(Serialize)]
pub struct PreconditionInfo {
    pub max_prob: F64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct ScheduleInfo {
    #[serde(rename = "T")]
    pub t: F64,
    #[serde(rename = "P_T")]
    pub p_t: F64,
    pub argmax: Vec<usize>,
    pub norm_drift: F64,
    pub steps: u64,
}

#[derive(Serialize)]
pub struct OracleInfo {
    pub bound: u64,
    pub solvable_in_box: bool,
    pub min_value: String,
    pub witness: Option<Vec<u64>>,
    pub minimizers: Vec<Vec<u64>>,
    pub minimizer_count: u64,
    pub agrees_with_verdict: bool,
}

#[derive(Serialize)]
pub struct SolveReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub equation: String,
    pub canonical: String,
    pub realization: RealizationInfo,
    pub dims: Vec<usize>,
    pub z: Vec<String>,
    pub seed: u64,
    pub tail_tolerance: F64,
    pub evolve: EvolveInfo,
    pub precondition: PreconditionInfo,
    pub schedule: Vec<ScheduleInfo>,
    pub halted: bool,
    #[serde(rename = "T_final")]
    pub t_final: F64,
    #[serde(rename = "P_final")]
    pub p_final: F64,
    pub argmax: Vec<usize>,
    pub hd_value_at_argmax: String,
    pub verdict: String,
    pub degenerate_ground: bool,
    pub truncation_warning: bool,
    pub monotonicity_flagged: bool,
    pub min_gap: Option<F64>,
    pub min_coupling: Option<F64>,
    pub oracle_crosscheck: Option<OracleInfo>,
}

#[derive(Serialize)]
pub struct EvolveInfo {
    pub t_initial: F64,
    pub t_max: F64,
    pub t_growth: F64,
    pub step_control: F64,
    pub halting_threshold: F64,
    pub diagnostics_samples: usize,
}

impl EvolveInfo {
    pub fn of(cfg: &crate::evolve::EvolveConfig) -> Self {
        EvolveInfo {
            t_initial: F64(cfg.t_initial),
            t_max: F64(cfg.t_max),
            t_growth: F64(cfg.t_growth),
            step_control: F64(cfg.step_control),
            halting_threshold: F64(cfg.halting_threshold),
            diagnostics_samples: cfg.diagnostics_samples,
        }
    }
}

impl SolveReport {
    pub fn oracle_info(verdict: &crate::evolve::Verdict, oracle: &OracleVerdict) -> OracleInfo {
        use crate::evolve::Verdict;
        let agrees = match verdict {
            Verdict::SolutionFound => oracle.solvable_in_box,
            Verdict::NoSolutionWithinTruncation => !oracle.solvable_in_box,
            Verdict::Inconclusive => true,
        };
        OracleInfo {
            bound: oracle.box_bound,
            solvable_in_box: oracle.solvable_in_box,
            min_value: oracle.min_value.to_string(),
            witness: oracle.witness.clone(),
            minimizers: oracle.minimizers.clone(),
            minimizer_count: oracle.minimizer_count,
            agrees_with_verdict: agrees,
        }
    }

    pub fn schedule_of(result: &RunResult) -> Vec<ScheduleInfo> {
        result
            .schedule
            .iter()
            .map(|e| ScheduleInfo {
                t: F64(e.t),
                p_t: F64(e.p_t),
                argmax: e.argmax.clone(),
                norm_drift: F64(e.norm_drift),
                steps: e.steps,
            })
            .collect()
    }
}

#[derive(Serialize)]
pub struct CoherentRow {
    pub n: usize,
    pub p_n: F64,
    pub cumulative: F64,
}

#[derive(Serialize)]
pub struct CoherentReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub realization: RealizationInfo,
    pub z: String,
    pub dim: usize,
    pub tail_mass: F64,
    pub max_index: usize,
    pub max_prob: F64,
    pub dominant: bool,
    pub precondition_pass: bool,
    pub rows: Vec<CoherentRow>,
}

impl CoherentReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,p_n,cumulative\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                row.n,
                format_f64(row.p_n.0),
                format_f64(row.cumulative.0)
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct SpectrumRow {
    pub tuple: Vec<usize>,
    pub d: String,
    pub d_squared: String,
}

#[derive(Serialize)]
pub struct SpectrumReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub equation: String,
    pub canonical: String,
    pub dims: Vec<usize>,
    pub rows: Vec<SpectrumRow>,
}

impl SpectrumReport {
    pub fn to_csv(&self) -> String {
        let k = self.dims.len();
        let mut out = String::new();
        for i in 1..=k {
            out.push_str(&format!("x{i},"));
        }
        out.push_str("d,d_squared\n");
        for row in &self.rows {
            for n in &row.tuple {
                out.push_str(&format!("{n},"));
            }
            out.push_str(&format!("{},{}\n", row.d, row.d_squared));
        }
        out
    }
}

#[derive(Serialize)]
pub struct OracleReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub equation: String,
    pub canonical: String,
    pub bound: u64,
    pub solvable_in_box: bool,
    pub witness: Option<Vec<u64>>,
    pub min_value: String,
    pub minimizers: Vec<Vec<u64>>,
    pub minimizer_count: u64,
}

#[derive(Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub realization: RealizationInfo,
    pub dim: usize,
    pub all_pass: bool,
    pub checks: Vec<CheckLine>,
}

#[derive(Serialize)]
pub struct ErrorBody {
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub context: serde_json::Value,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

impl ErrorReport {
    pub fn of(err: &Error) -> Self {
        let context = match err {
            Error::Parse { position, .. } => serde_json::json!({ "position": position }),
            Error::PreconditionViolated { mode, n, p_n } => serde_json::json!({
                "mode": mode, "n": n, "p_n": p_n,
            }),
            Error::TailTolerance { dim, tail, tolerance, .. } => serde_json::json!({
                "dim": dim, "tail": tail, "tolerance": tolerance,
            }),
            Error::DiagonalOverflow { tuple, .. } => serde_json::json!({ "tuple": tuple }),
            _ => serde_json::Value::Null,
        };
        ErrorReport {
            error: ErrorBody {
                code: err.code(),
                message: err.to_string(),
                context,
            },
        }
    }
}

/// Pretty JSON with a trailing newline; the single serialization path for
/// every report, so byte determinism holds everywhere.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_fixed_width() {
        assert_eq!(format_f64(0.5), "5.0000000000000000e-1");
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(-3.25), "-3.2500000000000000e0");
        assert_eq!(format_f64(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn float_round_trips() {
        for &v in &[0.1, 2.0 / 3.0, 1e-300, 123456.789, f64::MIN_POSITIVE] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn f64_serializes_as_number() {
        // 0.45 is not dyadic; 17 significant digits expose the stored value
        let json = serde_json::to_string(&F64(0.45)).unwrap();
        assert_eq!(json, "4.5000000000000001e-1");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v.is_number());
        assert_eq!(v.as_f64(), Some(0.45));
    }

    #[test]
    fn complex_wire_format() {
        let c = Complex64::new(1.5, -0.25);
        let s = format_complex(c);
        assert_eq!(s, "1.5000000000000000e0-2.5000000000000000e-1i");
        assert_eq!(parse_complex(&s).unwrap(), c);
        assert_eq!(parse_complex("2").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("-1.5e-3+2i").unwrap(), Complex64::new(-0.0015, 2.0));
        assert_eq!(parse_complex("1+i").unwrap(), Complex64::new(1.0, 1.0));
        assert!(parse_complex("fish").is_err());
        assert!(parse_complex("").is_err());
    }
}
