//! Run specification, config-file loading, and the end-to-end solve
//! pipeline shared by the CLI and the test suites.
//!
//! Config files are flat INI-style text with `[run]`, `[evolve]`, and
//! `[limits]` sections; command-line flags override file values. Identical
//! specs (including the seed) produce byte-identical reports.

use num_complex::Complex64;

use crate::algebra::{Kind, Realization, TruncatedMode};
use crate::coherent::{
    auto_dim, auto_displacement, DEFAULT_AUTO_DIM_CAP, DEFAULT_AUTO_Z_MARGIN,
    DEFAULT_TAIL_TOLERANCE,
};
use crate::diophantine::{Polynomial, DEFAULT_MAX_VARS, DEFAULT_ORACLE_BUDGET};
use crate::encode::TensorSpace;
use crate::error::{Error, Result};
use crate::evolve::{run_khqa, EvolveConfig};
use crate::report::{
    self, EvolveInfo, PreconditionInfo, RealizationInfo, SolveReport, F64,
};

#[derive(Clone, Debug, PartialEq)]
pub enum DimsSpec {
    Auto,
    Explicit(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZSpec {
    Auto,
    Explicit(Vec<Complex64>),
}

/// Everything needed to reproduce one solve run.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub equation: String,
    pub system: String,
    pub lambda: Option<f64>,
    pub kappa: Option<f64>,
    pub bargmann_k: Option<f64>,
    pub alpha: Option<f64>,
    pub perelomov: bool,
    pub omega: f64,
    pub dims: DimsSpec,
    pub z: ZSpec,
    /// Recorded in reports; the pipeline itself has no randomized internals.
    pub seed: u64,
    pub tail_tolerance: f64,
    pub auto_z_margin: f64,
    pub max_vars: usize,
    pub oracle_budget: u128,
    pub evolve: EvolveConfig,
}

impl Default for RunSpec {
    fn default() -> Self {
        RunSpec {
            equation: String::new(),
            system: "isw".into(),
            lambda: None,
            kappa: None,
            bargmann_k: None,
            alpha: None,
            perelomov: false,
            omega: 1.0,
            dims: DimsSpec::Auto,
            z: ZSpec::Auto,
            seed: 0,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
            auto_z_margin: DEFAULT_AUTO_Z_MARGIN,
            max_vars: DEFAULT_MAX_VARS,
            oracle_budget: DEFAULT_ORACLE_BUDGET,
            evolve: EvolveConfig::default(),
        }
    }
}

impl RunSpec {
    pub fn realization(&self) -> Result<Realization> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| {
                Error::Config(format!("system {:?} needs parameter {name}", self.system))
            })
        };
        let kind = match self.system.to_ascii_lowercase().as_str() {
            "sho" => Kind::Sho,
            "isw" => Kind::Isw,
            "icw" => Kind::Icw,
            "pcw" => Kind::Pcw,
            "ptp" => Kind::Ptp {
                lambda: need(self.lambda, "lambda")?,
                kappa: need(self.kappa, "kappa")?,
            },
            "hp" => Kind::Hp {
                bargmann_k: need(self.bargmann_k, "bargmann_k")?,
            },
            "laguerre" => Kind::Laguerre {
                alpha: need(self.alpha, "alpha")?,
            },
            "su11" => Kind::GenericSu11 {
                bargmann_k: need(self.bargmann_k, "bargmann_k")?,
                perelomov: self.perelomov,
            },
            other => {
                return Err(Error::Config(format!(
                    "unknown system {other:?} (expected sho|isw|icw|pcw|ptp|hp|laguerre|su11)"
                )))
            }
        };
        Realization::with_omega(kind, self.omega)
    }

    /// Parse the equation; a constant polynomial is lifted to one variable
    /// so it still encodes onto a (trivial) mode.
    pub fn polynomial(&self) -> Result<Polynomial> {
        let p = Polynomial::parse_with_max_vars(&self.equation, self.max_vars)?;
        if p.num_vars() == 0 {
            p.pad_vars(1)
        } else {
            Ok(p)
        }
    }

    /// Resolve displacements: the auto rule targets `auto_z_margin`, and an
    /// explicit single value broadcasts over the modes.
    pub fn resolve_z(&self, r: &Realization, k: usize) -> Result<Vec<Complex64>> {
        match &self.z {
            ZSpec::Auto => {
                let z = auto_displacement(r, self.auto_z_margin)?;
                Ok(vec![Complex64::new(z, 0.0); k])
            }
            ZSpec::Explicit(zs) => broadcast(zs.clone(), k, "z"),
        }
    }

    /// Resolve per-mode truncations: the auto rule takes the smallest power
    /// of two whose coherent tail passes the tolerance.
    pub fn resolve_dims(
        &self,
        r: &Realization,
        z: &[Complex64],
        k: usize,
    ) -> Result<Vec<usize>> {
        match &self.dims {
            DimsSpec::Auto => z
                .iter()
                .map(|&zi| auto_dim(r, zi, self.tail_tolerance, DEFAULT_AUTO_DIM_CAP))
                .collect(),
            DimsSpec::Explicit(dims) => broadcast(dims.clone(), k, "dims"),
        }
    }

    pub fn space(&self, r: &Realization, dims: &[usize]) -> Result<TensorSpace> {
        TensorSpace::new(
            dims.iter()
                .map(|&d| TruncatedMode::new(*r, d))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// End-to-end solve: returns the full report.
    pub fn execute(&self) -> Result<SolveReport> {
        let p = self.polynomial()?;
        let k = p.num_vars();
        let r = self.realization()?;
        let z = self.resolve_z(&r, k)?;
        let dims = self.resolve_dims(&r, &z, k)?;
        let space = self.space(&r, &dims)?;
        let result = run_khqa(&p, &space, &z, &self.evolve, self.tail_tolerance)?;

        // cross-check against the exhaustive oracle when the box fits the budget
        let bound = (*dims.iter().max().expect("nonempty dims") - 1) as u64;
        let oracle_crosscheck = match p.oracle_search_with_budget(bound, self.oracle_budget) {
            Ok(v) => Some(SolveReport::oracle_info(&result.verdict, &v)),
            Err(Error::BudgetExceeded { .. }) => None,
            Err(e) => return Err(e),
        };

        Ok(SolveReport {
            schema: report::SCHEMA_VERSION,
            command: "solve",
            equation: self.equation.clone(),
            canonical: p.to_string(),
            realization: RealizationInfo::of(&r),
            dims,
            z: z.iter().map(|&c| report::format_complex(c)).collect(),
            seed: self.seed,
            tail_tolerance: F64(self.tail_tolerance),
            evolve: EvolveInfo::of(&self.evolve),
            precondition: PreconditionInfo {
                max_prob: F64(result.precondition_max_prob),
                pass: true,
            },
            schedule: SolveReport::schedule_of(&result),
            halted: result.halted,
            t_final: F64(result.t_final),
            p_final: F64(result.p_t),
            argmax: result.argmax_tuple.clone(),
            hd_value_at_argmax: result.hd_value_at_argmax.to_string(),
            verdict: result.verdict.as_str().to_string(),
            degenerate_ground: result.degenerate_ground,
            truncation_warning: result.truncation_warning,
            monotonicity_flagged: result.monotonicity_flagged,
            min_gap: result.min_gap.map(F64),
            min_coupling: result.min_coupling.map(F64),
            oracle_crosscheck,
        })
    }

    /// Apply `[run]` / `[evolve]` / `[limits]` keys from an INI-style file.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        let mut section = String::from("run");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = name.trim().to_ascii_lowercase();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim();
            self.apply_key(&section, &key, value).map_err(|e| {
                Error::Config(format!("config line {}: {e}", lineno + 1))
            })?;
        }
        Ok(())
    }

    fn apply_key(&mut self, section: &str, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad value for {key}: {value:?}")))
        }
        match (section, key) {
            ("run", "equation") => self.equation = value.to_string(),
            ("run", "system") => self.system = value.to_string(),
            ("run", "lambda") => self.lambda = Some(num(key, value)?),
            ("run", "kappa") => self.kappa = Some(num(key, value)?),
            ("run", "bargmann_k") => self.bargmann_k = Some(num(key, value)?),
            ("run", "alpha") => self.alpha = Some(num(key, value)?),
            ("run", "perelomov") => self.perelomov = num(key, value)?,
            ("run", "omega") => self.omega = num(key, value)?,
            ("run", "dims") => self.dims = parse_dims(value)?,
            ("run", "z") => self.z = parse_z(value)?,
            ("run", "seed") => self.seed = num(key, value)?,
            ("evolve", "t_initial") => self.evolve.t_initial = num(key, value)?,
            ("evolve", "t_max") => self.evolve.t_max = num(key, value)?,
            ("evolve", "t_growth") => self.evolve.t_growth = num(key, value)?,
            ("evolve", "step_control") => self.evolve.step_control = num(key, value)?,
            ("evolve", "halting_threshold") => {
                self.evolve.halting_threshold = num(key, value)?
            }
            ("evolve", "diagnostics_samples") => {
                self.evolve.diagnostics_samples = num(key, value)?
            }
            ("limits", "tail_tolerance") => self.tail_tolerance = num(key, value)?,
            ("limits", "auto_z_margin") => self.auto_z_margin = num(key, value)?,
            ("limits", "max_vars") => self.max_vars = num(key, value)?,
            ("limits", "oracle_budget") => self.oracle_budget = num(key, value)?,
            _ => {
                return Err(Error::Config(format!(
                    "unknown config key [{section}] {key}"
                )))
            }
        }
        Ok(())
    }
}

pub fn parse_dims(text: &str) -> Result<DimsSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("auto") {
        return Ok(DimsSpec::Auto);
    }
    let dims = t
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad dimension {part:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if dims.is_empty() {
        return Err(Error::Config("empty dims list".into()));
    }
    Ok(DimsSpec::Explicit(dims))
}

pub fn parse_z(text: &str) -> Result<ZSpec> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("auto") {
        return Ok(ZSpec::Auto);
    }
    let zs = t
        .split(',')
        .map(report::parse_complex)
        .collect::<Result<Vec<_>>>()?;
    if zs.is_empty() {
        return Err(Error::Config("empty z list".into()));
    }
    Ok(ZSpec::Explicit(zs))
}

fn broadcast<T: Clone>(items: Vec<T>, k: usize, what: &str) -> Result<Vec<T>> {
    if items.len() == k {
        Ok(items)
    } else if items.len() == 1 {
        Ok(vec![items[0].clone(); k])
    } else {
        Err(Error::Config(format!(
            "{what} has {} entries; expected 1 or {k}",
            items.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_round_trip() {
        let mut spec = RunSpec::default();
        spec.apply_config_text(
            "# comment\n\
             [run]\n\
             equation = x1 - 3\n\
             system = isw\n\
             dims = 16\n\
             z = auto\n\
             seed = 7\n\
             \n\
             [evolve]\n\
             t_initial = 2.0\n\
             t_max = 128\n\
             \n\
             [limits]\n\
             tail_tolerance = 1e-8\n",
        )
        .unwrap();
        assert_eq!(spec.equation, "x1 - 3");
        assert_eq!(spec.dims, DimsSpec::Explicit(vec![16]));
        assert_eq!(spec.z, ZSpec::Auto);
        assert_eq!(spec.seed, 7);
        assert_eq!(spec.evolve.t_initial, 2.0);
        assert_eq!(spec.evolve.t_max, 128.0);
        assert_eq!(spec.tail_tolerance, 1e-8);
    }

    #[test]
    fn config_rejects_unknown_keys() {
        let mut spec = RunSpec::default();
        assert!(spec.apply_config_text("[run]\nfrobnicate = 3\n").is_err());
        assert!(spec.apply_config_text("[run]\nno equals sign\n").is_err());
    }

    #[test]
    fn dims_and_z_parsing() {
        assert_eq!(parse_dims("auto").unwrap(), DimsSpec::Auto);
        assert_eq!(
            parse_dims("8, 16").unwrap(),
            DimsSpec::Explicit(vec![8, 16])
        );
        assert!(parse_dims("8,x").is_err());
        match parse_z("1+2i, 3").unwrap() {
            ZSpec::Explicit(zs) => {
                assert_eq!(zs[0], Complex64::new(1.0, 2.0));
                assert_eq!(zs[1], Complex64::new(3.0, 0.0));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn realization_from_tokens() {
        let mut spec = RunSpec::default();
        spec.system = "ptp".into();
        assert!(spec.realization().is_err());
        spec.lambda = Some(2.0);
        spec.kappa = Some(2.0);
        let r = spec.realization().unwrap();
        assert_eq!(r.char_f(1), 5.0);
        spec.system = "nope".into();
        assert!(spec.realization().is_err());
    }

    #[test]
    fn broadcast_rules() {
        assert_eq!(broadcast(vec![4], 3, "dims").unwrap(), vec![4, 4, 4]);
        assert_eq!(broadcast(vec![1, 2], 2, "dims").unwrap(), vec![1, 2]);
        assert!(broadcast(vec![1, 2], 3, "dims").is_err());
    }

    #[test]
    fn constant_equation_lifts_to_one_mode() {
        let mut spec = RunSpec::default();
        spec.equation = "0".into();
        let p = spec.polynomial().unwrap();
        assert_eq!(p.num_vars(), 1);
        assert!(p.is_zero());
    }
}
