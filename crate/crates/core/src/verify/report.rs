use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use super::{numeric_rank, residual_norm, DEFAULT_TOL_RATIO, RESIDUAL_GATE};
use crate::mechanism::NumericParameters;
use crate::numsolve::Configuration;

/// A claimed singular configuration with its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularityReport {
    pub branch: String,
    pub configuration: Configuration,
    /// ∞-norm over the 13 constraints.
    pub residual_norm: f64,
    /// Jacobian singular values, non-increasing.
    pub singular_values: Vec<f64>,
    pub numeric_rank: usize,
    pub tol_ratio: f64,
    pub exact_rank: Option<usize>,
}

impl SingularityReport {
    pub fn certify(branch: &str, configuration: Configuration, params: &NumericParameters) -> Self {
        let (rank, sigma) = numeric_rank(&configuration, params, DEFAULT_TOL_RATIO);
        SingularityReport {
            branch: branch.to_string(),
            configuration,
            residual_norm: residual_norm(&configuration, params),
            singular_values: sigma,
            numeric_rank: rank,
            tol_ratio: DEFAULT_TOL_RATIO,
            exact_rank: None,
        }
    }

    /// Residual within [`RESIDUAL_GATE`] and rank at most 12.
    pub fn passes(&self) -> bool {
        self.residual_norm <= RESIDUAL_GATE && self.numeric_rank <= 12
    }

    fn write_block(&self, out: &mut String, index: usize) {
        let cfg = &self.configuration;
        writeln!(out, "[singularity {index}]").unwrap();
        writeln!(out, "branch={}", self.branch).unwrap();
        for i in 0..7 {
            writeln!(out, "c{}={:.15e}", i + 1, cfg.c[i]).unwrap();
            writeln!(out, "s{}={:.15e}", i + 1, cfg.s[i]).unwrap();
        }
        for (i, y) in cfg.angles().iter().enumerate() {
            writeln!(out, "y{}={:.15e}", i + 1, y).unwrap();
        }
        writeln!(out, "residual_norm={:.15e}", self.residual_norm).unwrap();
        let sv: Vec<String> = self
            .singular_values
            .iter()
            .map(|s| format!("{s:.15e}"))
            .collect();
        writeln!(out, "singular_values={}", sv.join(",")).unwrap();
        writeln!(out, "tol_ratio={:e}", self.tol_ratio).unwrap();
        writeln!(out, "numeric_rank={}", self.numeric_rank).unwrap();
        if let Some(r) = self.exact_rank {
            writeln!(out, "exact_rank={r}").unwrap();
        }
    }
}

/// `format=1` followed by one key=value block per report.
pub fn format_reports(reports: &[SingularityReport]) -> String {
    let mut out = String::from("format=1\n");
    for (i, r) in reports.iter().enumerate() {
        out.push('\n');
        r.write_block(&mut out, i + 1);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("missing `format=1` header")]
    Format,
    #[error("line {0}: expected key=value")]
    BadLine(usize),
    #[error("block {block}: missing or invalid `{key}`")]
    Field { block: usize, key: String },
}

fn parse_block(
    block: usize,
    fields: &BTreeMap<String, String>,
) -> Result<SingularityReport, ReportError> {
    let field = |k: &str| {
        fields.get(k).ok_or_else(|| ReportError::Field {
            block,
            key: k.to_string(),
        })
    };
    let num = |k: &str| -> Result<f64, ReportError> {
        field(k)?.parse().map_err(|_| ReportError::Field {
            block,
            key: k.to_string(),
        })
    };
    let mut c = [0.0; 7];
    let mut s = [0.0; 7];
    for i in 0..7 {
        c[i] = num(&format!("c{}", i + 1))?;
        s[i] = num(&format!("s{}", i + 1))?;
    }
    let bad = |k: &str| ReportError::Field {
        block,
        key: k.to_string(),
    };
    let singular_values = field("singular_values")?
        .split(',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| bad("singular_values")))
        .collect::<Result<Vec<_>, _>>()?;
    let exact_rank = match fields.get("exact_rank") {
        Some(t) => Some(t.parse().map_err(|_| bad("exact_rank"))?),
        None => None,
    };
    Ok(SingularityReport {
        branch: field("branch")?.clone(),
        configuration: Configuration { c, s },
        residual_norm: num("residual_norm")?,
        singular_values,
        numeric_rank: field("numeric_rank")?
            .parse()
            .map_err(|_| bad("numeric_rank"))?,
        tol_ratio: num("tol_ratio")?,
        exact_rank,
    })
}

/// Inverse of [`format_reports`]. Angle lines are recomputed, not read.
pub fn parse_reports(text: &str) -> Result<Vec<SingularityReport>, ReportError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == "format=1" => {}
        _ => return Err(ReportError::Format),
    }
    let mut out = Vec::new();
    let mut current: Option<BTreeMap<String, String>> = None;
    for (no, line) in lines {
        let line = line.trim();
        if line.starts_with("[singularity") {
            if let Some(f) = current.take() {
                out.push(parse_block(out.len() + 1, &f)?);
            }
            current = Some(BTreeMap::new());
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ReportError::BadLine(no + 1))?;
        current
            .as_mut()
            .ok_or(ReportError::BadLine(no + 1))?
            .insert(k.trim().to_string(), v.trim().to_string());
    }
    if let Some(f) = current {
        out.push(parse_block(out.len() + 1, &f)?);
    }
    Ok(out)
}
