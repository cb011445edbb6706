use std::fs;
use std::path::Path;
use std::sync::Arc;

use squeeze_core::exactalg::{parse_polynomial, MonomialOrder, OrderKind, Polynomial, Universe};
use squeeze_core::groebner::IdealBasis;
use squeeze_core::mechanism::MechanismParameters;

use crate::commands::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Non-empty, non-comment lines with an optional leading `format=1`.
fn body(text: &str) -> Result<Vec<&str>, Failure> {
    let mut lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty())
        .collect();
    if let Some(v) = lines.first().and_then(|l| l.strip_prefix("format=")) {
        if v.trim() != "1" {
            return Err(Failure::Usage(format!("unsupported format={v}")));
        }
        lines.remove(0);
    }
    Ok(lines)
}

/// `x,y;z` into blocks of names.
pub fn parse_blocks(spec: &str) -> Vec<Vec<String>> {
    spec.split(';')
        .map(|b| {
            b.trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        })
        .collect()
}

pub fn parse_names(spec: &str) -> Vec<String> {
    spec.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Builds the order described by the header and the overrides.
fn order_for(
    header: Option<&str>,
    kind: Option<&str>,
    blocks: Option<&str>,
) -> Result<MonomialOrder, Failure> {
    let from_header = header.map(MonomialOrder::parse_header).transpose()?;
    let kind = match kind {
        Some(k) => OrderKind::from_name(k)?,
        None => match &from_header {
            Some(o) => o.kind(),
            None => return Err(Failure::Usage("no order header and no --order".into())),
        },
    };
    let names: Vec<Vec<String>> = match (blocks, &from_header) {
        (Some(b), _) => parse_blocks(b),
        (None, Some(o)) => o
            .blocks()
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| o.universe().name(*v).to_string())
                    .collect()
            })
            .collect(),
        (None, None) => return Err(Failure::Usage("no order header and no --blocks".into())),
    };
    let flat: Vec<&String> = names.iter().flatten().collect();
    let u = Universe::new(&flat)?;
    let refs: Vec<Vec<&str>> = names
        .iter()
        .map(|b| b.iter().map(String::as_str).collect())
        .collect();
    Ok(MonomialOrder::from_names(&u, kind, &refs)?)
}

/// A generators file: optional `format=1`, optional order header, then
/// one polynomial per line.
pub fn read_generators(
    path: &Path,
    kind: Option<&str>,
    blocks: Option<&str>,
) -> Result<(MonomialOrder, Vec<Polynomial>), Failure> {
    let text = read(path)?;
    let lines = body(&text)?;
    let (header, rest) = match lines.first() {
        Some(l) if l.starts_with("order=") => (Some(*l), &lines[1..]),
        _ => (None, &lines[..]),
    };
    let ord = order_for(header, kind, blocks)?;
    let gens = parse_lines(rest, ord.universe())?;
    if gens.is_empty() {
        return Err(Failure::Usage(format!("{}: no generators", path.display())));
    }
    Ok((ord, gens))
}

fn parse_lines(lines: &[&str], u: &Arc<Universe>) -> Result<Vec<Polynomial>, Failure> {
    lines
        .iter()
        .enumerate()
        .map(|(i, l)| {
            parse_polynomial(l, u).map_err(|e| Failure::Usage(format!("generator {}: {e}", i + 1)))
        })
        .collect()
}

/// A basis file as written by `gb`.
pub fn read_basis(path: &Path) -> Result<IdealBasis, Failure> {
    let text = read(path)?;
    let lines = body(&text)?;
    Ok(IdealBasis::from_text(&lines.join("\n"))?)
}

pub fn parameters(
    file: Option<&Path>,
    overrides: &[String],
) -> Result<MechanismParameters, Failure> {
    let mut p = match file {
        Some(f) => MechanismParameters::parse(&read(f)?)?,
        None => MechanismParameters::benchmark(),
    };
    for o in overrides {
        let (k, v) = o
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--set expects KEY=VALUE, got `{o}`")))?;
        p = p.with(k.trim(), v.trim())?;
    }
    Ok(p)
}
