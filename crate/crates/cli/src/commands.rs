use std::fmt;
use std::path::Path;

use squeeze_core::exactalg::{AlgebraError, MonomialOrder, Polynomial, Universe, Variable};
use squeeze_core::fitting::{jacobian, maximal_minors, singular_ideal, FittingError};
use squeeze_core::groebner::{
    buchberger_with, eliminate, is_unit_ideal, normal_form, GroebnerConfig, GroebnerError,
    IdealBasis,
};
use squeeze_core::mechanism::{
    component_ideal, full_system, reduced_system_m, restrict, subsystem_367, subsystem_4567,
    symmetric_system, system_k, system_l, ComponentLabel, Family, LVariant, MechanismError,
    MechanismParameters, ParamError, PARAMETERS_367, PARAMETERS_4567, VARIABLES_367,
    VARIABLES_4567, VARIABLES_M,
};
use squeeze_core::numsolve::{
    rational_singularity, region_sweep, sweep_csv, Branch, SolveError, SweepAxis, SweepGrid,
};
use squeeze_core::verify::{
    exact_jacobian, exact_rank, exact_residuals, format_reports, numeric_rank, SingularityReport,
    DEFAULT_TOL_RATIO,
};

use crate::input;
use crate::{Cli, Command, SystemArgs};

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Internal(String),
    /// A condition failed; `output` is still printed.
    Condition {
        reason: String,
        output: String,
    },
    Ceiling(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Internal(_) => 1,
            Failure::Condition { .. } => 2,
            Failure::Ceiling(_) => 3,
        }
    }

    pub fn stdout(&self) -> Option<&str> {
        match self {
            Failure::Condition { output, .. } if !output.is_empty() => Some(output),
            _ => None,
        }
    }

    fn condition(reason: impl Into<String>, output: String) -> Failure {
        Failure::Condition {
            reason: reason.into(),
            output,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Internal(m) => write!(f, "internal: {m}"),
            Failure::Condition { reason, .. } => write!(f, "{reason}"),
            Failure::Ceiling(m) => write!(f, "{m}"),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ParamError> for Failure {
    fn from(e: ParamError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<MechanismError> for Failure {
    fn from(e: MechanismError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FittingError> for Failure {
    fn from(e: FittingError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<GroebnerError> for Failure {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::ResourceLimit { .. } => Failure::Ceiling(e.to_string()),
            GroebnerError::Algebra(a) => a.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::MissingInput(_) => Failure::Usage(e.to_string()),
            SolveError::Verification(_) => Failure::Internal(e.to_string()),
            _ => Failure::condition(e.to_string(), String::new()),
        }
    }
}

type Out = Result<String, Failure>;

pub fn run(cli: &Cli) -> Out {
    let ceilings = GroebnerConfig {
        max_pairs: cli.max_pairs,
        max_terms: cli.max_terms,
    };
    match &cli.command {
        Command::Gb {
            input,
            order,
            blocks,
        } => gb(input, order.as_deref(), blocks.as_deref(), &ceilings),
        Command::Member { basis, poly } => member(basis, poly, &ceilings),
        Command::Eliminate { basis, keep } => elimination(basis, keep, &ceilings),
        Command::Minors(sys) => minors(sys, false),
        Command::SingularIdeal(sys) => minors(sys, true),
        Command::Components { label } => components(label, &ceilings),
        Command::Solve { branch, params } => {
            let p = input::parameters(params.params.as_deref(), &params.overrides)?;
            solve(branch, &p)
        }
        Command::Sweep {
            branch,
            params,
            a1,
            a2,
        } => {
            let p = input::parameters(params.params.as_deref(), &params.overrides)?;
            sweep(branch, &p, a1, a2)
        }
        Command::VerifyBenchmark { params } => {
            let p = input::parameters(params.params.as_deref(), &params.overrides)?;
            verify_benchmark(&p, &ceilings)
        }
        Command::RationalExample => rational_example(),
        Command::Tables => tables(),
    }
}

fn header() -> String {
    String::from("format=1\n")
}

fn basis_text(b: &IdealBasis) -> String {
    header() + &b.to_text()
}

fn gb(path: &Path, kind: Option<&str>, blocks: Option<&str>, c: &GroebnerConfig) -> Out {
    let (ord, gens) = input::read_generators(path, kind, blocks)?;
    let (b, _) = buchberger_with(&gens, &ord, c)?;
    Ok(basis_text(&b))
}

/// The file's basis, recomputed if it is not already reduced.
fn reduced_basis(path: &Path, c: &GroebnerConfig) -> Result<IdealBasis, Failure> {
    let b = input::read_basis(path)?;
    if b.is_reduced() {
        return Ok(b);
    }
    let (b, _) = buchberger_with(b.generators(), b.order(), c)?;
    Ok(b)
}

fn member(path: &Path, poly: &str, c: &GroebnerConfig) -> Out {
    let b = reduced_basis(path, c)?;
    let f = squeeze_core::exactalg::parse_polynomial(poly, b.universe())?;
    let t = normal_form(&f, &b);
    let ord = b.order();
    let mut out = header();
    let yes = t.remainder.is_zero();
    out.push_str(&format!("member={}\n", if yes { "yes" } else { "no" }));
    out.push_str(&format!("remainder={}\n", t.remainder.to_text(ord)));
    for (i, q) in &t.quotients {
        out.push_str(&format!("quotient[{}]={}\n", i + 1, q.to_text(ord)));
    }
    Ok(out)
}

fn elimination(path: &Path, keep: &str, c: &GroebnerConfig) -> Out {
    let b = input::read_basis(path)?;
    let u = b.universe().clone();
    let names = input::parse_names(keep);
    let keep_vars: Vec<Variable> = names.iter().map(|n| u.var(n)).collect::<Result<_, _>>()?;
    let rest: Vec<Variable> = u.variables().filter(|v| !keep_vars.contains(v)).collect();
    let last_ok =
        b.order().blocks().last().is_some_and(|bl| {
            bl.len() == keep_vars.len() && bl.iter().all(|v| keep_vars.contains(v))
        });
    let b = if last_ok && b.is_reduced() {
        b
    } else {
        let mut blocks = Vec::new();
        if !rest.is_empty() {
            blocks.push(rest);
        }
        blocks.push(keep_vars.clone());
        let ord = MonomialOrder::new(&u, b.order().kind(), blocks)?;
        buchberger_with(b.generators(), &ord, c)?.0
    };
    let gens = eliminate(&b, &keep_vars)?;
    let mut out = header();
    out.push_str(&format!("keep={}\n", names.join(",")));
    for g in &gens {
        out.push_str(&g.to_text(b.order()));
        out.push('\n');
    }
    Ok(out)
}

/// A named built-in system and its default configuration variables.
fn model(
    name: &str,
    params: Option<&MechanismParameters>,
) -> Result<(Vec<Polynomial>, Vec<&'static str>), Failure> {
    let config: Vec<&'static str> = vec![
        "c1", "s1", "c2", "s2", "c3", "s3", "c4", "s4", "c5", "s5", "c6", "s6", "c7", "s7",
    ];
    let spec = |p: Vec<Polynomial>| match params {
        Some(q) => squeeze_core::mechanism::specialize(&p, q),
        None => p,
    };
    let l = |v: LVariant, vars: &[&'static str]| (system_l(v, params), vars.to_vec());
    Ok(match name.to_ascii_lowercase().as_str() {
        "full" => (full_system(params), config),
        "4567" => (spec(subsystem_4567()), VARIABLES_4567.to_vec()),
        "367" => (spec(subsystem_367()), VARIABLES_367.to_vec()),
        "m" => (reduced_system_m(params), VARIABLES_M.to_vec()),
        "k1" => (system_k(params).0, vec!["c1", "s1", "c2", "s2"]),
        "k2" => (system_k(params).1, vec!["c3", "s3", "c7", "s7"]),
        "l1" => l(LVariant::One, &["c1", "s1", "c2", "s2"]),
        "l2" => l(LVariant::Two, &["c4", "s4", "c5", "s5"]),
        "l3" => l(LVariant::Three, &["c1", "s1", "c2", "s2"]),
        "l4" => l(LVariant::Four, &["c4", "s4", "c5", "s5"]),
        "symmetric" => (spec(symmetric_system()), VARIABLES_4567.to_vec()),
        other => return Err(Failure::Usage(format!("unknown model `{other}`"))),
    })
}

fn minors(sys: &SystemArgs, with_system: bool) -> Out {
    let (gens, vars, ord) = match (&sys.model, &sys.input) {
        (Some(name), None) => {
            let params = match (&sys.params.file, sys.params.overrides.is_empty()) {
                (None, true) => None,
                (file, _) => Some(input::parameters(file.as_deref(), &sys.params.overrides)?),
            };
            let (gens, default) = model(name, params.as_ref())?;
            let u = Universe::mechanism();
            let vars = match &sys.vars {
                Some(v) => u.vars(
                    &input::parse_names(v)
                        .iter()
                        .map(String::as_str)
                        .collect::<Vec<_>>(),
                )?,
                None => u.vars(&default)?,
            };
            (gens, vars, MonomialOrder::degrevlex(&u))
        }
        (None, Some(path)) => {
            let (ord, gens) = input::read_generators(path, None, None)?;
            let u = ord.universe().clone();
            let vars = match &sys.vars {
                Some(v) => u.vars(
                    &input::parse_names(v)
                        .iter()
                        .map(String::as_str)
                        .collect::<Vec<_>>(),
                )?,
                None => ord.blocks()[0].clone(),
            };
            (gens, vars, ord)
        }
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --model or --input".into(),
            ))
        }
    };
    let polys = if with_system {
        singular_ideal(&gens, &vars)?
    } else {
        maximal_minors(&jacobian(&gens, &vars)?)?
    };
    let mut out = header();
    out.push_str(&format!("count={}\n", polys.len()));
    for p in &polys {
        out.push_str(&p.to_text(&ord));
        out.push('\n');
    }
    Ok(out)
}

/// Parent ideal of a component family, on the restricted universe used
/// for the containment check.
fn parent_ideal(family: Family) -> Result<(MonomialOrder, Vec<Polynomial>, &'static str), Failure> {
    let mech = Universe::mechanism();
    let (sys, vars, params, extra, name): (Vec<Polynomial>, Vec<&str>, Vec<&str>, &[&str], _) =
        match family {
            Family::T => (
                subsystem_4567(),
                VARIABLES_4567.to_vec(),
                PARAMETERS_4567.to_vec(),
                &["c4", "c6"],
                "sing(J4567) + <c4, c6>",
            ),
            Family::U => (
                subsystem_367(),
                VARIABLES_367.to_vec(),
                PARAMETERS_367.to_vec(),
                &["c6"],
                "sing(J367) + <c6>",
            ),
            Family::I => {
                // All four lengths equal and s6 = -s4 substituted away.
                let a4 = Polynomial::named(&mech, "a4");
                let mut sub: Vec<(Variable, Polynomial)> = ["a5", "a6", "a7"]
                    .iter()
                    .map(|n| Ok((mech.var(n)?, a4.clone())))
                    .collect::<Result<_, AlgebraError>>()?;
                sub.push((mech.var("s6")?, -Polynomial::named(&mech, "s4")));
                let sys = subsystem_4567()
                    .iter()
                    .map(|q| q.substitute(&sub))
                    .collect();
                let vars = vec!["c4", "s4", "c5", "s5", "c6", "c7", "s7"];
                (
                    sys,
                    vars,
                    vec!["a4"],
                    &[],
                    "J4567 at a4 = a5 = a6 = a7, s6 = -s4",
                )
            }
        };
    let mut gens = if family == Family::I {
        sys
    } else {
        singular_ideal(&sys, &mech.vars(&vars)?)?
    };
    gens.extend(extra.iter().map(|n| Polynomial::named(&mech, n)));
    let names: Vec<&str> = vars.iter().chain(&params).copied().collect();
    let (u, gens) = restrict(&gens, &names)?;
    Ok((MonomialOrder::degrevlex(&u), gens, name))
}

fn components(label: &str, c: &GroebnerConfig) -> Out {
    let label: ComponentLabel = label.parse()?;
    let gens = component_ideal(label);
    let mut out = header();
    out.push_str(&format!("label={label}\ngenerators={}\n", gens.len()));
    let mech_ord = MonomialOrder::degrevlex(&Universe::mechanism());
    for g in &gens {
        out.push_str(&g.to_text(&mech_ord));
        out.push('\n');
    }
    let (ord, parent, name) = parent_ideal(label.family())?;
    let (_, comp) = restrict(
        &gens,
        &ord.universe()
            .names()
            .iter()
            .map(String::as_str)
            .collect::<Vec<_>>(),
    )?;
    let (b, _) = buchberger_with(&comp, &ord, c)?;
    let missing = parent
        .iter()
        .filter(|g| !normal_form(g, &b).remainder.is_zero())
        .count();
    out.push_str(&format!(
        "parent={name}\nparent_generators={}\n",
        parent.len()
    ));
    out.push_str(&format!(
        "contains_parent={}\n",
        if missing == 0 { "yes" } else { "no" }
    ));
    if missing > 0 {
        return Err(Failure::condition(
            format!("{label} misses {missing} parent generators"),
            out,
        ));
    }
    Ok(out)
}

fn branch(name: &str) -> Result<Branch, Failure> {
    Ok(name.parse::<Branch>()?)
}

fn solve(name: &str, p: &MechanismParameters) -> Out {
    let b = branch(name)?;
    let sol = b.solve(&p.numeric())?;
    let out = format_reports(&sol.reports);
    if sol.reports.is_empty() {
        return Err(Failure::condition(
            format!("no real roots: {}", sol.reason()),
            out,
        ));
    }
    Ok(out)
}

fn axis(spec: &str) -> Result<SweepAxis, Failure> {
    let bad = || Failure::Usage(format!("axis `{spec}` is not start:stop:step"));
    let v: Vec<f64> = spec
        .split(':')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    match v[..] {
        [start, stop, step] if step > 0.0 && stop >= start => Ok(SweepAxis { start, stop, step }),
        _ => Err(bad()),
    }
}

fn sweep(name: &str, p: &MechanismParameters, a1: &str, a2: &str) -> Out {
    let b = branch(name)?;
    let grid = SweepGrid {
        a1: axis(a1)?,
        a2: axis(a2)?,
    };
    let nodes = region_sweep(b, &grid, &p.numeric())?;
    Ok(sweep_csv(b, &nodes))
}

fn verify_benchmark(p: &MechanismParameters, c: &GroebnerConfig) -> Out {
    let m = reduced_system_m(Some(p));
    let (u, m) = restrict(&m, &VARIABLES_M)?;
    let vars: Vec<Variable> = u.variables().collect();
    let k = singular_ideal(&m, &vars)?;
    let (b, stats) = buchberger_with(&k, &MonomialOrder::degrevlex(&u), c)?;
    let mut out = header();
    out.push_str(&format!(
        "generators={}\npairs_processed={}\nbasis_size={}\n",
        k.len(),
        stats.pairs_processed,
        b.len()
    ));
    if is_unit_ideal(&b) {
        out.push_str("UNIT IDEAL: no singularities\n");
        Ok(out)
    } else {
        out.push_str(&format!(
            "NOT UNIT IDEAL: reduced basis has {} generators\n",
            b.len()
        ));
        Err(Failure::condition(
            "the singular ideal is not the unit ideal",
            out,
        ))
    }
}

fn rational_example() -> Out {
    let (p, c) = rational_singularity();
    let mut out = header();
    for line in p.to_text().lines().skip(1) {
        out.push_str(&format!("param {line}\n"));
    }
    for i in 0..7 {
        out.push_str(&format!("c{}={} s{}={}\n", i + 1, c.c[i], i + 1, c.s[i]));
    }
    let vanish = exact_residuals(&c, &p)
        .iter()
        .all(|r| r.numer().bits() == 0);
    let rank = exact_rank(&exact_jacobian(&c, &p));
    let (nrank, _) = numeric_rank(&c.to_f64(), &p.numeric(), DEFAULT_TOL_RATIO);
    out.push_str(&format!(
        "constraints_vanish={}\nexact_rank={rank}\nnumeric_rank={nrank}\n",
        if vanish { "yes" } else { "no" }
    ));
    if vanish && rank <= 12 {
        out.push_str("SINGULAR: exact certificate\n");
        Ok(out)
    } else {
        Err(Failure::condition(
            "the rational configuration is not singular",
            out,
        ))
    }
}

fn fixed4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".into()
    } else {
        s
    }
}

/// One table: reports ordered by `s7`, then by decreasing `s2`.
fn table(title: &str, reports: &mut [SingularityReport]) -> String {
    reports.sort_by(|a, b| {
        let (ca, cb) = (&a.configuration, &b.configuration);
        (ca.s[6], -ca.s[1])
            .partial_cmp(&(cb.s[6], -cb.s[1]))
            .unwrap()
    });
    let mut out = format!("[{title}]\nvariable");
    for i in 0..reports.len() {
        out.push_str(&format!(",singularity {}", i + 1));
    }
    out.push('\n');
    for i in 0..7 {
        for (name, pick) in [("c", 0), ("s", 1)] {
            out.push_str(&format!("{name}{}", i + 1));
            for r in reports.iter() {
                let cfg = &r.configuration;
                let v = if pick == 0 { cfg.c[i] } else { cfg.s[i] };
                out.push_str(&format!(",{}", fixed4(v)));
            }
            out.push('\n');
        }
    }
    for i in 0..7 {
        out.push_str(&format!("y{}", i + 1));
        for r in reports.iter() {
            out.push_str(&format!(",{}", fixed4(r.configuration.angles()[i])));
        }
        out.push('\n');
    }
    out
}

fn tables() -> Out {
    let mut t1 = Branch::T5
        .solve(&MechanismParameters::t5_example().numeric())?
        .reports;
    let mut t2 = Branch::U1
        .solve(&MechanismParameters::u1_example().numeric())?
        .reports;
    let mut out = header();
    out.push_str(&table("T5 singularities: a1=0.03 a2=0.055", &mut t1));
    out.push_str(&table(
        "U1 singularities: b1=-0.026913593 a1=0.02 a2=0.055",
        &mut t2,
    ));
    Ok(out)
}
