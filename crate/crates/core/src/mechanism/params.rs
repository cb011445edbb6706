use std::fmt;
use std::sync::Arc;

use num_traits::{FromPrimitive, Signed};
use thiserror::Error;

use crate::exactalg::{parse_rational, rational_to_f64, Rational, Universe, Variable};

/// Parameter names in storage order.
pub const PARAMETER_NAMES: [&str; 11] = [
    "a1", "a2", "a3", "a4", "a5", "a6", "a7", "b1", "b2", "w1", "w2",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("parameter `{0}` given twice")]
    Duplicate(String),
    #[error("missing parameter `{0}`")]
    Missing(String),
    #[error("bad value for `{key}`: `{value}`")]
    BadValue { key: String, value: String },
    #[error("line {0}: expected key=value")]
    BadLine(usize),
    #[error("unsupported parameter file format `{0}`")]
    Format(String),
}

/// A parameter value: exact (for symbolic certificates) or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Float(x) => *x,
        }
    }

    /// Exact value; floats convert to the dyadic rational they represent.
    pub fn to_rational(&self) -> Rational {
        match self {
            Scalar::Exact(q) => q.clone(),
            Scalar::Float(x) => Rational::from_f64(*x).expect("finite parameter"),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// Floating view with named fields; `a[0]` is `a1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericParameters {
    pub a: [f64; 7],
    pub b1: f64,
    pub b2: f64,
    pub w1: f64,
    pub w2: f64,
}

impl NumericParameters {
    /// `|b - w|²`.
    pub fn bw2(&self) -> f64 {
        (self.b1 - self.w1).powi(2) + (self.b2 - self.w2).powi(2)
    }

    /// `|b|²`.
    pub fn b2norm(&self) -> f64 {
        self.b1 * self.b1 + self.b2 * self.b2
    }

    pub fn to_array(&self) -> [f64; 11] {
        let a = self.a;
        [
            a[0], a[1], a[2], a[3], a[4], a[5], a[6], self.b1, self.b2, self.w1, self.w2,
        ]
    }
}

/// The eleven scalars `a1..a7, b1, b2, w1, w2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MechanismParameters {
    values: [Scalar; 11],
}

fn exact(text: &str) -> Scalar {
    Scalar::Exact(parse_rational(text).expect("valid literal"))
}

impl MechanismParameters {
    pub fn new(values: [Scalar; 11]) -> MechanismParameters {
        MechanismParameters { values }
    }

    pub fn from_f64(values: [f64; 11]) -> MechanismParameters {
        MechanismParameters {
            values: values.map(Scalar::Float),
        }
    }

    /// The standard benchmark values, read as exact decimals.
    pub fn benchmark() -> MechanismParameters {
        let lits = [
            "0.007", "0.028", "0.035", "0.020", "0.040", "0.020", "0.040", "-0.03635", "0.03273",
            "-0.06934", "-0.00227",
        ];
        MechanismParameters {
            values: lits.map(exact),
        }
    }

    /// Benchmark with `a1 = 0.03`, `a2 = 0.055`: four T5-branch
    /// singularities.
    pub fn t5_example() -> MechanismParameters {
        Self::benchmark()
            .with("a1", "0.03")
            .unwrap()
            .with("a2", "0.055")
            .unwrap()
    }

    /// Benchmark with `b1 = -0.026913593`, `a1 = 0.02`, `a2 = 0.055`: two
    /// U1-branch singularities.
    pub fn u1_example() -> MechanismParameters {
        Self::benchmark()
            .with("b1", "-0.026913593")
            .unwrap()
            .with("a1", "0.02")
            .unwrap()
            .with("a2", "0.055")
            .unwrap()
    }

    /// Parameters admitting a singular configuration with rational
    /// cosines and sines.
    pub fn rational_example() -> MechanismParameters {
        let lits = [
            "1/10", "1/2", "1/2", "3/20", "3/20", "3/20", "3/20", "-1/10", "1/5", "-2/5", "-1/5",
        ];
        MechanismParameters {
            values: lits.map(exact),
        }
    }

    fn index(name: &str) -> Result<usize, ParamError> {
        PARAMETER_NAMES
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| ParamError::UnknownKey(name.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&Scalar, ParamError> {
        Ok(&self.values[Self::index(name)?])
    }

    pub fn set(&mut self, name: &str, value: Scalar) -> Result<(), ParamError> {
        self.values[Self::index(name)?] = value;
        Ok(())
    }

    /// Copy with one parameter replaced by an exact literal.
    pub fn with(&self, name: &str, literal: &str) -> Result<MechanismParameters, ParamError> {
        let q = parse_rational(literal).map_err(|_| ParamError::BadValue {
            key: name.to_string(),
            value: literal.to_string(),
        })?;
        let mut out = self.clone();
        out.set(name, Scalar::Exact(q))?;
        Ok(out)
    }

    pub fn with_f64(&self, name: &str, value: f64) -> Result<MechanismParameters, ParamError> {
        let mut out = self.clone();
        out.set(name, Scalar::Float(value))?;
        Ok(out)
    }

    pub fn values(&self) -> &[Scalar; 11] {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Scalar::is_exact)
    }

    pub fn numeric(&self) -> NumericParameters {
        let v: Vec<f64> = self.values.iter().map(Scalar::to_f64).collect();
        NumericParameters {
            a: [v[0], v[1], v[2], v[3], v[4], v[5], v[6]],
            b1: v[7],
            b2: v[8],
            w1: v[9],
            w2: v[10],
        }
    }

    /// Requires `a_i > 0` for all rod lengths.
    pub fn physically_relevant(&self) -> bool {
        self.values[..7].iter().all(|s| match s {
            Scalar::Exact(q) => q.is_positive(),
            Scalar::Float(x) => *x > 0.0,
        })
    }

    /// Bindings of the parameter variables present in `universe`.
    pub fn bindings(&self, universe: &Arc<Universe>) -> Vec<(Variable, Rational)> {
        PARAMETER_NAMES
            .iter()
            .zip(&self.values)
            .filter_map(|(n, s)| universe.var(n).ok().map(|v| (v, s.to_rational())))
            .collect()
    }

    /// Flat `key=value` text, preceded by a `format=1` line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("format=1\n");
        for (n, v) in PARAMETER_NAMES.iter().zip(&self.values) {
            out.push_str(&format!("{n}={v}\n"));
        }
        out
    }

    /// Parses `key=value` lines. Blank lines and `#` comments are ignored;
    /// an optional `format=1` line is accepted. Values are decimal or
    /// rational literals and are kept exact.
    pub fn parse(text: &str) -> Result<MechanismParameters, ParamError> {
        let mut slots: [Option<Scalar>; 11] = Default::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or(ParamError::BadLine(lineno + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if k == "format" {
                if v != "1" {
                    return Err(ParamError::Format(v.to_string()));
                }
                continue;
            }
            let i = Self::index(k)?;
            if slots[i].is_some() {
                return Err(ParamError::Duplicate(k.to_string()));
            }
            let q = parse_rational(v).map_err(|_| ParamError::BadValue {
                key: k.to_string(),
                value: v.to_string(),
            })?;
            slots[i] = Some(Scalar::Exact(q));
        }
        let mut values: Vec<Scalar> = Vec::with_capacity(11);
        for (i, s) in slots.into_iter().enumerate() {
            values.push(s.ok_or_else(|| ParamError::Missing(PARAMETER_NAMES[i].to_string()))?);
        }
        Ok(MechanismParameters {
            values: values.try_into().unwrap(),
        })
    }
}
