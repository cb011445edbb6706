use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{AlgebraError, Result, MAX_VARS};

/// Index of a variable inside a [`Universe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(pub(crate) usize);

impl Variable {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An ordered, fixed set of variable names. Indices are stable for the
/// lifetime of the universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

/// Names of the 25-variable mechanism universe: seven cosine/sine pairs
/// followed by the eleven parameters.
pub const MECHANISM_VARIABLES: [&str; 25] = [
    "c1", "s1", "c2", "s2", "c3", "s3", "c4", "s4", "c5", "s5", "c6", "s6", "c7", "s7", "a1", "a2",
    "a3", "a4", "a5", "a6", "a7", "b1", "b2", "w1", "w2",
];

impl Universe {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Universe>> {
        if names.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len()));
        }
        let mut lookup = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref().to_string();
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(AlgebraError::UnknownVariable(n));
            }
            if lookup.insert(n.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateVariable(n));
            }
            owned.push(n);
        }
        Ok(Arc::new(Universe {
            names: owned,
            lookup,
        }))
    }

    /// The shared default universe `(c1, s1, …, c7, s7, a1, …, a7, b1, b2, w1, w2)`.
    pub fn mechanism() -> Arc<Universe> {
        static DEFAULT: OnceLock<Arc<Universe>> = OnceLock::new();
        DEFAULT
            .get_or_init(|| Universe::new(&MECHANISM_VARIABLES).expect("valid default universe"))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn var(&self, name: &str) -> Result<Variable> {
        self.lookup
            .get(name)
            .map(|&i| Variable(i))
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Looks up several names at once.
    pub fn vars(&self, names: &[&str]) -> Result<Vec<Variable>> {
        names.iter().map(|n| self.var(n)).collect()
    }

    pub fn name(&self, v: Variable) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> {
        (0..self.names.len()).map(Variable)
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Universe{:?}", self.names)
    }
}

pub(crate) fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}
