use num_traits::{One, Zero};

use crate::exactalg::{rational_to_f64, Rational};
use crate::mechanism::{MechanismParameters, NumericParameters};

/// Cosine/sine pairs of the seven angles; `c[0]` is `c1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub c: [f64; 7],
    pub s: [f64; 7],
}

impl Configuration {
    pub fn from_angles(y: &[f64; 7]) -> Configuration {
        Configuration {
            c: y.map(f64::cos),
            s: y.map(f64::sin),
        }
    }

    /// `y_i = atan2(s_i, c_i)`, in `(-pi, pi]`.
    pub fn angles(&self) -> [f64; 7] {
        let mut y = [0.0; 7];
        for i in 0..7 {
            y[i] = self.s[i].atan2(self.c[i]);
        }
        y
    }

    /// Largest `|c_i² + s_i² - 1|`.
    pub fn circle_defect(&self) -> f64 {
        (0..7)
            .map(|i| (self.c[i] * self.c[i] + self.s[i] * self.s[i] - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `c1, s1, ..., c7, s7`.
    pub fn to_vec(&self) -> Vec<f64> {
        (0..7).flat_map(|i| [self.c[i], self.s[i]]).collect()
    }

    pub fn from_slice(x: &[f64]) -> Configuration {
        let mut c = [0.0; 7];
        let mut s = [0.0; 7];
        for i in 0..7 {
            c[i] = x[2 * i];
            s[i] = x[2 * i + 1];
        }
        Configuration { c, s }
    }

    /// Point in the 25-variable mechanism universe.
    pub fn point(&self, p: &NumericParameters) -> Vec<f64> {
        let mut v = self.to_vec();
        v.extend(p.to_array());
        v
    }

    /// Largest coordinate difference, cosines and sines alike.
    pub fn distance(&self, other: &Configuration) -> f64 {
        self.to_vec()
            .iter()
            .zip(other.to_vec())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// A configuration with rational cosines and sines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactConfiguration {
    pub c: [Rational; 7],
    pub s: [Rational; 7],
}

impl ExactConfiguration {
    pub fn point(&self, params: &MechanismParameters) -> Vec<Rational> {
        let mut v: Vec<Rational> = (0..7)
            .flat_map(|i| [self.c[i].clone(), self.s[i].clone()])
            .collect();
        v.extend(params.values().iter().map(|s| s.to_rational()));
        v
    }

    pub fn to_f64(&self) -> Configuration {
        Configuration {
            c: std::array::from_fn(|i| rational_to_f64(&self.c[i])),
            s: std::array::from_fn(|i| rational_to_f64(&self.s[i])),
        }
    }

    pub fn on_circles(&self) -> bool {
        (0..7).all(|i| {
            (&self.c[i] * &self.c[i] + &self.s[i] * &self.s[i] - Rational::one()).is_zero()
        })
    }
}
