use std::collections::BTreeMap;
use std::str::FromStr;

use crate::mechanism::NumericParameters;

use super::SolveError;

/// Which coefficient family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientTable {
    /// `f1..f5` of the T5 s7 quadratic; no extra input.
    F,
    /// `d0..d3`; needs `(c3, s3)`.
    D,
    /// `l1..l3`; needs `(c3, s3)`.
    L,
    /// `n1, n2`; needs `(c3, s3)`.
    N,
    /// `n3, n4, r1, r3`; needs `(c7, s7)`.
    R,
}

impl FromStr for CoefficientTable {
    type Err = SolveError;

    fn from_str(s: &str) -> Result<Self, SolveError> {
        match s {
            "f" => Ok(CoefficientTable::F),
            "d" => Ok(CoefficientTable::D),
            "l" => Ok(CoefficientTable::L),
            "n" => Ok(CoefficientTable::N),
            "r" => Ok(CoefficientTable::R),
            _ => Err(SolveError::MissingInput(format!("unknown table `{s}`"))),
        }
    }
}

/// Named coefficient values. Keys ending in `_expanded` are the fully
/// multiplied-out forms; the bare names use the shorthand `d0`, `n4`,
/// `|b - w|²`. Coefficients that also involve `s1, s2, c2` are omitted.
pub fn appendix_coefficients(
    which: CoefficientTable,
    p: &NumericParameters,
    extra: Option<(f64, f64)>,
) -> Result<BTreeMap<String, f64>, SolveError> {
    let [a1, a2, a3, a4, a5, _, _] = p.a;
    let (b1, b2, w1, w2) = (p.b1, p.b2, p.w1, p.w2);
    let mut m = BTreeMap::new();
    let mut put = |k: &str, v: f64| {
        m.insert(k.to_string(), v);
    };
    let need =
        |what: &str| extra.ok_or_else(|| SolveError::MissingInput(format!("table needs {what}")));
    match which {
        CoefficientTable::F => {
            let bw = p.bw2();
            let d = a4 - a5;
            let f1 = 4.0 * (a5 - a4).powi(2) * bw;
            let f2 = 4.0 * (w1 - b1) * d * (a3 * a3 - d * d - bw);
            let f3 = bw + 2.0 * (b2 - w2) * d - a3 * a3 + d * d;
            let f4 = bw - 2.0 * (b2 - w2) * d - a3 * a3 + d * d;
            put("f1", f1);
            put("f2", f2);
            put("f3", f3);
            put("f4", f4);
            put("f5", a3 * a3 - d * d - bw);
            put(
                "f1_expanded",
                4.0 * (a5 - a4).powi(2)
                    * (b1 * b1 - 2.0 * b1 * w1 + b2 * b2 - 2.0 * b2 * w2 + w1 * w1 + w2 * w2),
            );
            put(
                "f2_expanded",
                4.0 * (w1 - b1)
                    * (a4 - a5)
                    * (-b1 * b1 + 2.0 * b1 * w1 - b2 * b2 + 2.0 * b2 * w2 - w1 * w1 - w2 * w2
                        + a3 * a3
                        - a4 * a4
                        + 2.0 * a4 * a5
                        - a5 * a5),
            );
            put(
                "f3_expanded",
                b1 * b1 - 2.0 * b1 * w1 + b2 * b2 - 2.0 * b2 * w2 + 2.0 * b2 * a4 - 2.0 * b2 * a5
                    + w1 * w1
                    + w2 * w2
                    - 2.0 * w2 * a4
                    + 2.0 * w2 * a5
                    - a3 * a3
                    + a4 * a4
                    - 2.0 * a4 * a5
                    + a5 * a5,
            );
            put(
                "f4_expanded",
                b1 * b1 - 2.0 * b1 * w1 + b2 * b2 - 2.0 * b2 * w2 - 2.0 * b2 * a4
                    + 2.0 * b2 * a5
                    + w1 * w1
                    + w2 * w2
                    + 2.0 * w2 * a4
                    - 2.0 * w2 * a5
                    - a3 * a3
                    + a4 * a4
                    - 2.0 * a4 * a5
                    + a5 * a5,
            );
            put(
                "f5_expanded",
                a3 * a3 - a4 * a4 + 2.0 * a4 * a5 - a5 * a5 - b1 * b1 + 2.0 * b1 * w1 - b2 * b2
                    + 2.0 * b2 * w2
                    - w1 * w1
                    - w2 * w2,
            );
            put("D", f2 * f2 - 4.0 * f1 * f3 * f4);
            put("D_printed", f2 * f2 + 4.0 * f1 * f3 * f4);
            put("D_theorem", f2 * f2 + 16.0 * d * d * bw * f3 * f4);
        }
        CoefficientTable::D | CoefficientTable::L | CoefficientTable::N => {
            let (c3, s3) = need("(c3, s3)")?;
            let d0 = a3 * a3 + p.b2norm() + 2.0 * a3 * (b1 * s3 - b2 * c3);
            let inner = a3 * a3 + 2.0 * a3 * b1 * s3 - 2.0 * a3 * b2 * c3 + b1 * b1 + b2 * b2;
            let n1 = (a1 + a2).powi(2) - d0;
            let n2 = n1 - 4.0 * a1 * a2;
            match which {
                CoefficientTable::D => {
                    put("d0", d0);
                    put("d1", 2.0 * a1 * a2 * d0);
                    put("d1_expanded", 2.0 * a1 * a2 * inner);
                    put("d2", n1 * n2);
                    put("d3", (a1 * a1 + a2 * a2) * d0 - (a1 * a1 - a2 * a2).powi(2));
                    put(
                        "d3_expanded",
                        -a1.powi(4) + 2.0 * a1 * a1 * a2 * a2 + a1 * a1 * inner - a2.powi(4)
                            + a2 * a2 * inner,
                    );
                }
                CoefficientTable::L => {
                    put("l1", -2.0 * a1 * a2 * d0);
                    put("l1_expanded", -2.0 * a1 * a2 * inner);
                    put("l2", 2.0 * a1 * a2 * (a3 * s3 + b1));
                    put("l3", -(a3 * c3 - b2) * (a1 * a1 - a2 * a2 + d0));
                    put("l3_expanded", -(a3 * c3 - b2) * (a1 * a1 - a2 * a2 + inner));
                }
                _ => {
                    put("n1", n1);
                    put("n2", n2);
                    put(
                        "n1_expanded",
                        a1 * a1 + 2.0 * a1 * a2 + a2 * a2 - a3 * a3 - 2.0 * a3 * b1 * s3
                            + 2.0 * a3 * b2 * c3
                            - b1 * b1
                            - b2 * b2,
                    );
                    put(
                        "n2_expanded",
                        a1 * a1 - 2.0 * a1 * a2 + a2 * a2 - a3 * a3 - 2.0 * a3 * b1 * s3
                            + 2.0 * a3 * b2 * c3
                            - b1 * b1
                            - b2 * b2,
                    );
                }
            }
        }
        CoefficientTable::R => {
            let (c7, s7) = need("(c7, s7)")?;
            let n4 = p.b2norm() + a3 * a3 + 2.0 * a3 * (b2 * c7 - b1 * s7);
            let (q1, q2) = (a1 * a1, a2 * a2);
            put("n4", n4);
            put("n3", n4 - (a1 - a2).powi(2));
            put("r1", (q1 + q2) * n4 - (q1 - q2).powi(2));
            put(
                "r1_expanded",
                (q1 + q2) * p.b2norm() - 2.0 * b1 * q1 * a3 * s7 - 2.0 * b1 * q2 * a3 * s7
                    + 2.0 * b2 * q1 * a3 * c7
                    + 2.0 * b2 * q2 * a3 * c7
                    - (q1 - q2).powi(2)
                    + (q1 + q2) * a3 * a3,
            );
            put("r3", (q1 - q2 + n4) * (b2 + a3 * c7));
            put(
                "r3_expanded",
                b1 * b1 * b2 + b1 * b1 * a3 * c7
                    - 2.0 * b1 * b2 * a3 * s7
                    - 2.0 * b1 * a3 * a3 * c7 * s7
                    + b2.powi(3)
                    + 3.0 * b2 * b2 * a3 * c7
                    + b2 * q1
                    - b2 * q2
                    + 3.0 * b2 * a3 * a3 * c7 * c7
                    + b2 * a3 * a3 * s7 * s7
                    + q1 * a3 * c7
                    - q2 * a3 * c7
                    + a3.powi(3) * c7,
            );
        }
    }
    Ok(m)
}
