//! Exact integer transvection representation on first homology.
//!
//! Each twist generator acts as `x -> x + <x, c> c` where `c` is the
//! curve's homology class. The representation is a necessary-condition
//! oracle only: separating and boundary twists act trivially, so matrix
//! equality does not decide equality in the group, but every relation of
//! the presentation must evaluate to a matrix identity.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::presentation::{presentation, Equation};
use crate::surface::{CurveConfiguration, CurveId};
use crate::word::Word;

/// Dense square integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistMatrix {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl TwistMatrix {
    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        TwistMatrix { n, rows }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        TwistMatrix { n, rows }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_identity(&self) -> bool {
        self == &TwistMatrix::identity(self.n)
    }

    pub fn mul(&self, other: &TwistMatrix) -> TwistMatrix {
        debug_assert_eq!(self.n, other.n);
        let n = self.n;
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let aik = &self.rows[i][k];
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        rows[i][j] += aik * b;
                    }
                }
            }
        }
        TwistMatrix { n, rows }
    }

    /// Fraction-free determinant (Bareiss).
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&p| !m[p][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// `M - I` applied twice; zero for transvections.
    pub fn nilpotency_defect(&self) -> bool {
        let n = self.n;
        let mut d = self.clone();
        for i in 0..n {
            d.rows[i][i] -= BigInt::one();
        }
        d.mul(&d).rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

impl fmt::Display for TwistMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// The transvection `x -> x + <x, [c]> [c]` of a generator curve.
pub fn transvection(config: &CurveConfiguration, c: CurveId) -> TwistMatrix {
    transvection_of_class(
        config,
        config
            .homology_class(c)
            .unwrap_or_else(|| panic!("no homology class for {c}")),
        1,
    )
}

/// Transvection (or its inverse for `exp = -1`) of an explicit class.
pub fn transvection_of_class(config: &CurveConfiguration, class: &[i64], exp: i8) -> TwistMatrix {
    let n = config.rank();
    let pairing = config.pairing_matrix();
    // row vector of <basis_j, class> = (P * class)_j
    let mut weights = vec![0i64; n];
    for (j, w) in weights.iter_mut().enumerate() {
        *w = (0..n).map(|k| pairing[j][k] * class[k]).sum();
    }
    let mut m = TwistMatrix::identity(n);
    for r in 0..n {
        if class[r] == 0 {
            continue;
        }
        for j in 0..n {
            if weights[j] != 0 {
                m.rows[r][j] += BigInt::from(class[r] * weights[j] * exp as i64);
            }
        }
    }
    m
}

/// Evaluate a word: the rightmost letter acts first, so the product is
/// taken in word order.
pub fn evaluate(config: &CurveConfiguration, w: &Word) -> TwistMatrix {
    let mut acc = TwistMatrix::identity(config.rank());
    for l in w.letters() {
        let class = config
            .homology_class(l.id)
            .unwrap_or_else(|| panic!("no homology class for {}", l.id));
        acc = acc.mul(&transvection_of_class(config, class, l.exp));
    }
    acc
}

/// Exact matrix equality of the two sides.
pub fn check_equation(config: &CurveConfiguration, eq: &Equation) -> bool {
    evaluate(config, &eq.lhs) == evaluate(config, &eq.rhs)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    pub pass: bool,
}

/// Per-relation pass/fail record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleReport {
    pub entries: Vec<ReportEntry>,
    pub pass: bool,
}

impl OracleReport {
    pub fn from_checks(entries: Vec<ReportEntry>) -> Self {
        let pass = entries.iter().all(|e| e.pass);
        OracleReport { entries, pass }
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| !e.pass)
            .map(|e| e.name.as_str())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks every relation of the full presentation (handles included).
pub fn check_presentation(config: &CurveConfiguration) -> OracleReport {
    let pres = presentation(config.signature(), config, true);
    let entries = pres
        .relations
        .iter()
        .map(|eq| ReportEntry {
            name: eq.name.clone(),
            pass: check_equation(config, eq),
        })
        .collect();
    OracleReport::from_checks(entries)
}
