//! Abelian invariants of a presented group via the Smith normal form of
//! its exponent-sum matrix.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Rows are relations, columns are generators; entry `(r, g)` is the
/// exponent sum of generator `g` in the relator `lhs rhs^{-1}`.
pub fn relation_matrix(pres: &Presentation) -> IntMatrix {
    let cols = pres.generators.len();
    pres.relations
        .iter()
        .map(|eq| {
            let mut row = vec![BigInt::zero(); cols];
            for (j, g) in pres.generators.iter().enumerate() {
                row[j] = BigInt::from(eq.lhs.exponent_sum(*g) - eq.rhs.exponent_sum(*g));
            }
            row
        })
        .collect()
}

fn identity(n: usize) -> IntMatrix {
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += t;
                }
            }
        }
    }
    out
}

/// Determinant by fraction-free elimination; used to confirm
/// unimodularity of the transformation matrices.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = m.clone();
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

/// Smith normal form: returns `(U, D, V)` with `U M V = D`, `U` and `V`
/// unimodular, `D` diagonal with each diagonal entry dividing the next.
///
/// Exact integer elimination with a pivot of minimal absolute value;
/// coefficient growth is accepted at the sizes that occur here.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut d = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut k = 0;
    while k < rows.min(cols) {
        if !eliminate_at(&mut d, &mut u, &mut v, k, rows, cols) {
            break;
        }
        k += 1;
    }

    enforce_divisibility(&mut d, &mut u, &mut v, rows, cols, k);

    for i in 0..rows.min(cols) {
        if d[i][i].is_negative() {
            for x in d[i].iter_mut() {
                *x = -x.clone();
            }
            for x in u[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    (u, d, v)
}

/// Clear row and column `k`; returns false when the trailing block is zero.
fn eliminate_at(
    d: &mut IntMatrix,
    u: &mut IntMatrix,
    v: &mut IntMatrix,
    k: usize,
    rows: usize,
    cols: usize,
) -> bool {
    // smallest nonzero entry of the trailing block as pivot
    let mut best: Option<(usize, usize)> = None;
    for i in k..rows {
        for j in k..cols {
            if d[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    let Some((pi, pj)) = best else { return false };
    d.swap(k, pi);
    u.swap(k, pi);
    if pj != k {
        for row in d.iter_mut() {
            row.swap(k, pj);
        }
        for row in v.iter_mut() {
            row.swap(k, pj);
        }
    }

    loop {
        let mut retry = false;
        for i in k + 1..rows {
            if d[i][k].is_zero() {
                continue;
            }
            let q = div_round(&d[i][k], &d[k][k]);
            if !q.is_zero() {
                for j in 0..cols {
                    let t = &q * &d[k][j];
                    d[i][j] -= t;
                }
                for j in 0..rows {
                    let t = &q * &u[k][j];
                    u[i][j] -= t;
                }
            }
            if !d[i][k].is_zero() {
                // remainder strictly smaller than the pivot: promote it
                d.swap(k, i);
                u.swap(k, i);
                retry = true;
            }
        }
        if retry {
            continue;
        }
        for j in k + 1..cols {
            if d[k][j].is_zero() {
                continue;
            }
            let q = div_round(&d[k][j], &d[k][k]);
            if !q.is_zero() {
                for i in 0..rows {
                    let t = &q * &d[i][k];
                    d[i][j] -= t;
                }
                for i in 0..cols {
                    let t = &q * &v[i][k];
                    v[i][j] -= t;
                }
            }
            if !d[k][j].is_zero() {
                for row in d.iter_mut() {
                    row.swap(k, j);
                }
                for row in v.iter_mut() {
                    row.swap(k, j);
                }
                retry = true;
                break;
            }
        }
        if !retry {
            return true;
        }
    }
}

/// Fold non-dividing diagonal pairs into (gcd, lcm) blocks.
fn enforce_divisibility(
    d: &mut IntMatrix,
    u: &mut IntMatrix,
    v: &mut IntMatrix,
    rows: usize,
    cols: usize,
    r: usize,
) {
    let mut changed = true;
    while changed {
        changed = false;
        for k in 0..r.saturating_sub(1) {
            let a = d[k][k].clone();
            let b = d[k + 1][k + 1].clone();
            if b.is_zero() || (!a.is_zero() && (&b % &a).is_zero()) {
                continue;
            }
            // column op: add column k+1 into column k, then re-eliminate
            for row in d.iter_mut() {
                let t = row[k + 1].clone();
                row[k] += t;
            }
            for row in v.iter_mut() {
                let t = row[k + 1].clone();
                row[k] += t;
            }
            eliminate_at(d, u, v, k, rows, cols);
            eliminate_at(d, u, v, k + 1, rows, cols);
            changed = true;
        }
    }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // rounded division keeps remainders small
    let (q, r) = (a / b, a % b);
    if (&r + &r).abs() > b.abs() {
        if r.is_negative() == b.is_negative() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Free rank and invariant factors of the abelianized group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Entries greater than one, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Abelian invariants from the Smith normal form of the relation matrix.
pub fn abelian_invariants(pres: &Presentation) -> AbelianInvariants {
    let m = relation_matrix(pres);
    if m.is_empty() {
        return AbelianInvariants {
            free_rank: pres.generators.len(),
            torsion: Vec::new(),
        };
    }
    let (_, d, _) = smith_normal_form(&m);
    let r = m.len().min(pres.generators.len());
    let mut rank = 0usize;
    let mut torsion = Vec::new();
    for k in 0..r {
        if d[k][k].is_zero() {
            continue;
        }
        rank += 1;
        if d[k][k] > BigInt::one() {
            torsion.push(d[k][k].clone());
        }
    }
    AbelianInvariants {
        free_rank: pres.generators.len() - rank,
        torsion,
    }
}
