//! Character multiplicity matrices, their inverses, coherent continuation at
//! the Grothendieck-group level, and the inductive inversion step as an
//! executable algorithm.
//!
//! With elements in the fixed group order, `A[x][y] = P_{w0 x, w0 y}(1)` is
//! the matrix expanding Verma characters into irreducible characters and
//! `B[x][y] = (-1)^(l(x)-l(y)) P_{y,x}(1)` the inverse expansion.  The
//! inductive step rebuilds a row of `B` from strictly shorter rows using
//! only the coherent-continuation identities, branching on the three Bruhat
//! configurations of the coefficient gathering so a failure is attributable
//! to a specific case.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{CoreError, Result};
use crate::klcore::KLTable;
use crate::weyl::WeylGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    Verma,
    Irreducible,
}

/// Finitely supported integer vector over the group, tagged by basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrothendieckVector {
    pub basis: BasisTag,
    pub coords: BTreeMap<usize, i64>,
}

impl GrothendieckVector {
    pub fn new(basis: BasisTag) -> GrothendieckVector {
        GrothendieckVector {
            basis,
            coords: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, e: usize, c: i64) {
        let entry = self.coords.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coords.remove(&e);
        }
    }

    pub fn coeff(&self, e: usize) -> i64 {
        self.coords.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixRole {
    /// Rows expand Verma characters into irreducible characters.
    MInL,
    /// Rows expand irreducible characters into Verma characters.
    LInM,
}

/// Square integer matrix indexed by the group's fixed total order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityMatrix {
    pub role: MatrixRole,
    pub entries: Vec<Vec<i64>>,
}

impl MultiplicityMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn row(&self, x: usize) -> &[i64] {
        &self.entries[x]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &v)| v == i64::from(i == j))
        })
    }

    pub fn matmul(&self, other: &MultiplicityMatrix) -> Vec<Vec<i64>> {
        let n = self.order();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += a * other.entries[k][j];
                }
            }
        }
        out
    }
}

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("matrix entry fits in i64")
}

/// `A[x][y] = P_{w0 x, w0 y}(1)` for `y <= x`, zero otherwise.
pub fn multiplicity_matrix(table: &KLTable) -> MultiplicityMatrix {
    let g = table.group();
    let n = g.order();
    let w0 = g.long_element();
    let mut entries = vec![vec![0i64; n]; n];
    for x in 0..n {
        for y in 0..n {
            if g.bruhat_leq(y, x) {
                entries[x][y] = to_i64(
                    &table
                        .polynomial(g.multiply(w0, x), g.multiply(w0, y))
                        .eval(1),
                );
            }
        }
    }
    MultiplicityMatrix {
        role: MatrixRole::MInL,
        entries,
    }
}

/// `B[x][y] = (-1)^(l(x)-l(y)) P_{y,x}(1)` for `y <= x`, zero otherwise.
pub fn inversion_matrix(table: &KLTable) -> MultiplicityMatrix {
    let g = table.group();
    let n = g.order();
    let mut entries = vec![vec![0i64; n]; n];
    for x in 0..n {
        for y in 0..n {
            if g.bruhat_leq(y, x) {
                let sign = if (g.length(x) - g.length(y)) % 2 == 0 {
                    1
                } else {
                    -1
                };
                entries[x][y] = sign * to_i64(&table.polynomial(y, x).eval(1));
            }
        }
    }
    MultiplicityMatrix {
        role: MatrixRole::LInM,
        entries,
    }
}

/// Outcome of checking that two matrices are mutually inverse.
#[derive(Debug, Clone)]
pub struct InversionReport {
    pub ok: bool,
    /// (row, column, offending value) for entries of A*B or B*A that differ
    /// from the identity.
    pub violations: Vec<(usize, usize, i64)>,
}

pub fn verify_inversion(a: &MultiplicityMatrix, b: &MultiplicityMatrix) -> InversionReport {
    let mut violations = Vec::new();
    for prod in [a.matmul(b), b.matmul(a)] {
        for (i, row) in prod.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != i64::from(i == j) {
                    violations.push((i, j, v));
                }
            }
        }
    }
    InversionReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Coherent continuation of a Verma class: `[M(x)] + [M(xs)]`, the same
/// vector for `x` and `xs`.
pub fn theta_verma(group: &WeylGroup, x: usize, s: usize) -> GrothendieckVector {
    let xs = group.right_mul_gen(x, s);
    let mut v = GrothendieckVector::new(BasisTag::Verma);
    v.add_term(x, 1);
    v.add_term(xs, 1);
    v
}

/// Coherent continuation of an irreducible class in the irreducible basis:
/// zero when `x > xs`, otherwise
/// `2 [L(x)] + [L(xs)] + sum over y > ys of mu(w0 x, w0 y) [L(y)]`.
pub fn theta_irr(table: &KLTable, x: usize, s: usize) -> GrothendieckVector {
    let g = table.group();
    let xs = g.right_mul_gen(x, s);
    let mut v = GrothendieckVector::new(BasisTag::Irreducible);
    if g.length(xs) < g.length(x) {
        return v;
    }
    v.add_term(x, 2);
    v.add_term(xs, 1);
    let w0 = g.long_element();
    let w0x = g.multiply(w0, x);
    for y in 0..g.order() {
        let ys = g.right_mul_gen(y, s);
        if g.length(ys) >= g.length(y) {
            continue;
        }
        let m = table.mu(w0x, g.multiply(w0, y));
        if !m.is_zero() {
            v.add_term(y, to_i64(&m));
        }
    }
    v
}

/// One step of the inversion induction: rebuilds the row of the inverse
/// matrix at `x` from the rows at shorter elements, given a right descent
/// `s` of `x`.
///
/// `rows_below[z]` must hold the row for every `z` shorter than `x`; entries
/// at other positions are ignored.  The three coefficient-gathering cases
/// are separate branches, and the case whose correction sum must vanish
/// asserts that it does.
pub fn coherent_invert_step(
    table: &KLTable,
    x: usize,
    s: usize,
    rows_below: &[Option<Vec<i64>>],
) -> Result<Vec<i64>> {
    let g = table.group();
    let n = g.order();
    let xs = g.right_mul_gen(x, s);
    if g.length(xs) >= g.length(x) {
        return Err(CoreError::Domain(format!(
            "generator {s} is not a right descent of {}",
            g.element(x).word_string()
        )));
    }
    let row_xs = rows_below[xs]
        .as_ref()
        .ok_or_else(|| CoreError::Config("missing row below x".into()))?;

    // mu-coefficients a_{w0 xs, w0 z, 1} paired with the rows for z > zs.
    let w0 = g.long_element();
    let w0xs = g.multiply(w0, xs);
    let mut mu_rows: Vec<(usize, i64)> = Vec::new();
    for z in 0..n {
        let zs = g.right_mul_gen(z, s);
        if g.length(zs) >= g.length(z) {
            continue;
        }
        let m = table.mu(w0xs, g.multiply(w0, z));
        if !m.is_zero() {
            mu_rows.push((z, to_i64(&m)));
        }
    }

    let mut row = vec![0i64; n];
    for w in 0..n {
        if !g.bruhat_leq(w, x) {
            // Support bound: every term of the gathering vanishes here.
            continue;
        }
        let ws = g.right_mul_gen(w, s);
        let w_below = g.bruhat_leq(w, xs);
        let ws_below = g.bruhat_leq(ws, xs);
        let mu_sum = |w: usize| -> Result<i64> {
            let mut acc = 0i64;
            for &(z, m) in &mu_rows {
                let rz = rows_below[z]
                    .as_ref()
                    .ok_or_else(|| CoreError::Config("missing row below x".into()))?;
                acc += m * rz[w];
            }
            Ok(acc)
        };
        row[w] = if w_below && ws_below {
            // Both w and ws below xs.
            -row_xs[w] + row_xs[ws] - mu_sum(w)?
        } else if !w_below {
            // w <= x only; the correction sum has no room and must vanish.
            let sum = mu_sum(w)?;
            assert_eq!(sum, 0, "no z with w <= z <= xs exists in this case");
            row_xs[ws]
        } else {
            // w below xs but ws not.
            -row_xs[w] - mu_sum(w)?
        };
    }
    Ok(row)
}

/// Runs the induction from scratch, row by row in the fixed order, checking
/// each rebuilt row against the closed form for every admissible descent.
pub fn rebuild_inversion_by_induction(table: &KLTable) -> Result<MultiplicityMatrix> {
    let g = table.group();
    let n = g.order();
    let b = inversion_matrix(table);
    let mut rows: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut id_row = vec![0i64; n];
    id_row[g.identity()] = 1;
    rows[g.identity()] = Some(id_row);
    for x in 0..n {
        if x == g.identity() {
            continue;
        }
        let mut built: Option<Vec<i64>> = None;
        for s in 0..g.num_generators() {
            if g.length(g.right_mul_gen(x, s)) < g.length(x) {
                let row = coherent_invert_step(table, x, s, &rows)?;
                if let Some(prev) = &built {
                    if *prev != row {
                        return Err(CoreError::Domain(format!(
                            "induction row at {} depends on the descent chosen",
                            g.element(x).word_string()
                        )));
                    }
                } else {
                    built = Some(row);
                }
            }
        }
        let row = built.expect("non-identity element has a right descent");
        if row != b.entries[x] {
            return Err(CoreError::Domain(format!(
                "induction row at {} differs from the closed form",
                g.element(x).word_string()
            )));
        }
        rows[x] = Some(row);
    }
    Ok(b)
}
