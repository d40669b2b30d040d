//! Chevalley bases for the rank <= 2 types backing the brute-force form
//! computations.
//!
//! Each type carries a hardcoded integral matrix realization (traceless 2x2
//! and 3x3 matrices; 4x4 symplectic matrices for B2, whose root system is
//! realized on the symplectic side so that every basis vector is an integer
//! matrix).  The abstract bracket table is extracted once by decomposing
//! commutators against the basis, with the decomposition verified exactly;
//! downstream straightening uses only the table, so the Jacobi and
//! sigma-symmetry tests on the table are genuine checks of the extraction.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::rational::{q_int, q_to_i64, Q};
use crate::rootsys::{RootSystem, Weight};

/// Basis element label: raising/lowering by a positive root index, or a
/// simple coroot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenId {
    X(usize),
    Y(usize),
    H(usize),
}

impl GenId {
    /// Transpose antiautomorphism on generators.
    pub fn sigma(self) -> GenId {
        match self {
            GenId::X(k) => GenId::Y(k),
            GenId::Y(k) => GenId::X(k),
            GenId::H(i) => GenId::H(i),
        }
    }
}

type Mat = Vec<Vec<i64>>;

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = vec![vec![0i64; n]; n];
    m[i][j] = 1;
    m
}

fn mat_add(a: &Mat, b: &Mat, sign: i64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + sign * y).collect())
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    mat_add(&mat_mul(a, b), &mat_mul(b, a), -1)
}

fn transpose(a: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

/// Structure constants and bracket tables for one of A1, A2, B2.
pub struct ChevalleyData {
    rs: Arc<RootSystem>,
    bracket: HashMap<(GenId, GenId), Vec<(GenId, i64)>>,
    /// Coroot of each positive root over the simple coroots.
    coroot_coords: Vec<Vec<i64>>,
}

impl ChevalleyData {
    pub fn new(rs: Arc<RootSystem>) -> Result<ChevalleyData> {
        let label = rs.cartan_type().label();
        let (dim, x_mats, h_mats): (usize, Vec<Mat>, Vec<Mat>) = match label.as_str() {
            "A1" => {
                let x = vec![unit(2, 0, 1)];
                let mut h = unit(2, 0, 0);
                h[1][1] = -1;
                (2, x, vec![h])
            }
            "A2" => {
                // Positive roots in storage order: a1, a2, a1+a2.
                let x = vec![unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)];
                let mut h0 = unit(3, 0, 0);
                h0[1][1] = -1;
                let mut h1 = unit(3, 1, 1);
                h1[2][2] = -1;
                (3, x, vec![h0, h1])
            }
            "B2" => {
                // Realized on the symplectic side (the dual root system),
                // where the Chevalley basis is integral: with coordinates
                // (e1, e2, -e2, -e1),
                //   alpha1 = 2 e2        -> E23
                //   alpha2 = e1 - e2     -> E12 - E34
                //   alpha1 + alpha2      -> E13 + E24
                //   alpha1 + 2 alpha2    -> E14
                let x1 = unit(4, 1, 2);
                let x2 = mat_add(&unit(4, 0, 1), &unit(4, 2, 3), -1);
                let x3 = mat_add(&unit(4, 0, 2), &unit(4, 1, 3), 1);
                let x4 = unit(4, 0, 3);
                let mut h0 = unit(4, 1, 1);
                h0[2][2] = -1;
                let mut h1 = unit(4, 0, 0);
                h1[1][1] = -1;
                h1[2][2] = 1;
                h1[3][3] = -1;
                (4, vec![x1, x2, x3, x4], vec![h0, h1])
            }
            other => {
                return Err(CoreError::UnsupportedType(format!(
                    "Chevalley data is provided for A1, A2, B2; got {other}"
                )))
            }
        };

        let nroots = rs.positive_roots().len();
        assert_eq!(x_mats.len(), nroots);
        let y_mats: Vec<Mat> = x_mats.iter().map(transpose).collect();

        // Basis in a fixed order for decomposition.
        let mut basis: Vec<(GenId, Mat)> = Vec::new();
        for (k, m) in x_mats.iter().enumerate() {
            basis.push((GenId::X(k), m.clone()));
        }
        for (k, m) in y_mats.iter().enumerate() {
            basis.push((GenId::Y(k), m.clone()));
        }
        for (i, m) in h_mats.iter().enumerate() {
            basis.push((GenId::H(i), m.clone()));
        }

        let matrix_of = |g: GenId| -> &Mat {
            match g {
                GenId::X(k) => &x_mats[k],
                GenId::Y(k) => &y_mats[k],
                GenId::H(i) => &h_mats[i],
            }
        };

        let gens: Vec<GenId> = basis.iter().map(|(g, _)| *g).collect();
        let mut bracket = HashMap::new();
        for &g1 in &gens {
            for &g2 in &gens {
                let c = commutator(matrix_of(g1), matrix_of(g2));
                let combo = decompose(&c, &basis, dim)?;
                if !combo.is_empty() {
                    bracket.insert((g1, g2), combo);
                }
            }
        }

        // Coroot of each positive root over the simple coroots; these give
        // the H produced by [X_beta, Y_beta].
        let mut coroot_coords = Vec::with_capacity(nroots);
        for (k, root) in rs.positive_roots().iter().enumerate() {
            let coords: Vec<i64> = (0..rs.rank())
                .map(|i| {
                    let mut fw = vec![Q::zero(); rs.rank()];
                    fw[i] = q_int(1);
                    let c = rs.pair_coroot(&Weight::new(fw), &root.fund);
                    q_to_i64(&c).expect("coroot coordinates are integers")
                })
                .collect();
            // Cross-check against the bracket table.
            let produced = bracket
                .get(&(GenId::X(k), GenId::Y(k)))
                .cloned()
                .unwrap_or_default();
            let mut expected: Vec<(GenId, i64)> = coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (GenId::H(i), c))
                .collect();
            expected.sort();
            let mut got = produced;
            got.sort();
            assert_eq!(
                got, expected,
                "[X, Y] for root {k} is the coroot in the Cartan"
            );
            coroot_coords.push(coords);
        }

        Ok(ChevalleyData {
            rs,
            bracket,
            coroot_coords,
        })
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn num_positive_roots(&self) -> usize {
        self.rs.positive_roots().len()
    }

    /// `[g1, g2]` as a linear combination of basis elements.
    pub fn bracket(&self, g1: GenId, g2: GenId) -> &[(GenId, i64)] {
        self.bracket
            .get(&(g1, g2))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Coroot coordinates of a positive root over the simple coroots.
    pub fn coroot_coords(&self, root_idx: usize) -> &[i64] {
        &self.coroot_coords[root_idx]
    }

    /// All generator ids.
    pub fn generators(&self) -> Vec<GenId> {
        let mut out = Vec::new();
        for k in 0..self.num_positive_roots() {
            out.push(GenId::X(k));
            out.push(GenId::Y(k));
        }
        for i in 0..self.rs.rank() {
            out.push(GenId::H(i));
        }
        out
    }
}

/// Exact decomposition of a matrix over the basis; errors if the matrix is
/// outside the span, asserts integral coefficients.
fn decompose(target: &Mat, basis: &[(GenId, Mat)], dim: usize) -> Result<Vec<(GenId, i64)>> {
    let cols = basis.len();
    let rows = dim * dim;
    // Augmented system over the rationals.
    let mut aug: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let (i, j) = (r / dim, r % dim);
            let mut row: Vec<Q> = basis.iter().map(|(_, m)| q_int(m[i][j])).collect();
            row.push(q_int(target[i][j]));
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut r0 = 0usize;
    for c in 0..cols {
        let Some(p) = (r0..rows).find(|&r| !aug[r][c].is_zero()) else {
            pivot_rows.push(usize::MAX);
            continue;
        };
        aug.swap(r0, p);
        let inv = Q::one() / aug[r0][c].clone();
        for v in aug[r0].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows {
            if r != r0 && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for j in 0..=cols {
                    let sub = &f * &aug[r0][j];
                    aug[r][j] = &aug[r][j] - sub;
                }
            }
        }
        pivot_rows.push(r0);
        r0 += 1;
    }
    // Consistency: residual rows must vanish.
    for r in r0..rows {
        if !aug[r][cols].is_zero() {
            return Err(CoreError::Domain(
                "commutator is outside the Chevalley basis span".into(),
            ));
        }
    }
    let mut out = Vec::new();
    for (c, &pr) in pivot_rows.iter().enumerate() {
        if pr == usize::MAX {
            continue;
        }
        let v = &aug[pr][cols];
        if !v.is_zero() {
            let c_int = q_to_i64(v).ok_or_else(|| {
                CoreError::Domain("non-integer Chevalley structure constant".into())
            })?;
            out.push((basis[c].0, c_int));
        }
    }
    Ok(out)
}

use num_traits::One;
