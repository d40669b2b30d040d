//! Root systems of types A-G at rank <= 4, weight arithmetic over the
//! fundamental-weight basis, integral subsystems, and the Z2-grading on the
//! root lattice induced by a painting of the simple roots.
//!
//! Conventions are Bourbaki throughout.  A weight is stored by its pairings
//! with the simple coroots, so integrality tests are exact coordinate checks
//! and the pairing matrix `P[i][j] = (alpha_j, alpha_i^vee)` carries all
//! Cartan data.  Positive roots are generated from the Cartan matrix by root
//! strings, never read from tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{CoreError, Result};
use crate::rational::{q_int, q_ratio, q_to_i64, Q};

/// Supported Cartan types: A1..A4, B2, B3, C3, D4, G2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub letter: char,
    pub rank: usize,
}

impl CartanType {
    pub fn parse(label: &str) -> Result<CartanType> {
        let label = label.trim();
        let mut chars = label.chars();
        let letter = chars
            .next()
            .ok_or_else(|| CoreError::UnsupportedType(label.into()))?
            .to_ascii_uppercase();
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| CoreError::UnsupportedType(label.into()))?;
        let ok = matches!(
            (letter, rank),
            ('A', 1..=4) | ('B', 2..=3) | ('C', 3) | ('D', 4) | ('G', 2)
        );
        if !ok {
            return Err(CoreError::UnsupportedType(label.into()));
        }
        Ok(CartanType { letter, rank })
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.letter, self.rank)
    }

    /// Number of positive roots for the type.
    pub fn positive_root_count(&self) -> usize {
        match (self.letter, self.rank) {
            ('A', n) => n * (n + 1) / 2,
            ('B', n) => n * n,
            ('C', n) => n * n,
            ('D', n) => n * (n - 1),
            ('G', _) => 6,
            _ => unreachable!(),
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> usize {
        fn fact(n: usize) -> usize {
            (1..=n).product()
        }
        match (self.letter, self.rank) {
            ('A', n) => fact(n + 1),
            ('B', n) | ('C', n) => fact(n) << n,
            ('D', n) => fact(n) << (n - 1),
            ('G', _) => 12,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// A weight, stored by its pairings with the simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Q>,
}

impl Weight {
    pub fn new(coords: Vec<Q>) -> Weight {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![Q::zero(); rank],
        }
    }

    pub fn from_i64(coords: &[i64]) -> Weight {
        Weight {
            coords: coords.iter().map(|&c| q_int(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    /// Pairing with the i-th simple coroot: coordinate extraction.
    pub fn pair_simple(&self, i: usize) -> &Q {
        &self.coords[i]
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    /// Antidominant and regular: every simple pairing is strictly negative or
    /// a non-integer that stays clear of the positive integers.
    pub fn is_antidominant(&self) -> bool {
        self.coords.iter().all(|c| c.is_negative() || !c.is_integer())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A root, stored both by simple-root coordinates and fundamental coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Integer coordinates over the simple roots.
    pub coeffs: Vec<i64>,
    /// The same root as a weight (fundamental coordinates).
    pub fund: Weight,
    /// Sum of the simple-root coordinates.
    pub height: i64,
}

/// Cartan data plus the generated positive roots of one of the supported
/// types.
#[derive(Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    /// `pairing[i][j] = (alpha_j, alpha_i^vee)`.
    pairing: Vec<Vec<i64>>,
    /// Relative squared lengths `(alpha_i, alpha_i)` of the simple roots.
    d: Vec<i64>,
    pairing_inv: Vec<Vec<Q>>,
    positive_roots: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
    rho: Weight,
}

/// Builds the root system for a supported type label such as "A2" or "B3".
pub fn build_root_system(label: &str) -> Result<Arc<RootSystem>> {
    let ct = CartanType::parse(label)?;
    Ok(Arc::new(RootSystem::new(ct)))
}

impl RootSystem {
    pub fn new(ct: CartanType) -> RootSystem {
        let (pairing, d) = cartan_data(ct);
        let rank = ct.rank;
        let pairing_inv = invert_pairing(&pairing);

        // Closure of the simple roots under root strings.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut seen: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..rank {
            let mut c = vec![0i64; rank];
            c[i] = 1;
            seen.insert(c.clone(), roots.len());
            roots.push(c);
        }
        let mut frontier: Vec<Vec<i64>> = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..rank {
                    // p = largest k with beta - k*alpha_i still a root.
                    let mut p = 0i64;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if down.iter().all(|&c| c == 0) || !seen.contains_key(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let pair: i64 = (0..rank).map(|j| beta[j] * pairing[i][j]).sum();
                    if p - pair > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !seen.contains_key(&up) {
                            seen.insert(up.clone(), 0);
                            next.push(up);
                        }
                    }
                }
            }
            for c in &next {
                roots.push(c.clone());
            }
            frontier = next;
        }
        assert_eq!(
            roots.len(),
            ct.positive_root_count(),
            "positive root closure has the wrong size for {ct}"
        );

        // Height first; within a height, reverse-lex so the simple roots
        // appear in index order.
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then(b.cmp(a))
        });
        let mut root_index = HashMap::new();
        let positive_roots: Vec<Root> = roots
            .into_iter()
            .enumerate()
            .map(|(idx, coeffs)| {
                root_index.insert(coeffs.clone(), idx);
                let fund = fund_of_root(&pairing, &coeffs);
                let height = coeffs.iter().sum();
                Root {
                    coeffs,
                    fund,
                    height,
                }
            })
            .collect();

        let rho = Weight::new(vec![q_int(1); rank]);

        RootSystem {
            cartan_type: ct,
            rank,
            pairing,
            d,
            pairing_inv,
            positive_roots,
            root_index,
            rho,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        &self.positive_roots[self.simple_index(i)]
    }

    fn simple_index(&self, i: usize) -> usize {
        let mut c = vec![0i64; self.rank];
        c[i] = 1;
        self.root_index[&c]
    }

    /// Index of a positive root given its simple-root coordinates.
    pub fn positive_root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.root_index.get(coeffs).copied()
    }

    /// `pairing[i][j] = (alpha_j, alpha_i^vee)`.
    pub fn pairing_entry(&self, i: usize, j: usize) -> i64 {
        self.pairing[i][j]
    }

    /// Invariant inner product, normalized so `(alpha_i, alpha_i) = d[i]`.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let cb = self.fund_to_root_coords(b);
        let mut acc = Q::zero();
        for i in 0..self.rank {
            acc += &cb[i] * a.pair_simple(i) * q_ratio(self.d[i], 2);
        }
        acc
    }

    /// `(w, beta^vee)` for an arbitrary root `beta` (given as a weight).
    pub fn pair_coroot(&self, w: &Weight, beta: &Weight) -> Q {
        let num = self.inner(w, beta);
        let den = self.inner(beta, beta);
        q_int(2) * num / den
    }

    /// Reflection in the hyperplane of `beta`.
    pub fn reflect(&self, w: &Weight, beta: &Weight) -> Weight {
        let c = self.pair_coroot(w, beta);
        w.sub(&beta.scale(&c))
    }

    pub fn reflect_simple(&self, w: &Weight, i: usize) -> Weight {
        let c = w.pair_simple(i).clone();
        w.sub(&self.simple_root(i).fund.scale(&c))
    }

    /// Exact simple-root coordinates of a weight.
    pub fn fund_to_root_coords(&self, w: &Weight) -> Vec<Q> {
        (0..self.rank)
            .map(|i| {
                let mut acc = Q::zero();
                for j in 0..self.rank {
                    acc += &self.pairing_inv[i][j] * w.pair_simple(j);
                }
                acc
            })
            .collect()
    }

    /// Integer simple-root coordinates, or `None` when `w` is outside the
    /// root lattice.
    pub fn root_lattice_coords(&self, w: &Weight) -> Option<Vec<i64>> {
        self.fund_to_root_coords(w)
            .iter()
            .map(q_to_i64)
            .collect::<Option<Vec<i64>>>()
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.root_lattice_coords(w).is_some()
    }

    pub fn weight_from_root_coords(&self, coeffs: &[i64]) -> Weight {
        fund_of_root(&self.pairing, coeffs)
    }

    /// Whether a weight is a (positive or negative) root, and its sign.
    /// Returns `None` for non-roots.
    pub fn root_sign(&self, w: &Weight) -> Option<i8> {
        let coords = self.root_lattice_coords(w)?;
        if self.root_index.contains_key(&coords) {
            return Some(1);
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        if self.root_index.contains_key(&neg) {
            return Some(-1);
        }
        None
    }

    /// The unique dominant Weyl-orbit representative of `w`.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut cur = w.clone();
        loop {
            let mut moved = false;
            for i in 0..self.rank {
                if cur.pair_simple(i).is_negative() {
                    cur = self.reflect_simple(&cur, i);
                    moved = true;
                    break;
                }
            }
            if !moved {
                return cur;
            }
        }
    }

    /// `-k * rho` as a weight.
    pub fn minus_rho_times(&self, k: i64) -> Weight {
        self.rho.scale(&q_int(-k))
    }

    /// Integral regular antidominant test: all simple pairings are negative
    /// integers.
    pub fn is_integral_regular_antidominant(&self, w: &Weight) -> bool {
        w.coords()
            .iter()
            .all(|c| c.is_integer() && c.is_negative())
    }
}

fn fund_of_root(pairing: &[Vec<i64>], coeffs: &[i64]) -> Weight {
    let rank = pairing.len();
    Weight::new(
        (0..rank)
            .map(|i| {
                let v: i64 = (0..rank).map(|j| coeffs[j] * pairing[i][j]).sum();
                q_int(v)
            })
            .collect(),
    )
}

fn cartan_data(ct: CartanType) -> (Vec<Vec<i64>>, Vec<i64>) {
    let n = ct.rank;
    match (ct.letter, n) {
        ('A', _) => {
            let mut p = vec![vec![0i64; n]; n];
            for i in 0..n {
                p[i][i] = 2;
                if i + 1 < n {
                    p[i][i + 1] = -1;
                    p[i + 1][i] = -1;
                }
            }
            (p, vec![2; n])
        }
        ('B', 2) => (vec![vec![2, -1], vec![-2, 2]], vec![2, 1]),
        ('B', 3) => (
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
            vec![2, 2, 1],
        ),
        ('C', 3) => (
            vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]],
            vec![1, 1, 2],
        ),
        ('D', 4) => (
            vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ],
            vec![2, 2, 2, 2],
        ),
        ('G', 2) => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
        _ => unreachable!(),
    }
}

fn invert_pairing(pairing: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = pairing.len();
    let mut aug: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = pairing[i].iter().map(|&v| q_int(v)).collect();
            for j in 0..n {
                row.push(if i == j { q_int(1) } else { Q::zero() });
            }
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("Cartan matrix is invertible");
        aug.swap(col, piv);
        let inv = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = &*v / &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in 0..2 * n {
                    let sub = &f * &aug[col][j];
                    aug[r][j] = &aug[r][j] - sub;
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Choice of noncompact simple roots, given by 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Painting {
    noncompact: Vec<bool>,
}

impl Painting {
    pub fn empty(rank: usize) -> Painting {
        Painting {
            noncompact: vec![false; rank],
        }
    }

    /// 1-based simple-root indices.
    pub fn from_indices(indices: &[usize], rank: usize) -> Result<Painting> {
        let mut noncompact = vec![false; rank];
        for &i in indices {
            if i == 0 || i > rank {
                return Err(CoreError::Config(format!(
                    "painting index {i} out of range 1..={rank}"
                )));
            }
            noncompact[i - 1] = true;
        }
        Ok(Painting { noncompact })
    }

    pub fn rank(&self) -> usize {
        self.noncompact.len()
    }

    pub fn is_noncompact(&self, i: usize) -> bool {
        self.noncompact[i]
    }

    pub fn is_empty(&self) -> bool {
        self.noncompact.iter().all(|&b| !b)
    }

    /// All 2^rank paintings, in binary order.
    pub fn all(rank: usize) -> Vec<Painting> {
        (0..1usize << rank)
            .map(|mask| Painting {
                noncompact: (0..rank).map(|i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.noncompact
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn label(&self) -> String {
        let idx: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        format!("{{{}}}", idx.join(","))
    }
}

/// Additive Z2-grading on the root lattice determined by a painting.
#[derive(Debug, Clone)]
pub struct EpsilonGrading {
    painting: Painting,
}

impl EpsilonGrading {
    pub fn new(painting: Painting) -> EpsilonGrading {
        EpsilonGrading { painting }
    }

    pub fn painting(&self) -> &Painting {
        &self.painting
    }

    /// Parity of the number of noncompact simple roots in the expansion of
    /// `mu`.  Errors when `mu` is not in the root lattice.
    pub fn epsilon_of(&self, rs: &RootSystem, mu: &Weight) -> Result<u8> {
        let coords = rs
            .root_lattice_coords(mu)
            .ok_or_else(|| CoreError::Domain(format!("{mu} is not in the root lattice")))?;
        let mut parity = 0i64;
        for (i, c) in coords.iter().enumerate() {
            if self.painting.is_noncompact(i) {
                parity += c;
            }
        }
        Ok((parity.rem_euclid(2)) as u8)
    }

    /// `(-1)^{epsilon(mu)}` as a sign.
    pub fn sign_of(&self, rs: &RootSystem, mu: &Weight) -> Result<i64> {
        Ok(if self.epsilon_of(rs, mu)? == 0 { 1 } else { -1 })
    }
}

/// The roots integral on a weight `lambda`, with the simple system of its
/// positive part.
#[derive(Debug, Clone)]
pub struct IntegralSubsystem {
    pub lambda: Weight,
    /// Positive part, inherited from the ambient positive system.
    pub positive: Vec<Root>,
    /// Indecomposable elements of the positive part.
    pub simple: Vec<Root>,
}

pub fn integral_subsystem(rs: &RootSystem, lambda: &Weight) -> IntegralSubsystem {
    let positive: Vec<Root> = rs
        .positive_roots()
        .iter()
        .filter(|r| rs.pair_coroot(lambda, &r.fund).is_integer())
        .cloned()
        .collect();
    let simple = indecomposables(&positive);
    IntegralSubsystem {
        lambda: lambda.clone(),
        positive,
        simple,
    }
}

/// The full system viewed as a subsystem (every root integral).
pub fn full_subsystem(rs: &RootSystem) -> IntegralSubsystem {
    let positive: Vec<Root> = rs.positive_roots().to_vec();
    let simple = (0..rs.rank()).map(|i| rs.simple_root(i).clone()).collect();
    IntegralSubsystem {
        lambda: Weight::zero(rs.rank()),
        positive,
        simple,
    }
}

fn indecomposables(positive: &[Root]) -> Vec<Root> {
    positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|a| {
                positive.iter().any(|b| {
                    a.coeffs
                        .iter()
                        .zip(&b.coeffs)
                        .zip(&r.coeffs)
                        .all(|((x, y), z)| x + y == *z)
                })
            })
        })
        .cloned()
        .collect()
}

/// Is a weight a negative root?  Valid only for actual roots.
pub fn root_is_negative(rs: &RootSystem, w: &Weight) -> bool {
    match rs.root_sign(w) {
        Some(s) => s < 0,
        None => panic!("root_is_negative called on a non-root {w}"),
    }
}

/// Sign utility shared by the signed modules: `(-1)^k`.
pub fn parity_sign(k: u8) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `epsilon(n * beta)` for integer `n`, evaluated additively.
pub fn epsilon_of_multiple(
    grading: &EpsilonGrading,
    rs: &RootSystem,
    n: i64,
    beta: &Weight,
) -> Result<u8> {
    let e = grading.epsilon_of(rs, beta)?;
    Ok(((n.rem_euclid(2)) as u8 * e) % 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(label: &str) -> Arc<RootSystem> {
        build_root_system(label).unwrap()
    }

    #[test]
    fn a1_positive_roots_and_rho() {
        let r = rs("A1");
        assert_eq!(r.positive_roots().len(), 1);
        assert_eq!(r.positive_roots()[0].coeffs, vec![1]);
        // rho = alpha/2 in fundamental coordinates: alpha = (2), rho = (1).
        assert_eq!(r.rho().coords()[0], q_int(1));
        assert_eq!(r.simple_root(0).fund.coords()[0], q_int(2));
    }

    #[test]
    fn a2_positive_roots_closure() {
        let r = rs("A2");
        let coeffs: Vec<Vec<i64>> = r.positive_roots().iter().map(|x| x.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn b2_positive_roots_closure() {
        let r = rs("B2");
        let coeffs: Vec<Vec<i64>> = r.positive_roots().iter().map(|x| x.coeffs.clone()).collect();
        assert_eq!(
            coeffs,
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]
        );
    }

    #[test]
    fn positive_root_counts_all_types() {
        for label in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"] {
            let r = rs(label);
            assert_eq!(
                r.positive_roots().len(),
                r.cartan_type().positive_root_count(),
                "{label}"
            );
            // Every positive root is a nonnegative combination of simples.
            for root in r.positive_roots() {
                assert!(root.coeffs.iter().all(|&c| c >= 0));
            }
            // (rho, alpha^vee) = 1 for every simple root.
            for i in 0..r.rank() {
                assert_eq!(
                    r.pair_coroot(r.rho(), &r.simple_root(i).fund),
                    q_int(1),
                    "{label} simple {i}"
                );
            }
        }
    }

    #[test]
    fn coroot_pairing_matches_cartan_matrix() {
        for label in ["A3", "B3", "C3", "D4", "G2"] {
            let r = rs(label);
            for i in 0..r.rank() {
                for j in 0..r.rank() {
                    let v = r.pair_coroot(&r.simple_root(j).fund.clone(), &r.simple_root(i).fund);
                    assert_eq!(v, q_int(r.pairing_entry(i, j)), "{label} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn integral_subsystem_integral_lambda_is_full() {
        let r = rs("A2");
        let lam = r.minus_rho_times(1);
        let sub = integral_subsystem(&r, &lam);
        assert_eq!(sub.positive.len(), 3);
        assert_eq!(sub.simple.len(), 2);
        assert_eq!(sub.simple[0].coeffs, vec![1, 0]);
        assert_eq!(sub.simple[1].coeffs, vec![0, 1]);
    }

    #[test]
    fn integral_subsystem_a1_empty() {
        let r = rs("A1");
        // lambda = -rho/2 has pairing -1/2 with the coroot.
        let lam = Weight::new(vec![q_ratio(-1, 2)]);
        let sub = integral_subsystem(&r, &lam);
        assert!(sub.positive.is_empty());
        assert!(sub.simple.is_empty());
    }

    #[test]
    fn integral_subsystem_a2_half_integral() {
        let r = rs("A2");
        let lam = Weight::new(vec![q_ratio(-1, 2), q_int(-1)]);
        let sub = integral_subsystem(&r, &lam);
        let coeffs: Vec<Vec<i64>> = sub.positive.iter().map(|x| x.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![0, 1]]);
        assert_eq!(sub.simple.len(), 1);
        assert_eq!(sub.simple[0].coeffs, vec![0, 1]);
    }

    #[test]
    fn epsilon_examples() {
        let r = rs("A2");
        let g = EpsilonGrading::new(Painting::from_indices(&[1], 2).unwrap());
        assert_eq!(g.epsilon_of(&r, &Weight::zero(2)).unwrap(), 0);
        let a1a2 = r.weight_from_root_coords(&[1, 1]);
        assert_eq!(g.epsilon_of(&r, &a1a2).unwrap(), 1);

        let r1 = rs("A1");
        let g1 = EpsilonGrading::new(Painting::from_indices(&[1], 1).unwrap());
        let neg_alpha = r1.weight_from_root_coords(&[-1]);
        assert_eq!(g1.epsilon_of(&r1, &neg_alpha).unwrap(), 1);
    }

    #[test]
    fn epsilon_rejects_non_lattice_weights() {
        let r = rs("A2");
        let g = EpsilonGrading::new(Painting::empty(2));
        // A fundamental weight is not in the root lattice of A2.
        let w = Weight::from_i64(&[1, 0]);
        assert!(g.epsilon_of(&r, &w).is_err());
    }

    #[test]
    fn dominant_conjugate_examples() {
        let r1 = rs("A1");
        let w = Weight::from_i64(&[-3]);
        assert_eq!(r1.dominant_conjugate(&w), Weight::from_i64(&[3]));

        let r2 = rs("A2");
        let w = Weight::from_i64(&[-1, 0]);
        assert_eq!(r2.dominant_conjugate(&w), Weight::from_i64(&[0, 1]));

        let already = Weight::from_i64(&[2, 1]);
        assert_eq!(r2.dominant_conjugate(&already), already);
    }

    #[test]
    fn root_expansion_unique() {
        // Fundamental coordinates of every positive root convert back to the
        // stored simple-root coordinates exactly.
        for label in ["A3", "B3", "C3", "D4", "G2"] {
            let r = rs(label);
            for root in r.positive_roots() {
                let c = r.root_lattice_coords(&root.fund).unwrap();
                assert_eq!(c, root.coeffs, "{label}");
            }
        }
    }

    proptest! {
        #[test]
        fn epsilon_is_additive(
            a in proptest::collection::vec(-4i64..5, 2),
            b in proptest::collection::vec(-4i64..5, 2),
            mask in 0usize..4,
        ) {
            let r = rs("B2");
            let paintings = Painting::all(2);
            let g = EpsilonGrading::new(paintings[mask].clone());
            let wa = r.weight_from_root_coords(&a);
            let wb = r.weight_from_root_coords(&b);
            let sum = wa.add(&wb);
            let ea = g.epsilon_of(&r, &wa).unwrap();
            let eb = g.epsilon_of(&r, &wb).unwrap();
            let es = g.epsilon_of(&r, &sum).unwrap();
            prop_assert_eq!(es, (ea + eb) % 2);
        }

        #[test]
        fn dominant_conjugate_is_orbit_invariant(
            num in proptest::collection::vec(-6i64..7, 2),
            word in proptest::collection::vec(0usize..2, 0..6),
        ) {
            let r = rs("B2");
            let w = Weight::from_i64(&num);
            let mut image = w.clone();
            for &i in &word {
                image = r.reflect_simple(&image, i);
            }
            prop_assert_eq!(r.dominant_conjugate(&w), r.dominant_conjugate(&image));
        }
    }
}
