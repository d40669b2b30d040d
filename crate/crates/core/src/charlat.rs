//! Truncated formal characters: Verma characters through the Kostant
//! partition function, irreducible characters through the inversion matrix,
//! and an independent Freudenthal recursion for finite-dimensional
//! cross-checks.
//!
//! A truncated character carries its reference weight and depth so that two
//! characters are only ever compared on the intersection of their windows;
//! a window mismatch is an error, not a silent pass.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::inversion::MultiplicityMatrix;
use crate::rational::{q_int, q_to_i64, Q};
use crate::rootsys::{RootSystem, Weight};
use crate::weyl::WeylGroup;

/// Finite piece of a formal character: all support lies under `reference`,
/// within simple-root height `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedCharacter {
    pub reference: Weight,
    pub depth: u32,
    pub coeffs: BTreeMap<Weight, i64>,
}

impl TruncatedCharacter {
    pub fn new(reference: Weight, depth: u32) -> TruncatedCharacter {
        TruncatedCharacter {
            reference,
            depth,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        match self.coeffs.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn coeff(&self, w: &Weight) -> i64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// The weights of this character's window.
    pub fn window(&self, rs: &RootSystem) -> Vec<Weight> {
        cone_points(rs, self.depth)
            .into_iter()
            .map(|nu| self.reference.sub(&rs.weight_from_root_coords(&nu)))
            .collect()
    }

    /// Equality on the intersection of the two windows; errors when the
    /// windows do not overlap at all.
    pub fn equal_on_common_window(&self, other: &TruncatedCharacter, rs: &RootSystem) -> Result<bool> {
        let mine = self.window(rs);
        let theirs: std::collections::HashSet<Weight> =
            other.window(rs).into_iter().collect();
        let common: Vec<&Weight> = mine.iter().filter(|w| theirs.contains(w)).collect();
        if common.is_empty() {
            return Err(CoreError::WindowMismatch(format!(
                "no common window between references {} and {}",
                self.reference, other.reference
            )));
        }
        Ok(common.iter().all(|w| self.coeff(w) == other.coeff(w)))
    }
}

/// All nonnegative integer root-coordinate vectors of height at most `depth`.
pub fn cone_points(rs: &RootSystem, depth: u32) -> Vec<Vec<i64>> {
    let rank = rs.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, i: usize, left: i64) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(out, cur, i + 1, left - v);
        }
        cur[i] = 0;
    }
    rec(&mut out, &mut cur, 0, depth as i64);
    out
}

/// Number of ways to write `nu` (root coordinates) as a multiset of positive
/// roots; zero outside the cone.
pub fn kostant_partition(rs: &RootSystem, nu: &[i64]) -> i64 {
    fn rec(
        rs: &RootSystem,
        memo: &mut HashMap<(Vec<i64>, usize), i64>,
        nu: Vec<i64>,
        idx: usize,
    ) -> i64 {
        if nu.iter().all(|&c| c == 0) {
            return 1;
        }
        if nu.iter().any(|&c| c < 0) || idx >= rs.positive_roots().len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(nu.clone(), idx)) {
            return v;
        }
        let beta = rs.positive_roots()[idx].coeffs.clone();
        let mut acc = 0i64;
        let mut cur = nu.clone();
        loop {
            acc += rec(rs, memo, cur.clone(), idx + 1);
            if cur.iter().zip(&beta).any(|(c, b)| c < b) {
                break;
            }
            for (c, b) in cur.iter_mut().zip(&beta) {
                *c -= b;
            }
        }
        memo.insert((nu, idx), acc);
        acc
    }
    if nu.iter().any(|&c| c < 0) {
        return 0;
    }
    let mut memo = HashMap::new();
    rec(rs, &mut memo, nu.to_vec(), 0)
}

/// Character of the Verma module with highest weight `mu - rho`, truncated
/// at simple-root height `depth` below the top.
pub fn verma_character(rs: &RootSystem, mu: &Weight, depth: u32) -> TruncatedCharacter {
    let top = mu.sub(rs.rho());
    let mut ch = TruncatedCharacter::new(top.clone(), depth);
    for nu in cone_points(rs, depth) {
        let k = kostant_partition(rs, &nu);
        if k != 0 {
            ch.add_term(top.sub(&rs.weight_from_root_coords(&nu)), k);
        }
    }
    ch
}

/// Character of the irreducible at `x lambda`, expanded through the
/// inversion matrix into Verma characters and truncated consistently at
/// `depth` below `x lambda - rho`.
pub fn irreducible_character(
    group: &WeylGroup,
    inversion_b: &MultiplicityMatrix,
    x: usize,
    lambda: &Weight,
    depth: u32,
) -> TruncatedCharacter {
    let rs = group.root_system();
    let xl = group.apply(x, lambda);
    let top = xl.sub(rs.rho());
    let mut ch = TruncatedCharacter::new(top.clone(), depth);
    for nu in cone_points(rs, depth) {
        let w = top.sub(&rs.weight_from_root_coords(&nu));
        let mut acc = 0i64;
        for y in 0..group.order() {
            let b = inversion_b.entries[x][y];
            if b == 0 {
                continue;
            }
            // Coefficient of w in the Verma character at y lambda.
            let ytop = group.apply(y, lambda).sub(rs.rho());
            let delta = ytop.sub(&w);
            if let Some(coords) = rs.root_lattice_coords(&delta) {
                acc += b * kostant_partition(rs, &coords);
            }
        }
        ch.add_term(w, acc);
    }
    ch
}

/// Weight multiplicities of the finite-dimensional module with the given
/// dominant integral highest weight, by the Freudenthal recursion.
pub fn freudenthal_character(
    rs: &RootSystem,
    highest_weight: &Weight,
    depth: u32,
) -> Result<TruncatedCharacter> {
    if !highest_weight.is_integral() || !highest_weight.is_dominant() {
        return Err(CoreError::Domain(format!(
            "{highest_weight} is not dominant integral"
        )));
    }
    let rho = rs.rho();
    let top_norm = {
        let v = highest_weight.add(rho);
        rs.inner(&v, &v)
    };
    let mut ch = TruncatedCharacter::new(highest_weight.clone(), depth);
    // Multiplicities by increasing height below the top.
    let mut points = cone_points(rs, depth);
    points.sort_by_key(|nu| nu.iter().sum::<i64>());
    for nu in points {
        let mu = highest_weight.sub(&rs.weight_from_root_coords(&nu));
        if nu.iter().all(|&c| c == 0) {
            ch.add_term(mu, 1);
            continue;
        }
        let mu_rho = mu.add(rho);
        let denom = &top_norm - rs.inner(&mu_rho, &mu_rho);
        let mut rhs = Q::zero();
        for root in rs.positive_roots() {
            let mut k = 1i64;
            loop {
                let up = mu.add(&root.fund.scale(&q_int(k)));
                let delta = highest_weight.sub(&up);
                let Some(coords) = rs.root_lattice_coords(&delta) else {
                    break;
                };
                if coords.iter().any(|&c| c < 0) {
                    break;
                }
                let m = ch.coeff(&up);
                if m != 0 {
                    rhs += rs.inner(&up, &root.fund) * q_int(m);
                }
                k += 1;
            }
        }
        let rhs = rhs * q_int(2);
        if denom.is_zero() {
            // mu + rho has the same norm as the top; not a weight, and the
            // recursion degenerates to 0 = 0.
            if !rhs.is_zero() {
                return Err(CoreError::Domain(format!(
                    "Freudenthal recursion is inconsistent at {mu}"
                )));
            }
            continue;
        }
        let value = rhs / denom;
        let m = q_to_i64(&value).ok_or_else(|| {
            CoreError::Domain(format!("non-integer Freudenthal multiplicity at {mu}"))
        })?;
        if m < 0 {
            return Err(CoreError::Domain(format!(
                "negative Freudenthal multiplicity at {mu}"
            )));
        }
        if m != 0 {
            ch.add_term(mu, m);
        }
    }
    Ok(ch)
}

/// Dimension of the finite-dimensional module with the given dominant
/// integral highest weight.
pub fn weyl_dimension(rs: &RootSystem, highest_weight: &Weight) -> Result<i64> {
    if !highest_weight.is_integral() || !highest_weight.is_dominant() {
        return Err(CoreError::Domain(format!(
            "{highest_weight} is not dominant integral"
        )));
    }
    let rho = rs.rho();
    let shifted = highest_weight.add(rho);
    let mut acc = Q::from_integer(1.into());
    for root in rs.positive_roots() {
        acc *= rs.pair_coroot(&shifted, &root.fund) / rs.pair_coroot(rho, &root.fund);
    }
    q_to_i64(&acc).ok_or_else(|| CoreError::Domain("non-integer dimension".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inversion::inversion_matrix;
    use crate::klcore::KLTable;
    use crate::rootsys::build_root_system;
    use crate::weyl::generate_full;

    #[test]
    fn kostant_values() {
        let rs = build_root_system("A2").unwrap();
        assert_eq!(kostant_partition(&rs, &[0, 0]), 1);
        assert_eq!(kostant_partition(&rs, &[1, 1]), 2);
        assert_eq!(kostant_partition(&rs, &[2, 1]), 2);
        assert_eq!(kostant_partition(&rs, &[-1, 0]), 0);
        let rs1 = build_root_system("A1").unwrap();
        for k in 0..6 {
            assert_eq!(kostant_partition(&rs1, &[k]), 1);
        }
    }

    #[test]
    fn kostant_matches_enumeration_b2() {
        // Independent check: count multisets by brute force over
        // multiplicities of each positive root.
        let rs = build_root_system("B2").unwrap();
        for nu in cone_points(&rs, 5) {
            let mut count = 0i64;
            let roots: Vec<&[i64]> =
                rs.positive_roots().iter().map(|r| &r.coeffs[..]).collect();
            let max = 8i64;
            for a in 0..max {
                for b in 0..max {
                    for c in 0..max {
                        for d in 0..max {
                            let s0 = a * roots[0][0] + b * roots[1][0] + c * roots[2][0] + d * roots[3][0];
                            let s1 = a * roots[0][1] + b * roots[1][1] + c * roots[2][1] + d * roots[3][1];
                            if s0 == nu[0] && s1 == nu[1] {
                                count += 1;
                            }
                        }
                    }
                }
            }
            assert_eq!(kostant_partition(&rs, &nu), count, "nu = {nu:?}");
        }
    }

    #[test]
    fn verma_character_top_and_interior() {
        let rs = build_root_system("A2").unwrap();
        let mu = rs.minus_rho_times(1);
        let ch = verma_character(&rs, &mu, 4);
        let top = mu.sub(rs.rho());
        assert_eq!(ch.coeff(&top), 1);
        let inner = top.sub(&rs.weight_from_root_coords(&[1, 1]));
        assert_eq!(ch.coeff(&inner), 2);
    }

    #[test]
    fn irreducible_identity_is_verma() {
        let rs = build_root_system("A2").unwrap();
        let g = generate_full(rs.clone()).unwrap();
        let t = KLTable::new(g.clone());
        let b = inversion_matrix(&t);
        let lam = rs.minus_rho_times(1);
        let ch = irreducible_character(&g, &b, g.identity(), &lam, 5);
        let vch = verma_character(&rs, &lam, 5);
        assert_eq!(ch, vch);
    }

    #[test]
    fn a1_trivial_module() {
        // lambda = -rho, x = s: the irreducible is the trivial module.
        let rs = build_root_system("A1").unwrap();
        let g = generate_full(rs.clone()).unwrap();
        let t = KLTable::new(g.clone());
        let b = inversion_matrix(&t);
        let lam = rs.minus_rho_times(1);
        let ch = irreducible_character(&g, &b, g.long_element(), &lam, 6);
        assert_eq!(ch.total_multiplicity(), 1);
        assert_eq!(ch.coeff(&Weight::zero(1)), 1);
    }

    #[test]
    fn freudenthal_rank_one_string() {
        let rs = build_root_system("A1").unwrap();
        let hw = Weight::from_i64(&[2]);
        let ch = freudenthal_character(&rs, &hw, 8).unwrap();
        assert_eq!(ch.total_multiplicity(), 3);
        assert_eq!(ch.coeff(&hw), 1);
        assert_eq!(ch.coeff(&Weight::zero(1)), 1);
        assert_eq!(ch.coeff(&hw.neg()), 1);
    }

    #[test]
    fn freudenthal_adjoint_a2() {
        let rs = build_root_system("A2").unwrap();
        let ch = freudenthal_character(&rs, rs.rho(), 8).unwrap();
        assert_eq!(ch.coeff(&Weight::zero(2)), 2);
        assert_eq!(ch.total_multiplicity(), 8);
        assert_eq!(weyl_dimension(&rs, rs.rho()).unwrap(), 8);
    }

    #[test]
    fn freudenthal_zero_weight() {
        let rs = build_root_system("A2").unwrap();
        let ch = freudenthal_character(&rs, &Weight::zero(2), 4).unwrap();
        assert_eq!(ch.total_multiplicity(), 1);
    }

    #[test]
    fn weyl_dimension_values() {
        let rs = build_root_system("A1").unwrap();
        assert_eq!(weyl_dimension(&rs, &Weight::zero(1)).unwrap(), 1);
        for n in 0..5 {
            assert_eq!(weyl_dimension(&rs, &Weight::from_i64(&[n])).unwrap(), n + 1);
        }
        let rs = build_root_system("B2").unwrap();
        assert_eq!(weyl_dimension(&rs, rs.rho()).unwrap(), 16);
    }

    #[test]
    fn irreducible_matches_freudenthal_at_w0() {
        for (label, k) in [("A1", 2i64), ("A2", 2), ("B2", 2)] {
            let rs = build_root_system(label).unwrap();
            let g = generate_full(rs.clone()).unwrap();
            let t = KLTable::new(g.clone());
            let b = inversion_matrix(&t);
            let lam = rs.minus_rho_times(k);
            let w0 = g.long_element();
            let hw = g.apply(w0, &lam).sub(rs.rho());
            let depth = 8;
            let irr = irreducible_character(&g, &b, w0, &lam, depth);
            let frd = freudenthal_character(&rs, &hw, depth).unwrap();
            assert!(irr.equal_on_common_window(&frd, &rs).unwrap(), "{label}");
            assert_eq!(
                irr.total_multiplicity(),
                weyl_dimension(&rs, &hw).unwrap(),
                "{label} full support within depth"
            );
        }
    }

    #[test]
    fn irreducible_coefficients_nonnegative_a2() {
        let rs = build_root_system("A2").unwrap();
        let g = generate_full(rs.clone()).unwrap();
        let t = KLTable::new(g.clone());
        let b = inversion_matrix(&t);
        let lam = rs.minus_rho_times(1);
        for x in 0..g.order() {
            let ch = irreducible_character(&g, &b, x, &lam, 6);
            assert!(ch.all_nonnegative(), "x = {x}");
        }
    }

    #[test]
    fn verma_roundtrip_through_multiplicity_matrix() {
        // Summing irreducible characters against the multiplicity matrix
        // recovers the Verma character on the window.
        let rs = build_root_system("A2").unwrap();
        let g = generate_full(rs.clone()).unwrap();
        let t = KLTable::new(g.clone());
        let a = crate::inversion::multiplicity_matrix(&t);
        let b = inversion_matrix(&t);
        let lam = rs.minus_rho_times(1);
        let depth = 5;
        for x in 0..g.order() {
            let verma = verma_character(&rs, &g.apply(x, &lam), depth);
            let mut acc = TruncatedCharacter::new(verma.reference.clone(), depth);
            for y in 0..g.order() {
                let c = a.entries[x][y];
                if c == 0 {
                    continue;
                }
                let irr = irreducible_character(&g, &b, y, &lam, depth);
                for (w, m) in &irr.coeffs {
                    acc.add_term(w.clone(), c * m);
                }
            }
            for w in verma.window(&rs) {
                assert_eq!(acc.coeff(&w), verma.coeff(&w), "x = {x}");
            }
        }
    }

    #[test]
    fn window_mismatch_is_an_error() {
        let rs = build_root_system("A1").unwrap();
        let far = Weight::from_i64(&[40]);
        let a = TruncatedCharacter::new(Weight::zero(1), 2);
        let b = TruncatedCharacter::new(far, 2);
        assert!(a.equal_on_common_window(&b, &rs).is_err());
    }
}
