//! PBW realization of a deformed Verma module and the straightening engine
//! behind the contravariant and invariant Hermitian forms.
//!
//! Monomials are exponent vectors over the positive roots in the fixed
//! storage order (height, then index order); a monomial stands for the
//! ordered product of lowering operators applied to the generating vector.
//! Scalars live in `Q[t]` because the highest weight moves along
//! `hw0 + t * delta`.

use std::collections::HashMap;

use crate::rational::Q;
use crate::rootsys::{EpsilonGrading, Weight};

use super::chevalley::{ChevalleyData, GenId};
use super::tpoly::QtPoly;

/// Exponent vector over the positive roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn empty(nroots: usize) -> Monomial {
        Monomial(vec![0; nroots])
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Root indices with multiplicity, in written (ascending) order.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }

    /// Total root-coordinate weight below the highest weight.
    pub fn depth_coords(&self, chev: &ChevalleyData) -> Vec<i64> {
        let rs = chev.root_system();
        let rank = rs.rank();
        let mut out = vec![0i64; rank];
        for (i, &e) in self.0.iter().enumerate() {
            for (j, c) in rs.positive_roots()[i].coeffs.iter().enumerate() {
                out[j] += e as i64 * c;
            }
        }
        out
    }

    fn first_index(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }
}

/// Linear combination of monomials with `Q[t]` coefficients.
pub type Combo = HashMap<Monomial, QtPoly>;

fn combo_add(into: &mut Combo, m: Monomial, c: QtPoly) {
    if c.is_zero() {
        return;
    }
    let entry = into.entry(m).or_insert_with(QtPoly::zero);
    *entry = entry.add(&c);
    if entry.is_zero() {
        // keep the map sparse
        let key: Vec<Monomial> = into
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in key {
            into.remove(&k);
        }
    }
}

/// A Verma module with highest weight `hw0 + t * delta` (already
/// rho-shifted), realized on the PBW basis.
pub struct VermaModel<'a> {
    pub chev: &'a ChevalleyData,
    pub hw0: Weight,
    pub delta: Weight,
}

impl<'a> VermaModel<'a> {
    pub fn new(chev: &'a ChevalleyData, hw0: Weight, delta: Weight) -> VermaModel<'a> {
        VermaModel { chev, hw0, delta }
    }

    /// Pairing of the weight of `m . v0` with a coroot combination, as a
    /// polynomial in `t`.
    fn coroot_scalar(&self, m: &Monomial, coroot: &[i64]) -> QtPoly {
        let rs = self.chev.root_system();
        let depth = m.depth_coords(self.chev);
        let depth_w = rs.weight_from_root_coords(&depth);
        let at_zero = self.hw0.sub(&depth_w);
        let mut c0 = Q::from_integer(0.into());
        let mut c1 = Q::from_integer(0.into());
        for (i, &c) in coroot.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let ci = Q::from_integer(c.into());
            c0 += at_zero.pair_simple(i) * &ci;
            c1 += self.delta.pair_simple(i) * &ci;
        }
        QtPoly::linear(c0, c1)
    }

    /// Applies a generator to `m . v0`.
    pub fn apply_gen(&self, g: GenId, m: &Monomial) -> Combo {
        let mut out = Combo::new();
        match g {
            GenId::Y(k) => {
                self.prepend_y(k, m, &QtPoly::one(), &mut out);
            }
            GenId::H(i) => {
                let mut coroot = vec![0i64; self.chev.root_system().rank()];
                coroot[i] = 1;
                combo_add(&mut out, m.clone(), self.coroot_scalar(m, &coroot));
            }
            GenId::X(k) => {
                let Some(j) = m.first_index() else {
                    return out; // X kills the highest weight vector
                };
                let mut rest = m.clone();
                rest.0[j] -= 1;
                // X Y_j rest = Y_j (X rest) + [X, Y_j] rest
                let inner = self.apply_gen(GenId::X(k), &rest);
                for (mono, c) in inner {
                    self.prepend_y(j, &mono, &c, &mut out);
                }
                for &(g2, c2) in self.chev.bracket(GenId::X(k), GenId::Y(j)) {
                    let coeff = QtPoly::constant(Q::from_integer(c2.into()));
                    let part = self.apply_gen(g2, &rest);
                    for (mono, c) in part {
                        combo_add(&mut out, mono, c.mul(&coeff));
                    }
                }
            }
        }
        out
    }

    /// `Y_j . (m v0)` straightened back into the PBW basis, scaled by `c`.
    fn prepend_y(&self, j: usize, m: &Monomial, c: &QtPoly, out: &mut Combo) {
        match m.first_index() {
            None => {
                let mut n = m.clone();
                n.0[j] += 1;
                combo_add(out, n, c.clone());
            }
            Some(i) if j <= i => {
                let mut n = m.clone();
                n.0[j] += 1;
                combo_add(out, n, c.clone());
            }
            Some(i) => {
                // Y_j Y_i rest = Y_i Y_j rest + [Y_j, Y_i] rest
                let mut rest = m.clone();
                rest.0[i] -= 1;
                let mut tmp = Combo::new();
                self.prepend_y(j, &rest, c, &mut tmp);
                for (mono, cc) in tmp {
                    self.prepend_y(i, &mono, &cc, out);
                }
                for &(g2, c2) in self.chev.bracket(GenId::Y(j), GenId::Y(i)) {
                    let GenId::Y(l) = g2 else {
                        panic!("bracket of two lowering operators stays lowering");
                    };
                    let coeff = c.scale(&Q::from_integer(c2.into()));
                    self.prepend_y(l, &rest, &coeff, out);
                }
            }
        }
    }

    pub fn apply_gen_combo(&self, g: GenId, combo: &Combo) -> Combo {
        let mut out = Combo::new();
        for (m, c) in combo {
            for (mono, cc) in self.apply_gen(g, m) {
                combo_add(&mut out, mono, cc.mul(c));
            }
        }
        out
    }

    /// Contravariant bilinear pairing of two PBW vectors, by moving the
    /// transpose of the left word to the right argument.
    pub fn bilinear_pair(&self, a: &Monomial, b: &Monomial) -> QtPoly {
        if a.depth_coords(self.chev) != b.depth_coords(self.chev) {
            return QtPoly::zero(); // weight spaces are orthogonal
        }
        let mut combo: Combo = Combo::new();
        combo.insert(b.clone(), QtPoly::one());
        for r in a.letters() {
            combo = self.apply_gen_combo(GenId::X(r), &combo);
        }
        self.extract_scalar(combo)
    }

    /// Invariant Hermitian pairing computed from first principles: the right
    /// word is peeled, each lowering operator crossing the form as a raising
    /// operator on the left argument with the compact/noncompact sign.
    pub fn hermitian_pair_direct(
        &self,
        grading: &EpsilonGrading,
        a: &Monomial,
        b: &Monomial,
    ) -> QtPoly {
        if a.depth_coords(self.chev) != b.depth_coords(self.chev) {
            return QtPoly::zero();
        }
        let rs = self.chev.root_system();
        let mut combo: Combo = Combo::new();
        combo.insert(a.clone(), QtPoly::one());
        let mut sign = 1i64;
        for r in b.letters() {
            let eps = grading
                .epsilon_of(rs, &rs.positive_roots()[r].fund)
                .expect("roots lie in the root lattice");
            if eps == 1 {
                sign = -sign;
            }
            combo = self.apply_gen_combo(GenId::X(r), &combo);
        }
        self.extract_scalar(combo)
            .scale(&Q::from_integer(sign.into()))
    }

    fn extract_scalar(&self, combo: Combo) -> QtPoly {
        let nroots = self.chev.num_positive_roots();
        let empty = Monomial::empty(nroots);
        let mut result = QtPoly::zero();
        for (m, c) in combo {
            if m == empty {
                result = result.add(&c);
            } else {
                assert!(
                    c.is_zero(),
                    "pairing left a non-scalar term of weight {:?}",
                    m
                );
            }
        }
        result
    }
}

/// All monomials of a given depth (root coordinates), sorted by exponent
/// vector.
pub fn monomials_of_depth(chev: &ChevalleyData, nu: &[i64]) -> Vec<Monomial> {
    let rs = chev.root_system();
    let nroots = rs.positive_roots().len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; nroots];
    fn rec(
        rs: &crate::rootsys::RootSystem,
        out: &mut Vec<Monomial>,
        cur: &mut Vec<u32>,
        idx: usize,
        rem: Vec<i64>,
    ) {
        if rem.iter().all(|&c| c == 0) {
            let mut m = cur.clone();
            for e in m.iter_mut().skip(idx) {
                *e = 0;
            }
            out.push(Monomial(m));
            return;
        }
        if idx >= rs.positive_roots().len() || rem.iter().any(|&c| c < 0) {
            return;
        }
        let beta = &rs.positive_roots()[idx].coeffs;
        let mut k = 0u32;
        let mut left = rem.clone();
        loop {
            cur[idx] = k;
            rec(rs, out, cur, idx + 1, left.clone());
            if left.iter().zip(beta).any(|(c, b)| c < b) {
                break;
            }
            for (c, b) in left.iter_mut().zip(beta) {
                *c -= b;
            }
            k += 1;
        }
        cur[idx] = 0;
    }
    rec(rs, &mut out, &mut cur, 0, nu.to_vec());
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charlat::kostant_partition;
    use crate::rational::{q_int, q_ratio};
    use crate::rootsys::{build_root_system, Painting};

    fn model(label: &str, hw0: &[i64]) -> (ChevalleyData, Weight) {
        let rs = build_root_system(label).unwrap();
        let chev = ChevalleyData::new(rs).unwrap();
        (chev, Weight::from_i64(hw0))
    }

    #[test]
    fn monomial_counts_match_kostant() {
        let rs = build_root_system("B2").unwrap();
        let chev = ChevalleyData::new(rs.clone()).unwrap();
        for nu in crate::charlat::cone_points(&rs, 5) {
            assert_eq!(
                monomials_of_depth(&chev, &nu).len() as i64,
                kostant_partition(&rs, &nu),
                "nu = {nu:?}"
            );
        }
    }

    #[test]
    fn rank_one_norm_closed_form() {
        // <Y^k v, Y^k v> = k! * prod_{j=1}^{k} (m(t) - j + 1).
        let (chev, _) = model("A1", &[0]);
        let rs = chev.root_system().clone();
        // hw(t) = -rho + rho t gives m(t) = -1 + t.
        let vm = VermaModel::new(&chev, rs.minus_rho_times(1), rs.rho().clone());
        for k in 0..=5u32 {
            let m = Monomial(vec![k]);
            let got = vm.bilinear_pair(&m, &m);
            let mut expect = QtPoly::one();
            let mut fact = q_int(1);
            for j in 1..=k {
                fact *= q_int(j as i64);
                expect = expect.mul(&QtPoly::linear(q_int(-1) - q_int(j as i64 - 1), q_int(1)));
            }
            expect = expect.scale(&fact);
            assert_eq!(got, expect, "k = {k}");
        }
    }

    #[test]
    fn contravariance_spot_check_a2() {
        // (g u, v) = (u, sigma(g) v) for generators and sampled pairs.
        let (chev, _) = model("A2", &[0, 0]);
        let rs = chev.root_system().clone();
        let vm = VermaModel::new(
            &chev,
            Weight::new(vec![q_ratio(-3, 1), q_ratio(-2, 1)]),
            rs.rho().clone(),
        );
        let mut monos = Vec::new();
        for nu in crate::charlat::cone_points(&rs, 3) {
            monos.extend(monomials_of_depth(&chev, &nu));
        }
        let pair_combo = |combo: &Combo, n: &Monomial| -> QtPoly {
            let mut acc = QtPoly::zero();
            for (m, c) in combo {
                acc = acc.add(&vm.bilinear_pair(m, n).mul(c));
            }
            acc
        };
        // Deterministic sample; indices chosen to mix depths.
        for (ia, ib) in [(0usize, 0usize), (1, 2), (3, 5), (2, 7), (4, 4), (6, 1)] {
            let u = &monos[ia % monos.len()];
            let v = &monos[ib % monos.len()];
            for g in chev.generators() {
                let gu = vm.apply_gen(g, u);
                let sv = vm.apply_gen(g.sigma(), v);
                let lhs = pair_combo(&gu, v);
                let mut rhs = QtPoly::zero();
                for (m, c) in &sv {
                    rhs = rhs.add(&vm.bilinear_pair(u, m).mul(c));
                }
                assert_eq!(lhs, rhs, "g = {g:?}");
            }
        }
    }

    #[test]
    fn hermitian_direct_matches_scaled_bilinear_a1() {
        let (chev, _) = model("A1", &[0]);
        let rs = chev.root_system().clone();
        let vm = VermaModel::new(&chev, rs.minus_rho_times(1), rs.rho().clone());
        for painted in [false, true] {
            let painting = if painted {
                Painting::from_indices(&[1], 1).unwrap()
            } else {
                Painting::empty(1)
            };
            let grading = EpsilonGrading::new(painting);
            for k in 0..=4u32 {
                let m = Monomial(vec![k]);
                let herm = vm.hermitian_pair_direct(&grading, &m, &m);
                let scaled = vm
                    .bilinear_pair(&m, &m)
                    .scale(&q_int(if painted && k % 2 == 1 { -1 } else { 1 }));
                assert_eq!(herm, scaled, "painted={painted} k={k}");
            }
        }
    }

    #[test]
    fn hermitian_direct_matches_scaled_bilinear_a2() {
        let (chev, _) = model("A2", &[0, 0]);
        let rs = chev.root_system().clone();
        let vm = VermaModel::new(&chev, rs.minus_rho_times(1), rs.rho().clone());
        for painting in Painting::all(2) {
            let grading = EpsilonGrading::new(painting.clone());
            for nu in crate::charlat::cone_points(&rs, 3) {
                let eps = grading
                    .epsilon_of(&rs, &rs.weight_from_root_coords(&nu))
                    .unwrap();
                let scale = q_int(if eps == 1 { -1 } else { 1 });
                for a in monomials_of_depth(&chev, &nu) {
                    for b in monomials_of_depth(&chev, &nu) {
                        let herm = vm.hermitian_pair_direct(&grading, &a, &b);
                        let bil = vm.bilinear_pair(&a, &b).scale(&scale);
                        assert_eq!(herm, bil, "painting {}", painting.label());
                    }
                }
            }
        }
    }

    #[test]
    fn pairing_is_symmetric() {
        let (chev, _) = model("B2", &[0, 0]);
        let rs = chev.root_system().clone();
        let vm = VermaModel::new(&chev, rs.minus_rho_times(1), rs.rho().clone());
        for nu in crate::charlat::cone_points(&rs, 4) {
            let basis = monomials_of_depth(&chev, &nu);
            for a in &basis {
                for b in &basis {
                    assert_eq!(vm.bilinear_pair(a, b), vm.bilinear_pair(b, a));
                }
            }
        }
    }
}
