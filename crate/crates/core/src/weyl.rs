//! Weyl group enumeration with lengths, reduced words, descents, Bruhat
//! order, and the long element.
//!
//! Elements are identified by the image of rho (a regular point), so equality
//! is an exact rational vector comparison and never depends on word
//! normalization.  The element order is fixed once and for all as (length,
//! lexicographic reduced word); every matrix downstream is indexed by it.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{CoreError, Result};
use crate::rootsys::{root_is_negative, IntegralSubsystem, Root, RootSystem, Weight};

const GROUP_SIZE_CAP: usize = 1152;

#[derive(Debug, Clone)]
pub struct WeylElement {
    /// Image of rho under the element.
    pub key: Weight,
    /// Lexicographically smallest reduced word, as generator indices.
    pub word: Vec<u8>,
    pub length: u32,
    right_descents: Vec<bool>,
    left_descents: Vec<bool>,
}

impl WeylElement {
    pub fn right_descents(&self) -> &[bool] {
        &self.right_descents
    }

    pub fn left_descents(&self) -> &[bool] {
        &self.left_descents
    }

    /// Word rendering used in reports: "e" or e.g. "121" (1-based letters).
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word.iter().map(|l| (l + 1).to_string()).collect()
        }
    }
}

/// A finite reflection group generated by the simple system of a root
/// subsystem, fully enumerated.
#[derive(Debug)]
pub struct WeylGroup {
    rs: Arc<RootSystem>,
    generators: Vec<Root>,
    elements: Vec<WeylElement>,
    right_mul: Vec<Vec<usize>>,
    left_mul: Vec<Vec<usize>>,
    w0: usize,
    /// Conjugation by the long element permutes the generators; sigma[i] is
    /// the index with w0 * s_i * w0 = s_{sigma[i]}.
    sigma: Vec<usize>,
    is_full: bool,
    bruhat: OnceLock<Vec<Vec<bool>>>,
}

/// Enumerates the reflection group of a subsystem by orbit closure.
pub fn generate(rs: Arc<RootSystem>, subsystem: &IntegralSubsystem) -> Result<Arc<WeylGroup>> {
    WeylGroup::generate_inner(rs, subsystem.simple.clone(), subsystem.positive.clone())
}

/// Enumerates the full Weyl group of the root system.
pub fn generate_full(rs: Arc<RootSystem>) -> Result<Arc<WeylGroup>> {
    let gens: Vec<Root> = (0..rs.rank()).map(|i| rs.simple_root(i).clone()).collect();
    let pos = rs.positive_roots().to_vec();
    WeylGroup::generate_inner(rs, gens, pos)
}

impl WeylGroup {
    fn generate_inner(
        rs: Arc<RootSystem>,
        generators: Vec<Root>,
        sub_positive: Vec<Root>,
    ) -> Result<Arc<WeylGroup>> {
        let ngens = generators.len();
        let rho = rs.rho().clone();

        // BFS by length, multiplying by generators on the left so that keys
        // transform directly.  Words are rebuilt as lexicographic minima over
        // the left descents, so the stored word is canonical.
        struct Raw {
            key: Weight,
            word: Vec<u8>,
            length: u32,
        }
        let mut raws: Vec<Raw> = vec![Raw {
            key: rho.clone(),
            word: vec![],
            length: 0,
        }];
        let mut index: HashMap<Weight, usize> = HashMap::new();
        index.insert(rho.clone(), 0);
        let mut level: Vec<usize> = vec![0];
        while !level.is_empty() {
            let mut next: Vec<usize> = Vec::new();
            for &e in &level {
                for g in 0..ngens {
                    let key = rs.reflect(&raws[e].key.clone(), &generators[g].fund);
                    if !index.contains_key(&key) {
                        if raws.len() >= GROUP_SIZE_CAP {
                            return Err(CoreError::SizeCap(format!(
                                "group order exceeds {GROUP_SIZE_CAP}"
                            )));
                        }
                        let id = raws.len();
                        index.insert(key.clone(), id);
                        raws.push(Raw {
                            key,
                            word: vec![],
                            length: raws[e].length + 1,
                        });
                        next.push(id);
                    }
                }
            }
            // Lex-minimal reduced word: min over left descents i of
            // [i] ++ word(s_i * w).
            for &id in &next {
                let mut best: Option<Vec<u8>> = None;
                for g in 0..ngens {
                    let down_key = rs.reflect(&raws[id].key.clone(), &generators[g].fund);
                    if let Some(&p) = index.get(&down_key) {
                        if raws[p].length + 1 == raws[id].length {
                            let mut cand = Vec::with_capacity(raws[id].length as usize);
                            cand.push(g as u8);
                            cand.extend_from_slice(&raws[p].word);
                            if best.as_ref().map_or(true, |b| cand < *b) {
                                best = Some(cand);
                            }
                        }
                    }
                }
                raws[id].word = best.expect("new element has a parent");
            }
            level = next;
        }

        // Fixed total order: (length, lexicographic word).
        let mut order: Vec<usize> = (0..raws.len()).collect();
        order.sort_by(|&a, &b| {
            raws[a]
                .length
                .cmp(&raws[b].length)
                .then(raws[a].word.cmp(&raws[b].word))
        });

        let mut elements: Vec<WeylElement> = Vec::with_capacity(raws.len());
        let mut index_by_key: HashMap<Weight, usize> = HashMap::new();
        for (new_id, &old) in order.iter().enumerate() {
            index_by_key.insert(raws[old].key.clone(), new_id);
            elements.push(WeylElement {
                key: raws[old].key.clone(),
                word: raws[old].word.clone(),
                length: raws[old].length,
                right_descents: vec![],
                left_descents: vec![],
            });
        }

        // Sanity: length equals the number of subsystem positive roots made
        // negative.
        let apply = |word: &[u8], w: &Weight| -> Weight {
            let mut cur = w.clone();
            for &l in word.iter().rev() {
                cur = rs.reflect(&cur, &generators[l as usize].fund);
            }
            cur
        };
        for el in &elements {
            let inv = sub_positive
                .iter()
                .filter(|r| root_is_negative(&rs, &apply(&el.word, &r.fund)))
                .count();
            assert_eq!(inv as u32, el.length, "length is the inversion count");
        }

        // Multiplication tables by a single generator.
        let n = elements.len();
        let mut right_mul = vec![vec![0usize; ngens]; n];
        let mut left_mul = vec![vec![0usize; ngens]; n];
        for (e, el) in elements.iter().enumerate() {
            for g in 0..ngens {
                let lk = rs.reflect(&el.key, &generators[g].fund);
                left_mul[e][g] = index_by_key[&lk];
                let sr = rs.reflect(rs.rho(), &generators[g].fund);
                let rk = apply(&el.word, &sr);
                right_mul[e][g] = index_by_key[&rk];
            }
        }

        // Descents: i is a right descent iff w(alpha_i) < 0, a left descent
        // iff w^{-1}(alpha_i) < 0.
        for e in 0..n {
            let word = elements[e].word.clone();
            let rev: Vec<u8> = word.iter().rev().copied().collect();
            let apply_inv = |w: &Weight| -> Weight {
                let mut cur = w.clone();
                for &l in rev.iter().rev() {
                    cur = rs.reflect(&cur, &generators[l as usize].fund);
                }
                cur
            };
            let mut rd = Vec::with_capacity(ngens);
            let mut ld = Vec::with_capacity(ngens);
            for g in 0..ngens {
                let im = apply(&word, &generators[g].fund);
                rd.push(root_is_negative(&rs, &im));
                let im_inv = apply_inv(&generators[g].fund);
                ld.push(root_is_negative(&rs, &im_inv));
            }
            elements[e].right_descents = rd;
            elements[e].left_descents = ld;
        }

        // Long element: unique maximum length.
        let max_len = elements.iter().map(|e| e.length).max().unwrap();
        let longs: Vec<usize> = (0..n).filter(|&e| elements[e].length == max_len).collect();
        assert_eq!(longs.len(), 1, "long element is unique");
        let w0 = longs[0];
        assert_eq!(max_len as usize, sub_positive.len());

        let is_full = generators.len() == rs.rank()
            && (0..rs.rank()).all(|i| generators[i].coeffs == rs.simple_root(i).coeffs);

        let mut group = WeylGroup {
            rs,
            generators,
            elements,
            right_mul,
            left_mul,
            w0,
            sigma: vec![],
            is_full,
            bruhat: OnceLock::new(),
        };
        let mut sigma = Vec::with_capacity(ngens);
        for g in 0..ngens {
            let s = group.generator_element(g);
            let conj = group.multiply(group.multiply(w0, s), w0);
            let gidx = (0..ngens)
                .find(|&h| group.generator_element(h) == conj)
                .expect("w0-conjugate of a generator is a generator");
            sigma.push(gidx);
        }
        group.sigma = sigma;
        Ok(Arc::new(group))
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_root(&self, g: usize) -> &Root {
        &self.generators[g]
    }

    pub fn element(&self, e: usize) -> &WeylElement {
        &self.elements[e]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn length(&self, e: usize) -> u32 {
        self.elements[e].length
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the generator s_g as a group element.
    pub fn generator_element(&self, g: usize) -> usize {
        self.right_mul[0][g]
    }

    pub fn long_element(&self) -> usize {
        self.w0
    }

    pub fn is_full(&self) -> bool {
        self.is_full
    }

    /// w0 s_g w0 = s_{sigma(g)}.
    pub fn sigma_gen(&self, g: usize) -> usize {
        self.sigma[g]
    }

    pub fn right_mul_gen(&self, e: usize, g: usize) -> usize {
        self.right_mul[e][g]
    }

    pub fn left_mul_gen(&self, e: usize, g: usize) -> usize {
        self.left_mul[e][g]
    }

    pub fn multiply(&self, x: usize, y: usize) -> usize {
        let mut acc = x;
        for &l in self.elements[y].word.clone().iter() {
            acc = self.right_mul[acc][l as usize];
        }
        acc
    }

    pub fn inverse(&self, x: usize) -> usize {
        let mut acc = 0;
        for &l in self.elements[x].word.iter().rev() {
            acc = self.right_mul[acc][l as usize];
        }
        acc
    }

    /// Applies the element to an arbitrary weight.
    pub fn apply(&self, e: usize, w: &Weight) -> Weight {
        let mut cur = w.clone();
        for &l in self.elements[e].word.iter().rev() {
            cur = self.rs.reflect(&cur, &self.generators[l as usize].fund);
        }
        cur
    }

    /// Right and left descent sets, as generator indices.
    pub fn descents(&self, e: usize) -> (Vec<usize>, Vec<usize>) {
        let el = &self.elements[e];
        let left = el
            .left_descents
            .iter()
            .enumerate()
            .filter(|(_, &d)| d)
            .map(|(i, _)| i)
            .collect();
        let right = el
            .right_descents
            .iter()
            .enumerate()
            .filter(|(_, &d)| d)
            .map(|(i, _)| i)
            .collect();
        (left, right)
    }

    pub fn min_right_descent(&self, e: usize) -> Option<usize> {
        self.elements[e].right_descents.iter().position(|&d| d)
    }

    pub fn min_left_descent(&self, e: usize) -> Option<usize> {
        self.elements[e].left_descents.iter().position(|&d| d)
    }

    pub fn max_right_descent(&self, e: usize) -> Option<usize> {
        self.elements[e]
            .right_descents
            .iter()
            .rposition(|&d| d)
    }

    fn bruhat_matrix(&self) -> &Vec<Vec<bool>> {
        self.bruhat.get_or_init(|| {
            let n = self.order();
            let mut leq = vec![vec![false; n]; n];
            // Elements are sorted by length, so filling in index order makes
            // every shorter element available.
            for y in 0..n {
                leq[y][y] = true;
                if self.elements[y].length == 0 {
                    continue;
                }
                let s = *self.elements[y].word.last().unwrap() as usize;
                let ys = self.right_mul[y][s];
                for x in 0..n {
                    if x == y {
                        continue;
                    }
                    let xs = self.right_mul[x][s];
                    let drop = self.elements[xs].length < self.elements[x].length;
                    leq[x][y] = if drop { leq[xs][ys] } else { leq[x][ys] };
                }
            }
            leq
        })
    }

    /// Bruhat order, via the subword property on the fixed reduced word of y.
    pub fn bruhat_leq(&self, x: usize, y: usize) -> bool {
        self.bruhat_matrix()[x][y]
    }

    /// Renders the fixed element order as word strings.
    pub fn word_strings(&self) -> Vec<String> {
        self.elements.iter().map(|e| e.word_string()).collect()
    }
}

/// All reduced words of an element (test oracle; exponential).
pub fn all_reduced_words(group: &WeylGroup, e: usize) -> Vec<Vec<u8>> {
    if group.length(e) == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for g in 0..group.num_generators() {
        let down = group.right_mul_gen(e, g);
        if group.length(down) < group.length(e) {
            for mut w in all_reduced_words(group, down) {
                w.push(g as u8);
                out.push(w);
            }
        }
    }
    out
}

/// Independent Bruhat comparison: exhaustive subword search over all reduced
/// words of y (test oracle; small groups only).
pub fn bruhat_leq_oracle(group: &WeylGroup, x: usize, y: usize) -> bool {
    let lx = group.length(x) as usize;
    if lx > group.length(y) as usize {
        return false;
    }
    let product_of = |letters: &[u8]| -> usize {
        let mut acc = 0usize;
        for &l in letters {
            acc = group.right_mul_gen(acc, l as usize);
        }
        acc
    };
    for word in all_reduced_words(group, y) {
        let n = word.len();
        // All subsequences of length lx.
        let mut idx: Vec<usize> = (0..lx).collect();
        if lx == 0 {
            return true;
        }
        if lx > n {
            continue;
        }
        loop {
            let letters: Vec<u8> = idx.iter().map(|&i| word[i]).collect();
            if product_of(&letters) == x {
                return true;
            }
            // next combination
            let mut i = lx;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if idx[i] != i + n - lx {
                    idx[i] += 1;
                    for j in i + 1..lx {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    idx = vec![];
                    break;
                }
            }
            if idx.is_empty() {
                break;
            }
        }
    }
    false
}
