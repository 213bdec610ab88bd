//! Weyl group elements, Bruhat order and parabolic coset representatives.
//!
//! An element is stored as its action on the root lattice: column `j` of the
//! matrix is the image of the simple root `α_j`. Reduced words are recovered
//! on demand by descent.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, RootVec};

/// Default cap on the number of elements an exhaustive enumeration may produce.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    /// Row-major; entry `(i, j)` is the `α_i` coefficient of `w(α_j)`.
    action: Box<[i64]>,
    length: usize,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self) -> &[i64] {
        &self.action
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    /// Image of the simple root `α_j`.
    pub fn column(&self, j: usize) -> RootVec {
        let n = self.rank;
        let mut v = RootVec::zero();
        for i in 0..n {
            v.0[i] = self.action[i * n + j];
        }
        v
    }

    /// Whether `s_j` is a right descent, i.e. `w(α_j) < 0`.
    pub fn has_right_descent(&self, j: usize) -> bool {
        let n = self.rank;
        (0..n).any(|i| self.action[i * n + j] < 0)
    }

    pub fn apply(&self, x: &RootVec) -> RootVec {
        let n = self.rank;
        let mut out = RootVec::zero();
        for j in 0..n {
            let xj = x[j];
            if xj == 0 {
                continue;
            }
            for i in 0..n {
                out.0[i] += self.action[i * n + j] * xj;
            }
        }
        out
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeylElement")
            .field("length", &self.length)
            .field("action", &self.action)
            .finish()
    }
}

/// Parabolic subsystem generated by a subset of the simple roots.
#[derive(Debug, Clone)]
pub struct Parabolic {
    subset: Vec<usize>,
    in_levi: Vec<bool>,
    levi_roots: Vec<usize>,
    levi_positive: Vec<usize>,
    w0: WeylElement,
}

impl Parabolic {
    /// Sorted 0-based simple-root indices.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// 1-based indices, as printed in reports.
    pub fn label(&self) -> String {
        if self.subset.is_empty() {
            return "{}".to_string();
        }
        let items: Vec<String> = self.subset.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    }

    pub fn contains_root(&self, idx: usize) -> bool {
        self.in_levi[idx]
    }

    /// Φ_L as root indices.
    pub fn levi_roots(&self) -> &[usize] {
        &self.levi_roots
    }

    /// Φ_L⁺ as root indices.
    pub fn levi_positive(&self) -> &[usize] {
        &self.levi_positive
    }

    /// Longest element of `W_L`.
    pub fn longest(&self) -> &WeylElement {
        &self.w0
    }

    pub fn is_borel(&self) -> bool {
        self.subset.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetMode {
    Minimal,
    Maximal,
}

/// Render a 0-based reduced word as `s1s2s1`, or `e` for the identity.
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect()
}

/// Parse a 1-based word such as `1,2,1`, `s1s2s1` or `e` into 0-based indices.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let t = s.trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    let parts: Vec<&str> = if t.contains(',') {
        t.split(',').map(str::trim).collect()
    } else if t.starts_with('s') {
        t.split('s').filter(|p| !p.is_empty()).collect()
    } else {
        vec![t]
    };
    parts
        .iter()
        .map(|p| match p.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => Err(Error::ParseWord(s.to_string())),
        })
        .collect()
}

/// Serialisable form of an element: its reduced word with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementWord(pub Vec<usize>);

impl RootSystem {
    fn element(&self, action: Box<[i64]>) -> WeylElement {
        let length = self.inversion_count(&action);
        WeylElement {
            rank: self.rank(),
            action,
            length,
        }
    }

    /// Number of positive roots sent to negative roots.
    fn inversion_count(&self, action: &[i64]) -> usize {
        let n = self.rank();
        self.positive_roots()
            .iter()
            .filter(|r| {
                // the image is sign coherent, so the first nonzero coordinate decides
                for i in 0..n {
                    let c: i64 = (0..n).map(|j| action[i * n + j] * r[j]).sum();
                    if c != 0 {
                        return c < 0;
                    }
                }
                unreachable!("Weyl group action sent a root to zero")
            })
            .count()
    }

    pub fn identity(&self) -> WeylElement {
        let n = self.rank();
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        WeylElement {
            rank: n,
            action: a.into(),
            length: 0,
        }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let n = self.rank();
        let mut a = self.identity().action.to_vec();
        // s_i(α_j) = α_j - a_ij α_i
        for j in 0..n {
            a[i * n + j] -= self.cartan()[i][j];
        }
        WeylElement {
            rank: n,
            action: a.into(),
            length: 1,
        }
    }

    /// Reflection in the root with the given index.
    pub fn reflection(&self, root: usize) -> WeylElement {
        let n = self.rank();
        let beta = self.root(root);
        let mut a = self.identity().action.to_vec();
        for j in 0..n {
            let c = self.coroot_pairing_int(&beta, &RootVec::unit(j));
            for i in 0..n {
                a[i * n + j] -= c * beta[i];
            }
        }
        self.element(a.into())
    }

    pub fn apply(&self, w: &WeylElement, x: &RootVec) -> RootVec {
        w.apply(x)
    }

    /// Image of a root, by index.
    pub fn apply_root(&self, w: &WeylElement, root: usize) -> usize {
        let img = w.apply(&self.root(root));
        self.root_index(&img).expect("Weyl group action must permute roots")
    }

    pub fn multiply(&self, u: &WeylElement, v: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let uik = u.action[i * n + k];
                if uik == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += uik * v.action[k * n + j];
                }
            }
        }
        self.element(a.into())
    }

    /// `w·s_i`, with the length updated from the sign of `w(α_i)`.
    pub fn mul_simple(&self, w: &WeylElement, i: usize) -> WeylElement {
        let n = self.rank();
        let mut a = w.action.to_vec();
        let col = w.column(i);
        // (w s_i)(α_j) = w(α_j) - a_ij w(α_i)
        for j in 0..n {
            let c = self.cartan()[i][j];
            if j == i || c == 0 {
                continue;
            }
            for r in 0..n {
                a[r * n + j] -= c * col[r];
            }
        }
        for r in 0..n {
            a[r * n + i] = -col[r];
        }
        let length = if w.has_right_descent(i) {
            w.length - 1
        } else {
            w.length + 1
        };
        WeylElement {
            rank: n,
            action: a.into(),
            length,
        }
    }

    /// `s_i·w`.
    pub fn simple_mul(&self, i: usize, w: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut a = w.action.to_vec();
        for j in 0..n {
            let c: i64 = (0..n).map(|k| self.cartan()[i][k] * w.action[k * n + j]).sum();
            a[i * n + j] -= c;
        }
        self.element(a.into())
    }

    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(self.identity(), |w, &i| self.mul_simple(&w, i))
    }

    /// Strips right descents; the returned letters multiply to `w⁻¹`.
    fn descent_letters(&self, w: &WeylElement) -> Vec<usize> {
        let mut letters = Vec::with_capacity(w.length);
        let mut cur = w.clone();
        while !cur.is_identity() {
            let i = (0..self.rank())
                .find(|&i| cur.has_right_descent(i))
                .expect("nonidentity element has a right descent");
            letters.push(i);
            cur = self.mul_simple(&cur, i);
        }
        letters
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        self.element_from_word(&self.descent_letters(w))
    }

    /// Lexicographically smallest reduced word (0-based letters).
    pub fn reduced_word(&self, w: &WeylElement) -> Vec<usize> {
        // left descents of w are right descents of w⁻¹
        let mut u = self.inverse(w);
        let mut word = Vec::with_capacity(w.length);
        while !u.is_identity() {
            let i = (0..self.rank())
                .find(|&i| u.has_right_descent(i))
                .expect("nonidentity element has a descent");
            word.push(i);
            u = self.mul_simple(&u, i);
        }
        word
    }

    /// Reduced word with 1-based letters, for serialisation.
    pub fn element_word(&self, w: &WeylElement) -> ElementWord {
        ElementWord(self.reduced_word(w).into_iter().map(|i| i + 1).collect())
    }

    pub fn word_string(&self, w: &WeylElement) -> String {
        format_word(&self.reduced_word(w))
    }

    pub fn is_length_additive(&self, u: &WeylElement, v: &WeylElement) -> bool {
        self.multiply(u, v).length == u.length + v.length
    }

    /// Longest element of `W`, or of `W_L` when a parabolic is given.
    pub fn longest_element(&self, parabolic: Option<&Parabolic>) -> WeylElement {
        match parabolic {
            Some(p) => p.w0.clone(),
            None => self.longest_in(&(0..self.rank()).collect::<Vec<_>>()),
        }
    }

    fn longest_in(&self, subset: &[usize]) -> WeylElement {
        let mut w = self.identity();
        while let Some(&i) = subset.iter().find(|&&i| !w.has_right_descent(i)) {
            w = self.mul_simple(&w, i);
        }
        w
    }

    pub fn parabolic(&self, subset: &[usize]) -> Result<Parabolic> {
        let rank = self.rank();
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        subset.dedup();
        if let Some(&bad) = subset.iter().find(|&&i| i >= rank) {
            return Err(Error::BadSimpleIndex { index: bad, rank });
        }
        let in_levi: Vec<bool> = self
            .roots()
            .iter()
            .map(|r| (0..rank).all(|i| r[i] == 0 || subset.contains(&i)))
            .collect();
        let levi_roots: Vec<usize> = (0..in_levi.len()).filter(|&i| in_levi[i]).collect();
        let levi_positive = levi_roots
            .iter()
            .copied()
            .filter(|&i| self.is_positive_index(i))
            .collect();
        let w0 = self.longest_in(&subset);
        Ok(Parabolic {
            subset,
            in_levi,
            levi_roots,
            levi_positive,
            w0,
        })
    }

    pub fn borel(&self) -> Parabolic {
        self.parabolic(&[]).expect("empty subset is valid")
    }

    /// All `2^rank` parabolic subsets in binary-counting order.
    pub fn all_parabolics(&self) -> Vec<Parabolic> {
        let n = self.rank();
        (0..1usize << n)
            .map(|mask| {
                let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                self.parabolic(&subset).expect("subset in range")
            })
            .collect()
    }

    /// Whether `w` is the minimal element of `w W_L`.
    pub fn is_min_coset_rep(&self, w: &WeylElement, p: &Parabolic) -> bool {
        p.subset.iter().all(|&i| !w.has_right_descent(i))
    }

    pub fn min_coset_rep(&self, w: &WeylElement, p: &Parabolic) -> WeylElement {
        let mut cur = w.clone();
        while let Some(&i) = p.subset.iter().find(|&&i| cur.has_right_descent(i)) {
            cur = self.mul_simple(&cur, i);
        }
        cur
    }

    pub fn max_coset_rep(&self, w: &WeylElement, p: &Parabolic) -> WeylElement {
        let min = self.min_coset_rep(w, p);
        self.multiply(&min, &p.w0)
    }

    /// Order of `W / W_L`.
    pub fn quotient_order(&self, p: &Parabolic) -> u128 {
        let levi = self.levi_order(p);
        self.cartan_type().weyl_group_order() / levi
    }

    /// Order of `W_L`, by direct enumeration.
    fn levi_order(&self, p: &Parabolic) -> u128 {
        let mut seen: HashSet<WeylElement> = HashSet::new();
        let mut layer = vec![self.identity()];
        seen.insert(self.identity());
        while !layer.is_empty() {
            let mut next = Vec::new();
            for w in &layer {
                for &i in &p.subset {
                    if !w.has_right_descent(i) {
                        let x = self.mul_simple(w, i);
                        if seen.insert(x.clone()) {
                            next.push(x);
                        }
                    }
                }
            }
            layer = next;
        }
        seen.len() as u128
    }

    /// Minimal coset representatives of `W / W_L`, ordered by length and
    /// then by lexicographically smallest reduced word.
    pub fn minimal_coset_reps(&self, p: &Parabolic, cap: usize) -> Result<Vec<WeylElement>> {
        let order = self.quotient_order(p);
        if order > cap as u128 {
            return Err(Error::GroupTooLarge { order, cap });
        }
        // W^L is closed under taking suffixes of reduced words, so it grows
        // layer by layer under left multiplication.
        let mut seen: HashSet<WeylElement> = HashSet::with_capacity(order as usize);
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut start = 0;
        while start < out.len() {
            let end = out.len();
            let mut layer = Vec::new();
            for w in &out[start..end] {
                for i in 0..self.rank() {
                    let x = self.simple_mul(i, w);
                    if x.length < w.length || !self.is_min_coset_rep(&x, p) {
                        continue;
                    }
                    if seen.insert(x.clone()) {
                        layer.push((self.reduced_word(&x), x));
                    }
                }
            }
            layer.sort_by(|a, b| a.0.cmp(&b.0));
            out.extend(layer.into_iter().map(|(_, x)| x));
            start = end;
        }
        debug_assert_eq!(out.len() as u128, order);
        Ok(out)
    }

    /// One representative per coset of `W_L`.
    pub fn coset_representatives(
        &self,
        p: &Parabolic,
        mode: CosetMode,
        cap: usize,
    ) -> Result<Vec<WeylElement>> {
        let mins = self.minimal_coset_reps(p, cap)?;
        Ok(match mode {
            CosetMode::Minimal => mins,
            CosetMode::Maximal => mins.iter().map(|w| self.multiply(w, &p.w0)).collect(),
        })
    }

    /// Every element of `W`, ordered by length and then by smallest reduced word.
    pub fn enumerate_group(&self, cap: usize) -> Result<Vec<WeylElement>> {
        self.minimal_coset_reps(&self.borel(), cap)
    }

    /// Strong Bruhat order, decided by the subword property against the
    /// lexicographically smallest reduced word of `w`.
    pub fn bruhat_leq(&self, v: &WeylElement, w: &WeylElement) -> bool {
        if v.length > w.length {
            return false;
        }
        let word = self.reduced_word(w);
        let mut cur = v.clone();
        for &i in word.iter().rev() {
            if cur.length == 0 {
                break;
            }
            if cur.has_right_descent(i) {
                cur = self.mul_simple(&cur, i);
            }
        }
        cur.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(name: &str) -> RootSystem {
        RootSystem::of(name).unwrap()
    }

    #[test]
    fn simple_reflections_are_involutions() {
        let g2 = sys("G2");
        for i in 0..2 {
            let s = g2.simple_reflection(i);
            let ss = g2.multiply(&s, &s);
            assert!(ss.is_identity());
            assert_eq!(ss, g2.identity());
        }
    }

    #[test]
    fn a2_lengths() {
        let a2 = sys("A2");
        assert_eq!(a2.element_from_word(&[0, 1]).length(), 2);
        let w0 = a2.element_from_word(&[0, 1, 0]);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0, a2.longest_element(None));
        assert_eq!(w0, a2.element_from_word(&[1, 0, 1]));
    }

    #[test]
    fn length_additivity() {
        let a2 = sys("A2");
        let s1 = a2.simple_reflection(0);
        let s2s1 = a2.element_from_word(&[1, 0]);
        assert!(a2.is_length_additive(&a2.identity(), &s2s1));
        assert!(!a2.is_length_additive(&s1, &s1));
        assert!(a2.is_length_additive(&s1, &s2s1));
    }

    #[test]
    fn longest_elements() {
        assert_eq!(sys("A1").longest_element(None), sys("A1").simple_reflection(0));
        let g2 = sys("G2");
        assert_eq!(g2.longest_element(None).length(), 6);
        let a3 = sys("A3");
        let p = a3.parabolic(&[0, 1]).unwrap();
        assert_eq!(a3.longest_element(Some(&p)).length(), 3);
        assert!(a3.longest_element(Some(&a3.borel())).is_identity());
        let full = a3.parabolic(&[0, 1, 2]).unwrap();
        assert_eq!(full.longest(), &a3.longest_element(None));
    }

    #[test]
    fn w0_negates_positive_roots() {
        for name in ["B3", "D4", "F4", "G2"] {
            let s = sys(name);
            let w0 = s.longest_element(None);
            assert_eq!(w0.length(), s.num_positive());
            for r in s.positive_roots() {
                assert!(w0.apply(r).is_negative());
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(sys("A1").enumerate_group(DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(sys("G2").enumerate_group(DEFAULT_CAP).unwrap().len(), 12);
        assert_eq!(sys("F4").enumerate_group(DEFAULT_CAP).unwrap().len(), 1152);
        assert_eq!(sys("B3").enumerate_group(DEFAULT_CAP).unwrap().len(), 48);
    }

    #[test]
    fn enumeration_cap_reports_order() {
        let err = sys("E7").enumerate_group(DEFAULT_CAP).unwrap_err();
        assert_eq!(
            err,
            Error::GroupTooLarge {
                order: 2_903_040,
                cap: DEFAULT_CAP
            }
        );
    }

    #[test]
    fn enumeration_order_is_by_length_then_word() {
        let a2 = sys("A2");
        let words: Vec<String> = a2
            .enumerate_group(DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|w| a2.word_string(w))
            .collect();
        assert_eq!(words, ["e", "s1", "s2", "s1s2", "s2s1", "s1s2s1"]);
    }

    #[test]
    fn inverse_and_reduced_word() {
        let b3 = sys("B3");
        for w in b3.enumerate_group(DEFAULT_CAP).unwrap() {
            let inv = b3.inverse(&w);
            assert!(b3.multiply(&w, &inv).is_identity());
            let word = b3.reduced_word(&w);
            assert_eq!(word.len(), w.length());
            assert_eq!(b3.element_from_word(&word), w);
        }
    }

    #[test]
    fn reflection_of_simple_root_is_simple_reflection() {
        let f4 = sys("F4");
        for i in 0..4 {
            assert_eq!(f4.reflection(i), f4.simple_reflection(i));
        }
    }

    #[test]
    fn bruhat_examples() {
        let a2 = sys("A2");
        let s1 = a2.simple_reflection(0);
        let s2 = a2.simple_reflection(1);
        let s2s1 = a2.element_from_word(&[1, 0]);
        assert!(a2.bruhat_leq(&s1, &s2s1));
        assert!(!a2.bruhat_leq(&s1, &s2));
        let w0 = a2.longest_element(None);
        for w in a2.enumerate_group(DEFAULT_CAP).unwrap() {
            assert!(a2.bruhat_leq(&a2.identity(), &w));
            assert!(a2.bruhat_leq(&w, &w0));
            assert!(a2.bruhat_leq(&w, &w));
        }
    }

    #[test]
    fn a2_minimal_coset_reps() {
        let a2 = sys("A2");
        let p = a2.parabolic(&[0]).unwrap();
        let mins = a2.coset_representatives(&p, CosetMode::Minimal, DEFAULT_CAP).unwrap();
        let words: Vec<String> = mins.iter().map(|w| a2.word_string(w)).collect();
        assert_eq!(words, ["e", "s2", "s1s2"]);
    }

    #[test]
    fn coset_reps_at_extremes() {
        let a3 = sys("A3");
        let all = a3.enumerate_group(DEFAULT_CAP).unwrap();
        let b = a3.borel();
        assert_eq!(a3.coset_representatives(&b, CosetMode::Minimal, DEFAULT_CAP).unwrap(), all);
        assert_eq!(a3.coset_representatives(&b, CosetMode::Maximal, DEFAULT_CAP).unwrap(), all);
        let full = a3.parabolic(&[0, 1, 2]).unwrap();
        assert_eq!(
            a3.coset_representatives(&full, CosetMode::Minimal, DEFAULT_CAP).unwrap(),
            vec![a3.identity()]
        );
        assert_eq!(
            a3.coset_representatives(&full, CosetMode::Maximal, DEFAULT_CAP).unwrap(),
            vec![a3.longest_element(None)]
        );
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("e").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_word("1,2,1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("s1s2").unwrap(), vec![0, 1]);
        assert_eq!(parse_word("3").unwrap(), vec![2]);
        assert!(parse_word("0").is_err());
        assert!(parse_word("x").is_err());
        assert_eq!(format_word(&[0, 1]), "s1s2");
    }
}
