//! Closure order on Schubert varieties of `G/P`, staggered codimension gaps,
//! perversities and K-theory basis labels.
//!
//! A perversity `p` is accepted when, for every pair of orbits `v < w` in
//! the closure order, `0 < p(X̄_v) − p(X̄_w) < scod(X̄_v) − scod(X̄_w)`: both
//! `p` and `scod − p` increase strictly going down. When every cover has a
//! codimension gap of at least 2, `p = ⌊scod/2⌋` satisfies this.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::error::Result;
use crate::invariants::{scod_of_maximal, tau_same};
use crate::rootsys::{LatticeVector, RootSystem};
use crate::weyl::{format_word, Parabolic, WeylElement};

/// Above this many nodes, comparable pairs are not materialised and checks
/// run on covers only (sufficient, since gaps add along chains).
pub const FULL_PAIR_LIMIT: usize = 4096;

/// A Hasse diagram decorated with staggered codimensions. Node indices form a
/// linear extension: every cover `(lower, upper)` has `lower < upper`.
#[derive(Debug, Clone, Serialize)]
pub struct ScodGraph {
    pub labels: Vec<String>,
    pub covers: Vec<(usize, usize)>,
    pub scod: Vec<i64>,
}

/// Fixed-width bitset, one per node.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

impl ScodGraph {
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>, scod: Vec<i64>) -> Self {
        assert_eq!(labels.len(), scod.len());
        assert!(
            covers.iter().all(|&(a, b)| a < b && b < labels.len()),
            "covers must go up in node order"
        );
        ScodGraph {
            labels,
            covers,
            scod,
        }
    }

    /// A chain whose `i`-th node (from the bottom) has the given scod.
    pub fn chain(scod: &[i64]) -> Self {
        let labels = (0..scod.len()).map(|i| format!("c{i}")).collect();
        let covers = (1..scod.len()).map(|i| (i - 1, i)).collect();
        Self::new(labels, covers, scod.to_vec())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Down-set of every node (itself included).
    fn down_sets(&self) -> Vec<Bits> {
        let n = self.len();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.covers {
            below[b].push(a);
        }
        let mut sets: Vec<Bits> = Vec::with_capacity(n);
        for (i, lower) in below.iter().enumerate() {
            let mut s = Bits::new(n);
            s.set(i);
            for &a in lower {
                s.union_with(&sets[a]);
            }
            sets.push(s);
        }
        sets
    }

    /// All strictly comparable pairs `(lower, upper)`.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let sets = self.down_sets();
        let mut out = Vec::new();
        for (w, s) in sets.iter().enumerate() {
            for v in 0..w {
                if s.get(v) {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// Whether the cover list is the transitive reduction of its closure.
    pub fn covers_are_reduced(&self) -> bool {
        let sets = self.down_sets();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            below[b].push(a);
        }
        self.covers.iter().all(|&(a, b)| {
            !below[b].iter().any(|&c| c != a && sets[c].get(a))
        })
    }

    fn pairs_to_check(&self) -> (Vec<(usize, usize)>, bool) {
        if self.len() <= FULL_PAIR_LIMIT {
            (self.comparable_pairs(), true)
        } else {
            (self.covers.clone(), false)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapViolation {
    pub lower: String,
    pub upper: String,
    pub lower_scod: i64,
    pub upper_scod: i64,
}

/// Every comparable pair (or every cover, for large posets) whose scod gap
/// is below 2.
pub fn check_codim_gaps(graph: &ScodGraph) -> Vec<GapViolation> {
    let (pairs, _) = graph.pairs_to_check();
    pairs
        .into_iter()
        .filter(|&(v, w)| graph.scod[v] - graph.scod[w] < 2)
        .map(|(v, w)| GapViolation {
            lower: graph.labels[v].clone(),
            upper: graph.labels[w].clone(),
            lower_scod: graph.scod[v],
            upper_scod: graph.scod[w],
        })
        .collect()
}

/// Scod gap of every cover, in cover order.
pub fn cover_gaps(graph: &ScodGraph) -> Vec<i64> {
    graph
        .covers
        .iter()
        .map(|&(v, w)| graph.scod[v] - graph.scod[w])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Perversity {
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerversityError {
    #[error("{} scod gaps below 2", .0.len())]
    GapsTooSmall(Vec<GapViolation>),
    #[error("sandwich 0 < {dp} < {dscod} fails between {lower} and {upper}")]
    Sandwich {
        lower: String,
        upper: String,
        dp: i64,
        dscod: i64,
    },
}

/// `p = ⌊scod/2⌋`, verified against the strict sandwich on every pair
/// checked.
pub fn build_perversity(graph: &ScodGraph) -> std::result::Result<Perversity, PerversityError> {
    let gaps = check_codim_gaps(graph);
    if !gaps.is_empty() {
        return Err(PerversityError::GapsTooSmall(gaps));
    }
    let values: Vec<i64> = graph.scod.iter().map(|s| s.div_euclid(2)).collect();
    let (pairs, _) = graph.pairs_to_check();
    for (v, w) in pairs {
        let dp = values[v] - values[w];
        let dscod = graph.scod[v] - graph.scod[w];
        if !(0 < dp && dp < dscod) {
            return Err(PerversityError::Sandwich {
                lower: graph.labels[v].clone(),
                upper: graph.labels[w].clone(),
                dp,
                dscod,
            });
        }
    }
    Ok(Perversity { values })
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitNode {
    pub min_word: Vec<usize>,
    pub max_word: Vec<usize>,
    /// `ℓ` of the maximal representative.
    pub length: usize,
    pub codim: usize,
    /// `⟨τ^L_same, 2ρ⟩`.
    pub tau_pairing: i64,
    pub scod: i64,
    #[serde(skip)]
    pub min_rep: WeylElement,
    #[serde(skip)]
    pub max_rep: WeylElement,
}

/// Schubert varieties of `G/P` ordered by inclusion, smallest first.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitPoset {
    pub system: String,
    pub parabolic: String,
    pub nodes: Vec<OrbitNode>,
    pub graph: ScodGraph,
}

/// Build the orbit poset. Covers come from the subword property: the
/// elements covered by `w` in `W^L` are the single-letter deletions of a
/// reduced word of `w` that stay in `W^L` and have length `ℓ(w) − 1`.
pub fn build_orbit_poset(sys: &RootSystem, p: &Parabolic, cap: usize) -> Result<OrbitPoset> {
    let mins = sys.minimal_coset_reps(p, cap)?;
    let index: HashMap<&WeylElement, usize> = mins.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n_pos = sys.num_positive();
    let two_rho = sys.two_rho();

    let mut nodes = Vec::with_capacity(mins.len());
    let mut covers = BTreeSet::new();
    for (wi, w) in mins.iter().enumerate() {
        let word = sys.reduced_word(w);
        let k = word.len();
        // prefix[i] = s_{word[0]} … s_{word[i-1]}
        let mut prefix = vec![sys.identity()];
        for &l in &word {
            prefix.push(sys.mul_simple(prefix.last().unwrap(), l));
        }
        let mut suffix = sys.identity();
        for pos in (0..k).rev() {
            let x = sys.multiply(&prefix[pos], &suffix);
            if x.length() + 1 == k {
                if let Some(&xi) = index.get(&x) {
                    covers.insert((xi, wi));
                }
            }
            suffix = sys.simple_mul(word[pos], &suffix);
        }

        let max = sys.multiply(w, p.longest());
        let tau_pairing = sys.pairing_int(&tau_same(sys, &max), &two_rho);
        nodes.push(OrbitNode {
            min_word: word,
            max_word: sys.reduced_word(&max),
            length: max.length(),
            codim: n_pos - max.length(),
            tau_pairing,
            scod: scod_of_maximal(sys, &max),
            min_rep: w.clone(),
            max_rep: max,
        });
    }
    let labels = nodes.iter().map(|n| format_word(&n.min_word)).collect();
    let scod = nodes.iter().map(|n| n.scod).collect();
    Ok(OrbitPoset {
        system: sys.name(),
        parabolic: p.label(),
        graph: ScodGraph::new(labels, covers.into_iter().collect(), scod),
        nodes,
    })
}

impl OrbitPoset {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn to_dot(&self, perversity: Option<&Perversity>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{} {}\" {{", self.system, self.parabolic);
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, node) in self.nodes.iter().enumerate() {
            let mut label = format!("{} | scod={}", self.graph.labels[i], node.scod);
            if let Some(p) = perversity {
                let _ = write!(label, " | p={}", p.values[i]);
            }
            let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
        }
        for &(a, b) in &self.graph.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Inclusive per-coordinate bounds on weights, in fundamental-weight
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightBox(pub Vec<(i64, i64)>);

impl WeightBox {
    pub fn uniform(rank: usize, lo: i64, hi: i64) -> Self {
        WeightBox(vec![(lo, hi); rank])
    }

    pub fn size(&self) -> usize {
        self.0
            .iter()
            .map(|&(lo, hi)| if hi >= lo { (hi - lo + 1) as usize } else { 0 })
            .product()
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &(lo, hi) in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (lo..=hi).map(move |c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisLabel {
    pub coset: String,
    pub weight_fundamental: Vec<i64>,
    pub weight: LatticeVector,
}

/// Labels `(X̄_w, λ)` of the simple objects `IC(X̄_w, O(λ))`, one per coset
/// and weight in the box.
pub fn enumerate_basis_labels(sys: &RootSystem, poset: &OrbitPoset, bounds: &WeightBox) -> Vec<BasisLabel> {
    assert_eq!(bounds.0.len(), sys.rank(), "weight box must match the rank");
    let points = bounds.points();
    let mut out = Vec::with_capacity(poset.len() * points.len());
    for label in &poset.graph.labels {
        for pt in &points {
            out.push(BasisLabel {
                coset: label.clone(),
                weight_fundamental: pt.clone(),
                weight: sys.weight(pt),
            });
        }
    }
    out
}
