//! Torus-equivariant sheaves on affine space.
//!
//! `T` acts on `Aⁿ = Spec k[x₁, …, xₙ]` with weight `λ_i` on the `i`-th
//! coordinate line, so the function `x_i` has weight `−λ_i`. For the
//! coordinate subspace `Aᵐ = V(x_{m+1}, …, xₙ)` with ideal `I` and inclusion
//! `i`, the closed forms are
//!
//! ```text
//! i^*I      ≅ ⊕_{j>m} O(−λ_j)
//! i^!O(μ)   ≅ O(μ + λ_{m+1} + … + λ_n)[m − n]
//! ```
//!
//! Both are recomputed from first principles by [`conormal_oracle`] (monomial
//! bookkeeping of `I/I²`) and [`koszul_oracle`] (cohomology of the dual
//! Koszul complex, weight space by weight space, with exact ranks).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{cell_structure, CellStructure};
use crate::linalg;
use crate::rootsys::{LatticeVector, RootSystem};
use crate::weyl::{Parabolic, WeylElement};

/// Largest number of cut coordinates the oracles accept.
pub const KOSZUL_GUARD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineModel {
    weights: Vec<LatticeVector>,
    cut: usize,
}

impl AffineModel {
    /// `weights` are `λ₁, …, λₙ`; the subspace is the span of the first `cut`
    /// coordinates.
    pub fn new(weights: Vec<LatticeVector>, cut: usize) -> Result<Self> {
        if cut > weights.len() {
            return Err(Error::InvalidModel(format!(
                "cut index {cut} exceeds dimension {}",
                weights.len()
            )));
        }
        if let Some(first) = weights.first() {
            if weights.iter().any(|w| w.rank() != first.rank()) {
                return Err(Error::InvalidModel("weights of different ranks".into()));
            }
        }
        Ok(AffineModel { weights, cut })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn cut(&self) -> usize {
        self.cut
    }

    pub fn weights(&self) -> &[LatticeVector] {
        &self.weights
    }

    /// `λ_{m+1}, …, λ_n`.
    pub fn normal_weights(&self) -> &[LatticeVector] {
        &self.weights[self.cut..]
    }

    fn check_guard(&self) -> Result<()> {
        let cut = self.dim() - self.cut;
        if cut > KOSZUL_GUARD {
            return Err(Error::GuardExceeded {
                cut,
                limit: KOSZUL_GUARD,
            });
        }
        Ok(())
    }

    /// Torus weight of the coordinate function `x_i` (0-based).
    pub fn variable_weight(&self, i: usize) -> LatticeVector {
        -&self.weights[i]
    }

    fn lattice_rank(&self, fallback: &LatticeVector) -> usize {
        self.weights.first().map_or(fallback.rank(), LatticeVector::rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GradedPiece {
    pub homological_degree: i64,
    pub weight: LatticeVector,
    pub dimension: usize,
}

fn sorted(mut v: Vec<LatticeVector>) -> Vec<LatticeVector> {
    v.sort();
    v
}

/// Weights of `i^*I`: `{−λ_{m+1}, …, −λ_n}` with multiplicity, sorted.
pub fn conormal_weights(model: &AffineModel) -> Vec<LatticeVector> {
    sorted(model.normal_weights().iter().map(|l| -l).collect())
}

/// Weight and shift of `i^!O(μ)`.
pub fn shriek_twist(model: &AffineModel, mu: &LatticeVector) -> (LatticeVector, i64) {
    let weight = model.normal_weights().iter().fold(mu.clone(), |acc, l| &acc + l);
    (weight, model.cut as i64 - model.dim() as i64)
}

/// Sum of `−(exponent_j)·λ_{m+j}` over the cut variables: the torus weight of
/// the monomial with the given exponents.
fn monomial_weight(model: &AffineModel, exps: &[i64], zero: &LatticeVector) -> LatticeVector {
    let mut acc = zero.clone();
    for (j, &e) in exps.iter().enumerate() {
        if e != 0 {
            let v = model.variable_weight(model.cut + j);
            debug_assert_eq!(&v + &model.weights[model.cut + j], *zero);
            acc = &acc + &v.scaled(&BigInt::from(e).into());
        }
    }
    acc
}

/// Cohomology of `Hom_R(K_•, R(μ))` where `K_•` is the Koszul resolution of
/// `R/(x_{m+1}, …, x_n)`.
///
/// The complex splits over the multidegree in the cut variables, and
/// `x₁, …, x_m` act freely, so each piece returned is a generator over
/// `k[x₁, …, x_m]`. In multidegree `d ∈ ℤ^{n−m}` the piece in homological
/// degree `p` has basis the `p`-subsets `S` with `d + 1_S ≥ 0`; it depends
/// only on `D = {j : d_j = −1}` (and vanishes if some `d_j < −1`), so the
/// `2^{n−m}` classes `D` cover every multidegree. A class with `D` not the
/// whole set stands for infinitely many multidegrees, so cohomology there
/// would not be finitely generated and is reported as an oracle failure.
pub fn koszul_oracle(model: &AffineModel, mu: &LatticeVector) -> Result<Vec<GradedPiece>> {
    model.check_guard()?;
    let k = model.dim() - model.cut;
    let zero = LatticeVector::zero(model.lattice_rank(mu));
    if mu.rank() != zero.rank() {
        return Err(Error::RankMismatch {
            expected: zero.rank(),
            got: mu.rank(),
        });
    }
    let full = (1usize << k) - 1;

    let mut merged: BTreeMap<(i64, LatticeVector), usize> = BTreeMap::new();
    for class in 0..=full {
        let dims = class_cohomology(k, class)?;
        // representative multidegree: -1 on the class, 0 elsewhere
        let exps: Vec<i64> = (0..k).map(|j| -((class >> j & 1) as i64)).collect();
        let weight = &mu.clone() + &monomial_weight(model, &exps, &zero);
        for (p, dim) in dims.into_iter().enumerate() {
            if dim == 0 {
                continue;
            }
            if class != full {
                return Err(Error::OracleFailure(format!(
                    "nonzero cohomology in degree {p} on the infinite multidegree class {class:#b}"
                )));
            }
            *merged.entry((p as i64, weight.clone())).or_default() += dim;
        }
    }
    Ok(merged
        .into_iter()
        .map(|((homological_degree, weight), dimension)| GradedPiece {
            homological_degree,
            weight,
            dimension,
        })
        .collect())
}

/// Cohomology dimensions of the piece of the dual Koszul complex on `k`
/// variables indexed by `class`.
fn class_cohomology(k: usize, class: usize) -> Result<Vec<usize>> {
    // basis of degree p: subsets containing `class`
    let basis: Vec<Vec<usize>> = (0..=k)
        .map(|p| {
            (0..1usize << k)
                .filter(|s| s.count_ones() as usize == p && s & class == class)
                .collect()
        })
        .collect();
    // δ(e_S) = Σ_{j∉S} (-1)^{#{i∈S : i<j}} e_{S∪j}
    let differential = |p: usize| -> Vec<Vec<BigInt>> {
        let rows = &basis[p + 1];
        let cols = &basis[p];
        rows.iter()
            .map(|&t| {
                cols.iter()
                    .map(|&s| {
                        let diff = t & !s;
                        if s & !t != 0 || diff.count_ones() != 1 {
                            return BigInt::zero();
                        }
                        let j = diff.trailing_zeros();
                        let below = (s & ((1usize << j) - 1)).count_ones();
                        BigInt::from(if below.is_multiple_of(2) { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect()
    };
    let maps: Vec<Vec<Vec<BigInt>>> = (0..k).map(differential).collect();
    for p in 1..maps.len() {
        let composite = linalg::matmul(&maps[p], &maps[p - 1]);
        if composite.iter().flatten().any(|x| !x.is_zero()) {
            return Err(Error::OracleFailure("Koszul differential does not square to zero".into()));
        }
    }
    let ranks: Vec<usize> = maps.iter().map(|m| linalg::rank(m)).collect();
    Ok((0..=k)
        .map(|p| {
            let out = if p < k { ranks[p] } else { 0 };
            let inc = if p > 0 { ranks[p - 1] } else { 0 };
            basis[p].len() - out - inc
        })
        .collect())
}

/// Generator weights of `I/I²` over `k[x₁, …, x_m]`, found by testing
/// membership of every monomial with cut-variable exponents in `{0,1,2}`
/// against the generators of `I` and of `I²`.
pub fn conormal_oracle(model: &AffineModel) -> Result<Vec<LatticeVector>> {
    model.check_guard()?;
    let k = model.dim() - model.cut;
    let rank = model.lattice_rank(&LatticeVector::zero(0));
    let zero = LatticeVector::zero(rank);

    let unit = |j: usize| -> Vec<i64> { (0..k).map(|i| (i == j) as i64).collect() };
    let gens_i: Vec<Vec<i64>> = (0..k).map(unit).collect();
    let gens_i2: Vec<Vec<i64>> = gens_i
        .iter()
        .enumerate()
        .flat_map(|(a, g)| {
            gens_i[a..]
                .iter()
                .map(move |h| g.iter().zip(h).map(|(x, y)| x + y).collect())
        })
        .collect();
    let member = |gens: &[Vec<i64>], m: &[i64]| gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b));

    let mut out = Vec::new();
    let mut exps = vec![0i64; k];
    loop {
        if member(&gens_i, &exps) && !member(&gens_i2, &exps) {
            out.push(monomial_weight(model, &exps, &zero));
        }
        // next exponent vector in {0,1,2}^k
        let mut j = 0;
        while j < k && exps[j] == 2 {
            exps[j] = 0;
            j += 1;
        }
        if j == k {
            break;
        }
        exps[j] += 1;
    }
    Ok(sorted(out))
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusTrial {
    pub n: usize,
    pub m: usize,
    pub weights: Vec<LatticeVector>,
    pub mu: LatticeVector,
    pub expected_shriek: (LatticeVector, i64),
    pub koszul_pieces: Vec<GradedPiece>,
    pub per_degree_dims: BTreeMap<i64, usize>,
    pub expected_conormal: Vec<LatticeVector>,
    pub computed_conormal: Vec<LatticeVector>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// Run both oracles on one model and compare with the closed forms.
pub fn check_model(model: &AffineModel, mu: &LatticeVector) -> Result<TorusTrial> {
    let expected_shriek = shriek_twist(model, mu);
    let koszul_pieces = koszul_oracle(model, mu)?;
    let expected_conormal = conormal_weights(model);
    let computed_conormal = conormal_oracle(model)?;

    let mut per_degree_dims = BTreeMap::new();
    for p in &koszul_pieces {
        *per_degree_dims.entry(p.homological_degree).or_insert(0) += p.dimension;
    }
    let top = (model.dim() - model.cut) as i64;
    let mut failure = None;
    let single = koszul_pieces.len() == 1
        && koszul_pieces[0].homological_degree == top
        && koszul_pieces[0].dimension == 1
        && koszul_pieces[0].weight == expected_shriek.0
        && -koszul_pieces[0].homological_degree == expected_shriek.1;
    if !single {
        failure = Some(format!(
            "Koszul cohomology {:?} differs from a rank-one piece of weight {} in degree {top}",
            per_degree_dims, expected_shriek.0
        ));
    } else if computed_conormal != expected_conormal {
        failure = Some("conormal weights differ".to_string());
    }
    Ok(TorusTrial {
        n: model.dim(),
        m: model.cut,
        weights: model.weights.clone(),
        mu: mu.clone(),
        expected_shriek,
        koszul_pieces,
        per_degree_dims,
        expected_conormal,
        computed_conormal,
        pass: failure.is_none(),
        failure,
    })
}

/// Parameters of a random-model sweep. `None` dimensions are drawn per trial.
#[derive(Debug, Clone, Serialize)]
pub struct TorusSweep {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
    pub lattice_rank: usize,
    pub coord_bound: i64,
}

impl TorusSweep {
    pub fn random(trials: usize, seed: u64) -> Self {
        TorusSweep {
            n: None,
            m: None,
            max_n: 5,
            trials,
            seed,
            lattice_rank: 2,
            coord_bound: 5,
        }
    }

    /// Model and twist for one trial; each trial has its own RNG stream so
    /// results do not depend on scheduling.
    pub fn draw(&self, trial: usize) -> Result<(AffineModel, LatticeVector)> {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        let n = self.n.unwrap_or_else(|| rng.gen_range(0..=self.max_n));
        let m = match self.m {
            Some(m) => m,
            None => rng.gen_range(0..=n),
        };
        let b = self.coord_bound;
        let vec = |rng: &mut ChaCha8Rng| {
            let c: Vec<i64> = (0..self.lattice_rank).map(|_| rng.gen_range(-b..=b)).collect();
            LatticeVector::from_ints(&c)
        };
        let weights = (0..n).map(|_| vec(&mut rng)).collect();
        let mu = vec(&mut rng);
        Ok((AffineModel::new(weights, m)?, mu))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusSweepReport {
    pub trials: usize,
    pub passed: usize,
    pub single_degree_trials: usize,
    pub failures: Vec<TorusTrial>,
}

pub fn run_sweep(sweep: &TorusSweep) -> Result<TorusSweepReport> {
    use rayon::prelude::*;
    if let (Some(n), Some(m)) = (sweep.n, sweep.m) {
        AffineModel::new(vec![LatticeVector::zero(sweep.lattice_rank); n], m)?.check_guard()?;
    }
    let results: Vec<TorusTrial> = (0..sweep.trials)
        .into_par_iter()
        .map(|t| {
            let (model, mu) = sweep.draw(t)?;
            check_model(&model, &mu)
        })
        .collect::<Result<_>>()?;
    let single_degree_trials = results
        .iter()
        .filter(|t| t.per_degree_dims.len() == 1 && t.per_degree_dims.contains_key(&((t.n - t.m) as i64)))
        .count();
    let passed = results.iter().filter(|t| t.pass).count();
    Ok(TorusSweepReport {
        trials: results.len(),
        passed,
        single_degree_trials,
        failures: results.into_iter().filter(|t| !t.pass).collect(),
    })
}

/// Affine model of the open neighbourhood of the Bruhat cell of `wW_L`:
/// the cell coordinates `ψ^L_opp(w)` first, then the normal coordinates
/// `−ψ^L_same(w)`. `T` acts on the root line `g_γ` with weight `γ`.
pub fn model_for_cell(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> Result<AffineModel> {
    let CellStructure {
        cell_roots,
        open_nbhd_extra_roots,
    } = cell_structure(sys, w, p)?;
    let weights = cell_roots
        .iter()
        .chain(&open_nbhd_extra_roots)
        .map(|&i| LatticeVector::from_root(&sys.root(i), sys.rank()))
        .collect();
    AffineModel::new(weights, cell_roots.len())
}

/// Staggered codimension read off the cell model: the codimension plus the
/// cell degree of the twist in `i^!O`, with the shift cancelled.
pub fn scod_via_torus(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> Result<i64> {
    let model = model_for_cell(sys, w, p)?;
    let (weight, shift) = shriek_twist(&model, &LatticeVector::zero(sys.rank()));
    let codim = (model.dim() - model.cut()) as i64;
    if codim + shift != 0 {
        return Err(Error::InvariantViolation("shriek shift does not cancel codimension".into()));
    }
    Ok(codim + crate::invariants::cell_degree(sys, &weight)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_ints(c)
    }

    #[test]
    fn closed_forms_at_the_identity_inclusion() {
        let model = AffineModel::new(vec![lv(&[1, 2]), lv(&[3, -1])], 2).unwrap();
        assert!(conormal_weights(&model).is_empty());
        assert_eq!(shriek_twist(&model, &lv(&[4, 4])), (lv(&[4, 4]), 0));
        assert!(conormal_oracle(&model).unwrap().is_empty());
        let pieces = koszul_oracle(&model, &lv(&[4, 4])).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].homological_degree, 0);
        assert_eq!(pieces[0].weight, lv(&[4, 4]));
    }

    #[test]
    fn single_removed_coordinate() {
        let model = AffineModel::new(vec![lv(&[1, 0]), lv(&[2, 3])], 1).unwrap();
        assert_eq!(conormal_weights(&model), vec![lv(&[-2, -3])]);
        assert_eq!(conormal_oracle(&model).unwrap(), vec![lv(&[-2, -3])]);
    }

    #[test]
    fn rank_one_step() {
        let model = AffineModel::new(vec![lv(&[3])], 0).unwrap();
        assert_eq!(shriek_twist(&model, &lv(&[0])), (lv(&[3]), -1));
        let mu = lv(&[-7]);
        let pieces = koszul_oracle(&model, &mu).unwrap();
        assert_eq!(
            pieces,
            vec![GradedPiece {
                homological_degree: 1,
                weight: lv(&[-4]),
                dimension: 1
            }]
        );
    }

    #[test]
    fn two_generic_coordinates() {
        let model = AffineModel::new(vec![lv(&[1, 0]), lv(&[0, 1])], 0).unwrap();
        let pieces = koszul_oracle(&model, &lv(&[5, 5])).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].homological_degree, 2);
        assert_eq!(pieces[0].weight, lv(&[6, 6]));
        assert_eq!(shriek_twist(&model, &lv(&[5, 5])).0, lv(&[6, 6]));
    }

    #[test]
    fn trivial_torus_action() {
        let model = AffineModel::new(vec![lv(&[0]), lv(&[0])], 0).unwrap();
        let pieces = koszul_oracle(&model, &lv(&[2])).unwrap();
        assert_eq!(
            pieces,
            vec![GradedPiece {
                homological_degree: 2,
                weight: lv(&[2]),
                dimension: 1
            }]
        );
    }

    #[test]
    fn repeated_weights_keep_multiplicity() {
        let w = lv(&[1, -1]);
        let model = AffineModel::new(vec![lv(&[0, 0]), w.clone(), w.clone(), lv(&[2, 2])], 1).unwrap();
        let conormal = conormal_weights(&model);
        assert_eq!(conormal.iter().filter(|x| **x == -&w).count(), 2);
        assert_eq!(conormal_oracle(&model).unwrap(), conormal);
    }

    #[test]
    fn guard_refuses_large_models() {
        let model = AffineModel::new(vec![lv(&[1]); 12], 0).unwrap();
        assert!(matches!(
            koszul_oracle(&model, &lv(&[0])),
            Err(Error::GuardExceeded { cut: 12, limit: 8 })
        ));
        assert!(conormal_oracle(&model).is_err());
        assert!(AffineModel::new(vec![lv(&[1])], 2).is_err());
    }

    #[test]
    fn stepwise_inclusion_matches_one_shot() {
        let sweep = TorusSweep::random(50, 7);
        for t in 0..sweep.trials {
            let (model, mu) = sweep.draw(t).unwrap();
            let mut weight = mu.clone();
            let mut shift = 0;
            // A^m ⊂ A^{m+1} ⊂ … ⊂ A^n, one coordinate at a time
            for k in (model.cut()..model.dim()).rev() {
                let step = AffineModel::new(model.weights()[..=k].to_vec(), k).unwrap();
                let (w, s) = shriek_twist(&step, &weight);
                weight = w;
                shift += s;
            }
            assert_eq!((weight, shift), shriek_twist(&model, &mu));
        }
    }

    #[test]
    fn cell_model_recovers_scod() {
        for name in ["A2", "B3", "G2"] {
            let s = RootSystem::of(name).unwrap();
            for p in s.all_parabolics() {
                for w in s.enumerate_group(crate::weyl::DEFAULT_CAP).unwrap() {
                    let model = model_for_cell(&s, &w, &p).unwrap();
                    let mut ideal: Vec<LatticeVector> = crate::invariants::ideal_restriction_weights(&s, &w, &p)
                        .iter()
                        .map(|r| LatticeVector::from_root(r, s.rank()))
                        .collect();
                    ideal.sort();
                    assert_eq!(conormal_weights(&model), ideal);
                    assert_eq!(
                        scod_via_torus(&s, &w, &p).unwrap(),
                        crate::invariants::scod(&s, &w, &p)
                    );
                }
            }
        }
    }
}
