//! Inversion sets of Weyl group elements and the numbers built from them.
//!
//! For `w ∈ W` and a parabolic `L`:
//!
//! ```text
//! ψ_same(w)   = Φ⁺ ∩ w(Φ⁺)            τ_same   = Σ ψ_same(w)
//! ψ_opp(w)    = Φ⁺ ∩ w(Φ⁻)            τ_opp    = Σ ψ_opp(w)
//! ψ^L_same(w) = Φ⁺ ∩ w(Φ⁺ ∖ Φ_L)      τ^L_same = Σ ψ^L_same(w)
//! ψ^L_opp(w)  = Φ⁺ ∩ w(Φ⁻ ∖ Φ_L)      τ^L_opp  = Σ ψ^L_opp(w)
//! ```
//!
//! The Bruhat cell `BwP/P` is the affine space on `ψ^L_opp(w)`, and its
//! open neighbourhood `B_{ww₀}wP/P` adds the coordinates `−ψ^L_same(w)`.
//! The s-structure on a cell is the integer degree `⟨λ, −2ρ⟩` of a weight,
//! and the staggered codimension of the Schubert variety `X̄_w` is
//! `|Φ⁺| − ℓ(w) + ⟨τ_same(w), 2ρ⟩` for `w` maximal in `wW_L`.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{LatticeVector, RootSystem, RootVec};
use crate::weyl::{Parabolic, WeylElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionProfile {
    pub psi_same: Vec<usize>,
    pub psi_opp: Vec<usize>,
    pub psi_same_l: Vec<usize>,
    pub psi_opp_l: Vec<usize>,
    #[serde(skip)]
    pub tau_same: RootVec,
    #[serde(skip)]
    pub tau_opp: RootVec,
    #[serde(skip)]
    pub tau_same_l: RootVec,
    #[serde(skip)]
    pub tau_opp_l: RootVec,
}

/// Root-index sets of every inversion set of `w`, sorted.
pub fn profile(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> InversionProfile {
    let mut prof = InversionProfile {
        psi_same: Vec::new(),
        psi_opp: Vec::new(),
        psi_same_l: Vec::new(),
        psi_opp_l: Vec::new(),
        tau_same: RootVec::zero(),
        tau_opp: RootVec::zero(),
        tau_same_l: RootVec::zero(),
        tau_opp_l: RootVec::zero(),
    };
    for (idx, beta) in sys.positive_roots().iter().enumerate() {
        let img = w.apply(beta);
        let levi = p.contains_root(idx);
        if img.is_positive() {
            // w(β) ∈ Φ⁺ ∩ w(Φ⁺)
            let j = sys.root_index(&img).expect("image of a root is a root");
            prof.psi_same.push(j);
            prof.tau_same += img;
            if !levi {
                prof.psi_same_l.push(j);
                prof.tau_same_l += img;
            }
        } else {
            // w(-β) ∈ Φ⁺ ∩ w(Φ⁻)
            let pos = -img;
            let j = sys.root_index(&pos).expect("image of a root is a root");
            prof.psi_opp.push(j);
            prof.tau_opp += pos;
            if !levi {
                prof.psi_opp_l.push(j);
                prof.tau_opp_l += pos;
            }
        }
    }
    for s in [
        &mut prof.psi_same,
        &mut prof.psi_opp,
        &mut prof.psi_same_l,
        &mut prof.psi_opp_l,
    ] {
        s.sort_unstable();
    }
    prof
}

/// `(τ_same(w), τ_opp(w))` without materialising the sets.
pub fn tau_pair(w: &WeylElement, sys: &RootSystem) -> (RootVec, RootVec) {
    let mut same = RootVec::zero();
    let mut opp = RootVec::zero();
    for beta in sys.positive_roots() {
        let img = w.apply(beta);
        if img.is_positive() {
            same += img;
        } else {
            opp -= img;
        }
    }
    (same, opp)
}

pub fn tau_same(sys: &RootSystem, w: &WeylElement) -> RootVec {
    tau_pair(w, sys).0
}

pub fn tau_opp(sys: &RootSystem, w: &WeylElement) -> RootVec {
    tau_pair(w, sys).1
}

/// `⟨λ, −2ρ⟩`, the s-structure degree of the twist `O(λ)` on a Bruhat cell.
pub fn cell_degree(sys: &RootSystem, lambda: &LatticeVector) -> Result<i64> {
    let minus_two_rho = LatticeVector::from_root(&(-sys.two_rho()), sys.rank());
    let d = sys.pairing(lambda, &minus_two_rho)?;
    if !d.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "cell degree {d} of {lambda} is not an integer"
        )));
    }
    d.to_integer()
        .to_i64()
        .ok_or_else(|| Error::InvariantViolation("cell degree overflows i64".into()))
}

/// Cell degree of a root-lattice vector.
pub fn cell_degree_root(sys: &RootSystem, lambda: &RootVec) -> i64 {
    -sys.pairing_int(lambda, &sys.two_rho())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellStructure {
    /// `ψ^L_opp(w)`: coordinates of the Bruhat cell.
    pub cell_roots: Vec<usize>,
    /// `−ψ^L_same(w)`: the extra coordinates of the open neighbourhood.
    pub open_nbhd_extra_roots: Vec<usize>,
}

/// Tangent weights of the Bruhat cell of `wW_L` and of its open
/// neighbourhood. Fails if `w(Φ⁻ ∖ Φ_L)` is not the disjoint union of the
/// two root sets.
pub fn cell_structure(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> Result<CellStructure> {
    let prof = profile(sys, w, p);
    let cell_roots = prof.psi_opp_l.clone();
    let mut extra: Vec<usize> = prof.psi_same_l.iter().map(|&i| sys.negate_index(i)).collect();
    extra.sort_unstable();

    let mut image: Vec<usize> = sys
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(i, _)| !p.contains_root(*i))
        .map(|(_, beta)| sys.root_index(&w.apply(&-*beta)).expect("root"))
        .collect();
    image.sort_unstable();
    let mut union: Vec<usize> = cell_roots.iter().chain(&extra).copied().collect();
    union.sort_unstable();
    let disjoint = union.windows(2).all(|p| p[0] != p[1]);
    if !disjoint || union != image {
        return Err(Error::InvariantViolation(format!(
            "w(Φ⁻∖Φ_L) is not −ψ^L_same(w) ⊔ ψ^L_opp(w) for {}",
            sys.word_string(w)
        )));
    }
    Ok(CellStructure {
        cell_roots,
        open_nbhd_extra_roots: extra,
    })
}

/// Weights of `i_w^* I_w` restricted to the Bruhat cell: the roots of
/// `ψ^L_same(w)`. These only depend on the coset `wW_L`.
pub fn ideal_restriction_weights(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> Vec<RootVec> {
    profile(sys, w, p)
        .psi_same_l
        .iter()
        .map(|&i| sys.root(i))
        .collect()
}

/// Staggered codimension of the Schubert variety of `wW_L`, with `w` first
/// replaced by the maximal representative of its coset.
pub fn scod(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> i64 {
    let wmax = sys.max_coset_rep(w, p);
    scod_of_maximal(sys, &wmax)
}

/// `|Φ⁺| − ℓ(w) + ⟨τ_same(w), 2ρ⟩`; `w` must be maximal in its coset.
pub fn scod_of_maximal(sys: &RootSystem, wmax: &WeylElement) -> i64 {
    let t = tau_same(sys, wmax);
    sys.num_positive() as i64 - wmax.length() as i64 + sys.pairing_int(&t, &sys.two_rho())
}

/// `codim X̄_w + ⟨τ^L_same(w), 2ρ⟩`, computed from the inversion sets of
/// `w` itself.
pub fn scod_via_levi(sys: &RootSystem, w: &WeylElement, p: &Parabolic) -> i64 {
    let prof = profile(sys, w, p);
    // dim G/P - dim of the cell
    let dim_gp = sys.num_positive() - p.levi_positive().len();
    let codim = (dim_gp - prof.psi_opp_l.len()) as i64;
    codim + sys.pairing_int(&prof.tau_same_l, &sys.two_rho())
}

/// Both sides of the length-additive difference identity
/// `⟨τ_same(vw), 2ρ⟩ − ⟨τ_same(vsw), 2ρ⟩ = (1 − ⟨α∨, τ_opp(v⁻¹)⟩)·⟨w⁻¹α, 2ρ⟩`
/// for the simple reflection `s = s_i`.
pub fn order_identity_terms(
    sys: &RootSystem,
    v: &WeylElement,
    i: usize,
    w: &WeylElement,
) -> (i64, i64) {
    let two_rho = sys.two_rho();
    let vw = sys.multiply(v, w);
    let vs = sys.mul_simple(v, i);
    let vsw = sys.multiply(&vs, w);
    let lhs = sys.pairing_int(&tau_same(sys, &vw), &two_rho)
        - sys.pairing_int(&tau_same(sys, &vsw), &two_rho);
    let alpha = sys.simple_root(i);
    let opp_vinv = tau_opp(sys, &sys.inverse(v));
    let winv_alpha = sys.inverse(w).apply(&alpha);
    let rhs = (1 - sys.coroot_pairing_int(&alpha, &opp_vinv)) * sys.pairing_int(&winv_alpha, &two_rho);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::DEFAULT_CAP;

    fn sys(name: &str) -> RootSystem {
        RootSystem::of(name).unwrap()
    }

    /// Direct set-builder evaluation of the inversion sets, used as an
    /// oracle: scan Φ⁺ and test membership of `w⁻¹γ`.
    fn brute_profile(s: &RootSystem, w: &WeylElement) -> (Vec<usize>, Vec<usize>) {
        let winv = s.inverse(w);
        let n = s.num_positive();
        let mut same = Vec::new();
        let mut opp = Vec::new();
        for g in 0..n {
            let pre = winv.apply(&s.root(g));
            if pre.is_positive() {
                same.push(g);
            } else {
                opp.push(g);
            }
        }
        (same, opp)
    }

    #[test]
    fn identity_and_longest_profiles() {
        for name in ["A2", "B3", "G2"] {
            let s = sys(name);
            let b = s.borel();
            let all: Vec<usize> = (0..s.num_positive()).collect();
            let e = profile(&s, &s.identity(), &b);
            assert_eq!(e.psi_same, all);
            assert!(e.psi_opp.is_empty());
            assert_eq!(e.tau_same, s.two_rho());
            assert!(e.tau_opp.is_zero());
            let w0 = profile(&s, &s.longest_element(None), &b);
            assert!(w0.psi_same.is_empty());
            assert_eq!(w0.psi_opp, all);
            assert_eq!(w0.tau_opp, s.two_rho());
        }
    }

    #[test]
    fn a2_profile_of_s1() {
        let s = sys("A2");
        let prof = profile(&s, &s.simple_reflection(0), &s.borel());
        let roots = |v: &[usize]| v.iter().map(|&i| s.root(i)).collect::<Vec<_>>();
        assert_eq!(
            roots(&prof.psi_same),
            vec![RootVec::from_slice(&[0, 1]), RootVec::from_slice(&[1, 1])]
        );
        assert_eq!(roots(&prof.psi_opp), vec![RootVec::from_slice(&[1, 0])]);
        assert_eq!(prof.tau_same, RootVec::from_slice(&[1, 2]));
    }

    #[test]
    fn profile_matches_set_builder_oracle() {
        for name in ["A3", "B3", "C3", "G2"] {
            let s = sys(name);
            for w in s.enumerate_group(DEFAULT_CAP).unwrap() {
                let prof = profile(&s, &w, &s.borel());
                let (same, opp) = brute_profile(&s, &w);
                assert_eq!(prof.psi_same, same);
                assert_eq!(prof.psi_opp, opp);
                assert_eq!(prof.psi_opp.len(), w.length());
            }
        }
    }

    #[test]
    fn cell_degrees() {
        let a1 = sys("A1");
        assert_eq!(cell_degree(&a1, &LatticeVector::zero(1)).unwrap(), 0);
        assert_eq!(cell_degree(&a1, &LatticeVector::from_ints(&[1])).unwrap(), -2);
        for name in ["B4", "F4", "G2", "E6"] {
            let s = sys(name);
            for r in s.positive_roots() {
                assert!(cell_degree_root(&s, r) < 0);
                let lv = LatticeVector::from_root(r, s.rank());
                assert_eq!(cell_degree(&s, &lv).unwrap(), cell_degree_root(&s, r));
            }
            for w in s.fundamental_weights() {
                cell_degree(&s, w).unwrap();
            }
        }
    }

    #[test]
    fn cell_structure_examples() {
        let s = sys("A2");
        let b = s.borel();
        let all: Vec<usize> = (0..3).collect();
        let big = cell_structure(&s, &s.longest_element(None), &b).unwrap();
        assert_eq!(big.cell_roots, all);
        assert!(big.open_nbhd_extra_roots.is_empty());
        let point = cell_structure(&s, &s.identity(), &b).unwrap();
        assert!(point.cell_roots.is_empty());
        assert_eq!(point.open_nbhd_extra_roots, vec![3, 4, 5]);
        let c = cell_structure(&s, &s.element_from_word(&[0, 1]), &b).unwrap();
        assert_eq!(c.cell_roots.len(), 2);
    }

    #[test]
    fn ideal_weights_examples() {
        let a1 = sys("A1");
        let b = a1.borel();
        assert!(ideal_restriction_weights(&a1, &a1.longest_element(None), &b).is_empty());
        let wts = ideal_restriction_weights(&a1, &a1.identity(), &b);
        assert_eq!(wts, vec![RootVec::unit(0)]);
        assert_eq!(cell_degree_root(&a1, &wts[0]), -2);
    }

    #[test]
    fn scod_examples() {
        let a1 = sys("A1");
        let b = a1.borel();
        assert_eq!(scod(&a1, &a1.identity(), &b), 3);
        assert_eq!(scod(&a1, &a1.longest_element(None), &b), 0);

        let a2 = sys("A2");
        let b = a2.borel();
        let sc = |w: &[usize]| scod(&a2, &a2.element_from_word(w), &b);
        assert_eq!(sc(&[]), 11);
        assert_eq!(sc(&[0]), 8);
        assert_eq!(sc(&[1]), 8);
        assert_eq!(sc(&[0, 1]), 3);
        assert_eq!(sc(&[1, 0]), 3);
        assert_eq!(sc(&[0, 1, 0]), 0);

        for name in ["B3", "G2", "F4"] {
            let s = sys(name);
            assert_eq!(scod(&s, &s.longest_element(None), &s.borel()), 0);
        }
    }

    #[test]
    fn scod_depends_only_on_coset() {
        let s = sys("B3");
        for p in s.all_parabolics() {
            for w in s.enumerate_group(DEFAULT_CAP).unwrap() {
                let min = s.min_coset_rep(&w, &p);
                assert_eq!(scod(&s, &w, &p), scod(&s, &min, &p));
                assert_eq!(scod(&s, &w, &p), scod_via_levi(&s, &w, &p));
                assert!(scod(&s, &w, &p) >= 0);
            }
        }
    }

    #[test]
    fn a2_order_identity_worked_instance() {
        let s = sys("A2");
        let e = s.identity();
        assert_eq!(order_identity_terms(&s, &e, 0, &e), (2, 2));
    }
}
