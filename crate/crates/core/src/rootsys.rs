//! Finite irreducible root systems built from their Cartan matrices.
//!
//! Vectors are written in the basis of simple roots. Roots and every sum of
//! roots live in the root lattice and are stored as integer [`RootVec`]s;
//! general weights (fundamental weights, torus weights) are exact rational
//! [`LatticeVector`]s.
//!
//! The invariant form is normalised so that short roots have squared length
//! 2. With that choice `⟨2ρ, λ⟩` is an integer for every weight `λ`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest rank handled (E8).
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub fn letter(self) -> char {
        match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        }
    }
}

/// An irreducible Cartan type such as `B3` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub lie_type: LieType,
    pub rank: usize,
}

impl CartanType {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        let ok = match lie_type {
            LieType::A => rank >= 1,
            LieType::B => rank >= 2,
            LieType::C => rank >= 3,
            LieType::D => rank >= 4,
            LieType::E => (6..=8).contains(&rank),
            LieType::F => rank == 4,
            LieType::G => rank == 2,
        };
        if ok && rank <= MAX_RANK {
            Ok(CartanType { lie_type, rank })
        } else {
            Err(Error::InvalidType {
                lie_type: lie_type.letter(),
                rank,
            })
        }
    }

    /// Half the squared length of each simple root (Bourbaki numbering, with
    /// α₁ long in G2).
    fn half_lengths(&self) -> Vec<i64> {
        let n = self.rank;
        match self.lie_type {
            LieType::A | LieType::D | LieType::E => vec![1; n],
            LieType::B => (0..n).map(|i| if i + 1 < n { 2 } else { 1 }).collect(),
            LieType::C => (0..n).map(|i| if i + 1 < n { 1 } else { 2 }).collect(),
            LieType::F => vec![2, 2, 1, 1],
            LieType::G => vec![3, 1],
        }
    }

    /// Edges of the Dynkin diagram, 0-based.
    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.lie_type {
            LieType::A | LieType::B | LieType::C | LieType::F | LieType::G => {
                (0..n - 1).map(|i| (i, i + 1)).collect()
            }
            LieType::D => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
            LieType::E => {
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Cartan matrix with entries `a[i][j] = ⟨α_i∨, α_j⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let d = self.half_lengths();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            // (α_i, α_j) = -max(d_i, d_j) for adjacent simple roots
            let b = -d[i].max(d[j]);
            a[i][j] = b / d[i];
            a[j][i] = b / d[j];
        }
        a
    }

    pub fn weyl_group_order(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        let n = self.rank;
        match self.lie_type {
            LieType::A => fact(n + 1),
            LieType::B | LieType::C => (1u128 << n) * fact(n),
            LieType::D => (1u128 << (n - 1)) * fact(n),
            LieType::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            LieType::F => 1152,
            LieType::G => 12,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.lie_type {
            LieType::A => n * (n + 1) / 2,
            LieType::B | LieType::C => n * n,
            LieType::D => n * (n - 1),
            LieType::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            LieType::F => 24,
            LieType::G => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lie_type.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let lie_type = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => LieType::A,
            Some('B') => LieType::B,
            Some('C') => LieType::C,
            Some('D') => LieType::D,
            Some('E') => LieType::E,
            Some('F') => LieType::F,
            Some('G') => LieType::G,
            _ => return Err(Error::ParseType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        CartanType::new(lie_type, rank)
    }
}

impl Serialize for CartanType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Integer vector in simple-root coordinates. Unused trailing coordinates
/// are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootVec(pub [i64; MAX_RANK]);

impl RootVec {
    pub fn zero() -> Self {
        RootVec([0; MAX_RANK])
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::zero();
        v.0[i] = 1;
        v
    }

    pub fn from_slice(c: &[i64]) -> Self {
        let mut v = Self::zero();
        v.0[..c.len()].copy_from_slice(c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn coords(&self, rank: usize) -> &[i64] {
        &self.0[..rank]
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut v = *self;
        for c in v.0.iter_mut() {
            *c *= k;
        }
        v
    }
}

impl fmt::Debug for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).map_or(1, |p| p + 1);
        f.debug_list().entries(&self.0[..last]).finish()
    }
}

impl Index<usize> for RootVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for RootVec {
    type Output = RootVec;
    fn add(mut self, rhs: RootVec) -> RootVec {
        self += rhs;
        self
    }
}

impl AddAssign for RootVec {
    fn add_assign(&mut self, rhs: RootVec) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a += b;
        }
    }
}

impl Sub for RootVec {
    type Output = RootVec;
    fn sub(mut self, rhs: RootVec) -> RootVec {
        self -= rhs;
        self
    }
}

impl SubAssign for RootVec {
    fn sub_assign(&mut self, rhs: RootVec) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for RootVec {
    type Output = RootVec;
    fn neg(self) -> RootVec {
        self.scaled(-1)
    }
}

impl std::iter::Sum for RootVec {
    fn sum<I: Iterator<Item = RootVec>>(iter: I) -> RootVec {
        iter.fold(RootVec::zero(), |a, b| a + b)
    }
}

/// Exact rational vector in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<BigRational>,
}

impl LatticeVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        LatticeVector { coords }
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector {
            coords: vec![BigRational::zero(); rank],
        }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        LatticeVector {
            coords: c
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn from_root(v: &RootVec, rank: usize) -> Self {
        Self::from_ints(v.coords(rank))
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// The integer vector, if every coordinate is an integer.
    pub fn to_root_vec(&self) -> Option<RootVec> {
        if self.coords.len() > MAX_RANK {
            return None;
        }
        let mut v = RootVec::zero();
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_integer() {
                return None;
            }
            v.0[i] = c.to_integer().to_i64()?;
        }
        Some(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check_rank(&self, other: &LatticeVector) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: other.rank(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.check_rank(other)?;
        Ok(self + other)
    }

    pub fn scaled(&self, k: &BigRational) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in lattice addition");
        LatticeVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in lattice subtraction");
        LatticeVector {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Integers serialise as JSON numbers, fractions as `"p/q"` strings.
impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            match c.is_integer().then(|| c.to_integer().to_i64()).flatten() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

/// A finite irreducible crystallographic root system.
///
/// Roots are indexed canonically: indices `0..N` are the positive roots
/// sorted by height and then by descending coordinates (so index `i < rank`
/// is the simple root `α_{i+1}`), and index `N + i` is the negative of root
/// `i`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    form: Vec<Vec<i64>>,
    roots: Vec<RootVec>,
    index: HashMap<RootVec, usize>,
    two_rho: RootVec,
    fundamental_weights: Vec<LatticeVector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystemDescription {
    pub lie_type: LieType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizers: Vec<i64>,
    pub positive_roots: Vec<Vec<i64>>,
    pub roots: Vec<Vec<i64>>,
}

/// Smallest positive integers `d` with `d_i a_ij = d_j a_ji`.
fn minimal_symmetrizers(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    d[0] = Some(BigRational::from_integer(1.into()));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i == j || cartan[i][j] == 0 {
                continue;
            }
            let dj = d[i].clone().unwrap()
                * BigRational::new(cartan[i][j].into(), cartan[j][i].into());
            match &d[j] {
                Some(existing) if *existing != dj => {
                    return Err(Error::InvariantViolation(
                        "Cartan matrix is not symmetrizable".into(),
                    ))
                }
                Some(_) => {}
                None => {
                    d[j] = Some(dj);
                    queue.push_back(j);
                }
            }
        }
    }
    let d: Vec<BigRational> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::InvariantViolation("Dynkin diagram is disconnected".into())))
        .collect::<Result<_>>()?;
    let lcm = d.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = d.iter().map(|x| (x * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.iter().map(|x| (x / &gcd).to_i64().unwrap()).collect())
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        Self::from_cartan(cartan_type, cartan_type.cartan_matrix())
    }

    /// Parse a type string such as `"F4"` and build the system.
    pub fn of(name: &str) -> Result<Self> {
        Self::new(name.parse()?)
    }

    pub fn from_cartan(cartan_type: CartanType, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan_type.rank;
        if cartan.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::RankMismatch {
                expected: n,
                got: cartan.len(),
            });
        }
        let symmetrizers = minimal_symmetrizers(&cartan)?;
        let form: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| symmetrizers[i] * cartan[i][j]).collect())
            .collect();
        for i in 0..n {
            for j in 0..n {
                if form[i][j] != form[j][i] {
                    return Err(Error::InvariantViolation("form matrix is not symmetric".into()));
                }
            }
        }
        if symmetrizers.iter().min() != Some(&1) {
            return Err(Error::InvariantViolation(
                "short simple roots must have squared length 2".into(),
            ));
        }

        // closure of the simple roots under the simple reflections
        let mut seen: HashMap<RootVec, ()> = HashMap::new();
        let mut queue: VecDeque<RootVec> = (0..n).map(RootVec::unit).collect();
        for r in &queue {
            seen.insert(*r, ());
        }
        while let Some(r) = queue.pop_front() {
            for (i, row) in cartan.iter().enumerate() {
                let c: i64 = (0..n).map(|j| row[j] * r[j]).sum();
                let mut img = r;
                img.0[i] -= c;
                if seen.insert(img, ()).is_none() {
                    queue.push_back(img);
                }
            }
        }
        let mut positives: Vec<RootVec> = seen.keys().copied().filter(RootVec::is_positive).collect();
        positives.sort_by_key(|r| (r.height(), std::cmp::Reverse(*r)));
        if positives.len() * 2 != seen.len()
            || seen.keys().any(|r| !r.is_positive() && !r.is_negative())
        {
            return Err(Error::InvariantViolation("root closure is not sign coherent".into()));
        }
        let mut roots = positives.clone();
        roots.extend(positives.iter().map(|r| -*r));
        let index = roots.iter().enumerate().map(|(i, r)| (*r, i)).collect();
        let two_rho = positives.iter().copied().sum();

        let inv = linalg::inverse(&cartan)
            .ok_or_else(|| Error::InvariantViolation("singular Cartan matrix".into()))?;
        // ω_i = Σ_k (C⁻¹)_{k i} α_k
        let fundamental_weights = (0..n)
            .map(|i| LatticeVector::new((0..n).map(|k| inv[k][i].clone()).collect()))
            .collect();

        let sys = RootSystem {
            cartan_type,
            cartan,
            symmetrizers,
            form,
            roots,
            index,
            two_rho,
            fundamental_weights,
        };
        sys.check_integrality()?;
        Ok(sys)
    }

    fn check_integrality(&self) -> Result<()> {
        let two_rho = LatticeVector::from_root(&self.two_rho, self.rank());
        for (i, w) in self.fundamental_weights.iter().enumerate() {
            let p = self.pairing(&two_rho, w)?;
            if !p.is_integer() {
                return Err(Error::InvariantViolation(format!(
                    "<2rho, omega_{}> = {p} is not an integer",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn name(&self) -> String {
        self.cartan_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    /// Gram matrix of the simple roots, `diag(d)·C`.
    pub fn form_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.roots[..self.num_positive()]
    }

    pub fn root(&self, idx: usize) -> RootVec {
        self.roots[idx]
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        RootVec::unit(i)
    }

    pub fn root_index(&self, v: &RootVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Index of the negated root.
    pub fn negate_index(&self, idx: usize) -> usize {
        let n = self.num_positive();
        if idx < n {
            idx + n
        } else {
            idx - n
        }
    }

    pub fn is_positive_index(&self, idx: usize) -> bool {
        idx < self.num_positive()
    }

    pub fn two_rho(&self) -> RootVec {
        self.two_rho
    }

    pub fn fundamental_weights(&self) -> &[LatticeVector] {
        &self.fundamental_weights
    }

    /// `⟨x, y⟩` on root-lattice vectors.
    pub fn pairing_int(&self, x: &RootVec, y: &RootVec) -> i64 {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let row = &self.form[i];
            let s: i64 = (0..n).map(|j| row[j] * y[j]).sum();
            acc += x[i] * s;
        }
        acc
    }

    pub fn pairing(&self, x: &LatticeVector, y: &LatticeVector) -> Result<BigRational> {
        let n = self.rank();
        for v in [x, y] {
            if v.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    got: v.rank(),
                });
            }
        }
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x.coords[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.form[i][j] != 0 {
                    acc += &x.coords[i] * &y.coords[j] * BigInt::from(self.form[i][j]);
                }
            }
        }
        Ok(acc)
    }

    /// `⟨α∨, x⟩ = 2⟨α, x⟩ / ⟨α, α⟩`.
    pub fn coroot_pairing(&self, alpha: &RootVec, x: &LatticeVector) -> Result<BigRational> {
        let norm = self.pairing_int(alpha, alpha);
        if norm == 0 {
            return Err(Error::InvariantViolation("zero-length root".into()));
        }
        let a = LatticeVector::from_root(alpha, self.rank());
        Ok(self.pairing(&a, x)? * BigRational::new(2.into(), norm.into()))
    }

    /// `⟨α∨, x⟩` for root-lattice `x`; always an integer.
    pub fn coroot_pairing_int(&self, alpha: &RootVec, x: &RootVec) -> i64 {
        let norm = self.pairing_int(alpha, alpha);
        let num = 2 * self.pairing_int(alpha, x);
        assert!(norm != 0 && num % norm == 0, "coroot pairing is not integral");
        num / norm
    }

    /// Coordinates `⟨α_j∨, x⟩` of `x` in the fundamental-weight basis.
    pub fn to_weight_coords(&self, x: &LatticeVector) -> Vec<BigRational> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| &x.coords[k] * BigInt::from(self.cartan[j][k]))
                    .sum()
            })
            .collect()
    }

    pub fn from_weight_coords(&self, c: &[BigRational]) -> LatticeVector {
        let n = self.rank();
        let mut out = LatticeVector::zero(n);
        for (ci, w) in c.iter().zip(&self.fundamental_weights) {
            out = &out + &w.scaled(ci);
        }
        out
    }

    /// Weight with the given integer fundamental-weight coordinates.
    pub fn weight(&self, c: &[i64]) -> LatticeVector {
        let q: Vec<BigRational> = c.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        self.from_weight_coords(&q)
    }

    pub fn describe(&self) -> RootSystemDescription {
        let n = self.rank();
        let list = |rs: &[RootVec]| rs.iter().map(|r| r.coords(n).to_vec()).collect();
        RootSystemDescription {
            lie_type: self.cartan_type.lie_type,
            rank: n,
            cartan: self.cartan.clone(),
            symmetrizers: self.symmetrizers.clone(),
            positive_roots: list(self.positive_roots()),
            roots: list(&self.roots),
        }
    }

    /// Text rendering of the Dynkin diagram with 1-based node numbers.
    pub fn diagram(&self) -> String {
        let n = self.rank();
        let mut out = format!("{} Dynkin diagram\n", self.name());
        for i in 0..n {
            let kind = if self.symmetrizers[i] == 1 { "short" } else { "long" };
            let kind = if self.symmetrizers.iter().all(|&d| d == 1) { "" } else { kind };
            out.push_str(&format!(
                "  node {}: alpha_{} |alpha|^2={} {}\n",
                i + 1,
                i + 1,
                2 * self.symmetrizers[i],
                kind
            ));
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.cartan[i][j] != 0 {
                    let bond = self.cartan[i][j] * self.cartan[j][i];
                    let edge = match bond {
                        1 => "---",
                        2 => "===",
                        _ => "≡≡≡",
                    };
                    out.push_str(&format!("  {} {} {}\n", i + 1, edge, j + 1));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn invalid_types_are_rejected() {
        for bad in ["B1", "C2", "D3", "E5", "E9", "F3", "G3", "A0", "X2", "A", ""] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
        assert_eq!("g2".parse::<CartanType>().unwrap().to_string(), "G2");
    }

    #[test]
    fn rank_one() {
        let a1 = RootSystem::of("A1").unwrap();
        assert_eq!(a1.roots().len(), 2);
        assert_eq!(a1.num_positive(), 1);
        assert_eq!(a1.two_rho(), RootVec::unit(0));
    }

    #[test]
    fn root_counts_match_classical_values() {
        for name in [
            "A1", "A2", "A3", "A4", "A7", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "E7",
            "E8", "F4", "G2",
        ] {
            let sys = RootSystem::of(name).unwrap();
            let t = sys.cartan_type();
            assert_eq!(sys.num_positive(), t.positive_root_count(), "{name}");
            assert_eq!(sys.roots().len(), 2 * t.positive_root_count(), "{name}");
        }
        assert_eq!(RootSystem::of("G2").unwrap().roots().len(), 12);
        assert_eq!(RootSystem::of("F4").unwrap().roots().len(), 48);
    }

    #[test]
    fn simple_roots_come_first() {
        let sys = RootSystem::of("E6").unwrap();
        for i in 0..6 {
            assert_eq!(sys.root(i), RootVec::unit(i));
        }
    }

    #[test]
    fn g2_labels_first_root_long() {
        let g2 = RootSystem::of("G2").unwrap();
        assert_eq!(g2.symmetrizers(), &[3, 1]);
        let (a, b) = (g2.simple_root(0), g2.simple_root(1));
        assert_eq!(g2.pairing_int(&a, &a), 6);
        assert_eq!(g2.pairing_int(&b, &b), 2);
        assert_eq!(g2.coroot_pairing_int(&a, &b) * g2.coroot_pairing_int(&b, &a), 3);
    }

    #[test]
    fn pairing_examples() {
        let a2 = RootSystem::of("A2").unwrap();
        let (a1, a2v) = (a2.simple_root(0), a2.simple_root(1));
        assert_eq!(a2.pairing_int(&a1, &a1), 2);
        assert_eq!(a2.pairing_int(&a1, &a2v), -1);
        assert_eq!(a2.coroot_pairing_int(&a1, &a2v), -1);
        let x = LatticeVector::from_root(&a2v, 2);
        assert_eq!(a2.coroot_pairing(&a1, &x).unwrap(), r(-1, 1));
        assert!(a2.pairing(&x, &LatticeVector::zero(3)).is_err());
    }

    #[test]
    fn fundamental_weights_of_a2() {
        let a2 = RootSystem::of("A2").unwrap();
        let w = a2.fundamental_weights();
        assert_eq!(w[0].coords(), &[r(2, 3), r(1, 3)]);
        assert_eq!(a2.to_weight_coords(&w[1]), vec![r(0, 1), r(1, 1)]);
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        for name in ["A4", "B4", "C4", "D4", "F4", "G2", "E6", "E8"] {
            let sys = RootSystem::of(name).unwrap();
            for i in 0..sys.rank() {
                let a = sys.simple_root(i);
                assert_eq!(sys.pairing_int(&sys.two_rho(), &a), sys.pairing_int(&a, &a));
                assert_eq!(sys.coroot_pairing_int(&a, &sys.two_rho()), 2);
            }
        }
    }

    #[test]
    fn description_serialises() {
        let g2 = RootSystem::of("G2").unwrap();
        let json = serde_json::to_value(g2.describe()).unwrap();
        assert_eq!(json["lie_type"], "G");
        assert_eq!(json["roots"].as_array().unwrap().len(), 12);
        assert_eq!(json["cartan"], serde_json::json!([[2, -1], [-3, 2]]));
    }
}
