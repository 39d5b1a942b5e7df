//! Root data, Weyl groups and dominance for the small-rank types used by the
//! catalog.
//!
//! Weights are integer vectors in a fixed coordinate system on the character
//! lattice. For the semisimple types (A1, A2, C2) these are fundamental-weight
//! coordinates, so the simple coroots are the standard basis vectors. The
//! reductive K-types (a rank-one torus, GL2) use their natural coordinates.
//! Every pairing is a dot product of a weight with a coroot vector.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn pair(&self, coroot: &[i64]) -> i64 {
        self.0.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// l1 norm of the coordinate vector; used for every weight bound `B`.
    pub fn norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn to_rational(&self) -> RationalWeight {
        RationalWeight(
            self.0
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A point of the real span of the weight lattice, with exact rational
/// coordinates in the same basis as [`Weight`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RationalWeight(pub Vec<BigRational>);

impl RationalWeight {
    pub fn zero(rank: usize) -> Self {
        RationalWeight(vec![BigRational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn pair(&self, coroot: &[i64]) -> BigRational {
        self.0
            .iter()
            .zip(coroot)
            .fold(BigRational::zero(), |acc, (a, &b)| {
                acc + a * BigRational::from_integer(b.into())
            })
    }

    pub fn dot(&self, x: &[BigRational]) -> BigRational {
        self.0
            .iter()
            .zip(x)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &RationalWeight) -> RationalWeight {
        RationalWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RationalWeight) -> RationalWeight {
        RationalWeight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigRational) -> RationalWeight {
        RationalWeight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn half(&self) -> RationalWeight {
        self.scale(&BigRational::new(1.into(), 2.into()))
    }

    /// The integral weight with these coordinates, if there is one.
    pub fn to_integral(&self) -> Option<Weight> {
        self.0
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i64::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for RationalWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A1,
    A2,
    C2,
    /// One-dimensional torus (no roots).
    T1,
    /// GL(2) in the coordinates (e1, e2) of its diagonal torus.
    GL2,
}

impl TypeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeLabel::A1 => "A1",
            TypeLabel::A2 => "A2",
            TypeLabel::C2 => "C2",
            TypeLabel::T1 => "T1",
            TypeLabel::GL2 => "GL2",
        }
    }
}

impl FromStr for TypeLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A1" => Ok(TypeLabel::A1),
            "A2" => Ok(TypeLabel::A2),
            "C2" => Ok(TypeLabel::C2),
            "T1" => Ok(TypeLabel::T1),
            "GL2" => Ok(TypeLabel::GL2),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Square integer matrix acting on weight coordinates (row-major).
pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// Reduced word in 1-based simple reflection indices, leftmost factor first.
    pub word: Vec<usize>,
    pub matrix: IntMatrix,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(self.matrix.iter().map(|row| w.pair(row)).collect())
    }

    pub fn apply_rational(&self, w: &RationalWeight) -> RationalWeight {
        RationalWeight(self.matrix.iter().map(|row| w.pair(row)).collect())
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    label: TypeLabel,
    rank: usize,
    cartan_matrix: IntMatrix,
    simple_roots: Vec<Weight>,
    simple_coroots: Vec<Vec<i64>>,
    fundamental_weights: Vec<Weight>,
    two_rho: Weight,
    positive_roots: Vec<Weight>,
    positive_coroots: Vec<Vec<i64>>,
    invariant_degrees: Vec<u32>,
    weyl: Vec<WeylElement>,
}

/// Builds the root datum named by `label` ("A1", "A2", "C2", "T1", "GL2").
pub fn build_root_datum(label: &str) -> Result<RootDatum> {
    Ok(RootDatum::new(label.parse()?))
}

impl RootDatum {
    pub fn new(label: TypeLabel) -> Self {
        let w = |v: &[i64]| Weight(v.to_vec());
        let (rank, simple_roots, simple_coroots, fundamental_weights, invariant_degrees) =
            match label {
                TypeLabel::A1 => (1, vec![w(&[2])], vec![vec![1]], vec![w(&[1])], vec![2]),
                TypeLabel::A2 => (
                    2,
                    vec![w(&[2, -1]), w(&[-1, 2])],
                    vec![vec![1, 0], vec![0, 1]],
                    vec![w(&[1, 0]), w(&[0, 1])],
                    vec![2, 3],
                ),
                // alpha_1 short, alpha_2 long
                TypeLabel::C2 => (
                    2,
                    vec![w(&[2, -1]), w(&[-2, 2])],
                    vec![vec![1, 0], vec![0, 1]],
                    vec![w(&[1, 0]), w(&[0, 1])],
                    vec![2, 4],
                ),
                TypeLabel::T1 => (1, vec![], vec![], vec![], vec![1]),
                TypeLabel::GL2 => (
                    2,
                    vec![w(&[1, -1])],
                    vec![vec![1, -1]],
                    vec![w(&[1, 0])],
                    vec![1, 2],
                ),
            };
        let cartan_matrix = simple_coroots
            .iter()
            .map(|cv| simple_roots.iter().map(|a| a.pair(cv)).collect())
            .collect();

        let (positive_roots, positive_coroots) =
            close_positive_roots(&simple_roots, &simple_coroots);
        let two_rho = positive_roots
            .iter()
            .fold(Weight::zero(rank), |acc, a| acc.add(a));

        let mut rd = RootDatum {
            label,
            rank,
            cartan_matrix,
            simple_roots,
            simple_coroots,
            fundamental_weights,
            two_rho,
            positive_roots,
            positive_coroots,
            invariant_degrees,
            weyl: Vec::new(),
        };
        rd.weyl = rd.generate_weyl_group();
        rd
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan_matrix
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn invariant_degrees(&self) -> &[u32] {
        &self.invariant_degrees
    }

    /// Twice the half-sum of positive roots; always integral.
    pub fn two_rho(&self) -> &Weight {
        &self.two_rho
    }

    /// The half-sum of positive roots, when it is integral in these
    /// coordinates (always for the semisimple types).
    pub fn rho(&self) -> Option<Weight> {
        if self.two_rho.0.iter().all(|c| c % 2 == 0) {
            Some(Weight(self.two_rho.0.iter().map(|c| c / 2).collect()))
        } else {
            None
        }
    }

    pub fn rho_rational(&self) -> RationalWeight {
        self.two_rho.to_rational().half()
    }

    /// Dimension of the Lie algebra.
    pub fn dimension(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn identity(&self) -> &WeylElement {
        &self.weyl[0]
    }

    pub fn longest_element(&self) -> &WeylElement {
        self.weyl
            .iter()
            .max_by_key(|w| w.length())
            .expect("Weyl group is never empty")
    }

    /// Simple reflection s_i, 1-based.
    pub fn reflect(&self, i: usize, w: &Weight) -> Result<Weight> {
        let k = self.check_index(i)?;
        let c = w.pair(&self.simple_coroots[k]);
        Ok(w.sub(&self.simple_roots[k].scale(c)))
    }

    pub fn reflect_rational(&self, i: usize, w: &RationalWeight) -> Result<RationalWeight> {
        let k = self.check_index(i)?;
        let c = w.pair(&self.simple_coroots[k]);
        Ok(w.sub(&self.simple_roots[k].to_rational().scale(&c)))
    }

    fn check_index(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.semisimple_rank() {
            return Err(Error::BadIndex {
                index: i,
                rank: self.semisimple_rank(),
            });
        }
        Ok(i - 1)
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.simple_coroots.iter().all(|cv| w.pair(cv) >= 0)
    }

    pub fn is_dominant_rational(&self, w: &RationalWeight) -> bool {
        self.simple_coroots
            .iter()
            .all(|cv| !w.pair(cv).is_negative())
    }

    /// Strictly dominant: off every wall.
    pub fn is_regular_dominant(&self, w: &Weight) -> bool {
        self.simple_coroots.iter().all(|cv| w.pair(cv) > 0)
    }

    /// Returns `(dominant, w)` with `w.apply(input) == dominant`.
    pub fn dominant_representative(&self, w: &Weight) -> (Weight, WeylElement) {
        let mut cur = w.clone();
        let mut applied = Vec::new();
        while let Some(k) = self.simple_coroots.iter().position(|cv| cur.pair(cv) < 0) {
            let c = cur.pair(&self.simple_coroots[k]);
            cur = cur.sub(&self.simple_roots[k].scale(c));
            applied.push(k);
        }
        let elt = self.element_from_applied(&applied);
        (cur, elt)
    }

    pub fn dominant_representative_rational(
        &self,
        w: &RationalWeight,
    ) -> (RationalWeight, WeylElement) {
        let mut cur = w.clone();
        let mut applied = Vec::new();
        while let Some(k) = self
            .simple_coroots
            .iter()
            .position(|cv| cur.pair(cv).is_negative())
        {
            let c = cur.pair(&self.simple_coroots[k]);
            cur = cur.sub(&self.simple_roots[k].to_rational().scale(&c));
            applied.push(k);
        }
        let elt = self.element_from_applied(&applied);
        (cur, elt)
    }

    /// Dominant representative plus the parity of the reflections used, without
    /// materializing the group element. Hot path for Weyl alternation.
    pub(crate) fn dominate_in_place(&self, v: &mut [i64]) -> i64 {
        let mut sign = 1;
        loop {
            let mut moved = false;
            for (a, cv) in self.simple_roots.iter().zip(&self.simple_coroots) {
                let c: i64 = v.iter().zip(cv).map(|(x, y)| x * y).sum();
                if c < 0 {
                    for (x, y) in v.iter_mut().zip(&a.0) {
                        *x -= c * y;
                    }
                    sign = -sign;
                    moved = true;
                }
            }
            if !moved {
                return sign;
            }
        }
    }

    fn element_from_applied(&self, applied: &[usize]) -> WeylElement {
        // applied = [i1, i2, ...] means w = ... s_{i2} s_{i1}
        let mut m = identity_matrix(self.rank);
        for &k in applied {
            m = mat_mul(&self.reflection_matrix(k), &m);
        }
        self.weyl
            .iter()
            .find(|e| e.matrix == m)
            .cloned()
            .expect("product of simple reflections lies in the materialized Weyl group")
    }

    /// True iff `v` lies in the W-orbit of `u`, by full orbit enumeration.
    pub fn same_w_orbit(&self, u: &RationalWeight, v: &RationalWeight) -> bool {
        self.weyl.iter().any(|w| &w.apply_rational(u) == v)
    }

    /// Distinct elements of the W-orbit of `w`, sorted.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let set: BTreeSet<Weight> = self.weyl.iter().map(|e| e.apply(w)).collect();
        set.into_iter().collect()
    }

    /// W-invariant symmetric form sum over positive coroots of <x,a^v><y,a^v>.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.positive_coroots
            .iter()
            .map(|cv| {
                let a: i64 = x.iter().zip(cv).map(|(p, q)| p * q).sum();
                let b: i64 = y.iter().zip(cv).map(|(p, q)| p * q).sum();
                a * b
            })
            .sum()
    }

    fn reflection_matrix(&self, k: usize) -> IntMatrix {
        let a = &self.simple_roots[k].0;
        let cv = &self.simple_coroots[k];
        (0..self.rank)
            .map(|r| {
                (0..self.rank)
                    .map(|c| i64::from(r == c) - a[r] * cv[c])
                    .collect()
            })
            .collect()
    }

    fn generate_weyl_group(&self) -> Vec<WeylElement> {
        let id = WeylElement {
            word: vec![],
            matrix: identity_matrix(self.rank),
        };
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(cur) = queue.pop_front() {
            for k in 0..self.semisimple_rank() {
                let m = mat_mul(&self.reflection_matrix(k), &cur.matrix);
                if elements.iter().all(|e| e.matrix != m) {
                    let mut word = vec![k + 1];
                    word.extend(&cur.word);
                    let e = WeylElement { word, matrix: m };
                    elements.push(e.clone());
                    queue.push_back(e);
                }
            }
        }
        elements
    }
}

/// Positive roots and their coroots, by closing the simple roots under the
/// simple reflections (s_i permutes the positive roots other than alpha_i).
fn close_positive_roots(
    simple_roots: &[Weight],
    simple_coroots: &[Vec<i64>],
) -> (Vec<Weight>, Vec<Vec<i64>>) {
    let mut roots: Vec<(Weight, Vec<i64>)> = simple_roots
        .iter()
        .cloned()
        .zip(simple_coroots.iter().cloned())
        .collect();
    let mut i = 0;
    while i < roots.len() {
        let (beta, beta_v) = roots[i].clone();
        for (a, av) in simple_roots.iter().zip(simple_coroots) {
            if &beta == a {
                continue;
            }
            let c = beta.pair(av);
            let new_root = beta.sub(&a.scale(c));
            let d = a.pair(&beta_v);
            let new_coroot: Vec<i64> = beta_v.iter().zip(av).map(|(x, y)| x - d * y).collect();
            if roots.iter().all(|(r, _)| r != &new_root) {
                roots.push((new_root, new_coroot));
            }
        }
        i += 1;
    }
    roots.into_iter().unzip()
}

pub(crate) fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect()
}

pub(crate) fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n)
        .map(|r| {
            (0..m)
                .map(|c| (0..b.len()).map(|k| a[r][k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}
