//! Virtual characters of a connected reductive group in the irreducible basis.
//!
//! Irreducible multiplicities are computed with Freudenthal's recursion;
//! Kostant's partition-function formula is kept alongside as an independent
//! route. Tensor products use the Brauer-Klimyk rule: shift the weights of one
//! factor by the highest weight of the other plus rho and Weyl-alternate.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::pairdata::SymmetricPairData;
use crate::rootdata::{RootDatum, Weight};

/// Weight multiset with signed multiplicities (a formal character).
pub type WeightMultiset = BTreeMap<Weight, i64>;

/// Finite integer combination of irreducible representations, keyed by
/// dominant highest weight. Zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VirtualCharacter {
    terms: BTreeMap<Weight, i64>,
}

pub type VirtualKCharacter = VirtualCharacter;

impl VirtualCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn irreducible(lambda: Weight) -> Self {
        let mut c = Self::zero();
        c.add_term(lambda, 1);
        c
    }

    pub fn trivial(rank: usize) -> Self {
        Self::irreducible(Weight::zero(rank))
    }

    pub fn from_terms<I: IntoIterator<Item = (Weight, i64)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (w, m) in terms {
            c.add_term(w, m);
        }
        c
    }

    pub fn add_term(&mut self, lambda: Weight, mult: i64) {
        if mult == 0 {
            return;
        }
        add_to(&mut self.terms, lambda, mult);
    }

    pub fn get(&self, lambda: &Weight) -> i64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i64> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_actual(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add_term(w.clone(), m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, &m)| (w.clone(), m * k))
                .collect(),
        }
    }

    pub fn dimension(&self, rd: &RootDatum) -> i64 {
        self.terms
            .iter()
            .map(|(w, &m)| m * irr_dimension(rd, w).expect("stored weights are dominant"))
            .sum()
    }

    pub fn to_weights(&self, rd: &RootDatum) -> WeightMultiset {
        let mut out = WeightMultiset::new();
        for (lambda, &c) in &self.terms {
            for (mu, m) in weight_multiset(rd, lambda).expect("stored weights are dominant") {
                add_to(&mut out, mu, c * m);
            }
        }
        out
    }

    /// Irreducible decomposition of a W-invariant weight multiset, via
    /// c_lambda = sum_w sign(w) m(lambda + rho - w rho).
    pub fn from_weights(rd: &RootDatum, m: &WeightMultiset) -> Self {
        let shifts = rho_shifts(rd);
        let mut candidates = std::collections::BTreeSet::new();
        for mu in m.keys() {
            for (s, _) in &shifts {
                let lambda = mu.sub(s);
                if rd.is_dominant(&lambda) {
                    candidates.insert(lambda);
                }
            }
        }
        let mut out = Self::zero();
        for lambda in candidates {
            let c: i64 = shifts
                .iter()
                .map(|(s, sign)| sign * m.get(&lambda.add(s)).copied().unwrap_or(0))
                .sum();
            out.add_term(lambda, c);
        }
        out
    }
}

pub(crate) fn add_to(m: &mut WeightMultiset, w: Weight, k: i64) {
    use std::collections::btree_map::Entry;
    if k == 0 {
        return;
    }
    match m.entry(w) {
        Entry::Vacant(v) => {
            v.insert(k);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += k;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

/// rho - w(rho) for every w, with sign(w).
fn rho_shifts(rd: &RootDatum) -> Vec<(Weight, i64)> {
    let two_rho = rd.two_rho();
    rd.weyl_group()
        .iter()
        .map(|w| {
            let d = two_rho.sub(&w.apply(two_rho));
            (Weight(d.0.iter().map(|c| c / 2).collect()), w.sign())
        })
        .collect()
}

fn require_dominant(rd: &RootDatum, lambda: &Weight) -> Result<()> {
    if rd.is_dominant(lambda) {
        Ok(())
    } else {
        Err(Error::NotDominant(lambda.clone()))
    }
}

/// Weyl dimension formula.
pub fn irr_dimension(rd: &RootDatum, lambda: &Weight) -> Result<i64> {
    require_dominant(rd, lambda)?;
    let shifted = lambda.scale(2).add(rd.two_rho());
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for cv in rd.positive_coroots() {
        num *= shifted.pair(cv) as i128;
        den *= rd.two_rho().pair(cv) as i128;
    }
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as i64)
}

/// Multiplicities of the dominant weights of V(lambda), by Freudenthal's
/// recursion.
pub fn dominant_weight_multiplicities(
    rd: &RootDatum,
    lambda: &Weight,
) -> Result<BTreeMap<Weight, i64>> {
    require_dominant(rd, lambda)?;

    // Dominant weights below lambda are reachable by subtracting positive roots
    // while staying dominant.
    let mut dominant = vec![lambda.clone()];
    let mut seen: std::collections::HashSet<Weight> = dominant.iter().cloned().collect();
    let mut i = 0;
    while i < dominant.len() {
        let mu = dominant[i].clone();
        for a in rd.positive_roots() {
            let nu = mu.sub(a);
            if rd.is_dominant(&nu) && seen.insert(nu.clone()) {
                dominant.push(nu);
            }
        }
        i += 1;
    }

    let norm = |w: &Weight| {
        let v = w.scale(2).add(rd.two_rho());
        rd.form(&v.0, &v.0)
    };
    dominant.sort_by_key(|w| std::cmp::Reverse(norm(w)));

    let top = norm(lambda);
    let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
    mult.insert(lambda.clone(), 1);
    for mu in dominant.iter().skip(1) {
        let mut acc: i64 = 0;
        for a in rd.positive_roots() {
            let mut k = 1;
            loop {
                let nu = mu.add(&a.scale(k));
                let mut d = nu.0.clone();
                rd.dominate_in_place(&mut d);
                let Some(&m) = mult.get(&Weight(d)) else {
                    break;
                };
                acc += rd.form(&nu.0, &a.0) * m;
                k += 1;
            }
        }
        let den = top - norm(mu);
        let num = 8 * acc;
        assert!(
            den > 0 && num % den == 0,
            "Freudenthal step not exact at {mu}"
        );
        let m = num / den;
        if m != 0 {
            mult.insert(mu.clone(), m);
        }
    }
    Ok(mult)
}

/// Full weight multiset of V(lambda).
pub fn weight_multiset(rd: &RootDatum, lambda: &Weight) -> Result<WeightMultiset> {
    let mut out = WeightMultiset::new();
    for (mu, m) in dominant_weight_multiplicities(rd, lambda)? {
        for nu in rd.orbit(&mu) {
            out.insert(nu, m);
        }
    }
    Ok(out)
}

/// dim V(lambda)[mu], by Freudenthal's recursion.
pub fn weight_multiplicity(rd: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<i64> {
    let table = dominant_weight_multiplicities(rd, lambda)?;
    let (d, _) = rd.dominant_representative(mu);
    Ok(table.get(&d).copied().unwrap_or(0))
}

/// dim V(lambda)[mu], by Kostant's multiplicity formula
/// sum_w sign(w) P(w(lambda+rho) - (mu+rho)).
pub fn kostant_multiplicity(rd: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<i64> {
    require_dominant(rd, lambda)?;
    let roots: Vec<Vec<i64>> = rd
        .positive_roots()
        .iter()
        .map(|a| simple_root_coordinates(rd, a).expect("roots lie in the root lattice"))
        .collect();
    let lr = lambda.scale(2).add(rd.two_rho());
    let mr = mu.scale(2).add(rd.two_rho());
    let mut memo = HashMap::new();
    let mut total = 0;
    for w in rd.weyl_group() {
        let diff2 = w.apply(&lr).sub(&mr);
        if diff2.0.iter().any(|c| c % 2 != 0) {
            continue;
        }
        let diff = Weight(diff2.0.iter().map(|c| c / 2).collect());
        if let Some(c) = simple_root_coordinates(rd, &diff) {
            total += w.sign() * partition_count(&roots, &c, 0, &mut memo);
        }
    }
    Ok(total)
}

/// Coordinates of `beta` in the basis of simple roots, if it lies in the root
/// lattice.
pub fn simple_root_coordinates(rd: &RootDatum, beta: &Weight) -> Option<Vec<i64>> {
    let n = rd.semisimple_rank();
    if n == 0 {
        return beta.is_zero().then(Vec::new);
    }
    let a = rd.cartan_matrix();
    let p: Vec<i64> = rd.simple_coroots().iter().map(|cv| beta.pair(cv)).collect();
    let c = crate::linalg::solve_integer_system(a, &p)?;
    let back = rd
        .simple_roots()
        .iter()
        .zip(&c)
        .fold(Weight::zero(rd.rank()), |acc, (r, &k)| acc.add(&r.scale(k)));
    (back == *beta).then_some(c)
}

/// Number of ways to write `target` as a non-negative integer combination of
/// `roots[idx..]` (all given in simple-root coordinates).
fn partition_count(
    roots: &[Vec<i64>],
    target: &[i64],
    idx: usize,
    memo: &mut HashMap<(Vec<i64>, usize), i64>,
) -> i64 {
    if target.iter().any(|&c| c < 0) {
        return 0;
    }
    if idx == roots.len() {
        return i64::from(target.iter().all(|&c| c == 0));
    }
    let key = (target.to_vec(), idx);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut cur = target.to_vec();
    let mut total = 0;
    while cur.iter().all(|&c| c >= 0) {
        total += partition_count(roots, &cur, idx + 1, memo);
        for (c, r) in cur.iter_mut().zip(&roots[idx]) {
            *c -= r;
        }
    }
    memo.insert(key, total);
    total
}

/// V(lambda) tensor a virtual character given by its weight multiset
/// (Brauer-Klimyk).
fn klimyk(
    rd: &RootDatum,
    lambda: &Weight,
    weights: &WeightMultiset,
    coeff: i64,
    out: &mut VirtualCharacter,
) {
    let base = lambda.scale(2).add(rd.two_rho());
    let two_rho = rd.two_rho();
    for (mu, &m) in weights {
        let mut v: Vec<i64> = base.0.iter().zip(&mu.0).map(|(b, x)| b + 2 * x).collect();
        let sign = rd.dominate_in_place(&mut v);
        let v = Weight(v);
        if !rd.is_regular_dominant(&v) {
            continue;
        }
        let hw = Weight(v.sub(two_rho).0.iter().map(|c| c / 2).collect());
        out.add_term(hw, sign * m * coeff);
    }
}

fn multiply_by_weights(
    rd: &RootDatum,
    a: &VirtualCharacter,
    weights: &WeightMultiset,
) -> VirtualCharacter {
    let mut out = VirtualCharacter::zero();
    for (lambda, &c) in a.iter() {
        klimyk(rd, lambda, weights, c, &mut out);
    }
    out
}

pub fn tensor_decompose(
    rd: &RootDatum,
    a: &VirtualCharacter,
    b: &VirtualCharacter,
) -> VirtualCharacter {
    // expand the factor with the smaller weight multiset
    let (wa, wb) = (a.to_weights(rd), b.to_weights(rd));
    if wa.len() < wb.len() {
        multiply_by_weights(rd, b, &wa)
    } else {
        multiply_by_weights(rd, a, &wb)
    }
}

/// Formal product of two weight multisets.
pub fn convolve(a: &WeightMultiset, b: &WeightMultiset) -> WeightMultiset {
    let mut out = WeightMultiset::new();
    for (x, &m) in a {
        for (y, &n) in b {
            add_to(&mut out, x.add(y), m * n);
        }
    }
    out
}

fn scaled_weights(weights: &WeightMultiset, k: i64) -> WeightMultiset {
    let mut out = WeightMultiset::new();
    for (w, &m) in weights {
        add_to(&mut out, w.scale(k), m);
    }
    out
}

/// Adams operation psi^k.
pub fn adams(rd: &RootDatum, ch: &VirtualCharacter, k: u32) -> VirtualCharacter {
    assert!(k >= 1, "Adams operations are indexed from 1");
    VirtualCharacter::from_weights(rd, &scaled_weights(&ch.to_weights(rd), k as i64))
}

fn exact_divide(ch: VirtualCharacter, n: i64) -> VirtualCharacter {
    let terms = ch.terms.into_iter().map(|(w, m)| {
        assert!(m % n == 0, "Newton recursion not exact: {m} / {n} at {w}");
        (w, m / n)
    });
    VirtualCharacter::from_terms(terms)
}

/// Lambda^0 .. Lambda^max of `ch`, by the Newton recursion
/// k Lambda^k = sum_{j=1..k} (-1)^(j-1) psi^j Lambda^(k-j).
pub fn exterior_powers(rd: &RootDatum, ch: &VirtualCharacter, max: usize) -> Vec<VirtualCharacter> {
    newton_powers(rd, ch, max, true)
}

pub fn exterior_power(rd: &RootDatum, ch: &VirtualCharacter, k: usize) -> VirtualCharacter {
    exterior_powers(rd, ch, k)
        .pop()
        .expect("k+1 powers computed")
}

/// S^0 .. S^max of `ch`, by k S^k = sum_{j=1..k} psi^j S^(k-j).
pub fn symmetric_powers(
    rd: &RootDatum,
    ch: &VirtualCharacter,
    max: usize,
) -> Vec<VirtualCharacter> {
    newton_powers(rd, ch, max, false)
}

fn newton_powers(
    rd: &RootDatum,
    ch: &VirtualCharacter,
    max: usize,
    alternating: bool,
) -> Vec<VirtualCharacter> {
    let base = ch.to_weights(rd);
    let psi: Vec<WeightMultiset> = (1..=max as i64).map(|j| scaled_weights(&base, j)).collect();
    let mut powers = vec![VirtualCharacter::trivial(rd.rank())];
    for k in 1..=max {
        let mut acc = VirtualCharacter::zero();
        for j in 1..=k {
            let sign = if alternating && j % 2 == 0 { -1 } else { 1 };
            let term = multiply_by_weights(rd, &powers[k - j], &psi[j - 1]);
            acc = acc.add(&term.scale(sign));
        }
        powers.push(exact_divide(acc, k as i64));
    }
    powers
}

/// Graded character of S(V), truncated at degree `degree`.
pub fn symmetric_algebra_series(
    rd: &RootDatum,
    ch: &VirtualCharacter,
    degree: usize,
) -> GradedVirtualCharacter {
    GradedVirtualCharacter::from_degrees(&symmetric_powers(rd, ch, degree), degree)
}

/// Integer polynomial in q, lowest degree first, no trailing zeros.
pub type QPoly = Vec<i64>;

fn trim(p: &mut QPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Map from dominant weight to a polynomial in q, truncated at a fixed degree:
/// all coefficients in degrees `0..=truncation` are exact, nothing above is
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVirtualCharacter {
    terms: BTreeMap<Weight, QPoly>,
    truncation: usize,
}

impl GradedVirtualCharacter {
    pub fn zero(truncation: usize) -> Self {
        Self {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    /// `pieces[n]` is the degree-n coefficient; pieces beyond the truncation
    /// are dropped.
    pub fn from_degrees(pieces: &[VirtualCharacter], truncation: usize) -> Self {
        let mut out = Self::zero(truncation);
        for (deg, piece) in pieces.iter().enumerate().take(truncation + 1) {
            for (w, &m) in piece.iter() {
                out.add_coefficient(w.clone(), deg, m);
            }
        }
        out
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Weight, QPoly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_coefficient(&mut self, w: Weight, degree: usize, m: i64) {
        if m == 0 || degree > self.truncation {
            return;
        }
        let p = self.terms.entry(w.clone()).or_default();
        if p.len() <= degree {
            p.resize(degree + 1, 0);
        }
        p[degree] += m;
        trim(p);
        if p.is_empty() {
            self.terms.remove(&w);
        }
    }

    pub fn poly(&self, w: &Weight) -> &[i64] {
        self.terms.get(w).map(|p| p.as_slice()).unwrap_or(&[])
    }

    pub fn coefficient_of(&self, w: &Weight, degree: usize) -> i64 {
        self.poly(w).get(degree).copied().unwrap_or(0)
    }

    pub fn coefficient(&self, degree: usize) -> VirtualCharacter {
        VirtualCharacter::from_terms(
            self.terms
                .iter()
                .map(|(w, p)| (w.clone(), p.get(degree).copied().unwrap_or(0))),
        )
    }

    pub fn degrees(&self) -> Vec<VirtualCharacter> {
        (0..=self.truncation).map(|d| self.coefficient(d)).collect()
    }

    /// Value at q = 1 of the coefficient polynomial of `w`.
    pub fn q_one(&self, w: &Weight) -> i64 {
        self.poly(w).iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.truncation.min(other.truncation));
        for src in [self, other] {
            for (w, p) in &src.terms {
                for (d, &m) in p.iter().enumerate() {
                    out.add_coefficient(w.clone(), d, m);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.truncation);
        for (w, p) in &self.terms {
            for (d, &m) in p.iter().enumerate() {
                out.add_coefficient(w.clone(), d, m * k);
            }
        }
        out
    }

    pub fn with_truncation(&self, truncation: usize) -> Self {
        assert!(
            truncation <= self.truncation,
            "cannot extend a truncated series"
        );
        let mut out = Self::zero(truncation);
        for (w, p) in &self.terms {
            for (d, &m) in p.iter().enumerate() {
                out.add_coefficient(w.clone(), d, m);
            }
        }
        out
    }

    /// Product with a scalar polynomial in q.
    pub fn mul_scalar_poly(&self, poly: &[i64]) -> Self {
        let mut out = Self::zero(self.truncation);
        for (w, p) in &self.terms {
            for (i, &a) in p.iter().enumerate() {
                for (j, &b) in poly.iter().enumerate() {
                    out.add_coefficient(w.clone(), i + j, a * b);
                }
            }
        }
        out
    }

    /// Graded tensor product, truncated at the smaller truncation degree.
    pub fn mul(&self, rd: &RootDatum, other: &Self) -> Self {
        let truncation = self.truncation.min(other.truncation);
        let left = self.degrees();
        let right: Vec<WeightMultiset> = other.degrees().iter().map(|c| c.to_weights(rd)).collect();
        let mut pieces = vec![VirtualCharacter::zero(); truncation + 1];
        for (i, a) in left.iter().enumerate().take(truncation + 1) {
            if a.is_empty() {
                continue;
            }
            for (j, b) in right.iter().enumerate().take(truncation + 1 - i) {
                if b.is_empty() {
                    continue;
                }
                pieces[i + j] = pieces[i + j].add(&multiply_by_weights(rd, a, b));
            }
        }
        Self::from_degrees(&pieces, truncation)
    }
}

/// A class function on an elementary abelian 2-group M = (Z/2)^r, with
/// elements indexed by bitmask over a fixed set of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGroupCharacter {
    rank: usize,
    values: Vec<i64>,
}

impl TwoGroupCharacter {
    pub fn new(rank: usize, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), 1 << rank);
        Self { rank, values }
    }

    /// The one-dimensional character indexed by bitmask `s`:
    /// m maps to (-1)^{popcount(s & m)}.
    pub fn linear(rank: usize, s: usize) -> Self {
        Self::new(rank, (0..1usize << rank).map(|m| sign_of(s & m)).collect())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, m: usize) -> i64 {
        self.values[m]
    }

    /// Multiplicity of the linear character `s`, by averaging over M. `None`
    /// when the average is not an integer.
    pub fn multiplicity(&self, s: usize) -> Option<i64> {
        let total: i64 = self
            .values
            .iter()
            .enumerate()
            .map(|(m, &v)| sign_of(s & m) * v)
            .sum();
        let order = 1i64 << self.rank;
        (total % order == 0).then_some(total / order)
    }

    pub fn multiplicities(&self) -> Option<Vec<i64>> {
        (0..1usize << self.rank)
            .map(|s| self.multiplicity(s))
            .collect()
    }

    pub fn is_genuine(&self) -> bool {
        self.multiplicities()
            .is_some_and(|ms| ms.iter().all(|&m| m >= 0))
    }
}

fn sign_of(bits: usize) -> i64 {
    if bits.count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Trace of V_tau (a K-representation) at each element of M.
pub fn restrict_to_m(pair: &SymmetricPairData, tau: &Weight) -> Result<TwoGroupCharacter> {
    let kd = &pair.k_datum;
    require_dominant(kd, tau)?;
    if !pair.in_k_lattice(tau) {
        return Err(Error::OffLattice(tau.clone()));
    }
    let weights = weight_multiset(kd, tau)?;
    let r = pair.m_rank;
    let mut values = Vec::with_capacity(1 << r);
    for m in 0..1usize << r {
        if m == 0 {
            values.push(weights.values().sum());
            continue;
        }
        let x = pair.m_cocharacter(m);
        let mut tr = 0;
        for (w, &k) in &weights {
            let p = w.to_rational().dot(x);
            if !p.is_integer() {
                return Err(Error::OffLattice(tau.clone()));
            }
            let parity = p.to_integer().is_odd();
            tr += if parity { -k } else { k };
        }
        values.push(tr);
    }
    Ok(TwoGroupCharacter::new(r, values))
}
