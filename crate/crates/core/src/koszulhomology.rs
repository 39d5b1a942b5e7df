//! Koszul complexes of k_R acting on finite-dimensional g x g modules
//! F(a) [x] F(b), for the sl2-based pairs.
//!
//! Conventions. The Chevalley basis of sl2 is (e, h, f) with [h,e] = 2e,
//! [h,f] = -2f, [e,f] = h. F(n) is realized on binary forms of degree n with
//! basis x^(n-k) y^k (k = 0..n), e = x d/dy, f = y d/dx. k sits in the right
//! factor (k_R); the diagonal K acts through both factors, so a basis vector
//! of the module has K-weight h_L + h_R. Chains in degree n are indexed by
//! increasing n-subsets of the ordered k basis times module basis vectors,
//! and the boundary is
//!
//!   d(X_1 ^ ... ^ X_n (x) v) = sum_i (-1)^i X_1 ^ ..^X_i^.. ^ X_n (x) X_i v
//!       + sum_{j<k} (-1)^(j+k) [X_j, X_k] ^ X_1 ^ ..^X_j^..^X_k^.. ^ X_n (x) v
//!
//! with indices counted from 1.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characters::{exterior_powers, tensor_decompose, VirtualKCharacter, WeightMultiset};
use crate::error::{Error, Result};
use crate::linalg::{solve, QMatrix};
use crate::pairdata::SymmetricPairData;
use crate::rootdata::{TypeLabel, Weight};

/// An element of sl2 in the basis (e, h, f).
pub type Sl2Element = [BigRational; 3];

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn sl2_bracket(x: &Sl2Element, y: &Sl2Element) -> Sl2Element {
    let two = q(2);
    [
        &two * (&x[1] * &y[0] - &x[0] * &y[1]),
        &x[0] * &y[2] - &x[2] * &y[0],
        &two * (&x[2] * &y[1] - &x[1] * &y[2]),
    ]
}

/// The h-eigenvalue of `x`, if `x` is a nonzero weight vector.
pub fn sl2_weight(x: &Sl2Element) -> Option<i64> {
    let support: Vec<usize> = (0..3).filter(|&i| !x[i].is_zero()).collect();
    match support.as_slice() {
        [i] => Some(2 - 2 * *i as i64),
        _ => None,
    }
}

/// Coordinates of `z` in a linearly independent family of sl2 elements.
pub fn coordinates_in(basis: &[Sl2Element], z: &Sl2Element) -> Option<Vec<BigRational>> {
    let n = basis.len();
    let full = QMatrix::from_fn(3, n, |r, c| basis[c][r].clone());
    let rows: Vec<usize> = {
        let mut chosen = Vec::new();
        for r in 0..3 {
            let mut trial = chosen.clone();
            trial.push(r);
            if full.select(&trial, &(0..n).collect::<Vec<_>>()).rank() == trial.len() {
                chosen = trial;
            }
        }
        chosen
    };
    if rows.len() != n {
        return None;
    }
    let square = full.select(&rows, &(0..n).collect::<Vec<_>>());
    let rhs: Vec<BigRational> = rows.iter().map(|&r| z[r].clone()).collect();
    let c = solve(&square, &rhs)?;
    let back: Vec<BigRational> = (0..3)
        .map(|r| (0..n).fold(BigRational::zero(), |acc, j| acc + &c[j] * &basis[j][r]))
        .collect();
    (back.as_slice() == z.as_slice()).then_some(c)
}

/// e, h, f on F(n).
fn sl2_irrep(n: usize) -> [QMatrix; 3] {
    let d = n + 1;
    let mut e = QMatrix::zeros(d, d);
    let mut h = QMatrix::zeros(d, d);
    let mut f = QMatrix::zeros(d, d);
    for k in 0..d {
        h.set(k, k, q(n as i64 - 2 * k as i64));
        if k > 0 {
            e.set(k - 1, k, q(k as i64));
        }
        if k < n {
            f.set(k + 1, k, q((n - k) as i64));
        }
    }
    [e, h, f]
}

/// A finite-dimensional g x g module with explicit matrices.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub a: Weight,
    pub b: Weight,
    pub dim: usize,
    /// Action of (e,0), (h,0), (f,0), (0,e), (0,h), (0,f).
    pub action: [QMatrix; 6],
    /// K-weight of each basis vector.
    pub k_weights: Vec<i64>,
    k_basis: Vec<Sl2Element>,
}

fn require_sl2(pair: &SymmetricPairData) -> Result<&[Sl2Element]> {
    match &pair.k_basis {
        Some(basis) if pair.g_datum.label() == TypeLabel::A1 => Ok(basis),
        _ => Err(Error::UnsupportedPair(pair.name.clone())),
    }
}

/// F(a) [x] F(b).
pub fn build_module(pair: &SymmetricPairData, a: &Weight, b: &Weight) -> Result<MatrixRep> {
    let k_basis = require_sl2(pair)?.to_vec();
    for w in [a, b] {
        if !pair.g_datum.is_dominant(w) {
            return Err(Error::NotDominant(w.clone()));
        }
    }
    let (na, nb) = (a.0[0] as usize, b.0[0] as usize);
    let left = sl2_irrep(na);
    let right = sl2_irrep(nb);
    let (ia, ib) = (QMatrix::identity(na + 1), QMatrix::identity(nb + 1));
    let action = [
        left[0].kron(&ib),
        left[1].kron(&ib),
        left[2].kron(&ib),
        ia.kron(&right[0]),
        ia.kron(&right[1]),
        ia.kron(&right[2]),
    ];
    let dim = (na + 1) * (nb + 1);
    let k_weights = (0..dim)
        .map(|i| {
            let (i, j) = (i / (nb + 1), i % (nb + 1));
            (na as i64 - 2 * i as i64) + (nb as i64 - 2 * j as i64)
        })
        .collect();
    Ok(MatrixRep {
        a: a.clone(),
        b: b.clone(),
        dim,
        action,
        k_weights,
        k_basis,
    })
}

impl MatrixRep {
    /// Matrix of an element of g x g given by coordinates in the six basis
    /// elements.
    pub fn act(&self, coeffs: &[BigRational; 6]) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim, self.dim);
        for (c, a) in coeffs.iter().zip(&self.action) {
            if !c.is_zero() {
                m = m.add(&a.scale(c));
            }
        }
        m
    }

    fn act_right(&self, x: &Sl2Element) -> QMatrix {
        let z = BigRational::zero();
        self.act(&[
            z.clone(),
            z.clone(),
            z,
            x[0].clone(),
            x[1].clone(),
            x[2].clone(),
        ])
    }

    /// [rho(x), rho(y)] = rho([x, y]) for every pair of basis elements.
    pub fn brackets_hold(&self) -> bool {
        let unit = |i: usize| -> Sl2Element {
            std::array::from_fn(|k| {
                if k == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
        };
        for i in 0..6 {
            for j in 0..6 {
                let commutator = self.action[i]
                    .mul(&self.action[j])
                    .sub(&self.action[j].mul(&self.action[i]));
                let expected = if i / 3 != j / 3 {
                    QMatrix::zeros(self.dim, self.dim)
                } else {
                    let br = sl2_bracket(&unit(i % 3), &unit(j % 3));
                    let mut coeffs: [BigRational; 6] = std::array::from_fn(|_| BigRational::zero());
                    for k in 0..3 {
                        coeffs[3 * (i / 3) + k] = br[k].clone();
                    }
                    self.act(&coeffs)
                };
                if commutator != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Character of the module restricted to K.
    pub fn k_character(&self, pair: &SymmetricPairData) -> VirtualKCharacter {
        let mut weights = WeightMultiset::new();
        for &w in &self.k_weights {
            *weights.entry(Weight(vec![w])).or_insert(0) += 1;
        }
        VirtualKCharacter::from_weights(&pair.k_datum, &weights)
    }
}

#[derive(Clone, Debug)]
pub struct KoszulComplexData {
    pub k_dim: usize,
    pub module_dim: usize,
    /// K-weight of each basis chain, per degree 0..=k_dim.
    pub chain_weights: Vec<Vec<i64>>,
    /// `boundaries[n - 1]` is the boundary from degree n to degree n - 1.
    pub boundaries: Vec<QMatrix>,
}

fn subsets(d: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, d: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, n, cur, out);
            cur.pop();
        }
    }
    go(0, d, n, &mut cur, &mut out);
    out
}

/// Sign and sorted form of `first ^ rest` where `rest` is increasing, or None
/// if `first` already occurs.
fn insert_sorted(first: usize, rest: &[usize]) -> Option<(i64, Vec<usize>)> {
    if rest.contains(&first) {
        return None;
    }
    let pos = rest.iter().filter(|&&x| x < first).count();
    let mut v = rest.to_vec();
    v.insert(pos, first);
    Some((if pos % 2 == 0 { 1 } else { -1 }, v))
}

pub fn build_koszul_complex(m: &MatrixRep) -> KoszulComplexData {
    let basis = &m.k_basis;
    let d = basis.len();
    let x_mats: Vec<QMatrix> = basis.iter().map(|x| m.act_right(x)).collect();
    let x_weights: Vec<i64> = basis
        .iter()
        .map(|x| sl2_weight(x).expect("k basis of weight vectors"))
        .collect();
    let structure: Vec<Vec<Vec<BigRational>>> = (0..d)
        .map(|j| {
            (0..d)
                .map(|k| {
                    coordinates_in(basis, &sl2_bracket(&basis[j], &basis[k]))
                        .expect("k is a subalgebra")
                })
                .collect()
        })
        .collect();

    let chains: Vec<Vec<Vec<usize>>> = (0..=d).map(|n| subsets(d, n)).collect();
    let index: Vec<BTreeMap<Vec<usize>, usize>> = chains
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let chain_weights = chains
        .iter()
        .map(|c| {
            c.iter()
                .flat_map(|s| {
                    let ws: i64 = s.iter().map(|&i| x_weights[i]).sum();
                    m.k_weights.iter().map(move |&v| ws + v)
                })
                .collect()
        })
        .collect();

    let dx = m.dim;
    let mut boundaries = Vec::new();
    for n in 1..=d {
        let mut b = QMatrix::zeros(chains[n - 1].len() * dx, chains[n].len() * dx);
        for (col_s, s) in chains[n].iter().enumerate() {
            for v in 0..dx {
                let col = col_s * dx + v;
                // action terms
                for i in 0..n {
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    let mut rest = s.clone();
                    let xi = rest.remove(i);
                    let row_s = index[n - 1][&rest];
                    for u in 0..dx {
                        let c = x_mats[xi].get(u, v);
                        if !c.is_zero() {
                            b.add_at(row_s * dx + u, col, &(c * q(sign)));
                        }
                    }
                }
                // bracket terms
                for j in 0..n {
                    for k in j + 1..n {
                        let sign = if (j + k + 2) % 2 == 0 { 1 } else { -1 };
                        let rest: Vec<usize> = s
                            .iter()
                            .enumerate()
                            .filter(|&(t, _)| t != j && t != k)
                            .map(|(_, &x)| x)
                            .collect();
                        for (l, c) in structure[s[j]][s[k]].iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            if let Some((wsign, target)) = insert_sorted(l, &rest) {
                                let row = index[n - 1][&target] * dx + v;
                                b.add_at(row, col, &(c * q(sign * wsign)));
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(b);
    }
    KoszulComplexData {
        k_dim: d,
        module_dim: dx,
        chain_weights,
        boundaries,
    }
}

impl KoszulComplexData {
    pub fn chain_dim(&self, n: usize) -> usize {
        self.chain_weights.get(n).map_or(0, Vec::len)
    }

    /// Every composite of consecutive boundaries vanishes.
    pub fn d_squared_is_zero(&self) -> bool {
        self.boundaries
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Every boundary matrix is block diagonal for the K-weight labels.
    pub fn is_k_equivariant(&self) -> bool {
        self.boundaries.iter().enumerate().all(|(i, b)| {
            let (src, dst) = (&self.chain_weights[i + 1], &self.chain_weights[i]);
            (0..b.rows()).all(|r| (0..b.cols()).all(|c| b.get(r, c).is_zero() || src[c] == dst[r]))
        })
    }

    fn block_rank(&self, n: usize, weight: i64) -> usize {
        if n == 0 || n > self.k_dim {
            return 0;
        }
        let rows: Vec<usize> = (0..self.chain_dim(n - 1))
            .filter(|&r| self.chain_weights[n - 1][r] == weight)
            .collect();
        let cols: Vec<usize> = (0..self.chain_dim(n))
            .filter(|&c| self.chain_weights[n][c] == weight)
            .collect();
        self.boundaries[n - 1].select(&rows, &cols).rank()
    }

    /// Weight multiset of H_n.
    pub fn homology_weights(&self, n: usize) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        if n > self.k_dim {
            return out;
        }
        let mut weights: Vec<i64> = self.chain_weights[n].clone();
        weights.sort_unstable();
        weights.dedup();
        for w in weights {
            let dim = self.chain_weights[n].iter().filter(|&&x| x == w).count();
            let h = dim - self.block_rank(n, w) - self.block_rank(n + 1, w);
            if h > 0 {
                out.insert(w, h as i64);
            }
        }
        out
    }
}

/// H_0 .. H_{dim k} as K-characters.
pub fn homology(pair: &SymmetricPairData, c: &KoszulComplexData) -> Vec<VirtualKCharacter> {
    (0..=c.k_dim)
        .map(|n| homology_in_degree(pair, c, n))
        .collect()
}

/// H_n as a K-character; zero above dim k.
pub fn homology_in_degree(
    pair: &SymmetricPairData,
    c: &KoszulComplexData,
    n: usize,
) -> VirtualKCharacter {
    let weights: WeightMultiset = c
        .homology_weights(n)
        .into_iter()
        .map(|(w, m)| (Weight(vec![w]), m))
        .collect();
    VirtualKCharacter::from_weights(&pair.k_datum, &weights)
}

/// sum_i (-1)^i [H_i].
pub fn euler_characteristic(pair: &SymmetricPairData, m: &MatrixRep) -> VirtualKCharacter {
    let c = build_koszul_complex(m);
    alternating_sum(&homology(pair, &c))
}

/// sum_i (-1)^i [Lambda^i k (x) X], from characters alone.
pub fn chain_euler_characteristic(pair: &SymmetricPairData, m: &MatrixRep) -> VirtualKCharacter {
    let kd = &pair.k_datum;
    let x = m.k_character(pair);
    let powers = exterior_powers(kd, &pair.k_adjoint, pair.dim_k());
    alternating_sum(
        &powers
            .iter()
            .map(|p| tensor_decompose(kd, p, &x))
            .collect::<Vec<_>>(),
    )
}

fn alternating_sum(chars: &[VirtualKCharacter]) -> VirtualKCharacter {
    chars
        .iter()
        .enumerate()
        .fold(VirtualKCharacter::zero(), |acc, (i, c)| {
            acc.add(&c.scale(if i % 2 == 0 { 1 } else { -1 }))
        })
}
