//! Catalog of supported symmetric pairs (G, G_R, K, p, M).
//!
//! Each pair is one TOML document; the built-in documents live in
//! `catalog/` and are compiled in, and [`Catalog::from_dir`] loads the same
//! format from disk. Everything that can be re-derived from the root data is
//! re-checked at load time. See `catalog/SCHEMA.md` for the field reference.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

use crate::characters::{weight_multiset, VirtualKCharacter};
use crate::error::{Error, Result};
use crate::rootdata::{RootDatum, TypeLabel, Weight};

const BUILTIN: &[(&str, &str)] = &[
    ("sl2r", include_str!("../catalog/sl2r.toml")),
    ("sl3r", include_str!("../catalog/sl3r.toml")),
    ("sp4r", include_str!("../catalog/sp4r.toml")),
    ("su2", include_str!("../catalog/su2.toml")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    weight: Vec<i64>,
    mult: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPair {
    name: String,
    split: bool,
    g_datum: String,
    k_datum: String,
    k_lattice: Vec<Vec<i64>>,
    g_as_k_rep: Vec<RawTerm>,
    k_adjoint: Vec<RawTerm>,
    p_as_k_rep: Vec<RawTerm>,
    invariant_degrees: Vec<u32>,
    m_rank: usize,
    m_cocharacters: Vec<Vec<String>>,
    weight_reduction: Vec<Vec<i64>>,
    #[serde(default)]
    k_basis: Option<Vec<Vec<String>>>,
}

/// A validated symmetric pair.
#[derive(Clone, Debug)]
pub struct SymmetricPairData {
    pub name: String,
    pub split: bool,
    pub g_datum: RootDatum,
    pub k_datum: RootDatum,
    /// Generators (a basis) of the weight lattice of K inside the
    /// coordinates of `k_datum`.
    pub k_lattice: Vec<Weight>,
    pub g_as_k_rep: VirtualKCharacter,
    pub k_adjoint: VirtualKCharacter,
    pub p_as_k_rep: VirtualKCharacter,
    pub invariant_degrees: Vec<u32>,
    pub m_rank: usize,
    /// Cocharacter of the K-torus conjugate to each nonidentity element of M,
    /// indexed by bitmask minus one. Element m acts on K-weight w by
    /// (-1)^<w, x_m>.
    pub m_cocharacters: Vec<Vec<BigRational>>,
    /// Row j is a cocharacter y_j of the split torus with m_j = y_j(-1);
    /// lambda in X*(H) restricts to the M-character with bit j equal to
    /// <lambda, y_j> mod 2.
    pub weight_reduction: Vec<Vec<i64>>,
    /// Basis of k in the Chevalley basis (e, h, f), for sl2-based pairs.
    pub k_basis: Option<Vec<[BigRational; 3]>>,
}

impl SymmetricPairData {
    pub fn dim_k(&self) -> usize {
        self.k_adjoint.dimension(&self.k_datum) as usize
    }

    pub fn dim_p(&self) -> usize {
        self.p_as_k_rep.dimension(&self.k_datum) as usize
    }

    pub fn dim_g(&self) -> usize {
        self.g_datum.dimension()
    }

    pub fn m_order(&self) -> usize {
        1 << self.m_rank
    }

    /// Cocharacter of the element with bitmask `m` (nonzero).
    pub fn m_cocharacter(&self, m: usize) -> &[BigRational] {
        &self.m_cocharacters[m - 1]
    }

    pub fn require_split(&self) -> Result<()> {
        if self.split {
            Ok(())
        } else {
            Err(Error::NotSplit(self.name.clone()))
        }
    }

    pub fn in_k_lattice(&self, w: &Weight) -> bool {
        let n = self.k_datum.rank();
        if w.rank() != n {
            return false;
        }
        let a: Vec<Vec<i64>> = (0..n)
            .map(|r| self.k_lattice.iter().map(|g| g.0[r]).collect())
            .collect();
        crate::linalg::solve_integer_system(&a, &w.0).is_some()
    }

    /// Dominant K-weights in the K lattice with norm at most `bound`, sorted.
    pub fn k_types_up_to(&self, bound: i64) -> Vec<Weight> {
        box_weights(self.k_datum.rank(), bound)
            .into_iter()
            .filter(|w| self.k_datum.is_dominant(w) && self.in_k_lattice(w))
            .collect()
    }
}

/// Integer vectors of the given rank with l1 norm at most `bound`, sorted.
pub fn box_weights(rank: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![Weight(vec![])];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|w| {
                (-bound..=bound).filter_map(move |c| {
                    let mut v = w.0.clone();
                    v.push(c);
                    let v = Weight(v);
                    (v.norm() <= bound).then_some(v)
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// Summary row for listings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRow {
    pub name: String,
    pub g_type: TypeLabel,
    pub k_type: TypeLabel,
    pub split: bool,
    pub dim_g: usize,
    pub dim_k: usize,
    pub dim_p: usize,
    pub m_rank: usize,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    documents: BTreeMap<String, String>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Catalog {
            documents: BUILTIN
                .iter()
                .map(|(n, d)| (n.to_string(), d.to_string()))
                .collect(),
        }
    }

    /// Every `*.toml` file in `dir`, keyed by file stem.
    pub fn from_dir(dir: &Path) -> std::io::Result<Self> {
        let mut documents = BTreeMap::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "toml") {
                if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                    documents.insert(stem.to_string(), std::fs::read_to_string(&path)?);
                }
            }
        }
        Ok(Catalog { documents })
    }

    pub fn names(&self) -> Vec<String> {
        self.documents.keys().cloned().collect()
    }

    /// Source text of an entry.
    pub fn document(&self, name: &str) -> Option<&str> {
        self.documents.get(name).map(String::as_str)
    }

    pub fn load(&self, name: &str) -> Result<SymmetricPairData> {
        let doc = self
            .documents
            .get(name)
            .ok_or_else(|| Error::UnknownPair(name.to_string()))?;
        parse_pair(name, doc)
    }

    pub fn list(&self) -> Result<Vec<CatalogRow>> {
        self.names()
            .iter()
            .map(|n| {
                let p = self.load(n)?;
                Ok(CatalogRow {
                    name: p.name.clone(),
                    g_type: p.g_datum.label(),
                    k_type: p.k_datum.label(),
                    split: p.split,
                    dim_g: p.dim_g(),
                    dim_k: p.dim_k(),
                    dim_p: p.dim_p(),
                    m_rank: p.m_rank,
                })
            })
            .collect()
    }
}

pub fn load_pair(name: &str) -> Result<SymmetricPairData> {
    Catalog::builtin().load(name)
}

pub fn catalog_list() -> Result<Vec<CatalogRow>> {
    Catalog::builtin().list()
}

/// The M-character (as a bitmask over the generators of M) of the class of
/// `lambda` in X*(H)/2X*(H).
pub fn reduce_mod_2(pair: &SymmetricPairData, lambda: &Weight) -> usize {
    pair.weight_reduction
        .iter()
        .enumerate()
        .filter(|(_, y)| lambda.pair(y).rem_euclid(2) == 1)
        .fold(0, |acc, (j, _)| acc | (1 << j))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_pair(key: &str, doc: &str) -> Result<SymmetricPairData> {
    let corrupt = |reason: String| Error::CorruptCatalog {
        name: key.to_string(),
        reason,
    };
    let raw: RawPair = toml::from_str(doc).map_err(|e| corrupt(e.to_string()))?;
    if raw.name != key {
        return Err(corrupt(format!(
            "document name `{}` does not match its key",
            raw.name
        )));
    }
    let g_datum = RootDatum::new(
        raw.g_datum
            .parse()
            .map_err(|e: Error| corrupt(e.to_string()))?,
    );
    let k_datum = RootDatum::new(
        raw.k_datum
            .parse()
            .map_err(|e: Error| corrupt(e.to_string()))?,
    );

    let character = |terms: &[RawTerm], field: &str| -> Result<VirtualKCharacter> {
        let mut ch = VirtualKCharacter::zero();
        for t in terms {
            let w = Weight(t.weight.clone());
            if w.rank() != k_datum.rank() || !k_datum.is_dominant(&w) {
                return Err(corrupt(format!("{field}: {w} is not a dominant K-weight")));
            }
            ch.add_term(w, t.mult);
        }
        Ok(ch)
    };
    let g_as_k_rep = character(&raw.g_as_k_rep, "g_as_k_rep")?;
    let k_adjoint = character(&raw.k_adjoint, "k_adjoint")?;
    let p_as_k_rep = character(&raw.p_as_k_rep, "p_as_k_rep")?;

    let m_cocharacters = raw
        .m_cocharacters
        .iter()
        .map(|v| {
            v.iter()
                .map(|s| parse_rational(s))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| corrupt("m_cocharacters: malformed rational".into()))?;

    let k_basis = match &raw.k_basis {
        None => None,
        Some(rows) => Some(
            rows.iter()
                .map(|r| {
                    let v: Option<Vec<BigRational>> = r.iter().map(|s| parse_rational(s)).collect();
                    v.and_then(|v| <[BigRational; 3]>::try_from(v).ok())
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| corrupt("k_basis: expected rows of three rationals".into()))?,
        ),
    };

    let pair = SymmetricPairData {
        name: raw.name,
        split: raw.split,
        g_datum,
        k_datum,
        k_lattice: raw.k_lattice.into_iter().map(Weight).collect(),
        g_as_k_rep,
        k_adjoint,
        p_as_k_rep,
        invariant_degrees: raw.invariant_degrees,
        m_rank: raw.m_rank,
        m_cocharacters,
        weight_reduction: raw.weight_reduction,
        k_basis,
    };
    validate(&pair).map_err(corrupt)?;
    Ok(pair)
}

/// Re-derives every checkable invariant of a catalog entry.
pub fn validate(p: &SymmetricPairData) -> std::result::Result<(), String> {
    let g = &p.g_datum;
    let k = &p.k_datum;
    let kr = k.rank();

    if p.k_lattice.len() != kr || p.k_lattice.iter().any(|w| w.rank() != kr) {
        return Err(format!("k_lattice must be {kr} vectors of rank {kr}"));
    }
    for ch in [&p.g_as_k_rep, &p.k_adjoint, &p.p_as_k_rep] {
        if let Some((w, _)) = ch.iter().find(|(w, _)| !p.in_k_lattice(w)) {
            return Err(format!("{w} is not in the K weight lattice"));
        }
        if !ch.is_actual() {
            return Err("representations must have positive multiplicities".into());
        }
    }

    if p.g_as_k_rep != p.k_adjoint.add(&p.p_as_k_rep) {
        return Err("g restricted to K differs from k + p".into());
    }
    let (dk, dp) = (p.dim_k(), p.dim_p());
    if dk + dp != p.dim_g() || p.g_as_k_rep.dimension(k) as usize != p.dim_g() {
        return Err(format!(
            "dim k + dim p = {dk} + {dp} but dim g = {}",
            p.dim_g()
        ));
    }
    if dk != k.dimension() {
        return Err(format!(
            "k_adjoint has dimension {dk} but K has dimension {}",
            k.dimension()
        ));
    }
    if p.invariant_degrees.as_slice() != g.invariant_degrees() {
        return Err("invariant_degrees disagree with the root datum of G".into());
    }
    let prod: u32 = p.invariant_degrees.iter().product();
    if prod as usize != g.weyl_group().len() {
        return Err(format!(
            "product of degrees {prod} differs from |W| = {}",
            g.weyl_group().len()
        ));
    }

    if p.m_cocharacters.len() + 1 != (1 << p.m_rank) {
        return Err(format!(
            "expected {} m_cocharacters for m_rank {}",
            (1 << p.m_rank) - 1,
            p.m_rank
        ));
    }
    for x in &p.m_cocharacters {
        if x.len() != kr {
            return Err("m_cocharacter of the wrong rank".into());
        }
        for gen in &p.k_lattice {
            if !gen.to_rational().dot(x).is_integer() {
                return Err(format!("m_cocharacter does not pair integrally with {gen}"));
            }
        }
    }
    if p.weight_reduction.len() != p.m_rank
        || p.weight_reduction.iter().any(|y| y.len() != g.rank())
    {
        return Err("weight_reduction must have m_rank rows of rank(G) entries".into());
    }

    if p.split {
        if dp != g.positive_roots().len() + g.rank() {
            return Err(format!(
                "split pair needs dim p = |positive roots| + rank, got {dp}"
            ));
        }
        if p.m_rank != g.rank() {
            return Err("split pair needs M of rank rank(G)".into());
        }
        // trace of Ad(m) on g computed on the split torus must match the
        // K-side trace of g_as_k_rep
        for m in 1..p.m_order() {
            let y: Vec<i64> = (0..g.rank())
                .map(|i| {
                    (0..p.m_rank)
                        .filter(|j| m & (1 << j) != 0)
                        .map(|j| p.weight_reduction[j][i])
                        .sum()
                })
                .collect();
            let g_trace: i64 = g.rank() as i64
                + 2 * g
                    .positive_roots()
                    .iter()
                    .map(|a| if a.pair(&y) % 2 == 0 { 1 } else { -1 })
                    .sum::<i64>();
            let k_trace = k_side_trace(p, m);
            if g_trace != k_trace {
                return Err(format!(
                    "trace of M element {m} on g: {g_trace} from H, {k_trace} from K"
                ));
            }
        }
    } else if p.m_rank != 0 || dp != 0 {
        return Err("only compact non-split pairs are supported".into());
    }

    if let Some(basis) = &p.k_basis {
        validate_k_basis(p, basis)?;
    }
    Ok(())
}

fn k_side_trace(p: &SymmetricPairData, m: usize) -> i64 {
    let x = p.m_cocharacter(m);
    let mut tr = 0;
    for (lambda, &c) in p.g_as_k_rep.iter() {
        for (w, mult) in weight_multiset(&p.k_datum, lambda).expect("dominant") {
            let v = w.to_rational().dot(x).to_integer();
            let s = if (v % BigInt::from(2)).is_zero() {
                1
            } else {
                -1
            };
            tr += c * mult * s;
        }
    }
    tr
}

/// The k basis must be h-weight vectors of sl2 whose weights reproduce
/// `k_adjoint`, and must span a subalgebra.
fn validate_k_basis(
    p: &SymmetricPairData,
    basis: &[[BigRational; 3]],
) -> std::result::Result<(), String> {
    if p.g_datum.label() != TypeLabel::A1 {
        return Err("k_basis is only supported for sl2-based pairs".into());
    }
    if basis.len() != p.dim_k() {
        return Err("k_basis length differs from dim k".into());
    }
    let mut weights = BTreeMap::new();
    for b in basis {
        let w = crate::koszulhomology::sl2_weight(b)
            .ok_or("k_basis vectors must be h-weight vectors")?;
        *weights.entry(Weight(vec![w])).or_insert(0i64) += 1;
    }
    let expected = p.k_adjoint.to_weights(&p.k_datum);
    if weights != expected {
        return Err("k_basis weights do not reproduce k_adjoint".into());
    }
    for x in basis {
        for y in basis {
            let z = crate::koszulhomology::sl2_bracket(x, y);
            if crate::koszulhomology::coordinates_in(basis, &z).is_none() {
                return Err("k_basis does not span a subalgebra".into());
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::VirtualCharacter;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn load_sl2r() {
        let p = load_pair("sl2r").unwrap();
        assert_eq!(p.k_datum.label(), TypeLabel::T1);
        assert_eq!(p.dim_k(), 1);
        assert_eq!(p.dim_p(), 2);
        assert_eq!(
            p.p_as_k_rep,
            VirtualCharacter::from_terms([(w(&[2]), 1), (w(&[-2]), 1)])
        );
        assert_eq!(p.invariant_degrees, vec![2]);
        assert_eq!(p.m_rank, 1);
    }

    #[test]
    fn load_sl3r() {
        let p = load_pair("sl3r").unwrap();
        assert_eq!(p.k_datum.label(), TypeLabel::A1);
        assert_eq!(p.k_adjoint, VirtualCharacter::irreducible(w(&[2])));
        assert_eq!(p.p_as_k_rep, VirtualCharacter::irreducible(w(&[4])));
        assert_eq!(p.dim_k() + p.dim_p(), 8);
        assert_eq!(p.invariant_degrees, vec![2, 3]);
        assert_eq!(p.m_rank, 2);
    }

    #[test]
    fn load_su2() {
        let p = load_pair("su2").unwrap();
        assert!(!p.split);
        assert_eq!(p.dim_p(), 0);
        assert_eq!(p.dim_k(), 3);
        assert_eq!(p.k_adjoint, p.g_as_k_rep);
        assert_eq!(p.require_split(), Err(Error::NotSplit("su2".into())));
    }

    #[test]
    fn load_sp4r() {
        let p = load_pair("sp4r").unwrap();
        assert_eq!(p.dim_k(), 4);
        assert_eq!(p.dim_p(), 6);
    }

    #[test]
    fn unknown_pair() {
        assert_eq!(
            load_pair("e8r").unwrap_err(),
            Error::UnknownPair("e8r".into())
        );
    }

    #[test]
    fn strict_keys_and_validation() {
        let base = BUILTIN.iter().find(|(n, _)| *n == "sl2r").unwrap().1;
        let extra = format!("{base}\nflavour = \"vanilla\"\n");
        assert!(matches!(
            parse_pair("sl2r", &extra),
            Err(Error::CorruptCatalog { .. })
        ));

        let broken = base.replace("{ weight = [-2], mult = 1 },\n]\nk_adjoint", "]\nk_adjoint");
        assert_ne!(broken, base);
        assert!(matches!(
            parse_pair("sl2r", &broken),
            Err(Error::CorruptCatalog { .. })
        ));

        let bad_cochar = base.replace("m_cocharacters = [[\"1\"]]", "m_cocharacters = [[\"1/2\"]]");
        assert!(matches!(
            parse_pair("sl2r", &bad_cochar),
            Err(Error::CorruptCatalog { .. })
        ));

        let bad_degrees = base.replace("invariant_degrees = [2]", "invariant_degrees = [3]");
        assert!(matches!(
            parse_pair("sl2r", &bad_degrees),
            Err(Error::CorruptCatalog { .. })
        ));
    }

    #[test]
    fn listing() {
        let rows = catalog_list().unwrap();
        let names: Vec<_> = rows.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, vec!["sl2r", "sl3r", "sp4r", "su2"]);
        assert!(rows.len() >= 3);
    }

    #[test]
    fn mod_2_reduction() {
        let p = load_pair("sl2r").unwrap();
        assert_eq!(reduce_mod_2(&p, &w(&[0])), 0);
        assert_eq!(reduce_mod_2(&p, &w(&[1])), 1);
        assert_eq!(reduce_mod_2(&p, &w(&[-3])), 1);
        let q = load_pair("sl3r").unwrap();
        for a in -3..=3 {
            for b in -3..=3 {
                let l = w(&[a, b]);
                for mu in box_weights(2, 2) {
                    assert_eq!(reduce_mod_2(&q, &l), reduce_mod_2(&q, &l.add(&mu.scale(2))));
                    let sum = reduce_mod_2(&q, &l.add(&mu));
                    assert_eq!(sum, reduce_mod_2(&q, &l) ^ reduce_mod_2(&q, &mu));
                }
            }
        }
    }

    #[test]
    fn k_type_enumeration() {
        let p = load_pair("sl3r").unwrap();
        assert_eq!(p.k_types_up_to(6), vec![w(&[0]), w(&[2]), w(&[4]), w(&[6])]);
        let s = load_pair("sl2r").unwrap();
        assert_eq!(
            s.k_types_up_to(2),
            vec![w(&[-2]), w(&[-1]), w(&[0]), w(&[1]), w(&[2])]
        );
    }
}
