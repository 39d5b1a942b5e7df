//! Graded K-theory of the nilpotent cones N_{-Delta} and N_theta, modeled by
//! graded K-characters, and the restriction map R as multiplication by the
//! Koszul class sum_i (-q)^i Lambda^i(k).

use crate::characters::{
    exterior_powers, symmetric_algebra_series, GradedVirtualCharacter, VirtualKCharacter,
};
use crate::error::{Error, Result};
use crate::pairdata::SymmetricPairData;
use crate::rootdata::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeSide {
    /// N_{-Delta}, with K-characters read through K = K_Delta.
    ComplexCone,
    /// N_theta.
    RealCone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedKClass {
    pub side: ConeSide,
    pub series: GradedVirtualCharacter,
}

impl GradedKClass {
    pub fn zero(side: ConeSide, truncation: usize) -> Self {
        Self {
            side,
            series: GradedVirtualCharacter::zero(truncation),
        }
    }

    pub fn truncation(&self) -> usize {
        self.series.truncation()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.side != other.side {
            return Err(Error::WrongSide);
        }
        Ok(Self {
            side: self.side,
            series: self.series.add(&other.series),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulClass {
    pub series: GradedVirtualCharacter,
}

/// sum_i (-q)^i Lambda^i(k), stored with truncation `degree`.
pub fn koszul_class(pair: &SymmetricPairData, degree: usize) -> Result<KoszulClass> {
    let d = pair.dim_k();
    if degree < d {
        return Err(Error::TruncationTooSmall { degree, tau: None });
    }
    let powers = exterior_powers(&pair.k_datum, &pair.k_adjoint, d);
    let signed: Vec<VirtualKCharacter> = powers
        .iter()
        .enumerate()
        .map(|(i, p)| p.scale(if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    Ok(KoszulClass {
        series: GradedVirtualCharacter::from_degrees(&signed, degree),
    })
}

/// prod_i (1 - q^{d_i}) as a polynomial.
fn degree_factor(pair: &SymmetricPairData) -> Vec<i64> {
    let mut poly = vec![1i64];
    for &d in &pair.invariant_degrees {
        let mut next = vec![0; poly.len() + d as usize];
        for (i, &c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + d as usize] -= c;
        }
        poly = next;
    }
    poly
}

/// [O_{N_{-Delta}}] restricted to K: ch_q S(g)|_K times prod (1 - q^{d_i}).
pub fn nilcone_complex_structure_sheaf(pair: &SymmetricPairData, degree: usize) -> GradedKClass {
    let s = symmetric_algebra_series(&pair.k_datum, &pair.g_as_k_rep, degree);
    GradedKClass {
        side: ConeSide::ComplexCone,
        series: s.mul_scalar_poly(&degree_factor(pair)),
    }
}

/// [O_{N_theta}]: ch_q S(p) times prod (1 - q^{d_i}).
pub fn nilcone_theta_structure_sheaf(
    pair: &SymmetricPairData,
    degree: usize,
) -> Result<GradedKClass> {
    pair.require_split()?;
    let s = symmetric_algebra_series(&pair.k_datum, &pair.p_as_k_rep, degree);
    Ok(GradedKClass {
        side: ConeSide::RealCone,
        series: s.mul_scalar_poly(&degree_factor(pair)),
    })
}

/// R on graded K-theory: multiplication by the Koszul class.
#[allow(non_snake_case)]
pub fn restrict_R(class: &GradedKClass, pair: &SymmetricPairData) -> Result<GradedKClass> {
    if class.side != ConeSide::ComplexCone {
        return Err(Error::WrongSide);
    }
    let c = koszul_class(pair, class.truncation())?;
    Ok(GradedKClass {
        side: ConeSide::RealCone,
        series: class.series.mul(&pair.k_datum, &c.series),
    })
}

/// Value at q = 1 of the coefficient polynomial of every K-type of norm at
/// most `bound`. A K-type whose polynomial is nonzero in the top `dim k`
/// degrees has not stabilized and is reported as a truncation failure.
pub fn qone_ktype_totals(
    pair: &SymmetricPairData,
    class: &GradedKClass,
    bound: i64,
) -> Result<VirtualKCharacter> {
    let top = class.truncation();
    let first_unsafe = (top + 1).saturating_sub(pair.dim_k());
    let mut out = VirtualKCharacter::zero();
    for tau in pair.k_types_up_to(bound) {
        let poly = class.series.poly(&tau);
        if poly.len() > first_unsafe {
            return Err(Error::TruncationTooSmall {
                degree: top,
                tau: Some(tau),
            });
        }
        out.add_term(tau.clone(), class.series.q_one(&tau));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub tau: Weight,
    pub degree: usize,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub pair: String,
    pub degree: usize,
    pub bound: i64,
    /// Highest degree compared.
    pub window: usize,
    pub ktypes_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Coefficient-by-coefficient comparison in degrees `0..=window` for K-types
/// of norm at most `bound`, sorted by tau then degree.
pub fn compare_series(
    pair: &SymmetricPairData,
    lhs: &GradedVirtualCharacter,
    rhs: &GradedVirtualCharacter,
    window: usize,
    bound: i64,
) -> Vec<Mismatch> {
    let mut out = Vec::new();
    for tau in pair.k_types_up_to(bound) {
        for degree in 0..=window {
            let (l, r) = (
                lhs.coefficient_of(&tau, degree),
                rhs.coefficient_of(&tau, degree),
            );
            if l != r {
                out.push(Mismatch {
                    tau: tau.clone(),
                    degree,
                    lhs: l,
                    rhs: r,
                });
            }
        }
    }
    out
}

/// R[O_{N_{-Delta}}] against [O_{N_theta}] in the window of degrees
/// `0..=degree - dim k`.
pub fn verify_split_proposition(
    pair: &SymmetricPairData,
    degree: usize,
    bound: i64,
) -> Result<SplitReport> {
    pair.require_split()?;
    let window = degree
        .checked_sub(pair.dim_k())
        .ok_or(Error::TruncationTooSmall { degree, tau: None })?;
    let lhs = restrict_R(&nilcone_complex_structure_sheaf(pair, degree), pair)?;
    let rhs = nilcone_theta_structure_sheaf(pair, degree)?;
    Ok(SplitReport {
        pair: pair.name.clone(),
        degree,
        bound,
        window,
        ktypes_checked: pair.k_types_up_to(bound).len(),
        mismatches: compare_series(pair, &lhs.series, &rhs.series, window, bound),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{exterior_power, VirtualCharacter};
    use crate::pairdata::load_pair;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn koszul_classes() {
        let p = load_pair("sl2r").unwrap();
        let c = koszul_class(&p, 4).unwrap();
        assert_eq!(c.series.coefficient(0), VirtualCharacter::trivial(1));
        assert_eq!(
            c.series.coefficient(1),
            VirtualCharacter::trivial(1).scale(-1)
        );
        assert!(c.series.coefficient(2).is_empty());

        let q = load_pair("sl3r").unwrap();
        let c = koszul_class(&q, 3).unwrap();
        let v2 = VirtualCharacter::irreducible(w(&[2]));
        assert_eq!(c.series.coefficient(1), v2.scale(-1));
        assert_eq!(c.series.coefficient(2), exterior_power(&q.k_datum, &v2, 2));
        assert_eq!(
            c.series.coefficient(3),
            VirtualCharacter::trivial(1).scale(-1)
        );
        assert_eq!(
            koszul_class(&q, 2).unwrap_err(),
            Error::TruncationTooSmall {
                degree: 2,
                tau: None
            }
        );

        let s = load_pair("su2").unwrap();
        let c = koszul_class(&s, 3).unwrap();
        let total: i64 = c
            .series
            .degrees()
            .iter()
            .map(|d| d.dimension(&s.k_datum))
            .sum();
        assert_eq!(total, 0);
    }

    #[test]
    fn complex_cone_sl2r() {
        let p = load_pair("sl2r").unwrap();
        let c = nilcone_complex_structure_sheaf(&p, 8);
        for n in 0..=8 {
            assert_eq!(
                c.series.coefficient(n).dimension(&p.k_datum),
                2 * n as i64 + 1
            );
            assert_eq!(c.series.coefficient_of(&w(&[0]), n), 1);
        }
    }

    #[test]
    fn theta_cone_sl2r() {
        let p = load_pair("sl2r").unwrap();
        let c = nilcone_theta_structure_sheaf(&p, 8).unwrap();
        let dims: Vec<i64> = c
            .series
            .degrees()
            .iter()
            .map(|d| d.dimension(&p.k_datum))
            .collect();
        assert_eq!(dims, vec![1, 2, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(c.series.poly(&w(&[0])), &[1]);
        let totals = qone_ktype_totals(&p, &c, 6).unwrap();
        assert_eq!(totals.get(&w(&[0])), 1);
        assert_eq!(totals.get(&w(&[2])), 1);
        assert_eq!(totals.get(&w(&[1])), 0);
        assert!(matches!(
            qone_ktype_totals(&p, &c, 20),
            Err(Error::TruncationTooSmall { tau: Some(_), .. })
        ));
        assert_eq!(
            nilcone_theta_structure_sheaf(&load_pair("su2").unwrap(), 4).unwrap_err(),
            Error::NotSplit("su2".into())
        );
    }

    #[test]
    fn restrict_zero_and_side() {
        let p = load_pair("sl2r").unwrap();
        let z = GradedKClass::zero(ConeSide::ComplexCone, 5);
        assert!(restrict_R(&z, &p).unwrap().series.is_zero());
        let t = nilcone_theta_structure_sheaf(&p, 5).unwrap();
        assert_eq!(restrict_R(&t, &p).unwrap_err(), Error::WrongSide);
        assert!(
            qone_ktype_totals(&p, &GradedKClass::zero(ConeSide::RealCone, 5), 4)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn split_proposition_small() {
        let p = load_pair("sl2r").unwrap();
        let r = verify_split_proposition(&p, 10, 8).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert_eq!(r.window, 9);
    }

    #[test]
    fn perturbed_input_is_caught() {
        let p = load_pair("sl2r").unwrap();
        let lhs = restrict_R(&nilcone_complex_structure_sheaf(&p, 8), &p).unwrap();
        let mut rhs = nilcone_theta_structure_sheaf(&p, 8).unwrap().series;
        rhs.add_coefficient(w(&[4]), 2, 1);
        let m = compare_series(&p, &lhs.series, &rhs, 7, 6);
        assert_eq!(
            m,
            vec![Mismatch {
                tau: w(&[4]),
                degree: 2,
                lhs: 1,
                rhs: 2
            }]
        );
    }

    #[test]
    fn degree_factor_polys() {
        let q = load_pair("sl3r").unwrap();
        assert_eq!(degree_factor(&q), vec![1, 0, -1, -1, 0, 1]);
    }
}
