//! Grothendieck groups of principal series, the restriction homomorphism on
//! standard classes, infinitesimal characters, translation by
//! finite-dimensional representations, and K-type multiplicities.
//!
//! Principal-series classes are W-invariant in their parameter, so every
//! basis parameter is stored as the lexicographically greatest point of its
//! W-orbit: (w lambda, w nu) on the complex side and
//! (w lambda mod 2, w nu) on the real side. Taking the greatest point favors
//! dominant representatives.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::characters::{restrict_to_m, weight_multiplicity, weight_multiset};
use crate::error::{Error, Result};
use crate::ktheory::{
    nilcone_complex_structure_sheaf, nilcone_theta_structure_sheaf, qone_ktype_totals, restrict_R,
};
use crate::pairdata::{box_weights, reduce_mod_2, SymmetricPairData};
use crate::rootdata::{RationalWeight, RootDatum, Weight};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexPSParam {
    pub lambda: Weight,
    pub nu: RationalWeight,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RealPSParam {
    /// Entries in {0, 1}.
    pub lambda_bar: Weight,
    pub nu: RationalWeight,
}

impl RealPSParam {
    pub fn new(lambda: &Weight, nu: RationalWeight) -> Self {
        RealPSParam {
            lambda_bar: mod_2(lambda),
            nu,
        }
    }
}

fn mod_2(w: &Weight) -> Weight {
    Weight(w.0.iter().map(|c| c.rem_euclid(2)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Complex,
    Real,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PSParam {
    Complex(ComplexPSParam),
    Real(RealPSParam),
}

impl PSParam {
    pub fn side(&self) -> Side {
        match self {
            PSParam::Complex(_) => Side::Complex,
            PSParam::Real(_) => Side::Real,
        }
    }

    pub fn lambda(&self) -> &Weight {
        match self {
            PSParam::Complex(p) => &p.lambda,
            PSParam::Real(p) => &p.lambda_bar,
        }
    }

    pub fn nu(&self) -> &RationalWeight {
        match self {
            PSParam::Complex(p) => &p.nu,
            PSParam::Real(p) => &p.nu,
        }
    }
}

/// Greatest element of the simultaneous W-orbit of a parameter.
pub fn canonicalize(rd: &RootDatum, p: &PSParam) -> PSParam {
    let images = rd.weyl_group().iter().map(|w| match p {
        PSParam::Complex(c) => PSParam::Complex(ComplexPSParam {
            lambda: w.apply(&c.lambda),
            nu: w.apply_rational(&c.nu),
        }),
        PSParam::Real(r) => PSParam::Real(RealPSParam {
            lambda_bar: mod_2(&w.apply(&r.lambda_bar)),
            nu: w.apply_rational(&r.nu),
        }),
    });
    images.max().expect("the Weyl group is nonempty")
}

/// Integer combination of canonical principal-series parameters of one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardClass {
    side: Side,
    terms: BTreeMap<PSParam, i64>,
}

impl StandardClass {
    pub fn zero(side: Side) -> Self {
        StandardClass {
            side,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(rd: &RootDatum, p: PSParam) -> Self {
        let mut c = Self::zero(p.side());
        c.add_term(rd, p, 1).expect("side matches");
        c
    }

    pub fn complex(rd: &RootDatum, lambda: Weight, nu: RationalWeight) -> Self {
        Self::basis(rd, PSParam::Complex(ComplexPSParam { lambda, nu }))
    }

    pub fn real(rd: &RootDatum, lambda: &Weight, nu: RationalWeight) -> Self {
        Self::basis(rd, PSParam::Real(RealPSParam::new(lambda, nu)))
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &BTreeMap<PSParam, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, rd: &RootDatum, p: PSParam, mult: i64) -> Result<()> {
        if p.side() != self.side {
            return Err(Error::WrongSide);
        }
        if mult == 0 {
            return Ok(());
        }
        let key = canonicalize(rd, &p);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add(&self, rd: &RootDatum, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (p, &m) in &other.terms {
            out.add_term(rd, p.clone(), m)?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.side);
        }
        StandardClass {
            side: self.side,
            terms: self
                .terms
                .iter()
                .map(|(p, &m)| (p.clone(), m * k))
                .collect(),
        }
    }
}

/// Choice of continuous parameter in the image of a complex principal series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    /// nu' = (lambda + nu) / 2.
    #[default]
    HalfSum,
    /// nu' = nu.
    Nu,
}

impl Convention {
    pub fn as_str(&self) -> &'static str {
        match self {
            Convention::HalfSum => "half-sum",
            Convention::Nu => "nu",
        }
    }
}

impl FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "half-sum" => Ok(Convention::HalfSum),
            "nu" => Ok(Convention::Nu),
            other => Err(format!(
                "unknown convention `{other}` (expected half-sum or nu)"
            )),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn restrict_param(p: &ComplexPSParam, convention: Convention) -> RealPSParam {
    let nu = match convention {
        Convention::HalfSum => p.lambda.to_rational().add(&p.nu).half(),
        Convention::Nu => p.nu.clone(),
    };
    RealPSParam::new(&p.lambda, nu)
}

/// The restriction homomorphism on standard classes:
/// [I_C(lambda, nu)] maps to [I_R(lambda mod 2, nu')].
pub fn restriction_hom(
    pair: &SymmetricPairData,
    x: &StandardClass,
    convention: Convention,
) -> Result<StandardClass> {
    if x.side != Side::Complex {
        return Err(Error::WrongSide);
    }
    let rd = &pair.g_datum;
    let mut out = StandardClass::zero(Side::Real);
    for (p, &m) in &x.terms {
        let PSParam::Complex(c) = p else {
            unreachable!("complex class holds complex parameters")
        };
        out.add_term(rd, PSParam::Real(restrict_param(c, convention)), m)?;
    }
    Ok(out)
}

fn require_dominant(rd: &RootDatum, w: &Weight) -> Result<()> {
    if rd.is_dominant(w) {
        Ok(())
    } else {
        Err(Error::NotDominant(w.clone()))
    }
}

/// x tensor F(epsilon): each basis element shifts by every weight of F(epsilon).
pub fn tensor_with_finite(
    pair: &SymmetricPairData,
    x: &StandardClass,
    epsilon: &Weight,
) -> Result<StandardClass> {
    let rd = &pair.g_datum;
    require_dominant(rd, epsilon)?;
    let weights = weight_multiset(rd, epsilon)?;
    let mut out = StandardClass::zero(x.side);
    for (p, &m) in &x.terms {
        for (mu, &k) in &weights {
            let shifted = match p {
                PSParam::Complex(c) => PSParam::Complex(ComplexPSParam {
                    lambda: c.lambda.add(mu),
                    nu: c.nu.add(&mu.to_rational()),
                }),
                PSParam::Real(r) => PSParam::Real(RealPSParam::new(
                    &r.lambda_bar.add(mu),
                    r.nu.add(&mu.to_rational()),
                )),
            };
            out.add_term(rd, shifted, m * k)?;
        }
    }
    Ok(out)
}

pub fn tensor_with_finite_complex(
    pair: &SymmetricPairData,
    x: &StandardClass,
    epsilon: &Weight,
) -> Result<StandardClass> {
    if x.side != Side::Complex {
        return Err(Error::WrongSide);
    }
    tensor_with_finite(pair, x, epsilon)
}

pub fn tensor_with_finite_real(
    pair: &SymmetricPairData,
    x: &StandardClass,
    epsilon: &Weight,
) -> Result<StandardClass> {
    if x.side != Side::Real {
        return Err(Error::WrongSide);
    }
    tensor_with_finite(pair, x, epsilon)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InfinitesimalCharacter {
    Complex(RationalWeight, RationalWeight),
    Real(RationalWeight),
}

/// Dominant representatives of ((nu + lambda)/2, (nu - lambda)/2).
pub fn inf_char_complex(rd: &RootDatum, p: &ComplexPSParam) -> InfinitesimalCharacter {
    let l = p.lambda.to_rational();
    let left = rd.dominant_representative_rational(&p.nu.add(&l).half()).0;
    let right = rd.dominant_representative_rational(&p.nu.sub(&l).half()).0;
    InfinitesimalCharacter::Complex(left, right)
}

/// Dominant representative of W nu.
pub fn inf_char_real(rd: &RootDatum, p: &RealPSParam) -> InfinitesimalCharacter {
    InfinitesimalCharacter::Real(rd.dominant_representative_rational(&p.nu).0)
}

/// dim Hom_G(V_tau, I_C(lambda, nu)) = dim V_tau[lambda].
pub fn ktype_mult_complex(pair: &SymmetricPairData, lambda: &Weight, tau: &Weight) -> Result<i64> {
    weight_multiplicity(&pair.g_datum, tau, lambda)
}

/// Multiplicity of the M-character lambda_bar in V_tau restricted to M.
pub fn ktype_mult_real(pair: &SymmetricPairData, p: &RealPSParam, tau: &Weight) -> Result<i64> {
    let chi = reduce_mod_2(pair, &p.lambda_bar);
    let restricted = restrict_to_m(pair, tau)?;
    Ok(restricted
        .multiplicity(chi)
        .expect("restriction to M of a representation is a genuine character"))
}

/// Test points for the translation and infinitesimal-character checks.
#[derive(Clone, Debug)]
pub struct Grid {
    pub lambdas: Vec<Weight>,
    pub nus: Vec<RationalWeight>,
    pub epsilons: Vec<Weight>,
}

impl Grid {
    /// lambda with norm at most `bound`, dominant epsilon with norm at most
    /// `bound`, nu in {0, omega_1/2, omega_1, rho, rho/3}.
    pub fn standard(rd: &RootDatum, bound: i64) -> Self {
        let n = rd.rank();
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let omega1 = rd.fundamental_weights()[0].to_rational();
        let rho = rd.rho_rational();
        Grid {
            lambdas: box_weights(n, bound),
            nus: vec![
                RationalWeight::zero(n),
                omega1.scale(&q(1, 2)),
                omega1,
                rho.clone(),
                rho.scale(&q(1, 3)),
            ],
            epsilons: box_weights(n, bound)
                .into_iter()
                .filter(|e| rd.is_dominant(e))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationMismatch {
    pub lambda: Weight,
    pub nu: RationalWeight,
    pub epsilon: Weight,
    pub lhs: StandardClass,
    pub rhs: StandardClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub points_checked: usize,
    pub mismatches: Vec<TranslationMismatch>,
}

/// R(x tensor F_C(epsilon)) against R(x) tensor F_R(epsilon) at every grid point.
pub fn verify_translation_commutes(
    pair: &SymmetricPairData,
    grid: &Grid,
    convention: Convention,
) -> Result<TranslationReport> {
    verify_translation_with(pair, grid, |x| restriction_hom(pair, x, convention))
}

/// Same check with an arbitrary candidate for the restriction map.
pub fn verify_translation_with(
    pair: &SymmetricPairData,
    grid: &Grid,
    r: impl Fn(&StandardClass) -> Result<StandardClass>,
) -> Result<TranslationReport> {
    let rd = &pair.g_datum;
    let mut report = TranslationReport {
        points_checked: 0,
        mismatches: Vec::new(),
    };
    for lambda in &grid.lambdas {
        for nu in &grid.nus {
            let x = StandardClass::complex(rd, lambda.clone(), nu.clone());
            let rx = r(&x)?;
            for epsilon in &grid.epsilons {
                let lhs = r(&tensor_with_finite_complex(pair, &x, epsilon)?)?;
                let rhs = tensor_with_finite_real(pair, &rx, epsilon)?;
                report.points_checked += 1;
                if lhs != rhs {
                    report.mismatches.push(TranslationMismatch {
                        lambda: lambda.clone(),
                        nu: nu.clone(),
                        epsilon: epsilon.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfcharFailure {
    pub lambda: Weight,
    pub nu: RationalWeight,
    pub real: RationalWeight,
    pub complex_left: RationalWeight,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfcharReport {
    pub points_checked: usize,
    pub failures: Vec<InfcharFailure>,
}

/// The infinitesimal character of the image of [I_C(lambda, nu)] must be the
/// left component of that of I_C(lambda, nu), up to W.
pub fn verify_infchar_compat(
    pair: &SymmetricPairData,
    points: &[(Weight, RationalWeight)],
    convention: Convention,
) -> Result<InfcharReport> {
    let rd = &pair.g_datum;
    let mut report = InfcharReport {
        points_checked: 0,
        failures: Vec::new(),
    };
    for (lambda, nu) in points {
        let x = StandardClass::complex(rd, lambda.clone(), nu.clone());
        let InfinitesimalCharacter::Complex(left, _) = inf_char_complex(
            rd,
            &ComplexPSParam {
                lambda: lambda.clone(),
                nu: nu.clone(),
            },
        ) else {
            unreachable!()
        };
        for p in restriction_hom(pair, &x, convention)?.terms().keys() {
            let PSParam::Real(rp) = p else { unreachable!() };
            let InfinitesimalCharacter::Real(real) = inf_char_real(rd, rp) else {
                unreachable!()
            };
            report.points_checked += 1;
            if !rd.same_w_orbit(&real, &left) {
                report.failures.push(InfcharFailure {
                    lambda: lambda.clone(),
                    nu: nu.clone(),
                    real,
                    complex_left: left.clone(),
                });
            }
        }
    }
    Ok(report)
}

/// All (lambda, nu) pairs of a grid.
pub fn grid_points(grid: &Grid) -> Vec<(Weight, RationalWeight)> {
    grid.lambdas
        .iter()
        .flat_map(|l| grid.nus.iter().map(move |n| (l.clone(), n.clone())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalRow {
    pub tau: Weight,
    /// Frobenius reciprocity over M for I_R(0, 0).
    pub frobenius: i64,
    /// q = 1 total of [O_{N_theta}].
    pub theta_cone: i64,
    /// q = 1 total of R[O_{N_{-Delta}}].
    pub complex_cone: i64,
}

impl SphericalRow {
    pub fn agrees(&self) -> bool {
        self.frobenius == self.theta_cone && self.theta_cone == self.complex_cone
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalReport {
    pub rows: Vec<SphericalRow>,
}

impl SphericalReport {
    pub fn mismatches(&self) -> Vec<&SphericalRow> {
        self.rows.iter().filter(|r| !r.agrees()).collect()
    }
}

/// Three-way K-type comparison for the spherical principal series.
pub fn spherical_ktype_crosscheck(
    pair: &SymmetricPairData,
    bound: i64,
    degree: usize,
) -> Result<SphericalReport> {
    pair.require_split()?;
    let theta = qone_ktype_totals(pair, &nilcone_theta_structure_sheaf(pair, degree)?, bound)?;
    let complex = qone_ktype_totals(
        pair,
        &restrict_R(&nilcone_complex_structure_sheaf(pair, degree), pair)?,
        bound,
    )?;
    let spherical = RealPSParam::new(
        &Weight::zero(pair.g_datum.rank()),
        RationalWeight::zero(pair.g_datum.rank()),
    );
    let rows = pair
        .k_types_up_to(bound)
        .into_iter()
        .map(|tau| {
            Ok(SphericalRow {
                frobenius: ktype_mult_real(pair, &spherical, &tau)?,
                theta_cone: theta.get(&tau),
                complex_cone: complex.get(&tau),
                tau,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SphericalReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairdata::load_pair;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn rw(v: &[(i64, i64)]) -> RationalWeight {
        RationalWeight(
            v.iter()
                .map(|&(a, b)| BigRational::new(a.into(), b.into()))
                .collect(),
        )
    }

    #[test]
    fn infinitesimal_characters() {
        let p = load_pair("sl2r").unwrap();
        let rd = &p.g_datum;
        let ic = inf_char_complex(
            rd,
            &ComplexPSParam {
                lambda: w(&[2]),
                nu: rw(&[(0, 1)]),
            },
        );
        assert_eq!(
            ic,
            InfinitesimalCharacter::Complex(rw(&[(1, 1)]), rw(&[(1, 1)]))
        );
        let ic = inf_char_complex(
            rd,
            &ComplexPSParam {
                lambda: w(&[0]),
                nu: rw(&[(2, 1)]),
            },
        );
        assert_eq!(
            ic,
            InfinitesimalCharacter::Complex(rw(&[(1, 1)]), rw(&[(1, 1)]))
        );
        let r = RealPSParam::new(&w(&[1]), rw(&[(-3, 2)]));
        assert_eq!(
            inf_char_real(rd, &r),
            InfinitesimalCharacter::Real(rw(&[(3, 2)]))
        );
    }

    #[test]
    fn restriction_examples() {
        let p = load_pair("sl2r").unwrap();
        let rd = &p.g_datum;
        let x = StandardClass::complex(rd, w(&[2]), rw(&[(0, 1)]));
        let y = restriction_hom(&p, &x, Convention::HalfSum).unwrap();
        assert_eq!(y, StandardClass::real(rd, &w(&[0]), rw(&[(1, 1)])));
        let z = StandardClass::complex(rd, w(&[0]), rw(&[(0, 1)]));
        let two = z.scale(2).add(rd, &z.scale(-1)).unwrap();
        assert_eq!(
            restriction_hom(&p, &two, Convention::HalfSum).unwrap(),
            StandardClass::real(rd, &w(&[0]), rw(&[(0, 1)]))
        );
        assert_eq!(
            restriction_hom(&p, &y, Convention::HalfSum).unwrap_err(),
            Error::WrongSide
        );
    }

    #[test]
    fn canonical_forms_identify_orbits() {
        let p = load_pair("sl3r").unwrap();
        let rd = &p.g_datum;
        let a = StandardClass::complex(rd, w(&[1, -2]), rw(&[(1, 3), (1, 2)]));
        for e in rd.weyl_group() {
            let b = StandardClass::complex(
                rd,
                e.apply(&w(&[1, -2])),
                e.apply_rational(&rw(&[(1, 3), (1, 2)])),
            );
            assert_eq!(a, b);
        }
    }

    #[test]
    fn translation_examples() {
        let p = load_pair("sl2r").unwrap();
        let rd = &p.g_datum;
        let x = StandardClass::complex(rd, w(&[0]), rw(&[(0, 1)]));
        let t = tensor_with_finite_complex(&p, &x, &w(&[2])).unwrap();
        let mut expected = StandardClass::complex(rd, w(&[2]), rw(&[(2, 1)]));
        expected = expected
            .add(rd, &StandardClass::complex(rd, w(&[0]), rw(&[(0, 1)])))
            .unwrap();
        expected = expected
            .add(rd, &StandardClass::complex(rd, w(&[-2]), rw(&[(-2, 1)])))
            .unwrap();
        assert_eq!(t, expected);
        assert_eq!(tensor_with_finite_complex(&p, &x, &w(&[0])).unwrap(), x);
        let total: i64 = t.terms().values().sum();
        assert_eq!(total, 3);

        let r = StandardClass::real(rd, &w(&[0]), rw(&[(0, 1)]));
        let t = tensor_with_finite_real(&p, &r, &w(&[2])).unwrap();
        let mut expected = StandardClass::real(rd, &w(&[0]), rw(&[(2, 1)]));
        expected = expected
            .add(rd, &StandardClass::real(rd, &w(&[0]), rw(&[(0, 1)])))
            .unwrap();
        expected = expected
            .add(rd, &StandardClass::real(rd, &w(&[0]), rw(&[(-2, 1)])))
            .unwrap();
        assert_eq!(t, expected);
    }

    #[test]
    fn ktype_multiplicities() {
        let p = load_pair("sl2r").unwrap();
        assert_eq!(ktype_mult_complex(&p, &w(&[0]), &w(&[0])).unwrap(), 1);
        assert_eq!(ktype_mult_complex(&p, &w(&[0]), &w(&[2])).unwrap(), 1);
        assert_eq!(ktype_mult_complex(&p, &w(&[4]), &w(&[2])).unwrap(), 0);
        let sph = RealPSParam::new(&w(&[0]), rw(&[(0, 1)]));
        for n in -6..=6i64 {
            let expected = i64::from(n % 2 == 0);
            assert_eq!(ktype_mult_real(&p, &sph, &w(&[n])).unwrap(), expected);
        }
        let q = load_pair("sl3r").unwrap();
        let sph = RealPSParam::new(&w(&[0, 0]), rw(&[(0, 1), (0, 1)]));
        let got: Vec<i64> = [0, 2, 4, 6]
            .iter()
            .map(|&t| ktype_mult_real(&q, &sph, &w(&[t])).unwrap())
            .collect();
        assert_eq!(got, vec![1, 0, 2, 1]);
    }

    #[test]
    fn small_grids() {
        let p = load_pair("sl2r").unwrap();
        let grid = Grid::standard(&p.g_datum, 3);
        let r = verify_translation_commutes(&p, &grid, Convention::HalfSum).unwrap();
        assert!(r.mismatches.is_empty());
        assert_eq!(r.points_checked, 7 * 5 * 4);
        let r = verify_infchar_compat(&p, &grid_points(&grid), Convention::HalfSum).unwrap();
        assert!(r.failures.is_empty());
        let bad = verify_infchar_compat(&p, &grid_points(&grid), Convention::Nu).unwrap();
        assert!(!bad.failures.is_empty());
    }

    #[test]
    fn perturbed_restriction_breaks_translation() {
        let p = load_pair("sl2r").unwrap();
        let grid = Grid::standard(&p.g_datum, 2);
        // forget the parity of lambda
        let r = verify_translation_with(&p, &grid, |x| {
            let mut out = StandardClass::zero(Side::Real);
            for (q, &m) in x.terms() {
                out.add_term(
                    &p.g_datum,
                    PSParam::Real(RealPSParam::new(&Weight::zero(1), q.nu().clone())),
                    m,
                )?;
            }
            Ok(out)
        })
        .unwrap();
        assert!(!r.mismatches.is_empty());
    }

    #[test]
    fn spherical_small() {
        let p = load_pair("sl2r").unwrap();
        let r = spherical_ktype_crosscheck(&p, 6, 8).unwrap();
        assert!(r.mismatches().is_empty());
        assert_eq!(r.rows.len(), 13);
    }
}
