use kres_core::characters::{symmetric_algebra_series, GradedVirtualCharacter, VirtualCharacter};
use kres_core::ktheory::{
    koszul_class, nilcone_complex_structure_sheaf, nilcone_theta_structure_sheaf, restrict_R,
    verify_split_proposition, ConeSide, GradedKClass,
};
use kres_core::pairdata::load_pair;
use kres_core::rootdata::Weight;

#[test]
fn split_proposition_all_split_pairs() {
    for (name, d, b) in [("sl2r", 12, 10), ("sl3r", 10, 6), ("sp4r", 8, 4)] {
        let p = load_pair(name).unwrap();
        let r = verify_split_proposition(&p, d, b).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.mismatches);
        assert_eq!(r.window, d - p.dim_k());
    }
}

#[test]
fn truncation_coherence() {
    for name in ["sl2r", "sl3r"] {
        let p = load_pair(name).unwrap();
        let (d, d2) = (8, 11);
        let a = restrict_R(&nilcone_complex_structure_sheaf(&p, d), &p).unwrap();
        let b = restrict_R(&nilcone_complex_structure_sheaf(&p, d2), &p).unwrap();
        let window = d - p.dim_k();
        assert_eq!(
            a.series.with_truncation(window),
            b.series.with_truncation(window)
        );
    }
}

#[test]
fn koszul_resolution_of_p() {
    // S(g) = S(k) (x) S(p) and S(k) times the Koszul class is 1.
    for name in ["sl2r", "sl3r", "sp4r", "su2"] {
        let p = load_pair(name).unwrap();
        let d = 9;
        let sg = symmetric_algebra_series(&p.k_datum, &p.g_as_k_rep, d);
        let sp = symmetric_algebra_series(&p.k_datum, &p.p_as_k_rep, d);
        let c = koszul_class(&p, d).unwrap();
        let window = d - p.dim_k();
        assert_eq!(
            sg.mul(&p.k_datum, &c.series).with_truncation(window),
            sp.with_truncation(window),
            "{name}"
        );
    }
}

#[test]
fn restriction_is_additive_and_linear() {
    let p = load_pair("sl3r").unwrap();
    let d = 8;
    let x = nilcone_complex_structure_sheaf(&p, d);
    let mut y = GradedKClass::zero(ConeSide::ComplexCone, d);
    y.series.add_coefficient(Weight(vec![4]), 1, 3);
    y.series.add_coefficient(Weight(vec![0]), 2, -1);
    let sum = restrict_R(&x.add(&y).unwrap(), &p).unwrap();
    let parts = restrict_R(&x, &p)
        .unwrap()
        .add(&restrict_R(&y, &p).unwrap())
        .unwrap();
    assert_eq!(sum, parts);
    let shifted = GradedKClass {
        side: ConeSide::ComplexCone,
        series: x.series.mul_scalar_poly(&[0, 1]),
    };
    assert_eq!(
        restrict_R(&shifted, &p).unwrap().series,
        restrict_R(&x, &p).unwrap().series.mul_scalar_poly(&[0, 1])
    );
}

#[test]
fn koszul_multiplication_associates_with_tensor() {
    let p = load_pair("sl3r").unwrap();
    let kd = &p.k_datum;
    let d = 7;
    let v =
        GradedVirtualCharacter::from_degrees(&[VirtualCharacter::irreducible(Weight(vec![4]))], d);
    let x = nilcone_complex_structure_sheaf(&p, d).series;
    let c = koszul_class(&p, d).unwrap().series;
    assert_eq!(v.mul(kd, &x).mul(kd, &c), v.mul(kd, &x.mul(kd, &c)));
}

#[test]
fn cone_coefficients_are_actual() {
    for name in ["sl2r", "sl3r", "sp4r"] {
        let p = load_pair(name).unwrap();
        for class in [
            nilcone_complex_structure_sheaf(&p, 8),
            nilcone_theta_structure_sheaf(&p, 8).unwrap(),
        ] {
            let degrees = class.series.degrees();
            assert_eq!(degrees[0], VirtualCharacter::trivial(p.k_datum.rank()));
            assert!(degrees.iter().all(|c| c.is_actual()), "{name}");
        }
    }
}
