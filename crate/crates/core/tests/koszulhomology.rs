use kres_core::koszulhomology::{
    build_koszul_complex, build_module, chain_euler_characteristic, euler_characteristic, homology,
    homology_in_degree,
};
use kres_core::pairdata::load_pair;
use kres_core::rootdata::Weight;

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

#[test]
fn structure_over_grids() {
    for (name, top) in [("sl2r", 4), ("su2", 2)] {
        let p = load_pair(name).unwrap();
        let d = p.dim_k();
        for a in 0..=top {
            for b in 0..=top {
                let m = build_module(&p, &Weight(vec![a]), &Weight(vec![b])).unwrap();
                assert!(m.brackets_hold());
                let c = build_koszul_complex(&m);
                assert!(c.d_squared_is_zero(), "{name} {a} {b}");
                assert!(c.is_k_equivariant());
                for n in 0..=d {
                    assert_eq!(c.chain_dim(n) as i64, binomial(d, n) * m.dim as i64);
                }
                let hs = homology(&p, &c);
                assert!(hs.iter().all(|h| h.is_actual()));
                for n in d + 1..d + 3 {
                    assert!(homology_in_degree(&p, &c, n).is_empty());
                }
                let alt: i64 = hs
                    .iter()
                    .enumerate()
                    .map(|(i, h)| (-1i64).pow(i as u32) * h.dimension(&p.k_datum))
                    .sum();
                let chain: i64 = (0..=d)
                    .map(|i| (-1i64).pow(i as u32) * binomial(d, i) * m.dim as i64)
                    .sum();
                assert_eq!(alt, chain);
                assert_eq!(
                    euler_characteristic(&p, &m),
                    chain_euler_characteristic(&p, &m)
                );
            }
        }
    }
}

#[test]
fn euler_characteristic_is_additive() {
    let p = load_pair("su2").unwrap();
    let m1 = build_module(&p, &Weight(vec![1]), &Weight(vec![2])).unwrap();
    let m2 = build_module(&p, &Weight(vec![2]), &Weight(vec![0])).unwrap();
    let sum = m1.k_character(&p).add(&m2.k_character(&p));
    let direct = euler_characteristic(&p, &m1).add(&euler_characteristic(&p, &m2));
    // the chain-level formula is linear in ch(X)
    let powers = kres_core::characters::exterior_powers(&p.k_datum, &p.k_adjoint, 3);
    let expected = powers.iter().enumerate().fold(
        kres_core::characters::VirtualCharacter::zero(),
        |acc, (i, e)| {
            acc.add(
                &kres_core::characters::tensor_decompose(&p.k_datum, e, &sum)
                    .scale((-1i64).pow(i as u32)),
            )
        },
    );
    assert_eq!(direct, expected);
}

#[test]
fn sl2r_length_one_complex() {
    let p = load_pair("sl2r").unwrap();
    let m = build_module(&p, &Weight(vec![1]), &Weight(vec![3])).unwrap();
    let c = build_koszul_complex(&m);
    assert_eq!(c.boundaries.len(), 1);
    // the single boundary is minus the action of h on the right factor
    let h = &m.action[4];
    assert_eq!(
        c.boundaries[0],
        h.scale(&num_rational::BigRational::from_integer((-1).into()))
    );
}
