use std::io::Write;

use kres_core::characters::{irr_dimension, VirtualCharacter};
use kres_core::pairdata::{catalog_list, load_pair, reduce_mod_2, Catalog};
use kres_core::rootdata::Weight;
use kres_core::Error;

#[test]
fn catalog_invariants_rechecked() {
    for row in catalog_list().unwrap() {
        let p = load_pair(&row.name).unwrap();
        let kd = &p.k_datum;
        let dim = |c: &VirtualCharacter| -> i64 {
            c.iter()
                .map(|(w, &m)| m * irr_dimension(kd, w).unwrap())
                .sum()
        };
        assert_eq!(
            dim(&p.k_adjoint) + dim(&p.p_as_k_rep),
            p.g_datum.dimension() as i64
        );
        assert_eq!(p.g_as_k_rep, p.k_adjoint.add(&p.p_as_k_rep));
        assert_eq!(
            p.invariant_degrees.iter().product::<u32>() as usize,
            p.g_datum.weyl_group().len()
        );
        for x in &p.m_cocharacters {
            for g in &p.k_lattice {
                assert!(g.to_rational().dot(x).is_integer());
            }
        }
        if p.split {
            assert_eq!(
                dim(&p.p_as_k_rep) as usize,
                p.g_datum.positive_roots().len() + p.g_datum.rank()
            );
        }
        assert_eq!(row.dim_g, p.dim_g());
    }
}

#[test]
fn reduction_is_additive() {
    for name in ["sl2r", "sl3r", "sp4r"] {
        let p = load_pair(name).unwrap();
        let n = p.g_datum.rank();
        let grid = kres_core::pairdata::box_weights(n, 3);
        assert_eq!(reduce_mod_2(&p, &Weight::zero(n)), 0);
        for a in &grid {
            for b in &grid {
                assert_eq!(
                    reduce_mod_2(&p, &a.add(b)),
                    reduce_mod_2(&p, a) ^ reduce_mod_2(&p, b)
                );
                assert_eq!(reduce_mod_2(&p, &a.add(&b.scale(2))), reduce_mod_2(&p, a));
            }
        }
    }
}

#[test]
fn directory_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let src =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/catalog/sl2r.toml")).unwrap();
    std::fs::write(dir.path().join("sl2r.toml"), &src).unwrap();
    let mut bad = std::fs::File::create(dir.path().join("broken.toml")).unwrap();
    writeln!(bad, "name = \"broken\"").unwrap();
    let cat = Catalog::from_dir(dir.path()).unwrap();
    assert_eq!(cat.names(), vec!["broken".to_string(), "sl2r".to_string()]);
    assert_eq!(cat.load("sl2r").unwrap().dim_p(), 2);
    assert!(matches!(
        cat.load("broken"),
        Err(Error::CorruptCatalog { .. })
    ));
    assert!(matches!(cat.load("sl3r"), Err(Error::UnknownPair(_))));
}
