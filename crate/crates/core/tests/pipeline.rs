use std::path::Path;

use sqdisc_core::arith::{int, rat};
use sqdisc_core::classify::{square_disc_by_j, square_disc_direct};
use sqdisc_core::families::{Catalog, SINGLE_LEVELS};
use sqdisc_core::isogeny::{find_chain_from, ModularPolynomials, CHAIN_LEVELS};
use sqdisc_core::suites::family_member;
use sqdisc_core::Error;

fn data_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))
}

#[test]
fn data_files_match_builtin() {
    let cat = Catalog::from_dir(data_dir()).unwrap();
    let mp = ModularPolynomials::from_dir(data_dir(), &cat).unwrap();
    for n in [2, 3, 7] {
        assert_eq!(mp.get(n).unwrap(), ModularPolynomials::builtin().get(n).unwrap());
    }
    assert_eq!(cat.finite_cases(), Catalog::builtin().finite_cases());
    assert!(matches!(Catalog::from_dir(Path::new("/nonexistent")), Err(Error::Io(_))));
}

#[test]
fn cstar_examples() {
    let cat = Catalog::builtin();
    assert!(cat.cstar_membership(2, &int(36)).unwrap());
    assert!(!cat.cstar_membership(2, &int(0)).unwrap());
    assert!(!cat.cstar_membership(5, &int(1)).unwrap());
}

/// From a parameter to a curve with square discriminant, then to an
/// explicit isogeny whose codomain has the dual j-invariant.
#[test]
fn parameter_to_isogeny() {
    let cat = Catalog::builtin();
    for n in SINGLE_LEVELS {
        for t in [int(3), rat(-5, 7), rat(11, 2)] {
            if cat.degenerate_t_single(n).unwrap().contains(&t) {
                continue;
            }
            let fam = cat.family(n).unwrap();
            let j = cat.theorem1_j(n, &t).unwrap();
            let h = fam.h_param_c.as_ref().unwrap().eval(&t).unwrap();
            let jp = fam.jprime_map.eval(&h).unwrap();
            let m = family_member(&j);
            let g = m.to_general();
            assert!(square_disc_direct(&g).unwrap(), "N = {n}, t = {t}");
            assert!(square_disc_by_j(&g).unwrap().is_square);
            if CHAIN_LEVELS.contains(&n) {
                let chain = find_chain_from(&m, n, &jp).unwrap().expect("chain exists");
                assert_eq!(chain.iter().map(|s| s.degree).product::<u32>(), n);
                assert_eq!(chain[0].domain, m);
                assert_eq!(chain.last().unwrap().codomain.j_invariant(), Some(jp.clone()));
            } else {
                assert!(ModularPolynomials::builtin().modular_poly_check(n, &j, &jp).unwrap());
            }
        }
    }
}
