use perfect_codes::codes::{decide_pair, Status};
use perfect_codes::constructions::{
    build_field_agammal, build_field_c2, build_sym_chain, chain_partner, chain_transversal,
    check_claims, parse_family,
};
use perfect_codes::group::is_normal;
use perfect_codes::perm::Perm;

#[test]
fn larger_field_instances_have_the_stated_orders() {
    let i = build_field_c2(3).unwrap().instance;
    assert_eq!((i.g.order(), i.a.order(), i.h.order(), i.index()), (1152, 128, 4, 9));
    let i = build_field_agammal(5, 3).unwrap().instance;
    assert_eq!((i.g.order(), i.a.order(), i.h.order()), (46500, 375, 5));
}

#[test]
fn prime_field_case_degenerates_to_a_equal_h() {
    for p in [3, 5, 7] {
        let spec = build_field_agammal(p, 1).unwrap();
        let i = &spec.instance;
        assert_eq!(i.a.order(), i.h.order());
        assert!(is_normal(&i.g, &i.h).unwrap());
        assert_eq!(decide_pair(i, 1_000_000).unwrap().verdict.status, Status::PerfectCode);
    }
}

#[test]
fn every_family_meets_its_expected_claims() {
    for text in [
        "dihedral:3",
        "field-c2:2",
        "agammal:3,3",
        "agammal:7,1",
        "sym-chain:2,3,5",
        "intransitive:3,6",
        "affine:7",
    ] {
        let spec = parse_family(text).unwrap();
        for c in check_claims(&spec, 100_000_000).unwrap() {
            assert_eq!(c.holds, Some(true), "{text}: {:?} {:?}", c.claim, c.detail);
        }
    }
}

/// For `x = x(sigma)` and `h ∈ Sym(l)`, the partner `y` lies in the
/// transversal and `xh ∈ H y^-1`.
#[test]
fn chain_partners_realise_the_product_condition() {
    for (l, m, n) in [(1, 2, 3), (1, 2, 4), (2, 3, 5), (1, 3, 5), (2, 4, 6)] {
        let spec = build_sym_chain(l, m, n).unwrap();
        let h = &spec.instance.h;
        let x = chain_transversal(l, m, n).unwrap();
        for (sigma, xs) in x.injections.iter().zip(&x.elements) {
            for t in h.elements() {
                let y = chain_partner(l, m, n, sigma, t).unwrap();
                assert!(x.elements.contains(&y), "({l},{m},{n}) {xs} {t}: partner {y} not in X");
                let rest = xs.then(t).then(&y);
                assert!(h.contains(&rest), "({l},{m},{n}) {xs} {t} {y}: x h y = {rest}");
            }
        }
    }
}

#[test]
fn chain_partner_rejects_elements_outside_the_small_factor() {
    let h = Perm::transposition(5, 0, 4);
    assert!(chain_partner(2, 3, 5, &[0, 1], &h).is_err());
}
