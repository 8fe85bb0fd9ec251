mod common;

use mirror_stringy::exact::mirror_transform;
use mirror_stringy::orbifold::orbifold_term;
use mirror_stringy::stringy::{bracket_with_guard, stringy_decomposition};
use mirror_stringy::{
    bracket, mirror_orbifold_e, per_l_check, q_identity_check, stringy_e, stringy_e_per_l,
    verify, vafa_poincare, BiPoly, EFn, Error, FaceSet, HodgeTable, WeightVector, Q,
};

fn wv(w: &[u64]) -> WeightVector {
    WeightVector::new(w).unwrap()
}

#[test]
fn decomposition_sums_to_total() {
    for w in [&[1u64, 5, 12, 18][..], &[1, 1, 2, 2, 2], &[1, 1, 2, 4, 5], &[1, 1, 1, 1, 1]] {
        let v = wv(w);
        let total: EFn = stringy_decomposition::<Q>(&v).unwrap().into_iter().sum();
        assert_eq!(total, stringy_e::<Q>(&v).unwrap(), "{w:?}");
    }
}

#[test]
fn full_support_elements_are_single_monomials() {
    let v = wv(&[1, 1, 1, 1, 1]);
    for l in 1..5 {
        let e = v.element(l).unwrap();
        assert_eq!(e.size, 5);
        let piece = stringy_e_per_l::<Q>(&v, l).unwrap().to_bipoly().unwrap();
        let expected = BiPoly::from_ints(&[((e.age - 1, 4 - e.age), -1)]);
        assert_eq!(piece, expected);
        assert!(per_l_check(&v, l).unwrap());
    }
}

#[test]
fn quintic_mirror_hodge_numbers() {
    let q = wv(&[1, 1, 1, 1, 1]);
    let r = verify(&q).unwrap();
    assert!(r.passed());
    let h = r.hodge.unwrap();
    assert_eq!((h.get(1, 1), h.get(2, 1), h.get(0, 3)), (101, 1, 1));
    let orb = r.orbifold_hodge.unwrap();
    assert_eq!((orb.get(1, 1), orb.get(2, 1)), (1, 101));
    let p = vafa_poincare::<Q>(&q).unwrap();
    assert_eq!(HodgeTable::from_poincare(&p, 3).unwrap(), h);
}

#[test]
fn orbifold_side_is_mirror_of_stringy_side() {
    let k3 = wv(&[1, 5, 12, 18]);
    let orb = mirror_orbifold_e::<Q>(&k3).unwrap().value.to_bipoly().unwrap();
    // K3 is self-mirror at the level of E-polynomials
    assert_eq!(mirror_transform(&orb, 2).unwrap(), orb);
}

#[test]
fn transverse_population_verifies() {
    for v in common::all_ip(4, 24) {
        let r = verify(&v).unwrap();
        assert!(r.global_identity && r.per_l_failures.is_empty(), "{v}");
        if v.transverse() {
            assert!(r.passed(), "{v}: {r:?}");
        }
    }
}

#[test]
fn per_l_terms_match_on_random_fourfolds() {
    for v in common::random_ip(5, 40, 5, 7) {
        for l in 0..v.degree() {
            assert_eq!(
                stringy_e_per_l::<Q>(&v, l).unwrap(),
                orbifold_term::<Q>(&v, l).unwrap(),
                "{v} l = {l}"
            );
        }
        assert!(q_identity_check(&v));
    }
}

#[test]
fn narrow_guard_band_still_certifies() {
    let k3 = wv(&[1, 5, 12, 18]);
    let face = FaceSet::from_indices(&[0, 2]);
    let default = bracket::<Q>(&k3, face).unwrap();
    for guard in [0, 1, 40] {
        assert_eq!(bracket_with_guard::<Q>(&k3, face, Some(guard)).unwrap(), default);
    }
}

#[test]
fn errors_surface() {
    assert!(matches!(WeightVector::new(&[2, 2, 4]), Err(Error::NotWellFormed { .. })));
    let non_ip = wv(&[1, 2, 5]);
    assert!(matches!(stringy_e::<Q>(&non_ip), Err(Error::NotIP(_))));
    assert!(matches!(verify(&non_ip), Err(Error::NotIP(_))));
    let k3 = wv(&[1, 5, 12, 18]);
    assert!(matches!(stringy_e_per_l::<Q>(&k3, 99), Err(Error::OutOfRange { .. })));
}

#[test]
fn other_scalar_types_agree() {
    use num_rational::Ratio;
    let k3 = wv(&[1, 5, 12, 18]);
    let small = stringy_e::<Ratio<i64>>(&k3).unwrap().to_bipoly().unwrap();
    let big = stringy_e::<Q>(&k3).unwrap().to_bipoly().unwrap();
    assert_eq!(small.to_string(), big.to_string());
}
