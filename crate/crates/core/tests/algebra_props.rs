use proptest::prelude::*;
use semiring_lab::algebra::{
    closure, direct_product, from_json, generate_subalgebra, natural_order, to_json, verify_ai_semiring, ElementMap,
    FiniteSemiring,
};
use semiring_lab::builtin::{builtin, Builtin};
use semiring_lab::iso::find_isomorphism;
use semiring_lab::recheck;

fn any_builtin() -> impl Strategy<Value = Builtin> {
    proptest::sample::select(Builtin::ALL.to_vec())
}

/// `s` with its elements listed in the order `perm`.
fn relabel(s: &FiniteSemiring, perm: &[usize]) -> FiniteSemiring {
    let n = s.size();
    let mut pos = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        pos[p] = i;
    }
    let names = perm.iter().map(|&p| s.element_name(p).to_string()).collect();
    FiniteSemiring::from_fn(None, names, |a, b| pos[s.add(perm[a], perm[b])], |a, b| pos[s.mul(perm[a], perm[b])])
        .unwrap()
}

proptest! {
    #[test]
    fn generated_subalgebras_are_closed(b in any_builtin(), picks in proptest::collection::vec(0usize..7, 1..4)) {
        let s = builtin(b);
        let gens: Vec<usize> = picks.iter().map(|&p| p % s.size()).collect();
        let members = closure(&s, &gens).unwrap();
        prop_assert!(recheck::is_closed(&s, &members));
        prop_assert!(gens.iter().all(|g| members.contains(g)));
        let (sub, incl) = generate_subalgebra(&s, &gens).unwrap();
        prop_assert!(verify_ai_semiring(&sub).is_ai_semiring());
        prop_assert!(recheck::is_embedding(&sub, &s, &incl));
    }

    #[test]
    fn products_of_builtins_are_semirings(a in any_builtin(), b in any_builtin()) {
        let (sa, sb) = (builtin(a), builtin(b));
        let p = direct_product(&[&sa, &sb]).unwrap();
        prop_assert_eq!(p.size(), sa.size() * sb.size());
        prop_assert!(verify_ai_semiring(&p).is_ai_semiring());
    }

    #[test]
    fn relabelled_copies_are_isomorphic(b in any_builtin(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let s = builtin(b);
        let mut perm: Vec<usize> = (0..s.size()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let t = relabel(&s, &perm);
        let map = find_isomorphism(&s, &t).map().cloned();
        prop_assert!(map.is_some());
        prop_assert!(recheck::is_isomorphism(&s, &t, &map.unwrap()));
    }

    #[test]
    fn natural_order_is_a_partial_order(b in any_builtin()) {
        let s = builtin(b);
        let ord = natural_order(&s).unwrap();
        let n = s.size();
        for x in 0..n {
            prop_assert!(ord.le(x, x));
            for y in 0..n {
                prop_assert_eq!(ord.le(x, y) && ord.le(y, x), x == y);
                prop_assert!(ord.le(x, s.add(x, y)));
                for z in 0..n {
                    if ord.le(x, y) && ord.le(y, z) {
                        prop_assert!(ord.le(x, z));
                    }
                }
            }
        }
    }
}

#[test]
fn json_round_trip_is_exact() {
    for b in Builtin::ALL {
        let s = builtin(b);
        let text = to_json(&s);
        assert!(text.ends_with('\n') && text.matches('\n').count() == 1);
        let back = from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&back), text);
    }
    let p = direct_product(&[&builtin(Builtin::S7), &builtin(Builtin::M2)]).unwrap();
    assert_eq!(from_json(&to_json(&p)).unwrap(), p);
}

#[test]
fn identity_map_is_an_automorphism() {
    let s = builtin(Builtin::B21);
    assert!(recheck::is_isomorphism(&s, &s, &ElementMap::identity(s.size())));
}
