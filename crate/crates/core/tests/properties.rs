mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hdts::ccs::{parse, semantics, Term};
use hdts::hdts::{coherence_closure, hom_count, iso_check, validate, HdtsMorphism, StateId, Transition, WeakHdts};
use hdts::precube::{compose, encode_poset_map, hda_check, presheaf_iso, sh_reflect, CubeEncoding};
use hdts::realize::{cubify, in_hda_hdts, realize, realize_cube_map};
use hdts::Label;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn encoding() -> impl Strategy<Value = CubeEncoding> {
    (0..=3usize, 0..=3usize).prop_filter("source fits", |(m, n)| m <= n).prop_flat_map(|(m, n)| {
        let all = CubeEncoding::all(m, n);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

/// Three composable encodings `[m] -> [n] -> [p] -> [q]`.
fn chain() -> impl Strategy<Value = (CubeEncoding, CubeEncoding, CubeEncoding)> {
    encoding().prop_flat_map(|f| {
        let n = f.target_dim();
        (n..=3).prop_flat_map(move |p| {
            let f = f.clone();
            let gs = CubeEncoding::all(n, p);
            (0..gs.len(), p..=3).prop_flat_map(move |(gi, q)| {
                let (f, g) = (f.clone(), gs[gi].clone());
                let hs = CubeEncoding::all(p, q);
                (0..hs.len()).prop_map(move |hi| (f.clone(), g.clone(), hs[hi].clone()))
            })
        })
    })
}

fn label_word(n: usize) -> impl Strategy<Value = Vec<Label>> {
    prop::collection::vec(prop::sample::select(vec!["a", "b"]), n)
        .prop_map(|w| w.iter().map(|l| Label::new(l)).collect())
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = Just(Term::Nil);
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["a", "abar", "b", "c"]), inner.clone()).prop_map(|(l, p)| Term::prefix(l, p)),
            (prop::sample::select(vec!["a", "b"]), inner.clone()).prop_map(|(l, p)| Term::restrict(l, p)),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| Term::sum(p, q)),
            (inner.clone(), inner).prop_map(|(p, q)| Term::par(p, q)),
        ]
    })
}

fn sem(t: &Term) -> hdts::precube::PrecubicalSet {
    semantics(t, &common::alphabet(), 4).unwrap().set
}

fn permuted(x: &WeakHdts, seed: u64) -> WeakHdts {
    let mut ids: Vec<StateId> = x.states().iter().copied().collect();
    ids.shuffle(&mut rng(seed));
    let to: BTreeMap<StateId, StateId> = x.states().iter().copied().zip(ids).collect();
    let ts = x.transitions().iter().map(|t| Transition::new(to[&t.src], t.acts.clone(), to[&t.tgt])).collect();
    WeakHdts::new(x.states().clone(), x.actions().clone(), ts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_extensive_and_idempotent(seed in any::<u64>()) {
        let x = common::random_raw(&mut rng(seed));
        let once = coherence_closure(x.transitions());
        prop_assert!(x.transitions().is_subset(&once));
        prop_assert_eq!(coherence_closure(&once), once.clone());
        prop_assert!(validate(&x.closed()).coherence_closed);
    }

    #[test]
    fn encodings_round_trip_through_vertex_tables(f in encoding()) {
        let back = encode_poset_map(f.source_dim(), f.target_dim(), &f.vertex_table()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn composition_is_associative_and_unital((f, g, h) in chain()) {
        prop_assert_eq!(compose(&compose(&f, &g), &h), compose(&f, &compose(&g, &h)));
        prop_assert_eq!(compose(&CubeEncoding::identity(f.source_dim()), &f), f.clone());
        prop_assert_eq!(compose(&f, &CubeEncoding::identity(f.target_dim())), f.clone());
        let gf = compose(&f, &g);
        for e in 0..1u64 << f.source_dim() {
            prop_assert_eq!(gf.apply(e), g.apply(f.apply(e)));
        }
    }

    #[test]
    fn realizing_cube_maps_is_functorial(((f, g, _), w) in chain().prop_flat_map(|c| {
        let p = c.1.target_dim();
        (Just(c), label_word(p))
    })) {
        let gw = g.pull_word(&w);
        let fgw = f.pull_word(&gw);
        prop_assert_eq!(compose(&f, &g).pull_word(&w), fgw.clone());
        let direct = realize_cube_map(&compose(&f, &g), &fgw, &w).unwrap();
        let stepwise = realize_cube_map(&f, &fgw, &gw).unwrap().then(&realize_cube_map(&g, &gw, &w).unwrap());
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn uisa_splits_into_csa2_and_csa3(seed in any::<u64>()) {
        let x = common::random_closed(&mut rng(seed));
        let r = validate(&x);
        prop_assert_eq!(r.csa2 && r.csa3, r.uisa);
        prop_assert!(!r.uisa || r.intermediate);
    }

    #[test]
    fn iso_check_finds_relabelled_copies(seed in any::<u64>()) {
        let x = common::random_closed(&mut rng(seed));
        let y = permuted(&x, seed ^ 1);
        let f = iso_check(&x, &y);
        prop_assert!(f.is_some());
        prop_assert!(f.unwrap().check(&x, &y).is_ok());
        prop_assert!(hom_count(&x, &x) >= 1);
    }

    #[test]
    fn reflection_reaches_the_hda_paradigm(seed in any::<u64>()) {
        let k = common::random_glued(&mut rng(seed));
        let (q, map) = sh_reflect(&k);
        prop_assert!(hda_check(&q).is_empty());
        k.check_map(&q, &map).unwrap();
        prop_assert!(iso_check(&realize(&k).system, &realize(&q).system).is_some());
        prop_assert_eq!(sh_reflect(&q).0.len(), q.len());
    }

    #[test]
    fn realizations_satisfy_the_intermediate_axiom(seed in any::<u64>()) {
        let k = common::random_glued(&mut rng(seed));
        let r = realize(&k);
        prop_assert!(validate(&r.system).intermediate);
        prop_assert!(validate(&r.system).coherence_closed);
    }

    #[test]
    fn cubification_keeps_states(seed in any::<u64>()) {
        let x = common::random_closed(&mut rng(seed));
        let c = cubify(&x);
        prop_assert!(c.bijective_on_states(&x));
        prop_assert!(c.p.check(c.system(), &x).is_ok());
    }

    #[test]
    fn terms_print_and_parse_back(t in term()) {
        prop_assert_eq!(parse(&t.to_string(), &common::alphabet()).unwrap(), t);
    }

    #[test]
    fn recursion_free_terms_are_strong(t in term()) {
        let k = sem(&t);
        prop_assert!(in_hda_hdts(&k), "{}", t);
        prop_assert_eq!(realize(&k).closure_added(), 0);
    }

    #[test]
    fn sum_and_par_commute(p in term(), q in term()) {
        prop_assert!(presheaf_iso(&sem(&Term::sum(p.clone(), q.clone())), &sem(&Term::sum(q.clone(), p.clone())), false).is_some());
        prop_assert!(presheaf_iso(&sem(&Term::par(p.clone(), q.clone())), &sem(&Term::par(q, p)), false).is_some());
    }
}

#[test]
fn cubes_of_length_four_satisfy_every_axiom() {
    for n in 0..=4 {
        for w in common::words(n, &["a", "b"]) {
            let r = validate(&hdts::hdts::cube(&w));
            assert!(r.all_pass(), "{w:?}: {r:?}");
        }
    }
}

#[test]
fn identity_morphisms_compose() {
    let x = common::random_closed(&mut rng(7));
    let id: HdtsMorphism = x.identity();
    assert_eq!(id.then(&id), id);
}
