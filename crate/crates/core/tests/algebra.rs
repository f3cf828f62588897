mod common;

use std::sync::OnceLock;

use garside_core::criterion::{cube_condition, left_divisors, CheckOptions};
use garside_core::lattice::{SimpleId, SimpleLattice};
use garside_core::normalform::*;
use garside_core::oracle::Ball;
use garside_core::transducer::Transducer;
use garside_core::words::power;
use garside_core::*;
use proptest::prelude::*;

fn structures() -> &'static Vec<(&'static str, SimpleLattice)> {
    static S: OnceLock<Vec<(&'static str, SimpleLattice)>> = OnceLock::new();
    S.get_or_init(common::fixtures)
}

fn cat(a: &[Gen], b: &[Gen]) -> Word {
    [a, b].concat()
}

fn word_triple() -> impl Strategy<Value = (usize, Word, Word, Word)> {
    (0..structures().len()).prop_flat_map(|i| {
        let rank = structures()[i].1.rank() as u16;
        let w = prop::collection::vec((0..rank).prop_map(Gen), 0..7);
        (Just(i), w.clone(), w.clone(), w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_identities_on_words((i, a, b, c) in word_triple()) {
        let rev = structures()[i].1.structure().reversing();
        let eq = |u: &[Gen], v: &[Gen]| rev.positive_equal(u, v).unwrap();
        let u = |x: &[Gen], y: &[Gen]| rev.under(x, y).unwrap();
        let lcm = |x: &[Gen], y: &[Gen]| rev.right_lcm(x, y).unwrap();
        let ab = cat(&a, &b);
        prop_assert!(eq(&u(&c, &ab), &cat(&u(&c, &a), &u(&u(&a, &c), &b))));
        prop_assert!(eq(&u(&ab, &c), &u(&b, &u(&a, &c))));
        prop_assert!(eq(&u(&c, &lcm(&a, &b)), &lcm(&u(&c, &a), &u(&c, &b))));
        prop_assert!(eq(&lcm(&ab, &cat(&a, &c)), &cat(&a, &lcm(&b, &c))));
        prop_assert!(eq(&lcm(&a, &b), &lcm(&b, &a)));
    }

    #[test]
    fn normal_form_survives_relation_rewrites(
        (i, w) in (0..structures().len()).prop_flat_map(|i| {
            let rank = structures()[i].1.rank() as u16;
            (Just(i), prop::collection::vec((0..rank).prop_map(Gen), 0..25))
        }),
        r in any::<prop::sample::Index>(),
        flip in any::<bool>(),
        start in 0usize..25,
    ) {
        let l = &structures()[i].1;
        let p = &l.structure().presentation;
        let r = r.index(p.relations.len());
        // plant the relation side inside the word so a rewrite always applies
        let side = if flip { &p.relations[r].rhs } else { &p.relations[r].lhs };
        let at = start.min(w.len());
        let planted = [&w[..at], side.as_slice(), &w[at..]].concat();
        let rewritten = common::rewrite_once(p, &planted, r, flip, at).unwrap();
        let nf = positive_normal_form(l, &planted);
        prop_assert_eq!(&nf, &positive_normal_form(l, &rewritten));
        let f = NormalForm { numerator: nf, denominator: vec![] };
        prop_assert!(f.check_chain(l).is_ok());
    }

    #[test]
    fn fraction_forms_round_trip(
        (i, w) in (0..structures().len()).prop_flat_map(|i| {
            let rank = structures()[i].1.rank() as u16;
            (Just(i), prop::collection::vec(((0..rank).prop_map(Gen), any::<bool>()), 0..16))
        })
    ) {
        let l = &structures()[i].1;
        let w: SignedWord = w.into_iter().map(|(gen, inverse)| Letter { gen, inverse }).collect();
        let f = fraction_normal_form(l, &w).unwrap();
        prop_assert!(f.check_chain(l).is_ok(), "{}", f.format(l));
        prop_assert!(word_problem(l, &f.to_signed(l), &w).unwrap());
        prop_assert_eq!(fraction_normal_form(l, &f.to_signed(l)).unwrap(), f);
    }

    #[test]
    fn transducer_agrees_with_normal_forms(
        (i, w) in (0..structures().len()).prop_flat_map(|i| {
            let rank = structures()[i].1.rank() as u16;
            (Just(i), prop::collection::vec((0..rank).prop_map(Gen), 0..30))
        })
    ) {
        let l = &structures()[i].1;
        let t = Transducer::build(l).unwrap();
        let nf = positive_normal_form(l, &w);
        prop_assert_eq!(t.run(&w).final_state, head_tail(l, &w).0);
        prop_assert_eq!(t.normal_form(&w).unwrap(), nf);
    }
}

#[test]
fn lattice_axioms() {
    for (name, l) in structures() {
        let ids: Vec<SimpleId> = l.ids().collect();
        let step = (ids.len() / 22).max(1);
        let sample: Vec<SimpleId> = ids.iter().copied().step_by(step).collect();
        for &a in &ids {
            assert_eq!(l.join(a, a), a);
            assert_eq!(l.meet(a, a), a);
            assert_eq!(l.join(a, SimpleId::ONE), a);
            assert_eq!(l.meet(a, l.delta()), a);
            assert!(l.right_divides(a, l.delta()), "{name}: {}", l.format(a));
            assert_eq!(l.rcomp(l.lcomp(a)), a);
        }
        for &a in &sample {
            for &b in &ids {
                assert_eq!(l.join(a, b), l.join(b, a));
                assert_eq!(l.meet(a, b), l.meet(b, a));
                assert_eq!(l.join(a, l.meet(a, b)), a);
                assert_eq!(l.meet(a, l.join(a, b)), a);
                assert!(l.left_divides(a, l.join(a, b)));
                assert!(l.left_divides(l.meet(a, b), b));
                for &c in &sample {
                    assert_eq!(l.join(l.join(a, b), c), l.join(a, l.join(b, c)), "{name}");
                    assert_eq!(l.meet(l.meet(a, b), c), l.meet(a, l.meet(b, c)), "{name}");
                }
            }
        }
    }
}

#[test]
fn products_of_two_simples_divide_delta_squared() {
    for (name, l) in structures() {
        let rev = l.structure().reversing();
        let d2 = power(l.rep(l.delta()), 2);
        let step = (l.len() / 40).max(1);
        for s in l.ids().step_by(step) {
            for t in l.ids() {
                let st = cat(l.rep(s), l.rep(t));
                assert!(rev.left_divides(&st, &d2).unwrap(), "{name}");
            }
        }
    }
}

#[test]
fn divisor_enumeration_matches_lattice_size() {
    for (name, l) in structures() {
        let s = l.structure();
        let divs = left_divisors(&s.table, &s.delta, s.max_cells, 100_000).unwrap();
        assert_eq!(divs.len(), l.len(), "{name}");
    }
}

#[test]
fn cube_condition_is_symmetric_on_verified_tables() {
    for (_, l) in structures().iter().take(4) {
        let rev = l.structure().reversing();
        let n = l.rank() as u16;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = cube_condition(&rev, Gen(x), Gen(y), Gen(z)).unwrap();
                    let b = cube_condition(&rev, Gen(y), Gen(x), Gen(z)).unwrap();
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let (t, p) = common::torus(3, 5);
    let opts = CheckOptions::default();
    let d = t.garside_element();
    let a = garside_core::criterion::garside_report(&p, Some(&d), &opts).to_json();
    let b = garside_core::criterion::garside_report(&p, Some(&d), &opts).to_json();
    assert_eq!(a, b);
}

/// Lattice, gcd and transducer answers against ball exhaustion on short words.
#[test]
fn small_structures_match_the_oracle() {
    for (name, radius) in [("braid", 14), ("Mchi", 11)] {
        let l = &structures().iter().find(|(n, _)| *n == name).unwrap().1;
        let p = &l.structure().presentation;
        let ball = Ball::new(p, radius).unwrap();
        let t = Transducer::build(l).unwrap();
        for a in l.ids() {
            for b in l.ids() {
                let (ra, rb) = (l.rep(a), l.rep(b));
                let join = ball.lcm_set(ra, rb).unwrap();
                assert_eq!(join, vec![ball.class_of(l.rep(l.join(a, b))).unwrap()], "{name}");
                let meet = ball.left_gcd(ra, rb).unwrap();
                assert_eq!(meet, ball.class_of(l.rep(l.meet(a, b))).unwrap(), "{name}");
                let rg = ball.right_gcd(ra, rb).unwrap();
                assert_eq!(rg, ball.class_of(l.rep(l.right_gcd(a, b))).unwrap(), "{name}");
            }
        }
        let delta_class = ball.class_of(l.rep(l.delta())).unwrap();
        let simples: Vec<u32> = ball.prefix_classes(delta_class).into_iter().collect();
        for w in common::words_up_to(l.rank(), 5) {
            // brute-force maximal simple right divisor
            let c = ball.class_of(&w).unwrap();
            let suffixes = ball.suffix_classes(c);
            let divs: Vec<u32> = simples.iter().copied().filter(|s| suffixes.contains(s)).collect();
            let top = divs
                .iter()
                .copied()
                .find(|&d| divs.iter().all(|&e| ball.suffix_classes(d).contains(&e)))
                .unwrap();
            let fs = t.run(&w).final_state;
            assert_eq!(ball.class_of(l.rep(fs)).unwrap(), top, "{name}");
        }
        for u in common::words_up_to(l.rank(), 3) {
            for v in common::words_up_to(l.rank(), 3) {
                let g = right_gcd(l, &u, &v);
                assert_eq!(ball.class_of(&g).unwrap(), ball.right_gcd(&u, &v).unwrap(), "{name}");
            }
        }
    }
}
