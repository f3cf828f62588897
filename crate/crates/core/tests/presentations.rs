mod common;

use garside_core::generators::*;
use garside_core::words::{free_reduce, inverse_signed, power, positive};
use garside_core::*;
use proptest::prelude::*;

fn gen_word(rank: u16, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank).prop_map(Gen), 1..=max)
}

fn arb_presentation() -> impl Strategy<Value = Presentation> {
    (2u16..5).prop_flat_map(|rank| {
        prop::collection::vec((gen_word(rank, 5), gen_word(rank, 5)), 0..5).prop_map(move |rels| {
            let relations = rels.into_iter().map(|(l, r)| Relation::new(l, r).unwrap()).collect();
            Presentation::new(Alphabet::indexed("g", rank as usize), relations).unwrap()
        })
    })
}

/// One relation per unordered pair, each starting with the pair's letters.
fn arb_complemented() -> impl Strategy<Value = Presentation> {
    (2u16..5).prop_flat_map(|rank| {
        let pairs: Vec<(u16, u16)> = (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).collect();
        let n = pairs.len();
        prop::collection::vec((prop::collection::vec((0..rank).prop_map(Gen), 0..4), prop::collection::vec((0..rank).prop_map(Gen), 0..4)), n)
            .prop_map(move |tails| {
                let relations = pairs
                    .iter()
                    .zip(tails)
                    .map(|(&(i, j), (a, b))| {
                        let mut lhs = vec![Gen(i)];
                        lhs.extend(a);
                        let mut rhs = vec![Gen(j)];
                        rhs.extend(b);
                        Relation::new(lhs, rhs).unwrap()
                    })
                    .collect();
                Presentation::new(Alphabet::indexed("x", rank as usize), relations).unwrap()
            })
    })
}

fn signed(rank: u16) -> impl Strategy<Value = SignedWord> {
    prop::collection::vec(((0..rank).prop_map(Gen), any::<bool>()), 0..12)
        .prop_map(|v| v.into_iter().map(|(gen, inverse)| Letter { gen, inverse }).collect())
}

fn braid_word(strands: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..strands, any::<bool>()), 0..8).prop_map(move |l| BraidWord::new(strands, l).unwrap())
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(p in arb_presentation()) {
        prop_assert_eq!(Presentation::parse(&p.format()).unwrap(), p);
    }

    #[test]
    fn mirror_is_an_involution(p in arb_presentation()) {
        prop_assert_eq!(p.mirror().mirror(), p);
    }

    #[test]
    fn complement_table_round_trip(p in arb_complemented()) {
        let t = ComplementTable::from_presentation(&p).unwrap();
        prop_assert!(t.is_total());
        prop_assert_eq!(t.to_presentation().relation_set(), p.relation_set());
    }

    #[test]
    fn braid_action_composes(b1 in braid_word(4), b2 in braid_word(4), w in signed(4)) {
        let lhs = braid_act(&b1.concat(&b2), &w);
        let rhs = braid_act(&b2, &braid_act(&b1, &w));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_action_fixes_cycle_powers(p in 2usize..6, k in 0usize..4, q in 1usize..6) {
        let cycle: Word = (0..p).map(|i| Gen(i as u16)).collect();
        let w = positive(&power(&cycle, k));
        let b = BraidWord::torus(p, q).unwrap();
        prop_assert_eq!(braid_act(&b, &w), w);
    }
}

#[test]
fn torus_relations_follow_closed_form() {
    for p in 2..=6 {
        for q in p..=12 {
            let b = BraidWord::torus(p, q).unwrap();
            let cycle: Word = (0..p).map(|i| Gen(i as u16)).collect();
            for i in 1..=p {
                let m = (q - i) / p;
                let idx = p * m + p + i - q;
                assert!((1..=p).contains(&idx), "({p},{q}) i={i}");
                let pm = power(&cycle, m + 1);
                let mut expected = positive(&pm);
                expected.push(Letter::pos(Gen((idx - 1) as u16)));
                expected.extend(inverse_signed(&positive(&pm)));
                let image = braid_act(&b, &[Letter::pos(Gen((i - 1) as u16))]);
                assert_eq!(image, free_reduce(&expected), "({p},{q}) x{i}");
            }
        }
    }
}

#[test]
fn torus_tables_are_length_balanced() {
    for p in 2..=8 {
        for q in p..=16 {
            let t = TorusParams::new(p, q).unwrap();
            let table = torus_complement_table(t);
            for r in &table.to_presentation().relations {
                assert_eq!(r.lhs.len(), r.rhs.len(), "({p},{q})");
            }
        }
    }
}

#[test]
fn wirtinger_counts_on_torus_braids() {
    for p in 2..=4 {
        for q in p..=6 {
            let w = wirtinger_monoid(&BraidWord::torus(p, q).unwrap()).unwrap();
            assert_eq!(w.relations.len(), (p - 1) * q, "({p},{q})");
            // every crossing starts a new under-arc, closed up by the p end strands
            assert_eq!(w.rank(), (p - 1) * q, "({p},{q})");
        }
    }
}

#[test]
fn wirtinger_fixtures_match_generated_monoids() {
    for (name, p, q) in [("W32.pres", 3, 2), ("W42.pres", 4, 2), ("W34.pres", 3, 4)] {
        let generated = wirtinger_monoid(&BraidWord::torus(p, q).unwrap()).unwrap();
        let fixture = common::fixture(name);
        let iso = isomorphism_up_to_renaming(&generated, &fixture, 3).unwrap();
        assert!(iso.is_some(), "{name}");
    }
}
