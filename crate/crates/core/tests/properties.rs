mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::subsequence;

use common::Oracle;
use hwp_core::orbit::difference_list;
use hwp_core::{
    build_group, cycle_orbit, partial_differences, stabilizer, translate_cycle, CycleSeq, Elem,
    GroupId, Notation,
};

fn group_id() -> impl Strategy<Value = GroupId> {
    prop::sample::select(GroupId::ALL.to_vec())
}

/// A group with a random cycle of length 3..=8 in it.
fn group_and_cycle() -> impl Strategy<Value = (GroupId, Vec<usize>)> {
    group_id().prop_flat_map(|id| {
        let n = build_group(id).unwrap().order();
        (Just(id), subsequence((0..n).collect::<Vec<_>>(), 3..=8).prop_shuffle())
    })
}

fn cycle_of(v: &[usize]) -> CycleSeq {
    CycleSeq::new(v.iter().map(|&i| Elem::from_index(i)).collect()).unwrap()
}

/// Every rotation and reflection, smallest vertex sequence.
fn brute_canonical(v: &[Elem]) -> Vec<Elem> {
    let n = v.len();
    let mut best: Option<Vec<Elem>> = None;
    for start in 0..n {
        for dir in [1isize, -1] {
            let seq: Vec<Elem> = (0..n as isize)
                .map(|k| v[(start as isize + dir * k).rem_euclid(n as isize) as usize])
                .collect();
            if best.as_ref().is_none_or(|b| seq < *b) {
                best = Some(seq);
            }
        }
    }
    best.unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplication_matches_oracle(id in group_id(), a in 0usize..48, b in 0usize..48, c in 0usize..48) {
        let oracle = Oracle::for_id(id);
        let g = &oracle.group;
        let n = g.order();
        let (a, b, c) = (Elem::from_index(a % n), Elem::from_index(b % n), Elem::from_index(c % n));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, b).index(), oracle.mul[a.index()][b.index()]);
        prop_assert_eq!(g.mul(a, g.inverse(a)), g.identity());
    }

    #[test]
    fn canonical_is_least_rotation_or_reflection((id, v) in group_and_cycle()) {
        let _ = id;
        let c = cycle_of(&v);
        let canon = c.canonical();
        prop_assert_eq!(canon.vertices().to_vec(), brute_canonical(c.vertices()));
        prop_assert!(canon.same_cycle(&c));
    }

    #[test]
    fn orbit_stabilizer((id, v) in group_and_cycle(), gens in prop::collection::vec(0usize..48, 0..3)) {
        let g = build_group(id).unwrap();
        let c = cycle_of(&v);
        let gens: Vec<Elem> = gens.iter().map(|&i| Elem::from_index(i % g.order())).collect();
        let acting = g.subgroup_closure(&gens);
        let orbit = cycle_orbit(&g, &acting, &c);
        let stab = stabilizer(&g, &c).intersection(&acting);
        prop_assert_eq!(orbit.len() * stab.order(), acting.order());
        let distinct: BTreeSet<Vec<Elem>> = acting
            .elements()
            .iter()
            .map(|&h| translate_cycle(&g, h, &c).vertices().to_vec())
            .collect();
        prop_assert_eq!(distinct.len(), orbit.len());
    }

    #[test]
    fn differences_are_translation_invariant((id, v) in group_and_cycle(), h in 0usize..48) {
        let g = build_group(id).unwrap();
        let c = cycle_of(&v);
        let h = Elem::from_index(h % g.order());
        let moved = translate_cycle(&g, h, &c);
        let mut a = difference_list(&g, &c);
        let mut b = difference_list(&g, &moved);
        a.sort();
        b.sort();
        prop_assert_eq!(a.len(), 2 * c.len());
        prop_assert_eq!(a, b);
        prop_assert_eq!(partial_differences(&g, &c), partial_differences(&g, &moved));
    }

    #[test]
    fn element_text_round_trips(id in group_id(), i in 0usize..48, unicode in any::<bool>()) {
        let g = build_group(id).unwrap();
        let e = Elem::from_index(i % g.order());
        let notation = if unicode { Notation::Unicode } else { Notation::Ascii };
        let text = g.format_element(e, notation);
        prop_assert_eq!(g.parse_element(&text).unwrap(), e);
    }

    #[test]
    fn stabilizer_fixes_cycle((id, v) in group_and_cycle()) {
        let g = build_group(id).unwrap();
        let c = cycle_of(&v);
        let canon = c.canonical();
        let stab = stabilizer(&g, &c);
        for h in g.elements() {
            let fixed = translate_cycle(&g, h, &c) == canon;
            prop_assert_eq!(fixed, stab.contains(h));
        }
    }
}
