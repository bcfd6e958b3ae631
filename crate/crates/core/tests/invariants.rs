use hertzinv_core::oracle::enumerate_involutions;
use hertzinv_core::{sibling, HPattern, PatternSet, Permutation, Role};
use proptest::prelude::*;

/// Random involution of length `n`: shuffle `1..=n`, then pair up
/// consecutive entries whose flag is set.
fn involution(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| (Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), n)))
        .prop_map(|(order, flags)| {
            let mut word: Vec<u32> = (1..=order.len() as u32).collect();
            let mut i = 0;
            while i + 1 < order.len() {
                if flags[i] {
                    let (a, b) = (order[i], order[i + 1]);
                    word[a as usize - 1] = b;
                    word[b as usize - 1] = a;
                    i += 2;
                } else {
                    i += 1;
                }
            }
            Permutation::new(word).unwrap()
        })
}

fn sets() -> Vec<PatternSet> {
    ["12,21", "123,321", "231,312", "132,213", "1342,1423", "2413,3142", "1324"]
        .iter()
        .map(|s| PatternSet::parse_spec(s, false).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn sibling_pairs_up_occurrences(p in involution(16)) {
        prop_assert!(p.is_involution());
        for t in sets() {
            let occs = t.find_occurrences(p.word());
            for o in &occs {
                let s = sibling(o, &p).unwrap();
                prop_assert!(occs.contains(&s));
                prop_assert_eq!(sibling(&s, &p).unwrap(), o.clone());
            }
            let stats = t.count_stats(&p).unwrap();
            prop_assert!(stats.vector.involutive.iter().all(|c| c.nsib % 2 == 0));
            for (i, q) in t.patterns().iter().enumerate() {
                if let Some(Role::Transversal(_)) = t.role(q) {
                    let j = t.patterns().binary_search(&q.inverse()).unwrap();
                    prop_assert_eq!(stats.totals[i], stats.totals[j]);
                }
            }
            let total: usize = stats.totals.iter().sum();
            prop_assert_eq!(total, occs.len());
        }
    }

    #[test]
    fn reverse_complement_maps_occurrences(p in involution(16)) {
        let rc = p.reverse_complement();
        prop_assert!(rc.is_involution());
        prop_assert_eq!(rc.fixed_points(), p.fixed_points());
        for k in 2..=3 {
            for q in hertzinv_core::perm::all_permutations(k) {
                let q = HPattern::new(q).unwrap();
                prop_assert_eq!(q.count_in(p.word()), q.reverse_complement().count_in(rc.word()));
            }
        }
    }
}

#[test]
fn sibling_bijection_exhaustive() {
    let t = PatternSet::parse_spec("1342,1423", false).unwrap();
    for n in 0..=9 {
        for p in enumerate_involutions(n) {
            let occs = t.find_occurrences(p.word());
            let mut images: Vec<_> = occs.iter().map(|o| sibling(o, &p).unwrap()).collect();
            images.sort();
            let mut sorted = occs.clone();
            sorted.sort();
            assert_eq!(images, sorted, "{p}");
        }
    }
}

#[test]
fn sibling_rejects_non_involutions() {
    let p: Permutation = "2314".parse().unwrap();
    let t = PatternSet::parse_spec("231,312", false).unwrap();
    let occ = t.find_occurrences(p.word()).remove(0);
    assert!(sibling(&occ, &p).is_err());
}
