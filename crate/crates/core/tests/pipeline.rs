use hertzinv_core::oracle::{brute_force_distribution, brute_force_marked, involution_count};
use hertzinv_core::theorem::{apply_main_theorem, involution_series, main_series, marked_gf};
use hertzinv_core::{Error, PatternSet, Source};

const FAMILIES: [&str; 4] = ["12,21", "123,321", "231,312", "132,213"];

fn set(s: &str) -> PatternSet {
    PatternSet::parse_spec(s, false).unwrap()
}

#[test]
fn enumerated_and_closed_form_routes_agree() {
    for s in FAMILIES {
        let t = set(s);
        assert_eq!(
            main_series(&t, 12, Source::Enumerated, None).unwrap(),
            main_series(&t, 12, Source::ClosedForm, None).unwrap(),
            "{s}"
        );
    }
}

#[test]
fn enumerated_route_matches_oracle_beyond_the_families() {
    for s in ["1324", "2413,3142", "1432,4321", "2143", "1342,1423"] {
        let t = set(s);
        let table = apply_main_theorem(&t, 9, Source::Enumerated, None).unwrap();
        for n in 0..=9 {
            assert_eq!(table.row_map(n), brute_force_distribution(&t, n), "{s} n={n}");
        }
    }
}

#[test]
fn row_sums_are_involution_counts() {
    for s in FAMILIES {
        let table = apply_main_theorem(&set(s), 11, Source::ClosedForm, None).unwrap();
        let sums: Vec<u64> = (0..=11).map(|n| table.row_sum(n)).collect();
        let want: Vec<u64> = (0..=11).map(involution_count).collect();
        assert_eq!(sums, want, "{s}");
    }
    assert_eq!(&(0..=7).map(involution_count).collect::<Vec<_>>(), &[1, 1, 2, 4, 10, 26, 76, 232]);
}

#[test]
fn marking_blind_specializations_agree() {
    let n = 9;
    let base = involution_series(n);
    for s in FAMILIES {
        let t = set(s);
        let layout = hertzinv_core::Layout::new(&t).unwrap();
        let f = main_series(&t, n, Source::ClosedForm, None).unwrap();
        let mi = marked_gf(&t, n, Source::ClosedForm).unwrap();
        let marks: Vec<String> = layout.involution_vars().names()[2..].to_vec();
        let ones: Vec<(&str, i64)> = marks.iter().map(|m| (m.as_str(), 1)).collect();
        let zeros: Vec<(&str, i64)> = marks.iter().map(|m| (m.as_str(), 0)).collect();
        let f1 = f.evaluate(&ones).unwrap();
        let mi0 = mi.evaluate(&zeros).unwrap();
        assert_eq!(f1, mi0, "{s}");
        // compare with I(xt, x²) over (x, t)
        let flat: Vec<_> = f1.terms().into_iter().map(|(e, c)| ((e[0], e[1]), c)).collect();
        let want: Vec<_> = base.terms().into_iter().map(|(e, c)| ((e[0], e[1]), c)).collect();
        assert_eq!(flat, want, "{s}");
    }
}

#[test]
fn marked_series_matches_oracle() {
    for s in FAMILIES {
        let t = set(s);
        let mi = marked_gf(&t, 8, Source::Enumerated).unwrap();
        for n in 0..=8u32 {
            assert_eq!(mi.grade(n).terms(), brute_force_marked(&t, n as usize).unwrap().terms(), "{s} n={n}");
        }
    }
}

#[test]
fn invalid_inputs() {
    assert!(matches!(
        PatternSet::parse_spec("231", false),
        Err(Error::NotSelfInverse(p)) if p == "312"
    ));
    assert!(matches!(PatternSet::parse_spec("12,123", false), Err(Error::NotSimple { .. })));
    assert!(matches!(
        apply_main_theorem(&set("1324"), 6, Source::ClosedForm, None),
        Err(Error::UnsupportedFamily(_))
    ));
    let empty = apply_main_theorem(&PatternSet::empty(), 6, Source::Enumerated, None).unwrap();
    assert_eq!(empty.row_sum(6), 76);
}
