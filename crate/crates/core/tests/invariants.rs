use std::collections::BTreeSet;

use num_bigint::BigInt;

use indperm::closed_forms::{self, indecomposable_count, Form1234, PatternClassId};
use indperm::identities::{compare_closed_form, verify_wilf_classes};
use indperm::pattern::avoids;
use indperm::perm::reduce;
use indperm::{Oracle, Permutation, Restrict, VincularPattern};

fn pat(s: &str) -> VincularPattern {
    s.parse().unwrap()
}

/// Patterns appearing in the decomposition lemmas and identities.
fn catalog_patterns() -> Vec<VincularPattern> {
    [
        "1-2-3", "1-3-2", "2-1-3", "2-3-1", "3-1-2", "3-2-1", "1-2-3-4", "1-3-2-4", "2-1-3-4",
        "2-1-4-3", "2-3-1-4", "3-1-2-4", "3-2-1-4", "2-4-3-1", "4-3-2-1", "4-2-3-1", "1-23",
        "1-32", "3-12", "3-21", "2-13", "2-31",
    ]
    .iter()
    .map(|s| pat(s))
    .collect()
}

#[test]
fn indecomposability_is_preserved_by_reverse_complement() {
    for n in 1..=8 {
        for p in Permutation::all(n) {
            let rc = p.reverse().complement();
            assert_eq!(p.is_indecomposable(), rc.is_indecomposable(), "{p}");
        }
    }
}

#[test]
fn containment_survives_right_extension() {
    for p in catalog_patterns() {
        for n in 1..=5 {
            for perm in Permutation::all(n + 1) {
                let prefix = reduce(&perm.values()[..n]).unwrap();
                if !avoids(&prefix, &p) {
                    assert!(!avoids(&perm, &p), "{p} in {prefix} but not {perm}");
                }
            }
        }
    }
}

#[test]
fn dashed_reductions_to_classical() {
    for n in 0..=8 {
        for perm in Permutation::all(n) {
            assert_eq!(avoids(&perm, &pat("2-13")), avoids(&perm, &pat("2-1-3")));
            assert_eq!(avoids(&perm, &pat("2-31")), avoids(&perm, &pat("2-3-1")));
        }
    }
}

#[test]
fn pruned_search_equals_filtering() {
    let oracle = Oracle::default();
    for p in catalog_patterns() {
        for n in 0..=7 {
            let pruned: BTreeSet<Permutation> = oracle
                .enumerate_avoiders(&p, n, Restrict::All)
                .unwrap()
                .collect();
            let filtered: BTreeSet<Permutation> =
                Permutation::all(n).filter(|q| avoids(q, &p)).collect();
            assert_eq!(pruned, filtered, "{p} at {n}");
            let ind: BTreeSet<Permutation> = oracle
                .enumerate_avoiders(&p, n, Restrict::IndecomposableOnly)
                .unwrap()
                .collect();
            let ind_filtered: BTreeSet<Permutation> = filtered
                .iter()
                .filter(|q| q.is_indecomposable() == Ok(true))
                .cloned()
                .collect();
            assert_eq!(ind, ind_filtered, "{p} at {n}");
        }
    }
}

#[test]
fn restrictions_partition_the_class() {
    let oracle = Oracle::default();
    for p in catalog_patterns() {
        let all = oracle.counts(&p, Restrict::All, 8).unwrap();
        let ind = oracle.counts(&p, Restrict::IndecomposableOnly, 8).unwrap();
        let dec = oracle.counts(&p, Restrict::DecomposableOnly, 8).unwrap();
        for n in 1..=8 {
            assert_eq!(all[n], &ind[n] + &dec[n], "{p} at {n}");
        }
    }
}

#[test]
fn descent_tables_sum_to_counts_and_specialize() {
    let oracle = Oracle::default();
    for p in catalog_patterns() {
        let table = oracle.descent_table(&p, Restrict::All, 7).unwrap();
        let counts = oracle.counts(&p, Restrict::All, 7).unwrap();
        assert_eq!(table.totals(), counts);
        let at_one = table.to_series().at_q_one();
        assert_eq!(at_one.integer_coefficients().unwrap(), counts);
    }
}

#[test]
fn wilf_classes_to_eight() {
    let r = verify_wilf_classes(8).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.distinct_profiles, 3);
    assert_eq!(r.classes[1].counts[6], BigInt::from(512));
    assert_eq!(r.classes[0].counts[6], BigInt::from(513));
    assert_eq!(r.classes[2].counts[6], BigInt::from(513));
}

#[test]
fn closed_forms_match_search() {
    let oracle = Oracle::default();
    let mut patterns: Vec<VincularPattern> = Vec::new();
    for k in [3, 4] {
        for p in Permutation::all(k) {
            patterns.push(VincularPattern::classical(p).unwrap());
        }
    }
    for p in Permutation::all(3) {
        for adj in [vec![false, true], vec![true, false]] {
            patterns.push(VincularPattern::new(p.clone(), adj).unwrap());
        }
    }
    for p in patterns {
        let top = if p.len() == 3 { 10 } else { 9 };
        let r = compare_closed_form(&p, top, Form1234::Standard, &oracle).unwrap();
        assert_eq!(r, None, "{p}");
    }
}

#[test]
fn class_members_share_indecomposable_counts() {
    let oracle = Oracle::default();
    for id in [PatternClassId::Class2431, PatternClassId::Class4321] {
        let mut seen: Option<Vec<BigInt>> = None;
        for p in Permutation::all(4) {
            let vp = VincularPattern::classical(p).unwrap();
            if PatternClassId::classify(&vp) != Some(id) {
                continue;
            }
            let c = oracle.counts(&vp, Restrict::IndecomposableOnly, 8).unwrap();
            match &seen {
                None => seen = Some(c),
                Some(s) => assert_eq!(s, &c, "{vp}"),
            }
        }
        assert!(seen.is_some());
    }
}

#[test]
fn one_thirty_two_indecomposables() {
    let oracle = Oracle::default();
    let p = pat("1-3-2");
    for n in 2..=9 {
        let formula = indecomposable_count(PatternClassId::P132_213, n).unwrap();
        assert_eq!(formula, closed_forms::catalan(n) - closed_forms::catalan(n - 1));
        // A 132-avoider is decomposable exactly when n is last.
        let n_not_last = oracle
            .enumerate_avoiders(&p, n, Restrict::All)
            .unwrap()
            .filter(|q| *q.values().last().unwrap() as usize != n)
            .count();
        assert_eq!(formula, BigInt::from(n_not_last));
    }
}

#[test]
fn parallel_split_is_deterministic() {
    let oracle = Oracle::default();
    for p in catalog_patterns() {
        let a = oracle.descent_table(&p, Restrict::IndecomposableOnly, 8).unwrap();
        let b = oracle.descent_table(&p, Restrict::IndecomposableOnly, 8).unwrap();
        assert_eq!(a.totals(), b.totals());
        for n in 0..=8 {
            assert_eq!(a.row(n), b.row(n));
        }
    }
}
