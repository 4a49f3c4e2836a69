use artin_homology::algebra::scalar::ScalarRing;
use artin_homology::complexes::{build_a, Family, Module};
use artin_homology::homology::{homology, HomologyOptions};
use artin_homology::record::{to_csv, to_json, to_markdown, CacheKey, HomologyRecord, ResultCache, TorsionEntry};
use proptest::prelude::*;

fn record() -> impl Strategy<Value = HomologyRecord> {
    (
        1usize..20,
        0usize..20,
        0usize..4,
        proptest::collection::vec((proptest::sample::select(vec!["2", "3", "4", "12", "t^2 - 1"]), 1usize..4), 0..3),
        proptest::option::of("[a-z-]{1,12}"),
        proptest::option::of("[0-9a-f]{16}"),
    )
        .prop_map(|(n, degree, betti, torsion, candidate, basis_hash)| HomologyRecord {
            family: "B".into(),
            n,
            coeff: "mod1+t".into(),
            ring: "Z".into(),
            degree,
            betti,
            torsion: torsion.into_iter().map(|(f, m)| TorsionEntry { factor: f.into(), multiplicity: m }).collect(),
            provenance: "direct".into(),
            candidate,
            basis_hash,
        })
}

#[test]
fn group_strings() {
    let h = homology(&build_a(5).unwrap(), &ScalarRing::Integers, 3, HomologyOptions::default()).unwrap();
    let r = HomologyRecord::from_homology(Family::A, 5, Module::Trivial, &ScalarRing::Integers, &h);
    assert_eq!(r.group_string(), h.to_string().replace("Z/", "Z"));
    let mut laurent = r.clone();
    laurent.ring = "Q[t^{±1}]".into();
    laurent.betti = 0;
    laurent.torsion = vec![TorsionEntry { factor: "t + 1".into(), multiplicity: 2 }];
    assert_eq!(laurent.group_string(), "(R/t + 1)^2");
}

#[test]
fn formats_list_every_record() {
    let c = build_a(4).unwrap();
    let records: Vec<HomologyRecord> = (0..=4)
        .map(|i| {
            let h = homology(&c, &ScalarRing::Integers, i, HomologyOptions::default()).unwrap();
            HomologyRecord::from_homology(Family::A, 4, Module::Trivial, &ScalarRing::Integers, &h)
        })
        .collect();
    let back: Vec<HomologyRecord> = serde_json::from_str(&to_json(&records).unwrap()).unwrap();
    assert_eq!(back, records);
    assert_eq!(to_csv(&records).unwrap().lines().count(), 6);
    assert!(to_markdown(&records).contains("| A |"));
}

#[test]
fn keys_separate_requests() {
    let z = ScalarRing::Integers;
    let k = CacheKey::new("A", 5, "trivial", &z, 2, None);
    assert_eq!(k.digest(), CacheKey::new("A", 5, "trivial", &z, 2, None).digest());
    assert_eq!(k.digest().len(), 64);
    let others = [
        CacheKey::new("A", 6, "trivial", &z, 2, None),
        CacheKey::new("A", 5, "trivial", &ScalarRing::Rationals, 2, None),
        CacheKey::new("A", 5, "trivial", &z, 3, None),
        CacheKey::new("A", 5, "trivial", &z, 2, Some("signed-insert@v1".into())),
        k.clone().with_options("basis=true"),
    ];
    for o in &others {
        assert_ne!(o.digest(), k.digest(), "{o:?}");
    }
}

#[test]
fn stale_or_damaged_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = ResultCache::open(dir.path()).unwrap();
    let key = CacheKey::new("A", 3, "trivial", &ScalarRing::Integers, 2, None);
    assert_eq!(cache.get(&key).unwrap(), None);
    let mut calls = 0;
    let h = homology(&build_a(3).unwrap(), &ScalarRing::Integers, 2, HomologyOptions::default()).unwrap();
    let r = HomologyRecord::from_homology(Family::A, 3, Module::Trivial, &ScalarRing::Integers, &h);
    for expect_hit in [false, true] {
        let (got, hit) = cache
            .get_or_compute(&key, || {
                calls += 1;
                Ok(r.clone())
            })
            .unwrap();
        assert_eq!((got.group_string().as_str(), hit), ("Z2", expect_hit));
    }
    assert_eq!(calls, 1);
    // A different key stored at the same path is not returned.
    let other = key.clone().with_options("x");
    std::fs::copy(cache.path(&key), cache.path(&other)).unwrap();
    assert_eq!(cache.get(&other).unwrap(), None);
    std::fs::write(cache.path(&key), "# header only\n").unwrap();
    assert!(cache.get(&key).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cache_round_trip(r in record(), degree in 0usize..9) {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let key = CacheKey::new(&r.family, r.n, &r.coeff, &ScalarRing::Integers, degree, r.candidate.clone());
        let path = cache.put(&key, &r).unwrap();
        prop_assert_eq!(&path, &cache.path(&key));
        let text = std::fs::read_to_string(&path).unwrap();
        prop_assert!(text.lines().any(|l| l == ResultCache::payload(&r).unwrap()));
        prop_assert_eq!(cache.get(&key).unwrap(), Some(r));
    }
}
