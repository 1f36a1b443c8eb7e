use charslope_core::arith::{gcd, Slope};
use charslope_core::classify::{
    casson_walker_surgery, compare_descriptions, compare_swapped, signed_d_profile, SurgeryDescription, Verdict,
};
use charslope_core::knots::KnotDesc;
use charslope_core::surgery::affine_matchings;

fn d(knot: &str, slope: &str) -> SurgeryDescription {
    SurgeryDescription::new(knot.parse().unwrap(), slope.parse().unwrap())
}

fn kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::ProvablyHomeo { .. } => "homeo",
        Verdict::ProvablyDistinct { .. } => "distinct",
        Verdict::Consistent { .. } => "consistent",
    }
}

fn sample() -> Vec<SurgeryDescription> {
    let mut knots = vec![KnotDesc::unknot()];
    for (r, s) in [(3, 2), (5, 2), (7, 2), (4, 3), (5, 3), (5, 4), (7, 3), (11, 2)] {
        knots.push(KnotDesc::torus(r, s).unwrap());
        knots.push(KnotDesc::torus(r, -s).unwrap());
    }
    let mut out = Vec::new();
    for k in &knots {
        for p in [-11, -7, -5, 1, 5, 7, 11, 21] {
            for q in 1..=3 {
                if gcd(p, q) == 1 {
                    out.push(SurgeryDescription::new(k.clone(), Slope::new(p, q).unwrap()));
                }
            }
        }
    }
    out
}

// A homeomorphism claim must survive every invariant the library can compute.
#[test]
fn homeo_claims_are_sound() {
    let descs = sample();
    let mut homeo = 0;
    for (i, a) in descs.iter().enumerate() {
        for b in &descs[i..] {
            if a.slope.p().abs() != b.slope.p().abs() {
                continue;
            }
            let v = compare_descriptions(a, b).unwrap();
            assert_eq!(kind(&v), kind(&compare_swapped(a, b).unwrap()), "{a} vs {b}");
            if v.is_homeo() {
                homeo += 1;
                assert_eq!(casson_walker_surgery(a).unwrap(), casson_walker_surgery(b).unwrap(), "{a} vs {b}");
                let (da, db) = (signed_d_profile(a).unwrap(), signed_d_profile(b).unwrap());
                assert!(!affine_matchings(da.values(), db.values()).is_empty(), "{a} vs {b}");
            }
        }
    }
    assert!(homeo > descs.len());
}

#[test]
fn identical_descriptions() {
    for x in sample() {
        assert!(compare_descriptions(&x, &x).unwrap().is_homeo());
    }
}

// Same knot presented two ways: no invariant may separate them.
#[test]
fn equal_manifolds_are_never_distinct() {
    let pairs = [
        (d("@preset:T52", "7/2"), d("T(5,2)", "7/2")),
        (d("@preset:T52", "3"), d("T(5,2)", "3")),
        (d("@preset:T5m2", "7/2"), d("T(5,-2)", "7/2")),
        (d("@preset:T5m2", "13/4"), d("T(5,-2)", "13/4")),
        (d("@mirror:preset:T52", "5"), d("T(5,-2)", "5")),
        (d("@preset:unknot", "5/2"), d("unknot", "5/2")),
        (d("T(5,4)", "21"), d("T(11,2)", "21")),
        (d("T(5,2)", "-7"), d("T(5,2)", "-7")),
    ];
    for (a, b) in pairs {
        let v = compare_descriptions(&a, &b).unwrap();
        assert!(!v.is_distinct(), "{a} vs {b}: {v}");
    }
    let v = compare_descriptions(&d("@preset:T52", "7/2"), &d("T(5,2)", "7/2")).unwrap();
    assert_eq!(kind(&v), "consistent");
}

#[test]
fn known_distinct_pairs() {
    let cases = [
        (d("T(5,2)", "7"), d("T(7,2)", "7"), "cone orders"),
        (d("T(5,4)", "21"), d("T(11,2)", "23"), "|H_1|"),
        (d("T(5,2)", "11"), d("T(3,2)", "11/2"), "oriented lens space"),
        (d("T(5,2)", "7"), d("T(5,2)", "8"), "|H_1|"),
        (d("T(5,2)", "10"), d("T(5,2)", "9"), "|H_1|"),
        (d("T(5,2)", "3"), d("unknot", "3"), "surgery class"),
        (d("@preset:T52", "5"), d("@preset:T5m2", "5"), "d-invariants"),
    ];
    for (a, b, invariant) in cases {
        match compare_descriptions(&a, &b).unwrap() {
            Verdict::ProvablyDistinct { invariant: got, .. } => assert_eq!(got, invariant, "{a} vs {b}"),
            other => panic!("{a} vs {b}: {other}"),
        }
    }
}
