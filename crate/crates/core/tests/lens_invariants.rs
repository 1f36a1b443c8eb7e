use charslope_core::arith::{gcd, parse_rat};
use charslope_core::lens::{casson_walker_lens, lens_d_invariants, lens_oriented_homeo, LensSpace};
use charslope_core::surgery::affine_matchings;

/// Exhaustive search over every `i ↦ ai + b`, independent of the anchor
/// pruning in `affine_matchings`.
fn some_affine_match<T: PartialEq>(p: i64, a: &[T], b: &[T]) -> bool {
    (1..p.max(2)).filter(|&m| gcd(m, p) == 1).any(|m| {
        (0..p).any(|c| (0..p).all(|i| a[i as usize] == b[((m * i + c) % p) as usize]))
    })
}

#[test]
fn homeo_classifier_matches_affine_brute_force() {
    for p in 2..=60 {
        let qs: Vec<i64> = (1..p).filter(|&q| gcd(p, q) == 1).collect();
        let profiles: Vec<_> = qs.iter().map(|&q| lens_d_invariants(p, q).unwrap()).collect();
        for (x, &q1) in qs.iter().enumerate() {
            for (y, &q2) in qs.iter().enumerate().skip(x) {
                let homeo = lens_oriented_homeo(&LensSpace::new(p, q1).unwrap(), &LensSpace::new(p, q2).unwrap());
                let brute = some_affine_match(p, profiles[x].values(), profiles[y].values());
                assert_eq!(homeo, brute, "L({p},{q1}) vs L({p},{q2})");
                assert_eq!(brute, !affine_matchings(profiles[x].values(), profiles[y].values()).is_empty());
            }
        }
    }
}

#[test]
fn casson_walker_golden() {
    let golden = include_str!("data/casson_walker_lens.txt");
    let mut n = 0;
    for line in golden.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let (p, q): (i64, i64) = (f[0].parse().unwrap(), f[1].parse().unwrap());
        assert_eq!(casson_walker_lens(p, q).unwrap(), parse_rat(f[2]).unwrap(), "L({p},{q})");
        n += 1;
    }
    assert_eq!(n, 199);
}

#[test]
fn casson_walker_is_a_homeomorphism_invariant() {
    for p in 2..=80 {
        for q1 in (1..p).filter(|&q| gcd(p, q) == 1) {
            for q2 in (1..p).filter(|&q| gcd(p, q) == 1) {
                if lens_oriented_homeo(&LensSpace::new(p, q1).unwrap(), &LensSpace::new(p, q2).unwrap()) {
                    assert_eq!(casson_walker_lens(p, q1).unwrap(), casson_walker_lens(p, q2).unwrap());
                }
            }
        }
    }
}
