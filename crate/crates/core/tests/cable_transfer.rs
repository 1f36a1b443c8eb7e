use charslope_core::arith::{gcd, Slope};
use charslope_core::knots::{lspace_form, KnotDesc, TorusKnot};
use charslope_core::surgery::{affine_matchings, d_profile_from, hf_red_rank, rank_from, v_from_polynomial, FloerData};

/// L-space cables `C(a,b;T(c,d))`: `a ≥ b(2g(T(c,d)) - 1)`.
fn lspace_cables() -> Vec<KnotDesc> {
    let mut out = Vec::new();
    for (c, d) in [(3, 2), (5, 2), (4, 3), (6, 5)] {
        let companion = TorusKnot::new(c, d).unwrap();
        let g = companion.genus();
        for b in [2, 3] {
            for a in b * (2 * g - 1)..b * (2 * g - 1) + 8 {
                if gcd(a, b) == 1 {
                    out.push(KnotDesc::cable(a, b, companion).unwrap());
                }
            }
        }
    }
    out
}

// The transferred companion surgery and the cable's own polynomial must give
// the same manifold, so the d-profiles match up to relabelling.
#[test]
fn transfer_agrees_with_polynomial_tier() {
    let mut checked = 0;
    for knot in lspace_cables() {
        let KnotDesc::Cable { a, b, .. } = knot else { unreachable!() };
        let delta = knot.alexander();
        assert!(lspace_form(&delta).is_some(), "{knot} should be an L-space knot");
        let v = v_from_polynomial(&delta).unwrap();
        for q in 1..=2 {
            for p in [q * a * b - 1, q * a * b + 1] {
                if gcd(p, q) != 1 {
                    continue;
                }
                let slope = Slope::new(p, q).unwrap();
                let via_transfer = charslope_core::surgery::surgery_d_invariants(&knot, slope).unwrap();
                let own = d_profile_from(&v, slope);
                assert!(!affine_matchings(via_transfer.values(), own.values()).is_empty(), "{knot} at {slope}");
                let own_rank = rank_from(&FloerData::from_polynomial(&delta).unwrap(), slope);
                assert_eq!(hf_red_rank(&knot, slope).unwrap(), own_rank, "{knot} at {slope}");
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}
