//! Property-based checks over randomly generated diagrams (braid
//! closures, pretzels, and connected sums of corpus knots).

use num::Signed;
use proptest::prelude::*;

use knotkit::classical;
use knotkit::corpus;
use knotkit::diagram::families;
use knotkit::khovanov::{self, DEFAULT_KHOVANOV_CEILING};
use knotkit::turaev;
use knotkit::{Diagram, Smoothing};

/// Random connected braid closure: every generator index appears at
/// least once, so the closure is a connected diagram.
fn braid_diagram() -> impl Strategy<Value = Diagram> {
    (2usize..=4)
        .prop_flat_map(|strands| {
            let letters = 1..=(strands as i32 - 1);
            let letter = (letters, any::<bool>())
                .prop_map(|(k, neg)| if neg { -k } else { k });
            (
                Just(strands),
                proptest::collection::vec(letter, strands - 1..12),
            )
        })
        .prop_filter_map("closure must use every strand", |(strands, mut word)| {
            // Guarantee connectivity: splice in each missing generator.
            for k in 1..strands as i32 {
                if !word.iter().any(|&g| g.abs() == k) {
                    word.push(k);
                }
            }
            families::braid_closure(strands, &word).ok()
        })
}

/// A random small knot diagram (braid closure with one component).
fn knot_diagram() -> impl Strategy<Value = Diagram> {
    braid_diagram().prop_filter("need a knot", |d| d.is_knot())
}

proptest! {
    #[test]
    fn pd_serialization_round_trips(d in braid_diagram()) {
        // PD text fixes arcs and crossings but not the orientation of
        // closed-over components, so the diagram round-trips up to
        // component orientation and the text round-trips bit-exactly.
        let text = d.to_pd_string();
        let back = Diagram::parse_pd(&text).unwrap();
        prop_assert_eq!(back.crossings(), d.crossings());
        prop_assert_eq!(
            back.unoriented_canonical_key(),
            d.unoriented_canonical_key()
        );
        prop_assert_eq!(back.to_pd_string(), text);
    }

    #[test]
    fn mirror_swaps_signs_and_states(d in braid_diagram()) {
        let m = d.mirror();
        prop_assert_eq!(m.n_positive(), d.n_negative());
        prop_assert_eq!(m.n_negative(), d.n_positive());
        prop_assert_eq!(turaev::s_a(&m), turaev::s_b(&d));
        prop_assert_eq!(turaev::s_b(&m), turaev::s_a(&d));
        // Involution up to relabeling.
        prop_assert_eq!(m.mirror().canonical_key(), d.canonical_key());
    }

    #[test]
    fn mirror_preserves_diagram_genus(d in braid_diagram()) {
        prop_assume!(d.is_connected());
        prop_assert_eq!(
            turaev::turaev_genus_diagram(&d.mirror()).unwrap(),
            turaev::turaev_genus_diagram(&d).unwrap()
        );
    }

    #[test]
    fn smoothing_order_is_irrelevant(
        d in braid_diagram(),
        states in proptest::collection::vec(any::<bool>(), 16),
        seed in any::<u64>(),
    ) {
        let n = d.crossing_count();
        let state: Vec<Smoothing> = (0..n)
            .map(|i| if states[i % states.len()] { Smoothing::B } else { Smoothing::A })
            .collect();
        let expected = turaev::state_circles(&d, &state).unwrap();
        // Smooth the crossings one at a time in a seed-scrambled order;
        // indices shift down as earlier crossings disappear.
        let mut order: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (x >> 33) as usize % (i + 1));
        }
        let mut cur = d.clone();
        let mut done: Vec<usize> = Vec::new();
        for &c in &order {
            let shift = done.iter().filter(|&&e| e < c).count();
            cur = cur.smooth(c - shift, state[c]).unwrap();
            done.push(c);
        }
        prop_assert_eq!(cur.crossing_count(), 0);
        prop_assert_eq!(cur.free_loops(), expected);
    }

    #[test]
    fn mirror_negates_signature_and_keeps_determinant(d in knot_diagram()) {
        prop_assume!(d.crossing_count() <= 12);
        let m = d.mirror();
        prop_assert_eq!(
            classical::signature(&m).unwrap(),
            -classical::signature(&d).unwrap()
        );
        prop_assert_eq!(
            classical::determinant(&m).unwrap().abs(),
            classical::determinant(&d).unwrap().abs()
        );
    }

    #[test]
    fn mirror_inverts_jones(d in knot_diagram()) {
        prop_assume!(d.crossing_count() <= 12);
        let jones = classical::jones_polynomial(&d, 16).unwrap();
        let mirrored = classical::jones_polynomial(&d.mirror(), 16).unwrap();
        prop_assert_eq!(jones.map_exponents(|e| -e), mirrored);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn s_is_even_and_odd_under_mirroring(d in knot_diagram()) {
        prop_assume!(d.crossing_count() <= 8);
        let s = khovanov::s_invariant(&d, DEFAULT_KHOVANOV_CEILING).unwrap().s;
        prop_assert_eq!(s % 2, 0);
        let sm = khovanov::s_invariant(&d.mirror(), DEFAULT_KHOVANOV_CEILING).unwrap().s;
        prop_assert_eq!(sm, -s);
    }

    #[test]
    fn genus_is_additive_at_the_default_sum_site(
        i in 0usize..84,
        j in 0usize..84,
    ) {
        let entries = corpus::bundled_rolfsen();
        let a = entries[i].diagram().unwrap();
        let b = entries[j].diagram().unwrap();
        let sum = a.connected_sum(&b, None, None).unwrap();
        prop_assert_eq!(
            turaev::turaev_genus_diagram(&sum).unwrap(),
            turaev::turaev_genus_diagram(&a).unwrap()
                + turaev::turaev_genus_diagram(&b).unwrap()
        );
    }

    #[test]
    fn s_is_additive_on_small_connected_sums(
        i in 0usize..3,
        j in 0usize..3,
    ) {
        // The three smallest corpus knots keep the sum under 10 crossings.
        let entries = corpus::bundled_rolfsen();
        let a = entries[i].diagram().unwrap();
        let b = entries[j].diagram().unwrap();
        let sum = a.connected_sum(&b, None, None).unwrap();
        let sa = khovanov::s_invariant(&a, DEFAULT_KHOVANOV_CEILING).unwrap().s;
        let sb = khovanov::s_invariant(&b, DEFAULT_KHOVANOV_CEILING).unwrap().s;
        let ss = khovanov::s_invariant(&sum, DEFAULT_KHOVANOV_CEILING).unwrap().s;
        prop_assert_eq!(ss, sa + sb);
    }

    #[test]
    fn reduction_invariants_hold_for_any_crossing_order(
        i in 0usize..84,
        seed in any::<u64>(),
    ) {
        // Permuting the crossing list changes the BFS spanning tree; the
        // reduction's conclusions must not depend on the tree.
        let entries = corpus::bundled_rolfsen();
        let d = entries[i].diagram().unwrap();
        let n = d.crossing_count();
        let mut order: Vec<usize> = (0..n).collect();
        let mut x = seed | 1;
        for k in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(k, (x >> 33) as usize % (k + 1));
        }
        let crossings: Vec<[u32; 4]> = order.iter().map(|&k| d.crossings()[k]).collect();
        let shuffled = Diagram::from_crossings(crossings, d.free_loops()).unwrap();
        let r = knotkit::bounds::reduce_to_negative(&shuffled).unwrap();
        prop_assert_eq!(r.reduced.n_positive(), 0);
        prop_assert!(r.reduced.is_connected());
        prop_assert_eq!(r.s_a_after, r.s_a_before - r.tree_edges);
        prop_assert_eq!(r.band_count + r.tree_edges, shuffled.n_positive());
    }
}
