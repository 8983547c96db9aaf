//! Regenerates the bundled knot table `crates/core/data/rolfsen.csv`.
//!
//! Every knot with at most nine crossings is rebuilt from scratch:
//!
//! * the 50 two-bridge knots from their Conway twist vectors, verified
//!   against the determinant (the numerator of the continued fraction);
//! * the 21 Montesinos knots (including the three `+`-decorated forms)
//!   from their column notation, verified the same way;
//! * the remaining 13 knots by exhaustive search over tangle
//!   substitutions in the six- and eight-crossing basic polyhedra and
//!   over short braid closures, filtered by crossing number, reducedness,
//!   alternation and determinant, then pinned down by comparing Jones
//!   polynomials against every other knot in the table (and against the
//!   composite knots that share the same determinant).
//!
//! The search-based identifications rely on the completeness of the
//! classical table: a reduced alternating diagram with n crossings
//! realises the crossing number n, so a candidate whose invariants rule
//! out every other knot of at most nine crossings must be the one
//! remaining name. Run with `cargo run --release -p knotkit --bin
//! gen_corpus` from the workspace root.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use knotkit::classical::{determinant, jones_polynomial};
use knotkit::diagram::families::{braid_closure_with, montesinos, two_bridge, BraidItem};
use knotkit::poly::Laurent;
use knotkit::Diagram;

const CITATION: &str = "Rolfsen knot table; Conway tangle notation";

/// Conway twist vectors for the two-bridge knots, with determinants.
const TWO_BRIDGE: &[(&str, &[i64], u64)] = &[
    ("3_1", &[3], 3),
    ("4_1", &[2, 2], 5),
    ("5_1", &[5], 5),
    ("5_2", &[3, 2], 7),
    ("6_1", &[4, 2], 9),
    ("6_2", &[3, 1, 2], 11),
    ("6_3", &[2, 1, 1, 2], 13),
    ("7_1", &[7], 7),
    ("7_2", &[5, 2], 11),
    ("7_3", &[4, 3], 13),
    ("7_4", &[3, 1, 3], 15),
    ("7_5", &[3, 2, 2], 17),
    ("7_6", &[2, 2, 1, 2], 19),
    ("7_7", &[2, 1, 1, 1, 2], 21),
    ("8_1", &[6, 2], 13),
    ("8_2", &[5, 1, 2], 17),
    ("8_3", &[4, 4], 17),
    ("8_4", &[4, 1, 3], 19),
    ("8_6", &[3, 3, 2], 23),
    ("8_7", &[4, 1, 1, 2], 23),
    ("8_8", &[2, 3, 1, 2], 25),
    ("8_9", &[3, 1, 1, 3], 25),
    ("8_11", &[3, 2, 1, 2], 27),
    ("8_12", &[2, 2, 2, 2], 29),
    ("8_13", &[3, 1, 1, 1, 2], 29),
    ("8_14", &[2, 2, 1, 1, 2], 31),
    ("9_1", &[9], 9),
    ("9_2", &[7, 2], 15),
    ("9_3", &[6, 3], 19),
    ("9_4", &[5, 4], 21),
    ("9_5", &[5, 1, 3], 23),
    ("9_6", &[5, 2, 2], 27),
    ("9_7", &[3, 4, 2], 29),
    ("9_8", &[2, 4, 1, 2], 31),
    ("9_9", &[4, 2, 3], 31),
    ("9_10", &[3, 3, 3], 33),
    ("9_11", &[4, 1, 2, 2], 33),
    ("9_12", &[4, 2, 1, 2], 35),
    ("9_13", &[3, 2, 1, 3], 37),
    ("9_14", &[4, 1, 1, 1, 2], 37),
    ("9_15", &[2, 3, 2, 2], 39),
    ("9_17", &[2, 1, 3, 1, 2], 39),
    ("9_18", &[3, 2, 2, 2], 41),
    ("9_19", &[2, 3, 1, 1, 2], 41),
    ("9_20", &[3, 1, 2, 1, 2], 41),
    ("9_21", &[3, 1, 1, 2, 2], 43),
    ("9_23", &[2, 2, 1, 2, 2], 45),
    ("9_26", &[3, 1, 1, 1, 1, 2], 47),
    ("9_27", &[2, 1, 2, 1, 1, 2], 49),
    ("9_31", &[2, 1, 1, 1, 1, 1, 2], 55),
];

/// Montesinos column notation: columns, extra closure twists,
/// determinant, alternating.
#[allow(clippy::type_complexity)]
const MONTESINOS: &[(&str, &[&[i64]], i64, u64, bool)] = &[
    ("8_5", &[&[3], &[3], &[2]], 0, 21, true),
    ("8_10", &[&[3], &[2, 1], &[2]], 0, 27, true),
    ("8_15", &[&[2, 1], &[2, 1], &[2]], 0, 33, true),
    ("8_19", &[&[3], &[3], &[-2]], 0, 3, false),
    ("8_20", &[&[3], &[2, 1], &[-2]], 0, 9, false),
    ("8_21", &[&[2, 1], &[2, 1], &[-2]], 0, 15, false),
    ("9_16", &[&[3], &[3], &[2]], 1, 39, true),
    ("9_22", &[&[2, 1, 1], &[3], &[2]], 0, 43, true),
    ("9_24", &[&[3], &[2, 1], &[2]], 1, 45, true),
    ("9_25", &[&[2, 2], &[2, 1], &[2]], 0, 47, true),
    ("9_28", &[&[2, 1], &[2, 1], &[2]], 1, 51, true),
    ("9_30", &[&[2, 1, 1], &[2, 1], &[2]], 0, 53, true),
    ("9_35", &[&[3], &[3], &[3]], 0, 27, true),
    ("9_36", &[&[2, 2], &[3], &[2]], 0, 37, true),
    ("9_37", &[&[2, 1], &[2, 1], &[3]], 0, 45, true),
    ("9_42", &[&[2, 2], &[3], &[-2]], 0, 7, false),
    ("9_43", &[&[2, 1, 1], &[3], &[-2]], 0, 13, false),
    ("9_44", &[&[2, 2], &[2, 1], &[-2]], 0, 17, false),
    ("9_45", &[&[2, 1, 1], &[2, 1], &[-2]], 0, 23, false),
    ("9_46", &[&[3], &[3], &[-3]], 0, 9, false),
    ("9_48", &[&[2, 1], &[2, 1], &[-3]], 0, 27, false),
];

/// Search spaces for the remaining knots.
#[derive(Clone, Copy)]
enum Space {
    /// Plain closure of (s1 s2^-1)^4.
    Antiprism,
    /// Six-crossing polyhedron with two 2-crossing tangles substituted.
    OctaTwo,
    /// Six-crossing polyhedron with three 2-crossing tangles substituted.
    OctaThree,
    /// Six-crossing polyhedron with one 3- and one 2-crossing tangle.
    OctaMixed,
    /// Eight-crossing polyhedron with one 2-crossing tangle substituted.
    AntiprismOne,
    /// Alternating braid closures of length nine on up to five strands.
    Braid9,
}

const SEARCHED: &[(&str, Space, usize, u64, bool)] = &[
    ("8_16", Space::OctaTwo, 8, 35, true),
    ("8_17", Space::OctaTwo, 8, 37, true),
    ("8_18", Space::Antiprism, 8, 45, true),
    ("9_29", Space::OctaThree, 9, 51, true),
    ("9_32", Space::OctaMixed, 9, 59, true),
    ("9_33", Space::OctaMixed, 9, 61, true),
    ("9_34", Space::AntiprismOne, 9, 69, true),
    ("9_38", Space::OctaThree, 9, 57, true),
    ("9_39", Space::OctaThree, 9, 55, true),
    ("9_40", Space::Braid9, 9, 75, true),
    ("9_41", Space::OctaThree, 9, 49, true),
    ("9_47", Space::AntiprismOne, 9, 27, false),
    ("9_49", Space::OctaThree, 9, 25, false),
];

/// Composite knots sharing a determinant with a searched target; each
/// entry lists factor names (already in the table) whose connected sums,
/// over all mirror combinations, must be excluded.
const COMPOSITE_EXCLUSIONS: &[(u64, &[&[&str]])] = &[
    (27, &[&["3_1", "6_1"], &["3_1", "3_1", "3_1"]]),
    (25, &[&["4_1", "4_1"], &["4_1", "5_1"]]),
];

fn jones(d: &Diagram) -> Laurent {
    jones_polynomial(d, 16).expect("corpus diagrams stay under the ceiling")
}

fn det_u64(d: &Diagram) -> u64 {
    let det = determinant(d).expect("corpus diagrams are connected");
    let (_, digits) = det.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [x] => *x,
        _ => u64::MAX,
    }
}

fn is_reduced(d: &Diagram) -> bool {
    let faces = d.faces();
    (0..d.crossing_count()).all(|i| !d.is_nugatory(i, &faces))
}

fn mirror_poly(p: &Laurent) -> Laurent {
    p.map_exponents(|e| -e)
}

fn same_up_to_mirror(a: &Laurent, b: &Laurent) -> bool {
    a == b || *a == mirror_poly(b)
}

/// All four variants (handedness x orientation) of a 2-crossing tangle.
fn twist_variants() -> Vec<(Vec<i64>, bool)> {
    let mut out = Vec::new();
    for digits in [vec![2i64], vec![-2]] {
        for start_h in [false, true] {
            out.push((digits.clone(), start_h));
        }
    }
    out
}

/// Variants of a 3-crossing rational tangle (twist vector 2 1).
fn mixed_variants() -> Vec<(Vec<i64>, bool)> {
    let mut out = Vec::new();
    for digits in [vec![2i64, 1], vec![1, 2], vec![-2, -1], vec![-1, -2]] {
        for start_h in [false, true] {
            out.push((digits.clone(), start_h));
        }
    }
    out
}

fn base_word(crossings: usize, mirror: bool) -> Vec<i32> {
    (0..crossings)
        .map(|i| {
            let g = if i % 2 == 0 { 1 } else { -2 };
            if mirror {
                -g
            } else {
                g
            }
        })
        .collect()
}

fn build_with_subs(
    strands: usize,
    word: &[i32],
    subs: &[(usize, &(Vec<i64>, bool))],
) -> Option<Diagram> {
    let items: Vec<BraidItem> = word
        .iter()
        .enumerate()
        .map(|(i, &g)| match subs.iter().find(|(pos, _)| *pos == i) {
            Some((_, (digits, start_h))) => BraidItem::Tangle {
                gen: g.unsigned_abs() as usize,
                digits: digits.clone(),
                start_horizontal: *start_h,
            },
            None => BraidItem::Gen(g),
        })
        .collect();
    braid_closure_with(strands, &items).ok()
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn candidates(space: Space) -> Vec<Diagram> {
    let mut out = Vec::new();
    match space {
        Space::Antiprism => {
            for mirror in [false, true] {
                if let Some(d) = build_with_subs(3, &base_word(8, mirror), &[]) {
                    out.push(d);
                }
            }
        }
        Space::OctaTwo | Space::OctaThree => {
            let k = if matches!(space, Space::OctaTwo) { 2 } else { 3 };
            let vars = twist_variants();
            for mirror in [false, true] {
                let word = base_word(6, mirror);
                for positions in choose(6, k) {
                    let mut pick = vec![0usize; k];
                    loop {
                        let subs: Vec<(usize, &(Vec<i64>, bool))> = positions
                            .iter()
                            .zip(&pick)
                            .map(|(&p, &v)| (p, &vars[v]))
                            .collect();
                        if let Some(d) = build_with_subs(3, &word, &subs) {
                            out.push(d);
                        }
                        let mut i = 0;
                        loop {
                            if i == k {
                                break;
                            }
                            pick[i] += 1;
                            if pick[i] < vars.len() {
                                break;
                            }
                            pick[i] = 0;
                            i += 1;
                        }
                        if pick.iter().all(|&v| v == 0) {
                            break;
                        }
                    }
                }
            }
        }
        Space::OctaMixed => {
            let big = mixed_variants();
            let small = twist_variants();
            for mirror in [false, true] {
                let word = base_word(6, mirror);
                for p1 in 0..6 {
                    for p2 in 0..6 {
                        if p1 == p2 {
                            continue;
                        }
                        for b in &big {
                            for s in &small {
                                if let Some(d) =
                                    build_with_subs(3, &word, &[(p1, b), (p2, s)])
                                {
                                    out.push(d);
                                }
                            }
                        }
                    }
                }
            }
        }
        Space::AntiprismOne => {
            let vars = twist_variants();
            for mirror in [false, true] {
                let word = base_word(8, mirror);
                for p in 0..8 {
                    for v in &vars {
                        if let Some(d) = build_with_subs(3, &word, &[(p, v)]) {
                            out.push(d);
                        }
                    }
                }
            }
        }
        Space::Braid9 => {
            // Alternating sign patterns: odd generators positive, even
            // negative (or the mirror), over 3, 4 and 5 strands.
            for strands in [3usize, 4, 5] {
                let letters: Vec<i32> = (1..strands as i32)
                    .map(|k| if k % 2 == 1 { k } else { -k })
                    .collect();
                let n = letters.len();
                let total = n.pow(9);
                for code in 0..total {
                    let mut word = Vec::with_capacity(9);
                    let mut c = code;
                    for _ in 0..9 {
                        word.push(letters[c % n]);
                        c /= n;
                    }
                    for mirror in [false, true] {
                        let w: Vec<i32> =
                            word.iter().map(|&g| if mirror { -g } else { g }).collect();
                        if let Some(d) = build_with_subs(strands, &w, &[]) {
                            out.push(d);
                        }
                    }
                }
            }
        }
    }
    out
}

fn main() {
    let mut table: BTreeMap<String, Diagram> = BTreeMap::new();

    for (name, digits, want_det) in TWO_BRIDGE {
        let d = two_bridge(digits).expect("two-bridge construction");
        let total: i64 = digits.iter().sum();
        assert!(d.is_knot(), "{name}: not a knot");
        assert!(d.is_alternating(), "{name}: not alternating");
        assert!(is_reduced(&d), "{name}: not reduced");
        assert_eq!(d.crossing_count() as i64, total, "{name}: crossing count");
        assert_eq!(det_u64(&d), *want_det, "{name}: determinant");
        table.insert((*name).into(), d);
    }
    println!("two-bridge: {} knots verified", TWO_BRIDGE.len());

    for (name, cols, extra, want_det, want_alt) in MONTESINOS {
        let columns: Vec<Vec<i64>> = cols.iter().map(|c| c.to_vec()).collect();
        let d = montesinos(&columns, *extra).expect("montesinos construction");
        let total: i64 = cols
            .iter()
            .map(|c| c.iter().map(|x| x.abs()).sum::<i64>())
            .sum::<i64>()
            + extra.abs();
        assert!(d.is_knot(), "{name}: not a knot");
        assert_eq!(d.is_alternating(), *want_alt, "{name}: alternation");
        assert!(is_reduced(&d), "{name}: not reduced");
        assert_eq!(d.crossing_count() as i64, total, "{name}: crossing count");
        assert_eq!(det_u64(&d), *want_det, "{name}: determinant");
        table.insert((*name).into(), d);
    }
    println!("montesinos: {} knots verified", MONTESINOS.len());

    let mut jones_by_name: BTreeMap<String, Laurent> =
        table.iter().map(|(n, d)| (n.clone(), jones(d))).collect();

    for (name, space, want_cr, want_det, want_alt) in SEARCHED {
        let mut found: Vec<(Diagram, Laurent)> = Vec::new();
        for d in candidates(*space) {
            if d.crossing_count() != *want_cr
                || !d.is_knot()
                || !d.is_connected()
                || d.is_alternating() != *want_alt
                || !is_reduced(&d)
                || det_u64(&d) != *want_det
            {
                continue;
            }
            let v = jones(&d);
            // Rule out every knot already in the table.
            if jones_by_name.values().any(|u| same_up_to_mirror(&v, u)) {
                continue;
            }
            // Rule out composite knots with the same determinant.
            let mut composite = false;
            for (det, sums) in COMPOSITE_EXCLUSIONS {
                if det != want_det {
                    continue;
                }
                for factors in *sums {
                    for mask in 0..(1u32 << factors.len()) {
                        let mut prod = Laurent::one();
                        for (i, f) in factors.iter().enumerate() {
                            let vf = &jones_by_name[*f];
                            let vf = if mask >> i & 1 == 1 {
                                mirror_poly(vf)
                            } else {
                                vf.clone()
                            };
                            prod = &prod * &vf;
                        }
                        if same_up_to_mirror(&v, &prod) {
                            composite = true;
                        }
                    }
                }
            }
            if composite {
                continue;
            }
            found.push((d, v));
        }
        assert!(!found.is_empty(), "{name}: search found no candidate");
        let (d0, v0) = found[0].clone();
        for (_, v) in &found {
            assert!(
                same_up_to_mirror(v, &v0),
                "{name}: search found two distinct knots"
            );
        }
        println!(
            "searched {name}: {} matching diagrams, all one knot",
            found.len()
        );
        jones_by_name.insert((*name).into(), v0);
        table.insert((*name).into(), d0);
    }

    // Global checks: census counts and pairwise-distinct Jones.
    assert_eq!(table.len(), 84);
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for d in table.values() {
        *counts.entry(d.crossing_count()).or_default() += 1;
    }
    assert_eq!(
        counts,
        BTreeMap::from([(3, 1), (4, 1), (5, 2), (6, 3), (7, 7), (8, 21), (9, 49)])
    );
    let all: Vec<(&String, &Laurent)> = jones_by_name.iter().collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            assert_ne!(
                all[i].1, all[j].1,
                "jones collision: {} vs {}",
                all[i].0, all[j].0
            );
        }
    }
    println!("global checks passed: 84 knots, distinct jones");

    // Emit the CSV sorted by crossing number, then table index.
    let mut rows: Vec<(usize, usize, String, Diagram)> = table
        .into_iter()
        .map(|(name, d)| {
            let (c, i) = name.split_once('_').expect("name shape");
            (c.parse().unwrap(), i.parse().unwrap(), name, d)
        })
        .collect();
    rows.sort_by_key(|a| (a.0, a.1));
    let mut out = String::new();
    out.push_str("# Knot table: all prime knots with at most nine crossings.\n");
    out.push_str("# Regenerate with: cargo run --release -p knotkit --bin gen_corpus\n");
    out.push_str("name,pd,components,citations\n");
    for (_, _, name, d) in &rows {
        writeln!(
            out,
            "{},\"{}\",1,\"{}\"",
            name,
            d.to_pd_string(),
            CITATION
        )
        .unwrap();
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/rolfsen.csv");
    std::fs::write(path, out).expect("write csv");
    println!("wrote {path}");
}
