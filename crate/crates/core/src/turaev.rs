//! Kauffman states and the Turaev genus of a diagram.
//!
//! The Turaev surface of a connected diagram interpolates between the
//! all-A and all-B smoothed states; its genus is
//! g_T(D) = (c + 2 - s_A - s_B) / 2, where s_A and s_B count the circles
//! of the two extreme states. [`ribbon_genus_oracle`] recomputes the same
//! number from the boundary walks of the all-A ribbon graph, giving an
//! independent check of the closed formula.

use std::collections::HashMap;

use crate::diagram::{Diagram, Smoothing};
use crate::error::{Error, Result};

/// Number of circles of the Kauffman state choosing `state[i]` at
/// crossing i (free loops included).
pub fn state_circles(d: &Diagram, state: &[Smoothing]) -> Result<usize> {
    if state.len() != d.crossing_count() {
        return Err(Error::StateLength {
            got: state.len(),
            want: d.crossing_count(),
        });
    }
    let arcs = d.arcs();
    let idx: HashMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut uf = crate::diagram::UnionFind::new(arcs.len());
    for (i, t) in d.crossings().iter().enumerate() {
        for (x, y) in state[i].pairs() {
            uf.union(idx[&t[x]], idx[&t[y]]);
        }
    }
    Ok(uf.class_count() + d.free_loops())
}

/// Circle count of the all-A state.
pub fn s_a(d: &Diagram) -> usize {
    state_circles(d, &vec![Smoothing::A; d.crossing_count()]).expect("lengths match")
}

/// Circle count of the all-B state.
pub fn s_b(d: &Diagram) -> usize {
    state_circles(d, &vec![Smoothing::B; d.crossing_count()]).expect("lengths match")
}

/// Turaev genus of the diagram: (c + 2 - s_A - s_B) / 2.
/// Defined for connected diagrams only.
pub fn turaev_genus_diagram(d: &Diagram) -> Result<usize> {
    if !d.is_connected() {
        return Err(Error::SplitDiagram);
    }
    let c = d.crossing_count() as i64;
    let two_g = c + 2 - s_a(d) as i64 - s_b(d) as i64;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::ParityViolation);
    }
    Ok((two_g / 2) as usize)
}

/// Genus of the all-A ribbon graph: state circles as vertices, crossing
/// saddles as bands. The vertex count comes from tracing the all-A walk
/// orbits, the face count from the boundary walks of the band surface
/// (which follow the B-pairings at each saddle), and the genus from the
/// Euler characteristic of the resulting closed surface. Agrees with
/// [`turaev_genus_diagram`]; no arithmetic or union-find is shared.
pub fn ribbon_genus_oracle(d: &Diagram) -> Result<usize> {
    if !d.is_connected() {
        return Err(Error::SplitDiagram);
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(0);
    }
    let occ = d.arc_endpoints();
    let theta = |h: usize| {
        let ends = occ[&d.label_at(h)];
        if ends[0] == h {
            ends[1]
        } else {
            ends[0]
        }
    };
    // Walk orbits: from a saddle corner (crossing, slot), cross the
    // saddle along the given pairing, then follow the arc to its other
    // end.
    let orbit_count = |pair: fn(usize) -> usize| -> usize {
        let mut seen = vec![false; 4 * n];
        let mut count = 0;
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut h = start;
            loop {
                // Mark both slots of the passage: the opposite slot is
                // where the reversed traversal would arrive.
                seen[h] = true;
                let exit = 4 * (h / 4) + pair(h % 4);
                seen[exit] = true;
                h = theta(exit);
                if h == start {
                    break;
                }
            }
        }
        count
    };
    // A-pairing joins slots 0-3 and 1-2; B joins 0-1 and 2-3.
    let v = orbit_count(|s| [3, 2, 1, 0][s]);
    let f = orbit_count(|s| [1, 0, 3, 2][s]);
    if v != s_a(d) {
        return Err(Error::Invalid(
            "ribbon vertex walk disagrees with s_A".into(),
        ));
    }
    // Planarity cross-check: the A-circles cut the sphere into v + 1
    // regions (faces of D merged across the corners the A-smoothing
    // joins).
    let faces = d.faces();
    let mut region_uf = crate::diagram::UnionFind::new(faces.faces.len());
    for c in 0..n {
        region_uf.union(faces.corner(c, 0), faces.corner(c, 2));
    }
    let regions = region_uf.class_count();
    if regions != v + 1 {
        return Err(Error::Invalid(format!(
            "region count {regions} does not match {v} circles"
        )));
    }
    let two_g = 2 - (v as i64 - n as i64 + f as i64);
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::ParityViolation);
    }
    Ok((two_g / 2) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
    const FIGURE_EIGHT: &str = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
    const SIX_TWO: &str = "PD[X[1,8,2,9],X[3,11,4,10],X[5,1,6,12],X[7,2,8,3],X[9,7,10,6],X[11,5,12,4]]";

    #[test]
    fn trefoil_state_counts() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(s_a(&d), 2);
        assert_eq!(s_b(&d), 3);
        assert_eq!(turaev_genus_diagram(&d).unwrap(), 0);
    }

    #[test]
    fn six_two_state_counts() {
        let d = Diagram::parse_pd(SIX_TWO).unwrap();
        assert_eq!(d.n_positive(), 2);
        assert_eq!(s_a(&d) + s_b(&d), d.crossing_count() + 2);
        assert_eq!(turaev_genus_diagram(&d).unwrap(), 0);
    }

    #[test]
    fn alternating_diagrams_have_genus_zero() {
        for text in [TREFOIL, FIGURE_EIGHT, SIX_TWO] {
            let d = Diagram::parse_pd(text).unwrap();
            assert!(d.is_alternating());
            assert_eq!(turaev_genus_diagram(&d).unwrap(), 0);
        }
    }

    #[test]
    fn pretzel_family_has_genus_one() {
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let spec = crate::diagram::PretzelSpec::new(p, q).unwrap();
            let d = crate::diagram::families::pretzel(spec).unwrap();
            assert_eq!(turaev_genus_diagram(&d).unwrap(), 1, "K({p},{q})");
        }
    }

    #[test]
    fn oracle_matches_formula() {
        let mut diagrams = vec![
            Diagram::parse_pd(TREFOIL).unwrap(),
            Diagram::parse_pd(FIGURE_EIGHT).unwrap(),
            Diagram::parse_pd(SIX_TWO).unwrap(),
            crate::diagram::families::torus_knot(3, 4).unwrap(),
        ];
        for (p, q) in [(1, 1), (2, 1), (3, 1), (3, 3)] {
            let spec = crate::diagram::PretzelSpec::new(p, q).unwrap();
            diagrams.push(crate::diagram::families::pretzel(spec).unwrap());
        }
        for d in &diagrams {
            assert_eq!(
                ribbon_genus_oracle(d).unwrap(),
                turaev_genus_diagram(d).unwrap()
            );
        }
    }

    #[test]
    fn state_circles_interpolate() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let s = state_circles(
            &d,
            &[Smoothing::A, Smoothing::A, Smoothing::B],
        )
        .unwrap();
        assert_eq!(s, 1);
        assert!(state_circles(&d, &[Smoothing::A]).is_err());
    }

    #[test]
    fn split_diagram_rejected() {
        let d = Diagram::parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3],U[1]]").unwrap();
        assert!(matches!(
            turaev_genus_diagram(&d),
            Err(Error::SplitDiagram)
        ));
    }
}
