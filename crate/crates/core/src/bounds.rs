//! Concordance-style bounds from diagram data.
//!
//! A slice-torus invariant ν satisfies, for any diagram D of a knot,
//! `s_B(D) - n₋(D) - 1 ≤ ν ≤ 1 + n₊(D) - s_A(D)`, with equality on
//! the appropriate side for one-signed diagrams. This module implements
//! those bounds, the reduction of an arbitrary diagram to a one-signed
//! diagram plus bands (tracked through a spanning tree of the resolution
//! graph), the pairwise lower bound `g_T ≥ ½|μ - ν|` on the Turaev genus
//! from two slice-torus invariants, the connected-sum sandwich argument
//! pinning `g_T` of iterated sums, and the limsup consistency check that
//! ties everything to injected stable invariant values.

use num::{BigInt, BigRational, Signed};

use crate::corpus::InjectedValue;
use crate::diagram::{families, Diagram, PretzelSpec};
use crate::error::{Error, Result};
use crate::turaev::{s_a, s_b, turaev_genus_diagram};

/// Where a slice-torus invariant value came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DLSource {
    /// Computed in-process from a diagram.
    Computed,
    /// Taken from bundled or user-supplied data; carries its citation.
    Injected { citation: String },
}

/// A named slice-torus invariant value with provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceTorusValue {
    pub invariant: String,
    pub value: InjectedValue,
    pub source: DLSource,
}

/// Outcome of reducing a diagram to a one-signed diagram plus bands.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// The diagram with every crossing of the removed sign orientedly
    /// resolved (the resolution whose components form the graph Γ).
    pub resolved: Diagram,
    /// The final one-signed diagram D′.
    pub reduced: Diagram,
    /// Number of spanning-tree edges (crossings removed by untwisting).
    pub tree_edges: usize,
    /// Number of band moves the reduction spends: crossings of the
    /// removed sign not in the spanning tree.
    pub band_count: usize,
    /// All-A state circle count before and after; the reduction satisfies
    /// `s_a_after = s_a_before - tree_edges` (for the mirrored variant
    /// these fields hold all-B counts of the original diagram).
    pub s_a_before: usize,
    pub s_a_after: usize,
}

/// Reduce a knot diagram to an all-negative diagram: orientedly resolve
/// the positive crossings outside a spanning tree of the resolution
/// graph (band moves), then untwist the tree crossings (isotopies).
pub fn reduce_to_negative(d: &Diagram) -> Result<Reduction> {
    if !d.is_connected() {
        return Err(Error::SplitDiagram);
    }
    let n = d.crossing_count();
    let positives: Vec<usize> = (0..n).filter(|&i| d.sign(i) > 0).collect();
    let s_a_before = s_a(d);

    // Connected components of the diagram obtained by orientedly
    // resolving every positive crossing, via arc classes. Surviving
    // negative crossings glue all four of their arcs into one component.
    let arcs = d.arcs();
    let arc_idx: std::collections::HashMap<u32, usize> =
        arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut uf = crate::diagram::UnionFind::new(arcs.len());
    for (i, x) in d.crossings().iter().enumerate() {
        if d.sign(i) > 0 {
            // Oriented resolution joins under-in to over-out and vice
            // versa; the two local strands stay separate.
            uf.union(arc_idx[&x[0]], arc_idx[&x[3]]);
            uf.union(arc_idx[&x[1]], arc_idx[&x[2]]);
        } else {
            for k in 1..4 {
                uf.union(arc_idx[&x[0]], arc_idx[&x[k]]);
            }
        }
    }
    // Graph Γ: one vertex per resolved component, one edge per positive
    // crossing; BFS spanning tree rooted at the component of the
    // lowest-numbered arc.
    let component = |uf: &mut crate::diagram::UnionFind, arc: u32| uf.find(arc_idx[&arc]);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (crossing, u, v)
    for &c in &positives {
        let x = d.crossings()[c];
        let u = component(&mut uf, x[0]);
        let v = component(&mut uf, x[1]);
        edges.push((c, u, v));
    }
    let root = component(&mut uf, *arcs.first().ok_or_else(|| {
        Error::EmptyInput("cannot reduce an empty diagram".into())
    })?);
    let mut visited = std::collections::BTreeSet::from([root]);
    let mut queue = std::collections::VecDeque::from([root]);
    let mut tree: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        for &(c, a, b) in &edges {
            let other = if a == u && !visited.contains(&b) {
                b
            } else if b == u && !visited.contains(&a) {
                a
            } else {
                continue;
            };
            visited.insert(other);
            tree.insert(c);
            queue.push_back(other);
        }
    }
    // Resolve non-tree positive crossings, highest index first so the
    // surviving indices stay valid; track the tree crossings' positions.
    let mut tree_pos: Vec<usize> = tree.iter().copied().collect();
    let mut reduced = d.clone();
    for &c in positives.iter().rev() {
        if tree.contains(&c) {
            continue;
        }
        reduced = reduced.oriented_resolution(c)?;
        for t in &mut tree_pos {
            if *t > c {
                *t -= 1;
            }
        }
    }
    let resolved = {
        let mut r = reduced.clone();
        let mut remaining: Vec<usize> = tree_pos.clone();
        remaining.sort_unstable();
        for &c in remaining.iter().rev() {
            r = r.oriented_resolution(c)?;
        }
        r
    };
    // Untwist the tree crossings leaf by leaf: repeatedly remove any
    // positive crossing that has become nugatory.
    let budget = n + 1;
    for _ in 0..budget {
        if reduced.n_positive() == 0 {
            break;
        }
        let faces = reduced.faces();
        let kink = (0..reduced.crossing_count())
            .find(|&i| reduced.sign(i) > 0 && reduced.is_nugatory(i, &faces));
        match kink {
            Some(i) => reduced = reduced.untwist(i)?,
            None => {
                return Err(Error::UntwistStuck(format!(
                    "{} positive crossings left, none nugatory",
                    reduced.n_positive()
                )))
            }
        }
    }
    if reduced.n_positive() != 0 {
        return Err(Error::UntwistStuck("untwist budget exhausted".into()));
    }
    let tree_edges = tree.len();
    let s_a_after = s_a(&reduced);
    if s_a_after + tree_edges != s_a_before {
        return Err(Error::Invalid(format!(
            "reduction bookkeeping broken: s_A {s_a_before} -> {s_a_after} with {tree_edges} tree edges"
        )));
    }
    Ok(Reduction {
        resolved,
        reduced,
        tree_edges,
        band_count: d.n_positive() - tree_edges,
        s_a_before,
        s_a_after,
    })
}

/// Mirror-dual reduction to an all-positive diagram. The `s_a_*` fields
/// of the result hold all-B state circle counts of the original diagram.
pub fn reduce_to_positive(d: &Diagram) -> Result<Reduction> {
    let r = reduce_to_negative(&d.mirror())?;
    Ok(Reduction {
        resolved: r.resolved.mirror(),
        reduced: r.reduced.mirror(),
        tree_edges: r.tree_edges,
        band_count: r.band_count,
        s_a_before: r.s_a_before,
        s_a_after: r.s_a_after,
    })
}

/// Two-sided diagram bounds `(lo, hi)` valid for every slice-torus
/// invariant of the underlying knot.
pub fn dl_knot_bounds(d: &Diagram) -> Result<(i64, i64)> {
    if !d.is_knot() {
        return Err(Error::NotAKnot {
            components: d.component_count(),
        });
    }
    let lo = s_b(d) as i64 - d.n_negative() as i64 - 1;
    let hi = 1 + d.n_positive() as i64 - s_a(d) as i64;
    Ok((lo, hi))
}

/// Result of the one-signed-diagram equality check.
#[derive(Debug, Clone)]
pub struct Axiom2Report {
    /// The exact value every slice-torus invariant must take.
    pub expected: i64,
    /// The supplied values with their names.
    pub nu_values: Vec<(String, i64)>,
    pub holds: bool,
}

/// On a one-signed diagram the two bounds of [`dl_knot_bounds`] coincide,
/// so every slice-torus invariant is determined by state-circle counts.
/// Mixed-sign diagrams are rejected.
pub fn dl_axiom2_check(d: &Diagram, nu_values: &[(String, i64)]) -> Result<Axiom2Report> {
    if !d.is_knot() {
        return Err(Error::NotAKnot {
            components: d.component_count(),
        });
    }
    let expected = if d.n_negative() == 0 {
        1 + d.n_positive() as i64 - s_a(d) as i64
    } else if d.n_positive() == 0 {
        s_b(d) as i64 - d.n_negative() as i64 - 1
    } else {
        return Err(Error::Invalid(
            "one-signed equality check requires a positive or negative diagram".into(),
        ));
    };
    let holds = nu_values.iter().all(|(_, v)| *v == expected);
    Ok(Axiom2Report {
        expected,
        nu_values: nu_values.to_vec(),
        holds,
    })
}

/// A pairwise Turaev-genus lower bound and the pair achieving it.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremBBound {
    pub bound: BigRational,
    pub pair: (String, String),
}

/// Lower bound `g_T(K) ≥ max ½|μ - ν|` over all pairs of slice-torus
/// invariant values. Returns `None` when fewer than two values are given.
pub fn theorem_b_bound(values: &[(String, BigRational)]) -> Option<TheoremBBound> {
    let mut best: Option<TheoremBBound> = None;
    for (i, (na, va)) in values.iter().enumerate() {
        for (nb, vb) in values.iter().skip(i + 1) {
            let bound = (va - vb).abs() / BigRational::from_integer(2.into());
            if best.as_ref().is_none_or(|b| bound > b.bound) {
                best = Some(TheoremBBound {
                    bound,
                    pair: (na.clone(), nb.clone()),
                });
            }
        }
    }
    best
}

/// Outcome of the connected-sum sandwich argument.
#[derive(Debug, Clone)]
pub struct TheoremAReport {
    pub copies: usize,
    /// Turaev genus of the constructed connected-sum diagram (an upper
    /// bound for the Turaev genus of the sum).
    pub diagram_genus: usize,
    /// Additive lower bound: `copies` times the best pairwise bound of
    /// the summand.
    pub lower_bound: BigRational,
    /// True when lower bound and diagram genus pin `g_T` to `copies`.
    pub holds: bool,
}

/// Sandwich the Turaev genus of a `copies`-fold connected sum of the
/// pretzel knot: slice-torus invariants are additive, so the summand's
/// pairwise bound scales with `copies`, while the connected-sum diagram
/// caps the genus from above.
pub fn theorem_a_bookkeeping(
    copies: usize,
    spec: PretzelSpec,
    summand_values: &[(String, BigRational)],
) -> Result<TheoremAReport> {
    if copies == 0 {
        return Err(Error::EmptyInput("need at least one summand".into()));
    }
    let summand = families::pretzel(spec)?;
    let mut sum = summand.clone();
    for _ in 1..copies {
        sum = sum.connected_sum(&summand, None, None)?;
    }
    let diagram_genus = turaev_genus_diagram(&sum)?;
    let per_summand = theorem_b_bound(summand_values)
        .ok_or_else(|| Error::EmptyInput("need at least two invariant values".into()))?;
    let lower_bound = per_summand.bound * BigRational::from_integer(BigInt::from(copies));
    let copies_rat = BigRational::from_integer(BigInt::from(copies));
    let holds = lower_bound == copies_rat && diagram_genus == copies;
    Ok(TheoremAReport {
        copies,
        diagram_genus,
        lower_bound,
        holds,
    })
}

/// Outcome of the stable-invariant consistency check
/// `s + limsup sₙ/n = 2·g_T`.
#[derive(Debug, Clone, PartialEq)]
pub enum CorollaryC {
    Confirmed { lhs: BigRational, rhs: BigRational },
    /// Missing or interval-valued data: not a failure.
    Inconclusive { reason: String },
    Violated { lhs: BigRational, rhs: BigRational },
}

pub fn corollary_c_check(
    s: i64,
    limsup: Option<&InjectedValue>,
    turaev_genus: usize,
) -> CorollaryC {
    let Some(limsup) = limsup else {
        return CorollaryC::Inconclusive {
            reason: "no injected limsup value".into(),
        };
    };
    let InjectedValue::Exact(l) = limsup else {
        return CorollaryC::Inconclusive {
            reason: "limsup only known as an interval".into(),
        };
    };
    let lhs = BigRational::from_integer(s.into()) + l;
    let rhs = BigRational::from_integer(BigInt::from(2 * turaev_genus as i64));
    if lhs == rhs {
        CorollaryC::Confirmed { lhs, rhs }
    } else {
        CorollaryC::Violated { lhs, rhs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::{FIGURE_EIGHT, TREFOIL};

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn trefoil_reduces_to_unknot() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let r = reduce_to_negative(&d).unwrap();
        assert_eq!(r.reduced.crossing_count(), 0);
        assert_eq!(r.tree_edges, 1);
        assert_eq!(r.band_count, 2);
        assert_eq!((r.s_a_before, r.s_a_after), (2, 1));
        assert_eq!(r.resolved.component_count(), 2);
    }

    #[test]
    fn mirror_trefoil_reduces_to_positive() {
        let d = Diagram::parse_pd(TREFOIL).unwrap().mirror();
        let r = reduce_to_positive(&d).unwrap();
        assert_eq!(r.reduced.n_negative(), 0);
        assert_eq!(r.reduced.crossing_count(), 0);
        assert_eq!(r.band_count, 2);
    }

    #[test]
    fn figure_eight_reduction_keeps_negatives() {
        let d = Diagram::parse_pd(FIGURE_EIGHT).unwrap();
        let r = reduce_to_negative(&d).unwrap();
        assert_eq!(r.reduced.n_positive(), 0);
        assert_eq!(r.tree_edges + r.band_count, d.n_positive());
        assert_eq!(r.s_a_after + r.tree_edges, r.s_a_before);
    }

    #[test]
    fn six_two_fixture_reduction_shape() {
        let d = Diagram::parse_pd(crate::diagram::fixtures::SIX_TWO_TWO_POSITIVE).unwrap();
        assert_eq!((d.n_positive(), d.n_negative()), (2, 5));
        let r = reduce_to_negative(&d).unwrap();
        assert_eq!(r.tree_edges, 1);
        assert_eq!(r.band_count, 1);
        assert_eq!(r.reduced.crossing_count(), 5);
        assert_eq!(r.reduced.n_positive(), 0);
        assert!(r.reduced.is_connected());
    }

    #[test]
    fn diagram_bounds_pin_one_signed_diagrams() {
        let trefoil = Diagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(dl_knot_bounds(&trefoil).unwrap(), (2, 2));
        let fig8 = Diagram::parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(dl_knot_bounds(&fig8).unwrap(), (0, 0));
    }

    #[test]
    fn axiom2_accepts_positive_rejects_mixed() {
        let trefoil = Diagram::parse_pd(TREFOIL).unwrap();
        let report = dl_axiom2_check(
            &trefoil,
            &[("s".into(), 2), ("-signature".into(), 2)],
        )
        .unwrap();
        assert_eq!(report.expected, 2);
        assert!(report.holds);
        let fig8 = Diagram::parse_pd(FIGURE_EIGHT).unwrap();
        assert!(dl_axiom2_check(&fig8, &[]).is_err());
    }

    #[test]
    fn pairwise_bound_picks_widest_pair() {
        let b = theorem_b_bound(&[
            ("s".into(), rat(0)),
            ("nu3".into(), rat(-2)),
            ("nu4".into(), rat(-1)),
        ])
        .unwrap();
        assert_eq!(b.bound, rat(1));
        assert_eq!(b.pair, ("s".into(), "nu3".into()));
        assert!(theorem_b_bound(&[("s".into(), rat(3))]).is_none());
    }

    #[test]
    fn connected_sum_sandwich_for_smallest_pretzel() {
        let spec = PretzelSpec::new(1, 1).unwrap();
        let values = [("s".into(), rat(0)), ("nu3".into(), rat(-2))];
        for copies in 1..=3 {
            let report = theorem_a_bookkeeping(copies, spec, &values).unwrap();
            assert_eq!(report.diagram_genus, copies);
            assert_eq!(report.lower_bound, rat(copies as i64));
            assert!(report.holds);
        }
    }

    #[test]
    fn limsup_consistency() {
        let exact = InjectedValue::Exact(rat(2));
        assert_eq!(
            corollary_c_check(0, Some(&exact), 1),
            CorollaryC::Confirmed { lhs: rat(2), rhs: rat(2) }
        );
        assert!(matches!(
            corollary_c_check(0, None, 1),
            CorollaryC::Inconclusive { .. }
        ));
        let interval = InjectedValue::Interval(rat(1), rat(2));
        assert!(matches!(
            corollary_c_check(0, Some(&interval), 1),
            CorollaryC::Inconclusive { .. }
        ));
        assert!(matches!(
            corollary_c_check(4, Some(&exact), 1),
            CorollaryC::Violated { .. }
        ));
    }
}
