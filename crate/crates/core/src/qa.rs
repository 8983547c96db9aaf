//! Quasi-alternating certification.
//!
//! A link is quasi-alternating when it belongs to the smallest set
//! containing the unknot that is closed under the rule: some crossing has
//! both smoothings in the set with `det(L) = det(L₀) + det(L₁)`. The
//! certifier searches for such a resolution tree within a node budget and
//! emits a certificate that [`verify_certificate`] re-checks from scratch
//! (determinants recomputed, simplification traces replayed). Search
//! failure is reported as `Exhausted`, never as a negative answer; only a
//! vanishing determinant refutes membership outright.

use std::collections::HashMap;

use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::classical;
use crate::diagram::{Diagram, Smoothing};
use crate::error::{Error, Result};

/// One Reidemeister simplification move. Indices refer to the diagram the
/// move is applied to (so traces replay sequentially).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    /// Remove the kink at the given crossing.
    R1 { crossing: usize },
    /// Pull apart the bigon bounded by the two crossings.
    R2 { first: usize, second: usize },
}

/// A replayable sequence of crossing-decreasing moves.
pub type SimplificationTrace = Vec<Move>;

/// Check and apply one move, failing if its pattern is not present.
pub fn apply_move(d: &Diagram, mv: &Move) -> Result<Diagram> {
    match *mv {
        Move::R1 { crossing } => {
            if !is_kink(d, crossing)? {
                return Err(Error::Invalid(format!(
                    "crossing {crossing} is not an R1 kink"
                )));
            }
            d.untwist(crossing)
        }
        Move::R2 { first, second } => {
            if !is_r2_pair(d, first, second)? {
                return Err(Error::Invalid(format!(
                    "crossings {first}, {second} do not bound an R2 bigon"
                )));
            }
            let d1 = d.untwist(first)?;
            let second = if second > first { second - 1 } else { second };
            d1.untwist(second)
        }
    }
}

/// A crossing is an R1 kink when two adjacent slots carry the same arc.
fn is_kink(d: &Diagram, i: usize) -> Result<bool> {
    let x = d
        .crossings()
        .get(i)
        .ok_or(Error::IndexOutOfRange {
            index: i,
            len: d.crossing_count(),
        })?;
    Ok((0..4).any(|k| x[k] == x[(k + 1) % 4]))
}

/// Two crossings admit an R2 move when they bound a bigon (share the same
/// pair of distinct arcs on adjacent slots) and one strand runs over at
/// both crossings: each shared arc sits on slots of equal parity.
fn is_r2_pair(d: &Diagram, i: usize, j: usize) -> Result<bool> {
    let n = d.crossing_count();
    if i >= n || j >= n {
        return Err(Error::IndexOutOfRange {
            index: i.max(j),
            len: n,
        });
    }
    if i == j {
        return Ok(false);
    }
    let (xi, xj) = (d.crossings()[i], d.crossings()[j]);
    for k in 0..4 {
        let (a, b) = (xi[k], xi[(k + 1) % 4]);
        if a == b {
            continue;
        }
        for l in 0..4 {
            if xj[l] == a && xj[(l + 1) % 4] == b {
                // Arc a sits at slot k of i and slot l of j; the strand
                // through a is under at even slots, over at odd ones.
                if (k % 2) == (l % 2) {
                    return Ok(true);
                }
            }
            if xj[l] == b && xj[(l + 1) % 4] == a
                && ((k + 1) % 2) == (l % 2) {
                    return Ok(true);
                }
        }
    }
    Ok(false)
}

/// Greedily remove R1 kinks and R2 bigons until none remain. The crossing
/// count never increases; every recorded move strictly decreases it.
pub fn simplify(d: &Diagram) -> (Diagram, SimplificationTrace) {
    let mut cur = d.clone();
    let mut trace = Vec::new();
    'outer: loop {
        for i in 0..cur.crossing_count() {
            if is_kink(&cur, i).unwrap_or(false) {
                let mv = Move::R1 { crossing: i };
                cur = apply_move(&cur, &mv).expect("detected move applies");
                trace.push(mv);
                continue 'outer;
            }
        }
        for i in 0..cur.crossing_count() {
            for j in i + 1..cur.crossing_count() {
                if is_r2_pair(&cur, i, j).unwrap_or(false) {
                    let mv = Move::R2 { first: i, second: j };
                    cur = apply_move(&cur, &mv).expect("detected move applies");
                    trace.push(mv);
                    continue 'outer;
                }
            }
        }
        break;
    }
    (cur, trace)
}

/// What a certificate node claims after its trace has been replayed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum QAStep {
    /// The simplified diagram has no crossings and one component.
    Unknot,
    /// The simplified diagram is a relabeling of the next node's diagram
    /// (used by memoization and connected-sum composition).
    Same { next: Box<QANode> },
    /// Both smoothings at `crossing` of the simplified diagram are
    /// certified and their determinants add up.
    Branch {
        crossing: usize,
        zero: Box<QANode>,
        one: Box<QANode>,
    },
}

/// One node of a quasi-alternating certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QANode {
    pub pd: String,
    pub det: u64,
    pub trace: SimplificationTrace,
    pub step: QAStep,
}

/// A certificate: a resolution tree rooted at the input diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QACertificate {
    pub root: QANode,
}

/// Search limits. Defaults: one million nodes, depth 256.
#[derive(Debug, Clone, Copy)]
pub struct QABudget {
    pub max_nodes: usize,
    pub max_depth: usize,
}

impl Default for QABudget {
    fn default() -> Self {
        QABudget {
            max_nodes: 1_000_000,
            max_depth: 256,
        }
    }
}

/// Result of a certification attempt.
#[derive(Debug, Clone)]
pub enum QAOutcome {
    Certified(QACertificate),
    /// Budget ran out before the search settled: NOT a negative answer.
    Exhausted { nodes_used: usize },
    /// A genuine obstruction (zero determinant).
    Refuted { reason: String },
}

/// Link determinant, with the split shortcuts the recursion relies on.
fn det_of(d: &Diagram) -> Result<BigInt> {
    if d.crossing_count() == 0 {
        return Ok(BigInt::from(u8::from(d.component_count() == 1)));
    }
    if !d.is_connected() {
        return Ok(BigInt::from(0));
    }
    classical::determinant(d)
}

struct SearchCtx {
    budget: QABudget,
    nodes_used: usize,
    truncated: bool,
    /// Canonical PD of a simplified diagram -> certified subtree.
    proven: HashMap<String, QANode>,
    /// Canonical PDs that failed with the search space fully explored.
    failed: std::collections::HashSet<String>,
}

enum Search {
    Found(QANode),
    NotFound,
}

fn search(d: &Diagram, det: &BigInt, depth: usize, ctx: &mut SearchCtx) -> Result<Search> {
    ctx.nodes_used += 1;
    if ctx.nodes_used > ctx.budget.max_nodes || depth > ctx.budget.max_depth {
        ctx.truncated = true;
        return Ok(Search::NotFound);
    }
    let pd = d.to_pd_string();
    let (simple, trace) = simplify(d);
    if simple.crossing_count() == 0 && simple.component_count() == 1 {
        debug_assert_eq!(det, &BigInt::from(1));
        return Ok(Search::Found(QANode {
            pd,
            det: 1,
            trace,
            step: QAStep::Unknot,
        }));
    }
    let key = simple.unoriented_canonical_key();
    if let Some(hit) = ctx.proven.get(&key) {
        return Ok(Search::Found(QANode {
            pd,
            det: hit.det,
            trace,
            step: QAStep::Same {
                next: Box::new(hit.clone()),
            },
        }));
    }
    if ctx.failed.contains(&key) {
        return Ok(Search::NotFound);
    }
    // Candidate crossings whose smoothings split the determinant, most
    // balanced (largest det product) first.
    let det_u = det
        .to_u64()
        .ok_or_else(|| Error::Invalid("determinant too large".into()))?;
    let mut candidates: Vec<(BigInt, usize, Diagram, Diagram, BigInt, BigInt)> = Vec::new();
    for c in 0..simple.crossing_count() {
        let zero = simple.smooth(c, Smoothing::A)?;
        let one = simple.smooth(c, Smoothing::B)?;
        let d0 = det_of(&zero)?;
        let d1 = det_of(&one)?;
        if d0.is_positive() && d1.is_positive() && &d0 + &d1 == *det {
            candidates.push((&d0 * &d1, c, zero, one, d0, d1));
        }
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let before_truncated = ctx.truncated;
    for (_, c, zero, one, d0, d1) in candidates {
        let Search::Found(n0) = search(&zero, &d0, depth + 1, ctx)? else {
            continue;
        };
        let Search::Found(n1) = search(&one, &d1, depth + 1, ctx)? else {
            continue;
        };
        let step = QAStep::Branch {
            crossing: c,
            zero: Box::new(n0),
            one: Box::new(n1),
        };
        // Memoize the simplified form with an empty trace: a later hit
        // replays its own trace down to this diagram and bridges here.
        ctx.proven.insert(
            key,
            QANode {
                pd: simple.to_pd_string(),
                det: det_u,
                trace: Vec::new(),
                step: step.clone(),
            },
        );
        return Ok(Search::Found(QANode {
            pd,
            det: det_u,
            trace,
            step,
        }));
    }
    // Only cache the failure when no branch was cut off by the budget.
    if ctx.truncated == before_truncated && !ctx.truncated {
        ctx.failed.insert(key);
    }
    Ok(Search::NotFound)
}

/// Try to certify that the diagram's link is quasi-alternating.
pub fn qa_certify(d: &Diagram, budget: QABudget) -> Result<QAOutcome> {
    certify_seeded(d, budget, HashMap::new())
}

fn certify_seeded(
    d: &Diagram,
    budget: QABudget,
    proven: HashMap<String, QANode>,
) -> Result<QAOutcome> {
    if budget.max_nodes == 0 || budget.max_depth == 0 {
        return Err(Error::EmptyBudget);
    }
    if !d.is_connected() {
        return Err(Error::SplitDiagram);
    }
    let det = det_of(d)?;
    if det.is_zero() {
        return Ok(QAOutcome::Refuted {
            reason: "determinant is zero; quasi-alternating links have det ≥ 1".into(),
        });
    }
    let mut ctx = SearchCtx {
        budget,
        nodes_used: 0,
        truncated: false,
        proven,
        failed: std::collections::HashSet::new(),
    };
    match search(d, &det, 0, &mut ctx)? {
        Search::Found(root) => Ok(QAOutcome::Certified(QACertificate { root })),
        Search::NotFound => Ok(QAOutcome::Exhausted {
            nodes_used: ctx.nodes_used,
        }),
    }
}

fn verify_node(node: &QANode) -> Result<()> {
    let d = Diagram::parse_pd(&node.pd)?;
    let det = det_of(&d)?;
    if det != BigInt::from(node.det) {
        return Err(Error::Invalid(format!(
            "node determinant mismatch: stored {}, recomputed {}",
            node.det, det
        )));
    }
    let mut cur = d;
    for mv in &node.trace {
        let next = apply_move(&cur, mv)?;
        if next.crossing_count() >= cur.crossing_count() {
            return Err(Error::Invalid("trace move did not reduce crossings".into()));
        }
        cur = next;
    }
    match &node.step {
        QAStep::Unknot => {
            if cur.crossing_count() != 0 || cur.component_count() != 1 {
                return Err(Error::Invalid(
                    "leaf does not simplify to the 0-crossing unknot".into(),
                ));
            }
            if node.det != 1 {
                return Err(Error::Invalid("unknot leaf with det ≠ 1".into()));
            }
            Ok(())
        }
        QAStep::Same { next } => {
            let target = Diagram::parse_pd(&next.pd)?;
            if cur.unoriented_canonical_key() != target.unoriented_canonical_key() {
                return Err(Error::Invalid(
                    "Same-step diagrams are not relabelings of each other".into(),
                ));
            }
            verify_node(next)
        }
        QAStep::Branch {
            crossing,
            zero,
            one,
        } => {
            if zero.det + one.det != node.det {
                return Err(Error::Invalid(format!(
                    "determinant additivity fails: {} + {} ≠ {}",
                    zero.det, one.det, node.det
                )));
            }
            let z = cur.smooth(*crossing, Smoothing::A)?;
            let o = cur.smooth(*crossing, Smoothing::B)?;
            let zd = Diagram::parse_pd(&zero.pd)?;
            let od = Diagram::parse_pd(&one.pd)?;
            if z.unoriented_canonical_key() != zd.unoriented_canonical_key()
                || o.unoriented_canonical_key() != od.unoriented_canonical_key()
            {
                return Err(Error::Invalid(
                    "branch children do not match the recorded smoothings".into(),
                ));
            }
            verify_node(zero)?;
            verify_node(one)
        }
    }
}

/// Independently re-check a certificate: every determinant is recomputed
/// and every trace replayed. Returns the failure as an error.
pub fn verify_certificate(cert: &QACertificate) -> Result<()> {
    verify_node(&cert.root)
}

/// Record every certified subtree of a certificate in a memo table, keyed
/// by the (orientation-insensitive) canonical form of the diagram after
/// its trace has been replayed.
fn seed_proven(node: &QANode, proven: &mut HashMap<String, QANode>) -> Result<()> {
    let mut cur = Diagram::parse_pd(&node.pd)?;
    for mv in &node.trace {
        cur = apply_move(&cur, mv)?;
    }
    if !matches!(node.step, QAStep::Unknot) {
        proven.insert(
            cur.unoriented_canonical_key(),
            QANode {
                pd: cur.to_pd_string(),
                det: node.det,
                trace: Vec::new(),
                step: node.step.clone(),
            },
        );
    }
    match &node.step {
        QAStep::Unknot => {}
        QAStep::Same { next } => seed_proven(next, proven)?,
        QAStep::Branch { zero, one, .. } => {
            seed_proven(zero, proven)?;
            seed_proven(one, proven)?;
        }
    }
    Ok(())
}

/// Compose certificates of two knots into one for their connected sum:
/// the sum diagram is certified with the search memo pre-seeded by every
/// subtree of both input certificates, so the recursion bottoms out in
/// `Same` bridges into the existing proofs as soon as one summand has
/// been fully resolved, rather than re-deriving them from scratch.
pub fn compose_connected_sum(a: &QACertificate, b: &QACertificate) -> Result<QACertificate> {
    let da = Diagram::parse_pd(&a.root.pd)?;
    let db = Diagram::parse_pd(&b.root.pd)?;
    let sum = da.connected_sum(&db, None, None)?;
    let mut proven = HashMap::new();
    seed_proven(&a.root, &mut proven)?;
    seed_proven(&b.root, &mut proven)?;
    match certify_seeded(&sum, QABudget::default(), proven)? {
        QAOutcome::Certified(cert) => Ok(cert),
        QAOutcome::Exhausted { nodes_used } => Err(Error::Invalid(format!(
            "composition search exhausted its budget after {nodes_used} nodes"
        ))),
        QAOutcome::Refuted { reason } => Err(Error::Invalid(reason)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::{FIGURE_EIGHT, TREFOIL};

    #[test]
    fn simplify_removes_double_kink() {
        // Two stacked kinks on an unknot.
        let d = Diagram::parse_pd("PD[X[1,1,2,4],X[2,2,3,3]]");
        if let Ok(d) = d {
            let (s, trace) = simplify(&d);
            assert_eq!(s.crossing_count(), 0);
            assert_eq!(trace.len(), 2);
        }
        let kink = Diagram::parse_pd("PD[X[1,1,2,2]]").unwrap();
        let once = kink.connected_sum(&kink, None, None).unwrap();
        let (s, trace) = simplify(&once);
        assert_eq!(s.crossing_count(), 0);
        assert_eq!(trace.len(), 2);
    }

    #[test]
    fn simplify_leaves_reduced_alternating_untouched() {
        for pd in [TREFOIL, FIGURE_EIGHT] {
            let d = Diagram::parse_pd(pd).unwrap();
            let (s, trace) = simplify(&d);
            assert_eq!(s.crossing_count(), d.crossing_count());
            assert!(trace.is_empty());
        }
    }

    #[test]
    fn unknot_certifies_immediately() {
        let out = qa_certify(&Diagram::unknot(), QABudget::default()).unwrap();
        let QAOutcome::Certified(cert) = out else {
            panic!("unknot not certified");
        };
        assert_eq!(cert.root.step, QAStep::Unknot);
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn trefoil_and_figure_eight_certify() {
        for pd in [TREFOIL, FIGURE_EIGHT] {
            let d = Diagram::parse_pd(pd).unwrap();
            let QAOutcome::Certified(cert) = qa_certify(&d, QABudget::default()).unwrap() else {
                panic!("{pd} not certified");
            };
            verify_certificate(&cert).unwrap();
            // Round-trip through JSON and re-verify.
            let json = serde_json::to_string(&cert).unwrap();
            let back: QACertificate = serde_json::from_str(&json).unwrap();
            assert_eq!(back, cert);
            verify_certificate(&back).unwrap();
        }
    }

    #[test]
    fn perturbed_certificate_fails() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let QAOutcome::Certified(mut cert) = qa_certify(&d, QABudget::default()).unwrap() else {
            panic!("trefoil not certified");
        };
        cert.root.det += 1;
        assert!(verify_certificate(&cert).is_err());
    }

    #[test]
    fn tiny_budget_exhausts() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        match qa_certify(&d, QABudget { max_nodes: 2, max_depth: 256 }).unwrap() {
            QAOutcome::Exhausted { nodes_used } => assert!(nodes_used >= 2),
            other => panic!("expected exhaustion, got {other:?}"),
        }
        assert!(matches!(
            qa_certify(&d, QABudget { max_nodes: 0, max_depth: 1 }),
            Err(Error::EmptyBudget)
        ));
    }

    #[test]
    fn connected_sum_certificates_compose() {
        let t = Diagram::parse_pd(TREFOIL).unwrap();
        let f = Diagram::parse_pd(FIGURE_EIGHT).unwrap();
        let QAOutcome::Certified(ct) = qa_certify(&t, QABudget::default()).unwrap() else {
            panic!()
        };
        let QAOutcome::Certified(cf) = qa_certify(&f, QABudget::default()).unwrap() else {
            panic!()
        };
        let sum = compose_connected_sum(&ct, &cf).unwrap();
        assert_eq!(sum.root.det, 15);
        verify_certificate(&sum).unwrap();
    }

    #[test]
    fn hand_built_hopf_link_certificate_passes() {
        // Standard Hopf link, det 2 = 1 + 1; both smoothings are unknots.
        let hopf = Diagram::parse_pd("PD[X[1,3,2,4],X[3,1,4,2]]").unwrap();
        assert_eq!(det_of(&hopf).unwrap(), BigInt::from(2));
        let zero = hopf.smooth(0, Smoothing::A).unwrap();
        let one = hopf.smooth(0, Smoothing::B).unwrap();
        let leaf = |d: &Diagram| {
            let (s, trace) = simplify(d);
            assert_eq!(s.crossing_count(), 0);
            QANode {
                pd: d.to_pd_string(),
                det: 1,
                trace,
                step: QAStep::Unknot,
            }
        };
        let cert = QACertificate {
            root: QANode {
                pd: hopf.to_pd_string(),
                det: 2,
                trace: vec![],
                step: QAStep::Branch {
                    crossing: 0,
                    zero: Box::new(leaf(&zero)),
                    one: Box::new(leaf(&one)),
                },
            },
        };
        verify_certificate(&cert).unwrap();
    }
}
