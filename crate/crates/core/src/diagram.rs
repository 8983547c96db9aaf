//! Oriented link diagrams as PD codes.
//!
//! A crossing is a 4-tuple of arc labels read counterclockwise starting
//! from the incoming under-strand, so slot 0 is the under-strand entering
//! and slot 2 the under-strand leaving. The over-strand occupies slots 1
//! and 3; its direction is derived from the global orientation of the
//! strands. A crossing is positive when the over-strand enters at slot 1
//! (runs b -> d in the tuple (a,b,c,d)); the standard trefoil code
//! `PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]` is the canonical all-positive
//! fixture for this convention.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub mod families;

/// Which Kauffman smoothing to apply at a crossing.
///
/// In the tuple (a,b,c,d) the A-smoothing joins a-d and b-c (the regions
/// swept counterclockwise from the under-strand merge), the B-smoothing
/// joins a-b and c-d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    pub fn other(self) -> Smoothing {
        match self {
            Smoothing::A => Smoothing::B,
            Smoothing::B => Smoothing::A,
        }
    }

    /// Slot pairings of the smoothed strands.
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::A => [(0, 3), (1, 2)],
            Smoothing::B => [(0, 1), (2, 3)],
        }
    }
}

/// Parameters of the pretzel knot family P(2p+1, -2q-1, 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PretzelSpec {
    pub p: u32,
    pub q: u32,
}

impl PretzelSpec {
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q < 1 || p < q {
            return Err(Error::Invalid(format!(
                "pretzel parameters require p >= q >= 1, got p={p}, q={q}"
            )));
        }
        Ok(PretzelSpec { p, q })
    }

    pub fn crossing_count(&self) -> usize {
        (2 * self.p + 2 * self.q + 4) as usize
    }
}

/// An oriented link diagram.
///
/// Immutable after construction; every operation returns a new diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<[u32; 4]>,
    /// true: over-strand enters at slot 1 (positive crossing).
    over_from_b: Vec<bool>,
    /// Extra crossing-free unknot components.
    free_loops: usize,
    /// Oriented arc cycles, one per crossing-bearing component.
    cycles: Vec<Vec<u32>>,
}

/// A dart is one of the four slots of a crossing: `4 * crossing + slot`.
pub type Dart = usize;

/// Face structure of the underlying 4-valent plane graph.
#[derive(Debug, Clone)]
pub struct Faces {
    /// Darts grouped by face, in trace order.
    pub faces: Vec<Vec<Dart>>,
    /// Face index of each dart.
    pub face_of: Vec<usize>,
}

impl Faces {
    /// Face at the corner between slots k and k+1 of crossing i.
    pub fn corner(&self, crossing: usize, k: usize) -> usize {
        self.face_of[4 * crossing + (k + 1) % 4]
    }
}

impl Diagram {
    // ------------------------------------------------------------------
    // construction

    /// The 0-crossing unknot.
    pub fn unknot() -> Diagram {
        Diagram {
            crossings: Vec::new(),
            over_from_b: Vec::new(),
            free_loops: 1,
            cycles: Vec::new(),
        }
    }

    /// The empty diagram (no components at all).
    pub fn empty() -> Diagram {
        Diagram {
            crossings: Vec::new(),
            over_from_b: Vec::new(),
            free_loops: 0,
            cycles: Vec::new(),
        }
    }

    /// Build from crossing tuples, deriving the over-strand directions by
    /// propagating the orientation constraints. Components whose direction
    /// is not forced (closed all-over loops) get a deterministic choice.
    pub fn from_crossings(crossings: Vec<[u32; 4]>, free_loops: usize) -> Result<Diagram> {
        let over = derive_over_flags(&crossings)?;
        Self::from_parts(crossings, over, free_loops)
    }

    /// Build from crossing tuples plus explicit over-strand directions.
    /// Validates that the directions give a coherent orientation.
    pub fn from_parts(
        crossings: Vec<[u32; 4]>,
        over_from_b: Vec<bool>,
        free_loops: usize,
    ) -> Result<Diagram> {
        if crossings.len() != over_from_b.len() {
            return Err(Error::Invalid("flag list length mismatch".into()));
        }
        for t in &crossings {
            for &x in t {
                if x == 0 {
                    return Err(Error::Syntax("arc labels must be positive".into()));
                }
            }
        }
        let occ = occurrences(&crossings)?;
        // Check each arc has one incoming and one outgoing endpoint.
        for (&label, ends) in &occ {
            let d0 = is_outgoing(ends[0], &over_from_b);
            let d1 = is_outgoing(ends[1], &over_from_b);
            if d0 == d1 {
                let _ = label;
                return Err(Error::InconsistentOrientation);
            }
        }
        let cycles = trace_cycles(&crossings, &over_from_b, &occ)?;
        Ok(Diagram {
            crossings,
            over_from_b,
            free_loops,
            cycles,
        })
    }

    /// Build from crossing tuples whose strands may no longer respect the
    /// slot convention (as after an unoriented smoothing): re-walks the
    /// strands, rotates each crossing so the under-strand enters at slot
    /// 0, and recomputes the over-strand direction flags.
    pub fn from_crossings_reoriented(
        crossings: Vec<[u32; 4]>,
        free_loops: usize,
    ) -> Result<Diagram> {
        let n = crossings.len();
        let mut occ: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
        for (c, t) in crossings.iter().enumerate() {
            for (k, &a) in t.iter().enumerate() {
                occ.entry(a).or_default().push((c, k));
            }
        }
        for (&label, ends) in &occ {
            if ends.len() != 2 {
                return Err(Error::ArcCount {
                    label,
                    count: ends.len(),
                });
            }
        }
        // Walk each strand once, choosing a direction for its component:
        // an endpoint is either incoming or outgoing, and the strand
        // leaves a crossing at the opposite slot (k XOR 2) of where it
        // entered.
        let mut incoming = vec![[None::<bool>; 4]; n];
        for c0 in 0..n {
            for k0 in 0..4 {
                if incoming[c0][k0].is_some() {
                    continue;
                }
                let (mut c, mut k) = (c0, k0);
                while incoming[c][k].is_none() {
                    incoming[c][k] = Some(true);
                    let out = k ^ 2;
                    incoming[c][out] = Some(false);
                    let ends = &occ[&crossings[c][out]];
                    let (nc, nk) = if ends[0] == (c, out) { ends[1] } else { ends[0] };
                    (c, k) = (nc, nk);
                }
            }
        }
        let mut rotated = Vec::with_capacity(n);
        let mut flags = Vec::with_capacity(n);
        for (c, t) in crossings.iter().enumerate() {
            let rot = if incoming[c][0] == Some(true) { 0 } else { 2 };
            rotated.push([t[rot], t[(rot + 1) % 4], t[(rot + 2) % 4], t[(rot + 3) % 4]]);
            flags.push(incoming[c][(rot + 1) % 4] == Some(true));
        }
        Diagram::from_parts(rotated, flags, free_loops)
    }

    /// Parse the `PD[X[a,b,c,d],...,U[k]]` text format.
    pub fn parse_pd(text: &str) -> Result<Diagram> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix("PD[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Syntax("expected PD[...]".into()))?;
        let mut crossings = Vec::new();
        let mut free_loops = 0usize;
        for tok in split_tokens(body)? {
            if let Some(args) = tok.strip_prefix("X[").and_then(|r| r.strip_suffix(']')) {
                let vals = parse_ints(args)?;
                if vals.len() != 4 {
                    return Err(Error::Syntax(format!("X takes 4 labels: {tok}")));
                }
                crossings.push([vals[0], vals[1], vals[2], vals[3]]);
            } else if let Some(args) = tok.strip_prefix("U[").and_then(|r| r.strip_suffix(']')) {
                let vals = parse_ints(args)?;
                if vals.len() != 1 {
                    return Err(Error::Syntax(format!("U takes 1 index: {tok}")));
                }
                free_loops += 1;
            } else if !tok.is_empty() {
                return Err(Error::Syntax(format!("unrecognized token: {tok}")));
            }
        }
        Diagram::from_crossings(crossings, free_loops)
    }

    /// Serialize; `parse_pd(serialize(d)) == d` bit-exact.
    pub fn to_pd_string(&self) -> String {
        let mut out = String::from("PD[");
        let mut first = true;
        for t in &self.crossings {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "X[{},{},{},{}]", t[0], t[1], t[2], t[3]);
        }
        for k in 1..=self.free_loops {
            if !first {
                out.push(',');
            }
            first = false;
            let _ = write!(out, "U[{k}]");
        }
        out.push(']');
        out
    }

    // ------------------------------------------------------------------
    // basic accessors

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Oriented arc cycles of the crossing-bearing components.
    pub fn arc_cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn component_count(&self) -> usize {
        self.cycles.len() + self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// All arc labels, sorted.
    pub fn arcs(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.cycles.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    /// Per-crossing signs; +1 when the over-strand runs b -> d.
    pub fn signs(&self) -> Vec<i32> {
        self.over_from_b
            .iter()
            .map(|&b| if b { 1 } else { -1 })
            .collect()
    }

    pub fn sign(&self, i: usize) -> i32 {
        if self.over_from_b[i] {
            1
        } else {
            -1
        }
    }

    pub fn n_positive(&self) -> usize {
        self.over_from_b.iter().filter(|&&b| b).count()
    }

    pub fn n_negative(&self) -> usize {
        self.crossings.len() - self.n_positive()
    }

    pub fn writhe(&self) -> i64 {
        self.n_positive() as i64 - self.n_negative() as i64
    }

    /// True when every arc passes once over and once under (and the
    /// diagram has at least one crossing and no split loops).
    pub fn is_alternating(&self) -> bool {
        if self.crossings.is_empty() || self.free_loops > 0 {
            return false;
        }
        let occ = occurrences(&self.crossings).expect("validated");
        occ.values().all(|ends| {
            let under0 = ends[0] % 4 == 0 || ends[0] % 4 == 2;
            let under1 = ends[1] % 4 == 0 || ends[1] % 4 == 2;
            under0 != under1
        })
    }

    /// Connectivity of the underlying 4-valent graph (plus loops).
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.free_loops <= 1;
        }
        if self.free_loops > 0 {
            return false;
        }
        let arcs = self.arcs();
        let idx: HashMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut uf = UnionFind::new(arcs.len());
        for t in &self.crossings {
            for k in 1..4 {
                uf.union(idx[&t[0]], idx[&t[k]]);
            }
        }
        uf.class_count() == 1
    }

    /// Dart at the given crossing and slot.
    pub fn label_at(&self, dart: Dart) -> u32 {
        self.crossings[dart / 4][dart % 4]
    }

    /// The two darts carrying each arc label.
    pub fn arc_endpoints(&self) -> HashMap<u32, [Dart; 2]> {
        occurrences(&self.crossings).expect("validated")
    }

    /// True when the dart is an outgoing endpoint (the arc starts there).
    pub fn dart_outgoing(&self, dart: Dart) -> bool {
        is_outgoing(dart, &self.over_from_b)
    }

    // ------------------------------------------------------------------
    // faces

    /// Trace the faces of the underlying 4-valent plane graph from the
    /// rotation system implied by the counterclockwise tuples.
    pub fn faces(&self) -> Faces {
        let n = self.crossings.len();
        let occ = occurrences(&self.crossings).expect("validated");
        let theta = |h: Dart| -> Dart {
            let ends = &occ[&self.label_at(h)];
            if ends[0] == h {
                ends[1]
            } else {
                ends[0]
            }
        };
        let mut face_of = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = id;
                walk.push(h);
                let t = theta(h);
                h = (t / 4) * 4 + (t % 4 + 1) % 4;
                if h == start {
                    break;
                }
            }
            faces.push(walk);
        }
        Faces { faces, face_of }
    }

    // ------------------------------------------------------------------
    // operations

    /// Smooth one crossing. Orientation of the result is re-derived from
    /// scratch (non-oriented smoothings break strand directions).
    pub fn smooth(&self, index: usize, kind: Smoothing) -> Result<Diagram> {
        let (crossings, _flags, free) = self.spliced(index, kind.pairs())?;
        Diagram::from_crossings_reoriented(crossings, free)
    }

    /// Smooth orientedly: the A-smoothing at positive crossings, the
    /// B-smoothing at negative ones. Strand directions are preserved.
    pub fn oriented_resolution(&self, index: usize) -> Result<Diagram> {
        if index >= self.crossings.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.crossings.len(),
            });
        }
        let kind = if self.over_from_b[index] {
            Smoothing::A
        } else {
            Smoothing::B
        };
        let (crossings, flags, free) = self.spliced(index, kind.pairs())?;
        Diagram::from_parts(crossings, flags, free)
    }

    /// Remove a crossing by letting the strands pass without crossing
    /// (a -> c and b -> d keep their continuity). This is an isotopy
    /// exactly when the crossing is nugatory.
    pub fn untwist(&self, index: usize) -> Result<Diagram> {
        let (crossings, flags, free) = self.spliced(index, [(0, 2), (1, 3)])?;
        Diagram::from_parts(crossings, flags, free)
    }

    /// A crossing is nugatory when two opposite corner regions coincide.
    pub fn is_nugatory(&self, index: usize, faces: &Faces) -> bool {
        faces.corner(index, 0) == faces.corner(index, 2)
            || faces.corner(index, 1) == faces.corner(index, 3)
    }

    /// Remove crossing `index` and reconnect the four strand ends by the
    /// given slot pairings; returns relabeled crossings, surviving flags
    /// and the new free-loop count.
    fn spliced(
        &self,
        index: usize,
        pairs: [(usize, usize); 2],
    ) -> Result<(Vec<[u32; 4]>, Vec<bool>, usize)> {
        if index >= self.crossings.len() {
            return Err(Error::IndexOutOfRange {
                index,
                len: self.crossings.len(),
            });
        }
        let arcs = self.arcs();
        let idx: HashMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut uf = UnionFind::new(arcs.len());
        let t = self.crossings[index];
        for (x, y) in pairs {
            uf.union(idx[&t[x]], idx[&t[y]]);
        }
        // Representative = smallest original label in the class.
        let mut rep: HashMap<usize, u32> = HashMap::new();
        for (i, &a) in arcs.iter().enumerate() {
            let r = uf.find(i);
            let e = rep.entry(r).or_insert(a);
            if a < *e {
                *e = a;
            }
        }
        let mut remaining: Vec<[u32; 4]> = Vec::with_capacity(self.crossings.len() - 1);
        let mut flags: Vec<bool> = Vec::with_capacity(self.crossings.len() - 1);
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for (i, tup) in self.crossings.iter().enumerate() {
            if i == index {
                continue;
            }
            let mut nt = [0u32; 4];
            for k in 0..4 {
                nt[k] = rep[&uf.find(idx[&tup[k]])];
                used.insert(nt[k]);
            }
            remaining.push(nt);
            flags.push(self.over_from_b[i]);
        }
        // Classes of the removed crossing's labels with no remaining
        // occurrence became crossing-free circles.
        let mut loop_classes: BTreeSet<u32> = BTreeSet::new();
        for k in 0..4 {
            let r = rep[&uf.find(idx[&t[k]])];
            if !used.contains(&r) {
                loop_classes.insert(r);
            }
        }
        // Compact to consecutive integers ordered by smallest original label.
        let relabel: HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, (i + 1) as u32))
            .collect();
        for tup in &mut remaining {
            for v in tup.iter_mut() {
                *v = relabel[v];
            }
        }
        Ok((remaining, flags, self.free_loops + loop_classes.len()))
    }

    /// Mirror image: every crossing switched. Signs negate; the all-A and
    /// all-B states swap.
    pub fn mirror(&self) -> Diagram {
        let mut crossings = Vec::with_capacity(self.crossings.len());
        let mut flags = Vec::with_capacity(self.crossings.len());
        for (i, t) in self.crossings.iter().enumerate() {
            if self.over_from_b[i] {
                // over entered at slot 1; it is the new under-in.
                crossings.push([t[1], t[2], t[3], t[0]]);
            } else {
                crossings.push([t[3], t[0], t[1], t[2]]);
            }
            flags.push(!self.over_from_b[i]);
        }
        Diagram::from_parts(crossings, flags, self.free_loops).expect("mirror stays coherent")
    }

    /// Connected sum, splicing arc `arc1` of `self` with arc `arc2` of
    /// `other` (orientation-preserving). Pass `None` to use the
    /// lowest-numbered arc of each. `self` may be a link (the summand
    /// attaches to the component carrying `arc1`); `other` must be a
    /// knot so the result is independent of the chosen component.
    pub fn connected_sum(
        &self,
        other: &Diagram,
        arc1: Option<u32>,
        arc2: Option<u32>,
    ) -> Result<Diagram> {
        if !other.is_knot() {
            return Err(Error::NotAKnot {
                components: other.component_count(),
            });
        }
        if other.crossings.is_empty() {
            return Ok(self.clone());
        }
        if self.crossings.is_empty() {
            return Ok(other.clone());
        }
        let a1 = match arc1 {
            Some(a) => a,
            None => *self.arcs().first().expect("nonempty"),
        };
        let offset = self.arcs().last().copied().unwrap_or(0);
        let a2 = match arc2 {
            Some(a) => a + offset,
            None => *other.arcs().first().expect("nonempty") + offset,
        };
        let occ1 = occurrences(&self.crossings).expect("validated");
        if !occ1.contains_key(&a1) {
            return Err(Error::Invalid(format!("arc {a1} not in first diagram")));
        }
        let mut crossings = self.crossings.clone();
        let mut flags = self.over_from_b.clone();
        for (i, t) in other.crossings.iter().enumerate() {
            crossings.push([
                t[0] + offset,
                t[1] + offset,
                t[2] + offset,
                t[3] + offset,
            ]);
            flags.push(other.over_from_b[i]);
        }
        let occ = occurrences(&crossings)?;
        if !occ.contains_key(&a2) {
            return Err(Error::Invalid("arc not in second diagram".into()));
        }
        // Cut both arcs and cross-join: the head endpoint of each arc is
        // relabeled with the other arc's label.
        let head = |label: u32, cr: &[[u32; 4]]| -> Dart {
            let ends = occ[&label];
            let _ = cr;
            if is_outgoing(ends[0], &flags) {
                ends[1]
            } else {
                ends[0]
            }
        };
        let h1 = head(a1, &crossings);
        let h2 = head(a2, &crossings);
        crossings[h1 / 4][h1 % 4] = a2;
        crossings[h2 / 4][h2 % 4] = a1;
        // Compact labels.
        let mut used: BTreeSet<u32> = BTreeSet::new();
        for t in &crossings {
            used.extend(t.iter().copied());
        }
        let relabel: HashMap<u32, u32> = used
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, (i + 1) as u32))
            .collect();
        for t in &mut crossings {
            for v in t.iter_mut() {
                *v = relabel[v];
            }
        }
        Diagram::from_parts(crossings, flags, 0)
    }

    /// Lexicographically minimal serialization over orientation-preserving
    /// arc relabelings (and crossing reordering). Used as a memo key.
    pub fn canonical_key(&self) -> String {
        if self.crossings.is_empty() {
            return format!("U{}", self.free_loops);
        }
        // One crossing tuple under a candidate relabeling, plus its
        // over-strand direction flag.
        type Code = (u32, u32, u32, u32, bool);
        let mut best: Option<Vec<Code>> = None;
        // Choose the starting arc of the first component; remaining
        // components then start from each possible arc as well, explored
        // recursively. Component counts are tiny in practice.
        let all_arcs = self.arcs();
        fn emit(
            d: &Diagram,
            relabeled: &mut HashMap<u32, u32>,
            done: &mut Vec<bool>,
            all_arcs: &[u32],
            best: &mut Option<Vec<Code>>,
        ) {
            if relabeled.len() == all_arcs.len() {
                let mut code: Vec<Code> = d
                    .crossings
                    .iter()
                    .zip(&d.over_from_b)
                    .map(|(t, &f)| {
                        (
                            relabeled[&t[0]],
                            relabeled[&t[1]],
                            relabeled[&t[2]],
                            relabeled[&t[3]],
                            f,
                        )
                    })
                    .collect();
                code.sort_unstable();
                match best {
                    Some(b) if *b <= code => {}
                    _ => *best = Some(code),
                }
                return;
            }
            for (ci, cyc) in d.cycles.iter().enumerate() {
                if done[ci] {
                    continue;
                }
                for start in 0..cyc.len() {
                    done[ci] = true;
                    let base = relabeled.len() as u32;
                    for (k, pos) in (0..cyc.len()).enumerate() {
                        let a = cyc[(start + pos) % cyc.len()];
                        relabeled.insert(a, base + 1 + k as u32);
                    }
                    emit(d, relabeled, done, all_arcs, best);
                    for pos in 0..cyc.len() {
                        relabeled.remove(&cyc[(start + pos) % cyc.len()]);
                    }
                    done[ci] = false;
                }
                break; // only the first unfinished component at this depth
            }
        }
        let mut relabeled = HashMap::new();
        let mut done = vec![false; self.cycles.len()];
        emit(self, &mut relabeled, &mut done, &all_arcs, &mut best);
        let code = best.expect("at least one labeling");
        let mut s = String::new();
        for (a, b, c, d, f) in code {
            let _ = write!(s, "X{a},{b},{c},{d},{}", if f { '+' } else { '-' });
        }
        let _ = write!(s, "|U{}", self.free_loops);
        s
    }

    /// Canonical key that also quotients out the choice of orientation on
    /// each link component: the minimum of [`Diagram::canonical_key`] over
    /// all ways of reversing a subset of components. Two diagrams of the
    /// same unoriented link produced with different strand-walk directions
    /// (e.g. by unoriented smoothings) compare equal under this key.
    pub fn unoriented_canonical_key(&self) -> String {
        if self.crossings.is_empty() {
            return self.canonical_key();
        }
        let comp_of: HashMap<u32, usize> = self
            .cycles
            .iter()
            .enumerate()
            .flat_map(|(ci, cyc)| cyc.iter().map(move |&a| (a, ci)))
            .collect();
        let k = self.cycles.len();
        let mut best: Option<String> = None;
        for mask in 0u32..(1u32 << k) {
            let mut crossings = Vec::with_capacity(self.crossings.len());
            let mut flags = Vec::with_capacity(self.crossings.len());
            for (t, &f) in self.crossings.iter().zip(&self.over_from_b) {
                let under_rev = mask >> comp_of[&t[0]] & 1 == 1;
                let over_rev = mask >> comp_of[&t[1]] & 1 == 1;
                // Reversing the under-strand swaps its entry and exit
                // slots, i.e. rotates the tuple by two; the over-strand
                // then enters at the opposite over slot. Reversing the
                // over-strand flips the direction flag on its own.
                let (tuple, mut flag) = if under_rev {
                    ([t[2], t[3], t[0], t[1]], !f)
                } else {
                    (*t, f)
                };
                if over_rev {
                    flag = !flag;
                }
                crossings.push(tuple);
                flags.push(flag);
            }
            let variant = Diagram::from_parts(crossings, flags, self.free_loops)
                .expect("component reversal preserves coherence");
            let key = variant.canonical_key();
            match &best {
                Some(b) if *b <= key => {}
                _ => best = Some(key),
            }
        }
        best.expect("nonempty mask range")
    }
}

// ----------------------------------------------------------------------
// orientation machinery

fn occurrences(crossings: &[[u32; 4]]) -> Result<HashMap<u32, [Dart; 2]>> {
    let mut occ: HashMap<u32, Vec<Dart>> = HashMap::new();
    for (i, t) in crossings.iter().enumerate() {
        for (k, &x) in t.iter().enumerate() {
            occ.entry(x).or_default().push(4 * i + k);
        }
    }
    let mut out = HashMap::with_capacity(occ.len());
    for (label, ends) in occ {
        if ends.len() != 2 {
            return Err(Error::ArcCount {
                label,
                count: ends.len(),
            });
        }
        out.insert(label, [ends[0], ends[1]]);
    }
    Ok(out)
}

/// Whether the arc at this dart leaves the crossing there, given the
/// over-strand directions.
fn is_outgoing(dart: Dart, over_from_b: &[bool]) -> bool {
    let slot = dart % 4;
    let flag = over_from_b[dart / 4];
    match slot {
        0 => false,
        2 => true,
        1 => !flag,
        3 => flag,
        _ => unreachable!(),
    }
}

/// Derive the over-strand direction at every crossing by constraint
/// propagation: each arc is outgoing at exactly one of its endpoints.
fn derive_over_flags(crossings: &[[u32; 4]]) -> Result<Vec<bool>> {
    let n = crossings.len();
    let occ = occurrences(crossings)?;
    let mut over: Vec<Option<bool>> = vec![None; n];
    let mut out: Vec<Option<bool>> = vec![None; 4 * n];
    let mut queue: Vec<Dart> = Vec::new();
    for i in 0..n {
        out[4 * i] = Some(false);
        out[4 * i + 2] = Some(true);
        queue.push(4 * i);
        queue.push(4 * i + 2);
    }
    let set_dart = |h: Dart,
                        val: bool,
                        out: &mut Vec<Option<bool>>,
                        over: &mut Vec<Option<bool>>,
                        queue: &mut Vec<Dart>|
     -> Result<()> {
        match out[h] {
            Some(v) if v != val => return Err(Error::InconsistentOrientation),
            Some(_) => return Ok(()),
            None => {}
        }
        out[h] = Some(val);
        queue.push(h);
        let (i, slot) = (h / 4, h % 4);
        if slot == 1 || slot == 3 {
            // slot 1 incoming <=> over enters at slot 1.
            let flag = if slot == 1 { !val } else { val };
            match over[i] {
                Some(f) if f != flag => return Err(Error::InconsistentOrientation),
                Some(_) => {}
                None => {
                    over[i] = Some(flag);
                    let other = if slot == 1 { 4 * i + 3 } else { 4 * i + 1 };
                    let other_val = !val;
                    match out[other] {
                        Some(v) if v != other_val => {
                            return Err(Error::InconsistentOrientation)
                        }
                        Some(_) => {}
                        None => {
                            out[other] = Some(other_val);
                            queue.push(other);
                        }
                    }
                }
            }
        }
        Ok(())
    };
    loop {
        while let Some(h) = queue.pop() {
            let val = out[h].expect("queued darts are set");
            let ends = &occ[&crossings[h / 4][h % 4]];
            let partner = if ends[0] == h { ends[1] } else { ends[0] };
            set_dart(partner, !val, &mut out, &mut over, &mut queue)?;
        }
        // Components made entirely of over-strands are free to orient;
        // pick the lowest unresolved crossing and set it positively.
        match over.iter().position(|f| f.is_none()) {
            Some(i) => {
                out[4 * i + 1] = Some(false);
                over[i] = Some(true);
                out[4 * i + 3] = Some(true);
                queue.push(4 * i + 1);
                queue.push(4 * i + 3);
            }
            None => break,
        }
    }
    Ok(over.into_iter().map(|f| f.expect("resolved")).collect())
}

fn trace_cycles(
    crossings: &[[u32; 4]],
    over_from_b: &[bool],
    occ: &HashMap<u32, [Dart; 2]>,
) -> Result<Vec<Vec<u32>>> {
    // successor(arc) = arc leaving the crossing where `arc` ends, on the
    // same strand.
    let mut successor: HashMap<u32, u32> = HashMap::new();
    for (&label, ends) in occ {
        let head = if is_outgoing(ends[0], over_from_b) {
            ends[1]
        } else {
            ends[0]
        };
        let (i, slot) = (head / 4, head % 4);
        let next_slot = match slot {
            0 => 2,
            1 => 3,
            3 => 1,
            _ => return Err(Error::InconsistentOrientation),
        };
        successor.insert(label, crossings[i][next_slot]);
    }
    let mut labels: Vec<u32> = occ.keys().copied().collect();
    labels.sort_unstable();
    let mut seen: BTreeSet<u32> = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in &labels {
        if seen.contains(&start) {
            continue;
        }
        let mut cyc = Vec::new();
        let mut a = start;
        loop {
            if !seen.insert(a) {
                return Err(Error::InconsistentOrientation);
            }
            cyc.push(a);
            a = successor[&a];
            if a == start {
                break;
            }
        }
        cycles.push(cyc);
    }
    Ok(cycles)
}

// ----------------------------------------------------------------------

fn split_tokens(body: &str) -> Result<Vec<String>> {
    let mut toks = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in body.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Syntax("unbalanced brackets".into()))?;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                toks.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Syntax("unbalanced brackets".into()));
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    Ok(toks)
}

fn parse_ints(args: &str) -> Result<Vec<u32>> {
    if args.is_empty() {
        return Ok(Vec::new());
    }
    args.split(',')
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Error::Syntax(format!("bad integer: {s}")))
        })
        .collect()
}

/// Small array-based union-find.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root for determinism
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    pub fn class_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

/// Small reference diagrams shared by tests, benches and examples.
pub mod fixtures {
    /// Right-handed trefoil (all three crossings positive).
    pub const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
    /// Standard figure-eight knot diagram.
    pub const FIGURE_EIGHT: &str = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";
    /// A seven-crossing diagram of the knot 6₂ with exactly two positive
    /// crossings, whose spanning-tree reduction has a one-edge tree and a
    /// five-crossing all-negative result.
    pub const SIX_TWO_TWO_POSITIVE: &str =
        "PD[X[5,1,6,12],X[13,7,2,6],X[7,3,8,2],X[11,9,12,8],X[3,10,4,11],X[9,4,10,5],X[1,13,14,14]]";
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = fixtures::TREFOIL;
    pub const FIGURE_EIGHT: &str = fixtures::FIGURE_EIGHT;

    #[test]
    fn trefoil_parses_all_positive() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.signs(), vec![1, 1, 1]);
        assert_eq!(d.n_positive(), 3);
    }

    #[test]
    fn figure_eight_has_zero_writhe() {
        let d = Diagram::parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(d.crossing_count(), 4);
        assert!(d.is_knot());
        assert_eq!(d.writhe(), 0);
        assert!(d.is_alternating());
    }

    #[test]
    fn mirror_negates_signs_and_is_involutive() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let m = d.mirror();
        assert_eq!(m.signs(), vec![-1, -1, -1]);
        assert_eq!(m.mirror().canonical_key(), d.canonical_key());
    }

    #[test]
    fn empty_and_unknot() {
        let e = Diagram::parse_pd("PD[]").unwrap();
        assert_eq!(e.component_count(), 0);
        let u = Diagram::parse_pd("PD[U[1]]").unwrap();
        assert_eq!(u.component_count(), 1);
        assert_eq!(u.to_pd_string(), "PD[U[1]]");
    }

    #[test]
    fn one_crossing_kink_accepted() {
        let d = Diagram::parse_pd("PD[X[1,1,2,2]]").unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.signs(), vec![-1]);
        // either smoothing yields only crossing-free unknots
        let a = d.smooth(0, Smoothing::A).unwrap();
        let b = d.smooth(0, Smoothing::B).unwrap();
        let mut got = vec![a.component_count(), b.component_count()];
        got.sort_unstable();
        assert_eq!(got, vec![1, 2]);
    }

    #[test]
    fn serialize_round_trip() {
        for text in [TREFOIL, FIGURE_EIGHT, "PD[]", "PD[U[1]]"] {
            let d = Diagram::parse_pd(text).unwrap();
            let d2 = Diagram::parse_pd(&d.to_pd_string()).unwrap();
            assert_eq!(d, d2);
        }
        // bit-exact on serializer output
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(Diagram::parse_pd(&d.to_pd_string()).unwrap().to_pd_string(), d.to_pd_string());
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(Diagram::parse_pd("PD[X[1,2,3]]").is_err());
        assert!(Diagram::parse_pd("PD[X[1,2,3,4]]").is_err()); // labels appear once
        assert!(Diagram::parse_pd("garbage").is_err());
        // arc appearing twice as under-in has no coherent orientation
        assert!(matches!(
            Diagram::parse_pd("PD[X[1,2,2,3],X[1,4,4,3]]"),
            Err(Error::InconsistentOrientation) | Err(Error::ArcCount { .. })
        ));
    }

    #[test]
    fn smoothing_trefoil_gives_hopf() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let h = d.smooth(0, Smoothing::A).unwrap();
        assert_eq!(h.crossing_count(), 2);
        assert_eq!(h.component_count(), 2);
        let o = d.oriented_resolution(0).unwrap();
        assert_eq!(o.crossing_count(), 2);
        assert_eq!(o.component_count(), 2);
        // orientation extends, so the surviving crossings keep their signs
        assert_eq!(o.signs(), vec![1, 1]);
    }

    #[test]
    fn connected_sum_counts_add() {
        let d = Diagram::parse_pd(TREFOIL).unwrap();
        let s = d.connected_sum(&d, None, None).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.n_positive(), 6);
        assert!(s.is_knot());
        let u = Diagram::unknot();
        assert_eq!(d.connected_sum(&u, None, None).unwrap(), d);
    }

    #[test]
    fn faces_satisfy_euler_formula() {
        for text in [TREFOIL, FIGURE_EIGHT] {
            let d = Diagram::parse_pd(text).unwrap();
            let f = d.faces();
            let v = d.crossing_count() as i64;
            let e = 2 * v;
            assert_eq!(v - e + f.faces.len() as i64, 2);
        }
    }
}
