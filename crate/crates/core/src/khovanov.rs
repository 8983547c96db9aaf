//! Khovanov homology, the Lee deformation, and the s-invariant.
//!
//! The resolution cube assigns to each of the 2^n crossing states its
//! state circles; chain groups are spanned by labellings of those circles
//! by `1` or `x`. Gradings follow the convention
//! `i = (#B-resolutions) - n₋` and `j = (#1 - #x) + #B + n₊ - 2·n₋`,
//! so the unknot has homology in bidegrees (0, ±1). The Khovanov
//! differential preserves `j`; the extra Lee terms (`m(x⊗x) = 1`,
//! `Δ(x) += 1⊗1`) raise `j` by four, and the s-invariant is read off the
//! filtration degrees of the two surviving Lee generators.

use std::collections::{BTreeMap, HashMap};

use num::rational::Rational64;
use num::Zero;

use crate::diagram::{Diagram, Smoothing};
use crate::error::{Error, Result};
use crate::linalg::{rank, Field};
use crate::par;
use crate::poly::Laurent;

/// Default crossing ceiling for the homology routines.
pub const DEFAULT_KHOVANOV_CEILING: usize = 14;

/// Per-vertex data of the resolution cube.
#[derive(Debug, Clone)]
struct Vertex {
    /// Dense arc index -> circle index at this vertex. Free loops occupy
    /// the indices after the arc-supported circles.
    circle_of_arc: Vec<usize>,
    /// Total circle count including free loops.
    circles: usize,
    /// Offset of this vertex's first generator in the global basis.
    offset: usize,
}

/// The full resolution cube of a diagram.
#[derive(Debug, Clone)]
pub struct Cube {
    n: usize,
    n_pos: usize,
    n_neg: usize,
    /// Dense arc index per crossing slot.
    slots: Vec<[usize; 4]>,
    vertices: Vec<Vertex>,
    total_generators: usize,
}

/// A single term of a differential: target generator and coefficient sign
/// data, before specialising to a coefficient field.
struct Term {
    target: usize,
    /// +1 or -1.
    sign: i64,
    /// True when the term comes from the Lee deformation (raises j by 4).
    lee: bool,
}

fn circle_partition(slots: &[[usize; 4]], arc_count: usize, mask: usize) -> (Vec<usize>, usize) {
    let mut uf = crate::diagram::UnionFind::new(arc_count);
    for (c, s) in slots.iter().enumerate() {
        let kind = if mask >> c & 1 == 0 {
            Smoothing::A
        } else {
            Smoothing::B
        };
        for (a, b) in kind.pairs() {
            uf.union(s[a], s[b]);
        }
    }
    // Number circles by first appearance in arc order.
    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut circle_of_arc = Vec::with_capacity(arc_count);
    for a in 0..arc_count {
        let root = uf.find(a);
        let next = index.len();
        let id = *index.entry(root).or_insert(next);
        circle_of_arc.push(id);
    }
    let count = index.len();
    (circle_of_arc, count)
}

impl Cube {
    /// Build the resolution cube, refusing diagrams over the ceiling.
    pub fn build(d: &Diagram, ceiling: usize) -> Result<Cube> {
        let n = d.crossing_count();
        if n > ceiling {
            return Err(Error::CeilingExceeded {
                crossings: n,
                ceiling,
            });
        }
        let arcs = d.arcs();
        let arc_index: HashMap<u32, usize> =
            arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let slots: Vec<[usize; 4]> = d
            .crossings()
            .iter()
            .map(|x| [0, 1, 2, 3].map(|k| arc_index[&x[k]]))
            .collect();
        let free = d.free_loops();
        let arc_count = arcs.len();
        let slots_ref = &slots;
        let mut vertices: Vec<Vertex> = par::map_collect(1usize << n, move |mask| {
            let (circle_of_arc, count) = circle_partition(slots_ref, arc_count, mask);
            Vertex {
                circle_of_arc,
                circles: count + free,
                offset: 0,
            }
        });
        let mut offset = 0usize;
        for v in &mut vertices {
            v.offset = offset;
            offset = offset
                .checked_add(1usize << v.circles)
                .ok_or(Error::CeilingExceeded {
                    crossings: n,
                    ceiling,
                })?;
        }
        Ok(Cube {
            n,
            n_pos: d.n_positive(),
            n_neg: d.n_negative(),
            slots,
            vertices,
            total_generators: offset,
        })
    }

    pub fn total_generators(&self) -> usize {
        self.total_generators
    }

    /// Decompose a global generator index into (vertex mask, label mask).
    fn split_index(&self, g: usize) -> (usize, usize) {
        // Vertices have increasing offsets; binary search for the block.
        let v = match self
            .vertices
            .binary_search_by(|vx| vx.offset.cmp(&g))
        {
            Ok(exact) => {
                // Several empty blocks cannot occur (every vertex has at
                // least one circle on a nonempty diagram), but an exact
                // match may still be a later block's start; take it.
                exact
            }
            Err(ins) => ins - 1,
        };
        (v, g - self.vertices[v].offset)
    }

    /// Homological grading of a generator.
    pub fn i_grading(&self, g: usize) -> i32 {
        let (v, _) = self.split_index(g);
        v.count_ones() as i32 - self.n_neg as i32
    }

    /// Quantum grading of a generator.
    pub fn j_grading(&self, g: usize) -> i32 {
        let (v, labels) = self.split_index(g);
        let circles = self.vertices[v].circles as i32;
        let x_count = labels.count_ones() as i32;
        let p = circles - 2 * x_count;
        p + v.count_ones() as i32 + self.n_pos as i32 - 2 * self.n_neg as i32
    }

    /// First arc index lying on the given circle of a vertex.
    fn rep_arc(&self, v: usize, circle: usize) -> usize {
        self.vertices[v]
            .circle_of_arc
            .iter()
            .position(|&c| c == circle)
            .expect("circle has a representative arc")
    }

    /// All differential terms out of generator `g`. Khovanov terms always;
    /// Lee terms additionally when `lee` is set.
    fn differential_terms(&self, g: usize, lee: bool) -> Vec<Term> {
        let (v, labels) = self.split_index(g);
        let vx = &self.vertices[v];
        let arc_circles = vx
            .circle_of_arc
            .iter()
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        let free = vx.circles - arc_circles;
        let mut out = Vec::new();
        for k in 0..self.n {
            if v >> k & 1 == 1 {
                continue;
            }
            let w = v | 1 << k;
            let wx = &self.vertices[w];
            let w_arc_circles = wx
                .circle_of_arc
                .iter()
                .copied()
                .max()
                .map_or(0, |m| m + 1);
            let sign = if (v & ((1 << k) - 1)).count_ones() % 2 == 0 {
                1
            } else {
                -1
            };
            let s = self.slots[k];
            // At `v` crossing k is A-smoothed: slot pairs (0,3),(1,2).
            let g1 = vx.circle_of_arc[s[0]];
            let g2 = vx.circle_of_arc[s[1]];
            // At `w` it is B-smoothed: slot pairs (0,1),(2,3).
            let d1 = wx.circle_of_arc[s[0]];
            let d2 = wx.circle_of_arc[s[2]];
            // Transfer labels of circles untouched by the move, matching
            // circles by a shared arc (free loops positionally).
            let mut base = 0usize;
            for c in 0..arc_circles {
                if c == g1 || c == g2 {
                    continue;
                }
                if labels >> c & 1 == 1 {
                    let target = wx.circle_of_arc[self.rep_arc(v, c)];
                    base |= 1 << target;
                }
            }
            for t in 0..free {
                if labels >> (arc_circles + t) & 1 == 1 {
                    base |= 1 << (w_arc_circles + t);
                }
            }
            if g1 != g2 {
                // Merge: m(1,1)=1, m(1,x)=m(x,1)=x, m(x,x)=0 (Lee: 1).
                let a = labels >> g1 & 1 == 1;
                let b = labels >> g2 & 1 == 1;
                let emit_x = match (a, b) {
                    (false, false) => Some(false),
                    (true, false) | (false, true) => Some(true),
                    (true, true) => None,
                };
                if let Some(x_out) = emit_x {
                    let mask = base | if x_out { 1 << d1 } else { 0 };
                    out.push(Term {
                        target: wx.offset + mask,
                        sign,
                        lee: false,
                    });
                } else if lee {
                    out.push(Term {
                        target: wx.offset + base,
                        sign,
                        lee: true,
                    });
                }
            } else {
                // Split: Δ(1)=1⊗x+x⊗1, Δ(x)=x⊗x (Lee: +1⊗1).
                let a = labels >> g1 & 1 == 1;
                if a {
                    out.push(Term {
                        target: wx.offset + (base | 1 << d1 | 1 << d2),
                        sign,
                        lee: false,
                    });
                    if lee {
                        out.push(Term {
                            target: wx.offset + base,
                            sign,
                            lee: true,
                        });
                    }
                } else {
                    out.push(Term {
                        target: wx.offset + (base | 1 << d1),
                        sign,
                        lee: false,
                    });
                    out.push(Term {
                        target: wx.offset + (base | 1 << d2),
                        sign,
                        lee: false,
                    });
                }
            }
        }
        debug_assert!(out.iter().all(|t| {
            let dj = self.j_grading(t.target) - self.j_grading(g);
            dj == if t.lee { 4 } else { 0 }
        }));
        out
    }
}

/// Which coefficient field to compute over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    GF2,
    Q,
}

/// Khovanov homology dimensions, keyed by (homological, quantum) grading.
pub fn khovanov_ranks(
    d: &Diagram,
    field: FieldChoice,
    ceiling: usize,
) -> Result<BTreeMap<(i32, i32), usize>> {
    match field {
        FieldChoice::GF2 => khovanov_ranks_over::<crate::linalg::GF2>(d, ceiling),
        FieldChoice::Q => khovanov_ranks_over::<num::BigRational>(d, ceiling),
    }
}

fn khovanov_ranks_over<F: Field>(d: &Diagram, ceiling: usize) -> Result<BTreeMap<(i32, i32), usize>> {
    let cube = Cube::build(d, ceiling)?;
    // Group generators into (i, j) blocks with local indices.
    let total = cube.total_generators();
    let mut block_of: Vec<((i32, i32), usize)> = Vec::with_capacity(total);
    let mut blocks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
    for g in 0..total {
        let key = (cube.i_grading(g), cube.j_grading(g));
        let members = blocks.entry(key).or_default();
        block_of.push((key, members.len()));
        members.push(g);
    }
    // Rank of each block of the differential, in parallel over blocks.
    let keys: Vec<(i32, i32)> = blocks.keys().copied().collect();
    let cube_ref = &cube;
    let blocks_ref = &blocks;
    let block_of_ref = &block_of;
    let d_ranks: Vec<usize> = par::map_slice(&keys, move |&(i, j)| {
        let sources = &blocks_ref[&(i, j)];
        let target_key = (i + 1, j);
        let Some(targets) = blocks_ref.get(&target_key) else {
            return 0;
        };
        let mut m: Vec<Vec<F>> = Vec::with_capacity(sources.len());
        for &g in sources {
            let mut row = vec![F::zero(); targets.len()];
            for term in cube_ref.differential_terms(g, false) {
                let (key, local) = block_of_ref[term.target];
                debug_assert_eq!(key, target_key);
                row[local] = row[local].add(&F::from_int(term.sign));
            }
            m.push(row);
        }
        rank(m)
    });
    let rank_out: BTreeMap<(i32, i32), usize> =
        keys.iter().copied().zip(d_ranks).collect();
    let mut hom = BTreeMap::new();
    for (&(i, j), members) in &blocks {
        let out_rank = rank_out.get(&(i, j)).copied().unwrap_or(0);
        let in_rank = rank_out.get(&(i - 1, j)).copied().unwrap_or(0);
        let h = members.len() - out_rank - in_rank;
        if h > 0 {
            hom.insert((i, j), h);
        }
    }
    Ok(hom)
}

/// Graded Euler characteristic `Σ (-1)^i dim q^j` as a polynomial in q.
pub fn graded_euler_characteristic(ranks: &BTreeMap<(i32, i32), usize>) -> Laurent {
    let mut out = Laurent::zero();
    for (&(i, j), &dim) in ranks {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        out = &out + &Laurent::monomial(j, sign * dim as i64);
    }
    out
}

/// Result of the s-invariant computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SInvariant {
    pub s: i64,
    /// Filtration degrees of the two surviving Lee generators.
    pub q_min: i32,
    pub q_max: i32,
    /// Dimension of Lee homology (2 for a knot).
    pub lee_rank: usize,
}

/// The Rasmussen s-invariant of a knot diagram, via the Lee deformation
/// over the rationals and filtered elimination.
pub fn s_invariant(d: &Diagram, ceiling: usize) -> Result<SInvariant> {
    if !d.is_knot() {
        return Err(Error::NotAKnot {
            components: d.component_count(),
        });
    }
    let cube = Cube::build(d, ceiling)?;
    let total = cube.total_generators();
    // Sparse Lee differential with rational coefficients: column maps
    // d(g) and mirror row sets, both kept exactly in sync.
    let mut cols: Vec<HashMap<u32, Rational64>> = Vec::with_capacity(total);
    let mut rows: Vec<std::collections::HashSet<u32>> = vec![Default::default(); total];
    let mut q_of: Vec<i32> = Vec::with_capacity(total);
    for g in 0..total {
        q_of.push(cube.j_grading(g));
        let mut col: HashMap<u32, Rational64> = HashMap::new();
        for term in cube.differential_terms(g, true) {
            *col.entry(term.target as u32).or_insert_with(Rational64::zero) +=
                Rational64::from_integer(term.sign);
        }
        col.retain(|_, v| !v.is_zero());
        for &t in col.keys() {
            rows[t as usize].insert(g as u32);
        }
        cols.push(col);
    }
    let mut alive = vec![true; total];
    // Cancel pivots in order of (filtration jump, estimated fill cost).
    // Minimal jumps first make the surviving generators carry the induced
    // Lee filtration degrees; the Markowitz-style cost keeps the matrix
    // sparse. Heap entries are lazy: stale or under-costed entries are
    // re-checked (and possibly re-pushed) when popped.
    use std::cmp::Reverse;
    let mut heap: std::collections::BinaryHeap<Reverse<(i32, u64, u32, u32)>> =
        std::collections::BinaryHeap::new();
    let cost = |cols: &[HashMap<u32, Rational64>],
                rows: &[std::collections::HashSet<u32>],
                a: usize,
                b: usize| { ((cols[a].len() - 1) * (rows[b].len() - 1)) as u64 };
    for (g, col) in cols.iter().enumerate() {
        for &t in col.keys() {
            let jump = q_of[t as usize] - q_of[g];
            heap.push(Reverse((jump, cost(&cols, &rows, g, t as usize), g as u32, t)));
        }
    }
    while let Some(Reverse((jump, est, a, b))) = heap.pop() {
        let (a, b) = (a as usize, b as usize);
        if !alive[a] || !alive[b] {
            continue;
        }
        let Some(&pivot) = cols[a].get(&(b as u32)) else {
            continue; // edge was cancelled away since being queued
        };
        let now = cost(&cols, &rows, a, b);
        if now > est {
            heap.push(Reverse((jump, now, a as u32, b as u32)));
            continue;
        }
        alive[a] = false;
        alive[b] = false;
        let mut col_a = std::mem::take(&mut cols[a]);
        col_a.remove(&(b as u32));
        let mut into_b = std::mem::take(&mut rows[b]);
        into_b.remove(&(a as u32));
        // Capture the coefficients into b, then drop all other edges
        // touching a or b.
        let into_b_coeffs: Vec<(u32, Rational64)> = into_b
            .iter()
            .map(|&s| (s, cols[s as usize][&(b as u32)]))
            .collect();
        for &t in col_a.keys() {
            rows[t as usize].remove(&(a as u32));
        }
        for &s in &into_b {
            cols[s as usize].remove(&(b as u32));
        }
        for s in std::mem::take(&mut rows[a]) {
            cols[s as usize].remove(&(a as u32));
        }
        for t in std::mem::take(&mut cols[b]).into_keys() {
            rows[t as usize].remove(&(b as u32));
        }
        // For every remaining source c that hit b and target y of a, add
        // the zig-zag correction -coef(c,b) * coef(a,y) / pivot.
        for &(c, mu) in &into_b_coeffs {
            let cu = c as usize;
            for (&y, nu) in &col_a {
                let yu = y as usize;
                let delta = -mu * *nu / pivot;
                use std::collections::hash_map::Entry;
                match cols[cu].entry(y) {
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += delta;
                        if e.get().is_zero() {
                            e.remove();
                            rows[yu].remove(&c);
                        }
                    }
                    Entry::Vacant(e) => {
                        e.insert(delta);
                        rows[yu].insert(c);
                        heap.push(Reverse((q_of[yu] - q_of[cu], 0, c, y)));
                    }
                }
            }
        }
    }
    let survivors: Vec<usize> = (0..total).filter(|&g| alive[g]).collect();
    let lee_rank = survivors.len();
    if lee_rank != 2 {
        return Err(Error::Invalid(format!(
            "Lee homology has dimension {lee_rank}, expected 2 for a knot"
        )));
    }
    let q_min = survivors.iter().map(|&g| q_of[g]).min().unwrap();
    let q_max = survivors.iter().map(|&g| q_of[g]).max().unwrap();
    if q_max != q_min + 2 {
        return Err(Error::Invalid(format!(
            "Lee filtration degrees {q_min}, {q_max} are not two apart"
        )));
    }
    Ok(SInvariant {
        s: i64::from(q_min) + 1,
        q_min,
        q_max,
        lee_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::{FIGURE_EIGHT, TREFOIL};

    fn trefoil() -> Diagram {
        Diagram::parse_pd(TREFOIL).unwrap()
    }

    fn figure_eight() -> Diagram {
        Diagram::parse_pd(FIGURE_EIGHT).unwrap()
    }

    fn d_squared_is_zero(d: &Diagram, lee: bool) {
        let cube = Cube::build(d, DEFAULT_KHOVANOV_CEILING).unwrap();
        for g in 0..cube.total_generators() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for t1 in cube.differential_terms(g, lee) {
                for t2 in cube.differential_terms(t1.target, lee) {
                    *acc.entry(t2.target).or_insert(0) += t1.sign * t2.sign;
                }
            }
            for (t, v) in acc {
                assert_eq!(v, 0, "d∘d ≠ 0 at generator {g} target {t}");
            }
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for d in [trefoil(), figure_eight()] {
            d_squared_is_zero(&d, false);
            d_squared_is_zero(&d, true);
        }
    }

    #[test]
    fn unknot_homology() {
        let ranks = khovanov_ranks(&Diagram::unknot(), FieldChoice::Q, 14).unwrap();
        let expected: BTreeMap<(i32, i32), usize> =
            [((0, -1), 1), ((0, 1), 1)].into_iter().collect();
        assert_eq!(ranks, expected);
    }

    #[test]
    fn trefoil_homology_over_q() {
        let ranks = khovanov_ranks(&trefoil(), FieldChoice::Q, 14).unwrap();
        let expected: BTreeMap<(i32, i32), usize> = [
            ((0, 1), 1),
            ((0, 3), 1),
            ((2, 5), 1),
            ((3, 9), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(ranks, expected);
    }

    #[test]
    fn figure_eight_homology_over_q() {
        let ranks = khovanov_ranks(&figure_eight(), FieldChoice::Q, 14).unwrap();
        let expected: BTreeMap<(i32, i32), usize> = [
            ((-2, -5), 1),
            ((-1, -1), 1),
            ((0, -1), 1),
            ((0, 1), 1),
            ((1, 1), 1),
            ((2, 5), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(ranks, expected);
    }

    #[test]
    fn euler_characteristic_matches_jones_for_trefoil() {
        let d = trefoil();
        let ranks = khovanov_ranks(&d, FieldChoice::Q, 14).unwrap();
        let euler = graded_euler_characteristic(&ranks);
        let jones = crate::classical::jones_polynomial(&d, 16).unwrap();
        // Unreduced homology: Euler characteristic is (q + q⁻¹)·V(q²).
        let unreduced = &(&Laurent::monomial(1, 1) + &Laurent::monomial(-1, 1)) * &jones;
        assert_eq!(euler, unreduced);
    }

    #[test]
    fn s_invariant_fixtures() {
        assert_eq!(s_invariant(&trefoil(), 14).unwrap().s, 2);
        assert_eq!(s_invariant(&trefoil().mirror(), 14).unwrap().s, -2);
        assert_eq!(s_invariant(&figure_eight(), 14).unwrap().s, 0);
    }

    #[test]
    fn gf2_and_q_agree_on_euler_characteristic() {
        let d = figure_eight();
        let q = khovanov_ranks(&d, FieldChoice::Q, 14).unwrap();
        let f2 = khovanov_ranks(&d, FieldChoice::GF2, 14).unwrap();
        assert_eq!(
            graded_euler_characteristic(&q),
            graded_euler_characteristic(&f2)
        );
    }

    #[test]
    fn ceiling_is_enforced() {
        let d = crate::diagram::families::torus_knot(2, 15).unwrap();
        match khovanov_ranks(&d, FieldChoice::GF2, 14) {
            Err(Error::CeilingExceeded { crossings, ceiling }) => {
                assert_eq!((crossings, ceiling), (15, 14));
            }
            other => panic!("expected ceiling error, got {other:?}"),
        }
    }
}
