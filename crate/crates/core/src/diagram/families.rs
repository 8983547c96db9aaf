//! Diagram generators: braid closures, torus knots, pretzel knots.
//!
//! Diagrams are assembled from a port-level plan: each crossing has four
//! ports (NW, NE, SW, SE), the two strands run NW-SE and NE-SW, and joins
//! connect ports pairwise. Tracing the closed strands assigns arc labels
//! and directions, from which the PD tuples are read off.

use std::collections::HashMap;

use super::{Diagram, PretzelSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    NW,
    NE,
    SW,
    SE,
}

const PORTS: [Port; 4] = [Port::NW, Port::NE, Port::SW, Port::SE];

fn opposite(p: Port) -> Port {
    match p {
        Port::NW => Port::SE,
        Port::SE => Port::NW,
        Port::NE => Port::SW,
        Port::SW => Port::NE,
    }
}

fn ccw(p: Port) -> Port {
    match p {
        Port::NE => Port::NW,
        Port::NW => Port::SW,
        Port::SW => Port::SE,
        Port::SE => Port::NE,
    }
}

pub type End = (usize, Port);

/// A crossing/port assembly plan, turned into a [`Diagram`] by [`Plan::build`].
#[derive(Debug, Default, Clone)]
pub struct Plan {
    /// true: the NW-SE strand passes over.
    over_nwse: Vec<bool>,
    joins: Vec<[End; 2]>,
}

impl Plan {
    pub fn new() -> Plan {
        Plan::default()
    }

    pub fn add_crossing(&mut self, over_nwse: bool) -> usize {
        self.over_nwse.push(over_nwse);
        self.over_nwse.len() - 1
    }

    pub fn join(&mut self, a: End, b: End) {
        self.joins.push([a, b]);
    }

    pub fn build(&self, free_loops: usize) -> Result<Diagram> {
        let n = self.over_nwse.len();
        // Locate each port's join and side within it.
        let mut at: HashMap<End, (usize, usize)> = HashMap::new();
        for (j, ends) in self.joins.iter().enumerate() {
            for (side, &end) in ends.iter().enumerate() {
                if at.insert(end, (j, side)).is_some() {
                    return Err(Error::Invalid(format!("port joined twice: {end:?}")));
                }
            }
        }
        for c in 0..n {
            for p in PORTS {
                if !at.contains_key(&(c, p)) {
                    return Err(Error::Invalid(format!("unjoined port: ({c}, {p:?})")));
                }
            }
        }
        // Trace the closed strands; each join becomes one arc.
        // info: (arc label, curve enters the crossing here).
        let mut info: HashMap<End, (u32, bool)> = HashMap::new();
        let mut visited = vec![false; self.joins.len()];
        let mut label = 0u32;
        for j0 in 0..self.joins.len() {
            if visited[j0] {
                continue;
            }
            let (mut j, mut side) = (j0, 0usize);
            loop {
                visited[j] = true;
                label += 1;
                let from = self.joins[j][side];
                let to = self.joins[j][1 - side];
                info.insert(from, (label, false));
                info.insert(to, (label, true));
                let exit = (to.0, opposite(to.1));
                let (nj, nside) = at[&exit];
                if (nj, nside) == (j0, 0) {
                    break;
                }
                j = nj;
                side = nside;
            }
        }
        let mut crossings = Vec::with_capacity(n);
        let mut flags = Vec::with_capacity(n);
        for c in 0..n {
            let under = if self.over_nwse[c] {
                [Port::NE, Port::SW]
            } else {
                [Port::NW, Port::SE]
            };
            let under_in = under
                .into_iter()
                .find(|&p| info[&(c, p)].1)
                .ok_or(Error::InconsistentOrientation)?;
            let mut slots = [under_in; 4];
            for k in 1..4 {
                slots[k] = ccw(slots[k - 1]);
            }
            crossings.push(slots.map(|p| info[&(c, p)].0));
            flags.push(info[&(c, slots[1])].1);
        }
        Diagram::from_parts(crossings, flags, free_loops)
    }
}

/// Closure of a braid word on `strands` strands. Letter `k` is the
/// positive generator crossing strands k-1 and k (left strand passes
/// over, heading down-right); `-k` is its inverse.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    if strands == 0 {
        return Err(Error::EmptyInput("braid needs at least one strand".into()));
    }
    let mut plan = Plan::new();
    let mut top: Vec<Option<End>> = vec![None; strands];
    let mut dangling: Vec<Option<End>> = vec![None; strands];
    for &g in word {
        let k = g.unsigned_abs() as usize;
        if g == 0 || k >= strands {
            return Err(Error::Invalid(format!(
                "braid letter {g} out of range for {strands} strands"
            )));
        }
        let c = plan.add_crossing(g > 0);
        for (pos, port) in [(k - 1, Port::NW), (k, Port::NE)] {
            match dangling[pos] {
                Some(end) => plan.join(end, (c, port)),
                None => top[pos] = Some((c, port)),
            }
        }
        dangling[k - 1] = Some((c, Port::SW));
        dangling[k] = Some((c, Port::SE));
    }
    let mut free = 0usize;
    for pos in 0..strands {
        match (dangling[pos], top[pos]) {
            (Some(a), Some(b)) => plan.join(a, b),
            (None, None) => free += 1,
            _ => unreachable!("a touched strand has both ends"),
        }
    }
    plan.build(free)
}

/// The (p, q) torus link as the closure of (s1 s2 ... s_{p-1})^q.
/// All crossings are positive.
pub fn torus_knot(p: usize, q: usize) -> Result<Diagram> {
    if p < 2 || q == 0 {
        return Err(Error::Invalid(format!("torus parameters ({p}, {q})")));
    }
    let mut word = Vec::with_capacity((p - 1) * q);
    for _ in 0..q {
        word.extend((1..p as i32).collect::<Vec<_>>());
    }
    braid_closure(p, &word)
}

/// Pretzel link P(k1, ..., km): vertical twist regions side by side,
/// tops chained left to right (wrapping around), bottoms likewise.
/// `k > 0` gives twists whose NW-SE strand is on top.
pub fn pretzel_raw(ks: &[i64]) -> Result<Diagram> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::Invalid("twist counts must be nonzero".into()));
    }
    let mut plan = Plan::new();
    // For each region: (TL, TR, BL, BR) ends.
    let mut regions: Vec<[End; 4]> = Vec::with_capacity(ks.len());
    for &k in ks {
        let m = k.unsigned_abs() as usize;
        let over = k > 0;
        let first = plan.add_crossing(over);
        let mut prev = first;
        for _ in 1..m {
            let c = plan.add_crossing(over);
            plan.join((prev, Port::SW), (c, Port::NW));
            plan.join((prev, Port::SE), (c, Port::NE));
            prev = c;
        }
        regions.push([
            (first, Port::NW),
            (first, Port::NE),
            (prev, Port::SW),
            (prev, Port::SE),
        ]);
    }
    let m = regions.len();
    for i in 0..m {
        let next = (i + 1) % m;
        plan.join(regions[i][1], regions[next][0]); // TR_i - TL_{i+1}
        plan.join(regions[i][3], regions[next][2]); // BR_i - BL_{i+1}
    }
    plan.build(0)
}

/// The pretzel knot P(2p+1, -2q-1, 2), with the chirality fixed so that
/// its signature is -2(p-q).
pub fn pretzel(spec: PretzelSpec) -> Result<Diagram> {
    let (p, q) = (spec.p as i64, spec.q as i64);
    pretzel_raw(&[2 * p + 1, -2 * q - 1, 2])
}


/// Four open ends of a partially assembled tangle.
#[derive(Debug, Clone, Copy)]
pub struct Tangle {
    pub nw: End,
    pub ne: End,
    pub sw: End,
    pub se: End,
}

/// A twist region of `|k|` crossings chained west-to-east (`horizontal`)
/// or north-to-south. The sign of `k` selects the handedness; within a
/// region every crossing carries the same over flag, which makes each
/// strand alternate over/under along the twist.
fn twist_chain(plan: &mut Plan, k: i64, horizontal: bool) -> Tangle {
    debug_assert!(k != 0);
    let flag = k > 0;
    let n = k.unsigned_abs() as usize;
    let ids: Vec<usize> = (0..n).map(|_| plan.add_crossing(flag)).collect();
    for w in ids.windows(2) {
        let (a, b) = (w[0], w[1]);
        if horizontal {
            plan.join((a, Port::NE), (b, Port::NW));
            plan.join((a, Port::SE), (b, Port::SW));
        } else {
            plan.join((a, Port::SW), (b, Port::NW));
            plan.join((a, Port::SE), (b, Port::NE));
        }
    }
    let (f, l) = (ids[0], ids[n - 1]);
    if horizontal {
        Tangle {
            nw: (f, Port::NW),
            sw: (f, Port::SW),
            ne: (l, Port::NE),
            se: (l, Port::SE),
        }
    } else {
        Tangle {
            nw: (f, Port::NW),
            ne: (f, Port::NE),
            sw: (l, Port::SW),
            se: (l, Port::SE),
        }
    }
}

/// Rational tangle from a twist vector: the first entry is a twist region
/// in the starting direction, and subsequent regions alternate between
/// horizontal stacks appended on the east and vertical stacks appended on
/// the south.
pub fn rational_tangle(
    plan: &mut Plan,
    digits: &[i64],
    start_horizontal: bool,
) -> Result<Tangle> {
    if digits.is_empty() || digits.contains(&0) {
        return Err(Error::Invalid("twist vector entries must be nonzero".into()));
    }
    let mut horiz = start_horizontal;
    let mut t = twist_chain(plan, digits[0], horiz);
    for &d in &digits[1..] {
        horiz = !horiz;
        let c = twist_chain(plan, d, horiz);
        if horiz {
            plan.join(t.ne, c.nw);
            plan.join(t.se, c.sw);
            t.ne = c.ne;
            t.se = c.se;
        } else {
            plan.join(t.sw, c.nw);
            plan.join(t.se, c.ne);
            t.sw = c.sw;
            t.se = c.se;
        }
    }
    Ok(t)
}

/// Two-bridge (rational) link: numerator closure of the rational tangle
/// with the given twist vector. Positive vectors yield reduced
/// alternating diagrams with `sum(digits)` crossings.
pub fn two_bridge(digits: &[i64]) -> Result<Diagram> {
    let mut plan = Plan::new();
    // Start direction chosen so the final twist region is vertical,
    // matching the west/east closure below.
    let t = rational_tangle(&mut plan, digits, digits.len().is_multiple_of(2))?;
    plan.join(t.nw, t.sw);
    plan.join(t.ne, t.se);
    plan.build(0)
}

/// Montesinos link: rational-tangle columns set side by side, closed
/// around the outside, with `extra` additional horizontal twists inserted
/// in the closing strands east of the last column. Single-entry columns
/// are vertical twist regions and reproduce pretzel links; longer columns
/// alternate directions so the final region is always vertical.
pub fn montesinos(columns: &[Vec<i64>], extra: i64) -> Result<Diagram> {
    if columns.is_empty() {
        return Err(Error::EmptyInput("montesinos needs at least one column".into()));
    }
    let mut plan = Plan::new();
    let mut cols = Vec::with_capacity(columns.len());
    for digits in columns {
        cols.push(rational_tangle(&mut plan, digits, digits.len() % 2 == 0)?);
    }
    for w in cols.windows(2) {
        plan.join(w[0].ne, w[1].nw);
        plan.join(w[0].se, w[1].sw);
    }
    let first = cols[0];
    let (mut ne, mut se) = (cols[cols.len() - 1].ne, cols[cols.len() - 1].se);
    if extra != 0 {
        let c = twist_chain(&mut plan, extra, true);
        plan.join(ne, c.nw);
        plan.join(se, c.sw);
        ne = c.ne;
        se = c.se;
    }
    plan.join(first.nw, ne);
    plan.join(first.sw, se);
    plan.build(0)
}

/// One step of a braid-like column assembly: either a plain generator or
/// a rational tangle dropped into the generator's slot.
#[derive(Debug, Clone)]
pub enum BraidItem {
    /// Generator `k` (positive) or its inverse (negative), 1-based.
    Gen(i32),
    /// A rational tangle occupying the square of generator `gen`.
    Tangle {
        gen: usize,
        digits: Vec<i64>,
        start_horizontal: bool,
    },
}

/// Braid closure where selected letters are replaced by rational tangles.
pub fn braid_closure_with(strands: usize, items: &[BraidItem]) -> Result<Diagram> {
    if strands == 0 {
        return Err(Error::EmptyInput("braid needs at least one strand".into()));
    }
    let mut plan = Plan::new();
    let mut top: Vec<Option<End>> = vec![None; strands];
    let mut dangling: Vec<Option<End>> = vec![None; strands];
    for item in items {
        let (k, ends) = match item {
            BraidItem::Gen(g) => {
                let k = g.unsigned_abs() as usize;
                if *g == 0 || k >= strands {
                    return Err(Error::Invalid(format!(
                        "braid letter {g} out of range for {strands} strands"
                    )));
                }
                let c = plan.add_crossing(*g > 0);
                (k, [(c, Port::NW), (c, Port::NE), (c, Port::SW), (c, Port::SE)])
            }
            BraidItem::Tangle {
                gen,
                digits,
                start_horizontal,
            } => {
                if *gen == 0 || *gen >= strands {
                    return Err(Error::Invalid(format!(
                        "tangle slot {gen} out of range for {strands} strands"
                    )));
                }
                let t = rational_tangle(&mut plan, digits, *start_horizontal)?;
                (*gen, [t.nw, t.ne, t.sw, t.se])
            }
        };
        for (pos, end) in [(k - 1, ends[0]), (k, ends[1])] {
            match dangling[pos] {
                Some(above) => plan.join(above, end),
                None => top[pos] = Some(end),
            }
        }
        dangling[k - 1] = Some(ends[2]);
        dangling[k] = Some(ends[3]);
    }
    let mut free = 0usize;
    for pos in 0..strands {
        match (dangling[pos], top[pos]) {
            (Some(a), Some(b)) => plan.join(a, b),
            (None, None) => free += 1,
            _ => unreachable!("a touched strand has both ends"),
        }
    }
    plan.build(free)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_2_3_is_positive_trefoil() {
        let d = torus_knot(2, 3).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert!(d.is_knot());
        assert_eq!(d.signs(), vec![1, 1, 1]);
        let trefoil = Diagram::parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]").unwrap();
        assert_eq!(d.canonical_key(), trefoil.canonical_key());
    }

    #[test]
    fn torus_links_have_expected_shape() {
        let hopf = torus_knot(2, 2).unwrap();
        assert_eq!(hopf.crossing_count(), 2);
        assert_eq!(hopf.component_count(), 2);
        let t34 = torus_knot(3, 4).unwrap();
        assert_eq!(t34.crossing_count(), 8);
        assert!(t34.is_knot());
        assert_eq!(t34.writhe(), 8);
    }

    #[test]
    fn braid_rejects_bad_letters() {
        assert!(braid_closure(2, &[2]).is_err());
        assert!(braid_closure(2, &[0]).is_err());
        assert!(braid_closure(0, &[]).is_err());
    }

    #[test]
    fn trivial_braid_closure_is_unlink() {
        let d = braid_closure(3, &[]).unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.component_count(), 3);
    }

    #[test]
    fn pretzel_knot_shape() {
        let spec = PretzelSpec::new(2, 1).unwrap();
        let d = pretzel(spec).unwrap();
        assert_eq!(d.crossing_count(), spec.crossing_count());
        assert!(d.is_knot());
        // (5, -3, 2): five crossings of one sign, three of the other,
        // and the 2-region picks up signs from the global orientation.
        assert!(d.is_connected());
    }

    #[test]
    fn pretzel_raw_shapes() {
        // P(1,1,1) is a trefoil.
        let t = pretzel_raw(&[1, 1, 1]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert!(t.is_knot());
        // odd-odd-even twist counts give a knot, and same-sign regions
        // give an alternating diagram here.
        let d = pretzel_raw(&[3, 3, 2]).unwrap();
        assert_eq!(d.crossing_count(), 8);
        assert!(d.is_knot());
        assert!(d.is_alternating());
        // even-even two-column pretzels are 2-component links.
        let l = pretzel_raw(&[2, -2]).unwrap();
        assert_eq!(l.component_count(), 2);
    }
}
