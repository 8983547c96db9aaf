//! Classical invariants: Kauffman bracket, Jones polynomial, determinant
//! and signature.
//!
//! The bracket is a parallel state sum over all `2^n` smoothings, so it is
//! guarded by a caller-supplied crossing ceiling. The determinant and
//! signature come from a Goeritz matrix of a checkerboard shading with the
//! Gordon-Litherland correction term, which is polynomial time and needs
//! no ceiling. Where both routes compute the determinant they are
//! cross-checked in the test suite.

use num::BigInt;

use crate::diagram::{Diagram, Faces};
use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::poly::Laurent;
use crate::turaev::state_circles;
use crate::Smoothing;

/// Default crossing-count ceiling for the 2^n bracket state sum.
pub const DEFAULT_BRACKET_CEILING: usize = 16;

/// Kauffman bracket `<D>` in the variable `A`.
///
/// Fails with [`Error::CeilingExceeded`] when the diagram has more
/// crossings than `ceiling`, and with [`Error::EmptyInput`] on the empty
/// diagram (zero crossings and zero loops), whose bracket is not defined
/// by the normalisation used here (`<unknot> = 1`).
pub fn kauffman_bracket(d: &Diagram, ceiling: usize) -> Result<Laurent> {
    let n = d.crossing_count();
    if n > ceiling {
        return Err(Error::CeilingExceeded {
            crossings: n,
            ceiling,
        });
    }
    if n == 0 {
        let circles = d.component_count();
        if circles == 0 {
            return Err(Error::EmptyInput("empty diagram".into()));
        }
        return Ok(delta_power(circles - 1));
    }
    let states = 1usize << n;
    Ok(par::map_reduce(
        states,
        Laurent::zero(),
        |mask| {
            let kinds: Vec<Smoothing> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 0 {
                        Smoothing::A
                    } else {
                        Smoothing::B
                    }
                })
                .collect();
            let b = mask.count_ones() as i32;
            let a = n as i32 - b;
            let circles = state_circles(d, &kinds).expect("state length matches");
            debug_assert!(circles >= 1);
            let mut term = delta_power(circles - 1);
            term = term.shift(a - b, 1);
            term
        },
        |x, y| &x + &y,
    ))
}

/// `(-A^2 - A^-2)^k`.
fn delta_power(k: usize) -> Laurent {
    let delta = {
        let mut p = Laurent::zero();
        p.add_term(2, -1);
        p.add_term(-2, -1);
        p
    };
    let mut out = Laurent::one();
    for _ in 0..k {
        out = &out * &delta;
    }
    out
}

/// The writhe-normalised bracket `f(D) = (-A^3)^{-w} <D>`, an invariant of
/// the oriented link.
pub fn normalized_bracket(d: &Diagram, ceiling: usize) -> Result<Laurent> {
    let w = d.writhe();
    let bracket = kauffman_bracket(d, ceiling)?;
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(bracket.shift(-3 * w as i32, sign))
}

/// Jones polynomial in the variable `q = A^{-2}` (so `q = t^{1/2}` for the
/// usual variable `t`; knots only ever use even powers of `q`).
pub fn jones_polynomial(d: &Diagram, ceiling: usize) -> Result<Laurent> {
    let f = normalized_bracket(d, ceiling)?;
    if !f.exponents_even() {
        return Err(Error::ParityViolation);
    }
    Ok(f.map_exponents(|e| -e / 2))
}

/// Determinant from a Jones polynomial in `q`: the magnitude of the
/// evaluation at `q = i`, i.e. `|V(-1)|`.
pub fn determinant_from_jones(jones: &Laurent) -> u64 {
    let (re, im) = jones.eval_imaginary_unit();
    debug_assert!(re == 0 || im == 0);
    re.unsigned_abs() + im.unsigned_abs()
}

/// A checkerboard shading of the faces of a connected diagram.
struct Shading {
    faces: Faces,
    /// Colour bit per face; the two colour classes are the two shadings.
    color: Vec<bool>,
}

fn checkerboard(d: &Diagram) -> Result<Shading> {
    if !d.is_connected() {
        return Err(Error::SplitDiagram);
    }
    let faces = d.faces();
    let nf = faces.faces.len();
    let mut color = vec![false; nf];
    let mut seen = vec![false; nf];
    // Faces sharing an edge must differ; around a crossing, consecutive
    // corners share a strand-end, which pins every adjacency.
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(f) = stack.pop() {
        for &dart in &faces.faces[f] {
            let c = dart / 4;
            let k = dart % 4;
            // Dart (c, k) lies in corner (c, k-1); its ccw neighbour
            // corner (c, k) is across one strand, hence opposite colour.
            let g = faces.corner(c, k);
            if !seen[g] {
                seen[g] = true;
                color[g] = !color[f];
                stack.push(g);
            } else if color[g] == color[f] {
                return Err(Error::ParityViolation);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::SplitDiagram);
    }
    Ok(Shading { faces, color })
}

/// Goeritz data for one colour class of a shading.
struct GoeritzSide {
    /// Goeritz matrix with one region deleted.
    reduced: Vec<Vec<i64>>,
    /// Gordon-Litherland correction term for this spanning surface.
    mu: i64,
}

fn goeritz_side(d: &Diagram, sh: &Shading, white: bool) -> GoeritzSide {
    let n = d.crossing_count();
    // Index the white regions.
    let mut index = vec![usize::MAX; sh.color.len()];
    let mut count = 0usize;
    for (f, &c) in sh.color.iter().enumerate() {
        if c == white {
            index[f] = count;
            count += 1;
        }
    }
    let mut g = vec![vec![0i64; count]; count];
    let mut mu = 0i64;
    for c in 0..n {
        let corners: Vec<usize> = (0..4).map(|k| sh.faces.corner(c, k)).collect();
        // Exactly one opposite pair of corners is white.
        let pair13 = sh.color[corners[1]] == white;
        debug_assert_eq!(sh.color[corners[0]] == white, !pair13);
        // Goeritz sign: the over-strand occupies slots 1 and 3, so the
        // corner pair {1,3} is the pair split off by rotating the
        // over-strand onto the under-strand. Calibrated on the standard
        // positive trefoil (signature -2).
        let eta: i64 = if pair13 { 1 } else { -1 };
        let (wa, wb) = if pair13 {
            (corners[1], corners[3])
        } else {
            (corners[0], corners[2])
        };
        let (i, j) = (index[wa], index[wb]);
        if i != j {
            g[i][j] -= eta;
            g[j][i] -= eta;
        }
        // Orientation type: the corner between the two outgoing strands
        // (under-strand exits slot 2; the over-strand exit depends on the
        // over flag). Type II crossings contribute eta to the correction.
        let out_corner = if d.dart_outgoing(4 * c + 3) {
            corners[2]
        } else {
            corners[1]
        };
        let type_ii = sh.color[out_corner] != white;
        if type_ii {
            mu += eta;
        }
    }
    for (i, row) in g.iter_mut().enumerate() {
        let off: i64 = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v)
            .sum();
        row[i] = -off;
    }
    // Delete the last region's row and column.
    let reduced: Vec<Vec<i64>> = g[..count - 1]
        .iter()
        .map(|row| row[..count - 1].to_vec())
        .collect();
    GoeritzSide { reduced, mu }
}

/// Signature of the link presented by a connected diagram, via the Goeritz
/// matrix with the Gordon-Litherland correction. Both checkerboard
/// surfaces are computed and must agree.
pub fn signature(d: &Diagram) -> Result<i64> {
    if d.crossing_count() == 0 {
        return if d.component_count() == 0 {
            Err(Error::EmptyInput("empty diagram".into()))
        } else {
            Ok(0)
        };
    }
    let sh = checkerboard(d)?;
    let mut out = None;
    for white in [false, true] {
        let side = goeritz_side(d, &sh, white);
        let (sig, _null) = linalg::symmetric_signature(&side.reduced);
        let sigma = sig - side.mu;
        match out {
            None => out = Some(sigma),
            Some(prev) => {
                if prev != sigma {
                    return Err(Error::Invalid(format!(
                        "checkerboard surfaces disagree on signature: {prev} vs {sigma}"
                    )));
                }
            }
        }
    }
    Ok(out.unwrap())
}

/// Determinant of the link presented by a connected diagram, as the
/// absolute value of the reduced Goeritz determinant.
pub fn determinant(d: &Diagram) -> Result<BigInt> {
    if d.crossing_count() == 0 {
        return if d.component_count() == 0 {
            Err(Error::EmptyInput("empty diagram".into()))
        } else if d.component_count() == 1 {
            Ok(BigInt::from(1))
        } else {
            Ok(BigInt::from(0))
        };
    }
    let sh = checkerboard(d)?;
    let side = goeritz_side(d, &sh, false);
    let det = linalg::determinant(&side.reduced);
    let other = linalg::determinant(&goeritz_side(d, &sh, true).reduced);
    let (a, b) = (num::abs(det), num::abs(other));
    if a != b {
        return Err(Error::Invalid(format!(
            "checkerboard surfaces disagree on determinant: {a} vs {b}"
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]";
    const FIGURE_EIGHT: &str = "PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]";

    fn parse(pd: &str) -> Diagram {
        Diagram::parse_pd(pd).unwrap()
    }

    #[test]
    fn bracket_of_unknot_and_trefoil() {
        let unknot = Diagram::unknot();
        assert_eq!(kauffman_bracket(&unknot, 16).unwrap(), Laurent::one());
        let t = parse(TREFOIL);
        // <trefoil> = -A^5 - A^-3 + A^-7 for the all-positive diagram.
        let b = kauffman_bracket(&t, 16).unwrap();
        let mut expect = Laurent::zero();
        expect.add_term(5, -1);
        expect.add_term(-3, -1);
        expect.add_term(-7, 1);
        assert_eq!(b, expect);
    }

    #[test]
    fn jones_of_trefoil_and_figure_eight() {
        let t = parse(TREFOIL);
        // Right-handed trefoil: V(t) = -t^4 + t^3 + t, here in q = t^{1/2}.
        let v = jones_polynomial(&t, 16).unwrap();
        let mut expect = Laurent::zero();
        expect.add_term(8, -1);
        expect.add_term(6, 1);
        expect.add_term(2, 1);
        assert_eq!(v, expect);
        assert_eq!(determinant_from_jones(&v), 3);

        let f8 = parse(FIGURE_EIGHT);
        let v8 = jones_polynomial(&f8, 16).unwrap();
        // Figure-eight Jones is symmetric (amphichiral) with V(1) = 1.
        let mirror = v8.map_exponents(|e| -e);
        assert_eq!(v8, mirror);
        assert_eq!(determinant_from_jones(&v8), 5);
    }

    #[test]
    fn mirror_flips_jones() {
        let t = parse(TREFOIL);
        let m = t.mirror();
        let v = jones_polynomial(&t, 16).unwrap();
        let vm = jones_polynomial(&m, 16).unwrap();
        assert_eq!(vm, v.map_exponents(|e| -e));
    }

    #[test]
    fn pretzel_signature_matches_family_formula() {
        use crate::diagram::families::pretzel;
        use crate::diagram::PretzelSpec;
        for (p, q) in [(1u32, 1u32), (2, 1), (2, 2), (3, 1)] {
            let d = pretzel(PretzelSpec { p, q }).unwrap();
            let s = signature(&d).unwrap();
            assert_eq!(s, -2 * (p as i64) + 2 * (q as i64), "K({p},{q})");
        }
    }

    #[test]
    fn signature_of_fixtures() {
        let t = parse(TREFOIL);
        assert_eq!(signature(&t).unwrap(), -2);
        assert_eq!(signature(&t.mirror()).unwrap(), 2);
        let f8 = parse(FIGURE_EIGHT);
        assert_eq!(signature(&f8).unwrap(), 0);
        assert_eq!(signature(&Diagram::unknot()).unwrap(), 0);
    }

    #[test]
    fn determinant_of_fixtures() {
        let t = parse(TREFOIL);
        assert_eq!(determinant(&t).unwrap(), BigInt::from(3));
        let f8 = parse(FIGURE_EIGHT);
        assert_eq!(determinant(&f8).unwrap(), BigInt::from(5));
        assert_eq!(determinant(&Diagram::unknot()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn goeritz_det_matches_jones_det() {
        for pd in [TREFOIL, FIGURE_EIGHT] {
            let d = parse(pd);
            let v = jones_polynomial(&d, 16).unwrap();
            let via_jones = determinant_from_jones(&v);
            let via_goeritz = determinant(&d).unwrap();
            assert_eq!(BigInt::from(via_jones), via_goeritz);
        }
    }
}
