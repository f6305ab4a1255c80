//! Algebraic and geometric intersection numbers of two simple closed curves.
//!
//! The geometric number is found by isotoping the first curve across
//! innermost bigons until none remain; for essential curves the bigon
//! criterion says the remaining crossing count is minimal.

use std::collections::HashSet;

use num_traits::One;

use crate::arrangement::{Arrangement, Component, Vertex};
use crate::curve::{glue_point, BoundaryPoint, CurveDiagram, Rational};
use crate::error::{Error, Result};
use crate::surface::PolygonSurface;

/// Two curves isotoped into minimal position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPosition {
    pub first: CurveDiagram,
    pub second: CurveDiagram,
    pub crossings: usize,
    pub bigons_removed: usize,
}

/// Moves a boundary point a third of the way toward its neighbour in `values`
/// (sorted, distinct), counterclockwise if `ccw`.
fn nudge(surface: &PolygonSurface, values: &[Rational], p: BoundaryPoint, ccw: bool) -> BoundaryPoint {
    let v = p.value();
    let idx = values.binary_search(&v).expect("point is listed");
    let neighbour = if ccw {
        values.get(idx + 1).copied().unwrap_or(Rational::from_integer(surface.n_sides() as i64))
    } else {
        values[idx - 1]
    };
    let nt = neighbour - Rational::from_integer(p.side as i64);
    BoundaryPoint { side: p.side, t: p.t + (nt - p.t) / 3 }
}

fn sorted_values(surface: &PolygonSurface, curves: &[&CurveDiagram]) -> Vec<Rational> {
    let mut values: Vec<Rational> =
        (0..surface.n_sides()).map(|i| Rational::from_integer(i as i64)).collect();
    for c in curves {
        values.extend(c.points().iter().map(BoundaryPoint::value));
    }
    values.sort();
    values.dedup();
    values
}

/// Returns `second` unchanged if it shares no boundary position with `first`,
/// and otherwise a slight push-off of it to its left.
///
/// Pushing a curve off a copy of itself yields a disjoint parallel copy.
pub fn general_position(
    surface: &PolygonSurface,
    first: &CurveDiagram,
    second: &CurveDiagram,
) -> Result<CurveDiagram> {
    let taken: HashSet<Rational> = first.points().iter().map(BoundaryPoint::value).collect();
    if second.points().iter().all(|p| !taken.contains(&p.value())) {
        return Ok(second.clone());
    }
    let values = sorted_values(surface, &[first, second]);
    let exits: Vec<BoundaryPoint> =
        second.chords().map(|(_, exit)| nudge(surface, &values, exit, true)).collect();
    CurveDiagram::from_exits(surface, &exits)
}

/// Signed count of crossings of `second` with `first`: `+1` where `second`
/// passes from the left of `first` to its right.
pub fn algebraic_intersection(
    surface: &PolygonSurface,
    first: &CurveDiagram,
    second: &CurveDiagram,
) -> Result<i64> {
    first.check_simple()?;
    second.check_simple()?;
    let second = general_position(surface, first, second)?;
    Ok(Arrangement::build(surface, &[first, &second])?.algebraic(0, 1))
}

/// Geometric intersection number of two essential simple closed curves.
pub fn geometric_intersection(
    surface: &PolygonSurface,
    first: &CurveDiagram,
    second: &CurveDiagram,
) -> Result<usize> {
    Ok(minimal_position(surface, first, second)?.crossings)
}

/// Number of crossings of the two diagrams as drawn (after a push-off if they
/// share boundary points).
pub fn drawn_crossings(surface: &PolygonSurface, first: &CurveDiagram, second: &CurveDiagram) -> Result<usize> {
    let second = general_position(surface, first, second)?;
    Ok(Arrangement::build(surface, &[first, &second])?.crossings.len())
}

/// Isotopes `first` across bigons until the pair is in minimal position.
pub fn minimal_position(
    surface: &PolygonSurface,
    first: &CurveDiagram,
    second: &CurveDiagram,
) -> Result<MinimalPosition> {
    first.check_simple()?;
    second.check_simple()?;
    let second = general_position(surface, first, second)?;
    let mut a = first.clone();
    let mut removed = 0;
    loop {
        let arr = Arrangement::build(surface, &[&a, &second])?;
        let before = arr.crossings.len();
        let Some(bigon) = arr.components.iter().find(|c| is_bigon(c)) else {
            return Ok(MinimalPosition { first: a, second, crossings: before, bigons_removed: removed });
        };
        let next = remove_bigon(surface, &arr, &a, &second, bigon)?;
        next.check_simple()?;
        let after = Arrangement::build(surface, &[&next, &second])?.crossings.len();
        if after >= before {
            return Err(Error::BigonRemovalStalled(before));
        }
        a = next;
        removed += 1;
    }
}

fn is_bigon(c: &Component) -> bool {
    c.euler_char == 1 && c.crossing_corners.len() == 2 && c.crossing_corners[0] != c.crossing_corners[1]
}

/// One side of a bigon: the pieces of one curve running between the two corners.
struct Arc {
    /// `(local chord, piece)` where the arc begins and ends, in the curve's direction.
    start: (usize, usize),
    end: (usize, usize),
    start_crossing: usize,
    end_crossing: usize,
    /// Direction of the darts on the bigon boundary relative to the curve.
    forward: bool,
}

fn find_arc(arr: &Arrangement, comp: &Component, curve: usize) -> Result<Arc> {
    let mut start = None;
    let mut end = None;
    let mut forward = None;
    for &d in &comp.chord_darts {
        let (g, piece, fwd) = arr.piece_of(d).expect("chord dart");
        let chord = &arr.chords[g];
        if chord.curve != curve {
            continue;
        }
        forward = Some(fwd);
        if let Vertex::Crossing(x) = chord.vertices[piece] {
            if start.replace(((chord.index, piece), x)).is_some() {
                return Err(Error::Inconsistent("bigon side has two starting pieces".into()));
            }
        }
        if let Vertex::Crossing(x) = chord.vertices[piece + 1] {
            if end.replace(((chord.index, piece), x)).is_some() {
                return Err(Error::Inconsistent("bigon side has two ending pieces".into()));
            }
        }
    }
    match (start, end, forward) {
        (Some((s, sx)), Some((e, ex)), Some(forward)) => {
            Ok(Arc { start: s, end: e, start_crossing: sx, end_crossing: ex, forward })
        }
        _ => Err(Error::Inconsistent("bigon side is not an arc".into())),
    }
}

/// Boundary points crossed by `curve` walking forward from `from` to `to`,
/// as consecutive (exit, entry) pairs.
fn points_between(arr: &Arrangement, curve: usize, c: &CurveDiagram, from: (usize, usize), to: (usize, usize)) -> Result<Vec<BoundaryPoint>> {
    let offset = arr.chords.iter().position(|ch| ch.curve == curve).expect("curve has chords");
    let m = c.n_chords();
    let n_pieces = |k: usize| arr.chords[offset + k].vertices.len() - 1;
    let mut out = Vec::new();
    let (mut k, mut p) = from;
    let limit = arr.darts.len();
    while (k, p) != to {
        if out.len() > limit {
            return Err(Error::Inconsistent("bigon side walk did not terminate".into()));
        }
        if p + 1 < n_pieces(k) {
            p += 1;
        } else {
            out.push(c.points()[2 * k + 1]);
            out.push(c.points()[(2 * k + 2) % (2 * m)]);
            k = (k + 1) % m;
            p = 0;
        }
    }
    Ok(out)
}

/// Replaces the `a` side of the bigon by a copy of its `b` side pushed just
/// outside the bigon, which removes both corner crossings.
fn remove_bigon(
    surface: &PolygonSurface,
    arr: &Arrangement,
    a: &CurveDiagram,
    b: &CurveDiagram,
    comp: &Component,
) -> Result<CurveDiagram> {
    let arc_a = find_arc(arr, comp, 0)?;
    let arc_b = find_arc(arr, comp, 1)?;
    let (x, y) = (arc_a.start_crossing, arc_a.end_crossing);

    let mut travel = points_between(arr, 1, b, arc_b.start, arc_b.end)?;
    let travel_forward = if arc_b.start_crossing == x && arc_b.end_crossing == y {
        true
    } else if arc_b.start_crossing == y && arc_b.end_crossing == x {
        travel.reverse();
        false
    } else {
        return Err(Error::Inconsistent("bigon sides do not share their corners".into()));
    };
    // Faces lie to the left of their darts.
    let bigon_on_left = arc_b.forward == travel_forward;

    let values: Vec<Rational> = arr.items.iter().map(|it| it.value).collect();
    let mut copy = Vec::with_capacity(travel.len());
    for pair in travel.chunks(2) {
        // Facing out of the polygon, counterclockwise along the side is to the left.
        let exit = nudge(surface, &values, pair[0], !bigon_on_left);
        copy.push(exit);
        copy.push(glue_point(surface, exit));
    }

    let pts = a.points();
    let len = pts.len();
    let ((ks, ps), (ke, pe)) = (arc_a.start, arc_a.end);
    let kept: Vec<BoundaryPoint> = if ks != ke {
        let count = (2 * ks + len - (2 * ke + 1)) % len + 1;
        (0..count).map(|i| pts[(2 * ke + 1 + i) % len]).collect()
    } else if ps == pe {
        (0..len).map(|i| pts[(2 * ks + 1 + i) % len]).collect()
    } else if ps > pe {
        Vec::new()
    } else {
        return Err(Error::Inconsistent("bigon side runs backwards inside a chord".into()));
    };
    let mut points: Vec<BoundaryPoint> = kept.into_iter().chain(copy).collect();
    if points.is_empty() {
        return Err(Error::Inconsistent("bigon removal left an empty curve".into()));
    }
    points.rotate_left(1);
    debug_assert!(points.iter().all(|p| p.t > Rational::from_integer(0) && p.t < Rational::one()));
    CurveDiagram::new(surface, points)
}
