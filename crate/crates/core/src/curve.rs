//! Simple closed curves drawn as chord diagrams on a glued polygon.
//!
//! A curve is a cyclic list of boundary points `p_0, p_1, …, p_{2m-1}`. The
//! pairs `(p_{2i}, p_{2i+1})` are straight chords inside the polygon, entering
//! at `p_{2i}` and leaving at `p_{2i+1}`; leaving through a side re-enters the
//! polygon at the glued point, so `glue(p_{2i+1}) = p_{2i+2}`.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::surface::PolygonSurface;
use crate::text;

pub type Rational = Ratio<i64>;

/// A point in the interior of a polygon side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundaryPoint {
    pub side: usize,
    /// Position along the side, counterclockwise, strictly inside `(0, 1)`.
    pub t: Rational,
}

impl BoundaryPoint {
    pub fn new(side: usize, t: Rational) -> Result<Self> {
        if t <= Rational::zero() || t >= Rational::one() {
            return Err(Error::PositionOutOfRange(t.to_string()));
        }
        Ok(Self { side, t })
    }

    /// Shorthand for `new(side, num/den)`; panics on an invalid position.
    pub fn at(side: usize, num: i64, den: i64) -> Self {
        Self::new(side, Ratio::new(num, den)).expect("boundary point inside its side")
    }

    /// Position on the boundary circle as a single number in `[0, n_sides)`.
    pub fn value(&self) -> Rational {
        Rational::from_integer(self.side as i64) + self.t
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}/{}", self.side, self.t.numer(), self.t.denom())
    }
}

/// The orientation-reversing identification `(side, t) ↦ (partner, 1 - t)`.
pub fn glue_point(surface: &PolygonSurface, p: BoundaryPoint) -> BoundaryPoint {
    BoundaryPoint { side: surface.partner(p.side), t: Rational::one() - p.t }
}

/// True when `x` lies strictly inside the counterclockwise arc from `a` to `b`.
pub(crate) fn in_open_arc(a: Rational, b: Rational, x: Rational) -> bool {
    if a < b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// True when the chords `(a, b)` and `(c, d)` cross inside the disk.
/// All four positions must be distinct.
pub(crate) fn chords_interleave(a: Rational, b: Rational, c: Rational, d: Rational) -> bool {
    in_open_arc(a, b, c) != in_open_arc(a, b, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveDiagram {
    points: Vec<BoundaryPoint>,
}

impl CurveDiagram {
    /// Validates side ranges and the closure condition.
    pub fn new(surface: &PolygonSurface, points: Vec<BoundaryPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCurve);
        }
        if points.len() % 2 == 1 {
            return Err(Error::OddPointCount(points.len()));
        }
        let n_sides = surface.n_sides();
        for p in &points {
            if p.side >= n_sides {
                return Err(Error::SideOutOfRange { side: p.side, n_sides });
            }
            BoundaryPoint::new(p.side, p.t)?;
        }
        let len = points.len();
        for i in 0..len / 2 {
            let exit = points[2 * i + 1];
            if glue_point(surface, exit) != points[(2 * i + 2) % len] {
                return Err(Error::NotClosed(i));
            }
        }
        Ok(Self { points })
    }

    /// Builds the curve that leaves the polygon through `exits` in order.
    pub fn from_exits(surface: &PolygonSurface, exits: &[BoundaryPoint]) -> Result<Self> {
        let m = exits.len();
        if m == 0 {
            return Err(Error::EmptyCurve);
        }
        let mut points = Vec::with_capacity(2 * m);
        for i in 0..m {
            points.push(glue_point(surface, exits[(i + m - 1) % m]));
            points.push(exits[i]);
        }
        Self::new(surface, points)
    }

    pub(crate) fn from_points_unchecked(points: Vec<BoundaryPoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[BoundaryPoint] {
        &self.points
    }

    pub fn n_chords(&self) -> usize {
        self.points.len() / 2
    }

    /// Chord `i` as (entry, exit).
    pub fn chord(&self, i: usize) -> (BoundaryPoint, BoundaryPoint) {
        (self.points[2 * i], self.points[2 * i + 1])
    }

    pub fn chords(&self) -> impl Iterator<Item = (BoundaryPoint, BoundaryPoint)> + '_ {
        (0..self.n_chords()).map(move |i| self.chord(i))
    }

    /// The first pair of chords violating simplicity, if any.
    pub fn simplicity_violation(&self) -> Option<(usize, usize, &'static str)> {
        let m = self.n_chords();
        for i in 0..m {
            for j in i + 1..m {
                let (a, b) = self.chord(i);
                let (c, d) = self.chord(j);
                let (a, b, c, d) = (a.value(), b.value(), c.value(), d.value());
                if a == c || a == d || b == c || b == d {
                    return Some((i, j, "share an endpoint"));
                }
                if chords_interleave(a, b, c, d) {
                    return Some((i, j, "cross"));
                }
            }
        }
        None
    }

    pub fn is_simple(&self) -> bool {
        self.simplicity_violation().is_none()
    }

    pub fn check_simple(&self) -> Result<()> {
        match self.simplicity_violation() {
            Some((i, j, why)) => Err(Error::NotSimple(i, j, why)),
            None => Ok(()),
        }
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }

    /// Parses `curve <m>` followed by `2m` lines `point <side> <num>/<den>`.
    pub fn parse(surface: &PolygonSurface, input: &str) -> Result<Self> {
        let lines = text::lines(input);
        let (curve, rest) = Self::parse_lines(surface, &lines)?;
        if let Some(extra) = rest.first() {
            return Err(text::parse_err(extra.number, "trailing input after curve"));
        }
        Ok(curve)
    }

    pub(crate) fn parse_lines<'a, 'b>(
        surface: &PolygonSurface,
        lines: &'b [text::Line<'a>],
    ) -> Result<(Self, &'b [text::Line<'a>])> {
        let head = lines.first().ok_or_else(|| text::parse_err(0, "missing `curve` line"))?;
        if head.words[0] != "curve" {
            return Err(text::parse_err(head.number, "expected `curve <m>`"));
        }
        text::expect_arity(head, 2)?;
        let m = text::parse_usize(head, 1)?;
        if lines.len() < 1 + 2 * m {
            return Err(text::parse_err(head.number, format!("expected {} point lines", 2 * m)));
        }
        let mut points = Vec::with_capacity(2 * m);
        for line in &lines[1..1 + 2 * m] {
            if line.words[0] != "point" {
                return Err(text::parse_err(line.number, "expected `point <side> <num>/<den>`"));
            }
            text::expect_arity(line, 3)?;
            let side = text::parse_usize(line, 1)?;
            let t = text::parse_ratio(line, 2)?;
            points.push(BoundaryPoint::new(side, t).map_err(|e| text::parse_err(line.number, e.to_string()))?);
        }
        let curve = Self::new(surface, points).map_err(|e| text::parse_err(head.number, e.to_string()))?;
        Ok((curve, &lines[1 + 2 * m..]))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CurveDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "curve {}", self.n_chords())?;
        for p in &self.points {
            writeln!(f, "point {p}")?;
        }
        Ok(())
    }
}
