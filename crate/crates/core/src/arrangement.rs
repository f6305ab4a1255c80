//! The cell complex obtained by drawing several chord diagrams in the polygon
//! at once.
//!
//! Cutting the polygon along every chord gives planar regions. Regions glue to
//! each other across side segments that carry no curve point, and the
//! resulting connected pieces are the components of the surface cut along all
//! curves. For each piece we count cells to get its Euler characteristic and
//! trace its boundary circles.
//!
//! Only the cyclic order of points on the boundary matters: two chords cross
//! iff their endpoints interleave, and crossings along one chord are ordered by
//! where the crossing chords meet the boundary. That order is well defined as
//! long as the chords crossing any given chord are pairwise disjoint, which is
//! the case for one curve against another or for any family of disjoint curves.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::curve::{chords_interleave, in_open_arc, CurveDiagram, Rational};
use crate::error::{Error, Result};
use crate::surface::PolygonSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Vertex {
    Item(usize),
    Crossing(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Item {
    pub value: Rational,
}

#[derive(Debug, Clone)]
pub(crate) struct Chord {
    pub curve: usize,
    pub index: usize,
    pub start: Rational,
    pub end: Rational,
    /// Vertices met walking from the entry point to the exit point.
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DartKind {
    /// Side segment `j` walked counterclockwise (interior on the left).
    SegCcw(usize),
    /// Side segment `j` walked clockwise; only the outer face uses these.
    SegCw(usize),
    Piece { chord: usize, piece: usize, forward: bool },
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Dart {
    pub tail: Vertex,
    pub head: Vertex,
    pub kind: DartKind,
}

#[derive(Debug, Clone)]
pub(crate) struct BoundaryCircle {
    pub curves: Vec<usize>,
    pub darts: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct Component {
    pub euler_char: i64,
    pub boundaries: Vec<BoundaryCircle>,
    /// Crossing ids, one entry per corner of the piece sitting at a crossing.
    pub crossing_corners: Vec<usize>,
    pub chord_darts: Vec<usize>,
}

impl Component {
    pub fn genus(&self) -> i64 {
        (2 - self.boundaries.len() as i64 - self.euler_char) / 2
    }
}

#[derive(Debug)]
pub(crate) struct Arrangement {
    pub items: Vec<Item>,
    pub chords: Vec<Chord>,
    /// Pairs of global chord indices.
    pub crossings: Vec<(usize, usize)>,
    pub darts: Vec<Dart>,
    out: HashMap<Vertex, Vec<usize>>,
    out_pos: Vec<usize>,
    /// Face id of every dart; `usize::MAX` for the outer face.
    pub dart_face: Vec<usize>,
    pub faces: Vec<Vec<usize>>,
    pub components: Vec<Component>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn ccw_distance(from: Rational, to: Rational, n: Rational) -> Rational {
    let d = to - from;
    if d < Rational::zero() {
        d + n
    } else {
        d
    }
}

impl Arrangement {
    pub fn build(surface: &PolygonSurface, curves: &[&CurveDiagram]) -> Result<Self> {
        let n = surface.n_sides();
        let n_rat = Rational::from_integer(n as i64);

        // Boundary items: corners plus every curve point, sorted around the circle.
        let mut items: Vec<Item> = (0..n)
            .map(|i| Item { value: Rational::from_integer(i as i64) })
            .collect();
        for c in curves {
            items.extend(c.points().iter().map(|p| Item { value: p.value() }));
        }
        items.sort_by(|a, b| a.value.cmp(&b.value));
        for w in items.windows(2) {
            if w[0].value == w[1].value {
                return Err(Error::CoincidentPoints(w[0].value.to_string()));
            }
        }
        let item_at: HashMap<Rational, usize> =
            items.iter().enumerate().map(|(i, it)| (it.value, i)).collect();

        let mut chords = Vec::new();
        for (ci, c) in curves.iter().enumerate() {
            for (k, (p, q)) in c.chords().enumerate() {
                chords.push(Chord {
                    curve: ci,
                    index: k,
                    start: p.value(),
                    end: q.value(),
                    vertices: vec![Vertex::Item(item_at[&p.value()]), Vertex::Item(item_at[&q.value()])],
                });
            }
        }

        let mut crossings = Vec::new();
        let mut partners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); chords.len()];
        for i in 0..chords.len() {
            for j in i + 1..chords.len() {
                let (a, b) = (&chords[i], &chords[j]);
                if chords_interleave(a.start, a.end, b.start, b.end) {
                    if a.curve == b.curve {
                        return Err(Error::NotSimple(a.index, b.index, "cross"));
                    }
                    let id = crossings.len();
                    crossings.push((i, j));
                    partners[i].push((j, id));
                    partners[j].push((i, id));
                }
            }
        }

        // Order crossings along each chord from its entry point.
        for ci in 0..chords.len() {
            let (p, q) = (chords[ci].start, chords[ci].end);
            let list = &partners[ci];
            for x in 0..list.len() {
                for y in x + 1..list.len() {
                    let (u, v) = (&chords[list[x].0], &chords[list[y].0]);
                    if chords_interleave(u.start, u.end, v.start, v.end) {
                        return Err(Error::AmbiguousArrangement);
                    }
                }
            }
            let mut keyed: Vec<(Rational, usize)> = list
                .iter()
                .map(|&(other, id)| {
                    let o = &chords[other];
                    let near = if in_open_arc(p, q, o.start) { o.start } else { o.end };
                    (ccw_distance(p, near, n_rat), id)
                })
                .collect();
            keyed.sort();
            let end = chords[ci].vertices.pop().unwrap();
            chords[ci].vertices.extend(keyed.into_iter().map(|(_, id)| Vertex::Crossing(id)));
            chords[ci].vertices.push(end);
        }

        // Darts.
        let l = items.len();
        let mut darts = Vec::new();
        for j in 0..l {
            darts.push(Dart { tail: Vertex::Item(j), head: Vertex::Item((j + 1) % l), kind: DartKind::SegCcw(j) });
        }
        for j in 0..l {
            darts.push(Dart { tail: Vertex::Item((j + 1) % l), head: Vertex::Item(j), kind: DartKind::SegCw(j) });
        }
        let mut piece_base = Vec::with_capacity(chords.len());
        for (ci, ch) in chords.iter().enumerate() {
            piece_base.push(darts.len());
            for (pi, w) in ch.vertices.windows(2).enumerate() {
                darts.push(Dart { tail: w[0], head: w[1], kind: DartKind::Piece { chord: ci, piece: pi, forward: true } });
                darts.push(Dart { tail: w[1], head: w[0], kind: DartKind::Piece { chord: ci, piece: pi, forward: false } });
            }
        }
        let piece_dart = |chord: usize, piece: usize, forward: bool| piece_base[chord] + 2 * piece + usize::from(!forward);

        // Counterclockwise rotation of outgoing darts at every vertex.
        let mut out: HashMap<Vertex, Vec<usize>> = HashMap::new();
        let mut chord_at_item: HashMap<usize, usize> = HashMap::new();
        for (ci, ch) in chords.iter().enumerate() {
            if let (Vertex::Item(s), Vertex::Item(e)) = (ch.vertices[0], *ch.vertices.last().unwrap()) {
                chord_at_item.insert(s, piece_dart(ci, 0, true));
                chord_at_item.insert(e, piece_dart(ci, ch.vertices.len() - 2, false));
            }
        }
        for j in 0..l {
            let ccw = j;
            let cw = l + (j + l - 1) % l;
            let list = match chord_at_item.get(&j) {
                Some(&inward) => vec![ccw, inward, cw],
                None => vec![ccw, cw],
            };
            out.insert(Vertex::Item(j), list);
        }
        for (id, &(c1, c2)) in crossings.iter().enumerate() {
            let mut around: Vec<(Rational, usize)> = Vec::with_capacity(4);
            for c in [c1, c2] {
                let ch = &chords[c];
                let q = ch.vertices.iter().position(|&v| v == Vertex::Crossing(id)).unwrap();
                around.push((ch.end, piece_dart(c, q, true)));
                around.push((ch.start, piece_dart(c, q - 1, false)));
            }
            around.sort();
            out.insert(Vertex::Crossing(id), around.into_iter().map(|(_, d)| d).collect());
        }
        let mut out_pos = vec![usize::MAX; darts.len()];
        for list in out.values() {
            for (pos, &d) in list.iter().enumerate() {
                out_pos[d] = pos;
            }
        }

        let mut arr = Arrangement {
            items,
            chords,
            crossings,
            darts,
            out,
            out_pos,
            dart_face: Vec::new(),
            faces: Vec::new(),
            components: Vec::new(),
        };
        arr.trace_faces()?;
        arr.glue_components(surface, &item_at)?;
        Ok(arr)
    }

    pub fn reverse(&self, d: usize) -> usize {
        let l = self.items.len();
        match self.darts[d].kind {
            DartKind::SegCcw(j) => l + j,
            DartKind::SegCw(j) => j,
            DartKind::Piece { forward, .. } => {
                if forward {
                    d + 1
                } else {
                    d - 1
                }
            }
        }
    }

    /// Next dart around the face lying to the left of `d`.
    pub fn next(&self, d: usize) -> usize {
        let head = self.darts[d].head;
        let list = &self.out[&head];
        let back = self.out_pos[self.reverse(d)];
        list[(back + list.len() - 1) % list.len()]
    }

    fn trace_faces(&mut self) -> Result<()> {
        let mut dart_face = vec![usize::MAX; self.darts.len()];
        let mut faces = Vec::new();
        for start in 0..self.darts.len() {
            if dart_face[start] != usize::MAX || matches!(self.darts[start].kind, DartKind::SegCw(_)) {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                if matches!(self.darts[d].kind, DartKind::SegCw(_)) {
                    return Err(Error::Inconsistent("inner face reached the outer boundary".into()));
                }
                dart_face[d] = id;
                cycle.push(d);
                d = self.next(d);
                if d == start {
                    break;
                }
                if dart_face[d] != usize::MAX {
                    return Err(Error::Inconsistent("face tracing did not close".into()));
                }
            }
            faces.push(cycle);
        }
        self.dart_face = dart_face;
        self.faces = faces;
        Ok(())
    }

    fn glue_components(&mut self, surface: &PolygonSurface, item_at: &HashMap<Rational, usize>) -> Result<()> {
        let l = self.items.len();
        let n = surface.n_sides() as i64;

        // Glued partner of every side segment.
        let mut seg_partner = vec![0usize; l];
        for j in 0..l {
            let u1 = self.items[j].value;
            let u2 = if j + 1 == l { Rational::from_integer(n) } else { self.items[j + 1].value };
            let side = u1.floor().to_integer();
            let t2 = u2 - Rational::from_integer(side);
            let partner = surface.partner(side as usize) as i64;
            let start = Rational::from_integer(partner) + (Rational::one() - t2);
            let &jp = item_at
                .get(&start)
                .ok_or_else(|| Error::Inconsistent(format!("segment {j} has no glued partner")))?;
            seg_partner[j] = jp;
        }

        let n_faces = self.faces.len();
        let mut face_uf = UnionFind::new(n_faces);
        let mut corner_uf = UnionFind::new(self.darts.len());
        for j in 0..l {
            let jp = seg_partner[j];
            if seg_partner[jp] != j {
                return Err(Error::Inconsistent("segment gluing is not an involution".into()));
            }
            face_uf.union(self.dart_face[j], self.dart_face[jp]);
            corner_uf.union(j, self.next(jp));
            corner_uf.union(self.next(j), jp);
        }

        let mut comp_of_root: HashMap<usize, usize> = HashMap::new();
        let mut comp_faces: Vec<Vec<usize>> = Vec::new();
        for f in 0..n_faces {
            let r = face_uf.find(f);
            let c = *comp_of_root.entry(r).or_insert_with(|| {
                comp_faces.push(Vec::new());
                comp_faces.len() - 1
            });
            comp_faces[c].push(f);
        }

        // Boundary circles: chord darts joined through shared corner classes.
        let is_chord = |d: usize| matches!(self.darts[d].kind, DartKind::Piece { .. });
        let mut by_corner: HashMap<usize, Vec<usize>> = HashMap::new();
        for d in 0..self.darts.len() {
            if self.dart_face[d] == usize::MAX || !is_chord(d) {
                continue;
            }
            by_corner.entry(corner_uf.find(d)).or_default().push(d);
            let head_corner = corner_uf.find(self.next(d));
            by_corner.entry(head_corner).or_default().push(d);
        }
        let mut boundary_uf = UnionFind::new(self.darts.len());
        for list in by_corner.values() {
            for w in list.windows(2) {
                boundary_uf.union(w[0], w[1]);
            }
        }

        let mut components = Vec::with_capacity(comp_faces.len());
        for faces in comp_faces {
            let darts: Vec<usize> = faces.iter().flat_map(|&f| self.faces[f].iter().copied()).collect();
            let mut corners: Vec<usize> = darts.iter().map(|&d| corner_uf.find(d)).collect();
            corners.sort_unstable();
            corners.dedup();
            let seg_count = darts.iter().filter(|&&d| !is_chord(d)).count();
            if seg_count % 2 == 1 {
                return Err(Error::Inconsistent("odd number of side segments in a component".into()));
            }
            let chord_darts: Vec<usize> = darts.iter().copied().filter(|&d| is_chord(d)).collect();
            let edges = (seg_count / 2 + chord_darts.len()) as i64;
            let euler_char = corners.len() as i64 - edges + faces.len() as i64;

            let mut circles: HashMap<usize, Vec<usize>> = HashMap::new();
            for &d in &chord_darts {
                circles.entry(boundary_uf.find(d)).or_default().push(d);
            }
            let mut boundaries: Vec<BoundaryCircle> = circles
                .into_values()
                .map(|mut ds| {
                    ds.sort_unstable();
                    let mut curves: Vec<usize> = ds
                        .iter()
                        .map(|&d| match self.darts[d].kind {
                            DartKind::Piece { chord, .. } => self.chords[chord].curve,
                            _ => unreachable!(),
                        })
                        .collect();
                    curves.sort_unstable();
                    curves.dedup();
                    BoundaryCircle { curves, darts: ds }
                })
                .collect();
            boundaries.sort_by_key(|b| b.darts[0]);

            let crossing_corners = darts
                .iter()
                .filter_map(|&d| match self.darts[d].tail {
                    Vertex::Crossing(x) => Some(x),
                    Vertex::Item(_) => None,
                })
                .collect();
            components.push(Component { euler_char, boundaries, crossing_corners, chord_darts });
        }
        self.components = components;
        Ok(())
    }

    pub fn piece_of(&self, d: usize) -> Option<(usize, usize, bool)> {
        match self.darts[d].kind {
            DartKind::Piece { chord, piece, forward } => Some((chord, piece, forward)),
            _ => None,
        }
    }

    /// Signed crossing count of curve `second` against curve `first`:
    /// `+1` where `second` passes from the left of `first` to its right.
    pub fn algebraic(&self, first: usize, second: usize) -> i64 {
        let mut total = 0;
        for &(i, j) in &self.crossings {
            let (a, b) = match (self.chords[i].curve, self.chords[j].curve) {
                (x, y) if x == first && y == second => (i, j),
                (x, y) if x == second && y == first => (j, i),
                _ => continue,
            };
            let (a, b) = (&self.chords[a], &self.chords[b]);
            // Left of a chord walked from start to end is the arc end -> start.
            let from_left = in_open_arc(a.end, a.start, b.start);
            total += if from_left { 1 } else { -1 };
        }
        total
    }
}
