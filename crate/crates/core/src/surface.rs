//! Closed orientable surfaces presented as a single polygon with its sides
//! identified in pairs.
//!
//! Sides are numbered counterclockwise; side `i` runs from corner `i` to
//! corner `i + 1`. Every gluing reverses the boundary direction, so a point at
//! parameter `t` on side `i` is identified with the point at `1 - t` on its
//! partner. With that convention any fixed-point-free pairing gives a closed
//! orientable surface.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::text;

/// A fixed-point-free involution on the sides of a polygon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgePairing {
    partner: Vec<usize>,
}

impl EdgePairing {
    /// Builds a pairing from a list of unordered side pairs.
    pub fn from_pairs(n_sides: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n_sides == 0 || n_sides % 2 == 1 {
            return Err(Error::OddPolygon(n_sides));
        }
        let mut partner = vec![usize::MAX; n_sides];
        for &(i, j) in pairs {
            for side in [i, j] {
                if side >= n_sides {
                    return Err(Error::SideOutOfRange { side, n_sides });
                }
            }
            if i == j {
                return Err(Error::SelfGlued(i));
            }
            for side in [i, j] {
                if partner[side] != usize::MAX {
                    return Err(Error::DuplicateGlue(side));
                }
            }
            partner[i] = j;
            partner[j] = i;
        }
        if let Some(side) = partner.iter().position(|&p| p == usize::MAX) {
            return Err(Error::UnpairedSide(side));
        }
        Ok(Self { partner })
    }

    /// Builds a pairing from the full partner table `partner[i]`.
    pub fn from_partner_table(partner: Vec<usize>) -> Result<Self> {
        let n = partner.len();
        let pairs: Vec<(usize, usize)> = partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j || j >= n)
            .map(|(i, &j)| (i, j))
            .collect();
        let built = Self::from_pairs(n, &pairs)?;
        if built.partner != partner {
            return Err(Error::Inconsistent("partner table is not an involution".into()));
        }
        Ok(built)
    }

    pub fn n_sides(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, side: usize) -> usize {
        self.partner[side]
    }

    /// Unordered pairs `(i, j)` with `i < j`, sorted by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n_sides())
            .filter(|&i| i < self.partner[i])
            .map(|i| (i, self.partner[i]))
            .collect()
    }
}

/// The quotient surface of a glued polygon together with its derived invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolygonSurface {
    pairing: EdgePairing,
    vertex_cycles: Vec<Vec<usize>>,
    genus: usize,
    euler_char: i64,
}

impl PolygonSurface {
    pub fn new(pairing: EdgePairing) -> Result<Self> {
        let vertex_cycles = vertex_cycles(&pairing);
        let euler_char = vertex_cycles.len() as i64 - pairing.n_sides() as i64 / 2 + 1;
        if euler_char.is_odd() {
            return Err(Error::OddEulerCharacteristic(euler_char));
        }
        let genus = (2 - euler_char) / 2;
        Ok(Self { pairing, vertex_cycles, genus: genus as usize, euler_char })
    }

    pub fn from_pairs(n_sides: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(EdgePairing::from_pairs(n_sides, pairs)?)
    }

    /// The `(4g + 2)`-gon with opposite sides identified.
    pub fn standard(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { genus, required: 1 });
        }
        let n = 4 * genus + 2;
        let half = 2 * genus + 1;
        let pairs: Vec<(usize, usize)> = (0..half).map(|i| (i, i + half)).collect();
        Self::from_pairs(n, &pairs)
    }

    pub fn pairing(&self) -> &EdgePairing {
        &self.pairing
    }

    pub fn n_sides(&self) -> usize {
        self.pairing.n_sides()
    }

    pub fn partner(&self, side: usize) -> usize {
        self.pairing.partner(side)
    }

    pub fn vertex_cycles(&self) -> &[Vec<usize>] {
        &self.vertex_cycles
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn euler_char(&self) -> i64 {
        self.euler_char
    }

    pub fn require_genus(&self, required: usize) -> Result<()> {
        if self.genus < required {
            return Err(Error::GenusTooSmall { genus: self.genus, required });
        }
        Ok(())
    }

    /// True when shifting every side index by `shift` commutes with the gluing.
    pub fn is_rotation_shift(&self, shift: usize) -> bool {
        let n = self.n_sides();
        (0..n).all(|i| self.partner((i + shift) % n) == (self.partner(i) + shift) % n)
    }

    /// All gluing-preserving rotation shifts, in increasing order. Always contains 0.
    pub fn rotation_shifts(&self) -> Vec<usize> {
        (0..self.n_sides()).filter(|&s| self.is_rotation_shift(s)).collect()
    }

    /// Orders `n / gcd(n, s)` of the available rotations, sorted and deduplicated.
    pub fn rotation_orders(&self) -> Vec<usize> {
        let n = self.n_sides();
        let mut orders: Vec<usize> =
            self.rotation_shifts().iter().map(|&s| n / n.gcd(&s)).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }

    /// Parses the `polygon <n>` / `glue <i> <j>` text format.
    pub fn parse(input: &str) -> Result<Self> {
        let lines = text::lines(input);
        let mut n_sides = None;
        let mut pairs = Vec::new();
        for line in &lines {
            match line.words[0] {
                "polygon" => {
                    text::expect_arity(line, 2)?;
                    if n_sides.is_some() {
                        return Err(text::parse_err(line.number, "duplicate `polygon` line"));
                    }
                    n_sides = Some(text::parse_usize(line, 1)?);
                }
                "glue" => {
                    text::expect_arity(line, 3)?;
                    if n_sides.is_none() {
                        return Err(text::parse_err(line.number, "`glue` before `polygon`"));
                    }
                    pairs.push((text::parse_usize(line, 1)?, text::parse_usize(line, 2)?));
                }
                other => {
                    return Err(text::parse_err(line.number, format!("unknown keyword `{other}`")))
                }
            }
        }
        let n = n_sides.ok_or_else(|| text::parse_err(0, "missing `polygon` line"))?;
        Self::from_pairs(n, &pairs)
    }

    /// Serializes to the surface text format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PolygonSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "polygon {}", self.n_sides())?;
        for (i, j) in self.pairing.pairs() {
            writeln!(f, "glue {i} {j}")?;
        }
        Ok(())
    }
}

/// Partitions the polygon corners into the classes identified by the gluing.
///
/// Corner `i` is the start of side `i` and the end of side `i - 1`; the end of
/// side `i - 1` is glued to the start of its partner, so corner `i` is
/// identified with corner `partner(i - 1)`. The cycles of that permutation are
/// the vertices of the quotient surface.
pub fn vertex_cycles(pairing: &EdgePairing) -> Vec<Vec<usize>> {
    let n = pairing.n_sides();
    let step = |c: usize| pairing.partner((c + n - 1) % n);
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            cycle.push(c);
            c = step(c);
        }
        cycles.push(cycle);
    }
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> PolygonSurface {
        PolygonSurface::from_pairs(4, &[(0, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn bigon_is_a_sphere() {
        let s = PolygonSurface::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(s.vertex_cycles().len(), 2);
        assert_eq!(s.genus(), 0);
        assert_eq!(s.euler_char(), 2);
    }

    #[test]
    fn square_torus() {
        let s = torus();
        assert_eq!(s.vertex_cycles().len(), 1);
        assert_eq!(s.genus(), 1);
        assert_eq!(s.rotation_shifts(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn fourteen_gon() {
        let s = PolygonSurface::standard(3).unwrap();
        assert_eq!(s.n_sides(), 14);
        assert_eq!(s.partner(0), 7);
        assert_eq!(s.vertex_cycles().len(), 2);
        assert_eq!(s.genus(), 3);
        assert_eq!(s.rotation_shifts(), (0..14).collect::<Vec<_>>());
        assert_eq!(s.rotation_orders(), vec![1, 2, 7, 14]);
    }

    #[test]
    fn genus_two_octagon() {
        let s = PolygonSurface::from_pairs(8, &[(0, 2), (1, 3), (4, 6), (5, 7)]).unwrap();
        assert_eq!(s.genus(), 2);
        assert_eq!(s.rotation_shifts(), vec![0, 4]);
    }

    #[test]
    fn small_standard_surfaces() {
        let hex = PolygonSurface::standard(1).unwrap();
        assert_eq!((hex.n_sides(), hex.genus()), (6, 1));
        let s4 = PolygonSurface::standard(4).unwrap();
        assert_eq!((s4.n_sides(), s4.genus(), s4.vertex_cycles().len()), (18, 4, 2));
        assert!(PolygonSurface::standard(0).is_err());
    }

    #[test]
    fn rejects_bad_pairings() {
        assert_eq!(PolygonSurface::from_pairs(3, &[]), Err(Error::OddPolygon(3)));
        assert_eq!(PolygonSurface::from_pairs(4, &[(0, 0), (1, 3)]), Err(Error::SelfGlued(0)));
        assert_eq!(
            PolygonSurface::from_pairs(4, &[(0, 1), (1, 2)]),
            Err(Error::DuplicateGlue(1))
        );
        assert_eq!(
            PolygonSurface::from_pairs(4, &[(0, 4), (1, 2)]),
            Err(Error::SideOutOfRange { side: 4, n_sides: 4 })
        );
        assert_eq!(PolygonSurface::from_pairs(4, &[(0, 1)]), Err(Error::UnpairedSide(2)));
    }

    #[test]
    fn text_format_round_trip() {
        let s = PolygonSurface::standard(2).unwrap();
        let back = PolygonSurface::parse(&s.to_text()).unwrap();
        assert_eq!(back, s);
        let commented = "# torus\npolygon 4\nglue 0 2 # a\nglue 3 1\n";
        assert_eq!(PolygonSurface::parse(commented).unwrap(), torus());
        assert!(PolygonSurface::parse("polygon 4\nglue 0 0\nglue 1 3\n").is_err());
        assert!(PolygonSurface::parse("polygon 4\nglue 0 2\nglue 0 2\nglue 1 3\n").is_err());
        assert!(PolygonSurface::parse("glue 0 2\n").is_err());
    }
}
