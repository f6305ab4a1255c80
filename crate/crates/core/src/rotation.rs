//! Periodic maps given by rotating the polygon.
//!
//! Rotating by `shift` sides sends `(side, t)` to `(side + shift, t)`. It
//! descends to the glued surface exactly when it commutes with the pairing.

use num_integer::Integer;

use crate::curve::{BoundaryPoint, CurveDiagram};
use crate::error::{Error, Result};
use crate::homology::HomologyBasis;
use crate::surface::PolygonSurface;
use crate::symplectic::{IntMatrix, SymplecticMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationMap {
    n_sides: usize,
    shift: usize,
}

impl RotationMap {
    pub fn new(surface: &PolygonSurface, shift: usize) -> Result<Self> {
        let n = surface.n_sides();
        let shift = shift % n;
        if !surface.is_rotation_shift(shift) {
            return Err(Error::NotARotation { shift, n_sides: n });
        }
        Ok(Self { n_sides: n, shift })
    }

    /// The rotation of order `order` with the smallest positive shift.
    pub fn from_order(surface: &PolygonSurface, order: usize) -> Result<Self> {
        let n = surface.n_sides();
        if order == 0 || n % order != 0 {
            return Err(Error::OrderDoesNotDivide { order, n_sides: n });
        }
        surface
            .rotation_shifts()
            .into_iter()
            .find(|&s| n / n.gcd(&s) == order)
            .map(|shift| Self { n_sides: n, shift })
            .ok_or(Error::NoRotationOfOrder(order))
    }

    /// Rotation by half a turn, the hyperelliptic involution on the standard polygon.
    pub fn half_turn(surface: &PolygonSurface) -> Result<Self> {
        Self::new(surface, surface.n_sides() / 2)
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn n_sides(&self) -> usize {
        self.n_sides
    }

    pub fn order(&self) -> usize {
        self.n_sides / self.n_sides.gcd(&self.shift)
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0
    }

    pub fn power(&self, k: i64) -> Self {
        let n = self.n_sides as i64;
        let shift = (k.rem_euclid(n) * self.shift as i64).rem_euclid(n) as usize;
        Self { n_sides: self.n_sides, shift }
    }

    pub fn apply_point(&self, p: BoundaryPoint) -> BoundaryPoint {
        BoundaryPoint { side: (p.side + self.shift) % self.n_sides, t: p.t }
    }

    pub fn apply(&self, curve: &CurveDiagram) -> CurveDiagram {
        CurveDiagram::from_points_unchecked(curve.points().iter().map(|&p| self.apply_point(p)).collect())
    }

    /// Matrix of the induced map on `H_1` in the given basis.
    pub fn homology_action(&self, basis: &HomologyBasis) -> Result<SymplecticMatrix> {
        let pairs = basis.side_pairs();
        let r = pairs.len();
        // Signed permutation of the edge loops.
        let mut image = vec![(0usize, 0i64); r];
        for (k, &(i, _)) in pairs.iter().enumerate() {
            let ri = (i + self.shift) % self.n_sides;
            let q = pairs
                .iter()
                .position(|&(x, y)| x == ri || y == ri)
                .expect("every side is paired");
            image[k] = (q, if pairs[q].0 == ri { 1 } else { -1 });
        }
        let push = |x: &[i64]| {
            let mut y = vec![0i64; r];
            for (k, &xk) in x.iter().enumerate() {
                let (q, sign) = image[k];
                y[q] += sign * xk;
            }
            y
        };
        let mut columns = Vec::with_capacity(2 * basis.genus());
        for k in 0..basis.genus() {
            for which in 0..2 {
                columns.push(basis.coordinates(&push(basis.basis_in_loops(k, which))).0);
            }
        }
        SymplecticMatrix::new(IntMatrix::from_columns(&columns))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::HomologyVector;

    #[test]
    fn orders_and_powers() {
        let s = PolygonSurface::standard(3).unwrap();
        let r = RotationMap::from_order(&s, 7).unwrap();
        assert_eq!(r.shift(), 2);
        assert_eq!(r.power(7).shift(), 0);
        assert_eq!(RotationMap::from_order(&s, 14).unwrap().shift(), 1);
        assert_eq!(RotationMap::from_order(&s, 3), Err(Error::OrderDoesNotDivide { order: 3, n_sides: 14 }));
        let oct = PolygonSurface::from_pairs(8, &[(0, 2), (1, 3), (4, 6), (5, 7)]).unwrap();
        assert_eq!(RotationMap::from_order(&oct, 8), Err(Error::NoRotationOfOrder(8)));
        assert!(RotationMap::new(&oct, 1).is_err());
    }

    #[test]
    fn half_turn_acts_as_minus_identity() {
        for g in 1..=4 {
            let s = PolygonSurface::standard(g).unwrap();
            let h = HomologyBasis::new(&s).unwrap();
            let m = RotationMap::half_turn(&s).unwrap().homology_action(&h).unwrap();
            let minus = IntMatrix::identity(2 * g).scale(-1);
            assert_eq!(m.matrix(), &minus);
        }
    }

    #[test]
    fn action_has_the_rotation_order() {
        let s = PolygonSurface::standard(3).unwrap();
        let h = HomologyBasis::new(&s).unwrap();
        for order in [2, 7, 14] {
            let m = RotationMap::from_order(&s, order).unwrap().homology_action(&h).unwrap();
            assert_eq!(m.order(100), Some(order));
        }
    }

    #[test]
    fn action_matches_rotated_curves() {
        let s = PolygonSurface::standard(2).unwrap();
        let h = HomologyBasis::new(&s).unwrap();
        let c = CurveDiagram::from_exits(&s, &[BoundaryPoint::at(2, 3, 4), BoundaryPoint::at(5, 3, 4)]).unwrap();
        for shift in 0..10 {
            let r = RotationMap::new(&s, shift).unwrap();
            let m = r.homology_action(&h).unwrap();
            assert_eq!(m.apply(&h.class(&c)), h.class(&r.apply(&c)));
        }
        assert_ne!(h.class(&c), HomologyVector::zero(2));
    }
}
