//! First homology of a glued polygon in symplectic coordinates.
//!
//! For every glued pair of sides `{i, j}`, `i < j`, the edge loop is the chord
//! entering through side `j` and leaving through side `i` at their midpoints.
//! The edge loops generate `H_1`; a curve is written in them by counting its
//! passages through each pair of sides. A symplectic basis is extracted from
//! the intersection form on the edge loops.

use crate::curve::{BoundaryPoint, CurveDiagram};
use crate::error::{Error, Result};
use crate::intersection::algebraic_intersection;
use crate::surface::PolygonSurface;
use crate::symplectic::{symplectic_reduce, HomologyVector};

#[derive(Debug, Clone)]
pub struct HomologyBasis {
    genus: usize,
    pairs: Vec<(usize, usize)>,
    /// Pair index of every side.
    pair_of_side: Vec<usize>,
    form: Vec<Vec<i64>>,
    /// Symplectic pairs `(u_k, v_k)` in edge-loop coordinates.
    basis: Vec<(Vec<i64>, Vec<i64>)>,
}

impl HomologyBasis {
    pub fn new(surface: &PolygonSurface) -> Result<Self> {
        let pairs = surface.pairing().pairs();
        let mut pair_of_side = vec![0; surface.n_sides()];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            pair_of_side[i] = k;
            pair_of_side[j] = k;
        }
        let loops: Vec<CurveDiagram> =
            (0..pairs.len()).map(|k| edge_loop(surface, pairs[k])).collect::<Result<_>>()?;
        let r = pairs.len();
        let mut form = vec![vec![0i64; r]; r];
        for p in 0..r {
            for q in p + 1..r {
                let v = algebraic_intersection(surface, &loops[p], &loops[q])?;
                form[p][q] = v;
                form[q][p] = -v;
            }
        }
        let gens: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let (basis, _radical) = symplectic_reduce(gens, form.clone())?;
        if basis.len() != surface.genus() {
            return Err(Error::Inconsistent(format!(
                "found {} symplectic pairs on a genus {} surface",
                basis.len(),
                surface.genus()
            )));
        }
        Ok(Self { genus: surface.genus(), pairs, pair_of_side, form, basis })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn side_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Algebraic intersections of the edge loops.
    pub fn intersection_form(&self) -> &[Vec<i64>] {
        &self.form
    }

    fn form_pairing(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut total = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                total += xi * self.form[i][j] * yj;
            }
        }
        total
    }

    /// Symplectic coordinates of a class given in edge-loop coordinates.
    pub fn coordinates(&self, x: &[i64]) -> HomologyVector {
        let mut out = Vec::with_capacity(2 * self.genus);
        for (u, v) in &self.basis {
            out.push(self.form_pairing(x, v));
            out.push(-self.form_pairing(x, u));
        }
        HomologyVector(out)
    }

    /// Edge-loop coordinates of the basis class `a_k` (`which = 0`) or `b_k`
    /// (`which = 1`), with `k` counted from 0.
    pub fn basis_in_loops(&self, k: usize, which: usize) -> &[i64] {
        let (u, v) = &self.basis[k];
        if which == 0 {
            u
        } else {
            v
        }
    }

    /// Signed passage counts of a curve through each glued pair of sides.
    pub fn passages(&self, curve: &CurveDiagram) -> Vec<i64> {
        let mut x = vec![0i64; self.pairs.len()];
        for (_, exit) in curve.chords() {
            let k = self.pair_of_side[exit.side];
            x[k] += if exit.side == self.pairs[k].0 { 1 } else { -1 };
        }
        x
    }

    pub fn class(&self, curve: &CurveDiagram) -> HomologyVector {
        self.coordinates(&self.passages(curve))
    }
}

/// The loop crossing the glued pair `(i, j)` once, leaving through side `i`.
pub fn edge_loop(surface: &PolygonSurface, (i, _j): (usize, usize)) -> Result<CurveDiagram> {
    CurveDiagram::from_exits(surface, &[BoundaryPoint::at(i, 1, 2)])
}

/// Homology class of a curve in the default symplectic basis of its surface.
pub fn homology_class(surface: &PolygonSurface, curve: &CurveDiagram) -> Result<HomologyVector> {
    Ok(HomologyBasis::new(surface)?.class(curve))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_pair_to_a_unimodular_form() {
        for g in 1..=4 {
            let s = PolygonSurface::standard(g).unwrap();
            let h = HomologyBasis::new(&s).unwrap();
            assert_eq!(h.genus(), g);
            for k in 0..g {
                let a = h.coordinates(h.basis_in_loops(k, 0));
                let b = h.coordinates(h.basis_in_loops(k, 1));
                assert_eq!(a, HomologyVector::basis(g, k + 1, 0));
                assert_eq!(b, HomologyVector::basis(g, k + 1, 1));
            }
        }
    }

    #[test]
    fn torus_classes_are_dual() {
        let s = PolygonSurface::from_pairs(4, &[(0, 2), (1, 3)]).unwrap();
        let h = HomologyBasis::new(&s).unwrap();
        let a = edge_loop(&s, (0, 2)).unwrap();
        let b = edge_loop(&s, (1, 3)).unwrap();
        let (ca, cb) = (h.class(&a), h.class(&b));
        assert_eq!(ca, HomologyVector(vec![1, 0]));
        assert_eq!(h.class(&b.reversed()), HomologyVector(vec![0, 1]));
        assert_eq!(ca.pairing(&cb), algebraic_intersection(&s, &a, &b).unwrap());
        assert_eq!(ca.pairing(&cb).abs(), 1);
        assert_eq!(h.class(&a.reversed()), ca.neg());
    }

    #[test]
    fn sphere_has_trivial_homology() {
        let s = PolygonSurface::from_pairs(2, &[(0, 1)]).unwrap();
        let h = HomologyBasis::new(&s).unwrap();
        let c = edge_loop(&s, (0, 1)).unwrap();
        assert!(h.class(&c).is_empty());
    }
}
