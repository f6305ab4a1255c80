//! Topology of the surface cut along disjoint simple closed curves.

use crate::arrangement::Arrangement;
use crate::curve::CurveDiagram;
use crate::error::{Error, Result};
use crate::homology::HomologyBasis;
use crate::intersection::minimal_position;
use crate::surface::PolygonSurface;

/// One connected piece of a cut surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutComponent {
    pub genus: usize,
    pub euler_char: i64,
    /// For each boundary circle, the index of the curve it comes from.
    pub boundary_curves: Vec<usize>,
}

impl CutComponent {
    pub fn is_annulus(&self) -> bool {
        self.genus == 0 && self.boundary_curves.len() == 2
    }

    pub fn is_disk(&self) -> bool {
        self.genus == 0 && self.boundary_curves.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutProfile {
    pub components: Vec<CutComponent>,
}

impl CutProfile {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Cuts along pairwise disjoint simple closed curves.
pub fn cut_along(surface: &PolygonSurface, curves: &[&CurveDiagram]) -> Result<CutProfile> {
    for c in curves {
        c.check_simple()?;
    }
    let arr = Arrangement::build(surface, curves)?;
    if !arr.crossings.is_empty() {
        return Err(Error::CrossingCurves(arr.crossings.len()));
    }
    let mut components = Vec::with_capacity(arr.components.len());
    for comp in &arr.components {
        let genus = comp.genus();
        if genus < 0 {
            return Err(Error::Inconsistent("negative genus in cut surface".into()));
        }
        let boundary_curves = comp
            .boundaries
            .iter()
            .map(|b| match b.curves.as_slice() {
                [c] => Ok(*c),
                _ => Err(Error::Inconsistent("boundary circle made of several curves".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        components.push(CutComponent { genus: genus as usize, euler_char: comp.euler_char, boundary_curves });
    }
    Ok(CutProfile { components })
}

pub fn is_nonseparating(surface: &PolygonSurface, curve: &CurveDiagram) -> Result<bool> {
    Ok(cut_along(surface, &[curve])?.is_connected())
}

/// A curve is essential unless it bounds a disk.
pub fn is_essential(surface: &PolygonSurface, curve: &CurveDiagram) -> Result<bool> {
    Ok(!cut_along(surface, &[curve])?.components.iter().any(CutComponent::is_disk))
}

/// Both curves put into minimal position; fails if they cannot be made disjoint.
fn disjoint_pair(
    surface: &PolygonSurface,
    a: &CurveDiagram,
    b: &CurveDiagram,
) -> Result<(CurveDiagram, CurveDiagram)> {
    let mp = minimal_position(surface, a, b)?;
    if mp.crossings != 0 {
        return Err(Error::CrossingCurves(mp.crossings));
    }
    Ok((mp.first, mp.second))
}

/// True when the two curves are disjoint up to isotopy and cobound an annulus.
pub fn is_parallel(surface: &PolygonSurface, a: &CurveDiagram, b: &CurveDiagram) -> Result<bool> {
    let mp = minimal_position(surface, a, b)?;
    if mp.crossings != 0 {
        return Ok(false);
    }
    let profile = cut_along(surface, &[&mp.first, &mp.second])?;
    Ok(profile.components.iter().any(|c| {
        let mut bs = c.boundary_curves.clone();
        bs.sort_unstable();
        c.is_annulus() && bs == [0, 1]
    }))
}

/// True when the curves are disjoint, non-isotopic, nonseparating, and
/// separate the surface together.
///
/// Decided twice, from the cut surface and from homology (`[a] = ±[b]`);
/// disagreement is reported as an error.
pub fn is_bounding_pair(surface: &PolygonSurface, a: &CurveDiagram, b: &CurveDiagram) -> Result<bool> {
    let (a, b) = disjoint_pair(surface, a, b)?;
    if !is_nonseparating(surface, &a)? || !is_nonseparating(surface, &b)? || is_parallel(surface, &a, &b)? {
        return Ok(false);
    }
    let by_cut = cut_along(surface, &[&a, &b])?.n_components() == 2;
    let h = HomologyBasis::new(surface)?;
    let (ca, cb) = (h.class(&a), h.class(&b));
    let by_homology = ca == cb || ca == cb.neg();
    if by_cut != by_homology {
        return Err(Error::Inconsistent(format!(
            "bounding-pair test disagrees: cut says {by_cut}, homology says {by_homology}"
        )));
    }
    Ok(by_cut)
}
