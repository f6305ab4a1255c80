//! Witnesses for a periodic map moving a nonseparating curve off itself.
//!
//! A witness is a curve `c` and a power `k` such that `c` and `φ^k(c)` are
//! disjoint, not isotopic, nonseparating, and do not form a bounding pair.
//! Each of these is recomputed from scratch and reported with its evidence.

use std::fmt;

use num_rational::Ratio;

use crate::curve::{glue_point, BoundaryPoint, CurveDiagram};
use crate::cut::{cut_along, is_bounding_pair, is_parallel};
use crate::error::{Error, Result};
use crate::homology::HomologyBasis;
use crate::intersection::{drawn_crossings, minimal_position};
use crate::rotation::RotationMap;
use crate::surface::PolygonSurface;
use crate::symplectic::{IntMatrix, SymplecticMatrix};
use crate::text;

pub const INTERSECTION_ZERO: &str = "intersection_zero";
pub const NOT_PARALLEL: &str = "not_parallel";
pub const NONSEPARATING: &str = "nonseparating";
pub const NOT_BOUNDING_PAIR: &str = "not_bounding_pair";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub name: &'static str,
    pub passed: bool,
    /// Whether the certificate counts towards acceptance.
    pub required: bool,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub items: Vec<Certificate>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|c| c.passed || !c.required)
    }

    pub fn get(&self, name: &str) -> Option<&Certificate> {
        self.items.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.items.iter().filter(|c| c.required && !c.passed).map(|c| c.name).collect()
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.items {
            let status = match (c.passed, c.required) {
                (true, _) => "pass",
                (false, true) => "FAIL",
                (false, false) => "info",
            };
            writeln!(f, "{status} {}: {}", c.name, c.evidence)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremWitness {
    pub curve: CurveDiagram,
    pub k: usize,
    pub certificates: CertificateReport,
}

/// Everything needed to re-check a witness: surface, rotation, curve, power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub surface: PolygonSurface,
    pub rotation: RotationMap,
    pub curve: CurveDiagram,
    pub k: usize,
}

impl WitnessFile {
    pub fn parse(input: &str) -> Result<Self> {
        let lines = text::lines(input);
        let first = lines.first().ok_or_else(|| text::parse_err(0, "empty witness file"))?;
        if first.words.join(" ") != text::HEADER {
            return Err(text::parse_err(first.number, format!("expected header `{}`", text::HEADER)));
        }
        let mut rest = &lines[1..];
        let mut surface_lines = String::new();
        while let Some(line) = rest.first() {
            if line.words[0] != "polygon" && line.words[0] != "glue" {
                break;
            }
            surface_lines.push_str(&line.words.join(" "));
            surface_lines.push('\n');
            rest = &rest[1..];
        }
        let surface = PolygonSurface::parse(&surface_lines)
            .map_err(|e| text::parse_err(lines[0].number + 1, e.to_string()))?;
        let shift_line = rest.first().ok_or_else(|| text::parse_err(0, "missing `shift` line"))?;
        if shift_line.words[0] != "shift" {
            return Err(text::parse_err(shift_line.number, "expected `shift <s>`"));
        }
        text::expect_arity(shift_line, 2)?;
        let rotation = RotationMap::new(&surface, text::parse_usize(shift_line, 1)?)
            .map_err(|e| text::parse_err(shift_line.number, e.to_string()))?;
        let (curve, rest) = CurveDiagram::parse_lines(&surface, &rest[1..])?;
        let power_line = rest.first().ok_or_else(|| text::parse_err(0, "missing `power` line"))?;
        if power_line.words[0] != "power" {
            return Err(text::parse_err(power_line.number, "expected `power <k>`"));
        }
        text::expect_arity(power_line, 2)?;
        let k = text::parse_usize(power_line, 1)?;
        if let Some(extra) = rest.get(1) {
            return Err(text::parse_err(extra.number, "trailing input after `power`"));
        }
        Ok(Self { surface, rotation, curve, k })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for WitnessFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", text::HEADER)?;
        write!(f, "{}", self.surface)?;
        writeln!(f, "shift {}", self.rotation.shift())?;
        write!(f, "{}", self.curve)?;
        writeln!(f, "power {}", self.k)
    }
}

/// Whether `(4g + 2)/d + 3 ≤ (4g + 2)/2`.
pub fn inequality_holds(genus: usize, order: usize) -> Result<bool> {
    let n = 4 * genus + 2;
    if genus < 3 {
        return Err(Error::GenusTooSmall { genus, required: 3 });
    }
    if order < 2 {
        return Err(Error::Precondition(format!("order {order} must be at least 2")));
    }
    if n % order != 0 {
        return Err(Error::OrderDoesNotDivide { order, n_sides: n });
    }
    Ok(n / order + 3 <= n / 2)
}

/// The two-chord curve on the standard `(4g + 2)`-gon: from the first quarter
/// of side 0 to the last quarter of side 2, then from the first quarter of
/// side `2g + 3` around side `2g + 2` to the last quarter of side `2g + 1`.
pub fn standard_curve(surface: &PolygonSurface) -> Result<CurveDiagram> {
    let g = surface.genus();
    if surface.n_sides() != 4 * g + 2 || surface.partner(0) != 2 * g + 1 {
        return Err(Error::Precondition("expected the standard (4g+2)-gon".into()));
    }
    surface.require_genus(2)?;
    let c = CurveDiagram::from_exits(surface, &[BoundaryPoint::at(2, 3, 4), BoundaryPoint::at(2 * g + 1, 3, 4)])?;
    c.check_simple()?;
    Ok(c)
}

/// Shared context for certifying many candidates against one rotation.
pub struct Certifier<'a> {
    surface: &'a PolygonSurface,
    rotation: RotationMap,
    basis: HomologyBasis,
    action: SymplecticMatrix,
    /// The rotation acts as `-I`; then every disjoint distinct image is homologous
    /// to the curve up to sign, so the bounding-pair certificate is informational.
    bounding_exempt: bool,
}

impl<'a> Certifier<'a> {
    pub fn new(surface: &'a PolygonSurface, rotation: &RotationMap) -> Result<Self> {
        if rotation.n_sides() != surface.n_sides() {
            return Err(Error::Dimension { expected: surface.n_sides(), got: rotation.n_sides() });
        }
        let basis = HomologyBasis::new(surface)?;
        let action = rotation.homology_action(&basis)?;
        let minus = IntMatrix::identity(2 * surface.genus()).scale(-1);
        let bounding_exempt = surface.genus() > 0 && action.matrix() == &minus;
        Ok(Self { surface, rotation: rotation.clone(), basis, action, bounding_exempt })
    }

    pub fn bounding_exempt(&self) -> bool {
        self.bounding_exempt
    }

    pub fn basis(&self) -> &HomologyBasis {
        &self.basis
    }

    /// Cheap necessary conditions from homology: `[c] ≠ 0` and `⟨[c], Φ^k[c]⟩ = 0`.
    pub fn homology_allows(&self, curve: &CurveDiagram, k: usize) -> bool {
        let c = self.basis.class(curve);
        !c.is_zero() && c.pairing(&self.action.pow(k as i64).apply(&c)) == 0
    }

    pub fn certify(&self, curve: &CurveDiagram, k: usize) -> Result<CertificateReport> {
        let s = self.surface;
        curve.check_simple()?;
        let image = self.rotation.power(k as i64).apply(curve);
        image.check_simple()?;

        let mut nonsep = Vec::new();
        for c in [curve, &image] {
            let by_cut = cut_along(s, &[c])?.is_connected();
            let by_homology = !self.basis.class(c).is_zero();
            if by_cut != by_homology {
                return Err(Error::Inconsistent(format!(
                    "separation test disagrees: cut says {by_cut}, homology says {by_homology}"
                )));
            }
            nonsep.push(by_cut);
        }
        let both_nonsep = nonsep.iter().all(|&b| b);
        let class = self.basis.class(curve);
        let nonsep_cert = Certificate {
            name: NONSEPARATING,
            passed: both_nonsep,
            required: true,
            evidence: format!(
                "c {}, image {}; [c] = {}",
                if nonsep[0] { "connected complement" } else { "separates" },
                if nonsep[1] { "connected complement" } else { "separates" },
                class
            ),
        };

        let drawn = drawn_crossings(s, curve, &image)?;
        let mp = minimal_position(s, curve, &image)?;
        let i = mp.crossings;
        let int_cert = Certificate {
            name: INTERSECTION_ZERO,
            passed: i == 0,
            required: true,
            evidence: format!("{drawn} crossings drawn, {} bigons removed, i = {i}", mp.bigons_removed),
        };

        let parallel_cert = if i == 0 {
            let parallel = is_parallel(s, curve, &image)?;
            Certificate {
                name: NOT_PARALLEL,
                passed: !parallel,
                required: true,
                evidence: if parallel {
                    "c and its image cobound an annulus".into()
                } else {
                    "no annulus between c and its image".into()
                },
            }
        } else {
            Certificate { name: NOT_PARALLEL, passed: true, required: true, evidence: format!("i = {i} > 0") }
        };

        let bp_cert = if i == 0 && both_nonsep && parallel_cert.passed {
            let bp = is_bounding_pair(s, curve, &image)?;
            let image_class = self.basis.class(&image);
            Certificate {
                name: NOT_BOUNDING_PAIR,
                passed: !bp,
                required: !self.bounding_exempt,
                evidence: format!(
                    "[image] = {image_class}, cut along both: {}{}",
                    if bp { "two components" } else { "connected" },
                    if self.bounding_exempt { " (rotation acts as -I on homology)" } else { "" }
                ),
            }
        } else {
            Certificate {
                name: NOT_BOUNDING_PAIR,
                passed: !(i == 0 && both_nonsep && !parallel_cert.passed),
                required: !self.bounding_exempt,
                evidence: "not a disjoint distinct nonseparating pair".into(),
            }
        };

        Ok(CertificateReport { items: vec![int_cert, parallel_cert, nonsep_cert, bp_cert] })
    }

    /// Smallest `1 ≤ k < order` passing every required certificate.
    pub fn minimal_power(&self, curve: &CurveDiagram) -> Result<Option<TheoremWitness>> {
        self.minimal_power_where(curve, |_| true)
    }

    fn minimal_power_where(
        &self,
        curve: &CurveDiagram,
        extra: impl Fn(&CurveDiagram) -> bool,
    ) -> Result<Option<TheoremWitness>> {
        for k in 1..self.rotation.order() {
            if !self.homology_allows(curve, k) {
                continue;
            }
            let image = self.rotation.power(k as i64).apply(curve);
            if !extra(&image) {
                continue;
            }
            let report = self.certify(curve, k)?;
            if report.passed() {
                return Ok(Some(TheoremWitness { curve: curve.clone(), k, certificates: report }));
            }
        }
        Ok(None)
    }
}

/// Recomputes every certificate of a witness.
pub fn verify_witness(file: &WitnessFile) -> Result<CertificateReport> {
    Certifier::new(&file.surface, &file.rotation)?.certify(&file.curve, file.k)
}

/// The standard surface of genus `g`, its rotation of order `d` (or the given
/// shift), and the certified witness built from [`standard_curve`].
pub fn construct_standard(
    genus: usize,
    order: usize,
    shift: Option<usize>,
) -> Result<(PolygonSurface, RotationMap, TheoremWitness)> {
    if order < 3 {
        return Err(Error::Precondition(format!("order {order} must be at least 3")));
    }
    if !inequality_holds(genus, order)? {
        return Err(Error::Precondition(format!(
            "(4g+2)/d + 3 > (4g+2)/2 for g = {genus}, d = {order}"
        )));
    }
    let surface = PolygonSurface::standard(genus)?;
    let rotation = match shift {
        Some(s) => {
            let r = RotationMap::new(&surface, s)?;
            if r.order() != order {
                return Err(Error::Precondition(format!("shift {s} has order {}, not {order}", r.order())));
            }
            r
        }
        None => RotationMap::from_order(&surface, order)?,
    };
    let curve = standard_curve(&surface)?;
    let witness = Certifier::new(&surface, &rotation)?
        .minimal_power(&curve)?
        .ok_or_else(|| Error::NoCertifiedPower(format!("g = {genus}, d = {order}")))?;
    Ok((surface, rotation, witness))
}

/// Side indices of the two halves used by [`construct_general`].
///
/// With `n/2` even the cut runs through corners 0 and `n/2`; with `n/2` odd it
/// runs through the midpoints of sides 0 and `n/2`, which belong to neither half.
pub fn halves(n_sides: usize) -> (Vec<usize>, Vec<usize>) {
    let h = n_sides / 2;
    if h % 2 == 0 {
        ((0..h).collect(), (h..n_sides).collect())
    } else {
        ((1..h).collect(), (h + 1..n_sides).collect())
    }
}

/// Witness for a polygon in which some side is glued to a side in its own half.
pub fn construct_general(surface: &PolygonSurface, rotation: &RotationMap) -> Result<TheoremWitness> {
    if rotation.is_identity() {
        return Err(Error::IdentityRotation);
    }
    let (left, right) = halves(surface.n_sides());
    let mut any_pair = false;
    let mut chosen = None;
    'halves: for half in [&left, &right] {
        for (x, &e1) in half.iter().enumerate() {
            let Some(y) = half.iter().position(|&s| s == surface.partner(e1)) else { continue };
            if y <= x {
                continue;
            }
            any_pair = true;
            let inner = &half[x + 1..y];
            let minimal = inner.iter().all(|&s| !inner.contains(&surface.partner(s)));
            if minimal && y > x + 1 {
                chosen = Some((e1, half[y], half.clone()));
                break 'halves;
            }
        }
    }
    if !any_pair {
        return Err(Error::NoSameHalfPair);
    }
    let (e1, _e2, half) = chosen.ok_or(Error::AdjacentOnly)?;
    let curve = CurveDiagram::from_exits(surface, &[BoundaryPoint::at(e1, 1, 2)])?;
    let certifier = Certifier::new(surface, rotation)?;
    let other_half = |c: &CurveDiagram| c.points().iter().all(|p| !half.contains(&p.side));
    certifier
        .minimal_power_where(&curve, other_half)?
        .ok_or_else(|| Error::NoCertifiedPower(format!("single chord through side {e1}")))
}

/// Enumerates chord diagrams with at most `max_chords` chords and exits on the
/// grid `t = j/(grid + 1)`, returning the first curve and power passing every
/// certificate.
///
/// Curves are listed by chord count, then lexicographically by exit sequence,
/// using only the rotation of each cyclic sequence that starts with its
/// smallest exit.
pub fn brute_force_search(
    surface: &PolygonSurface,
    rotation: &RotationMap,
    max_chords: usize,
    grid: usize,
) -> Result<Option<TheoremWitness>> {
    if max_chords == 0 || grid == 0 {
        return Err(Error::Precondition("max_chords and grid must be positive".into()));
    }
    if rotation.is_identity() {
        return Ok(None);
    }
    let certifier = Certifier::new(surface, rotation)?;
    let mut options = Vec::new();
    for side in 0..surface.n_sides() {
        for j in 1..=grid {
            options.push(BoundaryPoint { side, t: Ratio::new(j as i64, grid as i64 + 1) });
        }
    }
    for m in 1..=max_chords {
        let mut prefix = Vec::with_capacity(m);
        if let Some(w) = search_level(surface, &certifier, &options, m, &mut prefix)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn search_level(
    surface: &PolygonSurface,
    certifier: &Certifier<'_>,
    options: &[BoundaryPoint],
    m: usize,
    prefix: &mut Vec<usize>,
) -> Result<Option<TheoremWitness>> {
    if prefix.len() == m {
        if !is_canonical_rotation(prefix) {
            return Ok(None);
        }
        let exits: Vec<BoundaryPoint> = prefix.iter().map(|&i| options[i]).collect();
        let curve = CurveDiagram::from_exits(surface, &exits)?;
        if !curve.is_simple() {
            return Ok(None);
        }
        return certifier.minimal_power(&curve);
    }
    let start = prefix.first().copied().unwrap_or(0);
    for next in start..options.len() {
        if !prefix.is_empty() && !prefix_compatible(surface, options, prefix, next) {
            continue;
        }
        prefix.push(next);
        let found = search_level(surface, certifier, options, m, prefix)?;
        prefix.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn is_canonical_rotation(seq: &[usize]) -> bool {
    (1..seq.len()).all(|r| {
        let rotated: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
        seq <= rotated.as_slice()
    })
}

/// Checks that the chord ending at the new exit avoids the chords already fixed
/// by the prefix.
fn prefix_compatible(surface: &PolygonSurface, options: &[BoundaryPoint], prefix: &[usize], next: usize) -> bool {
    let exit = options[next];
    let entry = glue_point(surface, options[*prefix.last().unwrap()]);
    let new = (entry.value(), exit.value());
    if new.0 == new.1 {
        return false;
    }
    for w in prefix.windows(2) {
        let a = glue_point(surface, options[w[0]]).value();
        let b = options[w[1]].value();
        if a == new.0 || a == new.1 || b == new.0 || b == new.1 {
            return false;
        }
        if crate::curve::chords_interleave(a, b, new.0, new.1) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequality_examples() {
        assert!(inequality_holds(3, 7).unwrap());
        assert!(inequality_holds(4, 3).unwrap());
        assert!(!inequality_holds(3, 2).unwrap());
        assert_eq!(inequality_holds(3, 3), Err(Error::OrderDoesNotDivide { order: 3, n_sides: 14 }));
    }

    #[test]
    fn standard_curve_is_simple_and_nonseparating() {
        for g in 3..=5 {
            let s = PolygonSurface::standard(g).unwrap();
            let c = standard_curve(&s).unwrap();
            assert_eq!(c.n_chords(), 2);
            assert!(crate::cut::is_nonseparating(&s, &c).unwrap());
        }
    }

    #[test]
    fn canonical_rotations() {
        assert!(is_canonical_rotation(&[1, 2, 3]));
        assert!(!is_canonical_rotation(&[2, 1, 3]));
        assert!(is_canonical_rotation(&[1, 1]));
    }

    #[test]
    fn witness_file_round_trip() {
        let (s, r, w) = construct_standard(3, 7, None).unwrap();
        let file = WitnessFile { surface: s, rotation: r, curve: w.curve, k: w.k };
        assert_eq!(WitnessFile::parse(&file.to_text()).unwrap(), file);
        assert!(WitnessFile::parse("polygon 4\n").is_err());
    }

    #[test]
    fn halves_follow_the_parity_convention() {
        assert_eq!(halves(8), ((0..4).collect(), (4..8).collect()));
        assert_eq!(halves(14), ((1..7).collect(), (8..14).collect()));
    }
}
