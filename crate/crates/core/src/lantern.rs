//! The lantern relation and the six-conjugate factorization on homology.
//!
//! Twists act as transvections and periodic maps through their action on
//! `H_1`. Equality here is a necessary condition only: matrices that agree in
//! `Sp(2g, Z)` may still differ by a Torelli element.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rotation::RotationMap;
use crate::surface::PolygonSurface;
use crate::symplectic::{symplectic_completion, transvection, HomologyVector, IntMatrix, SymplecticMatrix};
use crate::theorem1::{Certifier, TheoremWitness};
use crate::word::{
    conjugate_census, conjugate_decomposition, lantern_sides, lantern_sides_product_form, theorem14_word,
    GeneratorKind, LanternLabels, McgWord, Theorem14Symbols,
};

/// Images of the word generators: twist labels to classes, symbols to matrices.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    pub genus: usize,
    pub twists: BTreeMap<String, HomologyVector>,
    pub symbols: BTreeMap<String, SymplecticMatrix>,
}

impl Assignment {
    pub fn new(genus: usize) -> Self {
        Self { genus, ..Self::default() }
    }
}

/// Left-to-right product of the generator images.
pub fn evaluate_word(w: &McgWord, assignment: &Assignment) -> Result<SymplecticMatrix> {
    let mut acc = SymplecticMatrix::identity(assignment.genus);
    for g in w.letters() {
        let m = match &g.kind {
            GeneratorKind::Twist(l) => {
                let v = assignment.twists.get(l).ok_or_else(|| Error::Unassigned(l.clone()))?;
                if v.genus() != assignment.genus {
                    return Err(Error::Dimension { expected: 2 * assignment.genus, got: v.len() });
                }
                transvection(v)
            }
            GeneratorKind::Sym(l) => {
                let m = assignment.symbols.get(l).ok_or_else(|| Error::Unassigned(l.clone()))?;
                if m.genus() != assignment.genus {
                    return Err(Error::Dimension { expected: 2 * assignment.genus, got: 2 * m.genus() });
                }
                m.clone()
            }
        };
        let m = if g.exponent < 0 { m.inverse() } else { m };
        acc = acc.compose(&m);
    }
    Ok(acc)
}

/// Classes of the lantern curves in the standard basis:
/// `α1 = a1`, `α2 = a2`, `x1 = a3`, `γ1 = a1 + a2`, `x3 = a2 + a3`,
/// `x2 = a1 + a3`, `γ2 = a1 + a2 + a3`.
pub fn lantern_homology_classes(genus: usize, labels: &LanternLabels) -> Result<BTreeMap<String, HomologyVector>> {
    if genus < 3 {
        return Err(Error::GenusTooSmall { genus, required: 3 });
    }
    labels.validate()?;
    let a = |i| HomologyVector::basis(genus, i, 0);
    let entries = [
        (&labels.alpha1, a(1)),
        (&labels.alpha2, a(2)),
        (&labels.x1, a(3)),
        (&labels.gamma1, a(1).add(&a(2))),
        (&labels.x3, a(2).add(&a(3))),
        (&labels.x2, a(1).add(&a(3))),
        (&labels.gamma2, a(1).add(&a(2)).add(&a(3))),
    ];
    Ok(entries.into_iter().map(|(l, v)| (l.clone(), v)).collect())
}

/// Both forms of the lantern relation hold exactly under the given classes.
pub fn verify_lantern_with(
    genus: usize,
    classes: &BTreeMap<String, HomologyVector>,
    labels: &LanternLabels,
) -> Result<bool> {
    let assignment = Assignment { genus, twists: classes.clone(), symbols: BTreeMap::new() };
    for (left, right) in [lantern_sides(labels)?, lantern_sides_product_form(labels)?] {
        if evaluate_word(&left, &assignment)? != evaluate_word(&right, &assignment)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_lantern_homology(genus: usize) -> Result<bool> {
    let labels = LanternLabels::default();
    verify_lantern_with(genus, &lantern_homology_classes(genus, &labels)?, &labels)
}

/// The standard classes with `γ1` replaced by `a1`.
pub fn corrupted_lantern_classes(genus: usize, labels: &LanternLabels) -> Result<BTreeMap<String, HomologyVector>> {
    let mut classes = lantern_homology_classes(genus, labels)?;
    classes.insert(labels.gamma1.clone(), HomologyVector::basis(genus, 1, 0));
    Ok(classes)
}

/// One change of coordinates: `ψ` sends a lantern pair to a witness pair
/// `(a, φ^k a)`, and `F = ψ^{-1} Φ^k ψ` moves the first lantern curve to the second.
#[derive(Debug, Clone)]
pub struct CoordinateChange {
    pub source: String,
    pub target: String,
    pub power: i64,
    pub psi: SymplecticMatrix,
    pub conjugated: SymplecticMatrix,
    pub maps_source_to_target: bool,
}

#[derive(Debug, Clone)]
pub struct Theorem14Report {
    pub genus: usize,
    pub shift: usize,
    pub order: usize,
    pub word: McgWord,
    pub census: Option<usize>,
    pub steps: Vec<CoordinateChange>,
    pub evaluated: SymplecticMatrix,
    pub expected: SymplecticMatrix,
    /// The six conjugates are pairwise different matrices.
    pub distinct_in_homology: bool,
    pub assignment: Assignment,
    pub labels: LanternLabels,
    pub symbols: Theorem14Symbols,
}

impl Theorem14Report {
    pub fn equality(&self) -> bool {
        self.evaluated == self.expected
    }

    pub fn passed(&self) -> bool {
        self.equality() && self.census == Some(6) && self.steps.iter().all(|s| s.maps_source_to_target)
    }
}

impl fmt::Display for Theorem14Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus {} rotation shift {} order {}", self.genus, self.shift, self.order)?;
        for s in &self.steps {
            writeln!(
                f,
                "change of coordinates {} -> {}: power {}, F[{}] = [{}]: {}",
                s.source, s.target, s.power, s.source, s.target, s.maps_source_to_target
            )?;
        }
        writeln!(f, "word {}", self.word)?;
        match self.census {
            Some(n) => writeln!(f, "conjugate census {n}")?,
            None => writeln!(f, "conjugate census none")?,
        }
        writeln!(f, "distinct in homology {}", self.distinct_in_homology)?;
        writeln!(f, "evaluated word")?;
        write!(f, "{}", self.evaluated)?;
        writeln!(f, "transvection of [{}]", self.labels.alpha1)?;
        write!(f, "{}", self.expected)?;
        writeln!(f, "equal {}", self.equality())
    }
}

/// Evaluates the six-conjugate word for `T_{α1}` using the rotation's homology
/// action and coordinate changes onto the three witness pairs.
pub fn verify_theorem14_homology(
    surface: &PolygonSurface,
    rotation: &RotationMap,
    witnesses: [&TheoremWitness; 3],
) -> Result<Theorem14Report> {
    let genus = surface.genus();
    let labels = LanternLabels::default();
    let symbols = Theorem14Symbols::default();
    let classes = lantern_homology_classes(genus, &labels)?;
    let certifier = Certifier::new(surface, rotation)?;
    let basis = certifier.basis();
    let phi = rotation.homology_action(basis)?;
    if phi.matrix() == &IntMatrix::identity(2 * genus).scale(-1) {
        return Err(Error::Precondition("the rotation acts as the hyperelliptic involution".into()));
    }
    for w in &witnesses {
        if !w.certificates.passed() {
            return Err(Error::Precondition(format!("witness with power {} is not certified", w.k)));
        }
    }

    let pairs = [(&labels.gamma1, &labels.gamma2), (&labels.x3, &labels.x1), (&labels.x2, &labels.alpha2)];
    let psis = [&symbols.psi_f, &symbols.psi_g, &symbols.psi_h];
    let mut assignment = Assignment::new(genus);
    assignment.twists = classes.clone();
    assignment.symbols.insert(symbols.phi.clone(), phi.clone());
    let mut steps = Vec::with_capacity(3);
    let mut powers = [0i64; 3];
    for (idx, ((source, target), w)) in pairs.iter().zip(witnesses).enumerate() {
        let k = w.k as i64;
        powers[idx] = k;
        let a = basis.class(&w.curve);
        let b = phi.pow(k).apply(&a);
        let psi = symplectic_completion(&[classes[*source].clone(), classes[*target].clone()], &[a, b])
            .map_err(|e| Error::VerificationFailed(format!("coordinate change {source} -> {target}: {e}")))?;
        let conjugated = psi.inverse().compose(&phi.pow(k)).compose(&psi);
        let maps = conjugated.apply(&classes[*source]) == classes[*target];
        assignment.symbols.insert(psis[idx].clone(), psi.clone());
        steps.push(CoordinateChange {
            source: (*source).clone(),
            target: (*target).clone(),
            power: k,
            psi,
            conjugated,
            maps_source_to_target: maps,
        });
    }

    let word = theorem14_word((powers[0], powers[1], powers[2]), &labels, &symbols)?;
    let census = conjugate_census(&word, &symbols.phi);
    let evaluated = evaluate_word(&word, &assignment)?;
    let expected = transvection(&classes[&labels.alpha1]);
    let distinct_in_homology = match conjugate_decomposition(&word, &symbols.phi) {
        Some(blocks) => {
            let mats = blocks
                .iter()
                .map(|b| evaluate_word(&b.word(&symbols.phi), &assignment))
                .collect::<Result<Vec<_>>>()?;
            (0..mats.len()).all(|i| (i + 1..mats.len()).all(|j| mats[i] != mats[j]))
        }
        None => false,
    };
    Ok(Theorem14Report {
        genus,
        shift: rotation.shift(),
        order: rotation.order(),
        word,
        census,
        steps,
        evaluated,
        expected,
        distinct_in_homology,
        assignment,
        labels,
        symbols,
    })
}

/// For a nonseparating class `c`: the factorization conjugated by some `ψ_c`
/// with `ψ_c[c] = [α1]` evaluates to the transvection of `c`.
pub fn verify_conjugated_twist(report: &Theorem14Report, c: &HomologyVector) -> Result<bool> {
    let alpha1 = &report.assignment.twists[&report.labels.alpha1];
    let psi_c = symplectic_completion(std::slice::from_ref(c), std::slice::from_ref(alpha1))?;
    let mut assignment = report.assignment.clone();
    assignment.symbols.insert("psi_c".into(), psi_c);
    let word = report.word.conjugate_by("psi_c");
    if conjugate_census(&word, &report.symbols.phi) != Some(6) {
        return Ok(false);
    }
    Ok(evaluate_word(&word, &assignment)? == transvection(c))
}

/// Certified upper bound on the stable torsion length of a nonseparating twist.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StlBound {
    pub bound: usize,
    pub statement: String,
}

pub fn stl_bound_report(report: &Theorem14Report) -> Result<StlBound> {
    if !report.passed() {
        return Err(Error::VerificationFailed("six-conjugate factorization not verified".into()));
    }
    let n = report.census.unwrap_or(0);
    Ok(StlBound {
        bound: n,
        statement: format!(
            "tl_phi(T_c) <= {n} for every nonseparating c (rotation shift {} of order {} on genus {}), \
             hence stl_phi(T_c) <= {n} by subadditivity",
            report.shift, report.order, report.genus
        ),
    })
}
