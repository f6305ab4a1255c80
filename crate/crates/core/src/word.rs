//! Words in formal Dehn twists and mapping-class symbols.
//!
//! The only relations used are free cancellation, naturality of twists
//! (`T_{m(c)} = m T_c m^{-1}`, licensed by explicit mapping rules) and, for
//! comparing the two forms of the lantern relation, commutation of the
//! boundary twists with everything else.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    Twist(String),
    Sym(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Generator {
    pub fn twist(label: &str) -> Self {
        Self { kind: GeneratorKind::Twist(label.to_string()), exponent: 1 }
    }

    pub fn sym(label: &str) -> Self {
        Self { kind: GeneratorKind::Sym(label.to_string()), exponent: 1 }
    }

    pub fn inverse(&self) -> Self {
        Self { kind: self.kind.clone(), exponent: -self.exponent }
    }

    pub fn label(&self) -> &str {
        match &self.kind {
            GeneratorKind::Twist(l) | GeneratorKind::Sym(l) => l,
        }
    }

    fn cancels(&self, other: &Self) -> bool {
        self.kind == other.kind && self.exponent == -other.exponent
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GeneratorKind::Twist(l) => write!(f, "T[{l}]")?,
            GeneratorKind::Sym(l) => write!(f, "{l}")?,
        }
        if self.exponent < 0 {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct McgWord {
    letters: Vec<Generator>,
}

impl McgWord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        Self { letters }.free_reduce()
    }

    pub fn twist(label: &str) -> Self {
        Self::new(vec![Generator::twist(label)])
    }

    pub fn sym(label: &str) -> Self {
        Self::new(vec![Generator::sym(label)])
    }

    /// `sym^power`, written with repeated letters.
    pub fn sym_power(label: &str, power: i64) -> Self {
        let g = Generator::sym(label);
        let g = if power < 0 { g.inverse() } else { g };
        Self::new(vec![g; power.unsigned_abs() as usize])
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free_reduce(self) -> Self {
        let mut out: Vec<Generator> = Vec::with_capacity(self.letters.len());
        for g in self.letters {
            if out.last().is_some_and(|last| last.cancels(&g)) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Self { letters: out }
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(Generator::inverse).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::new(self.letters.iter().chain(&other.letters).cloned().collect())
    }

    pub fn product(words: &[McgWord]) -> Self {
        Self::new(words.iter().flat_map(|w| w.letters.iter().cloned()).collect())
    }

    /// `s^{-1} w s`.
    pub fn conjugate_by(&self, s: &str) -> Self {
        McgWord::product(&[McgWord::sym(s).inverse(), self.clone(), McgWord::sym(s)])
    }

    /// Number of letters with the given symbol label, either exponent.
    pub fn count_sym(&self, label: &str) -> usize {
        self.letters
            .iter()
            .filter(|g| matches!(&g.kind, GeneratorKind::Sym(l) if l == label))
            .count()
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(Generator::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for McgWord {
    type Err = Error;

    /// Whitespace-separated tokens `T[label]`, `T[label]^-1`, `sym`, `sym^-1`;
    /// `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (body, exponent) = match token.strip_suffix("^-1") {
                Some(b) => (b, -1),
                None => (token, 1),
            };
            let bad = || Error::Parse { line: 1, message: format!("bad word token `{token}`") };
            let kind = if let Some(inner) = body.strip_prefix("T[") {
                let label = inner.strip_suffix(']').ok_or_else(bad)?;
                if !valid_label(label) {
                    return Err(bad());
                }
                GeneratorKind::Twist(label.to_string())
            } else if valid_label(body) {
                GeneratorKind::Sym(body.to_string())
            } else {
                return Err(bad());
            };
            letters.push(Generator { kind, exponent });
        }
        Ok(Self::new(letters))
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The seven curve labels of a lantern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanternLabels {
    pub alpha1: String,
    pub alpha2: String,
    pub gamma1: String,
    pub gamma2: String,
    pub x1: String,
    pub x2: String,
    pub x3: String,
}

impl Default for LanternLabels {
    fn default() -> Self {
        Self {
            alpha1: "alpha1".into(),
            alpha2: "alpha2".into(),
            gamma1: "gamma1".into(),
            gamma2: "gamma2".into(),
            x1: "x1".into(),
            x2: "x2".into(),
            x3: "x3".into(),
        }
    }
}

impl LanternLabels {
    pub fn all(&self) -> [&str; 7] {
        [&self.alpha1, &self.alpha2, &self.gamma1, &self.gamma2, &self.x1, &self.x2, &self.x3]
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for l in self.all() {
            if !valid_label(l) {
                return Err(Error::Parse { line: 0, message: format!("invalid label `{l}`") });
            }
            if !seen.insert(l) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
        }
        Ok(())
    }

    /// Twists about the boundary curves of the lantern commute with all seven twists.
    pub fn boundary(&self) -> [&str; 4] {
        [&self.alpha1, &self.alpha2, &self.x1, &self.gamma2]
    }
}

fn twist_word(spec: &[(&str, i8)]) -> McgWord {
    McgWord::new(
        spec.iter()
            .map(|&(l, e)| Generator { kind: GeneratorKind::Twist(l.to_string()), exponent: e })
            .collect(),
    )
}

/// Both sides of the lantern relation as `T_{α1} = T_{γ1} T_{γ2}^{-1} T_{x3} T_{x1}^{-1} T_{x2} T_{α2}^{-1}`.
pub fn lantern_sides(labels: &LanternLabels) -> Result<(McgWord, McgWord)> {
    labels.validate()?;
    let l = labels;
    Ok((
        twist_word(&[(&l.alpha1, 1)]),
        twist_word(&[(&l.gamma1, 1), (&l.gamma2, -1), (&l.x3, 1), (&l.x1, -1), (&l.x2, 1), (&l.alpha2, -1)]),
    ))
}

/// The same relation as `T_{α1} T_{α2} T_{x1} T_{γ2} = T_{γ1} T_{x3} T_{x2}`.
pub fn lantern_sides_product_form(labels: &LanternLabels) -> Result<(McgWord, McgWord)> {
    labels.validate()?;
    let l = labels;
    Ok((
        twist_word(&[(&l.alpha1, 1), (&l.alpha2, 1), (&l.x1, 1), (&l.gamma2, 1)]),
        twist_word(&[(&l.gamma1, 1), (&l.x3, 1), (&l.x2, 1)]),
    ))
}

/// Normal form modulo commutation of the `central` twists with everything:
/// the remaining letters freely reduced, then the net exponent of each
/// central twist.
pub fn normal_form_with_central(w: &McgWord, central: &[&str]) -> (McgWord, BTreeMap<String, i64>) {
    let mut exps: BTreeMap<String, i64> = BTreeMap::new();
    let mut rest = Vec::new();
    for g in w.letters() {
        match &g.kind {
            GeneratorKind::Twist(l) if central.contains(&l.as_str()) => {
                *exps.entry(l.clone()).or_default() += i64::from(g.exponent);
            }
            _ => rest.push(g.clone()),
        }
    }
    exps.retain(|_, e| *e != 0);
    (McgWord::new(rest), exps)
}

/// The two presentations of the lantern relation give the same relator once
/// boundary twists are allowed to commute.
pub fn lantern_forms_equivalent(labels: &LanternLabels) -> Result<bool> {
    let (l1, r1) = lantern_sides(labels)?;
    let (l2, r2) = lantern_sides_product_form(labels)?;
    let central = labels.boundary();
    let a = normal_form_with_central(&l1.inverse().concat(&r1), &central);
    let b = normal_form_with_central(&l2.inverse().concat(&r2), &central);
    Ok(a == b)
}

/// The fact `map(source) = target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MappingRule {
    pub map: String,
    pub source: String,
    pub target: String,
}

impl MappingRule {
    pub fn new(map: &str, source: &str, target: &str) -> Self {
        Self { map: map.into(), source: source.into(), target: target.into() }
    }
}

/// The hypotheses `f(γ1) = γ2`, `g(x3) = x1`, `h(x2) = α2`.
pub fn lemma_rules(labels: &LanternLabels) -> Vec<MappingRule> {
    vec![
        MappingRule::new("f", &labels.gamma1, &labels.gamma2),
        MappingRule::new("g", &labels.x3, &labels.x1),
        MappingRule::new("h", &labels.x2, &labels.alpha2),
    ]
}

/// Rewriting system `T_s → m^{-1} T_t m` for every non-identity rule `m(s) = t`.
#[derive(Debug, Clone)]
pub struct RuleSet {
    by_source: BTreeMap<String, (String, String)>,
}

impl RuleSet {
    pub fn new(rules: &[MappingRule]) -> Result<Self> {
        let mut by_pair: BTreeMap<(String, String), String> = BTreeMap::new();
        for r in rules {
            if let Some(t) = by_pair.get(&(r.map.clone(), r.source.clone())) {
                if *t != r.target {
                    return Err(Error::ConflictingRules { map: r.map.clone(), source_curve: r.source.clone() });
                }
            }
            by_pair.insert((r.map.clone(), r.source.clone()), r.target.clone());
        }
        let mut by_source: BTreeMap<String, (String, String)> = BTreeMap::new();
        for ((map, source), target) in by_pair {
            if source == target {
                continue;
            }
            if let Some((other, _)) = by_source.get(&source) {
                // Two different maps rewriting the same twist would make the normal form ambiguous.
                return Err(Error::ConflictingRules { map: format!("{other}/{map}"), source_curve: source });
            }
            by_source.insert(source, (map, target));
        }
        let set = Self { by_source };
        for source in set.by_source.keys() {
            set.chain(source)?;
        }
        Ok(set)
    }

    /// Sequence of `(map, target)` steps taken when rewriting `T_source`.
    fn chain(&self, source: &str) -> Result<Vec<(String, String)>> {
        let mut steps = Vec::new();
        let mut seen = BTreeSet::new();
        let mut cur = source.to_string();
        while let Some((map, target)) = self.by_source.get(&cur) {
            if !seen.insert(cur.clone()) {
                return Err(Error::CyclicRules(source.to_string()));
            }
            steps.push((map.clone(), target.clone()));
            cur = target.clone();
        }
        Ok(steps)
    }

    pub fn map_for(&self, source: &str) -> Option<&str> {
        self.by_source.get(source).map(|(m, _)| m.as_str())
    }

    /// Rewrites every twist about a rule source until only twists about
    /// non-source curves remain, then freely reduces.
    pub fn normal_form(&self, w: &McgWord) -> Result<McgWord> {
        let mut out = Vec::new();
        for g in w.letters() {
            match &g.kind {
                GeneratorKind::Twist(label) if self.by_source.contains_key(label) => {
                    // T_s = m1^{-1} T_{t1} m1 = m1^{-1} m2^{-1} T_{t2} m2 m1 = …
                    let steps = self.chain(label)?;
                    let last = &steps.last().unwrap().1;
                    let mut inner = McgWord::new(vec![Generator {
                        kind: GeneratorKind::Twist(last.clone()),
                        exponent: g.exponent,
                    }]);
                    for (map, _) in steps.iter().rev() {
                        inner = McgWord::product(&[McgWord::sym(map).inverse(), inner, McgWord::sym(map)]);
                    }
                    out.extend(inner.letters().iter().cloned());
                }
                _ => out.push(g.clone()),
            }
        }
        Ok(McgWord::new(out))
    }
}

/// `f^{-1} (T_{γ2} f T_{γ2}^{-1}) g^{-1} (T_{x1} g T_{x1}^{-1}) h^{-1} (T_{α2} h T_{α2}^{-1})`,
/// with `f`, `g`, `h` the maps the rules assign to `γ1`, `x3`, `x2`.
pub fn lemma32_factorize(rules: &[MappingRule], labels: &LanternLabels) -> Result<McgWord> {
    labels.validate()?;
    let set = RuleSet::new(rules)?;
    let pieces = [(&labels.gamma1, &labels.gamma2), (&labels.x3, &labels.x1), (&labels.x2, &labels.alpha2)];
    let mut words = Vec::new();
    for (source, fixed) in pieces {
        let map = set.map_for(source).ok_or_else(|| Error::MissingRule(source.clone()))?;
        let m = McgWord::sym(map);
        let t = McgWord::twist(fixed);
        words.extend([m.inverse(), t.clone(), m, t.inverse()]);
    }
    Ok(McgWord::product(&words))
}

/// Whether the factorized word and the right side of the lantern relation
/// have the same normal form under the rules.
pub fn check_derivation(rules: &[MappingRule], labels: &LanternLabels) -> Result<bool> {
    let set = RuleSet::new(rules)?;
    let lemma = lemma32_factorize(rules, labels)?;
    let (_, rhs) = lantern_sides(labels)?;
    Ok(set.normal_form(&lemma)? == set.normal_form(&rhs)?)
}

/// Symbols used for the conjugating maps and the periodic map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem14Symbols {
    pub phi: String,
    pub psi_f: String,
    pub psi_g: String,
    pub psi_h: String,
}

impl Default for Theorem14Symbols {
    fn default() -> Self {
        Self { phi: "phi".into(), psi_f: "psi_f".into(), psi_g: "psi_g".into(), psi_h: "psi_h".into() }
    }
}

/// The lemma word with `f = ψ_f^{-1} φ^i ψ_f`, `g = ψ_g^{-1} φ^j ψ_g`,
/// `h = ψ_h^{-1} φ^k ψ_h` substituted.
pub fn theorem14_word(
    powers: (i64, i64, i64),
    labels: &LanternLabels,
    symbols: &Theorem14Symbols,
) -> Result<McgWord> {
    let (i, j, k) = powers;
    if i == 0 || j == 0 || k == 0 {
        return Err(Error::ZeroPower);
    }
    labels.validate()?;
    let conj = |psi: &str, p: i64| {
        McgWord::product(&[McgWord::sym(psi).inverse(), McgWord::sym_power(&symbols.phi, p), McgWord::sym(psi)])
    };
    let maps = [(conj(&symbols.psi_f, i), &labels.gamma2), (conj(&symbols.psi_g, j), &labels.x1), (conj(&symbols.psi_h, k), &labels.alpha2)];
    let mut words = Vec::new();
    for (m, fixed) in maps {
        let t = McgWord::twist(fixed);
        words.extend([m.inverse(), t.clone(), m, t.inverse()]);
    }
    Ok(McgWord::product(&words))
}

/// One factor `u^{-1} φ^power u` of a product of conjugates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateBlock {
    pub conjugator: McgWord,
    pub power: i64,
}

impl ConjugateBlock {
    pub fn word(&self, phi: &str) -> McgWord {
        McgWord::product(&[self.conjugator.inverse(), McgWord::sym_power(phi, self.power), self.conjugator.clone()])
    }
}

/// Writes `w` as a product of conjugates of powers of `phi`, one per maximal
/// run of `phi` letters, if the material between the runs cancels.
pub fn conjugate_decomposition(w: &McgWord, phi: &str) -> Option<Vec<ConjugateBlock>> {
    let is_phi = |g: &Generator| matches!(&g.kind, GeneratorKind::Sym(l) if l == phi);
    let mut spacers: Vec<McgWord> = vec![McgWord::empty()];
    let mut powers: Vec<i64> = Vec::new();
    let letters = w.letters();
    let mut idx = 0;
    while idx < letters.len() {
        if is_phi(&letters[idx]) {
            let mut p = 0i64;
            while idx < letters.len() && is_phi(&letters[idx]) {
                p += i64::from(letters[idx].exponent);
                idx += 1;
            }
            powers.push(p);
            spacers.push(McgWord::empty());
        } else {
            let last = spacers.last_mut().unwrap();
            *last = last.concat(&McgWord::new(vec![letters[idx].clone()]));
            idx += 1;
        }
    }
    if !McgWord::product(&spacers).is_empty() {
        return None;
    }
    // w = s0 φ^{e1} s1 … φ^{er} sr with u1 = s0^{-1}, u_{i+1} = s_i^{-1} u_i.
    let mut blocks = Vec::with_capacity(powers.len());
    let mut u = spacers[0].inverse();
    for (i, &p) in powers.iter().enumerate() {
        blocks.push(ConjugateBlock { conjugator: u.clone(), power: p });
        u = spacers[i + 1].inverse().concat(&u);
    }
    Some(blocks)
}

/// Number of conjugate blocks, or `None` if `w` is not a product of conjugates
/// of `phi` or two blocks coincide as words.
pub fn conjugate_census(w: &McgWord, phi: &str) -> Option<usize> {
    let blocks = conjugate_decomposition(w, phi)?;
    let distinct: BTreeSet<McgWord> = blocks.iter().map(|b| b.word(phi)).collect();
    (distinct.len() == blocks.len()).then_some(blocks.len())
}
