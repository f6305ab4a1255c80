//! Integer symplectic linear algebra.
//!
//! Coordinates on `H_1(S_g; Z)` are ordered `(a_1, b_1, …, a_g, b_g)` and the
//! intersection form is `J = diag([[0, 1], [-1, 0]], …)`, so `⟨a_i, b_i⟩ = 1`.
//! Dehn twists act as transvections `x ↦ x + ⟨x, v⟩ v`.

use std::fmt;
use std::ops::{Deref, Mul};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.concat() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged matrix");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, k: i64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Row-major, one row per line, entries separated by single spaces.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The standard form `J` on `Z^{2g}`.
pub fn standard_form(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j[(2 * i, 2 * i + 1)] = 1;
        j[(2 * i + 1, 2 * i)] = -1;
    }
    j
}

/// `⟨x, y⟩ = xᵀ J y`.
pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    assert_eq!(x.len(), y.len());
    x.chunks(2).zip(y.chunks(2)).map(|(a, b)| a[0] * b[1] - a[1] * b[0]).sum()
}

/// The row vector `xᵀ J`, so that `row · y = ⟨x, y⟩`.
fn pairing_row(x: &[i64]) -> Vec<i64> {
    x.chunks(2).flat_map(|a| [-a[1], a[0]]).collect()
}

pub fn is_primitive(v: &[i64]) -> bool {
    v.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

/// A class in `H_1(S_g; Z)` in symplectic coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyVector(pub Vec<i64>);

impl HomologyVector {
    pub fn zero(genus: usize) -> Self {
        Self(vec![0; 2 * genus])
    }

    /// `a_i` (for `which = 0`) or `b_i` (for `which = 1`), with `i` counted from 1.
    pub fn basis(genus: usize, i: usize, which: usize) -> Self {
        let mut v = vec![0; 2 * genus];
        v[2 * (i - 1) + which] = 1;
        Self(v)
    }

    pub fn genus(&self) -> usize {
        self.0.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pairing(&self, other: &Self) -> i64 {
        pairing(&self.0, &other.0)
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive(&self.0)
    }
}

impl Deref for HomologyVector {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Display for HomologyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A `2g × 2g` integer matrix with `Mᵀ J M = J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticMatrix(IntMatrix);

impl SymplecticMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if m.rows() != m.cols() || m.rows() % 2 == 1 {
            return Err(Error::Dimension { expected: m.rows() + m.rows() % 2, got: m.cols() });
        }
        let j = standard_form(m.rows() / 2);
        if &(&m.transpose() * &j) * &m != j {
            return Err(Error::VerificationFailed("matrix does not preserve the intersection form".into()));
        }
        Ok(Self(m))
    }

    pub fn identity(genus: usize) -> Self {
        Self(IntMatrix::identity(2 * genus))
    }

    pub fn genus(&self) -> usize {
        self.0.rows() / 2
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn apply(&self, v: &HomologyVector) -> HomologyVector {
        HomologyVector(self.0.mul_vec(&v.0))
    }

    /// `M⁻¹ = -J Mᵀ J`, exact for symplectic `M`.
    pub fn inverse(&self) -> Self {
        let j = standard_form(self.genus());
        Self((&(&j * &self.0.transpose()) * &j).scale(-1))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.genus());
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn determinant(&self) -> i64 {
        self.0.determinant()
    }

    /// Smallest `d ≥ 1` with `M^d = I`, searching up to `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        let mut acc = self.clone();
        for d in 1..=limit {
            if acc.is_identity() {
                return Some(d);
            }
            acc = acc.compose(self);
        }
        None
    }
}

impl Mul for &SymplecticMatrix {
    type Output = SymplecticMatrix;
    fn mul(self, rhs: &SymplecticMatrix) -> SymplecticMatrix {
        self.compose(rhs)
    }
}

impl fmt::Display for SymplecticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The homology action of a right-handed Dehn twist about a curve of class `v`.
pub fn transvection(v: &HomologyVector) -> SymplecticMatrix {
    let n = v.len();
    let row = pairing_row(&v.0);
    let mut m = IntMatrix::identity(n);
    // column k of the update is v * ⟨e_k, v⟩ = v * (-row_k)
    for i in 0..n {
        for k in 0..n {
            m[(i, k)] -= v[i] * row[k];
        }
    }
    SymplecticMatrix(m)
}

/// Reduces a family of generators carrying an alternating integer form to a
/// symplectic basis.
///
/// `gram[i][j]` is the pairing of generators `i` and `j`. Returns the
/// symplectic pairs `(u_k, v_k)` with `⟨u_k, v_k⟩ = 1` and all other pairings
/// zero, followed by the generators spanning the radical. Fails if the form
/// induced on the quotient by the radical is not unimodular.
#[allow(clippy::type_complexity)]
pub fn symplectic_reduce(
    mut gens: Vec<Vec<i64>>,
    mut gram: Vec<Vec<i64>>,
) -> Result<(Vec<(Vec<i64>, Vec<i64>)>, Vec<Vec<i64>>)> {
    let m = gens.len();
    let add = |gens: &mut Vec<Vec<i64>>, gram: &mut Vec<Vec<i64>>, target: usize, src: usize, q: i64| {
        // g_target += q * g_src
        if q == 0 {
            return;
        }
        let s = gens[src].clone();
        for (x, y) in gens[target].iter_mut().zip(&s) {
            *x += q * y;
        }
        for k in 0..gram.len() {
            let v = gram[src][k];
            gram[target][k] += q * v;
        }
        for k in 0..gram.len() {
            let v = gram[k][src];
            gram[k][target] += q * v;
        }
    };
    let swap = |gens: &mut Vec<Vec<i64>>, gram: &mut Vec<Vec<i64>>, a: usize, b: usize| {
        if a == b {
            return;
        }
        gens.swap(a, b);
        gram.swap(a, b);
        for row in gram.iter_mut() {
            row.swap(a, b);
        }
    };

    let mut pos = 0;
    let mut pairs = Vec::new();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in pos..m {
            for j in pos..m {
                let v = gram[i][j].abs();
                if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        swap(&mut gens, &mut gram, pos, i);
        let j = if j == pos { i } else { j };
        swap(&mut gens, &mut gram, pos + 1, j);
        if gram[pos][pos + 1] < 0 {
            for x in gens[pos + 1].iter_mut() {
                *x = -*x;
            }
            for k in 0..m {
                gram[pos + 1][k] = -gram[pos + 1][k];
                gram[k][pos + 1] = -gram[k][pos + 1];
            }
        }
        let a = gram[pos][pos + 1];
        let mut clean = true;
        for k in pos + 2..m {
            let q = Integer::div_floor(&gram[pos][k], &a);
            add(&mut gens, &mut gram, k, pos + 1, -q);
            let q2 = Integer::div_floor(&gram[pos + 1][k], &a);
            add(&mut gens, &mut gram, k, pos, q2);
            if gram[pos][k] != 0 || gram[pos + 1][k] != 0 {
                clean = false;
            }
        }
        if clean {
            if a != 1 {
                return Err(Error::NotUnimodular(a));
            }
            pairs.push((gens[pos].clone(), gens[pos + 1].clone()));
            pos += 2;
        }
    }
    Ok((pairs, gens[pos..].to_vec()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairShape {
    Single,
    /// Second vector equals `sign` times the first.
    Parallel(i64),
    /// Independent, pairing zero: becomes `(a_1, a_2)`.
    Isotropic,
    /// Pairing `sign`: becomes `(a_1, sign · b_1)`.
    Dual(i64),
}

fn classify(vs: &[HomologyVector]) -> Result<(PairShape, i64)> {
    for v in vs {
        if !v.is_primitive() {
            return Err(Error::NotPrimitive);
        }
    }
    match vs {
        [_] => Ok((PairShape::Single, 0)),
        [s, t] => {
            let p = s.pairing(t);
            let shape = match p {
                0 if *t == *s => PairShape::Parallel(1),
                0 if *t == s.neg() => PairShape::Parallel(-1),
                0 => PairShape::Isotropic,
                1 | -1 => PairShape::Dual(p),
                _ => {
                    return Err(Error::ConfigurationMismatch(format!(
                        "pairing {p} between the two vectors is not supported"
                    )))
                }
            };
            Ok((shape, p))
        }
        _ => Err(Error::Precondition("expected one or two vectors".into())),
    }
}

/// Rows of a matrix together with tracked vectors, changed only by
/// elementary symplectic moves. Coordinates are `(p_1, q_1, …, p_g, q_g)`.
struct Reducer {
    rows: Vec<Vec<i64>>,
}

impl Reducer {
    /// Identity matrix with the given vectors appended as extra columns.
    fn new(dim: usize, vs: &[&HomologyVector]) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut row: Vec<i64> = (0..dim).map(|j| i64::from(i == j)).collect();
                row.extend(vs.iter().map(|v| v[i]));
                row
            })
            .collect();
        Self { rows }
    }

    fn entry(&self, coord: usize, which: usize) -> i64 {
        self.rows[coord][self.rows.len() + which]
    }

    fn add_row(&mut self, dst: usize, src: usize, m: i64) {
        if m == 0 {
            return;
        }
        let s = self.rows[src].clone();
        for (x, y) in self.rows[dst].iter_mut().zip(&s) {
            *x += m * y;
        }
    }

    /// `p_k += m q_k`.
    fn shear_p(&mut self, k: usize, m: i64) {
        self.add_row(2 * k, 2 * k + 1, m);
    }

    /// `(p_k, q_k) ↦ (-q_k, p_k)`.
    fn rotate(&mut self, k: usize) {
        self.rows.swap(2 * k, 2 * k + 1);
        for x in self.rows[2 * k].iter_mut() {
            *x = -*x;
        }
    }

    /// `p_k += m p_l` and `q_l -= m q_k`.
    fn mix(&mut self, k: usize, l: usize, m: i64) {
        self.add_row(2 * k, 2 * l, m);
        self.add_row(2 * l + 1, 2 * k + 1, -m);
    }

    fn swap_pairs(&mut self, k: usize, l: usize) {
        self.rows.swap(2 * k, 2 * l);
        self.rows.swap(2 * k + 1, 2 * l + 1);
    }

    /// Clears `q_k` of tracked vector `which` and leaves `p_k ≥ 0`.
    fn clear_pair(&mut self, k: usize, which: usize) {
        loop {
            let (p, q) = (self.entry(2 * k, which), self.entry(2 * k + 1, which));
            if q == 0 {
                if p < 0 {
                    self.rotate(k);
                    self.rotate(k);
                }
                return;
            }
            self.shear_p(k, -(p / q));
            self.rotate(k);
        }
    }

    /// Moves tracked vector `which` to `d · a_first` using only pairs
    /// `first..genus`; returns `d`, the gcd of those coordinates.
    fn reduce(&mut self, first: usize, which: usize) -> i64 {
        let genus = self.rows.len() / 2;
        for k in first..genus {
            self.clear_pair(k, which);
        }
        loop {
            let Some(k) = (first..genus)
                .filter(|&k| self.entry(2 * k, which) != 0)
                .min_by_key(|&k| self.entry(2 * k, which))
            else {
                return 0;
            };
            self.swap_pairs(first, k);
            let d = self.entry(2 * first, which);
            let mut done = true;
            for l in first + 1..genus {
                let p = self.entry(2 * l, which);
                self.mix(l, first, -(p / d));
                done &= self.entry(2 * l, which) == 0;
            }
            if done {
                return d;
            }
        }
    }

    fn matrix(&self) -> IntMatrix {
        let n = self.rows.len();
        IntMatrix::from_rows(&self.rows.iter().map(|r| r[..n].to_vec()).collect::<Vec<_>>())
    }
}

/// A symplectic `M` sending the vectors to the canonical configuration of
/// their shape: `a_1`, then `±a_1`, `a_2` or `sign · b_1`.
fn to_canonical(vs: &[HomologyVector], shape: PairShape) -> Result<SymplecticMatrix> {
    let dim = vs[0].len();
    let genus = dim / 2;
    let refs: Vec<&HomologyVector> = vs.iter().collect();
    let mut r = Reducer::new(dim, &refs);
    if r.reduce(0, 0) != 1 {
        return Err(Error::NotPrimitive);
    }
    match shape {
        PairShape::Single | PairShape::Parallel(_) => {}
        PairShape::Isotropic => {
            if genus < 2 || r.reduce(1, 1) != 1 {
                return Err(Error::NotSaturated);
            }
            let p = r.entry(0, 1);
            r.mix(0, 1, -p);
        }
        PairShape::Dual(sign) => {
            for l in 1..genus {
                for _ in 0..2 {
                    let q = r.entry(2 * l + 1, 1);
                    r.mix(0, l, q * sign);
                    r.rotate(l);
                }
            }
            let p = r.entry(0, 1);
            r.shear_p(0, -p * sign);
        }
    }
    SymplecticMatrix::new(r.matrix())
}

/// A symplectic matrix sending each source vector to the corresponding target.
///
/// Supports one primitive vector, or two primitive vectors that are equal up to
/// sign, span an isotropic saturated plane, or pair to `±1`.
pub fn symplectic_completion(
    sources: &[HomologyVector],
    targets: &[HomologyVector],
) -> Result<SymplecticMatrix> {
    if sources.len() != targets.len() {
        return Err(Error::Dimension { expected: sources.len(), got: targets.len() });
    }
    if sources.is_empty() || sources.len() > 2 {
        return Err(Error::Precondition("expected one or two vectors".into()));
    }
    let dim = sources[0].len();
    for v in sources.iter().chain(targets) {
        if v.len() != dim || dim % 2 == 1 {
            return Err(Error::Dimension { expected: dim, got: v.len() });
        }
    }
    let (s_shape, s_pair) = classify(sources)?;
    let (t_shape, t_pair) = classify(targets)?;
    if s_pair != t_pair {
        return Err(Error::PairingMismatch { source_pairing: s_pair, target_pairing: t_pair });
    }
    if s_shape != t_shape {
        return Err(Error::ConfigurationMismatch(format!("{s_shape:?} vs {t_shape:?}")));
    }
    let ms = to_canonical(sources, s_shape)?;
    let mt = to_canonical(targets, t_shape)?;
    let m = mt.inverse().compose(&ms);
    for (s, t) in sources.iter().zip(targets) {
        if m.apply(s) != *t {
            return Err(Error::Inconsistent(format!("completion sends {s} to {}, not {t}", m.apply(s))));
        }
    }
    Ok(m)
}
