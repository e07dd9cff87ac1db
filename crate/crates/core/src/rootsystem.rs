//! Nonnull root sets of G2, F4 and E6 in explicit coordinates, with family
//! metadata, shorthand labels for the half-sum families, and the embedded
//! B4 (in F4) and A5 (in E6) sub-root-systems tagged.
//!
//! Roots are stored unnormalized, in the same integer/half-integer
//! coordinates the tables use; the normalization constant K is carried
//! separately and applied inside the commutator engine.

use crate::exactnum::ExactReal;
use num::rational::BigRational;
use num::{BigInt, One};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The three algebras this crate constructs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    G2,
    F4,
    E6,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::G2 => "g2",
            Algebra::F4 => "f4",
            Algebra::E6 => "e6",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Some(Algebra::G2),
            "f4" => Some(Algebra::F4),
            "e6" => Some(Algebra::E6),
            _ => None,
        }
    }

    /// Dimension of the algebra (Cartan rank + number of nonnull roots).
    pub fn order(self) -> usize {
        match self {
            Algebra::G2 => 14,
            Algebra::F4 => 52,
            Algebra::E6 => 78,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Algebra::G2 => 2,
            Algebra::F4 => 4,
            Algebra::E6 => 6,
        }
    }

    /// Dimension of the coordinate space the roots are written in. For G2
    /// and E6 this exceeds the rank; the roots span a proper subspace.
    pub fn ambient_dim(self) -> usize {
        match self {
            Algebra::G2 => 3,
            Algebra::F4 => 4,
            Algebra::E6 => 7,
        }
    }

    pub fn root_count(self) -> usize {
        match self {
            Algebra::G2 => 12,
            Algebra::F4 => 48,
            Algebra::E6 => 72,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Index of a root inside its [`RootSystem`].
pub type RootId = u16;

/// A single nonnull root: exact coordinates plus naming metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<ExactReal>,
    pub family: &'static str,
    pub label: String,
}

/// The full nonnull root set of one algebra.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub algebra: Algebra,
    pub roots: Vec<Root>,
    /// Normalization constant K, fixed by K^2 = 2 * (number of roots).
    pub k: ExactReal,
    /// Per-root tag naming the embedded subalgebra it belongs to, if any.
    pub subalgebra: Vec<Option<&'static str>>,
    by_coords: BTreeMap<Vec<ExactReal>, RootId>,
    by_label: BTreeMap<String, RootId>,
    negation: Vec<RootId>,
    /// `pair_sum[a][b]` is the root id of `roots[a] + roots[b]`, if that
    /// sum is again a root.
    pair_sum: Vec<Vec<Option<RootId>>>,
    /// Scaled integer coordinates (all roots of these algebras live on a
    /// lattice once the right per-coordinate unit is divided out); used
    /// for fast sum lookups.
    int_coords: Vec<Vec<i64>>,
    by_int: BTreeMap<Vec<i64>, RootId>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unknown root label `{0}`")]
    UnknownLabel(String),
    #[error("root sums are not proportional to the identity on the root span")]
    NotProportional,
}

fn half(n: i64) -> ExactReal {
    ExactReal::from_rational(BigRational::new(BigInt::from(n), BigInt::from(2)))
}

fn int(n: i64) -> ExactReal {
    ExactReal::from_integer(n)
}


pub fn vec_add(a: &[ExactReal], b: &[ExactReal]) -> Vec<ExactReal> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[ExactReal], b: &[ExactReal]) -> Vec<ExactReal> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[ExactReal]) -> Vec<ExactReal> {
    a.iter().map(|x| -x).collect()
}

pub fn dot(a: &[ExactReal], b: &[ExactReal]) -> ExactReal {
    let mut acc = ExactReal::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

impl RootSystem {
    /// Builds the complete labeled root set of `algebra`.
    pub fn build(algebra: Algebra) -> Self {
        let mut roots = Vec::new();
        let mut subalgebra = Vec::new();
        match algebra {
            Algebra::G2 => build_g2(&mut roots, &mut subalgebra),
            Algebra::F4 => build_f4(&mut roots, &mut subalgebra),
            Algebra::E6 => build_e6(&mut roots, &mut subalgebra),
        }
        assert_eq!(roots.len(), algebra.root_count());

        let by_coords: BTreeMap<Vec<ExactReal>, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i as RootId))
            .collect();
        assert_eq!(by_coords.len(), roots.len(), "duplicate root");
        let by_label: BTreeMap<String, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.label.clone(), i as RootId))
            .collect();
        assert_eq!(by_label.len(), roots.len(), "duplicate label");

        let negation: Vec<RootId> = roots
            .iter()
            .map(|r| {
                *by_coords
                    .get(&vec_neg(&r.coords))
                    .expect("root set closed under negation")
            })
            .collect();

        let int_coords: Vec<Vec<i64>> = roots
            .iter()
            .map(|r| int_key(algebra, &r.coords).expect("roots lie on the lattice"))
            .collect();
        let by_int: BTreeMap<Vec<i64>, RootId> = int_coords
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as RootId))
            .collect();

        let n = roots.len();
        let mut pair_sum = vec![vec![None; n]; n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i64> = int_coords[a]
                    .iter()
                    .zip(&int_coords[b])
                    .map(|(x, y)| x + y)
                    .collect();
                pair_sum[a][b] = by_int.get(&s).copied();
            }
        }

        let k = ExactReal::sqrt_ratio(2 * algebra.root_count() as i64, 1);

        RootSystem {
            algebra,
            roots,
            k,
            subalgebra,
            by_coords,
            by_label,
            negation,
            pair_sum,
            int_coords,
            by_int,
        }
    }

    /// Scaled integer coordinates of a root (see [`int_key`]).
    pub fn int_coords(&self, id: RootId) -> &[i64] {
        &self.int_coords[id as usize]
    }

    /// Root id for a vector given in scaled integer coordinates.
    pub fn id_of_int(&self, key: &[i64]) -> Option<RootId> {
        self.by_int.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> {
        0..self.roots.len() as RootId
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id as usize]
    }

    pub fn neg(&self, id: RootId) -> RootId {
        self.negation[id as usize]
    }

    /// Root id of `roots[a] + roots[b]`, when that sum is a root.
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.pair_sum[a as usize][b as usize]
    }

    pub fn id_of_coords(&self, coords: &[ExactReal]) -> Option<RootId> {
        self.by_coords.get(coords).copied()
    }

    /// Resolves one of the shorthand names used by the component tables
    /// ("alpha_1", "-lam_8", "1-3", "2+4", "e7", ...). Unicode Greek and
    /// underscores are normalized away.
    pub fn resolve_label(&self, label: &str) -> Result<RootId, RootError> {
        let norm = normalize_label(label);
        self.by_label
            .get(&norm)
            .copied()
            .ok_or_else(|| RootError::UnknownLabel(label.to_string()))
    }

    /// Looks up a label without normalization.
    pub fn id_of_label(&self, label: &str) -> Option<RootId> {
        self.by_label.get(label).copied()
    }

    /// Replaces the label of a root (used once the G2 index assignment is
    /// solved). Keeps the label map in sync.
    pub fn relabel(&mut self, id: RootId, label: String) {
        let old = std::mem::replace(&mut self.roots[id as usize].label, label.clone());
        self.by_label.remove(&old);
        self.by_label.insert(label, id);
    }

    /// Sum over all roots of the outer product `r r^T`, as an
    /// `ambient x ambient` matrix.
    pub fn moment_matrix(&self) -> Vec<Vec<ExactReal>> {
        let d = self.algebra.ambient_dim();
        let mut m = vec![vec![ExactReal::zero(); d]; d];
        for r in &self.roots {
            for i in 0..d {
                for j in 0..d {
                    m[i][j] += &(&r.coords[i] * &r.coords[j]);
                }
            }
        }
        m
    }

    /// Checks that the root moments are proportional to the orthogonal
    /// projector onto the root span, and returns `(K, c)` where `K` is the
    /// normalization constant (`K^2 = 2 |roots|`) and `c` the per-coordinate
    /// moment `sum_r (r . u)^2` for unit directions `u` in the span.
    pub fn derive_normalization(&self) -> Result<(ExactReal, ExactReal), RootError> {
        let d = self.algebra.ambient_dim();
        let m = self.moment_matrix();
        // Expected form: c * P where P projects onto the root span.
        // G2: span = zero-sum plane in R^3; E6: (zero-sum of first six) + e7;
        // F4: all of R^4.
        let proj = projector(self.algebra);
        let mut c: Option<ExactReal> = None;
        for i in 0..d {
            for j in 0..d {
                if proj[i][j].is_zero() {
                    if !m[i][j].is_zero() {
                        return Err(RootError::NotProportional);
                    }
                    continue;
                }
                let ratio = &m[i][j] * &proj[i][j].invert().expect("nonzero");
                match &c {
                    None => c = Some(ratio),
                    Some(prev) => {
                        if *prev != ratio {
                            return Err(RootError::NotProportional);
                        }
                    }
                }
            }
        }
        Ok((self.k.clone(), c.expect("nonzero projector")))
    }
}

/// Orthogonal projector onto the subspace spanned by the roots, in ambient
/// coordinates.
pub fn projector(algebra: Algebra) -> Vec<Vec<ExactReal>> {
    let d = algebra.ambient_dim();
    let mut p = vec![vec![ExactReal::zero(); d]; d];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = ExactReal::one();
    }
    match algebra {
        Algebra::F4 => {}
        Algebra::G2 => {
            let third = ExactReal::rational(1, 3);
            for row in p.iter_mut() {
                for x in row.iter_mut().take(3) {
                    *x = &*x - &third;
                }
            }
        }
        Algebra::E6 => {
            let sixth = ExactReal::rational(1, 6);
            for row in p.iter_mut().take(6) {
                for x in row.iter_mut().take(6) {
                    *x = &*x - &sixth;
                }
            }
        }
    }
    p
}

/// Canonicalizes a Cartan vector by projecting it onto the root span.
pub fn project_vec(algebra: Algebra, v: &[ExactReal]) -> Vec<ExactReal> {
    match algebra {
        Algebra::F4 => v.to_vec(),
        Algebra::G2 => {
            let mut mean = ExactReal::zero();
            for x in v {
                mean += x;
            }
            mean = mean.scale(&BigRational::new(BigInt::from(1), BigInt::from(3)));
            v.iter().map(|x| x - &mean).collect()
        }
        Algebra::E6 => {
            let mut mean = ExactReal::zero();
            for x in v.iter().take(6) {
                mean += x;
            }
            mean = mean.scale(&BigRational::new(BigInt::from(1), BigInt::from(6)));
            let mut out: Vec<ExactReal> = v.iter().take(6).map(|x| x - &mean).collect();
            out.push(v[6].clone());
            out
        }
    }
}

/// Maps exact coordinates to integers by dividing out the per-coordinate
/// unit: 1 for G2, 1/2 for F4, and for E6 1/2 on the first six coordinates
/// and sqrt(2)/2 on the seventh.
pub fn int_key(algebra: Algebra, coords: &[ExactReal]) -> Option<Vec<i64>> {
    let to_int = |v: &ExactReal| -> Option<i64> {
        let q = v.as_rational()?;
        if !q.denom().is_one() {
            return None;
        }
        i64::try_from(q.numer()).ok()
    };
    match algebra {
        Algebra::G2 => coords.iter().map(to_int).collect(),
        Algebra::F4 => {
            let two = ExactReal::from_integer(2);
            coords.iter().map(|c| to_int(&(c * &two))).collect()
        }
        Algebra::E6 => {
            let two = ExactReal::from_integer(2);
            let sqrt2 = ExactReal::sqrt_mult(1, 2);
            let mut out = Vec::with_capacity(7);
            for c in &coords[..6] {
                out.push(to_int(&(c * &two))?);
            }
            out.push(to_int(&(&coords[6] * &sqrt2))?);
            Some(out)
        }
    }
}

fn normalize_label(label: &str) -> String {
    let mut s = label.trim().to_string();
    for (from, to) in [
        ("\u{03b1}", "alpha"), // α
        ("\u{03b2}", "beta"),  // β
        ("\u{03b3}", "gamma"), // γ
        ("\u{03b5}", "eps"),   // ε
        ("\u{03f5}", "eps"),
        ("\u{03bb}", "lam"), // λ
        ("\u{2212}", "-"),   // minus sign
        ("epsilon", "eps"),
        ("lambda", "lam"),
        ("_", ""),
        (" ", ""),
    ] {
        s = s.replace(from, to);
    }
    s
}

fn push(roots: &mut Vec<Root>, tags: &mut Vec<Option<&'static str>>, r: Root, tag: Option<&'static str>) {
    roots.push(r);
    tags.push(tag);
}

fn g2_coords(pattern: [i64; 3]) -> Vec<ExactReal> {
    pattern.iter().map(|&n| int(n)).collect()
}

fn build_g2(roots: &mut Vec<Root>, tags: &mut Vec<Option<&'static str>>) {
    // Short: e_i - e_j for i != j. Labels are provisional; index labels
    // "1".."6" are attached by the label solver.
    for i in 0..3usize {
        for j in 0..3usize {
            if i == j {
                continue;
            }
            let mut c = [0i64; 3];
            c[i] = 1;
            c[j] = -1;
            push(
                roots,
                tags,
                Root {
                    coords: g2_coords(c),
                    family: "e_i-e_j",
                    label: format!("s{}{}", i + 1, j + 1),
                },
                None,
            );
        }
    }
    // Long: +-(e_i + e_j - 2 e_k), labeled by the distinguished index k.
    for k in 0..3usize {
        let mut c = [1i64; 3];
        c[k] = -2;
        push(
            roots,
            tags,
            Root {
                coords: g2_coords(c),
                family: "e_i+e_j-2e_k",
                label: format!("l{}", k + 1),
            },
            None,
        );
        push(
            roots,
            tags,
            Root {
                coords: g2_coords(c.map(|x| -x)),
                family: "e_i+e_j-2e_k",
                label: format!("-l{}", k + 1),
            },
            None,
        );
    }
}

fn axis(d: usize, i: usize, v: ExactReal) -> Vec<ExactReal> {
    let mut c = vec![ExactReal::zero(); d];
    c[i] = v;
    c
}

fn build_f4(roots: &mut Vec<Root>, tags: &mut Vec<Option<&'static str>>) {
    // B4 part: +-e_i and +-e_i +- e_j.
    for i in 0..4usize {
        push(
            roots,
            tags,
            Root {
                coords: axis(4, i, int(1)),
                family: "e_i",
                label: format!("{}", i + 1),
            },
            Some("B4"),
        );
        push(
            roots,
            tags,
            Root {
                coords: axis(4, i, int(-1)),
                family: "e_i",
                label: format!("-{}", i + 1),
            },
            Some("B4"),
        );
    }
    for i in 0..4usize {
        for j in (i + 1)..4usize {
            for (si, sj, name) in [
                (1, 1, format!("{}+{}", i + 1, j + 1)),
                (1, -1, format!("{}-{}", i + 1, j + 1)),
                (-1, 1, format!("-{}+{}", i + 1, j + 1)),
                (-1, -1, format!("-{}-{}", i + 1, j + 1)),
            ] {
                let mut c = vec![ExactReal::zero(); 4];
                c[i] = int(si);
                c[j] = int(sj);
                push(
                    roots,
                    tags,
                    Root {
                        coords: c,
                        family: "e_i+-e_j",
                        label: name,
                    },
                    Some("B4"),
                );
            }
        }
    }
    // Half-sum part, via the alpha/beta/gamma/eps shorthand. The first
    // bracket of each family definition is fixed; the second is signed by
    // the subscript (1 -> +, 2 -> -).
    let families: [(&'static str, [i64; 4], [i64; 4]); 4] = [
        ("alpha", [1, 1, 0, 0], [0, 0, 1, 1]),  // (e1+e2) +- (e3+e4)
        ("beta", [1, 1, 0, 0], [0, 0, -1, 1]),  // (e1+e2) +- (e4-e3)
        ("gamma", [-1, 1, 0, 0], [0, 0, 1, 1]), // (e2-e1) +- (e3+e4)
        ("eps", [-1, 1, 0, 0], [0, 0, -1, 1]),  // (e2-e1) +- (e4-e3)
    ];
    for (name, base, second) in families {
        for idx in [1usize, 2] {
            let sign = if idx == 1 { 1 } else { -1 };
            let coords: Vec<ExactReal> = (0..4).map(|i| half(base[i] + sign * second[i])).collect();
            push(
                roots,
                tags,
                Root {
                    coords: coords.clone(),
                    family: "half-sum",
                    label: format!("{name}{idx}"),
                },
                None,
            );
            push(
                roots,
                tags,
                Root {
                    coords: vec_neg(&coords),
                    family: "half-sum",
                    label: format!("-{name}{idx}"),
                },
                None,
            );
        }
    }
}

/// E6 half-sum family data: base part plus signed parts. Coordinates are
/// in units of 1/2; the seventh slot holds the coefficient of sqrt(2) e7.
struct E6Family {
    name: &'static str,
    base: [i64; 7],
    parts: Vec<[i64; 7]>,
}

fn e6_vec(units: [i64; 7]) -> Vec<ExactReal> {
    // First six coordinates in halves; the seventh is a multiple of
    // (1/2) sqrt(2) e7.
    let mut c: Vec<ExactReal> = units[..6].iter().map(|&n| half(n)).collect();
    c.push(ExactReal::radical(
        BigRational::new(BigInt::from(units[6]), BigInt::from(2)),
        2,
    ));
    c
}

fn build_e6(roots: &mut Vec<Root>, tags: &mut Vec<Option<&'static str>>) {
    // A5 part: e_i - e_j, i != j, i,j = 1..6.
    for i in 0..6usize {
        for j in 0..6usize {
            if i == j {
                continue;
            }
            let mut c = vec![ExactReal::zero(); 7];
            c[i] = int(1);
            c[j] = int(-1);
            push(
                roots,
                tags,
                Root {
                    coords: c,
                    family: "e_i-e_j",
                    label: format!("{}-{}", i + 1, j + 1),
                },
                Some("A5"),
            );
        }
    }
    // +- sqrt(2) e7.
    for (s, name) in [(1i64, "e7"), (-1, "-e7")] {
        let mut c = vec![ExactReal::zero(); 7];
        c[6] = ExactReal::sqrt_mult(s, 2);
        push(
            roots,
            tags,
            Root {
                coords: c,
                family: "sqrt2-e7",
                label: name.to_string(),
            },
            None,
        );
    }
    // Half-sum families. Sign subscripts: for alpha/beta/eps the two
    // optional parts get the sign patterns (+,+), (+,-), (-,+), (-,-) for
    // indices 1..4; for lam the three optional parts run through
    // (+,+,+) .. (-,-,-) for indices 1..8, leading part always +(e2-e1).
    let families = vec![
        E6Family {
            name: "alpha",
            base: [1, 1, -1, -1, 0, 0, 0],
            parts: vec![[0, 0, 0, 0, -1, 1, 0], [0, 0, 0, 0, 0, 0, 1]],
        },
        E6Family {
            name: "beta",
            base: [1, 1, 0, 0, -1, -1, 0],
            parts: vec![[0, 0, -1, 1, 0, 0, 0], [0, 0, 0, 0, 0, 0, 1]],
        },
        E6Family {
            name: "eps",
            base: [0, 0, 1, 1, -1, -1, 0],
            parts: vec![[-1, 1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0, 1]],
        },
        E6Family {
            name: "lam",
            base: [0, 0, 0, 0, 0, 0, 0],
            parts: vec![
                [-1, 1, 0, 0, 0, 0, 0],
                [0, 0, -1, 1, 0, 0, 0],
                [0, 0, 0, 0, -1, 1, 0],
                [0, 0, 0, 0, 0, 0, 1],
            ],
        },
    ];
    for fam in families {
        let free = if fam.name == "lam" { 3 } else { 2 };
        let count = 1usize << free;
        for idx in 0..count {
            let mut units = fam.base;
            // The lam family's first part carries a fixed + sign.
            if fam.name == "lam" {
                for (u, p) in units.iter_mut().zip(fam.parts[0]) {
                    *u += p;
                }
            }
            for bit in 0..free {
                // Subscript k = idx+1 maps to sign pattern: bit 0 is the
                // first optional part, + when the bit is clear.
                let sign = if idx & (1 << (free - 1 - bit)) == 0 { 1 } else { -1 };
                let part = fam.parts[if fam.name == "lam" { bit + 1 } else { bit }];
                for (u, p) in units.iter_mut().zip(part) {
                    *u += sign * p;
                }
            }
            let coords = e6_vec(units);
            push(
                roots,
                tags,
                Root {
                    coords: coords.clone(),
                    family: "half-sum",
                    label: format!("{}{}", fam.name, idx + 1),
                },
                None,
            );
            push(
                roots,
                tags,
                Root {
                    coords: vec_neg(&coords),
                    family: "half-sum",
                    label: format!("-{}{}", fam.name, idx + 1),
                },
                None,
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(RootSystem::build(Algebra::G2).len(), 12);
        assert_eq!(RootSystem::build(Algebra::F4).len(), 48);
        assert_eq!(RootSystem::build(Algebra::E6).len(), 72);
    }

    #[test]
    fn f4_family_breakdown() {
        let rs = RootSystem::build(Algebra::F4);
        let count = |fam: &str| rs.roots.iter().filter(|r| r.family == fam).count();
        assert_eq!(count("e_i"), 8);
        assert_eq!(count("e_i+-e_j"), 24);
        assert_eq!(count("half-sum"), 16);
    }

    #[test]
    fn e6_family_breakdown() {
        let rs = RootSystem::build(Algebra::E6);
        let count = |fam: &str| rs.roots.iter().filter(|r| r.family == fam).count();
        assert_eq!(count("e_i-e_j"), 30);
        assert_eq!(count("sqrt2-e7"), 2);
        assert_eq!(count("half-sum"), 40);
        // Every half-sum root has three + and three - among the first six
        // coordinates.
        for r in rs.roots.iter().filter(|r| r.family == "half-sum") {
            let pos = r.coords[..6].iter().filter(|c| c.signum() > 0).count();
            assert_eq!(pos, 3, "root {}", r.label);
        }
    }

    #[test]
    fn negation_closure() {
        for a in [Algebra::G2, Algebra::F4, Algebra::E6] {
            let rs = RootSystem::build(a);
            for id in rs.ids() {
                let n = rs.neg(id);
                assert_eq!(vec_neg(&rs.root(id).coords), rs.root(n).coords);
                assert_eq!(rs.neg(n), id);
                assert_ne!(n, id);
            }
        }
    }

    #[test]
    fn g2_roots_sum_to_zero() {
        let rs = RootSystem::build(Algebra::G2);
        for r in &rs.roots {
            let mut s = ExactReal::zero();
            for c in &r.coords {
                s += c;
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn normalization_constants() {
        let (k, c) = RootSystem::build(Algebra::G2).derive_normalization().unwrap();
        assert_eq!(k, ExactReal::sqrt_ratio(24, 1));
        assert_eq!(c, ExactReal::from_integer(24));

        let (k, c) = RootSystem::build(Algebra::E6).derive_normalization().unwrap();
        assert_eq!(k, ExactReal::from_integer(12));
        assert_eq!(c, ExactReal::from_integer(24));

        // F4's constant is not printed anywhere; the calibrated rule
        // K^2 = 2 |roots| gives sqrt(96). The raw per-coordinate moment
        // is 18.
        let (k, c) = RootSystem::build(Algebra::F4).derive_normalization().unwrap();
        assert_eq!(k, ExactReal::sqrt_ratio(96, 1));
        assert_eq!(c, ExactReal::from_integer(18));
    }

    #[test]
    fn shorthand_labels_resolve() {
        let f4 = RootSystem::build(Algebra::F4);
        // alpha_1 = (e1+e2+e3+e4)/2
        let id = f4.resolve_label("\u{03b1}_1").unwrap();
        assert_eq!(
            f4.root(id).coords,
            vec![
                ExactReal::rational(1, 2),
                ExactReal::rational(1, 2),
                ExactReal::rational(1, 2),
                ExactReal::rational(1, 2)
            ]
        );
        // eps_2 = ((e2-e1) - (e4-e3))/2
        let id = f4.resolve_label("eps_2").unwrap();
        assert_eq!(
            f4.root(id).coords,
            vec![
                ExactReal::rational(-1, 2),
                ExactReal::rational(1, 2),
                ExactReal::rational(1, 2),
                ExactReal::rational(-1, 2)
            ]
        );

        let e6 = RootSystem::build(Algebra::E6);
        // lam_8 = (+(e2-e1) - (e4-e3) - (e6-e5) - sqrt(2) e7)/2
        let id = e6.resolve_label("\u{03bb}_8").unwrap();
        let r = e6.root(id);
        assert_eq!(r.coords[0], ExactReal::rational(-1, 2));
        assert_eq!(r.coords[1], ExactReal::rational(1, 2));
        assert_eq!(r.coords[2], ExactReal::rational(1, 2));
        assert_eq!(r.coords[3], ExactReal::rational(-1, 2));
        assert_eq!(r.coords[4], ExactReal::rational(1, 2));
        assert_eq!(r.coords[5], ExactReal::rational(-1, 2));
        assert_eq!(
            r.coords[6],
            ExactReal::radical(BigRational::new(BigInt::from(-1), BigInt::from(2)), 2)
        );
        assert!(e6.resolve_label("lam_9").is_err());
    }

    #[test]
    fn subalgebra_tags() {
        let f4 = RootSystem::build(Algebra::F4);
        let b4 = f4
            .subalgebra
            .iter()
            .filter(|t| **t == Some("B4"))
            .count();
        assert_eq!(b4, 32);
        let e6 = RootSystem::build(Algebra::E6);
        let a5 = e6
            .subalgebra
            .iter()
            .filter(|t| **t == Some("A5"))
            .count();
        assert_eq!(a5, 30);
    }
}
