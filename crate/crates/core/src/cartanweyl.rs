//! The Cartan-Weyl basis and commutator engine.
//!
//! Generators are the Cartan elements plus one raising generator `E_r` per
//! nonnull root `r`. Cartan elements are represented by vectors `v` in the
//! coordinate space of the roots (canonicalized by projection onto the root
//! span), with the bracket rules
//!
//! ```text
//!   [v, E_b]      = (v . b)/K^2  E_b
//!   [E_a, E_{-a}] = a                (as a Cartan vector)
//!   [E_a, E_b]    = N_ab E_{a+b}     when a+b is a root, else 0
//! ```
//!
//! The structure constants `N_ab` come from a small set of given entries,
//! closed under antisymmetry and conjugation and completed by Jacobi
//! propagation with backtracking over residual sign freedom.

use crate::exactnum::ExactReal;
use crate::rootsystem::{dot, project_vec, Algebra, RootId, RootSystem};
use num::rational::BigRational;
use num::{BigInt, One};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

/// How an entry of the structure-constant table was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Seeded from the published table data.
    Given,
    /// Antisymmetry / conjugation image of a given entry.
    Symmetry,
    /// Determined by the Jacobi identity.
    Jacobi,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SolveError {
    #[error("given pair ({0}, {1}) does not sum to a root")]
    InvalidGiven(String, String),
    #[error("conflicting values for structure constant ({0}, {1})")]
    ConflictingGiven(String, String),
    #[error("Jacobi contradiction on triple ({0}, {1}, {2})")]
    Contradiction(String, String, String),
    #[error("structure constants under-determined; free pairs: {0:?}")]
    UnderDetermined(Vec<(String, String)>),
    #[error("no completion consistent with the validation probe")]
    NoValidCompletion,
}

/// Complete antisymmetric structure-constant table, scaled by 1/K.
#[derive(Clone, Debug)]
pub struct StructureTable {
    /// Canonical-orbit entries; see [`CartanWeyl::canon_pair`].
    entries: BTreeMap<(RootId, RootId), ExactReal>,
    provenance: BTreeMap<(RootId, RootId), Provenance>,
}

impl StructureTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn canonical_entries(&self) -> impl Iterator<Item = (&(RootId, RootId), &ExactReal)> {
        self.entries.iter()
    }

    pub fn provenance_of(&self, key: &(RootId, RootId)) -> Option<Provenance> {
        self.provenance.get(key).copied()
    }
}

/// A sparse element of the algebra: a Cartan vector plus root-generator
/// terms. Canonical: the Cartan vector is projected onto the root span and
/// no zero root coefficients are stored, so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AlgebraElement {
    pub cartan: Vec<ExactReal>,
    pub roots: BTreeMap<RootId, ExactReal>,
}

impl AlgebraElement {
    pub fn zero(ambient_dim: usize) -> Self {
        AlgebraElement {
            cartan: vec![ExactReal::zero(); ambient_dim],
            roots: BTreeMap::new(),
        }
    }

    pub fn root_term(ambient_dim: usize, id: RootId, coeff: ExactReal) -> Self {
        let mut e = Self::zero(ambient_dim);
        if !coeff.is_zero() {
            e.roots.insert(id, coeff);
        }
        e
    }

    pub fn cartan_term(algebra: Algebra, v: &[ExactReal], coeff: &ExactReal) -> Self {
        let scaled: Vec<ExactReal> = v.iter().map(|x| x * coeff).collect();
        AlgebraElement {
            cartan: project_vec(algebra, &scaled),
            roots: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.cartan.iter().all(|c| c.is_zero())
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (c, o) in self.cartan.iter_mut().zip(&other.cartan) {
            *c += o;
        }
        for (id, coeff) in &other.roots {
            let entry = self.roots.entry(*id).or_insert_with(ExactReal::zero);
            *entry += coeff;
            if entry.is_zero() {
                self.roots.remove(id);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> Self {
        self.add(&other.scaled(&-ExactReal::one()))
    }

    pub fn scaled(&self, s: &ExactReal) -> Self {
        if s.is_zero() {
            return Self::zero(self.cartan.len());
        }
        AlgebraElement {
            cartan: self.cartan.iter().map(|c| c * s).collect(),
            roots: self.roots.iter().map(|(id, c)| (*id, c * s)).collect(),
        }
    }

    /// Hermitian conjugate with `H^dag = H`, `E_a^dag = E_{-a}` and real
    /// coefficients.
    pub fn dagger(&self, roots: &RootSystem) -> Self {
        AlgebraElement {
            cartan: self.cartan.clone(),
            roots: self
                .roots
                .iter()
                .map(|(id, c)| (roots.neg(*id), c.clone()))
                .collect(),
        }
    }

    /// If `self == lambda * other` for a scalar `lambda`, returns it.
    /// Requires `other != 0`.
    pub fn ratio_to(&self, other: &AlgebraElement) -> Option<ExactReal> {
        if self.is_zero() {
            return Some(ExactReal::zero());
        }
        let lambda = if let Some((id, c)) = other.roots.iter().next() {
            let mine = self.roots.get(id)?;
            mine * &c.invert().ok()?
        } else {
            let (i, c) = other
                .cartan
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())?;
            &self.cartan[i] * &c.invert().ok()?
        };
        if *self == other.scaled(&lambda) {
            Some(lambda)
        } else {
            None
        }
    }

    pub fn render(&self, roots: &RootSystem) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.cartan.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("({c})*H{}", i + 1));
            }
        }
        for (id, c) in &self.roots {
            parts.push(format!("({c})*E[{}]", roots.root(*id).label));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cartan={:?} roots={:?}", self.cartan, self.roots)
    }
}

/// A basis generator: one Cartan basis element or one root generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GenId {
    Cartan(u8),
    Root(RootId),
}

/// The assembled engine: roots, completed structure constants and the
/// Cartan frame used for generator expansion.
pub struct CartanWeyl {
    pub algebra: Algebra,
    pub roots: RootSystem,
    pub table: StructureTable,
    /// 1 / K^2 as a rational scale.
    k2_inv: BigRational,
    /// Basis of the root span, in ambient coordinates.
    cartan_basis: Vec<Vec<ExactReal>>,
    /// Inverse Gram matrix of `cartan_basis`, for coordinate extraction.
    gram_inv: Vec<Vec<ExactReal>>,
}

impl CartanWeyl {
    pub fn from_parts(roots: RootSystem, table: StructureTable) -> Self {
        let algebra = roots.algebra;
        let k2_inv = BigRational::new(BigInt::one(), BigInt::from(2 * roots.len() as i64));
        let cartan_basis = cartan_basis(algebra);
        let gram_inv = {
            let n = cartan_basis.len();
            let mut g = vec![vec![ExactReal::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    g[i][j] = dot(&cartan_basis[i], &cartan_basis[j]);
                }
            }
            invert_matrix(&g).expect("Cartan basis is independent")
        };
        CartanWeyl {
            algebra,
            roots,
            table,
            k2_inv,
            cartan_basis,
            gram_inv,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan_basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.algebra.ambient_dim()
    }

    /// Canonical orbit representative of the pair `(a, b)` under
    /// antisymmetry and conjugation, with the sign relating the stored
    /// value to `N_ab`.
    pub fn canon_pair(roots: &RootSystem, a: RootId, b: RootId) -> ((RootId, RootId), i8) {
        let na = roots.neg(a);
        let nb = roots.neg(b);
        let mut best = ((a, b), 1i8);
        for cand in [((b, a), -1i8), ((na, nb), -1), ((nb, na), 1)] {
            if cand.0 < best.0 {
                best = cand;
            }
        }
        best
    }

    /// Structure constant `N_ab`; `None` when `a+b` is not a root.
    pub fn n(&self, a: RootId, b: RootId) -> Option<ExactReal> {
        self.roots.sum(a, b)?;
        let (key, sign) = Self::canon_pair(&self.roots, a, b);
        let v = self
            .table
            .entries
            .get(&key)
            .unwrap_or_else(|| panic!("missing structure constant for pair {key:?}"));
        Some(if sign < 0 { -v } else { v.clone() })
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.ambient_dim())
    }

    pub fn root_element(&self, id: RootId, coeff: ExactReal) -> AlgebraElement {
        AlgebraElement::root_term(self.ambient_dim(), id, coeff)
    }

    pub fn labeled_root_element(&self, label: &str, coeff: ExactReal) -> AlgebraElement {
        let id = self
            .roots
            .resolve_label(label)
            .unwrap_or_else(|e| panic!("{e}"));
        self.root_element(id, coeff)
    }

    pub fn generator(&self, id: GenId) -> AlgebraElement {
        match id {
            GenId::Cartan(i) => AlgebraElement {
                cartan: self.cartan_basis[i as usize].clone(),
                roots: BTreeMap::new(),
            },
            GenId::Root(r) => self.root_element(r, ExactReal::one()),
        }
    }

    pub fn generators(&self) -> Vec<GenId> {
        let mut g: Vec<GenId> = (0..self.rank()).map(|i| GenId::Cartan(i as u8)).collect();
        g.extend(self.roots.ids().map(GenId::Root));
        g
    }

    /// Exact commutator of two elements.
    pub fn commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        // [cartan_a, E_b] and [E_a, cartan_b]
        for (id, cb) in &b.roots {
            let w = self.weight(&a.cartan, *id);
            if !w.is_zero() {
                self.accumulate_root(&mut out, *id, &(&w * cb));
            }
        }
        for (id, ca) in &a.roots {
            let w = self.weight(&b.cartan, *id);
            if !w.is_zero() {
                self.accumulate_root(&mut out, *id, &-&(&w * ca));
            }
        }
        // [E_a, E_b]
        for (ia, ca) in &a.roots {
            for (ib, cb) in &b.roots {
                let c = ca * cb;
                if *ib == self.roots.neg(*ia) {
                    let alpha = &self.roots.root(*ia).coords;
                    for (o, x) in out.cartan.iter_mut().zip(alpha.iter()) {
                        *o += &(x * &c);
                    }
                } else if let Some(sum) = self.roots.sum(*ia, *ib) {
                    let n = self.n(*ia, *ib).expect("sum is a root");
                    self.accumulate_root(&mut out, sum, &(&n * &c));
                }
            }
        }
        out.cartan = project_vec(self.algebra, &out.cartan);
        out
    }

    fn accumulate_root(&self, out: &mut AlgebraElement, id: RootId, c: &ExactReal) {
        if c.is_zero() {
            return;
        }
        let entry = out.roots.entry(id).or_insert_with(ExactReal::zero);
        *entry += c;
        if entry.is_zero() {
            out.roots.remove(&id);
        }
    }

    /// Eigenvalue of the Cartan vector `v` on `E_root`: `(v . root)/K^2`.
    pub fn weight(&self, v: &[ExactReal], root: RootId) -> ExactReal {
        dot(v, &self.roots.root(root).coords).scale(&self.k2_inv)
    }

    /// Expands an element over the generator basis (Cartan basis elements
    /// plus root generators).
    pub fn generator_terms(&self, e: &AlgebraElement) -> Vec<(GenId, ExactReal)> {
        let mut out = Vec::new();
        if e.cartan.iter().any(|c| !c.is_zero()) {
            let coords = self.cartan_coords(&e.cartan);
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((GenId::Cartan(i as u8), c));
                }
            }
        }
        for (id, c) in &e.roots {
            out.push((GenId::Root(*id), c.clone()));
        }
        out
    }

    /// Coordinates of a canonical Cartan vector in the Cartan basis.
    pub fn cartan_coords(&self, v: &[ExactReal]) -> Vec<ExactReal> {
        let n = self.cartan_basis.len();
        let rhs: Vec<ExactReal> = (0..n).map(|i| dot(&self.cartan_basis[i], v)).collect();
        (0..n)
            .map(|i| {
                let mut acc = ExactReal::zero();
                for j in 0..n {
                    acc += &(&self.gram_inv[i][j] * &rhs[j]);
                }
                acc
            })
            .collect()
    }

    /// Exhaustive Jacobi check over all unordered generator triples.
    /// Returns the number of triples scanned and any violating triples.
    pub fn jacobi_scan(&self) -> (usize, Vec<(GenId, GenId, GenId)>) {
        let gens = self.generators();
        let n = gens.len();
        let elems: Vec<AlgebraElement> = gens.iter().map(|g| self.generator(*g)).collect();
        // Precompute pairwise commutators.
        let pair: Vec<Vec<AlgebraElement>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| self.commutator(&elems[i], &elems[j]))
                    .collect()
            })
            .collect();
        let total = n * (n - 1) * (n - 2) / 6;
        let violations: Vec<(GenId, GenId, GenId)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let pair = &pair;
                let elems = &elems;
                let gens = &gens;
                ((i + 1)..n).flat_map(move |j| {
                    ((j + 1)..n).filter_map(move |k| {
                        let mut acc = self.commutator(&pair[i][j], &elems[k]);
                        acc.add_assign(&self.commutator(&pair[j][k], &elems[i]));
                        acc.add_assign(&self.commutator(&pair[k][i], &elems[j]));
                        if acc.is_zero() {
                            None
                        } else {
                            Some((gens[i], gens[j], gens[k]))
                        }
                    })
                })
            })
            .collect();
        (total, violations)
    }

    /// Returns a copy of the engine with the sign of one canonical table
    /// entry flipped (its antisymmetry/conjugation mates flip with it).
    pub fn with_flipped_entry(&self, key: (RootId, RootId)) -> CartanWeyl {
        let mut table = self.table.clone();
        let v = table.entries.get_mut(&key).expect("entry exists");
        *v = -&*v;
        CartanWeyl::from_parts(self.roots.clone(), table)
    }
}

/// Basis of the root span in ambient coordinates.
fn cartan_basis(algebra: Algebra) -> Vec<Vec<ExactReal>> {
    match algebra {
        Algebra::F4 => (0..4)
            .map(|i| {
                let mut v = vec![ExactReal::zero(); 4];
                v[i] = ExactReal::one();
                v
            })
            .collect(),
        Algebra::G2 => (0..2)
            .map(|i| {
                let mut v = vec![ExactReal::zero(); 3];
                v[i] = ExactReal::one();
                project_vec(Algebra::G2, &v)
            })
            .collect(),
        Algebra::E6 => {
            let mut basis: Vec<Vec<ExactReal>> = (0..5)
                .map(|i| {
                    let mut v = vec![ExactReal::zero(); 7];
                    v[i] = ExactReal::one();
                    project_vec(Algebra::E6, &v)
                })
                .collect();
            let mut e7 = vec![ExactReal::zero(); 7];
            e7[6] = ExactReal::one();
            basis.push(e7);
            basis
        }
    }
}

/// Gaussian elimination over the exact field.
fn invert_matrix(m: &[Vec<ExactReal>]) -> Option<Vec<Vec<ExactReal>>> {
    let n = m.len();
    let mut a: Vec<Vec<ExactReal>> = m.to_vec();
    let mut inv: Vec<Vec<ExactReal>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        ExactReal::one()
                    } else {
                        ExactReal::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].invert().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &scale;
            inv[col][j] = &inv[col][j] * &scale;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &t;
                let t = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Some(inv)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("quadratic expression is not Lie-algebra valued (symmetric part at {0})")]
    NotLieValued(String),
}

/// A formal sum of ordered products of basis generators, the degree-two
/// slice of the enveloping algebra. Used to evaluate coupled tensor
/// products before they are recognized as algebra elements.
#[derive(Clone, Debug, Default)]
pub struct Quadratic {
    terms: BTreeMap<(GenId, GenId), ExactReal>,
}

impl Quadratic {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GenId, GenId), &ExactReal)> {
        self.terms.iter()
    }

    fn insert(&mut self, key: (GenId, GenId), c: ExactReal) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(ExactReal::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Adds `coeff * a (x) b`, expanded over generators.
    pub fn add_product(
        &mut self,
        cw: &CartanWeyl,
        a: &AlgebraElement,
        b: &AlgebraElement,
        coeff: &ExactReal,
    ) {
        if coeff.is_zero() {
            return;
        }
        let ta = cw.generator_terms(a);
        let tb = cw.generator_terms(b);
        for (ga, ca) in &ta {
            for (gb, cb) in &tb {
                self.insert((*ga, *gb), &(ca * cb) * coeff);
            }
        }
    }

    /// Projects onto the Lie algebra: requires the symmetrized part to
    /// vanish, in which case the value is `1/2 sum c_(g,h) [g, h]`.
    pub fn reduce(&self, cw: &CartanWeyl) -> Result<AlgebraElement, ReduceError> {
        for ((g, h), c) in &self.terms {
            let sym = match g.cmp(h) {
                std::cmp::Ordering::Equal => c.clone(),
                _ => {
                    let mirror = self
                        .terms
                        .get(&(*h, *g))
                        .cloned()
                        .unwrap_or_else(ExactReal::zero);
                    c + &mirror
                }
            };
            if !sym.is_zero() {
                return Err(ReduceError::NotLieValued(format!("{g:?} {h:?}")));
            }
        }
        let mut out = cw.zero();
        let half = ExactReal::rational(1, 2);
        for ((g, h), c) in &self.terms {
            let bracket = cw.commutator(&cw.generator(*g), &cw.generator(*h));
            out.add_assign(&bracket.scaled(&(c * &half)));
        }
        Ok(out)
    }
}

/// One given structure constant: a pair of root labels plus the exact value
/// (already scaled by 1/K).
pub type Given = ((RootId, RootId), ExactReal);

/// The published structure-constant seed for F4 and E6 (G2's seed depends
/// on the solved index assignment and is produced by the label solver).
pub fn given_constants(roots: &RootSystem) -> Vec<Given> {
    match roots.algebra {
        Algebra::G2 => Vec::new(),
        Algebra::F4 => f4_givens(roots),
        Algebra::E6 => e6_givens(roots),
    }
}

fn pair(roots: &RootSystem, x: &str, y: &str) -> (RootId, RootId) {
    let a = roots.resolve_label(x).unwrap_or_else(|e| panic!("{e}"));
    let b = roots.resolve_label(y).unwrap_or_else(|e| panic!("{e}"));
    (a, b)
}

fn f4_givens(roots: &RootSystem) -> Vec<Given> {
    let k_inv = roots.k.invert().expect("K != 0");
    let minus_inv_k = -&k_inv;
    let sqrt_half = ExactReal::sqrt_ratio(1, 2);
    let mut out = Vec::new();
    // B4 sector, for i < j < k <= 4.
    for i in 1..=4u8 {
        for j in (i + 1)..=4 {
            for k in (j + 1)..=4 {
                let entries = [
                    (format!("{i}"), format!("{j}")),
                    (format!("{j}"), format!("{i}-{j}")),
                    (format!("{i}-{k}"), format!("{j}+{k}")),
                    (format!("{i}+{k}"), format!("{j}-{k}")),
                    (format!("{j}+{k}"), format!("{i}-{j}")),
                    (format!("{j}-{k}"), format!("{i}-{j}")),
                ];
                for (x, y) in entries {
                    out.push((pair(roots, &x, &y), minus_inv_k.clone()));
                }
            }
        }
    }
    // Half-sum sector: G_xy / K.
    let one = [
        ("alpha1", "alpha2", 1i8),
        ("alpha1", "-alpha2", 1),
        ("beta1", "beta2", 1),
        ("beta1", "-beta2", 1),
        ("gamma1", "gamma2", 1),
        ("gamma1", "-gamma2", 1),
        ("eps1", "eps2", 1),
        ("eps1", "-eps2", 1),
        ("alpha1", "eps1", 1),
        ("alpha1", "-eps1", -1),
        ("alpha1", "eps2", 1),
        ("alpha1", "-eps2", 1),
        ("-alpha2", "eps1", 1),
        ("-alpha2", "-eps1", 1),
        ("-alpha2", "eps2", 1),
        ("-alpha2", "-eps2", -1),
        ("beta1", "gamma1", 1),
        ("beta1", "-gamma1", 1),
        ("beta1", "gamma2", -1),
        ("beta1", "-gamma2", 1),
        // The source table prints this row as -beta1, which contradicts
        // the conjugation symmetry applied to the beta1 row in two of the
        // four cells; the row only parses consistently as -beta2 (the same
        // row pattern its sibling blocks use).
        ("-beta2", "gamma1", 1),
        ("-beta2", "-gamma1", -1),
        ("-beta2", "gamma2", -1),
        ("-beta2", "-gamma2", -1),
    ];
    // The four sqrt(1/2) blocks. As printed, the set is not Jacobi
    // consistent with the unit blocks and the B4 sector (no relabeling of
    // the half-sum families fixes it); restoring consistency requires
    // flipping either the alpha-beta and gamma-eps blocks or the
    // alpha-gamma and beta-eps blocks. The first choice is the one under
    // which the printed component tables and their commutation relations
    // all verify, so it is applied here.
    let roothalf = [
        ("alpha1", "-beta2", -1i8),
        ("alpha1", "-beta1", 1),
        ("alpha2", "-beta2", -1),
        ("alpha2", "-beta1", -1),
        ("gamma1", "-eps2", 1),
        ("gamma1", "-eps1", -1),
        ("gamma2", "-eps2", 1),
        ("gamma2", "-eps1", 1),
        ("alpha1", "gamma2", 1),
        ("alpha1", "-gamma1", -1),
        ("-alpha2", "gamma2", 1),
        ("-alpha2", "-gamma1", 1),
        ("beta1", "eps2", 1),
        ("beta1", "-eps1", -1),
        ("-beta2", "eps2", 1),
        ("-beta2", "-eps1", 1),
    ];
    for (x, y, s) in one {
        let v = if s > 0 { k_inv.clone() } else { -&k_inv };
        out.push((pair(roots, x, y), v));
    }
    for (x, y, s) in roothalf {
        let mut v = &sqrt_half * &k_inv;
        if s < 0 {
            v = -&v;
        }
        out.push((pair(roots, x, y), v));
    }
    out
}

fn e6_givens(roots: &RootSystem) -> Vec<Given> {
    let k_inv = roots.k.invert().expect("K != 0");
    let mut out = Vec::new();
    // A5 sector: N_{i-j, j-k} = 1/K for i < j < k <= 6.
    for i in 1..=6u8 {
        for j in (i + 1)..=6 {
            for k in (j + 1)..=6 {
                out.push((
                    pair(roots, &format!("{i}-{j}"), &format!("{j}-{k}")),
                    k_inv.clone(),
                ));
            }
        }
    }
    // Half-sum sector: S_xy / K. One table cell is unreadable in the
    // source (a bare sign); it is omitted here and recovered by the
    // Jacobi completion.
    let s_entries: [(&str, &str, i8); 99] = [
        ("alpha1", "-alpha3", 1),
        ("alpha1", "-alpha2", -1),
        ("alpha4", "-alpha3", -1),
        ("alpha4", "-alpha2", 1),
        ("beta1", "-alpha3", 1),
        ("beta1", "-alpha1", 1),
        ("beta3", "-alpha3", 1),
        ("beta3", "-alpha1", 1),
        ("beta2", "-alpha4", 1),
        ("beta2", "-alpha2", 1),
        ("beta4", "-alpha4", 1),
        ("beta4", "-alpha2", 1),
        ("beta1", "-beta3", 1),
        ("beta1", "-beta2", -1),
        ("beta4", "-beta3", -1),
        ("beta4", "-beta2", 1),
        ("eps1", "-eps3", 1),
        ("eps1", "-eps2", -1),
        ("eps4", "-eps3", -1),
        ("eps4", "-eps2", 1),
        ("lam1", "-lam3", -1),
        ("lam1", "-lam2", 1),
        // The lam4 row is printed with the opposite signs (+1, -1); no
        // sign gauge makes that reading consistent with the rest of the
        // table, while the flipped row joins a fully consistent solution.
        ("lam4", "-lam3", -1),
        ("lam4", "-lam2", 1),
        ("lam1", "lam8", 1),
        ("lam1", "-lam5", 1),
        ("-lam4", "lam8", -1),
        ("-lam4", "-lam5", -1),
        ("lam2", "lam7", 1),
        ("lam2", "-lam6", 1),
        ("-lam3", "lam7", -1),
        ("-lam3", "-lam6", -1),
        ("lam5", "-lam7", -1),
        ("lam5", "-lam6", 1),
        ("lam8", "-lam7", -1),
        ("lam8", "-lam6", 1),
        ("alpha1", "-lam5", -1),
        ("alpha1", "-lam1", -1),
        ("alpha1", "lam4", -1),
        ("alpha1", "lam8", 1),
        ("-alpha4", "-lam5", 1),
        ("-alpha4", "-lam1", -1),
        ("-alpha4", "lam4", -1),
        ("-alpha4", "lam8", -1),
        ("alpha2", "-lam6", 1),
        ("alpha2", "-lam2", 1),
        ("alpha2", "lam3", 1),
        ("alpha2", "lam7", -1),
        ("-alpha3", "-lam6", 1),
        ("-alpha3", "-lam2", -1),
        ("-alpha3", "lam3", -1),
        ("-alpha3", "lam7", -1),
        ("beta1", "-lam3", -1),
        ("beta1", "-lam1", 1),
        ("beta1", "lam6", 1),
        ("beta1", "lam8", -1),
        ("-beta4", "-lam3", 1),
        ("-beta4", "-lam1", 1),
        ("-beta4", "lam6", 1),
        ("-beta4", "lam8", 1),
        ("beta2", "-lam4", -1),
        ("beta2", "-lam2", -1),
        ("beta2", "lam5", 1),
        ("beta2", "lam7", 1),
        ("-beta3", "-lam4", -1),
        ("-beta3", "-lam2", 1),
        ("-beta3", "lam5", -1),
        // ("-beta3", "lam7", ?) -- unreadable cell, Jacobi-solved.
        // In the two eps-row blocks the alpha columns are printed with
        // globally inverted signs (the -beta columns are fine); the
        // gauge-fit against an independently completed table isolates
        // exactly these eight cells, flipped here.
        ("eps1", "alpha2", 1),
        ("eps1", "alpha4", -1),
        ("eps1", "-beta3", 1),
        ("eps1", "-beta1", -1),
        ("eps3", "alpha2", 1),
        ("eps3", "alpha4", -1),
        ("eps3", "-beta3", -1),
        ("eps3", "-beta1", 1),
        ("eps2", "alpha1", -1),
        ("eps2", "alpha3", 1),
        ("eps2", "-beta4", 1),
        ("eps2", "-beta2", -1),
        ("eps4", "alpha1", -1),
        ("eps4", "alpha3", 1),
        ("eps4", "-beta4", -1),
        ("eps4", "-beta2", 1),
        ("eps1", "-lam7", -1),
        ("eps1", "-lam5", 1),
        ("eps1", "-lam3", 1),
        ("eps1", "-lam1", -1),
        ("-eps4", "-lam7", -1),
        ("-eps4", "-lam5", -1),
        ("-eps4", "-lam3", -1),
        ("-eps4", "-lam1", -1),
        // The last two column heads of this block are printed without
        // their minus signs; +lam4 and +lam2 do not even sum with the eps
        // rows to roots, so the negated reading is forced.
        ("eps2", "-lam8", -1),
        ("eps2", "-lam6", -1),
        ("eps2", "-lam4", 1),
        ("eps2", "-lam2", 1),
        ("-eps3", "-lam8", 1),
        ("-eps3", "-lam6", -1),
        ("-eps3", "-lam4", 1),
        ("-eps3", "-lam2", -1),
    ];
    for (x, y, s) in s_entries {
        let v = if s > 0 { k_inv.clone() } else { -&k_inv };
        out.push((pair(roots, x, y), v));
    }
    out
}

/// Jacobi relations used by the completion solver.
enum Relation {
    /// x + y + z = 0: N_xy = N_yz = N_zx.
    Cyclic(RootId, RootId, RootId),
    /// Triple (a, -a, b):
    /// (a.b)/K^2 + N_{-a,b} N_{b-a,a} + N_{b,a} N_{a+b,-a} = 0.
    Pair(RootId, RootId),
    /// Roots x, y, z with x+y+z a root:
    /// sum over cyclic rotations of N_{xy} N_{x+y,z} = 0.
    Triple(RootId, RootId, RootId),
}

struct SolveState<'a> {
    roots: &'a RootSystem,
    values: BTreeMap<(RootId, RootId), ExactReal>,
    provenance: BTreeMap<(RootId, RootId), Provenance>,
    /// Magnitudes learned from quadratic relations.
    magnitudes: BTreeMap<(RootId, RootId), ExactReal>,
    k2_inv: BigRational,
}

impl<'a> SolveState<'a> {
    fn get(&self, a: RootId, b: RootId) -> Option<ExactReal> {
        let (key, sign) = CartanWeyl::canon_pair(self.roots, a, b);
        self.values
            .get(&key)
            .map(|v| if sign < 0 { -v } else { v.clone() })
    }

    fn set(&mut self, a: RootId, b: RootId, v: ExactReal, p: Provenance) -> Result<bool, SolveError> {
        let (key, sign) = CartanWeyl::canon_pair(self.roots, a, b);
        let v = if sign < 0 { -&v } else { v };
        match self.values.get(&key) {
            Some(existing) => {
                if *existing != v {
                    let la = self.roots.root(key.0).label.clone();
                    let lb = self.roots.root(key.1).label.clone();
                    return Err(SolveError::ConflictingGiven(la, lb));
                }
                Ok(false)
            }
            None => {
                self.values.insert(key, v);
                let stored = if p == Provenance::Given && sign < 0 {
                    Provenance::Symmetry
                } else {
                    p
                };
                self.provenance.insert(key, stored);
                Ok(true)
            }
        }
    }

    fn label(&self, id: RootId) -> String {
        self.roots.root(id).label.clone()
    }

    /// Evaluates one relation. Returns true if it determined a new value.
    fn apply(&mut self, rel: &Relation) -> Result<bool, SolveError> {
        match rel {
            Relation::Cyclic(x, y, z) => {
                let pairs = [(*x, *y), (*y, *z), (*z, *x)];
                let known: Vec<(usize, ExactReal)> = pairs
                    .iter()
                    .enumerate()
                    .filter_map(|(i, (a, b))| self.get(*a, *b).map(|v| (i, v)))
                    .collect();
                if known.is_empty() || known.len() == 3 {
                    if known.len() == 3 {
                        let v = &known[0].1;
                        if known.iter().any(|(_, w)| w != v) {
                            return Err(SolveError::Contradiction(
                                self.label(*x),
                                self.label(*y),
                                self.label(*z),
                            ));
                        }
                    }
                    return Ok(false);
                }
                let v = known[0].1.clone();
                if known.iter().any(|(_, w)| *w != v) {
                    return Err(SolveError::Contradiction(
                        self.label(*x),
                        self.label(*y),
                        self.label(*z),
                    ));
                }
                let mut changed = false;
                for (i, (a, b)) in pairs.iter().enumerate() {
                    if known.iter().all(|(k, _)| *k != i) {
                        changed |= self.set(*a, *b, v.clone(), Provenance::Jacobi)?;
                    }
                }
                Ok(changed)
            }
            Relation::Pair(a, b) => {
                let na = self.roots.neg(*a);
                let alpha = &self.roots.root(*a).coords;
                let beta = &self.roots.root(*b).coords;
                let c0 = dot(alpha, beta).scale(&self.k2_inv);
                let mut products = Vec::new();
                // term: N_{-a,b} * N_{b-a,a} when b-a is a root
                if let Some(bma) = self.roots.sum(*b, na) {
                    products.push(((na, *b), (bma, *a)));
                }
                // term: N_{b,a} * N_{a+b,-a} when a+b is a root
                if let Some(apb) = self.roots.sum(*a, *b) {
                    products.push(((*b, *a), (apb, na)));
                }
                let witness = (self.label(*a), self.label(na), self.label(*b));
                self.solve_equation(c0, &products, witness)
            }
            Relation::Triple(x, y, z) => {
                let mut products = Vec::new();
                for (a, b, c) in [(*x, *y, *z), (*y, *z, *x), (*z, *x, *y)] {
                    if let Some(ab) = self.roots.sum(a, b) {
                        products.push(((a, b), (ab, c)));
                    }
                }
                let witness = (self.label(*x), self.label(*y), self.label(*z));
                self.solve_equation(ExactReal::zero(), &products, witness)
            }
        }
    }

    /// Solves `c0 + sum of N_p1 * N_p2 = 0` when at most one factor is
    /// unknown, and learns magnitudes from pure-square forms.
    fn solve_equation(
        &mut self,
        c0: ExactReal,
        products: &[((RootId, RootId), (RootId, RootId))],
        witness: (String, String, String),
    ) -> Result<bool, SolveError> {
        let mut acc = c0;
        // (unknown pair, known cofactor) or square marker
        let mut unknown: Option<((RootId, RootId), ExactReal)> = None;
        let mut square: Option<((RootId, RootId), i8)> = None;
        for ((a1, b1), (a2, b2)) in products {
            let v1 = self.get(*a1, *b1);
            let v2 = self.get(*a2, *b2);
            match (v1, v2) {
                (Some(x), Some(y)) => acc += &(&x * &y),
                (Some(x), None) => {
                    let (key, sign) = CartanWeyl::canon_pair(self.roots, *a2, *b2);
                    let x = if sign < 0 { -&x } else { x };
                    if !self.merge_unknown(&mut unknown, &square, key, x) {
                        return Ok(false);
                    }
                }
                (None, Some(y)) => {
                    let (key, sign) = CartanWeyl::canon_pair(self.roots, *a1, *b1);
                    let y = if sign < 0 { -&y } else { y };
                    if !self.merge_unknown(&mut unknown, &square, key, y) {
                        return Ok(false);
                    }
                }
                (None, None) => {
                    let (k1, s1) = CartanWeyl::canon_pair(self.roots, *a1, *b1);
                    let (k2, s2) = CartanWeyl::canon_pair(self.roots, *a2, *b2);
                    if k1 == k2 {
                        // A pure square N^2 with sign s1*s2.
                        if square.is_some() || unknown.is_some() {
                            return Ok(false);
                        }
                        square = Some((k1, s1 * s2));
                    } else {
                        return Ok(false);
                    }
                }
            }
        }
        match (unknown, square) {
            (None, None) => {
                if !acc.is_zero() {
                    let (a, b, c) = witness;
                    return Err(SolveError::Contradiction(a, b, c));
                }
                Ok(false)
            }
            (Some((key, cof)), None) => {
                if cof.is_zero() {
                    return Ok(false);
                }
                let v = -&(&acc * &cof.invert().expect("nonzero"));
                let changed = self.set(key.0, key.1, v, Provenance::Jacobi)?;
                Ok(changed)
            }
            (None, Some((key, sign))) => {
                // sign * u^2 + acc = 0  =>  u^2 = -acc/sign
                let rhs = if sign < 0 { acc } else { -&acc };
                if let Some(q) = rhs.as_rational() {
                    use num::Signed;
                    if q.is_positive() {
                        let mag = ExactReal::sqrt_rational(&q).expect("positive");
                        self.magnitudes.entry(key).or_insert(mag);
                    } else {
                        // A nonpositive square has no real solution.
                        let (a, b, c) = witness;
                        return Err(SolveError::Contradiction(a, b, c));
                    }
                }
                Ok(false)
            }
            (Some(_), Some(_)) => Ok(false),
        }
    }

    fn merge_unknown(
        &self,
        unknown: &mut Option<((RootId, RootId), ExactReal)>,
        square: &Option<((RootId, RootId), i8)>,
        key: (RootId, RootId),
        cof: ExactReal,
    ) -> bool {
        if square.is_some() {
            return false;
        }
        match unknown {
            None => {
                *unknown = Some((key, cof));
                true
            }
            Some((k, existing)) if *k == key => {
                // Same unknown twice, linearly: cofactors add.
                *existing += &cof;
                true
            }
            _ => false,
        }
    }
}

/// Completes a partial structure-constant table so the Jacobi identity
/// holds on every generator triple.
///
/// Propagation applies every relation with at most one unknown; residual
/// sign freedom (entries whose magnitude is pinned but whose sign Jacobi
/// cannot see) is resolved by backtracking, with an optional validation
/// probe to pick between gauge-equivalent completions.
pub fn solve_missing_constants(
    roots: &RootSystem,
    givens: &[Given],
    validate: Option<&(dyn Fn(&StructureTable) -> bool + Sync)>,
) -> Result<StructureTable, SolveError> {
    let k2_inv = BigRational::new(BigInt::one(), BigInt::from(2 * roots.len() as i64));
    let mut state = SolveState {
        roots,
        values: BTreeMap::new(),
        provenance: BTreeMap::new(),
        magnitudes: BTreeMap::new(),
        k2_inv,
    };
    for ((a, b), v) in givens {
        if roots.sum(*a, *b).is_none() {
            return Err(SolveError::InvalidGiven(
                roots.root(*a).label.clone(),
                roots.root(*b).label.clone(),
            ));
        }
        state.set(*a, *b, v.clone(), Provenance::Given)?;
    }

    let relations = enumerate_relations(roots);
    let needed = needed_pairs(roots);
    backtrack(&mut state, &relations, &needed, validate)?;

    Ok(StructureTable {
        entries: state.values,
        provenance: state.provenance,
    })
}

fn enumerate_relations(roots: &RootSystem) -> Vec<Relation> {
    let n = roots.len() as RootId;
    let mut rels = Vec::new();
    // Cyclic triples x + y + z = 0, each unordered set once.
    for x in 0..n {
        for y in (x + 1)..n {
            if let Some(s) = roots.sum(x, y) {
                let z = roots.neg(s);
                if z > y {
                    rels.push(Relation::Cyclic(x, y, z));
                }
            }
        }
    }
    // Pair relations (a, -a, b).
    for a in 0..n {
        for b in 0..n {
            if b == a || b == roots.neg(a) {
                continue;
            }
            rels.push(Relation::Pair(a, b));
        }
    }
    // General triples with x + y + z a root. Triples containing a
    // mutually negative pair belong to the pair relations instead (their
    // Jacobi expansion has a Cartan-mediated term).
    for x in 0..n {
        for y in (x + 1)..n {
            if y == roots.neg(x) {
                continue;
            }
            let xy: Vec<i64> = roots
                .int_coords(x)
                .iter()
                .zip(roots.int_coords(y))
                .map(|(a, b)| a + b)
                .collect();
            for z in (y + 1)..n {
                if z == roots.neg(x) || z == roots.neg(y) {
                    continue;
                }
                let s: Vec<i64> = xy
                    .iter()
                    .zip(roots.int_coords(z))
                    .map(|(a, b)| a + b)
                    .collect();
                if roots.id_of_int(&s).is_some() {
                    rels.push(Relation::Triple(x, y, z));
                }
            }
        }
    }
    rels
}

/// All canonical pairs whose structure constant must exist.
fn needed_pairs(roots: &RootSystem) -> Vec<(RootId, RootId)> {
    let n = roots.len() as RootId;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if roots.sum(a, b).is_some() {
                let (key, _) = CartanWeyl::canon_pair(roots, a, b);
                if key == (a, b) {
                    out.push(key);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// |N_ab| from the root-string through `b` in the direction of `a`:
/// `|a/K| * sqrt(q (p+1) / 2)` where the string runs from `b - p a` to
/// `b + q a`.
fn string_magnitude(roots: &RootSystem, a: RootId, b: RootId) -> ExactReal {
    let na = roots.neg(a);
    let mut p = 0i64;
    let mut cur = b;
    while let Some(next) = roots.sum(cur, na) {
        p += 1;
        cur = next;
    }
    let mut q = 0i64;
    let mut cur = b;
    while let Some(next) = roots.sum(cur, a) {
        q += 1;
        cur = next;
    }
    let len2 = dot(&roots.root(a).coords, &roots.root(a).coords)
        .as_rational()
        .expect("root lengths are rational");
    let k2 = BigRational::from_integer(BigInt::from(2 * roots.len() as i64));
    let arg = len2 / k2 * BigRational::new(BigInt::from(q * (p + 1)), BigInt::from(2));
    ExactReal::sqrt_rational(&arg).expect("positive string magnitude")
}

fn propagate(state: &mut SolveState, relations: &[Relation]) -> Result<(), SolveError> {
    loop {
        let mut changed = false;
        for rel in relations {
            changed |= state.apply(rel)?;
        }
        if !changed {
            return Ok(());
        }
    }
}

fn backtrack(
    state: &mut SolveState,
    relations: &[Relation],
    needed: &[(RootId, RootId)],
    validate: Option<&(dyn Fn(&StructureTable) -> bool + Sync)>,
) -> Result<(), SolveError> {
    propagate(state, relations)?;
    let missing: Vec<(RootId, RootId)> = needed
        .iter()
        .filter(|k| !state.values.contains_key(*k))
        .copied()
        .collect();
    if missing.is_empty() {
        if let Some(v) = validate {
            let table = StructureTable {
                entries: state.values.clone(),
                provenance: state.provenance.clone(),
            };
            if !v(&table) {
                return Err(SolveError::NoValidCompletion);
            }
        }
        return Ok(());
    }
    // Pick the first missing pair with a known magnitude and try both
    // signs; if no quadratic relation pinned a magnitude, fall back to the
    // root-string formula (free extraspecial-pair choice).
    let candidate = missing
        .iter()
        .find(|k| state.magnitudes.contains_key(*k))
        .copied()
        .or_else(|| missing.first().copied());
    let Some(key) = candidate else {
        return Err(SolveError::UnderDetermined(
            missing
                .iter()
                .map(|(a, b)| (state.label(*a), state.label(*b)))
                .collect(),
        ));
    };
    let mag = state
        .magnitudes
        .get(&key)
        .cloned()
        .unwrap_or_else(|| string_magnitude(state.roots, key.0, key.1));
    let mut last_err = None;
    for v in [mag.clone(), -&mag] {
        let mut trial = SolveState {
            roots: state.roots,
            values: state.values.clone(),
            provenance: state.provenance.clone(),
            magnitudes: state.magnitudes.clone(),
            k2_inv: state.k2_inv.clone(),
        };
        if let Err(e) = trial.set(key.0, key.1, v, Provenance::Jacobi) {
            last_err = Some(e);
            continue;
        }
        match backtrack(&mut trial, relations, needed, validate) {
            Ok(()) => {
                state.values = trial.values;
                state.provenance = trial.provenance;
                state.magnitudes = trial.magnitudes;
                return Ok(());
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("both branches attempted"))
}

/// Serializable view of a structure table, used for fixtures and the CLI.
#[derive(serde::Serialize, serde::Deserialize, PartialEq, Eq, Debug)]
pub struct TableExport {
    pub schema_version: u32,
    pub algebra: Algebra,
    pub k: ExactReal,
    pub entries: Vec<TableEntry>,
}

#[derive(serde::Serialize, serde::Deserialize, PartialEq, Eq, Debug)]
pub struct TableEntry {
    pub x: String,
    pub y: String,
    pub n: ExactReal,
    pub provenance: Provenance,
}

impl TableExport {
    pub fn new(cw: &CartanWeyl) -> Self {
        let entries = cw
            .table
            .canonical_entries()
            .map(|((a, b), v)| TableEntry {
                x: cw.roots.root(*a).label.clone(),
                y: cw.roots.root(*b).label.clone(),
                n: v.clone(),
                provenance: cw.table.provenance_of(&(*a, *b)).expect("tracked"),
            })
            .collect();
        TableExport {
            schema_version: crate::SCHEMA_VERSION,
            algebra: cw.algebra,
            k: cw.roots.k.clone(),
            entries,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::RootSystem;

    fn f4_engine() -> CartanWeyl {
        let roots = RootSystem::build(Algebra::F4);
        let givens = given_constants(&roots);
        let table = solve_missing_constants(&roots, &givens, None).expect("completes");
        CartanWeyl::from_parts(roots, table)
    }

    #[test]
    fn f4_table_completes_and_covers_all_pairs() {
        let cw = f4_engine();
        for a in cw.roots.ids() {
            for b in cw.roots.ids() {
                if cw.roots.sum(a, b).is_some() {
                    assert!(cw.n(a, b).is_some());
                }
            }
        }
    }

    #[test]
    fn antisymmetry_and_conjugation() {
        let cw = f4_engine();
        let a = cw.roots.resolve_label("1").unwrap();
        let b = cw.roots.resolve_label("2").unwrap();
        let nab = cw.n(a, b).unwrap();
        assert_eq!(cw.n(b, a).unwrap(), -&nab);
        let na = cw.roots.neg(a);
        let nb = cw.roots.neg(b);
        assert_eq!(cw.n(na, nb).unwrap(), -&nab);
    }

    #[test]
    fn b4_sector_matches_given() {
        let cw = f4_engine();
        let a = cw.roots.resolve_label("1").unwrap();
        let b = cw.roots.resolve_label("2").unwrap();
        let expected = -&cw.roots.k.invert().unwrap();
        assert_eq!(cw.n(a, b).unwrap(), expected);
    }

    #[test]
    fn commutator_basics() {
        let cw = f4_engine();
        let a = cw.roots.resolve_label("1+2").unwrap();
        let e = cw.root_element(a, ExactReal::one());
        // [E, E] = 0
        assert!(cw.commutator(&e, &e).is_zero());
        // [E_a, E_{-a}] = a as a Cartan vector
        let en = cw.root_element(cw.roots.neg(a), ExactReal::one());
        let c = cw.commutator(&e, &en);
        assert_eq!(c.cartan, cw.roots.root(a).coords);
        assert!(c.roots.is_empty());
        // grading: [E_{1+2}, E_{1-2}] has sum 2e1, not a root => 0
        let b = cw.roots.resolve_label("1-2").unwrap();
        let eb = cw.root_element(b, ExactReal::one());
        assert!(cw.commutator(&e, &eb).is_zero());
    }

    #[test]
    fn antisymmetry_on_random_elements() {
        let cw = f4_engine();
        let x = cw
            .labeled_root_element("1+2", ExactReal::sqrt_mult(2, 3))
            .add(&cw.labeled_root_element("-3", ExactReal::rational(5, 7)));
        let y = cw
            .labeled_root_element("alpha1", ExactReal::rational(-2, 3))
            .add(&cw.labeled_root_element("2", ExactReal::sqrt_mult(1, 2)));
        let xy = cw.commutator(&x, &y);
        let yx = cw.commutator(&y, &x);
        assert_eq!(xy, yx.scaled(&-ExactReal::one()));
    }

    #[test]
    fn fault_injection_breaks_jacobi() {
        let roots = RootSystem::build(Algebra::F4);
        let mut givens = given_constants(&roots);
        // Flip the sign of one given entry; the completion must now hit a
        // contradiction.
        givens[0].1 = -&givens[0].1;
        match solve_missing_constants(&roots, &givens, None) {
            Err(SolveError::Contradiction(_, _, _)) | Err(SolveError::ConflictingGiven(_, _)) => {}
            other => panic!("expected contradiction, got {other:?}"),
        }
    }

    #[test]
    fn cartan_coords_roundtrip() {
        for algebra in [Algebra::G2, Algebra::F4, Algebra::E6] {
            let roots = RootSystem::build(algebra);
            // A fake empty table is fine for coordinate tests.
            let table = StructureTable {
                entries: BTreeMap::new(),
                provenance: BTreeMap::new(),
            };
            let cw = CartanWeyl::from_parts(roots, table);
            for id in [0u16, 1, 2] {
                let v = project_vec(algebra, &cw.roots.root(id).coords);
                let coords = cw.cartan_coords(&v);
                let mut back = vec![ExactReal::zero(); algebra.ambient_dim()];
                for (c, b) in coords.iter().zip(&cw.cartan_basis) {
                    for (o, x) in back.iter_mut().zip(b) {
                        *o += &(x * c);
                    }
                }
                assert_eq!(back, v);
            }
        }
    }
}
