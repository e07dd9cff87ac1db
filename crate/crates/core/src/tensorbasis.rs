//! The irreducible tensor bases: the Cartan-Weyl generators of G2, F4 and
//! E6 regrouped into mutually commuting angular-momentum triples J(i),
//! scalar operators A(i) (E6 only) and multi-fold irreducible tensor
//! operators U, V, W whose components are fixed multiples of single
//! generators.
//!
//! For G2 the published component tables leave the numbering of the six
//! positive roots (and the identification of the two Cartan directions)
//! implicit; [`solve_labels`] recovers an assignment by exhaustive search
//! against the defining commutation relations.

use crate::cartanweyl::{
    solve_missing_constants, AlgebraElement, CartanWeyl, Given, SolveError, StructureTable,
};
use crate::exactnum::ExactReal;
use crate::rootsystem::{dot, Algebra, RootId, RootSystem};
use crate::so3::{couple_grid, ladder_coeff, CoupleMode, Half, SlotPlan};
use num::rational::BigRational;
use num::BigInt;
use std::collections::BTreeMap;

/// A labeled grid of components: rank tuple, component tuple and scalar
/// charges mapping to algebra elements.
#[derive(Clone, Debug)]
pub struct TensorOperator {
    pub name: String,
    /// Angular-momentum slot ids, in the operator's own component order.
    pub slots: Vec<u8>,
    pub ranks: Vec<Half>,
    /// Scalar-slot charges (E6's V and W operators only).
    pub charges: BTreeMap<u8, i32>,
    pub components: BTreeMap<Vec<Half>, AlgebraElement>,
}

impl TensorOperator {
    pub fn slot_rank(&self, slot: u8) -> Option<Half> {
        self.slots
            .iter()
            .position(|s| *s == slot)
            .map(|i| self.ranks[i])
    }

    pub fn component(&self, comp: &[Half]) -> Option<&AlgebraElement> {
        self.components.get(comp)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Componentwise Hermitian conjugate (same labels, conjugated values).
    pub fn hermitian_conjugate(&self, roots: &RootSystem) -> TensorOperator {
        TensorOperator {
            name: format!("{}^dag", self.name),
            slots: self.slots.clone(),
            ranks: self.ranks.clone(),
            charges: self.charges.iter().map(|(s, c)| (*s, -c)).collect(),
            components: self
                .components
                .iter()
                .map(|(k, v)| (k.clone(), v.dagger(roots)))
                .collect(),
        }
    }
}

/// One algebra's assembled basis.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    pub algebra: Algebra,
    pub operators: Vec<TensorOperator>,
    /// slot id -> index of the J operator acting on it.
    pub j_slots: BTreeMap<u8, usize>,
    /// scalar slot id -> index of the A operator (E6 only).
    pub scalar_slots: BTreeMap<u8, usize>,
    /// Index of the one operator that is a linear combination of the
    /// others (E6's third scalar, via sum A(i) = 0).
    pub dependent: Option<usize>,
}

impl TensorBasis {
    pub fn operator(&self, name: &str) -> &TensorOperator {
        self.operators
            .iter()
            .find(|op| op.name == name)
            .unwrap_or_else(|| panic!("no operator named {name}"))
    }

    /// All components of the independent operators.
    pub fn independent_components(&self) -> Vec<(&TensorOperator, &Vec<Half>, &AlgebraElement)> {
        let mut out = Vec::new();
        for (i, op) in self.operators.iter().enumerate() {
            if Some(i) == self.dependent {
                continue;
            }
            for (c, e) in &op.components {
                out.push((op, c, e));
            }
        }
        out
    }

    /// Component count entering the dimension check.
    pub fn component_count(&self) -> usize {
        self.independent_components().len()
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum LabelError {
    #[error("no root index assignment satisfies the defining relations")]
    NoAssignment,
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// The solved G2 conventions: the index assignment behind E_1..E_6, the
/// Cartan vectors displayed as H_1 and H_2, the coefficient pairing of the
/// two angular momentum triples, and the completed structure constants.
#[derive(Clone, Debug)]
pub struct G2Solution {
    /// `assignment[k]` is the root carrying index k+1.
    pub assignment: [RootId; 6],
    /// Stored Cartan vectors for H_1 and H_2.
    pub h_vectors: [Vec<ExactReal>; 2],
    /// Coefficients (c1, c2) in J_0(1) = c1 H_1, J_0(2) = c2 H_2 (equal to
    /// the E-coefficients of J_{+-1}(1), J_{+-1}(2)).
    pub j_coeffs: (ExactReal, ExactReal),
    /// Whether the consistent pairing swaps the two printed coefficient
    /// sets between J(1) and J(2).
    pub swapped: bool,
    /// The fifth independent constant: the positive index pair it attaches
    /// to and its solved sign (times sqrt(1/6)).
    pub fifth_pair: (u8, u8),
    pub fifth_sign: i8,
    pub table: StructureTable,
}

fn scaled_coords(coords: &[ExactReal], c: &BigRational) -> Vec<ExactReal> {
    coords.iter().map(|x| x.scale(c)).collect()
}

fn vec_combine(
    a: &[ExactReal],
    ca: &BigRational,
    b: &[ExactReal],
    cb: &BigRational,
) -> Vec<ExactReal> {
    a.iter()
        .zip(b)
        .map(|(x, y)| &x.scale(ca) + &y.scale(cb))
        .collect()
}

/// The J_0 element of the angular momentum triple on root `alpha`:
/// the Cartan vector `K^2 alpha / |alpha|^2`.
fn j0_vector(roots: &RootSystem, alpha: RootId) -> Vec<ExactReal> {
    let coords = &roots.root(alpha).coords;
    let len2 = dot(coords, coords).as_rational().expect("rational length");
    let k2 = BigRational::from_integer(BigInt::from(2 * roots.len() as i64));
    scaled_coords(coords, &(k2 / len2))
}

/// Coefficient K/|alpha| of the raising generators in the triple.
fn j_raise_coeff(roots: &RootSystem, alpha: RootId) -> ExactReal {
    let coords = &roots.root(alpha).coords;
    let len2 = dot(coords, coords).as_rational().expect("rational length");
    let k2 = BigRational::from_integer(BigInt::from(2 * roots.len() as i64));
    ExactReal::sqrt_rational(&(k2 / len2)).expect("positive")
}

/// Builds the J triple on root `alpha`; `plus_sign` is the sign of the
/// coefficient of `E_alpha` in `J_{+1}` (the `J_{-1}` coefficient is its
/// negative, and `J_0 = K^2 alpha / |alpha|^2`).
fn j_triple(cw: &CartanWeyl, name: &str, slot: u8, alpha: RootId, plus_sign: i8) -> TensorOperator {
    let b = j_raise_coeff(&cw.roots, alpha);
    let sign = ExactReal::from_integer(plus_sign as i64);
    let mut components = BTreeMap::new();
    components.insert(vec![Half(2)], cw.root_element(alpha, &b * &sign));
    components.insert(
        vec![Half(-2)],
        cw.root_element(cw.roots.neg(alpha), -&(&b * &sign)),
    );
    components.insert(
        vec![Half(0)],
        AlgebraElement {
            cartan: crate::rootsystem::project_vec(cw.algebra, &j0_vector(&cw.roots, alpha)),
            roots: BTreeMap::new(),
        },
    );
    TensorOperator {
        name: name.to_string(),
        slots: vec![slot],
        ranks: vec![Half::from_int(1)],
        charges: BTreeMap::new(),
        components,
    }
}

/// Builds a grid operator from (component tuple, sign, root label) cells,
/// all scaled by K/sqrt(2).
fn grid_op(
    cw: &CartanWeyl,
    name: &str,
    slots: Vec<u8>,
    ranks: Vec<Half>,
    charges: BTreeMap<u8, i32>,
    cells: &[(Vec<Half>, i8, String)],
) -> TensorOperator {
    let coeff = {
        let k2 = BigRational::from_integer(BigInt::from(2 * cw.roots.len() as i64));
        ExactReal::sqrt_rational(&(k2 / BigRational::from_integer(2.into()))).expect("positive")
    };
    let mut components = BTreeMap::new();
    for (comp, sign, label) in cells {
        let id = cw
            .roots
            .resolve_label(label)
            .unwrap_or_else(|e| panic!("{e}"));
        let c = &coeff * &ExactReal::from_integer(*sign as i64);
        components.insert(comp.clone(), cw.root_element(id, c));
    }
    TensorOperator {
        name: name.to_string(),
        slots,
        ranks,
        charges,
        components,
    }
}

fn h(n: i32) -> Half {
    Half(n)
}

/// Assembles the basis of one algebra. G2 requires a solved label
/// assignment (see [`solve_labels`]); its roots must already carry the
/// index labels "1".."6".
pub fn assemble(cw: &CartanWeyl, g2: Option<&G2Solution>) -> TensorBasis {
    match cw.algebra {
        Algebra::G2 => assemble_g2(cw, g2.expect("G2 needs a solved label assignment")),
        Algebra::F4 => assemble_f4(cw),
        Algebra::E6 => assemble_e6(cw),
    }
}

fn assemble_g2(cw: &CartanWeyl, sol: &G2Solution) -> TensorBasis {
    let r3 = sol.assignment[2];
    let r6 = sol.assignment[5];
    let mut operators = Vec::new();
    // J_{+-1}(i) = -+ c_i E_{+-root}: the +1 component carries a minus.
    operators.push(j_triple(cw, "J(1)", 1, r3, -1));
    operators.push(j_triple(cw, "J(2)", 2, r6, -1));
    // U^{1/2 3/2}(12).
    let cells = vec![
        (vec![h(1), h(3)], 1i8, "5".to_string()),
        (vec![h(1), h(1)], 1, "4".to_string()),
        (vec![h(1), h(-1)], 1, "2".to_string()),
        (vec![h(1), h(-3)], 1, "1".to_string()),
        (vec![h(-1), h(3)], -1, "-1".to_string()),
        (vec![h(-1), h(1)], 1, "-2".to_string()),
        (vec![h(-1), h(-1)], -1, "-4".to_string()),
        (vec![h(-1), h(-3)], 1, "-5".to_string()),
    ];
    operators.push(grid_op(
        cw,
        "U(12)",
        vec![1, 2],
        vec![h(1), h(3)],
        BTreeMap::new(),
        &cells,
    ));
    TensorBasis {
        algebra: Algebra::G2,
        operators,
        j_slots: BTreeMap::from([(1u8, 0usize), (2, 1)]),
        scalar_slots: BTreeMap::new(),
        dependent: None,
    }
}

fn assemble_f4(cw: &CartanWeyl) -> TensorBasis {
    let mut operators = Vec::new();
    let mut j_slots = BTreeMap::new();
    // J_{+-1}(i) = +- (K/sqrt 2) E_{+-root}: the +1 component carries a plus.
    for (slot, label) in [(1u8, "1+2"), (2, "-1+2"), (3, "3+4"), (4, "-3+4")] {
        let id = cw.roots.resolve_label(label).unwrap();
        j_slots.insert(slot, operators.len());
        operators.push(j_triple(cw, &format!("J({slot})"), slot, id, 1));
    }
    // U(12) and U(34).
    for (name, slots, i, i1) in [("U(12)", (1u8, 2u8), "1", "2"), ("U(34)", (3, 4), "3", "4")] {
        let cells = vec![
            (vec![h(1), h(1)], -1i8, i1.to_string()),
            (vec![h(1), h(-1)], 1, i.to_string()),
            (vec![h(-1), h(1)], 1, format!("-{i}")),
            (vec![h(-1), h(-1)], 1, format!("-{i1}")),
        ];
        operators.push(grid_op(
            cw,
            name,
            vec![slots.0, slots.1],
            vec![h(1), h(1)],
            BTreeMap::new(),
            &cells,
        ));
    }
    // U(13), U(14), U(23), U(24) via the half-sum families.
    for (name, slots, fam) in [
        ("U(13)", (1u8, 3u8), "alpha"),
        ("U(14)", (1, 4), "beta"),
        ("U(23)", (2, 3), "gamma"),
        ("U(24)", (2, 4), "eps"),
    ] {
        let cells = vec![
            (vec![h(1), h(1)], -1i8, format!("{fam}1")),
            (vec![h(1), h(-1)], 1, format!("{fam}2")),
            (vec![h(-1), h(1)], 1, format!("-{fam}2")),
            (vec![h(-1), h(-1)], 1, format!("-{fam}1")),
        ];
        operators.push(grid_op(
            cw,
            name,
            vec![slots.0, slots.1],
            vec![h(1), h(1)],
            BTreeMap::new(),
            &cells,
        ));
    }
    // U(1234): rows (p, q) on slots (1, 2), columns (p', q') on (3, 4).
    let rows: [(Half, Half); 4] = [(h(1), h(1)), (h(1), h(-1)), (h(-1), h(1)), (h(-1), h(-1))];
    let table: [[(i8, &str); 4]; 4] = [
        [(-1, "2+4"), (1, "2+3"), (-1, "2-3"), (-1, "2-4")],
        [(1, "1+4"), (-1, "1+3"), (1, "1-3"), (1, "1-4")],
        [(1, "-1+4"), (-1, "-1+3"), (1, "-1-3"), (1, "-1-4")],
        [(1, "-2+4"), (-1, "-2+3"), (1, "-2-3"), (1, "-2-4")],
    ];
    let mut cells = Vec::new();
    for (ri, (p, q)) in rows.iter().enumerate() {
        for (ci, (pp, qq)) in rows.iter().enumerate() {
            let (sign, label) = table[ri][ci];
            cells.push((vec![*p, *q, *pp, *qq], sign, label.to_string()));
        }
    }
    operators.push(grid_op(
        cw,
        "U(1234)",
        vec![1, 2, 3, 4],
        vec![h(1); 4],
        BTreeMap::new(),
        &cells,
    ));
    TensorBasis {
        algebra: Algebra::F4,
        operators,
        j_slots,
        scalar_slots: BTreeMap::new(),
        dependent: None,
    }
}

fn assemble_e6(cw: &CartanWeyl) -> TensorBasis {
    let mut operators = Vec::new();
    let mut j_slots = BTreeMap::new();
    let mut scalar_slots = BTreeMap::new();
    for (slot, label) in [(2u8, "2-1"), (4, "4-3"), (6, "6-5")] {
        let id = cw.roots.resolve_label(label).unwrap();
        j_slots.insert(slot, operators.len());
        operators.push(j_triple(cw, &format!("J({slot})"), slot, id, 1));
    }
    {
        let id = cw.roots.resolve_label("e7").unwrap();
        j_slots.insert(8, operators.len());
        operators.push(j_triple(cw, "J(8)", 8, id, 1));
    }
    // A(1), A(3), A(5) = K (H_i + H_{i+1}); only two are independent.
    let mut dependent = None;
    for (slot, i) in [(1u8, 0usize), (3, 2), (5, 4)] {
        let k2 = BigRational::from_integer(BigInt::from(2 * cw.roots.len() as i64));
        let mut v = vec![ExactReal::zero(); 7];
        v[i] = ExactReal::from_rational(k2.clone());
        v[i + 1] = ExactReal::from_rational(k2);
        let e = AlgebraElement {
            cartan: crate::rootsystem::project_vec(Algebra::E6, &v),
            roots: BTreeMap::new(),
        };
        let op = TensorOperator {
            name: format!("A({slot})"),
            slots: Vec::new(),
            ranks: Vec::new(),
            charges: BTreeMap::new(),
            components: BTreeMap::from([(Vec::new(), e)]),
        };
        if slot == 5 {
            dependent = Some(operators.len());
        }
        scalar_slots.insert(slot, operators.len());
        operators.push(op);
    }
    // V and W for scalar pairs (1,3), (1,5), (3,5).
    for (i, j) in [(1u8, 3u8), (1, 5), (3, 5)] {
        let (i1, j1) = (i + 1, j + 1);
        let name_v = format!("V({}{}{}{})", i, i1, j, j1);
        let name_w = format!("W({}{}{}{})", i, i1, j, j1);
        let v_cells = vec![
            (vec![h(1), h(1)], -1i8, format!("{i1}-{j}")),
            (vec![h(1), h(-1)], -1, format!("{i1}-{j1}")),
            (vec![h(-1), h(1)], 1, format!("{i}-{j}")),
            (vec![h(-1), h(-1)], 1, format!("{i}-{j1}")),
        ];
        let w_cells = vec![
            (vec![h(1), h(1)], 1i8, format!("{j1}-{i}")),
            (vec![h(1), h(-1)], -1, format!("{j}-{i}")),
            (vec![h(-1), h(1)], 1, format!("{j1}-{i1}")),
            (vec![h(-1), h(-1)], -1, format!("{j}-{i1}")),
        ];
        operators.push(grid_op(
            cw,
            &name_v,
            vec![i1, j1],
            vec![h(1), h(1)],
            BTreeMap::from([(i, 1), (j, -1)]),
            &v_cells,
        ));
        operators.push(grid_op(
            cw,
            &name_w,
            vec![i1, j1],
            vec![h(1), h(1)],
            BTreeMap::from([(i, -1), (j, 1)]),
            &w_cells,
        ));
    }
    // The three grids built on the half-sum families.
    struct Special {
        v_name: &'static str,
        w_name: &'static str,
        slots: (u8, u8),
        charges: (u8, u8),
        v_cells: [(i8, &'static str); 4],
        w_cells: [(i8, &'static str); 4],
    }
    let specials = [
        Special {
            v_name: "V(1638)",
            w_name: "W(1638)",
            slots: (6, 8),
            charges: (1, 3),
            v_cells: [(-1, "alpha1"), (-1, "alpha2"), (1, "alpha3"), (1, "alpha4")],
            w_cells: [(1, "-alpha4"), (-1, "-alpha3"), (1, "-alpha2"), (-1, "-alpha1")],
        },
        Special {
            v_name: "V(1458)",
            w_name: "W(1458)",
            slots: (4, 8),
            charges: (1, 5),
            v_cells: [(1, "beta1"), (1, "beta2"), (-1, "beta3"), (-1, "beta4")],
            w_cells: [(-1, "-beta4"), (1, "-beta3"), (-1, "-beta2"), (1, "-beta1")],
        },
        Special {
            v_name: "V(3258)",
            w_name: "W(3258)",
            slots: (2, 8),
            charges: (3, 5),
            v_cells: [(-1, "eps1"), (1, "eps3"), (-1, "eps2"), (1, "eps4")],
            w_cells: [(1, "-eps4"), (1, "-eps2"), (-1, "-eps3"), (-1, "-eps1")],
        },
    ];
    let comp_order = [
        vec![h(1), h(1)],
        vec![h(1), h(-1)],
        vec![h(-1), h(1)],
        vec![h(-1), h(-1)],
    ];
    for sp in specials {
        let v_cells: Vec<(Vec<Half>, i8, String)> = comp_order
            .iter()
            .zip(sp.v_cells)
            .map(|(c, (s, l))| (c.clone(), s, l.to_string()))
            .collect();
        let w_cells: Vec<(Vec<Half>, i8, String)> = comp_order
            .iter()
            .zip(sp.w_cells)
            .map(|(c, (s, l))| (c.clone(), s, l.to_string()))
            .collect();
        operators.push(grid_op(
            cw,
            sp.v_name,
            vec![sp.slots.0, sp.slots.1],
            vec![h(1), h(1)],
            BTreeMap::from([(sp.charges.0, 1), (sp.charges.1, -1)]),
            &v_cells,
        ));
        operators.push(grid_op(
            cw,
            sp.w_name,
            vec![sp.slots.0, sp.slots.1],
            vec![h(1), h(1)],
            BTreeMap::from([(sp.charges.0, -1), (sp.charges.1, 1)]),
            &w_cells,
        ));
    }
    // U(2468): rows (p, q) on slots (2, 4), columns (p', q') on (6, 8).
    let rows: [(Half, Half); 4] = [(h(1), h(1)), (h(1), h(-1)), (h(-1), h(1)), (h(-1), h(-1))];
    let table: [[(i8, &str); 4]; 4] = [
        [(-1, "lam1"), (1, "lam2"), (-1, "lam3"), (-1, "lam4")],
        [(1, "lam5"), (-1, "lam6"), (1, "lam7"), (1, "lam8")],
        [(1, "-lam8"), (-1, "-lam7"), (1, "-lam6"), (1, "-lam5")],
        [(1, "-lam4"), (-1, "-lam3"), (1, "-lam2"), (1, "-lam1")],
    ];
    let mut cells = Vec::new();
    for (ri, (p, q)) in rows.iter().enumerate() {
        for (ci, (pp, qq)) in rows.iter().enumerate() {
            let (sign, label) = table[ri][ci];
            cells.push((vec![*p, *q, *pp, *qq], sign, label.to_string()));
        }
    }
    operators.push(grid_op(
        cw,
        "U(2468)",
        vec![2, 4, 6, 8],
        vec![h(1); 4],
        BTreeMap::new(),
        &cells,
    ));
    TensorBasis {
        algebra: Algebra::E6,
        operators,
        j_slots,
        scalar_slots,
        dependent,
    }
}

/// Exhaustive search for the G2 index assignment: which roots carry the
/// indices 1..6 of the component tables, which of the two coefficient
/// pairings attaches to J(1) and J(2), and the sign of the fifth
/// independent structure constant. Candidates are pruned by weight
/// constraints (the index positions are forced by the component grid) and
/// validated against the defining relations, the two coupled identities
/// and the Hermiticity phases.
pub fn solve_labels(roots: &RootSystem) -> Result<Vec<G2Solution>, LabelError> {
    assert_eq!(roots.algebra, Algebra::G2);
    let two_sqrt3 = ExactReal::sqrt_mult(2, 3);
    let two = ExactReal::from_integer(2);
    let mut solutions = Vec::new();
    // swapped = false: literal reading, J(1) coefficient 2 sqrt(3), which
    // forces a short root at index 3 and a long one at index 6.
    for swapped in [false, true] {
        let (len3, len6, c1, c2) = if swapped {
            (6i64, 2i64, two.clone(), two_sqrt3.clone())
        } else {
            (2, 6, two_sqrt3.clone(), two.clone())
        };
        for r3 in roots.ids() {
            let a3 = &roots.root(r3).coords;
            if dot(a3, a3) != ExactReal::from_integer(len3) {
                continue;
            }
            for r6 in roots.ids() {
                let a6 = &roots.root(r6).coords;
                if dot(a6, a6) != ExactReal::from_integer(len6) {
                    continue;
                }
                if !dot(a3, a6).is_zero() {
                    continue;
                }
                // Index positions forced by the component weights:
                // root(k) = p alpha_3 + q alpha_6 for weight (p, q).
                let half = BigRational::new(BigInt::from(1), BigInt::from(2));
                let mhalf = -half.clone();
                let th = BigRational::new(BigInt::from(3), BigInt::from(2));
                let mth = -th.clone();
                let pos = |p: &BigRational, q: &BigRational| -> Option<RootId> {
                    roots.id_of_coords(&vec_combine(a3, p, a6, q))
                };
                let (Some(r1), Some(r2), Some(r4), Some(r5)) = (
                    pos(&half, &mth),
                    pos(&half, &mhalf),
                    pos(&half, &half),
                    pos(&half, &th),
                ) else {
                    continue;
                };
                let assignment = [r1, r2, r3, r4, r5, r6];
                let idx = |k: u8| assignment[(k - 1) as usize];
                // The four published constants sit on the ordered pairs
                // (6,1), (6,4), (4,2), (1,5); the remaining positive pair
                // carries the sqrt(1/6) value with an open sign.
                let named: [(u8, u8); 4] = [(6, 1), (6, 4), (4, 2), (1, 5)];
                let mut fifth = None;
                let mut extra = false;
                for a in 1..=6u8 {
                    for b in (a + 1)..=6 {
                        if roots.sum(idx(a), idx(b)).is_some()
                            && !named
                                .iter()
                                .any(|(x, y)| (*x, *y) == (a, b) || (*x, *y) == (b, a))
                        {
                            if fifth.replace((a, b)).is_some() {
                                extra = true;
                            }
                        }
                    }
                }
                let Some(fifth_pair) = fifth else { continue };
                if extra {
                    continue;
                }
                let half_sqrt_half = ExactReal::sqrt_ratio(1, 8);
                for fifth_sign in [1i8, -1] {
                    let mut givens: Vec<Given> = named
                        .iter()
                        .map(|(x, y)| ((idx(*x), idx(*y)), half_sqrt_half.clone()))
                        .collect();
                    let fifth_value = ExactReal::sqrt_ratio(1, 6)
                        .scale(&BigRational::from_integer(BigInt::from(fifth_sign)));
                    givens.push(((idx(fifth_pair.0), idx(fifth_pair.1)), fifth_value));
                    let Ok(table) = solve_missing_constants(roots, &givens, None) else {
                        continue;
                    };
                    let mut labeled = roots.clone();
                    for (k, id) in assignment.iter().enumerate() {
                        labeled.relabel(*id, format!("{}", k + 1));
                        let neg = labeled.neg(*id);
                        labeled.relabel(neg, format!("-{}", k + 1));
                    }
                    let cw = CartanWeyl::from_parts(labeled, table);
                    let c1_inv = c1.invert().expect("nonzero");
                    let c2_inv = c2.invert().expect("nonzero");
                    let scale_by = |v: &[ExactReal], c: &ExactReal| -> Vec<ExactReal> {
                        v.iter().map(|x| x * c).collect()
                    };
                    let sol = G2Solution {
                        assignment,
                        h_vectors: [
                            scale_by(&j0_vector(&cw.roots, r3), &c1_inv),
                            scale_by(&j0_vector(&cw.roots, r6), &c2_inv),
                        ],
                        j_coeffs: (c1.clone(), c2.clone()),
                        swapped,
                        fifth_pair,
                        fifth_sign,
                        table: cw.table.clone(),
                    };
                    let basis = assemble_g2(&cw, &sol);
                    if g2_candidate_valid(&cw, &basis) {
                        solutions.push(sol);
                    }
                }
            }
        }
    }
    if solutions.is_empty() {
        Err(LabelError::NoAssignment)
    } else {
        Ok(solutions)
    }
}

/// Quick validation of a candidate G2 assembly: the su(2) triples close,
/// the grid satisfies the weight and ladder relations, the two coupled
/// identities hold with coefficients sqrt(9/2) and sqrt(5/2), and the
/// Hermiticity phase is (-1)^(p+q).
fn g2_candidate_valid(cw: &CartanWeyl, basis: &TensorBasis) -> bool {
    let j1 = basis.operator("J(1)");
    let j2 = basis.operator("J(2)");
    let u = basis.operator("U(12)");
    for (j, other) in [(j1, j2), (j2, j1)] {
        let plus = &j.components[&vec![h(2)]];
        let minus = &j.components[&vec![h(-2)]];
        let zero = &j.components[&vec![h(0)]];
        if cw.commutator(zero, plus) != *plus {
            return false;
        }
        if cw.commutator(zero, minus) != minus.scaled(&-ExactReal::one()) {
            return false;
        }
        if cw.commutator(plus, minus) != zero.scaled(&-ExactReal::one()) {
            return false;
        }
        for a in other.components.values() {
            for b in j.components.values() {
                if !cw.commutator(a, b).is_zero() {
                    return false;
                }
            }
        }
    }
    // weights and ladders on the grid
    for (comp, x) in &u.components {
        for (slot_idx, j) in [(0usize, j1), (1, j2)] {
            let p = comp[slot_idx];
            let rank = u.ranks[slot_idx];
            let weight = cw.commutator(&j.components[&vec![h(0)]], x);
            if weight != x.scaled(&ExactReal::from_rational(p.to_rational())) {
                return false;
            }
            for up in [true, false] {
                let jpm = &j.components[&vec![if up { h(2) } else { h(-2) }]];
                let mut target = comp.clone();
                target[slot_idx] = if up { p + h(2) } else { p - h(2) };
                let expect = match u.components.get(&target) {
                    Some(y) => {
                        let c = ladder_coeff(rank, p, up).expect("in range");
                        y.scaled(&c)
                    }
                    None => cw.zero(),
                };
                if cw.commutator(jpm, x) != expect {
                    return false;
                }
            }
        }
    }
    // coupled identities
    for (ranks, coeff, j) in [
        ((h(2), h(0)), ExactReal::sqrt_ratio(9, 2), j1),
        ((h(0), h(2)), ExactReal::sqrt_ratio(5, 2), j2),
    ] {
        let plan = [
            SlotPlan::Coupled {
                slot: 1,
                rank: ranks.0,
            },
            SlotPlan::Coupled {
                slot: 2,
                rank: ranks.1,
            },
        ];
        let Ok(grid) = couple_grid(cw, u, u, &plan, CoupleMode::Plain) else {
            return false;
        };
        let Ok(reduced) = grid.reduce(cw, "uu") else {
            return false;
        };
        for mu in [h(-2), h(0), h(2)] {
            let comp = if ranks.0 == h(2) {
                vec![mu, h(0)]
            } else {
                vec![h(0), mu]
            };
            let lhs = reduced
                .components
                .get(&comp)
                .cloned()
                .unwrap_or_else(|| cw.zero());
            let rhs = j.components[&vec![mu]].scaled(&coeff);
            if lhs != rhs {
                return false;
            }
        }
    }
    // Hermiticity: U_{-p,-q} = (-1)^(p+q) U^dag_{p,q}
    let conj = u.hermitian_conjugate(&cw.roots);
    for comp in u.components.keys() {
        let neg: Vec<Half> = comp.iter().map(|c| -*c).collect();
        let phase = ((comp[0] + comp[1]).0 / 2).rem_euclid(2);
        let expect = if phase == 0 {
            conj.components[comp].clone()
        } else {
            conj.components[comp].scaled(&-ExactReal::one())
        };
        if u.components[&neg] != expect {
            return false;
        }
    }
    true
}

/// A fully built algebra: engine, basis and (for G2) the solved labels.
pub struct Assembled {
    pub cw: CartanWeyl,
    pub basis: TensorBasis,
    pub g2: Option<G2Solution>,
}

/// Builds the full pipeline for one algebra: roots, structure constants
/// (label solving included for G2) and the assembled tensor basis.
pub fn build(algebra: Algebra) -> Result<Assembled, LabelError> {
    let roots = RootSystem::build(algebra);
    match algebra {
        Algebra::G2 => {
            let sols = solve_labels(&roots)?;
            let sol = sols.into_iter().next().expect("nonempty");
            let mut labeled = roots;
            for (k, id) in sol.assignment.iter().enumerate() {
                labeled.relabel(*id, format!("{}", k + 1));
                let neg = labeled.neg(*id);
                labeled.relabel(neg, format!("-{}", k + 1));
            }
            let cw = CartanWeyl::from_parts(labeled, sol.table.clone());
            let basis = assemble_g2(&cw, &sol);
            Ok(Assembled {
                cw,
                basis,
                g2: Some(sol),
            })
        }
        _ => {
            let givens = crate::cartanweyl::given_constants(&roots);
            let table = solve_missing_constants(&roots, &givens, None)?;
            let cw = CartanWeyl::from_parts(roots, table);
            let basis = assemble(&cw, None);
            Ok(Assembled {
                cw,
                basis,
                g2: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_solver_finds_swapped_pairing_only() {
        let roots = RootSystem::build(Algebra::G2);
        let sols = solve_labels(&roots).expect("assignment exists");
        assert!(!sols.is_empty());
        // The literal coefficient pairing (2 sqrt 3 on J(1)) admits no
        // assignment; every solution uses the swapped pairing, and all
        // agree where the fifth constant lives and on its sign:
        // N on (2,6) is -sqrt(1/6), i.e. +sqrt(1/6) in the (6,2) order.
        assert!(sols.iter().all(|s| s.swapped));
        assert!(sols
            .iter()
            .all(|s| s.fifth_pair == (2, 6) && s.fifth_sign == -1));
        // The Weyl group acts simply transitively on the valid frames.
        assert_eq!(sols.len(), 12);
    }

    #[test]
    fn g2_assembles_fourteen_components() {
        let a = build(Algebra::G2).unwrap();
        assert_eq!(a.basis.component_count(), 14);
        let (total, bad) = a.cw.jacobi_scan();
        assert_eq!(total, 364);
        assert!(bad.is_empty());
    }

    #[test]
    fn f4_assembles_fifty_two_components() {
        let a = build(Algebra::F4).unwrap();
        assert_eq!(a.basis.component_count(), 52);
    }

    #[test]
    fn e6_assembles_seventy_eight_components() {
        let a = build(Algebra::E6).unwrap();
        assert_eq!(a.basis.component_count(), 78);
        // sum of the three scalars vanishes in the canonical representation
        let total = a.basis.operator("A(1)").components[&vec![]]
            .add(&a.basis.operator("A(3)").components[&vec![]])
            .add(&a.basis.operator("A(5)").components[&vec![]]);
        assert!(total.is_zero());
    }
}
