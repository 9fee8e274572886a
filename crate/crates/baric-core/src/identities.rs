//! Exact decision procedures for the catalog of polynomial identities.
//!
//! The primary decision method is full polarization: a homogeneous identity
//! `P` of degree `d` vanishes identically iff its full multilinearization
//!
//! ```text
//! T(x_1, ..., x_d) = sum over nonempty S of {1..d} of (-1)^(d-|S|) P(sum_{i in S} x_i)
//! ```
//!
//! vanishes on all non-decreasing basis tuples, because `T` is symmetric
//! multilinear with `T(x, ..., x) = d! P(x)` and the characteristic never
//! divides `d!` (fields are Q or F_p with p >= 5, and degrees are capped at
//! the characteristic). An exhaustive finite-field evaluator serves as an
//! independent oracle for the polarized verdicts.

use crate::algebra::{Algebra, Element};
use crate::baric::{BaricAlgebra, Weight};
use crate::error::{Error, Result};
use crate::field::Field;

/// A named identity from the closed catalog.
///
/// With `w` the weight and juxtaposition the algebra product:
///
/// * `Omega3`: `x^2 x^2 = w(x)^3 x`
/// * `Omega`: `x^2 x^2 = w(x) x^3`
/// * `Omegas`: `x^2 x^2 = 3 w(x) x^3 - 3 w(x)^2 x^2 + w(x)^3 x`
/// * `Omega2s`: `x^2 x^2 = 2 w(x) x^3 - w(x)^2 x^2`
/// * `SqSqZero`: `(x^2)^2 = 0`
/// * `Jordan`: `(x^2 y) x = x^2 (y x)`
/// * `General`: `x^2 x^2 = a w(x) x^3 + b w(x)^2 x^2 + c w(x)^3 x` with
///   `a + b + c = 1` enforced at construction.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityId<F: Field> {
    Omega3,
    Omega,
    Omegas,
    Omega2s,
    SqSqZero,
    Jordan,
    General {
        alpha: F::Elem,
        beta: F::Elem,
        gamma: F::Elem,
    },
}

impl<F: Field> IdentityId<F> {
    /// Build the parametrized family member, enforcing `a + b + c = 1`.
    pub fn general(field: &F, alpha: F::Elem, beta: F::Elem, gamma: F::Elem) -> Result<Self> {
        let sum = field.add(&field.add(&alpha, &beta), &gamma);
        if !field.is_one(&sum) {
            return Err(Error::CoefficientSum);
        }
        Ok(IdentityId::General { alpha, beta, gamma })
    }

    pub fn name(&self) -> String {
        match self {
            IdentityId::Omega3 => "omega3".into(),
            IdentityId::Omega => "omega".into(),
            IdentityId::Omegas => "omegas".into(),
            IdentityId::Omega2s => "omega2s".into(),
            IdentityId::SqSqZero => "sqsq".into(),
            IdentityId::Jordan => "jordan".into(),
            IdentityId::General { .. } => "general".into(),
        }
    }

    pub fn needs_weight(&self) -> bool {
        !matches!(self, IdentityId::SqSqZero | IdentityId::Jordan)
    }

    pub fn takes_pair(&self) -> bool {
        matches!(self, IdentityId::Jordan)
    }

    /// Coefficients `(a, b, c)` of the weight terms; `(0, 0, 0)` for the
    /// weight-free square-of-square identity, `None` for Jordan.
    fn omega_coefficients(&self, field: &F) -> Option<(F::Elem, F::Elem, F::Elem)> {
        let c = |n: i64| field.from_i64(n);
        match self {
            IdentityId::Omega3 => Some((c(0), c(0), c(1))),
            IdentityId::Omega => Some((c(1), c(0), c(0))),
            IdentityId::Omegas => Some((c(3), c(-3), c(1))),
            IdentityId::Omega2s => Some((c(2), c(-1), c(0))),
            IdentityId::SqSqZero => Some((c(0), c(0), c(0))),
            IdentityId::Jordan => None,
            IdentityId::General { alpha, beta, gamma } => {
                Some((alpha.clone(), beta.clone(), gamma.clone()))
            }
        }
    }
}

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    Polarize,
    Exhaustive,
    Direct,
    Sampled,
}

impl CheckMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckMethod::Polarize => "polarize",
            CheckMethod::Exhaustive => "exhaustive",
            CheckMethod::Direct => "direct",
            CheckMethod::Sampled => "sampled",
        }
    }
}

/// Counterexample data attached to a failed check.
#[derive(Clone, Debug)]
pub enum Witness<F: Field> {
    /// A concrete point where the identity fails; re-evaluating there
    /// reproduces `residual` exactly.
    Point {
        x: Element<F>,
        y: Option<Element<F>>,
        residual: Element<F>,
    },
    /// No small point was found within the search budget; the multilinear
    /// form itself is nonzero at this basis tuple.
    MultilinearTuple {
        slots: Vec<Vec<Element<F>>>,
        residual: Element<F>,
    },
}

/// Verdict of an identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport<F: Field> {
    pub passed: bool,
    pub witness: Option<Witness<F>>,
    pub method: CheckMethod,
    /// Free-form note naming the failing sub-rule of a composite check.
    pub context: Option<String>,
}

impl<F: Field> IdentityReport<F> {
    pub fn pass(method: CheckMethod) -> Self {
        IdentityReport {
            passed: true,
            witness: None,
            method,
            context: None,
        }
    }

    pub fn fail(witness: Witness<F>, method: CheckMethod) -> Self {
        IdentityReport {
            passed: false,
            witness: Some(witness),
            method,
            context: None,
        }
    }

    pub fn with_context(mut self, context: impl Into<String>) -> Self {
        self.context = Some(context.into());
        self
    }
}

/// Evaluate the residual of `id` at the given point(s); zero means the
/// identity holds there.
pub fn evaluate_identity_at<F: Field>(
    alg: &Algebra<F>,
    wt: Option<&Weight<F>>,
    id: &IdentityId<F>,
    x: &Element<F>,
    y: Option<&Element<F>>,
) -> Result<Element<F>> {
    let f = alg.field().clone();
    match id {
        IdentityId::Jordan => {
            let y = y.ok_or_else(|| Error::IdentityArity {
                identity: id.name(),
                expected: 2,
            })?;
            let x2 = alg.multiply(x, x)?;
            let lhs = alg.multiply(&alg.multiply(&x2, y)?, x)?;
            let rhs = alg.multiply(&x2, &alg.multiply(y, x)?)?;
            Ok(lhs.sub(&rhs, &f))
        }
        _ => {
            if y.is_some() {
                return Err(Error::IdentityArity {
                    identity: id.name(),
                    expected: 1,
                });
            }
            let (a, b, c) = id.omega_coefficients(&f).expect("non-Jordan identity");
            let weight_free =
                f.is_zero(&a) && f.is_zero(&b) && f.is_zero(&c);
            let x2 = alg.multiply(x, x)?;
            let mut residual = alg.multiply(&x2, &x2)?;
            if weight_free {
                return Ok(residual);
            }
            let wt = wt.ok_or_else(|| Error::WeightRequired {
                identity: id.name(),
            })?;
            let w = wt.eval(x)?;
            let w2 = f.mul(&w, &w);
            let w3 = f.mul(&w2, &w);
            if !f.is_zero(&a) {
                let x3 = alg.multiply(&x2, x)?;
                residual.axpy(&f.neg(&f.mul(&a, &w)), &x3, &f);
            }
            residual.axpy(&f.neg(&f.mul(&b, &w2)), &x2, &f);
            residual.axpy(&f.neg(&f.mul(&c, &w3)), x, &f);
            Ok(residual)
        }
    }
}

/// One variable slot of a multihomogeneous form: its degree and the basis
/// vectors the corresponding argument ranges over.
pub(crate) struct Slot<'a, F: Field> {
    pub degree: usize,
    pub basis: &'a [Element<F>],
}

/// A basis tuple where the full multilinearization is nonzero.
pub(crate) struct PolarizationFailure<F: Field> {
    /// One non-decreasing index tuple per slot, indexing into that slot's
    /// basis list.
    pub tuples: Vec<Vec<usize>>,
    pub value: Element<F>,
}

impl<F: Field> PolarizationFailure<F> {
    pub fn slot_elements(&self, slots: &[Slot<'_, F>]) -> Vec<Vec<Element<F>>> {
        self.tuples
            .iter()
            .zip(slots)
            .map(|(tuple, slot)| tuple.iter().map(|&i| slot.basis[i].clone()).collect())
            .collect()
    }
}

/// Characteristic-zero fields always polarize; over F_p the degree must stay
/// below p so that d! is invertible.
pub(crate) fn ensure_polarizable<F: Field>(field: &F, degree: usize) -> Result<()> {
    let p = field.characteristic();
    if p != 0 && (degree as u64) >= p {
        return Err(Error::CharacteristicDegree { p, degree });
    }
    Ok(())
}

/// Find the lexicographically first non-decreasing basis tuple (per slot)
/// where the full multilinearization of `eval` is nonzero, or `None` if the
/// form vanishes identically.
///
/// `eval` receives one argument per slot and must be homogeneous of the
/// slot's degree in that argument.
pub(crate) fn polarize_find_failure<F: Field>(
    field: &F,
    out_dim: usize,
    slots: &[Slot<'_, F>],
    eval: &mut dyn FnMut(&[Element<F>]) -> Result<Element<F>>,
) -> Result<Option<PolarizationFailure<F>>> {
    for slot in slots {
        ensure_polarizable(field, slot.degree)?;
        if slot.basis.is_empty() {
            // The argument ranges over the zero space; the form vanishes.
            return Ok(None);
        }
    }
    let mut tuples: Vec<Vec<usize>> = slots.iter().map(|s| vec![0; s.degree]).collect();
    loop {
        let value = multilinear_value(field, out_dim, slots, &tuples, eval)?;
        if !value.is_zero(field) {
            return Ok(Some(PolarizationFailure { tuples, value }));
        }
        if !advance(&mut tuples, slots) {
            return Ok(None);
        }
    }
}

/// Evaluate the multilinearization at one basis tuple assignment:
/// the alternating sum over nonempty subsets of each slot's positions.
fn multilinear_value<F: Field>(
    field: &F,
    out_dim: usize,
    slots: &[Slot<'_, F>],
    tuples: &[Vec<usize>],
    eval: &mut dyn FnMut(&[Element<F>]) -> Result<Element<F>>,
) -> Result<Element<F>> {
    // Subset sums per slot, indexed by bitmask; entry 0 is unused.
    let mut subset_sums: Vec<Vec<Element<F>>> = Vec::with_capacity(slots.len());
    for (slot, tuple) in slots.iter().zip(tuples) {
        let n = slot.basis[0].dim();
        let count = 1usize << slot.degree;
        let mut sums = vec![Element::zero(field, n); count];
        for mask in 1..count {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            sums[mask] = sums[rest].add(&slot.basis[tuple[low]], field);
        }
        subset_sums.push(sums);
    }

    let mut total = Element::zero(field, out_dim);
    let mut masks: Vec<usize> = vec![1; slots.len()];
    loop {
        let mut parity = 0usize;
        for (slot, mask) in slots.iter().zip(&masks) {
            parity += slot.degree - mask.count_ones() as usize;
        }
        let args: Vec<Element<F>> = masks
            .iter()
            .enumerate()
            .map(|(s, &mask)| subset_sums[s][mask].clone())
            .collect();
        let term = eval(&args)?;
        if parity % 2 == 0 {
            total = total.add(&term, field);
        } else {
            total = total.sub(&term, field);
        }

        // Odometer over nonempty masks, last slot fastest.
        let mut s = slots.len();
        loop {
            if s == 0 {
                return Ok(total);
            }
            s -= 1;
            masks[s] += 1;
            if masks[s] < (1usize << slots[s].degree) {
                break;
            }
            masks[s] = 1;
        }
    }
}

/// Advance to the next assignment of non-decreasing tuples, last slot
/// fastest; returns false when exhausted.
fn advance<F: Field>(tuples: &mut [Vec<usize>], slots: &[Slot<'_, F>]) -> bool {
    let mut s = slots.len();
    loop {
        if s == 0 {
            return false;
        }
        s -= 1;
        if advance_nondecreasing(&mut tuples[s], slots[s].basis.len()) {
            return true;
        }
        // This slot wrapped around to (0, ..., 0); carry to the previous.
    }
}

fn advance_nondecreasing(tuple: &mut [usize], limit: usize) -> bool {
    let d = tuple.len();
    let mut i = d;
    loop {
        if i == 0 {
            tuple.fill(0);
            return false;
        }
        i -= 1;
        if tuple[i] + 1 < limit {
            let v = tuple[i] + 1;
            for t in tuple.iter_mut().skip(i) {
                *t = v;
            }
            return true;
        }
    }
}

fn ambient_basis<F: Field>(alg: &Algebra<F>) -> Vec<Element<F>> {
    (0..alg.dim())
        .map(|i| Element::basis_vector(alg.field(), alg.dim(), i))
        .collect()
}

/// Decide whether `id` holds for all elements, by polarization.
///
/// On failure a small witness point is searched among combinations of the
/// failing tuple's basis vectors with coefficients in `{0, 1, -1, 2, -2,
/// 1/2}`; if none is found within the budget the multilinear tuple itself is
/// reported.
pub fn polarized_check<F: Field>(
    alg: &Algebra<F>,
    wt: Option<&Weight<F>>,
    id: &IdentityId<F>,
) -> Result<IdentityReport<F>> {
    if id.needs_weight() && wt.is_none() {
        return Err(Error::WeightRequired {
            identity: id.name(),
        });
    }
    let f = alg.field().clone();
    let basis = ambient_basis(alg);
    let slots = if id.takes_pair() {
        vec![
            Slot {
                degree: 3,
                basis: &basis,
            },
            Slot {
                degree: 1,
                basis: &basis,
            },
        ]
    } else {
        vec![Slot {
            degree: 4,
            basis: &basis,
        }]
    };
    let failure = polarize_find_failure(&f, alg.dim(), &slots, &mut |args| {
        let y = args.get(1);
        evaluate_identity_at(alg, wt, id, &args[0], y)
    })?;
    let Some(failure) = failure else {
        return Ok(IdentityReport::pass(CheckMethod::Polarize));
    };
    let slot_elems = failure.slot_elements(&slots);
    let witness = search_point_witness(alg, wt, id, &slot_elems)
        .unwrap_or(Witness::MultilinearTuple {
            slots: slot_elems,
            residual: failure.value,
        });
    Ok(IdentityReport::fail(witness, CheckMethod::Polarize))
}

/// Budget for reconstructing a point witness from a failing tuple.
const WITNESS_SEARCH_BUDGET: usize = 10_000;

fn search_point_witness<F: Field>(
    alg: &Algebra<F>,
    wt: Option<&Weight<F>>,
    id: &IdentityId<F>,
    slot_elems: &[Vec<Element<F>>],
) -> Option<Witness<F>> {
    let f = alg.field().clone();
    let mut candidates: Vec<Element<F>> = Vec::new();
    for e in &slot_elems[0] {
        if !candidates.contains(e) {
            candidates.push(e.clone());
        }
    }
    let y = slot_elems.get(1).map(|t| t[0].clone());
    let coeffs = [
        f.zero(),
        f.one(),
        f.from_i64(-1),
        f.from_i64(2),
        f.from_i64(-2),
        f.half(),
    ];
    let m = candidates.len();
    let mut picks = vec![0usize; m];
    let mut tried = 0usize;
    loop {
        if picks.iter().any(|&c| c != 0) {
            let mut x = Element::zero(&f, alg.dim());
            for (slot, &c) in candidates.iter().zip(&picks) {
                x.axpy(&coeffs[c], slot, &f);
            }
            let residual = evaluate_identity_at(alg, wt, id, &x, y.as_ref()).ok()?;
            if !residual.is_zero(&f) {
                return Some(Witness::Point {
                    x,
                    y: y.clone(),
                    residual,
                });
            }
            tried += 1;
            if tried >= WITNESS_SEARCH_BUDGET {
                return None;
            }
        }
        // Odometer over coefficient picks.
        let mut i = m;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < coeffs.len() {
                break;
            }
            picks[i] = 0;
        }
    }
}

/// Evaluate `id` at every vector (every pair for the two-variable Jordan
/// identity) of a finite-field algebra. Serves as the independent oracle for
/// [`polarized_check`]; the two must agree.
pub fn exhaustive_check<F: Field>(
    alg: &Algebra<F>,
    wt: Option<&Weight<F>>,
    id: &IdentityId<F>,
    budget: u64,
) -> Result<IdentityReport<F>> {
    if id.needs_weight() && wt.is_none() {
        return Err(Error::WeightRequired {
            identity: id.name(),
        });
    }
    let f = alg.field().clone();
    let q = f.element_count().ok_or(Error::NonFiniteField)?;
    let n = alg.dim() as u32;
    let vars = if id.takes_pair() { 2 } else { 1 };
    let required = (q as u128)
        .checked_pow(n * vars)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let check = |x: &Element<F>, y: Option<&Element<F>>| -> Result<Option<Witness<F>>> {
        let residual = evaluate_identity_at(alg, wt, id, x, y)?;
        if residual.is_zero(&f) {
            Ok(None)
        } else {
            Ok(Some(Witness::Point {
                x: x.clone(),
                y: y.cloned(),
                residual,
            }))
        }
    };

    if vars == 1 {
        for x in crate::algebra::enumerate_elements(&f, alg.dim()).expect("finite field") {
            if let Some(w) = check(&x, None)? {
                return Ok(IdentityReport::fail(w, CheckMethod::Exhaustive));
            }
        }
    } else {
        for x in crate::algebra::enumerate_elements(&f, alg.dim()).expect("finite field") {
            for y in crate::algebra::enumerate_elements(&f, alg.dim()).expect("finite field") {
                if let Some(w) = check(&x, Some(&y))? {
                    return Ok(IdentityReport::fail(w, CheckMethod::Exhaustive));
                }
            }
        }
    }
    Ok(IdentityReport::pass(CheckMethod::Exhaustive))
}

/// Which family of linearized consequences to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearizedSet {
    /// The three displayed linearizations of `x^2 x^2 = w(x) x^3`.
    OmegaSet,
    /// The two cubic-form relations specialized to `<x|y> = w(x) w(y)`,
    /// consequences of `x^2 x^2 = w(x)^3 x`.
    Omega3Set,
}

/// Check a family of linearized relations as multihomogeneous identities.
/// Whenever the parent identity holds, every relation in its set holds too,
/// which makes this a consistency check of the polarization engine.
pub fn verify_linearized_consequences<F: Field>(
    b: &BaricAlgebra<F>,
    which: LinearizedSet,
) -> Result<IdentityReport<F>> {
    let alg = b.algebra();
    let f = alg.field().clone();
    let basis = ambient_basis(alg);
    let dim = alg.dim();

    type Residual<'a, F> = Box<dyn Fn(&[Element<F>]) -> crate::error::Result<Element<F>> + 'a>;
    let mul = |x: &Element<F>, y: &Element<F>| alg.multiply(x, y);

    let mut relations: Vec<(&'static str, Vec<usize>, Residual<'_, F>)> = Vec::new();
    match which {
        LinearizedSet::OmegaSet => {
            // 4 x^2 (x y) = w(y) x^3 + w(x) (2 x (x y) + x^2 y)
            let f1 = f.clone();
            relations.push((
                "4x^2(xy) = w(y)x^3 + w(x)(2x(xy) + x^2y)",
                vec![3, 1],
                Box::new(move |args| {
                    let (x, y) = (&args[0], &args[1]);
                    let x2 = mul(x, x)?;
                    let xy = mul(x, y)?;
                    let x3 = mul(&x2, x)?;
                    let mut lhs = mul(&x2, &xy)?.scale(&f1.from_i64(4), &f1);
                    let wx = b.weight().eval(x)?;
                    let wy = b.weight().eval(y)?;
                    lhs.axpy(&f1.neg(&wy), &x3, &f1);
                    let inner = mul(x, &xy)?
                        .scale(&f1.from_i64(2), &f1)
                        .add(&mul(&x2, y)?, &f1);
                    lhs.axpy(&f1.neg(&wx), &inner, &f1);
                    Ok(lhs)
                }),
            ));
            // 2 x^2 y^2 + 4 (x y)^2
            //   = w(x) (2 y (y x) + y^2 x) + w(y) (2 x (x y) + x^2 y)
            let f2 = f.clone();
            relations.push((
                "2x^2y^2 + 4(xy)^2 = w(x)(2y(yx) + y^2x) + w(y)(2x(xy) + x^2y)",
                vec![2, 2],
                Box::new(move |args| {
                    let (x, y) = (&args[0], &args[1]);
                    let x2 = mul(x, x)?;
                    let y2 = mul(y, y)?;
                    let xy = mul(x, y)?;
                    let mut lhs = mul(&x2, &y2)?.scale(&f2.from_i64(2), &f2);
                    lhs = lhs.add(&mul(&xy, &xy)?.scale(&f2.from_i64(4), &f2), &f2);
                    let wx = b.weight().eval(x)?;
                    let wy = b.weight().eval(y)?;
                    let xpart = mul(y, &xy)?
                        .scale(&f2.from_i64(2), &f2)
                        .add(&mul(&y2, x)?, &f2);
                    let ypart = mul(x, &xy)?
                        .scale(&f2.from_i64(2), &f2)
                        .add(&mul(&x2, y)?, &f2);
                    lhs.axpy(&f2.neg(&wx), &xpart, &f2);
                    lhs.axpy(&f2.neg(&wy), &ypart, &f2);
                    Ok(lhs)
                }),
            ));
            // 4 x^2 (y z) + 8 (x y)(x z) = 2 w(x)(x(zy) + z(xy) + y(xz))
            //   + w(y)(2 x (x z) + x^2 z) + w(z)(2 x (x y) + x^2 y)
            let f3 = f.clone();
            relations.push((
                "4x^2(yz) + 8(xy)(xz) = 2w(x)(x(zy) + z(xy) + y(xz)) + w(y)(2x(xz) + x^2z) + w(z)(2x(xy) + x^2y)",
                vec![2, 1, 1],
                Box::new(move |args| {
                    let (x, y, z) = (&args[0], &args[1], &args[2]);
                    let x2 = mul(x, x)?;
                    let xy = mul(x, y)?;
                    let xz = mul(x, z)?;
                    let yz = mul(y, z)?;
                    let mut lhs = mul(&x2, &yz)?.scale(&f3.from_i64(4), &f3);
                    lhs = lhs.add(&mul(&xy, &xz)?.scale(&f3.from_i64(8), &f3), &f3);
                    let wx = b.weight().eval(x)?;
                    let wy = b.weight().eval(y)?;
                    let wz = b.weight().eval(z)?;
                    let sym = mul(x, &yz)?
                        .add(&mul(z, &xy)?, &f3)
                        .add(&mul(y, &xz)?, &f3);
                    lhs.axpy(&f3.neg(&f3.mul(&f3.from_i64(2), &wx)), &sym, &f3);
                    let ypart = mul(x, &xz)?
                        .scale(&f3.from_i64(2), &f3)
                        .add(&mul(&x2, z)?, &f3);
                    let zpart = mul(x, &xy)?
                        .scale(&f3.from_i64(2), &f3)
                        .add(&mul(&x2, y)?, &f3);
                    lhs.axpy(&f3.neg(&wy), &ypart, &f3);
                    lhs.axpy(&f3.neg(&wz), &zpart, &f3);
                    Ok(lhs)
                }),
            ));
        }
        LinearizedSet::Omega3Set => {
            // 4 x^2 (x y) = 3 w(x)^2 w(y) x + w(x)^3 y
            let f1 = f.clone();
            relations.push((
                "4x^2(xy) = 3w(x)^2w(y)x + w(x)^3y",
                vec![3, 1],
                Box::new(move |args| {
                    let (x, y) = (&args[0], &args[1]);
                    let x2 = mul(x, x)?;
                    let xy = mul(x, y)?;
                    let mut lhs = mul(&x2, &xy)?.scale(&f1.from_i64(4), &f1);
                    let wx = b.weight().eval(x)?;
                    let wy = b.weight().eval(y)?;
                    let wx2 = f1.mul(&wx, &wx);
                    let wx3 = f1.mul(&wx2, &wx);
                    lhs.axpy(
                        &f1.neg(&f1.mul(&f1.from_i64(3), &f1.mul(&wx2, &wy))),
                        x,
                        &f1,
                    );
                    lhs.axpy(&f1.neg(&wx3), y, &f1);
                    Ok(lhs)
                }),
            ));
            // 4 x (x^2 y) = 3 w(x) w(y) x^2 + w(x)^3 y
            let f2 = f.clone();
            relations.push((
                "4x(x^2y) = 3w(x)w(y)x^2 + w(x)^3y",
                vec![3, 1],
                Box::new(move |args| {
                    let (x, y) = (&args[0], &args[1]);
                    let x2 = mul(x, x)?;
                    let x2y = mul(&x2, y)?;
                    let mut lhs = mul(x, &x2y)?.scale(&f2.from_i64(4), &f2);
                    let wx = b.weight().eval(x)?;
                    let wy = b.weight().eval(y)?;
                    let wx3 = f2.mul(&f2.mul(&wx, &wx), &wx);
                    lhs.axpy(
                        &f2.neg(&f2.mul(&f2.from_i64(3), &f2.mul(&wx, &wy))),
                        &x2,
                        &f2,
                    );
                    lhs.axpy(&f2.neg(&wx3), y, &f2);
                    Ok(lhs)
                }),
            ));
        }
    }

    for (label, degrees, residual) in &relations {
        let slots: Vec<Slot<'_, F>> = degrees
            .iter()
            .map(|&degree| Slot {
                degree,
                basis: &basis,
            })
            .collect();
        let failure =
            polarize_find_failure(&f, dim, &slots, &mut |args| residual(args))?;
        if let Some(failure) = failure {
            let slot_elems = failure.slot_elements(&slots);
            let witness = Witness::MultilinearTuple {
                slots: slot_elems,
                residual: failure.value,
            };
            return Ok(
                IdentityReport::fail(witness, CheckMethod::Polarize).with_context(*label)
            );
        }
    }
    Ok(IdentityReport::pass(CheckMethod::Polarize))
}

/// The three equivalent conditions related by gametization: the base
/// algebra satisfying the `w(x) x^3` identity, its (-1)-gametization
/// satisfying the `w(x)^3 x` identity, and its 2-gametization satisfying
/// the alternating-sum identity. The verdicts always agree.
#[derive(Clone, Debug)]
pub struct GametizationEquivalences<F: Field> {
    pub base_omega: IdentityReport<F>,
    pub minus_one_omega3: IdentityReport<F>,
    pub two_omegas: IdentityReport<F>,
}

impl<F: Field> GametizationEquivalences<F> {
    pub fn verdicts(&self) -> (bool, bool, bool) {
        (
            self.base_omega.passed,
            self.minus_one_omega3.passed,
            self.two_omegas.passed,
        )
    }

    pub fn consistent(&self) -> bool {
        let (a, b, c) = self.verdicts();
        a == b && b == c
    }
}

pub fn gametization_equivalences<F: Field>(
    b: &BaricAlgebra<F>,
) -> Result<GametizationEquivalences<F>> {
    let f = b.field().clone();
    let base_omega = polarized_check(b.algebra(), Some(b.weight()), &IdentityId::Omega)?;
    let g_minus = b.gametize(&f.from_i64(-1))?;
    let minus_one_omega3 =
        polarized_check(g_minus.algebra(), Some(g_minus.weight()), &IdentityId::Omega3)?;
    let g_two = b.gametize(&f.from_i64(2))?;
    let two_omegas =
        polarized_check(g_two.algebra(), Some(g_two.weight()), &IdentityId::Omegas)?;
    Ok(GametizationEquivalences {
        base_omega,
        minus_one_omega3,
        two_omegas,
    })
}
