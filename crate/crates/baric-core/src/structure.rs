//! Structural analysis: idempotents (closed cubic formulas and exhaustive
//! finite-field scans), Peirce decompositions with their multiplication
//! rules, derived series and solvability, nil elements, and bounded
//! power-associativity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{enumerate_elements, Algebra, Element};
use crate::baric::{BaricAlgebra, Weight};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::identities::{
    ensure_polarizable, polarize_find_failure, polarized_check, CheckMethod, IdentityId,
    IdentityReport, Slot, Witness,
};
use crate::linalg::Subspace;

pub fn is_idempotent<F: Field>(alg: &Algebra<F>, e: &Element<F>) -> Result<bool> {
    Ok(alg.multiply(e, e)? == *e)
}

/// The closed idempotent formula for an algebra satisfying the given
/// identity, applied at a point of weight 1:
///
/// * `Omega`: `x^3`
/// * `Omega3`: `(1/4) x^3 + (3/8) x^2 + (3/8) x`
/// * `Omegas`: `x^3 - 3 x^2 + 3 x`
///
/// The caller asserts that the algebra satisfies the identity; when it does,
/// the result is a nonzero idempotent of weight 1, and every nonzero
/// idempotent arises this way.
pub fn idempotent_from_formula<F: Field>(
    b: &BaricAlgebra<F>,
    x: &Element<F>,
    id: &IdentityId<F>,
) -> Result<Element<F>> {
    let f = b.field().clone();
    let w = b.weight().eval(x)?;
    if !f.is_one(&w) {
        return Err(Error::WeightNotOne(f.format(&w)));
    }
    let alg = b.algebra();
    let x2 = alg.multiply(x, x)?;
    let x3 = alg.multiply(&x2, x)?;
    match id {
        IdentityId::Omega => Ok(x3),
        IdentityId::Omega3 => {
            let quarter = f.inv(&f.from_i64(4)).expect("4 invertible");
            let three_eighths = f.div(&f.from_i64(3), &f.from_i64(8)).expect("8 invertible");
            let mut out = x3.scale(&quarter, &f);
            out.axpy(&three_eighths, &x2, &f);
            out.axpy(&three_eighths, x, &f);
            Ok(out)
        }
        IdentityId::Omegas => {
            let mut out = x3;
            out.axpy(&f.from_i64(-3), &x2, &f);
            out.axpy(&f.from_i64(3), x, &f);
            Ok(out)
        }
        other => Err(Error::PeirceCase(format!(
            "no closed idempotent formula for identity {}",
            other.name()
        ))),
    }
}

/// All nonzero idempotents of a finite-field algebra, in lexicographic
/// coordinate order. When a weight is supplied each idempotent is verified
/// to have weight 1, which holds in every algebra from the supported
/// identity classes.
pub fn idempotents_exhaustive<F: Field>(
    alg: &Algebra<F>,
    w: Option<&Weight<F>>,
    budget: u64,
) -> Result<Vec<Element<F>>> {
    let f = alg.field().clone();
    let q = f.element_count().ok_or(Error::NonFiniteField)?;
    let required = (q as u128)
        .checked_pow(alg.dim() as u32)
        .unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let mut out = Vec::new();
    for e in enumerate_elements(&f, alg.dim()).expect("finite field") {
        if e.is_zero(&f) || !is_idempotent(alg, &e)? {
            continue;
        }
        if let Some(w) = w {
            let value = w.eval(&e)?;
            if !f.is_one(&value) {
                return Err(Error::IdempotentWeight {
                    element: alg.format_element(&e),
                    value: f.format(&value),
                });
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// Eigenspace splitting of left multiplication by an idempotent of weight 1,
/// restricted to the weight kernel `N`.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition<F: Field> {
    pub idempotent: Element<F>,
    /// `N = ker w`.
    pub kernel: Subspace<F>,
    /// Probed eigenvalue -> `N(lambda) = {x in N : e x = lambda x}`.
    pub parts: Vec<(F::Elem, Subspace<F>)>,
    /// `dim N` minus the total dimension of the probed parts; zero exactly
    /// when the probes exhaust `N`.
    pub residual_dim: usize,
}

impl<F: Field> PeirceDecomposition<F> {
    pub fn part(&self, lambda: &F::Elem) -> Option<&Subspace<F>> {
        self.parts
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, s)| s)
    }
}

/// The probe set covering every eigenvalue the supported identity classes
/// produce: 0, 1/2, 1, -1/2.
pub fn default_eigenvalue_probes<F: Field>(field: &F) -> Vec<F::Elem> {
    vec![
        field.zero(),
        field.half(),
        field.one(),
        field.neg(&field.half()),
    ]
}

pub fn peirce_decompose<F: Field>(
    b: &BaricAlgebra<F>,
    e: &Element<F>,
    eigenvalues: &[F::Elem],
) -> Result<PeirceDecomposition<F>> {
    let alg = b.algebra();
    let f = alg.field().clone();
    if !is_idempotent(alg, e)? {
        return Err(Error::NotIdempotent(alg.format_element(e)));
    }
    let w = b.weight().eval(e)?;
    if !f.is_one(&w) {
        return Err(Error::WeightNotOne(f.format(&w)));
    }
    let kernel = b.weight().kernel();

    // Left-multiplication matrix: column j is e * e_j.
    let n = alg.dim();
    let mut left = crate::linalg::Matrix::zeros(f.clone(), n, n);
    for j in 0..n {
        let col = alg.multiply(e, &Element::basis_vector(&f, n, j))?;
        for (k, v) in col.coords().iter().enumerate() {
            left.set(k, j, v.clone());
        }
    }

    let omega_row = b.weight().as_matrix();
    let mut parts = Vec::new();
    let mut seen: Vec<F::Elem> = Vec::new();
    let mut total = 0usize;
    for lambda in eigenvalues {
        if seen.contains(lambda) {
            continue;
        }
        seen.push(lambda.clone());
        // N(lambda) = ker(L_e - lambda I) intersected with ker w, computed
        // as the kernel of the stacked matrix.
        let shifted = left.sub_scalar_identity(lambda)?;
        let stacked = shifted.stack(&omega_row)?;
        let part = stacked.kernel();
        total += part.dim();
        parts.push((lambda.clone(), part));
    }

    // Eigenspaces at distinct eigenvalues are independent; make sure the
    // dimension bookkeeping agrees before reporting a residual.
    let mut sum = Subspace::zero(f.clone(), n);
    for (_, part) in &parts {
        sum = sum.sum(part)?;
    }
    debug_assert_eq!(sum.dim(), total, "eigenspace independence");

    Ok(PeirceDecomposition {
        idempotent: e.clone(),
        kernel: kernel.clone(),
        parts,
        residual_dim: kernel.dim() - total,
    })
}

/// Which identity class a Peirce decomposition is checked against. Each case
/// fixes the two eigenvalues that split `N` and the coefficient `c` of the
/// idempotent family `e + u + c u^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PeirceCase {
    /// `x^2 x^2 = w(x) x^3`: eigenvalues (1/2, 0), family constant 1.
    Omega,
    /// `x^2 x^2 = w(x)^3 x`: eigenvalues (1/2, -1/2), family constant 1/2.
    Omega3,
    /// The alternating-sum identity: eigenvalues (1/2, 1), family constant -1.
    Omegas,
}

impl PeirceCase {
    pub fn name(&self) -> &'static str {
        match self {
            PeirceCase::Omega => "omega",
            PeirceCase::Omega3 => "omega3",
            PeirceCase::Omegas => "omegas",
        }
    }

    pub fn eigenvalues<F: Field>(&self, field: &F) -> (F::Elem, F::Elem) {
        let half = field.half();
        match self {
            PeirceCase::Omega => (half, field.zero()),
            PeirceCase::Omega3 => (half.clone(), field.neg(&half)),
            PeirceCase::Omegas => (half, field.one()),
        }
    }

    pub fn family_constant<F: Field>(&self, field: &F) -> F::Elem {
        match self {
            PeirceCase::Omega => field.one(),
            PeirceCase::Omega3 => field.half(),
            PeirceCase::Omegas => field.from_i64(-1),
        }
    }
}

/// Verify the multiplication rules of a two-eigenvalue Peirce decomposition:
/// the containments `N(1/2)^2 + N(l)^2 <= N(l)` and `N(1/2) N(l) <= N(1/2)`,
/// the cube and `x^2(xy)` vanishing rules, the cross rules `u^2 v^2 =
/// -2(uv)^2`, `u^2 v = 2u(uv)`, `u v^2 = 2(uv)v`, and idempotency of the
/// family `e + u + c u^2` over the half part — all decided exactly by
/// polarization over the part bases.
pub fn peirce_verify_rules<F: Field>(
    b: &BaricAlgebra<F>,
    dec: &PeirceDecomposition<F>,
    case: PeirceCase,
) -> Result<IdentityReport<F>> {
    let alg = b.algebra();
    let f = alg.field().clone();
    let n = alg.dim();
    if dec.residual_dim != 0 {
        return Err(Error::PeirceCase(format!(
            "decomposition has residual dimension {}",
            dec.residual_dim
        )));
    }
    let (lam_half, lam_other) = case.eigenvalues(&f);
    let half_part = dec.part(&lam_half).ok_or_else(|| {
        Error::PeirceCase(format!(
            "decomposition was not probed at eigenvalue {}",
            f.format(&lam_half)
        ))
    })?;
    let other_part = dec.part(&lam_other).ok_or_else(|| {
        Error::PeirceCase(format!(
            "decomposition was not probed at eigenvalue {}",
            f.format(&lam_other)
        ))
    })?;
    if half_part.dim() + other_part.dim() != dec.kernel.dim() {
        return Err(Error::PeirceCase(format!(
            "parts at ({}, {}) do not span the weight kernel",
            f.format(&lam_half),
            f.format(&lam_other)
        )));
    }

    let to_elems = |s: &Subspace<F>| -> Vec<Element<F>> {
        s.basis_rows().map(|r| Element::new(r.to_vec())).collect()
    };
    let half_basis = to_elems(half_part);
    let other_basis = to_elems(other_part);
    let kernel_basis = to_elems(&dec.kernel);

    // Bilinear containment rules on basis pairs.
    let contained = |targets: &Subspace<F>,
                     left: &[Element<F>],
                     right: &[Element<F>],
                     label: &str|
     -> Result<Option<IdentityReport<F>>> {
        for a in left {
            for bb in right {
                let p = alg.multiply(a, bb)?;
                if !targets.contains_vector(p.coords())? {
                    let witness = Witness::Point {
                        x: a.clone(),
                        y: Some(bb.clone()),
                        residual: p,
                    };
                    return Ok(Some(
                        IdentityReport::fail(witness, CheckMethod::Direct).with_context(label),
                    ));
                }
            }
        }
        Ok(None)
    };
    if let Some(r) = contained(other_part, &half_basis, &half_basis, "N(1/2)^2 <= N(l)")? {
        return Ok(r);
    }
    if let Some(r) = contained(other_part, &other_basis, &other_basis, "N(l)^2 <= N(l)")? {
        return Ok(r);
    }
    if let Some(r) = contained(half_part, &half_basis, &other_basis, "N(1/2) N(l) <= N(1/2)")? {
        return Ok(r);
    }

    // Polarized rules. Each closure is homogeneous of the listed degrees in
    // its slot arguments.
    let e = dec.idempotent.clone();
    let c = case.family_constant(&f);
    type Rule<'a, F> = (
        &'static str,
        Vec<Slot<'a, F>>,
        Box<dyn Fn(&[Element<F>]) -> crate::error::Result<Element<F>> + 'a>,
    );
    let cube = |basis: &'static str| format!("x^3 = 0 on {basis}");
    let mut rules: Vec<Rule<'_, F>> = Vec::new();

    for (label, basis) in [
        (cube("N(1/2)"), &half_basis),
        (cube("N(l)"), &other_basis),
    ] {
        let label: &'static str = Box::leak(label.into_boxed_str());
        rules.push((
            label,
            vec![Slot { degree: 3, basis }],
            Box::new(move |args: &[Element<F>]| alg.principal_power(&args[0], 3)),
        ));
    }

    rules.push((
        "x^2 (x y) = 0 on N",
        vec![
            Slot {
                degree: 3,
                basis: &kernel_basis,
            },
            Slot {
                degree: 1,
                basis: &kernel_basis,
            },
        ],
        Box::new(move |args: &[Element<F>]| {
            let x2 = alg.multiply(&args[0], &args[0])?;
            let xy = alg.multiply(&args[0], &args[1])?;
            alg.multiply(&x2, &xy)
        }),
    ));

    let f_u2v2 = f.clone();
    rules.push((
        "u^2 v^2 = -2 (u v)^2",
        vec![
            Slot {
                degree: 2,
                basis: &half_basis,
            },
            Slot {
                degree: 2,
                basis: &other_basis,
            },
        ],
        Box::new(move |args: &[Element<F>]| {
            let (u, v) = (&args[0], &args[1]);
            let u2 = alg.multiply(u, u)?;
            let v2 = alg.multiply(v, v)?;
            let uv = alg.multiply(u, v)?;
            let mut out = alg.multiply(&u2, &v2)?;
            out.axpy(&f_u2v2.from_i64(2), &alg.multiply(&uv, &uv)?, &f_u2v2);
            Ok(out)
        }),
    ));

    let f_u2v = f.clone();
    rules.push((
        "u^2 v = 2 u (u v)",
        vec![
            Slot {
                degree: 2,
                basis: &half_basis,
            },
            Slot {
                degree: 1,
                basis: &other_basis,
            },
        ],
        Box::new(move |args: &[Element<F>]| {
            let (u, v) = (&args[0], &args[1]);
            let u2 = alg.multiply(u, u)?;
            let uv = alg.multiply(u, v)?;
            let mut out = alg.multiply(&u2, v)?;
            out.axpy(&f_u2v.from_i64(-2), &alg.multiply(u, &uv)?, &f_u2v);
            Ok(out)
        }),
    ));

    let f_uv2 = f.clone();
    rules.push((
        "u v^2 = 2 (u v) v",
        vec![
            Slot {
                degree: 1,
                basis: &half_basis,
            },
            Slot {
                degree: 2,
                basis: &other_basis,
            },
        ],
        Box::new(move |args: &[Element<F>]| {
            let (u, v) = (&args[0], &args[1]);
            let v2 = alg.multiply(v, v)?;
            let uv = alg.multiply(u, v)?;
            let mut out = alg.multiply(u, &v2)?;
            out.axpy(&f_uv2.from_i64(-2), &alg.multiply(&uv, v)?, &f_uv2);
            Ok(out)
        }),
    ));

    // Idempotency of e + u + c u^2 over the half part, as one polynomial
    // identity in u split into its homogeneous components of degree 1..4.
    // The degree-0 component vanishes because e is idempotent.
    let fe = f.clone();
    let e1 = e.clone();
    rules.push((
        "degree-1 family component: 2 e u = u",
        vec![Slot {
            degree: 1,
            basis: &half_basis,
        }],
        Box::new(move |args: &[Element<F>]| {
            let u = &args[0];
            let mut out = alg.multiply(&e1, u)?.scale(&fe.from_i64(2), &fe);
            out.axpy(&fe.from_i64(-1), u, &fe);
            Ok(out)
        }),
    ));

    let fe = f.clone();
    let e2 = e.clone();
    let c2 = c.clone();
    rules.push((
        "degree-2 family component: u^2 + 2c e u^2 = c u^2",
        vec![Slot {
            degree: 2,
            basis: &half_basis,
        }],
        Box::new(move |args: &[Element<F>]| {
            let u = &args[0];
            let u2 = alg.multiply(u, u)?;
            let mut out = u2.clone();
            let two_c = fe.mul(&fe.from_i64(2), &c2);
            out.axpy(&two_c, &alg.multiply(&e2, &u2)?, &fe);
            out.axpy(&fe.neg(&c2), &u2, &fe);
            Ok(out)
        }),
    ));

    let fe = f.clone();
    let c3 = c.clone();
    rules.push((
        "degree-3 family component: 2c u^3 = 0",
        vec![Slot {
            degree: 3,
            basis: &half_basis,
        }],
        Box::new(move |args: &[Element<F>]| {
            let u3 = alg.principal_power(&args[0], 3)?;
            Ok(u3.scale(&fe.mul(&fe.from_i64(2), &c3), &fe))
        }),
    ));

    let fe = f.clone();
    let c4 = c.clone();
    rules.push((
        "degree-4 family component: c^2 (u^2)^2 = 0",
        vec![Slot {
            degree: 4,
            basis: &half_basis,
        }],
        Box::new(move |args: &[Element<F>]| {
            let u2 = alg.multiply(&args[0], &args[0])?;
            let sq = alg.multiply(&u2, &u2)?;
            Ok(sq.scale(&fe.mul(&c4, &c4), &fe))
        }),
    ));

    for (label, slots, residual) in &rules {
        let failure = polarize_find_failure(&f, n, slots, &mut |args| residual(args))?;
        if let Some(failure) = failure {
            let slot_elems = failure.slot_elements(slots);
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

/// The derived series `A^(1) = A`, `A^(k+1) = span(A^(k) A^(k))`; solvable
/// means some term vanishes.
#[derive(Clone, Debug)]
pub struct DerivedSeries<F: Field> {
    /// Terms from `A^(1)` down to the first zero or stabilized term.
    pub terms: Vec<Subspace<F>>,
    pub solvable: bool,
    /// 1-based index of the first zero term, when solvable.
    pub depth: Option<usize>,
}

pub fn derived_series<F: Field>(alg: &Algebra<F>) -> DerivedSeries<F> {
    let mut terms = vec![alg.full_space()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            let depth = terms.len();
            return DerivedSeries {
                terms,
                solvable: true,
                depth: Some(depth),
            };
        }
        let next = alg
            .product_span(last, last)
            .expect("spans share the algebra's dimension");
        if &next == last {
            return DerivedSeries {
                terms,
                solvable: false,
                depth: None,
            };
        }
        terms.push(next);
    }
}

/// Outcome of the principal-power nil test.
#[derive(Clone, Debug, PartialEq)]
pub enum NilOutcome<F: Field> {
    /// `x^power = 0`.
    Nil { power: usize },
    /// `x^repeat = x^first` with a nonzero value: the powers cycle forever,
    /// so the element is provably not nil.
    NotNil {
        first: usize,
        repeat: usize,
        value: Element<F>,
    },
    /// No zero and no repetition within the bound.
    Inconclusive,
}

pub fn nil_element_check<F: Field>(
    alg: &Algebra<F>,
    x: &Element<F>,
    bound: usize,
) -> Result<NilOutcome<F>> {
    if bound < 2 {
        return Err(Error::NilBound(bound));
    }
    let f = alg.field().clone();
    let mut seen: Vec<Element<F>> = Vec::with_capacity(bound);
    let mut power = x.clone();
    for n in 1..=bound {
        if n > 1 {
            power = alg.multiply(&power, x)?;
        }
        if power.is_zero(&f) {
            return Ok(NilOutcome::Nil { power: n });
        }
        if let Some(k) = seen.iter().position(|p| *p == power) {
            return Ok(NilOutcome::NotNil {
                first: k + 1,
                repeat: n,
                value: power,
            });
        }
        seen.push(power.clone());
    }
    Ok(NilOutcome::Inconclusive)
}

/// For an algebra satisfying `(x^2)^2 = 0`, the subalgebra generated by any
/// element has a square that squares to zero and equals the span of the
/// principal powers `x^n`, `n >= 2`. Checked on seeded random samples.
pub fn remark_check<F: Field>(
    alg: &Algebra<F>,
    samples: usize,
    seed: u64,
) -> Result<IdentityReport<F>> {
    let f = alg.field().clone();
    let pre = polarized_check(alg, None, &IdentityId::SqSqZero)?;
    if !pre.passed {
        return Ok(IdentityReport {
            context: Some("the algebra does not satisfy (x^2)^2 = 0".into()),
            ..pre
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = Element::new(
            (0..alg.dim())
                .map(|_| f.from_i64(rng.random_range(-2..=2)))
                .collect(),
        );
        let generated = alg.subalgebra_generated(&x)?;
        let square = alg.product_span(&generated, &generated)?;
        let square_of_square = alg.product_span(&square, &square)?;
        if !square_of_square.is_zero() {
            let residual = Element::new(square_of_square.basis().row(0).to_vec());
            let witness = Witness::Point {
                x,
                y: None,
                residual,
            };
            return Ok(IdentityReport::fail(witness, CheckMethod::Sampled)
                .with_context("(<x>^2)^2 != 0"));
        }

        // span{x^n : n >= 2} stabilizes: once a power falls in the span, all
        // later ones do.
        let mut powers = Subspace::zero(f.clone(), alg.dim());
        let mut power = alg.multiply(&x, &x)?;
        loop {
            if powers.contains_vector(power.coords())? {
                break;
            }
            powers = powers.sum(&Subspace::from_span(
                f.clone(),
                alg.dim(),
                vec![power.coords().to_vec()],
            ))?;
            power = alg.multiply(&power, &x)?;
        }
        if powers != square {
            let residual = Element::new(
                square
                    .basis_rows()
                    .chain(powers.basis_rows())
                    .next()
                    .map(<[F::Elem]>::to_vec)
                    .unwrap_or_else(|| vec![f.zero(); alg.dim()]),
            );
            let witness = Witness::Point {
                x,
                y: None,
                residual,
            };
            return Ok(IdentityReport::fail(witness, CheckMethod::Sampled)
                .with_context("<x>^2 differs from span{x^n : n >= 2}"));
        }
    }
    Ok(IdentityReport::pass(CheckMethod::Sampled))
}

/// Verify `x^i x^j = x^(i+j)` for all `2 <= i <= j`, `i + j <= k`, each as a
/// homogeneous identity decided by polarization. Requires `4 <= k <= 8` and
/// characteristic 0 or greater than `k`.
pub fn power_associative_upto<F: Field>(
    alg: &Algebra<F>,
    k: usize,
) -> Result<IdentityReport<F>> {
    if !(4..=8).contains(&k) {
        return Err(Error::DegreeBound(k));
    }
    ensure_polarizable(alg.field(), k)?;
    let f = alg.field().clone();
    let basis: Vec<Element<F>> = (0..alg.dim())
        .map(|i| Element::basis_vector(&f, alg.dim(), i))
        .collect();
    for total in 4..=k {
        for i in 2..=total / 2 {
            let j = total - i;
            let slots = vec![Slot {
                degree: total,
                basis: &basis,
            }];
            let failure = polarize_find_failure(&f, alg.dim(), &slots, &mut |args| {
                let x = &args[0];
                let xi = alg.principal_power(x, i)?;
                let xj = alg.principal_power(x, j)?;
                let xij = alg.principal_power(x, total)?;
                Ok(alg.multiply(&xi, &xj)?.sub(&xij, &f))
            })?;
            if let Some(failure) = failure {
                let slot_elems = failure.slot_elements(&slots);
                let witness = Witness::MultilinearTuple {
                    slots: slot_elems,
                    residual: failure.value,
                };
                return Ok(IdentityReport::fail(witness, CheckMethod::Polarize)
                    .with_context(format!("x^{i} x^{j} != x^{total}")));
            }
        }
    }
    Ok(IdentityReport::pass(CheckMethod::Polarize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::testutil::{seven, sixdim, t1, twodim};

    fn elem(coords: &[i64]) -> Element<Rationals> {
        Element::new(coords.iter().map(|&n| Rationals.from_i64(n)).collect())
    }

    #[test]
    fn idempotent_checks() {
        let b = seven();
        let e = Element::basis_vector(&Rationals, 7, 0);
        assert!(is_idempotent(b.algebra(), &e).unwrap());
        let zero = Element::zero(&Rationals, 7);
        assert!(is_idempotent(b.algebra(), &zero).unwrap());

        let b = t1();
        assert!(is_idempotent(b.algebra(), &elem(&[1, 1, 1])).unwrap());
        assert!(!is_idempotent(b.algebra(), &elem(&[1, 1, 0])).unwrap());
    }

    #[test]
    fn formula_idempotents_on_t1() {
        let b = t1();
        let x = elem(&[1, 1, 0]);
        let e = idempotent_from_formula(&b, &x, &IdentityId::Omega).unwrap();
        assert_eq!(e, elem(&[1, 1, 1]));
        assert!(is_idempotent(b.algebra(), &e).unwrap());

        // x of weight != 1 is rejected
        let bad = elem(&[2, 0, 0]);
        assert!(matches!(
            idempotent_from_formula(&b, &bad, &IdentityId::Omega),
            Err(Error::WeightNotOne(_))
        ));
    }

    #[test]
    fn formula_fixes_existing_idempotent() {
        let f = Rationals;
        let b = t1();
        let e = Element::basis_vector(&f, 3, 0);
        let cases = [
            (b.clone(), IdentityId::Omega),
            (b.gametize(&f.from_i64(-1)).unwrap(), IdentityId::Omega3),
            (b.gametize(&f.from_i64(2)).unwrap(), IdentityId::Omegas),
        ];
        for (alg, id) in cases {
            let out = idempotent_from_formula(&alg, &e, &id).unwrap();
            assert_eq!(out, e, "{} formula moved e", id.name());
        }
    }

    #[test]
    fn formula_in_gametized_algebra() {
        let f = Rationals;
        let minus_one = t1().gametize(&f.from_i64(-1)).unwrap();
        let x = elem(&[1, 1, 0]);
        let e = idempotent_from_formula(&minus_one, &x, &IdentityId::Omega3).unwrap();
        assert!(is_idempotent(minus_one.algebra(), &e).unwrap());
        assert_eq!(e, elem(&[1, 1, 1]));
    }

    #[test]
    fn exhaustive_idempotents_of_t1_over_f5() {
        let f5 = PrimeField::new(5).unwrap();
        let b = t1().lift_to_prime(f5).unwrap();
        let found =
            idempotents_exhaustive(b.algebra(), Some(b.weight()), 1_000_000).unwrap();
        // the family e + b u + b^2 v
        let mut expected: Vec<Element<PrimeField>> = (0..5u64)
            .map(|beta| Element::new(vec![1, beta, f5.mul(&beta, &beta)]))
            .collect();
        expected.sort_by(|a, b| a.coords().cmp(b.coords()));
        let mut got = found.clone();
        got.sort_by(|a, b| a.coords().cmp(b.coords()));
        assert_eq!(got, expected);
    }

    #[test]
    fn exhaustive_idempotents_of_point_algebra() {
        let f5 = PrimeField::new(5).unwrap();
        let alg = crate::algebra::Algebra::from_basis_products(f5, 1, None, |_, _| {
            Element::new(vec![1])
        });
        let found = idempotents_exhaustive(&alg, None, 100).unwrap();
        assert_eq!(found, vec![Element::new(vec![1])]);
    }

    #[test]
    fn peirce_on_t1_family() {
        let f = Rationals;
        let e = elem(&[1, 0, 0]);
        let u = elem(&[0, 1, 0]);
        let v = elem(&[0, 0, 1]);
        let probes = default_eigenvalue_probes(&f);

        // base: N(1/2) = span{u}, N(0) = span{v}
        let b = t1();
        let dec = peirce_decompose(&b, &e, &probes).unwrap();
        assert_eq!(dec.residual_dim, 0);
        assert!(dec.part(&f.half()).unwrap().contains_vector(u.coords()).unwrap());
        assert!(dec.part(&f.zero()).unwrap().contains_vector(v.coords()).unwrap());
        assert_eq!(dec.part(&f.one()).unwrap().dim(), 0);
        let rules = peirce_verify_rules(&b, &dec, PeirceCase::Omega).unwrap();
        assert!(rules.passed);

        // (-1)-gametization: N(1/2) = span{u}, N(-1/2) = span{v}
        let g = b.gametize(&f.from_i64(-1)).unwrap();
        let dec = peirce_decompose(&g, &e, &probes).unwrap();
        assert_eq!(dec.residual_dim, 0);
        assert_eq!(dec.part(&f.half()).unwrap().dim(), 1);
        assert_eq!(dec.part(&f.neg(&f.half())).unwrap().dim(), 1);
        let rules = peirce_verify_rules(&g, &dec, PeirceCase::Omega3).unwrap();
        assert!(rules.passed);

        // 2-gametization: N(1/2) = span{u}, N(1) = span{v}
        let g = b.gametize(&f.from_i64(2)).unwrap();
        let dec = peirce_decompose(&g, &e, &probes).unwrap();
        assert_eq!(dec.residual_dim, 0);
        assert_eq!(dec.part(&f.half()).unwrap().dim(), 1);
        assert_eq!(dec.part(&f.one()).unwrap().dim(), 1);
        let rules = peirce_verify_rules(&g, &dec, PeirceCase::Omegas).unwrap();
        assert!(rules.passed);
    }

    #[test]
    fn peirce_on_seven() {
        let f = Rationals;
        let b = seven();
        let e = Element::basis_vector(&f, 7, 0);
        let dec = peirce_decompose(&b, &e, &default_eigenvalue_probes(&f)).unwrap();
        assert_eq!(dec.residual_dim, 0);
        assert_eq!(dec.part(&f.half()).unwrap().dim(), 4);
        assert_eq!(dec.part(&f.zero()).unwrap().dim(), 1);
        assert_eq!(dec.part(&f.one()).unwrap().dim(), 1);
        // N(1) = span{t}
        let t = Element::<Rationals>::basis_vector(&f, 7, 6);
        assert!(dec.part(&f.one()).unwrap().contains_vector(t.coords()).unwrap());
    }

    #[test]
    fn peirce_rejects_non_idempotent() {
        let b = t1();
        let f = Rationals;
        let u = elem(&[0, 1, 0]);
        assert!(matches!(
            peirce_decompose(&b, &u, &default_eigenvalue_probes(&f)),
            Err(Error::NotIdempotent(_) | Error::WeightNotOne(_))
        ));
    }

    #[test]
    fn derived_series_of_paper_algebras() {
        let two = twodim();
        let s = derived_series(&two);
        assert!(s.solvable);
        assert_eq!(s.depth, Some(3));
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[1].dim(), 1);

        let six = sixdim();
        let s = derived_series(&six);
        assert!(s.solvable);
        assert_eq!(s.depth, Some(4));
        assert_eq!(s.terms[1].dim(), 4);
        assert_eq!(s.terms[2].dim(), 1);
        // (A^2)^2 = span{f}
        assert!(s.terms[2]
            .contains_vector(Element::<Rationals>::basis_vector(&Rationals, 6, 5).coords())
            .unwrap());

        let zero = crate::algebra::Algebra::zero_algebra(Rationals, 3);
        let s = derived_series(&zero);
        assert!(s.solvable);
        assert_eq!(s.depth, Some(2));
    }

    #[test]
    fn non_solvable_algebra_stabilizes() {
        // one-dimensional idempotent: A^(k) = A forever
        let alg = crate::algebra::Algebra::from_basis_products(Rationals, 1, None, |_, _| {
            Element::basis_vector(&Rationals, 1, 0)
        });
        let s = derived_series(&alg);
        assert!(!s.solvable);
        assert_eq!(s.depth, None);
        assert_eq!(s.terms.len(), 1);
    }

    #[test]
    fn nil_checks() {
        let two = twodim();
        let a = elem(&[1, 0]);
        match nil_element_check(&two, &a, 10).unwrap() {
            NilOutcome::NotNil {
                first,
                repeat,
                value,
            } => {
                assert_eq!((first, repeat), (2, 3));
                assert_eq!(value, elem(&[0, 1]));
            }
            other => panic!("expected a power cycle, got {other:?}"),
        }

        let zero = Element::zero(&Rationals, 2);
        assert_eq!(
            nil_element_check(&two, &zero, 5).unwrap(),
            NilOutcome::Nil { power: 1 }
        );

        let b = t1();
        let u = elem(&[0, 1, 0]);
        assert_eq!(
            nil_element_check(b.algebra(), &u, 5).unwrap(),
            NilOutcome::Nil { power: 3 }
        );

        assert!(matches!(
            nil_element_check(&two, &a, 1),
            Err(Error::NilBound(1))
        ));
    }

    #[test]
    fn remark_on_paper_algebras() {
        for alg in [twodim(), sixdim()] {
            let rep = remark_check(&alg, 25, 12345).unwrap();
            assert!(rep.passed, "{:?}", rep.context);
        }
    }

    #[test]
    fn remark_rejects_algebras_without_sqsq() {
        let b = t1();
        let rep = remark_check(b.algebra(), 5, 1).unwrap();
        assert!(!rep.passed);
    }

    #[test]
    fn power_associativity_of_t1() {
        let b = t1();
        let rep = power_associative_upto(b.algebra(), 4).unwrap();
        assert!(rep.passed);
        // t1 is a Jordan algebra, so all bounded degrees pass over Q.
        let rep = power_associative_upto(b.algebra(), 8).unwrap();
        assert!(rep.passed);
    }

    #[test]
    fn power_associativity_bounds() {
        let b = t1();
        assert!(matches!(
            power_associative_upto(b.algebra(), 3),
            Err(Error::DegreeBound(3))
        ));
        assert!(matches!(
            power_associative_upto(b.algebra(), 9),
            Err(Error::DegreeBound(9))
        ));
        let f5 = PrimeField::new(5).unwrap();
        let lifted = t1().lift_to_prime(f5).unwrap();
        assert!(power_associative_upto(lifted.algebra(), 4).is_ok());
        assert!(matches!(
            power_associative_upto(lifted.algebra(), 5),
            Err(Error::CharacteristicDegree { .. })
        ));
    }

    #[test]
    fn cube_times_cube_chain_on_t1() {
        // For algebras satisfying x^2 x^2 = w(x) x^3 the chain
        // x^3 x^3 = w(x)^3 x^3 holds; checked as its own degree-6 identity.
        let b = t1();
        let alg = b.algebra();
        let f = Rationals;
        let basis: Vec<Element<Rationals>> =
            (0..3).map(|i| Element::basis_vector(&f, 3, i)).collect();
        let slots = vec![Slot {
            degree: 6,
            basis: &basis,
        }];
        let failure = polarize_find_failure(&f, 3, &slots, &mut |args| {
            let x = &args[0];
            let x3 = alg.principal_power(x, 3)?;
            let w = b.weight().eval(x)?;
            let w3 = f.mul(&f.mul(&w, &w), &w);
            let mut out = alg.multiply(&x3, &x3)?;
            out.axpy(&f.neg(&w3), &x3, &f);
            Ok(out)
        })
        .unwrap();
        assert!(failure.is_none());
    }
}
