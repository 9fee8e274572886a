//! Finite-dimensional commutative algebras given by structure constants.
//!
//! The table stores `c_{ij}^k` sparsely for `i <= j` only and is read
//! symmetrically, so commutativity is structural. Absent pairs multiply to
//! zero, matching how the bundled examples state their tables ("other
//! products being zero").

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::{vec_axpy, vec_is_zero, Subspace};

/// A vector in the underlying space of an algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F: Field> {
    coords: Vec<F::Elem>,
}

impl<F: Field> Element<F> {
    pub fn new(coords: Vec<F::Elem>) -> Self {
        Element { coords }
    }

    pub fn zero(field: &F, dim: usize) -> Self {
        Element {
            coords: vec![field.zero(); dim],
        }
    }

    pub fn basis_vector(field: &F, dim: usize, i: usize) -> Self {
        let mut e = Self::zero(field, dim);
        e.coords[i] = field.one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F::Elem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F::Elem> {
        self.coords
    }

    pub fn coord(&self, i: usize) -> &F::Elem {
        &self.coords[i]
    }

    pub fn is_zero(&self, field: &F) -> bool {
        vec_is_zero(field, &self.coords)
    }

    pub fn add(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.dim(), other.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &F) -> Self {
        assert_eq!(self.dim(), other.dim());
        Element {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem, field: &F) -> Self {
        Element {
            coords: self.coords.iter().map(|a| field.mul(c, a)).collect(),
        }
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &F::Elem, other: &Self, field: &F) {
        assert_eq!(self.dim(), other.dim());
        vec_axpy(field, &mut self.coords, c, &other.coords);
    }
}

/// A commutative algebra of dimension `n >= 1` over a [`Field`].
#[derive(Clone, Debug, PartialEq)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    names: Option<Vec<String>>,
    /// `(i, j) -> [(k, c_{ij}^k)]` with `i <= j`, terms sorted by `k`,
    /// zero coefficients and empty pair entries dropped.
    sc: BTreeMap<(usize, usize), Vec<(usize, F::Elem)>>,
}

impl<F: Field> Algebra<F> {
    pub fn new(
        field: F,
        dim: usize,
        names: Option<Vec<String>>,
        entries: impl IntoIterator<Item = ((usize, usize), Vec<(usize, F::Elem)>)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::FileInvariant("dimension must be at least 1".into()));
        }
        if let Some(ns) = &names {
            if ns.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: ns.len(),
                });
            }
        }
        let mut sc = BTreeMap::new();
        for ((i, j), terms) in entries {
            if i > j {
                return Err(Error::FileInvariant(format!(
                    "product entry ({i}, {j}) must have i <= j"
                )));
            }
            if j >= dim {
                return Err(Error::FileInvariant(format!(
                    "product entry ({i}, {j}) out of range for dimension {dim}"
                )));
            }
            // Merge duplicate k's, drop zeros, sort: one normal form per table.
            let mut merged: BTreeMap<usize, F::Elem> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(Error::FileInvariant(format!(
                        "term index {k} out of range for dimension {dim}"
                    )));
                }
                match merged.remove(&k) {
                    Some(prev) => {
                        merged.insert(k, field.add(&prev, &c));
                    }
                    None => {
                        merged.insert(k, c);
                    }
                }
            }
            let terms: Vec<(usize, F::Elem)> = merged
                .into_iter()
                .filter(|(_, c)| !field.is_zero(c))
                .collect();
            if sc.insert((i, j), terms).is_some() {
                return Err(Error::FileInvariant(format!(
                    "duplicate product entry ({i}, {j})"
                )));
            }
        }
        sc.retain(|_, terms| !terms.is_empty());
        Ok(Algebra {
            field,
            dim,
            names,
            sc,
        })
    }

    /// The algebra with all products zero.
    pub fn zero_algebra(field: F, dim: usize) -> Self {
        Algebra {
            field,
            dim,
            names: None,
            sc: BTreeMap::new(),
        }
    }

    /// Build a table from a basis-product rule; `products(i, j)` is queried
    /// for `i <= j` only.
    pub fn from_basis_products(
        field: F,
        dim: usize,
        names: Option<Vec<String>>,
        mut products: impl FnMut(usize, usize) -> Element<F>,
    ) -> Self {
        let mut entries = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let p = products(i, j);
                assert_eq!(p.dim(), dim, "basis product has wrong dimension");
                let terms: Vec<(usize, F::Elem)> = p
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !field.is_zero(c))
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    entries.push(((i, j), terms));
                }
            }
        }
        Algebra::new(field, dim, names, entries).expect("constructed table is valid")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn with_names(mut self, names: Option<Vec<String>>) -> Result<Self> {
        if let Some(ns) = &names {
            if ns.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: ns.len(),
                });
            }
        }
        self.names = names;
        Ok(self)
    }

    pub fn basis_name(&self, i: usize) -> String {
        match &self.names {
            Some(ns) => ns[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn structure_constants(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, F::Elem)>)> {
        self.sc.iter()
    }

    /// The product `e_i e_j` of two basis vectors (symmetric in `i`, `j`).
    pub fn basis_product(&self, i: usize, j: usize) -> Element<F> {
        let key = if i <= j { (i, j) } else { (j, i) };
        let mut out = Element::zero(&self.field, self.dim);
        if let Some(terms) = self.sc.get(&key) {
            for (k, c) in terms {
                out.coords[*k] = c.clone();
            }
        }
        out
    }

    fn check_element(&self, x: &Element<F>) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        Ok(())
    }

    /// Bilinear symmetric extension of the structure constants.
    pub fn multiply(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check_element(x)?;
        self.check_element(y)?;
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        for (&(i, j), terms) in &self.sc {
            let coeff = if i == j {
                f.mul(x.coord(i), y.coord(i))
            } else {
                f.add(
                    &f.mul(x.coord(i), y.coord(j)),
                    &f.mul(x.coord(j), y.coord(i)),
                )
            };
            if f.is_zero(&coeff) {
                continue;
            }
            for (k, c) in terms {
                out[*k] = f.add(&out[*k], &f.mul(&coeff, c));
            }
        }
        Ok(Element::new(out))
    }

    /// Left-normed principal power `x^1 = x`, `x^{k+1} = x^k x`; `n = 0` is
    /// rejected because the algebras are not unital.
    pub fn principal_power(&self, x: &Element<F>, n: usize) -> Result<Element<F>> {
        if n == 0 {
            return Err(Error::ZeroExponent);
        }
        self.check_element(x)?;
        let mut acc = x.clone();
        for _ in 1..n {
            acc = self.multiply(&acc, x)?;
        }
        Ok(acc)
    }

    /// Adjoin a formal unit at coordinate 0; the original algebra embeds as
    /// coordinates `1..=n`.
    pub fn unitize(&self) -> Algebra<F> {
        let f = self.field.clone();
        let dim = self.dim + 1;
        let names = self.names.as_ref().map(|ns| {
            let mut out = vec!["1".to_owned()];
            out.extend(ns.iter().cloned());
            out
        });
        Algebra::from_basis_products(f.clone(), dim, names, |i, j| {
            if i == 0 {
                Element::basis_vector(&f, dim, j)
            } else {
                let p = self.basis_product(i - 1, j - 1);
                let mut coords = vec![f.zero()];
                coords.extend(p.into_coords());
                Element::new(coords)
            }
        })
    }

    pub fn full_space(&self) -> Subspace<F> {
        Subspace::full(self.field.clone(), self.dim)
    }

    /// Span of `{ s t : s in S, t in T }`, computed on basis pairs (correct
    /// because the product is bilinear).
    pub fn product_span(&self, s: &Subspace<F>, t: &Subspace<F>) -> Result<Subspace<F>> {
        if s.field() != &self.field || t.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if s.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: s.ambient(),
            });
        }
        if t.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: t.ambient(),
            });
        }
        let mut rows = Vec::with_capacity(s.dim() * t.dim());
        for bs in s.basis_rows() {
            for bt in t.basis_rows() {
                let p = self.multiply(
                    &Element::new(bs.to_vec()),
                    &Element::new(bt.to_vec()),
                )?;
                rows.push(p.into_coords());
            }
        }
        Ok(Subspace::from_span(self.field.clone(), self.dim, rows))
    }

    /// Smallest subspace containing `x` and closed under multiplication,
    /// by iterating span closure until stable.
    pub fn subalgebra_generated(&self, x: &Element<F>) -> Result<Subspace<F>> {
        self.check_element(x)?;
        let mut span = Subspace::from_span(
            self.field.clone(),
            self.dim,
            vec![x.coords().to_vec()],
        );
        loop {
            let products = self.product_span(&span, &span)?;
            let bigger = span.sum(&products)?;
            if bigger == span {
                return Ok(span);
            }
            span = bigger;
        }
    }

    /// Render an element as a linear combination of named basis vectors.
    pub fn format_element(&self, x: &Element<F>) -> String {
        let f = &self.field;
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in x.coords().iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let name = self.basis_name(i);
            if f.is_one(c) {
                parts.push(name);
            } else {
                parts.push(format!("{}*{}", f.format(c), name));
            }
        }
        if parts.is_empty() {
            "0".to_owned()
        } else {
            parts.join(" + ")
        }
    }

    pub fn parse_element(&self, texts: &[String]) -> Result<Element<F>> {
        if texts.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: texts.len(),
            });
        }
        let coords = texts
            .iter()
            .map(|t| self.field.parse(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Element::new(coords))
    }
}

/// Iterate every coordinate vector of the given dimension over a finite
/// field, lexicographically (first coordinate most significant). Returns
/// `None` over an infinite field; callers budget with
/// [`Field::element_count`].
pub fn enumerate_elements<F: Field>(
    field: &F,
    dim: usize,
) -> Option<impl Iterator<Item = Element<F>> + '_> {
    let q = field.element_count()?;
    let mut digits = vec![0u64; dim];
    let mut done = false;
    Some(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let elem = Element::new(digits.iter().map(|&d| field.element_at(d)).collect());
        let mut i = dim;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
        Some(elem)
    }))
}

impl Algebra<Rationals> {
    /// Reduce a rational table modulo p; fails if any denominator is
    /// divisible by p.
    pub fn lift_to_prime(&self, fp: PrimeField) -> Result<Algebra<PrimeField>> {
        let mut entries = Vec::new();
        for (&(i, j), terms) in &self.sc {
            let lifted = terms
                .iter()
                .map(|(k, c)| Ok((*k, fp.from_rational(c)?)))
                .collect::<Result<Vec<_>>>()?;
            entries.push(((i, j), lifted));
        }
        Algebra::new(fp, self.dim, self.names.clone(), entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{seven, sixdim, twodim};
    use proptest::prelude::*;

    #[test]
    fn seven_dim_products() {
        let a = seven();
        let alg = a.algebra();
        let f = alg.field().clone();
        // (u1 + s)^2 = 2 u3
        let x = alg
            .parse_element(&svec(&["0", "1", "0", "0", "0", "1", "0"]))
            .unwrap();
        let sq = alg.multiply(&x, &x).unwrap();
        assert_eq!(
            sq,
            alg.parse_element(&svec(&["0", "0", "0", "2", "0", "0", "0"]))
                .unwrap()
        );
        // u2 (u1 + s) = u4
        let u2 = Element::basis_vector(&f, 7, 2);
        let p = alg.multiply(&u2, &x).unwrap();
        assert_eq!(p, Element::basis_vector(&f, 7, 4));
        // 0 * x = 0
        let z = Element::zero(&f, 7);
        assert!(alg.multiply(&z, &x).unwrap().is_zero(&f));
    }

    fn svec(texts: &[&str]) -> Vec<String> {
        texts.iter().map(|s| (*s).to_owned()).collect()
    }

    #[test]
    fn principal_powers_of_twodim() {
        let alg = twodim();
        let f = alg.field().clone();
        let a = Element::basis_vector(&f, 2, 0);
        let b = Element::basis_vector(&f, 2, 1);
        assert_eq!(alg.principal_power(&a, 3).unwrap(), b);
        assert_eq!(alg.principal_power(&a, 5).unwrap(), b);
        assert_eq!(alg.principal_power(&a, 1).unwrap(), a);
        assert!(matches!(
            alg.principal_power(&a, 0),
            Err(Error::ZeroExponent)
        ));
    }

    #[test]
    fn unitize_embeds_original() {
        let alg = twodim();
        let sharp = alg.unitize();
        assert_eq!(sharp.dim(), 3);
        let f = sharp.field().clone();
        let unit = Element::basis_vector(&f, 3, 0);
        for j in 0..3 {
            let ej = Element::basis_vector(&f, 3, j);
            assert_eq!(sharp.multiply(&unit, &ej).unwrap(), ej);
        }
        // products among the embedded copy match the original table
        for i in 0..2 {
            for j in i..2 {
                let p = alg.basis_product(i, j);
                let q = sharp.basis_product(i + 1, j + 1);
                assert!(f.is_zero(q.coord(0)));
                assert_eq!(q.coords()[1..], p.coords()[..]);
            }
        }
    }

    #[test]
    fn unitize_of_zero_algebra() {
        let alg = Algebra::zero_algebra(Rationals, 1);
        let sharp = alg.unitize();
        let f = Rationals;
        let unit = Element::basis_vector(&f, 2, 0);
        let e = Element::basis_vector(&f, 2, 1);
        assert_eq!(sharp.multiply(&unit, &unit).unwrap(), unit);
        assert_eq!(sharp.multiply(&unit, &e).unwrap(), e);
        assert!(sharp.multiply(&e, &e).unwrap().is_zero(&f));
    }

    #[test]
    fn product_span_of_paper_examples() {
        let two = twodim();
        let full = two.full_space();
        let sq = two.product_span(&full, &full).unwrap();
        assert_eq!(sq.dim(), 1);
        assert!(sq
            .contains_vector(Element::<Rationals>::basis_vector(&Rationals, 2, 1).coords())
            .unwrap());

        let six = sixdim();
        let full = six.full_space();
        let sq = six.product_span(&full, &full).unwrap();
        assert_eq!(sq.dim(), 4);
        for k in 2..6 {
            assert!(sq
                .contains_vector(
                    Element::<Rationals>::basis_vector(&Rationals, 6, k).coords()
                )
                .unwrap());
        }

        let zero = Subspace::zero(Rationals, 2);
        assert!(two
            .product_span(&zero, &two.full_space())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn generated_subalgebras() {
        let two = twodim();
        let a = Element::basis_vector(&Rationals, 2, 0);
        assert_eq!(two.subalgebra_generated(&a).unwrap().dim(), 2);

        let zero = Element::zero(&Rationals, 2);
        assert!(two.subalgebra_generated(&zero).unwrap().is_zero());

        let six = sixdim();
        let a = Element::basis_vector(&Rationals, 6, 0);
        let gen = six.subalgebra_generated(&a).unwrap();
        assert_eq!(gen.dim(), 2);
        assert!(gen
            .contains_vector(Element::<Rationals>::basis_vector(&Rationals, 6, 3).coords())
            .unwrap());
    }

    #[test]
    fn rejects_malformed_tables() {
        let r = Algebra::new(
            Rationals,
            2,
            None,
            vec![((1usize, 0usize), vec![(0usize, Rationals.one())])],
        );
        assert!(matches!(r, Err(Error::FileInvariant(_))));

        let r = Algebra::new(
            Rationals,
            2,
            None,
            vec![((0usize, 1usize), vec![(5usize, Rationals.one())])],
        );
        assert!(matches!(r, Err(Error::FileInvariant(_))));
    }

    #[test]
    fn format_element_uses_names() {
        let alg = seven();
        let x = alg
            .algebra()
            .parse_element(&svec(&["0", "0", "0", "4", "0", "0", "0"]))
            .unwrap();
        assert_eq!(alg.algebra().format_element(&x), "4*u3");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn multiply_is_bilinear_and_symmetric(
            xs in proptest::collection::vec(-3i64..=3, 7),
            ys in proptest::collection::vec(-3i64..=3, 7),
            zs in proptest::collection::vec(-3i64..=3, 7),
            a in -2i64..=2,
            b in -2i64..=2,
        ) {
            let alg = seven();
            let alg = alg.algebra();
            let f = alg.field().clone();
            let lift = |v: &[i64]| {
                Element::new(v.iter().map(|&n| f.from_i64(n)).collect())
            };
            let (x, xp, y) = (lift(&xs), lift(&zs), lift(&ys));
            let (a, b) = (f.from_i64(a), f.from_i64(b));

            // symmetry
            prop_assert_eq!(
                alg.multiply(&x, &y).unwrap(),
                alg.multiply(&y, &x).unwrap()
            );

            // bilinearity in the first slot
            let combo = x.scale(&a, &f).add(&xp.scale(&b, &f), &f);
            let lhs = alg.multiply(&combo, &y).unwrap();
            let rhs = alg
                .multiply(&x, &y)
                .unwrap()
                .scale(&a, &f)
                .add(&alg.multiply(&xp, &y).unwrap().scale(&b, &f), &f);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn generated_subalgebra_is_closed(xs in proptest::collection::vec(-2i64..=2, 6)) {
            let alg = sixdim();
            let f = alg.field().clone();
            let x = Element::new(xs.iter().map(|&n| f.from_i64(n)).collect());
            let s = alg.subalgebra_generated(&x).unwrap();
            prop_assert!(s.contains_vector(x.coords()).unwrap());
            let products = alg.product_span(&s, &s).unwrap();
            prop_assert!(s.contains(&products).unwrap());
        }
    }
}
