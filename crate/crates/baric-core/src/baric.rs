//! Weighted algebras and the functorial constructions between them:
//! gametization, the star transform and its inverse, the Jordan hull, and
//! the structure maps relating an algebra's unitization to the hull of its
//! gametizations.

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::identities::{CheckMethod, IdentityReport, Witness};
use crate::linalg::{Matrix, Subspace};

/// A linear form given by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight<F: Field> {
    field: F,
    omega: Vec<F::Elem>,
}

impl<F: Field> Weight<F> {
    pub fn new(field: F, omega: Vec<F::Elem>) -> Self {
        Weight { field, omega }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.omega.len()
    }

    pub fn values(&self) -> &[F::Elem] {
        &self.omega
    }

    pub fn on_basis(&self, i: usize) -> &F::Elem {
        &self.omega[i]
    }

    pub fn is_zero(&self) -> bool {
        self.omega.iter().all(|c| self.field.is_zero(c))
    }

    pub fn eval(&self, x: &Element<F>) -> Result<F::Elem> {
        if x.dim() != self.omega.len() {
            return Err(Error::DimensionMismatch {
                expected: self.omega.len(),
                got: x.dim(),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (w, c) in self.omega.iter().zip(x.coords()) {
            acc = f.add(&acc, &f.mul(w, c));
        }
        Ok(acc)
    }

    /// The 1 x n matrix of the form, for kernel computations.
    pub fn as_matrix(&self) -> Matrix<F> {
        Matrix::new(self.field.clone(), 1, self.omega.len(), self.omega.clone())
            .expect("row length matches")
    }

    pub fn kernel(&self) -> Subspace<F> {
        self.as_matrix().kernel()
    }
}

impl Weight<Rationals> {
    pub fn lift_to_prime(&self, fp: PrimeField) -> Result<Weight<PrimeField>> {
        let omega = self
            .omega
            .iter()
            .map(|c| fp.from_rational(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(fp, omega))
    }
}

/// Outcome of checking the weight axioms against an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightVerdict {
    Valid,
    /// The form is identically zero.
    Zero,
    /// First basis pair with `w(e_i e_j) != w(e_i) w(e_j)`.
    NotMultiplicative { i: usize, j: usize },
}

impl WeightVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, WeightVerdict::Valid)
    }
}

/// A nonzero form is a weight iff `w(e_i e_j) = w(e_i) w(e_j)` on all basis
/// pairs `i <= j`; by bilinearity this settles the law everywhere.
pub fn validate_weight<F: Field>(alg: &Algebra<F>, w: &Weight<F>) -> Result<WeightVerdict> {
    if w.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: w.dim(),
        });
    }
    if w.field() != alg.field() {
        return Err(Error::FieldMismatch);
    }
    if w.is_zero() {
        return Ok(WeightVerdict::Zero);
    }
    let f = alg.field();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let lhs = w.eval(&alg.basis_product(i, j))?;
            let rhs = f.mul(w.on_basis(i), w.on_basis(j));
            if lhs != rhs {
                return Ok(WeightVerdict::NotMultiplicative { i, j });
            }
        }
    }
    Ok(WeightVerdict::Valid)
}

/// A commutative algebra together with a validated weight homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct BaricAlgebra<F: Field> {
    alg: Algebra<F>,
    wt: Weight<F>,
}

impl<F: Field> BaricAlgebra<F> {
    pub fn new(alg: Algebra<F>, wt: Weight<F>) -> Result<Self> {
        match validate_weight(&alg, &wt)? {
            WeightVerdict::Valid => Ok(BaricAlgebra { alg, wt }),
            WeightVerdict::Zero => Err(Error::InvalidWeight(
                "the weight form must be nonzero".into(),
            )),
            WeightVerdict::NotMultiplicative { i, j } => Err(Error::InvalidWeight(format!(
                "not multiplicative on basis pair ({i}, {j})"
            ))),
        }
    }

    pub fn algebra(&self) -> &Algebra<F> {
        &self.alg
    }

    pub fn weight(&self) -> &Weight<F> {
        &self.wt
    }

    pub fn field(&self) -> &F {
        self.alg.field()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn into_parts(self) -> (Algebra<F>, Weight<F>) {
        (self.alg, self.wt)
    }

    /// Deform the product to `x*y = (1-g) xy + (g/2)(w(x) y + w(y) x)`.
    ///
    /// The weight is unchanged and remains a homomorphism. Gametizations
    /// compose as `(A_g)_d = A_{g+d-gd}`, so `g/(g-1)` inverts `g` and the
    /// 2-gametization is an involution.
    pub fn gametize(&self, gamma: &F::Elem) -> Result<BaricAlgebra<F>> {
        let f = self.field().clone();
        if f.is_one(gamma) {
            return Err(Error::GammaIsOne);
        }
        let one_minus = f.sub(&f.one(), gamma);
        let half_gamma = f.mul(&f.half(), gamma);
        let dim = self.dim();
        let alg = Algebra::from_basis_products(
            f.clone(),
            dim,
            self.alg.names().map(<[String]>::to_vec),
            |i, j| {
                let mut out = self.alg.basis_product(i, j).scale(&one_minus, &f);
                let ei = Element::basis_vector(&f, dim, i);
                let ej = Element::basis_vector(&f, dim, j);
                out.axpy(&f.mul(&half_gamma, self.wt.on_basis(i)), &ej, &f);
                out.axpy(&f.mul(&half_gamma, self.wt.on_basis(j)), &ei, &f);
                out
            },
        );
        BaricAlgebra::new(alg, self.wt.clone())
    }

    /// The transformed product `x*y = xy - (1/2)(w(x) y + w(y) x)` together
    /// with the span of all transformed products, which always lands inside
    /// `ker w` and is therefore a proper subspace.
    pub fn star_transform(&self) -> StarTransform<F> {
        let f = self.field().clone();
        let dim = self.dim();
        let half = f.half();
        let algebra = Algebra::from_basis_products(
            f.clone(),
            dim,
            self.alg.names().map(<[String]>::to_vec),
            |i, j| {
                let mut out = self.alg.basis_product(i, j);
                let ei = Element::basis_vector(&f, dim, i);
                let ej = Element::basis_vector(&f, dim, j);
                out.axpy(&f.neg(&f.mul(&half, self.wt.on_basis(i))), &ej, &f);
                out.axpy(&f.neg(&f.mul(&half, self.wt.on_basis(j))), &ei, &f);
                out
            },
        );
        let full = algebra.full_space();
        let square_span = algebra
            .product_span(&full, &full)
            .expect("full space matches dimension");
        StarTransform {
            algebra,
            square_span,
        }
    }

    /// Unital hull `F1 + A` with `x . y = (3/4) w(x) w(y) 1 + xy`; the unit
    /// sits at coordinate 0. The hull carries no weight of its own. It is a
    /// Jordan algebra whenever the base satisfies `x^2 x^2 = w(x)^3 x`.
    pub fn jordanize(&self) -> Algebra<F> {
        let f = self.field().clone();
        let dim = self.dim() + 1;
        let three_quarters = f
            .div(&f.from_i64(3), &f.from_i64(4))
            .expect("4 is invertible");
        let names = self.alg.names().map(|ns| {
            let mut out = vec!["1".to_owned()];
            out.extend(ns.iter().cloned());
            out
        });
        Algebra::from_basis_products(f.clone(), dim, names, |i, j| {
            if i == 0 {
                Element::basis_vector(&f, dim, j)
            } else {
                let p = self.alg.basis_product(i - 1, j - 1);
                let scalar = f.mul(
                    &three_quarters,
                    &f.mul(self.wt.on_basis(i - 1), self.wt.on_basis(j - 1)),
                );
                let mut coords = vec![scalar];
                coords.extend(p.into_coords());
                Element::new(coords)
            }
        })
    }

    /// The isomorphism `1 -> 1`, `x -> w(x) 1 - x` from the unitization of
    /// this algebra to the unitization of its 2-gametization.
    pub fn phi_unitization_iso(&self) -> LinearMap<F> {
        let f = self.field().clone();
        let two = f.from_i64(2);
        let gametized = self.gametize(&two).expect("2 != 1");
        let source = self.alg.unitize();
        let target = gametized.alg.unitize();
        let n = self.dim();
        let mut m = Matrix::zeros(f.clone(), n + 1, n + 1);
        m.set(0, 0, f.one());
        for i in 0..n {
            m.set(0, i + 1, self.wt.on_basis(i).clone());
            m.set(i + 1, i + 1, f.neg(&f.one()));
        }
        LinearMap::new(m, source, target).expect("square matrix of matching size")
    }

    /// The isomorphism `1 -> 1`, `x -> (1/4) w(x) 1 + (1/2) x` from the
    /// unitization of this algebra to the Jordan hull of its
    /// (-1)-gametization.
    pub fn jordan_iso_phi(&self) -> LinearMap<F> {
        let f = self.field().clone();
        let minus_one = f.from_i64(-1);
        let gametized = self.gametize(&minus_one).expect("-1 != 1");
        let source = self.alg.unitize();
        let target = gametized.jordanize();
        let n = self.dim();
        let quarter = f.inv(&f.from_i64(4)).expect("4 is invertible");
        let half = f.half();
        let mut m = Matrix::zeros(f.clone(), n + 1, n + 1);
        m.set(0, 0, f.one());
        for i in 0..n {
            m.set(0, i + 1, f.mul(&quarter, self.wt.on_basis(i)));
            m.set(i + 1, i + 1, half.clone());
        }
        LinearMap::new(m, source, target).expect("square matrix of matching size")
    }
}

impl BaricAlgebra<Rationals> {
    pub fn lift_to_prime(&self, fp: PrimeField) -> Result<BaricAlgebra<PrimeField>> {
        BaricAlgebra::new(self.alg.lift_to_prime(fp)?, self.wt.lift_to_prime(fp)?)
    }
}

/// Result of [`BaricAlgebra::star_transform`].
#[derive(Clone, Debug)]
pub struct StarTransform<F: Field> {
    pub algebra: Algebra<F>,
    /// The span `A^{*2}` of all transformed products.
    pub square_span: Subspace<F>,
}

/// Rebuild a weighted algebra from a star product: `xy = x*y + (1/2)(w(x) y
/// + w(y) x)`, the exact inverse of [`BaricAlgebra::star_transform`].
///
/// Requires `w` nonzero and every product of `alg` inside `ker w`; the
/// offending basis pair is reported otherwise.
pub fn star_inverse<F: Field>(alg: &Algebra<F>, w: Weight<F>) -> Result<BaricAlgebra<F>> {
    if w.dim() != alg.dim() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            got: w.dim(),
        });
    }
    if w.is_zero() {
        return Err(Error::InvalidWeight(
            "the weight candidate must be nonzero".into(),
        ));
    }
    let f = alg.field().clone();
    for i in 0..alg.dim() {
        for j in i..alg.dim() {
            let p = alg.basis_product(i, j);
            let v = w.eval(&p)?;
            if !f.is_zero(&v) {
                return Err(Error::StarPrecondition {
                    i,
                    j,
                    product: alg.format_element(&p),
                    value: f.format(&v),
                });
            }
        }
    }
    let dim = alg.dim();
    let half = f.half();
    let rebuilt = Algebra::from_basis_products(
        f.clone(),
        dim,
        alg.names().map(<[String]>::to_vec),
        |i, j| {
            let mut out = alg.basis_product(i, j);
            let ei = Element::basis_vector(&f, dim, i);
            let ej = Element::basis_vector(&f, dim, j);
            out.axpy(&f.mul(&half, w.on_basis(i)), &ej, &f);
            out.axpy(&f.mul(&half, w.on_basis(j)), &ei, &f);
            out
        },
    );
    BaricAlgebra::new(rebuilt, w)
}

/// A linear map between two algebras, stored as a matrix acting on
/// coordinate columns.
#[derive(Clone, Debug)]
pub struct LinearMap<F: Field> {
    matrix: Matrix<F>,
    source: Algebra<F>,
    target: Algebra<F>,
}

impl<F: Field> LinearMap<F> {
    pub fn new(matrix: Matrix<F>, source: Algebra<F>, target: Algebra<F>) -> Result<Self> {
        if source.field() != target.field() || matrix.field() != source.field() {
            return Err(Error::FieldMismatch);
        }
        if matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                got: matrix.cols(),
            });
        }
        if matrix.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                got: matrix.rows(),
            });
        }
        Ok(LinearMap {
            matrix,
            source,
            target,
        })
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn source(&self) -> &Algebra<F> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<F> {
        &self.target
    }

    pub fn apply(&self, x: &Element<F>) -> Result<Element<F>> {
        Ok(Element::new(self.matrix.mul_vec(x.coords())?))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_bijective(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.rank() == self.matrix.rows()
    }

    /// Compose `self` after `inner`.
    pub fn compose(&self, inner: &LinearMap<F>) -> Result<LinearMap<F>> {
        if inner.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source.dim(),
                got: inner.target.dim(),
            });
        }
        LinearMap::new(
            self.matrix.mul_mat(&inner.matrix)?,
            inner.source.clone(),
            self.target.clone(),
        )
    }
}

/// Verdict of the multiplicativity check for a linear map, plus its rank.
#[derive(Clone, Debug)]
pub struct HomomorphismReport<F: Field> {
    pub identity: IdentityReport<F>,
    pub rank: usize,
    pub bijective: bool,
}

impl<F: Field> HomomorphismReport<F> {
    pub fn is_homomorphism(&self) -> bool {
        self.identity.passed
    }
}

/// `f` is an algebra homomorphism iff `f(e_i e_j) = f(e_i) f(e_j)` for all
/// basis pairs `i <= j`; bilinearity and commutativity extend this to all
/// arguments. Bijectivity is decided by rank.
pub fn is_algebra_homomorphism<F: Field>(map: &LinearMap<F>) -> Result<HomomorphismReport<F>> {
    let f = map.source().field().clone();
    let n = map.source().dim();
    let rank = map.rank();
    let bijective = map.is_bijective();
    for i in 0..n {
        for j in i..n {
            let lhs = map.apply(&map.source().basis_product(i, j))?;
            let ei = map.apply(&Element::basis_vector(&f, n, i))?;
            let ej = map.apply(&Element::basis_vector(&f, n, j))?;
            let rhs = map.target().multiply(&ei, &ej)?;
            if lhs != rhs {
                let residual = lhs.sub(&rhs, &f);
                let report = IdentityReport {
                    passed: false,
                    witness: Some(Witness::Point {
                        x: Element::basis_vector(&f, n, i),
                        y: Some(Element::basis_vector(&f, n, j)),
                        residual,
                    }),
                    method: CheckMethod::Direct,
                    context: Some(format!(
                        "basis pair ({i}, {j}): f(e_i e_j) = {}, f(e_i) f(e_j) = {}",
                        map.target().format_element(&lhs),
                        map.target().format_element(&rhs),
                    )),
                };
                return Ok(HomomorphismReport {
                    identity: report,
                    rank,
                    bijective,
                });
            }
        }
    }
    Ok(HomomorphismReport {
        identity: IdentityReport {
            passed: true,
            witness: None,
            method: CheckMethod::Direct,
            context: None,
        },
        rank,
        bijective,
    })
}
