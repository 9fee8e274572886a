//! Exact linear algebra: matrices, reduced row echelon form, kernels and
//! eigenspaces, and canonical subspaces.
//!
//! Subspaces are always stored with a reduced-echelon basis, the unique
//! canonical representative of a row space, so subspace equality is plain
//! entrywise comparison.

use crate::error::{Error, Result};
use crate::field::Field;

pub(crate) fn vec_is_zero<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|c| field.is_zero(c))
}

/// `dst += c * src`
pub(crate) fn vec_axpy<F: Field>(field: &F, dst: &mut [F::Elem], c: &F::Elem, src: &[F::Elem]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = field.add(d, &field.mul(c, s));
    }
}

pub(crate) fn vec_scale<F: Field>(field: &F, v: &mut [F::Elem], c: &F::Elem) {
    for x in v.iter_mut() {
        *x = field.mul(x, c);
    }
}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let entries = vec![field.zero(); rows * cols];
        Matrix {
            field,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Matrix::new(field, nrows, ncols, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F::Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn to_row_vecs(&self) -> Vec<Vec<F::Elem>> {
        self.row_iter().map(<[F::Elem]>::to_vec).collect()
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = f.zero();
            for (a, b) in self.row(r).iter().zip(v) {
                acc = f.add(&acc, &f.mul(a, b));
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// `self * other` (used for composing linear maps).
    pub fn mul_mat(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let f = self.field.clone();
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(r, k), other.at(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// `self - lambda * I`; the matrix must be square.
    pub fn sub_scalar_identity(&self, lambda: &F::Elem) -> Result<Matrix<F>> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.field.sub(m.at(i, i), lambda);
            m.set(i, i, v);
        }
        Ok(m)
    }

    /// Stack another matrix below this one (same column count).
    pub fn stack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix::new(self.field.clone(), self.rows + other.rows, self.cols, entries)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_row_vecs();
        rref_in_place(&self.field, &mut rows)
    }

    /// Canonical row space.
    pub fn echelonize(&self) -> Subspace<F> {
        Subspace::from_span(self.field.clone(), self.cols, self.to_row_vecs())
    }

    /// Canonical null space; `dim(kernel) + rank = cols`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let mut rows = self.to_row_vecs();
        let rank = rref_in_place(f, &mut rows);
        rows.truncate(rank);

        let mut pivot_of_row = Vec::with_capacity(rank);
        let mut is_pivot = vec![false; self.cols];
        for row in &rows {
            let p = row.iter().position(|c| !f.is_zero(c)).expect("nonzero row");
            pivot_of_row.push(p);
            is_pivot[p] = true;
        }

        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !is_pivot[*c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &p) in rows.iter().zip(&pivot_of_row) {
                v[p] = f.neg(&row[free]);
            }
            basis.push(v);
        }
        Subspace::from_span(f.clone(), self.cols, basis)
    }
}

/// Gauss-Jordan reduction to reduced row echelon form; returns the rank.
/// Zero rows are moved to the bottom but not removed.
pub(crate) fn rref_in_place<F: Field>(field: &F, rows: &mut [Vec<F::Elem>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !field.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field
            .inv(&rows[rank][col])
            .expect("pivot entry is nonzero");
        vec_scale(field, &mut rows[rank], &inv);
        for r in 0..nrows {
            if r != rank && !field.is_zero(&rows[r][col]) {
                let c = field.neg(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(rank.max(r));
                let (dst, src) = if r < rank {
                    (&mut head[r], &tail[0])
                } else {
                    (&mut tail[0], &head[rank])
                };
                vec_axpy(field, dst, &c, src);
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// A linear subspace in canonical form: the basis matrix is in reduced row
/// echelon form with no zero rows, so two subspaces are equal iff their
/// basis matrices are identical entrywise.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// Canonicalize a spanning set.
    pub fn from_span(field: F, ambient: usize, mut rows: Vec<Vec<F::Elem>>) -> Self {
        for row in &rows {
            assert_eq!(row.len(), ambient, "spanning vector has wrong length");
        }
        let rank = rref_in_place(&field, &mut rows);
        rows.truncate(rank);
        if rows.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let basis = Matrix::from_rows(field, rows).expect("rows share a length");
        Subspace { ambient, basis }
    }

    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = &[F::Elem]> {
        self.basis.row_iter()
    }

    fn check_compatible(&self, other: &Subspace<F>) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        Ok(())
    }

    /// Reduce `v` modulo this subspace; the result is zero iff `v` lies in it.
    pub fn reduce_vector(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        let f = self.field().clone();
        let mut v = v.to_vec();
        for row in self.basis.row_iter() {
            let pivot = row.iter().position(|c| !f.is_zero(c)).expect("basis row");
            if !f.is_zero(&v[pivot]) {
                let c = f.neg(&v[pivot]);
                vec_axpy(&f, &mut v, &c, row);
            }
        }
        Ok(v)
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> Result<bool> {
        let r = self.reduce_vector(v)?;
        Ok(vec_is_zero(self.field(), &r))
    }

    pub fn contains(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_compatible(other)?;
        for row in other.basis_rows() {
            if !self.contains_vector(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_compatible(other)?;
        let mut rows = self.basis.to_row_vecs();
        rows.extend(other.basis.to_row_vecs());
        Ok(Subspace::from_span(
            self.field().clone(),
            self.ambient,
            rows,
        ))
    }
}

/// Kernel of `m - lambda*I`: all eigenvectors of `m` for the eigenvalue
/// `lambda`, plus zero.
pub fn eigenspace<F: Field>(m: &Matrix<F>, lambda: &F::Elem) -> Result<Subspace<F>> {
    Ok(m.sub_scalar_identity(lambda)?.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num::rational::BigRational;
    use proptest::prelude::*;

    fn qmat(rows: &[&[i64]]) -> Matrix<Rationals> {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&n| Rationals.from_i64(n)).collect())
            .collect();
        Matrix::from_rows(Rationals, data).unwrap()
    }

    fn qvec(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| Rationals.from_i64(n)).collect()
    }

    #[test]
    fn echelonize_scaled_identity() {
        let s = qmat(&[&[2, 0], &[0, 2]]).echelonize();
        assert_eq!(s, Subspace::full(Rationals, 2));
    }

    #[test]
    fn echelonize_dependent_rows() {
        let s = qmat(&[&[1, 1], &[2, 2]]).echelonize();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis().row(0), &qvec(&[1, 1])[..]);
    }

    #[test]
    fn echelonize_zero_matrix() {
        let s = qmat(&[&[0, 0, 0], &[0, 0, 0]]).echelonize();
        assert_eq!(s.dim(), 0);
        assert!(s.is_zero());
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(Matrix::identity(Rationals, 3).kernel().dim(), 0);
    }

    #[test]
    fn kernel_of_row_functional() {
        let k = qmat(&[&[1, 0]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &qvec(&[0, 1])[..]);
    }

    #[test]
    fn eigenspace_of_diagonal() {
        let m = Matrix::from_rows(
            Rationals,
            vec![
                vec![Rationals.parse("1/2").unwrap(), Rationals.zero()],
                vec![Rationals.zero(), Rationals.zero()],
            ],
        )
        .unwrap();
        let half = Rationals.parse("1/2").unwrap();
        let e = eigenspace(&m, &half).unwrap();
        assert_eq!(e.dim(), 1);
        assert_eq!(e.basis().row(0), &qvec(&[1, 0])[..]);
        assert_eq!(eigenspace(&m, &Rationals.one()).unwrap().dim(), 0);
    }

    #[test]
    fn subspace_sum_and_membership() {
        let u = qmat(&[&[1, 0]]).echelonize();
        let v = qmat(&[&[0, 1]]).echelonize();
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(Rationals, 2));

        let d = qmat(&[&[1, 1]]).echelonize();
        assert!(d.contains_vector(&qvec(&[2, 2])).unwrap());
        assert!(!d.contains_vector(&qvec(&[1, 2])).unwrap());
    }

    #[test]
    fn mismatched_ambient_dims_rejected() {
        let u = qmat(&[&[1, 0]]).echelonize();
        let v = qmat(&[&[1, 0, 0]]).echelonize();
        assert!(matches!(
            u.sum(&v),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mismatched_fields_rejected() {
        let f5 = PrimeField::new(5).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        let u = Matrix::new(f5, 1, 2, vec![1, 0]).unwrap().echelonize();
        let v = Matrix::new(f7, 1, 2, vec![1, 0]).unwrap().echelonize();
        assert!(matches!(u.sum(&v), Err(Error::FieldMismatch)));
    }

    #[test]
    fn prime_field_kernel() {
        let f5 = PrimeField::new(5).unwrap();
        // x + 2y = 0 over F_5: canonical basis (1, 2) since 1 + 2*2 = 5 = 0.
        let m = Matrix::new(f5, 1, 2, vec![1, 2]).unwrap();
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &[1, 2][..]);
        for row in k.basis_rows() {
            assert!(vec_is_zero(&f5, &m.mul_vec(row).unwrap()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn echelonize_is_idempotent(rows in proptest::collection::vec(
            proptest::collection::vec(-4i64..=4, 4), 1..=4)) {
            let m = Matrix::from_rows(
                Rationals,
                rows.iter().map(|r| qvec(r)).collect(),
            ).unwrap();
            let s = m.echelonize();
            let again = s.basis().echelonize();
            prop_assert_eq!(&again, &s);
        }

        #[test]
        fn rank_nullity(rows in proptest::collection::vec(
            proptest::collection::vec(-4i64..=4, 5), 1..=4)) {
            let m = Matrix::from_rows(
                Rationals,
                rows.iter().map(|r| qvec(r)).collect(),
            ).unwrap();
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        }

        #[test]
        fn kernel_vectors_annihilate(rows in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 4), 1..=3)) {
            let m = Matrix::from_rows(
                Rationals,
                rows.iter().map(|r| qvec(r)).collect(),
            ).unwrap();
            for row in m.kernel().basis().to_row_vecs() {
                prop_assert!(vec_is_zero(&Rationals, &m.mul_vec(&row).unwrap()));
            }
        }

        #[test]
        fn field_axioms_spot_check(
            a in -20i64..=20, b in -20i64..=20, c in -20i64..=20,
            d in 1i64..=9, e in 1i64..=9, g in 1i64..=9,
        ) {
            // Rationals.
            let f = Rationals;
            let (x, y, z) = (
                BigRational::new(a.into(), d.into()),
                BigRational::new(b.into(), e.into()),
                BigRational::new(c.into(), g.into()),
            );
            prop_assert_eq!(f.add(&f.add(&x, &y), &z), f.add(&x, &f.add(&y, &z)));
            prop_assert_eq!(f.mul(&f.mul(&x, &y), &z), f.mul(&x, &f.mul(&y, &z)));
            prop_assert_eq!(
                f.mul(&x, &f.add(&y, &z)),
                f.add(&f.mul(&x, &y), &f.mul(&x, &z))
            );
            if !f.is_zero(&x) {
                prop_assert!(f.is_one(&f.mul(&x, &f.inv(&x).unwrap())));
            }
            // F_7.
            let f7 = PrimeField::new(7).unwrap();
            let (x, y, z) = (f7.from_i64(a), f7.from_i64(b), f7.from_i64(c));
            prop_assert_eq!(f7.add(&f7.add(&x, &y), &z), f7.add(&x, &f7.add(&y, &z)));
            prop_assert_eq!(
                f7.mul(&x, &f7.add(&y, &z)),
                f7.add(&f7.mul(&x, &y), &f7.mul(&x, &z))
            );
            if !f7.is_zero(&x) {
                prop_assert!(f7.is_one(&f7.mul(&x, &f7.inv(&x).unwrap())));
            }
        }
    }
}
