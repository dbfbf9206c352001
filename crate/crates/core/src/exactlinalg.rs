//! Dense exact linear algebra: reduced row-echelon form, kernels, images
//! and quotient bases.
//!
//! Elimination is plain Gauss–Jordan with the pivot scaled to one and the
//! first nonzero entry (in row order) chosen as pivot, so every basis
//! produced here is canonical. Fraction-free (Bareiss) elimination would be
//! the upgrade path if coefficient growth ever becomes a problem.

use crate::error::{Error, Result};
use crate::exactfield::{Field, Scalar};

/// A dense row-major matrix over a [`Field`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        ExactMatrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = ExactMatrix::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::Dimension { expected: cols, got: r.len() });
            }
            check_field(field, &r)?;
            data.extend(r);
        }
        Ok(ExactMatrix { rows: nrows, cols, field, data })
    }

    pub fn from_columns(field: Field, rows: usize, columns: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = columns.len();
        let mut m = ExactMatrix::zeros(rows, cols, field);
        for (c, col) in columns.into_iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension { expected: rows, got: col.len() });
            }
            check_field(field, &col)?;
            for (r, v) in col.into_iter().enumerate() {
                m.data[r * cols + c] = v;
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        ExactMatrix::from_rows(field, cols, rows).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = ExactMatrix::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension { expected: self.cols, got: v.len() });
        }
        check_field(self.field, v)?;
        let mut out = vec![self.field.zero(); self.rows];
        for (c, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (r, o) in out.iter_mut().enumerate() {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    o.add_product(a, x);
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension { expected: self.cols, got: other.rows });
        }
        self.field.check(other.field)?;
        let mut out = ExactMatrix::zeros(self.rows, other.cols, self.field);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let rank = pivots.len();
        let data = rows.into_iter().flatten().collect();
        Rref {
            matrix: ExactMatrix { rows: self.rows, cols: self.cols, field: self.field, data },
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Null space, as a canonical subspace of `K^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { matrix: r, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::with_capacity(self.cols - rank);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, free);
            }
            vectors.push(v);
        }
        Subspace::spanned_by(self.field, self.cols, vectors).expect("kernel vectors are well-formed")
    }

    /// Column space, as a canonical subspace of `K^rows`.
    pub fn image_basis(&self) -> Subspace {
        let t = self.transpose();
        let Rref { matrix, rank, pivots } = t.rref();
        let basis = (0..rank).map(|k| matrix.row(k).to_vec()).collect();
        Subspace { ambient: self.rows, field: self.field, basis, pivots }
    }

    /// Some solution of `self · x = rhs`, if one exists.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, got: rhs.len() });
        }
        check_field(self.field, rhs)?;
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.push(rhs[r].clone());
                row
            })
            .collect();
        let pivots = rref_rows(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = rows[k][self.cols].clone();
        }
        Ok(Some(x))
    }
}

fn check_field(field: Field, v: &[Scalar]) -> Result<()> {
    if let Some(bad) = v.iter().find(|x| x.field() != field) {
        field.check(bad.field())?;
    }
    Ok(())
}

/// In-place Gauss–Jordan on the first `cols` columns; returns pivot columns.
fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[next][col..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (before, rest) = rows.split_at_mut(next);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let support: Vec<usize> = (col..pivot_row.len()).filter(|&c| !pivot_row[c].is_zero()).collect();
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let factor = -&row[col];
            for &c in &support {
                row[c].add_product(&factor, &pivot_row[c]);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

/// A subspace of `K^ambient`, held as a basis in reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: Field,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { ambient, field, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut rows = vectors;
        for v in &rows {
            if v.len() != ambient {
                return Err(Error::Dimension { expected: ambient, got: v.len() });
            }
            check_field(field, v)?;
        }
        let pivots = rref_rows(&mut rows, ambient);
        rows.truncate(pivots.len());
        Ok(Subspace { ambient, field, basis: rows, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::Dimension { expected: self.ambient, got: v.len() });
        }
        check_field(self.field, v)
    }

    /// Canonical representative of `v + self`: zero at every pivot.
    pub fn coset_reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(v)?;
        let mut out = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = -&out[p];
            for (o, x) in out.iter_mut().zip(b).skip(p) {
                if !x.is_zero() {
                    o.add_product(&factor, x);
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coset_reduce(v)?.iter().all(Scalar::is_zero))
    }

    /// A basis vector of `self` lying outside `other`, if any.
    pub fn first_not_in(&self, other: &Subspace) -> Result<Option<Vec<Scalar>>> {
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(Some(b.clone()));
            }
        }
        Ok(None)
    }

    /// Coordinates of `v ∈ self` in the echelon basis (the entries of `v`
    /// at the pivots), or `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }
}

/// Vectors of `ker` whose cosets form a basis of `ker / im`: the echelon
/// basis vectors of `ker` whose pivots are not pivots of `im`.
pub fn quotient_basis(ker: &Subspace, im: &Subspace) -> Result<Vec<Vec<Scalar>>> {
    if ker.ambient != im.ambient {
        return Err(Error::Dimension { expected: ker.ambient, got: im.ambient });
    }
    if let Some(w) = im.first_not_in(ker)? {
        return Err(Error::Inclusion { witness: w.iter().map(ToString::to_string).collect() });
    }
    Ok(ker
        .basis
        .iter()
        .zip(&ker.pivots)
        .filter(|(_, p)| !im.pivots.contains(p))
        .map(|(b, _)| b.clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(ExactMatrix::identity(3, Q).rref().rank, 3);
        assert_eq!(ExactMatrix::zeros(2, 3, Q).rref().rank, 0);
        let r = ExactMatrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        assert_eq!(r.matrix, ExactMatrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ExactMatrix::identity(3, Q).kernel_basis().dim(), 0);
        assert_eq!(ExactMatrix::zeros(2, 4, Q).kernel_basis().dim(), 4);
        let k = ExactMatrix::from_i64(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.basis(), &[v(&[1, -1])]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(ExactMatrix::identity(2, Q).image_basis().dim(), 2);
        let im = ExactMatrix::from_i64(Q, &[&[1], &[2]]).image_basis();
        assert_eq!(im.basis(), &[v(&[1, 2])]);
        assert_eq!(ExactMatrix::zeros(3, 0, Q).image_basis(), Subspace::zero(Q, 3));
    }

    #[test]
    fn membership_and_reduction() {
        let s = Subspace::spanned_by(Q, 3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]).unwrap();
        assert!(s.contains(&v(&[2, 5, 1])).unwrap());
        assert!(!s.contains(&v(&[0, 0, 1])).unwrap());
        let zero = Subspace::zero(Q, 3);
        assert_eq!(zero.coset_reduce(&v(&[4, 5, 6])).unwrap(), v(&[4, 5, 6]));
        assert!(matches!(s.coset_reduce(&v(&[1])), Err(Error::Dimension { .. })));
        assert_eq!(s.basis(), &[v(&[1, 0, -2]), v(&[0, 1, 1])]);
        assert_eq!(s.coordinates(&v(&[2, 5, 1])).unwrap(), Some(v(&[2, 5])));
    }

    #[test]
    fn quotient_examples() {
        let ker = Subspace::spanned_by(Q, 3, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let im = Subspace::spanned_by(Q, 3, vec![v(&[0, 1, 1])]).unwrap();
        let reps = quotient_basis(&ker, &im).unwrap();
        assert_eq!(reps.len(), 2);
        for r in &reps {
            assert_eq!(&im.coset_reduce(r).unwrap(), r);
        }
        assert!(quotient_basis(&ker, &ker).unwrap().is_empty());
        assert_eq!(quotient_basis(&ker, &Subspace::zero(Q, 3)).unwrap().len(), 3);
        let small = Subspace::spanned_by(Q, 3, vec![v(&[1, 0, 0])]).unwrap();
        assert!(matches!(quotient_basis(&small, &im), Err(Error::Inclusion { .. })));
    }

    #[test]
    fn solve_and_mixed_fields() {
        let m = ExactMatrix::from_i64(Q, &[&[1, 1], &[0, 2]]);
        let x = m.solve(&v(&[3, 4])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), v(&[3, 4]));
        assert_eq!(ExactMatrix::from_i64(Q, &[&[1], &[1]]).solve(&v(&[1, 2])).unwrap(), None);
        let fp = Field::prime(7).unwrap();
        assert!(m.mul_vec(&[fp.one(), fp.one()]).is_err());
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(-3i64..=3, r * c))
        })
    }

    fn build(field: Field, (r, c, xs): &(usize, usize, Vec<i64>)) -> ExactMatrix {
        let rows: Vec<&[i64]> = xs.chunks(*c).collect();
        assert_eq!(rows.len(), *r);
        ExactMatrix::from_i64(field, &rows)
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel(m in arb_matrix()) {
            let a = build(Q, &m);
            let r = a.rref();
            let k = a.kernel_basis();
            prop_assert_eq!(r.rank + k.dim(), a.cols());
            for b in k.basis() {
                prop_assert!(a.mul_vec(b).unwrap().iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(a.image_basis().dim(), r.rank);
            prop_assert_eq!(r.matrix.rref(), r.clone());
        }

        #[test]
        fn image_contains_columns(m in arb_matrix(), coeffs in proptest::collection::vec(-3i64..=3, 6)) {
            let a = build(Q, &m);
            let im = a.image_basis();
            let x: Vec<Scalar> = coeffs.iter().take(a.cols()).map(|&c| Q.from_i64(c)).chain(std::iter::repeat(Q.zero())).take(a.cols()).collect();
            let y = a.mul_vec(&x).unwrap();
            prop_assert!(im.contains(&y).unwrap());
            prop_assert!(im.coset_reduce(&y).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn rational_and_prime_ranks_agree() {
        use rand::{Rng, SeedableRng};
        let p = Field::prime(10007).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10007);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..8), rng.gen_range(1..8));
            let xs: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-3..=3)).collect();
            let m = (r, c, xs);
            assert_eq!(build(Q, &m).rank(), build(p, &m).rank());
        }
    }
}
