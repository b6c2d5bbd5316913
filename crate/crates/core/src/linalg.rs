//! Dense linear algebra over `F_q` and `F_{q^m}`, and `F_q`-subspaces of
//! `F_{q^m}`.
//!
//! Both fields implement [`Scalars`], so echelon forms, solving and inversion
//! are one generic kernel. A [`Subspace`] stores its basis as a reduced row
//! echelon matrix over `F_q`, which makes equality of subspaces plain
//! equality of bases.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem, PrimeField};

/// The operations Gaussian elimination needs from a field.
pub trait Scalars {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

impl Scalars for PrimeField {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        ((u32::from(*a) + u32::from(*b)) % self.q()) as u8
    }
    fn sub(&self, a: &u8, b: &u8) -> u8 {
        ((u32::from(*a) + self.q() - u32::from(*b)) % self.q()) as u8
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        (u32::from(*a) * u32::from(*b) % self.q()) as u8
    }
    fn inv(&self, a: &u8) -> Option<u8> {
        self.inv_elem(*a)
    }
}

impl Scalars for Field {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        Field::zero(self)
    }
    fn one(&self) -> FieldElem {
        Field::one(self)
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::add(self, a, b)
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        Field::mul(self, a, b)
    }
    fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        Field::inv(self, a).ok()
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::param(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::param("ragged rows"));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[E]> {
        // chunks_exact panics on zero width.
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// `(self | other)`.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::param("hconcat: row counts differ"));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn submatrix_cols(&self, start: usize, end: usize) -> Self {
        let mut data = Vec::with_capacity(self.rows * (end - start));
        for i in 0..self.rows {
            data.extend_from_slice(&self.row(i)[start..end]);
        }
        Matrix { rows: self.rows, cols: end - start, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn identity<F: Scalars<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Matrix::filled(n, n, field.zero());
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn zeros<F: Scalars<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, field.zero())
    }
}

pub fn mat_mul<F: Scalars>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::param(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let t = field.mul(x, b.get(k, j));
                let cur = out.get(i, j);
                let s = field.add(cur, &t);
                out.set(i, j, s);
            }
        }
    }
    Ok(out)
}

/// Row vector times matrix.
pub fn vec_mul<F: Scalars>(field: &F, v: &[F::Elem], a: &Matrix<F::Elem>) -> Result<Vec<F::Elem>> {
    if v.len() != a.rows {
        return Err(Error::param(format!(
            "vector of length {} against {}x{} matrix",
            v.len(),
            a.rows,
            a.cols
        )));
    }
    let mut out = vec![field.zero(); a.cols];
    for (x, row) in v.iter().zip(a.row_iter()) {
        if field.is_zero(x) {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o = field.add(o, &field.mul(x, y));
        }
    }
    Ok(out)
}

/// Result of Gauss-Jordan elimination: `transform · input = reduced`.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub reduced: Matrix<E>,
    pub rank: usize,
    pub transform: Matrix<E>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

pub fn rref<F: Scalars>(field: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut t = Matrix::identity(field, m.rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(r, p);
        t.swap_rows(r, p);
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in 0..a.cols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        for j in 0..t.cols {
            let v = field.mul(t.get(r, j), &inv);
            t.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..a.cols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
            for j in 0..t.cols {
                let v = field.sub(t.get(i, j), &field.mul(&factor, t.get(r, j)));
                t.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { reduced: a, rank: r, transform: t, pivots }
}

pub fn rank<F: Scalars>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, m).rank
}

/// Finds `z` with `z · a = b`.
///
/// When `a` is singular but `b` lies in its row space, some solution is
/// returned; when it does not, [`Error::NoSolution`].
pub fn solve_left<F: Scalars>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if b.len() != a.cols {
        return Err(Error::param(format!(
            "right-hand side has length {}, matrix has {} columns",
            b.len(),
            a.cols
        )));
    }
    let ech = rref(field, a);
    // b = w · reduced with w_i = b[pivot_i]; check the remaining columns.
    let w: Vec<F::Elem> = ech.pivots.iter().map(|&p| b[p].clone()).collect();
    let top = Matrix {
        rows: ech.rank,
        cols: a.cols,
        data: ech.reduced.data[..ech.rank * a.cols].to_vec(),
    };
    if vec_mul(field, &w, &top)? != b {
        return Err(Error::NoSolution);
    }
    let mut w_full = w;
    w_full.resize(a.rows, field.zero());
    vec_mul(field, &w_full, &ech.transform)
}

pub fn matrix_inverse<F: Scalars>(field: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.rows != a.cols {
        return Err(Error::param(format!("{}x{} matrix is not square", a.rows, a.cols)));
    }
    let ech = rref(field, a);
    if ech.rank < a.rows {
        return Err(Error::Singular);
    }
    Ok(ech.transform)
}

/// Basis (as rows) of `{c : c · mᵀ = 0}`, the right kernel of `m`.
pub fn right_kernel<F: Scalars>(field: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let ech = rref(field, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivots.contains(c)).collect();
    let mut basis = Matrix::zeros(field, free.len(), m.cols);
    for (k, &f) in free.iter().enumerate() {
        basis.set(k, f, field.one());
        for (i, &p) in ech.pivots.iter().enumerate() {
            let v = field.sub(&field.zero(), ech.reduced.get(i, f));
            basis.set(k, p, v);
        }
    }
    basis
}

/// An `F_q`-subspace of `F_{q^m}`, held as a canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    basis: Matrix<u8>,
}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.params().hash(state);
        self.basis.data.hash(state);
    }
}

impl Subspace {
    fn base(field: &Field) -> PrimeField {
        PrimeField::new(field.q()).expect("field q is prime")
    }

    /// Canonicalizes arbitrary generator rows.
    fn from_generator_rows(field: &Field, rows: Matrix<u8>) -> Self {
        let ech = rref(&Self::base(field), &rows);
        let m = field.m();
        let data = ech.reduced.data[..ech.rank * m].to_vec();
        Subspace { field: field.clone(), basis: Matrix { rows: ech.rank, cols: m, data } }
    }

    pub fn zero(field: &Field) -> Self {
        Subspace { field: field.clone(), basis: Matrix { rows: 0, cols: field.m(), data: vec![] } }
    }

    pub fn full(field: &Field) -> Self {
        Subspace { field: field.clone(), basis: Matrix::identity(&Self::base(field), field.m()) }
    }

    /// The `F_q`-span of `vectors`, each read as a length-`m` row.
    pub fn span(field: &Field, vectors: &[FieldElem]) -> Self {
        let m = field.m();
        let mut data = Vec::with_capacity(vectors.len() * m);
        for v in vectors {
            data.extend_from_slice(v.coeffs());
        }
        Self::from_generator_rows(field, Matrix { rows: vectors.len(), cols: m, data })
    }

    /// Rebuilds a subspace from stored basis rows, which must already be in
    /// reduced row echelon form with no zero rows.
    pub fn from_canonical_rows(field: &Field, rows: Matrix<u8>) -> Result<Self> {
        if rows.cols != field.m() {
            return Err(Error::param("basis width differs from field degree"));
        }
        if rows.data.iter().any(|&c| u32::from(c) >= field.q()) {
            return Err(Error::param("basis coefficient out of range"));
        }
        let canon = Self::from_generator_rows(field, rows.clone());
        if canon.basis != rows {
            return Err(Error::param("basis is not in canonical reduced row echelon form"));
        }
        Ok(canon)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis_matrix(&self) -> &Matrix<u8> {
        &self.basis
    }

    pub fn basis(&self) -> Vec<FieldElem> {
        self.basis
            .row_iter()
            .map(|r| self.field.elem(r).expect("basis rows are well formed"))
            .collect()
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::param("subspaces live in different fields"));
        }
        Ok(())
    }

    pub fn contains(&self, v: &FieldElem) -> bool {
        let base = Self::base(&self.field);
        let mut w = v.coeffs().to_vec();
        for (row, &p) in self.basis.row_iter().zip(self.pivots().iter()) {
            let f = w[p];
            if f != 0 {
                for (x, y) in w.iter_mut().zip(row) {
                    *x = base.sub(x, &base.mul(&f, y));
                }
            }
        }
        w.iter().all(|&c| c == 0)
    }

    fn pivots(&self) -> Vec<usize> {
        self.basis
            .row_iter()
            .map(|r| r.iter().position(|&c| c != 0).expect("no zero rows"))
            .collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut data = self.basis.data.clone();
        data.extend_from_slice(&other.basis.data);
        let rows = Matrix { rows: self.dim() + other.dim(), cols: self.field.m(), data };
        Ok(Self::from_generator_rows(&self.field, rows))
    }

    /// `self ∩ other` by the Zassenhaus method: echelonize
    /// `[[S, S], [T, 0]]`; rows with a vanishing left half carry the
    /// intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let m = self.field.m();
        let base = Self::base(&self.field);
        let mut stacked = Matrix::zeros(&base, self.dim() + other.dim(), 2 * m);
        for (i, row) in self.basis.row_iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                stacked.set(i, j, c);
                stacked.set(i, m + j, c);
            }
        }
        for (i, row) in other.basis.row_iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                stacked.set(self.dim() + i, j, c);
            }
        }
        let ech = rref(&base, &stacked);
        let mut data = Vec::new();
        let mut rows = 0;
        for i in 0..ech.rank {
            let row = ech.reduced.row(i);
            if row[..m].iter().all(|&c| c == 0) {
                data.extend_from_slice(&row[m..]);
                rows += 1;
            }
        }
        Ok(Self::from_generator_rows(&self.field, Matrix { rows, cols: m, data }))
    }

    /// `{f·s : s ∈ self}`.
    pub fn scale(&self, f: &FieldElem) -> Result<Subspace> {
        if f.is_zero() {
            return Err(Error::param("cannot scale a subspace by zero"));
        }
        self.field.check(f)?;
        let images: Vec<FieldElem> = self.basis().iter().map(|b| self.field.mul(f, b)).collect();
        Ok(Subspace::span(&self.field, &images))
    }

    /// The product space `⟨e·f : e ∈ self, f ∈ other⟩`.
    pub fn product(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let mut gens = Vec::with_capacity(self.dim() * other.dim());
        for e in self.basis() {
            for f in other.basis() {
                gens.push(self.field.mul(&e, &f));
            }
        }
        Ok(Subspace::span(&self.field, &gens))
    }

    /// A uniformly random subspace of dimension `dim`: random `dim × m`
    /// matrices are drawn until one has full rank.
    pub fn sample<R: Rng + ?Sized>(field: &Field, dim: usize, rng: &mut R) -> Result<Subspace> {
        let m = field.m();
        if dim == 0 || dim > m {
            return Err(Error::param(format!("subspace dimension {dim} not in 1..={m}")));
        }
        loop {
            let gens: Vec<FieldElem> = (0..dim).map(|_| field.sample(rng)).collect();
            let s = Subspace::span(field, &gens);
            if s.dim() == dim {
                return Ok(s);
            }
        }
    }

    /// A uniformly random element.
    pub fn sample_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let q = self.field.q();
        let mut acc = self.field.zero();
        for b in self.basis() {
            let c = rng.random_range(0..q) as u8;
            acc = self.field.add(&acc, &self.field.scale(c, &b));
        }
        acc
    }

    /// All `q^dim` elements. Only for small subspaces.
    pub fn elements(&self) -> Vec<FieldElem> {
        let mut out = vec![self.field.zero()];
        for b in self.basis() {
            let mut next = Vec::with_capacity(out.len() * self.field.q() as usize);
            for c in 0..self.field.q() {
                let cb = self.field.scale(c as u8, &b);
                next.extend(out.iter().map(|v| self.field.add(v, &cb)));
            }
            out = next;
        }
        out
    }
}

/// One basis row per line, coefficients as digits (space separated when
/// `q > 10`).
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.field.q() > 10 { " " } else { "" };
        for row in self.basis.row_iter() {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", line.join(sep))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;
    use std::collections::HashSet;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn rref_identity_and_zero() {
        let k = f2();
        let i = Matrix::identity(&k, 4);
        let e = rref(&k, &i);
        assert_eq!((e.reduced.clone(), e.rank, e.transform.clone()), (i.clone(), 4, i.clone()));
        let z = Matrix::zeros(&k, 3, 5);
        let e = rref(&k, &z);
        assert_eq!(e.reduced, z);
        assert_eq!(e.rank, 0);
        assert_eq!(e.transform, Matrix::identity(&k, 3));
    }

    #[test]
    fn rref_rank_matches_row_span_size() {
        let k = f2();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..50 {
            let data: Vec<u8> = (0..24).map(|_| rng.random_range(0..2)).collect();
            let m = Matrix::new(4, 6, data).unwrap();
            // Enumerate all 16 combinations of rows.
            let mut span = HashSet::new();
            for mask in 0u32..16 {
                let mut v = vec![0u8; 6];
                for i in 0..4 {
                    if mask >> i & 1 == 1 {
                        for (x, y) in v.iter_mut().zip(m.row(i)) {
                            *x ^= y;
                        }
                    }
                }
                span.insert(v);
            }
            let ech = rref(&k, &m);
            assert_eq!(1usize << ech.rank, span.len());
            assert_eq!(mat_mul(&k, &ech.transform, &m).unwrap(), ech.reduced);
            assert_eq!(rref(&k, &ech.reduced).reduced, ech.reduced);
        }
    }

    #[test]
    fn solve_and_invert_over_extension() {
        let f = Field::preset(2, 11).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let n = 6;
        let i = Matrix::identity(&f, n);
        let b: Vec<FieldElem> = (0..n).map(|_| f.sample(&mut rng)).collect();
        assert_eq!(solve_left(&f, &i, &b).unwrap(), b);
        assert_eq!(matrix_inverse(&f, &i).unwrap(), i);
        let a = loop {
            let data: Vec<FieldElem> = (0..n * n).map(|_| f.sample(&mut rng)).collect();
            let a = Matrix::new(n, n, data).unwrap();
            if rank(&f, &a) == n {
                break a;
            }
        };
        let z: Vec<FieldElem> = (0..n).map(|_| f.sample(&mut rng)).collect();
        let za = vec_mul(&f, &z, &a).unwrap();
        assert_eq!(solve_left(&f, &a, &za).unwrap(), z);
        let inv = matrix_inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &inv).unwrap(), i);
        assert_eq!(mat_mul(&f, &inv, &a).unwrap(), i);
        assert_eq!(matrix_inverse(&f, &inv).unwrap(), a);
    }

    #[test]
    fn singular_systems() {
        let f = Field::preset(2, 5).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let r0: Vec<FieldElem> = (0..3).map(|_| f.sample_nonzero(&mut rng)).collect();
        let r2: Vec<FieldElem> = (0..3).map(|_| f.sample(&mut rng)).collect();
        // Rows 0 and 1 repeat, so the row space has dimension at most 2.
        let a = Matrix::from_rows(3, &[r0.clone(), r0.clone(), r2.clone()]).unwrap();
        assert_eq!(matrix_inverse(&f, &a), Err(Error::Singular));
        // Find a vector outside the row space by trying unit vectors.
        let outside = (0..3)
            .map(|k| {
                let mut e = vec![f.zero(); 3];
                e[k] = f.one();
                e
            })
            .find(|e| {
                let stacked = Matrix::from_rows(3, &[r0.clone(), r2.clone(), e.clone()]).unwrap();
                rank(&f, &stacked) > rank(&f, &a)
            })
            .unwrap();
        assert_eq!(solve_left(&f, &a, &outside), Err(Error::NoSolution));
        // Inside the row space a solution still exists.
        let inside = f.add(&r0[0], &r2[0]);
        let b: Vec<FieldElem> = (0..3).map(|j| f.add(&r0[j], &r2[j])).collect();
        assert_eq!(b[0], inside);
        let z = solve_left(&f, &a, &b).unwrap();
        assert_eq!(vec_mul(&f, &z, &a).unwrap(), b);
        assert!(matches!(solve_left(&f, &a, &b[..2]), Err(Error::Param(_))));
        let rect = Matrix::zeros(&f, 2, 3);
        assert!(matches!(matrix_inverse(&f, &rect), Err(Error::Param(_))));
    }

    #[test]
    fn right_kernel_is_annihilated() {
        let f = Field::preset(2, 7).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let data: Vec<FieldElem> = (0..3 * 7).map(|_| f.sample(&mut rng)).collect();
        let m = Matrix::new(3, 7, data).unwrap();
        let ker = right_kernel(&f, &m);
        assert_eq!(ker.rows(), 7 - rank(&f, &m));
        let prod = mat_mul(&f, &ker, &m.transpose()).unwrap();
        assert!(prod.entries().iter().all(|e| e.is_zero()));
        assert_eq!(rank(&f, &ker), ker.rows());
    }

    #[test]
    fn span_basics() {
        let f = Field::preset(2, 8).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        assert_eq!(Subspace::span(&f, &[]).dim(), 0);
        let a = f.sample_nonzero(&mut rng);
        assert_eq!(Subspace::span(&f, &[a, a]).dim(), 1);
        for lambda in 1..=3 {
            let s = Subspace::sample(&f, lambda, &mut rng).unwrap();
            let gens = s.basis();
            // Enumerate all 2^λ combinations independently of the basis.
            let mut seen = HashSet::new();
            for mask in 0u32..(1 << lambda) {
                let mut v = f.zero();
                for (i, g) in gens.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        v = f.add(&v, g);
                    }
                }
                seen.insert(v);
            }
            assert_eq!(seen.len(), 1 << s.dim());
            assert_eq!(s.dim(), lambda);
            let mut shuffled = gens.clone();
            shuffled.reverse();
            shuffled.push(f.add(&gens[0], &gens[gens.len() - 1]));
            assert_eq!(Subspace::span(&f, &shuffled), s);
        }
    }

    #[test]
    fn intersection_against_enumeration() {
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        for m in [3usize, 5, 8] {
            let f = Field::preset(2, m).unwrap();
            for _ in 0..40 {
                let ds = rng.random_range(1..=m);
                let dt = rng.random_range(1..=m);
                let s = Subspace::sample(&f, ds, &mut rng).unwrap();
                let t = Subspace::sample(&f, dt, &mut rng).unwrap();
                let inter = s.intersect(&t).unwrap();
                let tset: HashSet<FieldElem> = t.elements().into_iter().collect();
                let brute: Vec<FieldElem> =
                    s.elements().into_iter().filter(|v| tset.contains(v)).collect();
                assert_eq!(Subspace::span(&f, &brute), inter);
                assert_eq!(brute.len(), 1 << inter.dim());
                // Modular law.
                let sum = s.sum(&t).unwrap();
                assert_eq!(inter.dim() + sum.dim(), s.dim() + t.dim());
            }
            let s = Subspace::sample(&f, 2.min(m), &mut rng).unwrap();
            assert_eq!(s.intersect(&s).unwrap(), s);
            assert_eq!(s.intersect(&Subspace::zero(&f)).unwrap(), Subspace::zero(&f));
        }
        let a = Subspace::full(&Field::preset(2, 3).unwrap());
        let b = Subspace::full(&Field::preset(2, 4).unwrap());
        assert!(a.intersect(&b).is_err());
    }

    #[test]
    fn scaling_preserves_dimension() {
        let f = Field::preset(2, 11).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..30 {
            let s = Subspace::sample(&f, rng.random_range(1..=5), &mut rng).unwrap();
            let c = f.sample_nonzero(&mut rng);
            let cs = s.scale(&c).unwrap();
            assert_eq!(cs.dim(), s.dim());
            assert_eq!(cs.scale(&f.inv(&c).unwrap()).unwrap(), s);
            assert_eq!(s.scale(&f.one()).unwrap(), s);
        }
        let s = Subspace::full(&f);
        assert!(s.scale(&f.zero()).is_err());
    }

    #[test]
    fn product_edge_cases() {
        let f = Field::preset(2, 11).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let e = Subspace::sample(&f, 3, &mut rng).unwrap();
        let one = Subspace::span(&f, &[f.one()]);
        assert_eq!(e.product(&one).unwrap(), e);
        assert_eq!(Subspace::zero(&f).product(&e).unwrap(), Subspace::zero(&f));
    }

    #[test]
    fn sample_full_space() {
        let f = Field::preset(3, 4).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        assert_eq!(Subspace::sample(&f, 4, &mut rng).unwrap(), Subspace::full(&f));
        assert!(Subspace::sample(&f, 5, &mut rng).is_err());
        assert!(Subspace::sample(&f, 0, &mut rng).is_err());
    }

    #[test]
    fn canonical_rows_roundtrip() {
        let f = Field::preset(2, 6).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        let s = Subspace::sample(&f, 3, &mut rng).unwrap();
        assert_eq!(Subspace::from_canonical_rows(&f, s.basis_matrix().clone()).unwrap(), s);
        let mut bad = s.basis_matrix().clone();
        bad.swap_rows(0, 1);
        assert!(Subspace::from_canonical_rows(&f, bad).is_err());
        let text = s.to_string();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().all(|l| l.len() == 6));
    }
}
