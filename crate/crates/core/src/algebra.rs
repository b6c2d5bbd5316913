//! The group algebra `F_{q^m}G` in coordinates.
//!
//! An [`AlgebraElement`] is the coordinate vector `(u_1, …, u_n)` of
//! `Σ u_i g_i` with respect to the group's fixed element ordering, so the
//! identification between `F_{q^m}^n` and `F_{q^m}G` is the identity on the
//! stored data.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, FormatError, Result};
use crate::field::{Field, FieldElem};
use crate::group::GroupDescriptor;
use crate::linalg::{self, Matrix, Subspace};

/// `n × n` matrix whose row `i` holds the coordinates of `g_i · a`.
pub type LeftIdealMatrix = Matrix<FieldElem>;

/// The algebra `F_{q^m}G` itself: a field and a group.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    field: Field,
    group: Arc<GroupDescriptor>,
}

impl PartialEq for GroupAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
    }
}

impl Eq for GroupAlgebra {}

impl GroupAlgebra {
    pub fn new(field: Field, group: GroupDescriptor) -> Self {
        GroupAlgebra { field, group: Arc::new(group) }
    }

    pub fn from_shared(field: Field, group: Arc<GroupDescriptor>) -> Self {
        GroupAlgebra { field, group }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    pub fn shared_group(&self) -> &Arc<GroupDescriptor> {
        &self.group
    }

    /// The group order `n`.
    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.clone(), coords: vec![self.field.zero(); self.n()] }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(self.group.identity())
    }

    /// The group element `g_{i+1}` (0-based index `i`) as an algebra element.
    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut e = self.zero();
        e.coords[i] = self.field.one();
        e
    }

    pub fn element(&self, coords: Vec<FieldElem>) -> Result<AlgebraElement> {
        if coords.len() != self.n() {
            return Err(Error::param(format!(
                "expected {} coordinates, got {}",
                self.n(),
                coords.len()
            )));
        }
        for c in &coords {
            self.field.check(c)?;
        }
        Ok(AlgebraElement { algebra: self.clone(), coords })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        let coords = (0..self.n()).map(|_| self.field.sample(rng)).collect();
        AlgebraElement { algebra: self.clone(), coords }
    }

    /// A random element whose coordinates all lie in `support`.
    pub fn sample_in<R: Rng + ?Sized>(&self, support: &Subspace, rng: &mut R) -> AlgebraElement {
        let coords = (0..self.n()).map(|_| support.sample_element(rng)).collect();
        AlgebraElement { algebra: self.clone(), coords }
    }

    /// `n·m` bytes, coordinate-major.
    pub fn from_bytes(&self, bytes: &[u8]) -> Result<AlgebraElement, FormatError> {
        let m = self.field.m();
        if bytes.len() != self.n() * m {
            return Err(FormatError::WrongLength { expected: self.n() * m, got: bytes.len() });
        }
        let coords = bytes
            .chunks_exact(m)
            .map(|c| self.field.from_bytes(c))
            .collect::<Result<_, _>>()?;
        Ok(AlgebraElement { algebra: self.clone(), coords })
    }

    /// Every element of the algebra. Only for tiny algebras.
    pub fn elements(&self) -> impl Iterator<Item = AlgebraElement> + '_ {
        let field_elems: Vec<FieldElem> = self.field.elements().collect();
        let base = field_elems.len() as u64;
        let total = base.pow(self.n() as u32);
        (0..total).map(move |mut k| {
            let coords = (0..self.n())
                .map(|_| {
                    let e = field_elems[(k % base) as usize];
                    k /= base;
                    e
                })
                .collect();
            AlgebraElement { algebra: self.clone(), coords }
        })
    }
}

/// An element of `F_{q^m}G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra: GroupAlgebra,
    coords: Vec<FieldElem>,
}

impl AlgebraElement {
    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<FieldElem> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElem::is_zero)
    }

    fn compatible(&self, other: &AlgebraElement) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::param("operands belong to different group algebras"));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.compatible(other)?;
        let f = self.algebra.field();
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f.add(a, b)).collect();
        Ok(AlgebraElement { algebra: self.algebra.clone(), coords })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.compatible(other)?;
        let f = self.algebra.field();
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f.sub(a, b)).collect();
        Ok(AlgebraElement { algebra: self.algebra.clone(), coords })
    }

    /// Multiplication by a field scalar.
    pub fn scale(&self, c: &FieldElem) -> AlgebraElement {
        let f = self.algebra.field();
        let coords = self.coords.iter().map(|a| f.mul(c, a)).collect();
        AlgebraElement { algebra: self.algebra.clone(), coords }
    }

    /// `(ab)_g = Σ_h a_h b_{h⁻¹g}`.
    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.compatible(other)?;
        let f = self.algebra.field();
        let g = self.algebra.group();
        let n = g.order();
        let mut coords = vec![f.zero(); n];
        for (k, out) in coords.iter_mut().enumerate() {
            for h in 0..n {
                let a = &self.coords[h];
                if a.is_zero() {
                    continue;
                }
                let b = &other.coords[g.mul(g.inv(h), k)];
                *out = f.add(out, &f.mul(a, b));
            }
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), coords })
    }

    /// The left ideal matrix: row `i` is `g_i · self`, whose `k`-th
    /// coordinate is `a_{g_i⁻¹ g_k}`.
    pub fn lim(&self) -> LeftIdealMatrix {
        let g = self.algebra.group();
        let n = g.order();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            let gi_inv = g.inv(i);
            data.extend((0..n).map(|k| self.coords[g.mul(gi_inv, k)]));
        }
        Matrix::new(n, n, data).expect("n*n entries")
    }

    pub fn is_invertible(&self) -> bool {
        linalg::rank(self.algebra.field(), &self.lim()) == self.algebra.n()
    }

    /// The two-sided inverse, found by solving `z · LIM(self) = 1`.
    pub fn inverse(&self) -> Result<AlgebraElement> {
        let alg = &self.algebra;
        let one = alg.one();
        let z = match linalg::solve_left(alg.field(), &self.lim(), one.coords()) {
            Ok(z) => z,
            Err(Error::NoSolution) => return Err(Error::NotInvertible),
            Err(e) => return Err(e),
        };
        let z = AlgebraElement { algebra: alg.clone(), coords: z };
        if z.mul(self)? != one || self.mul(&z)? != one {
            return Err(Error::NotInvertible);
        }
        Ok(z)
    }

    /// The `F_q`-span of the coordinates.
    pub fn support(&self) -> Subspace {
        Subspace::span(self.algebra.field(), &self.coords)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        self.coords.iter().flat_map(|c| c.coeffs().iter().copied()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn algebra(group: GroupDescriptor, m: usize) -> GroupAlgebra {
        GroupAlgebra::new(Field::preset(2, m).unwrap(), group)
    }

    #[test]
    fn additive_structure() {
        let alg = algebra(GroupDescriptor::dihedral(3).unwrap(), 5);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let a = alg.sample(&mut rng);
        assert_eq!(a.add(&alg.zero()).unwrap(), a);
        assert!(a.add(&a).unwrap().is_zero());
        let s = alg.basis_element(1).add(&alg.basis_element(2)).unwrap();
        let ones: Vec<usize> = (0..6).filter(|&i| !s.coords()[i].is_zero()).collect();
        assert_eq!(ones, vec![1, 2]);
    }

    #[test]
    fn basis_products_follow_the_table() {
        let g = GroupDescriptor::dihedral(4).unwrap();
        let alg = algebra(g.clone(), 3);
        for i in 0..8 {
            for j in 0..8 {
                let p = alg.basis_element(i).mul(&alg.basis_element(j)).unwrap();
                assert_eq!(p, alg.basis_element(g.mul(i, j)));
            }
            assert_eq!(alg.basis_element(i).inverse().unwrap(), alg.basis_element(g.inv(i)));
        }
    }

    #[test]
    fn cyclic_product_is_convolution() {
        let k = 7;
        let alg = algebra(GroupDescriptor::cyclic(k).unwrap(), 9);
        let f = alg.field().clone();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..20 {
            let a = alg.sample(&mut rng);
            let b = alg.sample(&mut rng);
            let mut conv = vec![f.zero(); k];
            for i in 0..k {
                for j in 0..k {
                    let t = f.mul(&a.coords()[i], &b.coords()[j]);
                    conv[(i + j) % k] = f.add(&conv[(i + j) % k], &t);
                }
            }
            assert_eq!(a.mul(&b).unwrap().coords(), &conv[..]);
            // Rows of LIM are cyclic shifts.
            let l = a.lim();
            for i in 0..k {
                for j in 0..k {
                    assert_eq!(l.get(i, (j + i) % k), &a.coords()[j]);
                }
            }
        }
    }

    #[test]
    fn lim_of_one_is_identity() {
        let alg = algebra(GroupDescriptor::dihedral(5).unwrap(), 4);
        assert_eq!(alg.one().lim(), Matrix::identity(alg.field(), 10));
        assert!(alg.one().is_invertible());
        assert!(!alg.zero().is_invertible());
        assert_eq!(alg.one().inverse().unwrap(), alg.one());
        assert_eq!(alg.zero().inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn lim_rows_permute_coordinates() {
        let alg = algebra(GroupDescriptor::dihedral(4).unwrap(), 7);
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let a = alg.sample(&mut rng);
        let l = a.lim();
        assert_eq!(l.row(0), a.coords());
        let mut sorted = a.coords().to_vec();
        sorted.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
        for i in 0..8 {
            let mut row = l.row(i).to_vec();
            row.sort_by(|x, y| x.coeffs().cmp(y.coeffs()));
            assert_eq!(row, sorted);
        }
    }

    #[test]
    fn augmentation_element_is_a_zero_divisor() {
        for g in [GroupDescriptor::cyclic(4).unwrap(), GroupDescriptor::dihedral(3).unwrap()] {
            let alg = algebra(g, 3);
            let f = alg.field();
            let sum = alg.element(vec![f.one(); alg.n()]).unwrap();
            assert!(sum.mul(&sum).unwrap().is_zero());
            assert!(!sum.is_invertible());
        }
    }

    #[test]
    fn random_inverse_on_dihedral() {
        let alg = algebra(GroupDescriptor::dihedral(4).unwrap(), 11);
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let mut found = 0;
        for _ in 0..20 {
            let a = alg.sample(&mut rng);
            if a.is_invertible() {
                let z = a.inverse().unwrap();
                assert_eq!(a.mul(&z).unwrap(), alg.one());
                assert_eq!(z.mul(&a).unwrap(), alg.one());
                found += 1;
            } else {
                assert_eq!(a.inverse(), Err(Error::NotInvertible));
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn dihedral_is_noncommutative() {
        let alg = algebra(GroupDescriptor::dihedral(3).unwrap(), 3);
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        let witness = (0..50).any(|_| {
            let a = alg.sample(&mut rng);
            let b = alg.sample(&mut rng);
            a.mul(&b).unwrap() != b.mul(&a).unwrap()
        });
        assert!(witness);
    }

    #[test]
    fn mismatched_algebras() {
        let a = algebra(GroupDescriptor::dihedral(3).unwrap(), 3).one();
        let b = algebra(GroupDescriptor::cyclic(6).unwrap(), 3).one();
        let c = algebra(GroupDescriptor::dihedral(3).unwrap(), 4).one();
        assert!(matches!(a.add(&b), Err(Error::Param(_))));
        assert!(matches!(a.mul(&c), Err(Error::Param(_))));
        assert!(a.algebra().element(vec![]).is_err());
    }

    #[test]
    fn byte_form() {
        let alg = algebra(GroupDescriptor::cyclic(3).unwrap(), 3);
        let f = alg.field();
        let a = alg
            .element(vec![f.elem(&[1, 0, 1]).unwrap(), f.zero(), f.elem(&[0, 1, 1]).unwrap()])
            .unwrap();
        assert_eq!(a.to_bytes(), vec![1, 0, 1, 0, 0, 0, 0, 1, 1]);
        assert_eq!(alg.from_bytes(&a.to_bytes()).unwrap(), a);
        assert!(alg.from_bytes(&[0; 8]).is_err());
        assert!(matches!(
            alg.from_bytes(&[2, 0, 0, 0, 0, 0, 0, 0, 0]),
            Err(FormatError::CoefficientOutOfRange { .. })
        ));
    }
}
