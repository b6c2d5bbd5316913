use ga_lrpc::linalg::{mat_mul, vec_mul};
use ga_lrpc::{AlgebraElement, Field, GroupAlgebra, GroupDescriptor, Matrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn algebras() -> Vec<GroupAlgebra> {
    let f = Field::preset(2, 11).unwrap();
    vec![
        GroupAlgebra::new(f.clone(), GroupDescriptor::dihedral(4).unwrap()),
        GroupAlgebra::new(f.clone(), GroupDescriptor::dihedral(7).unwrap()),
        GroupAlgebra::new(f.clone(), GroupDescriptor::cyclic(8).unwrap()),
        GroupAlgebra::new(Field::preset(3, 4).unwrap(), GroupDescriptor::dihedral(3).unwrap()),
    ]
}

fn mul(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    a.mul(b).unwrap()
}

/// Cyclic convolution of coordinate vectors, written against the field
/// directly with no reference to group tables.
fn convolve(f: &Field, a: &AlgebraElement, b: &AlgebraElement) -> Vec<ga_lrpc::FieldElem> {
    let k = a.coords().len();
    let mut out = vec![f.zero(); k];
    for i in 0..k {
        for j in 0..k {
            let t = f.mul(&a.coords()[i], &b.coords()[j]);
            out[(i + j) % k] = f.add(&out[(i + j) % k], &t);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(idx in 0usize..4, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (a, b, c) = (alg.sample(&mut rng), alg.sample(&mut rng), alg.sample(&mut rng));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &b.add(&c).unwrap()), mul(&a, &b).add(&mul(&a, &c)).unwrap());
        prop_assert_eq!(mul(&b.add(&c).unwrap(), &a), mul(&b, &a).add(&mul(&c, &a)).unwrap());
        prop_assert_eq!(mul(&a, &alg.one()), a.clone());
        prop_assert_eq!(mul(&alg.one(), &a), a);
    }

    #[test]
    fn lim_is_multiplicative(idx in 0usize..4, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let f = alg.field();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (a, b) = (alg.sample(&mut rng), alg.sample(&mut rng));
        prop_assert_eq!(mul(&a, &b).lim(), mat_mul(f, &a.lim(), &b.lim()).unwrap());
        prop_assert_eq!(mul(&a, &b).into_coords(), vec_mul(f, a.coords(), &b.lim()).unwrap());
    }

    #[test]
    fn lim_rows_permute_coordinates(idx in 0usize..4, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let a = alg.sample(&mut ChaCha20Rng::seed_from_u64(seed));
        let lim = a.lim();
        prop_assert_eq!(lim.row(0), a.coords());
        let key = |v: &[ga_lrpc::FieldElem]| {
            let mut k: Vec<Vec<u8>> = v.iter().map(|e| e.coeffs().to_vec()).collect();
            k.sort();
            k
        };
        for row in lim.row_iter() {
            prop_assert_eq!(key(row), key(a.coords()));
        }
    }

    #[test]
    fn cyclic_product_is_convolution(k in 1usize..12, seed in any::<u64>()) {
        let f = Field::preset(2, 7).unwrap();
        let alg = GroupAlgebra::new(f.clone(), GroupDescriptor::cyclic(k).unwrap());
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let (a, b) = (alg.sample(&mut rng), alg.sample(&mut rng));
        prop_assert_eq!(mul(&a, &b).into_coords(), convolve(&f, &a, &b));
    }

    #[test]
    fn inverse_is_two_sided(idx in 0usize..4, seed in any::<u64>()) {
        let alg = &algebras()[idx];
        let a = alg.sample(&mut ChaCha20Rng::seed_from_u64(seed));
        match a.inverse() {
            Ok(z) => {
                prop_assert!(a.is_invertible());
                prop_assert_eq!(mul(&a, &z), alg.one());
                prop_assert_eq!(mul(&z, &a), alg.one());
            }
            Err(_) => prop_assert!(!a.is_invertible()),
        }
    }
}

#[test]
fn lim_of_one_is_identity() {
    for alg in algebras() {
        assert_eq!(alg.one().lim(), Matrix::identity(alg.field(), alg.n()));
    }
}

#[test]
fn dihedral_algebra_is_noncommutative() {
    let alg = &algebras()[0];
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let witness = (0..20).any(|_| {
        let (a, b) = (alg.sample(&mut rng), alg.sample(&mut rng));
        mul(&a, &b) != mul(&b, &a)
    });
    assert!(witness);
}

#[test]
fn sum_of_all_group_elements_is_zero_divisor() {
    let f = Field::preset(2, 5).unwrap();
    for g in [GroupDescriptor::cyclic(6).unwrap(), GroupDescriptor::dihedral(5).unwrap()] {
        let alg = GroupAlgebra::new(f.clone(), g);
        let s = alg.element(vec![f.one(); alg.n()]).unwrap();
        assert!(mul(&s, &s).is_zero());
        assert!(!s.is_invertible());
        assert!(s.inverse().is_err());
    }
}

#[test]
fn invertibility_matches_brute_force_search() {
    // q = 2, m = 2 and q = 3, m = 1 over small groups: every element, every
    // candidate inverse.
    let cases = [
        (Field::preset(2, 2).unwrap(), GroupDescriptor::cyclic(2).unwrap()),
        (Field::preset(2, 1).unwrap(), GroupDescriptor::dihedral(3).unwrap()),
        (Field::preset(3, 1).unwrap(), GroupDescriptor::cyclic(4).unwrap()),
    ];
    for (f, g) in cases {
        let alg = GroupAlgebra::new(f, g);
        let all: Vec<AlgebraElement> = alg.elements().collect();
        let one = alg.one();
        let mut units = 0;
        for a in &all {
            let has_inverse = all.iter().any(|b| mul(a, b) == one);
            assert_eq!(a.is_invertible(), has_inverse, "{:?}", a.coords());
            units += usize::from(has_inverse);
        }
        if alg.n() == 2 && alg.field().m() == 2 {
            assert_eq!(all.len(), 16);
            assert_eq!(units, 12);
        }
    }
}

#[test]
fn basis_elements_multiply_like_the_group() {
    let alg = &algebras()[1];
    let g = alg.group();
    for i in 0..alg.n() {
        for j in 0..alg.n() {
            assert_eq!(mul(&alg.basis_element(i), &alg.basis_element(j)), alg.basis_element(g.mul(i, j)));
        }
        assert_eq!(alg.basis_element(i).inverse().unwrap(), alg.basis_element(g.inv(i)));
    }
}
