#![allow(dead_code)]

use ga_lrpc::{AlgebraElement, GroupAlgebra, LrpcCode, LrpcParams, Subspace};
use rand::Rng;

/// An element with every coordinate in `e` and coordinate span exactly `e`.
pub fn spanning_element<R: Rng>(a: &GroupAlgebra, e: &Subspace, rng: &mut R) -> AlgebraElement {
    loop {
        let x = a.sample_in(e, rng);
        if x.support() == *e {
            return x;
        }
    }
}

/// A fresh code with support of dimension `lambda`, a planted error support
/// `E` of dimension `r`, and the resulting syndrome.
pub struct Planted {
    pub code: LrpcCode,
    pub e: Subspace,
    pub e1: AlgebraElement,
    pub e2: AlgebraElement,
    pub s: AlgebraElement,
}

pub fn planted<R: Rng>(a: &GroupAlgebra, lambda: usize, r: usize, rng: &mut R) -> Planted {
    let field = a.field();
    let params = LrpcParams::new(lambda, a.n(), r, field.m()).unwrap();
    let f = Subspace::sample(field, lambda, rng).unwrap();
    let code = LrpcCode::generate(a, &f, params, rng).unwrap();
    let e = Subspace::sample(field, r, rng).unwrap();
    let e1 = spanning_element(a, &e, rng);
    let e2 = spanning_element(a, &e, rng);
    let s = code.syndrome(&e1, &e2).unwrap();
    Planted { code, e, e1, e2, s }
}
