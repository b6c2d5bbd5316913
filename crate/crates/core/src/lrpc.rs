//! Left ideal LRPC codes and rank support recovery.
//!
//! A code is given by two algebra elements `h1, h2` whose coordinates span a
//! small `F_q`-subspace `F`. Its parity-check matrix is
//! `(LIM(h1)ᵀ | LIM(h2)ᵀ)`, so the syndrome of an error `(e1 | e2)` is the
//! algebra element `e1·h1 + e2·h2`.

use rand::Rng;

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::linalg::{Matrix, Subspace};

/// Sampling attempts before giving up on a code or key.
pub const DEFAULT_MAX_ATTEMPTS: usize = 256;

/// `(λ, K, N) = (lambda, n, 2n)` plus the error-support dimension `r` the
/// decoder targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LrpcParams {
    lambda: usize,
    n: usize,
    r: usize,
}

impl LrpcParams {
    /// Requires `r·λ ≤ min(m, n)`.
    pub fn new(lambda: usize, n: usize, r: usize, m: usize) -> Result<Self> {
        if lambda == 0 || r == 0 || n == 0 {
            return Err(Error::param("lambda, r and n must all be positive"));
        }
        if lambda > m {
            return Err(Error::param(format!("lambda = {lambda} exceeds m = {m}")));
        }
        let rl = r * lambda;
        if rl > m || rl > n {
            return Err(Error::param(format!(
                "r·lambda = {rl} must not exceed min(m, n) = {}",
                m.min(n)
            )));
        }
        Ok(LrpcParams { lambda, n, r })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// Redundancy `N − K`, equal to the group order.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Code length `N = 2n`.
    pub fn length(&self) -> usize {
        2 * self.n
    }

    /// Code dimension `K = n`.
    pub fn dimension(&self) -> usize {
        self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrpcCode {
    h1: AlgebraElement,
    h2: AlgebraElement,
    support: Subspace,
    params: LrpcParams,
}

impl LrpcCode {
    /// Samples `h1, h2` with coordinates in `support`, jointly spanning it,
    /// and `h1` invertible.
    pub fn generate<R: Rng + ?Sized>(
        algebra: &GroupAlgebra,
        support: &Subspace,
        params: LrpcParams,
        rng: &mut R,
    ) -> Result<Self> {
        Self::generate_with_attempts(algebra, support, params, DEFAULT_MAX_ATTEMPTS, rng)
    }

    pub fn generate_with_attempts<R: Rng + ?Sized>(
        algebra: &GroupAlgebra,
        support: &Subspace,
        params: LrpcParams,
        max_attempts: usize,
        rng: &mut R,
    ) -> Result<Self> {
        if support.dim() != params.lambda {
            return Err(Error::param(format!(
                "support has dimension {}, params ask for lambda = {}",
                support.dim(),
                params.lambda
            )));
        }
        if support.field() != algebra.field() {
            return Err(Error::param("support lives in a different field"));
        }
        if params.n != algebra.n() {
            return Err(Error::param("params n differs from the group order"));
        }
        for _ in 0..max_attempts {
            let h1 = algebra.sample_in(support, rng);
            let h2 = algebra.sample_in(support, rng);
            if joint_support(&h1, &h2) == *support && h1.is_invertible() {
                return Ok(LrpcCode { h1, h2, support: support.clone(), params });
            }
        }
        Err(Error::Sampling(max_attempts))
    }

    /// Wraps given elements, checking that at least one is invertible.
    /// `lambda` is taken from the joint coordinate span.
    pub fn from_pair(h1: AlgebraElement, h2: AlgebraElement, r: usize) -> Result<Self> {
        if h1.algebra() != h2.algebra() {
            return Err(Error::param("h1 and h2 belong to different algebras"));
        }
        let support = joint_support(&h1, &h2);
        let alg = h1.algebra();
        let params = LrpcParams::new(support.dim(), alg.n(), r, alg.field().m())?;
        if !h1.is_invertible() && !h2.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(LrpcCode { h1, h2, support, params })
    }

    pub fn h1(&self) -> &AlgebraElement {
        &self.h1
    }

    pub fn h2(&self) -> &AlgebraElement {
        &self.h2
    }

    /// The subspace `F` spanned by the coordinates of `h1` and `h2`.
    pub fn support(&self) -> &Subspace {
        &self.support
    }

    pub fn params(&self) -> LrpcParams {
        self.params
    }

    /// `(LIM(h1)ᵀ | LIM(h2)ᵀ)`, an `n × 2n` matrix.
    pub fn parity_check(&self) -> Matrix<FieldElem> {
        self.h1
            .lim()
            .transpose()
            .hconcat(&self.h2.lim().transpose())
            .expect("both blocks are n x n")
    }

    /// `(I_n | LIM(h2·h1⁻¹)ᵀ)`. Requires `h1` invertible.
    pub fn systematic_form(&self) -> Result<Matrix<FieldElem>> {
        let h1_inv = self.h1.inverse()?;
        let h = self.h2.mul(&h1_inv)?;
        let field = self.h1.algebra().field();
        Matrix::identity(field, self.params.n).hconcat(&h.lim().transpose())
    }

    pub fn syndrome(&self, e1: &AlgebraElement, e2: &AlgebraElement) -> Result<AlgebraElement> {
        syndrome(&self.h1, &self.h2, e1, e2)
    }

    /// Decodes the support of the error behind `s`.
    pub fn decode_support(&self, s: &AlgebraElement) -> Result<Subspace> {
        rsr(&self.support, s, self.params.r)
    }
}

/// The `F_q`-span of the coordinates of both elements.
pub fn joint_support(a: &AlgebraElement, b: &AlgebraElement) -> Subspace {
    let mut gens = a.coords().to_vec();
    gens.extend_from_slice(b.coords());
    Subspace::span(a.algebra().field(), &gens)
}

/// `(e1 | e2) · (LIM(h1)ᵀ | LIM(h2)ᵀ)ᵀ = e1·h1 + e2·h2`.
pub fn syndrome(
    h1: &AlgebraElement,
    h2: &AlgebraElement,
    e1: &AlgebraElement,
    e2: &AlgebraElement,
) -> Result<AlgebraElement> {
    e1.mul(h1)?.add(&e2.mul(h2)?)
}

/// Rank support recovery.
///
/// With `S` the span of the syndrome coordinates, computes
/// `E' = ⋂ f_i⁻¹·S` over the basis `{f_i}` of `F`. Succeeds only when
/// `dim E' = r` and every syndrome coordinate lies in `E'·F`.
pub fn rsr(f: &Subspace, s: &AlgebraElement, r: usize) -> Result<Subspace> {
    let field = s.algebra().field();
    if f.field() != field {
        return Err(Error::param("F and the syndrome live in different fields"));
    }
    LrpcParams::new(f.dim(), s.algebra().n(), r, field.m())?;

    let syndrome_space = s.support();
    let mut candidate: Option<Subspace> = None;
    for fi in f.basis() {
        let inv = field.inv(&fi)?;
        let shifted = syndrome_space.scale(&inv)?;
        candidate = Some(match candidate {
            None => shifted,
            Some(c) => c.intersect(&shifted)?,
        });
        if candidate.as_ref().is_some_and(|c| c.dim() < r) {
            return Err(Error::DecodeFailure);
        }
    }
    let recovered = candidate.expect("F has at least one basis vector");
    if recovered.dim() != r {
        return Err(Error::DecodeFailure);
    }
    let product = recovered.product(f)?;
    if !s.coords().iter().all(|c| product.contains(c)) {
        return Err(Error::DecodeFailure);
    }
    Ok(recovered)
}
