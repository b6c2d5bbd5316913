//! Arithmetic in `F_{q^m}` as `F_q[X]` modulo a monic irreducible polynomial.
//!
//! `q` must be a prime below 256 so that every base-field coefficient fits in
//! one byte, and `m` is at most [`MAX_DEGREE`]. Elements are small `Copy`
//! values; the field context lives in a cheaply cloned [`Field`] handle.
//!
//! Nothing here is constant time.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, FormatError, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 64;

/// Middle exponents of the preset binary moduli for `m = 2..=64`: the
/// irreducible trinomial `X^m + X^k + 1` with smallest `k`, or failing that
/// the pentanomial `X^m + X^a + X^b + X^c + 1` with lexicographically
/// smallest `(a, b, c)`.
const BINARY_PRESETS: [&[usize]; 63] = [
    &[1], &[1], &[1], &[2], &[1], &[1], &[4, 3, 1], &[1], &[3], &[2], // 2..=11
    &[3], &[4, 3, 1], &[5], &[1], &[5, 3, 1], &[3], &[3], &[5, 2, 1], &[3], &[2], // 12..=21
    &[1], &[5], &[4, 3, 1], &[3], &[4, 3, 1], &[5, 2, 1], &[1], &[2], &[1], &[3], // 22..=31
    &[7, 3, 2], &[10], &[7], &[2], &[9], &[6, 4, 1], &[6, 5, 1], &[4], &[5, 4, 3], &[3], // 32..=41
    &[7], &[6, 4, 3], &[5], &[4, 3, 1], &[1], &[5], &[5, 3, 2], &[9], &[4, 3, 2], &[6, 3, 1], // 42..=51
    &[3], &[6, 2, 1], &[9], &[7], &[7, 4, 2], &[4], &[19], &[7, 4, 2], &[1], &[5, 2, 1], // 52..=61
    &[29], &[1], &[4, 3, 1], // 62..=64
];

pub(crate) fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Parameters of `F_{q^m}`: a prime `q`, a degree `m` and a monic
/// irreducible modulus of degree `m`, stored as `m + 1` coefficients with the
/// constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldParams {
    q: u32,
    m: usize,
    modulus: Vec<u8>,
}

impl FieldParams {
    /// Validates and builds field parameters from a full modulus.
    pub fn new(q: u32, modulus: Vec<u8>) -> Result<Self> {
        if !is_prime(q) || q > 255 {
            return Err(Error::param(format!("q = {q} must be a prime below 256")));
        }
        if modulus.len() < 2 || modulus.len() > MAX_DEGREE + 1 {
            return Err(Error::param(format!(
                "modulus must have between 2 and {} coefficients",
                MAX_DEGREE + 1
            )));
        }
        if let Some(&c) = modulus.iter().find(|&&c| u32::from(c) >= q) {
            return Err(Error::param(format!("modulus coefficient {c} is not below q")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::param("modulus must be monic of degree m"));
        }
        let m = modulus.len() - 1;
        let params = FieldParams { q, m, modulus };
        if !poly::is_irreducible(&params) {
            return Err(Error::param("modulus is not irreducible over F_q"));
        }
        Ok(params)
    }

    /// The default modulus for `(q, m)`.
    ///
    /// For `q = 2` this is the fixed low-weight table above (and `X` for
    /// `m = 1`). For odd `q` it is the first irreducible `X^m + low(X)` where
    /// `low` runs through the polynomials of degree `< m` ordered by their
    /// base-`q` integer encoding, constant term least significant.
    pub fn preset(q: u32, m: usize) -> Result<Self> {
        if !is_prime(q) || q > 255 {
            return Err(Error::param(format!("q = {q} must be a prime below 256")));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::param(format!("m = {m} must be in 1..={MAX_DEGREE}")));
        }
        let mut modulus = vec![0u8; m + 1];
        modulus[m] = 1;
        if m == 1 {
            return FieldParams::new(q, modulus);
        }
        if q == 2 {
            modulus[0] = 1;
            for &k in BINARY_PRESETS[m - 2] {
                modulus[k] = 1;
            }
            return FieldParams::new(q, modulus);
        }
        // Irreducibles have density about 1/m, so this terminates quickly.
        let mut low = vec![0u8; m];
        loop {
            // Increment the base-q counter.
            for c in low.iter_mut() {
                *c += 1;
                if u32::from(*c) < q {
                    break;
                }
                *c = 0;
            }
            if low[0] == 0 {
                continue;
            }
            modulus[..m].copy_from_slice(&low);
            let candidate = FieldParams { q, m, modulus: modulus.clone() };
            if poly::is_irreducible(&candidate) {
                return Ok(candidate);
            }
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }
}

/// Text form `q=<int>,m=<int>,mod=<c_0>,<c_1>,...,<c_m>`.
impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={},m={},mod=", self.q, self.m)?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Format(FormatError::Parse(format!("{msg} in {s:?}")));
        let rest = s.trim().strip_prefix("q=").ok_or_else(|| bad("missing q="))?;
        let (q, rest) = rest.split_once(",m=").ok_or_else(|| bad("missing ,m="))?;
        let (m, rest) = rest.split_once(",mod=").ok_or_else(|| bad("missing ,mod="))?;
        let q: u32 = q.parse().map_err(|_| bad("bad q"))?;
        let m: usize = m.parse().map_err(|_| bad("bad m"))?;
        let modulus = rest
            .split(',')
            .map(|c| c.trim().parse::<u8>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad("bad modulus coefficient"))?;
        if modulus.len() != m + 1 {
            return Err(bad("modulus must have m + 1 coefficients"));
        }
        FieldParams::new(q, modulus)
    }
}

/// An element of `F_{q^m}`: `m` base-field residues, coefficient of `X^i` at
/// index `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    len: u8,
    c: [u8; MAX_DEGREE],
}

impl FieldElem {
    fn zero_of(m: usize) -> Self {
        FieldElem { len: m as u8, c: [0; MAX_DEGREE] }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c[..self.len as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }

    fn pack_binary(&self) -> u64 {
        self.coeffs()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c) << i))
    }

    fn unpack_binary(m: usize, bits: u64) -> Self {
        let mut e = FieldElem::zero_of(m);
        for (i, c) in e.c[..m].iter_mut().enumerate() {
            *c = ((bits >> i) & 1) as u8;
        }
        e
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem{:?}", self.coeffs())
    }
}

/// Shared handle on a validated `F_{q^m}`.
#[derive(Clone, Debug)]
pub struct Field {
    params: Arc<FieldParams>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.params, &other.params) || self.params == other.params
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(params: FieldParams) -> Self {
        Field { params: Arc::new(params) }
    }

    pub fn preset(q: u32, m: usize) -> Result<Self> {
        Ok(Field::new(FieldParams::preset(q, m)?))
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn q(&self) -> u32 {
        self.params.q
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::zero_of(self.m())
    }

    pub fn one(&self) -> FieldElem {
        self.from_base(1)
    }

    /// The embedding of `c ∈ F_q` as a constant polynomial.
    pub fn from_base(&self, c: u8) -> FieldElem {
        let mut e = self.zero();
        e.c[0] = (u32::from(c) % self.q()) as u8;
        e
    }

    /// The class of `X^k`, reduced.
    pub fn monomial(&self, k: usize) -> FieldElem {
        let mut x = self.zero();
        if self.m() == 1 {
            // X ≡ -mod_0 when the modulus is X + mod_0.
            x.c[0] = ((self.q() - u32::from(self.params.modulus[0])) % self.q()) as u8;
        } else {
            x.c[1] = 1;
        }
        self.pow(&x, k as u128)
    }

    /// Builds an element from its coefficient vector.
    pub fn elem(&self, coeffs: &[u8]) -> Result<FieldElem> {
        if coeffs.len() != self.m() {
            return Err(Error::param(format!(
                "element has {} coefficients, field degree is {}",
                coeffs.len(),
                self.m()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| u32::from(c) >= self.q()) {
            return Err(Error::param(format!("coefficient {c} is not below q = {}", self.q())));
        }
        let mut e = self.zero();
        e.c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(e)
    }

    /// Checks that `a` is a well-formed element of this field.
    pub fn check(&self, a: &FieldElem) -> Result<()> {
        self.elem(a.coeffs()).map(|_| ())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert_eq!(a.len, b.len);
        let q = self.q() as u16;
        let mut r = *a;
        for (x, &y) in r.c[..self.m()].iter_mut().zip(b.coeffs()) {
            let s = u16::from(*x) + u16::from(y);
            *x = if s >= q { (s - q) as u8 } else { s as u8 };
        }
        r
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let q = self.q() as u16;
        let mut r = *a;
        for x in r.c[..self.m()].iter_mut() {
            if *x != 0 {
                *x = (q - u16::from(*x)) as u8;
            }
        }
        r
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, c: u8, a: &FieldElem) -> FieldElem {
        let q = self.q();
        let mut r = *a;
        for x in r.c[..self.m()].iter_mut() {
            *x = (u32::from(*x) * u32::from(c) % q) as u8;
        }
        r
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        debug_assert_eq!(a.len, b.len);
        if self.q() == 2 {
            return self.mul_binary(a, b);
        }
        let m = self.m();
        let q = self.q();
        let mut prod = [0u32; 2 * MAX_DEGREE - 1];
        for (i, &x) in a.coeffs().iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs().iter().enumerate() {
                prod[i + j] += u32::from(x) * u32::from(y);
            }
        }
        for p in prod[..2 * m - 1].iter_mut() {
            *p %= q;
        }
        // X^m ≡ -(mod_0 + mod_1 X + ... + mod_{m-1} X^{m-1}).
        let modulus = &self.params.modulus;
        for k in (m..2 * m - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mc) in modulus[..m].iter().enumerate() {
                let sub = t * u32::from(mc) % q;
                prod[k - m + j] = (prod[k - m + j] + q - sub) % q;
            }
        }
        let mut r = self.zero();
        for (x, &p) in r.c[..m].iter_mut().zip(prod.iter()) {
            *x = p as u8;
        }
        r
    }

    fn mul_binary(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let m = self.m();
        let (x, y) = (a.pack_binary(), b.pack_binary());
        let mut prod: u128 = 0;
        let mut bits = y;
        while bits != 0 {
            let i = bits.trailing_zeros();
            prod ^= u128::from(x) << i;
            bits &= bits - 1;
        }
        // Low part of the modulus, without the leading X^m.
        let low = self.params.modulus[..m]
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | (u128::from(c) << i));
        for k in (m..2 * m - 1).rev() {
            if (prod >> k) & 1 == 1 {
                prod ^= 1u128 << k;
                prod ^= low << (k - m);
            }
        }
        FieldElem::unpack_binary(m, prod as u64)
    }

    pub fn square(&self, a: &FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FieldElem, mut e: u128) -> FieldElem {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q();
        let u = poly::ext_euclid_inverse(a.coeffs(), &self.params.modulus, q);
        let mut r = self.zero();
        r.c[..u.len()].copy_from_slice(&u);
        Ok(r)
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Addition with both operands validated against this field.
    pub fn try_add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    /// Multiplication with both operands validated against this field.
    pub fn try_mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let mut e = self.zero();
        let q = self.q();
        for c in e.c[..self.m()].iter_mut() {
            *c = rng.random_range(0..q) as u8;
        }
        e
    }

    pub fn sample_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let e = self.sample(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// One byte per coefficient, `m` bytes, constant term first.
    pub fn to_bytes(&self, a: &FieldElem) -> Vec<u8> {
        a.coeffs().to_vec()
    }

    pub fn from_bytes(&self, bytes: &[u8]) -> Result<FieldElem, FormatError> {
        if bytes.len() != self.m() {
            return Err(FormatError::WrongLength { expected: self.m(), got: bytes.len() });
        }
        if let Some(&value) = bytes.iter().find(|&&c| u32::from(c) >= self.q()) {
            return Err(FormatError::CoefficientOutOfRange { value, q: self.q() });
        }
        let mut e = self.zero();
        e.c[..bytes.len()].copy_from_slice(bytes);
        Ok(e)
    }

    /// Every element of the field, in base-`q` counting order. Only sensible
    /// for tiny fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let total = u64::from(self.q()).pow(self.m() as u32);
        (0..total).map(move |mut k| {
            let mut e = self.zero();
            for c in e.c[..self.m()].iter_mut() {
                *c = (k % u64::from(self.q())) as u8;
                k /= u64::from(self.q());
            }
            e
        })
    }
}

/// The prime field `F_q` with residues stored as bytes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) || q > 255 {
            return Err(Error::param(format!("q = {q} must be a prime below 256")));
        }
        Ok(PrimeField { q })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn inv_elem(&self, a: u8) -> Option<u8> {
        if a == 0 {
            return None;
        }
        // a^(q-2) by Fermat.
        let q = self.q;
        let (mut base, mut e, mut acc) = (u32::from(a), q - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        Some(acc as u8)
    }
}

/// Dense polynomial helpers over `F_q`, constant term first, used for the
/// irreducibility test and for inversion.
mod poly {
    use super::FieldParams;

    fn trim(p: &mut Vec<u32>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    fn inv_mod(a: u32, q: u32) -> u32 {
        let (mut base, mut e, mut acc) = (a % q, q - 2, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            e >>= 1;
        }
        acc
    }

    /// Returns `(quotient, remainder)`; `b` must be nonzero and trimmed.
    fn divrem(a: &[u32], b: &[u32], q: u32) -> (Vec<u32>, Vec<u32>) {
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (vec![], r);
        }
        let lead_inv = inv_mod(*b.last().unwrap(), q);
        let mut quot = vec![0u32; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let t = r.last().unwrap() * lead_inv % q;
            quot[shift] = t;
            for (j, &bc) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + q - t * bc % q) % q;
            }
            trim(&mut r);
        }
        (quot, r)
    }

    fn mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % q;
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        let mut out = vec![0u32; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = (x + q - y) % q;
        }
        trim(&mut out);
        out
    }

    fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let (_, r) = divrem(&a, &b, q);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(a: &[u32], b: &[u32], f: &[u32], q: u32) -> Vec<u32> {
        divrem(&mul(a, b, q), f, q).1
    }

    /// `gcd(X^{q^i} - X, f) = 1` for every `i ≤ m/2`.
    pub(super) fn is_irreducible(params: &FieldParams) -> bool {
        let q = params.q;
        let m = params.m;
        let f: Vec<u32> = params.modulus.iter().map(|&c| u32::from(c)).collect();
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut frob = x.clone();
        for _ in 1..=m / 2 {
            // frob <- frob^q mod f
            let (mut base, mut e, mut acc) = (frob.clone(), q, vec![1u32]);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &f, q);
                }
                base = mulmod(&base, &base, &f, q);
                e >>= 1;
            }
            frob = acc;
            let g = gcd(&f, &sub(&frob, &x, q), q);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Inverse of the nonzero residue `a` modulo the irreducible `f`.
    pub(super) fn ext_euclid_inverse(a: &[u8], f: &[u8], q: u32) -> Vec<u8> {
        let m = f.len() - 1;
        let mut r0: Vec<u32> = f.iter().map(|&c| u32::from(c)).collect();
        let mut r1: Vec<u32> = a.iter().map(|&c| u32::from(c)).collect();
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![], vec![1u32]);
        while r1.len() > 1 {
            let (quot, rem) = divrem(&r0, &r1, q);
            let s2 = sub(&s0, &mul(&quot, &s1, q), q);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant c, and s1·a ≡ c.
        let c_inv = inv_mod(r1[0], q);
        let mut out = vec![0u8; m];
        for (o, &s) in out.iter_mut().zip(s1.iter()) {
            *o = (s * c_inv % q) as u8;
        }
        out
    }
}
