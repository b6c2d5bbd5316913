//! ROLLO-I style key encapsulation over a group algebra.
//!
//! * KeyGen: sample a secret support `F` of dimension `λ` and `x, y` with
//!   coordinates in `F`, `x` invertible; publish `h = y·x⁻¹`.
//! * Encap: sample an error support `E` of dimension `r` and `e1, e2` each
//!   spanning `E`; send `c = e1 + e2·h`, keep `K = H(E)`.
//! * Decap: `c·x = e1·x + e2·y` is a syndrome of the LRPC code `(x, y)`;
//!   recover `E` with [`rsr`] and hash it.
//!
//! There is no implicit rejection: a decoding failure is reported as
//! [`Error::DecapFailure`]. Nothing here is constant time.
//!
//! # Wire format
//!
//! All integers are big-endian; coefficients take one byte each.
//!
//! ```text
//! "GALR" | version=1 | kind ('P' | 'S' | 'C')
//! field:  q:u32 | m:u32 | modulus[m+1]
//! group:  tag:u8 (0 cyclic, 1 dihedral, 2 custom)
//!         cyclic/dihedral: k:u32
//!         custom: n:u32 | n × (len:u8 | utf8 name) | table[n*n] (0-based u8)
//! scheme: lambda:u32 | r:u32
//! payload:
//!   'P': h[n*m]
//!   'S': x[n*m] | y[n*m] | dim:u32 | F rows[dim*m] (canonical RREF)
//!   'C': c[n*m]
//! ```
//!
//! The shared key is SHA-256 over
//! `"GA-LRPC-KEM-v1" | q:u32 | m:u32 | dim:u32 | RREF basis rows`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::error::{Error, FormatError, Result};
use crate::field::{Field, FieldParams};
use crate::group::{GroupDescriptor, GroupFamily};
use crate::linalg::{Matrix, Subspace};
use crate::lrpc::{self, joint_support, rsr, LrpcCode, LrpcParams, DEFAULT_MAX_ATTEMPTS};

pub const MAGIC: &[u8; 4] = b"GALR";
pub const VERSION: u8 = 1;
pub const HASH_TAG: &[u8] = b"GA-LRPC-KEM-v1";

const KIND_PUBLIC: u8 = b'P';
const KIND_SECRET: u8 = b'S';
const KIND_CIPHERTEXT: u8 = b'C';

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KemParams {
    algebra: GroupAlgebra,
    lambda: usize,
    r: usize,
}

impl KemParams {
    pub fn new(field: Field, group: GroupDescriptor, lambda: usize, r: usize) -> Result<Self> {
        Self::from_algebra(GroupAlgebra::new(field, group), lambda, r)
    }

    pub fn from_algebra(algebra: GroupAlgebra, lambda: usize, r: usize) -> Result<Self> {
        let m = algebra.field().m();
        let n = algebra.n();
        LrpcParams::new(lambda, n, r, m)?;
        if r > n {
            return Err(Error::param(format!("r = {r} exceeds the group order {n}")));
        }
        Ok(KemParams { algebra, lambda, r })
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn group(&self) -> &GroupDescriptor {
        self.algebra.group()
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn lrpc_params(&self) -> LrpcParams {
        LrpcParams::new(self.lambda, self.algebra.n(), self.r, self.field().m())
            .expect("validated at construction")
    }

    /// Human-readable warnings about structurally weak choices. Cyclic
    /// groups give quasi-cyclic codes, which have known structural attacks;
    /// abelian groups are discouraged for the same reason.
    pub fn warnings(&self) -> Vec<String> {
        let g = self.group();
        if g.is_cyclic() {
            vec![format!(
                "group {g} is cyclic: the resulting codes are quasi-cyclic and exposed to known structural attacks"
            )]
        } else if g.is_abelian() {
            vec![format!("group {g} is abelian: non-abelian groups are recommended")]
        } else {
            vec![]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    params: KemParams,
    h: AlgebraElement,
}

impl PublicKey {
    pub fn new(params: KemParams, h: AlgebraElement) -> Result<Self> {
        if h.algebra() != params.algebra() {
            return Err(Error::param("h does not belong to the parameter algebra"));
        }
        Ok(PublicKey { params, h })
    }

    pub fn params(&self) -> &KemParams {
        &self.params
    }

    pub fn h(&self) -> &AlgebraElement {
        &self.h
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretKey {
    params: KemParams,
    x: AlgebraElement,
    y: AlgebraElement,
    support: Subspace,
}

impl SecretKey {
    /// Checks the structural invariants: `x` invertible and the joint
    /// coordinate span of `x, y` of dimension `λ`.
    pub fn new(params: KemParams, x: AlgebraElement, y: AlgebraElement) -> Result<Self> {
        if x.algebra() != params.algebra() || y.algebra() != params.algebra() {
            return Err(Error::param("x, y do not belong to the parameter algebra"));
        }
        let support = joint_support(&x, &y);
        if support.dim() != params.lambda {
            return Err(Error::param(format!(
                "x, y span a subspace of dimension {}, expected {}",
                support.dim(),
                params.lambda
            )));
        }
        if !x.is_invertible() {
            return Err(Error::NotInvertible);
        }
        Ok(SecretKey { params, x, y, support })
    }

    pub fn params(&self) -> &KemParams {
        &self.params
    }

    pub fn x(&self) -> &AlgebraElement {
        &self.x
    }

    pub fn y(&self) -> &AlgebraElement {
        &self.y
    }

    /// The secret support `F`.
    pub fn support(&self) -> &Subspace {
        &self.support
    }

    /// The public element `y·x⁻¹` this secret key corresponds to.
    pub fn public_element(&self) -> Result<AlgebraElement> {
        self.y.mul(&self.x.inverse()?)
    }

    /// The underlying LRPC code with parity-check matrix `H_{x,y}`.
    pub fn code(&self) -> Result<LrpcCode> {
        LrpcCode::from_pair(self.x.clone(), self.y.clone(), self.params.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ciphertext {
    params: KemParams,
    c: AlgebraElement,
}

impl Ciphertext {
    pub fn new(params: KemParams, c: AlgebraElement) -> Result<Self> {
        if c.algebra() != params.algebra() {
            return Err(Error::param("c does not belong to the parameter algebra"));
        }
        Ok(Ciphertext { params, c })
    }

    pub fn params(&self) -> &KemParams {
        &self.params
    }

    pub fn c(&self) -> &AlgebraElement {
        &self.c
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SharedKey(pub [u8; 32]);

impl SharedKey {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl fmt::Display for SharedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for SharedKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SharedKey({})", self.to_hex())
    }
}

/// Everything produced during encapsulation, including the ephemeral error.
#[derive(Clone, Debug)]
pub struct Encapsulation {
    pub ciphertext: Ciphertext,
    pub key: SharedKey,
    pub support: Subspace,
    pub e1: AlgebraElement,
    pub e2: AlgebraElement,
}

pub fn hash_subspace(e: &Subspace) -> SharedKey {
    let field = e.field();
    let mut hasher = Sha256::new();
    hasher.update(HASH_TAG);
    hasher.update(field.q().to_be_bytes());
    hasher.update((field.m() as u32).to_be_bytes());
    hasher.update((e.dim() as u32).to_be_bytes());
    for row in e.basis_matrix().row_iter() {
        hasher.update(row);
    }
    SharedKey(hasher.finalize().into())
}

pub fn keygen<R: Rng + ?Sized>(params: &KemParams, rng: &mut R) -> Result<(PublicKey, SecretKey)> {
    for w in params.warnings() {
        log::warn!("{w}");
    }
    let support = Subspace::sample(params.field(), params.lambda, rng)?;
    let code = LrpcCode::generate(params.algebra(), &support, params.lrpc_params(), rng)?;
    let x = code.h1().clone();
    let y = code.h2().clone();
    let h = y.mul(&x.inverse()?)?;
    let pk = PublicKey { params: params.clone(), h };
    let sk = SecretKey { params: params.clone(), x, y, support };
    Ok((pk, sk))
}

/// An algebra element whose coordinates span exactly `support`.
fn sample_spanning<R: Rng + ?Sized>(
    algebra: &GroupAlgebra,
    support: &Subspace,
    rng: &mut R,
) -> Result<AlgebraElement> {
    for _ in 0..DEFAULT_MAX_ATTEMPTS {
        let e = algebra.sample_in(support, rng);
        if e.support() == *support {
            return Ok(e);
        }
    }
    Err(Error::Sampling(DEFAULT_MAX_ATTEMPTS))
}

pub fn encap_detailed<R: Rng + ?Sized>(pk: &PublicKey, rng: &mut R) -> Result<Encapsulation> {
    let params = &pk.params;
    let algebra = params.algebra();
    let support = Subspace::sample(params.field(), params.r, rng)?;
    let e1 = sample_spanning(algebra, &support, rng)?;
    let e2 = sample_spanning(algebra, &support, rng)?;
    let c = e1.add(&e2.mul(&pk.h)?)?;
    let key = hash_subspace(&support);
    Ok(Encapsulation {
        ciphertext: Ciphertext { params: params.clone(), c },
        key,
        support,
        e1,
        e2,
    })
}

pub fn encap<R: Rng + ?Sized>(pk: &PublicKey, rng: &mut R) -> Result<(Ciphertext, SharedKey)> {
    let enc = encap_detailed(pk, rng)?;
    Ok((enc.ciphertext, enc.key))
}

pub fn decap(sk: &SecretKey, ct: &Ciphertext) -> Result<SharedKey> {
    if sk.params != ct.params {
        return Err(Error::param("ciphertext parameters differ from the secret key's"));
    }
    let s = ct.c.mul(&sk.x)?;
    match rsr(&sk.support, &s, sk.params.r) {
        Ok(e) => Ok(hash_subspace(&e)),
        Err(Error::DecodeFailure) => Err(Error::DecapFailure),
        Err(e) => Err(e),
    }
}

/// Checks that `sk` is the secret key behind `pk`, i.e. `h·x = y`.
pub fn validate_keypair(pk: &PublicKey, sk: &SecretKey) -> Result<()> {
    if pk.params != sk.params {
        return Err(Error::param("key parameters differ"));
    }
    if pk.h.mul(&sk.x)? != sk.y {
        return Err(Error::param("secret key does not match public key"));
    }
    Ok(())
}

/// The decapsulation syndrome `c·x` seen as an LRPC syndrome of `(e1, e2)`.
pub fn decap_syndrome(sk: &SecretKey, ct: &Ciphertext) -> Result<AlgebraElement> {
    ct.c.mul(&sk.x)
}

/// Syndrome of `(e1 | e2)` under `H_{x,y}`.
pub fn code_syndrome(sk: &SecretKey, e1: &AlgebraElement, e2: &AlgebraElement) -> Result<AlgebraElement> {
    lrpc::syndrome(&sk.x, &sk.y, e1, e2)
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

struct Writer(Vec<u8>);

impl Writer {
    fn header(kind: u8, params: &KemParams) -> Self {
        let mut w = Writer(Vec::new());
        w.0.extend_from_slice(MAGIC);
        w.0.push(VERSION);
        w.0.push(kind);
        w.field(params.field().params());
        w.group(params.group());
        w.u32(params.lambda as u32);
        w.u32(params.r as u32);
        w
    }

    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_be_bytes());
    }

    fn field(&mut self, p: &FieldParams) {
        self.u32(p.q());
        self.u32(p.m() as u32);
        self.0.extend_from_slice(p.modulus());
    }

    fn group(&mut self, g: &GroupDescriptor) {
        match g.family() {
            GroupFamily::Cyclic(k) => {
                self.0.push(0);
                self.u32(k as u32);
            }
            GroupFamily::Dihedral(k) => {
                self.0.push(1);
                self.u32(k as u32);
            }
            GroupFamily::Custom => {
                self.0.push(2);
                self.u32(g.order() as u32);
                for name in g.names() {
                    let bytes = name.as_bytes();
                    let len = bytes.len().min(255);
                    self.0.push(len as u8);
                    self.0.extend_from_slice(&bytes[..len]);
                }
                self.0.extend(g.table().iter().map(|&t| t as u8));
            }
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], FormatError> {
        let remaining = self.buf.len() - self.pos;
        if len > remaining {
            return Err(FormatError::Truncated { needed: len - remaining });
        }
        let out = &self.buf[self.pos..self.pos + len];
        self.pos += len;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, FormatError> {
        let b = self.take(4)?;
        Ok(u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
    }

    fn header(&mut self, kind: u8) -> Result<KemParams, FormatError> {
        if self.take(4).map_err(|_| FormatError::BadMagic)? != MAGIC {
            return Err(FormatError::BadMagic);
        }
        let version = self.u8()?;
        if version != VERSION {
            return Err(FormatError::UnsupportedVersion(version));
        }
        let found = self.u8()?;
        if found != kind {
            return Err(FormatError::WrongKind { expected: kind, found });
        }
        let field = self.field()?;
        let group = self.group()?;
        let lambda = self.u32()? as usize;
        let r = self.u32()? as usize;
        KemParams::from_algebra(GroupAlgebra::from_shared(field, Arc::new(group)), lambda, r)
            .map_err(|e| FormatError::InvalidParams(e.to_string()))
    }

    fn field(&mut self) -> Result<Field, FormatError> {
        let q = self.u32()?;
        let m = self.u32()? as usize;
        if m == 0 || m > crate::field::MAX_DEGREE {
            return Err(FormatError::InvalidField(format!("degree {m} out of range")));
        }
        let modulus = self.take(m + 1)?.to_vec();
        FieldParams::new(q, modulus)
            .map(Field::new)
            .map_err(|e| FormatError::InvalidField(e.to_string()))
    }

    fn group(&mut self) -> Result<GroupDescriptor, FormatError> {
        let invalid = |e: Error| FormatError::InvalidGroup(e.to_string());
        match self.u8()? {
            0 => GroupDescriptor::cyclic(self.u32()? as usize).map_err(invalid),
            1 => GroupDescriptor::dihedral(self.u32()? as usize).map_err(invalid),
            2 => {
                let n = self.u32()? as usize;
                if n == 0 || n > crate::group::MAX_ORDER {
                    return Err(FormatError::InvalidGroup(format!("order {n} out of range")));
                }
                let mut names = Vec::with_capacity(n);
                for _ in 0..n {
                    let len = self.u8()? as usize;
                    let bytes = self.take(len)?;
                    let name = std::str::from_utf8(bytes)
                        .map_err(|_| FormatError::InvalidGroup("element name is not UTF-8".into()))?;
                    names.push(name.to_string());
                }
                let table = self.take(n * n)?.iter().map(|&t| t as usize).collect();
                GroupDescriptor::from_table(names, table).map_err(invalid)
            }
            tag => Err(FormatError::InvalidGroup(format!("unknown family tag {tag}"))),
        }
    }

    fn element(&mut self, algebra: &GroupAlgebra) -> Result<AlgebraElement, FormatError> {
        let len = algebra.n() * algebra.field().m();
        algebra.from_bytes(self.take(len)?)
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.buf.len() - self.pos {
            0 => Ok(()),
            extra => Err(FormatError::TrailingBytes(extra)),
        }
    }
}

impl PublicKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::header(KIND_PUBLIC, &self.params);
        w.0.extend(self.h.to_bytes());
        w.0
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        let mut r = Reader { buf: bytes, pos: 0 };
        let params = r.header(KIND_PUBLIC)?;
        let h = r.element(params.algebra())?;
        r.finish()?;
        Ok(PublicKey { params, h })
    }
}

impl SecretKey {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::header(KIND_SECRET, &self.params);
        w.0.extend(self.x.to_bytes());
        w.0.extend(self.y.to_bytes());
        w.u32(self.support.dim() as u32);
        w.0.extend_from_slice(self.support.basis_matrix().entries());
        w.0
    }

    /// Parses and structurally validates a secret key. Whether it matches a
    /// given public key is a separate question; see [`validate_keypair`].
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        let mut r = Reader { buf: bytes, pos: 0 };
        let params = r.header(KIND_SECRET)?;
        let x = r.element(params.algebra())?;
        let y = r.element(params.algebra())?;
        let dim = r.u32()? as usize;
        let m = params.field().m();
        if dim > m {
            return Err(FormatError::InvalidSecretKey(format!("support dimension {dim} exceeds m")));
        }
        let rows = r.take(dim * m)?.to_vec();
        r.finish()?;
        if let Some(&value) = rows.iter().find(|&&c| u32::from(c) >= params.field().q()) {
            return Err(FormatError::CoefficientOutOfRange { value, q: params.field().q() });
        }
        let basis = Matrix::new(dim, m, rows).expect("dim*m bytes");
        let support = Subspace::from_canonical_rows(params.field(), basis)
            .map_err(|e| FormatError::InvalidSecretKey(e.to_string()))?;
        let sk = SecretKey::new(params, x, y).map_err(|e| FormatError::InvalidSecretKey(e.to_string()))?;
        if sk.support != support {
            return Err(FormatError::InvalidSecretKey("stored support differs from span of x, y".into()));
        }
        Ok(sk)
    }
}

impl Ciphertext {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer::header(KIND_CIPHERTEXT, &self.params);
        w.0.extend(self.c.to_bytes());
        w.0
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        let mut r = Reader { buf: bytes, pos: 0 };
        let params = r.header(KIND_CIPHERTEXT)?;
        let c = r.element(params.algebra())?;
        r.finish()?;
        Ok(Ciphertext { params, c })
    }
}
