//! Left ideal low-rank parity-check codes over group algebras `F_{q^m}G`,
//! and a ROLLO-I style key encapsulation mechanism built on them.
//!
//! Layering, bottom up:
//!
//! * [`field`]: `F_{q^m}` for prime `q < 256`, `m ≤ 64`.
//! * [`linalg`]: exact Gaussian elimination over `F_q` and `F_{q^m}`, and
//!   canonical `F_q`-subspaces of `F_{q^m}`.
//! * [`group`]: finite groups as validated Cayley tables.
//! * [`algebra`]: the group algebra, left ideal matrices, inversion.
//! * [`lrpc`]: left ideal LRPC codes and rank support recovery.
//! * [`kem`]: KeyGen / Encap / Decap and the wire format.
//! * [`bench`], [`cli`]: measurement harnesses and the command line.
//!
//! This is research code. No operation is constant time.

pub mod algebra;
pub mod bench;
pub mod cli;
pub mod error;
pub mod field;
pub mod group;
pub mod kem;
pub mod linalg;
pub mod lrpc;

pub use algebra::{AlgebraElement, GroupAlgebra, LeftIdealMatrix};
pub use error::{Error, FormatError, Result};
pub use field::{Field, FieldElem, FieldParams, PrimeField};
pub use group::{GroupDescriptor, GroupFamily};
pub use kem::{Ciphertext, KemParams, PublicKey, SecretKey, SharedKey};
pub use linalg::{Matrix, Subspace};
pub use lrpc::{rsr, LrpcCode, LrpcParams};
