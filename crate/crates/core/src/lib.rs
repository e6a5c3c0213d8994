//! A signature scheme whose forgery requires both factoring n = p₁p₂ and
//! solving discrete logarithms in an order-n subgroup of a supersingular
//! curve y² = x³ + Ax over F_p, p = 4n − 1.
//!
//! Layers, bottom up: [`numeric`] (big integers, primality, F_p²), [`curve`]
//! (affine group law), [`pairing`] (distortion-map Tate pairing),
//! [`hashing`] (KDF, scalar hash, map-to-point), [`scheme`] (params, keys,
//! sign, verify) with its file [`codec`], and [`attack`], which recovers the
//! factorization from a signing oracle at toy sizes.

pub mod attack;
pub mod codec;
pub mod curve;
pub mod error;
pub mod hashing;
pub mod instrument;
pub mod kat;
pub mod numeric;
pub mod pairing;
pub mod scheme;

pub use curve::{CurveParams, Point, PointFp, PointFp2};
pub use error::{Error, Result};
pub use numeric::{Fp2, Nat};
pub use pairing::PairingContext;
pub use scheme::{gen_params, keygen, keygen_with, sign, verify, GeneratedParams, PrivateKey, PublicKey, Rejection, SchemeParams, Signature};

/// Deterministic generator used wherever a seed is supplied.
pub type SeededRng = rand_chacha::ChaCha20Rng;

/// Expands an arbitrary seed string into a ChaCha20 generator via SHA-256.
pub fn seeded_rng(seed: &[u8]) -> SeededRng {
    use rand::SeedableRng;
    use sha2::{Digest, Sha256};
    SeededRng::from_seed(Sha256::digest(seed).into())
}
