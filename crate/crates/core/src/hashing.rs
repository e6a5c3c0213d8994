//! Hashing into Z_n and into the order-n subgroup.
//!
//! Both hashes draw |n|-bit candidates from a SHA-256 counter-mode KDF over
//! `tag ‖ m ‖ T_i` and reject until the candidate is small enough, where
//! |n| = ⌊log₂ n⌋ + 1 and T_i is the iteration counter. The block counter
//! width and the tag bytes below fix the wire behaviour of signatures.

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::curve::{CurveParams, PointFp};
use crate::error::{Error, Result};
use crate::instrument;
use crate::numeric::Nat;

pub const TAG_SCALAR: u8 = 0x01;
pub const TAG_POINT: u8 = 0x02;

/// Upper bound on rejection-loop iterations.
pub const MAX_ITERATIONS: usize = 1000;

/// Encodes the iteration counter: a single zero byte for 0, otherwise the
/// minimal big-endian bytes of `i`.
pub fn counter_suffix(i: u64) -> Vec<u8> {
    if i == 0 {
        return vec![0];
    }
    let bytes = i.to_be_bytes();
    let skip = bytes.iter().take_while(|&&b| b == 0).count();
    bytes[skip..].to_vec()
}

/// First `bits` bits of SHA-256(m ‖ 0u32) ‖ SHA-256(m ‖ 1u32) ‖ …, packed
/// MSB-first into ⌈bits/8⌉ bytes with unused trailing bits cleared.
pub fn kdf(message: &[u8], bits: usize) -> Result<Vec<u8>> {
    if bits == 0 {
        return Err(Error::Domain("kdf output length must be positive"));
    }
    let nbytes = bits.div_ceil(8);
    let mut out = Vec::with_capacity(nbytes + 32);
    let mut block = 0u32;
    while out.len() < nbytes {
        let mut h = Sha256::new();
        h.update(message);
        h.update(block.to_be_bytes());
        out.extend_from_slice(&h.finalize());
        block += 1;
    }
    out.truncate(nbytes);
    let spare = nbytes * 8 - bits;
    if spare > 0 {
        let last = out.last_mut().expect("nonempty");
        *last &= 0xffu8 << spare;
    }
    Ok(out)
}

/// The KDF output read as a big-endian `bits`-bit integer.
pub fn kdf_nat(message: &[u8], bits: usize) -> Result<Nat> {
    let bytes = kdf(message, bits)?;
    let spare = bytes.len() * 8 - bits;
    Ok(Nat::from_bytes_be(&bytes) >> spare)
}

fn candidate(tag: u8, m: &[u8], i: u64, bits: usize) -> Result<Nat> {
    let suffix = counter_suffix(i);
    let mut input = Vec::with_capacity(1 + m.len() + suffix.len());
    input.push(tag);
    input.extend_from_slice(m);
    input.extend_from_slice(&suffix);
    kdf_nat(&input, bits)
}

/// Result of a rejection loop along with the number of KDF draws it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Draw {
    pub value: Nat,
    pub iterations: usize,
}

fn rejection_loop(tag: u8, m: &[u8], n: &Nat, accept: impl Fn(&Nat) -> bool) -> Result<Draw> {
    if *n < Nat::from(2u8) {
        return Err(Error::Domain("hash modulus must be at least 2"));
    }
    let bits = n.bits() as usize;
    for i in 0..MAX_ITERATIONS {
        let k = candidate(tag, m, i as u64, bits)?;
        if accept(&k) {
            return Ok(Draw {
                value: k,
                iterations: i + 1,
            });
        }
    }
    Err(Error::IterationCap(MAX_ITERATIONS))
}

pub fn hash_scalar_draw(m: &[u8], n: &Nat) -> Result<Draw> {
    rejection_loop(TAG_SCALAR, m, n, |k| k < n)
}

/// h(m) ∈ {0, …, n − 1}.
pub fn hash_scalar(m: &[u8], n: &Nat) -> Result<Nat> {
    hash_scalar_draw(m, n).map(|d| d.value)
}

/// The multiplier k ∈ {1, …, n − 1} with H(m) = k·P.
pub fn map_to_point_draw(m: &[u8], n: &Nat) -> Result<Draw> {
    rejection_loop(TAG_POINT, m, n, |k| !k.is_zero() && k < n)
}

/// H(m) = k·P for the first KDF candidate k with 0 < k < n.
pub fn map_to_point(m: &[u8], base: &PointFp, n: &Nat, curve: &CurveParams) -> Result<PointFp> {
    let draw = map_to_point_draw(m, n)?;
    instrument::count_hash_to_point();
    Ok(curve.scalar_mul_uncounted(&draw.value, base))
}
