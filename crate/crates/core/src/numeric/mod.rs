//! Natural-number and modular arithmetic over arbitrary-precision integers.
//!
//! `Nat` is num-bigint's `BigUint`. Everything here is a pure function of its
//! arguments; primality testing derives its witnesses from the candidate
//! itself, so no external randomness is consumed.

mod field;
mod fp2;

pub use field::FieldElement;
pub use fp2::Fp2;

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Nat = BigUint;

/// Default number of Miller-Rabin rounds.
pub const MR_ROUNDS: usize = 64;

const SIEVE_LIMIT: usize = 2000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut composite = vec![false; SIEVE_LIMIT + 1];
        let mut out = Vec::new();
        for i in 2..=SIEVE_LIMIT {
            if !composite[i] {
                out.push(i as u32);
                let mut j = i * i;
                while j <= SIEVE_LIMIT {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Primes ≤ `bound`, taken from the internal sieve (bound ≤ 2000).
pub fn primes_up_to(bound: u32) -> impl Iterator<Item = u32> {
    small_primes().iter().copied().take_while(move |&q| q <= bound)
}

pub fn mod_pow(base: &Nat, exp: &Nat, modulus: &Nat) -> Result<Nat> {
    if *modulus < Nat::from(2u8) {
        return Err(Error::Domain("modulus must be at least 2"));
    }
    Ok(base.modpow(exp, modulus))
}

pub fn mod_inv(x: &Nat, modulus: &Nat) -> Result<Nat> {
    if *modulus < Nat::from(2u8) {
        return Err(Error::Domain("modulus must be at least 2"));
    }
    let x = x % modulus;
    let d = x.gcd(modulus);
    if !d.is_one() {
        return Err(Error::NotInvertible { gcd: d });
    }
    x.modinv(modulus).ok_or(Error::NotInvertible { gcd: d })
}

pub fn gcd(a: &Nat, b: &Nat) -> Nat {
    a.gcd(b)
}

fn check_odd_prime_modulus(p: &Nat) -> Result<()> {
    if *p < Nat::from(3u8) || p.is_even() {
        return Err(Error::Domain("modulus must be an odd prime"));
    }
    Ok(())
}

/// Legendre symbol via Euler's criterion.
pub fn legendre(x: &Nat, p: &Nat) -> Result<i8> {
    check_odd_prime_modulus(p)?;
    let x = x % p;
    if x.is_zero() {
        return Ok(0);
    }
    let e = (p - 1u32) >> 1;
    let t = x.modpow(&e, p);
    Ok(if t.is_one() { 1 } else { -1 })
}

/// Square root modulo a prime p ≡ 3 (mod 4). Returns the smaller of the two
/// roots.
pub fn sqrt_mod(x: &Nat, p: &Nat) -> Result<Nat> {
    check_odd_prime_modulus(p)?;
    if (p % 4u32).to_u32() != Some(3) {
        return Err(Error::Domain("square roots need p ≡ 3 (mod 4)"));
    }
    let x = x % p;
    let e = (p + 1u32) >> 2;
    let z = x.modpow(&e, p);
    if (&z * &z) % p != x {
        return Err(Error::NoSquareRoot);
    }
    let other = (p - &z) % p;
    Ok(z.min(other))
}

fn miller_rabin_round(k: &Nat, km1: &Nat, d: &Nat, s: u64, base: &Nat) -> bool {
    let mut x = base.modpow(d, k);
    if x.is_one() || x == *km1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % k;
        if x == *km1 {
            return true;
        }
        if x.is_one() {
            return false;
        }
    }
    false
}

/// Probabilistic primality test: trial division by small primes, then
/// Miller-Rabin with `rounds` bases. The first bases are the small primes
/// 2, 3, 5, …; the rest are drawn from a generator seeded by a digest of `k`,
/// so the answer is a deterministic function of `(k, rounds)`.
pub fn is_prime(k: &Nat, rounds: usize) -> bool {
    let rounds = rounds.max(1);
    if *k < Nat::from(2u8) {
        return false;
    }
    if let Some(small) = k.to_u64().filter(|&v| v < (SIEVE_LIMIT * SIEVE_LIMIT) as u64) {
        return small_primes()
            .iter()
            .map(|&q| u64::from(q))
            .take_while(|q| q * q <= small)
            .all(|q| small % q != 0);
    }
    for &q in small_primes() {
        let q = Nat::from(q);
        if *k == q {
            return true;
        }
        if (k % &q).is_zero() {
            return false;
        }
    }
    // No factor ≤ SIEVE_LIMIT and k < SIEVE_LIMIT² means k is prime.
    if *k < Nat::from((SIEVE_LIMIT * SIEVE_LIMIT) as u64) {
        return true;
    }

    let km1 = k - 1u32;
    let s = km1.trailing_zeros().expect("k - 1 is nonzero");
    let d = &km1 >> s;

    const FIXED: usize = 12;
    for &q in small_primes().iter().take(rounds.min(FIXED)) {
        if !miller_rabin_round(k, &km1, &d, s, &Nat::from(q)) {
            return false;
        }
    }
    if rounds > FIXED {
        let seed: [u8; 32] = Sha256::digest(k.to_bytes_be()).into();
        let mut rng = ChaCha20Rng::from_seed(seed);
        let two = Nat::from(2u8);
        for _ in FIXED..rounds {
            let base = rng.gen_biguint_range(&two, &km1);
            if !miller_rabin_round(k, &km1, &d, s, &base) {
                return false;
            }
        }
    }
    true
}

/// Smallest prime ≥ k.
pub fn next_prime(k: &Nat) -> Nat {
    let two = Nat::from(2u8);
    if *k <= two {
        return two;
    }
    let mut c = k.clone();
    if c.is_even() {
        c += 1u32;
    }
    while !is_prime(&c, MR_ROUNDS) {
        c += 2u32;
    }
    c
}

/// Lowercase big-endian hex without leading zeros; "0" for zero.
pub fn to_hex(x: &Nat) -> String {
    x.to_str_radix(16)
}

pub fn from_hex(s: &str) -> Result<Nat> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_hexdigit()) {
        return Err(Error::Parse(format!("not a hex number: {s:?}")));
    }
    Nat::parse_bytes(s.as_bytes(), 16).ok_or_else(|| Error::Parse(format!("not a hex number: {s:?}")))
}

/// Parses a decimal literal; used for embedded test vectors.
pub fn from_dec(s: &str) -> Nat {
    Nat::parse_bytes(s.as_bytes(), 10).expect("decimal literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> Nat {
        Nat::from(x)
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(&n(2), &n(5), &n(35)).unwrap(), n(32));
        assert_eq!(mod_pow(&n(123), &n(0), &n(97)).unwrap(), n(1));
        assert!(matches!(mod_pow(&n(2), &n(5), &n(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(&n(1), &n(35)).unwrap(), n(1));
        // exhaustive: the only y in 1..35 with 2y ≡ 1 (mod 35)
        let expected = (1..35u64).find(|y| (2 * y) % 35 == 1).unwrap();
        assert_eq!(expected, 18);
        assert_eq!(mod_inv(&n(2), &n(35)).unwrap(), n(18));
        assert_eq!(mod_inv(&n(5), &n(35)), Err(Error::NotInvertible { gcd: n(5) }));
    }

    #[test]
    fn legendre_examples() {
        let p = n(139);
        assert_eq!(legendre(&n(0), &p).unwrap(), 0);
        assert_eq!(legendre(&n(138), &p).unwrap(), -1);
        assert!((1..139u64).any(|y| y * y % 139 == 30));
        assert_eq!(legendre(&n(30), &p).unwrap(), 1);
        assert!(legendre(&n(3), &n(8)).is_err());
        assert!(legendre(&n(3), &n(2)).is_err());
    }

    #[test]
    fn sqrt_mod_examples() {
        let p = n(139);
        assert_eq!(sqrt_mod(&n(4), &p).unwrap(), n(2));
        let y = (1..70u64).find(|y| y * y % 139 == 30).unwrap();
        assert_eq!(sqrt_mod(&n(30), &p).unwrap(), n(y));
        assert!((0..139u64).all(|y| y * y % 139 != 10));
        assert_eq!(sqrt_mod(&n(10), &p), Err(Error::NoSquareRoot));
        assert!(sqrt_mod(&n(2), &n(13)).is_err());
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&n(139), 64));
        assert!(!is_prime(&n(1), 64));
        assert!(!is_prime(&n(0), 64));
        assert!(is_prime(&n(2), 1));
        // Carmichael numbers and a strong pseudoprime to base 2
        for c in [561u64, 41041, 825265, 3215031751, 2047] {
            assert!(!is_prime(&n(c), 64), "{c}");
        }
        // 2^127 - 1
        let m127 = (Nat::one() << 127usize) - 1u32;
        assert!(is_prime(&m127, 64));
        assert!(!is_prime(&(&m127 * &m127), 64));
    }

    #[test]
    fn next_prime_examples() {
        assert_eq!(next_prime(&n(140)), n(149));
        assert_eq!(next_prime(&n(139)), n(139));
        assert_eq!(next_prime(&n(0)), n(2));
        assert_eq!(next_prime(&n(3)), n(3));
        assert_eq!(next_prime(&n(4)), n(5));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&n(0), &n(17)), n(17));
        assert_eq!(gcd(&n(24), &n(36)), n(12));
        assert_eq!(gcd(&n(0), &n(0)), n(0));
        let phi = n(24);
        assert_eq!(gcd(&(&phi * 3u32), &(&phi * 5u32)), phi);
    }

    #[test]
    fn hex_format() {
        assert_eq!(to_hex(&n(0)), "0");
        assert_eq!(to_hex(&n(255)), "ff");
        assert_eq!(to_hex(&n(4096)), "1000");
        assert_eq!(from_hex("00ff").unwrap(), n(255));
        assert!(from_hex("").is_err());
        assert!(from_hex("xyz").is_err());
        assert!(from_hex("+1").is_err());
    }
}
