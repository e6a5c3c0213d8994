//! Parameter generation, key generation, signing and verification.
//!
//! Public key (g, P, Q, R, r, n) with Q = g^a·P, R = g^(a−ab)·P and
//! r = g^b mod n; private key (a, b, p₁, p₂). A signature on m is
//! (x(S), s) with
//!
//! ```text
//! S = g^(ab)·H(m)        s = b·h(m) + a − ab  (mod φ(n))
//! ```
//!
//! and it verifies when e_n(±g^s·Σ, P) = e_n(r^h(m)·H(m), Q) and
//! g^s·P = r^h(m)·R, where Σ is the point recovered from x(S). All exponent
//! arithmetic is done in Z/φ(n); in particular a − ab is reduced there.

use num_bigint::RandBigInt;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::curve::{CurveParams, PointFp};
use crate::error::{Error, Result};
use crate::hashing::{hash_scalar, map_to_point};
use crate::numeric::{gcd, is_prime, mod_pow, next_prime, Fp2, Nat, MR_ROUNDS};
use crate::pairing::PairingContext;

/// Attempts per stage of `gen_params` before giving up.
pub const GEN_ATTEMPTS: usize = 100_000;

/// Curve, subgroup order n = p₁p₂ and a base point of order n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    pairing: PairingContext,
    base: PointFp,
}

impl SchemeParams {
    /// Validates p + 1 = 4n, that P lies on the curve with n·P = O, and that
    /// e_n(P, P) is a nontrivial n-th root of unity.
    pub fn new(curve: CurveParams, n: Nat, base: PointFp) -> Result<Self> {
        if curve.p() + 1u32 != &n << 2usize {
            return Err(Error::InvalidKey("p + 1 must equal 4n".into()));
        }
        if base.is_infinity() || !curve.is_on_curve(&base) {
            return Err(Error::InvalidKey("base point is not an affine curve point".into()));
        }
        if !curve.scalar_mul_uncounted(&n, &base).is_infinity() {
            return Err(Error::InvalidKey("base point order does not divide n".into()));
        }
        let pairing = PairingContext::new(curve, n)?;
        let params = SchemeParams { pairing, base };
        let z = params.self_pairing()?;
        if z.is_one() || !params.pairing.order_divides(&z, params.n()) {
            return Err(Error::InvalidKey("e_n(P, P) is not a nontrivial n-th root of unity".into()));
        }
        Ok(params)
    }

    #[cfg(test)]
    pub(crate) fn with_pairing(mut self, pairing: PairingContext) -> Self {
        self.pairing = pairing;
        self
    }

    pub fn curve(&self) -> &CurveParams {
        self.pairing.curve()
    }

    pub fn pairing(&self) -> &PairingContext {
        &self.pairing
    }

    pub fn n(&self) -> &Nat {
        self.pairing.n()
    }

    pub fn base(&self) -> &PointFp {
        &self.base
    }

    pub fn self_pairing(&self) -> Result<Fp2> {
        self.pairing.e_n(&self.base, &self.base)
    }

    /// Checks that e_n(P, P) has order exactly n = p₁p₂.
    pub fn is_primitive(&self, p1: &Nat, p2: &Nat) -> Result<bool> {
        let n = self.n();
        let z = self.self_pairing()?;
        Ok(self.pairing.order_divides(&z, n)
            && !self.pairing.order_divides(&z, &(n / p1))
            && !self.pairing.order_divides(&z, &(n / p2)))
    }
}

/// Output of `gen_params`: the public parameters and the secret factors of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedParams {
    pub params: SchemeParams,
    pub p1: Nat,
    pub p2: Nat,
}

fn random_bits<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Nat {
    let top = Nat::one() << (bits - 1);
    rng.gen_biguint_below(&top) + top
}

fn random_prime<R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<Nat> {
    for _ in 0..GEN_ATTEMPTS {
        let c = random_bits(bits, rng);
        if is_prime(&c, MR_ROUNDS) {
            return Ok(c);
        }
    }
    Err(Error::Generation("no prime found for p1"))
}

/// Draws an l-bit prime p₁ and walks p₂ up the primes from a random l-bit
/// start until p = 4p₁p₂ − 1 is prime, then picks a base point of order n
/// on y² = x³ + x over F_p.
pub fn gen_params<R: Rng + ?Sized>(bits: u32, rng: &mut R) -> Result<GeneratedParams> {
    if bits < 3 {
        return Err(Error::Domain("prime size must be at least 3 bits"));
    }
    let bits = u64::from(bits);
    let p1 = random_prime(bits, rng)?;

    let mut p2 = next_prime(&random_bits(bits, rng));
    let mut found = None;
    for _ in 0..GEN_ATTEMPTS {
        if p2.bits() > bits + 1 {
            p2 = next_prime(&random_bits(bits, rng));
            continue;
        }
        if p2 != p1 {
            let p = ((&p1 * &p2) << 2usize) - 1u32;
            if is_prime(&p, MR_ROUNDS) {
                found = Some(p);
                break;
            }
        }
        p2 = next_prime(&(&p2 + 1u32));
    }
    let p = found.ok_or(Error::Generation("4·p1·p2 − 1 never became prime"))?;
    let n = &p1 * &p2;
    let curve = CurveParams::new(p, Nat::one())?;
    let pairing = PairingContext::new(curve.clone(), n.clone())?;
    let four = Nat::from(4u8);
    let (c1, c2) = (&n / &p1, &n / &p2);

    for _ in 0..GEN_ATTEMPTS {
        let t = curve.random_point(rng);
        let base = curve.scalar_mul_uncounted(&four, &t);
        if curve.scalar_mul_uncounted(&c1, &base).is_infinity()
            || curve.scalar_mul_uncounted(&c2, &base).is_infinity()
        {
            continue;
        }
        let z = pairing.e_n(&base, &base)?;
        let primitive = pairing.order_divides(&z, &n)
            && !pairing.order_divides(&z, &c1)
            && !pairing.order_divides(&z, &c2);
        if primitive {
            let params = SchemeParams::new(curve, n, base)?;
            return Ok(GeneratedParams { params, p1, p2 });
        }
    }
    Err(Error::Generation("no base point with a primitive self-pairing"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicKey {
    params: SchemeParams,
    g: Nat,
    q: PointFp,
    big_r: PointFp,
    r: Nat,
}

impl PublicKey {
    /// Validates 1 < g < n − 1 with gcd(g, n) = 1, 0 < r < n, and that Q and
    /// R are affine points killed by n.
    pub fn new(params: SchemeParams, g: Nat, q: PointFp, big_r: PointFp, r: Nat) -> Result<Self> {
        let n = params.n();
        let curve = params.curve();
        if g <= Nat::one() || g >= n - 1u32 || !gcd(&g, n).is_one() {
            return Err(Error::InvalidKey("g must be a unit in [2, n − 2]".into()));
        }
        if r.is_zero() || &r >= n {
            return Err(Error::InvalidKey("r must lie in (0, n)".into()));
        }
        for (name, pt) in [("Q", &q), ("R", &big_r)] {
            if pt.is_infinity() || !curve.is_on_curve(pt) {
                return Err(Error::InvalidKey(format!("{name} is not an affine curve point")));
            }
            if !curve.scalar_mul_uncounted(n, pt).is_infinity() {
                return Err(Error::InvalidKey(format!("{name} is not in the order-n subgroup")));
            }
        }
        Ok(PublicKey {
            params,
            g,
            q,
            big_r,
            r,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn g(&self) -> &Nat {
        &self.g
    }

    pub fn n(&self) -> &Nat {
        self.params.n()
    }

    /// The base point P.
    pub fn base(&self) -> &PointFp {
        self.params.base()
    }

    /// Q = g^a·P.
    pub fn q(&self) -> &PointFp {
        &self.q
    }

    /// R = g^(a−ab)·P.
    pub fn big_r(&self) -> &PointFp {
        &self.big_r
    }

    /// r = g^b mod n.
    pub fn r(&self) -> &Nat {
        &self.r
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PrivateKey {
    a: Nat,
    b: Nat,
    p1: Nat,
    p2: Nat,
    phi: Nat,
}

impl std::fmt::Debug for PrivateKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PrivateKey { .. }")
    }
}

impl PrivateKey {
    /// Requires 1 ≤ a, b ≤ φ − 1 where φ = (p₁ − 1)(p₂ − 1).
    pub fn new(p1: Nat, p2: Nat, a: Nat, b: Nat) -> Result<Self> {
        if p1 < Nat::from(2u8) || p2 < Nat::from(2u8) {
            return Err(Error::InvalidKey("prime factors must be at least 2".into()));
        }
        let phi = (&p1 - 1u32) * (&p2 - 1u32);
        for (name, v) in [("a", &a), ("b", &b)] {
            if v.is_zero() || v >= &phi {
                return Err(Error::InvalidKey(format!("{name} must lie in [1, φ(n) − 1]")));
            }
        }
        Ok(PrivateKey { a, b, p1, p2, phi })
    }

    pub fn a(&self) -> &Nat {
        &self.a
    }

    pub fn b(&self) -> &Nat {
        &self.b
    }

    pub fn p1(&self) -> &Nat {
        &self.p1
    }

    pub fn p2(&self) -> &Nat {
        &self.p2
    }

    pub fn phi(&self) -> &Nat {
        &self.phi
    }

    /// (a − ab) mod φ(n).
    pub fn a_minus_ab(&self) -> Nat {
        let ab = (&self.a * &self.b) % &self.phi;
        (&self.a + &self.phi - ab) % &self.phi
    }

    /// ab mod φ(n).
    pub fn ab(&self) -> Nat {
        (&self.a * &self.b) % &self.phi
    }
}

/// (x(S), s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub sx: Nat,
    pub s: Nat,
}

/// Derives the public key for fixed (g, a, b).
pub fn keygen_with(params: SchemeParams, p1: Nat, p2: Nat, g: Nat, a: Nat, b: Nat) -> Result<(PublicKey, PrivateKey)> {
    if &p1 * &p2 != *params.n() {
        return Err(Error::InvalidKey("p1·p2 does not match n".into()));
    }
    let private = PrivateKey::new(p1, p2, a, b)?;
    let n = params.n().clone();
    let curve = params.curve().clone();
    let r = mod_pow(&g, private.b(), &n)?;
    let ga = mod_pow(&g, private.a(), &n)?;
    let ga_ab = mod_pow(&g, &private.a_minus_ab(), &n)?;
    let q = curve.scalar_mul_uncounted(&ga, params.base());
    let big_r = curve.scalar_mul_uncounted(&ga_ab, params.base());
    let public = PublicKey::new(params, g, q, big_r, r)?;
    Ok((public, private))
}

/// Draws g ∈ [2, n − 2] coprime to n and a, b ∈ [1, φ(n) − 1].
pub fn keygen<R: Rng + ?Sized>(params: SchemeParams, p1: Nat, p2: Nat, rng: &mut R) -> Result<(PublicKey, PrivateKey)> {
    let n = params.n().clone();
    if &p1 * &p2 != n {
        return Err(Error::InvalidKey("p1·p2 does not match n".into()));
    }
    let phi = (&p1 - 1u32) * (&p2 - 1u32);
    if n < Nat::from(5u8) || phi < Nat::from(2u8) {
        return Err(Error::InvalidKey("modulus too small".into()));
    }
    let g = loop {
        let g = rng.gen_biguint_range(&Nat::from(2u8), &(&n - 1u32));
        if gcd(&g, &n).is_one() {
            break g;
        }
    };
    let a = rng.gen_biguint_range(&Nat::one(), &phi);
    let b = rng.gen_biguint_range(&Nat::one(), &phi);
    keygen_with(params, p1, p2, g, a, b)
}

/// Deterministic signature on the raw message bytes. Uses one hash-to-point
/// and one scalar multiplication; no pairings.
pub fn sign(private: &PrivateKey, public: &PublicKey, m: &[u8]) -> Result<Signature> {
    let params = public.params();
    let n = params.n();
    if private.p1() * private.p2() != *n {
        return Err(Error::InvalidKey("private key does not match the public modulus".into()));
    }
    let phi = private.phi();
    let h = hash_scalar(m, n)?;
    let hm = map_to_point(m, params.base(), n, params.curve())?;
    let gab = mod_pow(public.g(), &private.ab(), n)?;
    let s_pt = params.curve().scalar_mul(&gab, &hm);
    let sx = s_pt.x().cloned().ok_or(Error::InvalidKey("signature point at infinity".into()))?;
    let s = ((private.b() * &h) % phi + private.a_minus_ab()) % phi;
    Ok(Signature { sx, s })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("x-coordinate is not on the curve")]
    NotOnCurve,
    #[error("pairing equation does not hold")]
    PairingMismatch,
    #[error("g^s·P differs from r^h(m)·R")]
    BaseEquationMismatch,
    #[error("verification aborted: {0}")]
    Internal(Error),
}

/// Checks e_n(±g^s·Σ, P) = e_n(r^h(m)·H(m), Q) and g^s·P = r^h(m)·R.
/// Two pairings and four scalar multiplications besides hashing.
pub fn verify(public: &PublicKey, m: &[u8], sig: &Signature) -> std::result::Result<(), Rejection> {
    let params = public.params();
    let curve = params.curve();
    let pairing = params.pairing();
    let n = params.n();
    let p = curve.p();

    let sigma = curve.decompress(&sig.sx).map_err(|_| Rejection::NotOnCurve)?;
    let h = hash_scalar(m, n).map_err(Rejection::Internal)?;
    let hm = map_to_point(m, params.base(), n, curve).map_err(Rejection::Internal)?;
    let w = mod_pow(public.g(), &sig.s, n).map_err(Rejection::Internal)?;
    let z = mod_pow(public.r(), &h, n).map_err(Rejection::Internal)?;

    let lhs = pairing
        .e_n(&curve.scalar_mul(&w, &sigma), params.base())
        .map_err(Rejection::Internal)?;
    let rhs = pairing
        .e_n(&curve.scalar_mul(&z, &hm), public.q())
        .map_err(Rejection::Internal)?;
    // e_n(−X, Y) = e_n(X, Y)⁻¹ covers the sign ambiguity of Σ.
    let lhs_inv = lhs.inv(p).map_err(Rejection::Internal)?;
    if rhs != lhs && rhs != lhs_inv {
        return Err(Rejection::PairingMismatch);
    }

    if curve.scalar_mul(&w, params.base()) != curve.scalar_mul(&z, public.big_r()) {
        return Err(Rejection::BaseEquationMismatch);
    }
    Ok(())
}

/// Convenience wrapper: `true` on accept.
pub fn is_valid(public: &PublicKey, m: &[u8], sig: &Signature) -> bool {
    verify(public, m, sig).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn private_key_ranges() {
        let (p1, p2) = (Nat::from(5u8), Nat::from(7u8));
        assert!(PrivateKey::new(p1.clone(), p2.clone(), Nat::from(0u8), Nat::from(3u8)).is_err());
        assert!(PrivateKey::new(p1.clone(), p2.clone(), Nat::from(24u8), Nat::from(3u8)).is_err());
        let k = PrivateKey::new(p1, p2, Nat::from(23u8), Nat::from(5u8)).unwrap();
        assert_eq!(k.phi(), &Nat::from(24u8));
        // 23 − 115 = −92 ≡ 4 (mod 24)
        assert_eq!(k.a_minus_ab(), Nat::from(4u8));
    }

    #[test]
    fn gen_params_rejects_small_sizes() {
        let mut rng = rand::thread_rng();
        assert!(matches!(gen_params(2, &mut rng), Err(Error::Domain(_))));
    }
}
