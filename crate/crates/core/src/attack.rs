//! Recovering φ(n), and with it the factors of n, from a signing oracle.
//!
//! Anyone who picks (g, a, b) for a modulus n and gets signatures back knows
//! every term of s_i = b·h(m_i) + a − ab except the reduction mod φ(n). The
//! unreduced residuals b·h(m_i) + a − ab − s_i are therefore multiples of
//! φ(n), and their gcd is φ(n) times a usually tiny cofactor. Knowing φ(n)
//! and n, the factors are the roots of x² − (n − φ + 1)x + n.
//!
//! Desk-scale only: `run_reduction` refuses moduli built from primes above
//! 32 bits.

use std::fmt::Write as _;

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::hashing::hash_scalar;
use crate::numeric::{gcd, is_prime, mod_inv, mod_pow, primes_up_to, to_hex, Nat, MR_ROUNDS};
use crate::scheme::{gen_params, PublicKey, SchemeParams, Signature};

pub use oracle::SigningOracle;

/// Largest prime size `run_reduction` accepts.
pub const MAX_BITS: u32 = 32;
/// Bound on the primes divided out of the gcd when it overshoots φ(n).
pub const STRIP_BOUND: u32 = 100;

mod oracle {
    use super::*;
    use crate::hashing::map_to_point;

    /// Stand-in for a signing oracle: it holds the factorization and signs
    /// under any (g, a, b) the caller chooses. Its fields are private to this
    /// module, so the reduction cannot look at p₁ and p₂.
    pub struct SigningOracle {
        params: SchemeParams,
        p1: Nat,
        p2: Nat,
    }

    impl SigningOracle {
        pub fn new(params: SchemeParams, p1: Nat, p2: Nat) -> Self {
            SigningOracle { params, p1, p2 }
        }

        pub fn params(&self) -> &SchemeParams {
            &self.params
        }

        pub fn sign(&self, g: &Nat, a: &Nat, b: &Nat, m: &[u8]) -> Result<Signature> {
            let n = self.params.n();
            let phi = (&self.p1 - 1u32) * (&self.p2 - 1u32);
            let h = hash_scalar(m, n)?;
            let ab = (a * b) % &phi;
            let s = ((b * &h) % &phi + a % &phi + &phi - &ab) % &phi;
            let hm = map_to_point(m, self.params.base(), n, self.params.curve())?;
            let gab = mod_pow(g, &ab, n)?;
            let pt = self.params.curve().scalar_mul(&gab, &hm);
            let sx = pt.x().cloned().ok_or(Error::InvalidKey("signature point at infinity".into()))?;
            Ok(Signature { sx, s })
        }
    }
}

/// Messages, the oracle's signatures on them, and the (g, a, b) the
/// reduction chose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTranscript {
    pub messages: Vec<Vec<u8>>,
    pub signatures: Vec<Signature>,
    pub a: Nat,
    pub b: Nat,
    pub g: Nat,
    pub n: Nat,
}

/// |b·h(m) + a − ab − s| for each signature.
pub fn residuals(t: &OracleTranscript) -> Result<Vec<Nat>> {
    if t.messages.len() != t.signatures.len() {
        return Err(Error::Domain("transcript lengths differ"));
    }
    let (a, b) = (BigInt::from(t.a.clone()), BigInt::from(t.b.clone()));
    t.messages
        .iter()
        .zip(&t.signatures)
        .map(|(m, sig)| {
            let h = BigInt::from(hash_scalar(m, &t.n)?);
            let d = &b * h + &a - &a * &b - BigInt::from(sig.s.clone());
            Ok(d.abs().to_biguint().expect("absolute value"))
        })
        .collect()
}

/// Running gcd of the residuals, one entry per signature.
pub fn gcd_trajectory(t: &OracleTranscript) -> Result<Vec<Nat>> {
    let mut acc = Nat::zero();
    Ok(residuals(t)?
        .into_iter()
        .map(|d| {
            acc = gcd(&acc, &d);
            acc.clone()
        })
        .collect())
}

/// gcd of all residuals; always a multiple of φ(n).
pub fn phi_from_signatures(t: &OracleTranscript) -> Result<Nat> {
    let d = gcd_trajectory(t)?.pop().unwrap_or_default();
    if d.is_zero() {
        return Err(Error::Inconclusive);
    }
    Ok(d)
}

/// Solves x² − (n − φ + 1)x + n = 0 and returns the two prime roots in
/// increasing order.
pub fn factor_from_phi(n: &Nat, phi: &Nat) -> Result<(Nat, Nat)> {
    if phi >= n || phi.is_zero() {
        return Err(Error::InvalidPhi);
    }
    let sum = n - phi + 1u32;
    let sq = &sum * &sum;
    let four_n = n << 2usize;
    if sq < four_n {
        return Err(Error::InvalidPhi);
    }
    let disc = sq - four_n;
    let root = disc.sqrt();
    if &root * &root != disc || sum < root || (&sum - &root).is_odd() {
        return Err(Error::InvalidPhi);
    }
    let p1 = (&sum - &root) >> 1usize;
    let p2 = (&sum + &root) >> 1usize;
    if p1 <= Nat::one() || &p1 * &p2 != *n || !is_prime(&p1, MR_ROUNDS) || !is_prime(&p2, MR_ROUNDS) {
        return Err(Error::InvalidPhi);
    }
    Ok((p1, p2))
}

/// Divisors of d built from primes ≤ `bound`, ascending.
fn smooth_divisors(d: &Nat, bound: u32) -> Vec<Nat> {
    let mut divisors = vec![Nat::one()];
    let mut rest = d.clone();
    for q in primes_up_to(bound) {
        let q = Nat::from(q);
        let mut e = 0usize;
        while !rest.is_zero() && (&rest % &q).is_zero() {
            rest /= &q;
            e += 1;
        }
        if e == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(divisors.len() * (e + 1));
        for base in &divisors {
            let mut acc = base.clone();
            for _ in 0..=e {
                next.push(acc.clone());
                acc *= &q;
            }
        }
        divisors = next;
    }
    divisors.sort();
    divisors
}

/// Outcome of dividing small cofactors out of the gcd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovery {
    pub phi: Nat,
    pub factors: (Nat, Nat),
    pub cofactor: Nat,
    pub attempts: usize,
}

/// Tries d/c for every `STRIP_BOUND`-smooth divisor c of d, smallest first,
/// until one of them factors n.
pub fn recover_factors(n: &Nat, d: &Nat) -> Result<Recovery> {
    let mut attempts = 0;
    for c in smooth_divisors(d, STRIP_BOUND) {
        let candidate = d / &c;
        if candidate >= *n {
            continue;
        }
        attempts += 1;
        if let Ok(factors) = factor_from_phi(n, &candidate) {
            return Ok(Recovery {
                phi: candidate,
                factors,
                cofactor: c,
                attempts,
            });
        }
    }
    Err(Error::InvalidPhi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub bits: u32,
    pub signatures: usize,
    pub n: Nat,
    pub success: bool,
    pub phi: Option<Nat>,
    pub factors: Option<(Nat, Nat)>,
    pub gcd_trajectory: Vec<Nat>,
    pub cofactor: Option<Nat>,
    pub attempts: usize,
    pub failure: Option<String>,
}

impl ReductionReport {
    /// `field = value` lines, numbers in decimal.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        let opt = |v: &Option<Nat>| v.as_ref().map_or("-".to_string(), Nat::to_string);
        let _ = writeln!(out, "bits = {}", self.bits);
        let _ = writeln!(out, "signatures = {}", self.signatures);
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "success = {}", self.success);
        let _ = writeln!(out, "phi = {}", opt(&self.phi));
        let (f1, f2) = match &self.factors {
            Some((a, b)) => (a.to_string(), b.to_string()),
            None => ("-".into(), "-".into()),
        };
        let _ = writeln!(out, "p1 = {f1}");
        let _ = writeln!(out, "p2 = {f2}");
        let traj: Vec<String> = self.gcd_trajectory.iter().map(Nat::to_string).collect();
        let _ = writeln!(out, "gcd_trajectory = {}", traj.join(","));
        let _ = writeln!(out, "cofactor = {}", opt(&self.cofactor));
        let _ = writeln!(out, "attempts = {}", self.attempts);
        let _ = writeln!(out, "failure = {}", self.failure.as_deref().unwrap_or("-"));
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "reduction at {} bits with {} signatures, n = {} (0x{})\n",
            self.bits,
            self.signatures,
            self.n,
            to_hex(&self.n)
        );
        for (i, g) in self.gcd_trajectory.iter().enumerate() {
            let _ = writeln!(out, "  gcd after {} signature(s): {}", i + 1, g);
        }
        match (&self.factors, &self.phi) {
            (Some((p1, p2)), Some(phi)) => {
                let _ = writeln!(
                    out,
                    "  recovered phi(n) = {phi} after {} attempt(s); n = {p1} * {p2}",
                    self.attempts
                );
            }
            _ => {
                let _ = writeln!(
                    out,
                    "  failed: {}",
                    self.failure.as_deref().unwrap_or("unknown reason")
                );
            }
        }
        out
    }
}

/// Builds the public key (g, P, g^a·P, g^(a−ab)·P, g^b mod n, n) from n
/// alone; g^(−ab) is an inverse mod n, so φ(n) is never needed.
pub fn forge_public_key(params: &SchemeParams, g: &Nat, a: &Nat, b: &Nat) -> Result<PublicKey> {
    let n = params.n();
    let curve = params.curve();
    let ga = mod_pow(g, a, n)?;
    let gab = mod_pow(g, &(a * b), n)?;
    let ga_ab = (&ga * mod_inv(&gab, n)?) % n;
    let q = curve.scalar_mul_uncounted(&ga, params.base());
    let big_r = curve.scalar_mul_uncounted(&ga_ab, params.base());
    PublicKey::new(params.clone(), g.clone(), q, big_r, mod_pow(g, b, n)?)
}

/// Runs the reduction against `oracle` on `count` random messages.
pub fn attack_oracle<R: Rng + ?Sized>(oracle: &SigningOracle, bits: u32, count: usize, rng: &mut R) -> Result<ReductionReport> {
    let params = oracle.params();
    let n = params.n().clone();
    let two = Nat::from(2u8);
    let g = loop {
        let g = rng.gen_biguint_range(&two, &(&n - 1u32));
        if gcd(&g, &n).is_one() {
            break g;
        }
    };
    let a = rng.gen_biguint_range(&Nat::one(), &n);
    let b = rng.gen_biguint_range(&Nat::one(), &n);
    let public = forge_public_key(params, &g, &a, &b)?;

    let mut messages = Vec::with_capacity(count);
    let mut signatures = Vec::with_capacity(count);
    for _ in 0..count {
        let mut m = vec![0u8; 16];
        rng.fill(&mut m[..]);
        let sig = oracle.sign(&g, &a, &b, &m)?;
        debug_assert!(crate::scheme::is_valid(&public, &m, &sig));
        messages.push(m);
        signatures.push(sig);
    }
    let transcript = OracleTranscript {
        messages,
        signatures,
        a,
        b,
        g,
        n: n.clone(),
    };

    let gcd_trajectory = gcd_trajectory(&transcript)?;
    let mut report = ReductionReport {
        bits,
        signatures: count,
        n: n.clone(),
        success: false,
        phi: None,
        factors: None,
        gcd_trajectory,
        cofactor: None,
        attempts: 0,
        failure: None,
    };
    let d = match phi_from_signatures(&transcript) {
        Ok(d) => d,
        Err(e) => {
            report.failure = Some(e.to_string());
            return Ok(report);
        }
    };
    match recover_factors(&n, &d) {
        Ok(rec) => {
            report.success = &rec.factors.0 * &rec.factors.1 == n;
            report.attempts = rec.attempts;
            report.phi = Some(rec.phi);
            report.cofactor = Some(rec.cofactor);
            report.factors = Some(rec.factors);
        }
        Err(e) => {
            report.attempts = smooth_divisors(&d, STRIP_BOUND).len();
            report.failure = Some(e.to_string());
        }
    }
    Ok(report)
}

/// Generates fresh parameters with `bits`-bit primes, signs `count` random
/// messages through the oracle and attempts to factor n.
pub fn run_reduction<R: Rng + ?Sized>(bits: u32, count: usize, rng: &mut R) -> Result<ReductionReport> {
    if bits > MAX_BITS {
        return Err(Error::Domain("reduction demo is capped at 32-bit primes"));
    }
    let generated = gen_params(bits, rng)?;
    let oracle = SigningOracle::new(generated.params, generated.p1, generated.p2);
    attack_oracle(&oracle, bits, count, rng)
}
