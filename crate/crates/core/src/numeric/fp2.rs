//! The quadratic extension F_p² = F_p[i]/(i² + 1), valid for p ≡ 3 (mod 4).

use std::fmt;

use num_traits::{One, Zero};

use super::{mod_inv, Nat};
use crate::error::{Error, Result};

/// `u + v·i` with both coordinates reduced mod p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub u: Nat,
    pub v: Nat,
}

impl fmt::Debug for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.u, self.v)
    }
}

fn sub_reduced(a: &Nat, b: &Nat, p: &Nat) -> Nat {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

impl Fp2 {
    pub fn new(u: Nat, v: Nat) -> Self {
        Fp2 { u, v }
    }

    pub fn zero() -> Self {
        Fp2::new(Nat::zero(), Nat::zero())
    }

    pub fn one() -> Self {
        Fp2::new(Nat::one(), Nat::zero())
    }

    /// The square root of −1.
    pub fn i() -> Self {
        Fp2::new(Nat::zero(), Nat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn add(&self, rhs: &Fp2, p: &Nat) -> Fp2 {
        Fp2::new((&self.u + &rhs.u) % p, (&self.v + &rhs.v) % p)
    }

    pub fn sub(&self, rhs: &Fp2, p: &Nat) -> Fp2 {
        Fp2::new(sub_reduced(&self.u, &rhs.u, p), sub_reduced(&self.v, &rhs.v, p))
    }

    pub fn neg(&self, p: &Nat) -> Fp2 {
        Fp2::zero().sub(self, p)
    }

    /// Complex conjugate `u − v·i`; this is also the p-power Frobenius.
    pub fn conj(&self, p: &Nat) -> Fp2 {
        Fp2::new(self.u.clone(), sub_reduced(&Nat::zero(), &self.v, p) % p)
    }

    pub fn mul(&self, rhs: &Fp2, p: &Nat) -> Fp2 {
        // Karatsuba: (u1 + v1)(u2 + v2) − u1u2 − v1v2 = u1v2 + u2v1
        let uu = &self.u * &rhs.u;
        let vv = &self.v * &rhs.v;
        let cross = (&self.u + &self.v) * (&rhs.u + &rhs.v) - &uu - &vv;
        let re = sub_reduced(&(uu % p), &(vv % p), p);
        Fp2::new(re % p, cross % p)
    }

    pub fn square(&self, p: &Nat) -> Fp2 {
        // (u + vi)² = (u + v)(u − v) + 2uv·i
        let re = (&self.u + &self.v) * sub_reduced(&self.u, &self.v, p);
        let im = (&self.u * &self.v) << 1usize;
        Fp2::new(re % p, im % p)
    }

    /// Inverse through the norm: (u − vi)/(u² + v²).
    pub fn inv(&self, p: &Nat) -> Result<Fp2> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = (&self.u * &self.u + &self.v * &self.v) % p;
        let t = mod_inv(&norm, p)?;
        let c = self.conj(p);
        Ok(Fp2::new((&c.u * &t) % p, (&c.v * &t) % p))
    }

    /// Square-and-multiply, most significant bit first.
    pub fn pow(&self, e: &Nat, p: &Nat) -> Fp2 {
        let mut acc = Fp2::one();
        for i in (0..e.bits()).rev() {
            acc = acc.square(p);
            if e.bit(i) {
                acc = acc.mul(self, p);
            }
        }
        acc
    }
}
