use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{mod_inv, Fp2, Nat};
use crate::error::{Error, Result};

/// Element of F_p or F_p². The modulus travels with each call instead of
/// living in the element.
pub trait FieldElement: Clone + PartialEq + Eq + Debug {
    fn zero_element() -> Self;
    fn one_element() -> Self;
    /// Embeds a residue mod p.
    fn from_base(x: &Nat, p: &Nat) -> Self;
    fn is_zero_element(&self) -> bool;
    fn add_mod(&self, rhs: &Self, p: &Nat) -> Self;
    fn sub_mod(&self, rhs: &Self, p: &Nat) -> Self;
    fn mul_mod(&self, rhs: &Self, p: &Nat) -> Self;
    fn neg_mod(&self, p: &Nat) -> Self;
    fn inv_mod(&self, p: &Nat) -> Result<Self>;

    fn square_mod(&self, p: &Nat) -> Self {
        self.mul_mod(self, p)
    }

    fn small_mul(&self, k: u32, p: &Nat) -> Self {
        self.mul_mod(&Self::from_base(&Nat::from(k), p), p)
    }
}

impl FieldElement for Nat {
    fn zero_element() -> Self {
        Zero::zero()
    }

    fn one_element() -> Self {
        One::one()
    }

    fn from_base(x: &Nat, p: &Nat) -> Self {
        x % p
    }

    fn is_zero_element(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_mod(&self, rhs: &Self, p: &Nat) -> Self {
        (self + rhs) % p
    }

    fn sub_mod(&self, rhs: &Self, p: &Nat) -> Self {
        if self >= rhs {
            (self - rhs) % p
        } else {
            (p - (rhs - self) % p) % p
        }
    }

    fn mul_mod(&self, rhs: &Self, p: &Nat) -> Self {
        (self * rhs) % p
    }

    fn neg_mod(&self, p: &Nat) -> Self {
        (p - self % p) % p
    }

    fn inv_mod(&self, p: &Nat) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        mod_inv(self, p)
    }
}

impl FieldElement for Fp2 {
    fn zero_element() -> Self {
        Fp2::zero()
    }

    fn one_element() -> Self {
        Fp2::one()
    }

    fn from_base(x: &Nat, p: &Nat) -> Self {
        Fp2::new(x % p, <Nat as Zero>::zero())
    }

    fn is_zero_element(&self) -> bool {
        Fp2::is_zero(self)
    }

    fn add_mod(&self, rhs: &Self, p: &Nat) -> Self {
        self.add(rhs, p)
    }

    fn sub_mod(&self, rhs: &Self, p: &Nat) -> Self {
        self.sub(rhs, p)
    }

    fn mul_mod(&self, rhs: &Self, p: &Nat) -> Self {
        self.mul(rhs, p)
    }

    fn neg_mod(&self, p: &Nat) -> Self {
        self.neg(p)
    }

    fn inv_mod(&self, p: &Nat) -> Result<Self> {
        self.inv(p)
    }

    fn square_mod(&self, p: &Nat) -> Self {
        self.square(p)
    }
}
