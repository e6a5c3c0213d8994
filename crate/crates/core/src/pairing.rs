//! Reduced Tate pairing on the supersingular curve y² = x³ + Ax with
//! p ≡ 3 (mod 4), and the symmetric pairing e_n(X, Y) = ε_n(X, φ(Y)) built
//! from the distortion map φ(x, y) = (−x, iy).
//!
//! The embedding degree is 2, so pairing values live in F_p². Miller's loop
//! runs over the bits of n with vertical lines dropped: every vertical line
//! evaluated at a point whose x-coordinate lies in F_p gives an F_p value,
//! and those are sent to 1 by the final exponent (p² − 1)/n, a multiple of
//! p − 1.

use num_integer::Integer;
use num_traits::Zero;

use crate::curve::{CurveParams, Point, PointFp, PointFp2};
use crate::error::{Error, Result};
use crate::instrument;
use crate::numeric::{FieldElement, Fp2, Nat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingContext {
    curve: CurveParams,
    n: Nat,
    cofactor: Nat,
    final_exp: Nat,
}

impl PairingContext {
    /// Requires n | p + 1.
    pub fn new(curve: CurveParams, n: Nat) -> Result<Self> {
        let p = curve.p();
        let (cofactor, rem) = (p + 1u32).div_rem(&n);
        if n < Nat::from(2u8) || !rem.is_zero() {
            return Err(Error::Domain("subgroup order must divide p + 1"));
        }
        let final_exp = (p - 1u32) * &cofactor;
        Ok(PairingContext {
            curve,
            n,
            cofactor,
            final_exp,
        })
    }

    pub fn curve(&self) -> &CurveParams {
        &self.curve
    }

    pub fn n(&self) -> &Nat {
        &self.n
    }

    /// (p² − 1)/n.
    pub fn final_exp(&self) -> &Nat {
        &self.final_exp
    }

    #[cfg(test)]
    pub(crate) fn with_cofactor(mut self, cofactor: Nat) -> Self {
        self.cofactor = cofactor;
        self
    }

    /// φ(x, y) = (−x, iy).
    pub fn distortion(&self, pt: &PointFp) -> PointFp2 {
        let p = self.curve.p();
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(
                Fp2::new(x.neg_mod(p), Nat::zero()),
                Fp2::new(Nat::zero(), y % p),
            ),
        }
    }

    /// Miller function f_{n,P}(Q) with vertical lines omitted, before the
    /// final exponentiation.
    pub fn miller_loop(&self, pt: &PointFp, q: &PointFp2) -> Result<Fp2> {
        let p = self.curve.p();
        let (xq, yq) = match q {
            Point::Infinity => return Ok(Fp2::one()),
            Point::Affine { x, y } => (x, y),
        };
        if !xq.v.is_zero() {
            return Err(Error::Domain("evaluation point needs an F_p x-coordinate"));
        }
        if pt.is_infinity() {
            return Ok(Fp2::one());
        }

        // l(Q) = (y_Q − y_T) − λ(x_Q − x_T) for the non-vertical line of
        // slope λ through T.
        let eval_line = |lambda: &Nat, xt: &Nat, yt: &Nat| -> Result<Fp2> {
            let dx = xq.u.sub_mod(xt, p);
            let re = yq.u.sub_mod(yt, p).sub_mod(&lambda.mul_mod(&dx, p), p);
            let val = Fp2::new(re, yq.v.clone());
            if val.is_zero() {
                return Err(Error::DegenerateEvaluation);
            }
            Ok(val)
        };

        let (xp, yp) = match pt {
            Point::Affine { x, y } => (x, y),
            Point::Infinity => unreachable!(),
        };
        let mut f = Fp2::one();
        let mut t = pt.clone();
        for i in (0..self.n.bits().saturating_sub(1)).rev() {
            f = f.square(p);
            if let Point::Affine { x: xt, y: yt } = &t {
                t = match self.curve.slope((xt, yt), (xt, yt)) {
                    Some(lambda) => {
                        f = f.mul(&eval_line(&lambda, xt, yt)?, p);
                        self.curve.apply_slope(&lambda, xt, yt, xt)
                    }
                    None => Point::Infinity,
                };
            }
            if self.n.bit(i) {
                t = match &t {
                    Point::Infinity => pt.clone(),
                    Point::Affine { x: xt, y: yt } => match self.curve.slope((xt, yt), (xp, yp)) {
                        Some(lambda) => {
                            f = f.mul(&eval_line(&lambda, xt, yt)?, p);
                            self.curve.apply_slope(&lambda, xt, yt, xp)
                        }
                        None => Point::Infinity,
                    },
                };
            }
        }
        Ok(f)
    }

    /// f ↦ f^((p² − 1)/n), computed as (f̄/f)^((p + 1)/n) since the
    /// conjugate is the p-th power.
    pub fn final_exponentiation(&self, f: &Fp2) -> Result<Fp2> {
        let p = self.curve.p();
        let unitary = f.conj(p).mul(&f.inv(p)?, p);
        Ok(unitary.pow(&self.cofactor, p))
    }

    /// ε_n(P, Q) = f_{n,P}(Q)^((p² − 1)/n) ∈ μ_n.
    pub fn tate_reduced(&self, pt: &PointFp, q: &PointFp2) -> Result<Fp2> {
        instrument::count_pairing();
        if pt.is_infinity() || q.is_infinity() {
            return Ok(Fp2::one());
        }
        let f = self.miller_loop(pt, q)?;
        self.final_exponentiation(&f)
    }

    /// e_n(X, Y) = ε_n(X, φ(Y)).
    pub fn e_n(&self, x: &PointFp, y: &PointFp) -> Result<Fp2> {
        self.tate_reduced(x, &self.distortion(y))
    }

    /// True when z^k = 1.
    pub fn order_divides(&self, z: &Fp2, k: &Nat) -> bool {
        z.pow(k, self.curve.p()).is_one()
    }
}
