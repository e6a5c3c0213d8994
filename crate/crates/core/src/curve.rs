//! Affine group law on E: y² = x³ + Ax, over F_p or F_p².

use num_bigint::RandBigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::instrument;
use crate::numeric::{is_prime, legendre, sqrt_mod, FieldElement, Fp2, Nat, MR_ROUNDS};

/// A point of E over the field `F`, or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<F> {
    Infinity,
    Affine { x: F, y: F },
}

pub type PointFp = Point<Nat>;
pub type PointFp2 = Point<Fp2>;

impl<F> Point<F> {
    pub fn affine(x: F, y: F) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn x(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&F> {
        match self {
            Point::Infinity => None,
            Point::Affine { y, .. } => Some(y),
        }
    }
}

/// The curve y² = x³ + Ax over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    p: Nat,
    a: Nat,
}

impl CurveParams {
    /// Checks that p is a prime ≡ 3 (mod 4) and that −A is a non-residue.
    pub fn new(p: Nat, a: Nat) -> Result<Self> {
        if (&p % 4u32).to_u32() != Some(3) || !is_prime(&p, MR_ROUNDS) {
            return Err(Error::InvalidKey("field prime must be a prime ≡ 3 (mod 4)".into()));
        }
        let a = a % &p;
        let minus_a = a.neg_mod(&p);
        if legendre(&minus_a, &p)? != -1 {
            return Err(Error::InvalidKey("−A must be a quadratic non-residue".into()));
        }
        Ok(CurveParams { p, a })
    }

    pub fn p(&self) -> &Nat {
        &self.p
    }

    pub fn a(&self) -> &Nat {
        &self.a
    }

    fn rhs<F: FieldElement>(&self, x: &F) -> F {
        let a = F::from_base(&self.a, &self.p);
        let x2 = x.square_mod(&self.p);
        x2.add_mod(&a, &self.p).mul_mod(x, &self.p)
    }

    pub fn is_on_curve<F: FieldElement>(&self, pt: &Point<F>) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine { x, y } => y.square_mod(&self.p) == self.rhs(x),
        }
    }

    pub fn negate<F: FieldElement>(&self, pt: &Point<F>) -> Point<F> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::affine(x.clone(), y.neg_mod(&self.p)),
        }
    }

    /// Slope of the chord through `a` and `b`, or of the tangent at `a` when
    /// they coincide. `None` when the line is vertical.
    pub(crate) fn slope<F: FieldElement>(&self, a: (&F, &F), b: (&F, &F)) -> Option<F> {
        let p = &self.p;
        let (x1, y1) = a;
        let (x2, y2) = b;
        if x1 == x2 {
            if y1 != y2 || y1.is_zero_element() {
                return None;
            }
            let coeff = F::from_base(&self.a, p);
            let num = x1.square_mod(p).small_mul(3, p).add_mod(&coeff, p);
            let den = y1.small_mul(2, p);
            Some(num.mul_mod(&den.inv_mod(p).expect("2y is nonzero"), p))
        } else {
            let den = x2.sub_mod(x1, p);
            let inv = den.inv_mod(p).expect("distinct x-coordinates");
            Some(y2.sub_mod(y1, p).mul_mod(&inv, p))
        }
    }

    /// Third intersection reflected, given the slope of the line through
    /// (x1, y1) and a point with x-coordinate x2.
    pub(crate) fn apply_slope<F: FieldElement>(&self, lambda: &F, x1: &F, y1: &F, x2: &F) -> Point<F> {
        let p = &self.p;
        let x3 = lambda.square_mod(p).sub_mod(x1, p).sub_mod(x2, p);
        let y3 = lambda.mul_mod(&x1.sub_mod(&x3, p), p).sub_mod(y1, p);
        Point::affine(x3, y3)
    }

    pub fn add<F: FieldElement>(&self, lhs: &Point<F>, rhs: &Point<F>) -> Point<F> {
        debug_assert!(self.is_on_curve(lhs) && self.is_on_curve(rhs));
        match (lhs, rhs) {
            (Point::Infinity, q) => q.clone(),
            (q, Point::Infinity) => q.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                match self.slope((x1, y1), (x2, y2)) {
                    None => Point::Infinity,
                    Some(lambda) => self.apply_slope(&lambda, x1, y1, x2),
                }
            }
        }
    }

    pub fn double<F: FieldElement>(&self, pt: &Point<F>) -> Point<F> {
        self.add(pt, pt)
    }

    /// k·P by double-and-add. Counted as one point multiplication.
    pub fn scalar_mul<F: FieldElement>(&self, k: &Nat, pt: &Point<F>) -> Point<F> {
        instrument::count_scalar_mul();
        self.scalar_mul_uncounted(k, pt)
    }

    pub(crate) fn scalar_mul_uncounted<F: FieldElement>(&self, k: &Nat, pt: &Point<F>) -> Point<F> {
        let mut acc = Point::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(i) {
                acc = self.add(&acc, pt);
            }
        }
        acc
    }

    /// Lifts an x-coordinate to the point with the smaller square root as y.
    /// The actual point is this or its negation.
    pub fn decompress(&self, x: &Nat) -> Result<PointFp> {
        if x >= &self.p {
            return Err(Error::NotOnCurve);
        }
        let rhs = self.rhs(x);
        let y = sqrt_mod(&rhs, &self.p).map_err(|_| Error::NotOnCurve)?;
        Ok(Point::affine(x.clone(), y))
    }

    /// Uniform x until x³ + Ax is a square, then a random choice of root.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> PointFp {
        loop {
            let x = rng.gen_biguint_below(&self.p);
            if let Ok(pt) = self.decompress(&x) {
                let flip: bool = rng.gen();
                return match pt {
                    Point::Affine { x, y } if flip && !y.is_zero() => {
                        Point::affine(x, y.neg_mod(&self.p))
                    }
                    other => other,
                };
            }
        }
    }

    /// Brute-force list of all points of E(F_p); only sensible for tiny p.
    pub fn enumerate_points(&self) -> Vec<PointFp> {
        let p = self.p.to_u64().expect("enumeration needs a small prime");
        let mut out = vec![Point::Infinity];
        for x in 0..p {
            for y in 0..p {
                let pt = Point::affine(Nat::from(x), Nat::from(y));
                if self.is_on_curve(&pt) {
                    out.push(pt);
                }
            }
        }
        out
    }
}
