//! Exact scalars: arbitrary-precision rationals and small prime fields.
//!
//! All computations in this crate are exact. The rational field is the
//! default; prime fields (p in {2, 3, 5}) exist for the brute-force
//! enumeration oracle, where exhausting matrices over F_p is feasible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Field operations used by the dense linear algebra kernel.
///
/// `CHAR` is the characteristic (0 for the rationals). A characteristic is
/// fixed per computation by the choice of type parameter, so values of
/// different characteristic can never mix.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    const CHAR: u64;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn from_int(n: i64) -> Self;
    /// Image of an exact rational in this field.
    ///
    /// Panics if the denominator vanishes in the field; the artifact only
    /// maps small integer coefficients, so this cannot trigger there.
    fn from_rat(r: &Rat) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Field for Rat {
    const CHAR: u64 = 0;

    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_int(n: i64) -> Self {
        rat(n)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Element of the prime field F_P.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    const CHAR: u64 = P;

    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % P)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp((self.0 + P - other.0) % P)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp((self.0 * other.0) % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // P is tiny, scan for the inverse.
        (1..P).map(Fp::<P>).find(|x| self.mul(x).0 == 1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn from_int(n: i64) -> Self {
        Fp::new(n)
    }
    fn from_rat(r: &Rat) -> Self {
        let p = BigInt::from(P);
        let num = r.numer().clone() % &p;
        let den = r.denom().clone() % &p;
        let to_u64 = |x: BigInt| -> u64 {
            let m = ((x % &p) + &p) % &p;
            let (_, digits) = m.to_u64_digits();
            digits.first().copied().unwrap_or(0)
        };
        let n = Fp::<P>(to_u64(num));
        let d = Fp::<P>(to_u64(den));
        let dinv = d
            .inv()
            .unwrap_or_else(|| panic!("denominator of {} vanishes mod {}", r, P));
        n.mul(&dinv)
    }
}

/// Sign utility for rationals, used by emitters.
pub fn rat_is_negative(r: &Rat) -> bool {
    r.is_negative()
}
