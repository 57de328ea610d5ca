//! Exact scalars in the real quadratic field Q(√2).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

type Q = Ratio<i64>;

/// `p/q + (r/s)·√2`, always stored reduced with positive denominators.
///
/// The field is real, so conjugation (`conj`) is the identity; it exists so
/// Hermiticity checks read like their complex counterparts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AlgebraicScalar {
    rational: Q,
    surd: Q,
}

impl AlgebraicScalar {
    pub const ZERO: Self = AlgebraicScalar {
        rational: Ratio::new_raw(0, 1),
        surd: Ratio::new_raw(0, 1),
    };
    pub const ONE: Self = AlgebraicScalar {
        rational: Ratio::new_raw(1, 1),
        surd: Ratio::new_raw(0, 1),
    };

    /// `p/q + (r/s)·√2`. Panics on a zero denominator.
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Self {
        AlgebraicScalar {
            rational: Q::new(p, q),
            surd: Q::new(r, s),
        }
    }

    pub fn rational(p: i64, q: i64) -> Self {
        Self::new(p, q, 0, 1)
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(n, 1)
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1, 1, 1)
    }

    /// `(p, q, r, s)` in lowest terms.
    pub fn parts(&self) -> (i64, i64, i64, i64) {
        (
            *self.rational.numer(),
            *self.rational.denom(),
            *self.surd.numer(),
            *self.surd.denom(),
        )
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    pub fn is_rational(&self) -> bool {
        *self.surd.numer() == 0
    }

    pub fn conj(self) -> Self {
        self
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sign = |x: &Q| match x.numer().cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        };
        let (a, b) = (sign(&self.rational), sign(&self.surd));
        if a == 0 {
            return b;
        }
        if b == 0 || a == b {
            return a;
        }
        // opposite signs: compare a² with 2b²
        let a2 = self.rational * self.rational;
        let b2 = self.surd * self.surd * Q::from_integer(2);
        match a2.cmp(&b2) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => 0,
        }
    }

    pub fn abs(self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self
        }
    }

    /// Nearest-ish `f64` (each part rounded once, then combined).
    pub fn to_f64(&self) -> f64 {
        let f = |x: &Q| *x.numer() as f64 / *x.denom() as f64;
        f(&self.rational) + f(&self.surd) * std::f64::consts::SQRT_2
    }
}

impl Add for AlgebraicScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        AlgebraicScalar {
            rational: self.rational + o.rational,
            surd: self.surd + o.surd,
        }
    }
}

impl Sub for AlgebraicScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for AlgebraicScalar {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraicScalar {
            rational: -self.rational,
            surd: -self.surd,
        }
    }
}

impl Mul for AlgebraicScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = Q::from_integer(2);
        AlgebraicScalar {
            rational: self.rational * o.rational + two * self.surd * o.surd,
            surd: self.rational * o.surd + self.surd * o.rational,
        }
    }
}

impl std::iter::Sum for AlgebraicScalar {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

impl PartialOrd for AlgebraicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).signum().cmp(&0)
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.is_rational(), *self.rational.numer() == 0) {
            (true, _) => write!(f, "{}", self.rational),
            (false, true) => write!(f, "{}*sqrt2", self.surd),
            (false, false) => write!(f, "{}+{}*sqrt2", self.rational, self.surd),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    p: i64,
    q: i64,
    r: i64,
    s: i64,
}

impl Serialize for AlgebraicScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let (p, q, r, s) = self.parts();
        Wire { p, q, r, s }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for AlgebraicScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(de)?;
        if w.q == 0 || w.s == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        let x = AlgebraicScalar::new(w.p, w.q, w.r, w.s);
        // only canonical forms are accepted, so text and value agree
        if x.parts() != (w.p, w.q, w.r, w.s) {
            return Err(serde::de::Error::custom("scalar not in lowest terms"));
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scalar() -> impl Strategy<Value = AlgebraicScalar> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(p, q, r, s)| AlgebraicScalar::new(p, q, r, s))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = AlgebraicScalar::sqrt2();
        assert_eq!(s * s, AlgebraicScalar::integer(2));
        assert!(s > AlgebraicScalar::rational(141, 100));
        assert!(s < AlgebraicScalar::rational(142, 100));
    }

    #[test]
    fn canonical_parts() {
        assert_eq!(AlgebraicScalar::new(2, -4, 0, 7).parts(), (-1, 2, 0, 1));
        let e = serde_json::from_str::<AlgebraicScalar>(r#"{"p":2,"q":4,"r":0,"s":1}"#);
        assert!(e.is_err());
    }

    proptest! {
        #[test]
        fn sign_agrees_with_float(x in scalar()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
            prop_assert_eq!(x.abs().signum() >= 0, true);
        }

        #[test]
        fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + b - b, a);
            prop_assert_eq!((a * b).to_f64(), (b * a).to_f64());
        }

        #[test]
        fn json_round_trip(a in scalar()) {
            let text = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<AlgebraicScalar>(&text).unwrap(), a);
        }
    }
}
