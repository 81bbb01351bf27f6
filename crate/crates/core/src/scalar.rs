//! Exact arithmetic in the field Q(i, sqrt(2)).
//!
//! Every coefficient in this crate lives here: sqrt(2) and sqrt(-1) enter
//! through the rho <-> xi/eta coordinate change and the embedding tables,
//! everything else is rational. A `Scalar` is stored in the canonical basis
//! {1, sqrt2, i, i*sqrt2} with reduced arbitrary-precision rational
//! components, so equality is componentwise and all identities are exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element a0 + a1*sqrt2 + a2*i + a3*i*sqrt2 of Q(i, sqrt2).
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Scalar {
    parts: [BigRational; 4],
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        let mut s = Scalar::default();
        s.parts[0] = BigRational::from_integer(BigInt::from(n));
        s
    }

    /// The rational p/q. Panics if q = 0.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        let mut s = Scalar::default();
        s.parts[0] = BigRational::new(BigInt::from(p), BigInt::from(q));
        s
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Scalar::default();
        s.parts[0] = r;
        s
    }

    pub fn sqrt2() -> Self {
        let mut s = Scalar::default();
        s.parts[1] = BigRational::one();
        s
    }

    pub fn i() -> Self {
        let mut s = Scalar::default();
        s.parts[2] = BigRational::one();
        s
    }

    pub fn i_sqrt2() -> Self {
        let mut s = Scalar::default();
        s.parts[3] = BigRational::one();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.parts[0].is_one() && self.parts[1..].iter().all(|p| p.is_zero())
    }

    /// True when the sqrt2, i and i*sqrt2 components vanish.
    pub fn is_rational(&self) -> bool {
        self.parts[1..].iter().all(|p| p.is_zero())
    }

    /// The rational component (the full value when `is_rational`).
    pub fn rational_part(&self) -> &BigRational {
        &self.parts[0]
    }

    /// Galois conjugation i -> -i.
    pub fn conj_i(&self) -> Self {
        let mut s = self.clone();
        s.parts[2] = -s.parts[2].clone();
        s.parts[3] = -s.parts[3].clone();
        s
    }

    /// Galois conjugation sqrt2 -> -sqrt2.
    pub fn conj_sqrt2(&self) -> Self {
        let mut s = self.clone();
        s.parts[1] = -s.parts[1].clone();
        s.parts[3] = -s.parts[3].clone();
        s
    }

    /// Both conjugations at once.
    pub fn conj_both(&self) -> Self {
        self.conj_i().conj_sqrt2()
    }

    /// Multiplicative inverse, by descending the field tower:
    /// a * conj_i(a) lies in Q(sqrt2), and its sqrt2-conjugate norm is
    /// rational, so 1/a = conj_i(a) * conj_sqrt2(a * conj_i(a)) / norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n1 = self * &self.conj_i();
        let n1c = n1.conj_sqrt2();
        let norm = &n1 * &n1c;
        debug_assert!(norm.is_rational());
        let mut out = &self.conj_i() * &n1c;
        let inv_norm = norm.parts[0].recip();
        for p in out.parts.iter_mut() {
            *p *= &inv_norm;
        }
        Ok(out)
    }

    pub fn div(&self, other: &Scalar) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self * &Scalar::from_int(n)
    }

    /// Raw basis components in the order {1, sqrt2, i, i*sqrt2}.
    pub fn components(&self) -> &[BigRational; 4] {
        &self.parts
    }

    pub fn from_components(parts: [BigRational; 4]) -> Self {
        Scalar { parts }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form, e.g. `1/2*r2 - 3*i`. Round-trips through the
    /// parser in `parse`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let tags = ["", "r2", "i", "i*r2"];
        let mut first = true;
        for (part, tag) in self.parts.iter().zip(tags) {
            if part.is_zero() {
                continue;
            }
            let mag = part.abs();
            let sign_neg = part.is_negative();
            if first {
                if sign_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if tag.is_empty() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", tag)?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), tag)?;
            }
        }
        Ok(())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (a, b) in out.parts.iter_mut().zip(rhs.parts.iter()) {
            *a += b;
        }
        out
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (a, b) in out.parts.iter_mut().zip(rhs.parts.iter()) {
            *a -= b;
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut out = self.clone();
        for a in out.parts.iter_mut() {
            *a = -a.clone();
        }
        out
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (sqrt2)^2 = 2, i^2 = -1, (i*sqrt2)^2 = -2,
        // sqrt2 * i = i*sqrt2, sqrt2 * i*sqrt2 = 2i, i * i*sqrt2 = -sqrt2.
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let a = &self.parts;
        let b = &rhs.parts;
        // Fast path: both purely rational.
        if self.is_rational() && rhs.is_rational() {
            let mut out = Scalar::default();
            out.parts[0] = &a[0] * &b[0];
            return out;
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let mut out = Scalar::default();
        out.parts[0] = &a[0] * &b[0] + &two * (&a[1] * &b[1]) - &a[2] * &b[2] - &two * (&a[3] * &b[3]);
        out.parts[1] = &a[0] * &b[1] + &a[1] * &b[0] - &a[2] * &b[3] - &a[3] * &b[2];
        out.parts[2] = &a[0] * &b[2] + &a[2] * &b[0] + &two * (&a[1] * &b[3]) + &two * (&a[3] * &b[1]);
        out.parts[3] = &a[0] * &b[3] + &a[3] * &b[0] + &a[1] * &b[2] + &a[2] * &b[1];
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.parts.iter_mut().zip(rhs.parts.iter()) {
            *a += b;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.parts.iter_mut().zip(rhs.parts.iter()) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defining_relations() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from_int(2));
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        assert_eq!(&Scalar::sqrt2() * &Scalar::i(), Scalar::i_sqrt2());
        assert_eq!(
            &Scalar::i_sqrt2() * &Scalar::i_sqrt2(),
            Scalar::from_int(-2)
        );
    }

    #[test]
    fn norm_product_expansion() {
        // (1 + i*sqrt2)(1 - i*sqrt2) = 3, expanded in the basis and reduced.
        let a = &Scalar::one() + &Scalar::i_sqrt2();
        let b = &Scalar::one() - &Scalar::i_sqrt2();
        assert_eq!(&a * &b, Scalar::from_int(3));
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn display_round_shape() {
        let s = &Scalar::ratio(1, 2) * &Scalar::sqrt2();
        let s = &s - &(&Scalar::from_int(3) * &Scalar::i());
        assert_eq!(s.to_string(), "1/2*r2 - 3*i");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-&Scalar::i()).to_string(), "-i");
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        let part = (-6i64..=6, 1i64..=4).prop_map(|(p, q)| BigRational::new(p.into(), q.into()));
        [part.clone(), part.clone(), part.clone(), part]
            .prop_map(|parts| Scalar::from_components(parts))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn norm_form_is_rational(a in small_scalar()) {
            let n = &(&a * &a.conj_i()) * &(&a.conj_sqrt2() * &a.conj_both());
            prop_assert!(n.is_rational());
        }
    }
}
